"""Exception types shared across the package."""


class PhrasalRelError(Exception):
    """Base class for all errors raised by phrasalrel."""


class UnknownRelation(PhrasalRelError):
    def __init__(self, name, line=None):
        self.name = name
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown relation {name!r}{where}")


class InvalidLabel(PhrasalRelError):
    pass


class InvalidNode(PhrasalRelError):
    pass


class SelfLoop(PhrasalRelError):
    pass


class EndpointKindMismatch(PhrasalRelError):
    pass


class ParseError(PhrasalRelError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class WordNotInNetwork(PhrasalRelError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"word not in network: {label!r}")


class EmptyPhrase(PhrasalRelError):
    pass


class EmptyInput(PhrasalRelError):
    pass


class EmptyDataset(PhrasalRelError):
    pass


class DegenerateTraining(PhrasalRelError):
    pass
