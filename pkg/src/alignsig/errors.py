"""Exception types shared across the package."""


class AlignsigError(Exception):
    """Base class for all errors raised by this package."""


class EmptySystemName(AlignsigError):
    pass


class NonEquivalenceRelation(AlignsigError):
    def __init__(self, source: str, target: str, relation: str):
        self.source = source
        self.target = target
        self.relation = relation
        super().__init__(
            f"unsupported relation {relation!r} for ({source!r}, {target!r}); "
            "only '=' is supported"
        )


class MalformedLine(AlignsigError):
    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class ConfidenceOutOfRange(AlignsigError):
    def __init__(self, line_no: int, value: float):
        self.line_no = line_no
        self.value = value
        super().__init__(f"line {line_no}: confidence {value} outside [0, 1]")


class XmlSyntax(AlignsigError):
    def __init__(self, position: tuple, message: str):
        self.position = position
        super().__init__(f"XML syntax error at {position}: {message}")


class MissingEntity(AlignsigError):
    def __init__(self, cell_index: int):
        self.cell_index = cell_index
        super().__init__(f"Cell {cell_index} lacks entity1/entity2 resource")


class DuplicateId(AlignsigError):
    def __init__(self, id_: str):
        self.id = id_
        super().__init__(f"duplicate id {id_!r}")


class UniverseTooSmall(AlignsigError):
    def __init__(self, total_pairs: int, needed: int):
        self.total_pairs = total_pairs
        self.needed = needed
        super().__init__(
            f"task universe T={total_pairs} smaller than |R ∪ A1 ∪ A2|={needed}"
        )


class DuplicateSystemName(AlignsigError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate system name {name!r}")


class UndefinedStatistic(AlignsigError):
    def __init__(self):
        super().__init__("McNemar statistic is undefined for n01 = n10 = 0")


class ModeMismatch(AlignsigError):
    def __init__(self, correction: str, mode: str):
        self.correction = correction
        self.mode = mode
        super().__init__(f"correction {correction} is not available in mode {mode}")


class TooManySystems(AlignsigError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(
            f"Bergmann's procedure limited to {cap} systems (got {n}); "
            "raise the cap explicitly to override"
        )


class EmptyTable(AlignsigError):
    pass
