"""Exception hierarchy shared by every module."""


class LocinvError(Exception):
    """Base class; ``witness`` carries whatever evidence the raiser had."""

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(LocinvError):
    """Malformed input (parse failures, out-of-range entries)."""


class OutOfRange(InputError):
    def __init__(self, row, col, value):
        super().__init__(f"entry {value!r} at ({row}, {col}) is out of range", (row, col))
        self.row, self.col = row, col


class NonAssociative(InputError):
    def __init__(self, a, b, c):
        super().__init__(f"(x{a}*x{b})*x{c} != x{a}*(x{b}*x{c})", (a, b, c))
        self.triple = (a, b, c)


class IrregularMatrix(InputError):
    def __init__(self, kind, index):
        super().__init__(f"sandwich matrix {kind} {index} is entirely zero", (kind, index))
        self.kind, self.index = kind, index


class SizeGuard(LocinvError):
    def __init__(self, bound, actual, what="search space"):
        super().__init__(f"{what} {actual} exceeds configured bound {bound}", (bound, actual))
        self.bound, self.actual = bound, actual


class PropertyViolation(LocinvError):
    """A checked mathematical property failed on concrete data."""


class NotRegular(PropertyViolation):
    pass


class NotInverse(PropertyViolation):
    pass


class NotLocallyInverse(PropertyViolation):
    pass


class NotInversive(PropertyViolation):
    pass


class NotIdempotent(PropertyViolation):
    pass


class NotInHomSet(PropertyViolation):
    pass


class NoFactorisation(PropertyViolation):
    pass


class NotEpimorphism(PropertyViolation):
    pass


class DomainMismatch(PropertyViolation):
    pass


class NotClosed(PropertyViolation):
    pass


class NoTranspose(PropertyViolation):
    pass


class MultipleTransposes(PropertyViolation):
    pass


class EtaNotWellDefined(PropertyViolation):
    pass


class AxiomViolation(PropertyViolation):
    pass


class InternalDisagreement(LocinvError):
    """Equivalent characterisations gave different verdicts: an implementation bug."""
