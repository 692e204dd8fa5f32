"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class SteinPalfError(Exception):
    exit_code = 1


class ParseError(SteinPalfError):
    exit_code = 2


class ValidationError(SteinPalfError):
    exit_code = 3


class OrderViolation(SteinPalfError):
    exit_code = 4


class FramingMismatch(SteinPalfError):
    exit_code = 5


class CrossCheckFailure(SteinPalfError):
    exit_code = 6
