"""Exception taxonomy and tri-state results shared across the library."""


class WittlabError(Exception):
    """Base class for all wittlab errors."""


class DivisionByZero(WittlabError):
    pass


class PrecisionExhausted(WittlabError):
    """A result's certified precision would drop to zero (or a decision
    cannot be certified at the current working precision)."""


class NegativeValuation(WittlabError):
    pass


class NotApplicable(WittlabError):
    pass


class SingularMatrix(WittlabError):
    pass


class SingularForm(WittlabError):
    pass


class DegenerateForm(WittlabError):
    pass


class RuleNotApplicable(WittlabError):
    """A Witt-expression rewrite rule's precondition is violated; the
    message names the violated precondition."""


class UnsupportedResidueField(WittlabError):
    pass


class TooLarge(WittlabError):
    pass


class WrongCase(WittlabError):
    pass


class GridViolation(WittlabError):
    pass


class DegreeCapExceeded(WittlabError):
    """Rational-function coefficient growth hit the configured degree cap."""


class Undecidable(WittlabError):
    """Honest refusal: metabolicity at depth 0 over an imperfect residue
    field exceeds the implemented decision procedures."""


class FormSyntaxError(WittlabError):
    """Literal syntax error, annotated with 1-based line/column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class _Indistinguishable:
    """Singleton result for equality questions that the library refuses to
    coerce to a boolean.  Explicitly not truthy and not falsy."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Indistinguishable"

    def __bool__(self):
        raise TypeError("Indistinguishable is neither true nor false; "
                        "compare with `is wittlab.INDISTINGUISHABLE`")


INDISTINGUISHABLE = _Indistinguishable()
