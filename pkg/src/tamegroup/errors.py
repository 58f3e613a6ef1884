"""Exception hierarchy.  Everything under :class:`DomainError` is a
violated mathematical precondition (CLI exit status 1)."""


class DomainError(ValueError):
    pass


class PreconditionViolation(DomainError):
    pass


class Inconclusive(DomainError):
    """The solver could not pin the offset; fall back to checking candidates."""


class TemplateMismatch(DomainError):
    pass


class HypothesisFailure(DomainError):
    def __init__(self, hypothesis: str, detail: str, witness=None):
        super().__init__(f"hypothesis '{hypothesis}' fails: {detail}")
        self.hypothesis = hypothesis
        self.detail = detail
        self.witness = witness


class NotCommuting(DomainError):
    pass
