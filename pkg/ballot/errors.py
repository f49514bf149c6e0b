"""Error variants shared by the services, the CLI and the HTTP surface."""


class BallotError(Exception):
    http_status = 400

    @property
    def name(self) -> str:
        return type(self).__name__


class ParseError(BallotError):
    """Malformed flag, request field, ratio or vote sequence."""


class PreconditionViolation(BallotError):
    """An operation was called outside its documented precondition."""

    http_status = 422


class BudgetExceeded(BallotError):
    """The instance has more sequences than the enumeration budget allows."""

    http_status = 413

    def __init__(self, size: int, budget: int):
        super().__init__(
            f"{size} arrangements exceed the enumeration budget of {budget}; "
            "use sampling or the bound formulas instead"
        )
        self.size = size
        self.budget = budget


class DegenerateRecurrence(BallotError):
    """A Takács recurrence instance divides by a zero binomial coefficient."""

    http_status = 422


class DomainViolation(BallotError):
    """A bound was requested outside the margin where it is stated."""

    http_status = 422


class NotRotatableToCute(BallotError):
    """No rotation can be cute because the final partial sum is negative."""

    http_status = 422
