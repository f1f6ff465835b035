"""Exception types shared across the package."""


class ContractError(ValueError):
    """An operation was called with arguments violating its preconditions
    (mismatched arities, malformed tables, unnormalized states, ...)."""


class CapacityError(ValueError):
    """A request exceeds a documented size limit for exhaustive work."""

    def __init__(self, what: str, n: int, limit: int):
        self.what = what
        self.n = n
        self.limit = limit
        super().__init__(f"{what}: n={n} exceeds the supported limit n <= {limit}")


class InconsistentCounterError(RuntimeError):
    """Causal branches of a switch run disagree on channel-use tallies."""
