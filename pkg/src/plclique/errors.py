class ValidationError(ValueError):
    """Invalid parameters or malformed input."""


class BudgetExceeded(RuntimeError):
    """The exact clique search ran past its node budget."""

    def __init__(self, budget, best_size=None):
        self.budget = budget
        self.best_size = best_size
        super().__init__(f"exact search exceeded {budget} nodes"
                         + (f" (best so far {best_size})" if best_size is not None else ""))


class EdgeBudgetError(ValidationError):
    """The expected number of sampled edges exceeds the configured budget."""
