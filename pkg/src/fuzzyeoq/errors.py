"""Exception hierarchy."""


class FuzzyOrderingError(ValueError):
    """A triple violates low <= peak <= high."""


class InvalidParamsError(ValueError):
    """A model parameter is outside its domain.

    ``field`` names the offending parameter so config loaders can point at it.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class ModelDomainError(ArithmeticError):
    """The model has no meaningful answer for these inputs."""


class UnboundedObjectiveError(ModelDomainError):
    """The lot-size denominator is non-positive, so profit grows without bound in Q."""

    def __init__(self, denominator: float):
        super().__init__(
            f"objective unbounded above in Q (denominator {denominator:.6g} <= 0); "
            "the purchase discount term dominates the holding costs"
        )
        self.denominator = denominator


class ProfitOrderingError(ModelDomainError):
    """u < W, so the fuzzy profit triple would come out inverted."""

    def __init__(self, u: float, w: float):
        super().__init__(f"profit-triple ordering inverted: u={u:.6g} < W={w:.6g}")
        self.u = u
        self.w = w
