import math


def rel_err(got: float, want: float) -> float:
    """Relative error |got - want| / |want| (want must be nonzero)."""
    return abs(got - want) / abs(want)


def log_grid(lo: float, hi: float, count: int) -> list[float]:
    step = (math.log(hi) - math.log(lo)) / (count - 1)
    return [math.exp(math.log(lo) + i * step) for i in range(count)]
