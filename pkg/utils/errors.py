# -*- coding: utf-8 -*-
"""
Domain exceptions
خطاهای محاسباتی
"""


class RoutError(Exception):
    """Base class for computation failures (parameter errors use ValidationError)"""
    pass


class RetryExhaustedError(RoutError):
    """Rejection sampler gave up after its retry cap"""

    def __init__(self, attempts, message=None):
        self.attempts = attempts
        super().__init__(message or f"rejection sampler exhausted after {attempts} attempts")


class AttractivityError(RoutError):
    """A random walk on D0 would leave the support"""
    pass


class CapExceededError(RoutError):
    """Problem size above a configured cap"""

    def __init__(self, what, size, cap):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} size {size} exceeds cap {cap}")


class StepBudgetError(RoutError):
    """A Monte Carlo walk hit its per-trial step cap"""
    pass


class EmptyEntranceError(RoutError):
    """The maze entrance layer N_k^-(v) is empty"""
    pass


class BoundViolationError(RoutError):
    """A deterministic inequality failed on computed quantities"""
    pass
