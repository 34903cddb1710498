import typing


class RaIrsError(Exception):
    """Base class of every error the planner reports to its callers."""


class InvalidArgumentError(RaIrsError, ValueError):
    pass


class ConfigError(RaIrsError):
    pass


class InfeasibleError(RaIrsError):
    pass


class SizingError(RaIrsError):
    pass


class TerminationError(RaIrsError):
    pass


class PlanValidationError(RaIrsError):
    def __init__(self, constraint: str, message: str):
        super().__init__(f'constraint {constraint} violated: {message}')
        self.constraint = constraint


class TrialError(RaIrsError):
    def __init__(self, strategy: str, sigma: float, trial: int, cause: BaseException):
        super().__init__(f'trial {trial} (strategy={strategy}, sigma={sigma}) failed: {cause}')
        self.strategy = strategy
        self.sigma = sigma
        self.trial = trial


def require(condition: bool, message: str, error: typing.Type[RaIrsError] = InvalidArgumentError) -> None:
    if not condition:
        raise error(message)
