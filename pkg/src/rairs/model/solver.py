import attr

ROBOTIC = 'robotic'
TERRESTRIAL = 'terrestrial'
RANDOM = 'random'
STRATEGIES = (ROBOTIC, TERRESTRIAL, RANDOM)

MODE_EPOCH1 = 'epoch1'
MODE_CLAIRVOYANT = 'clairvoyant'
TERRESTRIAL_MODES = (MODE_EPOCH1, MODE_CLAIRVOYANT)

MODE_DIRECT = 'direct'
MODE_REJECTION = 'rejection'
RANDOM_MODES = (MODE_DIRECT, MODE_REJECTION)


@attr.s(frozen=True, slots=True, auto_attribs=True)
class SolverParams:
    """Fleet size and baseline variants.

    ``terrestrial_mode``: ``epoch1`` optimizes the fixed mounts on the first epoch only, ``clairvoyant`` on the
    summed gains of the whole day. ``random_mode``: ``direct`` draws grids and sites without replacement,
    ``rejection`` redraws flat (grid, site) pairs until they are exclusive.
    """
    uavs: int = attr.ib(converter=int)
    terrestrial_mode: str = attr.ib(default=MODE_EPOCH1, validator=attr.validators.in_(TERRESTRIAL_MODES))
    random_mode: str = attr.ib(default=MODE_DIRECT, validator=attr.validators.in_(RANDOM_MODES))
    max_iterations: int = attr.ib(default=10_000, converter=int)

    @uavs.validator
    def _check_uavs(self, attribute, value):
        if value < 0:
            raise ValueError(f'uavs must be non-negative, got {value}')

    @max_iterations.validator
    def _check_iterations(self, attribute, value):
        if value < 1:
            raise ValueError(f'max_iterations must be at least 1, got {value}')
