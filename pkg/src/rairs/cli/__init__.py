from .cmd_context import CmdContext
from .cmd_energy import EnergyCommand
from .cmd_plan import PlanCommand
from .cmd_sweep import SweepCommand
from .cmd_validate import ValidateCommand
