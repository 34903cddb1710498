from .channel import ChannelRealization, RadioParams
from .energy import EnergyLedger, FlightRange, IrsSizing, PlatformParams
from .geometry import DistanceTables, ScenarioLayout
from .solver import SolverParams
from .traffic import TrafficField, TrafficModel
