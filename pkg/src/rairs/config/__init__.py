from .scenario import ExperimentParams, GeometryParams, Scenario, build_scenario, load_scenario, merge
