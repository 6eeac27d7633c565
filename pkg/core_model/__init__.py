from .instance_schema import Instance, euclidean_travel_times
from .solution_schema import FeasibilityReport, Route, Solution
from .feasibility import (
    MissingArcError,
    UnknownNodeError,
    build_solution,
    check_solution,
    route_duration,
    shortest_travel_times,
)
from .instance_format import InstanceFormatError, load_instance, parse_instance, write_instance
from .solution_format import SolutionFormatError, load_solution, parse_solution, write_solution
