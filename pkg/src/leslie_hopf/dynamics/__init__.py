"""Numerical side: integration, return maps, cycle detection and portraits."""
from ._backend import backend_name, compiled_available, kernels
from .cycles import (CycleList, CycleStability, LimitCycle, NoReturn, Section, default_seeds,
                     detect_limit_cycles, return_displacement, return_map, sections)
from .integrate import FlowSpec, Trajectory, flow_spec, integrate_orbit
from .portrait import (REPORT_SCHEMA, SCENARIOS, ExpectedCycle, PortraitResult, Scenario,
                       get_scenario, render_svg, reproduce_portrait)

__all__ = ["backend_name", "compiled_available", "kernels", "CycleList", "CycleStability",
           "LimitCycle", "NoReturn", "Section", "default_seeds", "detect_limit_cycles",
           "return_displacement", "return_map", "sections", "FlowSpec", "Trajectory",
           "flow_spec", "integrate_orbit", "REPORT_SCHEMA", "SCENARIOS", "ExpectedCycle",
           "PortraitResult", "Scenario", "get_scenario", "render_svg", "reproduce_portrait"]
