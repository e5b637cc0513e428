"""Obstructions to the multinorm principle and to weak approximation for
multinorm one tori, computed from finite group data."""

from .cover import (CentralExtension, Cocycle, build_generalized_rep_group, cohomology_h2,
                    schur_multiplier, verify_cover)
from .engine import (DiagramInstance, ObstructionReport, ScenarioInput, build_diagram,
                     first_obstruction, local_kernel_image, obstructions, unramified_kernel_image)
from .errors import (CarrierMismatch, CoverSearchExhausted, InvalidConfiguration, MultinormError,
                     NotContained, OrderCapExceeded, ParseError, PartitionSearchCapExceeded,
                     ValidationError)
from .groups import Group, generate_group
from .scenario import ScenarioFile, load_scenario, parse_scenario
from .theorems import (check_dw_hypothesis, compare_with_intersection, eva_closed_form,
                       eva_wa_criterion, strategy_hints)
from .zlin import AbHom, AbSubgroup, FinAb, smith_normal_form

__version__ = "0.1.0"
