"""Series solutions of the Ince limits of the generalized spheroidal wave
equation and the double-confluent Heun equation, with Mathieu and
polarization-potential scattering applications."""
from .equations import (DcheParams, GsweParams, InceDcheParams, InceGsweParams, leaver_limit,
                        make_params, ode_terms)
from .errors import InceHeunError, NumericalError, ValidationError
from .options import DEFAULT, Tolerances
from .recurrence import CharacteristicProblem, minimal_coefficients, solve_characteristic
from .solutions import build_pair, build_solution, eval_solution

__version__ = "0.1.0"

__all__ = [
    "DcheParams", "GsweParams", "InceDcheParams", "InceGsweParams", "leaver_limit", "make_params",
    "ode_terms", "InceHeunError", "NumericalError", "ValidationError", "DEFAULT", "Tolerances",
    "CharacteristicProblem", "minimal_coefficients", "solve_characteristic", "build_pair",
    "build_solution", "eval_solution",
]
