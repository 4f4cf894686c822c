"""Landau-Zener tunneling with dephasing: dynamics, transport theory and closed forms."""
from .errors import (ConfigError, DegenerateSpectrumError, IntegrationError, LZDephaseError,
                     NumericalQualityError, QuadratureError, SingularTransportError)
from .experiments import (RunSpec, evolve_rho, measure_tunneling, slope_extrapolate,
                          verify_invariant_identity)
from .formulas import eq10_slope, predict, q_closed, q_maximum, q_quadrature
from .master import DEFAULT_BACKEND
from .model import Constant, ModelParams, PiecewiseLinear
from .odeint import IntegratorConfig

__version__ = "0.1.0"
