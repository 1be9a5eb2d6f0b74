"""calckit: a numerical calculus and control toolkit.

Layers, bottom up: expression parsing (funcexpr), a small dense linear
kernel (linalg), quadrature (quad), finite-difference calculus (diffnum),
ODE integration and eigenvalues (odesolve), polynomials (poly), optimization
and projectile scenarios (opt), Lagrangian mechanics (mech), transfer
functions and feedback design (lti), IMU odometry (odo), and a batch CLI.
"""

from .errors import (CalcError, ConvergenceError, DimensionError, DomainError,
                     EvalError, ParseError, SingularityError)
from .signals import SampledSignal

__version__ = "0.1.0"

__all__ = [
    "CalcError", "ConvergenceError", "DimensionError", "DomainError",
    "EvalError", "ParseError", "SingularityError", "SampledSignal",
    "__version__",
]
