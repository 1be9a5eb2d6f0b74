"""One-sided limits and finite-difference calculus.

The limit-from-the-side construction never evaluates at the point itself;
derivatives are central differences with relative step scaling. The
elementary-derivative table serves as the oracle.
"""

import math

import numpy as np

from calckit import diffnum
from calckit.errors import ConvergenceError

print("== One-sided limits via x0 + 1/eta, eta = 2^k ==")
sign = lambda x: abs(x) / x
print(f"  |x|/x at 0+  -> {diffnum.one_sided_limit(sign, 0.0, 'right'):+.1f}")
print(f"  |x|/x at 0-  -> {diffnum.one_sided_limit(sign, 0.0, 'left'):+.1f}")
sinc = lambda x: math.sin(x) / x
print(f"  sin(x)/x at 0 -> {diffnum.one_sided_limit(sinc, 0.0, 'right'):.10f}")
try:
    diffnum.one_sided_limit(lambda x: 1.0 / x, 0.0, "right")
except ConvergenceError as exc:
    print(f"  1/x at 0+    -> {type(exc).__name__} (divergence detected)")

print("\n== Central differences vs the derivative table ==")
table = [
    ("atan", math.atan, lambda x: 1.0 / (1.0 + x * x)),
    ("tan", math.tan, lambda x: 1.0 + math.tan(x) ** 2),
    ("ln", math.log, lambda x: 1.0 / x),
    ("exp", math.exp, math.exp),
    ("sin", math.sin, math.cos),
]
x = 0.8
for name, f, fprime in table:
    got = diffnum.derivative(f, x)
    print(f"  d/dx {name:4s} at {x}: numeric {got:.10f}  closed form {fprime(x):.10f}")

print("\n== Error shrinks like h^2 ==")
for h in (1e-2, 1e-3, 1e-4):
    err = abs(diffnum.derivative(math.sin, 1.0, diffnum.DiffConfig(h=h, relative=False))
              - math.cos(1.0))
    print(f"  h = {h:.0e}  error = {err:.3e}")

print("\n== Vector calculus by stacking partials ==")
F = lambda v: v[0] ** 2 * v[1] + math.sin(v[1])
x0 = np.array([2.0, 0.5])
print(f"  gradient of x^2 y + sin(y) at (2, 0.5): {diffnum.gradient(F, x0)}")
G = lambda v: np.array([v[0] * v[1], v[0] + v[1]])
print(f"  jacobian of (xy, x+y) at (2, 3):\n{diffnum.jacobian(G, [2.0, 3.0])}")
Q = np.array([[2.0, 1.0], [1.0, 4.0]])
H = diffnum.hessian(lambda v: 0.5 * v @ Q @ v, [0.3, -0.7])
print(f"  hessian of a quadratic form recovers its matrix:\n{H}")
