"""Definite integration from first principles to engineering applications.

Walks the quadrature ladder (Riemann sums, Darboux bounds, trapezoid,
Simpson), shows the convergence orders, then puts integrals to work on
improper tails and geometry: robot path length, a lamina's inertia, and a
volume of revolution.
"""

import math

from calckit import quad

iv = quad.Interval(0.0, math.pi)

print("== Riemann sums for the area under sin on [0, pi] (true value 2) ==")
for n in (4, 16, 64, 256):
    left = quad.riemann_sum(math.sin, iv, n, "left")
    mid = quad.riemann_sum(math.sin, iv, n, "midpoint")
    print(f"  n={n:4d}  left={left:.8f}  midpoint={mid:.8f}")

print("\n== Darboux bounds pin the integral from both sides ==")
for n in (8, 64, 512):
    lower, upper = quad.darboux_bounds(math.sin, iv, n, 8)
    print(f"  n={n:4d}  {lower:.8f} <= 2 <= {upper:.8f}  (gap {upper - lower:.2e})")

print("\n== Composite rules converge at their textbook orders ==")
prev_t = prev_s = None
for n in (8, 16, 32, 64, 128):
    et = abs(quad.trapezoid(math.sin, iv, n) - 2.0)
    es = abs(quad.simpson(math.sin, iv, n) - 2.0)
    ratios = "" if prev_t is None else f"  ratios {prev_t / et:5.2f} / {prev_s / es:5.2f}"
    print(f"  n={n:4d}  trapezoid err {et:.3e}  simpson err {es:.3e}{ratios}")
    prev_t, prev_s = et, es

print("\n== Improper integrals by interval doubling ==")
total = 2.0 * quad.improper_type1(lambda x: math.exp(-x * x), 0.0, 1e-8, 10)
print(f"  integral of exp(-x^2) over the line = {total:.10f}  (sqrt(pi) = {math.sqrt(math.pi):.10f})")
try:
    quad.improper_type1(lambda x: 1.0 / x, 1.0, 1e-8, 10)
except Exception as exc:
    print(f"  integral of 1/x from 1: {type(exc).__name__}: divergence reported, not hidden")

print("\n== Geometry: length, mass properties, volume ==")
circle = quad.path_length(math.cos, math.sin, 0.0, 2.0 * math.pi, 256)
print(f"  unit-circle path length      = {circle:.10f}  (2 pi = {2 * math.pi:.10f})")
parabola = quad.path_length(lambda t: t, lambda t: t * t, 0.0, 1.0, 256)
print(f"  parabolic arc length         = {parabola:.10f}")
lam = quad.Lamina(lambda x: 1.0, lambda x: 0.0, quad.Interval(0.0, 1.0), 1.0, 1.0)
props = quad.lamina_properties(lam, 100)
print(f"  unit-square lamina: mass={props.mass:.6f} centroid=({props.centroid_x:.3f},"
      f" {props.centroid_y:.3f}) Iz={props.Iz:.10f}  (2/3 = {2 / 3:.10f})")
sphere = quad.volume_of_revolution(lambda x: math.sqrt(max(0.0, 1.0 - x * x)),
                                   quad.Interval(-1.0, 1.0), 2000)
print(f"  sphere volume by disks       = {sphere:.8f}  (4 pi/3 = {4 * math.pi / 3:.8f})")

print("\n== Fundamental theorem, numerically ==")
F = quad.antiderivative_numeric(math.cos, 0.0)
for x in (0.5, 1.0, math.pi / 2.0):
    print(f"  F({x:.4f}) = {F(x):.10f}   sin(x) = {math.sin(x):.10f}")
