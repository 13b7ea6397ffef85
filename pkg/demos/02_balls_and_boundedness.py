"""Walkthrough: the threshold bridge, balls, and neighborhood fattening.

Run:  python demos/02_balls_and_boundedness.py
"""

from fractions import Fraction as F

from fuzzycoarse import (
    Family,
    ScaleParams,
    ball,
    int_window,
    neighborhood_family,
    scale_neighborhood,
    standard_space,
    threshold_bridge_suite,
    threshold_split,
    ultrametric_space,
    union_bound,
)

# For the standard space t/(t+d), closeness above 1-r is the same statement
# as distance below rt/(1-r).  Both sides evaluate exactly:
params = ScaleParams(F(1, 2), 4)
print("d=3, r=1/2, t=4 ->", threshold_split(3, params))
print("d=4 (the boundary) ->", threshold_split(4, params), " (strictness)")
print()

# A seeded randomized suite checks the two sides agree on 1000 draws.
print(threshold_bridge_suite(seed=0, cases=1000))
print()

# Balls at scale (r, t).  On the integers the threshold is rt/(1-r) = 5:
std = standard_space()
w = int_window(-10, 10)
print("ball(0, 1/2, 5) on -10..10:", ball(std, 0, ScaleParams(F(1, 2), 5), w))

# On the max-ultrametric line, the ball of 1 at (1/2, 10) collects every
# point below 10 and nothing else.
ult = ultrametric_space()
print("ultrametric ball(1, 1/2, 10) on 1..200:",
      ball(ult, 1, ScaleParams(F(1, 2), 10), int_window(1, 200)))
print()

# Neighborhoods fatten sets; bounded families stay bounded at a derived
# scale computed through the t-norm chain.
wz = int_window(-30, 30)
singles = Family.of([[k] for k in range(-12, 13, 6)], "singles")
fat, report = neighborhood_family(std, singles, ScaleParams(F(1, 2), 3), wz,
                                  input_bound=ScaleParams(F(1, 2), 1))
print(report)
print("fattened sets:", fat.sets)
print()

# Union of two bounded sets, with the positivity-preserving product norm:
s, t_out = union_bound(std, ScaleParams(F(1, 2), 1), ScaleParams(F(1, 2), 5), 0, 2)
print(f"union bound: level 1-s = {1 - s} at t = {t_out}")

print()
print("neighborhood of {0, 10} at (1/2, 3):",
      scale_neighborhood(std, [0, 10], ScaleParams(F(1, 2), 3), int_window(-20, 20)))
