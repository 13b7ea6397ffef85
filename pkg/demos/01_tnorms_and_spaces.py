"""Walkthrough: t-norms, space axioms, and why positivity preservation matters.

Run:  python demos/01_tnorms_and_spaces.py
"""

from fractions import Fraction as F

from fuzzycoarse import (
    LUKASIEWICZ,
    MINIMUM,
    PRODUCT,
    check_axioms,
    check_tnorm_axioms,
    int_window,
    is_bounded,
    is_positivity_preserving,
    pathological_space,
    ratio_minmax_space,
    tnorm_eval,
    ScaleParams,
)

# Three classical t-norms, evaluated exactly.
print("product(1/2, 1/3)     =", tnorm_eval(PRODUCT, F(1, 2), F(1, 3)))
print("min(1/2, 1/3)         =", tnorm_eval(MINIMUM, F(1, 2), F(1, 3)))
print("lukasiewicz(1/2, 1/3) =", tnorm_eval(LUKASIEWICZ, F(1, 2), F(1, 3)))
print()

# The axioms certified over a finite grid, no tolerance anywhere.
grid = [F(k, 8) for k in range(9)]
print(check_tnorm_axioms(LUKASIEWICZ, grid))
print()

# Positivity preservation (a*b != 0 for a, b != 0) separates the three:
for t in (PRODUCT, MINIMUM, LUKASIEWICZ):
    print(f"{t.name:12s} positivity-preserving: {is_positivity_preserving(t)}")
print()

# A full space-axiom certificate for the ratio space on 1..20.
ratio = ratio_minmax_space()
print(check_axioms(ratio, int_window(1, 20), [F(1, 2), 1, 2]))
print()

# The pathological space: a fuzzy metric under lukasiewicz whose bounded
# sets union badly.  {1, 2} and {2, 3, 4, ...} are each bounded, but their
# union is not: the closeness of 1 to n decays like 1/n.
pat = pathological_space()
loose = ScaleParams(F(3, 4), 1)
print("bounded {1,2} at r=3/4:     ", is_bounded(pat, [1, 2], loose))
print("bounded {2..40} at r=3/4:   ", is_bounded(pat, range(2, 41), loose))
print("bounded {1..40} at r=3/4:   ", is_bounded(pat, range(1, 41), loose))
print()

# Swap the t-norm for the product and the chain axiom breaks: the report
# names a concrete violating triple.
bad = check_axioms(pathological_space(PRODUCT), int_window(1, 5), [1])
for line in bad.lines():
    if "FAIL" in line or line.startswith("REPORT"):
        print(line)
