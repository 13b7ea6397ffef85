"""Continuous t-norms with exact rational evaluation.

A t-norm is an associative, commutative, monotone binary operation on
[0, 1] with identity 1.  The three classical ones are built in: product
a*b, minimum min(a, b), and the Lukasiewicz norm max(0, a + b - 1).
Continuity itself is not checkable from samples and is out of scope; the
built-in norms are continuous by their closed forms.

Positivity preservation (a*b != 0 whenever a, b != 0) is the property
that makes finite unions of bounded sets bounded; it holds for product
and minimum and fails for Lukasiewicz.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Optional

from .errors import DomainError, FuzzyCoarseError
from .rationals import as_fraction
from .report import CertReport

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class TNorm:
    """A named t-norm with an exact evaluation rule.

    ``positivity_preserving`` is the analytic fact for the built-in
    kinds; ``None`` means unknown (user-supplied rule), in which case
    only grid evidence is available.
    """

    name: str
    rule: Callable[[Fraction, Fraction], Fraction] = field(compare=False)
    positivity_preserving: Optional[bool] = None

    def __call__(self, a, b) -> Fraction:
        return tnorm_eval(self, a, b)


def _product(a: Fraction, b: Fraction) -> Fraction:
    return a * b


def _minimum(a: Fraction, b: Fraction) -> Fraction:
    return a if a <= b else b


def _lukasiewicz(a: Fraction, b: Fraction) -> Fraction:
    c = a + b - 1
    return c if c > 0 else ZERO


PRODUCT = TNorm("product", _product, True)
MINIMUM = TNorm("min", _minimum, True)
LUKASIEWICZ = TNorm("lukasiewicz", _lukasiewicz, False)

BUILTIN_TNORMS = {t.name: t for t in (PRODUCT, MINIMUM, LUKASIEWICZ)}


def tnorm_from_name(name: str) -> TNorm:
    try:
        return BUILTIN_TNORMS[name]
    except KeyError:
        raise DomainError(
            f"unknown t-norm tag {name!r}; expected one of {sorted(BUILTIN_TNORMS)}"
        ) from None


def tnorm_eval(tnorm: TNorm, a, b) -> Fraction:
    """Evaluate the t-norm on two exact rationals in [0, 1]."""
    fa, fb = as_fraction(a), as_fraction(b)
    if not (ZERO <= fa <= ONE) or not (ZERO <= fb <= ONE):
        raise DomainError(f"t-norm arguments must lie in [0,1], got {fa}, {fb}")
    return tnorm.rule(fa, fb)


def check_tnorm_axioms(tnorm: TNorm, grid) -> CertReport:
    """Certify the t-norm axioms exactly over a finite grid.

    The grid must contain 0 and 1.  Associativity runs over all grid
    triples, monotonicity over all comparable argument pairs; every
    comparison is exact, no tolerance anywhere.
    """
    pts = sorted({as_fraction(g) for g in grid})
    if not pts:
        raise DomainError("grid must be non-empty")
    if pts[0] != 0 or pts[-1] != 1:
        raise DomainError("grid must contain 0 and 1")
    if any(p < 0 or p > 1 for p in pts):
        raise DomainError("grid points must lie in [0,1]")

    rep = CertReport("tnorm-axioms", tnorm=tnorm.name, grid_size=len(pts))
    ev = tnorm.rule

    bad = next((a for a in pts if ev(a, ONE) != a), None)
    rep.add_verdict(bad is None, "identity", witness=bad)

    bad = next((a for a in pts if ev(a, ZERO) != 0), None)
    rep.add_verdict(bad is None, "annihilator", witness=bad)

    comm = next(((a, b) for a, b in combinations_with_replacement(pts, 2) if ev(a, b) != ev(b, a)), None)
    rep.add_verdict(comm is None, "commutative", witness=comm)

    assoc = None
    for a in pts:
        for b in pts:
            ab = ev(a, b)
            for c in pts:
                if ev(ab, c) != ev(a, ev(b, c)):
                    assoc = (a, b, c)
                    break
            if assoc:
                break
        if assoc:
            break
    rep.add_verdict(assoc is None, "associative", witness=assoc)

    mono = None
    n = len(pts)
    vals = [[ev(a, b) for b in pts] for a in pts]
    for i in range(n):
        for k in range(i, n):
            row_i, row_k = vals[i], vals[k]
            for j in range(n):
                for m in range(j, n):
                    if row_i[j] > row_k[m]:
                        mono = (pts[i], pts[j], pts[k], pts[m])
                        break
                if mono:
                    break
            if mono:
                break
        if mono:
            break
    rep.add_verdict(mono is None, "monotone", witness=mono)

    rep.add_verdict(
        all(ZERO <= v <= ONE for row in vals for v in row), "range", low=ZERO, high=ONE
    )
    rep.add_note("continuity", status="not-checkable-from-samples")
    return rep


def positivity_counterexample(tnorm: TNorm, grid_size: int = 128):
    """Search a uniform rational grid for a, b > 0 with a*b = 0."""
    if grid_size < 100:
        raise DomainError("counterexample grid must have at least 100 points")
    for i in range(1, grid_size + 1):
        a = Fraction(i, grid_size)
        for j in range(1, grid_size + 1):
            b = Fraction(j, grid_size)
            if tnorm.rule(a, b) == 0:
                return (a, b)
    return None


def is_positivity_preserving(tnorm: TNorm, grid_size: int = 128) -> bool:
    """Whether a*b != 0 whenever a, b != 0.

    For the built-in kinds this is the hard-coded analytic fact,
    cross-validated by a grid search; for a custom rule only the grid
    evidence is available and the answer is best-effort.
    """
    found = positivity_counterexample(tnorm, grid_size)
    if tnorm.positivity_preserving is None:
        return found is None
    if tnorm.positivity_preserving and found is not None:
        raise FuzzyCoarseError(
            f"t-norm {tnorm.name} is declared positivity-preserving but "
            f"maps {found} to 0"
        )
    if not tnorm.positivity_preserving and found is None:
        raise FuzzyCoarseError(
            f"t-norm {tnorm.name} is declared non-positivity-preserving but "
            f"no counterexample exists on a {grid_size}-point grid"
        )
    return tnorm.positivity_preserving
