import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))


def bisect_root(coeffs, lo, hi, iters=220):
    """Independent root oracle: plain Fraction bisection on a sign change.

    coeffs are low-degree-first integers.  Deliberately uses none of the
    library's Sturm machinery.
    """
    lo, hi = Fraction(lo), Fraction(hi)

    def ev(x):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    assert ev(lo) * ev(hi) < 0, "oracle needs a sign change"
    neg_low = ev(lo) < 0
    for _ in range(iters):
        mid = (lo + hi) / 2
        v = ev(mid)
        if v == 0:
            return mid
        if (v < 0) == neg_low:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
