"""Independent reference values for cross-checks."""

from fractions import Fraction

# exponents of the Weyl group; h = largest exponent + 1
EXPONENTS = {
    "A1": (1,), "A2": (1, 2), "A3": (1, 2, 3), "A4": (1, 2, 3, 4),
    "B2": (1, 3), "B3": (1, 3, 5), "B4": (1, 3, 5, 7), "C3": (1, 3, 5),
    "G2": (1, 5), "D4": (1, 3, 3, 5), "F4": (1, 5, 7, 11),
}


def product_formula(exponents):
    """Number of clusters, prod (e + h + 1) / (e + 1)."""
    h = max(exponents) + 1
    value = Fraction(1)
    for e in exponents:
        value *= Fraction(e + h + 1, e + 1)
    assert value.denominator == 1
    return int(value)
