"""Exact univariate polynomials over the rationals."""

from dataclasses import dataclass
from fractions import Fraction

_ZERO = Fraction(0)


@dataclass(frozen=True)
class Polynomial:
    """
    Polynomial with rational coefficients in ascending degree.

    The coefficient tuple is normalized on construction: trailing zeros are
    stripped, so the leading coefficient is nonzero unless the polynomial is
    the zero polynomial (empty tuple).
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def monomial(cls, degree: int, coefficient: Fraction | int = 1) -> "Polynomial":
        """Return coefficient * λ^degree."""
        return cls(tuple([_ZERO] * degree + [Fraction(coefficient)]))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, value: Fraction | int) -> Fraction:
        """Evaluate by Horner's rule."""
        x = Fraction(value)
        acc = _ZERO
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms: list[str] = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if power == 0:
                body = str(magnitude)
            else:
                var = "λ" if power == 1 else f"λ^{power}"
                body = var if magnitude == 1 else f"{magnitude}{var}"
            terms.append(f"{sign} {body}")
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]
