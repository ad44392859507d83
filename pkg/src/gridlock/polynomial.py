"""Exact integer polynomials in one variable ``k``."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class IntPolynomial:
    """Dense polynomial with Python ``int`` coefficients, lowest degree first.

    Trailing zeros are trimmed, so the zero polynomial has ``coeffs == ()``.

    >>> p = IntPolynomial([0, 4, -5, 0, 0, 1])
    >>> str(p)
    'k^5 - 5k^2 + 4k'
    >>> p(2)
    20
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, bool) or int(c) != c:
                raise TypeError(f"coefficient {c!r} is not an integer")
            cs.append(int(c))
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    def __reduce__(self):
        return (IntPolynomial, (self.coeffs,))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * power + [coeff])

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(other, self)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, k: int) -> int:
        return evaluate(self, k)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return render(self)

    def to_json(self) -> dict:
        """``{"coeffs": [...], "display": ...}`` with decimal-string coefficients."""
        return {"coeffs": [str(c) for c in self.coeffs], "display": render(self)}

    @classmethod
    def from_json(cls, data) -> "IntPolynomial":
        if isinstance(data, dict):
            data = data["coeffs"]
        return cls(int(c) for c in data)


def add(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    return p + q


def scale(c: int, p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(c * a for a in p.coeffs)


def evaluate(p: IntPolynomial, k: int) -> int:
    # Horner; exact for any integer k
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * k + c
    return acc


def falling_factorial(m: int) -> IntPolynomial:
    """``k (k-1) ... (k-m+1)`` in the power basis; ``1`` when ``m == 0``."""
    if m < 0:
        raise ValueError("falling factorial order must be nonnegative")
    out = IntPolynomial([1])
    for i in range(m):
        out = out * IntPolynomial([-i, 1])
    return out


def render(p: IntPolynomial) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + ("k" if i == 1 else f"k^{i}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def interpolate(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (lowest first) of the Lagrange interpolant through ``points``.

    Exact rational arithmetic; the caller decides whether a fractional result
    is an error.
    """
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    n = len(points)
    total = [Fraction(0)] * n
    for i, (_, yi) in enumerate(points):
        # basis polynomial prod_{j != i} (k - x_j) / (x_i - x_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d + 1] += c
                nxt[d] -= c * xs[j]
            basis = nxt
            denom *= xs[i] - xs[j]
        scale_ = Fraction(yi) / denom
        for d, c in enumerate(basis):
            total[d] += c * scale_
    return total
