"""Exact univariate and bivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import NotDivisible
from .scalars import is_exact


def _scalar(v) -> bool:
    return is_exact(v) or type(v).__name__ == "mpf"


def _join(parts) -> str:
    """Join (coef, monomial) pairs as ``x^2 - 3/2*x*y + 1/2*y^2``."""
    out = ""
    for c, mono in parts:
        neg = c < 0
        mag = -c if neg else c
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not out:
            out = f"-{body}" if neg else body
        else:
            out += f" - {body}" if neg else f" + {body}"
    return out or "0"


class UniPoly:
    """Dense polynomial in one named variable (the operand of D_q, theta, E, T)."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Iterable = (), var: str = "a"):
        cs = [Fraction(c) if is_exact(c) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, n: int, coef=Fraction(1), var: str = "a") -> "UniPoly":
        return cls([0] * n + [coef], var)

    @classmethod
    def constant(cls, value, var: str = "a") -> "UniPoly":
        return cls([value], var)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _other(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise ValueError(f"variables differ: {self.var} vs {other.var}")
            return other
        return UniPoly([other], self.var)

    def __add__(self, other):
        o = self._other(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self.coeff(i) + o.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    def __rmul__(self, other):
        return UniPoly([other * c for c in self.coeffs], self.var)

    def __truediv__(self, other):
        return UniPoly([c / other for c in self.coeffs], self.var)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if _scalar(other):
            return self.coeffs == ((other,) if other != 0 else ())
        return NotImplemented

    __hash__ = None

    def __call__(self, value):
        acc = Fraction(0) if is_exact(value) else value * 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    evaluate = __call__

    def scale(self, factor) -> "UniPoly":
        """The polynomial ``f(factor * var)``."""
        out, p = [], Fraction(1)
        for c in self.coeffs:
            out.append(c * p)
            p *= factor
        return UniPoly(out, self.var)

    def __repr__(self):
        return f"UniPoly({self}, var={self.var!r})"

    def __str__(self):
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c != 0:
                parts.append((c, "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")))
        return _join(parts)


class BiPoly:
    """Sparse polynomial in ``x`` and ``y``; keys are ``(deg_x, deg_y)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        t = {}
        if terms:
            for (i, j), c in terms.items():
                if c != 0:
                    t[(int(i), int(j))] = Fraction(c) if is_exact(c) else c
        self.terms = t

    @classmethod
    def constant(cls, value) -> "BiPoly":
        return cls({(0, 0): value})

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), Fraction(0))

    @staticmethod
    def _lift(other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.constant(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly({k: v * other for k, v in self.terms.items()})
        out: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out)

    def __rmul__(self, other):
        return BiPoly({k: other * v for k, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, BiPoly):
            raise TypeError("use divide_linear for polynomial division")
        return BiPoly({k: v / other for k, v in self.terms.items()})

    def __pow__(self, n: int):
        out = BiPoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if _scalar(other):
            return self.terms == ({(0, 0): other} if other != 0 else {})
        return NotImplemented

    __hash__ = None

    def __call__(self, x, y):
        total = 0
        for (i, j), c in self.terms.items():
            total = total + c * x**i * y**j
        return total

    evaluate = __call__

    def scale(self, fx=1, fy=1) -> "BiPoly":
        """The polynomial ``f(fx * x, fy * y)``."""
        return BiPoly({(i, j): c * Fraction(fx) ** i * Fraction(fy) ** j for (i, j), c in self.terms.items()})

    def divide_linear(self, c) -> "BiPoly":
        """Exact quotient by ``x - c*y``, dividing with ``x`` as main variable.

        A non-zero remainder raises NotDivisible.
        """
        c = Fraction(c)
        if not self.terms:
            return BiPoly()
        # coefficient polynomials A_i(y) of x^i, as dicts j -> coef
        top = max(i for i, _ in self.terms)
        rows = [dict() for _ in range(top + 1)]
        for (i, j), v in self.terms.items():
            rows[i][j] = v
        quotient: dict = {}
        carry: dict = {}  # B_i(y), starting from the top
        for i in range(top, 0, -1):
            b = dict(rows[i])
            for j, v in carry.items():
                b[j + 1] = b.get(j + 1, 0) + c * v
            b = {j: v for j, v in b.items() if v != 0}
            for j, v in b.items():
                quotient[(i - 1, j)] = v
            carry = b
        rem = dict(rows[0])
        for j, v in carry.items():
            rem[j + 1] = rem.get(j + 1, 0) + c * v
        if any(v != 0 for v in rem.values()):
            raise NotDivisible(f"remainder {BiPoly({(0, j): v for j, v in rem.items()})} modulo x - ({c})*y")
        return BiPoly(quotient)

    def __repr__(self):
        return f"BiPoly({self})"

    def __str__(self):
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            mono = "*".join(
                m for m in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                ) if m
            )
            parts.append((self.terms[(i, j)], mono))
        return _join(parts)
