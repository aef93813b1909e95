"""Exact integer Laurent polynomials in one formal variable.

Exponents are stored in half-steps (the exponent unit is 1/2), so the same
representation serves the bracket variable A (even half-steps), the Jones
variable with its half-integer powers of t, and the Conway variable z.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients.

    The key of each stored term is twice the visible exponent: the monomial
    q^(3/2) is stored at key 3, q^2 at key 4.  Zero coefficients are never
    stored.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c = c

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def const(n: int) -> "LaurentPoly":
        return LaurentPoly({0: n})

    @staticmethod
    def term(coeff: int = 1, half_exp: int = 0) -> "LaurentPoly":
        """Monomial coeff * q^(half_exp / 2)."""
        return LaurentPoly({half_exp: coeff})

    @staticmethod
    def var(step: int = 2) -> "LaurentPoly":
        """The variable itself; ``step=2`` is q, ``step=1`` is q^(1/2)."""
        return LaurentPoly({step: 1})

    # -- inspection ----------------------------------------------------

    def items(self) -> Iterable[tuple[int, int]]:
        return sorted(self._c.items())

    def coeff(self, half_exp: int) -> int:
        return self._c.get(half_exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_half_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    def max_half_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    def degree(self) -> float:
        """Maximum exponent in variable units (-inf for the zero polynomial)."""
        if not self._c:
            return float("-inf")
        return max(self._c) / 2

    def span(self) -> float:
        """Breadth max exponent - min exponent in variable units; 0 for zero."""
        if not self._c:
            return 0.0
        return (max(self._c) - min(self._c)) / 2

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) - v
        return LaurentPoly(c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __mul__(self, other: "LaurentPoly | int") -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) == 1:
                ((e, v),) = self._c.items()
                if v in (1, -1):
                    return LaurentPoly({-e * (-n): v ** (-n)})
            raise ValueError("negative powers only for unit monomials")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, half_exp: int) -> "LaurentPoly":
        """Multiply by q^(half_exp/2)."""
        return LaurentPoly({e + half_exp: v for e, v in self._c.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact polynomial division; raises ValueError on a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self._c)
        out: dict[int, int] = {}
        div_lead = max(other._c)
        div_coeff = other._c[div_lead]
        while rem:
            lead = max(rem)
            q, r = divmod(rem[lead], div_coeff)
            if r:
                raise ValueError("coefficients do not divide exactly")
            e = lead - div_lead
            out[e] = out.get(e, 0) + q
            for oe, ov in other._c.items():
                k = oe + e
                nv = rem.get(k, 0) - ov * q
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
            if rem and max(rem) >= lead:
                raise ValueError("division does not terminate")
        return LaurentPoly(out)

    def scale_exponents(self, num: int, den: int = 1) -> "LaurentPoly":
        """Substitute q -> q^(num/den); every exponent must stay a half-integer."""
        c: dict[int, int] = {}
        for e, v in self._c.items():
            t = e * num
            if t % den:
                raise ValueError(f"exponent {e}/2 * {num}/{den} is not a half-integer")
            c[t // den] = v
        return LaurentPoly(c)

    def substitute(self, value: "LaurentPoly") -> "LaurentPoly":
        """Evaluate at q = value; requires all exponents of self to be integers."""
        out = LaurentPoly.zero()
        for e, v in self.items():
            if e % 2:
                raise ValueError("substitute requires integer exponents")
            out = out + LaurentPoly.const(v) * (value ** (e // 2) if e >= 0 else value ** (-e // 2) * LaurentPoly.one())
        return out

    def mirror(self) -> "LaurentPoly":
        """Substitute q -> q^(-1)."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def evaluate_int(self, at: int) -> int:
        """Evaluate at an integer point; requires integer exponents >= things to make sense."""
        total = 0
        for e, v in self._c.items():
            if e % 2:
                raise ValueError("evaluate_int requires integer exponents")
            k = e // 2
            if k >= 0:
                total += v * at**k
            else:
                if at in (1, -1):
                    total += v * at ** (-k)
                else:
                    raise ValueError("negative exponent at non-unit point")
        return total

    # -- comparisons / formatting ---------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._c.items())))

    def to_text(self) -> str:
        """Canonical text form: terms ``coeff*q^(num/den)`` joined by ``+``.

        Exponents are printed in lowest terms and terms are sorted by
        exponent, so the output is bit-exact for golden tests.
        """
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items()):
            g = gcd(abs(e), 2) if e else 2
            num, den = e // g, 2 // g
            if e == 0:
                parts.append(f"{v}")
            elif den == 1:
                parts.append(f"{v}*q^({num})")
            else:
                parts.append(f"{v}*q^({num}/{den})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


def substitute_half_var(poly: LaurentPoly, value: LaurentPoly) -> LaurentPoly:
    """Evaluate ``poly`` at q = value where value itself may carry half-exponents.

    Used for z = t^(1/2) - t^(-1/2): z-polynomials have integer exponents and
    the result lives in half-steps of t.
    """
    out = LaurentPoly.zero()
    inv = None
    for e, v in poly.items():
        if e % 2:
            raise ValueError("polynomial must have integer exponents")
        k = e // 2
        if k >= 0:
            out = out + v * value**k
        else:
            if inv is None:
                if len(value._c) != 1:
                    raise ValueError("cannot invert a non-monomial")
                ((ve, vv),) = value._c.items()
                if vv not in (1, -1):
                    raise ValueError("cannot invert a non-unit monomial")
                inv = LaurentPoly({-ve: vv})
            out = out + v * inv ** (-k)
    return out
