"""Truncated formal power series in one variable over a pluggable exact
coefficient ring.

Coefficients are stored densely for exponents 0..order.  The ring is a small
adapter object supplying the constants and the few operations that cannot be
expressed through the coefficient type's own operators (integer division,
inversion, zero test, JSON encoding).  Binary operations truncate to the
smaller order of the two operands.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from gmpy2 import mpq

from .exactnum import (
    Cyc,
    LambdaLaurent,
    LambdaPoly,
    rat_from_json,
    rat_to_json,
)


@dataclass(frozen=True)
class Ring:
    name: str
    zero: object
    one: object
    of_int: Callable
    div_int: Callable
    invert: Callable
    is_zero: Callable
    encode: Callable
    decode: Callable
    sqrt: Callable = field(default=None)


RING_Q = Ring(
    name="rational",
    zero=mpq(0),
    one=mpq(1),
    of_int=lambda n: mpq(n),
    div_int=lambda a, n: a / n,
    invert=lambda a: 1 / a,
    is_zero=lambda a: a == 0,
    encode=rat_to_json,
    decode=rat_from_json,
    sqrt=None,
)

RING_CYC = Ring(
    name="cyclotomic",
    zero=Cyc.from_rat(0),
    one=Cyc.from_rat(1),
    of_int=lambda n: Cyc.from_rat(n),
    div_int=lambda a, n: a * Cyc.from_rat(mpq(1, n)),
    invert=lambda a: a.inverse(),
    is_zero=lambda a: a.is_zero(),
    encode=lambda a: a.to_json(),
    decode=Cyc.from_json,
)

RING_LAURENT = Ring(
    name="lambda-laurent",
    zero=LambdaLaurent.from_rat(0),
    one=LambdaLaurent.from_rat(1),
    of_int=lambda n: LambdaLaurent.from_rat(n),
    div_int=lambda a, n: a * LambdaLaurent.from_rat(mpq(1, n)),
    invert=lambda a: a.inverse(),
    is_zero=lambda a: a.is_zero(),
    encode=lambda a: a.to_json(),
    decode=LambdaLaurent.from_json,
    sqrt=lambda a: a.sqrt(),
)

RING_LPOLY = Ring(
    name="lambda-poly",
    zero=LambdaPoly((0,)),
    one=LambdaPoly((1,)),
    of_int=lambda n: LambdaPoly((n,)),
    div_int=lambda a, n: a / n,
    invert=lambda a: a.inverse(),
    is_zero=lambda a: a.is_zero(),
    encode=lambda a: a.to_json(),
    decode=LambdaPoly.from_json,
)

RINGS = {r.name: r for r in (RING_Q, RING_CYC, RING_LAURENT, RING_LPOLY)}


class TruncatedSeries:
    """Power series truncated at a fixed order, exact in its ring.

    >>> t = TruncatedSeries.variable(RING_Q, 3)
    >>> ((1 + t) * (1 - t)).coeffs
    [mpq(1,1), mpq(0,1), mpq(-1,1), mpq(0,1)]
    """

    __slots__ = ("ring", "coeffs", "order", "var")

    def __init__(self, ring: Ring, coeffs, order: int, var: str = "t"):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = list(coeffs)[: order + 1]
        cs += [ring.zero] * (order + 1 - len(cs))
        self.ring = ring
        self.coeffs = cs
        self.order = order
        self.var = var

    # -- constructors ----------------------------------------------------
    @staticmethod
    def constant(ring: Ring, value, order: int, var: str = "t"):
        return TruncatedSeries(ring, [value], order, var)

    @staticmethod
    def zero(ring: Ring, order: int, var: str = "t"):
        return TruncatedSeries(ring, [], order, var)

    @staticmethod
    def one(ring: Ring, order: int, var: str = "t"):
        return TruncatedSeries(ring, [ring.one], order, var)

    @staticmethod
    def variable(ring: Ring, order: int, var: str = "t"):
        return TruncatedSeries(ring, [ring.zero, ring.one], order, var)

    @staticmethod
    def from_terms(ring: Ring, terms, order: int, var: str = "t"):
        """terms: iterable of (exponent, coefficient)."""
        cs = [ring.zero] * (order + 1)
        for k, c in terms:
            if k <= order:
                cs[k] = cs[k] + c
        return TruncatedSeries(ring, cs, order, var)

    # -- basics ----------------------------------------------------------
    def __getitem__(self, k: int):
        if k < 0:
            raise IndexError("negative exponent")
        if k > self.order:
            raise IndexError(f"exponent {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.ring, self.coeffs[: order + 1], order, self.var)

    def rename(self, var: str) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.coeffs, self.order, var)

    def is_zero(self) -> bool:
        z = self.ring.is_zero
        return all(z(c) for c in self.coeffs)

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if not self.ring.is_zero(c):
                return k
        return None

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(a == b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        try:
            c = other * self.ring.one if not isinstance(other, int) else self.ring.of_int(other)
        except TypeError:
            return None
        return TruncatedSeries.constant(self.ring, c, self.order, self.var)

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        return TruncatedSeries(
            self.ring,
            [a + b for a, b in zip(self.coeffs[: n + 1], o.coeffs[: n + 1])],
            n,
            self.var,
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, [-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        zero, is_zero = self.ring.zero, self.ring.is_zero
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if is_zero(a):
                continue
            for j in range(n + 1 - i):
                b = o.coeffs[j]
                if not is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.ring, out, n, self.var)

    __rmul__ = __mul__

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, [c * a for a in self.coeffs], self.order, self.var)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self.order, o.order)
        try:
            b0inv = self.ring.invert(o.coeffs[0])
        except (ZeroDivisionError, ValueError) as e:
            raise ZeroDivisionError(
                f"constant term is not a unit: {o.coeffs[0]!r}"
            ) from e
        zero, is_zero = self.ring.zero, self.ring.is_zero
        out = [zero] * (n + 1)
        for k in range(n + 1):
            acc = self.coeffs[k]
            for j in range(1, k + 1):
                b = o.coeffs[j]
                if not is_zero(b):
                    acc = acc - b * out[k - j]
            out[k] = acc * b0inv
        return TruncatedSeries(self.ring, out, n, self.var)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return (TruncatedSeries.one(self.ring, self.order, self.var) / self) ** (-n)
        out = TruncatedSeries.one(self.ring, self.order, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base, n = base * base, n >> 1
        return out

    # -- calculus --------------------------------------------------------
    def derivative(self) -> "TruncatedSeries":
        """d/dvar, with the order dropping by one."""
        if self.order == 0:
            return TruncatedSeries.zero(self.ring, 0, self.var)
        out = [
            self.ring.of_int(k + 1) * self.coeffs[k + 1] for k in range(self.order)
        ]
        return TruncatedSeries(self.ring, out, self.order - 1, self.var)

    def antiderivative(self, constant=None) -> "TruncatedSeries":
        c0 = self.ring.zero if constant is None else constant
        out = [c0] + [
            self.ring.div_int(self.coeffs[k], k + 1) for k in range(self.order + 1)
        ]
        return TruncatedSeries(self.ring, out, self.order + 1, self.var)

    def log(self) -> "TruncatedSeries":
        if self.coeffs[0] != self.ring.one:
            raise ValueError(f"log needs constant term 1, got {self.coeffs[0]!r}")
        d = (self.derivative() / self.truncate(max(self.order - 1, 0))).antiderivative()
        return d.truncate(self.order)

    def exp(self) -> "TruncatedSeries":
        if not self.ring.is_zero(self.coeffs[0]):
            raise ValueError(f"exp needs constant term 0, got {self.coeffs[0]!r}")
        out = [self.ring.one] + [self.ring.zero] * self.order
        for n in range(1, self.order + 1):
            acc = self.ring.zero
            for k in range(1, n + 1):
                a = self.coeffs[k]
                if not self.ring.is_zero(a):
                    acc = acc + self.ring.of_int(k) * a * out[n - k]
            out[n] = self.ring.div_int(acc, n)
        return TruncatedSeries(self.ring, out, self.order, self.var)

    def nth_root(self, n: int) -> "TruncatedSeries":
        """The root with constant term 1 of a series with constant term 1."""
        if self.coeffs[0] != self.ring.one:
            raise ValueError(f"nth_root needs constant term 1, got {self.coeffs[0]!r}")
        return TruncatedSeries(
            self.ring,
            [self.ring.div_int(c, n) for c in self.log().coeffs],
            self.order,
            self.var,
        ).exp()

    def sqrt(self) -> "TruncatedSeries":
        """Square root when the leading coefficient has one in the ring
        (monomial case for the Laurent ring, square rationals otherwise)."""
        v = self.valuation()
        if v is None:
            raise ValueError("square root of the zero series")
        if v % 2:
            raise ValueError("odd valuation has no series square root")
        lead = self.coeffs[v]
        if lead == self.ring.one:
            root_lead = self.ring.one
        elif self.ring.sqrt is not None:
            root_lead = self.ring.sqrt(lead)
        else:
            raise ValueError(f"no square root rule for leading {lead!r}")
        unit = self.shift(-v).scale(self.ring.invert(lead))
        return unit.nth_root(2).scale(root_lead).shift(v // 2)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by var^k (k may be negative when divisible)."""
        if k >= 0:
            return TruncatedSeries(
                self.ring, [self.ring.zero] * k + self.coeffs, self.order + k, self.var
            )
        for j in range(-k):
            if j <= self.order and not self.ring.is_zero(self.coeffs[j]):
                raise ValueError("not divisible by the requested power")
        return TruncatedSeries(
            self.ring, self.coeffs[-k:], self.order + k, self.var
        )

    # -- composition -----------------------------------------------------
    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        if not self.ring.is_zero(inner.coeffs[0]):
            raise ValueError(
                f"inner constant term must vanish, got {inner.coeffs[0]!r}"
            )
        n = min(self.order, inner.order)
        out = TruncatedSeries.constant(self.ring, self.coeffs[n], n, inner.var)
        inner = inner.truncate(n)
        for k in range(n - 1, -1, -1):
            out = out * inner + self.coeffs[k]
        return out

    def reversion(self) -> "TruncatedSeries":
        """Compositional inverse of c*var + O(var^2), c a unit."""
        if not self.ring.is_zero(self.coeffs[0]):
            raise ValueError("reversion needs zero constant term")
        if self.order < 1 or self.ring.is_zero(self.coeffs[1]):
            raise ValueError("reversion needs an invertible linear coefficient")
        n = self.order
        x = TruncatedSeries.variable(self.ring, n, self.var)
        b = x.scale(self.ring.invert(self.coeffs[1]))
        d = TruncatedSeries(self.ring, self.derivative().coeffs, n, self.var)
        # Newton; the contraction at least doubles the error valuation
        for _ in range(n.bit_length() + 3):
            err = self.compose(b) - x
            if err.is_zero():
                return b
            b = b - err / d.compose(b)
        err = self.compose(b) - x
        if err.is_zero():
            return b
        raise RuntimeError("reversion did not converge")

    def map_coeffs(self, fn: Callable, ring: Ring) -> "TruncatedSeries":
        return TruncatedSeries(ring, [fn(c) for c in self.coeffs], self.order, self.var)

    def dilate(self, k: int) -> "TruncatedSeries":
        """Substitute var -> var^k (order scales accordingly)."""
        if k < 1:
            raise ValueError("dilation exponent must be positive")
        out = [self.ring.zero] * (self.order * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return TruncatedSeries(self.ring, out, self.order * k, self.var)

    def scale_var(self, c) -> "TruncatedSeries":
        """Substitute var -> c*var."""
        out, p = [], self.ring.one
        for a in self.coeffs:
            out.append(p * a)
            p = p * c
        return TruncatedSeries(self.ring, out, self.order, self.var)

    # -- reporting -------------------------------------------------------
    def __repr__(self):
        shown = [(k, c) for k, c in enumerate(self.coeffs) if not self.ring.is_zero(c)]
        body = " + ".join(f"({c!r})*{self.var}^{k}" for k, c in shown[:6])
        more = " + ..." if len(shown) > 6 else ""
        return f"<series[{self.ring.name}] O({self.var}^{self.order + 1}): {body or '0'}{more}>"

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "order": self.order,
            "ring": self.ring.name,
            "coeffs": [self.ring.encode(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json(obj: dict) -> "TruncatedSeries":
        ring = RINGS[obj["ring"]]
        return TruncatedSeries(
            ring, [ring.decode(c) for c in obj["coeffs"]], obj["order"], obj["var"]
        )

    def to_csv(self) -> str:
        """exponent,coefficient rows; rational ring only."""
        if self.ring is not RING_Q:
            raise ValueError("CSV output is defined for the rational ring")
        lines = ["exponent,coefficient"]
        for k, c in enumerate(self.coeffs):
            if c != 0:
                lines.append(f"{k},{c.numerator}/{c.denominator}")
        return "\n".join(lines) + "\n"
