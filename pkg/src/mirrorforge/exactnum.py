"""Exact coefficient arithmetic: rationals, the degree-5 cyclotomic field,
Laurent monomials in a half-integer-graded weight, and dense polynomials in
the degree-zero combination of that weight.

Every value is immutable.  The JSON encodings used across the package live
here as well: a rational is {"n": str, "d": str}, a cyclotomic scalar is a
4-array of rationals (basis 1, xi, xi^2, xi^3), a Laurent element is a list
of {"halfexp": int, "c": [rationals]} terms.
"""
from __future__ import annotations

from gmpy2 import is_square, isqrt, mpq

Rat = mpq
_SCALARS = (int, type(mpq(0)))


class CancellationError(ArithmeticError):
    """An expression that must reduce to a plain rational failed to; the
    offending residual is kept for the report."""

    def __init__(self, message: str, residual: object = None):
        super().__init__(message)
        self.residual = residual


def rat(n: object, d: object = 1) -> Rat:
    return mpq(n, d)


def rat_to_json(x: Rat) -> dict:
    return {"n": str(x.numerator), "d": str(x.denominator)}


def rat_from_json(obj: dict) -> Rat:
    return mpq(int(obj["n"]), int(obj["d"]))


def rat_sqrt(x: Rat) -> Rat:
    """Exact square root of a rational that is a perfect square.

    >>> rat_sqrt(mpq(9, 4))
    mpq(3,2)
    """
    if x < 0 or not (is_square(x.numerator) and is_square(x.denominator)):
        raise ValueError(f"not a rational square: {x}")
    return mpq(isqrt(x.numerator), isqrt(x.denominator))


def _reduce5(v: list) -> tuple:
    # xi^4 = -(1 + xi + xi^2 + xi^3)
    top = v[4]
    return tuple(v[i] - top for i in range(4))


class Cyc:
    """Element of Q(xi) with xi a primitive fifth root of unity, stored on
    the basis 1, xi, xi^2, xi^3."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        cs = tuple(mpq(x) for x in coeffs)
        if len(cs) != 4:
            raise ValueError("need 4 coefficients")
        object.__setattr__(self, "c", cs)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @staticmethod
    def from_rat(x) -> "Cyc":
        return Cyc((mpq(x), 0, 0, 0))

    @staticmethod
    def zeta_power(n: int) -> "Cyc":
        """xi^n for any integer n.

        >>> Cyc.zeta_power(7) == Cyc.zeta_power(2)
        True
        """
        v = [mpq(0)] * 5
        v[n % 5] = mpq(1)
        return Cyc(_reduce5(v))

    def _coerce(self, other):
        if isinstance(other, Cyc):
            return other
        if isinstance(other, _SCALARS):
            return Cyc.from_rat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyc(tuple(-a for a in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        v = [mpq(0)] * 9
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        v[i + j] += a * b
        # fold degrees 5..8 down with xi^5 = 1, then reduce degree 4
        w = [v[i] + (v[i + 5] if i + 5 < 9 else mpq(0)) for i in range(5)]
        return Cyc(_reduce5(w))

    __rmul__ = __mul__

    def galois(self, k: int) -> "Cyc":
        """Field automorphism xi -> xi^k, k coprime to 5."""
        v = [mpq(0)] * 5
        for i, a in enumerate(self.c):
            v[(i * k) % 5] += a
        return Cyc(_reduce5(v))

    def inverse(self) -> "Cyc":
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic zero")
        y = self.galois(2) * self.galois(3) * self.galois(4)
        norm = self * y
        if not norm.is_rational():
            raise AssertionError("norm must be rational")
        n = norm.rational_part()
        return Cyc(tuple(a / n for a in y.c))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = Cyc.from_rat(1), self
        while n:
            if n & 1:
                out = out * base
            base, n = base * base, n >> 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)

    def is_rational(self) -> bool:
        return all(a == 0 for a in self.c[1:])

    def rational_part(self) -> Rat:
        if not self.is_rational():
            raise CancellationError("cyclotomic residual", self)
        return self.c[0]

    def monomial_split(self):
        """Write self as r * xi^j if possible, else None.

        The reduced basis hides pure powers (xi^3 * xi = xi^4 has four
        nonzero basis coefficients), so test all five twists.
        """
        for j in range(5):
            t = self * Cyc.zeta_power(-j)
            if t.is_rational():
                return (t.rational_part(), j)
        return None

    def __repr__(self):
        return f"Cyc{self.c}"

    def to_json(self):
        return [rat_to_json(a) for a in self.c]

    @staticmethod
    def from_json(obj) -> "Cyc":
        return Cyc([rat_from_json(a) for a in obj])


ZETA = Cyc.zeta_power(1)
CYC_ONE = Cyc.from_rat(1)
CYC_ZERO = Cyc.from_rat(0)


def zeta_half_power(n: int) -> Cyc:
    """The in-group half power xi^(n/2) := (xi^3)^n, using that 3 doubles
    to 1 mod 5; squaring it recovers xi^n.

    >>> zeta_half_power(2) == ZETA
    True
    """
    return Cyc.zeta_power((3 * n) % 5)


class LambdaLaurent:
    """Finite Laurent combination sum_h c_h * lambda^(h/2) with cyclotomic
    coefficients, keyed by the integer half-exponent h."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        clean = {}
        for h, c in terms.items():
            if not isinstance(c, Cyc):
                c = Cyc.from_rat(c)
            if not c.is_zero():
                clean[int(h)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @staticmethod
    def from_rat(x) -> "LambdaLaurent":
        return LambdaLaurent({0: Cyc.from_rat(x)})

    @staticmethod
    def from_cyc(c: Cyc) -> "LambdaLaurent":
        return LambdaLaurent({0: c})

    @staticmethod
    def lambda_power(half: int, coeff=None) -> "LambdaLaurent":
        """coeff * lambda^(half/2); coeff defaults to 1."""
        return LambdaLaurent({half: CYC_ONE if coeff is None else coeff})

    def _coerce(self, other):
        if isinstance(other, LambdaLaurent):
            return other
        if isinstance(other, Cyc):
            return LambdaLaurent.from_cyc(other)
        if isinstance(other, _SCALARS):
            return LambdaLaurent.from_rat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for h, c in o.terms.items():
            out[h] = out.get(h, CYC_ZERO) + c
        return LambdaLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return LambdaLaurent({h: -c for h, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for h1, c1 in self.terms.items():
            for h2, c2 in o.terms.items():
                h = h1 + h2
                p = c1 * c2
                out[h] = out.get(h, CYC_ZERO) + p
        return LambdaLaurent(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "LambdaLaurent":
        """Defined for monomials only; general inversion would leave the
        Laurent-polynomial ring."""
        if not self.is_monomial():
            raise ZeroDivisionError(f"not a unit monomial: {self!r}")
        ((h, c),) = self.terms.items()
        return LambdaLaurent({-h: c.inverse()})

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = LambdaLaurent.from_rat(1), self
        while n:
            if n & 1:
                out = out * base
            base, n = base * base, n >> 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_rational(self) -> bool:
        return not self.terms or (
            set(self.terms) == {0} and self.terms[0].is_rational()
        )

    def rational_part(self) -> Rat:
        if self.is_zero():
            return mpq(0)
        if not self.is_rational():
            raise CancellationError("lambda/xi residual", self)
        return self.terms[0].rational_part()

    def sqrt(self) -> "LambdaLaurent":
        """Square root of a monomial r*xi^j*lambda^(h/2) with r a rational
        square and h even; the root uses the in-group half power of xi."""
        if not self.is_monomial():
            raise ValueError("square root only for monomials")
        ((h, c),) = self.terms.items()
        if h % 2:
            raise ValueError("odd half-exponent has no half-integer root here")
        split = c.monomial_split()
        if split is None:
            raise ValueError(f"coefficient is not a xi-monomial: {c!r}")
        r, j = split
        return LambdaLaurent({h // 2: zeta_half_power(j) * rat_sqrt(r)})

    def scale_lambda(self, s: Rat) -> "LambdaLaurent":
        """Substitute lambda -> s*lambda; requires whole lambda-exponents."""
        out = {}
        for h, c in self.terms.items():
            if h % 2:
                raise ValueError("scaling undefined at half-integer exponents")
            out[h] = c * mpq(s) ** (h // 2)
        return LambdaLaurent(out)

    def __repr__(self):
        if not self.terms:
            return "LambdaLaurent(0)"
        bits = [f"{c!r}*lam^({h}/2)" for h, c in sorted(self.terms.items())]
        return " + ".join(bits)

    def to_json(self):
        return [
            {"halfexp": h, "c": c.to_json()} for h, c in sorted(self.terms.items())
        ]

    @staticmethod
    def from_json(obj) -> "LambdaLaurent":
        return LambdaLaurent({t["halfexp"]: Cyc.from_json(t["c"]) for t in obj})


LL_ONE = LambdaLaurent.from_rat(1)
LL_ZERO = LambdaLaurent.from_rat(0)


class LambdaPoly:
    """Dense polynomial in the degree-zero variable Lam (= the fifth power
    of the equivariant weight over the fifth power of the spectral variable),
    with rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=(0,)):
        if isinstance(coeffs, _SCALARS):
            coeffs = (coeffs,)
        cs = [mpq(x) for x in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "c", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("immutable")

    @staticmethod
    def variable() -> "LambdaPoly":
        return LambdaPoly((0, 1))

    def degree(self) -> int:
        return len(self.c) - 1

    def _coerce(self, other):
        if isinstance(other, LambdaPoly):
            return other
        if isinstance(other, _SCALARS):
            return LambdaPoly((other,))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.c), len(o.c))
        a = list(self.c) + [mpq(0)] * (n - len(self.c))
        for i, x in enumerate(o.c):
            a[i] += x
        return LambdaPoly(a)

    __radd__ = __add__

    def __neg__(self):
        return LambdaPoly(tuple(-x for x in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = [mpq(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        out[i + j] += a * b
        return LambdaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # scalar division only; the ring is not a field
        if isinstance(other, _SCALARS):
            return LambdaPoly(tuple(a / mpq(other) for a in self.c))
        o = self._coerce(other)
        if o is not None and o.degree() == 0:
            return self / o.c[0]
        return NotImplemented

    def __pow__(self, n: int):
        out, base = LambdaPoly((1,)), self
        while n:
            if n & 1:
                out = out * base
            base, n = base * base, n >> 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self) -> bool:
        return self.c == (mpq(0),)

    def at_zero(self) -> Rat:
        return self.c[0]

    def inverse(self) -> "LambdaPoly":
        if self.degree() != 0 or self.c[0] == 0:
            raise ZeroDivisionError("only nonzero constants invert")
        return LambdaPoly((1 / self.c[0],))

    def __repr__(self):
        return f"LambdaPoly{self.c}"

    def to_json(self):
        return [rat_to_json(a) for a in self.c]

    @staticmethod
    def from_json(obj) -> "LambdaPoly":
        return LambdaPoly([rat_from_json(a) for a in obj])


LP_ONE = LambdaPoly((1,))
LP_ZERO = LambdaPoly((0,))
LAM = LambdaPoly.variable()


def rationality_project(x):
    """Project onto the plain rationals, raising CancellationError (with the
    residual attached) if anything cyclotomic or weighted survives.

    >>> rationality_project(LambdaLaurent.from_rat(mpq(7, 3)))
    mpq(7,3)
    """
    if isinstance(x, _SCALARS):
        return mpq(x)
    if isinstance(x, (Cyc, LambdaLaurent)):
        return x.rational_part()
    if isinstance(x, LambdaPoly):
        if x.degree() > 0:
            raise CancellationError("Lam residual", x)
        return x.at_zero()
    raise TypeError(f"no rational projection for {type(x).__name__}")
