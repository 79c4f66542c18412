"""Exact coefficients in q and power series in u truncated at a fixed order.

Coefficients are plain Python objects: :class:`fractions.Fraction` when q is a
concrete integer, and elements of sympy's rational function field Z(q) when q
is an indeterminate.  A :class:`QRing` carries the mode and hands out the
value of q, so the series code never needs to know which one it is holding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import ZZ
from sympy.polys.fields import field

_FIELD, _QGEN = field("q", ZZ)

# Test hook, see commlie.faults.
_FLIP_ALTERNATING = False


class ModeMismatch(ValueError):
    pass


class QRing:
    """Coefficient context: numeric (q given) or symbolic (q indeterminate)."""

    __slots__ = ("qvalue", "q", "one", "zero")

    def __init__(self, q: int | None = None):
        if q is None:
            self.qvalue = None
            self.q = _QGEN
            self.one = _FIELD.one
            self.zero = _FIELD.zero
        else:
            q = int(q)
            if q < 2:
                raise ValueError("q must be at least 2")
            self.qvalue = q
            self.q = Fraction(q)
            self.one = Fraction(1)
            self.zero = Fraction(0)

    @property
    def symbolic(self) -> bool:
        return self.qvalue is None

    @property
    def label(self):
        return "symbolic" if self.symbolic else self.qvalue

    def __eq__(self, other):
        return isinstance(other, QRing) and self.qvalue == other.qvalue

    def __hash__(self):
        return hash(self.qvalue)

    def __repr__(self):
        return f"QRing({self.label!r})"

    def coerce(self, x):
        if self.symbolic:
            return _FIELD(x) if not isinstance(x, Fraction) else _FIELD(x.numerator) / x.denominator
        return Fraction(x)

    def evaluate(self, x, at: int) -> Fraction:
        """Value of coefficient ``x`` at q = ``at``."""
        if not self.symbolic:
            if at != self.qvalue:
                raise ModeMismatch(f"numeric coefficient lives at q={self.qvalue}")
            return Fraction(x)
        return evaluate(x, at)

    def is_integral(self, x) -> bool:
        if self.symbolic:
            return x.denom == 1 or x.denom == -1
        return Fraction(x).denominator == 1

    def to_exact(self, x):
        """Integer (numeric) or canonical polynomial string (symbolic).

        Raises ``ValueError`` if ``x`` is not integral.
        """
        if not self.is_integral(x):
            raise ValueError(f"not integral: {x}")
        if self.symbolic:
            return render(x)
        return Fraction(x).numerator


def evaluate(x, at: int) -> Fraction:
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return Fraction(int(x.numer(at)), int(x.denom(at)))


def _render_poly(poly) -> str:
    terms = sorted(poly.terms(), key=lambda t: -t[0][0])
    if not terms:
        return "0"
    out = []
    for idx, ((e,), c) in enumerate(terms):
        c = int(c)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        if idx == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


def render(x) -> str:
    """Canonical descending form, e.g. ``q^6 + q^5 - q^3``."""
    if isinstance(x, (int, Fraction)):
        return str(x)
    num = _render_poly(x.numer)
    if x.denom == 1:
        return num
    return f"({num})/({_render_poly(x.denom)})"


def parse_poly(text: str):
    """Inverse of :func:`render` for polynomials."""
    from sympy import sympify, Symbol

    expr = sympify(text.replace("^", "**"), locals={"q": Symbol("q")})
    return _FIELD.from_expr(expr)


# -- q-Pochhammer -------------------------------------------------------------

def qpoch(x, r: int, ring: QRing):
    """Product of (1 - x^s) for s = 1..r."""
    out = ring.one
    xs = ring.one
    for _ in range(r):
        xs = xs * x
        out = out * (ring.one - xs)
    return out


def pochhammer(d: int, sign: int, r: int, ring: QRing):
    """(1/q^d)_r, with q replaced by -q first when ``sign`` is -1.

    That is the product over s = 1..r of (1 - 1/((sign*q)^d)^s).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    if _FLIP_ALTERNATING and sign == -1:
        sign = 1
    base = (sign * ring.q) ** d
    return qpoch(ring.one / base, r, ring)


# -- truncated series in u ---------------------------------------------------

class USeries:
    """Power series in u modulo u^(order+1)."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: QRing, coeffs: Sequence):
        self.ring = ring
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise ValueError("series needs at least the constant coefficient")

    @classmethod
    def zero(cls, ring: QRing, order: int) -> USeries:
        return cls(ring, [ring.zero] * (order + 1))

    @classmethod
    def one(cls, ring: QRing, order: int) -> USeries:
        return cls.monomial(ring, order, 0, ring.one)

    @classmethod
    def monomial(cls, ring: QRing, order: int, k: int, c) -> USeries:
        s = cls.zero(ring, order)
        if k <= order:
            s.coeffs[k] = ring.coerce(c) if isinstance(c, (int, Fraction)) else c
        return s

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self):
        return f"USeries({self.ring!r}, {[render(c) if self.ring.symbolic else c for c in self.coeffs]})"

    def _check(self, other: USeries):
        if self.ring != other.ring:
            raise ModeMismatch(f"{self.ring!r} vs {other.ring!r}")
        if self.order != other.order:
            raise ModeMismatch(f"order {self.order} vs {other.order}")

    def __eq__(self, other):
        if not isinstance(other, USeries):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __add__(self, other):
        self._check(other)
        return USeries(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return USeries(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return USeries(self.ring, [-a for a in self.coeffs])

    def scale(self, c) -> USeries:
        return USeries(self.ring, [c * a for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, USeries):
            return self.scale(other)
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        zero = self.ring.zero
        out = [zero] * (n + 1)
        nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in nz_b:
                if i + j > n:
                    break
                out[i + j] = out[i + j] + ai * bj
        return USeries(self.ring, out)

    __rmul__ = scale

    def __pow__(self, e: int) -> USeries:
        if not isinstance(e, int) or e < 0:
            raise ValueError("series power needs a nonnegative integer exponent")
        result = USeries.one(self.ring, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def recip(self) -> USeries:
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("constant term is not invertible")
        inv0 = self.ring.one / a[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            acc = self.ring.zero
            for j in range(1, k + 1):
                if a[j]:
                    acc = acc + a[j] * out[k - j]
            out.append(-acc * inv0)
        return USeries(self.ring, out)

    def log(self) -> USeries:
        """Formal logarithm; requires constant term 1."""
        a = self.coeffs
        if a[0] != self.ring.one:
            raise ValueError("log needs constant term 1")
        n = self.order
        # b = log a  <=>  k b_k = k a_k - sum_{j=1}^{k-1} j b_j a_{k-j}
        b = [self.ring.zero] * (n + 1)
        for k in range(1, n + 1):
            acc = k * a[k]
            for j in range(1, k):
                if b[j] and a[k - j]:
                    acc = acc - j * b[j] * a[k - j]
            b[k] = acc / k
        return USeries(self.ring, b)

    def exp(self) -> USeries:
        """Formal exponential; requires constant term 0."""
        b = self.coeffs
        if b[0]:
            raise ValueError("exp needs constant term 0")
        n = self.order
        # a = exp b  <=>  k a_k = sum_{j=1}^{k} j b_j a_{k-j}
        a = [self.ring.one] + [self.ring.zero] * n
        for k in range(1, n + 1):
            acc = self.ring.zero
            for j in range(1, k + 1):
                if b[j]:
                    acc = acc + j * b[j] * a[k - j]
            a[k] = acc / k
        return USeries(self.ring, a)

    def power(self, e) -> USeries:
        """``self ** e`` for an arbitrary coefficient exponent ``e``.

        Integer exponents go through repeated squaring; anything else (a
        polynomial in q, say) through exp(e * log(self)), which needs the
        constant term to be 1.
        """
        if isinstance(e, int) or (isinstance(e, Fraction) and e.denominator == 1):
            e = int(e)
            if e >= 0:
                return self ** e
            return (self ** (-e)).recip()
        return (self.log().scale(e)).exp()

    def substitute_power(self, k: int) -> USeries:
        """u -> u^k, keeping the same truncation order."""
        out = [self.ring.zero] * (self.order + 1)
        for i, c in enumerate(self.coeffs):
            if i * k > self.order:
                break
            out[i * k] = c
        return USeries(self.ring, out)

    def halve_degrees(self) -> USeries:
        """u^(2n) -> v^n; every odd coefficient must vanish."""
        for i in range(1, self.order + 1, 2):
            if self.coeffs[i]:
                raise ValueError(f"series has a nonzero odd coefficient at u^{i}")
        return USeries(self.ring, self.coeffs[::2])

    def evaluate_at(self, at: int) -> USeries:
        ring = QRing(at)
        return USeries(ring, [ring.coerce(evaluate(c, at)) for c in self.coeffs])


def series_mul(a: USeries, b: USeries) -> USeries:
    return a * b


def series_pow(a: USeries, e: int) -> USeries:
    return a ** e


def series_recip(a: USeries) -> USeries:
    return a.recip()


def euler_sum(i: int, scale, base: tuple[int, int], order: int, ring: QRing) -> USeries:
    """Sum over m of (scale * u^i)^m / (base)_m, truncated at u^order.

    ``base`` is ``(d, sign)`` as in :func:`pochhammer`.  This is the
    finite-per-coefficient form of the product over l >= 0 of
    1 / (1 - scale * u^i / q~^l), q~ = (sign*q)^d.
    """
    if i < 1:
        raise ValueError("i must be positive")
    d, sign = base
    scale = ring.coerce(scale) if isinstance(scale, (int, Fraction)) else scale
    out = USeries.zero(ring, order)
    term = ring.one
    m = 0
    while i * m <= order:
        out.coeffs[i * m] = term / pochhammer(d, sign, m, ring)
        term = term * scale
        m += 1
    return out
