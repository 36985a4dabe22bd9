"""Twisted polynomials, Ore fractions and truncated twisted Laurent series.

H[t,sigma] multiplies by the rule t*a = sigma(a)*t.  Over a division ring
the degree of a product is the sum of the degrees, both one-sided divisions
are exact, and any two nonzero polynomials have a common right multiple of
minimal degree; fractions num*den^{-1} are compared through that relation
rather than a normal form.  Truncated Laurent series carry their precision
explicitly, and a linear recurrence with twisted coefficients certifies
that a series comes from a fraction.

The bounded-degree center computation and the tensor-decomposition check
reduce everything to exact rational linear algebra: twists and one-sided
multiplications are rational-linear on coordinates, so commutation
constraints vectorize over Q.
"""

from fractions import Fraction

from .linalg import kernel_basis, rank, same_span, solve
from .numfield import fixed_field
from .qalg import (QuatElement, extend_quaternion, inner_order,
                   quat_from_q_vector)

_Q0 = Fraction(0)
_Q1 = Fraction(1)


class InsufficientPrecision(ValueError):
    """Stored series is too short for the requested recurrence order."""


class HypothesisFailed(Exception):
    """A stated hypothesis of the check does not hold for the input."""


# ---------------------------------------------------------------------------
# skew polynomials
# ---------------------------------------------------------------------------

class SkewPoly:
    """Polynomial over a quaternion algebra with twisted multiplication."""

    __slots__ = ('twist', 'coeffs')

    def __init__(self, twist, coeffs):
        alg = twist.owner
        norm = []
        for c in coeffs:
            if isinstance(c, QuatElement):
                if c.alg != alg:
                    raise ValueError("coefficient in the wrong algebra")
                norm.append(c)
            else:
                norm.append(alg.scalar(c))
        while norm and norm[-1].is_zero():
            norm.pop()
        object.__setattr__(self, 'twist', twist)
        object.__setattr__(self, 'coeffs', tuple(norm))

    def __setattr__(self, name, value):
        raise AttributeError("SkewPoly is immutable")

    @property
    def alg(self):
        return self.twist.owner

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return not self.is_zero()

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        raise ValueError("valuation of zero")

    def leading(self):
        if self.is_zero():
            raise ValueError("leading coefficient of zero")
        return self.coeffs[-1]

    def coefficient(self, n):
        if 0 <= n < len(self.coeffs):
            return self.coeffs[n]
        return self.alg.zero()

    def _coerce(self, other):
        if isinstance(other, SkewPoly):
            if other.twist != self.twist:
                raise ValueError("polynomials with different twists")
            return other
        if isinstance(other, (int, Fraction, QuatElement)):
            return SkewPoly(self.twist, [other])
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.twist, self.coeffs))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return SkewPoly(self.twist,
                        [self.coefficient(i) + o.coefficient(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly(self.twist, [-c for c in self.coeffs])

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
        if self.is_zero() or o.is_zero():
            return SkewPoly(self.twist, [])
        out = [self.alg.zero()] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            tw = self.twist.power(i)
            for j, b in enumerate(o.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * tw(b)
        return SkewPoly(self.twist, out)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def map_coefficients(self, fn):
        return SkewPoly(self.twist, [fn(c) for c in self.coeffs])

    def q_vector(self, degree_bound):
        """Rational coordinates on the basis (quaternion basis) x t^j."""
        if self.degree() > degree_bound:
            raise ValueError("degree above the bound")
        out = []
        for j in range(degree_bound + 1):
            out.extend(self.coefficient(j).q_vector())
        return out

    def __repr__(self):
        return 'SkewPoly(deg %d over %s)' % (self.degree(), self.alg.label)


def t_poly(twist):
    return SkewPoly(twist, [0, 1])


def constant_poly(twist, c):
    return SkewPoly(twist, [c])


def skew_arith(p, q, op):
    if op == 'add':
        return p + q
    if op == 'mul':
        return p * q
    raise ValueError("unknown operation %r" % op)


def right_divide(a, b):
    """Quotient and remainder with a = q*b + r and deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    twist = a.twist
    q = SkewPoly(twist, [])
    r = a
    db = b.degree()
    blead = b.leading()
    while not r.is_zero() and r.degree() >= db:
        d = r.degree() - db
        c = r.leading() * twist.power(d)(blead).inverse()
        term = SkewPoly(twist, [twist.owner.zero()] * d + [c])
        q = q + term
        r = r - term * b
    return q, r


def left_divide(a, b):
    """Quotient and remainder with a = b*q + r and deg r < deg b."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    twist = a.twist
    q = SkewPoly(twist, [])
    r = a
    db = b.degree()
    blead_inv = b.leading().inverse()
    while not r.is_zero() and r.degree() >= db:
        d = r.degree() - db
        c = twist.power(-db)(blead_inv * r.leading())
        term = SkewPoly(twist, [twist.owner.zero()] * d + [c])
        q = q + term
        r = r - b * term
    return q, r


def ore_right_lcm(a, b):
    """Minimal common right multiple: (m, u, v) with a*u = b*v = m != 0.

    Extended Euclidean scheme on left division, cofactors accumulating on
    the right; the construction identities are re-verified before return.
    """
    if a.is_zero() or b.is_zero():
        raise ZeroDivisionError("common multiple with zero")
    twist = a.twist
    one = constant_poly(twist, 1)
    zero = SkewPoly(twist, [])
    r0, r1 = a, b
    u0, u1 = one, zero
    v0, v1 = zero, one
    while not r1.is_zero():
        q, r = left_divide(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - u1 * q
        v0, v1 = v1, v0 - v1 * q
    m = a * u1
    if m.is_zero() or m != -(b * v1):
        raise AssertionError("common right multiple construction failed")
    u, v = u1, -v1
    if not (a * u == m and b * v == m):
        raise AssertionError("cofactor verification failed")
    return m, u, v


# ---------------------------------------------------------------------------
# Ore fractions num * den^{-1}
# ---------------------------------------------------------------------------

class SkewFraction:
    """Right fraction num * den^{-1}; equality is the Ore cross relation.

    No reduction to lowest terms is attempted: representatives are kept as
    built and compared through common right multiples.
    """

    __slots__ = ('num', 'den')

    def __init__(self, num, den):
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        if num.twist != den.twist:
            raise ValueError("numerator and denominator twists differ")
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', den)

    def __setattr__(self, name, value):
        raise AttributeError("SkewFraction is immutable")

    @property
    def twist(self):
        return self.num.twist

    def is_zero(self):
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, SkewFraction):
            if other.twist != self.twist:
                raise ValueError("fractions with different twists")
            return other
        if isinstance(other, SkewPoly):
            return SkewFraction(other, constant_poly(other.twist, 1))
        if isinstance(other, (int, Fraction, QuatElement)):
            return SkewFraction(constant_poly(self.twist, other),
                                constant_poly(self.twist, 1))
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return self.is_zero() and o.is_zero()
        _, u, v = ore_right_lcm(self.den, o.den)
        return self.num * u == o.num * v

    def __hash__(self):
        raise TypeError("fractions have no canonical form; do not hash")

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        m, u, v = ore_right_lcm(self.den, o.den)
        return SkewFraction(self.num * u + o.num * v, m)

    __radd__ = __add__

    def __neg__(self):
        return SkewFraction(-self.num, self.den)

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
        if self.is_zero() or o.is_zero():
            return SkewFraction(SkewPoly(self.twist, []),
                                constant_poly(self.twist, 1))
        # den^{-1} * num' = v * u^{-1} from num' * u = den * v
        _, u, v = ore_right_lcm(o.num, self.den)
        return SkewFraction(self.num * v, o.den * u)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero fraction")
        return SkewFraction(self.den, self.num)

    @classmethod
    def from_left(cls, den, num):
        """Ingest a left fraction den^{-1} * num in the right orientation.

        A common right multiple num*u = den*v rewrites den^{-1} num as
        v * u^{-1}.
        """
        if den.is_zero():
            raise ZeroDivisionError("fraction with zero denominator")
        if num.is_zero():
            return cls(SkewPoly(den.twist, []), constant_poly(den.twist, 1))
        _, u, v = ore_right_lcm(num, den)
        return cls(v, u)

    def __repr__(self):
        return 'SkewFraction(deg %s / deg %s over %s)' % (
            self.num.degree(), self.den.degree(), self.twist.owner.label)


def frac_arith(f, g, op):
    if op == 'add':
        return f + g
    if op == 'mul':
        return f * g
    if op == 'inv':
        return f.inverse()
    if op == 'eq':
        return f == g
    raise ValueError("unknown operation %r" % op)


# ---------------------------------------------------------------------------
# truncated twisted Laurent series
# ---------------------------------------------------------------------------

class SkewLaurent:
    """Series sum a_n t^n known for ord <= n < limit, zero below ord."""

    __slots__ = ('twist', 'ord', 'coeffs', 'limit')

    def __init__(self, twist, ord_, coeffs):
        alg = twist.owner
        norm = []
        for c in coeffs:
            if isinstance(c, QuatElement):
                if c.alg != alg:
                    raise ValueError("coefficient in the wrong algebra")
                norm.append(c)
            else:
                norm.append(alg.scalar(c))
        limit = ord_ + len(norm)
        while norm and norm[0].is_zero():
            norm.pop(0)
            ord_ += 1
        if not norm:
            ord_ = limit
        object.__setattr__(self, 'twist', twist)
        object.__setattr__(self, 'ord', ord_)
        object.__setattr__(self, 'coeffs', tuple(norm))
        object.__setattr__(self, 'limit', limit)

    def __setattr__(self, name, value):
        raise AttributeError("SkewLaurent is immutable")

    @property
    def alg(self):
        return self.twist.owner

    def precision(self):
        return len(self.coeffs)

    def is_zero_to_precision(self):
        return not self.coeffs

    def coefficient(self, n):
        if n >= self.limit:
            raise InsufficientPrecision("coefficient %d beyond precision" % n)
        if n < self.ord:
            return self.alg.zero()
        return self.coeffs[n - self.ord]

    def agrees_with(self, other):
        """Equality on the common known window."""
        if other.twist != self.twist:
            raise ValueError("series with different twists")
        limit = min(self.limit, other.limit)
        start = min(self.ord, other.ord)
        return all(self.coefficient(n) == other.coefficient(n)
                   for n in range(start, limit))

    def __add__(self, other):
        if not isinstance(other, SkewLaurent) or other.twist != self.twist:
            raise ValueError("can only add matching series")
        start = min(self.ord, other.ord)
        limit = min(self.limit, other.limit)
        return SkewLaurent(self.twist, start,
                           [self.coefficient(n) + other.coefficient(n)
                            for n in range(start, limit)])

    def __neg__(self):
        return SkewLaurent(self.twist, self.ord, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SkewLaurent) or other.twist != self.twist:
            raise ValueError("can only multiply matching series")
        if self.is_zero_to_precision() or other.is_zero_to_precision():
            start = self.ord + other.ord
            return SkewLaurent(self.twist, start, [])
        start = self.ord + other.ord
        limit = min(self.limit + other.ord, other.limit + self.ord)
        out = [self.alg.zero()] * max(0, limit - start)
        for i, a in enumerate(self.coeffs):
            ei = self.ord + i
            tw = self.twist.power(ei)
            for j, b in enumerate(other.coeffs):
                n = ei + other.ord + j
                if n >= limit:
                    break
                out[n - start] = out[n - start] + a * tw(b)
        return SkewLaurent(self.twist, start, out)

    def shifted(self, k):
        """Multiplication by t^k on the right: exponent shift only."""
        return SkewLaurent(self.twist, self.ord + k, list(self.coeffs))

    def __repr__(self):
        return 'SkewLaurent(ord %d, %d terms over %s)' % (
            self.ord, len(self.coeffs), self.alg.label)


def _poly_times_series(poly, series):
    """Exact polynomial times truncated series; tighter precision window."""
    twist = series.twist
    if poly.is_zero() or series.is_zero_to_precision():
        return SkewLaurent(twist, series.ord, [])
    val = poly.valuation()
    start = val + series.ord
    limit = series.limit + val
    out = [twist.owner.zero()] * (limit - start)
    for i, a in enumerate(poly.coeffs):
        if a.is_zero():
            continue
        tw = twist.power(i)
        for j, b in enumerate(series.coeffs):
            n = i + series.ord + j
            if n >= limit:
                break
            out[n - start] = out[n - start] + a * tw(b)
    return SkewLaurent(twist, start, out)


def series_expand(fraction, precision):
    """Image of a fraction in the Laurent field, to the given precision.

    The denominator is written t^v * u with u of invertible constant term;
    u is inverted by the twisted geometric recursion and the t^{-v} shift
    is applied last.
    """
    if precision < 1:
        raise ValueError("precision must be positive")
    num, den = fraction.num, fraction.den
    twist = fraction.twist
    if num.is_zero():
        return SkewLaurent(twist, 0, [twist.owner.zero()] * precision)
    v = den.valuation()
    shift_back = twist.power(-v)
    u = [shift_back(den.coefficient(v + i)) for i in range(den.degree() - v + 1)]
    u0_inv = u[0].inverse()
    n_terms = precision + num.valuation() + 1
    w = [u0_inv]
    for n in range(1, n_terms):
        acc = twist.owner.zero()
        for i in range(1, min(n, len(u) - 1) + 1):
            acc = acc + u[i] * twist.power(i)(w[n - i])
        w.append(-(u0_inv * acc))
    w_series = SkewLaurent(twist, 0, w)
    prod = _poly_times_series(num, w_series)
    result = prod.shifted(-v)
    if len(result.coeffs) > precision:
        result = SkewLaurent(twist, result.ord, list(result.coeffs[:precision]))
    return result


# ---------------------------------------------------------------------------
# rationality certificates
# ---------------------------------------------------------------------------

class RecurrenceCertificate:
    """Twisted linear recurrence a_n = sum a_{n-i} sigma^{n-i}(y_i).

    Verified at construction against every stored coefficient with index at
    least start.
    """

    __slots__ = ('twist', 'order', 'ys', 'start')

    def __init__(self, twist, order, ys, start, series=None):
        if len(ys) != order:
            raise ValueError("order does not match the number of y's")
        object.__setattr__(self, 'twist', twist)
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, 'ys', tuple(ys))
        object.__setattr__(self, 'start', start)
        if series is not None and not self.verify(series):
            raise ValueError("certificate fails on the stored coefficients")

    def __setattr__(self, name, value):
        raise AttributeError("RecurrenceCertificate is immutable")

    def predicted(self, series, n):
        acc = self.twist.owner.zero()
        for i, y in enumerate(self.ys, start=1):
            a = series.coefficient(n - i)
            acc = acc + a * self.twist.power(n - i)(y)
        return acc

    def verify(self, series):
        return all(series.coefficient(n) == self.predicted(series, n)
                   for n in range(self.start, series.limit))

    def __repr__(self):
        return 'RecurrenceCertificate(order %d from %d)' % (self.order, self.start)


def _left_mul_matrix(alg, c, cache):
    key = ('L', c)
    if key not in cache:
        cols = [(c * b).q_vector() for b in alg.q_basis()]
        n = alg.q_dim()
        cache[key] = [[cols[j][i] for j in range(n)] for i in range(n)]
    return cache[key]


def _right_mul_matrix(alg, c, cache):
    key = ('R', c)
    if key not in cache:
        cols = [(b * c).q_vector() for b in alg.q_basis()]
        n = alg.q_dim()
        cache[key] = [[cols[j][i] for j in range(n)] for i in range(n)]
    return cache[key]


def _twist_matrix(twist, k, cache):
    key = ('T', k)
    if key not in cache:
        cache[key] = twist.power(k).q_matrix()
    return cache[key]


def _mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = [[_Q0] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for k in range(m):
            c = ai[k]
            if c == 0:
                continue
            bk = b[k]
            row = out[i]
            for j in range(p):
                row[j] += c * bk[j]
    return out


def detect_recurrence(series, max_order):
    """Smallest-order recurrence certificate for the series, if any.

    The twisted system is linear over Q once coefficients are written on a
    rational basis of the algebra, so it is solved by exact elimination;
    the returned certificate is re-verified coefficient by coefficient.
    """
    if max_order < 1:
        raise ValueError("max_order must be positive")
    if series.precision() < 2 * max_order + 4:
        raise InsufficientPrecision(
            "need at least %d stored coefficients for order %d"
            % (2 * max_order + 4, max_order))
    twist = series.twist
    alg = twist.owner
    dim = alg.q_dim()
    cache = {}
    for k in range(1, max_order + 1):
        rows = []
        rhs = []
        for n in range(series.ord + k, series.limit):
            blocks = []
            for i in range(1, k + 1):
                a = series.coefficient(n - i)
                if a.is_zero():
                    blocks.append(None)
                    continue
                blocks.append(_mat_mul(_left_mul_matrix(alg, a, cache),
                                       _twist_matrix(twist, n - i, cache)))
            target = series.coefficient(n).q_vector()
            for r in range(dim):
                row = []
                for blk in blocks:
                    if blk is None:
                        row.extend([_Q0] * dim)
                    else:
                        row.extend(blk[r])
                rows.append(row)
                rhs.append(target[r])
        sol = solve(rows, rhs, k * dim, _Q0)
        if sol is None:
            continue
        ys = [quat_from_q_vector(alg, sol[i * dim:(i + 1) * dim])
              for i in range(k)]
        cert = RecurrenceCertificate(twist, k, ys, series.ord + k)
        if cert.verify(series):
            return cert
    return None


# ---------------------------------------------------------------------------
# centrality
# ---------------------------------------------------------------------------

def _algebra_generators(alg):
    gens = [alg.i(), alg.j()]
    if alg.base.degree > 1:
        gens.append(alg.scalar(alg.base.gen()))
    return gens


def is_central(x):
    """Whether x commutes with t and with the generators of the algebra."""
    if isinstance(x, SkewPoly):
        t = t_poly(x.twist)
        gens = [constant_poly(x.twist, g) for g in _algebra_generators(x.alg)]
        return all(x * g == g * x for g in gens + [t])
    if isinstance(x, SkewFraction):
        one = constant_poly(x.twist, 1)
        t = SkewFraction(t_poly(x.twist), one)
        gens = [SkewFraction(constant_poly(x.twist, g), one)
                for g in _algebra_generators(x.twist.owner)]
        return all(x * g == g * x for g in gens + [t])
    raise TypeError("is_central expects a skew polynomial or fraction")


class CenterReport:
    """Bounded-degree central elements, with the closed-form comparison.

    raw_basis spans the degree-bounded center of the twisted polynomial
    ring.  When the inner order of the twist equals its order, the span is
    compared against fixed-center coefficients on powers of t^m.
    """

    __slots__ = ('degree_bound', 'raw_basis', 'hypothesis_holds',
                 'closed_form_matches', 'twist_order', 'inner_order')

    def __init__(self, degree_bound, raw_basis, hypothesis_holds,
                 closed_form_matches, twist_order, inner_order_):
        object.__setattr__(self, 'degree_bound', degree_bound)
        object.__setattr__(self, 'raw_basis', tuple(raw_basis))
        object.__setattr__(self, 'hypothesis_holds', hypothesis_holds)
        object.__setattr__(self, 'closed_form_matches', closed_form_matches)
        object.__setattr__(self, 'twist_order', twist_order)
        object.__setattr__(self, 'inner_order', inner_order_)

    def __setattr__(self, name, value):
        raise AttributeError("CenterReport is immutable")


def center_bounded(algebra, twist, degree_bound):
    """Basis of central elements of t-degree at most the bound.

    Solves the rational commutator system against t and the algebra
    generators on the coefficient space.
    """
    if twist.owner != algebra:
        raise ValueError("twist does not act on the algebra")
    dim = algebra.q_dim()
    nvars = (degree_bound + 1) * dim
    cache = {}
    rows = []
    tw_mat = _twist_matrix(twist, 1, cache)
    gens = _algebra_generators(algebra)
    for j in range(degree_bound + 1):
        # x_j fixed by the twist (commutation with t)
        for r in range(dim):
            row = [_Q0] * nvars
            for cidx in range(dim):
                val = tw_mat[r][cidx] - (_Q1 if r == cidx else _Q0)
                row[j * dim + cidx] = val
            rows.append(row)
        # g x_j = x_j sigma^j(g) for each generator
        for g in gens:
            left = _left_mul_matrix(algebra, g, cache)
            right = _right_mul_matrix(algebra, twist.power(j)(g), cache)
            for r in range(dim):
                row = [_Q0] * nvars
                for cidx in range(dim):
                    row[j * dim + cidx] = left[r][cidx] - right[r][cidx]
                rows.append(row)
    basis_vecs = kernel_basis(rows, nvars, _Q0, _Q1)
    raw_basis = []
    for vec in basis_vecs:
        coeffs = [quat_from_q_vector(algebra, vec[j * dim:(j + 1) * dim])
                  for j in range(degree_bound + 1)]
        raw_basis.append(SkewPoly(twist, coeffs))
    m = twist.order()
    io = inner_order(twist)
    hypothesis = (io == m)
    closed_form_matches = None
    if hypothesis:
        sub, emb = fixed_field(algebra.base,
                               [twist.center_action])
        expected = []
        power = sub.one()
        fixed_basis = []
        for _ in range(sub.degree):
            fixed_basis.append(emb(power))
            power = power * sub.gen()
        for p in range(0, degree_bound // m + 1):
            for c in fixed_basis:
                coeffs = [algebra.zero()] * (m * p) + [algebra.scalar(c)]
                expected.append(SkewPoly(twist, coeffs))
        got_vecs = [b.q_vector(degree_bound) for b in raw_basis]
        want_vecs = [e.q_vector(degree_bound) for e in expected]
        closed_form_matches = same_span(got_vecs, want_vecs, _Q0)
    return CenterReport(degree_bound, raw_basis, hypothesis,
                        closed_form_matches, m, io)


# ---------------------------------------------------------------------------
# bounded tensor-decomposition verification
# ---------------------------------------------------------------------------

class TensorReport:

    __slots__ = ('injective', 'surjective', 'multiplicative', 'rank',
                 'spanning_count', 'ambient_dim', 'twist_order',
                 'fixed_degree_ratio')

    def __init__(self, injective, surjective, multiplicative, rank_,
                 spanning_count, ambient_dim, twist_order, fixed_degree_ratio):
        object.__setattr__(self, 'injective', injective)
        object.__setattr__(self, 'surjective', surjective)
        object.__setattr__(self, 'multiplicative', multiplicative)
        object.__setattr__(self, 'rank', rank_)
        object.__setattr__(self, 'spanning_count', spanning_count)
        object.__setattr__(self, 'ambient_dim', ambient_dim)
        object.__setattr__(self, 'twist_order', twist_order)
        object.__setattr__(self, 'fixed_degree_ratio', fixed_degree_ratio)

    def __setattr__(self, name, value):
        raise AttributeError("TensorReport is immutable")

    def passed(self):
        return self.injective and self.surjective and self.multiplicative


def tensor_decomposition_check(H, sigma, L, tau, emb, degree_bound):
    """Bounded-degree verification that the function field of the extension
    is the scalar extension of the function field of the base.

    The multiplication map from the tensor product is checked on a spanning
    family up to the degree bound: multiplicative on spanning pairs,
    injective by exact rank, surjective by dimension count.  Requires the
    central restrictions of the two twists to have equal orders; raises
    HypothesisFailed otherwise.
    """
    if sigma.owner != H or tau.owner != L:
        raise ValueError("twists act on the wrong algebras")
    if L.a != emb(H.a) or L.b != emb(H.b):
        raise ValueError("L is not the scalar extension of H along emb")
    for x in H.q_basis():
        if tau(extend_quaternion(x, L, emb)) != extend_quaternion(sigma(x), L, emb):
            raise ValueError("tau does not extend sigma")
    sig_t = sigma.center_action
    tau_t = tau.center_action
    if tau_t.order() != sig_t.order():
        raise HypothesisFailed(
            "central restriction orders differ: %d for the base twist, "
            "%d for the extension twist" % (sig_t.order(), tau_t.order()))
    m = tau.order()
    h = H.base
    ell = L.base
    h_fix, h_fix_emb = fixed_field(h, [sig_t])
    ell_fix, ell_fix_emb = fixed_field(ell, [tau_t])
    if ell_fix.degree % h_fix.degree:
        raise AssertionError("fixed field degrees incompatible")
    r = ell_fix.degree // h_fix.degree
    # the quaternion Q-basis of H already spans the base-side directions;
    # only an extension-side fixed-field basis is needed on the right
    ellfix_in_ell = []
    power = ell_fix.one()
    for _ in range(r):
        ellfix_in_ell.append(ell_fix_emb(power))
        power = power * ell_fix.gen()

    left_factors = []
    for j in range(m):
        for e in H.q_basis():
            if j > degree_bound:
                continue
            coeffs = [L.zero()] * j + [extend_quaternion(e, L, emb)]
            left_factors.append(SkewPoly(tau, coeffs))
    right_factors = []
    for p in range(degree_bound // m + 1):
        for f in ellfix_in_ell:
            coeffs = [L.zero()] * (m * p) + [L.scalar(f)]
            right_factors.append(SkewPoly(tau, coeffs))

    spanning = []
    for y in left_factors:
        for z in right_factors:
            prod = y * z
            if prod.degree() <= degree_bound:
                spanning.append(prod)
    vecs = [s.q_vector(degree_bound) for s in spanning]
    rk = rank(vecs)
    ambient = (degree_bound + 1) * L.q_dim()
    injective = (rk == len(spanning))
    surjective = (rk == ambient)

    multiplicative = True
    for z in right_factors:
        for y in left_factors:
            if (z * y) != (y * z):
                multiplicative = False
    # spot products through the map: psi(y y' (x) z z') = psi(y(x)z) psi(y'(x)z')
    for y1 in left_factors[:3]:
        for y2 in left_factors[:3]:
            for z1 in right_factors[:2]:
                for z2 in right_factors[:2]:
                    lhs = (y1 * y2) * (z1 * z2)
                    rhs = (y1 * z1) * (y2 * z2)
                    if lhs != rhs:
                        multiplicative = False
    return TensorReport(injective, surjective, multiplicative, rk,
                        len(spanning), ambient, m, r)
