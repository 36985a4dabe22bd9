"""Exact arithmetic in small-degree number fields.

A field is presented absolutely over the rationals by a monic irreducible
integer polynomial; elements are rational coordinate vectors in the power
basis of the generator.  Subfields are explicit embeddings, towers are
flattened through primitive elements, and automorphism groups are found by
enumerating the roots of the defining polynomial inside the field itself.
Real embeddings are certified with Sturm sequences over exact rationals;
no floating point is used anywhere.

The degree is capped at 8: every check stays cheap and fully exact at that
scale, and the constructions this package verifies never need more.
"""

from fractions import Fraction
from itertools import product as _iproduct

from .linalg import coordinates_in_span, invert, kernel_basis, same_span

MAX_DEGREE = 8

_Q0 = Fraction(0)
_Q1 = Fraction(1)


# ---------------------------------------------------------------------------
# dense rational polynomials, coefficient lists lowest degree first
# ---------------------------------------------------------------------------

def poly_trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def poly_deg(cs):
    return len(cs) - 1


def poly_add(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else _Q0) + (b[i] if i < len(b) else _Q0)
                      for i in range(n)])


def poly_sub(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else _Q0) - (b[i] if i < len(b) else _Q0)
                      for i in range(n)])


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [_Q0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_scale(a, c):
    return poly_trim([c * x for x in a])


def poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [_Q0] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        s = a[-1] / lead
        k = len(a) - len(b)
        q[k] = s
        for i in range(len(b)):
            a[k + i] -= s * b[i]
        a = poly_trim(a)
        if len(a) >= len(b) and a and a[-1] == 0:
            a = poly_trim(a)
    return poly_trim(q), poly_trim(a)


def poly_gcd(a, b):
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        a = poly_scale(a, 1 / a[-1])
    return a


def poly_deriv(a):
    return poly_trim([Fraction(i) * a[i] for i in range(1, len(a))])


def poly_eval(a, x):
    acc = _Q0
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation
# ---------------------------------------------------------------------------

def sturm_chain(p):
    p = poly_trim(p)
    chain = [p, poly_deriv(p)]
    while chain[-1]:
        r = poly_divmod(chain[-2], chain[-1])[1]
        if not r:
            break
        chain.append(poly_scale(r, Fraction(-1)))
    return [c for c in chain if c]


def _variations(values):
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _variations_at_inf(chain, positive):
    vals = []
    for c in chain:
        lead = c[-1]
        if positive:
            vals.append(lead)
        else:
            vals.append(lead if (len(c) - 1) % 2 == 0 else -lead)
    return _variations(vals)


def cauchy_bound(p):
    p = poly_trim(p)
    lead = abs(p[-1])
    m = max((abs(c) for c in p[:-1]), default=_Q0)
    return _Q1 + m / lead


def count_real_roots(p, lo=None, hi=None):
    """Number of distinct real roots of p, in (lo, hi] when bounds given."""
    chain = sturm_chain(p)
    if not chain:
        raise ValueError("zero polynomial")
    va = _variations([poly_eval(c, lo) for c in chain]) if lo is not None \
        else _variations_at_inf(chain, positive=False)
    vb = _variations([poly_eval(c, hi) for c in chain]) if hi is not None \
        else _variations_at_inf(chain, positive=True)
    return va - vb


def isolate_real_roots(p):
    """Disjoint rational intervals (lo, hi], one distinct real root each."""
    p = poly_trim(p)
    total = count_real_roots(p)
    if total == 0:
        return []
    bound = cauchy_bound(p)
    out = []
    stack = [(-bound, bound, total)]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        while poly_eval(p, mid) == 0:
            # nudge the cut off a root; p has finitely many
            mid = (lo + mid) / 2
        left = count_real_roots(p, lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, n - left))
    out.sort()
    return out


def refine_root_interval(p, lo, hi):
    """Halve an isolating interval of p, keeping exactly one root inside."""
    mid = (lo + hi) / 2
    if poly_eval(p, mid) == 0:
        mid = (lo + mid) / 2
    if count_real_roots(p, lo, mid) == 1:
        return lo, mid
    return mid, hi


# ---------------------------------------------------------------------------
# irreducibility over Q by bounded trial factorization
# ---------------------------------------------------------------------------

def _divisors_signed(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.extend((d, -d, n // d, -(n // d)))
        d += 1
    return sorted(set(out))


def _interp_points(k):
    pts = [0]
    i = 1
    while len(pts) < k:
        pts.extend((i, -i))
        i += 1
    return pts[:k]


def _lagrange(points, values):
    """Interpolating polynomial through (points[i], values[i]), rational."""
    n = len(points)
    out = []
    for i in range(n):
        num = [Fraction(values[i])]
        den = _Q1
        for j in range(n):
            if j == i:
                continue
            num = poly_mul(num, [Fraction(-points[j]), _Q1])
            den *= Fraction(points[i] - points[j])
        out = poly_add(out, poly_scale(num, 1 / den))
    return out


def is_squarefree_over_q(coeffs):
    p = poly_trim([Fraction(c) for c in coeffs])
    return poly_deg(poly_gcd(p, poly_deriv(p))) <= 0


def is_irreducible_over_q(int_coeffs):
    """Irreducibility of a monic integer polynomial, degree at most 8.

    Trial factorization in the style of Kronecker: a monic integer factor
    of degree d is pinned down by its values at d+1 integer points, each of
    which must divide the corresponding value of the polynomial.
    """
    cs = [int(c) for c in int_coeffs]
    n = len(cs) - 1
    if n <= 0:
        raise ValueError("constant polynomial")
    if n == 1:
        return True
    p = [Fraction(c) for c in cs]
    for d in range(1, n // 2 + 1):
        pts = _interp_points(d + 1)
        vals = [poly_eval(p, Fraction(k)) for k in pts]
        if any(v == 0 for v in vals):
            return False
        choice_sets = [_divisors_signed(int(v)) for v in vals]
        for combo in _iproduct(*choice_sets):
            g = _lagrange(pts, combo)
            if poly_deg(g) != d or g[-1] != 1:
                continue
            if any(c.denominator != 1 for c in g):
                continue
            q, r = poly_divmod(p, g)
            if not r:
                return False
    return True


# ---------------------------------------------------------------------------
# fields, elements, morphisms
# ---------------------------------------------------------------------------

class NumberField:
    """Q[x]/(min_poly) with min_poly monic, integer, irreducible, deg <= 8."""

    __slots__ = ('min_poly', 'degree', 'label', '_autos', '_places',
                 '_red_rows', '_zero', '_one')

    def __init__(self, min_poly, label=None):
        coeffs = [Fraction(c) for c in min_poly]
        coeffs = poly_trim(coeffs)
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError("minimal polynomial must have integer coefficients")
        if len(coeffs) - 1 > MAX_DEGREE:
            raise ValueError("degree above %d not supported" % MAX_DEGREE)
        if not is_squarefree_over_q(coeffs):
            raise ValueError("minimal polynomial is not squarefree")
        if not is_irreducible_over_q(coeffs):
            raise ValueError("minimal polynomial is reducible over Q")
        object.__setattr__(self, 'min_poly', tuple(coeffs))
        object.__setattr__(self, 'degree', len(coeffs) - 1)
        object.__setattr__(self, 'label', label or 'K')
        object.__setattr__(self, '_autos', None)
        object.__setattr__(self, '_places', None)
        # reduced coordinates of gen^k for k = degree .. 2*degree - 2
        n = len(coeffs) - 1
        rows = []
        prev = [-c for c in coeffs[:-1]]
        rows.append(tuple(prev))
        for _ in range(n - 2):
            shifted = [_Q0] + prev[:-1]
            top = prev[-1]
            prev = [shifted[i] + top * rows[0][i] for i in range(n)]
            rows.append(tuple(prev))
        object.__setattr__(self, '_red_rows', tuple(rows))
        object.__setattr__(self, '_zero',
                           FieldElement(self, (_Q0,) * (len(coeffs) - 1)))
        object.__setattr__(self, '_one',
                           FieldElement(self, (_Q1,) + (_Q0,) * (len(coeffs) - 2)))

    def __setattr__(self, name, value):
        if name in ('min_poly', 'degree', 'label', '_red_rows'):
            raise AttributeError("NumberField is immutable")
        object.__setattr__(self, name, value)

    def mul_coords(self, a, b):
        """Product of two coordinate tuples, reduced mod min_poly."""
        n = self.degree
        if n == 1:
            return (a[0] * b[0],)
        prod = [_Q0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y == 0:
                    continue
                prod[i + j] += x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c == 0:
                continue
            row = self._red_rows[k - n]
            for i in range(n):
                if row[i] != 0:
                    out[i] += c * row[i]
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        return 'NumberField(%s, %r)' % ([str(c) for c in self.min_poly], self.label)

    def element(self, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            raise ValueError("too many coordinates")
        coords += [_Q0] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def scalar(self, q):
        return self.element([Fraction(q)])

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def gen(self):
        if self.degree == 1:
            return self.element([-self.min_poly[0]])
        return self.element([0, 1])

    def basis(self):
        return [self.element([0] * i + [1]) for i in range(self.degree)]

    def identity_morphism(self):
        return FieldMorphism(self, self, self.gen())

    def automorphisms(self):
        """All field automorphisms (over Q), via roots of min_poly in self."""
        if self._autos is None:
            roots = roots_in_field(self.min_poly, self)
            autos = [FieldMorphism(self, self, r) for r in roots]
            autos.sort(key=lambda m: (m.gen_image != self.gen(), m.gen_image.coords))
            self._autos = tuple(autos)
        return list(self._autos)

    def real_places(self):
        """Real embeddings as isolating intervals for roots of min_poly."""
        if self._places is None:
            ivs = isolate_real_roots(list(self.min_poly))
            self._places = tuple(RealPlace(self, i, lo, hi)
                                 for i, (lo, hi) in enumerate(ivs))
        return list(self._places)


class FieldElement:
    """Element of a NumberField as a rational vector in the power basis."""

    __slots__ = ('field', 'coords')

    def __init__(self, field, coords):
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'coords', tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return None

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coords == o.coords

    def __hash__(self):
        return hash((self.field.min_poly, self.coords))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

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
        return FieldElement(self.field, self.field.mul_coords(self.coords,
                                                              o.coords))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        # extended euclid: u*self + v*min_poly = 1 in Q[x]
        a = poly_trim(list(self.coords))
        b = list(self.field.min_poly)
        r0, r1 = a, b
        s0, s1 = [_Q1], []
        while r1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        # r0 is a nonzero constant gcd
        inv = poly_scale(s0, 1 / r0[0])
        _, rr = poly_divmod(inv, list(self.field.min_poly))
        return self.field.element(rr)

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

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return 'FieldElement(%s @ %s)' % ([str(c) for c in self.coords],
                                          self.field.label)


class FieldMorphism:
    """Ring morphism between number fields, pinned by the generator image.

    Construction verifies the morphism certificate: the source minimal
    polynomial vanishes at gen_image inside the target.
    """

    __slots__ = ('source', 'target', 'gen_image', '_trivial')

    def __init__(self, source, target, gen_image):
        if gen_image.field != target:
            raise ValueError("generator image lies in the wrong field")
        val = _eval_poly_at_element(source.min_poly, gen_image)
        if not val.is_zero():
            raise ValueError("not a morphism: minimal polynomial does not vanish")
        object.__setattr__(self, 'source', source)
        object.__setattr__(self, 'target', target)
        object.__setattr__(self, 'gen_image', gen_image)
        object.__setattr__(self, '_trivial',
                           source == target and gen_image == source.gen())

    def __setattr__(self, name, value):
        raise AttributeError("FieldMorphism is immutable")

    def __call__(self, elem):
        if elem.field != self.source:
            raise ValueError("element not in the source field")
        if self._trivial:
            return elem
        acc = self.target.zero()
        for c in reversed(elem.coords):
            acc = acc * self.gen_image + self.target.scalar(c)
        return acc

    def __eq__(self, other):
        return (isinstance(other, FieldMorphism)
                and self.source == other.source
                and self.target == other.target
                and self.gen_image == other.gen_image)

    def __hash__(self):
        return hash((self.source.min_poly, self.target.min_poly,
                     self.gen_image.coords))

    def __repr__(self):
        return 'FieldMorphism(%s -> %s : gen -> %s)' % (
            self.source.label, self.target.label,
            [str(c) for c in self.gen_image.coords])

    def is_identity(self):
        return self._trivial

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise ValueError("morphisms do not compose")
        return FieldMorphism(other.source, self.target, self(other.gen_image))

    def matrix(self):
        """Rational matrix of the map on power-basis coordinates (columns)."""
        cols = [self(b).coords for b in self.source.basis()]
        n = self.target.degree
        return [[cols[j][i] for j in range(len(cols))] for i in range(n)]

    def order(self, cap=64):
        if self.source != self.target:
            raise ValueError("order of a non-endomorphism")
        cur = self
        for n in range(1, cap + 1):
            if cur.is_identity():
                return n
            cur = self.compose(cur)
        raise ValueError("order exceeds cap %d" % cap)

    def inverse(self):
        """Inverse automorphism, by exact inversion of the rational matrix."""
        if self.source != self.target:
            raise ValueError("inverse of a non-automorphism")
        m = invert(self.matrix(), _Q0, _Q1)
        if m is None:
            raise ValueError("morphism not invertible")
        gen = self.source.gen().coords
        img = [sum((row[j] * gen[j] for j in range(len(gen))), _Q0) for row in m]
        return FieldMorphism(self.source, self.source, self.source.element(img))

    def image_basis(self):
        """Q-spanning vectors of the image subfield inside the target."""
        out = []
        power = self.target.one()
        for _ in range(self.source.degree):
            out.append(list(power.coords))
            power = power * self.gen_image
        return out


def _eval_poly_at_element(coeffs, elem):
    acc = elem.field.zero()
    for c in reversed(coeffs):
        acc = acc * elem + elem.field.scalar(c)
    return acc


class RealPlace:
    """A real embedding, certified by an isolating interval of min_poly."""

    __slots__ = ('field', 'index', 'lo', 'hi')

    def __init__(self, field, index, lo, hi):
        object.__setattr__(self, 'field', field)
        object.__setattr__(self, 'index', index)
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)

    def __setattr__(self, name, value):
        raise AttributeError("RealPlace is immutable")

    def __repr__(self):
        return 'RealPlace(#%d of %s in (%s, %s])' % (
            self.index, self.field.label, self.lo, self.hi)

    def sign(self, elem):
        """Exact sign of a nonzero element under this real embedding.

        The coordinate polynomial g has degree below deg(min_poly), so a
        nonzero element never vanishes at the root; the isolating interval
        is narrowed until g has no root inside and a definite endpoint sign.
        """
        if elem.field != self.field:
            raise ValueError("element of a different field")
        if elem.is_zero():
            return 0
        g = poly_trim(list(elem.coords))
        p = list(self.field.min_poly)
        lo, hi = self.lo, self.hi
        while True:
            if (count_real_roots(g, lo, hi) == 0
                    and poly_eval(g, lo) != 0 and poly_eval(g, hi) != 0):
                return 1 if poly_eval(g, lo) > 0 else -1
            lo, hi = refine_root_interval(p, lo, hi)


# ---------------------------------------------------------------------------
# root enumeration inside a field
# ---------------------------------------------------------------------------

def roots_in_field(coeffs, field):
    """All roots in ``field`` of a rational polynomial, exactly.

    The factorization over the field is delegated to sympy; every returned
    root is re-verified here by exact evaluation, so the dependency sits
    behind an independent certificate.
    """
    import sympy
    from sympy import QQ as SQQ

    cs = poly_trim([Fraction(c) for c in coeffs])
    if poly_deg(cs) < 1:
        return []
    x = sympy.Symbol('x')
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
               for i, c in enumerate(cs))
    if field.degree == 1:
        dom = SQQ
    else:
        fp = sum(sympy.Integer(int(c)) * x ** i
                 for i, c in enumerate(field.min_poly))
        dom = SQQ.algebraic_field(sympy.CRootOf(fp, 0))
    factors = sympy.Poly(expr, x, domain=dom).factor_list()[1]
    roots = []
    for fac, _mult in factors:
        if fac.degree() != 1:
            continue
        c1, c0 = fac.rep.to_list()
        roots.append((-_dom_to_element(c0, field)) / _dom_to_element(c1, field))
    roots.sort(key=lambda r: r.coords)
    for r in roots:
        if not _eval_poly_at_element(cs, r).is_zero():
            raise AssertionError("root candidate failed exact verification")
    return roots


def _dom_to_element(c, field):
    if hasattr(c, 'to_list'):
        rep = list(c.to_list())  # highest degree first, in the generator
        rep.reverse()
        return field.element([Fraction(int(q.numerator), int(q.denominator))
                              for q in rep])
    return field.scalar(Fraction(int(c.numerator), int(c.denominator)))


# ---------------------------------------------------------------------------
# automorphism groups, fixed fields, Galois test
# ---------------------------------------------------------------------------

def automorphism_group(ell, h_embedding=None):
    """All automorphisms of ell fixing the embedded subfield pointwise.

    The result is verified closed under composition and inversion.
    """
    autos = ell.automorphisms()
    if h_embedding is not None:
        if h_embedding.target != ell:
            raise ValueError("embedding does not land in the field")
        fixed = h_embedding.gen_image
        autos = [a for a in autos if a(fixed) == fixed]
    group = list(autos)
    for a in group:
        for b in group:
            if a.compose(b) not in group:
                raise AssertionError("automorphism set not closed")
    return group


def fixed_field(ell, autos):
    """Subfield fixed pointwise by the given automorphisms.

    Returns (field, embedding into ell).  The subfield generator is scaled
    to an algebraic integer so its minimal polynomial has integer entries.
    """
    n = ell.degree
    rows = []
    for s in autos:
        m = s.matrix()
        for i in range(n):
            rows.append([m[i][j] - (_Q1 if i == j else _Q0) for j in range(n)])
    if rows:
        basis = kernel_basis(rows, n, _Q0, _Q1)
    else:
        basis = [[_Q1 if i == j else _Q0 for j in range(n)] for i in range(n)]
    k = len(basis)
    if k == 0:
        raise AssertionError("fixed set lost the rationals")
    for combo in _primitive_combos(k):
        cand = ell.element([sum((Fraction(c) * v[i] for c, v in zip(combo, basis)),
                                _Q0) for i in range(n)])
        mp = _minimal_polynomial(cand)
        if poly_deg(mp) != k:
            continue
        scale = 1
        for c in mp:
            scale = scale * c.denominator // _gcd_int(scale, c.denominator)
        gamma = cand * Fraction(scale)
        deg = poly_deg(mp)
        scaled = [mp[i] * Fraction(scale) ** (deg - i) for i in range(deg)] + [_Q1]
        sub = NumberField(scaled, label='%s^fix' % ell.label)
        return sub, FieldMorphism(sub, ell, gamma)
    raise AssertionError("no primitive element found for the fixed field")


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _primitive_combos(k):
    if k == 1:
        yield (1,)
        return
    for i in range(k):
        yield tuple(1 if j == i else 0 for j in range(k))
    for height in range(1, 6):
        for combo in _iproduct(range(-height, height + 1), repeat=k):
            if max((abs(c) for c in combo), default=0) == height:
                yield combo


def _minimal_polynomial(elem):
    """Monic minimal polynomial over Q of a field element."""
    n = elem.field.degree
    powers = [elem.field.one()]
    for _ in range(n):
        powers.append(powers[-1] * elem)
    for d in range(1, n + 1):
        vecs = [list(powers[i].coords) for i in range(d)]
        target = list(powers[d].coords)
        sol = coordinates_in_span(vecs, target, _Q0)
        if sol is not None:
            return poly_trim([-c for c in sol] + [_Q1])
    raise AssertionError("element has no minimal polynomial")


def minimal_polynomial(elem):
    return _minimal_polynomial(elem)


def subfield_preimage(emb, elem):
    """Coordinates of elem as an element of emb.source, or None."""
    vecs = emb.image_basis()
    sol = coordinates_in_span(vecs, list(elem.coords), _Q0)
    if sol is None:
        return None
    return emb.source.element(sol)


def restrict_morphism(sigma, emb):
    """Restriction of an automorphism to an embedded subfield.

    Raises ValueError when the subfield is not stable under sigma.
    """
    img = sigma(emb(emb.source.gen()))
    pre = subfield_preimage(emb, img)
    if pre is None:
        raise ValueError("subfield is not stable under the automorphism")
    return FieldMorphism(emb.source, emb.source, pre)


def same_subfield(emb1, emb2):
    """Whether two embeddings into the same field have equal images."""
    if emb1.target != emb2.target:
        return False
    return same_span(emb1.image_basis(), emb2.image_basis(), _Q0)


def is_galois(ell, h_embedding=None):
    sub_degree = 1 if h_embedding is None else h_embedding.source.degree
    if ell.degree % sub_degree:
        raise ValueError("embedded subfield degree does not divide the degree")
    return len(automorphism_group(ell, h_embedding)) == ell.degree // sub_degree


# ---------------------------------------------------------------------------
# field level
# ---------------------------------------------------------------------------

class LevelVerdict:
    """Level of a field: Finite(s) with witness, InfiniteCertified, or Unknown.

    Finite verdicts carry nonzero elements x_1..x_s with -1 = sum x_i^2,
    verified exactly at construction.  Infinite verdicts carry a real place
    (a real embedding forces every sum of squares to stay nonnegative).
    """

    __slots__ = ('kind', 's', 'witness', 'place', 'bound')

    def __init__(self, kind, s=None, witness=None, place=None, bound=None):
        if kind not in ('finite', 'infinite', 'unknown'):
            raise ValueError("bad verdict kind")
        if kind == 'finite':
            if not witness or len(witness) != s:
                raise ValueError("finite level verdict needs s witnesses")
            if any(w.is_zero() for w in witness):
                raise ValueError("witness entries must be nonzero")
            total = witness[0].field.zero()
            for w in witness:
                total = total + w * w
            if total != witness[0].field.scalar(-1):
                raise ValueError("witness does not sum to -1")
        if kind == 'infinite' and place is None:
            raise ValueError("infinite verdict needs a real place")
        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 's', s)
        object.__setattr__(self, 'witness', tuple(witness) if witness else None)
        object.__setattr__(self, 'place', place)
        object.__setattr__(self, 'bound', bound)

    def __setattr__(self, name, value):
        raise AttributeError("LevelVerdict is immutable")

    def __repr__(self):
        if self.kind == 'finite':
            return 'LevelVerdict(finite, s=%d)' % self.s
        if self.kind == 'infinite':
            return 'LevelVerdict(infinite, %r)' % self.place
        return 'LevelVerdict(unknown, bound=%s)' % self.bound


def _integer_elements(field, height):
    n = field.degree
    for combo in _iproduct(range(-height, height + 1), repeat=n):
        yield field.element([Fraction(c) for c in combo])


def field_level(ell, height_bound):
    """Three-valued level verdict with exact certificates.

    A real place certifies infinite level.  Otherwise -1 is searched as a
    sum of 1, 2 or 4 nonzero squares with integer coordinates up to the
    height bound; levels are powers of two, so s = 3 is never reported.
    """
    if height_bound < 1:
        raise ValueError("height bound must be positive")
    places = ell.real_places()
    if places:
        return LevelVerdict('infinite', place=places[0])
    minus_one = ell.scalar(-1)
    heights = sorted({min(h, height_bound) for h in (1, 2, 4, 8, 16, height_bound)})
    for h in heights:
        squares = {}
        for x in _integer_elements(ell, h):
            if x.is_zero():
                continue
            sq = x * x
            if sq == minus_one:
                return LevelVerdict('finite', s=1, witness=[x], bound=h)
            squares.setdefault(sq, x)
        for sq, x in squares.items():
            need = minus_one - sq
            if need in squares:
                return LevelVerdict('finite', s=2, witness=[x, squares[need]],
                                    bound=h)
        if len(squares) ** 2 <= 4_000_000:
            pair_sums = {}
            for s1, x1 in squares.items():
                for s2, x2 in squares.items():
                    pair_sums.setdefault(s1 + s2, (x1, x2))
            for val, (x1, x2) in pair_sums.items():
                need = minus_one - val
                if need in pair_sums:
                    x3, x4 = pair_sums[need]
                    return LevelVerdict('finite', s=4,
                                        witness=[x1, x2, x3, x4], bound=h)
    return LevelVerdict('unknown', bound=height_bound)
