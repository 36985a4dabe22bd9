"""Finite embedding problems over division rings and their transports.

A problem is a surjection from a finite group onto the Galois group of an
extension; it is split when a subgroup maps bijectively, and a weak
solution embeds the group of a larger extension compatibly with
restriction.  Because the Galois group of such an extension is the Galois
group of its center, every problem transports down to a commutative one
and (under an anisotropy certificate) back up, and the two transports are
mutually inverse on the nose; the same goes for solutions.

The weak-to-split reduction realizes the classical fiber product: pairs of
a group element and a big Galois element agreeing downstairs, with the
weak solution furnishing the section.  A full solution of the reduced
problem pushes back to a full solution of the original through the fixed
field of the projection kernel; everything is re-verified on full tables.
"""

from .galois import (CommExtension, build_comm_extension,
                     build_galois_extension, build_twisted_extension,
                     eq_produit, restriction_between)
from .numfield import (FieldMorphism, NumberField, automorphism_group,
                       field_level, fixed_field, restrict_morphism,
                       subfield_preimage)
from .qalg import AlgebraAutomorphism, QuaternionAlgebra

MAX_GROUP_ORDER = 64


class NotWeakSolution(Exception):
    """The offered map fails the weak-solution conditions."""


# ---------------------------------------------------------------------------
# finite groups as multiplication tables
# ---------------------------------------------------------------------------

class FiniteGroup:
    """Multiplication table with identity at index 0, order at most 64."""

    __slots__ = ('table', 'labels', 'order', '_inverse', '_subgroups')

    def __init__(self, table, labels=None):
        order = len(table)
        if order > MAX_GROUP_ORDER:
            raise ValueError("group order above %d" % MAX_GROUP_ORDER)
        if any(len(row) != order for row in table):
            raise ValueError("multiplication table is not square")
        if labels is None:
            labels = ['g%d' % k for k in range(order)]
        for j in range(order):
            if table[0][j] != j or table[j][0] != j:
                raise ValueError("index 0 is not an identity")
        inverse = [None] * order
        for i in range(order):
            for j in range(order):
                if table[i][j] == 0:
                    inverse[i] = j
        if any(v is None for v in inverse):
            raise ValueError("some element has no inverse")
        for i in range(order):
            for j in range(order):
                for k in range(order):
                    if table[table[i][j]][k] != table[i][table[j][k]]:
                        raise ValueError("table is not associative")
        object.__setattr__(self, 'table', tuple(tuple(r) for r in table))
        object.__setattr__(self, 'labels', tuple(labels))
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, '_inverse', tuple(inverse))
        object.__setattr__(self, '_subgroups', None)

    def __setattr__(self, name, value):
        if name == '_subgroups':
            object.__setattr__(self, name, value)
            return
        raise AttributeError("FiniteGroup is immutable")

    def __repr__(self):
        return 'FiniteGroup(order %d)' % self.order

    def op(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inverse[a]

    def element_order(self, a):
        n, x = 1, a
        while x != 0:
            x = self.op(x, a)
            n += 1
        return n

    def is_abelian(self):
        return all(self.op(a, b) == self.op(b, a)
                   for a in range(self.order) for b in range(self.order))

    def closure(self, gens):
        out = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for f in frontier:
                for g in gens:
                    h = self.op(g, f)
                    if h not in out:
                        out.add(h)
                        nxt.append(h)
            frontier = nxt
        return frozenset(out)

    def subgroups(self):
        """All subgroups, by growing closures one generator at a time."""
        if self._subgroups is None:
            known = {frozenset([0])}
            frontier = [frozenset([0])]
            while frontier:
                nxt = []
                for sub in frontier:
                    for g in range(self.order):
                        if g in sub:
                            continue
                        bigger = self.closure(list(sub) + [g])
                        if bigger not in known:
                            known.add(bigger)
                            nxt.append(bigger)
                frontier = nxt
            self._subgroups = sorted(known, key=lambda s: (len(s), sorted(s)))
        return list(self._subgroups)

    def is_cyclic(self):
        return any(self.element_order(a) == self.order
                   for a in range(self.order))


def cyclic_group(n):
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, ['c%d' % k for k in range(n)])


def dihedral_group(n):
    """Symmetries of the n-gon, order 2n, with n at most 8."""
    if n > 8:
        raise ValueError("dihedral groups only up to order 16")
    # element 2k is rotation by k, 2k+1 is reflection r^k s
    def mul(a, b):
        ra, sa = a >> 1, a & 1
        rb, sb = b >> 1, b & 1
        if sa == 0:
            return ((ra + rb) % n) << 1 | sb
        return ((ra - rb) % n) << 1 | (1 ^ sb)
    order = 2 * n
    table = [[mul(a, b) for b in range(order)] for a in range(order)]
    return FiniteGroup(table)


_Q8_UNIT = [[(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)]]


def quaternion_group():
    """The order-eight group with i^4 = 1, i^2 = j^2 and jij^{-1} = i^{-1}.

    Index 2k is the unit (1, i, j, k in turn); 2k + 1 its negative.
    """
    def mul(a, b):
        sa, ua = a & 1, a >> 1
        sb, ub = b & 1, b >> 1
        sc, uc = _Q8_UNIT[ua][ub]
        return (uc << 1) | (sa ^ sb ^ sc)
    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    labels = ['1', '-1', 'i', '-i', 'j', '-j', 'k', '-k']
    g = FiniteGroup(table, labels)
    i, j = 2, 4
    assert g.element_order(i) == 4
    assert g.op(i, i) == g.op(j, j)
    assert g.op(g.op(j, i), g.inv(j)) == g.inv(i)
    return g


def direct_product(a, b):
    def pack(i, j):
        return i * b.order + j

    table = []
    for i1 in range(a.order):
        for j1 in range(b.order):
            row = []
            for i2 in range(a.order):
                for j2 in range(b.order):
                    row.append(pack(a.op(i1, i2), b.op(j1, j2)))
            table.append(row)
    labels = ['(%s,%s)' % (a.labels[i], b.labels[j])
              for i in range(a.order) for j in range(b.order)]
    return FiniteGroup(table, labels)


class GroupHom:
    """Homomorphism between table groups, verified on the full table."""

    __slots__ = ('source', 'target', 'images')

    def __init__(self, source, target, images):
        if len(images) != source.order:
            raise ValueError("one image per source element required")
        if any(not 0 <= v < target.order for v in images):
            raise ValueError("image out of range")
        for i in range(source.order):
            for j in range(source.order):
                if images[source.op(i, j)] != target.op(images[i], images[j]):
                    raise ValueError("not a homomorphism at (%d, %d)" % (i, j))
        object.__setattr__(self, 'source', source)
        object.__setattr__(self, 'target', target)
        object.__setattr__(self, 'images', tuple(images))

    def __setattr__(self, name, value):
        raise AttributeError("GroupHom is immutable")

    def __call__(self, a):
        return self.images[a]

    def __eq__(self, other):
        return (isinstance(other, GroupHom)
                and self.source is other.source
                and self.target is other.target
                and self.images == other.images)

    def kernel(self):
        return [a for a in range(self.source.order) if self.images[a] == 0]

    def image(self):
        return sorted(set(self.images))

    def is_injective(self):
        return len(self.kernel()) == 1

    def is_surjective(self):
        return len(set(self.images)) == self.target.order

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def compose(self, other):
        """self after other."""
        return GroupHom(other.source, self.target,
                        [self.images[v] for v in other.images])


# ---------------------------------------------------------------------------
# Galois groups as table groups
# ---------------------------------------------------------------------------

class GalData:
    """The automorphism list of an extension, indexed as a table group."""

    __slots__ = ('ext', 'elements', 'group')

    def __init__(self, ext):
        elements = list(ext.group)
        if not elements[0].is_identity():
            raise AssertionError("extension group does not lead with identity")
        idx = {}
        for n, e in enumerate(elements):
            idx[e] = n
        table = [[idx[a.compose(b)] for b in elements] for a in elements]
        object.__setattr__(self, 'ext', ext)
        object.__setattr__(self, 'elements', tuple(elements))
        object.__setattr__(self, 'group',
                           FiniteGroup(table, ['s%d' % n
                                               for n in range(len(elements))]))

    def __setattr__(self, name, value):
        raise AttributeError("GalData is immutable")

    def index_of(self, elem):
        for n, e in enumerate(self.elements):
            if e == elem:
                return n
        raise ValueError("element not in the Galois group")


def _center_action(g):
    return g.center_action if isinstance(g, AlgebraAutomorphism) else g


# ---------------------------------------------------------------------------
# problems and solutions
# ---------------------------------------------------------------------------

class EmbeddingProblem:
    """Surjection alpha from a finite group onto a Galois group.

    The extension may be a division-ring one or a commutative one; the
    commutative case is what the transports produce.
    """

    __slots__ = ('G', 'ext', 'gal', 'alpha')

    def __init__(self, G, ext, alpha_images, gal=None):
        gal = gal if gal is not None else GalData(ext)
        alpha = GroupHom(G, gal.group, alpha_images)
        if not alpha.is_surjective():
            raise ValueError("the problem map must be onto the Galois group")
        object.__setattr__(self, 'G', G)
        object.__setattr__(self, 'ext', ext)
        object.__setattr__(self, 'gal', gal)
        object.__setattr__(self, 'alpha', alpha)

    def __setattr__(self, name, value):
        raise AttributeError("EmbeddingProblem is immutable")

    def is_commutative(self):
        return isinstance(self.ext, CommExtension)

    def __repr__(self):
        return 'EmbeddingProblem(|G|=%d onto order %d)' % (
            self.G.order, self.gal.group.order)


class SolutionMap:
    """A (weak) solution: the group of a bigger extension embedded in G."""

    __slots__ = ('ext_big', 'gal_big', 'center_emb', 'beta', 'kind')

    def __init__(self, ext_big, center_emb, beta_images, kind, G,
                 gal_big=None):
        if kind not in ('weak', 'full'):
            raise ValueError("kind must be weak or full")
        gal_big = gal_big if gal_big is not None else GalData(ext_big)
        beta = GroupHom(gal_big.group, G, beta_images)
        object.__setattr__(self, 'ext_big', ext_big)
        object.__setattr__(self, 'gal_big', gal_big)
        object.__setattr__(self, 'center_emb', center_emb)
        object.__setattr__(self, 'beta', beta)
        object.__setattr__(self, 'kind', kind)

    def __setattr__(self, name, value):
        raise AttributeError("SolutionMap is immutable")

    def __repr__(self):
        return 'SolutionMap(%s, order %d into |G|=%d)' % (
            self.kind, self.gal_big.group.order, self.beta.target.order)


class SolutionReport:

    __slots__ = ('injective_ok', 'kind_ok', 'compatible_ok', 'details')

    def __init__(self, injective_ok, kind_ok, compatible_ok, details=''):
        object.__setattr__(self, 'injective_ok', injective_ok)
        object.__setattr__(self, 'kind_ok', kind_ok)
        object.__setattr__(self, 'compatible_ok', compatible_ok)
        object.__setattr__(self, 'details', details)

    def __setattr__(self, name, value):
        raise AttributeError("SolutionReport is immutable")

    def passed(self):
        return self.injective_ok and self.kind_ok and self.compatible_ok


def restriction_index_table(sol_or_ext_big, problem, center_emb=None):
    """Index table of the restriction from the big group to the problem's."""
    if isinstance(sol_or_ext_big, SolutionMap):
        ext_big = sol_or_ext_big.ext_big
        gal_big = sol_or_ext_big.gal_big
        center_emb = sol_or_ext_big.center_emb
    else:
        ext_big = sol_or_ext_big
        gal_big = GalData(ext_big)
    hom = restriction_between(ext_big, problem.ext, center_emb)
    return [problem.gal.index_of(hom(e)) for e in gal_big.elements]


def verify_solution(problem, sol):
    """Re-verify every condition of a (weak) solution, reporting each."""
    injective_ok = sol.beta.is_injective()
    if sol.kind == 'full':
        kind_ok = sol.beta.is_bijective()
    else:
        kind_ok = True
    try:
        res = restriction_index_table(sol, problem)
    except Exception as exc:  # restriction not even well-defined
        return SolutionReport(injective_ok, kind_ok, False,
                              "restriction failed: %s" % exc)
    bad = [t for t in range(sol.gal_big.group.order)
           if problem.alpha(sol.beta(t)) != res[t]]
    compatible_ok = not bad
    details = '' if compatible_ok else (
        "composite disagrees with restriction at big element(s) %s" % bad)
    return SolutionReport(injective_ok, kind_ok, compatible_ok, details)


def is_split(problem):
    """Brute force over subgroups; returns (split?, section images or None).

    The section, when found, maps each Galois index to the group element
    of the bijective subgroup above it.
    """
    G = problem.G
    gal_order = problem.gal.group.order
    for sub in G.subgroups():
        if len(sub) != gal_order:
            continue
        members = sorted(sub)
        images = [problem.alpha(a) for a in members]
        if len(set(images)) != gal_order:
            continue
        section = [None] * gal_order
        for a, v in zip(members, images):
            section[v] = a
        sec_hom = GroupHom(problem.gal.group, G, section)
        return True, sec_hom
    return False, None


# ---------------------------------------------------------------------------
# transports between the division-ring and commutative levels
# ---------------------------------------------------------------------------

def _comm_shadow(ext):
    """The commutative extension under a division-ring one, index-aligned."""
    return CommExtension(ext.center_field, ext.center_emb,
                         [_center_action(g) for g in ext.group])


def transport_down(problem):
    """The commutative problem with the same group data, via the center."""
    if problem.is_commutative():
        raise ValueError("problem is already commutative")
    comm = _comm_shadow(problem.ext)
    return EmbeddingProblem(problem.G, comm, list(problem.alpha.images))


def transport_up(problem, H, height_bound=8):
    """The division-ring problem over H above a commutative problem.

    Requires an anisotropy certificate for the norm form of H over the
    commutative extension; raises NotAnisotropic otherwise.
    """
    if not problem.is_commutative():
        raise ValueError("transport_up expects a commutative problem")
    emb = problem.ext.center_emb
    if emb.source != H.base:
        raise ValueError("problem base field is not the center of H")
    ext = build_galois_extension(H, problem.ext.center_field, emb,
                                 height_bound)
    gal = GalData(ext)
    images = []
    for g in range(problem.G.order):
        fm = problem.gal.elements[problem.alpha(g)]
        images.append(gal.index_of(ext.from_center(fm)))
    return EmbeddingProblem(problem.G, ext, images, gal)


def sol_down(sol):
    """The commutative shadow of a solution, same tables."""
    comm = _comm_shadow(sol.ext_big)
    return SolutionMap(comm, sol.center_emb, list(sol.beta.images),
                       sol.kind, sol.beta.target)


def sol_up(sol, H, height_bound=8):
    """Lift a commutative solution to the division ring over H."""
    emb = sol.ext_big.center_emb
    if emb.source != H.base:
        raise ValueError("solution base field is not the center of H")
    ext = build_galois_extension(H, sol.ext_big.center_field, emb,
                                 height_bound)
    gal = GalData(ext)
    images = [None] * gal.group.order
    for t, fm in enumerate(sol.ext_big.group):
        images[gal.index_of(ext.from_center(fm))] = sol.beta(t)
    return SolutionMap(ext, sol.center_emb, images, sol.kind,
                       sol.beta.target, gal)


def problems_agree(p1, p2):
    """Exact identity of two problems: same group, extension data, tables."""
    if p1.G is not p2.G and p1.G.table != p2.G.table:
        return False
    if p1.ext.center_field != p2.ext.center_field:
        return False
    if p1.ext.center_emb != p2.ext.center_emb:
        return False
    if [_center_action(a) for a in p1.ext.group] != \
            [_center_action(b) for b in p2.ext.group]:
        return False
    return p1.alpha.images == p2.alpha.images


def solutions_agree(s1, s2):
    if s1.ext_big.center_field != s2.ext_big.center_field:
        return False
    if [_center_action(a) for a in s1.ext_big.group] != \
            [_center_action(b) for b in s2.ext_big.group]:
        return False
    return s1.beta.images == s2.beta.images and s1.kind == s2.kind


# ---------------------------------------------------------------------------
# geometric problems over the twisted function field
# ---------------------------------------------------------------------------

class GeometricReport:
    """The function-field problem next to its fixed-center shadow.

    link_identity records that composing the shadow with the inverse of
    the restriction from the lift group reproduces the function-field
    problem, as a table identity.
    """

    __slots__ = ('fn_ext', 'alpha_geo', 'fixed_field_ext', 'alpha_bar',
                 'link_identity')

    def __init__(self, fn_ext, alpha_geo, fixed_field_ext, alpha_bar,
                 link_identity):
        object.__setattr__(self, 'fn_ext', fn_ext)
        object.__setattr__(self, 'alpha_geo', tuple(alpha_geo))
        object.__setattr__(self, 'fixed_field_ext', fixed_field_ext)
        object.__setattr__(self, 'alpha_bar', tuple(alpha_bar))
        object.__setattr__(self, 'link_identity', link_identity)

    def __setattr__(self, name, value):
        raise AttributeError("GeometricReport is immutable")


def geometric_problem(problem, X, degree_bound=4):
    """Build the function-field problem and the fixed-center shadow.

    Requires the direct-product condition (ProductConditionFailed
    otherwise, raised by the lift construction).  Verifies that the two
    routes to the function-field problem agree on the full table.
    """
    if X.ext.L != problem.ext.L:
        raise ValueError("twisted extension does not match the problem")
    fn_ext = build_twisted_extension(X, degree_bound)
    alpha_geo = [fn_ext.lift_of(problem.gal.elements[problem.alpha(g)])
                 for g in range(problem.G.order)]
    ell = X.ext.ell
    h = X.ext.H.base
    e_field, e_emb = fixed_field(ell, [X.tau_tilde])
    f_field, f_emb = fixed_field(h, [X.sigma_tilde])
    img = X.ext.emb(f_emb(f_field.gen()))
    pre = subfield_preimage(e_emb, img)
    if pre is None:
        raise AssertionError("fixed base field escaped the fixed extension field")
    k_in_e = FieldMorphism(f_field, e_field, pre)
    gal_e = automorphism_group(e_field, k_in_e)
    # restriction of the center group to the fixed field is a bijection
    restricted = []
    for g in problem.ext.group:
        fm = restrict_morphism(_center_action(g), e_emb)
        if fm not in gal_e:
            raise AssertionError("restriction left the fixed-field group")
        restricted.append(fm)
    if len(set(restricted)) != len(gal_e):
        raise AssertionError("restriction to the fixed field is not bijective")
    alpha_bar = [restricted[problem.alpha(g)] for g in range(problem.G.order)]
    # link identity: the lift's central restriction equals the shadow
    link = True
    for g in range(problem.G.order):
        lift = alpha_geo[g]
        via_lift = restrict_morphism(_center_action(lift.rho), e_emb)
        if via_lift != alpha_bar[g]:
            link = False
    fixed_ext = CommExtension(e_field, k_in_e, gal_e)
    return GeometricReport(fn_ext, alpha_geo, fixed_ext, alpha_bar, link)


# ---------------------------------------------------------------------------
# weak -> split fiber reduction
# ---------------------------------------------------------------------------

class FiberReduction:
    """The split problem built from a weak solution, with its transport."""

    __slots__ = ('problem', 'original', 'weak', 'section', 'pairs',
                 'kernel_iso', 'res_table')

    def __init__(self, problem, original, weak, section, pairs, kernel_iso,
                 res_table):
        object.__setattr__(self, 'problem', problem)
        object.__setattr__(self, 'original', original)
        object.__setattr__(self, 'weak', weak)
        object.__setattr__(self, 'section', section)
        object.__setattr__(self, 'pairs', tuple(pairs))
        object.__setattr__(self, 'kernel_iso', tuple(kernel_iso))
        object.__setattr__(self, 'res_table', tuple(res_table))

    def __setattr__(self, name, value):
        raise AttributeError("FiberReduction is immutable")

    def transport(self, big_solution, height_bound=8):
        """Turn a full solution of the reduced problem into one of the
        original, through the fixed field of the projection kernel."""
        report = verify_solution(self.problem, big_solution)
        if not (report.passed() and big_solution.kind == 'full'):
            raise ValueError("transport needs a verified full solution")
        orig = self.original
        G = orig.G
        # project the solution to the original group
        pi = [self.pairs[big_solution.beta(t)][0]
              for t in range(big_solution.gal_big.group.order)]
        kernel = [t for t, v in enumerate(pi) if v == 0]
        kt = [_center_action(big_solution.gal_big.elements[t])
              for t in kernel]
        f_big = big_solution.ext_big.center_field
        f_field, f_emb = fixed_field(f_big, kt)
        # base field of the original problem inside the fixed field
        h_emb_big = big_solution.ext_big.center_emb
        pre = subfield_preimage(f_emb, h_emb_big(h_emb_big.source.gen()))
        if pre is None:
            raise AssertionError("base center escaped the fixed field")
        h_in_f = FieldMorphism(h_emb_big.source, f_field, pre)
        if orig.is_commutative():
            ext_F = build_comm_extension(f_field, h_in_f)
        else:
            ext_F = build_galois_extension(orig.ext.H, f_field, h_in_f,
                                           height_bound)
        gal_F = GalData(ext_F)
        # restriction from the big extension down to the new one
        hom = restriction_between(big_solution.ext_big, ext_F, f_emb)
        res_idx = [gal_F.index_of(hom(e))
                   for e in big_solution.gal_big.elements]
        if sorted(t for t, v in enumerate(res_idx) if v == 0) != \
                sorted(kernel):
            raise AssertionError("projection kernel does not cut the fixed field")
        beta = [None] * gal_F.group.order
        for t, v in enumerate(res_idx):
            if beta[v] is None:
                beta[v] = pi[t]
            elif beta[v] != pi[t]:
                raise AssertionError("projected solution is not well-defined")
        # center of the original extension inside the fixed field
        chain = self.weak.center_emb
        ell_img = big_solution.center_emb(chain(chain.source.gen())) \
            if chain.target == big_solution.center_emb.source else None
        if ell_img is None:
            raise AssertionError("center embeddings do not chain")
        pre_ell = subfield_preimage(f_emb, ell_img)
        if pre_ell is None:
            raise AssertionError("small center escaped the fixed field")
        ell_in_f = FieldMorphism(chain.source, f_field, pre_ell)
        out = SolutionMap(ext_F, ell_in_f, beta, 'full', G, gal_F)
        final = verify_solution(orig, out)
        if not final.passed():
            raise AssertionError("transported solution failed verification: %s"
                                 % final.details)
        return out


def fiber_reduction(problem, weak):
    """The split reduction of a problem along a verified weak solution.

    Builds the fiber product of the group with the bigger Galois group
    over the smaller one, the projection, and the section coming from the
    weak solution; the kernel of the new problem is identified with the
    kernel of the original by an explicit isomorphism.
    """
    report = verify_solution(problem, weak)
    if not report.passed():
        raise NotWeakSolution(report.details or "weak solution failed")
    G = problem.G
    galp = weak.gal_big.group
    res_idx = restriction_index_table(weak, problem)
    pairs = [(a, r) for r in range(galp.order) for a in range(G.order)
             if problem.alpha(a) == res_idx[r]]
    pairs.sort(key=lambda p: (p != (0, 0), p[1], p[0]))
    index = {p: n for n, p in enumerate(pairs)}
    table = []
    for (a1, r1) in pairs:
        row = []
        for (a2, r2) in pairs:
            row.append(index[(G.op(a1, a2), galp.op(r1, r2))])
        table.append(row)
    G_prime = FiniteGroup(table, ['(%s,%s)' % (G.labels[a], galp.labels[r])
                                  for a, r in pairs])
    alpha_prime = [r for (_, r) in pairs]
    reduced = EmbeddingProblem(G_prime, weak.ext_big, alpha_prime,
                               weak.gal_big)
    # section from the weak solution
    section_images = [index[(weak.beta(r), r)] for r in range(galp.order)]
    section = GroupHom(galp, G_prime, section_images)
    for r in range(galp.order):
        if reduced.alpha(section(r)) != r:
            raise AssertionError("section does not split the reduction")
    # kernel isomorphism ker(alpha) -> ker(alpha')
    ker_orig = problem.alpha.kernel()
    kernel_iso = [(a, index[(a, 0)]) for a in ker_orig]
    ker_new = reduced.alpha.kernel()
    if sorted(v for _, v in kernel_iso) != sorted(ker_new):
        raise AssertionError("kernel isomorphism is not onto")
    iso_map = dict(kernel_iso)
    for a in ker_orig:
        for b in ker_orig:
            if iso_map[G.op(a, b)] != G_prime.op(iso_map[a], iso_map[b]):
                raise AssertionError("kernel isomorphism is not multiplicative")
    return FiberReduction(reduced, problem, weak, section, pairs, kernel_iso,
                          res_idx)


# ---------------------------------------------------------------------------
# hypothesis reporting for the geometric existence statement
# ---------------------------------------------------------------------------

def hypothesis_report(problem, X=None, ample_assertion=None):
    """Evaluate the checkable hypotheses of the geometric existence result.

    Splitness and the product condition are computed; ampleness of the
    fixed center is never computed and enters only as a caller assertion.
    The conclusion itself (existence of a function-field solution) is
    outside what this package verifies, and the report says so.
    """
    split, section = is_split(problem)
    product_ok = eq_produit(X) if X is not None else None
    return {
        'condition_split': split,
        'condition_product': product_ok,
        'ampleness_asserted': ample_assertion,
        'conclusion_verified': False,
        'note': ("the geometric existence conclusion is not decided here; "
                 "hypotheses only"),
        'weak_to_split_reduction_suggested': not split,
    }


# ---------------------------------------------------------------------------
# the quaternion-group scenario
# ---------------------------------------------------------------------------

class Q8Report:

    __slots__ = ('problem', 'split', 'weak', 'weak_report', 'reduction',
                 'quartic_group_cyclic', 'quartic_contains_conjugation',
                 'quartic_level', 'kernel_order', 'reduced_order',
                 'reduced_split', 'reduced_kernel_order', 'base_note')

    def __init__(self, **kw):
        for name in self.__slots__:
            object.__setattr__(self, name, kw[name])

    def __setattr__(self, name, value):
        raise AttributeError("Q8Report is immutable")

    def passed(self):
        return (not self.split and self.weak_report.passed()
                and self.quartic_group_cyclic
                and self.quartic_contains_conjugation
                and self.quartic_level == 'infinite'
                and self.kernel_order == 4
                and self.reduced_split
                and self.reduced_kernel_order == 4)


def q8_scenario(height_bound=8):
    """The non-split problem for the quaternion group with its bounded
    weak solution and fiber reduction, everything re-verified.

    The base is the rational Hamilton quaternions; the extension adjoins
    the square root of two and the weak solution comes from the real
    cyclic quartic field above it.
    """
    Q = NumberField([0, 1], label='Q')
    q_sqrt2 = NumberField([-2, 0, 1], label='Q(sqrt2)')
    quartic = NumberField([2, 0, -4, 0, 1], label='Q(sqrt(2+sqrt2))')
    H = QuaternionAlgebra(Q, -1, -1, label='(-1,-1/Q)')
    embq = FieldMorphism(Q, q_sqrt2, q_sqrt2.zero())
    ext = build_galois_extension(H, q_sqrt2, embq, height_bound)
    gal = GalData(ext)
    conj_idx = next(n for n, e in enumerate(gal.elements)
                    if not e.is_identity())
    q8 = quaternion_group()
    # generator images: i acts by the conjugation, j acts trivially
    alpha = [None] * 8
    alpha[0], alpha[1] = 0, 0               # 1, -1
    alpha[2] = alpha[3] = conj_idx          # i, -i
    alpha[4] = alpha[5] = 0                 # j, -j
    alpha[6] = alpha[7] = conj_idx          # k, -k
    problem = EmbeddingProblem(q8, ext, alpha, gal)
    split, _ = is_split(problem)

    # the real cyclic quartic field above Q(sqrt2)
    qgroup = automorphism_group(quartic)
    cyclic4 = len(qgroup) == 4 and sorted(g.order() for g in qgroup) == \
        [1, 2, 4, 4]
    sqrt2_up = quartic.element([-2, 0, 1])
    gen4 = next(g for g in qgroup if g.order() == 4)
    contains_conj = gen4(sqrt2_up) == -sqrt2_up
    level = field_level(quartic, height_bound)

    embq4 = FieldMorphism(Q, quartic, quartic.zero())
    ext_big = build_galois_extension(H, quartic, embq4, height_bound)
    gal_big = GalData(ext_big)
    center_emb = FieldMorphism(q_sqrt2, quartic, sqrt2_up)
    big_gen = next(e for e in gal_big.elements
                   if _center_action(e).order() == 4)
    # order the cyclic group by powers of the generator and send it to i
    beta = [None] * 4
    cur = big_gen
    power = 1
    while True:
        idx = gal_big.index_of(cur)
        beta[idx] = _q8_power_of_i(power)
        if cur.is_identity():
            break
        cur = big_gen.compose(cur)
        power += 1
    weak = SolutionMap(ext_big, center_emb, beta, 'weak', q8, gal_big)
    weak_report = verify_solution(problem, weak)
    reduction = fiber_reduction(problem, weak)
    red_split, _ = is_split(reduction.problem)
    return Q8Report(
        problem=problem, split=split, weak=weak, weak_report=weak_report,
        reduction=reduction, quartic_group_cyclic=cyclic4,
        quartic_contains_conjugation=contains_conj,
        quartic_level=level.kind,
        kernel_order=len(problem.alpha.kernel()),
        reduced_order=reduction.problem.G.order,
        reduced_split=red_split,
        reduced_kernel_order=len(reduction.problem.alpha.kernel()),
        base_note=("rational base standing in for a complete ample one; "
                   "none of the verified facts use ampleness"))


def _q8_power_of_i(power):
    # indices in quaternion_group(): 1, -1, i, -i
    return {0: 0, 1: 2, 2: 1, 3: 3}[power % 4]
