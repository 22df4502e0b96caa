"""The comparison pipeline between the three universal central extensions.

Three constructions live over one perfect Lie algebra g: the Leibniz UCE on
g (x) g, the Lie UCE on the wedge square, and the LTS tensor cube over the
derived triple system {x,y,z} = [x,[y,z]]. This module machine-checks how
they relate:

  * the LTS cube carries an induced Leibniz bracket [x, y] = x * pi(y),
    built from any splitting of the bracket surjection g (x) g -> g
    (induced_leibniz_structure); the bracket is independent of the
    splitting because the kernel of (carrier ^ carrier) -> g acts trivially,
    and both facts are verified rather than assumed;
  * inside the Leibniz UCE sit two distinguished central subspaces: the
    jacobiator span J and the symmetric span I, with J = 2I, hence J = 0 in
    characteristic 2 and J = I otherwise (verify_jacobiator_doubling);
  * the canonical maps between the constructions identify U_LTS with
    U_Leib/J in every characteristic, and with U_Lie away from
    characteristic 2 (verify_main_theorem).

Every isomorphism verdict is concrete: an explicit matrix, checked to be a
bracket morphism, bijective, and compatible with the projections. Dimension
counts are reported separately so a failure localizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import (
    BinaryAlgebra,
    ModuleAction,
    TernaryAlgebra,
    check_binary,
    check_ternary,
    derived_lts,
    equivariant_leibniz,
    wedge_index_pairs,
)
from .errors import (
    LeibnizCheckFailed,
    InternalAssertionFailed,
    NotCentral,
    NotLie,
    NotOverSameBase,
    NotPerfect,
    WellDefinednessFailed,
    WrongCategory,
    ZActionNontrivial,
)
from .linalg import Matrix, SpanAccumulator, kernel, quotient, right_inverse
from .uce import (
    CentralExtension,
    UceResult,
    leibniz_uce,
    lie_uce,
    lts_tensor_cube,
    universal_map,
)
from . import tensorops as tops

__all__ = [
    "LeibnizStructureCertificate",
    "TheoremReport",
    "induced_leibniz_structure",
    "jacobiator_subspace",
    "symmetric_subspace",
    "verify_jacobiator_doubling",
    "verify_main_theorem",
]


def _scalar(f, raw, den):
    # tensordot output back to a field scalar; den is the accumulated scale
    if f.characteristic:
        return int(raw) % f.characteristic
    return Fraction(int(raw), den)


def _vec(f, row, den):
    return [_scalar(f, x, den) for x in row]


@dataclass(frozen=True)
class LeibnizStructureCertificate:
    """Carrier of the induced Leibniz bracket on an LTS central extension,
    together with the data the construction used and re-verified."""

    extension: CentralExtension
    sigma: Matrix
    z_basis: tuple
    leibniz_bracket: BinaryAlgebra


def _bracket_splitting(g):
    """A right inverse sigma of the evaluation g (x) g -> g, plus the
    evaluation matrix itself. Exists exactly because g is perfect."""
    n = g.dim
    cols = [g.c[a][b] for a in range(n) for b in range(n)]
    mu = Matrix.from_columns(g.field, cols, n)
    return mu, right_inverse(mu)


def _action_from_splitting(ext, g, sigma):
    """The g-action on the extension carrier: x * v = sum over the splitting
    sigma(v) = sum a_i (x) b_i of {x, s(a_i), s(b_i)}."""
    f = g.field
    n = g.dim
    m = ext.carrier_dim
    t = ext.algebra.tensor()
    st = tops.exact_tensor(f, ext.section.rows)
    sg = tops.exact_tensor(f, sigma.rows)
    u1 = tops.exact_tensordot(st.arr, t.arr, ([0], [1]), t.p)
    u2 = tops.exact_tensordot(st.arr, u1, ([0], [2]), t.p)
    # u2[b, a, x, w] = {e_x, s(e_a), s(e_b)}_w
    sr = sg.arr.reshape(n, n, n)
    acted = tops.exact_tensordot(sr, u2, ([0, 1], [1, 0]), t.p)
    den = sg.scale * st.scale**2 * t.scale
    table = [
        [_vec(f, acted[v, x], den) for v in range(n)] for x in range(m)
    ]
    return ModuleAction(m, g, table)


def _reversed_right_inverse(mu):
    """A second splitting of mu obtained by feeding the solver the columns
    in reverse order, which moves the pivots; used to certify that the
    induced bracket does not depend on the splitting."""
    nc = mu.ncols
    perm = list(range(nc - 1, -1, -1))
    mu2 = Matrix(mu.field, [[r[j] for j in perm] for r in mu.rows], nc)
    s2 = right_inverse(mu2)
    rows = [None] * nc
    for pos, orig in enumerate(perm):
        rows[orig] = s2.rows[pos]
    return Matrix(mu.field, rows, s2.ncols)


def induced_leibniz_structure(ext, g):
    """Upgrade an LTS central extension of a perfect Lie algebra to a
    Leibniz algebra on the same carrier, with [x, y] = x * pi(y) and the
    original ternary bracket recovered as {x,y,z} = [x,[y,z]].

    ext may be a UceResult or a CentralExtension in the lts category whose
    base is the derived triple system of g. Everything the construction
    relies on is checked: centrality, triviality of the action of the
    kernel of (carrier ^ carrier) -> g, the Leibniz and Jacobi identities
    of the new bracket, recovery of the ternary bracket, and independence
    of the chosen splitting.
    """
    gflags = check_binary(g)
    if not gflags.is_lie:
        raise NotLie(f"base of the upgrade must be Lie: {gflags.witnesses}")
    if not gflags.is_perfect:
        raise NotPerfect(f"{g.name or 'input'} is not perfect")
    if isinstance(ext, UceResult):
        ext = ext.as_extension()
    if ext.category != "lts":
        raise WrongCategory("only an lts extension can be upgraded")
    ext.verify()
    dl = derived_lts(g)
    if ext.base.t != dl.t:
        raise NotOverSameBase(
            "the extension's base is not the derived triple system of g"
        )

    f = g.field
    m = ext.carrier_dim
    mu, sigma = _bracket_splitting(g)

    # kernel of (carrier ^ carrier) -> g, x ^ y |-> [pi x, pi y]
    pt = tops.exact_tensor(f, ext.projection.rows)
    gt = g.tensor()
    b1 = tops.exact_tensordot(pt.arr, gt.arr, ([0], [0]), gt.p)
    b2 = tops.exact_tensordot(pt.arr, b1, ([0], [1]), gt.p)
    pairs, _ = wedge_index_pairs(m)
    den = pt.scale**2 * gt.scale
    zmap = Matrix.from_columns(
        f, [_vec(f, b2[j, i], den) for (i, j) in pairs], g.dim
    )
    z = kernel(zmap)

    t = ext.algebra.tensor()
    if z.dim:
        zt = tops.exact_tensor(f, z.basis_vectors())
        rows_i = [i for (i, j) in pairs]
        rows_j = [j for (i, j) in pairs]
        sliced = t.arr[:, rows_i, rows_j, :]
        hit = tops.exact_tensordot(zt.arr, sliced, ([1], [1]), t.p)
        w = tops._witness(hit, t.p)
        if w is not None:
            raise ZActionNontrivial(
                f"kernel vector {w[0]} moves carrier basis vector {w[1]}"
            )

    act = _action_from_splitting(ext, g, sigma)
    bracket = equivariant_leibniz(act, ext.projection)

    bflags = check_binary(bracket)
    if not (bflags.is_leibniz and bflags.satisfies_jacobi):
        raise LeibnizCheckFailed(f"witnesses: {bflags.witnesses}")
    dm = tops.derived_mismatch_witness(t, bracket.tensor())
    if dm is not None:
        raise InternalAssertionFailed(
            "induced-bracket-disagrees-with-ternary",
            f"basis triple {dm}",
        )

    sigma2 = _reversed_right_inverse(mu)
    if sigma2.rows != sigma.rows:
        act2 = _action_from_splitting(ext, g, sigma2)
        bracket2 = equivariant_leibniz(act2, ext.projection)
        if bracket2.c != bracket.c:
            raise InternalAssertionFailed(
                "bracket-depends-on-splitting-choice",
                "two right inverses of the evaluation map disagree",
            )

    return LeibnizStructureCertificate(
        extension=ext,
        sigma=sigma,
        z_basis=tuple(tuple(r) for r in z.basis_vectors()),
        leibniz_bracket=bracket,
    )


def _require_leibniz_result(u):
    if not isinstance(u, UceResult) or u.category != "leibniz":
        raise WrongCategory("expected a Leibniz UceResult")


def jacobiator_subspace(u):
    """Span of [x,[y,z]] + [z,[x,y]] + [y,[z,x]] over carrier basis triples;
    trilinear, so basis triples generate."""
    _require_leibniz_result(u)
    et = u.extension_algebra.tensor()
    lhs = tops.left_nested(et)
    jac = lhs + lhs.transpose(2, 0, 1, 3) + lhs.transpose(1, 2, 0, 3)
    if et.p:
        jac = jac % et.p
    q = u.carrier_dim
    acc = SpanAccumulator(u.base.field, q)
    for row in jac.reshape(q**3, q):
        acc.add_dense([int(x) for x in row])
        if acc.dim == q:
            break
    return acc.to_subspace()


def symmetric_subspace(u):
    """Span of [x,y] + [y,x] over unordered carrier basis pairs, i = j
    included (that row is 2[x,x])."""
    _require_leibniz_result(u)
    et = u.extension_algebra.tensor()
    sym = et.arr + et.arr.transpose(1, 0, 2)
    if et.p:
        sym = sym % et.p
    q = u.carrier_dim
    acc = SpanAccumulator(u.base.field, q)
    for i in range(q):
        for j in range(i, q):
            acc.add_dense([int(x) for x in sym[i, j]])
    return acc.to_subspace()


def verify_jacobiator_doubling(u):
    """Check J = 2I inside the Leibniz UCE, and the branch it forces: J = 0
    in characteristic 2, J = I otherwise."""
    _require_leibniz_result(u)
    f = u.base.field
    j = jacobiator_subspace(u)
    i = symmetric_subspace(u)
    doubled = i.scaled(f.coerce(2))
    ok = j.equals(doubled)
    if f.characteristic == 2:
        branch = j.dim == 0
    else:
        branch = j.equals(i)
    return {
        "j_equals_2i": ok,
        "char_branch": branch,
        "j_dim": j.dim,
        "i_dim": i.dim,
        "j": j,
        "i": i,
    }


@dataclass
class TheoremReport:
    """Everything verify_main_theorem established, plus where it stopped.

    Verdict fields are True/False once decided and None when an earlier
    failure short-circuited the pipeline; failed_fact names the first
    claim that did not hold.
    """

    characteristic: int
    base_name: str
    u_lie: UceResult
    u_leib: UceResult
    u_lts: UceResult
    certificate: LeibnizStructureCertificate
    j_subspace: object
    i_subspace: object
    i_prime: object = None
    doubling_ok: bool = None
    j_subset_i: bool = None
    iso_lts_leib_mod_j: bool = None
    char_branch_ok: bool = None
    failed_fact: str = None
    dims: dict = dc_field(default_factory=dict)
    maps: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return (
            self.failed_fact is None
            and bool(self.doubling_ok)
            and bool(self.j_subset_i)
            and bool(self.iso_lts_leib_mod_j)
            and bool(self.char_branch_ok)
        )

    @property
    def branch(self):
        return "char-2" if self.characteristic == 2 else "char-not-2"

    def to_dict(self):
        return {
            "base": self.base_name,
            "branch": self.branch,
            "characteristic": self.characteristic,
            "dims": dict(self.dims),
            "failed_fact": self.failed_fact,
            "ok": self.ok,
            "verdicts": {
                "doubling_ok": self.doubling_ok,
                "j_subset_i": self.j_subset_i,
                "iso_lts_leib_mod_j": self.iso_lts_leib_mod_j,
                "char_branch_ok": self.char_branch_ok,
            },
        }


def _factor_through(mat, q):
    """Restrict a matrix that kills q.killed to coset coordinates."""
    return Matrix.from_columns(
        mat.field, [mat.col(c) for c in q.coset_coords], mat.nrows
    )


def _quotient_as_lts_extension(u_leib, j, base_lts):
    """U_Leib/J with the ternary bracket {a,b,c} = class([a,[b,c]]), as a
    central extension of the derived triple system of the base."""
    f = u_leib.base.field
    qj = quotient(u_leib.carrier_dim, j)
    et = u_leib.extension_algebra.tensor()
    nested = tops.left_nested(et)
    den = et.scale**2
    coords = qj.coset_coords
    table = [
        [
            [qj.project(_vec(f, nested[x, y, z], den)) for z in coords]
            for y in coords
        ]
        for x in coords
    ]
    alg = TernaryAlgebra(
        f, qj.dim, table, name=f"{u_leib.extension_algebra.name}/J"
    )
    proj = _factor_through(u_leib.projection_b, qj)
    sec_cols = [
        qj.project(u_leib.section_s.col(i)) for i in range(u_leib.base.dim)
    ]
    sec = Matrix.from_columns(f, sec_cols, qj.dim)
    ext = CentralExtension("lts", base_lts, alg, proj, sec)
    return qj, ext


def verify_main_theorem(g, force=False):
    """Build the three universal central extensions of a perfect Lie
    algebra and verify how they compare: U_LTS is isomorphic to U_Leib/J in
    every characteristic, to U_Leib itself in characteristic 2 (where J
    vanishes), and to U_Lie away from characteristic 2."""
    gflags = check_binary(g)
    if not gflags.is_lie:
        raise NotLie(f"input is not a Lie algebra: {gflags.witnesses}")
    if not gflags.is_perfect:
        raise NotPerfect(f"{g.name or 'input'} is not perfect")
    f = g.field
    p = f.characteristic

    base_lts = derived_lts(g)
    u_leib = leibniz_uce(g)
    u_lie = lie_uce(g)
    u_lts = lts_tensor_cube(base_lts, force=force)
    cert = induced_leibniz_structure(u_lts, g)

    doubling = verify_jacobiator_doubling(u_leib)
    j, i = doubling["j"], doubling["i"]

    report = TheoremReport(
        characteristic=p,
        base_name=g.name or "",
        u_lie=u_lie,
        u_leib=u_leib,
        u_lts=u_lts,
        certificate=cert,
        j_subspace=j,
        i_subspace=i,
    )
    report.dims = {
        "base": g.dim,
        "u_lie": u_lie.carrier_dim,
        "u_leib": u_leib.carrier_dim,
        "u_lts": u_lts.carrier_dim,
        "h2_lie": u_lie.h2.dim,
        "h2_leib": u_leib.h2.dim,
        "h2_lts": u_lts.h2.dim,
        "j": j.dim,
        "i": i.dim,
    }

    def fail(fact):
        report.failed_fact = fact
        return report

    report.doubling_ok = doubling["j_equals_2i"] and doubling["char_branch"]
    if not doubling["j_equals_2i"]:
        return fail("jacobiator-span-not-twice-symmetric-span")
    if not doubling["char_branch"]:
        return fail(
            "jacobiator-span-not-zero"
            if p == 2
            else "jacobiator-span-differs-from-symmetric-span"
        )

    report.j_subset_i = j.is_subspace_of(i)
    if not report.j_subset_i:
        return fail("jacobiator-span-escapes-symmetric-span")
    if not j.is_subspace_of(u_leib.h2):
        return fail("jacobiator-span-escapes-projection-kernel")
    if not i.is_subspace_of(u_leib.h2):
        return fail("symmetric-span-escapes-projection-kernel")

    # the upgraded cube receives the canonical map from the Leibniz UCE
    upgraded = CentralExtension(
        "leibniz", g, cert.leibniz_bracket, u_lts.projection_b, u_lts.section_s
    )
    try:
        phi = universal_map(u_leib, upgraded)
    except (NotCentral, WellDefinednessFailed) as e:
        report.iso_lts_leib_mod_j = False
        return fail(f"upgraded-cube-not-a-leibniz-extension: {e}")

    report.maps["phi"] = phi
    report.i_prime = i.image_under(phi)
    report.dims["i_prime"] = report.i_prime.dim

    ker_phi = kernel(phi)
    if not ker_phi.equals(j):
        report.iso_lts_leib_mod_j = False
        return fail("kernel-of-canonical-map-differs-from-jacobiator-span")
    if phi.rank() != u_lts.carrier_dim:
        report.iso_lts_leib_mod_j = False
        return fail("canonical-map-to-cube-not-surjective")

    try:
        qj, quot_ext = _quotient_as_lts_extension(u_leib, j, base_lts)
        tflags = check_ternary(quot_ext.algebra)
        if not tflags.is_lts:
            report.iso_lts_leib_mod_j = False
            return fail("quotient-by-jacobiator-span-not-a-triple-system")
        quot_ext.verify()
        psi = universal_map(u_lts, quot_ext)
    except (NotCentral, WellDefinednessFailed) as e:
        report.iso_lts_leib_mod_j = False
        return fail(f"quotient-by-jacobiator-span-fails: {e}")

    phi_bar = _factor_through(phi, qj)
    report.maps["psi"] = psi
    report.maps["phi_bar"] = phi_bar
    idq = Matrix.identity(f, qj.dim)
    idu = Matrix.identity(f, u_lts.carrier_dim)
    report.iso_lts_leib_mod_j = (
        psi @ phi_bar == idq and phi_bar @ psi == idu
    )
    if not report.iso_lts_leib_mod_j:
        return fail("canonical-maps-not-mutually-inverse")

    if p == 2:
        report.char_branch_ok = (
            u_lts.carrier_dim == u_leib.carrier_dim
            and ker_phi.dim == 0
            and phi.rank() == u_leib.carrier_dim
        )
        if not report.char_branch_ok:
            return fail("cube-not-isomorphic-to-leibniz-uce")
        return report

    # away from characteristic 2 the Lie UCE joins the picture
    as_leib = CentralExtension(
        "leibniz", g, u_lie.extension_algebra, u_lie.projection_b, u_lie.section_s
    )
    try:
        theta = universal_map(u_leib, as_leib)
    except (NotCentral, WellDefinednessFailed) as e:
        report.char_branch_ok = False
        return fail(f"lie-uce-not-a-leibniz-extension: {e}")

    report.maps["theta"] = theta
    if not kernel(theta).equals(i):
        report.char_branch_ok = False
        return fail("kernel-of-map-to-lie-uce-differs-from-symmetric-span")
    if theta.rank() != u_lie.carrier_dim:
        report.char_branch_ok = False
        return fail("canonical-map-to-lie-uce-not-surjective")

    derived_top = derived_lts(u_lie.extension_algebra)
    lie_as_lts = CentralExtension(
        "lts", base_lts, derived_top, u_lie.projection_b, u_lie.section_s
    )
    try:
        chi = universal_map(u_lts, lie_as_lts)
    except (NotCentral, WellDefinednessFailed) as e:
        report.char_branch_ok = False
        return fail(f"derived-lie-uce-not-an-lts-extension: {e}")

    report.maps["chi"] = chi
    if not kernel(chi).equals(report.i_prime):
        report.char_branch_ok = False
        return fail("kernel-of-map-to-lie-uce-differs-from-image-span")
    if theta != chi @ phi:
        report.char_branch_ok = False
        return fail("comparison-triangle-does-not-commute")

    report.char_branch_ok = (
        u_lts.carrier_dim == u_lie.carrier_dim
        and report.i_prime.dim == 0
        and chi.rank() == u_lie.carrier_dim
    )
    if not report.char_branch_ok:
        return fail("cube-not-isomorphic-to-lie-uce")
    return report
