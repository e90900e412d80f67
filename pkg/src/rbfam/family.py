"""Splittings of Hom-associative products: NS, NS-family, tridendriform
family and semigroup-pair-indexed associative structures, with the
constructions that move between them and the operator world.

Hom-dendriform (family) algebras are not a separate type here: they are NS
(family) instances whose last product vanishes; checkers note that case.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .errors import InputError
from .homalg import HomAlgebra
from .linalg import Matrix, Tensor, multilinear_apply, rank, unit_vector, vadd, vsub
from .operators import check_twisted_rbf, check_weighted_rbf
from .reports import (
    DEFAULT_MAX_VIOLATIONS,
    CheckReport,
    ensure_valid,
    require_pass,
    run_law,
)
from .semigroups import FiniteSemigroup


def _check_product_tensor(t, dim, what):
    if t.shape != (dim, dim, dim):
        raise InputError(f"{what} must have shape {(dim, dim, dim)}, got {t.shape}")


@dataclass(frozen=True)
class HomNSAlgebra:
    """(G, <, >, v, p): three bilinear products whose sum is Hom-associative."""

    dim: int
    prec: Tensor
    succ: Tensor
    vee: Tensor
    p: Matrix

    def __post_init__(self):
        for t, w in ((self.prec, "prec"), (self.succ, "succ"), (self.vee, "vee")):
            _check_product_tensor(t, self.dim, w)
        if (self.p.rows, self.p.cols) != (self.dim, self.dim):
            raise InputError("p must be square of the algebra dimension")


@dataclass(frozen=True)
class HomNSFamilyAlgebra:
    """Products <_a, >_a indexed by omega and v_{a,b} indexed by pairs."""

    dim: int
    omega: FiniteSemigroup
    prec: tuple
    succ: tuple
    vee: tuple
    p: Matrix

    def __post_init__(self):
        m = self.omega.size
        if len(self.prec) != m or len(self.succ) != m:
            raise InputError("need one prec/succ tensor per semigroup element")
        if len(self.vee) != m or any(len(row) != m for row in self.vee):
            raise InputError("need one vee tensor per semigroup pair")
        for t in (*self.prec, *self.succ, *(t for row in self.vee for t in row)):
            _check_product_tensor(t, self.dim, "family product")
        if (self.p.rows, self.p.cols) != (self.dim, self.dim):
            raise InputError("p must be square of the algebra dimension")


@dataclass(frozen=True)
class HomTridendFamily:
    """Products <_a, >_a indexed by omega plus one unindexed product (.)."""

    dim: int
    omega: FiniteSemigroup
    prec: tuple
    succ: tuple
    dot: Tensor
    p: Matrix

    def __post_init__(self):
        m = self.omega.size
        if len(self.prec) != m or len(self.succ) != m:
            raise InputError("need one prec/succ tensor per semigroup element")
        for t in (*self.prec, *self.succ, self.dot):
            _check_product_tensor(t, self.dim, "family product")
        if (self.p.rows, self.p.cols) != (self.dim, self.dim):
            raise InputError("p must be square of the algebra dimension")


@dataclass(frozen=True)
class OmegaAssocAlgebra:
    """Products *_{a,b} indexed by semigroup pairs with twisted associativity."""

    dim: int
    omega: FiniteSemigroup
    prod: tuple
    p: Matrix

    def __post_init__(self):
        m = self.omega.size
        if len(self.prod) != m or any(len(row) != m for row in self.prod):
            raise InputError("need one product tensor per semigroup pair")
        for row in self.prod:
            for t in row:
                _check_product_tensor(t, self.dim, "pair product")
        if (self.p.rows, self.p.cols) != (self.dim, self.dim):
            raise InputError("p must be square of the algebra dimension")

    def product(self, alpha, beta, x, y):
        return multilinear_apply(self.prod[alpha][beta], [x, y])


@dataclass(frozen=True)
class OmegaBimodule:
    """Pair-indexed actions of an OmegaAssocAlgebra on a Hom-vector space."""

    parent: OmegaAssocAlgebra
    dim: int
    left: tuple
    right: tuple
    q: Matrix

    def __post_init__(self):
        m = self.parent.omega.size
        g, d = self.parent.dim, self.dim
        for table, shape, what in (
            (self.left, (d, g, d), "left action"),
            (self.right, (d, d, g), "right action"),
        ):
            if len(table) != m or any(len(row) != m for row in table):
                raise InputError(f"need one {what} tensor per semigroup pair")
            for row in table:
                for t in row:
                    if t.shape != shape:
                        raise InputError(f"{what} must have shape {shape}, got {t.shape}")
        if (self.q.rows, self.q.cols) != (d, d):
            raise InputError("q must be square of the module dimension")

    def act_l(self, alpha, beta, x, u):
        return multilinear_apply(self.left[alpha][beta], [x, u])

    def act_r(self, alpha, beta, u, x):
        return multilinear_apply(self.right[alpha][beta], [u, x])


# ---------------------------------------------------------------------------
# checkers


def _p_multiplicativity_cases(p, tensors, basis, label):
    for where_extra, t in tensors:
        for i, j in iproduct(range(len(basis)), repeat=2):
            lhs = p.apply(multilinear_apply(t, [basis[i], basis[j]]))
            rhs = multilinear_apply(t, [p.column(i), p.column(j)])
            where = dict(where_extra)
            where.update({"x": i, "y": j})
            yield where, vsub(lhs, rhs)


def check_hom_ns(cand, max_violations=DEFAULT_MAX_VIOLATIONS):
    report = CheckReport(subject=f"Hom-NS algebra (dim {cand.dim})")
    n = cand.dim
    basis = [unit_vector(n, i) for i in range(n)]
    p = cand.p

    def prec(x, y):
        return multilinear_apply(cand.prec, [x, y])

    def succ(x, y):
        return multilinear_apply(cand.succ, [x, y])

    def vee(x, y):
        return multilinear_apply(cand.vee, [x, y])

    def total(x, y):
        return vadd(vadd(prec(x, y), succ(x, y)), vee(x, y))

    run_law(
        report,
        "p(x ? y) = p(x) ? p(y) for ? in {<, >, v}",
        _p_multiplicativity_cases(
            p,
            [({"op": "<"}, cand.prec), ({"op": ">"}, cand.succ), ({"op": "v"}, cand.vee)],
            basis,
            "op",
        ),
        max_violations,
    )

    def law_prec():
        for i, j, k in iproduct(range(n), repeat=3):
            x, y, z = basis[i], basis[j], basis[k]
            lhs = prec(prec(x, y), p.column(k))
            rhs = prec(p.column(i), total(y, z))
            yield {"x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_mixed():
        for i, j, k in iproduct(range(n), repeat=3):
            x, y, z = basis[i], basis[j], basis[k]
            lhs = prec(succ(x, y), p.column(k))
            rhs = succ(p.column(i), prec(y, z))
            yield {"x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_succ():
        for i, j, k in iproduct(range(n), repeat=3):
            x, y, z = basis[i], basis[j], basis[k]
            lhs = succ(total(x, y), p.column(k))
            rhs = succ(p.column(i), succ(y, z))
            yield {"x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_vee():
        for i, j, k in iproduct(range(n), repeat=3):
            x, y, z = basis[i], basis[j], basis[k]
            lhs = vadd(vee(total(x, y), p.column(k)), prec(vee(x, y), p.column(k)))
            rhs = vadd(succ(p.column(i), vee(y, z)), vee(p.column(i), total(y, z)))
            yield {"x": i, "y": j, "z": k}, vsub(lhs, rhs)

    run_law(report, "(x < y) < p(z) = p(x) < (y*z)", law_prec(), max_violations)
    run_law(report, "(x > y) < p(z) = p(x) > (y < z)", law_mixed(), max_violations)
    run_law(report, "(x*y) > p(z) = p(x) > (y > z)", law_succ(), max_violations)
    run_law(
        report,
        "(x*y) v p(z) + (x v y) < p(z) = p(x) > (y v z) + p(x) v (y*z)",
        law_vee(),
        max_violations,
    )
    _annotate_vee(report, [cand.vee], cand.p, cand.dim)
    return report


def check_hom_ns_family(cand, max_violations=DEFAULT_MAX_VIOLATIONS):
    report = CheckReport(subject=f"Hom-NS family algebra (dim {cand.dim})")
    n, omega = cand.dim, cand.omega
    basis = [unit_vector(n, i) for i in range(n)]
    p = cand.p

    def prec(a, x, y):
        return multilinear_apply(cand.prec[a], [x, y])

    def succ(a, x, y):
        return multilinear_apply(cand.succ[a], [x, y])

    def vee(a, b, x, y):
        return multilinear_apply(cand.vee[a][b], [x, y])

    def total(a, b, x, y):
        # x <_b y + x >_a y + x v_{a,b} y
        return vadd(vadd(prec(b, x, y), succ(a, x, y)), vee(a, b, x, y))

    def mult_cases():
        for a in omega.elements():
            yield from _p_multiplicativity_cases(p, [({"op": "<", "alpha": a}, cand.prec[a])], basis, "op")
            yield from _p_multiplicativity_cases(p, [({"op": ">", "alpha": a}, cand.succ[a])], basis, "op")
        for a, b in iproduct(omega.elements(), repeat=2):
            yield from _p_multiplicativity_cases(p, [({"op": "v", "alpha": a, "beta": b}, cand.vee[a][b])], basis, "op")

    run_law(report, "p(x ?_idx y) = p(x) ?_idx p(y)", mult_cases(), max_violations)

    def law_prec():
        for a, b in iproduct(omega.elements(), repeat=2):
            ab = omega.mul(a, b)
            for i, j, k in iproduct(range(n), repeat=3):
                y, z = basis[j], basis[k]
                lhs = prec(ab, p.column(i), total(a, b, y, z))
                rhs = prec(b, prec(a, basis[i], y), p.column(k))
                yield {"alpha": a, "beta": b, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_mixed():
        for a, b in iproduct(omega.elements(), repeat=2):
            for i, j, k in iproduct(range(n), repeat=3):
                y, z = basis[j], basis[k]
                lhs = prec(b, succ(a, basis[i], y), p.column(k))
                rhs = succ(a, p.column(i), prec(b, y, z))
                yield {"alpha": a, "beta": b, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_succ():
        for a, b in iproduct(omega.elements(), repeat=2):
            ab = omega.mul(a, b)
            for i, j, k in iproduct(range(n), repeat=3):
                y, z = basis[j], basis[k]
                lhs = succ(ab, total(a, b, basis[i], y), p.column(k))
                rhs = succ(a, p.column(i), succ(b, y, z))
                yield {"alpha": a, "beta": b, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_vee():
        for a, b, g in iproduct(omega.elements(), repeat=3):
            ab = omega.mul(a, b)
            bg = omega.mul(b, g)
            for i, j, k in iproduct(range(n), repeat=3):
                y, z = basis[j], basis[k]
                lhs = vadd(
                    succ(a, p.column(i), vee(b, g, y, z)),
                    multilinear_apply(cand.vee[a][bg], [p.column(i), total(b, g, y, z)]),
                )
                rhs = vadd(
                    prec(g, vee(a, b, basis[i], y), p.column(k)),
                    multilinear_apply(cand.vee[ab][g], [total(a, b, basis[i], y), p.column(k)]),
                )
                yield {"alpha": a, "beta": b, "gamma": g, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    run_law(
        report,
        "p(x) <_ab (y <_b z + y >_a z + y v_ab z) = (x <_a y) <_b p(z)",
        law_prec(),
        max_violations,
    )
    run_law(report, "(x >_a y) <_b p(z) = p(x) >_a (y <_b z)", law_mixed(), max_violations)
    run_law(
        report,
        "(x <_b y + x >_a y + x v_ab y) >_ab p(z) = p(x) >_a (y >_b z)",
        law_succ(),
        max_violations,
    )
    run_law(
        report,
        "p(x) >_a (y v_bg z) + p(x) v_a,bg (y*z) = (x v_ab y) <_g p(z) + (x*y) v_ab,g p(z)",
        law_vee(),
        max_violations,
    )
    _annotate_vee(report, [t for row in cand.vee for t in row], cand.p, cand.dim)
    return report


def _annotate_vee(report, vee_tensors, p, dim):
    if all(t.is_zero() for t in vee_tensors):
        report.notes.append("the v product vanishes identically (Hom-dendriform instance)")
    if not p.has_poly_entries() and rank(p) == dim:
        report.notes.append("regular: the structure map is bijective")


def check_tridend_family(cand, max_violations=DEFAULT_MAX_VIOLATIONS):
    report = CheckReport(subject=f"Hom-tridendriform family algebra (dim {cand.dim})")
    n, omega = cand.dim, cand.omega
    basis = [unit_vector(n, i) for i in range(n)]
    p = cand.p

    def prec(a, x, y):
        return multilinear_apply(cand.prec[a], [x, y])

    def succ(a, x, y):
        return multilinear_apply(cand.succ[a], [x, y])

    def dot(x, y):
        return multilinear_apply(cand.dot, [x, y])

    def total(a, b, x, y):
        return vadd(vadd(prec(b, x, y), succ(a, x, y)), dot(x, y))

    def mult_cases():
        for a in omega.elements():
            yield from _p_multiplicativity_cases(p, [({"op": "<", "alpha": a}, cand.prec[a])], basis, "op")
            yield from _p_multiplicativity_cases(p, [({"op": ">", "alpha": a}, cand.succ[a])], basis, "op")
        yield from _p_multiplicativity_cases(p, [({"op": "."}, cand.dot)], basis, "op")

    run_law(report, "p(x ? y) = p(x) ? p(y) for every product", mult_cases(), max_violations)

    def pair_law(build):
        for a, b in iproduct(omega.elements(), repeat=2):
            for i, j, k in iproduct(range(n), repeat=3):
                yield from build(a, b, i, j, k)

    def single_law(build):
        for a in omega.elements():
            for i, j, k in iproduct(range(n), repeat=3):
                yield from build(a, i, j, k)

    def law_prec(a, b, i, j, k):
        y, z = basis[j], basis[k]
        ab = omega.mul(a, b)
        lhs = prec(ab, p.column(i), vadd(vadd(prec(b, y, z), succ(a, y, z)), dot(y, z)))
        rhs = prec(b, prec(a, basis[i], y), p.column(k))
        yield {"alpha": a, "beta": b, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_mixed(a, b, i, j, k):
        y, z = basis[j], basis[k]
        lhs = prec(b, succ(a, basis[i], y), p.column(k))
        rhs = succ(a, p.column(i), prec(b, y, z))
        yield {"alpha": a, "beta": b, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_succ(a, b, i, j, k):
        y, z = basis[j], basis[k]
        ab = omega.mul(a, b)
        lhs = succ(ab, total(a, b, basis[i], y), p.column(k))
        rhs = succ(a, p.column(i), succ(b, y, z))
        yield {"alpha": a, "beta": b, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_succ_dot(a, i, j, k):
        y, z = basis[j], basis[k]
        lhs = dot(succ(a, basis[i], y), p.column(k))
        rhs = succ(a, p.column(i), dot(y, z))
        yield {"alpha": a, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_prec_dot(a, i, j, k):
        y, z = basis[j], basis[k]
        lhs = dot(prec(a, basis[i], y), p.column(k))
        rhs = dot(p.column(i), succ(a, y, z))
        yield {"alpha": a, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_dot_prec(a, i, j, k):
        y, z = basis[j], basis[k]
        lhs = prec(a, dot(basis[i], y), p.column(k))
        rhs = dot(p.column(i), prec(a, y, z))
        yield {"alpha": a, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    def law_dot_dot():
        for i, j, k in iproduct(range(n), repeat=3):
            y, z = basis[j], basis[k]
            lhs = dot(dot(basis[i], y), p.column(k))
            rhs = dot(p.column(i), dot(y, z))
            yield {"x": i, "y": j, "z": k}, vsub(lhs, rhs)

    run_law(report, "p(x) <_ab (y <_b z + y >_a z + y.z) = (x <_a y) <_b p(z)", pair_law(law_prec), max_violations)
    run_law(report, "(x >_a y) <_b p(z) = p(x) >_a (y <_b z)", pair_law(law_mixed), max_violations)
    run_law(report, "(x <_b y + x >_a y + x.y) >_ab p(z) = p(x) >_a (y >_b z)", pair_law(law_succ), max_violations)
    run_law(report, "(x >_a y).p(z) = p(x) >_a (y.z)", single_law(law_succ_dot), max_violations)
    run_law(report, "(x <_a y).p(z) = p(x).(y >_a z)", single_law(law_prec_dot), max_violations)
    run_law(report, "(x.y) <_a p(z) = p(x).(y <_a z)", single_law(law_dot_prec), max_violations)
    run_law(report, "(x.y).p(z) = p(x).(y.z)", law_dot_dot(), max_violations)
    if cand.dot.is_zero():
        report.notes.append("the unindexed product vanishes (Hom-dendriform family instance)")
    return report


def check_omega_assoc(cand, max_violations=DEFAULT_MAX_VIOLATIONS):
    report = CheckReport(subject=f"Hom-associative algebra relative to a semigroup (dim {cand.dim})")
    n, omega = cand.dim, cand.omega
    basis = [unit_vector(n, i) for i in range(n)]
    p = cand.p

    def multiplicativity():
        for a, b in iproduct(omega.elements(), repeat=2):
            for i, j in iproduct(range(n), repeat=2):
                lhs = p.apply(cand.product(a, b, basis[i], basis[j]))
                rhs = cand.product(a, b, p.column(i), p.column(j))
                yield {"alpha": a, "beta": b, "x": i, "y": j}, vsub(lhs, rhs)

    def twisted_assoc():
        for a, b, g in iproduct(omega.elements(), repeat=3):
            bg = omega.mul(b, g)
            ab = omega.mul(a, b)
            for i, j, k in iproduct(range(n), repeat=3):
                lhs = cand.product(a, bg, p.column(i), cand.product(b, g, basis[j], basis[k]))
                rhs = cand.product(ab, g, cand.product(a, b, basis[i], basis[j]), p.column(k))
                yield {"alpha": a, "beta": b, "gamma": g, "x": i, "y": j, "z": k}, vsub(lhs, rhs)

    run_law(report, "p(x *_ab y) = p(x) *_ab p(y)", multiplicativity(), max_violations)
    run_law(
        report,
        "p(x) *_a,bg (y *_b,g z) = (x *_ab y) *_ab,g p(z)",
        twisted_assoc(),
        max_violations,
    )
    return report


def check_omega_bimodule(cand, max_violations=DEFAULT_MAX_VIOLATIONS):
    report = CheckReport(subject=f"bimodule over a semigroup-pair-indexed algebra (dim {cand.dim})")
    G = cand.parent
    omega = G.omega
    g, d = G.dim, cand.dim
    gbasis = [unit_vector(g, i) for i in range(g)]
    vbasis = [unit_vector(d, a) for a in range(d)]
    p, q = G.p, cand.q

    def q_left():
        for a, b in iproduct(omega.elements(), repeat=2):
            for i, u in iproduct(range(g), range(d)):
                lhs = q.apply(cand.act_l(a, b, gbasis[i], vbasis[u]))
                rhs = cand.act_l(a, b, p.column(i), q.column(u))
                yield {"alpha": a, "beta": b, "x": i, "u": u}, vsub(lhs, rhs)

    def q_right():
        for a, b in iproduct(omega.elements(), repeat=2):
            for u, i in iproduct(range(d), range(g)):
                lhs = q.apply(cand.act_r(a, b, vbasis[u], gbasis[i]))
                rhs = cand.act_r(a, b, q.column(u), p.column(i))
                yield {"alpha": a, "beta": b, "u": u, "x": i}, vsub(lhs, rhs)

    def right_right():
        for a, b, c in iproduct(omega.elements(), repeat=3):
            bg = omega.mul(b, c)
            ab = omega.mul(a, b)
            for u, i, j in iproduct(range(d), range(g), range(g)):
                lhs = cand.act_r(a, bg, q.column(u), G.product(b, c, gbasis[i], gbasis[j]))
                rhs = cand.act_r(ab, c, cand.act_r(a, b, vbasis[u], gbasis[i]), p.column(j))
                yield {"alpha": a, "beta": b, "gamma": c, "u": u, "x": i, "y": j}, vsub(lhs, rhs)

    def left_right():
        for a, b, c in iproduct(omega.elements(), repeat=3):
            bg = omega.mul(b, c)
            ab = omega.mul(a, b)
            for i, u, j in iproduct(range(g), range(d), range(g)):
                lhs = cand.act_l(a, bg, p.column(i), cand.act_r(b, c, vbasis[u], gbasis[j]))
                rhs = cand.act_r(ab, c, cand.act_l(a, b, gbasis[i], vbasis[u]), p.column(j))
                yield {"alpha": a, "beta": b, "gamma": c, "x": i, "u": u, "y": j}, vsub(lhs, rhs)

    def left_left():
        for a, b, c in iproduct(omega.elements(), repeat=3):
            bg = omega.mul(b, c)
            ab = omega.mul(a, b)
            for i, j, u in iproduct(range(g), range(g), range(d)):
                lhs = cand.act_l(a, bg, p.column(i), cand.act_l(b, c, gbasis[j], vbasis[u]))
                rhs = cand.act_l(ab, c, G.product(a, b, gbasis[i], gbasis[j]), q.column(u))
                yield {"alpha": a, "beta": b, "gamma": c, "x": i, "y": j, "u": u}, vsub(lhs, rhs)

    run_law(report, "q(x .l_ab u) = p(x) .l_ab q(u)", q_left(), max_violations)
    run_law(report, "q(u .r_ab x) = q(u) .r_ab p(x)", q_right(), max_violations)
    run_law(report, "q(u) .r_a,bg (x *_b,g y) = (u .r_ab x) .r_ab,g p(y)", right_right(), max_violations)
    run_law(report, "p(x) .l_a,bg (u .r_b,g y) = (x .l_ab u) .r_ab,g p(y)", left_right(), max_violations)
    run_law(report, "p(x) .l_a,bg (y .l_b,g u) = (x *_ab y) .l_ab,g q(u)", left_left(), max_violations)
    return report


def check_ns_family_morphism(f, source, target, max_violations=DEFAULT_MAX_VIOLATIONS):
    """Linear map commuting with all indexed products and the structure maps."""
    report = CheckReport(subject="Hom-NS family algebra morphism")
    omega = source.omega
    n = source.dim
    basis = [unit_vector(n, i) for i in range(n)]

    def product_cases():
        for a in omega.elements():
            for i, j in iproduct(range(n), repeat=2):
                for op, s_t, t_t in (
                    ("<", source.prec[a], target.prec[a]),
                    (">", source.succ[a], target.succ[a]),
                ):
                    lhs = f.apply(multilinear_apply(s_t, [basis[i], basis[j]]))
                    rhs = multilinear_apply(t_t, [f.column(i), f.column(j)])
                    yield {"op": op, "alpha": a, "x": i, "y": j}, vsub(lhs, rhs)
        for a, b in iproduct(omega.elements(), repeat=2):
            for i, j in iproduct(range(n), repeat=2):
                lhs = f.apply(multilinear_apply(source.vee[a][b], [basis[i], basis[j]]))
                rhs = multilinear_apply(target.vee[a][b], [f.column(i), f.column(j)])
                yield {"op": "v", "alpha": a, "beta": b, "x": i, "y": j}, vsub(lhs, rhs)

    def structure_map():
        lhs = f.mul(source.p)
        rhs = target.p.mul(f)
        for i in range(n):
            yield {"x": i}, vsub(lhs.column(i), rhs.column(i))

    run_law(report, "f(x ? y) = f(x) ? f(y) for every product", product_cases(), max_violations)
    run_law(report, "f o p = p' o f", structure_map(), max_violations)
    return report


def check_ns_morphism(f, source, target, max_violations=DEFAULT_MAX_VIOLATIONS):
    """NS-algebra morphism check (unindexed products)."""
    report = CheckReport(subject="Hom-NS algebra morphism")
    n = source.dim
    basis = [unit_vector(n, i) for i in range(n)]

    def product_cases():
        for op, s_t, t_t in (
            ("<", source.prec, target.prec),
            (">", source.succ, target.succ),
            ("v", source.vee, target.vee),
        ):
            for i, j in iproduct(range(n), repeat=2):
                lhs = f.apply(multilinear_apply(s_t, [basis[i], basis[j]]))
                rhs = multilinear_apply(t_t, [f.column(i), f.column(j)])
                yield {"op": op, "x": i, "y": j}, vsub(lhs, rhs)

    def structure_map():
        lhs = f.mul(source.p)
        rhs = target.p.mul(f)
        for i in range(n):
            yield {"x": i}, vsub(lhs.column(i), rhs.column(i))

    run_law(report, "f(x ? y) = f(x) ? f(y) for every product", product_cases(), max_violations)
    run_law(report, "f o p = p' o f", structure_map(), max_violations)
    return report


# ---------------------------------------------------------------------------
# constructions


def ns_family_from_operator(operator, validate=True):
    """Splitting of a twisted family on its module: u <_a v = u .r R_a v,
    u >_a v = R_a u .l v, u v_{a,b} v = phi(R_a u, R_b v)."""
    if validate:
        ensure_valid(operator, check_twisted_rbf, "twisted Rota-Baxter family")
    module, phi, omega = operator.bimodule, operator.cocycle, operator.omega
    d = module.dim
    vbasis = module.basis()

    prec = tuple(
        _bilinear_tensor(d, lambda a, b, al=al: module.act_r(vbasis[a], operator.maps[al].column(b)))
        for al in omega.elements()
    )
    succ = tuple(
        _bilinear_tensor(d, lambda a, b, al=al: module.act_l(operator.maps[al].column(a), vbasis[b]))
        for al in omega.elements()
    )
    vee = tuple(
        tuple(
            _bilinear_tensor(
                d,
                lambda a, b, al=al, be=be: phi.apply(
                    operator.maps[al].column(a), operator.maps[be].column(b)
                ),
            )
            for be in omega.elements()
        )
        for al in omega.elements()
    )
    return HomNSFamilyAlgebra(dim=d, omega=omega, prec=prec, succ=succ, vee=vee, p=module.q)


def _bilinear_tensor(dim, col):
    cols = {}
    for a, b in iproduct(range(dim), repeat=2):
        cols[(a, b)] = col(a, b)
    return Tensor.from_function((dim, dim, dim), lambda k, a, b: cols[(a, b)][k])


def ns_family_pack(family, validate=True):
    """Pack an NS-family algebra onto G(x)K[omega] into a single NS algebra."""
    if validate:
        ensure_valid(family, check_hom_ns_family, "Hom-NS family algebra")
    omega, n = family.omega, family.dim
    m = omega.size
    nm = n * m

    def packed(product_for):
        def entry(kk, ii, jj):
            gamma, k = divmod(kk, n)
            alpha, i = divmod(ii, n)
            beta, j = divmod(jj, n)
            if gamma != omega.mul(alpha, beta):
                return 0
            return product_for(alpha, beta).at(k, i, j)

        return Tensor.from_function((nm, nm, nm), entry)

    from .homalg import _block_repeat

    return HomNSAlgebra(
        dim=nm,
        prec=packed(lambda a, b: family.prec[b]),
        succ=packed(lambda a, b: family.succ[a]),
        vee=packed(lambda a, b: family.vee[a][b]),
        p=_block_repeat(family.p, m),
    )


def pack_ns_family_morphism(f, omega):
    """f(x)id on G(x)K[omega] for an NS-family morphism f."""
    from .homalg import _block_repeat

    return _block_repeat(f, omega.size)


def tridend_from_weighted_rbf(family, validate=True):
    """x <_a y = x . T_a y, x >_a y = T_a x . y, x.y scaled by the weight."""
    if validate:
        ensure_valid(family, check_weighted_rbf, "weighted Rota-Baxter family")
    A, omega = family.algebra, family.omega
    n = A.dim
    basis = A.basis()
    prec = tuple(
        _bilinear_tensor(n, lambda i, j, al=al: A.product(basis[i], family.maps[al].column(j)))
        for al in omega.elements()
    )
    succ = tuple(
        _bilinear_tensor(n, lambda i, j, al=al: A.product(family.maps[al].column(i), basis[j]))
        for al in omega.elements()
    )
    return HomTridendFamily(
        dim=n, omega=omega, prec=prec, succ=succ, dot=A.mu.scale(family.weight), p=A.p
    )


def ns_family_from_tridend(family, validate=True):
    """An NS-family with the constant pair-indexed product v_{a,b} = (.)."""
    if validate:
        ensure_valid(family, check_tridend_family, "Hom-tridendriform family algebra")
    m = family.omega.size
    vee = tuple(tuple(family.dot for _ in range(m)) for _ in range(m))
    return HomNSFamilyAlgebra(
        dim=family.dim,
        omega=family.omega,
        prec=family.prec,
        succ=family.succ,
        vee=vee,
        p=family.p,
    )


def omega_assoc_from_ns_family(family, validate=True):
    """Total product x *_{a,b} y = x <_b y + x >_a y + x v_{a,b} y."""
    if validate:
        ensure_valid(family, check_hom_ns_family, "Hom-NS family algebra")
    omega = family.omega
    prod = tuple(
        tuple(
            family.prec[b].add(family.succ[a]).add(family.vee[a][b])
            for b in omega.elements()
        )
        for a in omega.elements()
    )
    return OmegaAssocAlgebra(dim=family.dim, omega=omega, prod=prod, p=family.p)


def operator_bimodule(operator, validate=True):
    """L as a pair-indexed bimodule over the total-product algebra on V.

    Left action u |>- x = R_a u . x - R_ab(u .r x) - R_ab phi(R_a u, x);
    right action x -<| u = x . R_b u - R_ab(x .l u) - R_ab phi(x, R_b u).
    """
    if validate:
        ensure_valid(operator, check_twisted_rbf, "twisted Rota-Baxter family")
    A, module, phi, omega = (
        operator.algebra,
        operator.bimodule,
        operator.cocycle,
        operator.omega,
    )
    n, d = A.dim, module.dim
    vbasis = module.basis()
    ebasis = A.basis()
    parent = omega_assoc_from_ns_family(ns_family_from_operator(operator, validate=False), validate=False)

    def left_tensor(a, b):
        r_ab = operator.maps[omega.mul(a, b)]

        def col(u, i):
            ru = operator.maps[a].column(u)
            x = ebasis[i]
            return vsub(
                vsub(A.product(ru, x), r_ab.apply(module.act_r(vbasis[u], x))),
                r_ab.apply(phi.apply(ru, x)),
            )

        cols = {(u, i): col(u, i) for u, i in iproduct(range(d), range(n))}
        return Tensor.from_function((n, d, n), lambda k, u, i: cols[(u, i)][k])

    def right_tensor(a, b):
        r_ab = operator.maps[omega.mul(a, b)]

        def col(i, u):
            rv = operator.maps[b].column(u)
            x = ebasis[i]
            return vsub(
                vsub(A.product(x, rv), r_ab.apply(module.act_l(x, vbasis[u]))),
                r_ab.apply(phi.apply(x, rv)),
            )

        cols = {(i, u): col(i, u) for i, u in iproduct(range(n), range(d))}
        return Tensor.from_function((n, n, d), lambda k, i, u: cols[(i, u)][k])

    left = tuple(tuple(left_tensor(a, b) for b in omega.elements()) for a in omega.elements())
    right = tuple(tuple(right_tensor(a, b) for b in omega.elements()) for a in omega.elements())
    return OmegaBimodule(parent=parent, dim=n, left=left, right=right, q=A.p)


def yau_twist_ns_family(family, endo, validate=True):
    """Compose all products of an NS-family algebra with an endomorphism.

    ``endo`` must commute with every product and with the structure map;
    the twist x ?'_idx y = endo(x) ?_idx endo(y) carries structure map
    endo o p (which is p o endo).
    """
    if validate:
        ensure_valid(family, check_hom_ns_family, "Hom-NS family algebra")
    report = check_ns_family_morphism(endo, family, family)
    require_pass(report, "structure-preserving endomorphism")
    omega, n = family.omega, family.dim

    def twist(tensor):
        cols = {}
        for i, j in iproduct(range(n), repeat=2):
            cols[(i, j)] = multilinear_apply(tensor, [endo.column(i), endo.column(j)])
        return Tensor.from_function((n, n, n), lambda k, i, j: cols[(i, j)][k])

    return HomNSFamilyAlgebra(
        dim=n,
        omega=omega,
        prec=tuple(twist(t) for t in family.prec),
        succ=tuple(twist(t) for t in family.succ),
        vee=tuple(tuple(twist(t) for t in row) for row in family.vee),
        p=endo.mul(family.p),
    )


def constant_ns_family(ns, omega):
    """View an NS algebra as a constant family over ``omega``."""
    m = omega.size
    return HomNSFamilyAlgebra(
        dim=ns.dim,
        omega=omega,
        prec=(ns.prec,) * m,
        succ=(ns.succ,) * m,
        vee=tuple((ns.vee,) * m for _ in range(m)),
        p=ns.p,
    )


def as_ns_algebra(family):
    """Collapse a family over the trivial semigroup to a plain NS algebra."""
    if family.omega.size != 1:
        raise InputError("only families over the trivial semigroup collapse")
    return HomNSAlgebra(
        dim=family.dim,
        prec=family.prec[0],
        succ=family.succ[0],
        vee=family.vee[0][0],
        p=family.p,
    )


def total_product_algebra(ns, validate=True):
    """The Hom-associative algebra with product < + > + v and the same map."""
    if validate:
        ensure_valid(ns, check_hom_ns, "Hom-NS algebra")
    return HomAlgebra(dim=ns.dim, mu=ns.prec.add(ns.succ).add(ns.vee), p=ns.p)
