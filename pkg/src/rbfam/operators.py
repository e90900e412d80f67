"""Semigroup-indexed operator families on Hom-associative algebras.

Covers twisted Rota-Baxter families {R_a : V -> L}, Nijenhuis families
{N_a : L -> L}, weighted Rota-Baxter families {T_a : L -> L}, morphisms
between twisted families, the graph characterization inside the twisted
semidirect product, and the packings onto the semigroup algebra.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import InputError
from .homalg import (
    HomAlgebra,
    HomBimodule,
    TwoCocycle,
    check_bimodule,
    check_hom_algebra,
    check_two_cocycle,
    semidirect_product,
    tensor_bimodule,
)
from .linalg import Matrix, Tensor, solve, unit_vector, vadd, vsub, zero_vector
from .reports import DEFAULT_MAX_VIOLATIONS, CheckReport, ensure_valid, run_law
from .scalars import ensure_rational
from .semigroups import FiniteSemigroup, builtin


@dataclass(frozen=True)
class TwistedRBFamily:
    """Family {R_a : V -> L}, one n x d matrix per semigroup element."""

    cocycle: TwoCocycle
    omega: FiniteSemigroup
    maps: tuple

    def __post_init__(self):
        if len(self.maps) != self.omega.size:
            raise InputError("one matrix per semigroup element is required")
        n, d = self.algebra.dim, self.bimodule.dim
        for a, mat in enumerate(self.maps):
            if (mat.rows, mat.cols) != (n, d):
                raise InputError(f"map {a} must be {n}x{d}, got {mat.rows}x{mat.cols}")

    @property
    def bimodule(self):
        return self.cocycle.host

    @property
    def algebra(self):
        return self.cocycle.host.parent


@dataclass(frozen=True)
class NijenhuisFamily:
    algebra: HomAlgebra
    omega: FiniteSemigroup
    maps: tuple

    def __post_init__(self):
        if len(self.maps) != self.omega.size:
            raise InputError("one matrix per semigroup element is required")
        n = self.algebra.dim
        for a, mat in enumerate(self.maps):
            if (mat.rows, mat.cols) != (n, n):
                raise InputError(f"map {a} must be {n}x{n}")


@dataclass(frozen=True)
class WeightedRBFamily:
    algebra: HomAlgebra
    omega: FiniteSemigroup
    weight: Fraction
    maps: tuple

    def __post_init__(self):
        object.__setattr__(self, "weight", ensure_rational(self.weight))
        if len(self.maps) != self.omega.size:
            raise InputError("one matrix per semigroup element is required")
        n = self.algebra.dim
        for a, mat in enumerate(self.maps):
            if (mat.rows, mat.cols) != (n, n):
                raise InputError(f"map {a} must be {n}x{n}")


@dataclass(frozen=True)
class OperatorMorphism:
    """Pair (psi : L -> L', phi : V -> V') between twisted families."""

    source: TwistedRBFamily
    target: TwistedRBFamily
    psi: Matrix
    phi: Matrix

    def __post_init__(self):
        if self.source.omega.table != self.target.omega.table:
            raise InputError("morphisms need families indexed by the same semigroup")
        if (self.psi.rows, self.psi.cols) != (self.target.algebra.dim, self.source.algebra.dim):
            raise InputError("psi shape mismatch")
        if (self.phi.rows, self.phi.cols) != (self.target.bimodule.dim, self.source.bimodule.dim):
            raise InputError("phi shape mismatch")


def _validate_hosts(operator):
    ensure_valid(operator.algebra, check_hom_algebra, "host hom-algebra")
    ensure_valid(operator.bimodule, check_bimodule, "host hom-bimodule")
    ensure_valid(operator.cocycle, check_two_cocycle, "host two-cocycle")


def twisted_inner_sum(operator, alpha, beta, u, v):
    """R_a u .l v + u .r R_b v + phi(R_a u, R_b v)."""
    module, phi = operator.bimodule, operator.cocycle
    ru = operator.maps[alpha].apply(u)
    rv = operator.maps[beta].apply(v)
    return vadd(vadd(module.act_l(ru, v), module.act_r(u, rv)), phi.apply(ru, rv))


def check_twisted_rbf(operator, max_violations=DEFAULT_MAX_VIOLATIONS):
    _validate_hosts(operator)
    A, module = operator.algebra, operator.bimodule
    omega = operator.omega
    d = module.dim
    report = CheckReport(subject=f"twisted Rota-Baxter family over omega of size {omega.size}")

    def equivariance():
        for alpha in omega.elements():
            lhs = operator.maps[alpha].mul(module.q)
            rhs = A.p.mul(operator.maps[alpha])
            for a in range(d):
                yield {"alpha": alpha, "u": a}, vsub(lhs.column(a), rhs.column(a))

    def family_identity():
        vbasis = module.basis()
        for alpha, beta in iproduct(omega.elements(), repeat=2):
            r_ab = operator.maps[omega.mul(alpha, beta)]
            for a, b in iproduct(range(d), repeat=2):
                u, v = vbasis[a], vbasis[b]
                lhs = A.product(operator.maps[alpha].apply(u), operator.maps[beta].apply(v))
                rhs = r_ab.apply(twisted_inner_sum(operator, alpha, beta, u, v))
                yield {"alpha": alpha, "beta": beta, "u": a, "v": b}, vsub(lhs, rhs)

    run_law(report, "R_a o q = p o R_a", equivariance(), max_violations)
    run_law(
        report,
        "R_a u . R_b v = R_ab(R_a u .l v + u .r R_b v + phi(R_a u, R_b v))",
        family_identity(),
        max_violations,
    )
    return report


def check_nijenhuis_family(family, max_violations=DEFAULT_MAX_VIOLATIONS):
    ensure_valid(family.algebra, check_hom_algebra, "host hom-algebra")
    A, omega = family.algebra, family.omega
    n = A.dim
    report = CheckReport(subject=f"Nijenhuis family over omega of size {omega.size}")

    def commutes_with_p():
        for alpha in omega.elements():
            lhs = A.p.mul(family.maps[alpha])
            rhs = family.maps[alpha].mul(A.p)
            for i in range(n):
                yield {"alpha": alpha, "x": i}, vsub(lhs.column(i), rhs.column(i))

    def family_identity():
        for alpha, beta in iproduct(omega.elements(), repeat=2):
            n_ab = family.maps[omega.mul(alpha, beta)]
            for i, j in iproduct(range(n), repeat=2):
                x, y = unit_vector(n, i), unit_vector(n, j)
                lhs = A.product(family.maps[alpha].apply(x), family.maps[beta].apply(y))
                inner = vsub(
                    vadd(
                        A.product(family.maps[alpha].apply(x), y),
                        A.product(x, family.maps[beta].apply(y)),
                    ),
                    n_ab.apply(A.basis_product(i, j)),
                )
                yield {"alpha": alpha, "beta": beta, "x": i, "y": j}, vsub(lhs, n_ab.apply(inner))

    run_law(report, "p o N_a = N_a o p", commutes_with_p(), max_violations)
    run_law(
        report,
        "N_a x . N_b y = N_ab(N_a x . y + x . N_b y - N_ab(x.y))",
        family_identity(),
        max_violations,
    )
    return report


def check_weighted_rbf(family, max_violations=DEFAULT_MAX_VIOLATIONS):
    ensure_valid(family.algebra, check_hom_algebra, "host hom-algebra")
    A, omega, lam = family.algebra, family.omega, family.weight
    n = A.dim
    report = CheckReport(subject=f"weighted Rota-Baxter family (weight {lam})")

    def commutes_with_p():
        for alpha in omega.elements():
            lhs = A.p.mul(family.maps[alpha])
            rhs = family.maps[alpha].mul(A.p)
            for i in range(n):
                yield {"alpha": alpha, "x": i}, vsub(lhs.column(i), rhs.column(i))

    def family_identity():
        for alpha, beta in iproduct(omega.elements(), repeat=2):
            t_ab = family.maps[omega.mul(alpha, beta)]
            for i, j in iproduct(range(n), repeat=2):
                x, y = unit_vector(n, i), unit_vector(n, j)
                lhs = A.product(family.maps[alpha].apply(x), family.maps[beta].apply(y))
                inner = vadd(
                    vadd(
                        A.product(family.maps[alpha].apply(x), y),
                        A.product(x, family.maps[beta].apply(y)),
                    ),
                    tuple(lam * c for c in A.basis_product(i, j)),
                )
                yield {"alpha": alpha, "beta": beta, "x": i, "y": j}, vsub(lhs, t_ab.apply(inner))

    run_law(report, "p(T_a x) = T_a p(x)", commutes_with_p(), max_violations)
    run_law(
        report,
        "T_a x . T_b y = T_ab(T_a x . y + x . T_b y + w x.y)",
        family_identity(),
        max_violations,
    )
    return report


def check_operator_morphism(morphism, max_violations=DEFAULT_MAX_VIOLATIONS):
    src, tgt = morphism.source, morphism.target
    _validate_hosts(src)
    _validate_hosts(tgt)
    psi, phi = morphism.psi, morphism.phi
    omega = src.omega
    n, d = src.algebra.dim, src.bimodule.dim
    report = CheckReport(subject="twisted Rota-Baxter family morphism")

    def intertwines_r():
        for alpha in omega.elements():
            lhs = psi.mul(src.maps[alpha])
            rhs = tgt.maps[alpha].mul(phi)
            for a in range(d):
                yield {"alpha": alpha, "u": a}, vsub(lhs.column(a), rhs.column(a))

    def intertwines_phi():
        for i, j in iproduct(range(n), repeat=2):
            lhs = phi.apply(src.cocycle.apply(unit_vector(n, i), unit_vector(n, j)))
            rhs = tgt.cocycle.apply(psi.column(i), psi.column(j))
            yield {"x": i, "y": j}, vsub(lhs, rhs)

    def intertwines_q():
        lhs = phi.mul(src.bimodule.q)
        rhs = tgt.bimodule.q.mul(phi)
        for a in range(d):
            yield {"u": a}, vsub(lhs.column(a), rhs.column(a))

    def intertwines_left():
        for i, a in iproduct(range(n), range(d)):
            lhs = phi.apply(src.bimodule.act_l(unit_vector(n, i), unit_vector(d, a)))
            rhs = tgt.bimodule.act_l(psi.column(i), phi.column(a))
            yield {"x": i, "u": a}, vsub(lhs, rhs)

    def intertwines_right():
        for a, i in iproduct(range(d), range(n)):
            lhs = phi.apply(src.bimodule.act_r(unit_vector(d, a), unit_vector(n, i)))
            rhs = tgt.bimodule.act_r(phi.column(a), psi.column(i))
            yield {"u": a, "x": i}, vsub(lhs, rhs)

    def psi_multiplicative():
        for i, j in iproduct(range(n), repeat=2):
            lhs = psi.apply(src.algebra.basis_product(i, j))
            rhs = tgt.algebra.product(psi.column(i), psi.column(j))
            yield {"x": i, "y": j}, vsub(lhs, rhs)

    def psi_intertwines_p():
        lhs = psi.mul(src.algebra.p)
        rhs = tgt.algebra.p.mul(psi)
        for i in range(n):
            yield {"x": i}, vsub(lhs.column(i), rhs.column(i))

    run_law(report, "psi o R_a = R'_a o phi", intertwines_r(), max_violations)
    run_law(report, "phi o Phi = Phi' o (psi x psi)", intertwines_phi(), max_violations)
    run_law(report, "phi o q = q' o phi", intertwines_q(), max_violations)
    run_law(report, "phi(x .l u) = psi(x) .l' phi(u)", intertwines_left(), max_violations)
    run_law(report, "phi(u .r x) = phi(u) .r' psi(x)", intertwines_right(), max_violations)
    run_law(report, "psi(x.y) = psi(x).psi(y)", psi_multiplicative(), max_violations)
    run_law(report, "psi o p = p' o psi", psi_intertwines_p(), max_violations)
    return report


# ---------------------------------------------------------------------------
# graph characterization


def graph_check(operator, max_violations=DEFAULT_MAX_VIOLATIONS):
    """Check that the graphs of R_a form a Hom-family subalgebra of L x|_phi V.

    Builds Gr(R_a) = span{(R_a v, v)} inside the twisted semidirect product
    and tests (p+q)-stability of each graph plus the product containment
    Gr(R_a) . Gr(R_b) within Gr(R_ab), both by exact membership solves.
    The verdict agrees with check_twisted_rbf on every input.
    """
    _validate_hosts(operator)
    A, module, omega = operator.algebra, operator.bimodule, operator.omega
    n, d = A.dim, module.dim
    semidirect = semidirect_product(module, operator.cocycle)
    graphs = []
    for alpha in omega.elements():
        cols = []
        for a in range(d):
            cols.append(tuple(operator.maps[alpha].column(a)) + unit_vector(d, a))
        graphs.append(Matrix.from_columns(cols, rows=n + d))
    report = CheckReport(subject="graph characterization in the twisted semidirect product")

    def residual_against(graph, w):
        # The bottom block of every graph matrix is the identity, so the
        # only possible coefficient vector is the bottom part of w.
        if solve(graph, w) is not None:
            return zero_vector(n + d)
        coeffs = w[n:]
        return vsub(w, graph.apply(coeffs))

    def stability():
        for alpha in omega.elements():
            for a in range(d):
                w = semidirect.p.apply(graphs[alpha].column(a))
                yield {"alpha": alpha, "u": a}, residual_against(graphs[alpha], w)

    def containment():
        for alpha, beta in iproduct(omega.elements(), repeat=2):
            target = graphs[omega.mul(alpha, beta)]
            for a, b in iproduct(range(d), repeat=2):
                w = semidirect.product(graphs[alpha].column(a), graphs[beta].column(b))
                yield {"alpha": alpha, "beta": beta, "u": a, "v": b}, residual_against(target, w)

    run_law(report, "(p+q) Gr(R_a) inside Gr(R_a)", stability(), max_violations)
    run_law(report, "Gr(R_a) . Gr(R_b) inside Gr(R_ab)", containment(), max_violations)
    return report


# ---------------------------------------------------------------------------
# packings and induced data


def pack_operator(operator):
    """Pack a family into a single twisted operator on V(x)K[omega] over L(x)K[omega].

    The packed map sends u(x)a to (R_a u)(x)a; viewed as a family over the
    trivial semigroup with the packed cocycle it passes the family check.
    """
    from .reports import require_pass

    require_pass(check_twisted_rbf(operator), "twisted Rota-Baxter family")
    omega = operator.omega
    n, d, m = operator.algebra.dim, operator.bimodule.dim, omega.size
    packed_module, packed_cocycle = tensor_bimodule(operator.cocycle, omega)
    entries = [[Fraction(0)] * (d * m) for _ in range(n * m)]
    for alpha in omega.elements():
        mat = operator.maps[alpha]
        for i in range(n):
            for a in range(d):
                entries[alpha * n + i][alpha * d + a] = mat.at(i, a)
    packed_map = Matrix.from_rows(entries)
    return TwistedRBFamily(cocycle=packed_cocycle, omega=builtin("trivial"), maps=(packed_map,))


@dataclass(frozen=True)
class NijenhuisInducedData:
    algebra: HomAlgebra
    module: HomBimodule
    cocycle: TwoCocycle
    operator: TwistedRBFamily


def nijenhuis_induced_data(family):
    """Deformed product, bimodule, cocycle and identity family from a Nijenhuis family.

    On L(x)K[omega]: (x(x)a) . (y(x)b) = (N_a x . y + x . N_b y - N_ab(x.y)) (x) ab,
    L acts through N, the cocycle is (x(x)a, y(x)b) -> -N_ab(x.y), and the
    maps x -> x(x)a form a twisted Rota-Baxter family for that cocycle.
    """
    from .reports import require_pass

    require_pass(check_nijenhuis_family(family), "Nijenhuis family")
    A, omega = family.algebra, family.omega
    n, m = A.dim, omega.size
    nm = n * m

    cols = {}
    for alpha, beta in iproduct(omega.elements(), repeat=2):
        n_ab = family.maps[omega.mul(alpha, beta)]
        for i, j in iproduct(range(n), repeat=2):
            x, y = unit_vector(n, i), unit_vector(n, j)
            val = vsub(
                vadd(
                    A.product(family.maps[alpha].apply(x), y),
                    A.product(x, family.maps[beta].apply(y)),
                ),
                n_ab.apply(A.basis_product(i, j)),
            )
            cols[(alpha, i, beta, j)] = val

    def mu_entry(kk, ii, jj):
        gamma, k = divmod(kk, n)
        alpha, i = divmod(ii, n)
        beta, j = divmod(jj, n)
        if gamma != omega.mul(alpha, beta):
            return 0
        return cols[(alpha, i, beta, j)][k]

    from .homalg import _block_repeat

    deformed = HomAlgebra(
        dim=nm, mu=Tensor.from_function((nm, nm, nm), mu_entry), p=_block_repeat(A.p, m)
    )

    def left_entry(k, ii, j):
        alpha, i = divmod(ii, n)
        return A.product(family.maps[alpha].column(i), unit_vector(n, j))[k]

    def right_entry(k, j, ii):
        beta, i = divmod(ii, n)
        return A.product(unit_vector(n, j), family.maps[beta].column(i))[k]

    module = HomBimodule(
        parent=deformed,
        dim=n,
        left=Tensor.from_function((n, nm, n), left_entry),
        right=Tensor.from_function((n, n, nm), right_entry),
        q=A.p,
    )

    def phi_entry(k, ii, jj):
        alpha, i = divmod(ii, n)
        beta, j = divmod(jj, n)
        n_ab = family.maps[omega.mul(alpha, beta)]
        return -n_ab.apply(A.basis_product(i, j))[k]

    cocycle = TwoCocycle(host=module, phi=Tensor.from_function((n, nm, nm), phi_entry))

    id_maps = []
    for alpha in omega.elements():
        entries = [[Fraction(0)] * n for _ in range(nm)]
        for i in range(n):
            entries[alpha * n + i][i] = Fraction(1)
        id_maps.append(Matrix.from_rows(entries))
    identity_family = TwistedRBFamily(cocycle=cocycle, omega=omega, maps=tuple(id_maps))
    return NijenhuisInducedData(
        algebra=deformed, module=module, cocycle=cocycle, operator=identity_family
    )


def identity_packing_family(algebra, omega, packed_cocycle):
    """The family Id_a(x) = x(x)a into L(x)K[omega], for a packed cocycle on it."""
    n = algebra.dim
    maps = []
    for alpha in omega.elements():
        entries = [[Fraction(0)] * n for _ in range(n * omega.size)]
        for i in range(n):
            entries[alpha * n + i][i] = Fraction(1)
        maps.append(Matrix.from_rows(entries))
    return TwistedRBFamily(cocycle=packed_cocycle, omega=omega, maps=tuple(maps))


DEFAULT_SEARCH_GRID = (
    Fraction(0),
    Fraction(1),
    Fraction(-1),
    Fraction(1, 2),
    Fraction(-1, 2),
)
SEARCH_CANDIDATE_CAP = 10**6


def search_nijenhuis_families(algebra, omega, grid=DEFAULT_SEARCH_GRID, cap=SEARCH_CANDIDATE_CAP):
    """Exhaustive grid search for Nijenhuis families with entries from ``grid``.

    The candidate count len(grid)**(m*n*n) must stay within ``cap``; beyond
    that an explicit candidate must be supplied instead.  Candidates are
    screened with early exit; survivors are returned in grid order.
    """
    ensure_valid(algebra, check_hom_algebra, "host hom-algebra")
    n, m = algebra.dim, omega.size
    slots = m * n * n
    total = len(grid) ** slots
    if total > cap:
        raise InputError(
            f"search space {total} exceeds the candidate cap {cap}; "
            "supply an explicit candidate instead"
        )
    grid = tuple(ensure_rational(g) for g in grid)
    prods = {
        (i, j): algebra.basis_product(i, j) for i, j in iproduct(range(n), repeat=2)
    }
    basis = algebra.basis()
    p = algebra.p
    p_is_id = p.is_identity()
    found = []
    for flat in iproduct(grid, repeat=slots):
        maps = tuple(
            Matrix(n, n, flat[a * n * n : (a + 1) * n * n]) for a in range(m)
        )
        ok = True
        if not p_is_id:
            for mat in maps:
                if p.mul(mat).entries != mat.mul(p).entries:
                    ok = False
                    break
        if ok:
            for alpha, beta in iproduct(range(m), repeat=2):
                n_ab = maps[omega.mul(alpha, beta)]
                for i, j in iproduct(range(n), repeat=2):
                    lhs = algebra.product(maps[alpha].column(i), maps[beta].column(j))
                    inner = vsub(
                        vadd(
                            algebra.product(maps[alpha].column(i), basis[j]),
                            algebra.product(basis[i], maps[beta].column(j)),
                        ),
                        n_ab.apply(prods[(i, j)]),
                    )
                    if lhs != n_ab.apply(inner):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            found.append(NijenhuisFamily(algebra=algebra, omega=omega, maps=maps))
    return found
