"""Cochain complexes and cohomology dimensions.

Three complexes share one chassis:

* HA    - the Hochschild-type complex of a Hom-associative algebra with
          coefficients in a bimodule (no semigroup grading; the cochain
          table has the single empty key),
* OMEGA - the complex of a semigroup-pair-indexed associative algebra with
          coefficients in a pair-indexed bimodule,
* RBF   - the complex of a twisted Rota-Baxter family, whose differential
          is computed twice on every call: once by the direct formula and
          once through the generic OMEGA differential on the induced
          total-product algebra and bimodule; the two must agree exactly.

Cochain spaces carry the equivariance membership constraint, enforced at
construction.  Bases, differential matrices and dimensions are exact and
deterministic.
"""
from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import (
    DegreeCapError,
    InputError,
    MissingUnitError,
    RouteMismatchError,
)
from .family import (
    check_omega_assoc,
    check_omega_bimodule,
    ns_family_from_operator,
    omega_assoc_from_ns_family,
    operator_bimodule,
)
from .homalg import (
    check_bimodule,
    check_hom_algebra,
    hochschild_differential,
)
from .linalg import (
    Matrix,
    Tensor,
    kernel_basis,
    multilinear_apply,
    rank,
    solve,
    tensor_column,
    unit_vector,
    vadd,
    vsub,
)
from .operators import check_twisted_rbf, twisted_inner_sum
from .reports import ensure_valid

DEFAULT_DEGREE_CAP = 2
DEFAULT_MAX_ENTRIES = 10**7

HA, OMEGA, RBF = "HA", "OMEGA", "RBF"

CohomologyDims = namedtuple("CohomologyDims", ["dim_c", "dim_z", "dim_b", "dim_h"])


@dataclass(frozen=True)
class Cochain:
    """Degree-n cochain: a table from index tuples to coefficient tensors.

    Tensors have shape (target_dim,) + (source_dim,)*degree; degree 0 is a
    single vector stored under the empty key.  HA cochains always use the
    single empty key.
    """

    complex: str
    degree: int
    source_dim: int
    target_dim: int
    table: dict

    def keys(self):
        return sorted(self.table)

    def tensor(self, key):
        return self.table[key]

    def as_vector(self):
        if self.degree != 0:
            raise InputError("only degree-0 cochains collapse to a vector")
        return tuple(self.table[()].entries)

    def add(self, other):
        if (self.complex, self.degree) != (other.complex, other.degree):
            raise InputError("cochain mismatch")
        return Cochain(
            complex=self.complex,
            degree=self.degree,
            source_dim=self.source_dim,
            target_dim=self.target_dim,
            table={k: self.table[k].add(other.table[k]) for k in self.table},
        )

    def scale(self, c):
        return Cochain(
            complex=self.complex,
            degree=self.degree,
            source_dim=self.source_dim,
            target_dim=self.target_dim,
            table={k: t.scale(c) for k, t in self.table.items()},
        )

    def is_zero(self):
        return all(t.is_zero() for t in self.table.values())


@dataclass
class ComplexHandle:
    """Bundle of the data a complex needs, plus basis/matrix caches."""

    tag: str
    source_dim: int
    target_dim: int
    source_map: Matrix
    target_map: Matrix
    omega: object  # FiniteSemigroup or None for HA
    degree_cap: int = DEFAULT_DEGREE_CAP
    max_entries: int = DEFAULT_MAX_ENTRIES
    ha_module: object = None
    omega_algebra: object = None
    omega_module: object = None
    operator: object = None
    notes: tuple = ()
    _basis: dict = field(default_factory=dict, repr=False)
    _matrix: dict = field(default_factory=dict, repr=False)

    # -- layout ------------------------------------------------------------

    def index_keys(self, degree):
        if degree == 0 or self.tag == HA:
            return [()]
        return list(iproduct(range(self.omega.size), repeat=degree))

    def tensor_shape(self, degree):
        return (self.target_dim,) + (self.source_dim,) * degree

    def raw_dim(self, degree):
        return len(self.index_keys(degree)) * self.target_dim * self.source_dim**degree

    def flatten(self, cochain):
        out = []
        for key in cochain.keys():
            out.extend(cochain.table[key].entries)
        return tuple(out)

    def unflatten(self, degree, vec):
        keys = self.index_keys(degree)
        shape = self.tensor_shape(degree)
        block = self.target_dim * self.source_dim**degree
        if len(vec) != block * len(keys):
            raise InputError("coefficient vector has the wrong length")
        table = {}
        for pos, key in enumerate(sorted(keys)):
            table[key] = Tensor(shape, tuple(vec[pos * block : (pos + 1) * block]))
        return Cochain(
            complex=self.tag,
            degree=degree,
            source_dim=self.source_dim,
            target_dim=self.target_dim,
            table=table,
        )

    # -- membership ---------------------------------------------------------

    def _constraint_trivial(self):
        return self.source_map.is_identity() and self.target_map.is_identity()

    def membership_ok(self, cochain):
        if cochain.degree == 0:
            u = cochain.as_vector()
            return self.target_map.apply(u) == tuple(u)
        if self._constraint_trivial():
            return True
        for key in cochain.keys():
            t = cochain.table[key]
            for idx in iproduct(range(self.source_dim), repeat=cochain.degree):
                lhs = self.target_map.apply(tensor_column(t, idx))
                rhs = multilinear_apply(t, [self.source_map.column(j) for j in idx])
                if lhs != rhs:
                    return False
        return True

    def make_cochain(self, degree, table):
        """Wrap and validate a user-supplied cochain (membership enforced here)."""
        self._guard_degree(degree, allow_plus_one=True)
        if degree == 0:
            vec = tuple(table) if isinstance(table, (tuple, list)) else tuple(table.entries)
            if len(vec) != self.target_dim:
                raise InputError("degree-0 cochain has the wrong length")
            cochain = Cochain(
                complex=self.tag,
                degree=0,
                source_dim=self.source_dim,
                target_dim=self.target_dim,
                table={(): Tensor((self.target_dim,), vec)},
            )
        else:
            keys = self.index_keys(degree)
            shape = self.tensor_shape(degree)
            normalized = {}
            for key in keys:
                if key not in table:
                    raise InputError(f"missing cochain table entry for index tuple {key}")
                t = table[key]
                if not isinstance(t, Tensor):
                    t = Tensor(shape, tuple(t))
                if t.shape != shape:
                    raise InputError(f"cochain tensor at {key} must have shape {shape}")
                normalized[key] = t
            if len(table) != len(keys):
                raise InputError("cochain table has unexpected extra keys")
            cochain = Cochain(
                complex=self.tag,
                degree=degree,
                source_dim=self.source_dim,
                target_dim=self.target_dim,
                table=normalized,
            )
        if not self.membership_ok(cochain):
            raise InputError(
                "cochain violates the equivariance membership constraint"
            )
        return cochain

    # -- degree guards -------------------------------------------------------

    def _guard_degree(self, degree, allow_plus_one=False):
        if degree < 0:
            raise InputError("degree must be nonnegative")
        cap = self.degree_cap + (1 if allow_plus_one else 0)
        if degree > cap:
            raise DegreeCapError(
                f"degree {degree} exceeds the cap {self.degree_cap} "
                f"(estimated {self.raw_dim(degree)} raw entries)",
                estimated_entries=self.raw_dim(degree),
            )
        est = self.raw_dim(degree)
        if est > self.max_entries:
            raise DegreeCapError(
                f"degree {degree} needs about {est} tensor entries, "
                f"beyond the budget {self.max_entries}",
                estimated_entries=est,
            )
        if degree == 0 and self.tag in (OMEGA, RBF) and self.omega.unit is None:
            raise MissingUnitError(
                "degree-0 cohomology needs a unit in the semigroup"
            )

    # -- bases ----------------------------------------------------------------

    def basis_vectors(self, degree):
        """Coefficient vectors of the constraint-kernel basis, lexicographic."""
        if degree in self._basis:
            return self._basis[degree]
        self._guard_degree(degree, allow_plus_one=True)
        raw = self.raw_dim(degree)
        if degree == 0:
            mat = self.target_map.sub(Matrix.identity(self.target_dim))
            vecs = kernel_basis(mat)
        elif self._constraint_trivial():
            vecs = [unit_vector(raw, j) for j in range(raw)]
        else:
            vecs = kernel_basis(self._constraint_matrix(degree))
        self._basis[degree] = vecs
        return vecs

    def basis(self, degree):
        return [self.unflatten(degree, v) for v in self.basis_vectors(degree)]

    def _constraint_matrix(self, degree):
        src, tgt = self.source_map, self.target_map
        n, d = self.source_dim, self.target_dim
        keys = self.index_keys(degree)
        in_idx = list(iproduct(range(n), repeat=degree))
        block = d * len(in_idx)
        raw = block * len(keys)
        entries = [[0] * raw for _ in range(raw)]
        # Per key block: rows (k, i_vec), cols (k', j_vec):
        #   q[k][k'] [j=i] - [k'=k] prod_l p[j_l][i_l]
        for kpos in range(len(keys)):
            base = kpos * block
            for krow in range(d):
                for ipos, ivec in enumerate(in_idx):
                    r = base + krow * len(in_idx) + ipos
                    for kcol in range(d):
                        e = tgt.at(krow, kcol)
                        if e:
                            entries[r][base + kcol * len(in_idx) + ipos] += e
                    for jpos, jvec in enumerate(in_idx):
                        w = 1
                        for jl, il in zip(jvec, ivec):
                            w = w * src.at(jl, il)
                            if not w:
                                break
                        if w:
                            entries[r][base + krow * len(in_idx) + jpos] -= w
        return Matrix.from_rows(entries)

    # -- differentials ----------------------------------------------------------

    def differential(self, cochain):
        if cochain.complex != self.tag:
            raise InputError("cochain belongs to a different complex")
        if self.tag == HA:
            out_t = hochschild_differential(self.ha_module, cochain.degree, cochain)
            return Cochain(
                complex=HA,
                degree=cochain.degree + 1,
                source_dim=self.source_dim,
                target_dim=self.target_dim,
                table={(): out_t},
            )
        if self.tag == OMEGA:
            return omega_differential(self, cochain)
        return rbf_differential(self, cochain)

    def differential_matrix(self, degree):
        if degree in self._matrix:
            return self._matrix[degree]
        basis_in = self.basis(degree)
        vec_out = self.basis_vectors(degree + 1)
        columns = []
        trivial_out = self._constraint_trivial() or degree + 1 == 0
        raw_out = self.raw_dim(degree + 1)
        if not trivial_out:
            bmat = Matrix.from_columns(vec_out, rows=raw_out) if vec_out else Matrix(raw_out, 0, ())
        for b in basis_in:
            image = self.flatten(self.differential(b))
            if trivial_out:
                columns.append(image)
            else:
                sol = solve(bmat, image)
                if sol is None:
                    raise RouteMismatchError(
                        "differential image escaped the constrained cochain space"
                    )
                columns.append(sol[0])
        ncols = len(columns)
        nrows = len(vec_out)
        if ncols == 0:
            mat = Matrix(nrows, 0, ())
        else:
            mat = Matrix.from_columns(columns, rows=nrows)
        self._matrix[degree] = mat
        return mat


def _check_degree0_unit(handle):
    if handle.tag in (OMEGA, RBF) and handle.omega.unit is None:
        raise MissingUnitError("degree-0 differential needs a unit in the semigroup")


def ha_complex(algebra, module, degree_cap=DEFAULT_DEGREE_CAP, max_entries=DEFAULT_MAX_ENTRIES):
    """Complex of a Hom-associative algebra with coefficients in a bimodule."""
    ensure_valid(algebra, check_hom_algebra, "hom-algebra")
    ensure_valid(module, check_bimodule, "hom-bimodule")
    if module.parent != algebra:
        raise InputError("module is not over the given algebra")
    return ComplexHandle(
        tag=HA,
        source_dim=algebra.dim,
        target_dim=module.dim,
        source_map=algebra.p,
        target_map=module.q,
        omega=None,
        degree_cap=degree_cap,
        max_entries=max_entries,
        ha_module=module,
    )


def omega_complex(algebra, module, degree_cap=DEFAULT_DEGREE_CAP, max_entries=DEFAULT_MAX_ENTRIES):
    """Complex of a pair-indexed algebra with coefficients in a pair-indexed bimodule."""
    ensure_valid(algebra, check_omega_assoc, "pair-indexed algebra")
    ensure_valid(module, check_omega_bimodule, "pair-indexed bimodule")
    if module.parent != algebra:
        raise InputError("module is not over the given algebra")
    return ComplexHandle(
        tag=OMEGA,
        source_dim=algebra.dim,
        target_dim=module.dim,
        source_map=algebra.p,
        target_map=module.q,
        omega=algebra.omega,
        degree_cap=degree_cap,
        max_entries=max_entries,
        omega_algebra=algebra,
        omega_module=module,
    )


def rbf_complex(operator, degree_cap=DEFAULT_DEGREE_CAP, max_entries=DEFAULT_MAX_ENTRIES):
    """Complex of a twisted Rota-Baxter family.

    Source space is the module V (with map q), target the algebra L (with
    map p).  The induced total-product algebra on V and the pair-indexed
    bimodule structure on L are derived once and reused by the generic
    route of the differential.
    """
    ensure_valid(operator, check_twisted_rbf, "twisted Rota-Baxter family")
    derived_algebra = omega_assoc_from_ns_family(
        ns_family_from_operator(operator, validate=False), validate=False
    )
    derived_module = operator_bimodule(operator, validate=False)
    return ComplexHandle(
        tag=RBF,
        source_dim=operator.bimodule.dim,
        target_dim=operator.algebra.dim,
        source_map=operator.bimodule.q,
        target_map=operator.algebra.p,
        omega=operator.omega,
        degree_cap=degree_cap,
        max_entries=max_entries,
        omega_algebra=derived_algebra,
        omega_module=derived_module,
        operator=operator,
        notes=(
            "inserted-slot reading: arguments after the merged slot are the "
            "structure map applied to u_{i+2}..u_{n+1}; the direct formula is "
            "cross-checked against the generic pair-indexed differential on "
            "every call",
        ),
    )


# ---------------------------------------------------------------------------
# differentials


def _omega_tables_delta(algebra, module, degree, get_tensor, handle_omega):
    """Generic pair-indexed differential on raw tables.

    ``get_tensor(key)`` returns the coefficient tensor for an index tuple;
    returns a dict key -> output tensor at degree + 1.
    """
    omega = handle_omega
    g, d = algebra.dim, module.dim
    p = algebra.p
    p_cols = [p.column(j) for j in range(g)]
    p_pow = p.power(degree - 1)
    ppow_cols = [p_pow.column(j) for j in range(g)]
    sign_last = 1 if (degree + 1) % 2 == 0 else -1
    out = {}
    inner = g ** (degree + 1)
    for key in iproduct(range(omega.size), repeat=degree + 1):
        rest = omega.product(key[1:])
        head = omega.product(key[:-1])
        f_tail = get_tensor(key[1:])
        f_head = get_tensor(key[:-1])
        merged = []
        for i in range(1, degree + 1):
            mkey = key[: i - 1] + (omega.mul(key[i - 1], key[i]),) + key[i + 1 :]
            merged.append((i, get_tensor(mkey), key[i - 1], key[i]))
        entries = [None] * (d * inner)
        for flat, idx in enumerate(iproduct(range(g), repeat=degree + 1)):
            acc = list(
                module.act_l(key[0], rest, ppow_cols[idx[0]], tensor_column(f_tail, idx[1:]))
            )
            tail = module.act_r(head, key[-1], tensor_column(f_head, idx[:-1]), ppow_cols[idx[-1]])
            for k in range(d):
                acc[k] = acc[k] + sign_last * tail[k]
            for i, f_merged, a_i, a_next in merged:
                args = [p_cols[j] for j in idx[: i - 1]]
                args.append(tensor_column(algebra.prod[a_i][a_next], (idx[i - 1], idx[i])))
                args.extend(p_cols[j] for j in idx[i + 1 :])
                term = multilinear_apply(f_merged, args)
                sgn = -1 if i % 2 else 1
                for k in range(d):
                    acc[k] = acc[k] + sgn * term[k]
            for k in range(d):
                entries[k * inner + flat] = acc[k]
        out[key] = Tensor((d,) + (g,) * (degree + 1), tuple(entries))
    return out


def _omega_delta0_tables(algebra, module, u):
    omega = algebra.omega
    unit = omega.unit
    g, d = algebra.dim, module.dim
    out = {}
    for alpha in omega.elements():
        cols = [
            vsub(
                module.act_l(alpha, unit, unit_vector(g, j), u),
                module.act_r(unit, alpha, u, unit_vector(g, j)),
            )
            for j in range(g)
        ]
        out[(alpha,)] = Tensor.from_function((d, g), lambda k, j: cols[j][k])
    return out


def omega_differential(handle, cochain):
    """Differential of the pair-indexed complex (Ω-graded Hochschild shape)."""
    if handle.tag != OMEGA:
        raise InputError("omega_differential needs an OMEGA handle")
    if cochain.complex != OMEGA:
        raise InputError("cochain belongs to a different complex")
    algebra, module = handle.omega_algebra, handle.omega_module
    if cochain.degree == 0:
        _check_degree0_unit(handle)
        table = _omega_delta0_tables(algebra, module, cochain.as_vector())
    else:
        table = _omega_tables_delta(
            algebra, module, cochain.degree, lambda key: cochain.table[key], handle.omega
        )
    out = Cochain(
        complex=OMEGA,
        degree=cochain.degree + 1,
        source_dim=handle.source_dim,
        target_dim=handle.target_dim,
        table=table,
    )
    if not handle.membership_ok(out):
        raise RouteMismatchError("differential output violates the membership constraint")
    return out


def _rbf_delta0_tables(handle, x):
    operator = handle.operator
    A, module, phi, omega = (
        operator.algebra,
        operator.bimodule,
        operator.cocycle,
        operator.omega,
    )
    d = module.dim
    out = {}
    for alpha in omega.elements():
        r_a = operator.maps[alpha]
        cols = []
        for a in range(d):
            u = module.basis()[a]
            ru = r_a.column(a)
            val = vsub(A.product(ru, x), r_a.apply(module.act_r(u, x)))
            val = vsub(val, r_a.apply(phi.apply(ru, x)))
            val = vsub(val, A.product(x, ru))
            val = vadd(val, r_a.apply(module.act_l(x, u)))
            val = vadd(val, r_a.apply(phi.apply(x, ru)))
            cols.append(val)
        out[(alpha,)] = Tensor.from_function((A.dim, d), lambda k, a: cols[a][k])
    return out


def _rbf_delta_n_tables(handle, degree, cochain):
    operator = handle.operator
    A, module, phi, omega = (
        operator.algebra,
        operator.bimodule,
        operator.cocycle,
        operator.omega,
    )
    n, d = A.dim, module.dim
    q = module.q
    q_pow = q.power(degree - 1)
    qpow_cols = [q_pow.column(a) for a in range(d)]
    q_cols = [q.column(a) for a in range(d)]
    vbasis = module.basis()
    sign_last = 1 if (degree + 1) % 2 == 0 else -1
    inner = d ** (degree + 1)
    out = {}
    for key in iproduct(range(omega.size), repeat=degree + 1):
        pi = omega.product(key)
        r_pi = operator.maps[pi]
        r_first = operator.maps[key[0]]
        r_last = operator.maps[key[-1]]
        f_tail = cochain.table[key[1:]]
        f_head = cochain.table[key[:-1]]
        merged = []
        for i in range(1, degree + 1):
            mkey = key[: i - 1] + (omega.mul(key[i - 1], key[i]),) + key[i + 1 :]
            merged.append((i, cochain.table[mkey], key[i - 1], key[i]))
        entries = [None] * (n * inner)
        for flat, idx in enumerate(iproduct(range(d), repeat=degree + 1)):
            u1 = qpow_cols[idx[0]]
            un1 = qpow_cols[idx[-1]]
            ftail_col = tensor_column(f_tail, idx[1:])
            fhead_col = tensor_column(f_head, idx[:-1])
            r1u1 = r_first.apply(u1)
            rn1un1 = r_last.apply(un1)
            acc = list(A.product(r1u1, ftail_col))
            t = r_pi.apply(module.act_r(u1, ftail_col))
            for k in range(n):
                acc[k] = acc[k] - t[k]
            t = r_pi.apply(phi.apply(r1u1, ftail_col))
            for k in range(n):
                acc[k] = acc[k] - t[k]
            last = list(A.product(fhead_col, rn1un1))
            t = r_pi.apply(module.act_l(fhead_col, un1))
            for k in range(n):
                last[k] = last[k] - t[k]
            t = r_pi.apply(phi.apply(fhead_col, rn1un1))
            for k in range(n):
                last[k] = last[k] - t[k]
            for k in range(n):
                acc[k] = acc[k] + sign_last * last[k]
            for i, f_merged, a_i, a_next in merged:
                args = [q_cols[a] for a in idx[: i - 1]]
                args.append(
                    twisted_inner_sum(operator, a_i, a_next, vbasis[idx[i - 1]], vbasis[idx[i]])
                )
                args.extend(q_cols[a] for a in idx[i + 1 :])
                term = multilinear_apply(f_merged, args)
                sgn = -1 if i % 2 else 1
                for k in range(n):
                    acc[k] = acc[k] + sgn * term[k]
            for k in range(n):
                entries[k * inner + flat] = acc[k]
        out[key] = Tensor((n,) + (d,) * (degree + 1), tuple(entries))
    return out


def rbf_differential(handle, cochain):
    """Differential of the twisted-family complex, computed by both routes.

    The direct formula and the generic pair-indexed differential on the
    induced data are evaluated independently and must agree entrywise.
    """
    if handle.tag != RBF:
        raise InputError("rbf_differential needs an RBF handle")
    if cochain.complex != RBF:
        raise InputError("cochain belongs to a different complex")
    if cochain.degree == 0:
        _check_degree0_unit(handle)
        direct = _rbf_delta0_tables(handle, cochain.as_vector())
        generic = _omega_delta0_tables(
            handle.omega_algebra, handle.omega_module, cochain.as_vector()
        )
    else:
        direct = _rbf_delta_n_tables(handle, cochain.degree, cochain)
        generic = _omega_tables_delta(
            handle.omega_algebra,
            handle.omega_module,
            cochain.degree,
            lambda key: cochain.table[key],
            handle.omega,
        )
    for key in direct:
        if direct[key].entries != generic[key].entries:
            raise RouteMismatchError(
                f"twisted-family differential routes disagree at index tuple {key}"
            )
    out = Cochain(
        complex=RBF,
        degree=cochain.degree + 1,
        source_dim=handle.source_dim,
        target_dim=handle.target_dim,
        table=direct,
    )
    if not handle.membership_ok(out):
        raise RouteMismatchError("differential output violates the membership constraint")
    return out


# ---------------------------------------------------------------------------
# public operations


def cochain_basis(handle, degree):
    """Deterministic ordered basis of the degree-n cochain space."""
    return handle.basis(degree)


def differential_matrix(handle, degree):
    """Matrix of the differential from the degree-n basis to the next one."""
    return handle.differential_matrix(degree)


def cohomology_dims(handle, degree):
    """(dim C, dim Z, dim B, dim H) at the requested degree, exactly."""
    if degree < 0:
        raise InputError("degree must be nonnegative")
    if degree > handle.degree_cap:
        raise DegreeCapError(
            f"degree {degree} exceeds the cap {handle.degree_cap} "
            f"(estimated {handle.raw_dim(degree + 1)} raw entries at the next degree)",
            estimated_entries=handle.raw_dim(degree + 1),
        )
    dim_c = len(handle.basis_vectors(degree))
    m_n = handle.differential_matrix(degree)
    dim_z = dim_c - rank(m_n)
    if degree == 0:
        dim_b = 0
    elif (
        degree == 1
        and handle.tag in (OMEGA, RBF)
        and handle.omega.unit is None
    ):
        # Without a unit the complex starts at degree 1, so nothing bounds.
        dim_b = 0
    else:
        m_prev = handle.differential_matrix(degree - 1)
        dim_b = rank(m_prev)
    return CohomologyDims(dim_c=dim_c, dim_z=dim_z, dim_b=dim_b, dim_h=dim_z - dim_b)


def invert_matrix(mat):
    if mat.rows != mat.cols:
        raise InputError("only square matrices invert")
    cols = []
    for i in range(mat.rows):
        sol = solve(mat, unit_vector(mat.rows, i))
        if sol is None or sol[1]:
            raise InputError("matrix is not invertible")
        cols.append(sol[0])
    return Matrix.from_columns(cols, rows=mat.rows)


def transport_cochain(morphism, cochain, source_handle=None, target_handle=None):
    """Move a cochain along an invertible morphism of twisted families.

    Degree n >= 1 sends f to psi o f o (phi^{-1})^(x n); degree 0 sends x
    to psi(x).  The chain-map law (transport then differentiate equals
    differentiate then transport) is asserted exactly at the input degree.
    """
    from .operators import check_operator_morphism
    from .reports import require_pass

    require_pass(check_operator_morphism(morphism), "operator morphism")
    src, tgt = morphism.source, morphism.target
    if src.bimodule != tgt.bimodule or src.algebra != tgt.algebra:
        raise InputError("cochain transport needs both families on one bimodule")
    if source_handle is None:
        source_handle = rbf_complex(src)
    if target_handle is None:
        target_handle = rbf_complex(tgt)
    if cochain.complex != RBF:
        raise InputError("only twisted-family cochains transport")
    out = transport_cochain_unchecked(morphism, cochain, target_handle)
    lhs = transport_cochain_unchecked(morphism, source_handle.differential(cochain), target_handle)
    rhs = target_handle.differential(out)
    for key in lhs.keys():
        if lhs.table[key].entries != rhs.table[key].entries:
            raise RouteMismatchError("cochain transport is not a chain map here")
    return out


def transport_cochain_unchecked(morphism, cochain, target_handle):
    phi_inv = invert_matrix(morphism.phi)
    psi = morphism.psi
    degree = cochain.degree
    if degree == 0:
        return target_handle.make_cochain(0, psi.apply(cochain.as_vector()))
    d = cochain.source_dim
    inv_cols = [phi_inv.column(a) for a in range(d)]
    table = {}
    for key in cochain.keys():
        t = cochain.table[key]
        cols = {}
        for idx in iproduct(range(d), repeat=degree):
            cols[idx] = psi.apply(multilinear_apply(t, [inv_cols[a] for a in idx]))
        table[key] = Tensor.from_function(t.shape, lambda k, *idx: cols[idx][k])
    return target_handle.make_cochain(degree, table)
