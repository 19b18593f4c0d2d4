"""Full rank A-sublattices of A^n for A = F_q[t], and Hecke operators on them.

A lattice is stored through its canonical basis: an n x n upper triangular
matrix whose rows are the basis vectors, with monic diagonal entries and, for
i < j, the entry at (i, j) reduced so its degree is below the degree of the
(j, j) diagonal entry.  This canonical form is unique per lattice, so
lattices can be hashed and compared directly and formal Z-linear sums of
lattices (the modules Hecke operators act on) are plain counters keyed by
canonical bases.

The operators implemented here:

* ``sigma_apply``: the elementary operator sending N to the sum of the
  preimages of codimension j subspaces of N / m_x N over the residue field
  at a monic prime x;
* ``t_local``: the sum of all sublattices N' of N with N/N' of length m as
  a module over the local ring at x;
* ``t_chain``: sublattices with a prescribed chain of invariant factors;
* ``newton_verify``: checks the Newton style recurrence tying t_local to
  the elementary operators, together with the alternating Gaussian binomial
  identity that drives its proof;
* ``hecke_mult_verify``: checks multiplicativity of chain operators with
  coprime determinants.

Everything is exact; coefficients are Python integers and polynomial
arithmetic is table driven via FieldCtx.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fieldcore import FieldCtx, Poly, _mix

__all__ = [
    "Lattice",
    "InvariantType",
    "LatticeSum",
    "standard_lattice",
    "hnf_reduce",
    "quotient_invariants",
    "sublattice_enum",
    "d_count",
    "phi_count",
    "sigma_apply",
    "t_local",
    "t_chain",
    "gauss_binom",
    "alternating_qbinom_sum",
    "newton_verify",
    "hecke_mult_verify",
    "random_sublattice",
    "NewtonReport",
    "MultReport",
    "predict_newton_cost",
]


class Lattice:
    """A full rank sublattice of A^n in canonical triangular form."""

    __slots__ = ("ctx", "n", "rows", "_hash")

    def __init__(self, ctx: FieldCtx, rows):
        canon = hnf_reduce(ctx, rows)
        self.ctx = ctx
        self.n = canon.n
        self.rows = canon.rows
        self._hash = canon._hash

    @classmethod
    def _wrap(cls, ctx: FieldCtx, n: int, rows: tuple) -> "Lattice":
        obj = object.__new__(cls)
        object.__setattr__(obj, "ctx", ctx)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "_hash", hash((ctx.q, rows)))
        return obj

    def __setattr__(self, name, value):
        if name in ("ctx", "n", "rows", "_hash") and hasattr(self, "_hash"):
            raise AttributeError("Lattice is immutable")
        object.__setattr__(self, name, value)

    @property
    def is_standard(self) -> bool:
        one, zero = (1,), ()
        return all(
            self.rows[i][j] == (one if i == j else zero)
            for i in range(self.n)
            for j in range(self.n)
        )

    def det(self) -> Poly:
        """Product of the diagonal entries, the monic determinant ideal generator."""
        d = (1,)
        for i in range(self.n):
            d = self.ctx.pmul(d, self.rows[i][i])
        return Poly(self.ctx, d)

    def det_degree(self) -> int:
        return sum(len(self.rows[i][i]) - 1 for i in range(self.n))

    def sort_key(self) -> tuple:
        pk = self.ctx.pkey
        return tuple(pk(e) for row in self.rows for e in row)

    def scale(self, g) -> "Lattice":
        """The lattice g * N for a nonzero polynomial g."""
        if isinstance(g, Poly):
            g = g.coeffs
        g = self.ctx.pmonic(self.ctx.pvalidate(g))
        if not g:
            raise ValueError("cannot scale a lattice by zero")
        pmul = self.ctx.pmul
        rows = tuple(tuple(pmul(g, e) for e in row) for row in self.rows)
        return _canonical_from_triangular(self.ctx, self.n, [list(r) for r in rows])

    def coords_of(self, vector) -> list | None:
        """Coefficients expressing a vector in this basis, or None if outside."""
        ctx = self.ctx
        v = [e.coeffs if isinstance(e, Poly) else ctx.pvalidate(e) for e in vector]
        if len(v) != self.n:
            raise ValueError("vector length does not match the rank")
        coords = []
        for i in range(self.n):
            q, r = ctx.pdivmod(v[i], self.rows[i][i])
            if r:
                return None
            coords.append(q)
            if q:
                for k in range(i, self.n):
                    if self.rows[i][k]:
                        v[k] = ctx.psub(v[k], ctx.pmul(q, self.rows[i][k]))
        return coords

    def contains(self, other: "Lattice") -> bool:
        return all(other_row_coords is not None
                   for other_row_coords in (self.coords_of(r) for r in other.rows))

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ctx == other.ctx
            and self.rows == other.rows
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        rows = "; ".join(
            "[" + ", ".join(str(Poly(self.ctx, e)) for e in row) + "]" for row in self.rows
        )
        return f"Lattice({rows})"

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [[list(e) for e in row] for row in self.rows]}


def standard_lattice(ctx: FieldCtx, n: int) -> Lattice:
    """A^n with its unit basis."""
    if n < 1:
        raise ValueError("rank must be positive")
    rows = tuple(tuple((1,) if i == j else () for j in range(n)) for i in range(n))
    return Lattice._wrap(ctx, n, rows)


def _canonical_rows(ctx: FieldCtx, n: int, rows: list) -> tuple:
    """Reduce an upper triangular basis with monic diagonal to canonical rows.

    Processes rows bottom up; each off diagonal entry (i, j) is reduced
    modulo the diagonal of row j, which is already in final form.
    """
    pdivmod, psub, pmul = ctx.pdivmod, ctx.psub, ctx.pmul
    for i in range(n - 2, -1, -1):
        ri = rows[i]
        for j in range(i + 1, n):
            dj = rows[j][j]
            if len(ri[j]) >= len(dj):
                q, r = pdivmod(ri[j], dj)
                ri[j] = r
                rj = rows[j]
                for k in range(j + 1, n):
                    if rj[k]:
                        ri[k] = psub(ri[k], pmul(q, rj[k]))
    return tuple(tuple(r) for r in rows)


def _canonical_from_triangular(ctx: FieldCtx, n: int, rows: list) -> Lattice:
    return Lattice._wrap(ctx, n, _canonical_rows(ctx, n, rows))


def hnf_reduce(ctx: FieldCtx, rows) -> Lattice:
    """Canonical form of the lattice spanned by the given rows.

    Accepts any spanning family of at least n row vectors (entries Poly or
    coefficient sequences) and raises if the span has rank below n.
    """
    mat = []
    n = None
    for row in rows:
        r = [e.coeffs if isinstance(e, Poly) else ctx.pvalidate(e) for e in row]
        if n is None:
            n = len(r)
        elif len(r) != n:
            raise ValueError("rows have inconsistent lengths")
        mat.append(r)
    if not mat or n == 0:
        raise ValueError("empty basis")
    pdivmod, psub, pmul, pscale = ctx.pdivmod, ctx.psub, ctx.pmul, ctx.pscale
    inv = ctx.inv_table
    pr = 0
    for col in range(n):
        while True:
            nz = [k for k in range(pr, len(mat)) if mat[k][col]]
            if not nz:
                raise ValueError("rows do not span a full rank lattice")
            if len(nz) == 1:
                k = nz[0]
                break
            nz.sort(key=lambda k: len(mat[k][col]))
            a, b = nz[0], nz[1]
            q, _ = pdivmod(mat[b][col], mat[a][col])
            ra, rb = mat[a], mat[b]
            for c in range(col, n):
                if ra[c]:
                    rb[c] = psub(rb[c], pmul(q, ra[c]))
        mat[pr], mat[k] = mat[k], mat[pr]
        lead = mat[pr][col][-1]
        if lead != 1:
            s = inv[lead]
            mat[pr] = [pscale(e, s) for e in mat[pr]]
        pr += 1
    # extra rows are now zero; keep the triangular top block
    return _canonical_from_triangular(ctx, n, mat[:n])


class InvariantType:
    """A divisibility chain f_1, ..., f_n of monic polynomials, largest first.

    The quotient attached to the chain is the direct sum of A/(f_k); the
    convention here keeps f_{k+1} dividing f_k.
    """

    __slots__ = ("ctx", "chain")

    def __init__(self, ctx: FieldCtx, chain: Iterable):
        cs = []
        for f in chain:
            f = f.coeffs if isinstance(f, Poly) else ctx.pvalidate(f)
            if not f or f[-1] != 1:
                raise ValueError("chain entries must be monic and nonzero")
            cs.append(f)
        for a, b in zip(cs, cs[1:]):
            if ctx.pmod(a, b):
                raise ValueError("chain entries must divide in descending order")
        self.ctx = ctx
        self.chain = tuple(cs)

    def __len__(self):
        return len(self.chain)

    def polys(self) -> tuple[Poly, ...]:
        return tuple(Poly(self.ctx, f) for f in self.chain)

    def det(self) -> Poly:
        d = (1,)
        for f in self.chain:
            d = self.ctx.pmul(d, f)
        return Poly(self.ctx, d)

    def codim(self) -> int:
        """Total F_q-dimension of the attached quotient."""
        return sum(len(f) - 1 for f in self.chain)

    def pointwise_mul(self, other: "InvariantType") -> "InvariantType":
        if len(other) != len(self):
            raise ValueError("chains must have equal length")
        pmul = self.ctx.pmul
        return InvariantType(self.ctx, [pmul(a, b) for a, b in zip(self.chain, other.chain)])

    def __eq__(self, other):
        return (
            isinstance(other, InvariantType)
            and self.ctx == other.ctx
            and self.chain == other.chain
        )

    def __hash__(self):
        return hash((self.ctx.q, self.chain))

    def __repr__(self):
        return "InvariantType(" + ", ".join(str(p) for p in self.polys()) + ")"

    def to_json(self) -> list:
        return [list(f) for f in self.chain]


def quotient_invariants(sub: Lattice, sup: Lattice | None = None) -> InvariantType:
    """Invariant factor chain of sup/sub, largest factor first.

    ``sup`` defaults to A^n.  Raises if ``sub`` is not contained in ``sup``.
    """
    ctx = sub.ctx
    n = sub.n
    if sup is None:
        sup = standard_lattice(ctx, n)
    if sup.n != n or sup.ctx != ctx:
        raise ValueError("lattices are not comparable")
    mat = []
    for row in sub.rows:
        coords = sup.coords_of(row)
        if coords is None:
            raise ValueError("first lattice is not contained in the second")
        mat.append(coords)
    diags = _snf_diagonal(ctx, mat)
    return InvariantType(ctx, list(reversed(diags)))


def _snf_diagonal(ctx: FieldCtx, mat: list) -> list:
    """Diagonal of the Smith form of a nonsingular matrix, ascending divisibility."""
    n = len(mat)
    m = [list(row) for row in mat]
    pdivmod, psub, pmul = ctx.pdivmod, ctx.psub, ctx.pmul
    diags = []
    for top in range(n):
        while True:
            best = None
            for i in range(top, n):
                for j in range(top, n):
                    e = m[i][j]
                    if e and (best is None or len(e) < len(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                raise ValueError("matrix is singular")
            bi, bj = best
            if bi != top:
                m[top], m[bi] = m[bi], m[top]
            if bj != top:
                for row in m:
                    row[top], row[bj] = row[bj], row[top]
            pivot = m[top][top]
            dirty = False
            for i in range(top + 1, n):
                if m[i][top]:
                    q, r = pdivmod(m[i][top], pivot)
                    for c in range(top, n):
                        if m[top][c]:
                            m[i][c] = psub(m[i][c], pmul(q, m[top][c]))
                    if r:
                        dirty = True
            if dirty:
                continue
            for j in range(top + 1, n):
                if m[top][j]:
                    q, r = pdivmod(m[top][j], pivot)
                    for i2 in range(top, n):
                        if m[i2][top]:
                            m[i2][j] = psub(m[i2][j], pmul(q, m[i2][top]))
                    if r:
                        dirty = True
            if dirty:
                continue
            # pivot must divide every remaining entry
            off = next(
                ((i, j) for i in range(top + 1, n) for j in range(top + 1, n)
                 if m[i][j] and pdivmod(m[i][j], pivot)[1]),
                None,
            )
            if off is None:
                break
            i, _ = off
            for c in range(top, n):
                if m[i][c]:
                    m[top][c] = ctx.padd(m[top][c], m[i][c])
        diags.append(ctx.pmonic(m[top][top]))
    return diags


# ---------------------------------------------------------------------------
# enumeration


def _diag_tuples(ctx: FieldCtx, g, n: int):
    """Ordered factorizations of a monic g into n monic diagonal entries."""
    divisors = ctx.monic_divisors(g)

    def rec(remaining, k):
        if k == 1:
            yield (remaining,)
            return
        for d in divisors:
            q, r = ctx.pdivmod(remaining, d)
            if not r:
                for rest in rec(q, k - 1):
                    yield (d,) + rest

    yield from rec(tuple(g), n)


def _enum_canonical_triangles(ctx: FieldCtx, diags: Sequence[tuple]):
    """All canonical triangular bases with the given diagonal, as row lists."""
    n = len(diags)
    q = ctx.q
    col_freedom = []
    for j in range(n):
        dj = len(diags[j]) - 1
        col_freedom.append([ctx.pfrom_key(k) for k in range(q ** dj)])
    slots = [(i, j) for j in range(1, n) for i in range(j)]
    pools = [col_freedom[j] for (_, j) in slots]
    for choice in itertools.product(*pools):
        rows = [[() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            rows[i][i] = diags[i]
        for (slot, e) in zip(slots, choice):
            rows[slot[0]][slot[1]] = e
        yield rows


def _apply_basis(ctx: FieldCtx, cmat: list, L: Lattice) -> Lattice:
    """Canonical form of the lattice with rows C * (basis of L), C triangular."""
    n = L.n
    pmul, padd = ctx.pmul, ctx.padd
    lrows = L.rows
    rows = []
    for i in range(n):
        ci = cmat[i]
        out = [()] * n
        for k in range(i, n):
            cik = ci[k]
            if cik:
                lk = lrows[k]
                for c in range(k, n):
                    if lk[c]:
                        out[c] = padd(out[c], pmul(cik, lk[c]))
        rows.append(out)
    return _canonical_from_triangular(ctx, n, rows)


def sublattice_enum(L: Lattice, g) -> list[Lattice]:
    """All sublattices N of L with L/N of determinant ideal (g), canonical order.

    The count depends only on g and the rank: the enumeration runs over
    canonical triangular matrices with diagonal product g.
    """
    ctx = L.ctx
    if isinstance(g, Poly):
        g = g.coeffs
    g = ctx.pvalidate(g)
    if not g or g[-1] != 1:
        raise ValueError("determinant must be monic and nonzero")
    out = []
    std = L.is_standard
    for diags in _diag_tuples(ctx, g, L.n):
        for rows in _enum_canonical_triangles(ctx, diags):
            if std:
                out.append(Lattice._wrap(L.ctx, L.n, tuple(tuple(r) for r in rows)))
            else:
                out.append(_apply_basis(ctx, rows, L))
    return out


def d_count(ctx: FieldCtx, chain) -> int:
    """Number of sublattices of A^n with the given invariant chain, n = len(chain)."""
    if not isinstance(chain, InvariantType):
        chain = InvariantType(ctx, chain)
    n = len(chain)
    amb = standard_lattice(ctx, n)
    det = chain.det()
    total = 0
    for N in sublattice_enum(amb, det):
        if quotient_invariants(N, amb) == chain:
            total += 1
    return total


def phi_count(ctx: FieldCtx, g, n: int, method: str = "closed") -> int:
    """Number of sublattices of A^n with determinant ideal (g).

    ``closed`` multiplies local counts: for each prime power P^e dividing g
    the local factor is the u^e coefficient of prod_{j<n} 1/(1 - Q^j u) with
    Q = q^deg P.  ``enum`` constructs every sublattice explicitly.
    """
    if isinstance(g, Poly):
        g = g.coeffs
    g = ctx.pvalidate(g)
    if not g or g[-1] != 1:
        raise ValueError("g must be monic and nonzero")
    if n < 1:
        raise ValueError("rank must be positive")
    if method == "enum":
        return len(sublattice_enum(standard_lattice(ctx, n), g))
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    total = 1
    _, factors = ctx.pfactor(g)
    for P, e in factors:
        Q = ctx.q ** (len(P) - 1)
        series = [1] + [0] * e
        for j in range(n):
            step = Q ** j
            new = [0] * (e + 1)
            for k in range(e + 1):
                acc = 0
                w = 1
                for i in range(k, -1, -1):
                    acc += series[i] * w
                    w *= step
                new[k] = acc
            series = new
        total *= series[e]
    return total


# ---------------------------------------------------------------------------
# lattice sums and operators


class LatticeSum:
    """Formal Z-linear combination of lattices of a common rank."""

    __slots__ = ("ctx", "n", "terms")

    def __init__(self, ctx: FieldCtx, n: int, terms: dict | None = None):
        self.ctx = ctx
        self.n = n
        self.terms = {L: c for L, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, L: Lattice, mult: int = 1) -> "LatticeSum":
        return cls(L.ctx, L.n, {L: mult})

    def __add__(self, other: "LatticeSum") -> "LatticeSum":
        self._check(other)
        out = dict(self.terms)
        for L, c in other.terms.items():
            out[L] = out.get(L, 0) + c
        return LatticeSum(self.ctx, self.n, out)

    def __sub__(self, other: "LatticeSum") -> "LatticeSum":
        self._check(other)
        out = dict(self.terms)
        for L, c in other.terms.items():
            out[L] = out.get(L, 0) - c
        return LatticeSum(self.ctx, self.n, out)

    def __mul__(self, k: int) -> "LatticeSum":
        return LatticeSum(self.ctx, self.n, {L: c * k for L, c in self.terms.items()})

    __rmul__ = __mul__

    def _check(self, other):
        if not isinstance(other, LatticeSum) or other.ctx != self.ctx or other.n != self.n:
            raise ValueError("sums are not compatible")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support_size(self) -> int:
        return len(self.terms)

    def total_mass(self) -> int:
        return sum(self.terms.values())

    def items(self):
        return sorted(self.terms.items(), key=lambda lc: lc[0].sort_key())

    def __eq__(self, other):
        return (
            isinstance(other, LatticeSum)
            and self.ctx == other.ctx
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self):
        k = len(self.terms)
        return f"LatticeSum({k} lattice{'s' if k != 1 else ''}, mass {self.total_mass()})"

    def to_json(self) -> list:
        return [[L.to_json(), c] for L, c in self.items()]


def _validate_prime(ctx: FieldCtx, x) -> tuple:
    if isinstance(x, Poly):
        x = x.coeffs
    x = ctx.pvalidate(x)
    if not x or x[-1] != 1 or not ctx.is_irreducible(x):
        raise ValueError("x must be a monic irreducible polynomial")
    return x


def _residue_field_elems(ctx: FieldCtx, x) -> list[tuple]:
    return [ctx.pfrom_key(k) for k in range(ctx.q ** (len(x) - 1))]


def _rref_subspaces(ctx: FieldCtx, x, n: int, dim: int):
    """Row bases (tuples of vectors over A/x) of all dim-dimensional subspaces
    of (A/x)^n, via reduced row echelon enumeration."""
    elems = _residue_field_elems(ctx, x)
    one = (1,)
    for pivots in itertools.combinations(range(n), dim):
        free_slots = [
            (a, c)
            for a in range(dim)
            for c in range(pivots[a] + 1, n)
            if c not in pivots
        ]
        for choice in itertools.product(elems, repeat=len(free_slots)):
            basis = [[() for _ in range(n)] for _ in range(dim)]
            for a in range(dim):
                basis[a][pivots[a]] = one
            for (a, c), e in zip(free_slots, choice):
                basis[a][c] = e
            yield basis


def sigma_apply(x, j: int, s: LatticeSum) -> LatticeSum:
    """Elementary Hecke operator at the prime x in codimension j.

    Each lattice N in the sum is replaced by the sum of the preimages in N of
    the codimension j subspaces of N / m_x N; there are gauss_binom(n, j, q_x)
    of them per lattice.
    """
    ctx = s.ctx
    x = _validate_prime(ctx, x)
    n = s.n
    if j < 0 or j > n:
        raise ValueError("codimension out of range")
    if j == 0:
        return LatticeSum(ctx, n, dict(s.terms))
    out: dict[Lattice, int] = {}
    pmul = ctx.pmul
    for N, mult in s.terms.items():
        scaled = [[pmul(x, e) for e in row] for row in N.rows]
        for basis in _rref_subspaces(ctx, x, n, n - j):
            gens = []
            for w in basis:
                v = [()] * n
                for c in range(n):
                    wc = w[c]
                    if wc:
                        rowc = N.rows[c]
                        for k in range(c, n):
                            if rowc[k]:
                                v[k] = ctx.padd(v[k], pmul(wc, rowc[k]))
                gens.append(v)
            gens.extend(scaled)
            Np = hnf_reduce(ctx, gens)
            out[Np] = out.get(Np, 0) + mult
    return LatticeSum(ctx, n, out)


def t_local(x, m: int, s: LatticeSum) -> LatticeSum:
    """Sum of sublattices of colength m at the prime x.

    m counts length over the local ring A/m_x, so the F_q codimension of each
    term is m * deg x.  The multiplicity convention is one per sublattice.
    """
    ctx = s.ctx
    x = _validate_prime(ctx, x)
    n = s.n
    if m < 0:
        raise ValueError("colength must be nonnegative")
    if m == 0:
        return LatticeSum(ctx, n, dict(s.terms))
    xpow = [(1,)]
    for _ in range(m):
        xpow.append(ctx.pmul(xpow[-1], x))
    q = ctx.q
    pmul, padd = ctx.pmul, ctx.padd
    acc: dict[tuple, int] = {}
    for N, mult in s.terms.items():
        std = N.is_standard
        nrows = N.rows
        for comp in _compositions(m, n):
            diags = [xpow[r] for r in comp]
            if std:
                for rows in _enum_canonical_triangles(ctx, diags):
                    key = tuple(tuple(r) for r in rows)
                    acc[key] = acc.get(key, 0) + mult
                continue
            # Row i of a candidate basis is x^{comp_i} N_i plus a pool choice
            # e N_j for each j > i; precompute every scaled row once so the
            # inner loop is pure vector addition.
            base = [
                [pmul(diags[i], c) if c else () for c in nrows[i]]
                for i in range(n)
            ]
            colvecs = []
            for j in range(n):
                vecs = [None]
                for key in range(1, q ** (len(diags[j]) - 1)):
                    e = ctx.pfrom_key(key)
                    vecs.append([pmul(e, c) if c else () for c in nrows[j]])
                colvecs.append(vecs)
            slots = [(i, j) for j in range(1, n) for i in range(j)]
            pools = [range(len(colvecs[j])) for (_, j) in slots]
            for choice in itertools.product(*pools):
                rows = [list(base[i]) for i in range(n)]
                for (i, j), key in zip(slots, choice):
                    vec = colvecs[j][key]
                    if vec is not None:
                        ri = rows[i]
                        for c in range(j, n):
                            vc = vec[c]
                            if vc:
                                rc = ri[c]
                                ri[c] = padd(rc, vc) if rc else vc
                key = _canonical_rows(ctx, n, rows)
                acc[key] = acc.get(key, 0) + mult
    return LatticeSum(
        ctx, n, {Lattice._wrap(ctx, n, k): v for k, v in acc.items()}
    )


def _compositions(m: int, n: int):
    """Ordered tuples of n nonnegative integers summing to m."""
    if n == 1:
        yield (m,)
        return
    for first in range(m + 1):
        for rest in _compositions(m - first, n - 1):
            yield (first,) + rest


def t_chain(chain: InvariantType, s: LatticeSum) -> LatticeSum:
    """Operator summing sublattices with the prescribed invariant chain."""
    ctx = s.ctx
    if len(chain) != s.n:
        raise ValueError("chain length must equal the rank")
    det = chain.det()
    out: dict[Lattice, int] = {}
    for N, mult in s.terms.items():
        for Np in sublattice_enum(N, det):
            if quotient_invariants(Np, N) == chain:
                out[Np] = out.get(Np, 0) + mult
    return LatticeSum(ctx, s.n, out)


# ---------------------------------------------------------------------------
# Gaussian binomials and the Newton recurrence


def gauss_binom(n: int, k: int, Q: int) -> int:
    """Gaussian binomial coefficient C(n, k)_Q, the subspace count."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= Q ** (n - i) - 1
        den *= Q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def alternating_qbinom_sum(h: int, Q: int) -> int:
    """sum_j (-1)^j Q^(j(j-1)/2) C(h, h-j)_Q; zero for every h >= 1."""
    total = 0
    for j in range(h + 1):
        total += (-1) ** j * Q ** (j * (j - 1) // 2) * gauss_binom(h, h - j, Q)
    return total


def predict_newton_cost(ctx: FieldCtx, x, n: int, r: int) -> int:
    """Number of sublattice productions a full Newton check will perform.

    Used to keep verification batteries inside a sane budget; the count for
    the term t_local(r - j) sigma_j is gauss_binom(n, j) multiplied by the
    zeta coefficient counting colength r - j submodules.
    """
    if isinstance(x, Poly):
        x = x.coeffs
    Q = ctx.q ** (len(x) - 1)

    def colength_count(m):
        series = [1] + [0] * m
        for j in range(n):
            step = Q ** j
            new = [0] * (m + 1)
            for k in range(m + 1):
                acc, w = 0, 1
                for i in range(k, -1, -1):
                    acc += series[i] * w
                    w *= step
                new[k] = acc
            series = new
        return series[m]

    total = 0
    for j in range(min(n, r) + 1):
        total += gauss_binom(n, j, Q) * colength_count(r - j)
    return total


@dataclass
class NewtonReport:
    ok: bool
    identity_ok: bool
    witness: dict | None
    cases: int


def newton_verify(
    ctx: FieldCtx,
    x,
    n: int,
    r: int,
    test_lattices: Sequence[Lattice] | None = None,
    fault: str | None = None,
) -> NewtonReport:
    """Check the Newton recurrence P = 0 on each test lattice.

    P applies sum_j (-1)^j q_x^(j(j-1)/2) t_local(x, r-j) sigma_j(x) and the
    result must vanish identically as a lattice sum.  The companion
    alternating Gaussian binomial identity is checked alongside for
    1 <= h <= n.  ``fault`` deliberately flips the sign of the j = 1 term so
    harness plumbing can observe a failure.
    """
    x = _validate_prime(ctx, x)
    Q = ctx.q ** (len(x) - 1)
    if test_lattices is None:
        test_lattices = [standard_lattice(ctx, n)]
    witness = None
    ok = True
    cases = 0
    for N in test_lattices:
        if N.n != n:
            raise ValueError("test lattice rank mismatch")
        acc = LatticeSum(ctx, n, {})
        base = LatticeSum.of(N)
        for j in range(min(n, r) + 1):
            coeff = (-1) ** j * Q ** (j * (j - 1) // 2)
            if fault == "newton" and j == 1:
                coeff = -coeff
            term = t_local(x, r - j, sigma_apply(x, j, base))
            acc = acc + coeff * term
        cases += 1
        if not acc.is_zero:
            ok = False
            if witness is None:
                L, c = acc.items()[0]
                witness = {
                    "lattice": N.to_json(),
                    "residue_term": L.to_json(),
                    "residue_mult": c,
                }
    identity_ok = all(alternating_qbinom_sum(h, Q) == 0 for h in range(1, n + 1))
    return NewtonReport(ok=ok and identity_ok, identity_ok=identity_ok,
                        witness=witness, cases=cases)


@dataclass
class MultReport:
    ok: bool
    witness: dict | None
    cases: int


def hecke_mult_verify(
    ctx: FieldCtx,
    chain_a: InvariantType,
    chain_b: InvariantType,
    test_lattices: Sequence[Lattice] | None = None,
) -> MultReport:
    """Check T(J) T(J') = T(J J') for chains with coprime determinants."""
    if len(chain_a) != len(chain_b):
        raise ValueError("chains must have equal length")
    da, db = chain_a.det(), chain_b.det()
    if ctx.pgcd(da.coeffs, db.coeffs) != (1,):
        raise ValueError("chain determinants must be coprime")
    n = len(chain_a)
    if test_lattices is None:
        test_lattices = [standard_lattice(ctx, n)]
    prod = chain_a.pointwise_mul(chain_b)
    ok = True
    witness = None
    cases = 0
    for N in test_lattices:
        base = LatticeSum.of(N)
        lhs = t_chain(chain_a, t_chain(chain_b, base))
        rhs = t_chain(prod, base)
        cases += 1
        if lhs != rhs:
            ok = False
            if witness is None:
                diff = lhs - rhs
                L, c = diff.items()[0]
                witness = {
                    "lattice": N.to_json(),
                    "residue_term": L.to_json(),
                    "residue_mult": c,
                }
    return MultReport(ok=ok, witness=witness, cases=cases)


def random_sublattice(ctx: FieldCtx, n: int, seed: int, max_deg: int = 1) -> Lattice:
    """Deterministic pseudo random canonical lattice, for test batteries."""
    rng = random.Random(_mix(seed, ctx.q, n, max_deg))
    q = ctx.q
    rows = []
    diag_degs = [rng.randrange(0, max_deg + 1) for _ in range(n)]
    for i in range(n):
        row = [()] * n
        d = diag_degs[i]
        row[i] = tuple(rng.randrange(q) for _ in range(d)) + (1,)
        rows.append(row)
    for j in range(1, n):
        dj = diag_degs[j]
        for i in range(j):
            row_entry = tuple(rng.randrange(q) for _ in range(dj))
            rows[i][j] = ctx.pvalidate(row_entry)
    return _canonical_from_triangular(ctx, n, rows)
