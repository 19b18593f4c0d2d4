"""The Carlitz module, its torsion polynomials, and the torsion algebra.

The Carlitz module is the F_q-algebra map a -> phi_a from A = F_q[t] into
skew polynomials in the q-power Frobenius tau, pinned down by phi_t = tau + t
and the twist rule tau * b = b^q * tau.  Substituting tau^i -> X^(q^i) turns
phi_a into the additive torsion polynomial of a, whose roots are the
a-torsion of the module.  The primitive part Psi_I of the torsion polynomial
of I plays the role of a cyclotomic polynomial: phi_I(X) is the product of
Psi_g over the monic divisors g, every division along the way being exact,
and deg Psi_I equals the order of the unit group mod I.

Torsion points are handled symbolically inside F_q(t)[X] / Psi_I, never
through root finding in a completion: the algebra carries exact rational
function coefficients (reduced, monic denominator) and inverts elements by
the extended Euclidean algorithm.  On top of that sits the tensor square
F_q(t)[X, Y] / (Psi(X), Psi(Y)) and the split element

    u = sum_j m_j (delta_j x 1)(1 x delta_j)^(-1)  -  1

attached to a split squarefree modulus p via its partial fraction weights
m_j = 1/p'(a_j), together with the consistency checks that make the
construction meaningful: invertibility of each delta_j, the torsion relation
phi_(t-a_j)(delta_j) = 0, and the diagonal specialization of u.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fieldcore import FieldCtx, Poly
from .groupring import unit_group

__all__ = [
    "SkewPoly",
    "AddPoly",
    "carlitz_map",
    "torsion_poly",
    "psi_cyclotomic",
    "RatFunc",
    "TorsionAlgebra",
    "AlgElem",
    "galois_act",
    "partial_fractions",
    "split_tensor_element",
    "SplitElementReport",
]


class SkewPoly:
    """Polynomial in the Frobenius symbol tau with coefficients in F_q[t].

    Multiplication uses tau * b = b^q * tau, so these compose as additive
    operators rather than commute.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        cs = [c.coeffs if isinstance(c, Poly) else ctx.pvalidate(c) for c in coeffs]
        while cs and cs[-1] == ():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "SkewPoly":
        return cls(ctx, [])

    @classmethod
    def constant(cls, ctx: FieldCtx, c) -> "SkewPoly":
        return cls(ctx, [c])

    @classmethod
    def tau(cls, ctx: FieldCtx) -> "SkewPoly":
        return cls(ctx, [(), (1,)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> tuple:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ()

    def __add__(self, other):
        if not isinstance(other, SkewPoly) or other.ctx != self.ctx:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        padd = self.ctx.padd
        return SkewPoly(self.ctx, [padd(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __sub__(self, other):
        if not isinstance(other, SkewPoly) or other.ctx != self.ctx:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        psub = self.ctx.psub
        return SkewPoly(self.ctx, [psub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def scale(self, c: int) -> "SkewPoly":
        pscale = self.ctx.pscale
        return SkewPoly(self.ctx, [pscale(a, c) for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, SkewPoly) or other.ctx != self.ctx:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return SkewPoly.zero(self.ctx)
        ctx = self.ctx
        out = [()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                out[i + j] = ctx.padd(out[i + j], ctx.pmul(a, ctx.pfrob(b, i)))
        return SkewPoly(ctx, out)

    def __eq__(self, other):
        return (
            isinstance(other, SkewPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.q, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "SkewPoly(0)"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(Poly(self.ctx, c))
            if i == 0:
                parts.append(f"({cs})")
            elif i == 1:
                parts.append(f"({cs})*tau")
            else:
                parts.append(f"({cs})*tau^{i}")
        return "SkewPoly(" + " + ".join(parts) + ")"

    def to_json(self) -> list:
        return [[i, list(c)] for i, c in enumerate(self.coeffs) if c]


class AddPoly:
    """Additive polynomial sum_i c_i X^(q^i) with coefficients in F_q[t]."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        cs = [c.coeffs if isinstance(c, Poly) else ctx.pvalidate(c) for c in coeffs]
        while cs and cs[-1] == ():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def from_skew(cls, s: SkewPoly) -> "AddPoly":
        return cls(s.ctx, s.coeffs)

    @property
    def frobenius_degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        if not isinstance(other, AddPoly) or other.ctx != self.ctx:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        padd = self.ctx.padd

        def at(cs, i):
            return cs[i] if i < len(cs) else ()

        return AddPoly(self.ctx, [padd(at(self.coeffs, i), at(other.coeffs, i))
                                  for i in range(n)])

    def __eq__(self, other):
        return (
            isinstance(other, AddPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.q, self.coeffs))

    def to_dense(self) -> list[tuple]:
        """Coefficient list in X (little endian), entries in F_q[t]."""
        if not self.coeffs:
            return []
        q = self.ctx.q
        out = [()] * (q ** (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[q ** i] = c
        return out

    def eval_elem(self, e: "AlgElem") -> "AlgElem":
        """Evaluate at an element of a torsion algebra (or any AlgElem)."""
        alg = e.algebra
        acc = alg.zero()
        power = e
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + power.scale_poly(c)
            if i + 1 < len(self.coeffs):
                power = power.frob_power()
        return acc

    def __repr__(self):
        q = self.ctx.q
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(Poly(self.ctx, c))
            mono = "X" if i == 0 else f"X^{q ** i}"
            parts.append(f"({cs})*{mono}")
        return "AddPoly(" + (" + ".join(parts) if parts else "0") + ")"

    def to_json(self) -> list:
        return [[i, list(c)] for i, c in enumerate(self.coeffs) if c]


def carlitz_map(ctx: FieldCtx, a) -> SkewPoly:
    """phi_a, built from phi_t = tau + t by F_q-linearity in the powers of t."""
    if isinstance(a, Poly):
        a = a.coeffs
    a = ctx.pvalidate(a)
    phi_t = SkewPoly(ctx, [(0, 1), (1,)])
    acc = SkewPoly.zero(ctx)
    power = SkewPoly.constant(ctx, (1,))
    for i, c in enumerate(a):
        if c:
            acc = acc + power.scale(c)
        if i + 1 < len(a):
            power = phi_t * power
    return acc


def torsion_poly(ctx: FieldCtx, a) -> AddPoly:
    """The additive polynomial whose roots are the a-torsion of the module."""
    if isinstance(a, Poly):
        a = a.coeffs
    a = ctx.pvalidate(a)
    if not a:
        raise ValueError("torsion polynomial of zero is not defined")
    return AddPoly.from_skew(carlitz_map(ctx, a))


# ---------------------------------------------------------------------------
# dense polynomials in X over F_q[t]: just enough for the exact divisions


def _xstrip(cs: list) -> list:
    while cs and cs[-1] == ():
        cs.pop()
    return cs


def _xmul(ctx: FieldCtx, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [()] * (len(a) + len(b) - 1)
    padd, pmul = ctx.padd, ctx.pmul
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if not cb:
                continue
            out[i + j] = padd(out[i + j], pmul(ca, cb))
    return _xstrip(out)


def _xdivmod_monic(ctx: FieldCtx, a: list, b: list) -> tuple[list, list]:
    """Divide by a divisor whose leading X coefficient is the constant 1."""
    assert b and b[-1] == (1,)
    rem = list(a)
    db = len(b) - 1
    quot = [()] * max(len(rem) - db, 0)
    psub, pmul = ctx.psub, ctx.pmul
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if not c:
            continue
        quot[i - db] = c
        for j in range(db + 1):
            if b[j]:
                rem[i - db + j] = psub(rem[i - db + j], pmul(c, b[j]))
    return _xstrip(quot), _xstrip(rem)


_PSI_CACHE: dict = {}


def psi_cyclotomic(ctx: FieldCtx, I) -> list[Poly]:
    """Primitive I-torsion polynomial: the factor of phi_I(X) not dividing
    the torsion polynomial of any proper divisor.

    Computed by exact division: phi_I(X) divided by Psi_g for every proper
    monic divisor g (including g = 1, whose factor is X).  Any nonzero
    remainder would signal an implementation bug and raises.  Returns the
    dense X-coefficient list, leading coefficient the constant 1.
    """
    if isinstance(I, Poly):
        I = I.coeffs
    I = ctx.pvalidate(I)
    if len(I) < 2 or I[-1] != 1:
        raise ValueError("modulus must be monic of degree at least 1")
    dense = _psi_dense(ctx, I)
    return [Poly(ctx, c) for c in dense]


def _psi_dense(ctx: FieldCtx, I: tuple) -> list:
    key = (ctx, I)
    hit = _PSI_CACHE.get(key)
    if hit is not None:
        return hit
    if I == (1,):
        result = [(), (1,)]  # phi_1(X) = X
    else:
        num = torsion_poly(ctx, I).to_dense()
        for g in ctx.monic_divisors(I):
            if g == I:
                continue
            quot, rem = _xdivmod_monic(ctx, num, _psi_dense(ctx, g))
            if rem:
                raise ArithmeticError(
                    "primitive torsion factor does not divide exactly"
                )
            num = quot
        result = num
    _PSI_CACHE[key] = result
    return result


# ---------------------------------------------------------------------------
# rational functions over F_q


class RatFunc:
    """Reduced fraction of polynomials over F_q, denominator monic."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: FieldCtx, num, den=(1,)):
        if isinstance(num, Poly):
            num = num.coeffs
        if isinstance(den, Poly):
            den = den.coeffs
        num = ctx.pvalidate(num)
        den = ctx.pvalidate(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = (1,)
        else:
            g = ctx.pgcd(num, den)
            if g != (1,):
                num = ctx.pdivmod(num, g)[0]
                den = ctx.pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                inv = ctx.inv_table[lead]
                num = ctx.pscale(num, inv)
                den = ctx.pscale(den, inv)
        self.ctx = ctx
        self.num = num
        self.den = den

    @classmethod
    def from_elem(cls, ctx: FieldCtx, e: int) -> "RatFunc":
        return cls(ctx, (e,) if e else ())

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other):
        if not isinstance(other, RatFunc) or other.ctx != self.ctx:
            return NotImplemented
        ctx = self.ctx
        num = ctx.padd(ctx.pmul(self.num, other.den), ctx.pmul(other.num, self.den))
        return RatFunc(ctx, num, ctx.pmul(self.den, other.den))

    def __sub__(self, other):
        if not isinstance(other, RatFunc) or other.ctx != self.ctx:
            return NotImplemented
        ctx = self.ctx
        num = ctx.psub(ctx.pmul(self.num, other.den), ctx.pmul(other.num, self.den))
        return RatFunc(ctx, num, ctx.pmul(self.den, other.den))

    def __neg__(self):
        return RatFunc(self.ctx, self.ctx.pneg(self.num), self.den)

    def __mul__(self, other):
        if not isinstance(other, RatFunc) or other.ctx != self.ctx:
            return NotImplemented
        ctx = self.ctx
        return RatFunc(ctx, ctx.pmul(self.num, other.num), ctx.pmul(self.den, other.den))

    def __truediv__(self, other):
        if not isinstance(other, RatFunc) or other.ctx != self.ctx:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        ctx = self.ctx
        return RatFunc(ctx, ctx.pmul(self.num, other.den), ctx.pmul(self.den, other.num))

    def inv(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("zero has no inverse")
        return RatFunc(self.ctx, self.den, self.num)

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.ctx == other.ctx
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.ctx.q, self.num, self.den))

    def __repr__(self):
        n = str(Poly(self.ctx, self.num))
        if self.den == (1,):
            return n
        return f"({n})/({Poly(self.ctx, self.den)})"

    def to_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}


# ---------------------------------------------------------------------------
# the torsion algebra and its tensor square


def _fp_strip(cs: list) -> list:
    while cs and cs[-1].is_zero:
        cs.pop()
    return cs


def _fp_mul(a: list, b: list, zero: RatFunc) -> list:
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca.is_zero:
            continue
        for j, cb in enumerate(b):
            if not cb.is_zero:
                out[i + j] = out[i + j] + ca * cb
    return _fp_strip(out)


def _fp_divmod(a: list, b: list, zero: RatFunc) -> tuple[list, list]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(a)
    db = len(b) - 1
    lead_inv = b[-1].inv()
    quot = [zero] * max(len(rem) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c.is_zero:
            continue
        f = c * lead_inv
        quot[i - db] = f
        for j in range(db + 1):
            rem[i - db + j] = rem[i - db + j] - f * b[j]
    return _fp_strip(quot), _fp_strip(rem)


class AlgElem:
    """Residue class in F_q(t)[X] / Psi, held as coefficients below deg Psi."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "TorsionAlgebra", coeffs):
        D = algebra.dim
        cs = list(coeffs)
        if len(cs) > D:
            raise ValueError("coefficient list exceeds the algebra dimension")
        cs.extend([algebra._zero] * (D - len(cs)))
        self.algebra = algebra
        self.coeffs = tuple(cs)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def __add__(self, other):
        self.algebra._match(other)
        return AlgElem(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self.algebra._match(other)
        return AlgElem(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        self.algebra._match(other)
        alg = self.algebra
        raw = _fp_mul(list(self.coeffs), list(other.coeffs), alg._zero)
        return alg._from_raw(raw)

    def scale(self, f: RatFunc) -> "AlgElem":
        return AlgElem(self.algebra, [c * f for c in self.coeffs])

    def scale_poly(self, p) -> "AlgElem":
        return self.scale(RatFunc(self.algebra.ctx, p))

    def frob_power(self) -> "AlgElem":
        """Raise to the q-th power."""
        q = self.algebra.ctx.q
        out = self.algebra.one()
        base = self
        k = q
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def pow_int(self, k: int) -> "AlgElem":
        if k < 0:
            return self.inv().pow_int(-k)
        out = self.algebra.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inv(self) -> "AlgElem":
        """Inverse by the extended Euclidean algorithm; raises if the element
        shares a factor with Psi."""
        alg = self.algebra
        zero = alg._zero
        r0, r1 = list(alg._psi), _fp_strip(list(self.coeffs))
        if not r1:
            raise ZeroDivisionError("zero element has no inverse")
        s0, s1 = [], [RatFunc(alg.ctx, (1,))]
        while r1:
            q, r = _fp_divmod(r0, r1, zero)
            r0, r1 = r1, r
            qs1 = _fp_mul(q, s1, zero)
            new_s = list(s0)
            for i, c in enumerate(qs1):
                if i < len(new_s):
                    new_s[i] = new_s[i] - c
                else:
                    new_s.append(zero - c)
            s0, s1 = s1, _fp_strip(new_s)
        if len(r0) != 1:
            raise ZeroDivisionError(
                "element is a zero divisor: gcd with Psi has positive degree"
            )
        unit_inv = r0[0].inv()
        return alg._from_raw([c * unit_inv for c in s0])

    def __eq__(self, other):
        return (
            isinstance(other, AlgElem)
            and self.algebra is other.algebra
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero:
                continue
            mono = "" if i == 0 else ("*X" if i == 1 else f"*X^{i}")
            parts.append(f"({c!r}){mono}")
        return "AlgElem(" + (" + ".join(parts) if parts else "0") + ")"

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


class TorsionAlgebra:
    """F_q(t)[X] / Psi_I with exact rational function coefficients."""

    def __init__(self, ctx: FieldCtx, I):
        if isinstance(I, Poly):
            I = I.coeffs
        I = ctx.pvalidate(I)
        psi = _psi_dense(ctx, I)
        self.ctx = ctx
        self.I = I
        self._zero = RatFunc(ctx, ())
        self._psi = [RatFunc(ctx, c) for c in psi]
        self.dim = len(psi) - 1

    def zero(self) -> AlgElem:
        return AlgElem(self, [])

    def one(self) -> AlgElem:
        return AlgElem(self, [RatFunc(self.ctx, (1,))])

    def x_gen(self) -> AlgElem:
        if self.dim < 2:
            # X reduces to a constant when Psi is linear in X
            raw = _fp_divmod([self._zero, RatFunc(self.ctx, (1,))], self._psi, self._zero)[1]
            return AlgElem(self, raw)
        return AlgElem(self, [self._zero, RatFunc(self.ctx, (1,))])

    def constant(self, f: RatFunc) -> AlgElem:
        return AlgElem(self, [f])

    def _match(self, other):
        if not isinstance(other, AlgElem) or other.algebra is not self:
            raise ValueError("elements belong to different algebras")

    def _from_raw(self, raw: list) -> AlgElem:
        if len(raw) > self.dim:
            raw = _fp_divmod(raw, self._psi, self._zero)[1]
        return AlgElem(self, raw)

    def psi_polys(self) -> list[Poly]:
        return [Poly(self.ctx, c.num) for c in self._psi]

    def __repr__(self):
        return f"TorsionAlgebra(q={self.ctx.q}, I={Poly(self.ctx, self.I)}, dim={self.dim})"


def galois_act(alg: TorsionAlgebra, a, e: AlgElem) -> AlgElem:
    """Action of a unit class a on torsion: X -> phi_a(X), extended to e.

    The action factors through a mod I and requires gcd(a, I) = 1.
    """
    ctx = alg.ctx
    if isinstance(a, Poly):
        a = a.coeffs
    a = ctx.pvalidate(a)
    if ctx.pgcd(a, alg.I) != (1,):
        raise ValueError("the acting polynomial must be coprime to the modulus")
    a = ctx.pmod(a, alg.I)
    alg._match(e)
    image_x = torsion_poly(ctx, a).eval_elem(alg.x_gen())
    # substitute X -> image_x in the coefficient expansion of e
    acc = alg.zero()
    power = alg.one()
    for i, c in enumerate(e.coeffs):
        if not c.is_zero:
            acc = acc + power.scale(c)
        if i + 1 < len(e.coeffs):
            power = power * image_x
    return acc


def partial_fractions(ctx: FieldCtx, p) -> list[tuple[int, int]]:
    """Roots and weights of 1/p for a monic split squarefree p.

    Returns pairs (a_j, m_j) of field elements with m_j = 1/p'(a_j), sorted
    by root encoding.  The exact reconstruction sum_j m_j p(t)/(t - a_j) = 1
    is verified before returning.
    """
    if isinstance(p, Poly):
        p = p.coeffs
    p = ctx.pvalidate(p)
    if len(p) < 2 or p[-1] != 1:
        raise ValueError("p must be monic of degree at least 1")
    _, factors = ctx.pfactor(p)
    roots = []
    for f, mult in factors:
        if len(f) != 2 or mult != 1:
            raise ValueError("p must split into distinct degree-1 factors")
        roots.append(ctx.neg_table[f[0]])
    roots.sort()
    deriv = ctx.pderiv(p)
    out = []
    for a in roots:
        val = ctx.peval(deriv, a)
        if val == 0:
            raise ValueError("p must be squarefree")
        out.append((a, ctx.inv_table[val]))
    # exact reconstruction check
    total = ()
    for a, m in out:
        cof, rem = ctx.pdivmod(p, ctx.psub((0, 1), (a,)))
        assert rem == ()
        total = ctx.padd(total, ctx.pscale(cof, m))
    if total != (1,):
        raise ArithmeticError("partial fraction reconstruction failed")
    return out


@dataclass
class SplitElementReport:
    ok: bool
    checks: list = field(default_factory=list)
    weights: list = field(default_factory=list)
    diagonal_constant: RatFunc | None = None
    tensor: list | None = None
    dim: int = 0

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": self.checks,
            "weights": self.weights,
            "diagonal_constant": (
                self.diagonal_constant.to_json() if self.diagonal_constant else None
            ),
            "dim": self.dim,
            "tensor": self.tensor,
        }


def split_tensor_element(ctx: FieldCtx, p) -> SplitElementReport:
    """Build the split element of the tensor square algebra for a split
    squarefree modulus p, and run its consistency checks.

    For each root a_j of p let delta_j be the image of X under the torsion
    polynomial of p/(t - a_j), taken mod Psi_p.  The element

        u = sum_j m_j (delta_j x 1)(1 x delta_j)^(-1) - 1

    lives in F_q(t)[X, Y]/(Psi(X), Psi(Y)); since each factor depends on one
    variable only, the product is an outer product of coefficient vectors.
    Checks recorded: invertibility of each delta_j, the torsion relation
    phi_(t-a_j)(delta_j) = 0, and that the diagonal specialization X = Y
    sends u to the constant (sum_j m_j) - 1.
    """
    if isinstance(p, Poly):
        p = p.coeffs
    p = ctx.pvalidate(p)
    pf = partial_fractions(ctx, p)
    alg = TorsionAlgebra(ctx, p)
    D = alg.dim
    checks: list[dict] = []
    ok = True

    deltas: list[AlgElem] = []
    invs: list[AlgElem | None] = []
    x = alg.x_gen()
    for a, _ in pf:
        cof, rem = ctx.pdivmod(p, ctx.psub((0, 1), (a,)))
        assert rem == ()
        delta = torsion_poly(ctx, cof).eval_elem(x)
        deltas.append(delta)
        try:
            invs.append(delta.inv())
            entry = {"check": "delta_invertible", "root": a, "status": "pass"}
        except ZeroDivisionError as exc:
            invs.append(None)
            ok = False
            entry = {
                "check": "delta_invertible",
                "root": a,
                "status": "fail",
                "reason": str(exc),
            }
        checks.append(entry)

    for (a, _), delta in zip(pf, deltas):
        lin = ctx.psub((0, 1), (a,))
        residue = torsion_poly(ctx, lin).eval_elem(delta)
        good = residue.is_zero
        ok = ok and good
        checks.append({
            "check": "torsion_relation",
            "root": a,
            "status": "pass" if good else "fail",
        })

    tensor = None
    diag_const = None
    if all(v is not None for v in invs):
        # u[i][k] multiplies X^i Y^k
        u = [[alg._zero for _ in range(D)] for _ in range(D)]
        for (a, m), delta, invd in zip(pf, deltas, invs):
            mf = RatFunc.from_elem(ctx, m)
            for i, ci in enumerate(delta.coeffs):
                if ci.is_zero:
                    continue
                row = u[i]
                for k, ck in enumerate(invd.coeffs):
                    if not ck.is_zero:
                        row[k] = row[k] + mf * ci * ck
        one = RatFunc(ctx, (1,))
        u[0][0] = u[0][0] - one

        # diagonal specialization X = Y
        diag_raw = [alg._zero] * (2 * D - 1 if D else 1)
        for i in range(D):
            for k in range(D):
                c = u[i][k]
                if not c.is_zero:
                    diag_raw[i + k] = diag_raw[i + k] + c
        diag = alg._from_raw(_fp_strip(diag_raw))
        msum = 0
        for _, m in pf:
            msum = ctx.add_table[msum][m]
        expected = alg.constant(
            RatFunc.from_elem(ctx, msum) - one
        )
        good = diag == expected
        ok = ok and good
        diag_const = expected.coeffs[0]
        checks.append({
            "check": "diagonal_specialization",
            "status": "pass" if good else "fail",
            "expected_constant": diag_const.to_json(),
        })
        tensor = [[c.to_json() for c in row] for row in u]

    return SplitElementReport(
        ok=ok,
        checks=checks,
        weights=[[a, m] for a, m in pf],
        diagonal_constant=diag_const,
        tensor=tensor,
        dim=D,
    )
