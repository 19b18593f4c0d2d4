"""Exact arithmetic over small finite fields F_q and dense polynomials in F_q[t].

Conventions used throughout the package:

* A field element of F_q, q = p^m, is encoded as an integer in [0, q).  The
  base-p digits of the integer are the coordinates of the element in the
  polynomial basis 1, u, ..., u^(m-1) of F_p[u] modulo the canonical modulus.
  For prime fields (m = 1) the encoding is the usual residue in [0, p).
* The canonical modulus of degree m is the lexicographically smallest monic
  irreducible polynomial over F_p, where polynomials are ordered by the
  integer encoding of their coefficient sequence (low degree digits first).
  For m = 1 the modulus is u itself.
* A polynomial in F_q[t] is a tuple of encoded coefficients, little endian,
  with no trailing zeros.  The zero polynomial is the empty tuple and its
  degree is the sentinel -inf.

The low level tuple functions live on :class:`FieldCtx` so hot loops can work
on plain tuples; :class:`Poly` is a thin immutable wrapper that provides the
operator interface.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

__all__ = [
    "NEG_INF",
    "FieldCtx",
    "Poly",
    "field_context",
    "poly_divmod",
    "poly_gcd",
    "poly_factor",
    "monic_enum",
]

NEG_INF = float("-inf")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _mix(*values: int) -> int:
    """Fold integers into a 64 bit seed, independent of hash randomization."""
    h = 0x9E3779B97F4A7C15
    for v in values:
        v &= 0xFFFFFFFFFFFFFFFF
        h ^= v
        h = (h * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        h ^= h >> 31
    return h


# ---------------------------------------------------------------------------
# F_p[u] helpers used only while building a context (integer coefficients
# reduced mod p, little endian lists, no tables required).

def _fp_strip(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a

def _fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _fp_strip(out)

def _fp_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    while len(r) - 1 >= db and r:
        c = (r[-1] * inv) % p
        shift = len(r) - 1 - db
        for j in range(db + 1):
            r[shift + j] = (r[shift + j] - c * b[j]) % p
        _fp_strip(r)
    return r

def _fp_irreducible(f: Sequence[int], p: int) -> bool:
    """Trial division test, adequate for the tiny moduli we construct."""
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    # check roots first, then divisors of higher degree
    for g_deg in range(1, d // 2 + 1):
        for key in range(p ** g_deg):
            g = [key // p ** i % p for i in range(g_deg)] + [1]
            if not _fp_mod(f, g, p):
                return False
    return True


class FieldCtx:
    """A finite field F_q together with tuple level polynomial arithmetic.

    Instances are cheap value objects: equality and hashing only look at
    (p, m, modulus).  The optional seed feeds the deterministic retries of
    equal degree factorization and is not part of the identity.
    """

    __slots__ = (
        "p", "m", "q", "modulus", "seed",
        "add_table", "sub_table", "mul_table", "neg_table", "inv_table",
        "_irred_cache",
    )

    def __init__(self, p: int, m: int = 1, seed: int = 0):
        if not _is_prime(p):
            raise ValueError(f"p must be prime, got {p}")
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        q = p ** m
        if q > 4096:
            raise ValueError(f"field of size {q} exceeds the table based limit 4096")
        self.p = p
        self.m = m
        self.q = q
        self.seed = seed
        self.modulus = self._canonical_modulus()
        self._build_tables()
        self._irred_cache: dict[int, tuple] = {}

    def _canonical_modulus(self) -> tuple[int, ...]:
        p, m = self.p, self.m
        if m == 1:
            return (0, 1)
        for key in range(p ** m):
            f = [key // p ** i % p for i in range(m)] + [1]
            if _fp_irreducible(f, p):
                return tuple(f)
        raise AssertionError("no irreducible modulus found")

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q

        def digits(e: int) -> list[int]:
            return [e // p ** i % p for i in range(m)]

        def undigits(ds: Sequence[int]) -> int:
            return sum(c * p ** i for i, c in enumerate(ds))

        mod = list(self.modulus)
        add = [[0] * q for _ in range(q)]
        sub = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        neg = [0] * q
        inv = [0] * q
        for a in range(q):
            da = digits(a)
            neg[a] = undigits([(-c) % p for c in da])
            for b in range(q):
                db_ = digits(b)
                add[a][b] = undigits([(x + y) % p for x, y in zip(da, db_)])
                sub[a][b] = undigits([(x - y) % p for x, y in zip(da, db_)])
                if m == 1:
                    mul[a][b] = (a * b) % p
                else:
                    prod = _fp_mod(_fp_mul(_fp_strip(list(da)), _fp_strip(list(db_)), p), mod, p)
                    prod += [0] * (m - len(prod))
                    mul[a][b] = undigits(prod)
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self.add_table = add
        self.sub_table = sub
        self.mul_table = mul
        self.neg_table = neg
        self.inv_table = inv

    # -- field element helpers ---------------------------------------------

    def e_int(self, k: int) -> int:
        """Image of the integer k in the prime subfield."""
        return k % self.p

    def e_pow(self, a: int, k: int) -> int:
        if k < 0:
            a = self.inv_table[a]
            k = -k
        out, base = 1, a
        mt = self.mul_table
        while k:
            if k & 1:
                out = mt[out][base]
            base = mt[base][base]
            k >>= 1
        return out

    # -- tuple polynomial arithmetic ---------------------------------------

    def pvalidate(self, coeffs: Iterable[int]) -> tuple[int, ...]:
        out = list(coeffs)
        for c in out:
            if not isinstance(c, int) or not 0 <= c < self.q:
                raise ValueError(f"coefficient {c!r} is not an encoded element of GF({self.q})")
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def padd(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        at = self.add_table
        out = [at[x][y] for x, y in zip(a, b)]
        out.extend(a[len(b):])
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def psub(self, a, b):
        st = self.sub_table
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else 0
            y = b[i] if i < len(b) else 0
            out.append(st[x][y])
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def pneg(self, a):
        nt = self.neg_table
        return tuple(nt[c] for c in a)

    def pscale(self, a, c: int):
        if c == 0:
            return ()
        if c == 1:
            return tuple(a)
        row = self.mul_table[c]
        return tuple(row[x] for x in a)

    def pmul(self, a, b):
        if not a or not b:
            return ()
        at, mt = self.add_table, self.mul_table
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                row = mt[ca]
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] = at[out[i + j]][row[cb]]
        return tuple(out)

    def pdivmod(self, a, b):
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        da, db = len(a) - 1, len(b) - 1
        if da < db:
            return (), tuple(a)
        st, mt = self.sub_table, self.mul_table
        inv = self.inv_table[b[-1]]
        r = list(a)
        quo = [0] * (da - db + 1)
        for i in range(da - db, -1, -1):
            c = mt[r[i + db]][inv]
            if c:
                quo[i] = c
                row = mt[c]
                for j in range(db + 1):
                    if b[j]:
                        r[i + j] = st[r[i + j]][row[b[j]]]
        rem = r[:db]
        while rem and rem[-1] == 0:
            rem.pop()
        while quo and quo[-1] == 0:
            quo.pop()
        return tuple(quo), tuple(rem)

    def pmod(self, a, b):
        return self.pdivmod(a, b)[1]

    def pmonic(self, a):
        if not a or a[-1] == 1:
            return tuple(a)
        return self.pscale(a, self.inv_table[a[-1]])

    def pgcd(self, a, b):
        a, b = tuple(a), tuple(b)
        while b:
            a, b = b, self.pmod(a, b)
        return self.pmonic(a)

    def ppow_mod(self, a, e: int, mod):
        out = (1,)
        base = self.pmod(a, mod)
        while e:
            if e & 1:
                out = self.pmod(self.pmul(out, base), mod)
            base = self.pmod(self.pmul(base, base), mod)
            e >>= 1
        return out

    def pderiv(self, a):
        p = self.p
        mt = self.mul_table
        out = [mt[a[i]][i % p] for i in range(1, len(a))]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def peval(self, a, x: int) -> int:
        acc = 0
        at, mt = self.add_table, self.mul_table
        for c in reversed(a):
            acc = at[mt[acc][x]][c]
        return acc

    def pfrob(self, a, e: int = 1):
        """a(t) raised to the q^e power; coefficients of F_q are Frobenius fixed."""
        if not a:
            return ()
        step = self.q ** e
        out = [0] * ((len(a) - 1) * step + 1)
        for i, c in enumerate(a):
            out[i * step] = c
        return tuple(out)

    def pkey(self, a) -> int:
        q = self.q
        key = 0
        for c in reversed(a):
            key = key * q + c
        return key

    def pfrom_key(self, key: int):
        q = self.q
        out = []
        while key:
            out.append(key % q)
            key //= q
        return tuple(out)

    def monic_tuples(self, d: int, coprime_to=None) -> Iterator[tuple[int, ...]]:
        """Monic degree d tuples in canonical (integer encoding) order."""
        if d < 0:
            return
        q = self.q
        if d == 0:
            if coprime_to is None or len(coprime_to) >= 1:
                yield (1,)
            return
        for key in range(q ** d):
            f = self.pfrom_key(key)
            f = f + (0,) * (d - len(f)) + (1,)
            if coprime_to is None or self.pgcd(f, coprime_to) == (1,):
                yield f

    def is_irreducible(self, f) -> bool:
        """Rabin test: t^(q^d) = t mod f and no splitting at proper prime indices."""
        d = len(f) - 1
        if d <= 0:
            return False
        t = (0, 1)
        h = self.ppow_mod(t, self.q ** d, f)
        if h != self.pmod(t, f):
            return False
        for ell in {e for e in range(2, d + 1) if d % e == 0 and _is_prime(e)}:
            h = self.ppow_mod(t, self.q ** (d // ell), f)
            if self.pgcd(self.psub(h, t), f) != (1,):
                return False
        return True

    def monic_irreducibles(self, d: int) -> tuple:
        """All monic irreducibles of degree d, cached, canonical order."""
        if d not in self._irred_cache:
            self._irred_cache[d] = tuple(
                f for f in self.monic_tuples(d) if self.is_irreducible(f)
            )
        return self._irred_cache[d]

    # -- factorization ------------------------------------------------------

    def _pth_root(self, a):
        """Inverse of the p power map on a polynomial in t^p."""
        e = self.p ** ((self.m - 1) if self.m > 1 else 0)
        out = []
        for i in range(0, len(a), self.p):
            out.append(self.e_pow(a[i], e) if self.m > 1 else a[i])
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def _squarefree_parts(self, f):
        """List of (squarefree monic, multiplicity), pairwise coprime."""
        out = []
        df = self.pderiv(f)
        if not df:
            for g, mult in self._squarefree_parts(self._pth_root(f)):
                out.append((g, mult * self.p))
            return out
        c = self.pgcd(f, df)
        w = self.pdivmod(f, c)[0]
        i = 1
        while len(w) > 1:
            y = self.pgcd(w, c)
            z = self.pdivmod(w, y)[0]
            if len(z) > 1:
                out.append((self.pmonic(z), i))
            w = y
            c = self.pdivmod(c, y)[0]
            i += 1
        if len(c) > 1:
            for g, mult in self._squarefree_parts(self._pth_root(c)):
                out.append((g, mult * self.p))
        return out

    def _distinct_degree(self, f):
        """Split a squarefree monic f into (product of degree d factors, d) parts."""
        out = []
        h = (0, 1)
        rest = f
        d = 0
        while len(rest) - 1 >= 2 * (d + 1):
            d += 1
            h = self.ppow_mod(h, self.q, rest)
            g = self.pgcd(self.psub(h, (0, 1)), rest)
            if len(g) > 1:
                out.append((g, d))
                rest = self.pdivmod(rest, g)[0]
                h = self.pmod(h, rest)
        if len(rest) > 1:
            out.append((rest, len(rest) - 1))
        return out

    def _equal_degree(self, f, d: int):
        """Cantor Zassenhaus splitting with deterministic seeded retries."""
        n = len(f) - 1
        if n == d:
            return [f]
        import random

        rng = random.Random(_mix(self.seed, self.p, self.q, self.pkey(f), d))
        q = self.q
        while True:
            a = tuple(rng.randrange(q) for _ in range(n))
            while a and a[-1] == 0:
                a = a[:-1]
            if len(a) <= 1:
                continue
            g = self.pgcd(a, f)
            if 1 < len(g) < len(f):
                split = g
            else:
                if q % 2 == 1:
                    b = self.ppow_mod(a, (q ** d - 1) // 2, f)
                    b = self.psub(b, (1,))
                else:
                    # trace map over F_2 inside F_{q^d}
                    k = self.m * d if self.p == 2 else d
                    b = self.pmod(a, f)
                    acc = b
                    for _ in range(k - 1):
                        b = self.pmod(self.pmul(b, b), f)
                        acc = self.padd(acc, b)
                    b = acc
                split = self.pgcd(b, f)
            if 1 < len(split) < len(f):
                left = self.pmonic(split)
                right = self.pdivmod(f, left)[0]
                return self._equal_degree(left, d) + self._equal_degree(right, d)

    def pfactor(self, f):
        """Full factorization of a nonzero tuple polynomial.

        Returns (unit, list of (monic irreducible, multiplicity)) with the
        factors sorted by degree then canonical key.  Deterministic for a
        fixed context seed.
        """
        if not f:
            raise ValueError("cannot factor the zero polynomial")
        unit = f[-1]
        f = self.pmonic(f)
        found: list[tuple[tuple[int, ...], int]] = []
        if len(f) > 1:
            for sqf, mult in self._squarefree_parts(f):
                for prod, d in self._distinct_degree(sqf):
                    for irr in self._equal_degree(prod, d):
                        found.append((self.pmonic(irr), mult))
        found.sort(key=lambda fm: (len(fm[0]), self.pkey(fm[0])))
        return unit, found

    def monic_divisors(self, f):
        """All monic divisors of f in canonical order."""
        _, factors = self.pfactor(f)
        divs = [(1,)]
        for g, mult in factors:
            powers = [(1,)]
            for _ in range(mult):
                powers.append(self.pmul(powers[-1], g))
            divs = [self.pmul(d, pw) for d in divs for pw in powers]
        return sorted(set(divs), key=lambda d: (len(d), self.pkey(d)))

    # -- dunder -------------------------------------------------------------

    def poly(self, coeffs: Iterable[int]) -> "Poly":
        return Poly(self, coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"FieldCtx(GF({self.q}))"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}


class Poly:
    """Immutable dense polynomial over a fixed FieldCtx."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[int]):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "coeffs", ctx.pvalidate(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _wrap(cls, ctx: FieldCtx, coeffs: tuple[int, ...]) -> "Poly":
        obj = object.__new__(cls)
        object.__setattr__(obj, "ctx", ctx)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def key(self) -> int:
        return self.ctx.pkey(self.coeffs)

    def monic(self) -> "Poly":
        return Poly._wrap(self.ctx, self.ctx.pmonic(self.coeffs))

    def evaluate(self, x: int) -> int:
        return self.ctx.peval(self.coeffs, x)

    def derivative(self) -> "Poly":
        return Poly._wrap(self.ctx, self.ctx.pderiv(self.coeffs))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError("polynomials live over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Poly._wrap(self.ctx, self.ctx.padd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        return Poly._wrap(self.ctx, self.ctx.psub(self.coeffs, other.coeffs))

    def __neg__(self):
        return Poly._wrap(self.ctx, self.ctx.pneg(self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        return Poly._wrap(self.ctx, self.ctx.pmul(self.coeffs, other.coeffs))

    def __divmod__(self, other):
        other = self._check(other)
        q, r = self.ctx.pdivmod(self.coeffs, other.coeffs)
        return Poly._wrap(self.ctx, q), Poly._wrap(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial powers are not defined")
        out = Poly._wrap(self.ctx, (1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.q, self.coeffs))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                tpow = "t" if i == 1 else f"t^{i}"
                parts.append(tpow if c == 1 else f"{c}*{tpow}")
        return " + ".join(parts)

    def to_json(self) -> list[int]:
        return list(self.coeffs)


# ---------------------------------------------------------------------------
# module level operations


def field_context(p: int, m: int = 1, seed: int = 0) -> FieldCtx:
    """Build the table backed context for F_{p^m} with its canonical modulus."""
    return FieldCtx(p, m, seed=seed)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder with deg r < deg b."""
    return divmod(a, b)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    a._check(b)
    return Poly._wrap(a.ctx, a.ctx.pgcd(a.coeffs, b.coeffs))


def poly_factor(a: Poly) -> tuple[int, list[tuple[Poly, int]]]:
    """Factor a nonzero polynomial into a unit and monic irreducible powers."""
    unit, factors = a.ctx.pfactor(a.coeffs)
    return unit, [(Poly._wrap(a.ctx, f), mult) for f, mult in factors]


def monic_enum(ctx: FieldCtx, d: int, coprime_to: Poly | None = None) -> Iterator[Poly]:
    """Monic degree d polynomials in canonical order, optionally coprime to a modulus."""
    cop = coprime_to.coeffs if coprime_to is not None else None
    for f in ctx.monic_tuples(d, coprime_to=cop):
        yield Poly._wrap(ctx, f)
