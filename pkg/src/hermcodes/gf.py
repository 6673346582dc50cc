"""Exact arithmetic in the field tower F_p < F_q < F_{q^2} < F_{q^n} < F_{q^2n}.

A single ambient field F_p[x]/(modulus) of degree 2*n*e represents the whole
tower; subfields are subsets cut out by Frobenius fixed-point conditions, so
there is never more than one representation of an element.  Elements are
plain integer codes: the base-p digit encoding of the coefficient vector of
the residue polynomial, constant term first.  Code 0 is the zero element and
code 1 is the multiplicative identity.

The default modulus is chosen deterministically: the candidate coefficient
vectors (c_0, ..., c_{m-1}) of monic degree-m polynomials are scanned in
increasing order of the integer sum(c_i * p^i), and the first irreducible
polynomial whose root x is a primitive element wins.  Identical (p, e, n)
inputs therefore always produce identical towers, and the canonical
generator is always the residue class of x.

FieldTower instances are immutable after construction and safe to share
across threads; every operation is a pure function of its inputs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

# Discrete-log tables are built for fields up to this order; larger fields
# (allowed up to 2**32) fall back to polynomial arithmetic per operation.
_TABLE_LIMIT = 1 << 20
_ORDER_LIMIT = 1 << 32


def _is_prime(v: int) -> bool:
    if v < 2:
        return False
    if v < 4:
        return True
    if v % 2 == 0:
        return False
    f = 3
    while f * f <= v:
        if v % f == 0:
            return False
        f += 2
    return True


def _factorize(v: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs stay below 2**32)."""
    out: dict[int, int] = {}
    f = 2
    while f * f <= v:
        while v % f == 0:
            out[f] = out.get(f, 0) + 1
            v //= f
        f += 1 if f == 2 else 2
    if v > 1:
        out[v] = out.get(v, 0) + 1
    return out


# -- dense F_p[x] helpers -----------------------------------------------------
#
# Used only for modulus search and validation; everything afterwards runs on
# integer codes.  Polynomials are little-endian coefficient tuples.


def _ptrim(a: Sequence[int]) -> tuple[int, ...]:
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return tuple(a[:i])


def _pmulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce modulo the monic polynomial `mod`
    m = len(mod) - 1
    for k in range(len(out) - 1, m - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for j in range(m):
                out[k - m + j] = (out[k - m + j] - c * mod[j]) % p
    return _ptrim(out)


def _ppowmod(a: Sequence[int], k: int, mod: Sequence[int], p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _ptrim(a)
    while k:
        if k & 1:
            result = _pmulmod(result, base, mod, p)
        base = _pmulmod(base, base, mod, p)
        k >>= 1
    return result


def _pmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    a = list(_ptrim(a))
    b = _ptrim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        a = list(_ptrim(a))
        if not a:
            break
    return tuple(a)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _is_irreducible(mod: Sequence[int], p: int) -> bool:
    """Rabin test: x^{p^m} = x mod f, and gcd(x^{p^{m/r}} - x, f) trivial."""
    m = len(mod) - 1
    if m < 1 or mod[-1] != 1:
        return False
    xp = (0, 1)
    powers = []
    for _ in range(m):
        xp = _ppowmod(xp, p, mod, p)
        powers.append(xp)
    if _ptrim(powers[-1]) != (0, 1):
        return False
    for r in _factorize(m):
        k = m // r
        diff = list(powers[k - 1]) + [0, 0]
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(_ptrim(diff), mod, p)
        if len(g) != 1:
            return False
    return True


def _element_order_is(a_poly: Sequence[int], target: int, mod: Sequence[int], p: int) -> bool:
    """True iff the residue class of a_poly has multiplicative order `target`."""
    if _ppowmod(a_poly, target, mod, p) != (1,):
        return False
    for r in _factorize(target):
        if _ppowmod(a_poly, target // r, mod, p) == (1,):
            return False
    return True


class FieldTower:
    """Arithmetic context for F_{q^{2n}} with q = p^e and all tower subfields.

    Do not instantiate directly; use :func:`make_tower`, which owns the
    deterministic default-modulus search and validation.
    """

    __slots__ = ("p", "e", "n", "m", "q", "order", "modulus", "generator",
                 "_exp", "_log", "_digits", "_frob_exp", "_pw", "cache")

    def __init__(self, p: int, e: int, n: int, modulus: tuple[int, ...], generator_poly: tuple[int, ...]):
        self.p = p
        self.e = e
        self.n = n
        self.m = 2 * n * e
        self.q = p ** e
        self.order = p ** self.m
        self.modulus = modulus
        self._pw = [p ** i for i in range(self.m)]
        self.cache: dict = {}  # memo slot for derived per-tower tables

        if self.order <= _TABLE_LIMIT:
            self._build_tables(generator_poly)
        else:
            self._exp = None
            self._log = None
            self._digits = None
            self.generator = self._encode_poly(generator_poly)
        # q^k mod (order-1) for k in 0..2n-1, the Frobenius exponent lattice
        self._frob_exp = [pow(self.q, k, self.order - 1) for k in range(2 * n)]

    # -- representation helpers ------------------------------------------

    def _encode_poly(self, poly: Sequence[int]) -> int:
        return sum(c * w for c, w in zip(poly, self._pw))

    def digits(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of `a` in the power basis, constant term first."""
        if self._digits is not None:
            return self._digits[a]
        out = []
        p = self.p
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def from_digits(self, vec: Iterable[int]) -> int:
        vec = tuple(vec)
        if len(vec) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(vec)}")
        p = self.p
        return sum((c % p) * w for c, w in zip(vec, self._pw))

    def _build_tables(self, generator_poly: tuple[int, ...]) -> None:
        p, m, order = self.p, self.m, self.order
        size = order - 1
        exp = [0] * (2 * size)
        log = [0] * order
        # walk powers of the generator by shift-and-reduce when g is x,
        # otherwise by generic polynomial multiplication
        cur = (1,)
        gen = generator_poly
        for i in range(size):
            code = self._encode_poly(cur)
            exp[i] = code
            exp[i + size] = code
            log[code] = i
            cur = _pmulmod(cur, gen, self.modulus, p)
        if _ptrim(cur) != (1,):
            raise AssertionError("generator order mismatch while building tables")
        self._exp = exp
        self._log = log
        self.generator = exp[1]
        digits = [()] * order
        for a in range(order):
            out = []
            v = a
            for _ in range(m):
                v, r = divmod(v, p)
                out.append(r)
            digits[a] = tuple(out)
        self._digits = digits

    # -- ring operations ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        da, db = self.digits(a), self.digits(b)
        return sum(((x + y) % p) * w for x, y, w in zip(da, db, self._pw))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        return sum(((-x) % p) * w for x, w in zip(self.digits(a), self._pw))

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        p = self.p
        da, db = self.digits(a), self.digits(b)
        return sum(((x - y) % p) * w for x, y, w in zip(da, db, self._pw))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        prod = _pmulmod(self.digits(a), self.digits(b), self.modulus, self.p)
        return self._encode_poly(prod)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._exp is not None:
            return self._exp[self.order - 1 - self._log[a]]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k == 0:
                return 1
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 0
        k %= self.order - 1
        if self._exp is not None:
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        return self._encode_poly(_ppowmod(self.digits(a), k, self.modulus, self.p))

    def scalar(self, c: int) -> int:
        """Embed an integer as an F_p scalar (the constant-digit element)."""
        return c % self.p

    # -- Frobenius, subfields, trace, norm ---------------------------------

    def frobenius(self, a: int, k: int) -> int:
        """a^{q^k}; k is taken modulo 2n, negative k walks backwards."""
        if a == 0:
            return 0
        k %= 2 * self.n
        if k == 0:
            return a
        if self._exp is not None:
            return self._exp[(self._log[a] * self._frob_exp[k]) % (self.order - 1)]
        return self.pow(a, self._frob_exp[k])

    def in_subfield(self, a: int, k: int) -> bool:
        """Membership in F_{q^k} (k must divide 2n)."""
        if (2 * self.n) % k:
            raise ValueError(f"q-degree {k} is not a tower subfield degree")
        return self.frobenius(a, k) == a

    def rel_trace(self, a: int, from_deg: int, to_deg: int) -> int:
        """Trace from F_{q^from_deg} down to F_{q^to_deg}."""
        self._check_rel(a, from_deg, to_deg)
        acc = 0
        for i in range(from_deg // to_deg):
            acc = self.add(acc, self.frobenius(a, to_deg * i))
        return acc

    def rel_norm(self, a: int, from_deg: int, to_deg: int) -> int:
        """Norm from F_{q^from_deg} down to F_{q^to_deg}."""
        self._check_rel(a, from_deg, to_deg)
        if a == 0:
            return 0
        exp = (self.q ** from_deg - 1) // (self.q ** to_deg - 1)
        return self.pow(a, exp)

    def _check_rel(self, a: int, from_deg: int, to_deg: int) -> None:
        if from_deg % to_deg:
            raise ValueError(f"degree {to_deg} does not divide {from_deg}")
        if (2 * self.n) % from_deg:
            raise ValueError(f"q-degree {from_deg} is not a tower subfield degree")
        if not self.in_subfield(a, from_deg):
            raise ValueError(f"element {a} does not lie in F_q^{from_deg}")

    def prime_trace(self, a: int) -> int:
        """Trace from F_q to F_p of an F_q element, returned as an int in [0, p)."""
        if not self.in_subfield(a, 1):
            raise ValueError(f"element {a} does not lie in F_q")
        acc = a
        cur = a
        for _ in range(self.e - 1):
            cur = self.pow(cur, self.p)
            acc = self.add(acc, cur)
        if acc >= self.p:
            raise AssertionError("prime-field element with non-constant digits")
        return acc

    def subfield_generator(self, k: int) -> int:
        """Canonical primitive element of F_{q^k}: g^{(|F*|)/(q^k-1)}."""
        if (2 * self.n) % k:
            raise ValueError(f"q-degree {k} is not a tower subfield degree")
        return self.pow(self.generator, (self.order - 1) // (self.q ** k - 1))

    def subfield_elements(self, k: int) -> list[int]:
        """All elements of F_{q^k}, sorted by code (cached)."""
        key = ("subfield", k)
        if key not in self.cache:
            gk = self.subfield_generator(k)
            out = {0, 1}
            cur = gk
            for _ in range(self.q ** k - 2):
                out.add(cur)
                cur = self.mul(cur, gk)
            self.cache[key] = sorted(out)
        return self.cache[key]

    def basis_over_prime(self, k: int) -> list[int]:
        """F_p-basis of F_{q^k}: powers of the canonical subfield generator."""
        gk = self.subfield_generator(k)
        out = [1]
        for _ in range(k * self.e - 1):
            out.append(self.mul(out[-1], gk))
        return out

    def ambient_basis(self) -> list[int]:
        """The power basis of the whole field, 1, g, ..., g^{m-1}."""
        key = "ambient_basis"
        if key not in self.cache:
            self.cache[key] = self.basis_over_prime(2 * self.n)
        return self.cache[key]

    def q2_basis(self) -> list[int]:
        """The fixed F_{q^2}-basis of F_{q^2n}: 1, g, ..., g^{n-1}."""
        key = "q2_basis"
        if key not in self.cache:
            out = [1]
            for _ in range(self.n - 1):
                out.append(self.mul(out[-1], self.generator))
            self.cache[key] = out
        return self.cache[key]

    # -- misc ----------------------------------------------------------------

    def to_dict(self) -> dict:
        return {"p": self.p, "e": self.e, "n": self.n, "modulus": list(self.modulus)}

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldTower)
                and (self.p, self.e, self.n, self.modulus)
                == (other.p, other.e, other.n, other.modulus))

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.n, self.modulus))

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, e={self.e}, n={self.n}, order={self.order})"


def _default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree m over F_p whose root is primitive.

    Candidates are ordered by the base-p integer encoding of their low
    coefficient vector, so the choice is reproducible everywhere.
    """
    target = p ** m - 1
    for k in range(p ** m):
        low = []
        v = k
        for _ in range(m):
            v, r = divmod(v, p)
            low.append(r)
        cand = tuple(low) + (1,)
        if cand[0] == 0:  # divisible by x
            continue
        if not _is_irreducible(cand, p):
            continue
        if _element_order_is((0, 1), target, cand, p):
            return cand
    raise AssertionError(f"no primitive irreducible of degree {m} over F_{p}")


def make_tower(p: int, e: int, n: int, modulus: Sequence[int] | None = None) -> FieldTower:
    """Build the tower context for F_p < F_q < F_{q^2} < F_{q^n} < F_{q^2n}.

    When `modulus` is omitted a deterministic default is selected (see module
    docstring).  A supplied modulus must be monic of degree 2ne, irreducible
    over F_p, and given little-endian with the constant term first.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if e < 1 or n < 1:
        raise ValueError("e and n must be positive")
    m = 2 * n * e
    if p ** m > _ORDER_LIMIT:
        raise ValueError(f"field order p^{m} exceeds the supported 2^32 ceiling")

    if modulus is None:
        mod = _default_modulus(p, m)
        gen_poly: tuple[int, ...] = (0, 1)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}")
        if not _is_irreducible(mod, p):
            raise ValueError("supplied modulus is reducible over F_p")
        gen_poly = _find_primitive(mod, p, m)
    return FieldTower(p, e, n, mod, gen_poly)


def _find_primitive(mod: tuple[int, ...], p: int, m: int) -> tuple[int, ...]:
    """Least element (by code) of maximal multiplicative order."""
    target = p ** m - 1
    for code in range(2, p ** m):
        poly = []
        v = code
        for _ in range(m):
            v, r = divmod(v, p)
            poly.append(r)
        if _element_order_is(_ptrim(poly), target, mod, p):
            return _ptrim(poly)
    raise AssertionError("no primitive element found in a finite field")


def is_square(tower: FieldTower, a: int) -> bool:
    """Square test inside F_q (q odd); zero counts as a square."""
    if tower.q % 2 == 0:
        raise ValueError("square classes are trivial in characteristic 2")
    if not tower.in_subfield(a, 1):
        raise ValueError("square test expects an F_q element")
    if a == 0:
        return True
    return tower.pow(a, (tower.q - 1) // 2) == 1


def find_gamma(tower: FieldTower) -> int:
    """Least power of the tower generator whose F_q-norm is a non-square.

    Such elements exist for every odd q because the norm maps onto F_q*.
    """
    if tower.q % 2 == 0:
        raise ValueError("non-square norms require odd q")
    g = tower.generator
    cur = g
    for _ in range(tower.order - 1):
        if not is_square(tower, tower.rel_norm(cur, 2 * tower.n, 1)):
            return cur
        cur = tower.mul(cur, g)
    raise AssertionError("norm map failed to reach a non-square")


def find_alpha(tower: FieldTower) -> int:
    """Deterministic alpha with alpha^{q-1} = -1 (q odd).

    alpha = g^{(|F*|/2)/(q-1)} works: raising to q-1 lands on the unique
    element of order 2.
    """
    if tower.q % 2 == 0:
        raise ValueError("alpha^{q-1} = -1 is degenerate for even q")
    k = (tower.order - 1) // (2 * (tower.q - 1))
    alpha = tower.pow(tower.generator, k)
    minus_one = tower.neg(1)
    if tower.pow(alpha, tower.q - 1) != minus_one:
        raise AssertionError("alpha construction violated its defining relation")
    return alpha
