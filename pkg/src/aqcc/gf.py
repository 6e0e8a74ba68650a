"""Exact arithmetic in small finite fields.

Elements of GF(p**l) are packed integer indices: the element whose
coordinate vector over GF(p) is (c0, c1, ..., c_{l-1}), with c0 the constant
term, gets the index sum(c_i * p**i).  Indices run from 0 to q - 1 where
q = p**l.  All arithmetic is table driven; every operation accepts plain
ints or numpy integer arrays and broadcasts the way numpy fancy indexing
does.

The canonical modulus for GF(p**l) is the monic irreducible polynomial of
degree l whose own packed index is smallest.  For GF(16) that is
x**4 + x + 1, for GF(256) it is x**8 + x**4 + x**3 + x + 1.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    FieldMismatch,
    NonPrimeCharacteristic,
    NotCoprime,
    OrderNotDividing,
    RankDeficient,
    ReducibleModulus,
)

# Tables are q by q, so this bounds memory at a few dozen MB.
MAX_Q = 2048


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of m, ascending."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def multiplicative_order(q: int, n: int) -> int:
    """Smallest m >= 1 with q**m = 1 mod n.

    This is the extension degree needed before GF(q**m) contains a
    primitive n-th root of unity.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 1
    if math.gcd(q, n) != 1:
        raise NotCoprime(f"gcd({q}, {n}) != 1")
    m = 1
    r = q % n
    while r != 1:
        r = (r * q) % n
        m += 1
    return m


# --- polynomial helpers over GF(p), coefficient tuples low to high -------

def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    k = len(c)
    while k and c[k - 1] == 0:
        k -= 1
    return c[:k]


def _poly_mod(num: tuple[int, ...], den: tuple[int, ...], p: int) -> tuple[int, ...]:
    num = list(num)
    dn = len(den) - 1
    lead_inv = pow(den[-1], -1, p)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] % p
        if c == 0:
            continue
        f = (c * lead_inv) % p
        for j in range(dn + 1):
            num[i - dn + j] = (num[i - dn + j] - f * den[j]) % p
    return _poly_trim(tuple(c % p for c in num[:dn]))


def _unpack(idx: int, p: int, width: int) -> tuple[int, ...]:
    out = []
    for _ in range(width):
        out.append(idx % p)
        idx //= p
    return tuple(out)


def poly_is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree up to deg/2."""
    coeffs = _poly_trim(tuple(c % p for c in coeffs))
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for m in range(p ** d, 2 * p ** d):
            den = _unpack(m, p, d + 1)
            if not _poly_mod(coeffs, den, p):
                return False
    return True


def default_modulus(p: int, l: int) -> tuple[int, ...]:
    """Monic irreducible of degree l with the smallest packed index."""
    for m in range(p ** l, 2 * p ** l):
        cand = _unpack(m, p, l + 1)
        if poly_is_irreducible(cand, p):
            return cand
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FiniteField:
    """GF(p**l) with full addition and multiplication tables.

    Use FiniteField.get(p, l) to share instances; construction builds
    q by q tables which is the expensive part.
    """

    _cache: dict[tuple[int, int], "FiniteField"] = {}

    def __init__(self, p: int, l: int = 1, modulus=None):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        if l < 1:
            raise ValueError("extension degree must be >= 1")
        q = p ** l
        if q > MAX_Q:
            raise ValueError(f"q = {q} exceeds the supported table size {MAX_Q}")
        if modulus is None:
            modulus = default_modulus(p, l)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != l + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree l")
            if not poly_is_irreducible(modulus, p):
                raise ReducibleModulus(f"{list(modulus)} factors over GF({p})")
        self.p = p
        self.l = l
        self.q = q
        self.modulus = modulus
        self._build_tables()

    @classmethod
    def get(cls, p: int, l: int = 1) -> "FiniteField":
        key = (p, l)
        if key not in cls._cache:
            cls._cache[key] = cls(p, l)
        return cls._cache[key]

    # --- construction ----------------------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Coordinate polynomial product mod the modulus; bootstrap only."""
        p, l = self.p, self.l
        da = _unpack(a, p, l)
        db = _unpack(b, p, l)
        prod = [0] * (2 * l - 1)
        for i, ca in enumerate(da):
            if ca:
                for j, cb in enumerate(db):
                    prod[i + j] = (prod[i + j] + ca * cb) % p
        rem = _poly_mod(tuple(prod), self.modulus, p)
        return sum(c * p ** i for i, c in enumerate(rem))

    def _pow_raw(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            k >>= 1
        return r

    def _build_tables(self) -> None:
        p, l, q = self.p, self.l, self.q
        idx = np.arange(q, dtype=np.int64)
        weights = p ** np.arange(l, dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % p

        if p == 2:
            self._ADD = np.bitwise_xor.outer(idx, idx).astype(np.int32)
        else:
            add = np.empty((q, q), dtype=np.int32)
            for start in range(0, q, 256):
                blk = (digits[start:start + 256, None, :] + digits[None, :, :]) % p
                add[start:start + 256] = blk @ weights
            self._ADD = add
        self._NEG = ((((-digits) % p) @ weights)).astype(np.int32)

        # Multiplication comes from discrete logs over a generator, which
        # needs raw products first.
        for g in range(2, q):
            if all(self._pow_raw(g, (q - 1) // r) != 1 for r in prime_factors(q - 1)):
                self.generator = g
                break
        else:
            # q = 2 has the empty factor list and generator 1
            self.generator = 1
        exp = np.empty(q - 1, dtype=np.int32)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            cur = self._mul_raw(cur, self.generator)
        self._EXP = exp
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        self._LOG = log

        mul = np.zeros((q, q), dtype=np.int32)
        if q > 1:
            la = log[1:]
            mul[1:, 1:] = exp[(la[:, None] + la[None, :]) % (q - 1)]
        self._MUL = mul
        inv = np.zeros(q, dtype=np.int32)
        inv[exp] = exp[(-np.arange(q - 1)) % (q - 1)]
        self._INV = inv

    # --- arithmetic --------------------------------------------------------

    @staticmethod
    def _out(r):
        if np.ndim(r) == 0:
            return int(r)
        return r

    def add(self, a, b):
        return self._out(self._ADD[a, b])

    def sub(self, a, b):
        return self._out(self._ADD[a, self._NEG[b]])

    def neg(self, a):
        return self._out(self._NEG[a])

    def mul(self, a, b):
        return self._out(self._MUL[a, b])

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("0 has no inverse")
        return self._out(self._INV[a])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        a = int(a)
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0 if k else 1
        e = (int(self._LOG[a]) * k) % (self.q - 1)
        return int(self._EXP[e])

    def exp(self, i: int) -> int:
        """generator**i, exponent taken mod q - 1."""
        return int(self._EXP[i % (self.q - 1)])

    def log(self, a) -> int:
        if a == 0:
            raise ZeroDivisionError("log of 0")
        return int(self._LOG[a])

    def order_of(self, a) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        return (self.q - 1) // math.gcd(self.log(a), self.q - 1)

    def root_of_unity(self, n: int) -> int:
        """A primitive n-th root of unity, or OrderNotDividing."""
        if n < 1 or (self.q - 1) % n:
            raise OrderNotDividing(f"no element of order {n} in {self!r}")
        return self.exp((self.q - 1) // n)

    # --- coordinates ---------------------------------------------------------

    def element(self, coeffs) -> int:
        """Pack a GF(p) coordinate vector, low degree first."""
        if len(coeffs) > self.l:
            raise ValueError(f"at most {self.l} coordinates")
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def coeffs(self, a: int) -> tuple[int, ...]:
        return _unpack(int(a), self.p, self.l)

    # --- misc ------------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.l, self.modulus) == (other.p, other.l, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.l, self.modulus))

    def __repr__(self):
        return f"GF({self.q})"


# --- subfield embedding -------------------------------------------------

_EMBED_CACHE: dict[tuple, np.ndarray] = {}


def embedding(sub: FiniteField, ext: FiniteField) -> np.ndarray:
    """Index table of the field embedding GF(p**a) -> GF(p**b), a | b.

    The image of the subfield's canonical root is the root of the
    subfield's modulus with the smallest packed index in ext, so the table
    is deterministic.  Raises FieldMismatch when no embedding exists.
    """
    if sub.p != ext.p:
        raise FieldMismatch(f"different characteristic: {sub!r} vs {ext!r}")
    if ext.l % sub.l:
        raise FieldMismatch(f"{sub.l} does not divide {ext.l}")
    key = (sub.p, sub.l, sub.modulus, ext.l, ext.modulus)
    hit = _EMBED_CACHE.get(key)
    if hit is not None:
        return hit

    y = np.arange(ext.q)
    acc = np.full(ext.q, sub.modulus[-1], dtype=np.int64)
    for c in reversed(sub.modulus[:-1]):
        acc = ext._ADD[ext._MUL[acc, y], c]
    roots = np.nonzero(acc == 0)[0]
    theta = int(roots[0])

    powers = [1]
    for _ in range(sub.l - 1):
        powers.append(ext.mul(powers[-1], theta))
    sub_idx = np.arange(sub.q, dtype=np.int64)
    table = np.zeros(sub.q, dtype=np.int32)
    for i, pw in enumerate(powers):
        digit = (sub_idx // sub.p ** i) % sub.p
        table = ext._ADD[table, ext._MUL[digit, pw]]
    table = table.astype(np.int32)
    _EMBED_CACHE[key] = table
    return table


def _gf_p_inverse(mat: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over the prime field GF(p)."""
    n = mat.shape[0]
    aug = np.concatenate([mat % p, np.eye(n, dtype=np.int64)], axis=1)
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, n):
            if aug[r, col] % p:
                piv = r
                break
        if piv is None:
            raise RankDeficient("matrix is singular over GF(p)")
        aug[[row, piv]] = aug[[piv, row]]
        aug[row] = (aug[row] * pow(int(aug[row, col]), -1, p)) % p
        for r in range(n):
            if r != row and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[row]) % p
        row += 1
    return aug[:, n:] % p


class SubfieldBasis:
    """Basis of GF(p**b) as a vector space over an embedded GF(p**a).

    The default basis is (1, x, x**2, ..., x**(L-1)) where x is the
    extension field's canonical root and L = b // a; that set is always
    independent because x has degree exactly L over the subfield.
    expand() writes an extension element as L subfield coordinates,
    combine() is the inverse map.
    """

    def __init__(self, sub: FiniteField, ext: FiniteField, elements=None):
        emb = embedding(sub, ext)  # validates the pair
        self.sub = sub
        self.ext = ext
        self.L = ext.l // sub.l
        if elements is None:
            elements = [1]
            for _ in range(self.L - 1):
                elements.append(ext.mul(elements[-1], ext.p))
        elements = tuple(int(e) for e in elements)
        if len(elements) != self.L:
            raise ValueError(f"need exactly {self.L} basis elements")
        self.elements = elements
        self._emb = emb

        p, a, b = sub.p, sub.l, ext.l
        theta_pow = [1]
        theta = int(emb[sub.p]) if sub.l > 1 else 0
        for _ in range(a - 1):
            theta_pow.append(ext.mul(theta_pow[-1], theta))
        cols = []
        for beta in elements:
            for tp in theta_pow:
                cols.append(ext.coeffs(ext.mul(tp, beta)))
        m = np.array(cols, dtype=np.int64).T  # b x b over GF(p)
        self._minv = _gf_p_inverse(m, p)

    def expand(self, e: int) -> tuple[int, ...]:
        """Subfield coordinates of one extension element."""
        return tuple(int(v) for v in self.expand_array(np.asarray([e]))[0])

    def expand_array(self, arr: np.ndarray) -> np.ndarray:
        """Vectorized expand; output shape is arr.shape + (L,)."""
        p, a, b = self.sub.p, self.sub.l, self.ext.l
        arr = np.asarray(arr, dtype=np.int64)
        dig = (arr[..., None] // p ** np.arange(b, dtype=np.int64)) % p
        coords = np.tensordot(dig, self._minv.T, axes=([-1], [0])) % p
        coords = coords.reshape(arr.shape + (self.L, a))
        weights = p ** np.arange(a, dtype=np.int64)
        return (coords * weights).sum(axis=-1).astype(np.int32)

    def combine(self, coords) -> int:
        acc = 0
        for c, beta in zip(coords, self.elements, strict=True):
            acc = self.ext.add(acc, self.ext.mul(int(self._emb[c]), beta))
        return int(acc)
