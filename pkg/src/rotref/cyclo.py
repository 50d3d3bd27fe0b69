"""Exact arithmetic in cyclotomic fields Q(zeta_L).

Elements are represented on the power basis 1, z, ..., z^(phi(L)-1) of
Q(zeta_L), reduced modulo the L-th cyclotomic polynomial Phi_L, with one
shared positive integer denominator per element and integer numerator
coefficients whose common content with the denominator is 1.  This form is
canonical: two elements are equal as field values iff their conductors,
numerator vectors and denominators coincide, so CycNum values hash and
compare structurally.

All values are immutable; every operation is pure.  Per-conductor tables
(Phi_L, power-reduction rows, conjugation rows) are computed once and
published to a module cache with write-once semantics, so values can be
shared freely between threads.

Rational scalars are plain fractions.Fraction (always stored reduced,
positive denominator), which is exactly the invariant the code needs.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import reduce

import mpmath

__all__ = [
    "CycNum",
    "cyclotomic_polynomial",
    "euler_phi",
    "zeta_power",
    "embed",
    "cyc_conj",
    "real_imag_parts",
    "real_sign",
    "is_positive_real",
    "rational_to_json",
    "rational_from_json",
    "cyc_to_json",
    "cyc_from_json",
    "ConductorMismatch",
]

Rational = Fraction


class ConductorMismatch(ValueError):
    """Raised when operands live over incompatible conductors."""


# ---------------------------------------------------------------------------
# integer polynomial helpers (dense, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(p):
    n = len(p)
    while n > 0 and p[n - 1] == 0:
        n -= 1
    return p[:n]


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divexact_monic(num, den):
    """Exact division of integer polynomials; den must be monic and divide num."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == 0:
            continue
        out[k - dd] = c
        for j in range(dd + 1):
            num[k - dd + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("polynomial division was not exact")
    return out


_PHI_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the monic polynomial Phi_L.

    Computed by exact division of x^L - 1 by the product of Phi_d over the
    proper divisors d of L.
    """
    if L < 1:
        raise ValueError("conductor must be a positive integer")
    cached = _PHI_CACHE.get(L)
    if cached is not None:
        return cached
    if L == 1:
        poly = (-1, 1)
    else:
        num = [0] * (L + 1)
        num[0] = -1
        num[L] = 1
        den = [1]
        for d in range(1, L):
            if L % d == 0:
                den = _poly_mul_int(den, cyclotomic_polynomial(d))
        poly = tuple(_poly_divexact_monic(num, den))
    _PHI_CACHE[L] = poly
    return poly


def euler_phi(L: int) -> int:
    return len(cyclotomic_polynomial(L)) - 1


# ---------------------------------------------------------------------------
# per-conductor tables
# ---------------------------------------------------------------------------

class _Tables:
    __slots__ = ("L", "phi", "poly", "power_rows", "conj_map")

    def __init__(self, L: int):
        self.L = L
        poly = cyclotomic_polynomial(L)
        phi = len(poly) - 1
        self.phi = phi
        self.poly = poly
        # power_rows[e] = integer coefficient vector of x^e mod Phi_L,
        # for every exponent that reductions can produce.
        top = max(L - 1, 2 * phi - 2, 0)
        rows = []
        for e in range(min(phi, top + 1)):
            row = [0] * phi
            row[e] = 1
            rows.append(tuple(row))
        if top >= phi:
            base = tuple(-c for c in poly[:phi])  # x^phi reduced
            rows.append(base)
            prev = base
            for _ in range(phi + 1, top + 1):
                lead = prev[phi - 1]
                nxt = [0] * phi
                for i in range(1, phi):
                    nxt[i] = prev[i - 1]
                if lead:
                    for i in range(phi):
                        nxt[i] += lead * base[i]
                prev = tuple(nxt)
                rows.append(prev)
        self.power_rows = tuple(rows)
        # conjugation acts on basis power t as x^(t*(L-1) mod L)
        self.conj_map = tuple(self.power_rows[(t * (L - 1)) % L] for t in range(phi))


_TABLES: dict[int, _Tables] = {}


def _tables(L: int) -> _Tables:
    t = _TABLES.get(L)
    if t is None:
        t = _Tables(L)
        _TABLES[L] = t  # idempotent publish
    return t


def _content(nums, den):
    g = den
    for v in nums:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                return 1
    return g


# ---------------------------------------------------------------------------
# the field element
# ---------------------------------------------------------------------------

class CycNum:
    """An element of Q(zeta_L) in canonical reduced form.

    num is an integer tuple of length phi(L), den a positive integer with
    gcd(content(num), den) = 1; the value is sum(num[i]/den * zeta_L^i).
    """

    __slots__ = ("conductor", "num", "den")

    def __init__(self, conductor: int, num: tuple[int, ...], den: int):
        self.conductor = conductor
        self.num = num
        self.den = den

    # -- construction -------------------------------------------------

    @staticmethod
    def make(L: int, nums, den: int = 1) -> "CycNum":
        """Build from integer coefficients over a common denominator."""
        t = _tables(L)
        nums = list(nums)
        if len(nums) != t.phi:
            raise ValueError(f"need {t.phi} coefficients for conductor {L}")
        if den == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        if den < 0:
            den = -den
            nums = [-v for v in nums]
        g = _content(nums, den)
        if g > 1:
            den //= g
            nums = [v // g for v in nums]
        return CycNum(L, tuple(nums), den)

    @staticmethod
    def from_fractions(L: int, coeffs) -> "CycNum":
        coeffs = [Fraction(c) for c in coeffs]
        den = reduce(math.lcm, (c.denominator for c in coeffs), 1)
        return CycNum.make(L, [int(c * den) for c in coeffs], den)

    @staticmethod
    def rational(L: int, value) -> "CycNum":
        f = Fraction(value)
        t = _tables(L)
        nums = [0] * t.phi
        nums[0] = f.numerator
        return CycNum.make(L, nums, f.denominator)

    @staticmethod
    def zero(L: int) -> "CycNum":
        return CycNum.rational(L, 0)

    @staticmethod
    def one(L: int) -> "CycNum":
        return CycNum.rational(L, 1)

    # -- views ----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self.den
        return tuple(Fraction(v, d) for v in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "CycNum"):
        if self.conductor != other.conductor:
            raise ConductorMismatch(
                f"conductor {self.conductor} vs {other.conductor}; embed first"
            )

    def __add__(self, other: "CycNum") -> "CycNum":
        self._check(other)
        d1, d2 = self.den, other.den
        if d1 == d2:
            nums = [a + b for a, b in zip(self.num, other.num)]
            return CycNum.make(self.conductor, nums, d1)
        g = math.gcd(d1, d2)
        m1 = d2 // g
        m2 = d1 // g
        nums = [a * m1 + b * m2 for a, b in zip(self.num, other.num)]
        return CycNum.make(self.conductor, nums, d1 * m1)

    def __sub__(self, other: "CycNum") -> "CycNum":
        return self + (-other)

    def __neg__(self) -> "CycNum":
        return CycNum(self.conductor, tuple(-v for v in self.num), self.den)

    def __mul__(self, other: "CycNum") -> "CycNum":
        self._check(other)
        t = _tables(self.conductor)
        phi = t.phi
        a, b = self.num, other.num
        acc = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        acc[i + j] += ai * bj
        rows = t.power_rows
        for k in range(2 * phi - 2, phi - 1, -1):
            ck = acc[k]
            if ck:
                row = rows[k]
                for i in range(phi):
                    acc[i] += ck * row[i]
        return CycNum.make(self.conductor, acc[:phi], self.den * other.den)

    def inv(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_L)")
        key = (self.conductor, self.num, self.den)
        cached = _INV_CACHE.get(key)
        if cached is not None:
            return cached
        t = _tables(self.conductor)
        a = [Fraction(v) for v in _poly_trim(list(self.num))]
        s = _poly_inverse_mod(a, t.poly)
        coeffs = [Fraction(0)] * t.phi
        for i, c in enumerate(s):
            coeffs[i] = c * self.den
        out = CycNum.from_fractions(self.conductor, coeffs)
        _INV_CACHE[key] = out
        return out

    def __truediv__(self, other: "CycNum") -> "CycNum":
        return self * other.inv()

    def conj(self) -> "CycNum":
        t = _tables(self.conductor)
        phi = t.phi
        acc = [0] * phi
        for i, v in enumerate(self.num):
            if v:
                row = t.conj_map[i]
                for k in range(phi):
                    acc[k] += v * row[k]
        return CycNum.make(self.conductor, acc, self.den)

    def embed(self, L2: int) -> "CycNum":
        L = self.conductor
        if L2 == L:
            return self
        if L2 % L != 0:
            raise ConductorMismatch(f"{L} does not divide {L2}")
        t2 = _tables(L2)
        step = L2 // L
        acc = [0] * t2.phi
        for i, v in enumerate(self.num):
            if v:
                row = t2.power_rows[i * step]
                for k in range(t2.phi):
                    acc[k] += v * row[k]
        return CycNum.make(L2, acc, self.den)

    # -- identity -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycNum):
            return NotImplemented
        return (
            self.conductor == other.conductor
            and self.den == other.den
            and self.num == other.num
        )

    def __hash__(self) -> int:
        return hash((self.conductor, self.num, self.den))

    def sort_key(self):
        return (self.den, self.num)

    def __repr__(self) -> str:
        return f"CycNum({self.conductor}, {self.pretty()!r})"

    def pretty(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, v in enumerate(self.num):
            if not v:
                continue
            c = Fraction(v, self.den)
            if i == 0:
                terms.append(str(c))
            else:
                z = f"z{self.conductor}" + (f"^{i}" if i > 1 else "")
                if c == 1:
                    terms.append(z)
                elif c == -1:
                    terms.append(f"-{z}")
                else:
                    terms.append(f"{c}*{z}")
        out = terms[0]
        for term in terms[1:]:
            out += f" + {term}" if not term.startswith("-") else f" - {term[1:]}"
        return out


_INV_CACHE: dict[tuple, CycNum] = {}


def _poly_inverse_mod(a, modulus):
    """Inverse of polynomial a modulo the monic integer polynomial given by
    `modulus`, via the extended Euclidean algorithm over Q."""
    mod = [Fraction(c) for c in modulus]
    r0, r1 = mod, [Fraction(c) for c in a]
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while True:
        r1 = _frac_trim(r1)
        if len(r1) == 0:
            raise ZeroDivisionError("element shares a factor with Phi_L")
        if len(r1) == 1:
            c = r1[0]
            return [v / c for v in s1]
        q, r = _frac_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _frac_sub(s0, _frac_mul(q, s1))


def _frac_trim(p):
    n = len(p)
    while n > 0 and p[n - 1] == 0:
        n -= 1
    return p[:n]


def _frac_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _frac_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] -= v
    return _frac_trim(out)


def _frac_divmod(num, den):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    dlead = den[-1]
    for k in range(len(num) - 1, len(den) - 2, -1):
        c = num[k]
        if c == 0:
            continue
        f = c / dlead
        q[k - (len(den) - 1)] = f
        for j in range(len(den)):
            num[k - (len(den) - 1) + j] -= f * den[j]
    return q, _frac_trim(num)


# ---------------------------------------------------------------------------
# spec-level operations
# ---------------------------------------------------------------------------

def zeta_power(L: int, j: int) -> CycNum:
    """zeta_L^(j mod L), reduced mod Phi_L."""
    t = _tables(L)
    e = j % L
    return CycNum(L, t.power_rows[e], 1)


def embed(a: CycNum, L2: int) -> CycNum:
    return a.embed(L2)


def cyc_conj(a: CycNum) -> CycNum:
    return a.conj()


def real_imag_parts(a: CycNum) -> tuple[CycNum, CycNum]:
    """Split a = re + i*im with re, im fixed by conjugation; needs 4 | L."""
    L = a.conductor
    if L % 4 != 0:
        raise ConductorMismatch(f"conductor {L} has no i; need 4 | L")
    half = CycNum.rational(L, Fraction(1, 2))
    ac = a.conj()
    re = (a + ac) * half
    im = (ac - a) * half * zeta_power(L, L // 4)  # (a - conj a)/(2i)
    return re, im


# ---------------------------------------------------------------------------
# exact sign of conjugation-fixed values
# ---------------------------------------------------------------------------
#
# The distinguished real embedding sends zeta_L to exp(2*pi*i/L); a value
# fixed by conjugation lands on sum(num[k]/den * cos(2*pi*k/L)).  Signs are
# decided rigorously with scaled-integer interval enclosures of the cosines,
# refined until the interval excludes zero (always terminates on nonzero
# input since the embedding is injective).

_COS_ENCLOSURES: dict[tuple[int, int], list[tuple[int, int]]] = {}
_COS_LOCK = threading.Lock()  # mpmath's interval precision is global state


def _raw_mpf_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    if man == 0:
        return Fraction(0)
    f = Fraction(man) * (Fraction(2) ** exp)
    return -f if sign else f


def _cos_table(L: int, bits: int):
    key = (L, bits)
    table = _COS_ENCLOSURES.get(key)
    if table is not None:
        return table
    phi = _tables(L).phi
    iv = mpmath.iv
    with _COS_LOCK:
        old = iv.prec
        try:
            iv.prec = bits + 16
            scale = 1 << bits
            table = []
            for k in range(phi):
                enc = iv.cos(2 * iv.pi * k / L)
                raw_lo, raw_hi = enc._mpi_
                lo = _raw_mpf_to_fraction(raw_lo) * scale
                hi = _raw_mpf_to_fraction(raw_hi) * scale
                table.append((math.floor(lo), math.ceil(hi)))
        finally:
            iv.prec = old
    _COS_ENCLOSURES[key] = table
    return table


def real_sign(a: CycNum) -> int:
    """Exact sign (-1, 0, +1) of a conjugation-fixed cyclotomic number."""
    if a.conj() != a:
        raise ValueError("real_sign needs a conjugation-fixed value")
    if a.is_zero():
        return 0
    if a.is_rational():
        return 1 if a.num[0] > 0 else -1
    bits = 128
    while bits <= 16384:
        table = _cos_table(a.conductor, bits)
        lo = hi = 0
        for v, (clo, chi) in zip(a.num, table):
            if v > 0:
                lo += v * clo
                hi += v * chi
            elif v < 0:
                lo += v * chi
                hi += v * clo
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    raise ArithmeticError("interval refinement failed to separate from zero")


def is_positive_real(a: CycNum) -> bool:
    return real_sign(a) > 0


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------

def rational_to_json(f) -> str:
    f = Fraction(f)
    return f"{f.numerator}/{f.denominator}"


def rational_from_json(s: str) -> Fraction:
    return Fraction(s)


def cyc_to_json(a: CycNum) -> dict:
    return {
        "conductor": a.conductor,
        "coeffs": [rational_to_json(c) for c in a.coeffs],
    }


def cyc_from_json(d: dict) -> CycNum:
    L = int(d["conductor"])
    coeffs = [rational_from_json(s) for s in d["coeffs"]]
    if len(coeffs) != euler_phi(L):
        raise ValueError("coefficient vector length must equal phi(L)")
    return CycNum.from_fractions(L, coeffs)
