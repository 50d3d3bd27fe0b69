"""Finite matrix groups with exact entries: wreath-type rotation groups,
the real reflection catalog in degree <= 4, realification, breadth-first
closure and element classification.

Groups are stored as generator lists plus a lazily computed, deterministic
element enumeration (breadth-first from the identity, generators applied in
order).  All matrices live over a fixed conductor chosen so that every entry
is exact: rational families use conductor 4, the pentagonal families use
conductor 20 (where sqrt(5) = z5 - z5^2 - z5^3 + z5^4), and dihedral-plane
families I2(k) use lcm(4, k).

Closure may be parallelized over the expansion frontier without changing the
result: the element order is fixed by the BFS discipline, not by timing.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from rotref.cyclo import (
    ConductorMismatch,
    CycNum,
    real_imag_parts,
    zeta_power,
)
from rotref.linalg import (
    MatrixF,
    Subspace,
    kernel,
    matrix_from_json,
    matrix_to_json,
)

__all__ = [
    "DEFAULT_CLOSURE_CAP",
    "ClosureCapExceeded",
    "ElementClass",
    "MatrixGroup",
    "CatalogEntry",
    "closure",
    "gmpn_generators",
    "gmpn_order",
    "realify",
    "realified_gmpn_group",
    "fixed_space",
    "classify",
    "is_rotation_group",
    "generated_by_reflections",
    "parse_label",
    "catalog_group",
    "direct_sum",
    "pad_trivial",
    "enumerate_degree4_catalog",
    "IRREDUCIBLE_LABELS",
    "BIG_FACTOR_LABELS",
    "group_to_json",
    "group_from_json",
    "element_order",
]

DEFAULT_CLOSURE_CAP = 20000


class ClosureCapExceeded(RuntimeError):
    """The closure grew past the cap: group too large or not finite at this
    conductor."""


# ---------------------------------------------------------------------------
# groups and closure
# ---------------------------------------------------------------------------

class MatrixGroup:
    """A finite matrix group: generators plus the (lazily enumerated) full
    element set in deterministic BFS order."""

    def __init__(self, generators, ambient_dim=None, conductor=None, name=None,
                 elements=None):
        generators = tuple(generators)
        if generators:
            ambient_dim = generators[0].rows
            conductor = generators[0].conductor
            for g in generators:
                if g.rows != g.cols or g.rows != ambient_dim:
                    raise ValueError("generators must be square of equal size")
                if g.conductor != conductor:
                    raise ConductorMismatch("generators must share one conductor")
        elif ambient_dim is None or conductor is None:
            raise ValueError("empty generator list needs ambient_dim and conductor")
        self.generators = generators
        self.ambient_dim = ambient_dim
        self.conductor = conductor
        self.name = name
        self._elements = elements
        self._keys = None if elements is None else {g.key for g in elements}

    def ensure_elements(self, cap: int = DEFAULT_CLOSURE_CAP):
        if self._elements is None:
            elems = _bfs_closure(self.generators, self.ambient_dim, self.conductor, cap)
            self._elements = elems
            self._keys = {g.key for g in elems}
        return self._elements

    @property
    def elements(self):
        return self.ensure_elements()

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_keys(self):
        self.ensure_elements()
        return self._keys

    def __contains__(self, m: MatrixF) -> bool:
        return m.key in self.element_keys()

    def __repr__(self):
        populated = self._elements is not None
        size = f", order={len(self._elements)}" if populated else ""
        return f"MatrixGroup({self.name!r}, dim={self.ambient_dim}, L={self.conductor}{size})"


def _bfs_closure(generators, n, L, cap):
    ident = MatrixF.identity(n, L)
    elems = [ident]
    seen = {ident.key}
    queue = 0
    while queue < len(elems):
        cur = elems[queue]
        queue += 1
        for g in generators:
            p = cur @ g
            if p.key not in seen:
                if len(elems) >= cap:
                    raise ClosureCapExceeded(
                        f"closure exceeded cap {cap}: group too large or not finite"
                    )
                seen.add(p.key)
                elems.append(p)
    return tuple(elems)


def closure(generators, cap: int = DEFAULT_CLOSURE_CAP, name=None) -> MatrixGroup:
    """Breadth-first closure of a generator list into a full MatrixGroup."""
    grp = MatrixGroup(generators, name=name)
    grp.ensure_elements(cap)
    return grp


def element_order(g: MatrixF) -> int:
    ident = MatrixF.identity(g.rows, g.conductor)
    p = g
    n = 1
    while p != ident:
        p = p @ g
        n += 1
        if n > DEFAULT_CLOSURE_CAP:
            raise ClosureCapExceeded("element order exceeds closure cap")
    return n


# ---------------------------------------------------------------------------
# classification by fixed spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ElementClass:
    tag: str  # identity | reflection | rotation | bireflection_plus
    fix_codim: int


def fixed_space(g: MatrixF) -> Subspace:
    """The 1-eigenspace of g, i.e. the kernel of (g - I)."""
    fs = g._fixed
    if fs is None:
        fs = kernel(g - MatrixF.identity(g.rows, g.conductor))
        g._fixed = fs
    return fs


def classify(g: MatrixF) -> ElementClass:
    codim = g.rows - fixed_space(g).dim
    if codim == 0:
        tag = "identity"
    elif codim == 1:
        tag = "reflection"
    elif codim == 2:
        tag = "rotation"
    else:
        tag = "bireflection_plus"
    return ElementClass(tag, codim)


def _greedy_generated(group: MatrixGroup, candidate_indices):
    """Greedily pick generators from candidate elements until their closure
    stops growing; returns (covers_group, chosen_indices, span_keys)."""
    elems = group.elements
    chosen = []
    span = {MatrixF.identity(group.ambient_dim, group.conductor).key}
    for idx in candidate_indices:
        g = elems[idx]
        if g.key in span:
            continue
        chosen.append(idx)
        sub = _bfs_closure(
            [elems[i] for i in chosen], group.ambient_dim, group.conductor,
            cap=group.order + 1,
        )
        span = {m.key for m in sub}
        if len(span) == group.order:
            break
    return len(span) == group.order, chosen, span


def is_rotation_group(group: MatrixGroup):
    """Whether the rotations of the group generate it.

    Returns (flag, certificate); the certificate carries a generating set of
    rotations on success or the first unreachable element index on failure.
    The trivial group is not considered a rotation group.
    """
    elems = group.elements
    if len(elems) == 1:
        return False, {"reason": "trivial group", "rotation_generators": []}
    rotations = [i for i, g in enumerate(elems) if classify(g).tag == "rotation"]
    if not rotations:
        return False, {"reason": "no rotation elements", "rotation_generators": []}
    ok, chosen, span = _greedy_generated(group, rotations)
    if ok:
        return True, {"rotation_generators": chosen, "rotation_count": len(rotations)}
    missing = next(i for i, g in enumerate(elems) if g.key not in span)
    return False, {
        "rotation_generators": chosen,
        "rotation_count": len(rotations),
        "missing_element_index": missing,
    }


def generated_by_reflections(group: MatrixGroup) -> bool:
    if all(classify(g).tag == "reflection" for g in group.generators) and group.generators:
        return True
    elems = group.elements
    if len(elems) == 1:
        return False
    refl = [i for i, g in enumerate(elems) if classify(g).tag == "reflection"]
    if not refl:
        return False
    ok, _, _ = _greedy_generated(group, refl)
    return ok


# ---------------------------------------------------------------------------
# G(m, p, n) and realification
# ---------------------------------------------------------------------------

def gmpn_order(m: int, p: int, n: int) -> int:
    return m**n * math.factorial(n) // p


def gmpn_generators(m: int, p: int, n: int):
    """Generators of the imprimitive unitary group G(m, p, n): diagonal
    matrices of m-th roots with determinant an (m/p)-th root, plus the
    adjacent transposition matrices.

    Matrices are emitted over conductor lcm(4, m) so that realification can
    be applied directly.
    """
    if m < 1 or n < 1 or p < 1 or m % p != 0:
        raise ValueError("need m, n >= 1 and p | m")
    L = math.lcm(4, m)
    one, zero = CycNum.one(L), CycNum.zero(L)
    z = zeta_power(L, L // m)  # a primitive m-th root

    def diag(vals):
        return MatrixF.from_rows(
            [[vals[i] if i == j else zero for j in range(n)] for i in range(n)]
        )

    gens = []
    if m > 1 and p < m:
        zp = zeta_power(L, (L // m) * p)
        gens.append(diag([zp] + [one] * (n - 1)))
    if m > 1 and p > 1 and n > 1:
        zinv = zeta_power(L, -(L // m))
        for i in range(n - 1):
            vals = [one] * n
            vals[i] = z
            vals[i + 1] = zinv
            gens.append(diag(vals))
    for i in range(n - 1):
        rows = [[one if (j == k and j not in (i, i + 1)) else zero for k in range(n)]
                for j in range(n)]
        rows[i][i + 1] = one
        rows[i + 1][i] = one
        gens.append(MatrixF.from_rows(rows))
    return gens


def realify(m: MatrixF) -> MatrixF:
    """View a complex n x n matrix as a real 2n x 2n matrix, sending each
    entry a+bi to the block ((a, -b), (b, a)); coordinates are ordered
    (Re x1, Im x1, Re x2, Im x2, ...)."""
    if m.conductor % 4 != 0:
        raise ConductorMismatch("realification needs 4 | conductor")
    n = m.rows
    if m.cols != n:
        raise ValueError("realify needs a square matrix")
    L = m.conductor
    zero = CycNum.zero(L)
    rows = [[zero] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            a = m.entry(i, j)
            re, im = real_imag_parts(a)
            if re.conj() != re or im.conj() != im:
                raise ArithmeticError("real/imag parts not conjugation-fixed")
            rows[2 * i][2 * j] = re
            rows[2 * i][2 * j + 1] = -im
            rows[2 * i + 1][2 * j] = im
            rows[2 * i + 1][2 * j + 1] = re
    return MatrixF.from_rows(rows)


def realified_gmpn_group(m: int, cap: int = DEFAULT_CLOSURE_CAP) -> MatrixGroup:
    """The rotation group of interest: G(m,1,2) realified into O_4."""
    gens = [realify(g) for g in gmpn_generators(m, 1, 2)]
    grp = MatrixGroup(gens, name=f"G({m},1,2)r")
    grp.ensure_elements(cap)
    return grp


# ---------------------------------------------------------------------------
# the degree <= 4 real reflection catalog
# ---------------------------------------------------------------------------

_FACTOR_RE = re.compile(r"^(A[1-4]|B[2-4]|D4|F4|H[34]|I2\((\d+)\)|1)$")


@dataclass(frozen=True)
class CatalogEntry:
    """A structured catalog label: product of irreducible factors plus
    trivial paddings, e.g. 'H3xA1', 'I2(5)xI2(7)', 'B3x1'."""

    factors: tuple  # tuple of ("A1".."H4", "I2", or "1", param or None)

    @staticmethod
    def parse(label: str) -> "CatalogEntry":
        return parse_label(label)

    @property
    def label(self) -> str:
        parts = []
        for fam, param in self.factors:
            parts.append(f"I2({param})" if fam == "I2" else fam)
        return "x".join(parts)

    @property
    def degree(self) -> int:
        return sum(_factor_degree(f) for f in self.factors)

    @property
    def conductor_required(self) -> int:
        L = 4
        for fam, param in self.factors:
            L = math.lcm(L, _factor_conductor(fam, param))
        return L

    @property
    def has_big_factor(self) -> bool:
        return any(_factor_degree(f) >= 3 for f in self.factors)

    def __str__(self):
        return self.label


def _factor_degree(factor) -> int:
    fam, param = factor
    if fam == "1":
        return 1
    if fam == "I2":
        return 2
    return int(fam[1])


def _factor_conductor(fam, param) -> int:
    if fam == "I2":
        return math.lcm(4, param)
    if fam in ("A2",):
        return 12
    if fam in ("B2",):
        return 4
    if fam in ("A4", "H3", "H4"):
        return 20
    return 4


def parse_label(label: str) -> CatalogEntry:
    factors = []
    for part in label.split("x"):
        m = _FACTOR_RE.match(part)
        if not m:
            raise ValueError(f"unknown catalog factor {part!r} in {label!r}")
        if part.startswith("I2("):
            k = int(m.group(2))
            if k < 2:
                raise ValueError("I2(k) needs k >= 2")
            factors.append(("I2", k))
        else:
            factors.append((part, None))
    if not factors:
        raise ValueError("empty label")
    return CatalogEntry(tuple(factors))


IRREDUCIBLE_LABELS = (
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3", "H4",
)

# degree-4 products with an irreducible factor of degree 3 or 4; the
# k-independent finite list used by the counting threshold
BIG_FACTOR_LABELS = (
    "A4", "B4", "D4", "F4", "H4",
    "A3xA1", "B3xA1", "H3xA1",
    "A3x1", "B3x1", "H3x1",
)


# -- exact constants over conductor 20 --------------------------------------

def _pentagonal_constants():
    L = 20
    half = CycNum.rational(L, Fraction(1, 2))
    i = zeta_power(L, 5)
    z10, z10i = zeta_power(L, 2), zeta_power(L, 18)
    cos_pi5 = (z10 + z10i) * half
    sin_pi5 = (z10 - z10i) * half * (-i)
    tau = cos_pi5 + cos_pi5
    tau_inv = tau - CycNum.one(L)
    return cos_pi5, sin_pi5, tau, tau_inv


def _reflection_in_root(root, L):
    """Orthogonal reflection fixing the hyperplane perpendicular to root."""
    n = len(root)
    norm = CycNum.zero(L)
    for v in root:
        norm = norm + v * v
    scale = (CycNum.rational(L, 2)) * norm.inv()
    ident = MatrixF.identity(n, L)
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            e = ident.entry(a, b) - scale * root[a] * root[b]
            row.append(e)
        rows.append(row)
    return MatrixF.from_rows(rows)


def _gens_from_int_roots(roots, L=4):
    out = []
    for root in roots:
        vec = [CycNum.rational(L, Fraction(v)) for v in root]
        out.append(_reflection_in_root(vec, L))
    return out


def _gens_I2(k: int):
    if k < 2:
        raise ValueError("I2(k) needs k >= 2")
    L = math.lcm(4, k)
    half = CycNum.rational(L, Fraction(1, 2))
    i = zeta_power(L, L // 4)
    zk, zki = zeta_power(L, L // k), zeta_power(L, -(L // k))
    c = (zk + zki) * half           # cos(2 pi / k)
    s = (zk - zki) * half * (-i)    # sin(2 pi / k)
    one, zero = CycNum.one(L), CycNum.zero(L)
    s1 = MatrixF.from_rows([[one, zero], [zero, -one]])
    s2 = MatrixF.from_rows([[c, s], [s, -c]])
    return [s1, s2]


def _gens_A4():
    # standard permutation representation of S_5 restricted to the sum-zero
    # hyperplane, written in an exact orthonormal basis over Q(sqrt 5)
    L = 20
    sqrt5 = (
        zeta_power(L, 4) - zeta_power(L, 8) - zeta_power(L, 12) + zeta_power(L, 16)
    )
    half = CycNum.rational(L, Fraction(1, 2))
    w = [
        [1, 1, -1, -1, 0],
        [1, -1, 1, -1, 0],
        [1, -1, -1, 1, 0],
        [1, 1, 1, 1, -4],
    ]
    basis = []
    for idx, vec in enumerate(w):
        if idx < 3:
            basis.append([CycNum.rational(L, v) * half for v in vec])
        else:
            scale = sqrt5 * CycNum.rational(L, Fraction(1, 10))  # 1/(2 sqrt5)
            basis.append([CycNum.rational(L, v) * scale for v in vec])
    gens = []
    for t in range(4):  # adjacent transpositions (t, t+1) of S_5
        perm = list(range(5))
        perm[t], perm[t + 1] = perm[t + 1], perm[t]
        rows = []
        for bi in basis:
            row = []
            for bj in basis:
                acc = CycNum.zero(L)
                for kk in range(5):
                    acc = acc + bi[kk] * bj[perm[kk]]
                row.append(acc)
            rows.append(row)
        gens.append(MatrixF.from_rows(rows))
    return gens


def _gens_H(rank: int):
    L = 20
    c, s, tau, tau_inv = _pentagonal_constants()
    zero = CycNum.zero(L)
    half = CycNum.rational(L, Fraction(1, 2))
    inv2s = (s + s).inv()
    roots3 = [
        [CycNum.one(L), zero, zero],
        [-c, s, zero],
        [zero, -inv2s, tau_inv * inv2s],
    ]
    if rank == 3:
        roots = roots3
    else:
        roots = [r + [zero] for r in roots3]
        roots.append([zero, zero, -(s * tau), tau_inv * half])
    return [_reflection_in_root(r, L) for r in roots]


def _irreducible_generators(fam: str, param):
    if fam == "A1":
        return [_reflection_in_root([CycNum.one(4)], 4)]
    if fam == "A2":
        return _gens_I2(3)
    if fam == "B2":
        return _gens_I2(4)
    if fam == "I2":
        return _gens_I2(param)
    if fam == "A3":
        return _gens_from_int_roots([[1, -1, 0], [0, 1, -1], [0, 1, 1]])
    if fam == "B3":
        return _gens_from_int_roots([[1, -1, 0], [0, 1, -1], [0, 0, 1]])
    if fam == "B4":
        return _gens_from_int_roots(
            [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1]]
        )
    if fam == "D4":
        return _gens_from_int_roots(
            [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, 1]]
        )
    if fam == "F4":
        return _gens_from_int_roots(
            [
                [0, 1, -1, 0],
                [0, 0, 1, -1],
                [0, 0, 0, 1],
                [Fraction(1, 2), Fraction(-1, 2), Fraction(-1, 2), Fraction(-1, 2)],
            ]
        )
    if fam == "A4":
        return _gens_A4()
    if fam in ("H3", "H4"):
        return _gens_H(int(fam[1]))
    if fam == "1":
        return []
    raise ValueError(f"unknown irreducible family {fam}")


_CATALOG_CACHE: dict[str, MatrixGroup] = {}


def catalog_group(entry) -> MatrixGroup:
    """Build the standard-position group for a catalog label or entry.

    Elements are computed lazily; results are cached per label within the
    process (groups are immutable)."""
    if isinstance(entry, str):
        entry = parse_label(entry)
    cached = _CATALOG_CACHE.get(entry.label)
    if cached is not None:
        return cached
    L = entry.conductor_required
    gens = []
    offset = 0
    total = entry.degree
    zero = CycNum.zero(L)
    for fam, param in entry.factors:
        d = _factor_degree((fam, param))
        for g in _irreducible_generators(fam, param):
            g = g.embed(L)
            rows = []
            for a in range(total):
                row = []
                for b in range(total):
                    if offset <= a < offset + d and offset <= b < offset + d:
                        row.append(g.entry(a - offset, b - offset))
                    elif a == b:
                        row.append(CycNum.one(L))
                    else:
                        row.append(zero)
                rows.append(row)
            gens.append(MatrixF.from_rows(rows))
        offset += d
    grp = MatrixGroup(gens, ambient_dim=total, conductor=L, name=entry.label)
    _CATALOG_CACHE[entry.label] = grp
    return grp


def direct_sum(a: MatrixGroup, b: MatrixGroup) -> MatrixGroup:
    """The product group acting in orthogonal coordinate blocks."""
    L = math.lcm(a.conductor, b.conductor)
    n1, n2 = a.ambient_dim, b.ambient_dim
    total = n1 + n2
    zero = CycNum.zero(L)
    gens = []
    for g in a.generators:
        g = g.embed(L)
        rows = []
        for i in range(total):
            row = []
            for j in range(total):
                if i < n1 and j < n1:
                    row.append(g.entry(i, j))
                else:
                    row.append(CycNum.one(L) if i == j else zero)
            rows.append(row)
        gens.append(MatrixF.from_rows(rows))
    for g in b.generators:
        g = g.embed(L)
        rows = []
        for i in range(total):
            row = []
            for j in range(total):
                if i >= n1 and j >= n1:
                    row.append(g.entry(i - n1, j - n1))
                else:
                    row.append(CycNum.one(L) if i == j else zero)
            rows.append(row)
        gens.append(MatrixF.from_rows(rows))
    name = f"{a.name}x{b.name}" if a.name and b.name else None
    return MatrixGroup(gens, ambient_dim=total, conductor=L, name=name)


def pad_trivial(g: MatrixGroup, extra: int) -> MatrixGroup:
    """Append identity-acted coordinates."""
    if extra < 0:
        raise ValueError("extra must be nonnegative")
    if extra == 0:
        return g
    L = g.conductor
    total = g.ambient_dim + extra
    zero = CycNum.zero(L)
    gens = []
    for gen in g.generators:
        rows = []
        for i in range(total):
            row = []
            for j in range(total):
                if i < g.ambient_dim and j < g.ambient_dim:
                    row.append(gen.entry(i, j))
                else:
                    row.append(CycNum.one(L) if i == j else zero)
            rows.append(row)
        gens.append(MatrixF.from_rows(rows))
    name = (g.name or "?") + "x1" * extra
    return MatrixGroup(gens, ambient_dim=total, conductor=L, name=name)


def enumerate_degree4_catalog(k_max: int):
    """All standard-position degree-4 reflection groups assembled from the
    shipped irreducibles, with I2(k) instantiated for 2 <= k <= k_max.

    Factor order inside a label: degree-4 factor alone; degree-3 factor then
    its degree-1 slot; I2 pairs with ascending parameters; degree-1 slots
    with A1 before trivial padding.  The enumeration is deterministic.
    """
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    labels = []
    labels.extend(["A4", "B4", "D4", "F4", "H4"])
    for big in ("A3", "B3", "H3"):
        labels.append(f"{big}xA1")
        labels.append(f"{big}x1")
    ks = range(2, k_max + 1)
    for p in ks:
        for q in ks:
            if p <= q:
                labels.append(f"I2({p})xI2({q})")
    for k in ks:
        labels.append(f"I2({k})xA1xA1")
        labels.append(f"I2({k})xA1x1")
        labels.append(f"I2({k})x1x1")
    labels.extend(["A1xA1xA1xA1", "A1xA1xA1x1", "A1xA1x1x1", "A1x1x1x1"])
    return [catalog_group(lbl) for lbl in labels]


# ---------------------------------------------------------------------------
# JSON group files
# ---------------------------------------------------------------------------

def group_to_json(g: MatrixGroup) -> dict:
    return {
        "name": g.name,
        "ambient": g.ambient_dim,
        "conductor": g.conductor,
        "generators": [matrix_to_json(m) for m in g.generators],
    }


def group_from_json(d: dict) -> MatrixGroup:
    gens = [matrix_from_json(m) for m in d["generators"]]
    gens = [g.embed(int(d["conductor"])) for g in gens]
    return MatrixGroup(
        gens,
        ambient_dim=int(d["ambient"]),
        conductor=int(d["conductor"]),
        name=d.get("name"),
    )
