"""Fixed-point subspace arrangements, reflection arrangements, and the
plane-geometry checks behind the degree-4 non-containment argument.

The isotropy arrangement of a finite linear group G collects the joint fixed
spaces of its nontrivial isotropy (vector-stabilizer) subgroups.  It is
computed here from the element fixed spaces: those "seed" subspaces are
closed under intersection into the fixed-space lattice, and a lattice member
U belongs to the arrangement exactly when the intersection of all seeds
containing U is U itself (then U = V^H for H the pointwise stabilizer of U,
and H is the stabilizer of a generic vector of U).

Containment scans between subspaces are accelerated by a one-sided modular
filter: entries are mapped through a ring homomorphism Z[zeta_L] -> F_p for
a prime p = 1 (mod L), so a nonzero image certifies a nonzero exact value
and only the (rare) zero images are confirmed with exact arithmetic.

All outputs are deterministic: members are canonically sorted by dimension
and then by their canonical basis; witnesses are chosen by that order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from rotref.cyclo import (
    ConductorMismatch,
    CycNum,
    is_positive_real,
    real_imag_parts,
    zeta_power,
)
from rotref.linalg import (
    MatrixF,
    Subspace,
    meets_nontrivially,
    subspace_contains,
    subspace_intersect,
    subspace_to_json,
)
from rotref.groups import MatrixGroup, classify, fixed_space, generated_by_reflections

__all__ = [
    "Arrangement",
    "PhaseValue",
    "PlanePreconditionError",
    "fixed_space_of_subset",
    "pointwise_stabilizer",
    "isotropy_arrangement",
    "reflection_arrangement",
    "arrangement_contains",
    "coordinate_plane_x0",
    "coordinate_plane_y0",
    "zeta_plane",
    "wreath_plane_list",
    "complex_coords",
    "phase_ratio",
    "plane_meet_count",
    "structural_dichotomy_check",
    "sample_rational_plane",
    "arrangement_to_json",
]


# ---------------------------------------------------------------------------
# modular fingerprints (one-sided exactness filter)
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class _ModImage:
    """Ring homomorphism Z[zeta_L] -> F_p with p = 1 (mod L); zeta_L maps to
    an element of exact multiplicative order L, hence to a root of Phi_L."""

    def __init__(self, L: int):
        self.L = L
        t = (1 << 41) // L + 1
        while not _is_prime(L * t + 1):
            t += 1
        p = L * t + 1
        self.p = p
        qs = _prime_factors(L)
        g = None
        for h in range(2, 1000):
            cand = pow(h, (p - 1) // L, p)
            if cand != 1 and all(pow(cand, L // q, p) != 1 for q in qs):
                g = cand
                break
        if g is None:  # pragma: no cover
            raise ArithmeticError("no order-L element found")
        from rotref.cyclo import euler_phi

        phi = euler_phi(L)
        self.powers = [pow(g, i, p) for i in range(phi)]

    def cyc(self, a: CycNum) -> int:
        p = self.p
        acc = 0
        for v, gp in zip(a.num, self.powers):
            if v:
                acc += v * gp
        if a.den == 1:
            return acc % p
        return acc * pow(a.den, -1, p) % p

    def rows(self, rows_of_cyc):
        return tuple(tuple(self.cyc(e) for e in row) for row in rows_of_cyc)


_MOD_IMAGES: dict[int, _ModImage] = {}


def _mod_image(L: int) -> _ModImage:
    img = _MOD_IMAGES.get(L)
    if img is None:
        img = _ModImage(L)
        _MOD_IMAGES[L] = img
    return img


class _Fingerprint:
    __slots__ = ("img", "space", "_basis", "_ann")

    def __init__(self, img: _ModImage, s: Subspace):
        self.img = img
        self.space = s
        self._basis = None
        self._ann = None

    @property
    def basis(self):
        if self._basis is None:
            self._basis = self.img.rows(self.space.basis)
        return self._basis

    @property
    def ann(self):
        if self._ann is None:
            self._ann = self.img.rows(self.space.annihilator_rows())
        return self._ann


def _maybe_contained(p: int, small_fp: _Fingerprint, big_fp: _Fingerprint) -> bool:
    """False means 'certainly not contained'; True means 'probably', to be
    confirmed exactly."""
    for a in big_fp.ann:
        for b in small_fp.basis:
            acc = 0
            for x, y in zip(a, b):
                if x and y:
                    acc += x * y
            if acc % p:
                return False
    return True


# ---------------------------------------------------------------------------
# arrangements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Arrangement:
    """A finite set of proper subspaces in canonical order (dimension, then
    canonical basis), with a per-member provenance witness."""

    ambient_dim: int
    conductor: int
    subspaces: tuple
    provenance: tuple

    @property
    def size(self) -> int:
        return len(self.subspaces)

    def members_of_dim(self, d: int):
        return [s for s in self.subspaces if s.dim == d]

    def dim_counts(self) -> dict:
        out: dict[int, int] = {}
        for s in self.subspaces:
            out[s.dim] = out.get(s.dim, 0) + 1
        return out

    def key_set(self):
        return {s.key for s in self.subspaces}

    def embed(self, L2: int) -> "Arrangement":
        if L2 == self.conductor:
            return self
        return Arrangement(
            self.ambient_dim,
            L2,
            tuple(s.embed(L2) for s in self.subspaces),
            self.provenance,
        )


def _finalize(ambient, L, members, provenance) -> Arrangement:
    order = sorted(members.values(), key=lambda s: s.sort_key())
    prov = tuple(provenance.get(s.key) for s in order)
    return Arrangement(ambient, L, tuple(order), prov)


def _dot(a, b) -> CycNum:
    acc = None
    for x, y in zip(a, b):
        if not (x.is_zero() or y.is_zero()):
            acc = x * y if acc is None else acc + x * y
    if acc is None:
        return CycNum.zero(a[0].conductor)
    return acc


def _meet_hyperplane(u: Subspace, normal) -> Subspace:
    """Intersection of u with the hyperplane {x : normal . x = 0}."""
    if u.is_zero():
        return u
    ts = [_dot(normal, row) for row in u.basis]
    pivot = None
    for idx, t in enumerate(ts):
        if not t.is_zero():
            pivot = idx
            break
    if pivot is None:
        return u
    inv = ts[pivot].inv()
    prow = u.basis[pivot]
    rows = []
    for idx, row in enumerate(u.basis):
        if idx == pivot:
            continue
        f = ts[idx] * inv
        if f.is_zero():
            rows.append(list(row))
        else:
            rows.append([a - f * b for a, b in zip(row, prow)])
    return Subspace.from_rows(u.ambient_dim, rows, u.conductor)


def _intersect_with(u: Subspace, g: Subspace) -> Subspace:
    if g.dim == g.ambient_dim - 1:
        return _meet_hyperplane(u, g.annihilator_rows()[0])
    return subspace_intersect(u, g)


def fixed_space_of_subset(group: MatrixGroup, indices) -> Subspace:
    """Joint fixed space of the chosen elements (empty set gives V)."""
    elems = group.elements
    acc = Subspace.full(group.ambient_dim, group.conductor)
    for i in indices:
        acc = subspace_intersect(acc, fixed_space(elems[i]))
        if acc.is_zero():
            break
    return acc


def pointwise_stabilizer(group: MatrixGroup, u: Subspace):
    """Indices of all elements fixing u pointwise; always a subgroup."""
    if u.conductor != group.conductor:
        if group.conductor % u.conductor != 0:
            raise ConductorMismatch(
                "subspace conductor must divide the group conductor"
            )
        u = u.embed(group.conductor)
    out = []
    for i, g in enumerate(group.elements):
        if all(g.apply(row) == row for row in u.basis):
            out.append(i)
    return out


def _seed_fixed_spaces(group: MatrixGroup):
    """Distinct element fixed spaces (identity excluded), with the smallest
    fixing element index per seed, in first-discovery order."""
    seeds = []
    by_key = {}
    for i, g in enumerate(group.elements):
        if i == 0:
            continue
        fs = fixed_space(g)
        if fs.dim == group.ambient_dim:
            continue  # non-faithful action; identity-acting element
        if fs.key not in by_key:
            by_key[fs.key] = len(seeds)
            seeds.append((fs, i))
    return seeds


def _containers_among_seeds(member: Subspace, member_fp, seeds, seed_fps, img):
    """Indices of seeds strictly containing `member` (mod-p filtered, then
    exactly confirmed)."""
    out = []
    d = member.dim
    p = img.p
    for idx, (s, _) in enumerate(seeds):
        if s.dim <= d:
            continue
        if not _maybe_contained(p, member_fp, seed_fps[idx]):
            continue
        if subspace_contains(s, member):
            out.append(idx)
    return out


def isotropy_arrangement(group: MatrixGroup) -> Arrangement:
    """The arrangement of fixed spaces of nontrivial isotropy subgroups.

    Algorithm: collect the element fixed spaces, close them under pairwise
    intersection into the fixed-space lattice, and keep the lattice members
    that equal the joint fixed space of their pointwise stabilizer.  The
    provenance of a member lists one fixing element per seed containing it;
    the common fixed space of those elements is the member itself.
    """
    n, L = group.ambient_dim, group.conductor
    seeds = _seed_fixed_spaces(group)
    if not seeds:
        return Arrangement(n, L, (), ())
    img = _mod_image(L)
    seed_fps = [_Fingerprint(img, s) for s, _ in seeds]

    # generator reduction: a seed is redundant for closure generation when it
    # equals the intersection of the seeds strictly containing it
    seed_containers = []
    gens = []
    for idx, (s, _) in enumerate(seeds):
        cont = _containers_among_seeds(s, seed_fps[idx], seeds, seed_fps, img)
        seed_containers.append(cont)
        if not cont:
            gens.append(s)
            continue
        acc = None
        for c in cont:
            acc = seeds[c][0] if acc is None else _intersect_with(acc, seeds[c][0])
            if acc.dim == s.dim:
                break
        if acc is None or acc.key != s.key:
            gens.append(s)

    # lattice closure: any iterated intersection of seeds is an intersection
    # of irreducible seeds, so closing against `gens` suffices
    members = {}
    queue = []
    for s, _ in seeds:
        if s.key not in members:
            members[s.key] = s
            queue.append(s)
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        u_fp = _Fingerprint(img, u)
        for g in gens:
            if (
                g.dim >= u.dim
                and _maybe_contained(img.p, u_fp, _seed_gen_fp(img, g))
                and subspace_contains(g, u)
            ):
                continue  # u is inside g, nothing new
            w = _intersect_with(u, g)
            if w.key not in members:
                members[w.key] = w
                queue.append(w)

    # keep members that are the full fixed space of their stabilizer
    seed_index_by_key = {s.key: i for i, (s, _) in enumerate(seeds)}
    out = {}
    provenance = {}
    for u in members.values():
        u_fp = _Fingerprint(img, u)
        own = seed_index_by_key.get(u.key)
        containing = []
        if own is not None:
            containing.append(own)
            containing.extend(seed_containers[own])
        else:
            containing.extend(
                _containers_among_seeds(u, u_fp, seeds, seed_fps, img)
            )
        if not containing:
            continue  # trivial pointwise stabilizer
        acc = None
        for c in containing:
            acc = seeds[c][0] if acc is None else _intersect_with(acc, seeds[c][0])
            if acc.key == u.key:
                break
        if acc.key == u.key:
            out[u.key] = u
            provenance[u.key] = {
                "fixing_elements": sorted(seeds[c][1] for c in containing)
            }
    return _finalize(n, L, out, provenance)


_GEN_FP_CACHE: dict = {}


def _seed_gen_fp(img, s: Subspace):
    key = (img.L, s.key)
    fp = _GEN_FP_CACHE.get(key)
    if fp is None:
        fp = _Fingerprint(img, s)
        _GEN_FP_CACHE[key] = fp
    return fp


def reflection_arrangement(w: MatrixGroup) -> Arrangement:
    """Reflecting hyperplanes of a reflection group and their intersections
    (the full space excluded)."""
    if not generated_by_reflections(w):
        raise ValueError("group is not generated by its reflections")
    n, L = w.ambient_dim, w.conductor
    hyperplanes = []
    by_key = {}
    for i, g in enumerate(w.elements):
        if classify(g).tag == "reflection":
            fs = fixed_space(g)
            if fs.key not in by_key:
                by_key[fs.key] = len(hyperplanes)
                hyperplanes.append((fs, i))
    normals = [h.annihilator_rows()[0] for h, _ in hyperplanes]
    members = {}
    queue = []
    for h, _ in hyperplanes:
        members[h.key] = h
        queue.append(h)
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for normal in normals:
            v = _meet_hyperplane(u, normal)
            if v.key not in members:
                members[v.key] = v
                queue.append(v)
    img = _mod_image(L)
    hyper_fps = [_Fingerprint(img, h) for h, _ in hyperplanes]
    provenance = {}
    for u in members.values():
        u_fp = _Fingerprint(img, u)
        containing = []
        for idx, (h, _) in enumerate(hyperplanes):
            if u.dim == n - 1:
                if u.key == h.key:
                    containing.append(idx)
                continue
            if _maybe_contained(img.p, u_fp, hyper_fps[idx]) and subspace_contains(h, u):
                containing.append(idx)
        provenance[u.key] = {"hyperplanes": containing}
    return _finalize(n, L, members, provenance)


def arrangement_contains(big: Arrangement, small: Arrangement):
    """Set containment of arrangements; on failure returns one member of
    `small` absent from `big` (largest dimension first, canonical order)."""
    if big.ambient_dim != small.ambient_dim:
        raise ValueError("ambient dimensions differ")
    L = math.lcm(big.conductor, small.conductor)
    big_keys = big.embed(L).key_set()
    candidates = sorted(
        small.embed(L).subspaces, key=lambda s: (-s.dim,) + s.sort_key()[1:]
    )
    for s in candidates:
        if s.key not in big_keys:
            return False, s
    return True, None


# ---------------------------------------------------------------------------
# the complex-coordinate planes of the wreath arrangement
# ---------------------------------------------------------------------------

def _require_complex_structure(L: int):
    if L % 4 != 0:
        raise ConductorMismatch("need 4 | conductor for the complex structure")


def coordinate_plane_x0(L: int) -> Subspace:
    """{x = 0}: the second complex coordinate plane of C^2 = R^4."""
    _require_complex_structure(L)
    one, zero = CycNum.one(L), CycNum.zero(L)
    return Subspace.from_rows(4, [[zero, zero, one, zero], [zero, zero, zero, one]])


def coordinate_plane_y0(L: int) -> Subspace:
    """{y = 0}: the first complex coordinate plane."""
    _require_complex_structure(L)
    one, zero = CycNum.one(L), CycNum.zero(L)
    return Subspace.from_rows(4, [[one, zero, zero, zero], [zero, one, zero, zero]])


def zeta_plane(L: int, m: int, j: int) -> Subspace:
    """{y = zeta_m^j x} as a real plane in (Re x, Im x, Re y, Im y)."""
    _require_complex_structure(L)
    if L % m != 0:
        raise ConductorMismatch(f"conductor {L} lacks an m-th root (m={m})")
    re, im = real_imag_parts(zeta_power(L, (L // m) * j))
    one, zero = CycNum.one(L), CycNum.zero(L)
    return Subspace.from_rows(4, [[one, zero, re, im], [zero, one, -im, re]])


def wreath_plane_list(L: int, m: int):
    """The planes x=0, y=0, y=zeta^j x of the degree-4 wreath arrangement."""
    planes = [coordinate_plane_x0(L), coordinate_plane_y0(L)]
    planes.extend(zeta_plane(L, m, j) for j in range(m))
    return planes


def complex_coords(u) -> tuple[CycNum, CycNum]:
    """Complex coordinate values (x, y) of a real 4-vector of CycNums."""
    u = list(u)
    if len(u) != 4:
        raise ValueError("need a 4-vector")
    L = u[0].conductor
    _require_complex_structure(L)
    i = zeta_power(L, L // 4)
    return u[0] + i * u[1], u[2] + i * u[3]


# ---------------------------------------------------------------------------
# phase values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseValue:
    """The direction of y(u)/x(u) on the unit circle, or undefined.

    The modulus of the ratio is usually irrational, so the value is stored
    as the exact ratio itself and phases are compared exactly: two nonzero
    complex field values share a phase iff z1 * conj(z2) is a positive
    conjugation-fixed number.  When the ratio happens to lie on the unit
    circle (ratio * conj(ratio) = 1) it is itself the phase.
    """

    ratio: CycNum | None

    @property
    def defined(self) -> bool:
        return self.ratio is not None

    def norm_sq(self) -> CycNum:
        if not self.defined:
            raise ValueError("undefined phase")
        return self.ratio * self.ratio.conj()

    def is_unit(self) -> bool:
        return self.defined and self.norm_sq().is_one()

    def unit_value(self) -> CycNum:
        if not self.is_unit():
            raise ValueError("ratio does not lie on the unit circle")
        return self.ratio

    def same_phase(self, other: "PhaseValue") -> bool:
        if not (self.defined and other.defined):
            raise ValueError("undefined phase")
        w = self.ratio * other.ratio.conj()
        if w.conj() != w:
            return False
        return is_positive_real(w)


def phase_ratio(u, m: int | None = None) -> PhaseValue:
    """Phase of y(u)/x(u) for a real vector u in C^2 = R^4; undefined when
    x(u) = 0 or y(u) = 0.  `m` optionally declares the root order the caller
    will compare against, enforcing that the conductor supports it."""
    x, y = complex_coords(u)
    L = u[0].conductor
    if m is not None and L % m != 0:
        raise ConductorMismatch(f"conductor {L} lacks an m-th root (m={m})")
    if x.is_zero() or y.is_zero():
        return PhaseValue(None)
    return PhaseValue(y * x.inv())


# ---------------------------------------------------------------------------
# plane meet counting
# ---------------------------------------------------------------------------

class PlanePreconditionError(ValueError):
    """The plane does not meet both coordinate planes nontrivially."""


def plane_meet_count(p: Subspace, m: int) -> int:
    """How many of the planes {y = zeta_m^j x}, j = 0..m-1, the plane p meets
    nontrivially.  Requires p to be a plane in R^4 meeting {x=0} and {y=0}
    nontrivially."""
    if p.ambient_dim != 4 or p.dim != 2:
        raise PlanePreconditionError("need a plane (dim 2) in R^4")
    L = p.conductor
    if not meets_nontrivially(p, coordinate_plane_x0(L)) or not meets_nontrivially(
        p, coordinate_plane_y0(L)
    ):
        raise PlanePreconditionError(
            "plane must meet both coordinate planes nontrivially"
        )
    count = 0
    for j in range(m):
        if meets_nontrivially(p, zeta_plane(L, m, j)):
            count += 1
    return count


def sample_rational_plane(rng: random.Random, L: int) -> Subspace:
    """A random plane spanned by a nonzero rational v in {y=0} and a nonzero
    rational w in {x=0}; coordinates have numerators/denominators <= 10."""

    def coord():
        return Fraction(rng.randint(-10, 10), rng.randint(1, 10))

    def pair():
        while True:
            a, b = coord(), coord()
            if a != 0 or b != 0:
                return a, b

    a, b = pair()
    c, d = pair()
    zero = CycNum.zero(L)
    v = [CycNum.rational(L, a), CycNum.rational(L, b), zero, zero]
    w = [zero, zero, CycNum.rational(L, c), CycNum.rational(L, d)]
    return Subspace.from_rows(4, [v, w])


# ---------------------------------------------------------------------------
# structural dichotomy for 2+2 reflection groups
# ---------------------------------------------------------------------------

def _coordinate_block_space(L: int, total: int, coords) -> Subspace:
    one, zero = CycNum.one(L), CycNum.zero(L)
    rows = []
    for c in coords:
        row = [zero] * total
        row[c] = one
        rows.append(row)
    return Subspace.from_rows(total, rows, L)


def structural_dichotomy_check(w: MatrixGroup, blocks=((0, 1), (2, 3))):
    """Verify that every plane of the reflection arrangement of w either
    equals one of the two coordinate block planes V1, V2 or meets each of
    them in a line.

    w must be a direct sum of reflection groups acting inside the two
    declared 2-dimensional blocks (degree-1 factors padded into the blocks
    are fine).  Returns (ok, report, arrangement)."""
    n, L = w.ambient_dim, w.conductor
    if n != 4 or tuple(sorted(blocks[0] + blocks[1])) != (0, 1, 2, 3):
        raise ValueError("need two complementary 2-coordinate blocks in R^4")
    b1, b2 = set(blocks[0]), set(blocks[1])
    for g in w.generators:
        moved = set()
        for i in range(4):
            for j in range(4):
                e = g.entry(i, j)
                if (i == j and not e.is_one()) or (i != j and not e.is_zero()):
                    moved.add(i)
                    moved.add(j)
        if not (moved <= b1 or moved <= b2):
            raise ValueError("generators must act inside one declared block")
        if classify(g).tag != "reflection":
            raise ValueError("generators must be reflections")
    v1 = _coordinate_block_space(L, 4, blocks[0])
    v2 = _coordinate_block_space(L, 4, blocks[1])
    arr = reflection_arrangement(w)
    report = []
    ok = True
    for p in arr.members_of_dim(2):
        if p.key == v1.key:
            report.append("V1")
        elif p.key == v2.key:
            report.append("V2")
        else:
            d1 = subspace_intersect(p, v1).dim
            d2 = subspace_intersect(p, v2).dim
            if d1 == 1 and d2 == 1:
                report.append("meets-both")
            else:
                report.append(f"violation(d1={d1},d2={d2})")
                ok = False
    return ok, report, arr


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "ambient": arr.ambient_dim,
        "subspaces": [subspace_to_json(s) for s in arr.subspaces],
        "provenance": list(arr.provenance),
    }
