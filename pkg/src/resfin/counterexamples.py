"""Two groups whose detection growth separates from their relatives.

The lamplighter Z/2 wr Z has candidates delta_1 + delta_{1+lcm(1..k)} whose
minimal detecting fold Z/2 wr Z/m needs m > k, so the quotient order m*2^m
explodes while every SQUARED element is already seen by a logarithmically
small fold: detection growth and its squared variant genuinely differ.

The plane group Z^2 x| Q (Q the eight signed permutation matrices) contains
Z^2 with index 8, yet the candidates (lcm(1..k), 0) need quotients of order
8d^2 with d > k, against the log-sized quotients that suffice inside Z^2
itself: detection growth is not stable under finite index.

Both families come with the certificates that make the lower bounds checkable
on concrete quotients: injectivity of the witness set for the lamplighter,
and the kernel-lattice index bound for the semidirect product.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from resfin import arith, matgrp
from resfin.chevalley import CheckResult
from resfin.matgrp import Mat, RangeExhaustedError, UndetectableError

DEFAULT_FOLD_LIMIT = 256


# ---------------------------------------------------------------------------
# lamplighter Z/2 wr Z


@dataclass(frozen=True)
class LampElement:
    """(lamp configuration, lamplighter position): support is the set of
    lit positions, multiplication shifts the right factor's lamps."""

    support: frozenset[int]
    shift: int

    def __mul__(self, other: LampElement) -> LampElement:
        moved = {i + self.shift for i in other.support}
        return LampElement(self.support ^ moved, self.shift + other.shift)

    def inv(self) -> LampElement:
        return LampElement(
            frozenset(i - self.shift for i in self.support), -self.shift
        )

    def is_identity(self) -> bool:
        return not self.support and self.shift == 0


LAMP_IDENTITY = LampElement(frozenset(), 0)


def delta(i: int) -> LampElement:
    """A single lit lamp at position i."""
    return LampElement(frozenset((i,)), 0)


def lamp_fold(g: LampElement, m: int) -> tuple[frozenset[int], int]:
    """Image of g in Z/2 wr Z/m: lamps collapse onto residues mod m, keeping
    the parity of how many land on each; the shift reduces mod m."""
    if m < 2:
        raise ValueError("fold modulus must be >= 2")
    parity: set[int] = set()
    for i in g.support:
        parity ^= {i % m}
    return frozenset(parity), g.shift % m


def folded_mul(
    a: tuple[frozenset[int], int], b: tuple[frozenset[int], int], m: int
) -> tuple[frozenset[int], int]:
    moved = {(i + a[1]) % m for i in b[0]}
    return a[0] ^ moved, (a[1] + b[1]) % m


def lamp_candidate(k: int, corrected: bool = True) -> LampElement:
    """delta_1 + delta_{1+lcm(1..k)}, or the uncorrected delta_1 + delta_lcm.

    The uncorrected form dies under no small fold on the shifted slot, so it
    is detected already at m = 2 whenever the lcm is even; the corrected form
    survives a fold exactly when the modulus divides the lcm.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    l = math.lcm(*range(1, k + 1))
    pos = 1 + l if corrected else l
    return delta(1) * delta(pos)


@dataclass(frozen=True)
class LampDetection:
    modulus: int
    order: int


def lamp_detect(g: LampElement, m_max: int = DEFAULT_FOLD_LIMIT) -> LampDetection:
    """Smallest fold modulus m whose image of g is nontrivial; order m*2^m."""
    if g.is_identity():
        raise UndetectableError("identity dies in every fold")
    for m in range(2, m_max + 1):
        support, shift = lamp_fold(g, m)
        if support or shift:
            return LampDetection(m, m * 2**m)
    raise RangeExhaustedError(f"no fold modulus <= {m_max} detects the element")


def lamp_quotient_D(k: int, corrected: bool = True) -> LampDetection:
    """Minimal detecting fold of the k-th candidate, without materializing
    the fold: the corrected candidate survives mod m iff m does not divide
    lcm(1..k), so the answer is the least prime power above k."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if corrected:
        p, i = arith.prime_powers_above(k, 2 * k + 2)[0]
        m = p**i
    else:
        m = arith.least_nondivisor(max(math.lcm(*range(1, k + 1)) - 1, 1))
    return LampDetection(m, m * 2**m)


def lamp_injectivity_certificate(k: int, m: int) -> CheckResult:
    """Check that the witness set {(delta_n, t) : n, t <= floor(k/4)} stays
    injective in the detecting fold Z/2 wr Z/m."""
    if k < 4:
        raise ValueError("the witness set is empty below k = 4")
    if all(e <= arith.lcm_valuation(k, p) for p, e in arith.factorize(m)):
        raise ValueError(f"m = {m} divides lcm(1..{k}), so it detects nothing")
    side = k // 4
    images = {
        lamp_fold(LampElement(frozenset((n,)), t), m)
        for n in range(1, side + 1)
        for t in range(1, side + 1)
    }
    expected = side * side
    status = "pass" if len(images) == expected else "fail"
    return CheckResult(
        "lamp_injectivity",
        f"k={k}, m={m}",
        status,
        f"{len(images)} distinct images, expected {expected}",
    )


# ---------------------------------------------------------------------------
# Z^2 x| Q for the eight signed permutation matrices


@functools.cache
def signed_permutations() -> tuple[Mat, ...]:
    """The order-8 subgroup of GL_2(Z) generated by diag(1,-1) and the swap."""
    gens = (((1, 0), (0, -1)), ((0, 1), (1, 0)))
    seen = {matgrp.identity(2)}
    frontier = [matgrp.identity(2)]
    order = [matgrp.identity(2)]
    while frontier:
        nxt = []
        for q in frontier:
            for s in gens:
                r = matgrp.mat_mul(q, s)
                if r not in seen:
                    seen.add(r)
                    order.append(r)
                    nxt.append(r)
        frontier = nxt
    return tuple(order)


def _apply(q: Mat, v: tuple[int, int]) -> tuple[int, int]:
    return (
        q[0][0] * v[0] + q[0][1] * v[1],
        q[1][0] * v[0] + q[1][1] * v[1],
    )


@dataclass(frozen=True)
class SemidirectElement:
    """(vector, signed permutation) with (v, q)(w, r) = (v + q w, q r)."""

    vec: tuple[int, int]
    rot: Mat

    def __post_init__(self):
        if self.rot not in signed_permutations():
            raise ValueError("rotation part must be one of the 8 signed permutations")

    def __mul__(self, other: SemidirectElement) -> SemidirectElement:
        w = _apply(self.rot, other.vec)
        return SemidirectElement(
            (self.vec[0] + w[0], self.vec[1] + w[1]),
            matgrp.mat_mul(self.rot, other.rot),
        )

    def inv(self) -> SemidirectElement:
        rinv = matgrp.mat_inv(self.rot)
        w = _apply(rinv, self.vec)
        return SemidirectElement((-w[0], -w[1]), rinv)

    def is_identity(self) -> bool:
        return self.vec == (0, 0) and self.rot == matgrp.identity(2)


SEMIDIRECT_IDENTITY = SemidirectElement((0, 0), matgrp.identity(2))


def semidirect_candidate(k: int) -> SemidirectElement:
    if k < 2:
        raise ValueError("k must be >= 2")
    return SemidirectElement((math.lcm(*range(1, k + 1)), 0), matgrp.identity(2))


def semidirect_fold(g: SemidirectElement, d: int) -> tuple[tuple[int, int], Mat]:
    """Image in (Z/d)^2 x| Q: reduce the vector part mod d."""
    if d < 1:
        raise ValueError("fold modulus must be >= 1")
    return (g.vec[0] % d, g.vec[1] % d), g.rot


@dataclass(frozen=True)
class SemidirectDetection:
    modulus: int
    order: int


def semidirect_detect(
    g: SemidirectElement, d_max: int = DEFAULT_FOLD_LIMIT
) -> SemidirectDetection:
    """Smallest d with nontrivial image in (Z/d)^2 x| Q, of order 8 d^2."""
    if g.is_identity():
        raise UndetectableError("identity dies in every fold")
    if g.rot != matgrp.identity(2):
        return SemidirectDetection(1, 8)
    for d in range(2, d_max + 1):
        vec, _ = semidirect_fold(g, d)
        if vec != (0, 0):
            return SemidirectDetection(d, 8 * d * d)
    raise RangeExhaustedError(f"no fold modulus <= {d_max} detects the element")


def semidirect_quotient_D(k: int) -> SemidirectDetection:
    """Minimal detecting fold of (lcm(1..k), 0): the least d not dividing
    the lcm, i.e. the least prime power above k, with quotient order 8 d^2."""
    if k < 2:
        raise ValueError("k must be >= 2")
    p, i = arith.prime_powers_above(k, 2 * k + 2)[0]
    d = p**i
    return SemidirectDetection(d, 8 * d * d)


def semidirect_kernel_structure_check(d: int, box: int = 2) -> CheckResult:
    """For the fold over d, confirm ker cap Z^2 is a Q-stable lattice that
    contains d Z x d Z with index at most 4.

    The kernel vectors are found by scanning the box [-box*d, box*d]^2
    through the actual fold map, a lattice basis is extracted, and the
    containment, the index, and Q-stability are each verified on the basis.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    span = max(box * d, 2)
    vectors = [
        (a, b)
        for a in range(-span, span + 1)
        for b in range(-span, span + 1)
        if semidirect_fold(SemidirectElement((a, b), matgrp.identity(2)), d)[0]
        == (0, 0)
    ]
    basis = _lattice_basis(vectors)
    if basis is None:
        return CheckResult(
            "semidirect_kernel_structure", f"d={d}", "fail", "kernel lattice not of rank 2"
        )
    det = basis[0][0] * basis[1][1]
    contains = _in_lattice((d, 0), basis) and _in_lattice((0, d), basis)
    stable = all(
        _in_lattice(_apply(q, v), basis) for q in signed_permutations() for v in basis
    )
    index = d * d // det if contains else 0
    ok = contains and stable and 1 <= index <= 4
    return CheckResult(
        "semidirect_kernel_structure",
        f"d={d}",
        "pass" if ok else "fail",
        f"basis={basis}, index of dZxdZ = {index}, Q-stable={stable}",
    )


def _lattice_basis(vectors) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Reduce integer vectors to a basis ((g, y), (0, c)) with g, c > 0."""
    vs = [list(v) for v in vectors if v != (0, 0)]
    while True:
        nz = [v for v in vs if v[0] != 0]
        if len(nz) <= 1:
            break
        nz.sort(key=lambda v: abs(v[0]))
        pivot = nz[0]
        for v in nz[1:]:
            q = v[0] // pivot[0]
            v[0] -= q * pivot[0]
            v[1] -= q * pivot[1]
    first = next((v for v in vs if v[0] != 0), None)
    rest = [v[1] for v in vs if v[0] == 0 and v[1] != 0]
    if first is None or not rest:
        return None
    if first[0] < 0:
        first = [-first[0], -first[1]]
    c = math.gcd(*rest) if len(rest) > 1 else abs(rest[0])
    return (first[0], first[1] % c), (0, c)


def _in_lattice(v: tuple[int, int], basis) -> bool:
    (g, y), (_, c) = basis
    if v[0] % g:
        return False
    a = v[0] // g
    return (v[1] - a * y) % c == 0


# ---------------------------------------------------------------------------
# free abelian reference point


@dataclass(frozen=True)
class AbelianDetection:
    modulus: int
    order: int


def abelian_candidate(k: int) -> tuple[int, int]:
    """(lcm(1..k), 0): the free-abelian analogue of the other candidates,
    useful as the baseline every extension is compared against."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return (math.lcm(*range(1, k + 1)), 0)


def abelian_D(v: tuple[int, ...]) -> AbelianDetection:
    """Minimal finite quotient of Z^d seeing v: a coordinate functional into
    Z/a for the least a not dividing gcd(v)."""
    if not v or all(c == 0 for c in v):
        raise UndetectableError("zero survives in no finite quotient")
    g = 0
    for c in v:
        g = math.gcd(g, c)
    a = arith.least_nondivisor(g)
    return AbelianDetection(a, a)
