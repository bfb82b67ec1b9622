"""Word balls, normal Farb growth tables, candidate sequences, exponent fits.

The growth function F(n) maximizes, over the word ball of radius n, the size
of the smallest congruence quotient detecting the element; F^k does the same
for k-th powers.  Tables carry exact witnesses.  The candidate sequence
E_12(e * alpha^k * lcm(1..k)) probes F along a sparse family whose minimal
detecting modulus is computable purely from valuations, which is what lets
the empirical exponent run to k in the thousands and recover dim(G).
"""

from __future__ import annotations

import itertools
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from resfin import arith, matgrp
from resfin.chevalley import BudgetExceededError
from resfin.matgrp import Mat, DetectionResult

DEFAULT_BALL_BUDGET = 10**6
MATERIALIZE_LIMIT = 64


# ---------------------------------------------------------------------------
# generating sets and word balls


@dataclass(frozen=True)
class GeneratingSet:
    """A symmetrized generating set with printable labels."""

    name: str
    labels: tuple[str, ...]
    mats: tuple[Mat, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.mats):
            raise ValueError("labels and matrices must align")
        pool = set(self.mats)
        for m in self.mats:
            if matgrp.mat_inv(m) not in pool:
                raise ValueError(f"set not closed under inverse at {m}")

    def __iter__(self):
        return iter(zip(self.labels, self.mats))


def sl2_st() -> GeneratingSet:
    """The classical {S, T} generators of SL_2(Z), symmetrized."""
    s = matgrp.mat([[0, -1], [1, 0]])
    t = matgrp.elementary(2, 1, 2, 1)
    return GeneratingSet(
        "S,T",
        ("S", "S^-1", "T", "T^-1"),
        (s, matgrp.mat_inv(s), t, matgrp.mat_inv(t)),
    )


def elementary_set(n: int) -> GeneratingSet:
    """All E_ij(+-1) for SL_n(Z)."""
    labels = []
    mats = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            labels.append(f"E{i}{j}")
            mats.append(matgrp.elementary(n, i, j, 1))
            labels.append(f"E{i}{j}^-1")
            mats.append(matgrp.elementary(n, i, j, -1))
    return GeneratingSet(f"E({n})", tuple(labels), tuple(mats))


def word_ball(gens: GeneratingSet, n: int, budget: int = DEFAULT_BALL_BUDGET) -> dict[Mat, int]:
    """Exact ball of radius n: element -> true word length, by layered BFS."""
    if n < 0:
        raise ValueError("radius must be >= 0")
    ident = matgrp.identity(len(gens.mats[0]))
    ball = {ident: 0}
    frontier = [ident]
    for length in range(1, n + 1):
        new = []
        for g in frontier:
            for s in gens.mats:
                h = matgrp.mat_mul(g, s)
                if h not in ball:
                    ball[h] = length
                    new.append(h)
                    if len(ball) > budget:
                        raise BudgetExceededError(
                            f"ball exceeded {budget} elements at radius {length}"
                        )
        frontier = new
    return ball


# ---------------------------------------------------------------------------
# growth tables


@dataclass(frozen=True)
class GrowthRow:
    n: int
    ball_size: int
    f_value: int
    witness: Mat | None
    detection: DetectionResult | None


@dataclass(frozen=True)
class GrowthTable:
    """F (or F^k) along word balls, with witnesses; family label F_cong."""

    gens_name: str
    power: int
    allow_central: bool
    rows: tuple[GrowthRow, ...]

    @property
    def family(self) -> str:
        return "F_cong_central" if self.allow_central else "F_cong"

    def f(self, n: int) -> int:
        return self.rows[n].f_value


def _eval_detection(args):
    target, spec, allow_central = args
    return target, matgrp.congruence_D(target, spec, allow_central=allow_central)


def farb_growth(
    gens: GeneratingSet,
    spec,
    n_max: int,
    k: int = 1,
    allow_central: bool = False,
    budget: int = DEFAULT_BALL_BUDGET,
    workers: int = 1,
    parallel_threshold: int = 512,
) -> GrowthTable:
    """The table n -> F^k(n) for n <= n_max, maximizing D(gamma^k) over the
    ball and skipping gamma with gamma^k = 1 (all gamma != 1 when k = 1).

    Witnesses are the first maximizer in (word length, entries) order, so
    tables are deterministic regardless of worker count.
    """
    if k < 1:
        raise ValueError("power must be >= 1")
    ball = word_ball(gens, n_max, budget=budget)
    ident = matgrp.identity(spec.n)
    ordered = sorted(ball.items(), key=lambda kv: (kv[1], kv[0]))

    # deduplicated detection targets
    targets: dict[Mat, DetectionResult | None] = {}
    gamma_target: list[tuple[int, Mat, Mat]] = []
    for g, length in ordered:
        tg = g if k == 1 else matgrp.mat_pow(g, k)
        if tg == ident:
            continue
        gamma_target.append((length, g, tg))
        targets.setdefault(tg, None)

    todo = sorted(targets)
    if workers > 1 and len(todo) >= parallel_threshold:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for tg, res in pool.map(
                _eval_detection,
                ((t, spec, allow_central) for t in todo),
                chunksize=64,
            ):
                targets[tg] = res
    else:
        for tg in todo:
            targets[tg] = matgrp.congruence_D(tg, spec, allow_central=allow_central)

    rows = [GrowthRow(0, 1, 0, None, None)]
    best = 0
    best_witness: Mat | None = None
    best_det: DetectionResult | None = None
    idx = 0
    counts = _ball_counts(ball, n_max)
    for n in range(1, n_max + 1):
        while idx < len(gamma_target) and gamma_target[idx][0] <= n:
            _, g, tg = gamma_target[idx]
            det = targets[tg]
            if det.quotient_order > best:
                best = det.quotient_order
                best_witness = g
                best_det = det
            idx += 1
        rows.append(GrowthRow(n, counts[n], best, best_witness, best_det))
    return GrowthTable(gens.name, k, allow_central, tuple(rows))


def _ball_counts(ball: dict[Mat, int], n_max: int) -> list[int]:
    counts = [0] * (n_max + 1)
    for length in ball.values():
        counts[length] += 1
    out = []
    acc = 0
    for n in range(n_max + 1):
        acc += counts[n]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# candidate sequences


@dataclass(frozen=True)
class CandidateSeq:
    """The probe family A_k = E_12(e * alpha^k * lcm(1..k)), alpha = prod(S)."""

    spec: object
    s_primes: tuple[int, ...] = ()
    e: int = 1

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("index multiplier must be >= 1")
        seen = set()
        for p in self.s_primes:
            if not arith.is_prime(p) or p in seen:
                raise ValueError("S must be a set of distinct primes")
            seen.add(p)

    @property
    def alpha(self) -> int:
        return math.prod(self.s_primes) if self.s_primes else 1

    def r(self, k: int) -> int:
        """r_k = alpha^k * lcm(1..k), materialized; k is capped to keep the
        integer at most a few hundred digits."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if k > MATERIALIZE_LIMIT:
            raise ValueError(
                f"k = {k} exceeds the materialization limit {MATERIALIZE_LIMIT};"
                " use the valuation-based path"
            )
        return self.alpha**k * math.lcm(*range(1, k + 1))

    def r_log2(self, k: int) -> float:
        """log2(r_k) from valuations; no huge integers formed."""
        if k < 1:
            raise ValueError("k must be >= 1")
        out = k * (math.log2(self.alpha) if self.s_primes else 0.0)
        for p in arith.primes_up_to(max(k, 2)):
            if p <= k:
                out += arith.lcm_valuation(k, p) * math.log2(p)
        return out

    def multiplier_valuation(self, k: int, p: int) -> int:
        """v_p(e * alpha^k * lcm(1..k)) without forming the product."""
        v = arith.lcm_valuation(k, p)
        if p in self.s_primes:
            v += k
        e = self.e
        while e % p == 0:
            v += 1
            e //= p
        return v


def candidate_elements(cs: CandidateSeq, k: int) -> Mat:
    """A_k = E_12(e * r_k) as an exact integer matrix."""
    return matgrp.elementary(cs.spec.n, 1, 2, cs.e * cs.r(k))


def candidate_D_analytic(cs: CandidateSeq, k: int, allow_central: bool = False) -> DetectionResult:
    """Minimal detecting congruence quotient of A_k, via valuations only.

    A prime power q = p^i detects E_12(M) exactly when p^i does not divide
    M = e * alpha^k * lcm(1..k); divisibility is read off multiplier_valuation,
    so k can be far beyond what candidate_elements can materialize.  The
    search and stop rule mirror matgrp.congruence_D, and the two agree
    exactly on the materializable range (a test pins this for k <= 40).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    spec = cs.spec
    fnum, fden = matgrp._order_floor_fraction(spec.n)
    slack = 2 * spec.n if allow_central else 1
    best: DetectionResult | None = None
    for q in matgrp._prime_powers_unbounded():
        if best is not None and q**spec.dim * fnum > best.quotient_order * fden * slack:
            break
        p, i = arith.is_prime_power(q)
        if i <= cs.multiplier_valuation(k, p):
            continue  # q divides the multiplier: A_k dies mod q
        order = spec.order_mod(q)
        cand = DetectionResult(q, order, False)
        if best is None or cand.key() < best.key():
            best = cand
        if allow_central:
            # a nontrivial elementary image is never scalar, so the central
            # quotient always sees it
            z = spec.center_order_mod(q)
            cand = DetectionResult(q, order // z, True)
            if cand.key() < best.key():
                best = cand
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# exponent fitting


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    max_residual: float


def fit_exponent(pairs) -> FitResult:
    """Log-log least squares: slope is the empirical growth exponent.

    max_residual is the largest relative deviation |y / y_fit - 1| over the
    input points.
    """
    pts = [(float(x), float(y)) for x, y in pairs]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    if any(x <= 0 or y <= 0 for x, y in pts):
        raise ValueError("points must be positive for a log-log fit")
    xs = [math.log(x) for x, _ in pts]
    ys = [math.log(y) for _, y in pts]
    if max(xs) == min(xs):
        raise ValueError("degenerate fit: all x equal")
    slope, intercept = statistics.linear_regression(xs, ys)
    max_resid = max(abs(math.exp(y - (slope * x + intercept)) - 1) for x, y in zip(xs, ys))
    return FitResult(slope, intercept, max_resid)


# ---------------------------------------------------------------------------
# short unipotent words


def short_unipotent_word(spec, z: int, i: int = 1, j: int = 3) -> list[str]:
    """A word in the E_ab(+-1) generators multiplying to exactly E_ij(z).

    Built from the commutator identity [E_il(a), E_lj(b)] = E_ij(ab) with
    balanced splits: powers of two split in half, composites split at the
    largest divisor <= sqrt when that beats the binary (Horner) fallback,
    and everything else goes binary.  Taking the divisor split gated on an
    actual length comparison keeps z = 2 * (large prime) from doubling the
    word at every such level, so length stays O((1 + log2 |z|)^2); callers
    measure the constant.  Needs rank >= 2 for the third index, so n = 2 is
    rejected.
    """
    n = spec.n
    if n < 3:
        raise ValueError("word synthesis needs n >= 3 (a spare index for commutators)")
    if z == 0:
        raise ValueError("z must be nonzero")
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("need distinct in-range target indices")
    return _synth(n, i, j, z)


def _spare_index(n: int, i: int, j: int) -> int:
    return next(l for l in range(1, n + 1) if l != i and l != j)


def _invert_word(word: list[str]) -> list[str]:
    out = []
    for tok in reversed(word):
        if tok.endswith("^-1"):
            out.append(tok[:-3])
        else:
            out.append(tok + "^-1")
    return out


def _commutator_word(n: int, i: int, l: int, j: int, a: int, b: int) -> list[str]:
    # [E_il(a), E_lj(b)] = E_ij(a*b)
    wa = _synth(n, i, l, a)
    wb = _synth(n, l, j, b)
    return wa + wb + _invert_word(wa) + _invert_word(wb)


def _synth(n: int, i: int, j: int, z: int) -> list[str]:
    mag = abs(z)
    if mag <= 3:
        tok = f"E{i}{j}" if z > 0 else f"E{i}{j}^-1"
        return [tok] * mag
    l = _spare_index(n, i, j)
    sign = 1 if z > 0 else -1
    if mag & (mag - 1) == 0:  # power of two
        t = mag.bit_length() - 1
        return _commutator_word(n, i, l, j, 2 ** ((t + 1) // 2), sign * 2 ** (t // 2))
    binary = _binary_word(n, i, l, j, mag, sign)
    a = _largest_balanced_divisor(mag)
    if a is not None:
        split = _commutator_word(n, i, l, j, a, sign * (mag // a))
        if len(split) <= len(binary):
            return split
    return binary


def _binary_word(n: int, i: int, l: int, j: int, mag: int, sign: int) -> list[str]:
    # z = hi * 2^s + lo
    bits = mag.bit_length()
    s = bits // 2
    hi, lo = mag >> s, mag & ((1 << s) - 1)
    word = _commutator_word(n, i, l, j, sign * hi, 2**s)
    if lo:
        word = word + _synth(n, i, j, sign * lo)
    return word


def _largest_balanced_divisor(m: int) -> int | None:
    """Largest divisor a of m with 2 <= a <= sqrt(m), None if m is prime."""
    root = math.isqrt(m)
    best = None
    divisors = [1]
    for p, e in arith.factorize(m):
        divisors = [d * p**t for d in divisors for t in range(e + 1)]
    for d in divisors:
        if 2 <= d <= root and (best is None or d > best):
            best = d
    return best


def evaluate_word(n: int, word: list[str]) -> Mat:
    """Multiply a label word out exactly."""
    out = matgrp.identity(n)
    for tok in word:
        inv = tok.endswith("^-1")
        core = tok[:-3] if inv else tok
        if not core.startswith("E") or len(core) != 3:
            raise ValueError(f"bad generator label {tok!r}")
        i, j = int(core[1]), int(core[2])
        out = matgrp.mat_mul(out, matgrp.elementary(n, i, j, -1 if inv else 1))
    return out
