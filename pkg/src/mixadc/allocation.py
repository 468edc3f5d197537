"""ADC power model and searches for the best power-feasible bit allocation.

The feasible set holds every allocation in ``{1, 2, 3, 4}^N`` whose total
ADC power ``sum(c * f_s * 2**b_i)`` fits the budget.  Two searches are
provided: :func:`full_search` scores all of it, :func:`ga_search` runs a
genetic algorithm that grows its population by one chromosome per two
members each generation, so its cost is known in advance
(``k * (3/2)**l`` evaluations when nothing halts it early).
"""

from dataclasses import dataclass

import numpy as np

from .combiner import _as_h, cost_j_many
from .quantization import BadResolution, as_bits

MIN_BITS = 1
MAX_BITS = 4


class BudgetTooSmall(ValueError):
    pass


class PopulationExhausted(RuntimeError):
    pass


class SearchError(RuntimeError):
    """A numeric failure during a search, tagged with the offending allocation."""

    def __init__(self, bits, cause):
        super().__init__(f"cost evaluation failed for b={bits}: {cause}")
        self.bits = bits
        self.cause = cause


@dataclass(frozen=True)
class PowerModel:
    """ADC power ``c * f_s * 2**b`` per converter against a budget ``p_adc``.

    ``p_adc=None`` is resolved by :meth:`for_paths` to the all-2-bit power.
    """

    c: float = 1.0
    f_s: float = 1.0
    p_adc: float | None = None

    def __post_init__(self):
        if self.c <= 0 or self.f_s <= 0:
            raise ValueError("c and f_s must be positive")
        if self.p_adc is not None and self.p_adc <= 0:
            raise ValueError("p_adc must be positive")

    def for_paths(self, n):
        if self.p_adc is not None:
            return self
        return PowerModel(self.c, self.f_s, self.c * n * self.f_s * 2.0 ** 2)


@dataclass(frozen=True)
class GaParams:
    k: int = 64
    l: int = 4  # noqa: E741
    t: float = 0.001
    p_cross: float = 0.9
    p_mut: float = 0.1
    seed: int = 0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.l < 0:
            raise ValueError("l must be >= 0")
        if self.t <= 0:
            raise ValueError("t must be positive")
        if not (0 <= self.p_cross <= 1 and 0 <= self.p_mut <= 1):
            raise ValueError("probabilities must lie in [0, 1]")

    @classmethod
    def defaults(cls, n, **overrides):
        """Population settings tuned for 8 and 12 paths (K=64 and K=400)."""
        base = {"k": 400 if n >= 12 else 64, "l": 4, "t": 0.001}
        base.update(overrides)
        return cls(**base)


@dataclass(frozen=True)
class SearchOutcome:
    b_star: tuple
    j_star: float
    evaluations: int
    halted_by: str  # threshold | exhausted-iterations | exhaustive | population-exhausted


def adc_power(b, pm):
    if b < 1 or int(b) != b:
        raise BadResolution(f"resolution must be an integer >= 1, got {b!r}")
    return pm.c * pm.f_s * 2.0 ** b


def total_power(bits, pm):
    return sum(adc_power(b, pm) for b in bits)


def _feasible(bits, pm):
    # tiny slack so a budget computed as c*N*f_s*4 admits the all-2 allocation
    return total_power(bits, pm) <= pm.p_adc * (1 + 1e-12)


def enumerate_bset(n, pm=None):
    """All feasible allocations in ``{1..4}^n``, in lexicographic order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pm = (pm or PowerModel()).for_paths(n)
    if not _feasible((MIN_BITS,) * n, pm):
        raise BudgetTooSmall(f"budget {pm.p_adc} cannot power {n} one-bit ADCs")
    budget = pm.p_adc * (1 + 1e-12)
    cost = {b: adc_power(b, pm) for b in range(MIN_BITS, MAX_BITS + 1)}
    floor = cost[MIN_BITS]
    out = []

    # depth-first in lexicographic order, pruning prefixes whose cheapest
    # completion already exceeds the budget
    def walk(prefix, spent):
        left = n - len(prefix)
        if left == 0:
            out.append(tuple(prefix))
            return
        for b in range(MIN_BITS, MAX_BITS + 1):
            if spent + cost[b] + (left - 1) * floor > budget:
                break
            prefix.append(b)
            walk(prefix, spent + cost[b])
            prefix.pop()

    walk([], 0.0)
    return out


def _costs(h, bits_list, p_u, sigma2):
    try:
        return cost_j_many(h, bits_list, p_u, sigma2)
    except (ValueError, np.linalg.LinAlgError):
        # redo one at a time to find which allocation broke
        for b in bits_list:
            try:
                cost_j_many(h, [b], p_u, sigma2)
            except (ValueError, np.linalg.LinAlgError) as exc:
                raise SearchError(b, exc) from exc
        raise


def _best(bits_list, costs):
    """Lowest cost; exact ties go to the lexicographically smallest allocation."""
    j_min = np.min(costs)
    return min(b for b, j in zip(bits_list, costs) if j == j_min), float(j_min)


def full_search(h, p_u, sigma2=1.0, pm=None, bset=None):
    """Score every feasible allocation and return the minimizer."""
    h = _as_h(h)
    pm = (pm or PowerModel()).for_paths(h.shape[0])
    if bset is None:
        bset = enumerate_bset(h.shape[0], pm)
    if not bset:
        raise BudgetTooSmall("feasible set is empty")
    costs = _costs(h, bset, p_u, sigma2)
    b_star, j_star = _best(bset, costs)
    return SearchOutcome(b_star, j_star, len(bset), "exhaustive")


def _crossover(p1, p2, rng):
    if len(p1) == 1:
        return p1 if rng.random() < 0.5 else p2
    cut = int(rng.integers(1, len(p1)))
    return p1[:cut] + p2[cut:]


def _mutate(child, p_mut, rng):
    flips = rng.random(len(child)) < p_mut
    fresh = rng.integers(MIN_BITS, MAX_BITS + 1, size=len(child))
    return tuple(int(f) if m else b for b, f, m in zip(child, fresh, flips))


def _repair(child, pm):
    child = list(child)
    while not _feasible(child, pm):
        i = int(np.argmax(child))
        child[i] -= 1
    return tuple(child)


class _Population:
    """Chromosome set plus its complement in the feasible set.

    ``members`` and ``pool`` always partition the feasible set.
    """

    def __init__(self, bset):
        self.bset = list(bset)
        self.members = []
        self.costs = []
        self._in = set()
        self.pool = list(self.bset)
        self._pool_pos = {b: i for i, b in enumerate(self.pool)}

    def take(self, b):
        # O(1) removal from the pool by swapping with the last entry
        i = self._pool_pos.pop(b)
        last = self.pool.pop()
        if i < len(self.pool):
            self.pool[i] = last
            self._pool_pos[last] = i
        self._in.add(b)
        self.members.append(b)

    def draw(self, rng):
        return self.pool[int(rng.integers(len(self.pool)))]

    def __contains__(self, b):
        return b in self._in


def ga_search(h, p_u, sigma2=1.0, pm=None, ga=None, bset=None, strict=False):
    """Genetic-algorithm search over the feasible set.

    The initial population is the all-2-bit allocation (when feasible) plus
    uniform draws without replacement, ``k`` members in total.  Each
    generation pairs members at random; each pair yields one child by
    single-point crossover, per-gene mutation and a power repair that
    decrements the largest bit.  A child that fails the crossover trial or
    duplicates a member is replaced by a uniform draw from the remaining
    feasible allocations.  Every member is scored exactly once.

    The search stops as soon as a member scores ``<= ga.t``, otherwise after
    ``ga.l`` generations.  If the feasible set runs out first the best member
    so far is returned with ``halted_by="population-exhausted"``, or
    :class:`PopulationExhausted` is raised when ``strict`` is set.
    """
    h = _as_h(h)
    n = h.shape[0]
    pm = (pm or PowerModel()).for_paths(n)
    ga = ga or GaParams.defaults(n)
    if bset is None:
        bset = enumerate_bset(n, pm)
    if ga.k > len(bset):
        raise ValueError(f"k={ga.k} exceeds the {len(bset)} feasible allocations")
    rng = np.random.default_rng(ga.seed)
    pop = _Population(bset)

    anchor = (2,) * n
    if anchor in pop._pool_pos:
        pop.take(anchor)
    while len(pop.members) < ga.k:
        pop.take(pop.draw(rng))

    def score(new):
        pop.costs.extend(_costs(h, new, p_u, sigma2).tolist())

    def outcome(halted_by):
        b, j = _best(pop.members, np.asarray(pop.costs))
        return SearchOutcome(b, j, len(pop.members), halted_by)

    score(pop.members)
    if min(pop.costs) <= ga.t:
        return outcome("threshold")

    for _ in range(ga.l):
        order = rng.permutation(len(pop.members))
        pairs = order[: 2 * (len(order) // 2)].reshape(-1, 2)
        new = []
        for i, j in pairs:
            if not pop.pool:
                break
            child = None
            if rng.random() < ga.p_cross:
                child = _crossover(pop.members[i], pop.members[j], rng)
                child = _repair(_mutate(child, ga.p_mut, rng), pm)
                if child in pop:
                    child = None
            if child is None:
                child = pop.draw(rng)
            pop.take(child)
            new.append(child)
        if new:
            score(new)
        if min(pop.costs) <= ga.t:
            return outcome("threshold")
        if len(new) < len(pairs):
            if strict:
                raise PopulationExhausted(
                    f"feasible set exhausted after {len(pop.members)} members")
            return outcome("population-exhausted")
    return outcome("exhausted-iterations")


def validate_allocation(bits, pm, n=None):
    """Check that ``bits`` is a searchable allocation within budget."""
    bits = as_bits(bits)
    if n is not None and len(bits) != n:
        raise ValueError(f"allocation has {len(bits)} paths, expected {n}")
    if any(b > MAX_BITS for b in bits):
        raise BadResolution(f"search allocations are limited to {MAX_BITS} bits")
    return _feasible(bits, pm.for_paths(len(bits)))
