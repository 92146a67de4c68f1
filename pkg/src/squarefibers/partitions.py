"""Integer partitions in multiplicity form, plus the centralizer-exponent
statistics that the class-counting formulas consume."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .limits import MAX_PARTITION_WEIGHT, InputError, ScaleLimitError


@dataclass(frozen=True)
class Partition:
    """Pairs (part, multiplicity) with parts strictly increasing.

    The empty partition (weight 0) is a legal value but only ever
    appears as an intermediate; class data never stores it.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(a), int(m)) for a, m in self.pairs))
        prev = 0
        for part, mult in self.pairs:
            if part <= prev:
                raise InputError(f"parts must strictly increase: {self.pairs}")
            if mult < 1:
                raise InputError(f"multiplicities must be positive: {self.pairs}")
            prev = part

    @property
    def weight(self) -> int:
        return sum(a * m for a, m in self.pairs)

    def is_empty(self) -> bool:
        return not self.pairs

    def mult(self, part: int) -> int:
        for a, m in self.pairs:
            if a == part:
                return m
        return 0

    def max_part(self) -> int:
        return self.pairs[-1][0] if self.pairs else 0

    def multiplicity_vector(self, upto: int | None = None) -> tuple[int, ...]:
        n = upto if upto is not None else self.max_part()
        out = [0] * n
        for a, m in self.pairs:
            out[a - 1] = m
        return tuple(out)

    def conjugate(self) -> "Partition":
        """Transpose of the Young diagram, back in multiplicity form."""
        if not self.pairs:
            return Partition(())
        heights: dict[int, int] = {}
        for i in range(1, self.max_part() + 1):
            h = sum(m for a, m in self.pairs if a >= i)
            heights[h] = heights.get(h, 0) + 1
        return Partition(tuple(sorted(heights.items())))

    def doubled(self) -> "Partition":
        return Partition(tuple((a, 2 * m) for a, m in self.pairs))

    def all_multiplicities_even(self) -> bool:
        return all(m % 2 == 0 for _, m in self.pairs)

    def __str__(self) -> str:
        return "+".join(f"{a}^{m}" for a, m in self.pairs) if self.pairs else "(empty)"


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, ordered lexicographically by multiplicity vector."""
    if n < 0:
        raise InputError("cannot partition a negative integer")
    if n > MAX_PARTITION_WEIGHT:
        raise ScaleLimitError(f"partition weight {n} exceeds {MAX_PARTITION_WEIGHT}")
    if n == 0:
        return (Partition(()),)
    acc: list[Partition] = []

    def rec(remaining: int, max_part: int, parts: list[tuple[int, int]]):
        if remaining == 0:
            acc.append(Partition(tuple(reversed(parts))))
            return
        for part in range(min(max_part, remaining), 0, -1):
            for mult in range(remaining // part, 0, -1):
                parts.append((part, mult))
                rec(remaining - part * mult, part - 1, parts)
                parts.pop()

    rec(n, n, [])
    acc.sort(key=lambda lam: lam.multiplicity_vector(n))
    return tuple(acc)


def partition_count(n: int) -> int:
    """p(n) by the classic table recurrence (independent of partitions_of)."""
    if n < 0:
        raise InputError("negative weight")
    table = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            table[total] += table[total - part]
    return table[n]


def gamma_exponent(lam: Partition, d: int) -> int:
    """Power of q contributed by one polynomial block of a centralizer.

    With (a_j, m_j) the part/multiplicity pairs in increasing part order,
    this is d * (2 * sum_{u<v} a_u m_u m_v + sum_j (a_j - 1) m_j^2);
    equivalently d * (sum_i (lam'_i)^2 - sum_j m_j^2) for the conjugate
    partition lam'.  Both forms are kept and tested against each other.
    """
    if lam.is_empty():
        raise InputError("gamma_exponent of the empty partition")
    pairs = lam.pairs
    total = 0
    for u, (a_u, m_u) in enumerate(pairs):
        total += (a_u - 1) * m_u * m_u
        for _, m_v in pairs[u + 1 :]:
            total += 2 * a_u * m_u * m_v
    return d * total


def gamma_exponent_conjugate_form(lam: Partition, d: int) -> int:
    """The same exponent via the conjugate partition (cross-audit route)."""
    if lam.is_empty():
        raise InputError("gamma_exponent of the empty partition")
    conj_sq = sum(m * a * a for a, m in lam.conjugate().pairs)
    mult_sq = sum(m * m for _, m in lam.pairs)
    return d * (conj_sq - mult_sq)


def distinct_part_count(lam: Partition) -> int:
    return len(lam.pairs)


def halve_multiplicities(lam: Partition) -> Partition:
    """Halve every multiplicity; an odd multiplicity is an error (it means
    the skew square-root branch is empty for this block)."""
    for part, mult in lam.pairs:
        if mult % 2:
            raise ValueError(f"odd multiplicity at part {part}")
    return Partition(tuple((a, m // 2) for a, m in lam.pairs))
