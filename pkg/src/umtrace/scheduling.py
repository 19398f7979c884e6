"""Decompose the cyclic shift on m registers into transpositions and pack
them into rounds of at most s disjoint swaps.

Order convention: transposition lists are stored in application order (the
first element is applied first). Sources that write permutation products
right-to-left must be read back-to-front to match.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

GREEDY = "greedy"
LAYER_RESTRICTED = "layer-restricted"
POLICIES = (GREEDY, LAYER_RESTRICTED)


@dataclass(frozen=True, order=True)
class Transposition:
    """Swap of registers i < j, indices 1-based."""

    i: int
    j: int

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise ValueError(f"need 1 <= i < j, got ({self.i}, {self.j})")

    def overlaps(self, other: "Transposition") -> bool:
        return bool({self.i, self.j} & {other.i, other.j})

    def __str__(self):
        return f"({self.i},{self.j})"


def depth_bound(m: int, s: int) -> int:
    """Round-count target h(m, s) = ceil((m-1)/s)."""
    return math.ceil((m - 1) / s)


def layer_restricted_depth(m: int, s: int) -> int:
    """Round count when the two decomposition blocks are never mixed."""
    first = m // 2
    second = (m + 1) // 2 - 1
    return math.ceil(first / s) + math.ceil(second / s)


def decompose_cycle(m: int) -> list[Transposition]:
    """The (m-1)-transposition factorization of the cyclic shift.

    Block one is (i, m+1-i) for i = 1..floor(m/2); block two is
    (j, m+2-j) for j = 2..ceil(m/2). Applying the list front to back sends
    the contents of register i to register i+1 (mod m).
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    first = [Transposition(i, m + 1 - i) for i in range(1, m // 2 + 1)]
    second = [Transposition(j, m + 2 - j) for j in range(2, (m + 1) // 2 + 1)]
    return first + second


@dataclass(frozen=True)
class TranspositionSchedule:
    m: int
    s: int
    policy: str
    rounds: tuple  # of tuples of Transposition

    @property
    def depth(self) -> int:
        return len(self.rounds)

    def transpositions(self) -> list[Transposition]:
        return [t for rnd in self.rounds for t in rnd]

    def as_table(self) -> str:
        lines = [f"schedule m={self.m} s={self.s} policy={self.policy} rounds={self.depth}"]
        for k, rnd in enumerate(self.rounds, start=1):
            lines.append(f"round {k}: " + " ".join(str(t) for t in rnd))
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({
            "m": self.m, "s": self.s, "policy": self.policy,
            "rounds": [[[t.i, t.j] for t in rnd] for rnd in self.rounds],
        })


def _validate_s(m: int, s: int):
    if not (1 <= s <= m // 2):
        raise ValueError(f"need 1 <= s <= floor(m/2) = {m // 2}, got s={s}")


def schedule(m: int, s: int, policy: str = GREEDY) -> TranspositionSchedule:
    """Pack the cycle decomposition into rounds of <= s disjoint swaps.

    greedy: dependency-aware list scheduling. A transposition enters the
    current round once every earlier-listed transposition sharing one of
    its registers sits in a previous round; ties break by list position
    (smallest first index first). Achieves ceil((m-1)/s) rounds for all
    m <= 12.

    layer-restricted: rounds never mix the two decomposition blocks, which
    reproduces block-by-block circuit drawings at the cost of
    ceil(floor(m/2)/s) + ceil((ceil(m/2)-1)/s) rounds.
    """
    _validate_s(m, s)
    if policy not in POLICIES:
        raise ValueError(f"policy must be one of {POLICIES}, got {policy!r}")
    order = decompose_cycle(m)
    if policy == LAYER_RESTRICTED:
        split = m // 2
        blocks = [order[:split], order[split:]]
        rounds = []
        for block in blocks:
            for start in range(0, len(block), s):
                rounds.append(tuple(block[start:start + s]))
        return TranspositionSchedule(m=m, s=s, policy=policy, rounds=tuple(rounds))

    done = [False] * len(order)
    rounds = []
    while not all(done):
        taken: list[int] = []
        used: set[int] = set()
        for k, t in enumerate(order):
            if done[k] or len(taken) >= s:
                continue
            ready = all(done[j] or not order[j].overlaps(t) for j in range(k))
            if ready and not ({t.i, t.j} & used):
                taken.append(k)
                used |= {t.i, t.j}
        for k in taken:
            done[k] = True
        rounds.append(tuple(order[k] for k in taken))
    return TranspositionSchedule(m=m, s=s, policy=GREEDY, rounds=tuple(rounds))


def apply_schedule(sched: TranspositionSchedule) -> list[int]:
    """Compose all rounds; entry c-1 is the destination register of the
    contents initially in register c. The cyclic shift sends c to c+1
    (mod m, 1-based)."""
    slots = list(range(1, sched.m + 1))   # slots[k] = content currently in register k+1
    for rnd in sched.rounds:
        for t in rnd:
            slots[t.i - 1], slots[t.j - 1] = slots[t.j - 1], slots[t.i - 1]
    dest = [0] * sched.m
    for k, content in enumerate(slots):
        dest[content - 1] = k + 1
    return dest


def is_cyclic_shift(sched: TranspositionSchedule) -> bool:
    dest = apply_schedule(sched)
    return all(dest[c - 1] == c % sched.m + 1 for c in range(1, sched.m + 1))
