"""Parameter families tying recursions to labelled trees.

Each core family fixes both sides of the story: the recursion offsets fed
to the evaluator and the tree shape fed to the cell counter, sharing the
same parameters.  Classic sequences are thin constructors onto the core
families.  Exploratory families carry a recursion but no known tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import tree as tree_model
from .recursion import RecursionSpec
from .tree import TreeSpec


class NoTreeKnown(Exception):
    """Raised when a family has no tree construction to lean on."""


@dataclass(frozen=True)
class OrderOne:
    s: int
    j: int
    m: int


@dataclass(frozen=True)
class HigherOrder:
    s: int
    j: int
    m: int
    p: int


@dataclass(frozen=True)
class Superposed:
    s: int
    j: int
    m: int
    p: int


@dataclass(frozen=True)
class KaryOrderP:
    k: int
    m: int
    p: int


@dataclass(frozen=True)
class QFamily:
    s: int
    j: int
    q: int


@dataclass(frozen=True)
class CSJK:
    s: int
    j: int
    k: int


@dataclass(frozen=True)
class NegGammaCandidate:
    k: int
    gamma: int
    delta: int


Family = Union[OrderOne, HigherOrder, Superposed, KaryOrderP, QFamily, CSJK, NegGammaCandidate]


# -- classic sequences as constructors onto the core families -----------------

def conolly() -> OrderOne:
    return OrderOne(0, 1, 0)


def h_classic() -> OrderOne:
    """The slow solution is the ceiling of n/2."""
    return OrderOne(0, 1, 1)


def r_sj(s: int, j: int) -> OrderOne:
    return OrderOne(s, j, 0)


def h_sj(s: int, j: int) -> OrderOne:
    return OrderOne(s, j, j)


def alpha_beta_conolly(alpha: int, beta: int) -> Superposed:
    """Order alpha/2 + beta recursion blending the two binary classics."""
    if alpha % 2:
        raise ValueError("alpha must be even")
    if beta < 0 or alpha + beta < 1:
        raise ValueError("need beta >= 0 and alpha + beta >= 1")
    return Superposed(s=0, j=1, m=alpha // 2, p=alpha // 2 + beta)


def kary_conolly(k: int) -> KaryOrderP:
    return KaryOrderP(k, 0, 1)


def kary_h(k: int) -> KaryOrderP:
    """The slow solution is the ceiling of n/k."""
    return KaryOrderP(k, k - 1, k - 1)


def kary_ceiling(k: int, q: int) -> KaryOrderP:
    """The slow solution is the ceiling of n/(k*q)."""
    if q < 1:
        raise ValueError("q must be positive")
    return KaryOrderP(k, k * q - 1, (k - 1) * q)


@dataclass(frozen=True)
class Validation:
    ok: bool
    message: str = ""
    exploratory: bool = False


def validate(family: Family) -> Validation:
    """Range-check the parameters, flagging exploratory but runnable points."""
    if isinstance(family, OrderOne):
        if family.s < 0 or family.j < 1:
            return Validation(False, "need s >= 0 and j >= 1")
        if not 0 <= family.m <= family.j:
            return Validation(False, f"m must lie in 0..j = 0..{family.j}")
        return Validation(True)
    if isinstance(family, HigherOrder):
        if family.s < 0 or family.j < 1 or family.p < 1:
            return Validation(False, "need s >= 0, j >= 1 and p >= 1")
        top = (2 * family.p - 1) * family.j
        if not 0 <= family.m <= top:
            return Validation(False, f"m must lie in 0..(2p-1)j = 0..{top}")
        return Validation(True)
    if isinstance(family, Superposed):
        if family.s < 0 or family.j < 1 or family.p < 1:
            return Validation(False, "need s >= 0, j >= 1 and p >= 1")
        if 0 <= family.m <= family.p * family.j:
            return Validation(True)
        if -family.p < family.m < 0:
            return Validation(True, "negative m: tree is defined but no recursion is proven", exploratory=True)
        return Validation(False, f"m must lie in -p+1..pj = {-family.p + 1}..{family.p * family.j}")
    if isinstance(family, KaryOrderP):
        if family.k < 2 or family.p < 1:
            return Validation(False, "need k >= 2 and p >= 1")
        if family.m < family.p - 1:
            return Validation(False, f"m must be at least p-1 = {family.p - 1}")
        if (family.m + 1) * (family.k - 1) > family.k * family.p:
            return Validation(False, f"need (m+1)(k-1) <= kp, violated by m = {family.m}")
        if family.k == 2:
            return Validation(True, "k = 2 lies outside the intended arity range; admitted for comparison")
        return Validation(True)
    if isinstance(family, QFamily):
        if family.s < 0 or family.j < 1:
            return Validation(False, "need s >= 0 and j >= 1")
        if not 0 <= family.q <= family.j:
            return Validation(False, f"q must lie in 0..j = 0..{family.j}")
        return Validation(True, "no tree construction is known", exploratory=True)
    if isinstance(family, CSJK):
        if family.s < 0 or family.j < 1 or family.k < 2:
            return Validation(False, "need s >= 0, j >= 1 and k >= 2")
        return Validation(True, "no tree construction is known", exploratory=True)
    if isinstance(family, NegGammaCandidate):
        if family.k < 2:
            return Validation(False, "need k >= 2")
        if family.gamma >= 0:
            return Validation(False, "gamma must be negative")
        if family.delta < 0:
            return Validation(False, "delta must be nonnegative")
        if family.gamma * family.k + family.delta < 1:
            return Validation(False, "need gamma*k + delta >= 1")
        return Validation(True, "candidate recursion: conjectured tree only", exploratory=True)
    raise TypeError(f"not a family: {family!r}")


def _require_valid(family: Family) -> Validation:
    verdict = validate(family)
    if not verdict.ok:
        raise ValueError(f"invalid parameters for {family}: {verdict.message}")
    return verdict


def recursion_of(family: Family) -> RecursionSpec:
    """Offsets of the family's recursion."""
    _require_valid(family)
    if isinstance(family, OrderOne):
        s, j, m = family.s, family.j, family.m
        return RecursionSpec(2, 1, (s, s + j + m), ((j,), (2 * j + m,)))
    if isinstance(family, HigherOrder):
        s, j, m, p = family.s, family.j, family.m, family.p
        first = tuple((2 * t - 1) * j for t in range(1, p + 1))
        second = tuple(j + m + (2 * t - 1) * j for t in range(1, p + 1))
        return RecursionSpec(2, p, (s, s + j + m), (first, second))
    if isinstance(family, Superposed):
        s, j, m, p = family.s, family.j, family.m, family.p
        first = tuple(2 * t - 1 + p * (j - 1) for t in range(1, p + 1))
        second = tuple(2 * t - 1 + m + p * (2 * j - 1) for t in range(1, p + 1))
        return RecursionSpec(2, p, (s, s + p * j + m), (first, second))
    if isinstance(family, KaryOrderP):
        k, m, p = family.k, family.m, family.p
        outer = tuple((i - 1) * (1 + m) for i in range(1, k + 1))
        inner = tuple(tuple((i - 1) * (1 + m) + t for t in range(1, p + 1)) for i in range(1, k + 1))
        return RecursionSpec(k, p, outer, inner)
    if isinstance(family, QFamily):
        s, j, q = family.s, family.j, family.q
        return RecursionSpec(2, 1, (s, s + j), ((j,), (2 * j - q,)))
    if isinstance(family, CSJK):
        s, j, k = family.s, family.j, family.k
        outer = tuple(s + (i - 1) * j for i in range(1, k + 1))
        inner = tuple((i * j,) for i in range(1, k + 1))
        return RecursionSpec(k, 1, outer, inner)
    if isinstance(family, NegGammaCandidate):
        k, gamma, delta = family.k, family.gamma, family.delta
        p = (k - 1) * gamma + delta
        g = -gamma
        row = (1,) + tuple(1 + t * k for t in range(1, g + 1)) \
            + tuple(1 + g * k + 2 * t for t in range(1, p - g))
        outer = tuple((i - 1) * (p + gamma) for i in range(1, k + 1))
        return RecursionSpec(k, p, outer, (row,) * k)
    raise TypeError(f"not a family: {family!r}")


def tree_of(family: Family) -> TreeSpec:
    """The tree whose cell counts solve the family's recursion."""
    _require_valid(family)
    if isinstance(family, OrderOne):
        s, j, m = family.s, family.j, family.m
        return TreeSpec(2, s, j, 1, 1 + m, j - m)
    if isinstance(family, HigherOrder):
        s, j, m, p = family.s, family.j, family.m, family.p
        return TreeSpec(2, s, j, 1, 1 + m, (2 * p - 1) * j - m)
    if isinstance(family, Superposed):
        s, j, m, p = family.s, family.j, family.m, family.p
        return TreeSpec(2, s, j, p, p + m, p * j - m)
    if isinstance(family, KaryOrderP):
        k, m, p = family.k, family.m, family.p
        return TreeSpec(k, 0, 1, 1, 1 + m, p * k - (k - 1) * (1 + m))
    raise NoTreeKnown(f"no tree construction for {family}")


def ic_length(family: Family) -> int:
    """How many tree-following initial conditions the family needs."""
    _require_valid(family)
    if isinstance(family, OrderOne):
        return 5 * family.j + 3 * family.m + 2 * family.s
    if isinstance(family, HigherOrder):
        x = (2 * family.p - 1) * family.j - family.m
        return 4 * (family.j + family.m) + x + 2 * family.s
    if isinstance(family, Superposed):
        return 5 * family.p * family.j + 3 * family.m + 2 * family.s
    if isinstance(family, KaryOrderP):
        k, m, p = family.k, family.m, family.p
        return 2 * k * (p + m) + p - (k - 1) * m
    raise NoTreeKnown(f"no initial-condition rule for {family}")


def standard_ics(family: Family) -> list[int]:
    """Initial conditions that follow the family's tree."""
    return tree_model.initial_conditions(tree_of(family), ic_length(family))


def prune_threshold(family: Family) -> int:
    """Smallest n the family's pruning operation accepts."""
    _require_valid(family)
    if isinstance(family, OrderOne):
        return 4 * family.j + 2 * family.m + 2 * family.s
    if isinstance(family, HigherOrder):
        x = (2 * family.p - 1) * family.j - family.m
        return 3 * (family.j + family.m) + x + 2 * family.s + 1
    if isinstance(family, Superposed):
        s, j, m, p = family.s, family.j, family.m, family.p
        if m < 0:
            # exploratory shapes only need the first five nodes full
            return 3 * p * j + m + 2 * s + 1
        return 5 * p * j + 3 * m + 2 * s + 1
    if isinstance(family, KaryOrderP):
        k, m, p = family.k, family.m, family.p
        return k * (p + m) + p - (k - 1) * m + 1
    raise NoTreeKnown(f"no pruning operation for {family}")


_CORE_NAMES = {
    OrderOne: "order_one",
    HigherOrder: "higher_order",
    Superposed: "superposed",
    KaryOrderP: "kary",
    QFamily: "q_family",
    CSJK: "c_sjk",
    NegGammaCandidate: "neg_gamma",
}

NAMED_FAMILIES = {
    "order_one": OrderOne,
    "higher_order": HigherOrder,
    "superposed": Superposed,
    "kary": KaryOrderP,
    "q_family": QFamily,
    "c_sjk": CSJK,
    "neg_gamma": NegGammaCandidate,
    "conolly": conolly,
    "h": h_classic,
    "r_sj": r_sj,
    "h_sj": h_sj,
    "alpha_beta": alpha_beta_conolly,
    "kary_conolly": kary_conolly,
    "kary_h": kary_h,
    "kary_ceiling": kary_ceiling,
}


def build_family(name: str, **params: int) -> Family:
    """Construct a family from its catalog name, e.g. build_family("order_one", s=1, j=3, m=1)."""
    try:
        builder = NAMED_FAMILIES[name]
    except KeyError:
        known = ", ".join(sorted(NAMED_FAMILIES))
        raise ValueError(f"unknown family {name!r}; known: {known}") from None
    return builder(**params)


def to_document(family: Family) -> dict:
    from dataclasses import asdict

    return {"family": _CORE_NAMES[type(family)], **asdict(family)}


def from_document(doc: dict) -> Family:
    params = {key: int(v) for key, v in doc.items() if key != "family"}
    try:
        name = doc["family"]
    except KeyError:
        raise ValueError("family document is missing the 'family' field") from None
    return build_family(name, **params)
