"""Lower bounds and feasibility tests for h-vectors of generic quotients.

The central function bounds, entry by entry, the h-vector of a quotient
module generated by c generic combinations of the t generators of a level
module with h-vector h:

    bound_u = ceil( ((t-c) h_{e-u} + (ct-1) h_u) / (t^2 - 1) ).

Degree 0 contributes 1 and degree e contributes exactly c. On top of that
sit an O-sequence feasibility test for candidate quotient h-vectors (the
candidate and the reversed difference must both be admissible Hilbert
functions), a greedy tightening loop, chaining along a descending type
path, and a report type for batch verification runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .combinatorics import is_o_sequence
from .modules import (
    InverseSystemModule,
    derive_seed,
    empirical_generic_h,
    generic_quotient_trials,
    h_vector,
    inclusion_exclusion_sum,
    remix_generators,
)

HVector = tuple[int, ...]


class InfeasibleBoundError(ValueError):
    """Tightening ran past the parent h-vector without reaching feasibility."""


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _check_h(h: Sequence[int]) -> HVector:
    h = tuple(int(x) for x in h)
    if len(h) < 2:
        raise ValueError("an h-vector needs at least degrees 0 and e")
    if h[0] != 1:
        raise ValueError(f"h_0 must be 1, got {h[0]}")
    if any(x < 0 for x in h):
        raise ValueError(f"negative entry in {h}")
    return h


def generic_quotient_bound(h: Sequence[int], t: int, c: int) -> HVector:
    """Entrywise lower bound for the h-vector of a generic type-c quotient.

    Requires h to end in its type t >= 2 and 1 <= c <= t-1. The last entry
    of the bound is exactly c.
    """
    h = _check_h(h)
    e = len(h) - 1
    if t < 2:
        raise ValueError("parent type must be at least 2")
    if h[e] != t:
        raise ValueError(f"h ends in {h[e]}, expected the type {t}")
    if not 1 <= c <= t - 1:
        raise ValueError(f"quotient type {c} out of range 1..{t - 1}")
    denom = t * t - 1
    out = [1]
    for u in range(1, e + 1):
        num = (t - c) * h[e - u] + (c * t - 1) * h[u]
        out.append(_ceil_div(num, denom))
    return tuple(out)


def pencil_bound(h: Sequence[int]) -> HVector:
    """Type-2 case: generic Gorenstein quotient of a pencil of forms.

    bound_u = ceil((h_u + h_{e-u}) / 3); agrees with the general formula
    at t = 2, c = 1.
    """
    h = _check_h(h)
    if h[-1] != 2:
        raise ValueError(f"pencil bound needs type 2, h ends in {h[-1]}")
    e = len(h) - 1
    return tuple(
        [1] + [_ceil_div(h[u] + h[e - u], 3) for u in range(1, e + 1)]
    )


def overlap_bound_holds(
    m: InverseSystemModule, u: int, seed: int = 0, trials: int = 5
) -> bool:
    """Check H_u(generic Gorenstein quotient) >= h_{e-u} - overlap sum.

    The overlap sum is computed on generically re-mixed generators; the
    left side is the empirical generic value.
    """
    h = h_vector(m)
    e = m.socle_degree
    g = remix_generators(m, derive_seed(seed, "mix"))
    sigma = inclusion_exclusion_sum(g, u)
    emp = empirical_generic_h(m, 1, trials=trials, seed=derive_seed(seed, "emp"))
    return emp[u] >= h[e - u] - sigma


def has_full_codim_gorenstein(h: Sequence[int], t: int) -> bool:
    """h_{e-1} >= t*(r-1) with r = h_1: guarantees a generic Gorenstein
    quotient that still involves all r variables (its h_1 equals r)."""
    h = _check_h(h)
    if h[-1] != t:
        raise ValueError(f"h ends in {h[-1]}, expected the type {t}")
    return h[-2] >= t * (h[1] - 1)


def has_full_codim_type_drop(h: Sequence[int], t: int) -> bool:
    """h_{e-1} >= -t^2 + r*t + 2 with r = h_1: same conclusion for the
    generic type-(t-1) quotient."""
    h = _check_h(h)
    if h[-1] != t:
        raise ValueError(f"h ends in {h[-1]}, expected the type {t}")
    return h[-2] >= -t * t + h[1] * t + 2


def penultimate_bound_holds(h: Sequence[int], t: int) -> bool:
    """Low-codimension sanity predicate: h_1 > 7, or h_{e-1} >= h_1.

    Every level h-vector in at most 7 variables satisfies the second
    disjunct, so on computed level h-vectors this must return True.
    """
    h = _check_h(h)
    if h[-1] != t:
        raise ValueError(f"h ends in {h[-1]}, expected the type {t}")
    return h[1] > 7 or h[-2] >= h[1]


def quotient_feasible(h: Sequence[int], L: Sequence[int], c: int) -> bool:
    """Whether L can be the h-vector of a type-c quotient of a module with
    h-vector h, by the two O-sequence obstructions.

    L must be admissible itself, and so must the reversed difference h - L
    (which is the h-vector of a complementary quotient when one generator
    is dropped at a time). The zero difference (c equal to the parent
    type) is trivially feasible.
    """
    h = _check_h(h)
    L = tuple(int(x) for x in L)
    if len(L) != len(h):
        raise ValueError(f"length mismatch: {len(L)} vs {len(h)}")
    if L[-1] != c:
        raise ValueError(f"candidate ends in {L[-1]}, expected c={c}")
    if any(x > y for x, y in zip(L, h)):
        raise ValueError("candidate exceeds the parent h-vector")
    if any(x < 0 for x in L):
        raise ValueError(f"negative entry in {L}")
    diff = tuple(y - x for x, y in zip(L, h))
    if not any(diff):
        return True
    return (
        is_o_sequence(L).ok
        and is_o_sequence(tuple(reversed(diff))).ok
    )


def tighten_bound(h: Sequence[int], L: Sequence[int], c: int) -> HVector:
    """Raise L minimally until quotient_feasible accepts it.

    Greedy loop: while infeasible, find the first violated growth
    condition — in L itself, or in the reversed difference — and raise the
    single entry of L that the violation pins, by one. Each raise is
    forced (any feasible vector above L must exceed it there too), so the
    result is still a valid lower bound whenever L was. Raising past h
    means no feasible vector exists and is an InfeasibleBoundError.
    """
    h = _check_h(h)
    cur = [int(x) for x in L]
    e = len(h) - 1
    while True:
        if quotient_feasible(h, cur, c):
            return tuple(cur)
        verdict = is_o_sequence(cur)
        if not verdict.ok:
            # violation in L itself: L[d+1] exceeds the growth allowed by
            # L[d], and raising L[d] is the only repair that keeps L' >= L
            # (d = 0 means a leading 0, repaired by raising it to 1)
            pos = verdict.first_violation
        else:
            diff_rev = tuple(hh - ll for hh, ll in zip(reversed(h), reversed(cur)))
            verdict = is_o_sequence(diff_rev)
            if verdict.ok:
                raise InfeasibleBoundError("no violation found yet infeasible")
            d = verdict.first_violation
            if d == 0:
                # the reversed difference leads with h_e - c, pinned by the
                # target type; nothing above L can repair a lead != 1
                raise InfeasibleBoundError(
                    f"reversed difference leads with {diff_rev[0]}, not 1; "
                    "the feasibility test applies to single type drops"
                )
            # reversed-difference entry d+1 is too big; shrink it by raising L
            pos = e - (d + 1)
        if cur[pos] + 1 > h[pos]:
            raise InfeasibleBoundError(
                f"entry {pos} cannot be raised past the parent value {h[pos]}"
            )
        cur[pos] += 1


def chained_bound(
    h: Sequence[int], t: int, path: Sequence[int], tighten: bool = False
) -> HVector:
    """Iterate the quotient bound along a strictly descending type path.

    Each step treats the previous bound vector as the parent h-vector,
    which is valid because the bound is entrywise monotone in h. With
    `tighten`, the first step (whose parent is exact, not just a bound) is
    additionally tightened when it drops the type by one; tightening
    against later, merely-bounded parents would not be sound. Returns the
    entrywise max with the direct one-step bound.
    """
    h = _check_h(h)
    path = [int(x) for x in path]
    if len(path) < 2:
        raise ValueError("path needs at least two types")
    if path[0] != t:
        raise ValueError(f"path starts at {path[0]}, expected t={t}")
    for a, b in zip(path, path[1:]):
        if b >= a:
            raise ValueError(f"path must strictly descend, got {a} -> {b}")
    if path[-1] < 1:
        raise ValueError("path must end at type >= 1")
    direct = generic_quotient_bound(h, t, path[-1])
    cur: HVector = h
    cur_t = t
    first = True
    for nxt in path[1:]:
        step = generic_quotient_bound(cur, cur_t, nxt)
        if tighten and first and cur_t - nxt == 1:
            step = tighten_bound(cur, step, nxt)
        cur = step
        cur_t = nxt
        first = False
    return tuple(max(a, b) for a, b in zip(direct, cur))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one module against the quotient bound."""

    label: str
    h: HVector
    c: int
    bound: HVector
    empirical: HVector
    satisfied: bool
    tight_degrees: tuple[int, ...]
    trials: int
    seed: int
    prime: int | None
    per_trial: tuple[HVector, ...]

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "h": list(self.h),
            "c": self.c,
            "bound": list(self.bound),
            "empirical": list(self.empirical),
            "satisfied": self.satisfied,
            "tightDegrees": list(self.tight_degrees),
            "trials": self.trials,
            "seed": self.seed,
            "prime": self.prime,
            "perTrial": [list(h) for h in self.per_trial],
        }


CSV_COLUMNS = (
    "label",
    "h",
    "c",
    "bound",
    "empirical",
    "satisfied",
    "tightDegrees",
    "trials",
    "seed",
    "prime",
)


def report_csv_row(r: VerificationReport) -> list[str]:
    return [
        r.label,
        " ".join(map(str, r.h)),
        str(r.c),
        " ".join(map(str, r.bound)),
        " ".join(map(str, r.empirical)),
        "true" if r.satisfied else "false",
        " ".join(map(str, r.tight_degrees)),
        str(r.trials),
        str(r.seed),
        "" if r.prime is None else str(r.prime),
    ]


def verify_instance(
    m: InverseSystemModule, c: int, trials: int = 5, seed: int = 0
) -> VerificationReport:
    """Compare the empirical generic type-c quotient against the bound."""
    h = h_vector(m)
    t = m.type
    bound = generic_quotient_bound(h, t, c)
    samples = generic_quotient_trials(m, c, trials=trials, seed=seed)
    per_trial = tuple(s.h for s in samples)
    empirical = tuple(max(col) for col in zip(*per_trial))
    satisfied = all(e >= b for e, b in zip(empirical, bound))
    tight = tuple(u for u, (e, b) in enumerate(zip(empirical, bound)) if e == b)
    return VerificationReport(
        label=m.label or "module",
        h=h,
        c=c,
        bound=bound,
        empirical=empirical,
        satisfied=satisfied,
        tight_degrees=tight,
        trials=trials,
        seed=seed,
        prime=m.field.prime if m.field.is_modular else None,
        per_trial=per_trial,
    )
