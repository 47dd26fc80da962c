"""Certification of the very-strong-interference regime.

The inner bound in which every receiver decodes every all-common codeword is
capacity when, for every closed all-common set ``S'`` and every receiver
``z``, the bound ``(S', z)`` is either matched by an outer bound or shown
redundant:

* condition ``i``   -- ``z`` decodes every message of ``S`` (exact test);
* condition ``ii``  -- some partition of ``S`` lets the cut-set bound be
  replaced by ``sum R_S <= I(Y_z; X | U of S-complement)``;
* condition ``iii`` -- the bound dominates a sum of other inner bounds.

Conditions ii and iii quantify over all distributions.  They are checked on
a finite sample list (corner cases first), so ``certified`` means "not
falsified on these samples"; ``falsified`` always comes with a concrete
sample that violates the inequality.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bounds import MITerm, RateBound, VariableId, inner_bounds
from .channel import (
    INNER,
    OUTER,
    Channel,
    evaluate_bounds,
    make_schema,
    mutual_info,
    sample_distributions,
)
from .network import (
    NetworkSpec,
    Partition,
    all_common_reduction,
    enumerate_closed_sets,
    enumerate_partitions,
    expand,
    format_message_set,
)
from .polytope import RegionEstimate

__all__ = [
    "CERTIFIED",
    "FALSIFIED",
    "EXHAUSTED",
    "MI_TOL",
    "Obligation",
    "Evidence",
    "ConditionCheck",
    "ObligationResult",
    "VSICertificate",
    "obligations",
    "check_condition_i",
    "check_condition_ii",
    "check_condition_iii",
    "condition_ii_terms",
    "condition_iii_terms",
    "strong_interference_bound",
    "replay",
    "vsi_capacity",
]

CERTIFIED = "certified"
FALSIFIED = "falsified"
EXHAUSTED = "exhausted"
MI_TOL = 1e-9


@dataclass(frozen=True)
class Obligation:
    """Inner bound ``(origin, z)`` restated over the original messages ``S``."""

    S: frozenset
    z: int
    origin: frozenset

    def __str__(self) -> str:
        return f"S={format_message_set(self.S)} z={self.z}"


@dataclass(frozen=True)
class Evidence:
    witness: object
    sample: int
    lhs: float
    rhs: float


@dataclass(frozen=True)
class ConditionCheck:
    kind: str
    verdict: str
    witness: object = None
    evidence: tuple = ()
    n_candidates: int = 0

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED


def obligations(spec: NetworkSpec) -> list[Obligation]:
    reduced, rate_map = all_common_reduction(spec)
    return [
        Obligation(expand(rate_map, Sp), z, Sp)
        for Sp in enumerate_closed_sets(reduced)
        for z in range(1, spec.n_rx + 1)
    ]


def check_condition_i(ob: Obligation) -> ConditionCheck:
    if all(ob.z in m.rx for m in ob.S):
        return ConditionCheck("i", CERTIFIED, witness=f"S^{ob.z}=S", n_candidates=1)
    return ConditionCheck("i", EXHAUSTED, n_candidates=0)


# -- condition ii ----------------------------------------------------------

def _all_x(spec: NetworkSpec) -> list[VariableId]:
    return [VariableId.x(k) for k in range(1, spec.n_tx + 1)]


def condition_ii_terms(spec: NetworkSpec, ob: Obligation, part: Partition):
    """``(lhs terms, rhs term)`` of the strong-interference inequality for
    the obligation's own decoder (empty blocks contribute nothing)."""
    xs = _all_x(spec)
    everything = spec.all_messages
    lhs = [MITerm.make(zz, xs, [VariableId.u(m) for m in everything - block])
           for zz, block in part.blocks().items()]
    rhs = MITerm.make(ob.z, xs, [VariableId.u(m) for m in everything - ob.S])
    return lhs, rhs


def strong_interference_bound(spec: NetworkSpec, S, z: int) -> RateBound:
    """Outer bound that replaces the cut-set bounds of ``S`` once condition ii
    holds: ``sum R_S <= I(Y_z; X | U of S-complement)``."""
    S = frozenset(S)
    cond = [VariableId.u(m) for m in spec.all_messages - S]
    return RateBound(tuple(sorted(S)), (MITerm.make(z, _all_x(spec), cond),), "cutset",
                     provenance=f"replacement z'={z}")


def _scan(candidates, evaluate, samples, tol, violated):
    """First candidate with no violating sample, else one violation each."""
    failures = []
    for cand in candidates:
        rows = []
        bad = None
        for s, joint in enumerate(samples):
            lhs, rhs = evaluate(cand, joint)
            rows.append(Evidence(cand, s, lhs, rhs))
            if violated(lhs, rhs, tol):
                bad = rows[-1]
                break
        if bad is None:
            return cand, tuple(rows), failures
        failures.append(bad)
    return None, (), failures


def check_condition_ii(ob: Obligation, spec: NetworkSpec, samples: Sequence,
                       tol: float = MI_TOL) -> ConditionCheck:
    """Search partitions of ``S``; the replacement bound uses the obligation's
    decoder ``z``, the only choice that matches the inner bound ``(S', z)``.

    ``samples`` are outer-mode joints.
    """
    parts = enumerate_partitions(spec, ob.S)

    def evaluate(part, joint):
        lhs_t, rhs_t = condition_ii_terms(spec, ob, part)
        return sum(mutual_info(joint, t) for t in lhs_t), mutual_info(joint, rhs_t)

    win, rows, failures = _scan(parts, evaluate, samples, tol,
                                lambda lhs, rhs, t: lhs > rhs + t)
    if not parts:
        return ConditionCheck("ii", EXHAUSTED)
    if win is not None:
        return ConditionCheck("ii", CERTIFIED, witness=(win, ob.z), evidence=rows,
                              n_candidates=len(parts))
    return ConditionCheck("ii", FALSIFIED, evidence=tuple(failures), n_candidates=len(parts))


# -- condition iii ---------------------------------------------------------

def condition_iii_terms(reduced: NetworkSpec, origin, z: int, collection):
    xs = _all_x(reduced)
    everything = reduced.all_messages
    lhs = MITerm.make(z, xs, [VariableId.v(m) for m in everything - origin])
    rhs = [MITerm.make(zz, xs, [VariableId.v(m) for m in everything - St])
           for St, zz in collection]
    return lhs, rhs


def _collections(reduced: NetworkSpec, origin: frozenset, z: int, k_max: int, cover: str):
    closed = enumerate_closed_sets(reduced)
    if cover == "contains":
        pool = [St for St in closed if St >= origin]
    elif cover == "union":
        pool = list(closed)
    else:
        raise ValueError(f"unknown cover rule {cover!r}")
    pairs = [(St, zz) for St in pool for zz in range(1, reduced.n_rx + 1)]
    out = []
    for k in range(1, k_max + 1):
        for combo in itertools.combinations(pairs, k):
            if (origin, z) in combo:
                continue
            if cover == "union" and not origin <= frozenset().union(*(St for St, _ in combo)):
                continue
            out.append(combo)
    return out


def check_condition_iii(origin, z: int, spec: NetworkSpec, samples: Sequence,
                        k_max: int = 2, cover: str = "contains",
                        tol: float = MI_TOL) -> ConditionCheck:
    """Look for a collection of at most ``k_max`` other inner bounds whose
    right-hand sides sum to no more than that of ``(origin, z)``.

    ``origin`` is a closed set of all-common messages; ``samples`` are
    inner-mode joints.  With ``cover="contains"`` every member set contains
    ``origin``; with ``cover="union"`` the members only need to cover it
    together.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    reduced, _ = all_common_reduction(spec)
    origin = frozenset(origin)
    cands = _collections(reduced, origin, z, k_max, cover)
    if not cands:
        return ConditionCheck("iii", EXHAUSTED)

    def evaluate(coll, joint):
        lhs_t, rhs_t = condition_iii_terms(reduced, origin, z, coll)
        return mutual_info(joint, lhs_t), sum(mutual_info(joint, t) for t in rhs_t)

    win, rows, failures = _scan(cands, evaluate, samples, tol,
                                lambda lhs, rhs, t: lhs < rhs - t)
    if win is not None:
        return ConditionCheck("iii", CERTIFIED, witness=win, evidence=rows,
                              n_candidates=len(cands))
    return ConditionCheck("iii", FALSIFIED, evidence=tuple(failures), n_candidates=len(cands))


def replay(check: ConditionCheck, ob: Obligation, spec: NetworkSpec, samples: Sequence,
           tol: float = MI_TOL) -> list[bool]:
    """Re-evaluate every piece of falsifying evidence; True where the
    violation reproduces."""
    out = []
    if check.kind == "ii":
        for ev in check.evidence:
            lhs_t, rhs_t = condition_ii_terms(spec, ob, ev.witness)
            j = samples[ev.sample]
            lhs = sum(mutual_info(j, t) for t in lhs_t)
            out.append(lhs > mutual_info(j, rhs_t) + tol)
    elif check.kind == "iii":
        reduced, _ = all_common_reduction(spec)
        for ev in check.evidence:
            lhs_t, rhs_t = condition_iii_terms(reduced, ob.origin, ob.z, ev.witness)
            j = samples[ev.sample]
            out.append(mutual_info(j, lhs_t) < sum(mutual_info(j, t) for t in rhs_t) - tol)
    return out


# -- certificate -----------------------------------------------------------

def _fmt_witness(check: ConditionCheck) -> str:
    if check.kind == "i":
        return check.witness
    if check.kind == "ii":
        part, zp = check.witness
        return f"{part} z'={zp}"
    return "+".join(f"(S'={format_message_set(St)},Y{zz})" for St, zz in check.witness)


def _fmt_failure(check: ConditionCheck) -> str:
    if check.verdict != FALSIFIED or not check.evidence:
        return f"{check.kind}:{check.verdict}"
    ev = check.evidence[0]
    return (f"{check.kind}:{check.verdict}(sample={ev.sample} "
            f"lhs={ev.lhs:.6f} rhs={ev.rhs:.6f})")


@dataclass
class ObligationResult:
    obligation: Obligation
    checks: list

    @property
    def discharged_by(self) -> Optional[ConditionCheck]:
        for c in self.checks:
            if c.certified:
                return c
        return None

    @property
    def certified(self) -> bool:
        return self.discharged_by is not None

    def line(self) -> str:
        c = self.discharged_by
        if c is not None:
            return f"{self.obligation} -> condition={c.kind} witness={_fmt_witness(c)}"
        fails = ",".join(_fmt_failure(c) for c in self.checks)
        return f"{self.obligation} -> FAILED witness=none checks={fails}"


@dataclass
class VSICertificate:
    results: list
    seed: int
    n_samples: int
    k_max: int = 2
    outer_samples: list = field(default_factory=list, repr=False)
    inner_samples: list = field(default_factory=list, repr=False)

    @property
    def certified(self) -> bool:
        return all(r.certified for r in self.results)

    @property
    def failed(self) -> list:
        return [r for r in self.results if not r.certified]

    def witnesses_acyclic(self) -> bool:
        """False when redundancy witnesses (condition iii) lean on each other
        in a cycle; such eliminations are mutually dependent."""
        by_key = {(r.obligation.origin, r.obligation.z): r for r in self.results}
        edges = {}
        for key, r in by_key.items():
            c = r.discharged_by
            if c is not None and c.kind == "iii":
                edges[key] = [w for w in c.witness
                              if by_key.get(w) is not None
                              and by_key[w].discharged_by is not None
                              and by_key[w].discharged_by.kind == "iii"]
        state = {}

        def visit(k):
            state[k] = 1
            for w in edges.get(k, ()):
                if state.get(w) == 1 or (state.get(w) is None and not visit(w)):
                    return False
            state[k] = 2
            return True

        return all(state.get(k) == 2 or visit(k) for k in edges)

    def report(self) -> str:
        verdict = "certified" if self.certified else "not-certified"
        lines = [
            f"# vsi seed={self.seed} samples={self.n_samples} k_max={self.k_max} verdict={verdict}",
            "# certified = no violation on the sampled distributions (corner cases included)",
            f"# iii-witnesses-acyclic={'yes' if self.witnesses_acyclic() else 'no'}",
        ]
        lines += [r.line() for r in self.results]
        return "\n".join(lines) + "\n"


def vsi_capacity(spec: NetworkSpec, channel: Channel, n_samples: int = 200, seed: int = 42,
                 k_max: int = 2, tol: float = MI_TOL):
    """Run conditions i, ii, iii (first success wins) on every obligation.

    Returns ``(certificate, region)``.  ``region`` is the sampled inner-bound
    region over the original rates when everything is certified, else None.
    """
    channel.check_spec(spec)
    outer = sample_distributions(make_schema(spec, channel, OUTER), channel, n_samples, seed)
    inner = sample_distributions(make_schema(spec, channel, INNER), channel, n_samples, seed)
    results = []
    for ob in obligations(spec):
        checks = [check_condition_i(ob)]
        if not checks[-1].certified:
            checks.append(check_condition_ii(ob, spec, outer, tol))
        if not checks[-1].certified:
            checks.append(check_condition_iii(ob.origin, ob.z, spec, inner, k_max, tol=tol))
        results.append(ObligationResult(ob, checks))
    cert = VSICertificate(results, seed, n_samples, k_max, outer, inner)
    if not cert.certified:
        return cert, None
    bs = inner_bounds(spec)
    region = RegionEstimate([evaluate_bounds(bs, j) for j in inner], seed=seed)
    return cert, region
