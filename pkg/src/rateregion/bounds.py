"""Symbolic rate bounds: sums of message rates bounded by sums of conditional
mutual-information terms.

Four families are generated:

* ``han``     -- one bound per nonempty message set of a MAC, independent auxiliaries.
* ``compact`` -- the ``han`` bounds restricted to closed message sets, with
  superposition (chained) auxiliaries.
* ``cutset``  -- cut-set outer bounds of a general network, one per message set
  and per assignment of the set's messages to decoding receivers.
* ``inner``   -- superposition/rate-splitting inner bounds: every receiver
  decodes every all-common codeword.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .network import (
    MessageId,
    NetworkSpec,
    SpecError,
    all_common_reduction,
    common_transmitters,
    enumerate_closed_sets,
    enumerate_partitions,
    expand,
    format_message_set,
)

__all__ = [
    "INPUT",
    "AUX_OUTER",
    "AUX_INNER",
    "OUTPUT",
    "VariableId",
    "MITerm",
    "RateBound",
    "BoundSet",
    "NotAMACError",
    "han_bounds",
    "compact_bounds",
    "cutset_bounds",
    "inner_bounds",
    "generate",
    "canonicalize",
    "render_bound",
    "FORMULATIONS",
]

INPUT = "X"
AUX_OUTER = "U"
AUX_INNER = "V"
OUTPUT = "Y"
_KIND_RANK = {INPUT: 0, AUX_OUTER: 1, AUX_INNER: 2, OUTPUT: 3}

FORMULATIONS = ("han", "compact", "cutset", "inner")


class NotAMACError(SpecError):
    """Formulation only defined for a single receiver."""


@dataclass(frozen=True)
class VariableId:
    """A random variable of the single-letter expressions.

    ``key`` is a transmitter index for inputs, a receiver index for outputs,
    and a :class:`MessageId` for auxiliaries.  Inner auxiliaries are keyed by
    the all-common (reduced) message.
    """

    kind: str
    key: Union[int, MessageId]

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown variable kind {self.kind!r}")
        wants_msg = self.kind in (AUX_OUTER, AUX_INNER)
        if wants_msg != isinstance(self.key, MessageId):
            raise ValueError(f"key {self.key!r} inconsistent with kind {self.kind}")

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.key)

    def __lt__(self, other: "VariableId") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.kind == INPUT:
            return f"X{self.key}"
        if self.kind == OUTPUT:
            return f"Y{self.key}"
        if self.kind == AUX_OUTER:
            return f"U[{self.key}]"
        return f"U'[{self.key}]"

    @classmethod
    def x(cls, k: int) -> "VariableId":
        return cls(INPUT, k)

    @classmethod
    def y(cls, z: int) -> "VariableId":
        return cls(OUTPUT, z)

    @classmethod
    def u(cls, m: MessageId) -> "VariableId":
        return cls(AUX_OUTER, m)

    @classmethod
    def v(cls, m: MessageId) -> "VariableId":
        return cls(AUX_INNER, m)


def _sorted_vars(vs: Iterable[VariableId]) -> tuple[VariableId, ...]:
    return tuple(sorted(set(vs), key=VariableId.sort_key))


@dataclass(frozen=True)
class MITerm:
    """``I(Y_output; targets | conditioning)``.

    Construct through :meth:`make`, which drops conditioned variables from the
    target set (``I(Y; A | B) = I(Y; A\\B | B)``) and sorts both sets.
    """

    output: int
    targets: tuple[VariableId, ...]
    conditioning: tuple[VariableId, ...] = ()

    @classmethod
    def make(cls, output: int, targets: Iterable[VariableId],
             conditioning: Iterable[VariableId] = ()) -> "MITerm":
        cond = _sorted_vars(conditioning)
        tgt = _sorted_vars(v for v in targets if v not in cond)
        return cls(output, tgt, cond)

    def variables(self) -> tuple[VariableId, ...]:
        return _sorted_vars((VariableId.y(self.output), *self.targets, *self.conditioning))

    def sort_key(self):
        return (
            self.output,
            tuple(v.sort_key() for v in self.targets),
            tuple(v.sort_key() for v in self.conditioning),
        )

    def __str__(self) -> str:
        tgt = ",".join(map(str, self.targets)) or "{}"
        if self.conditioning:
            return f"I(Y{self.output}; {tgt} | {','.join(map(str, self.conditioning))})"
        return f"I(Y{self.output}; {tgt})"


@dataclass(frozen=True)
class RateBound:
    """``sum(R[m] for m in lhs) <= sum(rhs)``."""

    lhs: tuple[MessageId, ...]
    rhs: tuple[MITerm, ...]
    tag: str
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.lhs:
            raise ValueError("bound with empty rate sum")
        if not self.rhs:
            raise ValueError("bound with empty right-hand side")
        if self.tag not in FORMULATIONS:
            raise ValueError(f"unknown tag {self.tag!r}")

    def content(self):
        return (self.lhs, self.rhs)

    def __str__(self) -> str:
        return render_bound(self)


def canonicalize(bound: RateBound) -> RateBound:
    rhs = tuple(
        sorted((MITerm.make(t.output, t.targets, t.conditioning) for t in bound.rhs),
               key=MITerm.sort_key)
    )
    return replace(bound, lhs=tuple(sorted(set(bound.lhs))), rhs=rhs)


def render_bound(bound: RateBound, primed: bool = False) -> str:
    r = "R'" if primed else "R"
    lhs = "+".join(f"{r}[{m}]" for m in bound.lhs)
    return f"{lhs} <= " + " + ".join(str(t) for t in bound.rhs)


@dataclass(frozen=True)
class BoundSet:
    """Deduplicated, ordered bounds of one formulation.

    For the ``inner`` family the bounds are stated over the all-common rates
    of ``reduced_spec``; ``rate_map`` sends each all-common message to the
    original messages whose rates it carries.
    """

    bounds: tuple[RateBound, ...]
    spec: NetworkSpec
    tag: str
    rate_map: Optional[Mapping[MessageId, tuple[MessageId, ...]]] = None
    reduced_spec: Optional[NetworkSpec] = None

    @classmethod
    def build(cls, bounds: Iterable[RateBound], spec: NetworkSpec, tag: str,
              **kw) -> "BoundSet":
        seen = set()
        out = []
        for b in bounds:
            b = canonicalize(b)
            if b.content() not in seen:
                seen.add(b.content())
                out.append(b)
        return cls(tuple(out), spec, tag, **kw)

    def __len__(self) -> int:
        return len(self.bounds)

    def __iter__(self) -> Iterator[RateBound]:
        return iter(self.bounds)

    @property
    def primed(self) -> bool:
        return self.rate_map is not None

    def in_original_rates(self) -> "BoundSet":
        """Rewrite all-common rate sums as sums of the original rates."""
        if self.rate_map is None:
            return self
        return BoundSet.build(
            (replace(b, lhs=tuple(sorted(expand(self.rate_map, b.lhs)))) for b in self.bounds),
            self.spec, self.tag,
        )

    def with_outer_auxiliaries(self) -> "BoundSet":
        """Replace every all-common auxiliary by the outer auxiliaries of the
        messages it carries; lhs is rewritten in original rates as well."""
        if self.rate_map is None:
            return self
        rm = self.rate_map

        def sub(vs):
            out = []
            for v in vs:
                if v.kind == AUX_INNER:
                    out.extend(VariableId.u(m) for m in rm[v.key])
                else:
                    out.append(v)
            return out

        bounds = []
        for b in self.in_original_rates():
            rhs = tuple(MITerm.make(t.output, sub(t.targets), sub(t.conditioning)) for t in b.rhs)
            bounds.append(replace(b, rhs=rhs))
        return BoundSet.build(bounds, self.spec, self.tag)

    def lines(self) -> list[str]:
        return [render_bound(b, primed=self.primed) for b in self.bounds]

    def render(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def rate_labels(self) -> tuple[MessageId, ...]:
        """Coordinates of the rate space the bounds live in, once re-expressed
        in original rates."""
        return self.spec.messages


def _all_inputs(spec: NetworkSpec) -> list[VariableId]:
    return [VariableId.x(k) for k in range(1, spec.n_tx + 1)]


def _nonempty_subsets(msgs: Sequence[MessageId]) -> Iterator[frozenset[MessageId]]:
    for r in range(1, len(msgs) + 1):
        for combo in itertools.combinations(msgs, r):
            yield frozenset(combo)


def _require_mac(spec: NetworkSpec) -> None:
    if spec.n_rx != 1:
        raise NotAMACError(f"formulation needs a single receiver, spec has {spec.n_rx}")


def han_bounds(spec: NetworkSpec) -> BoundSet:
    _require_mac(spec)
    xs = _all_inputs(spec)
    everything = spec.all_messages
    out = []
    for S in _nonempty_subsets(spec.messages):
        cond = [VariableId.u(m) for m in everything - S]
        out.append(RateBound(tuple(sorted(S)), (MITerm.make(1, xs, cond),), "han",
                             provenance=f"S={format_message_set(S)}"))
    return BoundSet.build(out, spec, "han")


def compact_bounds(spec: NetworkSpec) -> BoundSet:
    _require_mac(spec)
    xs = _all_inputs(spec)
    everything = spec.all_messages
    out = []
    for S in enumerate_closed_sets(spec):
        cond = [VariableId.v(m) for m in everything - S]
        out.append(RateBound(tuple(sorted(S)), (MITerm.make(1, xs, cond),), "compact",
                             provenance=f"S={format_message_set(S)}"))
    return BoundSet.build(out, spec, "compact")


def cutset_bounds(spec: NetworkSpec) -> BoundSet:
    xs = _all_inputs(spec)
    everything = spec.all_messages
    out = []
    for S in _nonempty_subsets(spec.messages):
        for part in enumerate_partitions(spec, S):
            terms = []
            for z, block in part.blocks().items():
                rest = everything - block
                # an empty complement has no common transmitter to condition on
                tx = common_transmitters(spec, rest) if rest else frozenset()
                cond = [VariableId.x(k) for k in tx] + [VariableId.u(m) for m in rest]
                terms.append(MITerm.make(z, xs, cond))
            out.append(RateBound(tuple(sorted(S)), tuple(terms), "cutset",
                                 provenance=str(part)))
    return BoundSet.build(out, spec, "cutset")


def inner_bounds(spec: NetworkSpec) -> BoundSet:
    reduced, rate_map = all_common_reduction(spec)
    xs = _all_inputs(spec)
    everything = reduced.all_messages
    out = []
    for S in enumerate_closed_sets(reduced):
        cond = [VariableId.v(m) for m in everything - S]
        for z in range(1, spec.n_rx + 1):
            out.append(RateBound(tuple(sorted(S)), (MITerm.make(z, xs, cond),), "inner",
                                 provenance=f"S'={format_message_set(S)} z={z}"))
    return BoundSet.build(out, spec, "inner", rate_map=rate_map, reduced_spec=reduced)


_GENERATORS = {
    "han": han_bounds,
    "compact": compact_bounds,
    "cutset": cutset_bounds,
    "inner": inner_bounds,
}


def generate(spec: NetworkSpec, formulation: str) -> BoundSet:
    try:
        gen = _GENERATORS[formulation]
    except KeyError:
        raise ValueError(f"unknown formulation {formulation!r}") from None
    return gen(spec)

