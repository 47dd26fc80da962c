"""Message structure of a single-hop cognitive network and its set combinatorics.

A message is identified by the pair (transmitter set, receiver set).  Sets of
messages are plain ``frozenset`` objects of :class:`MessageId`; every listing
produced here is in canonical order so that downstream bound generation is
deterministic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "SpecError",
    "MessageId",
    "NetworkSpec",
    "Partition",
    "make_spec",
    "validate_spec",
    "common_transmitters",
    "involved_receivers",
    "all_common_reduction",
    "enumerate_closed_sets",
    "is_closed",
    "enumerate_partitions",
    "format_message_set",
    "expand",
]


class SpecError(ValueError):
    """Invalid network description."""


@dataclass(frozen=True, order=True)
class MessageId:
    """Message known at transmitters ``tx`` and wanted by receivers ``rx``.

    Both index tuples are 1-based and sorted; dataclass ordering on the two
    tuples is the global canonical order.
    """

    tx: tuple[int, ...]
    rx: tuple[int, ...]

    @classmethod
    def of(cls, tx: Iterable[int], rx: Iterable[int]) -> "MessageId":
        return cls(tuple(sorted(set(tx))), tuple(sorted(set(rx))))

    def __str__(self) -> str:
        return "{%s|%s}" % (",".join(map(str, self.tx)), ",".join(map(str, self.rx)))


@dataclass(frozen=True)
class NetworkSpec:
    n_tx: int
    n_rx: int
    messages: tuple[MessageId, ...]

    @property
    def all_messages(self) -> frozenset[MessageId]:
        return frozenset(self.messages)

    @property
    def is_mac(self) -> bool:
        return self.n_rx == 1

    def index(self, message: MessageId) -> int:
        return self.messages.index(message)


def validate_spec(spec: NetworkSpec) -> None:
    """Raise :class:`SpecError` naming the first offending message position."""
    if spec.n_tx < 1 or spec.n_rx < 1:
        raise SpecError("n_tx and n_rx must be positive")
    seen: dict[MessageId, int] = {}
    for pos, msg in enumerate(spec.messages):
        if not msg.tx:
            raise SpecError(f"message {pos}: empty tx_set")
        if not msg.rx:
            raise SpecError(f"message {pos}: empty rx_set")
        if any(k < 1 or k > spec.n_tx for k in msg.tx):
            raise SpecError(f"message {pos}: tx index out of range 1..{spec.n_tx}")
        if any(z < 1 or z > spec.n_rx for z in msg.rx):
            raise SpecError(f"message {pos}: rx index out of range 1..{spec.n_rx}")
        key = MessageId.of(msg.tx, msg.rx)
        if key in seen:
            raise SpecError(f"message {pos}: duplicate of message {seen[key]}")
        seen[key] = pos
    if not spec.messages:
        raise SpecError("no messages")


def make_spec(n_tx: int, n_rx: int, pairs: Iterable) -> NetworkSpec:
    """Build a validated spec with messages in canonical order.

    ``pairs`` holds ``MessageId`` objects or ``(tx, rx)`` iterables.
    """
    msgs = []
    for p in pairs:
        if isinstance(p, MessageId):
            msgs.append(p)
        else:
            tx, rx = p
            msgs.append(MessageId(tuple(tx), tuple(rx)))
    raw = NetworkSpec(n_tx, n_rx, tuple(msgs))
    validate_spec(raw)
    canon = sorted(MessageId.of(m.tx, m.rx) for m in msgs)
    return NetworkSpec(n_tx, n_rx, tuple(canon))


def _require_nonempty(S) -> None:
    if not S:
        raise SpecError("empty message set")


def common_transmitters(spec: NetworkSpec, S: Iterable[MessageId]) -> frozenset[int]:
    S = list(S)
    _require_nonempty(S)
    out = set(S[0].tx)
    for m in S[1:]:
        out &= set(m.tx)
    return frozenset(out)


def involved_receivers(spec: NetworkSpec, S: Iterable[MessageId]) -> frozenset[int]:
    S = list(S)
    _require_nonempty(S)
    out: set[int] = set()
    for m in S:
        out |= set(m.rx)
    return frozenset(out)


def all_common_reduction(
    spec: NetworkSpec,
) -> tuple[NetworkSpec, dict[MessageId, tuple[MessageId, ...]]]:
    """Merge all messages sharing a transmitter set into one all-common message.

    Returns the reduced spec and a map from each reduced message to the
    original messages whose rates add up to it.
    """
    j_all = tuple(sorted(involved_receivers(spec, spec.messages)))
    groups: dict[tuple[int, ...], list[MessageId]] = {}
    for m in spec.messages:
        groups.setdefault(m.tx, []).append(m)
    rate_map = {
        MessageId(tx, j_all): tuple(sorted(members)) for tx, members in groups.items()
    }
    reduced = NetworkSpec(spec.n_tx, spec.n_rx, tuple(sorted(rate_map)))
    return reduced, dict(sorted(rate_map.items()))


def _is_reduced(spec: NetworkSpec) -> bool:
    return len({m.tx for m in spec.messages}) == len(spec.messages)


def is_closed(spec: NetworkSpec, S: Iterable[MessageId]) -> bool:
    """True when every message whose tx set is strictly inside that of a member
    of ``S`` is itself a member.  Only messages present in ``spec`` count."""
    S = frozenset(S)
    for m in S:
        inner = set(m.tx)
        for other in spec.messages:
            if set(other.tx) < inner and other not in S:
                return False
    return True


def _set_key(S: Iterable[MessageId]):
    members = tuple(sorted(S))
    return (len(members), members)


def enumerate_closed_sets(spec: NetworkSpec) -> list[frozenset[MessageId]]:
    """All nonempty message sets closed under tx-subset inclusion.

    Ordered by size, then lexicographically by sorted members.
    """
    if not _is_reduced(spec):
        raise SpecError("closed-set enumeration needs one message per tx_set")
    msgs = spec.messages
    m = len(msgs)
    out = []
    # needs[i]: bitmask of messages whose tx set is strictly inside msgs[i].tx
    needs = []
    for a in msgs:
        mask = 0
        for b_idx, b in enumerate(msgs):
            if set(b.tx) < set(a.tx):
                mask |= 1 << b_idx
        needs.append(mask)
    for bits in range(1, 1 << m):
        ok = True
        for i in range(m):
            if bits >> i & 1 and (needs[i] & ~bits):
                ok = False
                break
        if ok:
            out.append(frozenset(msgs[i] for i in range(m) if bits >> i & 1))
    out.sort(key=_set_key)
    return out


@dataclass(frozen=True)
class Partition:
    """Assignment of each message of ``S`` to one of its receivers."""

    assignment: tuple[tuple[MessageId, int], ...]

    def __post_init__(self):
        for msg, z in self.assignment:
            if z not in msg.rx:
                raise SpecError(f"receiver {z} does not decode {msg}")

    @property
    def members(self) -> frozenset[MessageId]:
        return frozenset(m for m, _ in self.assignment)

    def blocks(self) -> dict[int, frozenset[MessageId]]:
        """Nonempty blocks keyed by receiver, in receiver order."""
        out: dict[int, set[MessageId]] = {}
        for msg, z in self.assignment:
            out.setdefault(z, set()).add(msg)
        return {z: frozenset(out[z]) for z in sorted(out)}

    def __str__(self) -> str:
        return " ".join(
            f"S^{z}={format_message_set(b)}" for z, b in self.blocks().items()
        )


def enumerate_partitions(spec: NetworkSpec, S: Iterable[MessageId]) -> list[Partition]:
    S = sorted(S)
    _require_nonempty(S)
    return [
        Partition(tuple(zip(S, choice)))
        for choice in itertools.product(*(m.rx for m in S))
    ]


def format_message_set(S: Iterable[MessageId]) -> str:
    return "{" + ",".join(str(m) for m in sorted(S)) + "}"


def expand(rate_map: Mapping[MessageId, Sequence[MessageId]], S: Iterable[MessageId]):
    """Original messages carried by the reduced messages in ``S``."""
    out: set[MessageId] = set()
    for m in S:
        out.update(rate_map[m])
    return frozenset(out)
