"""Discrete memoryless channels, joint distributions under the two
auxiliary factorizations, exact mutual information, and numeric instantiation
of bound sets.

Two factorizations are supported:

``outer``
    One independent auxiliary ``U[m]`` per original message; input ``X_k``
    depends on the auxiliaries of the messages transmitter ``k`` knows.
``inner``
    One auxiliary ``U'[i]`` per all-common message (one per transmitter set);
    ``U'[i]`` depends on every ``U'[l]`` with ``l`` a strict superset of ``i``
    (superposition), and ``X_k`` on every ``U'[i]`` with ``k`` in ``i``.

All logarithms are base 2.
"""
from __future__ import annotations

import math
import string
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from ._kernels import entropy_bits
from .bounds import (
    AUX_INNER,
    AUX_OUTER,
    INPUT,
    OUTPUT,
    BoundSet,
    MITerm,
    VariableId,
)
from .network import MessageId, NetworkSpec, all_common_reduction
from .polytope import HPolytope

__all__ = [
    "OUTER",
    "INNER",
    "MAX_JOINT_ENTRIES",
    "ChannelError",
    "UnknownVariableError",
    "SchemaMismatchError",
    "Channel",
    "FactorizationSchema",
    "JointDistribution",
    "make_schema",
    "build_joint",
    "mutual_info",
    "evaluate_bounds",
    "sample_distributions",
    "as_inner",
]

OUTER = "outer"
INNER = "inner"
MAX_JOINT_ENTRIES = 10**7
ROW_TOL = 1e-9

_MODE_OF_TAG = {"han": OUTER, "cutset": OUTER, "compact": INNER, "inner": INNER}


class ChannelError(ValueError):
    pass


class UnknownVariableError(KeyError):
    pass


class SchemaMismatchError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Channel:
    """``P(y_1..y_n_rx | x_1..x_n_tx)`` as a dense table with one axis per
    input followed by one axis per output."""

    input_alphabets: tuple[int, ...]
    output_alphabets: tuple[int, ...]
    transition: np.ndarray

    def __post_init__(self):
        ins = tuple(int(a) for a in self.input_alphabets)
        outs = tuple(int(a) for a in self.output_alphabets)
        if not ins or not outs or min(ins + outs) < 1:
            raise ChannelError("alphabet sizes must be positive")
        W = np.asarray(self.transition, dtype=np.float64)
        if W.size != math.prod(ins) * math.prod(outs):
            raise ChannelError(
                f"transition has {W.size} entries, expected {math.prod(ins) * math.prod(outs)}"
            )
        W = W.reshape(ins + outs).copy()
        if np.any(W < 0):
            raise ChannelError("negative transition probability")
        rows = W.reshape(math.prod(ins), -1).sum(axis=1)
        bad = np.flatnonzero(np.abs(rows - 1.0) > ROW_TOL)
        if bad.size:
            x = np.unravel_index(int(bad[0]), ins)
            raise ChannelError(f"row x={tuple(int(v) for v in x)} sums to {rows[bad[0]]!r}")
        W.setflags(write=False)
        object.__setattr__(self, "input_alphabets", ins)
        object.__setattr__(self, "output_alphabets", outs)
        object.__setattr__(self, "transition", W)

    @property
    def n_tx(self) -> int:
        return len(self.input_alphabets)

    @property
    def n_rx(self) -> int:
        return len(self.output_alphabets)

    def check_spec(self, spec: NetworkSpec) -> None:
        if (spec.n_tx, spec.n_rx) != (self.n_tx, self.n_rx):
            raise ChannelError(
                f"channel is {self.n_tx}x{self.n_rx}, spec is {spec.n_tx}x{spec.n_rx}"
            )


@dataclass(frozen=True)
class FactorizationSchema:
    """Which auxiliaries exist and what each variable is conditioned on.

    ``aux`` is listed parents-first; ``spec`` is the message structure the
    auxiliaries are keyed by (the original spec in outer mode, the all-common
    reduction in inner mode).
    """

    mode: str
    spec: NetworkSpec
    aux: tuple[VariableId, ...]
    aux_alphabets: Mapping[VariableId, int]
    aux_parents: Mapping[VariableId, tuple[VariableId, ...]]
    input_alphabets: tuple[int, ...]
    input_parents: tuple[tuple[VariableId, ...], ...]
    source_spec: Optional[NetworkSpec] = None

    def parents(self, var: VariableId) -> tuple[VariableId, ...]:
        if var.kind == INPUT:
            return self.input_parents[var.key - 1]
        return self.aux_parents[var]

    def alphabet(self, var: VariableId) -> int:
        if var.kind == INPUT:
            return self.input_alphabets[var.key - 1]
        return self.aux_alphabets[var]

    def components(self) -> tuple[VariableId, ...]:
        """Factor order: auxiliaries parents-first, then inputs."""
        return self.aux + tuple(VariableId.x(k) for k in range(1, len(self.input_alphabets) + 1))

    def component_shape(self, var: VariableId) -> tuple[int, ...]:
        return tuple(self.alphabet(p) for p in self.parents(var)) + (self.alphabet(var),)


def make_schema(spec: NetworkSpec, channel: Channel, mode: str,
                aux_alphabets: Optional[Mapping[MessageId, int]] = None) -> FactorizationSchema:
    """Schema for ``spec`` under ``mode``.

    Auxiliary alphabets default to the product of the alphabets of the inputs
    the auxiliary feeds; ``aux_alphabets`` overrides per message (keyed by
    the message the auxiliary belongs to, reduced message in inner mode).
    """
    channel.check_spec(spec)
    ins = channel.input_alphabets
    if mode == OUTER:
        keyed = spec
        kind = AUX_OUTER
    elif mode == INNER:
        keyed, _ = all_common_reduction(spec)
        kind = AUX_INNER
    else:
        raise ValueError(f"unknown mode {mode!r}")
    aux_alphabets = dict(aux_alphabets or {})
    # supersets first so that superposition parents precede their children
    msgs = sorted(keyed.messages, key=lambda m: (-len(m.tx), m))
    aux = tuple(VariableId(kind, m) for m in msgs)
    sizes, parents = {}, {}
    for v in aux:
        m = v.key
        sizes[v] = int(aux_alphabets.get(m, math.prod(ins[k - 1] for k in m.tx)))
        if mode == INNER:
            parents[v] = tuple(w for w in aux if set(w.key.tx) > set(m.tx))
        else:
            parents[v] = ()
    in_parents = tuple(
        tuple(v for v in aux if k in v.key.tx) for k in range(1, spec.n_tx + 1)
    )
    return FactorizationSchema(mode, keyed, aux, sizes, parents, ins, in_parents,
                               source_spec=spec)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Dense pmf over auxiliaries, inputs and outputs, one axis per variable.

    Marginal entropies are memoised per variable subset.
    """

    variables: tuple[VariableId, ...]
    pmf: np.ndarray
    mode: str
    schema: Optional[FactorizationSchema] = None
    label: str = ""
    _entropies: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        p = np.asarray(self.pmf, dtype=np.float64)
        if p.ndim != len(self.variables):
            raise ChannelError("one pmf axis per variable")
        if np.any(p < 0):
            raise ChannelError("negative probability")
        total = float(p.sum())
        if abs(total - 1.0) > 1e-9:
            raise ChannelError(f"pmf sums to {total!r}")
        p.setflags(write=False)
        object.__setattr__(self, "pmf", p)
        object.__setattr__(self, "_axis", {v: i for i, v in enumerate(self.variables)})

    def axis(self, var: VariableId) -> int:
        try:
            return self._axis[var]
        except KeyError:
            raise UnknownVariableError(str(var)) from None

    def marginal(self, vars_: Sequence[VariableId]) -> np.ndarray:
        """Marginal table over ``vars_`` (axes in the given order)."""
        axes = [self.axis(v) for v in vars_]
        drop = tuple(i for i in range(self.pmf.ndim) if i not in axes)
        m = self.pmf.sum(axis=drop) if drop else self.pmf
        kept = sorted(axes)
        return np.transpose(m, [kept.index(a) for a in axes]) if axes else m

    def entropy(self, vars_) -> float:
        axes = frozenset(self.axis(v) for v in vars_)
        hit = self._entropies.get(axes)
        if hit is None:
            if not axes:
                hit = 0.0
            else:
                drop = tuple(i for i in range(self.pmf.ndim) if i not in axes)
                hit = entropy_bits(self.pmf.sum(axis=drop) if drop else self.pmf)
            self._entropies[axes] = hit
        return hit

    def permuted(self, order: Sequence[int]) -> "JointDistribution":
        """Same distribution with table axes reordered."""
        return JointDistribution(tuple(self.variables[i] for i in order),
                                 np.transpose(self.pmf, order), self.mode, self.schema,
                                 self.label)


def build_joint(schema: FactorizationSchema, channel: Channel,
                component_pmfs: Mapping[VariableId, np.ndarray], label: str = "") -> JointDistribution:
    """Multiply the factor pmfs and the channel transition into a joint table.

    ``component_pmfs[v]`` has shape ``(*parent alphabets, alphabet of v)`` and
    each row is a pmf.
    """
    channel.check_spec(schema.source_spec or schema.spec)
    if tuple(channel.input_alphabets) != tuple(schema.input_alphabets):
        raise ChannelError("channel input alphabets differ from the schema's")
    comps = schema.components()
    missing = [str(v) for v in comps if v not in component_pmfs]
    if missing:
        raise ChannelError(f"missing component pmfs: {', '.join(missing)}")
    ys = tuple(VariableId.y(z) for z in range(1, channel.n_rx + 1))
    variables = tuple(sorted(comps, key=VariableId.sort_key)) + ys
    sizes = [schema.alphabet(v) for v in variables[:len(comps)]] + list(channel.output_alphabets)
    total = math.prod(sizes)
    if total > MAX_JOINT_ENTRIES:
        raise ChannelError(f"joint table would have {total} entries (cap {MAX_JOINT_ENTRIES})")
    letters = dict(zip(variables, string.ascii_letters))
    if len(letters) < len(variables):
        raise ChannelError("too many variables for a dense joint")
    operands, subs = [], []
    for v in comps:
        f = np.asarray(component_pmfs[v], dtype=np.float64)
        want = schema.component_shape(v)
        if f.shape != want:
            raise ChannelError(f"component {v} has shape {f.shape}, expected {want}")
        if np.any(f < 0):
            raise ChannelError(f"component {v} has negative entries")
        rows = f.sum(axis=-1)
        if np.any(np.abs(rows - 1.0) > ROW_TOL):
            raise ChannelError(f"component {v} rows do not sum to 1")
        operands.append(f)
        subs.append("".join(letters[p] for p in schema.parents(v)) + letters[v])
    xs = [VariableId.x(k) for k in range(1, channel.n_tx + 1)]
    operands.append(channel.transition)
    subs.append("".join(letters[v] for v in xs + list(ys)))
    expr = ",".join(subs) + "->" + "".join(letters[v] for v in variables)
    pmf = np.einsum(expr, *operands, optimize=True)
    total_mass = float(pmf.sum())
    if abs(total_mass - 1.0) > 1e-12 * max(1, len(comps)) + 1e-12:
        raise ChannelError(f"joint normalisation failed: total {total_mass!r}")
    return JointDistribution(variables, pmf, schema.mode, schema, label)


def mutual_info(joint: JointDistribution, term: MITerm) -> float:
    """``I(Y; A | B) = H(Y,B) + H(A,B) - H(B) - H(Y,A,B)`` in bits."""
    y = VariableId.y(term.output)
    A, B = list(term.targets), list(term.conditioning)
    for v in (y, *A, *B):
        joint.axis(v)
    if not A:
        return 0.0
    val = (joint.entropy([y, *B]) + joint.entropy([*A, *B])
           - joint.entropy(B) - joint.entropy([y, *A, *B]))
    return 0.0 if -1e-12 < val < 0.0 else val


def evaluate_bounds(bound_set: BoundSet, joint: JointDistribution) -> HPolytope:
    """Numeric polytope over the original message rates."""
    want = _MODE_OF_TAG[bound_set.tag]
    if joint.mode != want:
        raise SchemaMismatchError(
            f"{bound_set.tag} bounds need a {want} joint, got {joint.mode}"
        )
    bs = bound_set.in_original_rates()
    labels = bs.spec.messages
    col = {m: i for i, m in enumerate(labels)}
    A = np.zeros((len(bs), len(labels)))
    b = np.zeros(len(bs))
    for r, bound in enumerate(bs):
        for m in bound.lhs:
            A[r, col[m]] = 1.0
        b[r] = sum(mutual_info(joint, t) for t in bound.rhs)
    return HPolytope(A, np.maximum(b, 0.0), labels)


# -- sampling --------------------------------------------------------------

def _digit(schema: FactorizationSchema, aux: VariableId, u: int, k: int) -> int:
    """The part of auxiliary symbol ``u`` that feeds input ``k``."""
    tx = aux.key.tx
    radices = [schema.input_alphabets[j - 1] for j in tx]
    if schema.alphabet(aux) != math.prod(radices):
        return u % schema.input_alphabets[k - 1]
    for j, r in zip(reversed(tx), reversed(radices)):
        if j == k:
            return u % r
        u //= r
    raise AssertionError("input not fed by auxiliary")


def _map_table(shape, symbols) -> np.ndarray:
    """Conditional pmf table of a deterministic map given per-row symbols."""
    f = np.zeros(shape)
    rows = np.asarray(symbols, dtype=np.int64).reshape(shape[:-1])
    np.put_along_axis(f, rows[..., None], 1.0, axis=-1)
    return f


def _modsum_symbols(schema: FactorizationSchema, x: VariableId) -> np.ndarray:
    shape = schema.component_shape(x)
    parents = schema.parents(x)
    out = np.zeros(shape[:-1], dtype=np.int64)
    for idx in np.ndindex(*shape[:-1]):
        out[idx] = sum(_digit(schema, p, u, x.key) for p, u in zip(parents, idx)) % shape[-1]
    return out


def _corner(schema: FactorizationSchema, which: str) -> dict:
    comps = {}
    for v in schema.components():
        shape = schema.component_shape(v)
        if v.kind == INPUT:
            sym = _modsum_symbols(schema, v) if which == "uniform" else np.zeros(shape[:-1])
            comps[v] = _map_table(shape, sym)
        elif which == "uniform":
            comps[v] = np.full(shape, 1.0 / shape[-1])
        else:
            comps[v] = _map_table(shape, np.zeros(shape[:-1]))
    return comps


CORNERS = ("uniform", "deterministic")


def sample_distributions(schema: FactorizationSchema, channel: Channel, n: int,
                         seed: int) -> list[JointDistribution]:
    """``n`` joints: the corner cases first, then random draws.

    Auxiliary pmfs are drawn from a symmetric Dirichlet(1).  Each input is a
    deterministic function of its auxiliaries (a uniformly random map), since
    the bound expressions count every bit of input entropy as message rate.

    Corners, in order: uniform auxiliaries with each input the mod-sum of its
    auxiliaries' digits; every component a point mass.  The list for ``n`` is
    a prefix of the list for any larger ``n``.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n):
        if i < len(CORNERS):
            comps = _corner(schema, CORNERS[i])
            label = CORNERS[i]
        else:
            comps = {}
            for v in schema.components():
                shape = schema.component_shape(v)
                if v.kind == INPUT:
                    comps[v] = _map_table(shape, rng.integers(0, shape[-1], size=shape[:-1]))
                else:
                    comps[v] = rng.dirichlet(np.ones(shape[-1]), size=shape[:-1])
            label = "random"
        out.append(build_joint(schema, channel, comps, label=f"seed={seed}:{i}:{label}"))
    return out


def as_inner(joint: JointDistribution) -> JointDistribution:
    """View an outer (independent-auxiliary) joint as an inner-mode joint.

    Needs one message per transmitter set; each ``U[m]`` becomes the
    all-common ``U'`` of its transmitter set.  Independent auxiliaries are a
    special case of the superposition factorization.
    """
    if joint.mode != OUTER or joint.schema is None:
        raise SchemaMismatchError("as_inner needs an outer joint with its schema")
    spec = joint.schema.spec
    reduced, rate_map = all_common_reduction(spec)
    if len(reduced.messages) != len(spec.messages):
        raise SchemaMismatchError("as_inner needs one message per tx_set")
    back = {orig[0]: red for red, orig in rate_map.items()}
    variables = tuple(
        VariableId.v(back[v.key]) if v.kind == AUX_OUTER else v for v in joint.variables
    )
    return JointDistribution(variables, joint.pmf, INNER, None, joint.label)
