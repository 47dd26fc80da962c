"""JSON spec and channel files.

Spec file::

    {"n_tx": 2, "n_rx": 1, "messages": [{"tx": [1], "rx": [1]}, ...]}

Channel file::

    {"n_tx": 2, "n_rx": 1, "input_alphabets": [2, 2], "output_alphabets": [2],
     "transition": [...]}

``transition`` is flat, row-major with the inputs outermost and the outputs
innermost; each conditional row must sum to 1 within 1e-9.
"""
from __future__ import annotations

import json
import math
from decimal import Decimal
from pathlib import Path

import numpy as np

from .channel import Channel, ChannelError
from .network import NetworkSpec, SpecError, make_spec


class InputError(ValueError):
    """Malformed input file; the message names the file and field."""


def _load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    return data


def _int_field(data, name, path) -> int:
    v = data.get(name)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"{path}: field '{name}' must be an integer")
    return v


def _int_list(v, where, path) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in v):
        raise InputError(f"{path}: {where} must be a list of integers")
    return v


def spec_from_dict(data: dict, path="<spec>") -> NetworkSpec:
    n_tx = _int_field(data, "n_tx", path)
    n_rx = _int_field(data, "n_rx", path)
    msgs = data.get("messages")
    if not isinstance(msgs, list):
        raise InputError(f"{path}: field 'messages' must be a list")
    pairs = []
    for i, m in enumerate(msgs):
        if not isinstance(m, dict):
            raise InputError(f"{path}: messages[{i}] must be an object")
        pairs.append((_int_list(m.get("tx"), f"messages[{i}].tx", path),
                      _int_list(m.get("rx"), f"messages[{i}].rx", path)))
    try:
        return make_spec(n_tx, n_rx, pairs)
    except SpecError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_spec(path) -> NetworkSpec:
    return spec_from_dict(_load_json(path), path)


def spec_to_dict(spec: NetworkSpec) -> dict:
    return {
        "n_tx": spec.n_tx,
        "n_rx": spec.n_rx,
        "messages": [{"tx": list(m.tx), "rx": list(m.rx)} for m in spec.messages],
    }


def channel_from_dict(data: dict, path="<channel>") -> Channel:
    n_tx = _int_field(data, "n_tx", path)
    n_rx = _int_field(data, "n_rx", path)
    ins = _int_list(data.get("input_alphabets"), "field 'input_alphabets'", path)
    outs = _int_list(data.get("output_alphabets"), "field 'output_alphabets'", path)
    if len(ins) != n_tx:
        raise InputError(f"{path}: input_alphabets has {len(ins)} entries, n_tx={n_tx}")
    if len(outs) != n_rx:
        raise InputError(f"{path}: output_alphabets has {len(outs)} entries, n_rx={n_rx}")
    flat = data.get("transition")
    if not isinstance(flat, list):
        raise InputError(f"{path}: field 'transition' must be a list")
    want = math.prod(ins) * math.prod(outs)
    if len(flat) != want:
        raise InputError(f"{path}: transition has {len(flat)} entries, expected {want}")
    for i, v in enumerate(flat):
        if not isinstance(v, (int, Decimal)) or isinstance(v, bool):
            raise InputError(f"{path}: transition[{i}] is not a number")
    W = np.array([float(v) for v in flat], dtype=np.float64)
    try:
        return Channel(tuple(ins), tuple(outs), W)
    except ChannelError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_channel(path) -> Channel:
    return channel_from_dict(_load_json(path), path)


def channel_to_dict(ch: Channel) -> dict:
    return {
        "n_tx": ch.n_tx,
        "n_rx": ch.n_rx,
        "input_alphabets": list(ch.input_alphabets),
        "output_alphabets": list(ch.output_alphabets),
        "transition": [float(v) for v in ch.transition.ravel()],
    }


def dump_json(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8", newline="\n")
