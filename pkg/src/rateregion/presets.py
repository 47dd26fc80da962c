"""Built-in network specs and channels."""
from __future__ import annotations

import itertools

import numpy as np

from .channel import Channel
from .network import NetworkSpec, make_spec

SPECS = {
    "single": lambda: make_spec(1, 1, [((1,), (1,))]),
    "classical-mac": lambda: make_spec(2, 1, [((1,), (1,)), ((2,), (1,))]),
    # Slepian-Wolf MAC: two private messages and one common message
    "sw-mac": lambda: make_spec(2, 1, [((1,), (1,)), ((2,), (1,)), ((1, 2), (1,))]),
    # interference channel, each transmitter also sends a common message
    "ifc2cm": lambda: make_spec(
        2, 2, [((1,), (1,)), ((2,), (2,)), ((1,), (1, 2)), ((2,), (1, 2))]
    ),
}


def _deterministic(ins, outs, fn) -> Channel:
    W = np.zeros(tuple(ins) + tuple(outs))
    for x in itertools.product(*(range(a) for a in ins)):
        W[x + tuple(fn(*x))] = 1.0
    return Channel(tuple(ins), tuple(outs), W)


def bsc(p: float) -> Channel:
    return Channel((2,), (2,), np.array([[1 - p, p], [p, 1 - p]]))


def _ifc_noise2() -> Channel:
    W = np.zeros((2, 2, 3, 2))
    for a, b in itertools.product(range(2), repeat=2):
        W[a, b, a + b, :] = 0.5
    return Channel((2, 2), (3, 2), W)


CHANNELS = {
    "bsc-0.11": lambda: bsc(0.11),
    "mac-xor": lambda: _deterministic((2, 2), (2,), lambda a, b: (a ^ b,)),
    "mac-parallel": lambda: _deterministic((2, 2), (4,), lambda a, b: (2 * a + b,)),
    "mac-adder": lambda: _deterministic((2, 2), (3,), lambda a, b: (a + b,)),
    # both receivers observe the same adder output
    "ifc-shared": lambda: _deterministic((2, 2), (3, 3), lambda a, b: (a + b, a + b)),
    # receiver 1 sees the adder, receiver 2 an input-independent fair bit
    "ifc-noise2": _ifc_noise2,
}

DEFAULT_CHANNEL = {
    "single": "bsc-0.11",
    "classical-mac": "mac-parallel",
    "sw-mac": "mac-xor",
    "ifc2cm": "ifc-shared",
}


def spec_preset(name: str) -> NetworkSpec:
    try:
        return SPECS[name]()
    except KeyError:
        raise KeyError(f"unknown spec preset {name!r}; choose from {sorted(SPECS)}") from None


def channel_preset(name: str) -> Channel:
    try:
        return CHANNELS[name]()
    except KeyError:
        raise KeyError(f"unknown channel preset {name!r}; choose from {sorted(CHANNELS)}") from None
