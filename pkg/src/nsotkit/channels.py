"""Canonical discrete memoryless channels as conditional PMFs.

Kinds: ``dmc`` (one input, one output axis), ``mac`` (two input axes,
one output axis), ``bc`` (one input axis, two output axes).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, StructureError
from .probability import Alphabet, ConditionalPmf, DEFAULT_TOLERANCE

KINDS = ("dmc", "mac", "bc")

# erasure output symbol: by convention the last index of the output axis
ERASED = 2


@dataclass(frozen=True)
class Channel:
    kind: str
    law: ConditionalPmf

    def __post_init__(self):
        if self.kind not in KINDS:
            raise StructureError(f"channel kind {self.kind!r} not one of {KINDS}")
        n_in, n_out = len(self.law.input_axes), len(self.law.output_axes)
        expected = {"dmc": (1, 1), "mac": (2, 1), "bc": (1, 2)}[self.kind]
        if (n_in, n_out) != expected:
            raise StructureError(
                f"{self.kind} channel needs {expected[0]} input / {expected[1]} output axes,"
                f" got {n_in}/{n_out}"
            )


def binary_adder_mac(tolerance: float = DEFAULT_TOLERANCE) -> Channel:
    """Noiseless binary adder: y = x1 + x2 over {0, 1, 2}."""
    vals = np.zeros((3, 2, 2))
    for x1 in (0, 1):
        for x2 in (0, 1):
            vals[x1 + x2, x1, x2] = 1.0
    law = ConditionalPmf(
        (Alphabet("y", 3),), (Alphabet("x1", 2), Alphabet("x2", 2)), vals, tolerance
    )
    return Channel("mac", law)


def erasure_channel(p: float, tolerance: float = DEFAULT_TOLERANCE) -> Channel:
    """Binary erasure channel; output 2 is the erasure symbol."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"erasure probability {p} outside [0, 1]")
    vals = np.zeros((3, 2))
    for x in (0, 1):
        vals[x, x] = 1.0 - p
        vals[ERASED, x] = p
    law = ConditionalPmf((Alphabet("y", 3),), (Alphabet("x", 2),), vals, tolerance)
    return Channel("dmc", law)


def binary_symmetric_channel(p: float, tolerance: float = DEFAULT_TOLERANCE) -> Channel:
    """BSC with crossover probability p."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"crossover probability {p} outside [0, 1]")
    vals = np.array([[1.0 - p, p], [p, 1.0 - p]])
    law = ConditionalPmf((Alphabet("y", 2),), (Alphabet("x", 2),), vals, tolerance)
    return Channel("dmc", law)


def identity_dmc(size: int = 2, tolerance: float = DEFAULT_TOLERANCE) -> Channel:
    """Noiseless channel y = x on a ``size``-symbol alphabet."""
    law = ConditionalPmf(
        (Alphabet("y", size),), (Alphabet("x", size),), np.eye(size), tolerance
    )
    return Channel("dmc", law)


def product_bc(c1: Channel, c2: Channel, tolerance: float = DEFAULT_TOLERANCE) -> Channel:
    """Broadcast channel sending x independently through two DMCs."""
    if c1.kind != "dmc" or c2.kind != "dmc":
        raise StructureError("product_bc components must be DMCs")
    x1, x2 = c1.law.input_axes[0], c2.law.input_axes[0]
    if x1.size != x2.size:
        raise StructureError(
            f"component input alphabets differ: {x1.size} vs {x2.size}"
        )
    # vals[y1, y2, x] = P1(y1|x) * P2(y2|x)
    vals = np.einsum("ax,bx->abx", c1.law.values, c2.law.values)
    law = ConditionalPmf(
        (
            Alphabet("y1", c1.law.output_axes[0].size),
            Alphabet("y2", c2.law.output_axes[0].size),
        ),
        (Alphabet("x", x1.size),),
        vals,
        tolerance,
    )
    return Channel("bc", law)


def bsc_pair_mac(p: float, tolerance: float = DEFAULT_TOLERANCE) -> Channel:
    """MAC passing each sender bit through an independent BSC(p).

    The output is the pair (noisy x1, noisy x2), flattened to one 4-symbol
    axis as y = 2 * y1 + y2.
    """
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"crossover probability {p} outside [0, 1]")
    bsc = np.array([[1.0 - p, p], [p, 1.0 - p]])
    vals = np.zeros((4, 2, 2))
    for x1 in (0, 1):
        for x2 in (0, 1):
            for y1 in (0, 1):
                for y2 in (0, 1):
                    vals[2 * y1 + y2, x1, x2] = bsc[y1, x1] * bsc[y2, x2]
    law = ConditionalPmf(
        (Alphabet("y", 4),), (Alphabet("x1", 2), Alphabet("x2", 2)), vals, tolerance
    )
    return Channel("mac", law)


def identity_pair_mac(size: int = 4, tolerance: float = DEFAULT_TOLERANCE) -> Channel:
    """Noiseless MAC revealing both inputs: y = size * x1 + x2."""
    vals = np.zeros((size * size, size, size))
    for x1 in range(size):
        for x2 in range(size):
            vals[size * x1 + x2, x1, x2] = 1.0
    law = ConditionalPmf(
        (Alphabet("y", size * size),),
        (Alphabet("x1", size), Alphabet("x2", size)),
        vals,
        tolerance,
    )
    return Channel("mac", law)
