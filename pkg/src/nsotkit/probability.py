"""Exact finite-probability primitives.

Dense probability tensors over small named alphabets, with the
marginalization, conditioning, distance, and information measures the
rest of the toolkit is built on.  Conventions:

* probabilities are float64; equality checks use a per-object tolerance
  (default ``1e-9``),
* logarithms are base 2 and entropies are in bits, with 0*log0 = 0,
* tensors are dense; axis order is canonical (outputs before inputs,
  parties in declaration order),
* every value is immutable after construction and every operation is a
  pure function, so independent analyses can run concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._kernels import entropy_bits as _entropy_flat
from ._kernels import tv_distance_flat as _tv_flat
from .errors import DomainError, StructureError

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Alphabet:
    """A named finite alphabet; symbols are the indices ``0 .. size-1``."""

    name: str
    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 1:
            raise StructureError(f"alphabet {self.name!r} must have size >= 1, got {self.size}")


def _freeze(values: np.ndarray) -> np.ndarray:
    out = np.array(values, dtype=np.float64)
    out.flags.writeable = False
    return out


def _axis_names(axes: Sequence[Alphabet]) -> tuple[str, ...]:
    names = tuple(a.name for a in axes)
    if len(set(names)) != len(names):
        raise StructureError(f"axis names must be unique, got {names}")
    return names


@dataclass(frozen=True)
class JointPmf:
    """A joint PMF over an ordered tuple of named axes.

    ``values[s1, ..., sk]`` is the probability of the symbol tuple; the
    tensor must be entrywise nonnegative and sum to 1 within tolerance.
    """

    axes: tuple[Alphabet, ...]
    values: np.ndarray
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        axes = tuple(self.axes)
        object.__setattr__(self, "axes", axes)
        names = _axis_names(axes)
        vals = _freeze(self.values)
        expected = tuple(a.size for a in axes)
        if vals.shape != expected:
            raise StructureError(f"values shape {vals.shape} != axis sizes {expected}")
        if vals.size and vals.min() < -self.tolerance:
            raise StructureError(f"negative probability {vals.min()}")
        mass = float(vals.sum())
        if abs(mass - 1.0) > self.tolerance * max(1, vals.size):
            raise StructureError(f"total mass {mass} not 1 within tolerance")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "_names", names)

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def axis_index(self, name: str) -> int:
        try:
            return self._names.index(name)
        except ValueError:
            raise StructureError(f"unknown axis {name!r}; have {self._names}") from None

    def axis(self, name: str) -> Alphabet:
        return self.axes[self.axis_index(name)]

    # ------------------------------------------------------------------
    # core operations
    # ------------------------------------------------------------------

    def marginalize(self, keep: Iterable[str]) -> "JointPmf":
        """Sum out every axis not listed in ``keep``; order is preserved."""
        keep = tuple(keep)
        keep_idx = {self.axis_index(n) for n in keep}
        drop = tuple(i for i in range(len(self.axes)) if i not in keep_idx)
        new_axes = tuple(a for i, a in enumerate(self.axes) if i in keep_idx)
        vals = self.values.sum(axis=drop) if drop else self.values
        return JointPmf(new_axes, vals, self.tolerance)

    def condition(self, on: dict[str, int]) -> "JointPmf":
        """Restrict to the event ``{axis: symbol, ...}`` and renormalize.

        The conditioned axes are removed from the result.  Raises
        :class:`DomainError` if the event has probability <= tolerance.
        """
        idx: list[object] = [slice(None)] * len(self.axes)
        for name, symbol in on.items():
            ax = self.axis_index(name)
            if not 0 <= symbol < self.axes[ax].size:
                raise StructureError(f"symbol {symbol} outside axis {name!r}")
            idx[ax] = symbol
        sub = self.values[tuple(idx)]
        mass = float(sub.sum())
        if mass <= self.tolerance:
            raise DomainError(f"conditioning event {on} has probability {mass}")
        new_axes = tuple(a for a in self.axes if a.name not in on)
        return JointPmf(new_axes, sub / mass, self.tolerance)

    def entropy(self) -> float:
        """Shannon entropy H(all axes) in bits."""
        return float(_entropy_flat(np.ascontiguousarray(self.values.ravel())))

    def mutual_information(
        self,
        group_a: Iterable[str],
        group_b: Iterable[str],
        given: Iterable[str] = (),
    ) -> float:
        """Conditional mutual information I(A;B|C) in bits, clamped at 0.

        Computed exactly as H(A,C) + H(B,C) - H(A,B,C) - H(C); groups must
        be disjoint.
        """
        a, b, c = tuple(group_a), tuple(group_b), tuple(given)
        seen: set[str] = set()
        for name in a + b + c:
            self.axis_index(name)
            if name in seen:
                raise StructureError(f"axis {name!r} appears in more than one group")
            seen.add(name)
        h_ac = self.marginalize(a + c).entropy()
        h_bc = self.marginalize(b + c).entropy()
        h_abc = self.marginalize(a + b + c).entropy()
        h_c = self.marginalize(c).entropy() if c else 0.0
        return max(0.0, h_ac + h_bc - h_abc - h_c)

    def transpose(self, order: Iterable[str]) -> "JointPmf":
        """Reorder axes by name; must name every axis exactly once."""
        order = tuple(order)
        if sorted(order) != sorted(self._names):
            raise StructureError(f"transpose order {order} != axes {self._names}")
        perm = tuple(self.axis_index(n) for n in order)
        return JointPmf(
            tuple(self.axes[i] for i in perm),
            self.values.transpose(perm),
            self.tolerance,
        )

    def outcomes(self):
        """Iterate (symbol_tuple, probability) over nonzero entries."""
        for idx in np.argwhere(self.values > 0):
            t = tuple(int(v) for v in idx)
            yield t, float(self.values[t])


@dataclass(frozen=True)
class ConditionalPmf:
    """A conditional PMF P(outputs | inputs) as a dense tensor.

    ``values`` is indexed ``(out_1, ..., out_r, in_1, ..., in_s)``.  For
    every fixed input tuple the entries over outputs must sum to 1 within
    tolerance.  ``input_axes`` may be empty (an unconditional PMF).
    """

    output_axes: tuple[Alphabet, ...]
    input_axes: tuple[Alphabet, ...]
    values: np.ndarray
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        out_axes = tuple(self.output_axes)
        in_axes = tuple(self.input_axes)
        object.__setattr__(self, "output_axes", out_axes)
        object.__setattr__(self, "input_axes", in_axes)
        _axis_names(out_axes + in_axes)
        vals = _freeze(self.values)
        expected = tuple(a.size for a in out_axes + in_axes)
        if vals.shape != expected:
            raise StructureError(f"values shape {vals.shape} != axis sizes {expected}")
        if vals.size and vals.min() < -self.tolerance:
            raise StructureError(f"negative probability {vals.min()}")
        out_dims = tuple(range(len(out_axes)))
        mass = vals.sum(axis=out_dims) if out_dims else vals
        if not np.allclose(mass, 1.0, rtol=0.0, atol=self.tolerance * max(1, vals.size)):
            worst = float(np.abs(np.asarray(mass) - 1.0).max())
            raise StructureError(f"per-input output mass deviates from 1 by {worst}")
        object.__setattr__(self, "values", vals)

    @property
    def axes(self) -> tuple[Alphabet, ...]:
        return self.output_axes + self.input_axes

    @property
    def output_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.output_axes)

    @property
    def input_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.input_axes)

    def given(self, *inputs: int) -> JointPmf:
        """Output distribution at a fixed input tuple."""
        if len(inputs) != len(self.input_axes):
            raise StructureError(
                f"expected {len(self.input_axes)} input symbols, got {len(inputs)}"
            )
        for sym, ax in zip(inputs, self.input_axes):
            if not 0 <= sym < ax.size:
                raise StructureError(f"symbol {sym} outside axis {ax.name!r}")
        idx = (slice(None),) * len(self.output_axes) + tuple(inputs)
        return JointPmf(self.output_axes, self.values[idx], self.tolerance)

    def to_joint(self, input_dist: JointPmf) -> JointPmf:
        """Joint over (outputs, inputs) induced by an input distribution.

        ``input_dist`` must carry exactly this kernel's input axes, in
        order.
        """
        if tuple(input_dist.names) != self.input_names:
            raise StructureError(
                f"input distribution axes {input_dist.names} != kernel inputs {self.input_names}"
            )
        joint = self.values * input_dist.values  # broadcast over output dims
        return JointPmf(self.output_axes + self.input_axes, joint, self.tolerance)


def uniform_dist(axes: Sequence[Alphabet], tolerance: float = DEFAULT_TOLERANCE) -> JointPmf:
    """Uniform joint distribution over the given axes."""
    axes = tuple(axes)
    shape = tuple(a.size for a in axes)
    n = int(np.prod(shape)) if shape else 1
    return JointPmf(axes, np.full(shape, 1.0 / n), tolerance)


def point_mass(axes: Sequence[Alphabet], at: Sequence[int],
               tolerance: float = DEFAULT_TOLERANCE) -> JointPmf:
    """Deterministic joint distribution concentrated at one symbol tuple."""
    axes = tuple(axes)
    vals = np.zeros(tuple(a.size for a in axes))
    vals[tuple(at)] = 1.0
    return JointPmf(axes, vals, tolerance)


def tv_distance(p: JointPmf, q: JointPmf) -> float:
    """Total variation distance, half the L1 distance between the tensors."""
    if p.names != q.names or p.values.shape != q.values.shape:
        raise StructureError(f"axis mismatch: {p.names} vs {q.names}")
    return float(
        _tv_flat(
            np.ascontiguousarray(p.values.ravel()),
            np.ascontiguousarray(q.values.ravel()),
        )
    )


def entropy(p: JointPmf) -> float:
    """Shannon entropy of a joint PMF in bits."""
    return p.entropy()


def mutual_information(
    p: JointPmf,
    group_a: Iterable[str],
    group_b: Iterable[str],
    given: Iterable[str] = (),
) -> float:
    """Conditional mutual information I(A;B|C) of a joint PMF in bits."""
    return p.mutual_information(group_a, group_b, given)


def binary_entropy(e: float) -> float:
    """H2(e) in bits with the endpoint convention H2(0) = H2(1) = 0."""
    if not 0.0 <= e <= 1.0:
        raise DomainError(f"binary_entropy argument {e} outside [0, 1]")
    if e in (0.0, 1.0):
        return 0.0
    return -e * math.log2(e) - (1.0 - e) * math.log2(1.0 - e)


def tv_tensorized(eps: float, n: int) -> float:
    """Closed-form n-fold product total variation, ``1 - (1 - eps)**n``.

    Exact for distribution pairs of the common-part-plus-disjoint-part
    form; an upper bound on the product TV in general (see
    tests/test_probability.py for both facts).
    """
    if not 0.0 <= eps <= 1.0:
        raise DomainError(f"tv_tensorized epsilon {eps} outside [0, 1]")
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"tv_tensorized n must be a positive integer, got {n}")
    return 1.0 - (1.0 - eps) ** n


def fano_bound(eps_n: float, k: int) -> float:
    """Fano residual-uncertainty bound ``H2(err) + err * k`` in bits."""
    if not 0.0 <= eps_n <= 1.0:
        raise DomainError(f"fano_bound error {eps_n} outside [0, 1]")
    if not isinstance(k, int) or k < 0:
        raise DomainError(f"fano_bound message length must be a nonnegative integer, got {k}")
    return binary_entropy(eps_n) + eps_n * k
