"""Non-signaling boxes: types, constraint checks, and triviality.

A box is a conditional PMF with a declared party structure.  Validity
(non-signaling) is always a computed property, never assumed:

* bipartite boxes carry outputs (x1, x2) and inputs (i1, i2),
* tripartite MAC boxes carry outputs (x1, x2, j) and inputs (i1, i2, y),
  where j may be a flattened product of several receiver outputs,
* tripartite BC boxes carry outputs (x, j1, j2) and inputs (i, y1, y2).

Each non-signaling family is checkable two ways: directly on the
marginals of the kernel, or as a vanishing conditional mutual
information under a full-support input distribution.  Both routes are
implemented and must agree; tests and the acceptance suite pin this.

Triviality classifies whether the kernel depends on the sender-side
inputs at all: a trivial box provides no correlation beyond local
randomness, so no channel composition can leak the senders' inputs
through it.  The classifying quantity is the conditional mutual
information between the sender inputs and the full output tuple given
the receiver-side inputs, which is zero exactly when the kernel is
sender-input independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, StructureError
from .probability import (
    Alphabet,
    ConditionalPmf,
    DEFAULT_TOLERANCE,
    JointPmf,
    uniform_dist,
)


@dataclass(frozen=True)
class BipartiteBox:
    box: ConditionalPmf

    def __post_init__(self):
        if len(self.box.output_axes) != 2 or len(self.box.input_axes) != 2:
            raise StructureError("bipartite box needs output axes (x1, x2) and input axes (i1, i2)")

    @property
    def sender_outputs(self) -> tuple[str, str]:
        return self.box.output_names  # type: ignore[return-value]

    @property
    def sender_inputs(self) -> tuple[str, str]:
        return self.box.input_names  # type: ignore[return-value]


@dataclass(frozen=True)
class TripartiteMacBox:
    box: ConditionalPmf

    def __post_init__(self):
        if len(self.box.output_axes) != 3 or len(self.box.input_axes) != 3:
            raise StructureError(
                "tripartite MAC box needs output axes (x1, x2, j) and input axes (i1, i2, y)"
            )

    @property
    def sender_outputs(self) -> tuple[str, str]:
        return self.box.output_names[:2]  # type: ignore[return-value]

    @property
    def receiver_output(self) -> str:
        return self.box.output_names[2]

    @property
    def sender_inputs(self) -> tuple[str, str]:
        return self.box.input_names[:2]  # type: ignore[return-value]

    @property
    def receiver_input(self) -> str:
        return self.box.input_names[2]


@dataclass(frozen=True)
class TripartiteBcBox:
    box: ConditionalPmf

    def __post_init__(self):
        if len(self.box.output_axes) != 3 or len(self.box.input_axes) != 3:
            raise StructureError(
                "tripartite BC box needs output axes (x, j1, j2) and input axes (i, y1, y2)"
            )

    @property
    def sender_output(self) -> str:
        return self.box.output_names[0]

    @property
    def receiver_outputs(self) -> tuple[str, str]:
        return self.box.output_names[1:]  # type: ignore[return-value]

    @property
    def sender_input(self) -> str:
        return self.box.input_names[0]

    @property
    def receiver_inputs(self) -> tuple[str, str]:
        return self.box.input_names[1:]  # type: ignore[return-value]


AnyBox = Union[BipartiteBox, TripartiteMacBox, TripartiteBcBox]


@dataclass(frozen=True)
class Violation:
    constraint: str
    at: dict
    gap: float


@dataclass(frozen=True)
class NsCheckReport:
    passed: bool
    violations: tuple[Violation, ...]
    family_gaps: dict

    def __post_init__(self):
        if self.passed != (len(self.violations) == 0):
            raise StructureError("passed flag inconsistent with violation list")


@dataclass(frozen=True)
class TrivialityWitness:
    sender_inputs: tuple[int, ...]
    sender_inputs_alt: tuple[int, ...]
    receiver_inputs: tuple[int, ...]
    output: tuple[int, ...]
    gap: float


@dataclass(frozen=True)
class TrivialityVerdict:
    trivial: bool
    mi_value: float
    witness: TrivialityWitness | None

    def __post_init__(self):
        if not self.trivial and self.witness is None:
            raise StructureError("nontrivial verdict requires a witness")


# ----------------------------------------------------------------------
# marginal-constraint checks
# ----------------------------------------------------------------------

def _marginal_gap(kernel: ConditionalPmf, sum_outputs: Sequence[str], vary_input: str):
    """Worst-case dependence of a marginal on one input axis.

    Sums the kernel over ``sum_outputs``, then reports the largest spread
    (max minus min) of the marginal along ``vary_input``, together with
    the cell where it is attained.
    """
    names = kernel.output_names + kernel.input_names
    sum_idx = tuple(names.index(n) for n in sum_outputs)
    marg = kernel.values.sum(axis=sum_idx)
    kept = [n for n in names if n not in sum_outputs]
    vary_pos = kept.index(vary_input)
    moved = np.moveaxis(marg, vary_pos, -1)
    spread = moved.max(axis=-1) - moved.min(axis=-1)
    gap = float(spread.max()) if spread.size else 0.0
    cell = np.unravel_index(int(spread.argmax()), spread.shape) if spread.size else ()
    kept_wo_vary = [n for n in kept if n != vary_input]
    at = {name: int(sym) for name, sym in zip(kept_wo_vary, cell)}
    return gap, at


def _run_families(kernel: ConditionalPmf, families, tolerance: float) -> NsCheckReport:
    gaps = {}
    violations = []
    for constraint_id, sum_outputs, vary_input in families:
        gap, at = _marginal_gap(kernel, sum_outputs, vary_input)
        gaps[constraint_id] = gap
        if gap > tolerance:
            violations.append(Violation(constraint_id, at, gap))
    return NsCheckReport(not violations, tuple(violations), gaps)


def check_bipartite_ns(b: BipartiteBox, tolerance: float | None = None) -> NsCheckReport:
    """Marginal constraints of a bipartite box: each party's output
    marginal must be independent of the other party's input."""
    tol = b.box.tolerance if tolerance is None else tolerance
    x1, x2 = b.sender_outputs
    i1, i2 = b.sender_inputs
    families = [
        ("NS-prob1", (x1,), i1),  # sum over x1: (x2)-marginal free of i1
        ("NS-prob2", (x2,), i2),  # sum over x2: (x1)-marginal free of i2
    ]
    return _run_families(b.box, families, tol)


def check_tripartite_mac_ns(b: TripartiteMacBox, tolerance: float | None = None) -> NsCheckReport:
    """The three MAC marginal families: no subset of parties learns the
    remaining party's input from the box alone."""
    tol = b.box.tolerance if tolerance is None else tolerance
    x1, x2 = b.sender_outputs
    j = b.receiver_output
    i1, i2 = b.sender_inputs
    y = b.receiver_input
    families = [
        ("NS1", (x1,), i1),
        ("NS2", (x2,), i2),
        ("NS3", (j,), y),
    ]
    return _run_families(b.box, families, tol)


def check_tripartite_bc_ns(b: TripartiteBcBox, tolerance: float | None = None) -> NsCheckReport:
    """The three BC marginal families."""
    tol = b.box.tolerance if tolerance is None else tolerance
    x = b.sender_output
    j1, j2 = b.receiver_outputs
    i = b.sender_input
    y1, y2 = b.receiver_inputs
    families = [
        ("NS1-BC", (x,), i),
        ("NS2-BC", (j1,), y1),
        ("NS3-BC", (j2,), y2),
    ]
    return _run_families(b.box, families, tol)


def check_ns(b: AnyBox, tolerance: float | None = None) -> NsCheckReport:
    """Dispatch to the structure-appropriate marginal check."""
    if isinstance(b, BipartiteBox):
        return check_bipartite_ns(b, tolerance)
    if isinstance(b, TripartiteMacBox):
        return check_tripartite_mac_ns(b, tolerance)
    if isinstance(b, TripartiteBcBox):
        return check_tripartite_bc_ns(b, tolerance)
    raise StructureError(f"not a box: {type(b).__name__}")


def _mi_families(b: AnyBox):
    if isinstance(b, BipartiteBox):
        (x1, x2), (i1, i2) = b.sender_outputs, b.sender_inputs
        return [
            ("NSM1", (i1,), (x2,), (i2,)),
            ("NSM2", (i2,), (x1,), (i1,)),
        ]
    if isinstance(b, TripartiteMacBox):
        x1, x2 = b.sender_outputs
        j = b.receiver_output
        i1, i2 = b.sender_inputs
        y = b.receiver_input
        return [
            ("NSM1", (i1,), (x2, j), (i2, y)),
            ("NSM2", (i2,), (x1, j), (i1, y)),
            ("NSM3", (y,), (x1, x2), (i1, i2)),
        ]
    if isinstance(b, TripartiteBcBox):
        x = b.sender_output
        j1, j2 = b.receiver_outputs
        i = b.sender_input
        y1, y2 = b.receiver_inputs
        return [
            ("NSM1-BC", (i,), (j1, j2), (y1, y2)),
            ("NSM2-BC", (y1,), (x, j2), (i, y2)),
            ("NSM3-BC", (y2,), (x, j1), (i, y1)),
        ]
    raise StructureError(f"not a box: {type(b).__name__}")


def _require_full_support(input_dist: JointPmf):
    # support is a property of the data, judged at the distribution's own
    # tolerance; loosening a comparison threshold must not unsupport it
    if float(input_dist.values.min()) <= input_dist.tolerance:
        raise DomainError(
            "mutual-information formulation needs a full-support input distribution"
        )


def check_ns_via_mi(
    b: AnyBox,
    input_dist: JointPmf | None = None,
    tolerance: float | None = None,
) -> NsCheckReport:
    """Non-signaling check in the mutual-information formulation.

    Under a full-support input distribution each marginal family is
    equivalent to one vanishing conditional mutual information; the
    report carries the MI values (in bits) as the family gaps.
    """
    tol = b.box.tolerance if tolerance is None else tolerance
    if input_dist is None:
        input_dist = uniform_dist(b.box.input_axes)
    _require_full_support(input_dist)
    joint = b.box.to_joint(input_dist)
    gaps = {}
    violations = []
    for constraint_id, grp_a, grp_b, given in _mi_families(b):
        mi = joint.mutual_information(grp_a, grp_b, given)
        gaps[constraint_id] = mi
        if mi > tol:
            violations.append(Violation(constraint_id, {}, mi))
    return NsCheckReport(not violations, tuple(violations), gaps)


# ----------------------------------------------------------------------
# triviality classification
# ----------------------------------------------------------------------

def _kernel_witness(
    kernel: ConditionalPmf, n_sender_inputs: int
) -> TrivialityWitness | None:
    """Largest pointwise kernel gap between two sender-input tuples.

    Scans all pairs of sender-input tuples at every receiver-side input
    and output tuple; ties break lexicographically so reports are
    deterministic.
    """
    vals = kernel.values
    n_out = len(kernel.output_axes)
    out_shape = vals.shape[:n_out]
    s_shape = vals.shape[n_out : n_out + n_sender_inputs]
    r_shape = vals.shape[n_out + n_sender_inputs :]
    best = None
    for s in np.ndindex(*s_shape):
        for s_alt in np.ndindex(*s_shape):
            if s_alt <= s:
                continue
            for r in np.ndindex(*r_shape):
                block = vals[(slice(None),) * n_out + s + r]
                block_alt = vals[(slice(None),) * n_out + s_alt + r]
                diff = np.abs(block - block_alt)
                gap = float(diff.max())
                if best is None or gap > best.gap:
                    out = np.unravel_index(int(diff.argmax()), out_shape)
                    best = TrivialityWitness(
                        sender_inputs=tuple(int(v) for v in s),
                        sender_inputs_alt=tuple(int(v) for v in s_alt),
                        receiver_inputs=tuple(int(v) for v in r),
                        output=tuple(int(v) for v in out),
                        gap=gap,
                    )
    return best


def _classify(
    b: AnyBox,
    sender_input_names: tuple[str, ...],
    receiver_input_names: tuple[str, ...],
    input_dist: JointPmf | None,
    tolerance: float | None,
) -> TrivialityVerdict:
    tol = b.box.tolerance if tolerance is None else tolerance
    report = check_ns(b, tol)
    if not report.passed:
        raise DomainError(
            f"triviality is undefined for signaling boxes (violations: "
            f"{[v.constraint for v in report.violations]})"
        )
    if input_dist is None:
        input_dist = uniform_dist(b.box.input_axes)
    _require_full_support(input_dist)
    joint = b.box.to_joint(input_dist)
    mi = joint.mutual_information(
        sender_input_names, b.box.output_names, receiver_input_names
    )
    if mi <= tol:
        return TrivialityVerdict(True, mi, None)
    witness = _kernel_witness(b.box, len(sender_input_names))
    return TrivialityVerdict(False, mi, witness)


def classify_triviality_mac(
    b: TripartiteMacBox,
    input_dist: JointPmf | None = None,
    tolerance: float | None = None,
) -> TrivialityVerdict:
    """Trivial iff the kernel carries no dependence on the sender inputs.

    ``mi_value`` is I(I1,I2 ; X1,X2,J | Y) in bits under the supplied
    full-support input distribution (uniform by default); the verdict is
    distribution independent.  A trivial box composed with any MAC leaves
    the receiver's view independent of the sender inputs.
    """
    return _classify(b, b.sender_inputs, (b.receiver_input,), input_dist, tolerance)


def classify_triviality_bc(
    b: TripartiteBcBox,
    input_dist: JointPmf | None = None,
    tolerance: float | None = None,
) -> TrivialityVerdict:
    """BC counterpart; ``mi_value`` is I(I ; X,J1,J2 | Y1,Y2) in bits."""
    return _classify(b, (b.sender_input,), b.receiver_inputs, input_dist, tolerance)


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def pr_family_box(
    a: int = 0, bflag: int = 0, g: int = 0, tolerance: float = DEFAULT_TOLERANCE
) -> BipartiteBox:
    """Extremal nonlocal bipartite box with correlation
    ``x1 XOR x2 = (i1 AND i2) XOR a*i1 XOR bflag*i2 XOR g`` and uniform
    marginals."""
    vals = np.zeros((2, 2, 2, 2))
    for i1 in (0, 1):
        for i2 in (0, 1):
            target = (i1 & i2) ^ (a * i1) ^ (bflag * i2) ^ g
            for x1 in (0, 1):
                vals[x1, x1 ^ target, i1, i2] = 0.5
    kernel = ConditionalPmf(
        (Alphabet("x1", 2), Alphabet("x2", 2)),
        (Alphabet("i1", 2), Alphabet("i2", 2)),
        vals,
        tolerance,
    )
    return BipartiteBox(kernel)


def make_pr_box(tolerance: float = DEFAULT_TOLERANCE) -> BipartiteBox:
    """The PR box: uniform outputs with x1 XOR x2 = i1 AND i2."""
    return pr_family_box(0, 0, 0, tolerance)


_MAC_NAMES = (("x1", "x2", "j"), ("i1", "i2", "y"))
_BC_NAMES = (("x", "j1", "j2"), ("i", "y1", "y2"))


def make_product_box(
    parts: Sequence[ConditionalPmf],
    structure: str,
    tolerance: float = DEFAULT_TOLERANCE,
) -> TripartiteMacBox | TripartiteBcBox:
    """Tensor product of three single-output local parts.

    ``structure`` is ``"mac"`` (parts P(x1|i1), P(x2|i2), P(j|y)) or
    ``"bc"`` (parts P(x|i), P(j1|y1), P(j2|y2)).  The result is always
    non-signaling and always trivial.
    """
    if structure not in ("mac", "bc"):
        raise StructureError(f"structure must be 'mac' or 'bc', got {structure!r}")
    if len(parts) != 3:
        raise StructureError(f"need exactly 3 parts, got {len(parts)}")
    for p in parts:
        if len(p.output_axes) != 1 or len(p.input_axes) != 1:
            raise StructureError("each part must have one output and one input axis")
    out_names, in_names = _MAC_NAMES if structure == "mac" else _BC_NAMES
    vals = np.einsum("au,bv,cw->abcuvw", *(p.values for p in parts))
    out_axes = tuple(
        Alphabet(n, p.output_axes[0].size) for n, p in zip(out_names, parts)
    )
    in_axes = tuple(Alphabet(n, p.input_axes[0].size) for n, p in zip(in_names, parts))
    kernel = ConditionalPmf(out_axes, in_axes, vals, tolerance)
    return TripartiteMacBox(kernel) if structure == "mac" else TripartiteBcBox(kernel)


def lift_sender_box_mac(
    senders: BipartiteBox,
    bob_decoder: ConditionalPmf,
    tolerance: float = DEFAULT_TOLERANCE,
) -> TripartiteMacBox:
    """Tripartite MAC box from a bipartite sender box and a local decoder.

    ``P(x1,x2,j | i1,i2,y) = P_senders(x1,x2|i1,i2) * P_dec(j|y)``; the
    result inherits the senders' non-signaling and is itself NS.
    """
    if not check_bipartite_ns(senders).passed:
        raise DomainError("sender box is signaling; lift is undefined")
    if len(bob_decoder.output_axes) != 1 or len(bob_decoder.input_axes) != 1:
        raise StructureError("decoder must map one input axis to one output axis")
    vals = np.einsum("abuv,cw->abcuvw", senders.box.values, bob_decoder.values)
    out_axes = (
        Alphabet("x1", senders.box.output_axes[0].size),
        Alphabet("x2", senders.box.output_axes[1].size),
        Alphabet("j", bob_decoder.output_axes[0].size),
    )
    in_axes = (
        Alphabet("i1", senders.box.input_axes[0].size),
        Alphabet("i2", senders.box.input_axes[1].size),
        Alphabet("y", bob_decoder.input_axes[0].size),
    )
    return TripartiteMacBox(ConditionalPmf(out_axes, in_axes, vals, tolerance))


def mix(boxes: Sequence[AnyBox], weights: Sequence[float]) -> AnyBox:
    """Entrywise convex combination of same-shape boxes.

    Non-signaling is preserved because the marginal constraints are
    linear.
    """
    if len(boxes) != len(weights) or not boxes:
        raise StructureError("need matching, nonempty boxes and weights")
    first = boxes[0]
    tol = first.box.tolerance
    if abs(sum(weights) - 1.0) > tol:
        raise StructureError(f"weights sum to {sum(weights)}, expected 1")
    for b in boxes[1:]:
        if type(b) is not type(first) or b.box.values.shape != first.box.values.shape:
            raise StructureError("boxes must share structure and shape")
    vals = sum(w * b.box.values for w, b in zip(weights, boxes))
    kernel = ConditionalPmf(first.box.output_axes, first.box.input_axes, vals, tol)
    return type(first)(kernel)
