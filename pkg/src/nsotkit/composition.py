"""Box-channel composition and leakage analysis.

A tripartite box composed with a matching channel induces, for every
sender-side input tuple, an exact joint over the box outputs and the
channel output.  The one-way causal chain (sender outputs are generated
without the channel output, which is then fed back for decoding) is what
makes the composition well defined; it is validated at construction by
requiring unit mass per input tuple.

From the composed system we derive the receiver's observable view per
input tuple, the worst-case view distinguishability across input pairs
(the single-round leakage certificate), and the closed-form repetition
curve that turns any positive distinguishability into near-certain
identification of the inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boxes import (
    TripartiteBcBox,
    TripartiteMacBox,
    check_tripartite_bc_ns,
    check_tripartite_mac_ns,
)
from .channels import Channel
from .errors import DomainError, ResourceLimitError, StructureError
from .probability import (
    Alphabet,
    JointPmf,
    binary_entropy,
    mutual_information,
    tv_distance,
    tv_tensorized,
    uniform_dist,
)


@dataclass(frozen=True)
class ComposedSystem:
    """Per-input joints of a box-channel composition.

    ``joints[(sender inputs...)]`` is the joint PMF over the box output
    axes followed by the channel output axes.
    """

    box: TripartiteMacBox | TripartiteBcBox
    channel: Channel
    joints: dict
    structure: str  # "mac" | "bc"

    def sender_input_tuples(self):
        return sorted(self.joints.keys())


def compose_mac(b: TripartiteMacBox, w: Channel) -> ComposedSystem:
    """Compose a MAC box with a MAC channel.

    Requires matching alphabets (box sender outputs feed the channel,
    channel output feeds the box receiver input) and a non-signaling box;
    per-input mass different from 1 would mean the box violates the
    one-way causal chain.
    """
    if w.kind != "mac":
        raise StructureError(f"expected a MAC channel, got {w.kind!r}")
    bx = b.box
    x1, x2, j = bx.output_axes
    i1, i2, y_in = bx.input_axes
    wy = w.law.output_axes[0]
    wx1, wx2 = w.law.input_axes
    if (x1.size, x2.size) != (wx1.size, wx2.size):
        raise StructureError("box sender outputs do not match channel inputs")
    if y_in.size != wy.size:
        raise StructureError("box receiver input does not match channel output")
    report = check_tripartite_mac_ns(b)
    if not report.passed:
        raise DomainError(
            f"box is signaling ({[v.constraint for v in report.violations]}); "
            "composition is undefined"
        )
    # joint[x1, x2, j, y] at fixed (i1, i2): box kernel at y times W(y|x1,x2)
    joints = {}
    y_axis = Alphabet(wy.name if wy.name not in bx.output_names else "y_out", wy.size)
    for s1 in range(i1.size):
        for s2 in range(i2.size):
            block = bx.values[:, :, :, s1, s2, :]  # (x1, x2, j, y)
            vals = block * np.moveaxis(w.law.values, 0, -1)[:, :, None, :]
            mass = float(vals.sum())
            if abs(mass - 1.0) > bx.tolerance * max(1, vals.size):
                raise DomainError(
                    f"composed mass {mass} at inputs {(s1, s2)}: box violates "
                    "the one-way causal chain"
                )
            joints[(s1, s2)] = JointPmf((x1, x2, j, y_axis), vals, bx.tolerance)
    return ComposedSystem(b, w, joints, "mac")


def compose_bc(b: TripartiteBcBox, w: Channel) -> ComposedSystem:
    """Compose a BC box with a broadcast channel (mirror of compose_mac)."""
    if w.kind != "bc":
        raise StructureError(f"expected a BC channel, got {w.kind!r}")
    bx = b.box
    x, j1, j2 = bx.output_axes
    i, y1_in, y2_in = bx.input_axes
    wy1, wy2 = w.law.output_axes
    wx = w.law.input_axes[0]
    if x.size != wx.size:
        raise StructureError("box sender output does not match channel input")
    if (y1_in.size, y2_in.size) != (wy1.size, wy2.size):
        raise StructureError("box receiver inputs do not match channel outputs")
    report = check_tripartite_bc_ns(b)
    if not report.passed:
        raise DomainError(
            f"box is signaling ({[v.constraint for v in report.violations]}); "
            "composition is undefined"
        )
    joints = {}
    out_names = set(bx.output_names)
    y1_axis = Alphabet(wy1.name if wy1.name not in out_names else "y1_out", wy1.size)
    y2_axis = Alphabet(wy2.name if wy2.name not in out_names else "y2_out", wy2.size)
    for s in range(i.size):
        block = bx.values[:, :, :, s, :, :]  # (x, j1, j2, y1, y2)
        # W(y1,y2|x) contributes along (x, y1, y2)
        vals = block * np.moveaxis(w.law.values, 2, 0)[:, None, None, :, :]
        mass = float(vals.sum())
        if abs(mass - 1.0) > bx.tolerance * max(1, vals.size):
            raise DomainError(
                f"composed mass {mass} at input {s}: box violates the one-way "
                "causal chain"
            )
        joints[(s,)] = JointPmf((x, j1, j2, y1_axis, y2_axis), vals, bx.tolerance)
    return ComposedSystem(b, w, joints, "bc")


def bob_view_mac(sys: ComposedSystem) -> dict:
    """Receiver's observable (Y, J) distribution per sender input pair."""
    if sys.structure != "mac":
        raise StructureError("bob_view_mac needs a MAC composition")
    j_name = sys.box.box.output_names[2]
    views = {}
    for inputs, joint in sys.joints.items():
        y_name = joint.names[3]
        views[inputs] = joint.marginalize((j_name, y_name)).transpose((y_name, j_name))
    return views


def receiver_views_bc(sys: ComposedSystem, receiver: int) -> dict:
    """Receiver-``receiver`` observable (Y_r, J_r) distribution per input."""
    if sys.structure != "bc":
        raise StructureError("receiver_views_bc needs a BC composition")
    if receiver not in (1, 2):
        raise StructureError("receiver must be 1 or 2")
    j_name = sys.box.box.output_names[receiver]
    views = {}
    for inputs, joint in sys.joints.items():
        y_name = joint.names[2 + receiver]
        views[inputs] = joint.marginalize((j_name, y_name)).transpose((y_name, j_name))
    return views


def decoding_law(sys: ComposedSystem, at: tuple) -> JointPmf:
    """Receiver-output law P(j | i1, i2, y, x1, x2) at a single point.

    ``at`` is (i1, i2, y, x1, x2).  Defined whenever the sender marginal
    at that point exceeds tolerance; recomposing with the sender marginal
    reproduces the box entry.
    """
    if sys.structure != "mac":
        raise StructureError("decoding_law needs a MAC composition")
    i1, i2, y, x1, x2 = at
    bx = sys.box.box
    line = bx.values[x1, x2, :, i1, i2, y]
    denom = float(line.sum())
    if denom <= bx.tolerance:
        raise DomainError(
            f"sender marginal at x=({x1},{x2}), i=({i1},{i2}), y={y} is {denom}; "
            "decoding law undefined"
        )
    return JointPmf((bx.output_axes[2],), line / denom, bx.tolerance)


@dataclass(frozen=True)
class PairTv:
    inputs_a: tuple
    inputs_b: tuple
    tv: float
    receiver: int | None = None


@dataclass(frozen=True)
class LeakageReport:
    epsilon: float
    argmax_pair: tuple | None
    per_pair: tuple
    universal_secrecy: bool

    def __post_init__(self):
        if self.per_pair:
            worst = max(p.tv for p in self.per_pair)
            if abs(worst - self.epsilon) > 1e-12:
                raise StructureError("epsilon inconsistent with per-pair table")


def _pairwise_tv(views: dict, receiver: int | None):
    rows = []
    keys = sorted(views.keys())
    for a_idx, a in enumerate(keys):
        for b in keys[a_idx + 1 :]:
            rows.append(PairTv(a, b, tv_distance(views[a], views[b]), receiver))
    return rows


def encoder_secrecy_violation(sys: ComposedSystem, tolerance: float | None = None) -> LeakageReport:
    """Max view distinguishability over all pairs of sender inputs.

    epsilon = 0 (within tolerance) certifies universal encoder-level
    secrecy: the receiver's observable distribution is the same for every
    encoder input, which happens exactly when the composed resource is
    trivial.  Ties in the argmax break in lexicographic input order.
    """
    tol = sys.box.box.tolerance if tolerance is None else tolerance
    if sys.structure == "mac":
        rows = _pairwise_tv(bob_view_mac(sys), None)
    else:
        rows = _pairwise_tv(receiver_views_bc(sys, 1), 1)
        rows += _pairwise_tv(receiver_views_bc(sys, 2), 2)
    if not rows:
        return LeakageReport(0.0, None, (), True)
    eps = max(r.tv for r in rows)
    argmax = next((r.inputs_a, r.inputs_b) for r in rows if r.tv == eps)
    return LeakageReport(eps, argmax, tuple(rows), eps <= tol)


@dataclass(frozen=True)
class AmplificationRow:
    n: int
    tv: float
    pe: float
    correct: float
    mi_bits: float


@dataclass(frozen=True)
class AmplificationCurve:
    rows: tuple

    def first_n_reaching(self, mi_target: float) -> int | None:
        for row in self.rows:
            if row.mi_bits >= mi_target:
                return row.n
        return None


def amplification_analysis(epsilon: float, n_max: int) -> AmplificationCurve:
    """Repetition curve for a single-round distinguishability epsilon.

    Per round count n: product-view total variation 1-(1-eps)^n, the
    matched-prior hypothesis-testing error pe = (1-tv)/2, its complement,
    and the identification information 1 - H2(pe) in bits (nondecreasing
    in n, tending to 1).
    """
    if not 0.0 < epsilon <= 1.0:
        raise DomainError(
            f"amplification needs a nontrivial distinguishability in (0, 1], got {epsilon}"
        )
    if not isinstance(n_max, int) or n_max < 1:
        raise DomainError(f"n_max must be a positive integer, got {n_max}")
    rows = []
    for n in range(1, n_max + 1):
        tv = tv_tensorized(epsilon, n)
        pe = 0.5 * (1.0 - tv)
        rows.append(AmplificationRow(n, tv, pe, 1.0 - pe, 1.0 - binary_entropy(pe)))
    return AmplificationCurve(tuple(rows))


def binary_hypothesis_stats(p: JointPmf, q: JointPmf) -> tuple[float, float, float]:
    """Exact (tv, pe, mi) for an equiprobable binary hypothesis.

    ``mi`` is I(B; view) of the explicit joint with B uniform; it equals
    ``1 - H2(pe)`` only when the likelihood ratio is two-valued, and is
    lower bounded by that expression in general (Fano).
    """
    tv = tv_distance(p, q)
    pe = 0.5 * (1.0 - tv)
    b_axis = Alphabet("_hyp", 2)
    flat = Alphabet("_view", int(np.prod(p.values.shape)))
    joint = np.stack([0.5 * p.values.ravel(), 0.5 * q.values.ravel()])
    jp = JointPmf((b_axis, flat), joint, p.tolerance)
    mi = mutual_information(jp, ("_hyp",), ("_view",))
    return tv, pe, mi


def leakage_mi(
    sys: ComposedSystem,
    encoders: tuple,
    selection: tuple,
    message_dist: JointPmf | None = None,
) -> float:
    """Single-round leakage about the unselected files, in bits.

    ``encoders`` are per-sender integer tables mapping (m_i0, m_i1) to the
    sender's box input; ``selection`` fixes the receiver's choice pair so
    the unselected file of sender i is m_i(1 - z_i).  Returns the exact
    I(unselected files ; receiver view) under the message prior (uniform
    by default).
    """
    if sys.structure != "mac":
        raise StructureError("leakage_mi needs a MAC composition")
    enc1, enc2 = (np.asarray(e, dtype=np.int64) for e in encoders)
    z1, z2 = selection
    if z1 not in (0, 1) or z2 not in (0, 1):
        raise StructureError(f"selection must be a pair of bits, got {selection}")
    n10, n11 = enc1.shape
    n20, n21 = enc2.shape
    if max(n10 * n11, n20 * n21) > 2 ** 4:
        raise ResourceLimitError(
            f"message spaces {(n10, n11)} x {(n20, n21)} exceed the exhaustive "
            "enumeration limit of 16 tuples per sender"
        )
    axes = (
        Alphabet("m10", n10),
        Alphabet("m11", n11),
        Alphabet("m20", n20),
        Alphabet("m21", n21),
    )
    if message_dist is None:
        message_dist = uniform_dist(axes)
    if tuple(a.size for a in message_dist.axes) != (n10, n11, n20, n21):
        raise StructureError("message distribution does not match encoder tables")

    views = bob_view_mac(sys)
    u1 = n11 if z1 == 0 else n10  # alphabet of sender 1's unselected file
    u2 = n21 if z2 == 0 else n20
    some_view = next(iter(views.values()))
    view_size = some_view.values.size
    acc = np.zeros((u1, u2, view_size))
    for m10 in range(n10):
        for m11 in range(n11):
            for m20 in range(n20):
                for m21 in range(n21):
                    pm = float(message_dist.values[m10, m11, m20, m21])
                    if pm == 0.0:
                        continue
                    i1 = int(enc1[m10, m11])
                    i2 = int(enc2[m20, m21])
                    munsel1 = m11 if z1 == 0 else m10
                    munsel2 = m21 if z2 == 0 else m20
                    acc[munsel1, munsel2] += pm * views[(i1, i2)].values.ravel()
    joint = JointPmf(
        (Alphabet("mu1", u1), Alphabet("mu2", u2), Alphabet("view", view_size)),
        acc,
        sys.box.box.tolerance,
    )
    return joint.mutual_information(("mu1", "mu2"), ("view",))
