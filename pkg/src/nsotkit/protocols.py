"""OT protocol scenarios and their exact security evaluation.

A scenario is a finite causal network: exogenous sources (messages,
choice bits, local randomness), deterministic tables, and stochastic
kernels (boxes, channels), each output owned by a party.  Public
transcript nodes are deterministic tables flagged public; validation
rejects a transcript node that reads anything outside its emitting
party's view at that point.  Everything is enumerated exactly, so the
three OT metrics (correctness, security for the senders, security for
the receiver) come out as exact numbers, not estimates.

Views follow the OT definitions: a sender's view is her message pair,
local randomness, box/channel inputs and outputs she holds, plus the
public transcript; the receiver's view is his choice bits, randomness,
channel outputs, box outputs, and the transcript.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .boxes import (
    BipartiteBox,
    TripartiteMacBox,
    check_bipartite_ns,
    check_tripartite_mac_ns,
    lift_sender_box_mac,
    make_pr_box,
)
from .channels import Channel, binary_adder_mac, erasure_channel
from .errors import DomainError, ResourceLimitError, StructureError, ValidationError
from .probability import (
    Alphabet,
    ConditionalPmf,
    DEFAULT_TOLERANCE,
    JointPmf,
    uniform_dist,
)

ATOM_CAP = 2 ** 20

SENDER_1 = "sender1"
SENDER_2 = "sender2"
RECEIVER = "receiver"
_PARTIES = (SENDER_1, SENDER_2, RECEIVER)


@dataclass(frozen=True)
class OtInstance:
    """Message lengths of a 1-of-2 OT instance; spaces are {0,1}^k."""

    k1: int
    k2: int = 0

    def __post_init__(self):
        if self.k1 < 1 or self.k2 < 0:
            raise StructureError("message lengths must satisfy k1 >= 1, k2 >= 0")

    @property
    def m1_size(self) -> int:
        return 2 ** self.k1

    @property
    def m2_size(self) -> int:
        return 2 ** self.k2


@dataclass(frozen=True)
class SourceNode:
    """Exogenous variables with a joint distribution, owned by one party."""

    names: tuple[str, ...]
    dist: JointPmf
    owner: str


@dataclass(frozen=True)
class FunctionNode:
    """Deterministic variable: value = table[read values]."""

    name: str
    size: int
    reads: tuple[str, ...]
    table: np.ndarray
    owner: str
    public: bool = False


@dataclass(frozen=True)
class KernelNode:
    """Stochastic variables drawn from a conditional kernel."""

    names: tuple[str, ...]
    kernel: ConditionalPmf
    reads: tuple[str, ...]
    owners: tuple[str, ...]


Node = Union[SourceNode, FunctionNode, KernelNode]


@dataclass(frozen=True)
class SenderDecl:
    """One sender's message pair and the receiver choice bit selecting
    from it."""

    party: str
    m0: str
    m1: str
    k: int
    choice: str


@dataclass(frozen=True)
class ProtocolScenario:
    nodes: tuple[Node, ...]
    senders: tuple[SenderDecl, ...]
    decoder: str | tuple[np.ndarray, ...] = "ml"  # "ml" or per-sender tables
    instance: OtInstance | None = None
    label: str = ""

    def __post_init__(self):
        sizes: dict[str, int] = {}
        owner: dict[str, str] = {}
        public: list[str] = []
        for node in self.nodes:
            if isinstance(node, SourceNode):
                if node.owner not in _PARTIES:
                    raise ValidationError(f"unknown party {node.owner!r}")
                for name, axis in zip(node.names, node.dist.axes):
                    self._declare(sizes, name, axis.size)
                    owner[name] = node.owner
            elif isinstance(node, FunctionNode):
                if node.owner not in _PARTIES:
                    raise ValidationError(f"unknown party {node.owner!r}")
                self._check_reads(sizes, node.reads, node.table.shape, node.name)
                if node.public:
                    visible = set(public) | {
                        n for n, p in owner.items() if p == node.owner
                    }
                    hidden = [r for r in node.reads if r not in visible]
                    if hidden:
                        raise ValidationError(
                            f"transcript node {node.name!r} from {node.owner} reads "
                            f"hidden variables {hidden}"
                        )
                self._declare(sizes, node.name, node.size)
                owner[node.name] = node.owner
                if node.public:
                    public.append(node.name)
            elif isinstance(node, KernelNode):
                in_sizes = tuple(a.size for a in node.kernel.input_axes)
                self._check_reads(sizes, node.reads, in_sizes, node.names[0])
                if len(node.names) != len(node.kernel.output_axes):
                    raise StructureError(
                        f"kernel node {node.names} arity mismatch with kernel outputs"
                    )
                for name, axis, own in zip(node.names, node.kernel.output_axes, node.owners):
                    if own not in _PARTIES:
                        raise ValidationError(f"unknown party {own!r}")
                    self._declare(sizes, name, axis.size)
                    owner[name] = own
            else:
                raise StructureError(f"unknown node type {type(node).__name__}")
        for decl in self.senders:
            for var in (decl.m0, decl.m1, decl.choice):
                if var not in sizes:
                    raise ValidationError(f"sender declaration references unknown {var!r}")
        object.__setattr__(self, "_sizes", sizes)
        object.__setattr__(self, "_owner", owner)
        object.__setattr__(self, "_public", tuple(public))

    @staticmethod
    def _declare(sizes: dict, name: str, size: int):
        if name in sizes:
            raise ValidationError(f"variable {name!r} defined twice")
        sizes[name] = size

    @staticmethod
    def _check_reads(sizes: dict, reads, expected_shape, label: str):
        for r in reads:
            if r not in sizes:
                raise ValidationError(f"node {label!r} reads undefined variable {r!r}")
        got = tuple(sizes[r] for r in reads)
        if tuple(expected_shape) != got:
            raise StructureError(
                f"node {label!r} read sizes {got} do not match table/kernel {tuple(expected_shape)}"
            )

    # ------------------------------------------------------------------

    def variables(self) -> tuple[str, ...]:
        return tuple(self._sizes)

    def size_of(self, name: str) -> int:
        return self._sizes[name]

    def view(self, party: str) -> tuple[str, ...]:
        """All variables visible to a party, in declaration order."""
        return tuple(
            n
            for n in self._sizes
            if self._owner[n] == party or n in self._public
        )

    def receiver_view(self) -> tuple[str, ...]:
        return self.view(RECEIVER)

    def atoms(self, cap: int = ATOM_CAP):
        """Exact enumeration of (probability, assignment) pairs."""
        frontier: list[tuple[float, dict]] = [(1.0, {})]
        processed = 0
        kernel_cache: dict[int, dict] = {}
        for node in self.nodes:
            new_frontier: list[tuple[float, dict]] = []
            if isinstance(node, SourceNode):
                outcomes = list(node.dist.outcomes())
                for p, env in frontier:
                    for syms, q in outcomes:
                        env2 = dict(env)
                        env2.update(zip(node.names, syms))
                        new_frontier.append((p * q, env2))
            elif isinstance(node, FunctionNode):
                for p, env in frontier:
                    env2 = dict(env)
                    env2[node.name] = int(node.table[tuple(env[r] for r in node.reads)])
                    new_frontier.append((p, env2))
            else:
                cache = kernel_cache.setdefault(id(node), {})
                for p, env in frontier:
                    key = tuple(env[r] for r in node.reads)
                    if key not in cache:
                        cache[key] = list(node.kernel.given(*key).outcomes())
                    for syms, q in cache[key]:
                        env2 = dict(env)
                        env2.update(zip(node.names, syms))
                        new_frontier.append((p * q, env2))
            frontier = new_frontier
            processed += len(frontier)
            if processed > cap:
                raise ResourceLimitError(
                    f"scenario enumeration exceeded {cap} atoms"
                )
        return frontier


# ----------------------------------------------------------------------
# exact evaluation
# ----------------------------------------------------------------------

def _entropy_of(dist: dict) -> float:
    return -sum(p * math.log2(p) for p in dist.values() if p > 0.0)


def _mi_from_pairs(pairs: dict) -> float:
    """I(A;B) in bits from a dict (a, b) -> probability."""
    pa: dict = {}
    pb: dict = {}
    for (a, b), p in pairs.items():
        pa[a] = pa.get(a, 0.0) + p
        pb[b] = pb.get(b, 0.0) + p
    mi = 0.0
    for (a, b), p in pairs.items():
        if p > 0.0:
            mi += p * math.log2(p / (pa[a] * pb[b]))
    return max(0.0, mi)


def _accumulate(table: dict, key, p: float):
    table[key] = table.get(key, 0.0) + p


@dataclass(frozen=True)
class SecurityEvaluation:
    correctness_error: float
    sfa_leakage_bits: float
    sfb_leakage_bits: float
    sfb_per_sender: tuple[float, ...]
    perfect_correctness: bool
    perfect_sfa: bool
    perfect_sfb: bool
    selected_entropy_given_view: float
    selected_entropy_without_choice: float
    selected_bits: int
    tolerance: float = DEFAULT_TOLERANCE


def _ml_decoder(joint_sel: dict) -> float:
    """Residual error of the maximum-likelihood selected-message decoder.

    Ties break toward the lexicographically smallest message tuple so the
    induced decoder, and hence every report, is deterministic.
    """
    by_view: dict = {}
    for (msel, view), p in joint_sel.items():
        best = by_view.get(view)
        if best is None or p > best[0] or (p == best[0] and msel < best[1]):
            by_view[view] = (p, msel)
    return 1.0 - sum(p for p, _ in by_view.values())


def evaluate_scenario(
    s: ProtocolScenario,
    tolerance: float = DEFAULT_TOLERANCE,
    atom_cap: int = ATOM_CAP,
) -> SecurityEvaluation:
    """Exact OT security metrics of a scenario.

    correctness_error: probability the decoder misses any selected
    message; sfa: I(unselected files ; receiver view); sfb: per sender,
    I(choice bits ; sender view), reported as the maximum.
    """
    if not s.senders:
        raise ValidationError(
            "scenario declares no selectable message pairs; use its dedicated report"
        )
    r_view = s.receiver_view()
    sender_views = {d.party: s.view(d.party) for d in s.senders}
    choice_vars = tuple(d.choice for d in s.senders)

    joint_sel: dict = {}
    joint_unsel: dict = {}
    joint_view: dict = {}
    per_sender: dict = {d.party: {} for d in s.senders}

    for p, env in s.atoms(atom_cap):
        if p == 0.0:
            continue
        msel = tuple(
            env[d.m1] if env[d.choice] else env[d.m0] for d in s.senders
        )
        munsel = tuple(
            env[d.m0] if env[d.choice] else env[d.m1] for d in s.senders
        )
        view = tuple(env[n] for n in r_view)
        choices = tuple(env[c] for c in choice_vars)
        _accumulate(joint_sel, (msel, view), p)
        _accumulate(joint_unsel, (munsel, view), p)
        _accumulate(joint_view, view, p)
        for d in s.senders:
            u = tuple(env[n] for n in sender_views[d.party])
            _accumulate(per_sender[d.party], (choices, u), p)

    if s.decoder == "ml":
        err = _ml_decoder(joint_sel)
    else:
        tables = s.decoder
        if len(tables) != len(s.senders):
            raise ValidationError("decoder needs one table per sender")
        err = 0.0
        for (msel, view), p in joint_sel.items():
            guess = tuple(int(t[view]) for t in tables)
            if guess != msel:
                err += p
    err = min(max(err, 0.0), 1.0)

    sfa = _mi_from_pairs(joint_unsel)
    sfb_each = tuple(_mi_from_pairs(per_sender[d.party]) for d in s.senders)
    sfb = max(sfb_each)

    h_sel_view = _entropy_of(joint_sel) - _entropy_of(joint_view)
    # receiver view with the choice variables removed
    keep = [idx for idx, n in enumerate(r_view) if n not in choice_vars]
    reduced_sel: dict = {}
    reduced_view: dict = {}
    for (msel, view), p in joint_sel.items():
        rv = tuple(view[i] for i in keep)
        _accumulate(reduced_sel, (msel, rv), p)
        _accumulate(reduced_view, rv, p)
    h_sel_nochoice = _entropy_of(reduced_sel) - _entropy_of(reduced_view)

    selected_bits = sum(d.k for d in s.senders)
    return SecurityEvaluation(
        correctness_error=err,
        sfa_leakage_bits=sfa,
        sfb_leakage_bits=sfb,
        sfb_per_sender=sfb_each,
        perfect_correctness=err <= tolerance,
        perfect_sfa=sfa <= tolerance,
        perfect_sfb=sfb <= tolerance,
        selected_entropy_given_view=max(0.0, h_sel_view),
        selected_entropy_without_choice=max(0.0, h_sel_nochoice),
        selected_bits=selected_bits,
        tolerance=tolerance,
    )


def alice_view_invariance(
    s: ProtocolScenario, atom_cap: int = ATOM_CAP
) -> dict[str, float]:
    """Per-sender worst-case TV of the sender's view across choice values.

    For each sender and each full message tuple, compares the conditional
    view distributions P(U_i | M = m, Z = z) across all pairs (z, z');
    zero means the sender learns nothing about the receiver's choices.
    """
    if not s.senders:
        raise ValidationError("scenario declares no senders")
    msg_vars = tuple(v for d in s.senders for v in (d.m0, d.m1))
    choice_vars = tuple(d.choice for d in s.senders)
    sender_views = {d.party: s.view(d.party) for d in s.senders}

    tables: dict = {d.party: {} for d in s.senders}
    for p, env in s.atoms(atom_cap):
        if p == 0.0:
            continue
        m = tuple(env[v] for v in msg_vars)
        z = tuple(env[c] for c in choice_vars)
        for d in s.senders:
            u = tuple(env[n] for n in sender_views[d.party])
            _accumulate(tables[d.party].setdefault((m, z), {}), u, p)

    out = {}
    for d in s.senders:
        worst = 0.0
        groups: dict = {}
        for (m, z), dist in tables[d.party].items():
            groups.setdefault(m, {})[z] = dist
        for m, by_z in groups.items():
            zs = sorted(by_z)
            normed = {}
            for z in zs:
                mass = sum(by_z[z].values())
                normed[z] = {u: p / mass for u, p in by_z[z].items()}
            for a_idx, za in enumerate(zs):
                for zb in zs[a_idx + 1 :]:
                    keys = set(normed[za]) | set(normed[zb])
                    tv = 0.5 * sum(
                        abs(normed[za].get(u, 0.0) - normed[zb].get(u, 0.0))
                        for u in keys
                    )
                    worst = max(worst, tv)
        out[d.party] = worst
    return out


# ----------------------------------------------------------------------
# scenario builders
# ----------------------------------------------------------------------

def _uniform_source(names: tuple[str, ...], sizes: tuple[int, ...], owner: str) -> SourceNode:
    axes = tuple(Alphabet(n, sz) for n, sz in zip(names, sizes))
    return SourceNode(names, uniform_dist(axes), owner)


def _xor_table(n: int = 2) -> np.ndarray:
    t = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            t[a, b] = a ^ b
    return t


def pr_ot_scenario() -> ProtocolScenario:
    """Perfect 1-of-2 bit OT from a single PR box use.

    The sender feeds the XOR of her two bits into the box and announces
    her output masked with the first bit; the receiver feeds his choice
    and unmasks with his own output.  Exhaustive evaluation is all
    perfect: zero error, zero leakage either way.
    """
    pr = make_pr_box()
    nodes = (
        _uniform_source(("m10", "m11"), (2, 2), SENDER_1),
        _uniform_source(("z1",), (2,), RECEIVER),
        FunctionNode("i1", 2, ("m10", "m11"), _xor_table(), SENDER_1),
        KernelNode(("x1", "x2"), pr.box, ("i1", "z1"), (SENDER_1, RECEIVER)),
        FunctionNode("c", 2, ("m10", "x1"), _xor_table(), SENDER_1, public=True),
    )
    # receiver view order: (z1, x2, c); decode as c XOR x2
    decode = np.zeros((2, 2, 2), dtype=np.int64)
    for z1 in (0, 1):
        for x2 in (0, 1):
            for c in (0, 1):
                decode[z1, x2, c] = c ^ x2
    return ProtocolScenario(
        nodes=nodes,
        senders=(SenderDecl(SENDER_1, "m10", "m11", 1, "z1"),),
        decoder=(decode,),
        instance=OtInstance(1),
        label="pr_ot",
    )


def rabin_ot_scenario(p: float = 0.5) -> ProtocolScenario:
    """Rabin OT: one message bit through an erasure channel.

    There is no message pair or choice bit here, so the generic OT
    metrics do not apply; use :func:`rabin_ot_report`.
    """
    chan = erasure_channel(p)
    nodes = (
        _uniform_source(("m",), (2,), SENDER_1),
        KernelNode(("y",), chan.law, ("m",), (RECEIVER,)),
    )
    return ProtocolScenario(nodes=nodes, senders=(), label="rabin_ot")


@dataclass(frozen=True)
class RabinOtReport:
    receive_probability: float
    sender_erasure_mi_bits: float
    decode_error_given_receipt: float


def rabin_ot_report(s: ProtocolScenario | None = None) -> RabinOtReport:
    """Exact Rabin-OT facts: the receiver gets the bit with the channel's
    pass probability, the sender's view is independent of the erasure
    event, and receipt implies error-free decoding."""
    if s is None:
        s = rabin_ot_scenario()
    erased_symbol = 2
    receive = 0.0
    wrong_given_received = 0.0
    flag_view: dict = {}
    u_vars = s.view(SENDER_1)
    for p, env in s.atoms():
        erased = 1 if env["y"] == erased_symbol else 0
        if not erased:
            receive += p
            if env["y"] != env["m"]:
                wrong_given_received += p
        u = tuple(env[n] for n in u_vars)
        _accumulate(flag_view, (erased, u), p)
    mi = _mi_from_pairs(flag_view)
    return RabinOtReport(
        receive_probability=receive,
        sender_erasure_mi_bits=mi,
        decode_error_given_receipt=(wrong_given_received / receive) if receive > 0 else 0.0,
    )


def _mac_box_nodes(box: TripartiteMacBox) -> tuple[KernelNode, KernelNode]:
    """Split a MAC box into its causal stages.

    Stage one draws the sender outputs from the y-independent sender
    marginal; stage two applies the decoding law P(j | i1, i2, y, x1, x2).
    Unreachable decoding cells (zero sender marginal) are filled uniformly.
    """
    report = check_tripartite_mac_ns(box)
    if not report.passed:
        raise DomainError(
            f"scenario boxes must be non-signaling; violations "
            f"{[v.constraint for v in report.violations]}"
        )
    bx = box.box
    x1a, x2a, ja = bx.output_axes
    i1a, i2a, ya = bx.input_axes
    sender_marg = bx.values[:, :, :, :, :, 0].sum(axis=2)  # (x1, x2, i1, i2)
    sender_kernel = ConditionalPmf(
        (Alphabet("x1", x1a.size), Alphabet("x2", x2a.size)),
        (Alphabet("i1", i1a.size), Alphabet("i2", i2a.size)),
        sender_marg,
        bx.tolerance,
    )
    decode = np.empty((ja.size, i1a.size, i2a.size, ya.size, x1a.size, x2a.size))
    for s1 in range(i1a.size):
        for s2 in range(i2a.size):
            for yv in range(ya.size):
                for v1 in range(x1a.size):
                    for v2 in range(x2a.size):
                        line = bx.values[v1, v2, :, s1, s2, yv]
                        mass = float(line.sum())
                        if mass > bx.tolerance:
                            decode[:, s1, s2, yv, v1, v2] = line / mass
                        else:
                            decode[:, s1, s2, yv, v1, v2] = 1.0 / ja.size
    decode_kernel = ConditionalPmf(
        (Alphabet("j", ja.size),),
        (
            Alphabet("i1", i1a.size),
            Alphabet("i2", i2a.size),
            Alphabet("y", ya.size),
            Alphabet("x1", x1a.size),
            Alphabet("x2", x2a.size),
        ),
        decode,
        bx.tolerance,
    )
    sender_node = KernelNode(
        ("x1", "x2"), sender_kernel, ("i1", "i2"), (SENDER_1, SENDER_2)
    )
    decode_node = KernelNode(
        ("j",), decode_kernel, ("i1", "i2", "y", "x1", "x2"), (RECEIVER,)
    )
    return sender_node, decode_node


@dataclass(frozen=True)
class TranscriptSpec:
    """Declared public announcement: a deterministic table over named
    reads, emitted by one party."""

    party: str
    reads: tuple[str, ...]
    table: np.ndarray
    size: int


def build_mac_scenario(
    instance: OtInstance,
    encoders: tuple[np.ndarray, np.ndarray],
    box: TripartiteMacBox,
    channel: Channel,
    transcript: Sequence[TranscriptSpec] = (),
    decoder: str | tuple[np.ndarray, ...] = "ml",
    label: str = "",
) -> ProtocolScenario:
    """Standard two-sender single-shot scenario over a MAC.

    Encoders are deterministic tables (m_i0, m_i1) -> box input; the box
    runs in its causal stages around one channel use; transcript nodes
    are appended in order after the channel stage.
    """
    if channel.kind != "mac":
        raise StructureError("build_mac_scenario needs a MAC channel")
    enc1 = np.asarray(encoders[0], dtype=np.int64)
    enc2 = np.asarray(encoders[1], dtype=np.int64)
    if enc1.shape != (instance.m1_size, instance.m1_size) or enc2.shape != (
        instance.m2_size,
        instance.m2_size,
    ):
        raise StructureError("encoder tables do not match the message spaces")
    sender_node, decode_node = _mac_box_nodes(box)
    i1_size = box.box.input_axes[0].size
    i2_size = box.box.input_axes[1].size
    if int(enc1.max()) >= i1_size or int(enc2.max()) >= i2_size:
        raise StructureError("encoder outputs exceed the box input alphabets")
    wy = channel.law.output_axes[0].size
    chan_kernel = ConditionalPmf(
        (Alphabet("y", wy),),
        (
            Alphabet("x1", channel.law.input_axes[0].size),
            Alphabet("x2", channel.law.input_axes[1].size),
        ),
        channel.law.values,
        channel.law.tolerance,
    )
    nodes: list[Node] = [
        _uniform_source(("m10", "m11"), (instance.m1_size,) * 2, SENDER_1),
        _uniform_source(("m20", "m21"), (instance.m2_size,) * 2, SENDER_2),
        _uniform_source(("z1", "z2"), (2, 2), RECEIVER),
        FunctionNode("i1", i1_size, ("m10", "m11"), enc1, SENDER_1),
        FunctionNode("i2", i2_size, ("m20", "m21"), enc2, SENDER_2),
        sender_node,
        KernelNode(("y",), chan_kernel, ("x1", "x2"), (RECEIVER,)),
        decode_node,
    ]
    for idx, spec in enumerate(transcript):
        nodes.append(
            FunctionNode(
                f"c{idx}",
                spec.size,
                spec.reads,
                np.asarray(spec.table, dtype=np.int64),
                spec.party,
                public=True,
            )
        )
    return ProtocolScenario(
        nodes=tuple(nodes),
        senders=(
            SenderDecl(SENDER_1, "m10", "m11", instance.k1, "z1"),
            SenderDecl(SENDER_2, "m20", "m21", instance.k2, "z2"),
        ),
        decoder=decoder,
        instance=instance,
        label=label,
    )


def bipartite_sender_scenario(
    senders: BipartiteBox,
    decoder_part: ConditionalPmf,
    channel: Channel,
    encoders: tuple[np.ndarray, np.ndarray],
    transcript: Sequence[TranscriptSpec] = (),
    instance: OtInstance | None = None,
    decoder: str | tuple[np.ndarray, ...] = "ml",
) -> ProtocolScenario:
    """Scenario whose box is a sender-shared bipartite box lifted with a
    local receiver decoder; nothing universal is asserted, the metrics
    simply get measured."""
    if not check_bipartite_ns(senders).passed:
        raise DomainError("sender box is signaling")
    box = lift_sender_box_mac(senders, decoder_part)
    if instance is None:
        instance = OtInstance(1, 1)
    return build_mac_scenario(
        instance, encoders, box, channel, transcript, decoder,
        label="bipartite_sender",
    )


def clean_transcript_scenario() -> ProtocolScenario:
    """Bob-security positive branch: nontrivial box, transcript generated
    only from sender-held variables; sender views are then choice
    independent."""
    from .sampling import deterministic_part

    box = lift_sender_box_mac(
        make_pr_box(), deterministic_part("j", "y", 3, (0, 1, 2))
    )
    enc = _xor_table()
    announce = TranscriptSpec(SENDER_1, ("m10", "x1"), _xor_table(), 2)
    return build_mac_scenario(
        OtInstance(1, 1),
        (enc, enc),
        box,
        binary_adder_mac(),
        transcript=(announce,),
        label="clean_transcript",
    )


def leaky_choice_broadcast_scenario() -> ProtocolScenario:
    """Bob-security negative branch: identical except the receiver
    broadcasts his first choice bit, which lands in every sender view."""
    from .sampling import deterministic_part

    box = lift_sender_box_mac(
        make_pr_box(), deterministic_part("j", "y", 3, (0, 1, 2))
    )
    enc = _xor_table()
    announce = TranscriptSpec(SENDER_1, ("m10", "x1"), _xor_table(), 2)
    leak = TranscriptSpec(RECEIVER, ("z1",), np.arange(2, dtype=np.int64), 2)
    return build_mac_scenario(
        OtInstance(1, 1),
        (enc, enc),
        box,
        binary_adder_mac(),
        transcript=(announce, leak),
        label="leaky_choice_broadcast",
    )


def plaintext_reveal_scenario() -> ProtocolScenario:
    """Correct but fully leaky: both files of both senders travel in the
    clear through a noiseless pairwise channel, so decoding is exact and
    everything about the unselected files leaks."""
    from .channels import identity_pair_mac
    from .sampling import deterministic_part

    # box inputs are the two file bits packed into one 4-ary symbol
    pack = np.zeros((2, 2), dtype=np.int64)
    for a in (0, 1):
        for b in (0, 1):
            pack[a, b] = 2 * a + b
    ident4 = deterministic_part("x", "i", 4, (0, 1, 2, 3))
    box = TripartiteMacBox(
        ConditionalPmf(
            (Alphabet("x1", 4), Alphabet("x2", 4), Alphabet("j", 1)),
            (Alphabet("i1", 4), Alphabet("i2", 4), Alphabet("y", 16)),
            np.einsum(
                "au,bv,cw->abcuvw",
                ident4.values,
                ident4.values,
                np.ones((1, 16)),
            ),
        )
    )
    return build_mac_scenario(
        OtInstance(1, 1),
        (pack, pack),
        box,
        identity_pair_mac(4),
        label="plaintext_reveal",
    )
