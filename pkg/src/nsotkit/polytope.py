"""Linear-algebraic view of the non-signaling set.

The box tensor entries are LP variables; normalization plus the
non-signaling marginal families form an equality system whose
nonnegative solutions are exactly the NS boxes of the declared shape.
On top of the system sit membership certificates (violated rows with
residuals), game values over the local and NS polytopes, and the
LP-based search for the most distinguishing box behind a channel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .boxes import AnyBox, BipartiteBox, TripartiteBcBox, TripartiteMacBox
from .channels import Channel
from .errors import DomainError, ResourceLimitError, StructureError
from .lp import DEFAULT_LP_TOLERANCE, solve_lp
from .probability import Alphabet, ConditionalPmf, DEFAULT_TOLERANCE, JointPmf

_STRUCTURES = {
    # structure: (output names, input names, NS families as (id, sum output pos, vary input pos))
    "bipartite": (
        ("x1", "x2"),
        ("i1", "i2"),
        (("NS-prob1", 0, 0), ("NS-prob2", 1, 1)),
    ),
    "tripartite_mac": (
        ("x1", "x2", "j"),
        ("i1", "i2", "y"),
        (("NS1", 0, 0), ("NS2", 1, 1), ("NS3", 2, 2)),
    ),
    "tripartite_bc": (
        ("x", "j1", "j2"),
        ("i", "y1", "y2"),
        (("NS1-BC", 0, 0), ("NS2-BC", 1, 1), ("NS3-BC", 2, 2)),
    ),
}


@dataclass(frozen=True)
class PartyShape:
    structure: str
    out_sizes: tuple[int, ...]
    in_sizes: tuple[int, ...]

    def __post_init__(self):
        if self.structure not in _STRUCTURES:
            raise StructureError(f"unknown structure {self.structure!r}")
        out_names, in_names, _ = _STRUCTURES[self.structure]
        if len(self.out_sizes) != len(out_names) or len(self.in_sizes) != len(in_names):
            raise StructureError(
                f"{self.structure} needs {len(out_names)} output and "
                f"{len(in_names)} input sizes"
            )
        if any(s < 1 for s in self.out_sizes + self.in_sizes):
            raise StructureError("alphabet sizes must be >= 1")

    @property
    def n_vars(self) -> int:
        return int(np.prod(self.out_sizes + self.in_sizes))

    def axes(self) -> tuple[tuple[Alphabet, ...], tuple[Alphabet, ...]]:
        out_names, in_names, _ = _STRUCTURES[self.structure]
        return (
            tuple(Alphabet(n, s) for n, s in zip(out_names, self.out_sizes)),
            tuple(Alphabet(n, s) for n, s in zip(in_names, self.in_sizes)),
        )

    def var_index(self, outputs: tuple[int, ...], inputs: tuple[int, ...]) -> int:
        return int(
            np.ravel_multi_index(outputs + inputs, self.out_sizes + self.in_sizes)
        )

    def to_box(self, x: np.ndarray, tolerance: float = DEFAULT_TOLERANCE) -> AnyBox:
        out_axes, in_axes = self.axes()
        vals = np.asarray(x, dtype=np.float64).reshape(self.out_sizes + self.in_sizes)
        vals = np.clip(vals, 0.0, None)
        kernel = ConditionalPmf(out_axes, in_axes, vals, tolerance)
        cls = {
            "bipartite": BipartiteBox,
            "tripartite_mac": TripartiteMacBox,
            "tripartite_bc": TripartiteBcBox,
        }[self.structure]
        return cls(kernel)


@dataclass(frozen=True)
class EqualityRow:
    label: str
    indices: np.ndarray
    coeffs: np.ndarray
    rhs: float


@dataclass(frozen=True)
class LinearSystem:
    shape: PartyShape
    rows: tuple[EqualityRow, ...]

    @property
    def n_vars(self) -> int:
        return self.shape.n_vars

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        A = np.zeros((len(self.rows), self.n_vars))
        b = np.zeros(len(self.rows))
        for r, row in enumerate(self.rows):
            A[r, row.indices] = row.coeffs
            b[r] = row.rhs
        return A, b

    def residuals(self, flat_values: np.ndarray) -> list[tuple[str, float]]:
        out = []
        for row in self.rows:
            res = float(flat_values[row.indices] @ row.coeffs - row.rhs)
            out.append((row.label, res))
        return out


def build_ns_system(shape: PartyShape) -> LinearSystem:
    """Normalization plus one adjacent-difference row per NS marginal cell.

    Equality between all values of the signaling input is encoded as a
    chain of adjacent differences, so each constraint family appears
    exactly once and the row count follows the combinatorial formula
    ``prod(in) + sum over families of (other outputs) * (other inputs) *
    (vary size - 1)``.
    """
    out_sizes, in_sizes = shape.out_sizes, shape.in_sizes
    rows: list[EqualityRow] = []

    for in_tuple in itertools.product(*(range(s) for s in in_sizes)):
        idx = [
            shape.var_index(o, in_tuple)
            for o in itertools.product(*(range(s) for s in out_sizes))
        ]
        rows.append(
            EqualityRow(
                f"norm@{in_tuple}",
                np.array(idx, dtype=np.int64),
                np.ones(len(idx)),
                1.0,
            )
        )

    _, _, families = _STRUCTURES[shape.structure]
    for fam_id, sum_out_pos, vary_in_pos in families:
        other_out = [
            range(s) for k, s in enumerate(out_sizes) if k != sum_out_pos
        ]
        other_in = [range(s) for k, s in enumerate(in_sizes) if k != vary_in_pos]
        vary_size = in_sizes[vary_in_pos]
        for out_cell in itertools.product(*other_out):
            for in_cell in itertools.product(*other_in):
                for v in range(vary_size - 1):
                    idx = []
                    coef = []
                    for summed in range(out_sizes[sum_out_pos]):
                        out_full = list(out_cell)
                        out_full.insert(sum_out_pos, summed)
                        for vv, sign in ((v, 1.0), (v + 1, -1.0)):
                            in_full = list(in_cell)
                            in_full.insert(vary_in_pos, vv)
                            idx.append(shape.var_index(tuple(out_full), tuple(in_full)))
                            coef.append(sign)
                    rows.append(
                        EqualityRow(
                            f"{fam_id}@out{out_cell}in{in_cell}v{v}",
                            np.array(idx, dtype=np.int64),
                            np.array(coef),
                            0.0,
                        )
                    )
    return LinearSystem(shape, tuple(rows))


@dataclass(frozen=True)
class MembershipReport:
    passed: bool
    violations: tuple[tuple[str, float], ...]  # (row label, residual)


def ns_membership(
    candidate: ConditionalPmf,
    shape: PartyShape,
    tolerance: float = DEFAULT_TOLERANCE,
) -> MembershipReport:
    """Certificate-style membership: violated rows with their residuals."""
    expected = shape.out_sizes + shape.in_sizes
    if candidate.values.shape != expected:
        raise StructureError(
            f"candidate shape {candidate.values.shape} != declared {expected}"
        )
    flat = candidate.values.ravel()
    violations = []
    if float(flat.min()) < -tolerance:
        worst = int(flat.argmin())
        violations.append((f"nonneg@var{worst}", float(flat[worst])))
    system = build_ns_system(shape)
    for label, res in system.residuals(flat):
        if abs(res) > tolerance:
            violations.append((label, res))
    return MembershipReport(not violations, tuple(violations))


@dataclass(frozen=True)
class GameSpec:
    """A payoff game: an input distribution and a payoff table indexed
    (inputs..., outputs...)."""

    input_dist: JointPmf
    payoff: np.ndarray

    def __post_init__(self):
        payoff = np.asarray(self.payoff, dtype=np.float64)
        object.__setattr__(self, "payoff", payoff)


def game_value_of_box(g: GameSpec, box: ConditionalPmf) -> float:
    """Expected payoff of a specific box under the game's input law."""
    n_in = len(box.input_axes)
    n_out = len(box.output_axes)
    # payoff indexed (inputs, outputs); box values indexed (outputs, inputs)
    pay = np.moveaxis(g.payoff, range(n_in), range(n_out, n_out + n_in))
    return float((g.input_dist.values * (pay * box.values).sum(axis=tuple(range(n_out)))).sum())


def local_game_value(g: GameSpec, shape: PartyShape) -> float:
    """Best deterministic local strategy pair, which by convexity is the
    local-polytope maximum.  Bipartite shapes with axes up to size 4."""
    if shape.structure != "bipartite":
        raise StructureError("local_game_value supports bipartite shapes")
    (x1, x2), (i1, i2) = shape.out_sizes, shape.in_sizes
    if max(x1, x2, i1, i2) > 4:
        raise ResourceLimitError("local enumeration limited to alphabets of size <= 4")
    pi = g.input_dist.values
    best = -np.inf
    for f1 in itertools.product(range(x1), repeat=i1):
        for f2 in itertools.product(range(x2), repeat=i2):
            v = sum(
                pi[a, b] * g.payoff[a, b, f1[a], f2[b]]
                for a in range(i1)
                for b in range(i2)
            )
            best = max(best, float(v))
    return best


def _objective_from_game(g: GameSpec, shape: PartyShape) -> np.ndarray:
    c = np.zeros(shape.n_vars)
    for in_tuple in itertools.product(*(range(s) for s in shape.in_sizes)):
        pi = float(g.input_dist.values[in_tuple])
        for out_tuple in itertools.product(*(range(s) for s in shape.out_sizes)):
            c[shape.var_index(out_tuple, in_tuple)] = (
                pi * float(g.payoff[in_tuple + out_tuple])
            )
    return c


def ns_game_value(
    g: GameSpec,
    shape: PartyShape,
    lp_tolerance: float = DEFAULT_LP_TOLERANCE,
) -> tuple[float, AnyBox]:
    """Maximum expected payoff over the NS polytope, plus an optimizer box."""
    if shape.n_vars > 10_000:
        raise ResourceLimitError(f"LP size {shape.n_vars} exceeds the 1e4 variable limit")
    system = build_ns_system(shape)
    A, b = system.dense()
    c = _objective_from_game(g, shape)
    res = solve_lp(c, A, b, tol=lp_tolerance)
    if res.status != "optimal":
        raise DomainError(f"NS game LP ended with status {res.status!r}")
    box = shape.to_box(res.x, tolerance=max(DEFAULT_TOLERANCE, lp_tolerance * 10))
    member = ns_membership(box.box, shape, tolerance=lp_tolerance * 10)
    if not member.passed:
        raise DomainError(f"LP optimizer failed membership: {member.violations[:3]}")
    return res.value, box


def max_distinguishability(
    shape: PartyShape,
    channel: Channel,
    input_pair: tuple[tuple[int, int], tuple[int, int]],
    lp_tolerance: float = DEFAULT_LP_TOLERANCE,
) -> tuple[float, AnyBox]:
    """Largest receiver-view TV between two encoder inputs over NS boxes.

    The view TV is a maximum of linear functionals, one per sign pattern
    over the (y, j) outcomes, so each pattern is an LP over the NS system
    and the best pattern wins.  The pattern count is halved by fixing the
    first sign (the polytope is invariant under relabeling the pair).
    """
    if shape.structure != "tripartite_mac":
        raise StructureError("max_distinguishability needs a tripartite MAC shape")
    if channel.kind != "mac":
        raise StructureError("max_distinguishability needs a MAC channel")
    x1s, x2s, js = shape.out_sizes
    i1s, i2s, ys = shape.in_sizes
    wx1, wx2 = (a.size for a in channel.law.input_axes)
    wy = channel.law.output_axes[0].size
    if (x1s, x2s) != (wx1, wx2) or ys != wy:
        raise StructureError("shape does not match channel alphabets")
    pair_a, pair_b = (tuple(input_pair[0]), tuple(input_pair[1]))
    for (a1, a2) in (pair_a, pair_b):
        if not (0 <= a1 < i1s and 0 <= a2 < i2s):
            raise StructureError(f"input pair {input_pair} outside alphabets")
    if pair_a == pair_b:
        return 0.0, shape.to_box(np.full(shape.n_vars, 1.0 / int(np.prod(shape.out_sizes))))

    n_view = ys * js
    if n_view > 17:
        raise ResourceLimitError(
            f"sign enumeration over {n_view} outcomes exceeds the 2^16 pattern limit"
        )
    system = build_ns_system(shape)
    A, b = system.dense()
    w = channel.law.values  # (y, x1, x2)

    def objective(signs: np.ndarray) -> np.ndarray:
        c = np.zeros(shape.n_vars)
        for yv in range(ys):
            for jv in range(js):
                s = signs[yv * js + jv]
                if s == 0:
                    continue
                for xv1 in range(x1s):
                    for xv2 in range(x2s):
                        wgt = 0.5 * s * float(w[yv, xv1, xv2])
                        if wgt == 0.0:
                            continue
                        c[shape.var_index((xv1, xv2, jv), pair_a + (yv,))] += wgt
                        c[shape.var_index((xv1, xv2, jv), pair_b + (yv,))] -= wgt
        return c

    best_value = -np.inf
    best_box = None
    for bits in itertools.product((1, -1), repeat=n_view - 1):
        signs = np.array((1,) + bits, dtype=np.int64)
        res = solve_lp(objective(signs), A, b, tol=lp_tolerance)
        if res.status != "optimal":
            raise DomainError(f"sign-pattern LP ended with status {res.status!r}")
        if res.value > best_value:
            best_value = res.value
            best_box = res.x
    box = shape.to_box(best_box, tolerance=max(DEFAULT_TOLERANCE, lp_tolerance * 10))
    return float(best_value), box


def chsh_game() -> GameSpec:
    """The CHSH winning-probability game: payoff 1 when the output XOR
    equals the input AND, uniform inputs."""
    pay = np.zeros((2, 2, 2, 2))
    for a in (0, 1):
        for b in (0, 1):
            for u in (0, 1):
                for v in (0, 1):
                    pay[a, b, u, v] = 1.0 if (u ^ v) == (a & b) else 0.0
    dist = JointPmf(
        (Alphabet("i1", 2), Alphabet("i2", 2)), np.full((2, 2), 0.25)
    )
    return GameSpec(dist, pay)
