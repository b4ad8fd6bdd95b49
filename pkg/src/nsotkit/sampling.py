"""Random box corpora for property testing and certificates.

Boxes are sampled as convex mixtures of enumerated deterministic local
vertices plus nonlocal PR-family vertices, which keeps every sample
inside the non-signaling set by construction.  Two disciplines matter
for the certificate suites:

* trivial samples mix only sender-input-independent vertices (constant
  sender parts), so their kernels are exactly input independent;
* nontrivial samples place weight at least ``strong_weight_floor`` on a
  single input-passing vertex and fill the rest with trivial vertices,
  so the composed single-round distinguishability stays large enough for
  the repetition-count bound in the acceptance suite (the bound is only
  valid when the adder-composed epsilon exceeds roughly 0.39).

Planted signaling boxes copy one input into a forbidden marginal and
violate exactly one constraint family each; they are the negative
controls for the verification criteria.
"""

from __future__ import annotations

import numpy as np

from .boxes import (
    AnyBox,
    BipartiteBox,
    TripartiteBcBox,
    TripartiteMacBox,
    lift_sender_box_mac,
    make_product_box,
    mix,
    pr_family_box,
)
from .probability import Alphabet, ConditionalPmf

STRONG_WEIGHT_FLOOR = 0.65


def deterministic_part(out_name: str, in_name: str, out_size: int, table) -> ConditionalPmf:
    """P(out|in) concentrating on out = table[in]."""
    table = tuple(int(t) for t in table)
    vals = np.zeros((out_size, len(table)))
    for sym_in, sym_out in enumerate(table):
        vals[sym_out, sym_in] = 1.0
    return ConditionalPmf((Alphabet(out_name, out_size),), (Alphabet(in_name, len(table)),), vals)


def _random_decoder_table(rng: np.random.Generator, y_size: int, j_size: int):
    return tuple(int(v) for v in rng.integers(0, j_size, size=y_size))


def _mac_local_vertex(f1, f2, h, y_size: int, j_size: int) -> TripartiteMacBox:
    return make_product_box(
        [
            deterministic_part("x1", "i1", 2, f1),
            deterministic_part("x2", "i2", 2, f2),
            deterministic_part("j", "y", j_size, h),
        ],
        "mac",
    )


def _mac_pr_vertex(rng: np.random.Generator, y_size: int, j_size: int) -> TripartiteMacBox:
    a, bflag, g = (int(v) for v in rng.integers(0, 2, size=3))
    decoder = deterministic_part("j", "y", j_size, _random_decoder_table(rng, y_size, j_size))
    return lift_sender_box_mac(pr_family_box(a, bflag, g), decoder)


def random_trivial_mac_box(
    rng: np.random.Generator, y_size: int = 2, j_size: int = 2, components: int = 3
) -> TripartiteMacBox:
    """Mixture of constant-sender vertices; the kernel ignores (i1, i2)."""
    boxes = []
    for _ in range(components):
        c1, c2 = (int(v) for v in rng.integers(0, 2, size=2))
        h = _random_decoder_table(rng, y_size, j_size)
        boxes.append(_mac_local_vertex((c1, c1), (c2, c2), h, y_size, j_size))
    weights = rng.dirichlet(np.ones(components))
    return mix(boxes, list(weights))


def random_nontrivial_mac_box(
    rng: np.random.Generator, y_size: int = 2, j_size: int = 2, components: int = 3
) -> TripartiteMacBox:
    """One strongly input-passing vertex plus trivial padding."""
    if rng.random() < 0.5:
        f1 = (0, 1) if rng.random() < 0.5 else (1, 0)  # nonconstant sender-1 map
        f2_choices = [(0, 1), (1, 0), (0, 0), (1, 1)]
        f2 = f2_choices[int(rng.integers(0, 4))]
        h = _random_decoder_table(rng, y_size, j_size)
        strong = _mac_local_vertex(f1, f2, h, y_size, j_size)
    else:
        strong = _mac_pr_vertex(rng, y_size, j_size)
    w = float(rng.uniform(STRONG_WEIGHT_FLOOR, 0.95))
    padding = random_trivial_mac_box(rng, y_size, j_size, components)
    return mix([strong, padding], [w, 1.0 - w])


def random_mac_box(
    rng: np.random.Generator, y_size: int = 2, j_size: int = 2
) -> TripartiteMacBox:
    if rng.random() < 0.5:
        return random_trivial_mac_box(rng, y_size, j_size)
    return random_nontrivial_mac_box(rng, y_size, j_size)


def random_bipartite_box(rng: np.random.Generator, components: int = 4) -> BipartiteBox:
    """Mixture of local deterministic and PR-family bipartite vertices."""
    boxes = []
    for _ in range(components):
        if rng.random() < 0.5:
            a, bflag, g = (int(v) for v in rng.integers(0, 2, size=3))
            boxes.append(pr_family_box(a, bflag, g))
        else:
            f1 = tuple(int(v) for v in rng.integers(0, 2, size=2))
            f2 = tuple(int(v) for v in rng.integers(0, 2, size=2))
            vals = np.zeros((2, 2, 2, 2))
            for i1 in (0, 1):
                for i2 in (0, 1):
                    vals[f1[i1], f2[i2], i1, i2] = 1.0
            kernel = ConditionalPmf(
                (Alphabet("x1", 2), Alphabet("x2", 2)),
                (Alphabet("i1", 2), Alphabet("i2", 2)),
                vals,
            )
            boxes.append(BipartiteBox(kernel))
    weights = rng.dirichlet(np.ones(components))
    return mix(boxes, list(weights))


def random_bc_box(rng: np.random.Generator, nontrivial: bool | None = None) -> TripartiteBcBox:
    """Mixture of local deterministic BC vertices, optionally input passing."""
    if nontrivial is None:
        nontrivial = rng.random() < 0.5
    boxes = []
    for _ in range(3):
        cx = int(rng.integers(0, 2))
        h1 = _random_decoder_table(rng, 2, 2)
        h2 = _random_decoder_table(rng, 2, 2)
        boxes.append(
            make_product_box(
                [
                    deterministic_part("x", "i", 2, (cx, cx)),
                    deterministic_part("j1", "y1", 2, h1),
                    deterministic_part("j2", "y2", 2, h2),
                ],
                "bc",
            )
        )
    weights = rng.dirichlet(np.ones(3))
    box = mix(boxes, list(weights))
    if not nontrivial:
        return box
    passing = make_product_box(
        [
            deterministic_part("x", "i", 2, (0, 1)),
            deterministic_part("j1", "y1", 2, _random_decoder_table(rng, 2, 2)),
            deterministic_part("j2", "y2", 2, _random_decoder_table(rng, 2, 2)),
        ],
        "bc",
    )
    w = float(rng.uniform(STRONG_WEIGHT_FLOOR, 0.95))
    return mix([passing, box], [w, 1.0 - w])


# ----------------------------------------------------------------------
# planted signaling boxes (negative controls)
# ----------------------------------------------------------------------

def _uniform_part(out_name: str, in_name: str, out_size: int, in_size: int) -> ConditionalPmf:
    vals = np.full((out_size, in_size), 1.0 / out_size)
    return ConditionalPmf((Alphabet(out_name, out_size),), (Alphabet(in_name, in_size),), vals)


def signaling_bipartite_box(family: str) -> BipartiteBox:
    """Copy construction violating exactly one bipartite family.

    ``NS-prob1``: x2 copies i1; ``NS-prob2``: x1 copies i2.
    """
    vals = np.zeros((2, 2, 2, 2))
    for i1 in (0, 1):
        for i2 in (0, 1):
            for x_free in (0, 1):
                if family == "NS-prob1":
                    vals[x_free, i1, i1, i2] = 0.5  # x2 := i1, x1 uniform
                elif family == "NS-prob2":
                    vals[i2, x_free, i1, i2] = 0.5  # x1 := i2, x2 uniform
                else:
                    raise ValueError(f"unknown bipartite family {family!r}")
    kernel = ConditionalPmf(
        (Alphabet("x1", 2), Alphabet("x2", 2)),
        (Alphabet("i1", 2), Alphabet("i2", 2)),
        vals,
    )
    return BipartiteBox(kernel)


def signaling_mac_box(family: str, y_size: int = 2, j_size: int = 2) -> TripartiteMacBox:
    """Copy construction violating exactly one MAC family.

    ``NS1``: j copies i1; ``NS2``: j copies i2; ``NS3``: x1 copies y.
    """
    vals = np.zeros((2, 2, j_size, 2, 2, y_size))
    for i1 in (0, 1):
        for i2 in (0, 1):
            for y in range(y_size):
                if family == "NS1":
                    vals[:, :, i1 % j_size, i1, i2, y] = 0.25
                elif family == "NS2":
                    vals[:, :, i2 % j_size, i1, i2, y] = 0.25
                elif family == "NS3":
                    for x2 in (0, 1):
                        vals[y % 2, x2, :, i1, i2, y] = 0.5 / j_size
                else:
                    raise ValueError(f"unknown MAC family {family!r}")
    kernel = ConditionalPmf(
        (Alphabet("x1", 2), Alphabet("x2", 2), Alphabet("j", j_size)),
        (Alphabet("i1", 2), Alphabet("i2", 2), Alphabet("y", y_size)),
        vals,
    )
    return TripartiteMacBox(kernel)


def signaling_bc_box(family: str) -> TripartiteBcBox:
    """Copy construction violating exactly one BC family.

    ``NS1-BC``: j1 copies i; ``NS2-BC``: x copies y1; ``NS3-BC``: j1
    copies y2.
    """
    vals = np.zeros((2, 2, 2, 2, 2, 2))
    for i in (0, 1):
        for y1 in (0, 1):
            for y2 in (0, 1):
                if family == "NS1-BC":
                    vals[:, i, :, i, y1, y2] = 0.25
                elif family == "NS2-BC":
                    vals[y1, :, :, i, y1, y2] = 0.25
                elif family == "NS3-BC":
                    vals[:, y2, :, i, y1, y2] = 0.25
                else:
                    raise ValueError(f"unknown BC family {family!r}")
    kernel = ConditionalPmf(
        (Alphabet("x", 2), Alphabet("j1", 2), Alphabet("j2", 2)),
        (Alphabet("i", 2), Alphabet("y1", 2), Alphabet("y2", 2)),
        vals,
    )
    return TripartiteBcBox(kernel)


def contaminated_mixture(rng: np.random.Generator, clean: AnyBox, planted: AnyBox) -> AnyBox:
    """Mix a signaling component into a clean box at visible weight."""
    w = float(rng.uniform(0.05, 0.4))
    return mix([planted, clean], [w, 1.0 - w])


def random_product_mac_box(rng: np.random.Generator, y_size: int = 2, j_size: int = 2) -> TripartiteMacBox:
    """Fully random local product box (stochastic parts, always NS)."""
    def random_part(out_name, in_name, out_size, in_size):
        raw = rng.random((out_size, in_size)) + 0.05
        return ConditionalPmf(
            (Alphabet(out_name, out_size),),
            (Alphabet(in_name, in_size),),
            raw / raw.sum(axis=0),
        )

    return make_product_box(
        [
            random_part("x1", "i1", 2, 2),
            random_part("x2", "i2", 2, 2),
            random_part("j", "y", j_size, y_size),
        ],
        "mac",
    )
