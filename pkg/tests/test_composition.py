"""Composition and leakage tests: frozen view distributions, secrecy
certificates, amplification arithmetic, and the information identities
the leakage analysis relies on."""

import itertools
import math

import numpy as np
import pytest

from nsotkit import sampling as smp
from nsotkit.boxes import (
    classify_triviality_mac,
    lift_sender_box_mac,
    make_pr_box,
    make_product_box,
)
from nsotkit.channels import (
    binary_adder_mac,
    binary_symmetric_channel,
    bsc_pair_mac,
    identity_dmc,
    product_bc,
)
from nsotkit.composition import (
    amplification_analysis,
    binary_hypothesis_stats,
    bob_view_mac,
    compose_bc,
    compose_mac,
    decoding_law,
    encoder_secrecy_violation,
    leakage_mi,
    receiver_views_bc,
)
from nsotkit.errors import DomainError, StructureError
from nsotkit.probability import Alphabet, ConditionalPmf
from nsotkit.sampling import deterministic_part


def h2(p):
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


IDENT3 = deterministic_part("j", "y", 3, (0, 1, 2))


def identity_mac_box():
    return make_product_box(
        [
            deterministic_part("x1", "i1", 2, (0, 1)),
            deterministic_part("x2", "i2", 2, (0, 1)),
            IDENT3,
        ],
        "mac",
    )


def uniform_product_box():
    return make_product_box(
        [
            ConditionalPmf((Alphabet("x1", 2),), (Alphabet("i1", 2),), np.full((2, 2), 0.5)),
            ConditionalPmf((Alphabet("x2", 2),), (Alphabet("i2", 2),), np.full((2, 2), 0.5)),
            IDENT3,
        ],
        "mac",
    )


# ----------------------------------------------------------------------
# compose_mac
# ----------------------------------------------------------------------

def test_identity_chain_is_deterministic():
    system = compose_mac(identity_mac_box(), binary_adder_mac())
    joint = system.joints[(0, 1)]
    # single atom: x1=0, x2=1, y=1, j=1
    assert joint.values[0, 1, 1, 1] == pytest.approx(1.0)
    assert float(joint.values.sum()) == pytest.approx(1.0)


def test_uniform_product_gives_binomial_y():
    system = compose_mac(uniform_product_box(), binary_adder_mac())
    for inputs in system.sender_input_tuples():
        y_marg = system.joints[inputs].marginalize(("y",)).values
        assert np.allclose(y_marg, [0.25, 0.5, 0.25])


def test_pr_lift_y_marginals():
    # oracle (enumerating the two PR outcomes per input): correlated inputs
    # give y in {0, 2}, the (1,1) input anticorrelates and forces y = 1
    box = lift_sender_box_mac(make_pr_box(), IDENT3)
    system = compose_mac(box, binary_adder_mac())
    assert np.allclose(system.joints[(0, 0)].marginalize(("y",)).values, [0.5, 0.0, 0.5])
    assert np.allclose(system.joints[(1, 1)].marginalize(("y",)).values, [0.0, 1.0, 0.0])


def test_compose_rejects_mismatch_and_signaling():
    with pytest.raises(StructureError):
        compose_mac(identity_mac_box(), bsc_pair_mac(0.1))  # y sizes 3 vs 4
    bad = smp.signaling_mac_box("NS1", y_size=3)
    with pytest.raises(DomainError):
        compose_mac(bad, binary_adder_mac())


# ----------------------------------------------------------------------
# views and decoding law
# ----------------------------------------------------------------------

def test_bob_view_identity_chain():
    system = compose_mac(identity_mac_box(), binary_adder_mac())
    view = bob_view_mac(system)[(0, 1)]
    assert view.names == ("y", "j")
    assert view.values[1, 1] == pytest.approx(1.0)


def test_trivial_views_identical():
    system = compose_mac(uniform_product_box(), binary_adder_mac())
    views = bob_view_mac(system)
    base = views[(0, 0)].values
    for inputs, view in views.items():
        assert np.allclose(view.values, base)


def test_pr_lift_views_differ():
    box = lift_sender_box_mac(make_pr_box(), IDENT3)
    views = bob_view_mac(compose_mac(box, binary_adder_mac()))
    assert not np.allclose(views[(0, 0)].values, views[(1, 1)].values)


def test_decoding_law_identity_box():
    system = compose_mac(identity_mac_box(), binary_adder_mac())
    law = decoding_law(system, (0, 1, 1, 0, 1))
    assert law.values[1] == pytest.approx(1.0)  # j = y


def test_decoding_law_product_box_input_independent():
    # for a product box the law depends only on y, never on (i1, i2, x1, x2)
    box = uniform_product_box()
    system = compose_mac(box, binary_adder_mac())
    for y in range(3):
        group = [
            decoding_law(system, (i1, i2, y, x1, x2)).values
            for i1, i2, x1, x2 in itertools.product(range(2), repeat=4)
        ]
        for law in group:
            assert np.allclose(law, group[0])


def test_decoding_law_matches_decoder_and_recomposes():
    decoder = deterministic_part("j", "y", 3, (2, 0, 1))
    box = lift_sender_box_mac(make_pr_box(), decoder)
    system = compose_mac(box, binary_adder_mac())
    vals = box.box.values
    for i1, i2, y in itertools.product(range(2), range(2), range(3)):
        for x1, x2 in itertools.product(range(2), repeat=2):
            sender_p = float(vals[x1, x2, :, i1, i2, y].sum())
            if sender_p <= 1e-9:
                continue
            law = decoding_law(system, (i1, i2, y, x1, x2))
            assert np.allclose(law.values, decoder.values[:, y])
            # recomposition reproduces the box entry
            recomposed = law.values * sender_p
            assert np.allclose(recomposed, vals[x1, x2, :, i1, i2, y], atol=1e-9)


def test_decoding_law_zero_marginal_raises():
    system = compose_mac(identity_mac_box(), binary_adder_mac())
    with pytest.raises(DomainError):
        decoding_law(system, (0, 1, 1, 1, 1))  # x1=1 impossible at i1=0


# ----------------------------------------------------------------------
# compose_bc
# ----------------------------------------------------------------------

def test_bc_identity_chain():
    box = make_product_box(
        [
            deterministic_part("x", "i", 2, (0, 1)),
            deterministic_part("j1", "y1", 2, (0, 1)),
            deterministic_part("j2", "y2", 2, (0, 1)),
        ],
        "bc",
    )
    system = compose_bc(box, product_bc(identity_dmc(), identity_dmc()))
    joint = system.joints[(1,)]
    assert joint.values[1, 1, 1, 1, 1] == pytest.approx(1.0)
    views = receiver_views_bc(system, 1)
    assert views[(1,)].values[1, 1] == pytest.approx(1.0)
    report = encoder_secrecy_violation(system)
    assert report.epsilon == pytest.approx(1.0)  # x := i reveals i to receiver 1


def test_bc_product_box_views_input_independent():
    box = make_product_box(
        [
            ConditionalPmf((Alphabet("x", 2),), (Alphabet("i", 2),), np.full((2, 2), 0.5)),
            deterministic_part("j1", "y1", 2, (0, 1)),
            deterministic_part("j2", "y2", 2, (0, 1)),
        ],
        "bc",
    )
    chan = product_bc(binary_symmetric_channel(0.1), binary_symmetric_channel(0.1))
    system = compose_bc(box, chan)
    report = encoder_secrecy_violation(system)
    assert report.universal_secrecy
    assert report.epsilon == pytest.approx(0.0, abs=1e-12)


# ----------------------------------------------------------------------
# encoder secrecy
# ----------------------------------------------------------------------

def test_trivial_box_universal_secrecy():
    for chan in (binary_adder_mac(),):
        report = encoder_secrecy_violation(compose_mac(uniform_product_box(), chan))
        assert report.universal_secrecy
        assert report.epsilon == 0.0


def test_identity_box_full_leakage():
    report = encoder_secrecy_violation(
        compose_mac(identity_mac_box(), binary_adder_mac())
    )
    assert report.epsilon == pytest.approx(1.0)
    assert not report.universal_secrecy


def test_pr_lift_epsilon_and_argmax():
    box = lift_sender_box_mac(make_pr_box(), IDENT3)
    report = encoder_secrecy_violation(compose_mac(box, binary_adder_mac()))
    # views {1/2, 0, 1/2} vs {0, 1, 0} have disjoint support
    assert report.epsilon == pytest.approx(1.0)
    assert report.argmax_pair == ((0, 0), (1, 1))


@pytest.mark.parametrize("seed", range(20))
def test_secrecy_iff_trivial_on_sampled_boxes(seed):
    rng = np.random.default_rng(900 + seed)
    box = smp.random_mac_box(rng, y_size=3, j_size=2)
    verdict = classify_triviality_mac(box)
    report = encoder_secrecy_violation(compose_mac(box, binary_adder_mac()))
    assert report.universal_secrecy == verdict.trivial
    if not verdict.trivial:
        assert report.epsilon > 1e-9  # nontrivial boxes are always distinguishable


# ----------------------------------------------------------------------
# amplification
# ----------------------------------------------------------------------

def test_amplification_rows():
    curve = amplification_analysis(1.0, 1)
    row = curve.rows[0]
    assert (row.tv, row.pe, row.correct, row.mi_bits) == (1.0, 0.0, 1.0, 1.0)

    curve = amplification_analysis(0.5, 2)
    row = curve.rows[1]
    assert row.tv == pytest.approx(0.75)
    assert row.pe == pytest.approx(0.125)
    assert row.mi_bits == pytest.approx(1 - h2(0.125), abs=1e-12)
    assert row.mi_bits == pytest.approx(0.4564, abs=1e-4)


def test_amplification_internal_consistency_and_monotone():
    curve = amplification_analysis(0.37, 64)
    prev = -1.0
    for row in curve.rows:
        assert row.tv == pytest.approx(1 - (1 - 0.37) ** row.n, abs=1e-12)
        assert row.pe == pytest.approx(0.5 * (1 - row.tv), abs=1e-12)
        assert row.correct == pytest.approx(1 - row.pe, abs=1e-12)
        assert row.mi_bits == pytest.approx(1 - h2(row.pe), abs=1e-12)
        assert row.mi_bits >= prev - 1e-12
        prev = row.mi_bits
    assert curve.rows[-1].mi_bits > 0.99


def test_amplification_first_n_matches_scan():
    eps = 0.5
    curve = amplification_analysis(eps, 64)
    # independent scan of the closed form
    expected = next(
        n for n in range(1, 65) if h2(0.5 * (1 - eps) ** n) <= 0.01
    )
    assert curve.first_n_reaching(0.99) == expected


def test_amplification_rejects_zero_epsilon():
    with pytest.raises(DomainError):
        amplification_analysis(0.0, 4)


# ----------------------------------------------------------------------
# leakage mutual information
# ----------------------------------------------------------------------

def test_leakage_mi_trivial_box_is_zero():
    system = compose_mac(uniform_product_box(), binary_adder_mac())
    enc = np.array([[0, 0], [1, 1]])
    assert leakage_mi(system, (enc, enc), (0, 0)) == pytest.approx(0.0, abs=1e-12)


def test_leakage_mi_identity_box_unselected_files():
    # encoders feed the unselected file (selection fixed at (0, 0), so the
    # unselected files are m11, m21); oracle by hand: y = m11 + m21 leaks
    # I(M11,M21 ; Y) = H(Y) - H(Y|M) = 1.5 bits, and 1 bit per sender
    # given the other.
    system = compose_mac(identity_mac_box(), binary_adder_mac())
    enc = np.array([[0, 1], [0, 1]])  # i = m_1 (the unselected file at z=0)
    val = leakage_mi(system, (enc, enc), (0, 0))
    assert val == pytest.approx(1.5, abs=1e-9)


def test_leakage_mi_respects_message_space_limit():
    from nsotkit.errors import ResourceLimitError

    system = compose_mac(identity_mac_box(), binary_adder_mac())
    big = np.zeros((8, 8), dtype=np.int64)
    with pytest.raises(ResourceLimitError):
        leakage_mi(system, (big, big), (0, 0))


def test_binary_hypothesis_reduction_data_processing():
    # I(B; view) for two message tuples differing in one unselected file
    # never exceeds the full unselected-file leakage
    system = compose_mac(identity_mac_box(), binary_adder_mac())
    enc = np.array([[0, 1], [0, 1]])
    full = leakage_mi(system, (enc, enc), (0, 0))
    views = bob_view_mac(system)
    tv, pe, mi = binary_hypothesis_stats(views[(0, 0)], views[(1, 0)])
    assert mi <= full + 1e-12
    assert tv == pytest.approx(1.0)
    assert mi == pytest.approx(1.0)


def test_binary_hypothesis_stats_general_inequality():
    box = lift_sender_box_mac(make_pr_box(), IDENT3)
    views = bob_view_mac(compose_mac(box, binary_adder_mac()))
    tv, pe, mi = binary_hypothesis_stats(views[(0, 0)], views[(0, 1)])
    assert tv == pytest.approx(0.0, abs=1e-12)
    tv, pe, mi = binary_hypothesis_stats(views[(0, 0)], views[(1, 1)])
    assert tv == pytest.approx(1.0)
    assert mi == pytest.approx(1.0)
    assert mi >= 1.0 - h2(pe) - 1e-12
