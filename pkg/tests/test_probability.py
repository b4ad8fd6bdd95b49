"""Probability-core tests: frozen oracle values plus metric/identity
properties on random tensors."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nsotkit.errors import DomainError, StructureError
from nsotkit.probability import (
    Alphabet,
    ConditionalPmf,
    JointPmf,
    binary_entropy,
    entropy,
    fano_bound,
    mutual_information,
    point_mass,
    tv_distance,
    tv_tensorized,
    uniform_dist,
)

A2 = Alphabet("a", 2)
B2 = Alphabet("b", 2)


def h2(p):
    """Independent binary entropy used as a test oracle."""
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def random_joint(rng, sizes, names=None):
    names = names or [f"v{k}" for k in range(len(sizes))]
    vals = rng.dirichlet(np.ones(int(np.prod(sizes)))).reshape(sizes)
    return JointPmf(tuple(Alphabet(n, s) for n, s in zip(names, sizes)), vals)


# ----------------------------------------------------------------------
# marginalize / condition
# ----------------------------------------------------------------------

def test_marginalize_uniform_keeps_uniform():
    p = uniform_dist((A2, B2))
    m = p.marginalize(("a",))
    assert np.allclose(m.values, [0.5, 0.5])


def test_marginalize_point_mass():
    p = point_mass((A2, B2), (0, 1))
    m = p.marginalize(("b",))
    assert np.allclose(m.values, [0.0, 1.0])


def test_marginalize_pr_joint_gives_uniform_bit():
    # oracle: enumerate the 16 PR-box entries under uniform inputs and sum
    vals = np.zeros((2, 2, 2, 2))  # (x1, x2, i1, i2)
    for i1, i2, x1 in itertools.product((0, 1), repeat=3):
        x2 = x1 ^ (i1 & i2)
        vals[x1, x2, i1, i2] = 0.5 * 0.25
    expected_x1 = [0.0, 0.0]
    for x1, x2, i1, i2 in itertools.product((0, 1), repeat=4):
        expected_x1[x1] += vals[x1, x2, i1, i2]
    assert expected_x1 == [0.5, 0.5]

    joint = JointPmf(
        (Alphabet("x1", 2), Alphabet("x2", 2), Alphabet("i1", 2), Alphabet("i2", 2)),
        vals,
    )
    assert np.allclose(joint.marginalize(("x1",)).values, [0.5, 0.5])


def test_marginalize_unknown_axis_is_structural():
    p = uniform_dist((A2, B2))
    with pytest.raises(StructureError):
        p.marginalize(("nope",))


def test_condition_independent_bits():
    p = uniform_dist((A2, B2))
    c = p.condition({"a": 0})
    assert np.allclose(c.values, [0.5, 0.5])


def test_condition_correlated_bits():
    vals = np.array([[0.5, 0.0], [0.0, 0.5]])
    p = JointPmf((A2, B2), vals)
    c = p.condition({"a": 1})
    assert np.allclose(c.values, [0.0, 1.0])


def test_condition_adder_output():
    # oracle: enumerate the 4 equiprobable input pairs through y = x1 + x2
    vals = np.zeros((2, 2, 3))  # (x1, x2, y)
    for x1, x2 in itertools.product((0, 1), repeat=2):
        vals[x1, x2, x1 + x2] = 0.25
    p = JointPmf((Alphabet("x1", 2), Alphabet("x2", 2), Alphabet("y", 3)), vals)
    c = p.condition({"y": 1})
    assert np.allclose(c.values, [[0.0, 0.5], [0.5, 0.0]])


def test_condition_zero_probability_event_reports_mass():
    p = point_mass((A2, B2), (0, 0))
    with pytest.raises(DomainError) as err:
        p.condition({"a": 1})
    assert "0" in str(err.value)  # the event's mass is carried in the message


# ----------------------------------------------------------------------
# tv / entropy / mutual information
# ----------------------------------------------------------------------

def test_tv_examples():
    p = uniform_dist((A2,))
    q = JointPmf((A2,), np.array([0.75, 0.25]))
    assert tv_distance(p, p) == 0.0
    assert tv_distance(point_mass((A2,), (0,)), point_mass((A2,), (1,))) == 1.0
    assert tv_distance(p, q) == pytest.approx(0.25, abs=1e-15)


def test_tv_axis_mismatch():
    with pytest.raises(StructureError):
        tv_distance(uniform_dist((A2,)), uniform_dist((Alphabet("c", 2),)))


def test_entropy_examples():
    assert entropy(point_mass((A2,), (0,))) == 0.0
    assert entropy(uniform_dist((A2,))) == pytest.approx(1.0, abs=1e-12)
    assert entropy(uniform_dist((Alphabet("o", 8),))) == pytest.approx(3.0, abs=1e-12)


def test_mi_independent_and_copy():
    indep = uniform_dist((A2, B2))
    assert mutual_information(indep, ("a",), ("b",)) == pytest.approx(0.0, abs=1e-12)
    copy = JointPmf((A2, B2), np.array([[0.5, 0.0], [0.0, 0.5]]))
    assert mutual_information(copy, ("a",), ("b",)) == pytest.approx(1.0, abs=1e-12)


def test_mi_pr_box_no_signaling():
    # oracle: brute-force I(I1;X2|I2) over the 16-entry PR joint
    vals = np.zeros((2, 2, 2, 2))  # (i1, i2, x1, x2)
    for i1, i2, x1 in itertools.product((0, 1), repeat=3):
        vals[i1, i2, x1, x1 ^ (i1 & i2)] = 0.125

    def H(axes):
        marg = vals.sum(axis=tuple(k for k in range(4) if k not in axes))
        return -sum(p * math.log2(p) for p in marg.ravel() if p > 0)

    # I(I1;X2|I2) = H(I1,I2) + H(X2,I2) - H(I1,I2,X2) - H(I2)
    oracle = H((0, 1)) + H((1, 3)) - H((0, 1, 3)) - H((1,))
    assert abs(oracle) < 1e-12

    joint = JointPmf(
        (Alphabet("i1", 2), Alphabet("i2", 2), Alphabet("x1", 2), Alphabet("x2", 2)),
        vals,
    )
    assert joint.mutual_information(("i1",), ("x2",), ("i2",)) == pytest.approx(
        0.0, abs=1e-12
    )


def test_mi_overlapping_groups_rejected():
    p = uniform_dist((A2, B2))
    with pytest.raises(StructureError):
        p.mutual_information(("a",), ("a",))


# ----------------------------------------------------------------------
# scalar helpers
# ----------------------------------------------------------------------

def test_binary_entropy_examples():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)
    assert binary_entropy(1.0) == 0.0
    with pytest.raises(DomainError):
        binary_entropy(1.5)


def test_tv_tensorized_examples():
    assert tv_tensorized(1.0, 7) == 1.0
    assert tv_tensorized(0.0, 3) == 0.0
    assert tv_tensorized(0.1, 10) == pytest.approx(0.6513215599, abs=1e-9)
    with pytest.raises(DomainError):
        tv_tensorized(-0.1, 3)
    with pytest.raises(DomainError):
        tv_tensorized(0.5, 0)


def test_fano_bound_examples():
    assert fano_bound(0.0, 5) == 0.0
    assert fano_bound(0.5, 1) == pytest.approx(1.5, abs=1e-15)
    assert fano_bound(0.01, 8) == pytest.approx(h2(0.01) + 0.08, abs=1e-12)
    assert fano_bound(0.01, 8) == pytest.approx(0.16079, abs=1e-4)
    with pytest.raises(DomainError):
        fano_bound(0.5, -1)


# ----------------------------------------------------------------------
# invariants
# ----------------------------------------------------------------------

@pytest.mark.parametrize("seed", range(10))
def test_marginalize_preserves_mass(seed):
    rng = np.random.default_rng(seed)
    p = random_joint(rng, (2, 3, 2))
    m = p.marginalize(("v0", "v2"))
    assert abs(float(m.values.sum()) - 1.0) < 1e-9 * m.values.size


@pytest.mark.parametrize("seed", range(10))
def test_entropy_chain_rule_via_conditioning(seed):
    rng = np.random.default_rng(100 + seed)
    p = random_joint(rng, (3, 4), names=("a", "b"))
    h_joint = p.entropy()
    marg_a = p.marginalize(("a",))
    h_chain = marg_a.entropy()
    for a_sym in range(3):
        pa = float(marg_a.values[a_sym])
        if pa > 1e-12:
            h_chain += pa * p.condition({"a": a_sym}).entropy()
    assert h_joint == pytest.approx(h_chain, abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_mi_zero_for_constructed_conditional_independence(seed):
    rng = np.random.default_rng(200 + seed)
    # build p(c) p(a|c) p(b|c): I(A;B|C) must be exactly 0
    pc = rng.dirichlet(np.ones(3))
    pa_c = rng.dirichlet(np.ones(2), size=3)  # (c, a)
    pb_c = rng.dirichlet(np.ones(4), size=3)  # (c, b)
    vals = np.einsum("c,ca,cb->abc", pc, pa_c, pb_c)
    p = JointPmf((Alphabet("a", 2), Alphabet("b", 4), Alphabet("c", 3)), vals)
    assert p.mutual_information(("a",), ("b",), ("c",)) < 1e-12


@st.composite
def small_pmfs(draw, size=4):
    raw = draw(
        st.lists(
            st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
            min_size=size,
            max_size=size,
        ).filter(lambda xs: sum(xs) > 1e-3)
    )
    arr = np.array(raw)
    return arr / arr.sum()


@settings(deadline=None, max_examples=60)
@given(small_pmfs(), small_pmfs(), small_pmfs())
def test_tv_metric_axioms(p_vals, q_vals, r_vals):
    ax = (Alphabet("s", 4),)
    p, q, r = (JointPmf(ax, v) for v in (p_vals, q_vals, r_vals))
    assert tv_distance(p, q) == pytest.approx(tv_distance(q, p), abs=1e-12)
    assert tv_distance(p, p) == 0.0
    assert tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + 1e-12
    assert -1e-12 <= tv_distance(p, q) <= 1.0 + 1e-12


@settings(deadline=None, max_examples=60)
@given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
def test_binary_entropy_symmetry_and_bounds(e):
    assert binary_entropy(e) == pytest.approx(binary_entropy(1.0 - e), abs=1e-12)
    assert 0.0 <= binary_entropy(e) <= 1.0 + 1e-12


# ----------------------------------------------------------------------
# tensorization: exact family vs upper bound in general
# ----------------------------------------------------------------------

def brute_product_tv(p, q, n):
    pn, qn = p, q
    for _ in range(n - 1):
        pn = np.multiply.outer(pn, p).ravel()
        qn = np.multiply.outer(qn, q).ravel()
    return 0.5 * float(np.abs(pn - qn).sum())


@pytest.mark.parametrize("eps", [0.05, 0.2, 0.37, 0.5, 0.8, 1.0])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tensorization_exact_for_disjoint_extra_family(eps, n):
    # binary pair with a common part plus a disjoint extra: exactly tensorizes
    p = np.array([1.0, 0.0])
    q = np.array([1.0 - eps, eps])
    assert brute_product_tv(p, q, n) == pytest.approx(tv_tensorized(eps, n), abs=1e-9)


@pytest.mark.parametrize("seed", range(12))
def test_tensorization_is_an_upper_bound_in_general(seed):
    rng = np.random.default_rng(300 + seed)
    p = rng.dirichlet(np.ones(3))
    q = rng.dirichlet(np.ones(3))
    eps = 0.5 * float(np.abs(p - q).sum())
    for n in (2, 3, 4):
        assert brute_product_tv(p, q, n) <= tv_tensorized(eps, n) + 1e-12


def test_general_binary_pair_is_strictly_below_closed_form():
    # the closed form is not the product TV for overlapping binary pairs
    p = np.array([0.5, 0.5])
    q = np.array([0.75, 0.25])
    assert brute_product_tv(p, q, 2) == pytest.approx(0.3125, abs=1e-12)
    assert tv_tensorized(0.25, 2) == pytest.approx(0.4375, abs=1e-12)


# ----------------------------------------------------------------------
# hypothesis-testing identity (two-valued likelihood family)
# ----------------------------------------------------------------------

def bsc_refinement_pair(rng, half_size=3):
    """Random binary-hypothesis pair whose likelihood ratio is two-valued,
    the family where 1 - H2(pe) equals the mutual information exactly."""
    c = float(rng.uniform(0.05, 0.95))
    w_s = rng.dirichlet(np.ones(half_size)) * 0.5
    w_t = rng.dirichlet(np.ones(half_size)) * 0.5
    q0 = np.concatenate([2 * c * w_s, 2 * (1 - c) * w_t])
    q1 = np.concatenate([2 * (1 - c) * w_s, 2 * c * w_t])
    return q0, q1


@pytest.mark.parametrize("seed", range(15))
def test_hypothesis_testing_identity_on_symmetric_family(seed):
    rng = np.random.default_rng(400 + seed)
    q0, q1 = bsc_refinement_pair(rng)
    tv = 0.5 * float(np.abs(q0 - q1).sum())
    pe = 0.5 * (1.0 - tv)
    joint = np.stack([0.5 * q0, 0.5 * q1])
    jp = JointPmf((Alphabet("hyp", 2), Alphabet("view", q0.size)), joint)
    mi = jp.mutual_information(("hyp",), ("view",))
    assert mi == pytest.approx(1.0 - h2(pe), abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_hypothesis_testing_fano_lower_bound_in_general(seed):
    rng = np.random.default_rng(500 + seed)
    q0 = rng.dirichlet(np.ones(4))
    q1 = rng.dirichlet(np.ones(4))
    tv = 0.5 * float(np.abs(q0 - q1).sum())
    pe = 0.5 * (1.0 - tv)
    joint = np.stack([0.5 * q0, 0.5 * q1])
    jp = JointPmf((Alphabet("hyp", 2), Alphabet("view", 4)), joint)
    mi = jp.mutual_information(("hyp",), ("view",))
    assert mi >= 1.0 - h2(pe) - 1e-12


# ----------------------------------------------------------------------
# structure validation
# ----------------------------------------------------------------------

def test_conditional_pmf_validation():
    with pytest.raises(StructureError):
        ConditionalPmf((A2,), (B2,), np.array([[0.7, 0.2], [0.2, 0.2]]))
    with pytest.raises(StructureError):
        ConditionalPmf((A2,), (B2,), np.array([[1.2, 0.5], [-0.2, 0.5]]))
    ok = ConditionalPmf((A2,), (B2,), np.array([[0.7, 0.2], [0.3, 0.8]]))
    assert np.allclose(ok.given(1).values, [0.2, 0.8])


def test_joint_pmf_validation_and_transpose():
    with pytest.raises(StructureError):
        JointPmf((A2, B2), np.full((2, 2), 0.3))
    with pytest.raises(StructureError):
        JointPmf((A2, Alphabet("a", 2)), np.full((2, 2), 0.25))  # duplicate names
    p = JointPmf((A2, B2), np.array([[0.1, 0.2], [0.3, 0.4]]))
    t = p.transpose(("b", "a"))
    assert t.names == ("b", "a")
    assert t.values[0, 1] == pytest.approx(0.3)


def test_values_are_immutable():
    p = uniform_dist((A2,))
    with pytest.raises(ValueError):
        p.values[0] = 0.9


def test_alphabet_validation():
    with pytest.raises(StructureError):
        Alphabet("bad", 0)
