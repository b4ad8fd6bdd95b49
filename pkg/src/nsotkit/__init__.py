"""nsotkit: exact certificates for non-signaling boxes, noisy channels,
and oblivious-transfer security at desk scale.

Everything is exact enumeration over small finite alphabets; no
sampling, no Monte Carlo.  See README.md for the command-line interface
and file formats.
"""

from ._kernels import BACKEND as kernel_backend
from .probability import (
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
from .boxes import (
    BipartiteBox,
    NsCheckReport,
    TripartiteBcBox,
    TripartiteMacBox,
    TrivialityVerdict,
    check_bipartite_ns,
    check_ns,
    check_ns_via_mi,
    check_tripartite_bc_ns,
    check_tripartite_mac_ns,
    classify_triviality_bc,
    classify_triviality_mac,
    lift_sender_box_mac,
    make_pr_box,
    make_product_box,
    mix,
    pr_family_box,
)
from .channels import (
    Channel,
    binary_adder_mac,
    binary_symmetric_channel,
    bsc_pair_mac,
    erasure_channel,
    identity_dmc,
    identity_pair_mac,
    product_bc,
)
from .composition import (
    AmplificationCurve,
    ComposedSystem,
    LeakageReport,
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

__version__ = "0.1.0"
