"""Entanglement witness toolkit: spectral analysis, construction and
verification of block-positive operators on bipartite systems."""

from .blockpos import (
    BlockPositivityVerdict,
    OptResult,
    is_block_positive,
    product_expectation_max,
    product_expectation_min,
    product_vector_in_subspace,
    zero_pattern_check,
)
from .linalg import (
    BipartiteOperator,
    Spectrum,
    eig_hermitian,
    embed_operator,
    inner_product_lower_bound,
    kron,
    majorizes,
    negativity,
    operator_from_json,
    operator_to_json,
    partial_transpose,
    read_operator,
    svd,
    write_operator,
)
from .states import (
    PureState,
    as_2xn_test,
    canonical_state,
    haar_unitary,
    is_in_maximal_ball,
    is_ppt,
    max_entangled,
    pt_spectrum_pure,
    pure_from_schmidt,
    random_state,
    tiles_upb_state,
    tiles_upb_vectors,
)
from .verify import SuiteReport, emit_report, run_suite
from .witness import (
    DetectionCertificate,
    FamilyParams,
    LocalFilter,
    MirrorResult,
    NdewParams,
    SpectrumReport,
    Witness,
    boost_witness,
    detect_npt,
    local_filter_to_max_entangled,
    mirror,
    ndew_from_edge,
    pure_pt_witness,
    sample_dew,
    spectral_report,
    w_family,
)

__version__ = "0.1.0"
