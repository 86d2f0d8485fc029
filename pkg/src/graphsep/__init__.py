"""Bipartite quantum states of layered graphs and their separability."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    EmptyGraphError,
    GraphSepError,
    InvalidGraph,
    NotAUnionGraph,
    ParseError,
    PreconditionViolated,
    PsdCertificateFailure,
    ScaffoldNotTheoremMain,
    TooLarge,
    VertexCountMismatch,
)
from .graph import (  # noqa: E402
    BlockView,
    LayeredGraph,
    adjacency_matrix,
    block_view,
    degree_matrix,
    degree_vector,
    gtpt,
    incidence_interchange,
    internally_related,
    is_degree_symmetric,
    is_partially_symmetric,
    partial_degree,
    relabel,
)
from .linalg import Spectrum, eig_sym, is_psd, kron, partial_transpose  # noqa: E402
from .quantum import DensityMatrix, WernerSpec, is_pure, rho_l, rho_q, werner_density, werner_graph  # noqa: E402
from .separability import (  # noqa: E402
    PptVerdict,
    SeparableDecomposition,
    Separability,
    decompose_mg,
    decompose_theorem_main,
    degree_criterion,
    gtpt_separability_transfer,
    ppt_test,
    theorem_main_check,
)
from .constructions import BowtieResult, bowtie, decompose_bowtie, family, find_decomposition, m_union  # noqa: E402
from .classify import (  # noqa: E402
    ClassVerdict,
    GeneratorCertificate,
    GraphClass,
    Prediction,
    classify,
    find_generator,
    interchange_asymmetry_predict,
)
