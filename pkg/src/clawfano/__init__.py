"""Binary matroids with no induced claw or Fano plane."""

from .critical import ChiResult, apex_partition, check_technical_lemma, chi, critical_number
from .errors import DimensionCapError, MatroidError, ProofViolation
from .gf2 import Flat, PointSet, closure, enumerate_flats, gaussian_binomial, hyperplane_from_dual
from .matroid import (
    DoublingStep,
    Matroid,
    SemidoublingStep,
    ag_circ,
    affine_geometry,
    bose_burton,
    doubling,
    empty,
    fano,
    format_matroid,
    independent,
    k5,
    p5,
    parse_matroid,
    projective_geometry,
    restrict,
    semidoubling,
    semidoubling_by_dual,
    twist_decompose,
    twist_doubling,
)
from .recognition import (
    canonical_form,
    find_claw_or_fano,
    find_induced_embedding,
    has_induced,
    is_claw_fano_free,
    is_isomorphic,
    is_k_even,
    recognize_affine_span,
    recognize_bose_burton,
    triangle_profile,
)
from .structure import (
    DecisionReport,
    StructureCertificate,
    check_k5_lemma,
    check_universality,
    chibound_witness,
    decompose_claw_fano_free,
    decompose_e3,
    gsfalse_family,
    recognize_ag_doubling_chain,
    replay,
)

__version__ = "0.1.0"
