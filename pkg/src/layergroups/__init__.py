"""Bunches of layer groups and the odd/even involutive FL_e-chains they encode."""
from .bunch import Bunch, LayerClass, Parity, bunch_equal, bunch_parity, bunch_validate, relabel
from .chain import (
    ChainElement,
    chain_compare,
    chain_constants,
    chain_mul,
    chain_negate,
    chain_residuum,
    format_chain_element,
    mutated,
    parse_chain_element,
    rho,
)
from .decompose import decompose_chain, reconstruct_bunch, verify_decomposition_sampled
from .errors import (
    DomainError,
    InfiniteChain,
    InputContradiction,
    LayerGroupsError,
    NoClassJ,
    NotAHom,
    NotResiduated,
    ParseError,
    SizeGuard,
)
from .finite_chain import (
    FiniteChain,
    fc_enumerate_homs,
    fc_isomorphic,
    fc_materialize,
    fc_validate,
    generate_sugihara,
)
from .hom import BunchHom, bh_apply, bh_compose, bh_extend, bh_identity, bh_restrict, bh_validate
from .ogroup import RATIONAL, TRIVIAL, IntLex, OGroupHomDesc, SubgroupSpec
from .oracle import (
    SampleConfig,
    check_axioms,
    check_cover_lemma,
    check_lemma_equivalences,
    check_roundtrip_finite,
)
from .report import Status, ValidationReport

__version__ = "0.1.0"
