"""Correlations of the minimal three-party chain network and their
nonclassicality hierarchy: generators, membership oracles, inequality
evaluators, and a region classifier."""

from .corr import (
    Correlation,
    CorrelationError,
    FormatError,
    MINIMAL_SHAPE,
    S2Report,
    ScenarioShape,
    ShapeError,
    ValidationReport,
    check_s2,
    deserialize,
    from_flat,
    marginalize,
    mirror,
    mix,
    serialize,
    uniform,
    validate,
)
from .quantum import (
    ChainSetup,
    DensityState,
    PHI_PLUS,
    PSI_PLUS,
    Povm,
    WernerParams,
    apply_werner,
    born_chain,
    projective_binary_povm,
    pure_state,
    tensor,
)
from .generators import (
    DETERMINISTIC_STRATEGIES,
    FritzSide,
    LauandParams,
    MixtureParams,
    PostSelectionParams,
    es_chain_setup,
    gen_entanglement_swapping,
    gen_fritz,
    gen_local_test,
    gen_local_test_quantum,
    gen_mnn1,
    gen_mnn1_quantum,
    gen_mnn2,
    gen_post_selection_box,
    gen_pr_box,
    gen_random_classical,
    gen_random_degenerate,
    mnn2_chain_setup,
)
from .oracles import (
    ClassificationReport,
    OracleConfig,
    OracleInputError,
    OracleResult,
    RegionLabel,
    S1Mode,
    SeesawDecomposition,
    SquareInstance,
    UnpackedLp,
    classify,
    s0_seesaw_oracle,
    s0_square_oracle,
    s1_lp,
)
from .analysis import (
    BisectionConfig,
    BracketError,
    ChshValue,
    SweepRecord,
    chsh,
    critical_visibility,
    critical_visibility_bracket,
    fritz_chsh,
    mnn1_quantum_family,
    mnn2_family,
    mu_range,
    postselected_chsh,
    records_to_csv,
    records_to_json,
    sweep_records,
    theta_scan,
)

__version__ = "0.1.0"
