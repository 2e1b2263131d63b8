"""Numerical core: Schatten quasi-norms, trigonometric polynomials, the bump, Hankel matrices and witnesses."""

from .bump import (
    BUMP,
    BumpSpec,
    bump_q,
    dyadic_v,
    fourier_q,
    fq_lp_norm,
    lattice_samples,
    periodized_fourier_q,
    q_sampled_poly,
    smoothstep,
    v_poly,
)
from .errors import (
    AliasingError,
    ConfigError,
    DegenerateWitnessError,
    DimensionError,
    DomainError,
    QuadratureError,
    SptriError,
)
from .formatter import (
    format_bound_checks,
    format_dirichlet_report,
    format_projection_report,
    format_schatten_report,
    format_value,
    format_witness_report,
    status_marker,
)
from .hankel import (
    BoundCheck,
    HankelBlock,
    SpecialFormCheck,
    besov_quasinorm,
    check_multbound,
    check_polybound,
    dyadic_band,
    hankel_of,
    hankel_sp_norm,
    littlewood_paley_pieces,
    special_form_check,
)
from .spcore import (
    Distribution,
    MaskKind,
    MaskMatrix,
    apply_multiplier_witness,
    as_dense,
    column_reverse,
    mask,
    random_matrix,
    schatten_quasinorm,
    schur_product,
    singular_spectrum,
    spectrum_quasinorm,
)
from .trigpoly import (
    DIRICHLET_LOWER_CONSTANT,
    Envelope,
    QuadratureConfig,
    QuadratureResult,
    TrigPoly,
    dirichlet_envelopes,
    dirichlet_kernel,
    dirichlet_refined_envelopes,
    eval_on_grid,
    hadamard_convolve,
    lp_norm,
    lp_quadrature,
    random_trigpoly,
    riesz_minus,
    riesz_plus,
    riesz_strict_plus,
    shift,
)
from .witness import (
    DEFAULT_K_MAX,
    HARD_K_MAX,
    WitnessBundle,
    build_witness,
    check_witness_order,
    convolution_split_identity,
    dirichlet_doubling_ratio,
    dirichlet_split_check,
    dirichlet_split_identity,
    in_log_regime,
    main_envelopes,
    projection_upper_bound,
    shifted_split_identity,
    witness_blocks,
    witness_lower_bounds,
    witness_polys,
)

__all__ = [
    # bump
    "BUMP",
    "BumpSpec",
    "bump_q",
    "dyadic_v",
    "fourier_q",
    "fq_lp_norm",
    "lattice_samples",
    "periodized_fourier_q",
    "q_sampled_poly",
    "smoothstep",
    "v_poly",
    # errors
    "AliasingError",
    "ConfigError",
    "DegenerateWitnessError",
    "DimensionError",
    "DomainError",
    "QuadratureError",
    "SptriError",
    # formatter
    "format_bound_checks",
    "format_dirichlet_report",
    "format_projection_report",
    "format_schatten_report",
    "format_value",
    "format_witness_report",
    "status_marker",
    # hankel
    "BoundCheck",
    "HankelBlock",
    "SpecialFormCheck",
    "besov_quasinorm",
    "check_multbound",
    "check_polybound",
    "dyadic_band",
    "hankel_of",
    "hankel_sp_norm",
    "littlewood_paley_pieces",
    "special_form_check",
    # spcore
    "Distribution",
    "MaskKind",
    "MaskMatrix",
    "apply_multiplier_witness",
    "as_dense",
    "column_reverse",
    "mask",
    "random_matrix",
    "schatten_quasinorm",
    "schur_product",
    "singular_spectrum",
    "spectrum_quasinorm",
    # trigpoly
    "DIRICHLET_LOWER_CONSTANT",
    "Envelope",
    "QuadratureConfig",
    "QuadratureResult",
    "TrigPoly",
    "dirichlet_envelopes",
    "dirichlet_kernel",
    "dirichlet_refined_envelopes",
    "eval_on_grid",
    "hadamard_convolve",
    "lp_norm",
    "lp_quadrature",
    "random_trigpoly",
    "riesz_minus",
    "riesz_plus",
    "riesz_strict_plus",
    "shift",
    # witness
    "DEFAULT_K_MAX",
    "HARD_K_MAX",
    "WitnessBundle",
    "build_witness",
    "check_witness_order",
    "convolution_split_identity",
    "dirichlet_doubling_ratio",
    "dirichlet_split_check",
    "dirichlet_split_identity",
    "in_log_regime",
    "main_envelopes",
    "projection_upper_bound",
    "shifted_split_identity",
    "witness_blocks",
    "witness_lower_bounds",
    "witness_polys",
]
