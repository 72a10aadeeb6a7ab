"""Bootstrap tests for the total-time-on-test order, the excess-wealth order
and the NBUE ageing property, with a Monte Carlo simulation harness."""

from .exceptions import (
    EmptyInputError,
    KindMismatchError,
    LengthMismatchError,
    NegativeValueError,
    NonConvergenceError,
    NonFiniteValueError,
    SchemeMismatchError,
    TTTOrderError,
    ZeroMeanError,
)
from .functionals import PhiR, check_phi_properties, phi, phi_below_identity
from .harness import (
    ExperimentSpec,
    RejectionRow,
    RejectionTable,
    emit_transform_plot,
    run_experiment,
)
from .ordertests import (
    ExcessWealthOrderTest,
    NBUETest,
    TestReport,
    TTTOrderTest,
    test_ew_order,
    test_nbue,
    test_ttt_order,
)
from .refdist import (
    RefDistribution,
    SinghMaddala,
    UnitExponential,
    Weibull,
    parse_distribution,
)
from .resampling import (
    BootstrapConfig,
    bootstrap_pvalue,
    draw_weights,
    paired_resample,
    replicate_rng,
    resample_transform,
    resample_values,
)
from .samples import (
    PairedSample,
    Sample,
    empirical_cdf,
    ingest,
    ingest_paired,
    order_statistic,
    read_paired_csv,
    read_sample_csv,
)
from .special import gauss_2f1, upper_incomplete_gamma
from .transforms import (
    CurveKind,
    PiecewiseCurve,
    curve_difference,
    excess_wealth_empirical,
    scaled_ttt,
    ttt_empirical,
)

__version__ = "0.1.0"

__all__ = [
    "BootstrapConfig",
    "CurveKind",
    "EmptyInputError",
    "ExcessWealthOrderTest",
    "ExperimentSpec",
    "KindMismatchError",
    "LengthMismatchError",
    "NBUETest",
    "NegativeValueError",
    "NonConvergenceError",
    "NonFiniteValueError",
    "PairedSample",
    "PhiR",
    "PiecewiseCurve",
    "RefDistribution",
    "RejectionRow",
    "RejectionTable",
    "Sample",
    "SchemeMismatchError",
    "SinghMaddala",
    "TTTOrderError",
    "TTTOrderTest",
    "TestReport",
    "UnitExponential",
    "Weibull",
    "ZeroMeanError",
    "bootstrap_pvalue",
    "check_phi_properties",
    "curve_difference",
    "draw_weights",
    "emit_transform_plot",
    "empirical_cdf",
    "excess_wealth_empirical",
    "gauss_2f1",
    "ingest",
    "ingest_paired",
    "order_statistic",
    "paired_resample",
    "parse_distribution",
    "phi",
    "phi_below_identity",
    "read_paired_csv",
    "read_sample_csv",
    "replicate_rng",
    "resample_transform",
    "resample_values",
    "run_experiment",
    "scaled_ttt",
    "test_ew_order",
    "test_nbue",
    "test_ttt_order",
    "ttt_empirical",
    "upper_incomplete_gamma",
]
