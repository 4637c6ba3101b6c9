"""Trust decisions as statistical hypothesis tests over discrete behavior profiles."""
from .bayes import (
    Posterior,
    batch_posterior,
    map_hypothesis,
    posterior,
    predictive,
    sequential_update,
)
from .core import (
    SUM_TOL,
    BehaviorAlphabet,
    BehaviorProfile,
    Hypothesis,
    HypothesisSet,
    Observation,
    empirical_profile,
    log_likelihood,
    validate_profile,
)
from .errors import *  # noqa: F401,F403
from .mdl import (
    CodeLength,
    QuantizedFamily,
    compressor_length_estimate,
    data_code_length,
    formulate_null,
    hypothesis_code_length,
    mdl_select,
    two_part_length,
)
from .testing import (
    Decision,
    NPThreshold,
    TestReport,
    Verdict,
    fisher_decide,
    likelihood_ratio,
    np_decide,
    np_threshold,
    p_value,
    pairwise_np_matrix,
    point_significance,
    test_size_and_power,
)

__version__ = "0.1.0"
