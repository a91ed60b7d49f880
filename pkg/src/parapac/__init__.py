"""parapac: consistency checking and PAC-learning experiments for
parameterized boolean-formula and graph-deletion concept classes."""

from .booleans import (
    Assignment,
    Clause,
    CnfFormula,
    DnfFormula,
    LabeledSample,
    Literal,
    ParamInfo,
    SampleSet,
    Term,
    dualize,
    eval_cnf,
    eval_dnf,
    flip_polarity_transform,
    kappa_max_term_len,
    kappa_subset_size,
    kappa_term_count,
    lambda_backdoor,
)
from .consistency import (
    ConsistencyInstance,
    ConsistencyOutcome,
    KernelTrace,
    brute_force_consistency,
    fvs_consistency,
    hdeletion_consistency,
    hypothesis_agrees,
    kclause_cnf_consistency,
    kcnf_consistency,
    kdnf_consistency,
    kterm_dnf_consistency,
    kterm_dnf_kernelize,
    solve_instance,
)
from .errors import (
    GuardError,
    InputError,
    RealizabilityError,
    SetTooSmallError,
    WidthMismatchError,
)
from .estimators import (
    DeletionSetClassifier,
    FeedbackVertexSetClassifier,
    KClauseCnfClassifier,
    KCnfClassifier,
    KDnfClassifier,
    KTermDnfClassifier,
)
from .graphs import (
    ForbiddenFamily,
    Graph,
    GraphSample,
    GraphSampleSet,
    VertexSet,
    complete_graph,
    cycle_graph,
    path_graph,
)
from .metalearn import (
    LearnerConfig,
    LearnRunRecord,
    consistency_via_pac_learner,
    log_hyp_count,
    pac_learn_via_consistency,
    required_samples,
)
from .oracle import (
    DeletionHypothesis,
    FiniteDistribution,
    HiddenScenario,
    RandomSource,
    draw,
    exact_error,
    monte_carlo_error,
    typical_uniform_sampler,
)
from .reductions import (
    HittingSetInstance,
    brute_force_hitting_set,
    extract_hitting_set,
    hitting_set_to_fvs,
    hitting_set_to_kcnf,
)

__version__ = "0.1.0"
