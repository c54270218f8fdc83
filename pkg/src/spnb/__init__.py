"""Sequential pull/no-pull bandit simulators, policies, and benchmark harness."""

from .core import (
    ArmSet,
    RngStream,
    RoundClock,
    derive_run_seed,
    make_rng,
    offered_arm,
    sample_feedback,
)
from .elimination import log_bar, run_sr_plus, run_ucbrev_plus, sr_checkpoints
from .experiments import (
    AlgorithmSpec,
    ExperimentConfig,
    audibert_experiment,
    build_arms,
    gen_synthetic_rm,
    list_scenarios,
    load_exceedance_csv,
    load_slot_means_csv,
)
from .metrics import (
    BoundParams,
    MetricSeries,
    aggregate_ci,
    bernoulli_kl,
    delta_hat,
    kl_regret_bound,
    npr,
    opt_star,
    opti_star,
    pseudo_regret,
    psi_pulls,
    psi_rounds,
    sr_confidence_bound,
    sr_plus_confidence_bound,
    ucb1_regret_bound,
)
from .policies import (
    PolicyKind,
    PolicyParams,
    PolicyState,
    beta_quantile,
    derive_ucbe_a,
    make_policy,
    policy_select,
    policy_update,
    recommend_best,
)
from .runner import RunResult, batch_errors, run_batch, write_results_csv
from .seq import (
    BAIResult,
    Trace,
    make_feedback_table,
    run_naive,
    run_seq,
    run_seq_ucbe_lp,
    run_seq_ucbe_lr,
)

__all__ = [
    "ArmSet",
    "RngStream",
    "RoundClock",
    "derive_run_seed",
    "make_rng",
    "offered_arm",
    "sample_feedback",
    "log_bar",
    "run_sr_plus",
    "run_ucbrev_plus",
    "sr_checkpoints",
    "AlgorithmSpec",
    "ExperimentConfig",
    "audibert_experiment",
    "build_arms",
    "gen_synthetic_rm",
    "list_scenarios",
    "load_exceedance_csv",
    "load_slot_means_csv",
    "BoundParams",
    "MetricSeries",
    "aggregate_ci",
    "bernoulli_kl",
    "delta_hat",
    "kl_regret_bound",
    "npr",
    "opt_star",
    "opti_star",
    "pseudo_regret",
    "psi_pulls",
    "psi_rounds",
    "sr_confidence_bound",
    "sr_plus_confidence_bound",
    "ucb1_regret_bound",
    "PolicyKind",
    "PolicyParams",
    "PolicyState",
    "beta_quantile",
    "derive_ucbe_a",
    "make_policy",
    "policy_select",
    "policy_update",
    "recommend_best",
    "RunResult",
    "batch_errors",
    "run_batch",
    "write_results_csv",
    "BAIResult",
    "Trace",
    "make_feedback_table",
    "run_naive",
    "run_seq",
    "run_seq_ucbe_lp",
    "run_seq_ucbe_lr",
]

__version__ = "0.1.0"
