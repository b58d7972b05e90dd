//! Distance-based correlation measures for bipartite quantum states.
//!
//! For a density matrix ρ on A⊗B and a distance d between states, the
//! crate computes the decomposition T_d = J_d + Q_d: total correlations
//! (distance from ρ to ρ_A⊗ρ_B), classical-quantum correlations (the best
//! von Neumann measurement on A can do), and the quantum remainder. Five
//! distances are built in: quantum relative entropy, trace distance,
//! squared Bures, squared Hellinger, and the quantum Jensen-Shannon
//! divergence. Entropic counterparts (mutual information, discord) and
//! numerical property verification come along.
//!
//! Start with the runnable examples, one per capability:
//!
//! ```text
//! cargo run --release --example bell_correlations      # the canonical maximally entangled story
//! cargo run --release --example werner_sweep           # discord across the Werner family
//! cargo run --release --example distance_zoo           # the five distances side by side
//! cargo run --release --example measure_and_condition  # measurements and conditional ensembles
//! cargo run --release --example noisy_channels         # correlation decay under Kraus channels
//! cargo run --release --example classical_states       # states with zero quantum correlations
//! cargo run --release --example random_ensembles       # seeded random states and statistics
//! cargo run --release --example verify_properties      # the full numerical property audit
//! ```
//!
//! The same functionality is scriptable through the thin `qcorr` binary
//! (`compute`, `sweep`, `verify`, `random` subcommands).

pub mod channel;
pub mod cli;
pub mod correlations;
pub mod distance;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measurement;
pub mod optimize;
pub mod rng;
pub mod state;
pub mod verify;

pub use channel::{apply_channel, ChannelTarget, KrausChannel};
pub use correlations::{
    classical_correlations_entropic, cq_correlations, cq_correlations_fixed, discord,
    mutual_information, quantum_correlations, total_correlations, CorrelationReport, CqOptimum,
    OptimizerConfig, OptimizerDiagnostics,
};
pub use distance::{
    bures_sq, hellinger_sq, qjsd, relative_entropy, trace_distance, Distance, DistanceProperty,
    FixedBase,
};
pub use error::{Error, Result};
pub use measurement::{
    apply_measurement, conditional_ensemble, ConditionalEnsemble, Outcome,
    VonNeumannMeasurement, ZERO_PROB_EPS,
};
pub use rng::SplitRng;
pub use state::{
    make_bell, make_bell_diagonal, make_classical_quantum, make_isotropic, make_product,
    make_separable, make_werner, random_density, tensor_product, DensityMatrix, Subsystem,
};
pub use verify::{
    verify_distance_axioms, verify_measure_conditions, verify_prop_vi_preconditions, CheckResult,
    VerificationSuiteResult, Verdict,
};
