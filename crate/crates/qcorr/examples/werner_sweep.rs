//! Correlations along the Werner family z·|Φ+⟩⟨Φ+| + (1-z)·I/4.
//!
//! At z = 0 the state is maximally mixed and every column is zero; at z = 1
//! it is the Bell state. In between the state stays separable up to
//! z = 1/3, yet the quantum column is already nonzero there: discord-type
//! measures see past entanglement.

use qcorr::{make_werner, quantum_correlations, Distance, OptimizerConfig};

fn main() {
    let cfg = OptimizerConfig {
        restarts: 4,
        ..OptimizerConfig::with_seed(7)
    };
    println!(
        "{:>5} {:>10} {:>10} {:>10}   (relative entropy, bits)",
        "z", "total", "classical", "quantum"
    );
    for k in 0..=10 {
        let z = f64::from(k) / 10.0;
        let state = make_werner(z).expect("z is inside [0, 1]");
        let r = quantum_correlations(Distance::RelativeEntropy, &state, &cfg)
            .expect("werner correlations are finite on the whole family");
        println!(
            "{z:>5.2} {:>10.6} {:>10.6} {:>10.6}",
            r.total, r.classical, r.quantum
        );
    }
}
