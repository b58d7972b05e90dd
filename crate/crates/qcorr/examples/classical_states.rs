//! Classical-quantum states have no quantum correlations, and their
//! classical part collapses to an ensemble distance: J = sum_i p_i
//! d(rho_i, rho_avg), with no optimization left to do.

use qcorr::linalg::{hermitize, identity, re};
use qcorr::{
    make_classical_quantum, quantum_correlations, random_density, DensityMatrix, Distance,
    OptimizerConfig,
};

fn main() {
    let p = [0.35, 0.65];
    let blocks = [
        random_density(2, 1, 1, 41).unwrap(),
        random_density(2, 1, 2, 42).unwrap(),
    ];
    let rho = make_classical_quantum(&p, &identity(2), &blocks).unwrap();

    let avg_matrix = hermitize(&(blocks[0].matrix() * re(p[0]) + blocks[1].matrix() * re(p[1])));
    let average = DensityMatrix::new(2, 1, avg_matrix).unwrap();

    let cfg = OptimizerConfig::with_seed(5);
    println!(
        "{:<17} {:>10} {:>10} {:>12} {:>14}",
        "distance", "total", "classical", "quantum", "ensemble dist"
    );
    for d in Distance::ALL {
        let r = quantum_correlations(d, &rho, &cfg).unwrap();
        let ensemble: f64 = p
            .iter()
            .zip(&blocks)
            .map(|(pi, b)| pi * d.evaluate(b, &average).unwrap())
            .sum();
        println!(
            "{:<17} {:>10.6} {:>10.6} {:>12.2e} {:>14.6}",
            d.name(),
            r.total,
            r.classical,
            r.quantum,
            ensemble
        );
    }
    println!();
    println!("the classical column should match the ensemble distance,");
    println!("and the quantum column should be numerically zero");
}
