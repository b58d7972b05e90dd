//! Correlation content of a maximally entangled pair.
//!
//! For the Bell state the answers are known in closed form: two bits of
//! total correlation, split evenly into one classical and one quantum bit
//! when measured by relative entropy. The other distances report the same
//! split on their own scales.

use qcorr::{
    classical_correlations_entropic, discord, make_bell, mutual_information,
    quantum_correlations, Distance, OptimizerConfig,
};

fn main() {
    let bell = make_bell();
    let cfg = OptimizerConfig::default();

    println!("entropic measures (bits):");
    println!("  mutual information   {:.6}", mutual_information(&bell));
    println!(
        "  classical (max over measurements)  {:.6}",
        classical_correlations_entropic(&bell, &cfg)
    );
    println!("  discord              {:.6}", discord(&bell, &cfg));
    println!();

    println!(
        "{:<17} {:>10} {:>10} {:>10}  units",
        "distance", "total", "classical", "quantum"
    );
    for d in Distance::ALL {
        let r = quantum_correlations(d, &bell, &cfg).expect("bell state is well conditioned");
        println!(
            "{:<17} {:>10.6} {:>10.6} {:>10.6}  {}",
            d.name(),
            r.total,
            r.classical,
            r.quantum,
            r.units
        );
    }
}
