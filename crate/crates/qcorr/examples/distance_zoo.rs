//! The five distances side by side: what each one claims, what each one
//! reports on a worked pair, and where relative entropy diverges.

use qcorr::linalg::{c64, CMatrix};
use qcorr::{DensityMatrix, Distance, DistanceProperty};

fn diag_qubit(p: f64) -> DensityMatrix {
    let m = CMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => c64(p, 0.0),
        (1, 1) => c64(1.0 - p, 0.0),
        _ => c64(0.0, 0.0),
    });
    DensityMatrix::new(2, 1, m).unwrap()
}

fn main() {
    let claims: [(&str, DistanceProperty); 9] = [
        ("non-negative", DistanceProperty::NonNegativity),
        ("zero iff equal", DistanceProperty::IdentityOfIndiscernibles),
        ("symmetric", DistanceProperty::Symmetry),
        ("triangle", DistanceProperty::TriangleInequality),
        ("unitary inv.", DistanceProperty::UnitaryInvariance),
        ("cptp monotone", DistanceProperty::CptpMonotonicity),
        ("convex (1st)", DistanceProperty::ConvexityInFirstArgument),
        ("cq decomposition", DistanceProperty::ClassicalQuantumDecomposition),
        ("restricted add.", DistanceProperty::RestrictedAdditivity),
    ];

    println!("{:<17} claims", "distance");
    for d in Distance::ALL {
        let held: Vec<&str> = claims
            .iter()
            .filter(|(_, p)| d.claims_property(*p))
            .map(|(label, _)| *label)
            .collect();
        println!("{:<17} {}", d.name(), held.join(", "));
    }

    // a mildly mixed qubit against a mixed one with a different spectrum
    let rho = diag_qubit(0.9);
    let sigma = diag_qubit(0.6);
    println!();
    println!("{:<17} {:>12} {:>12}", "distance", "d(rho,sigma)", "d(sigma,rho)");
    for d in Distance::ALL {
        println!(
            "{:<17} {:>12.6} {:>12.6}",
            d.name(),
            d.evaluate(&rho, &sigma).unwrap(),
            d.evaluate(&sigma, &rho).unwrap()
        );
    }
    println!("(only relative entropy is allowed to differ across a swap)");

    // support mismatch: rho puts weight where sigma has none
    let pure = diag_qubit(1.0);
    let orthogonal = diag_qubit(0.0);
    println!();
    println!(
        "relative entropy on orthogonal pure states: {}",
        Distance::RelativeEntropy.evaluate(&pure, &orthogonal).unwrap()
    );
    println!(
        "trace distance on the same pair: {:.6}",
        Distance::Trace.evaluate(&pure, &orthogonal).unwrap()
    );
}
