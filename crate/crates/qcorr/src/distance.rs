//! The five distances between density matrices, behind one contract with
//! declared property claims. The asymmetry convention is fixed here: the
//! first argument is the one the distance is convex in, and conditional
//! states always enter first.
//!
//! Entropic distances (relative entropy, QJSD) are in bits; trace, squared
//! Bures, and squared Hellinger are dimensionless.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eigh_unchecked, entropy_bits, hermitize, re, sqrt_clamped, CMatrix, SUPPORT_EPS,
};
use crate::state::DensityMatrix;

/// Probability mass of rho outside sigma's support above which the relative
/// entropy is +infinity.
const SUPPORT_MASS_EPS: f64 = 1e-10;

/// Distance values in (-OUTPUT_CLAMP, 0) are rounded to 0; anything more
/// negative is passed through so verification can catch genuine violations.
const OUTPUT_CLAMP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    RelativeEntropy,
    Trace,
    BuresSq,
    HellingerSq,
    Qjsd,
}

/// The property flags a distance may claim. Claims are verified empirically
/// by the verify module; unclaimed properties are never asserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceProperty {
    NonNegativity,
    IdentityOfIndiscernibles,
    Symmetry,
    TriangleInequality,
    UnitaryInvariance,
    CptpMonotonicity,
    ConvexityInFirstArgument,
    ClassicalQuantumDecomposition,
    RestrictedAdditivity,
}

use DistanceProperty::*;

const COMMON: [DistanceProperty; 7] = [
    NonNegativity,
    IdentityOfIndiscernibles,
    UnitaryInvariance,
    CptpMonotonicity,
    ConvexityInFirstArgument,
    ClassicalQuantumDecomposition,
    RestrictedAdditivity,
];

impl Distance {
    pub const ALL: [Distance; 5] = [
        Distance::RelativeEntropy,
        Distance::Trace,
        Distance::BuresSq,
        Distance::HellingerSq,
        Distance::Qjsd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distance::RelativeEntropy => "relative_entropy",
            Distance::Trace => "trace",
            Distance::BuresSq => "bures_sq",
            Distance::HellingerSq => "hellinger_sq",
            Distance::Qjsd => "qjsd",
        }
    }

    /// Spelling used by the command-line flag --distance.
    pub fn cli_name(self) -> &'static str {
        match self {
            Distance::RelativeEntropy => "relative-entropy",
            Distance::Trace => "trace",
            Distance::BuresSq => "bures2",
            Distance::HellingerSq => "hellinger2",
            Distance::Qjsd => "qjsd",
        }
    }

    /// Accepts both the internal and the CLI spelling.
    pub fn parse(s: &str) -> Option<Distance> {
        Distance::ALL
            .into_iter()
            .find(|d| s == d.name() || s == d.cli_name())
    }

    pub fn units(self) -> &'static str {
        match self {
            Distance::RelativeEntropy | Distance::Qjsd => "bits",
            _ => "dimensionless",
        }
    }

    /// Property flags this distance claims. Relative entropy claims neither
    /// symmetry nor the triangle inequality; the squared distances and the
    /// QJSD drop the triangle inequality (their square roots are metrics,
    /// the squares are not).
    pub fn claims(self) -> Vec<DistanceProperty> {
        let mut c = COMMON.to_vec();
        match self {
            Distance::RelativeEntropy => {}
            Distance::Trace => {
                c.push(Symmetry);
                c.push(TriangleInequality);
            }
            Distance::BuresSq | Distance::HellingerSq | Distance::Qjsd => c.push(Symmetry),
        }
        c
    }

    pub fn claims_property(self, p: DistanceProperty) -> bool {
        self.claims().contains(&p)
    }

    /// Distance between two validated states of equal total dimension.
    /// Only relative entropy can return +infinity.
    pub fn evaluate(self, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
        if rho.dim() != sigma.dim() {
            return Err(Error::DimensionMismatch {
                left: rho.dim(),
                right: sigma.dim(),
            });
        }
        Ok(self.against(sigma.matrix()).evaluate(rho.matrix()))
    }

    /// Evaluation against a fixed second argument, precomputing the
    /// sigma-side spectral data once. Inputs are trusted density matrices.
    pub fn against(self, sigma: &CMatrix) -> FixedBase {
        let prep = match self {
            Distance::RelativeEntropy => {
                let (values, vectors) = eigh_unchecked(sigma);
                let log_values = values
                    .iter()
                    .map(|&v| if v > SUPPORT_EPS { v.log2() } else { 0.0 })
                    .collect();
                let in_support = values.iter().map(|&v| v > SUPPORT_EPS).collect();
                Prep::RelativeEntropy {
                    vectors,
                    log_values,
                    in_support,
                }
            }
            Distance::Trace => Prep::Trace,
            Distance::BuresSq | Distance::HellingerSq => Prep::SqrtSigma {
                sqrt_sigma: sqrt_psd(sigma),
            },
            Distance::Qjsd => Prep::Qjsd {
                entropy_sigma: entropy_bits(sigma),
            },
        };
        FixedBase {
            distance: self,
            sigma: sigma.clone(),
            prep,
        }
    }

    /// Distance between two trusted raw matrices (each assumed a valid
    /// density matrix of equal dimension).
    pub fn evaluate_matrices(self, rho: &CMatrix, sigma: &CMatrix) -> f64 {
        self.against(sigma).evaluate(rho)
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

enum Prep {
    RelativeEntropy {
        vectors: CMatrix,
        log_values: Vec<f64>,
        in_support: Vec<bool>,
    },
    Trace,
    SqrtSigma {
        sqrt_sigma: CMatrix,
    },
    Qjsd {
        entropy_sigma: f64,
    },
}

/// A distance with its second argument frozen; see [`Distance::against`].
pub struct FixedBase {
    distance: Distance,
    sigma: CMatrix,
    prep: Prep,
}

impl FixedBase {
    pub fn evaluate(&self, rho: &CMatrix) -> f64 {
        let value = match (&self.prep, self.distance) {
            (
                Prep::RelativeEntropy {
                    vectors,
                    log_values,
                    in_support,
                },
                _,
            ) => {
                let (values, _) = eigh_unchecked(rho);
                let rho_term: f64 = values
                    .iter()
                    .map(|&v| {
                        let p = v.clamp(0.0, 1.0);
                        if p > 0.0 {
                            p * p.log2()
                        } else {
                            0.0
                        }
                    })
                    .sum();
                // diagonal of W† rho W gives the weight of rho on each
                // eigenvector of sigma
                let overlap = vectors.adjoint() * rho * vectors;
                let mut cross = 0.0;
                let mut outside_mass = 0.0;
                for j in 0..log_values.len() {
                    let q = overlap[(j, j)].re.max(0.0);
                    if in_support[j] {
                        cross += q * log_values[j];
                    } else {
                        outside_mass += q;
                    }
                }
                if outside_mass > SUPPORT_MASS_EPS {
                    return f64::INFINITY;
                }
                rho_term - cross
            }
            (Prep::Trace, _) => {
                let (values, _) = eigh_unchecked(&(rho - &self.sigma));
                0.5 * values.iter().map(|v| v.abs()).sum::<f64>()
            }
            (Prep::SqrtSigma { sqrt_sigma }, Distance::BuresSq) => {
                let inner = sqrt_sigma * rho * sqrt_sigma;
                let (values, _) = eigh_unchecked(&inner);
                let sqrt_fidelity: f64 = values.iter().map(|&v| sqrt_clamped(v)).sum();
                2.0 * (1.0 - sqrt_fidelity)
            }
            (Prep::SqrtSigma { sqrt_sigma }, _) => {
                let affinity = (sqrt_psd(rho) * sqrt_sigma).trace().re;
                2.0 * (1.0 - affinity)
            }
            (Prep::Qjsd { entropy_sigma }, _) => {
                let mix = (rho + &self.sigma) * re(0.5);
                entropy_bits(&mix) - 0.5 * entropy_bits(rho) - 0.5 * entropy_sigma
            }
        };
        if value < 0.0 && value > -OUTPUT_CLAMP {
            0.0
        } else {
            value
        }
    }
}

/// Principal square root for trusted PSD input: eigenvalue dust around
/// zero (either sign) is clamped to exact zero.
fn sqrt_psd(m: &CMatrix) -> CMatrix {
    let (values, vectors) = eigh_unchecked(m);
    let n = values.len();
    let mut scaled = vectors.clone();
    for (col, &v) in values.iter().enumerate() {
        let s = re(sqrt_clamped(v));
        for row in 0..n {
            scaled[(row, col)] *= s;
        }
    }
    hermitize(&(&scaled * vectors.adjoint()))
}

/// Uhlmann fidelity F = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))².
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let s = sqrt_psd(sigma.matrix());
    let inner = &s * rho.matrix() * &s;
    let (values, _) = eigh_unchecked(&inner);
    let root_sum: f64 = values.iter().map(|&v| v.max(0.0).sqrt()).sum();
    Ok((root_sum * root_sum).clamp(0.0, 1.0))
}

/// Tr[rho (log2 rho − log2 sigma)] on sigma's support; +infinity when rho
/// has probability mass outside it.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Distance::RelativeEntropy.evaluate(rho, sigma)
}

/// Half the sum of absolute eigenvalues of (rho − sigma); in [0, 1].
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Distance::Trace.evaluate(rho, sigma)
}

/// 2(1 − sqrt F); in [0, 2].
pub fn bures_sq(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Distance::BuresSq.evaluate(rho, sigma)
}

/// 2(1 − Tr[sqrt(rho) sqrt(sigma)]); in [0, 2].
pub fn hellinger_sq(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Distance::HellingerSq.evaluate(rho, sigma)
}

/// S((rho+sigma)/2) − S(rho)/2 − S(sigma)/2 in bits; in [0, 1].
pub fn qjsd(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Distance::Qjsd.evaluate(rho, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, identity, max_abs_diff};
    use crate::state::{random_density, DensityMatrix};
    use approx::assert_abs_diff_eq;

    fn pure(which: usize) -> DensityMatrix {
        let mut m = CMatrix::zeros(2, 2);
        m[(which, which)] = re(1.0);
        DensityMatrix::new(2, 1, m).unwrap()
    }

    fn mixed() -> DensityMatrix {
        DensityMatrix::new(2, 1, identity(2) * re(0.5)).unwrap()
    }

    #[test]
    fn self_distance_is_zero_for_all_five() {
        let rho = random_density(2, 2, 4, 31).unwrap();
        for d in Distance::ALL {
            assert!(d.evaluate(&rho, &rho).unwrap() <= 1e-9, "{}", d.name());
        }
    }

    #[test]
    fn relative_entropy_oracles() {
        assert_abs_diff_eq!(
            relative_entropy(&pure(0), &mixed()).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert!(relative_entropy(&pure(0), &pure(1)).unwrap().is_infinite());
        // finite whenever supp(rho) ⊆ supp(sigma), even for singular sigma
        assert_abs_diff_eq!(
            relative_entropy(&pure(0), &pure(0)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn trace_distance_oracles() {
        assert_abs_diff_eq!(trace_distance(&pure(0), &pure(1)).unwrap(), 1.0, epsilon = 1e-12);
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = re(0.75);
        m[(1, 1)] = re(0.25);
        let tilted = DensityMatrix::new(2, 1, m).unwrap();
        assert_abs_diff_eq!(trace_distance(&mixed(), &tilted).unwrap(), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn bures_and_hellinger_oracles() {
        assert_abs_diff_eq!(bures_sq(&pure(0), &pure(1)).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hellinger_sq(&pure(0), &pure(1)).unwrap(), 2.0, epsilon = 1e-12);
        // 2(1 - 1/sqrt 2)
        let want = 0.5857864376269049;
        assert_abs_diff_eq!(bures_sq(&pure(0), &mixed()).unwrap(), want, epsilon = 1e-12);
        assert_abs_diff_eq!(hellinger_sq(&pure(0), &mixed()).unwrap(), want, epsilon = 1e-12);
        assert_abs_diff_eq!(fidelity(&pure(0), &mixed()).unwrap(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(fidelity(&pure(0), &pure(0)).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn qjsd_oracles_and_symmetry() {
        assert_abs_diff_eq!(qjsd(&pure(0), &pure(1)).unwrap(), 1.0, epsilon = 1e-12);
        let rho = random_density(2, 2, 4, 13).unwrap();
        let sigma = random_density(2, 2, 4, 14).unwrap();
        assert_abs_diff_eq!(
            qjsd(&rho, &sigma).unwrap(),
            qjsd(&sigma, &rho).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn distinct_states_are_separated_and_self_distance_vanishes() {
        // 200 seeded pairs per the distance contract
        for k in 0..200u64 {
            let rho = random_density(2, 1, 2, 10_000 + k).unwrap();
            let sigma = random_density(2, 1, 2, 20_000 + k).unwrap();
            let distinct = max_abs_diff(rho.matrix(), sigma.matrix()) > 1e-6;
            for d in Distance::ALL {
                let v = d.evaluate(&rho, &sigma).unwrap();
                assert!(v >= 0.0, "{} negative: {v}", d.name());
                if distinct {
                    assert!(v > 1e-10, "{} failed to separate pair {k}", d.name());
                }
                assert!(d.evaluate(&rho, &rho).unwrap() <= 1e-9);
            }
        }
    }

    #[test]
    fn matrix_sqrt_fixes_projectors() {
        // rank-1 projector from a normalized complex vector; the zero
        // floor keeps null-space eigenvalue dust from surfacing as √dust
        let v = [c64(0.6, 0.0), c64(0.0, 0.8)];
        let p = CMatrix::from_fn(2, 2, |i, j| v[i] * v[j].conj());
        let s = crate::linalg::matrix_sqrt(&p).unwrap();
        assert!(max_abs_diff(&s, &p) < 1e-12);
    }

    #[test]
    fn claims_table_matches_contract() {
        assert!(!Distance::RelativeEntropy.claims_property(Symmetry));
        assert!(!Distance::RelativeEntropy.claims_property(TriangleInequality));
        assert!(Distance::Trace.claims_property(TriangleInequality));
        assert!(Distance::BuresSq.claims_property(Symmetry));
        assert!(!Distance::BuresSq.claims_property(TriangleInequality));
        assert!(!Distance::Qjsd.claims_property(TriangleInequality));
        for d in Distance::ALL {
            assert!(d.claims_property(CptpMonotonicity));
            assert!(d.claims_property(RestrictedAdditivity));
            assert!(d.claims_property(ClassicalQuantumDecomposition));
        }
    }

    #[test]
    fn parse_accepts_both_spellings() {
        assert_eq!(Distance::parse("relative-entropy"), Some(Distance::RelativeEntropy));
        assert_eq!(Distance::parse("relative_entropy"), Some(Distance::RelativeEntropy));
        assert_eq!(Distance::parse("bures2"), Some(Distance::BuresSq));
        assert_eq!(Distance::parse("hellinger_sq"), Some(Distance::HellingerSq));
        assert_eq!(Distance::parse("nope"), None);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let rho = random_density(2, 1, 2, 1).unwrap();
        let sigma = random_density(3, 1, 3, 2).unwrap();
        for d in Distance::ALL {
            assert!(d.evaluate(&rho, &sigma).is_err());
        }
    }

    #[test]
    fn fixed_base_matches_direct_evaluation() {
        let rho = random_density(2, 2, 4, 77).unwrap();
        let sigma = random_density(2, 2, 4, 78).unwrap();
        for d in Distance::ALL {
            let direct = d.evaluate(&rho, &sigma).unwrap();
            let base = d.against(sigma.matrix());
            assert_abs_diff_eq!(base.evaluate(rho.matrix()), direct, epsilon = 1e-13);
        }
    }
}
