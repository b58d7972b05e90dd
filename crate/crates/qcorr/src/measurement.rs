//! Von Neumann measurements on subsystem A: a chart over all rank-1
//! orthogonal projector families, conditional ensembles, and the
//! post-measurement state.
//!
//! The chart composes Givens rotations G(i,j; θ, φ) over the index planes
//! (0,1), (0,2), ..., (d−2,d−1) in lexicographic order and projects onto the
//! columns of the resulting unitary. Eliminating sub-diagonal entries in the
//! same plane order inverts the chart for any unitary, so every measurement
//! basis is reachable; the phase/order redundancy is harmless because only
//! the projector set matters.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{c64, hermitize, identity, re, unitarity_residual, CMatrix, HERMITICITY_EPS};
use crate::state::DensityMatrix;

/// Outcomes with probability at or below this threshold are flagged and
/// contribute exactly zero to weighted sums; their conditional state is
/// never divided out.
pub const ZERO_PROB_EPS: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct VonNeumannMeasurement {
    dim_a: usize,
    params: Vec<f64>,
    projectors: Vec<CMatrix>,
}

/// One measurement outcome: its probability and, when the probability is
/// above [`ZERO_PROB_EPS`], the conditional state of subsystem B.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub probability: f64,
    pub state: Option<DensityMatrix>,
}

/// The ensemble {(p'_j, ρ_B|j)} induced by measuring subsystem A.
#[derive(Debug, Clone)]
pub struct ConditionalEnsemble {
    pub outcomes: Vec<Outcome>,
}

fn planes(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |i| ((i + 1)..dim).map(move |j| (i, j)))
}

/// Unitary generated by the parameter vector: the product of Givens
/// rotations in lexicographic plane order, applied as right factors.
pub fn unitary_from_params(dim: usize, params: &[f64]) -> CMatrix {
    debug_assert_eq!(params.len(), VonNeumannMeasurement::param_count(dim));
    let mut u = identity(dim);
    for (k, (i, j)) in planes(dim).enumerate() {
        let (theta, phi) = (params[2 * k], params[2 * k + 1]);
        let c = re((theta / 2.0).cos());
        let s = (theta / 2.0).sin();
        let s_pos = c64(phi.cos(), phi.sin()) * re(s);
        // right-multiplication by G(i,j) mixes columns i and j
        for row in 0..dim {
            let (ui, uj) = (u[(row, i)], u[(row, j)]);
            u[(row, i)] = ui * c + uj * s_pos;
            u[(row, j)] = -ui * s_pos.conj() + uj * c;
        }
    }
    u
}

/// Invert the chart: parameters whose generated projectors match the given
/// unitary's columns. Sub-diagonal entries are eliminated plane by plane;
/// the leftover diagonal phases do not affect the projectors.
pub fn params_for_unitary(u: &CMatrix) -> Result<Vec<f64>> {
    let dim = u.nrows();
    if u.nrows() != u.ncols() {
        return Err(Error::NotSquare {
            rows: u.nrows(),
            cols: u.ncols(),
        });
    }
    let residual = unitarity_residual(u);
    if residual > HERMITICITY_EPS {
        return Err(Error::NotUnitary { residual });
    }
    let mut v = u.clone();
    let mut params = vec![0.0; VonNeumannMeasurement::param_count(dim)];
    for (k, (i, j)) in planes(dim).enumerate() {
        let a = v[(i, i)];
        let b = v[(j, i)];
        let theta = 2.0 * b.norm().atan2(a.norm());
        let phi = if b.norm() > 1e-15 {
            let raw = b.arg() - if a.norm() > 1e-15 { a.arg() } else { 0.0 };
            raw - (raw / TAU).round() * TAU
        } else {
            0.0
        };
        params[2 * k] = theta;
        params[2 * k + 1] = phi;
        let c = re((theta / 2.0).cos());
        let s = (theta / 2.0).sin();
        let s_neg = c64(phi.cos(), -phi.sin()) * re(s);
        // left-multiplication by G(i,j)† mixes rows i and j, zeroing v[j,i]
        for col in 0..dim {
            let (vi, vj) = (v[(i, col)], v[(j, col)]);
            v[(i, col)] = vi * c + vj * s_neg;
            v[(j, col)] = -vi * s_neg.conj() + vj * c;
        }
    }
    Ok(params)
}

impl VonNeumannMeasurement {
    /// Number of real parameters for a dimension-d measurement: d(d−1).
    pub fn param_count(dim_a: usize) -> usize {
        dim_a * (dim_a - 1)
    }

    /// Measurement with projectors M_j = U|j⟩⟨j|U† for the generated U.
    /// For dim_a = 2 the two parameters (θ, φ) select the Bloch projectors
    /// onto ±(sin θ cos φ, sin θ sin φ, cos θ).
    pub fn from_params(dim_a: usize, params: &[f64]) -> Result<Self> {
        let expected = Self::param_count(dim_a);
        if params.len() != expected {
            return Err(Error::WrongParameterCount {
                expected,
                got: params.len(),
                dim: dim_a,
            });
        }
        let u = unitary_from_params(dim_a, params);
        let projectors = (0..dim_a)
            .map(|j| {
                let col = u.column(j);
                CMatrix::from_fn(dim_a, dim_a, |r, c| col[r] * col[c].conj())
            })
            .collect();
        Ok(Self {
            dim_a,
            params: params.to_vec(),
            projectors,
        })
    }

    /// Computational-basis measurement {|j⟩⟨j|}.
    pub fn computational(dim_a: usize) -> Self {
        Self::from_params(dim_a, &vec![0.0; Self::param_count(dim_a)])
            .expect("zero parameter vector has the right length")
    }

    /// Fourier-basis measurement, the canonical maximally unbiased partner
    /// of the computational basis.
    pub fn fourier(dim_a: usize) -> Self {
        let d = dim_a as f64;
        let f = CMatrix::from_fn(dim_a, dim_a, |r, c| {
            let angle = TAU * (r * c) as f64 / d;
            c64(angle.cos(), angle.sin()) * re(1.0 / d.sqrt())
        });
        Self::from_unitary(&f).expect("Fourier matrix is unitary")
    }

    /// Measurement onto the columns of the given unitary.
    pub fn from_unitary(u: &CMatrix) -> Result<Self> {
        let params = params_for_unitary(u)?;
        Self::from_params(u.nrows(), &params)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }
}

/// Unnormalized B-side blocks: for each outcome, (p'_j, Tr_A[(M_j⊗I)ρ]).
/// The block divided by p'_j is the conditional state when p'_j is above
/// threshold.
pub(crate) fn conditional_blocks(
    rho: &CMatrix,
    dim_a: usize,
    dim_b: usize,
    m: &VonNeumannMeasurement,
) -> Vec<(f64, CMatrix)> {
    m.projectors()
        .iter()
        .map(|proj| {
            let mut block = CMatrix::zeros(dim_b, dim_b);
            for i in 0..dim_a {
                for k in 0..dim_a {
                    let w = proj[(i, k)];
                    if w.norm_sqr() == 0.0 {
                        continue;
                    }
                    for mm in 0..dim_b {
                        for nn in 0..dim_b {
                            block[(mm, nn)] += w * rho[(k * dim_b + mm, i * dim_b + nn)];
                        }
                    }
                }
            }
            (block.trace().re, block)
        })
        .collect()
}

/// Outcome probabilities p'_j = Tr[(M_j⊗I)ρ] and conditional states
/// ρ_B|j = Tr_A[(M_j⊗I)ρ]/p'_j.
pub fn conditional_ensemble(
    rho: &DensityMatrix,
    m: &VonNeumannMeasurement,
) -> Result<ConditionalEnsemble> {
    if m.dim_a() != rho.dim_a() {
        return Err(Error::DimensionMismatch {
            left: m.dim_a(),
            right: rho.dim_a(),
        });
    }
    let outcomes = conditional_blocks(rho.matrix(), rho.dim_a(), rho.dim_b(), m)
        .into_iter()
        .map(|(p, block)| {
            if p > ZERO_PROB_EPS {
                let state =
                    DensityMatrix::new(rho.dim_b(), 1, hermitize(&(block * re(1.0 / p))))?;
                Ok(Outcome {
                    probability: p,
                    state: Some(state),
                })
            } else {
                Ok(Outcome {
                    probability: p.max(0.0),
                    state: None,
                })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionalEnsemble { outcomes })
}

/// Post-measurement state ρ^M = Σ_j (M_j⊗I) ρ (M_j⊗I); a classical-quantum
/// state carrying the same conditional ensemble as ρ.
pub fn apply_measurement(rho: &DensityMatrix, m: &VonNeumannMeasurement) -> Result<DensityMatrix> {
    if m.dim_a() != rho.dim_a() {
        return Err(Error::DimensionMismatch {
            left: m.dim_a(),
            right: rho.dim_a(),
        });
    }
    let eye_b = identity(rho.dim_b());
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    for proj in m.projectors() {
        let lifted = crate::linalg::kron(proj, &eye_b);
        out += &lifted * rho.matrix() * &lifted;
    }
    DensityMatrix::new(rho.dim_a(), rho.dim_b(), hermitize(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::rng::{haar_unitary, SplitRng};
    use crate::state::{
        make_bell, make_classical_quantum, make_product, random_density, Subsystem,
    };
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn measurement_invariants_hold(m: &VonNeumannMeasurement) -> bool {
        let dim = m.dim_a();
        let mut sum = CMatrix::zeros(dim, dim);
        for (j, pj) in m.projectors().iter().enumerate() {
            if max_abs_diff(&(pj * pj), pj) > 1e-10 {
                return false;
            }
            if (pj.trace().re - 1.0).abs() > 1e-10 {
                return false;
            }
            for (k, pk) in m.projectors().iter().enumerate() {
                if j != k && crate::linalg::max_abs(&(pj * pk)) > 1e-10 {
                    return false;
                }
            }
            sum += pj;
        }
        max_abs_diff(&sum, &identity(dim)) <= 1e-10
    }

    #[test]
    fn zero_params_give_computational_basis() {
        let m = VonNeumannMeasurement::from_params(2, &[0.0, 0.0]).unwrap();
        for j in 0..2 {
            let mut want = CMatrix::zeros(2, 2);
            want[(j, j)] = re(1.0);
            assert!(max_abs_diff(&m.projectors()[j], &want) < 1e-15);
        }
    }

    #[test]
    fn half_pi_theta_gives_plus_minus_basis() {
        let m = VonNeumannMeasurement::from_params(2, &[PI / 2.0, 0.0]).unwrap();
        let plus = CMatrix::from_fn(2, 2, |_, _| re(0.5));
        let minus = CMatrix::from_fn(2, 2, |i, j| if i == j { re(0.5) } else { re(-0.5) });
        assert!(max_abs_diff(&m.projectors()[0], &plus) < 1e-12);
        assert!(max_abs_diff(&m.projectors()[1], &minus) < 1e-12);
    }

    #[test]
    fn wrong_parameter_count_is_rejected() {
        assert!(matches!(
            VonNeumannMeasurement::from_params(2, &[0.0]),
            Err(Error::WrongParameterCount { expected: 2, .. })
        ));
        assert!(VonNeumannMeasurement::from_params(3, &[0.0; 6]).is_ok());
    }

    #[test]
    fn chart_reaches_arbitrary_unitaries() {
        for dim in [2usize, 3, 4] {
            for seed in 0..5u64 {
                let u = haar_unitary(dim, &mut SplitRng::new(100 + seed));
                let m = VonNeumannMeasurement::from_unitary(&u).unwrap();
                assert!(measurement_invariants_hold(&m));
                for j in 0..dim {
                    let col = u.column(j);
                    let want = CMatrix::from_fn(dim, dim, |r, c| col[r] * col[c].conj());
                    assert!(
                        max_abs_diff(&m.projectors()[j], &want) < 1e-10,
                        "dim {dim} seed {seed} column {j}"
                    );
                }
            }
        }
    }

    #[test]
    fn fourier_basis_is_unbiased_against_computational() {
        for dim in [2usize, 3] {
            let m = VonNeumannMeasurement::fourier(dim);
            assert!(measurement_invariants_hold(&m));
            for p in m.projectors() {
                for k in 0..dim {
                    assert_abs_diff_eq!(p[(k, k)].re, 1.0 / dim as f64, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn bell_state_conditionals_in_computational_basis() {
        let bell = make_bell();
        let m = VonNeumannMeasurement::computational(2);
        let ens = conditional_ensemble(&bell, &m).unwrap();
        assert_eq!(ens.outcomes.len(), 2);
        for (j, outcome) in ens.outcomes.iter().enumerate() {
            assert_abs_diff_eq!(outcome.probability, 0.5, epsilon = 1e-12);
            let state = outcome.state.as_ref().unwrap();
            let mut want = CMatrix::zeros(2, 2);
            want[(j, j)] = re(1.0);
            assert!(max_abs_diff(state.matrix(), &want) < 1e-12);
        }
    }

    #[test]
    fn product_state_conditionals_equal_the_marginal() {
        let a = random_density(2, 1, 2, 51).unwrap();
        let b = random_density(2, 1, 2, 52).unwrap();
        let prod = make_product(&a, &b);
        let m = VonNeumannMeasurement::from_unitary(&haar_unitary(2, &mut SplitRng::new(53)))
            .unwrap();
        let ens = conditional_ensemble(&prod, &m).unwrap();
        for outcome in &ens.outcomes {
            let state = outcome.state.as_ref().unwrap();
            assert!(max_abs_diff(state.matrix(), b.matrix()) < 1e-10);
        }
    }

    #[test]
    fn classical_quantum_register_measurement_recovers_the_ensemble() {
        let states = [
            random_density(2, 1, 2, 61).unwrap(),
            random_density(2, 1, 1, 62).unwrap(),
        ];
        let p = [0.3, 0.7];
        let cq = make_classical_quantum(&p, &identity(2), &states).unwrap();
        let ens = conditional_ensemble(&cq, &VonNeumannMeasurement::computational(2)).unwrap();
        for ((outcome, &want_p), want_state) in ens.outcomes.iter().zip(&p).zip(&states) {
            assert_abs_diff_eq!(outcome.probability, want_p, epsilon = 1e-12);
            assert!(
                max_abs_diff(outcome.state.as_ref().unwrap().matrix(), want_state.matrix())
                    < 1e-10
            );
        }
    }

    #[test]
    fn zero_probability_outcomes_are_flagged_not_divided() {
        // register weight 0 on the second level
        let states = [
            random_density(2, 1, 2, 71).unwrap(),
            random_density(2, 1, 2, 72).unwrap(),
        ];
        let cq = make_classical_quantum(&[1.0, 0.0], &identity(2), &states).unwrap();
        let ens = conditional_ensemble(&cq, &VonNeumannMeasurement::computational(2)).unwrap();
        assert!(ens.outcomes[1].probability <= ZERO_PROB_EPS);
        assert!(ens.outcomes[1].state.is_none());
        assert!(ens.outcomes[0].state.is_some());
    }

    #[test]
    fn ensemble_recombines_to_the_b_marginal() {
        let rho = random_density(2, 3, 6, 81).unwrap();
        let m = VonNeumannMeasurement::from_unitary(&haar_unitary(2, &mut SplitRng::new(82)))
            .unwrap();
        let ens = conditional_ensemble(&rho, &m).unwrap();
        let total: f64 = ens.outcomes.iter().map(|o| o.probability).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        let mut recombined = CMatrix::zeros(3, 3);
        for o in &ens.outcomes {
            if let Some(state) = &o.state {
                recombined += state.matrix() * re(o.probability);
            }
        }
        let rho_b = rho.partial_trace(Subsystem::B);
        assert!(max_abs_diff(&recombined, rho_b.matrix()) < 1e-9);
    }

    #[test]
    fn conditional_states_are_covariant_under_local_unitaries() {
        let rho = random_density(2, 2, 4, 91).unwrap();
        let ua = haar_unitary(2, &mut SplitRng::new(92));
        let ub = haar_unitary(2, &mut SplitRng::new(93));
        let global = crate::linalg::kron(&ua, &ub);
        let rotated = DensityMatrix::new(
            2,
            2,
            hermitize(&(&global * rho.matrix() * global.adjoint())),
        )
        .unwrap();

        let v = haar_unitary(2, &mut SplitRng::new(94));
        let m = VonNeumannMeasurement::from_unitary(&v).unwrap();
        // measuring the rotated state with M matches measuring the original
        // with M' = {U_A† M_j U_A}, up to the U_B rotation of the outcomes
        let m_prime = VonNeumannMeasurement::from_unitary(&(ua.adjoint() * &v)).unwrap();

        let ens_rot = conditional_ensemble(&rotated, &m).unwrap();
        let ens_orig = conditional_ensemble(&rho, &m_prime).unwrap();
        for (o_rot, o_orig) in ens_rot.outcomes.iter().zip(&ens_orig.outcomes) {
            assert_abs_diff_eq!(o_rot.probability, o_orig.probability, epsilon = 1e-9);
            let rotated_state = &ub * o_orig.state.as_ref().unwrap().matrix() * ub.adjoint();
            assert!(max_abs_diff(o_rot.state.as_ref().unwrap().matrix(), &rotated_state) < 1e-9);
        }
    }

    #[test]
    fn measuring_bell_dephases_it() {
        let bell = make_bell();
        let m = VonNeumannMeasurement::computational(2);
        let measured = apply_measurement(&bell, &m).unwrap();
        let mut want = CMatrix::zeros(4, 4);
        want[(0, 0)] = re(0.5);
        want[(3, 3)] = re(0.5);
        assert!(max_abs_diff(measured.matrix(), &want) < 1e-12);
        assert_abs_diff_eq!(measured.matrix().trace().re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn measurement_is_idempotent_and_fixes_classical_quantum_states() {
        let rho = random_density(2, 2, 4, 95).unwrap();
        let m = VonNeumannMeasurement::from_unitary(&haar_unitary(2, &mut SplitRng::new(96)))
            .unwrap();
        let once = apply_measurement(&rho, &m).unwrap();
        let twice = apply_measurement(&once, &m).unwrap();
        assert!(max_abs_diff(once.matrix(), twice.matrix()) < 1e-9);

        // a classical-quantum state in M's own basis is a fixed point
        let states = [
            random_density(2, 1, 2, 97).unwrap(),
            random_density(2, 1, 2, 98).unwrap(),
        ];
        let u = haar_unitary(2, &mut SplitRng::new(99));
        let cq = make_classical_quantum(&[0.4, 0.6], &u, &states).unwrap();
        let m_own = VonNeumannMeasurement::from_unitary(&u).unwrap();
        let fixed = apply_measurement(&cq, &m_own).unwrap();
        assert!(max_abs_diff(fixed.matrix(), cq.matrix()) < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn arbitrary_params_give_valid_measurements(
            theta in -10.0f64..10.0,
            phi in -10.0f64..10.0,
            theta2 in -10.0f64..10.0,
            phi2 in -10.0f64..10.0,
        ) {
            let m2 = VonNeumannMeasurement::from_params(2, &[theta, phi]).unwrap();
            prop_assert!(measurement_invariants_hold(&m2));
            let m3 = VonNeumannMeasurement::from_params(
                3,
                &[theta, phi, theta2, phi2, theta - theta2, phi + phi2],
            )
            .unwrap();
            prop_assert!(measurement_invariants_hold(&m3));
        }
    }
}
