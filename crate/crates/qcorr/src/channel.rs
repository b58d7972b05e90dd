//! Trace-preserving quantum operations in Kraus form, applicable to one
//! subsystem or the whole space, plus the standard named channels used as
//! monotonicity fixtures.

use crate::error::{Error, Result};
use crate::linalg::{c64, hermitize, identity, kron, max_abs_diff, re, CMatrix, HERMITICITY_EPS};
use crate::rng::{ginibre, SplitRng};
use crate::state::DensityMatrix;

/// Which factor of the bipartite space a channel acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelTarget {
    A,
    B,
    Global,
}

#[derive(Debug, Clone)]
pub struct KrausChannel {
    kraus_ops: Vec<CMatrix>,
    target: ChannelTarget,
}

impl KrausChannel {
    /// Validates the trace-preservation condition Σ K†K = I.
    pub fn new(kraus_ops: Vec<CMatrix>, target: ChannelTarget) -> Result<Self> {
        let dim = match kraus_ops.first() {
            Some(k) if k.nrows() == k.ncols() => k.nrows(),
            Some(k) => {
                return Err(Error::NotSquare {
                    rows: k.nrows(),
                    cols: k.ncols(),
                })
            }
            None => {
                return Err(Error::NotTracePreserving { residual: 1.0 });
            }
        };
        let mut sum = CMatrix::zeros(dim, dim);
        for k in &kraus_ops {
            if k.nrows() != dim || k.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    left: k.nrows(),
                    right: dim,
                });
            }
            sum += k.adjoint() * k;
        }
        let residual = max_abs_diff(&sum, &identity(dim));
        if residual > HERMITICITY_EPS {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(Self { kraus_ops, target })
    }

    pub fn kraus_ops(&self) -> &[CMatrix] {
        &self.kraus_ops
    }

    pub fn target(&self) -> ChannelTarget {
        self.target
    }

    /// Dimension the Kraus operators act on.
    pub fn dim(&self) -> usize {
        self.kraus_ops[0].nrows()
    }

    pub fn identity_channel(dim: usize, target: ChannelTarget) -> Self {
        Self::new(vec![identity(dim)], target).expect("identity is trace-preserving")
    }

    /// Λ(ρ) = (1−p)ρ + p I/d, realized by the Weyl-operator Kraus set.
    pub fn depolarizing(p: f64, dim: usize, target: ChannelTarget) -> Result<Self> {
        check_unit_interval(p)?;
        let d = dim as f64;
        let mut ops = Vec::with_capacity(dim * dim);
        let base = (p / (d * d)).sqrt();
        for a in 0..dim {
            for b in 0..dim {
                // W_{ab} = X^a Z^b with X|k⟩ = |k+a mod d⟩, Z|k⟩ = ω^{bk}|k⟩
                let mut w = CMatrix::zeros(dim, dim);
                for k in 0..dim {
                    let angle = std::f64::consts::TAU * (b * k) as f64 / d;
                    w[((k + a) % dim, k)] = c64(angle.cos(), angle.sin());
                }
                let weight = if a == 0 && b == 0 {
                    (1.0 - p + p / (d * d)).sqrt()
                } else {
                    base
                };
                ops.push(w * re(weight));
            }
        }
        Self::new(ops, target)
    }

    /// Kills off-diagonal terms in the computational basis with strength p.
    pub fn dephasing(p: f64, dim: usize, target: ChannelTarget) -> Result<Self> {
        check_unit_interval(p)?;
        let mut ops = vec![identity(dim) * re((1.0 - p).sqrt())];
        for j in 0..dim {
            let mut k = CMatrix::zeros(dim, dim);
            k[(j, j)] = re(p.sqrt());
            ops.push(k);
        }
        Self::new(ops, target)
    }

    /// Decays every excited level toward |0⟩ with strength γ.
    pub fn amplitude_damping(gamma: f64, dim: usize, target: ChannelTarget) -> Result<Self> {
        check_unit_interval(gamma)?;
        let mut keep = CMatrix::zeros(dim, dim);
        keep[(0, 0)] = re(1.0);
        for j in 1..dim {
            keep[(j, j)] = re((1.0 - gamma).sqrt());
        }
        let mut ops = vec![keep];
        for j in 1..dim {
            let mut k = CMatrix::zeros(dim, dim);
            k[(0, j)] = re(gamma.sqrt());
            ops.push(k);
        }
        Self::new(ops, target)
    }

    /// Uniformly random CPTP channel with the given Kraus rank, via a Haar
    /// isometry sliced into Kraus operators.
    pub fn random(dim: usize, kraus_rank: usize, target: ChannelTarget, rng: &mut SplitRng) -> Self {
        let rank = kraus_rank.max(1);
        let g = ginibre(dim * rank, dim, rng);
        let q = g.qr().q();
        let ops = (0..rank)
            .map(|i| {
                CMatrix::from_fn(dim, dim, |r, c| q[(i * dim + r, c)])
            })
            .collect();
        Self::new(ops, target).expect("isometry slices are trace-preserving")
    }
}

fn check_unit_interval(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfRange { value: p });
    }
    Ok(())
}

/// Apply the channel to its target subsystem: Σ K̃ ρ K̃† with K̃ the Kraus
/// operator lifted by identities on the untouched factor.
pub fn apply_channel(rho: &DensityMatrix, channel: &KrausChannel) -> Result<DensityMatrix> {
    let expected = match channel.target() {
        ChannelTarget::A => rho.dim_a(),
        ChannelTarget::B => rho.dim_b(),
        ChannelTarget::Global => rho.dim(),
    };
    if channel.dim() != expected {
        return Err(Error::DimensionMismatch {
            left: channel.dim(),
            right: expected,
        });
    }
    let mut out = CMatrix::zeros(rho.dim(), rho.dim());
    for k in channel.kraus_ops() {
        let lifted = match channel.target() {
            ChannelTarget::A => kron(k, &identity(rho.dim_b())),
            ChannelTarget::B => kron(&identity(rho.dim_a()), k),
            ChannelTarget::Global => k.clone(),
        };
        out += &lifted * rho.matrix() * lifted.adjoint();
    }
    DensityMatrix::new(rho.dim_a(), rho.dim_b(), hermitize(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::state::{make_product, random_density, Subsystem};
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_channel_is_a_no_op() {
        let rho = random_density(2, 2, 4, 17).unwrap();
        let ch = KrausChannel::identity_channel(4, ChannelTarget::Global);
        let out = apply_channel(&rho, &ch).unwrap();
        assert!(max_abs_diff(out.matrix(), rho.matrix()) < 1e-12);
        let depol0 = KrausChannel::depolarizing(0.0, 2, ChannelTarget::A).unwrap();
        let out = apply_channel(&rho, &depol0).unwrap();
        assert!(max_abs_diff(out.matrix(), rho.matrix()) < 1e-12);
    }

    #[test]
    fn full_depolarizing_on_b_gives_maximally_mixed_marginal() {
        let a = random_density(2, 1, 2, 18).unwrap();
        let b = random_density(3, 1, 3, 19).unwrap();
        let prod = make_product(&a, &b);
        let ch = KrausChannel::depolarizing(1.0, 3, ChannelTarget::B).unwrap();
        let out = apply_channel(&prod, &ch).unwrap();
        let want = kron(a.matrix(), &(identity(3) * re(1.0 / 3.0)));
        assert!(max_abs_diff(out.matrix(), &want) < 1e-12);
    }

    #[test]
    fn full_dephasing_kills_coherences() {
        let plus = CMatrix::from_fn(2, 2, |_, _| re(0.5));
        let rho = DensityMatrix::new(2, 1, plus).unwrap();
        let ch = KrausChannel::dephasing(1.0, 2, ChannelTarget::A).unwrap();
        let out = apply_channel(&rho, &ch).unwrap();
        assert_abs_diff_eq!(out.matrix()[(0, 0)].re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(out.matrix()[(1, 1)].re, 0.5, epsilon = 1e-12);
        assert!(out.matrix()[(0, 1)].norm() < 1e-12);
    }

    #[test]
    fn full_amplitude_damping_resets_to_ground() {
        let rho = DensityMatrix::new(2, 1, identity(2) * re(0.5)).unwrap();
        let ch = KrausChannel::amplitude_damping(1.0, 2, ChannelTarget::A).unwrap();
        let out = apply_channel(&rho, &ch).unwrap();
        assert_abs_diff_eq!(out.matrix()[(0, 0)].re, 1.0, epsilon = 1e-12);
        assert!(out.matrix()[(1, 1)].norm() < 1e-12);
    }

    #[test]
    fn random_channels_preserve_state_validity() {
        let rho = random_density(2, 2, 4, 17).unwrap();
        for rank in 1..=4 {
            let ch = KrausChannel::random(4, rank, ChannelTarget::Global, &mut SplitRng::new(17));
            let out = apply_channel(&rho, &ch).unwrap();
            assert_abs_diff_eq!(out.matrix().trace().re, 1.0, epsilon = 1e-10);
            let min_eig = out.spectrum().eigenvalues.last().copied().unwrap();
            assert!(min_eig >= 0.0);
        }
    }

    #[test]
    fn non_trace_preserving_sets_are_rejected() {
        let half = identity(2) * re(0.5);
        assert!(matches!(
            KrausChannel::new(vec![half], ChannelTarget::A),
            Err(Error::NotTracePreserving { .. })
        ));
        assert!(KrausChannel::depolarizing(1.5, 2, ChannelTarget::A).is_err());
        assert!(KrausChannel::amplitude_damping(-0.1, 2, ChannelTarget::A).is_err());
    }

    #[test]
    fn channel_dimension_must_match_target() {
        let rho = random_density(2, 3, 6, 20).unwrap();
        let ch = KrausChannel::dephasing(0.5, 2, ChannelTarget::B).unwrap();
        assert!(apply_channel(&rho, &ch).is_err());
        let ch = KrausChannel::dephasing(0.5, 3, ChannelTarget::B).unwrap();
        assert!(apply_channel(&rho, &ch).is_ok());
    }

    #[test]
    fn depolarizing_interpolates_toward_maximally_mixed() {
        let rho = random_density(3, 1, 3, 23).unwrap();
        let ch = KrausChannel::depolarizing(0.4, 3, ChannelTarget::A).unwrap();
        let out = apply_channel(&rho, &ch).unwrap();
        let want = rho.matrix() * re(0.6) + identity(3) * re(0.4 / 3.0);
        assert!(max_abs_diff(out.matrix(), &want) < 1e-12);
        // marginal of the bipartite embedding is untouched on the other side
        let rho2 = random_density(2, 2, 4, 24).unwrap();
        let chb = KrausChannel::depolarizing(0.7, 2, ChannelTarget::B).unwrap();
        let out2 = apply_channel(&rho2, &chb).unwrap();
        assert!(max_abs_diff(
            out2.partial_trace(Subsystem::A).matrix(),
            rho2.partial_trace(Subsystem::A).matrix()
        ) < 1e-10);
    }
}
