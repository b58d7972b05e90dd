//! Seeded randomness. All sampling flows through [`SplitRng`], a ChaCha8
//! stream keyed by a 64-bit seed that can spawn independent child streams by
//! index. Child seeds depend only on (parent seed, index), never on draw
//! order, so batched work stays reproducible no matter how it is scheduled.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{c64, re, CMatrix};

#[derive(Debug, Clone)]
pub struct SplitRng {
    seed: u64,
    rng: ChaCha8Rng,
}

/// splitmix64 finalizer; decorrelates consecutive child indices.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl SplitRng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream for subtask `index`; does not advance this stream.
    pub fn child(&self, index: u64) -> Self {
        Self::new(mix(self.seed ^ mix(index.wrapping_add(1))))
    }

    pub fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        self.rng.gen_range(low..high)
    }
}

impl RngCore for SplitRng {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// Matrix of iid standard complex Gaussians, entries drawn row-major.
pub fn ginibre(rows: usize, cols: usize, rng: &mut SplitRng) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = c64(rng.standard_normal(), rng.standard_normal());
        }
    }
    m
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R diagonal
/// phases folded back into Q so the distribution is exactly invariant.
pub fn haar_unitary(dim: usize, rng: &mut SplitRng) -> CMatrix {
    let g = ginibre(dim, dim, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / re(d.norm()) } else { re(1.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}
