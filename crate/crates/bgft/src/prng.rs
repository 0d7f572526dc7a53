//! Deterministic PRNG for the experiment harness and graph generators.
//!
//! The stream contract is pinned so every emitted number is bit-reproducible
//! across platforms and runs: xoshiro256++ state, seeded by expanding the
//! 64-bit user seed through splitmix64, Gaussian variates by Box–Muller, and
//! complex Gaussians as `(g₁ + i·g₂)/√2`. Per-trial substreams are derived as
//! `splitmix64(seed XOR trial_index)` so trial results do not depend on
//! execution order.

use num_complex::Complex;

use crate::scalar::Scalar;

const SPLITMIX64_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(SPLITMIX64_GAMMA);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// xoshiro256++ generator with a fixed seeding and variate contract.
#[derive(Debug, Clone)]
pub struct Prng {
    state: [u64; 4],
    gauss_spare: Option<f64>,
}

impl Prng {
    /// Seeds the 256-bit state by running splitmix64 on the user seed.
    pub fn new(seed: u64) -> Self {
        let mut sm = seed;
        let state = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Self {
            state,
            gauss_spare: None,
        }
    }

    /// Independent substream for one trial: `splitmix64(seed XOR trial_index)`
    /// becomes the substream seed, so results are identical whether trials run
    /// serially or in parallel.
    pub fn substream(seed: u64, trial_index: u64) -> Self {
        let mut sm = seed ^ trial_index;
        Self::new(splitmix64(&mut sm))
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[0].wrapping_add(s[3]).rotate_left(23).wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `{0, 1, …, bound−1}` by rejection, bias-free.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Standard normal variate by Box–Muller; the second variate of each pair
    /// is cached and returned by the next call.
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(g) = self.gauss_spare.take() {
            return g;
        }
        // u1 in (0, 1] keeps ln(u1) finite.
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.gauss_spare = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Standard normal variate converted to the target scalar.
    pub fn gaussian<T: Scalar>(&mut self) -> T {
        T::lit(self.next_gaussian())
    }

    /// Unit-variance complex Gaussian `(g₁ + i·g₂)/√2` (so `E|z|² = 1`).
    pub fn complex_gaussian<T: Scalar>(&mut self) -> Complex<T> {
        let g1 = self.next_gaussian();
        let g2 = self.next_gaussian();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Complex::new(T::lit(g1 * s), T::lit(g2 * s))
    }

    /// Vector of unit-variance complex Gaussians.
    pub fn complex_gaussian_vec<T: Scalar>(&mut self, len: usize) -> Vec<Complex<T>> {
        (0..len).map(|_| self.complex_gaussian()).collect()
    }

    /// `count` distinct values from `0..n`, ascending, via partial
    /// Fisher–Yates.
    pub fn distinct_indices(&mut self, n: usize, count: usize) -> Vec<usize> {
        assert!(
            count <= n,
            "cannot draw {count} distinct values from 0..{n}"
        );
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..count {
            let j = i + self.next_below((n - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut picked = pool[..count].to_vec();
        picked.sort_unstable();
        picked
    }
}
