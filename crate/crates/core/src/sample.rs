//! Seeded random sampling for property checks.
//!
//! All randomized verification in this crate draws from [`Sampler`], a thin
//! wrapper over a counter-based generator seeded explicitly, so every suite
//! run is reproducible from its seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fpoly::{monomials_of_degree, FpPoly, Monomial, PrimeField};

pub const DEFAULT_SEED: u64 = 0x5eed_cafe_f00d;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn from_seed(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn u64_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        self.rng.gen_range(0..bound)
    }

    pub fn usize_below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        self.rng.gen_range(0..bound)
    }

    pub fn scalar(&mut self, field: PrimeField) -> u64 {
        self.u64_below(field.p())
    }

    pub fn nonzero_scalar(&mut self, field: PrimeField) -> u64 {
        1 + self.u64_below(field.p() - 1)
    }

    pub fn monomial(&mut self, nvars: usize, max_exp: u32) -> Monomial {
        Monomial::new((0..nvars).map(|_| self.u64_below(max_exp as u64 + 1) as u32).collect())
    }

    /// Random sparse polynomial: up to `max_terms` monomials with exponents
    /// in [0, max_exp], coefficients uniform (zero coefficients thin it out).
    pub fn poly(&mut self, field: PrimeField, nvars: usize, max_exp: u32, max_terms: usize) -> FpPoly {
        let mut f = FpPoly::zero(field, nvars);
        let k = 1 + self.usize_below(max_terms);
        for _ in 0..k {
            let m = self.monomial(nvars, max_exp);
            f.add_term(m, self.scalar(field));
        }
        f
    }

    /// Random homogeneous polynomial of exact degree `deg` (possibly zero if
    /// unlucky; callers needing nonzero should resample).
    pub fn homogeneous_poly(&mut self, field: PrimeField, nvars: usize, deg: u32, max_terms: usize) -> FpPoly {
        let all = monomials_of_degree(nvars, deg);
        let mut f = FpPoly::zero(field, nvars);
        let k = 1 + self.usize_below(max_terms);
        for _ in 0..k {
            let m = all[self.usize_below(all.len())].clone();
            f.add_term(m, self.scalar(field));
        }
        f
    }

    /// Uniform element of a short slice.
    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.usize_below(items.len())]
    }
}
