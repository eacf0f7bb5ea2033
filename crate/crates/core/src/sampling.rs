//! Seeded random exact elements.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::z2core::{Algebra, Element, Parity};

/// Small-height rationals `n/d` with `|n| ≤ 6`, `1 ≤ d ≤ 4`.
pub struct RationalSampler {
    rng: ChaCha8Rng,
}

impl RationalSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> BigRational {
        let n: i64 = self.rng.random_range(-6..=6);
        let d: i64 = self.rng.random_range(1..=4);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// Random element supported on basis vectors of the given parity
    /// (`None` means both).
    pub fn element(&mut self, alg: &Arc<Algebra>, parity: Option<Parity>) -> Element<BigRational> {
        let coeffs = (0..alg.dim())
            .map(|i| match parity {
                Some(p) if alg.parity(i) != p => BigRational::zero(),
                _ => self.rational(),
            })
            .collect();
        Element::new(alg, coeffs).expect("length matches dimension")
    }

    pub fn nonzero_element(&mut self, alg: &Arc<Algebra>, parity: Option<Parity>) -> Element<BigRational> {
        if parity.is_some_and(|p| alg.indices_of(p).is_empty()) {
            panic!("algebra {} has no basis vectors of the requested parity", alg.name());
        }
        loop {
            let e = self.element(alg, parity);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// Random element whose even component is nonzero.
    pub fn element_with_even(&mut self, alg: &Arc<Algebra>) -> Element<BigRational> {
        loop {
            let e = self.element(alg, None);
            if !e.even_part().is_zero() {
                return e;
            }
        }
    }
}
