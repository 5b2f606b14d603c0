//! Seeded random polynomials and fields for tests, scans and benchmarks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fields::VectorField;
use crate::kernel::{rat, Monomial, Parity, Point, Rational, Signature, SuperPolynomial};

#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    /// Coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    /// Upper bound on the number of terms per polynomial.
    pub max_terms: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            coeff_bound: 5,
            max_terms: 4,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn signature(&mut self, max_r: usize, max_s: usize) -> Arc<Signature> {
        loop {
            let r = self.rng.random_range(0..=max_r);
            let s = self.rng.random_range(0..=max_s);
            if r + s > 0 {
                return Signature::standard(r, s).expect("small signature").shared();
            }
        }
    }

    pub fn rational(&mut self) -> Rational {
        let b = self.coeff_bound;
        loop {
            let n = self.rng.random_range(-b..=b);
            if n != 0 {
                let d = if self.rng.random_bool(0.25) { self.rng.random_range(2..=3) } else { 1 };
                return Rational::new(n.into(), d.into());
            }
        }
    }

    /// Monomial of total degree at most `max_degree`, with the given parity if any.
    pub fn monomial(&mut self, sig: &Signature, max_degree: usize, parity: Option<Parity>) -> Option<Monomial> {
        for _ in 0..64 {
            let degree = self.rng.random_range(0..=max_degree);
            let mut even = vec![0u32; sig.r()];
            let mut odd = 0u64;
            for _ in 0..degree {
                let slot = self.rng.random_range(0..sig.dim());
                if slot < sig.r() {
                    even[slot] += 1;
                } else {
                    odd |= 1 << (slot - sig.r());
                }
            }
            let m = Monomial::new(even, odd);
            if parity.is_none_or(|p| m.parity() == p) {
                return Some(m);
            }
        }
        None
    }

    pub fn poly(&mut self, sig: &Arc<Signature>, max_degree: usize, parity: Option<Parity>) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(sig);
        let terms = self.rng.random_range(0..=self.max_terms);
        for _ in 0..terms {
            if let Some(m) = self.monomial(sig, max_degree, parity) {
                let c = self.rational();
                out = &out + &SuperPolynomial::term(sig, m, c).expect("own signature");
            }
        }
        out
    }

    pub fn nonzero_poly(&mut self, sig: &Arc<Signature>, max_degree: usize, parity: Option<Parity>) -> SuperPolynomial {
        loop {
            let p = self.poly(sig, max_degree, parity);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Field whose coefficient on `∂_c` has parity `parity + |c|` when a parity is requested.
    pub fn field(&mut self, sig: &Arc<Signature>, max_degree: usize, parity: Option<Parity>) -> VectorField {
        let coeffs = sig
            .coordinates()
            .map(|c| {
                if self.rng.random_bool(0.4) {
                    return SuperPolynomial::zero(sig);
                }
                let p = parity.map(|p| p + c.parity());
                let saved = self.max_terms;
                self.max_terms = saved.min(2);
                let out = self.poly(sig, max_degree, p);
                self.max_terms = saved;
                out
            })
            .collect();
        VectorField::from_coeffs(sig, coeffs).expect("own signature")
    }

    pub fn nonzero_field(&mut self, sig: &Arc<Signature>, max_degree: usize, parity: Option<Parity>) -> VectorField {
        loop {
            let x = self.field(sig, max_degree, parity);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn parity(&mut self) -> Parity {
        if self.rng.random_bool(0.5) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn point(&mut self, r: usize, bound: i64) -> Point {
        Point::new((0..r).map(|_| rat(self.rng.random_range(-bound..=bound))).collect())
    }
}
