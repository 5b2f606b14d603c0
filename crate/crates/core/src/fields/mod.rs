//! Super derivations of the free algebra.
//!
//! A field is stored as its coefficient list over `∂_{t_1}, …, ∂_{t_r},
//! ∂_{θ_1}, …, ∂_{θ_s}`, with coefficients written on the left. A derivation
//! `X` is determined by its values on the coordinates, and `X(x_k)` is exactly
//! the `k`-th coefficient, which fixes the bracket formula
//!
//! ```text
//! [X, Y]_k = X(Y_k) - (-1)^{|X||Y|} Y(X_k)
//! ```
//!
//! on homogeneous fields. Mixed fields are split into parity parts first.

mod graded;

use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::kernel::{same_signature, Coordinate, Parity, Point, Rational, Signature, SuperPolynomial};

pub use graded::GradedField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    sig: Arc<Signature>,
    coeffs: Vec<SuperPolynomial>,
}

impl VectorField {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        VectorField {
            sig: Arc::clone(sig),
            coeffs: vec![SuperPolynomial::zero(sig); sig.dim()],
        }
    }

    /// The coordinate derivation `∂_c`.
    pub fn coordinate(sig: &Arc<Signature>, c: Coordinate) -> Result<Self> {
        sig.check(c)?;
        let mut x = Self::zero(sig);
        x.coeffs[sig.slot(c)] = SuperPolynomial::one(sig);
        Ok(x)
    }

    /// `f ∂_c`.
    pub fn monomial_field(f: SuperPolynomial, c: Coordinate) -> Result<Self> {
        let sig = Arc::clone(f.signature());
        sig.check(c)?;
        let mut x = Self::zero(&sig);
        let slot = sig.slot(c);
        x.coeffs[slot] = f;
        Ok(x)
    }

    pub fn from_coeffs(sig: &Arc<Signature>, coeffs: Vec<SuperPolynomial>) -> Result<Self> {
        if coeffs.len() != sig.dim() {
            return Err(Error::SignatureMismatch(format!(
                "expected {} coefficients, got {}",
                sig.dim(),
                coeffs.len()
            )));
        }
        for c in &coeffs {
            same_signature(sig, c.signature())?;
        }
        Ok(VectorField {
            sig: Arc::clone(sig),
            coeffs,
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn coeffs(&self) -> &[SuperPolynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, c: Coordinate) -> &SuperPolynomial {
        &self.coeffs[self.sig.slot(c)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperPolynomial::is_zero)
    }

    /// Highest coefficient degree; `None` for the zero field.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(SuperPolynomial::degree).max()
    }

    fn slot_parity(&self, slot: usize) -> Parity {
        self.sig.coordinate_at(slot).parity()
    }

    /// Parity when homogeneous; the zero field counts as even.
    ///
    /// A term `m ∂_c` has parity `|m| + |c|`, since `∂_θ` is itself odd.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for (slot, c) in self.coeffs.iter().enumerate() {
            let dp = self.slot_parity(slot);
            for (m, _) in c.terms() {
                let p = m.parity() + dp;
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn homogeneous_parity(&self, what: &str) -> Result<Parity> {
        self.parity()
            .ok_or_else(|| Error::ParityViolation(format!("{what} is not parity-homogeneous")))
    }

    pub fn parity_part(&self, parity: Parity) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(slot, c)| c.parity_part(parity + self.slot_parity(slot)))
            .collect();
        VectorField {
            sig: Arc::clone(&self.sig),
            coeffs,
        }
    }

    /// Nonzero homogeneous parts with their parities.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, VectorField)> {
        if let Some(p) = self.parity() {
            return if self.is_zero() {
                Vec::new()
            } else {
                vec![(p, self.clone())]
            };
        }
        [Parity::Even, Parity::Odd]
            .into_iter()
            .map(|p| (p, self.parity_part(p)))
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    /// `X(f) = Σ_k X_k · ∂_k f`.
    pub fn apply(&self, f: &SuperPolynomial) -> Result<SuperPolynomial> {
        same_signature(&self.sig, f.signature())?;
        Ok(self.apply_unchecked(f))
    }

    pub(crate) fn apply_unchecked(&self, f: &SuperPolynomial) -> SuperPolynomial {
        let mut out = SuperPolynomial::zero(&self.sig);
        for (slot, u) in self.coeffs.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            let d = f.partial_unchecked(self.sig.coordinate_at(slot));
            if !d.is_zero() {
                out = &out + &(u * &d);
            }
        }
        out
    }

    /// Lie superbracket, extended bilinearly to mixed fields.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        same_signature(&self.sig, other.signature())?;
        let mut out = Self::zero(&self.sig);
        for (p, x) in self.homogeneous_parts() {
            for (q, y) in other.homogeneous_parts() {
                let sign = p.koszul(q);
                let coeffs = (0..self.sig.dim())
                    .map(|k| {
                        let xy = x.apply_unchecked(&y.coeffs[k]);
                        let yx = y.apply_unchecked(&x.coeffs[k]);
                        if sign == 1 {
                            &xy - &yx
                        } else {
                            &xy + &yx
                        }
                    })
                    .collect();
                out = &out
                    + &VectorField {
                        sig: Arc::clone(&self.sig),
                        coeffs,
                    };
            }
        }
        Ok(out)
    }

    /// `f · X`, coefficients multiplied on the left.
    pub fn left_mul(&self, f: &SuperPolynomial) -> Result<Self> {
        same_signature(&self.sig, f.signature())?;
        Ok(VectorField {
            sig: Arc::clone(&self.sig),
            coeffs: self.coeffs.iter().map(|c| f * c).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        VectorField {
            sig: Arc::clone(&self.sig),
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Recenters every coefficient at `p` (substitutes `t_i ↦ t_i + p_i`).
    /// Coordinate derivations are translation invariant, so this is the same
    /// derivation written in coordinates centered at `p`.
    pub fn translate(&self, p: &Point) -> Result<Self> {
        Ok(VectorField {
            sig: Arc::clone(&self.sig),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.translate(p))
                .collect::<Result<_>>()?,
        })
    }

    /// Filtration level `d` at the origin: `X ∈ 𝔏(d) \ 𝔏(d+1)`, i.e. the
    /// smallest coefficient degree minus one.
    pub fn fil_degree(&self) -> Result<i64> {
        self.coeffs
            .iter()
            .filter_map(SuperPolynomial::min_degree)
            .min()
            .map(|d| d as i64 - 1)
            .ok_or(Error::ZeroInput("vector field"))
    }

    /// Leading graded part at the origin.
    pub fn symbol(&self) -> Result<GradedField> {
        let level = self.fil_degree()?;
        let keep = (level + 1) as usize;
        let field = VectorField {
            sig: Arc::clone(&self.sig),
            coeffs: self.coeffs.iter().map(|c| c.homogeneous_part(keep)).collect(),
        };
        Ok(GradedField::new_unchecked(field, level))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_signature(&self.sig, other.signature())?;
        Ok(self + other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_signature(&self.sig, other.signature())?;
        Ok(self - other)
    }
}

/// `f · X`.
pub fn scale_field(f: &SuperPolynomial, x: &VectorField) -> Result<VectorField> {
    x.left_mul(f)
}

/// The coordinate fields `∂_{t_1}, …, ∂_{θ_s}` in declaration order.
pub fn coordinate_fields(sig: &Arc<Signature>) -> Vec<VectorField> {
    sig.coordinates()
        .map(|c| VectorField::coordinate(sig, c).expect("coordinate from signature"))
        .collect()
}

impl Add for &VectorField {
    type Output = VectorField;

    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            sig: Arc::clone(&self.sig),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;

    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            sig: Arc::clone(&self.sig),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &VectorField {
    type Output = VectorField;

    fn neg(self) -> VectorField {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn sig(r: usize, s: usize) -> Arc<Signature> {
        Signature::standard(r, s).unwrap().shared()
    }

    fn t(g: &Arc<Signature>, i: usize) -> SuperPolynomial {
        SuperPolynomial::var(g, Coordinate::even(i)).unwrap()
    }

    fn th(g: &Arc<Signature>, j: usize) -> SuperPolynomial {
        SuperPolynomial::var(g, Coordinate::odd(j)).unwrap()
    }

    fn dt(g: &Arc<Signature>, i: usize) -> VectorField {
        VectorField::coordinate(g, Coordinate::even(i)).unwrap()
    }

    fn dth(g: &Arc<Signature>, j: usize) -> VectorField {
        VectorField::coordinate(g, Coordinate::odd(j)).unwrap()
    }

    #[test]
    fn apply_examples() {
        let g = sig(1, 1);
        assert_eq!(dt(&g, 0).apply(&t(&g, 0)).unwrap(), SuperPolynomial::one(&g));
        let x = dt(&g, 0).left_mul(&th(&g, 0)).unwrap();
        assert!(x.apply(&(&t(&g, 0) * &th(&g, 0))).unwrap().is_zero());
        let x = dth(&g, 0).left_mul(&t(&g, 0)).unwrap();
        assert_eq!(x.apply(&th(&g, 0)).unwrap(), t(&g, 0));
    }

    #[test]
    fn bracket_examples() {
        let g = sig(1, 0);
        let tdt = dt(&g, 0).left_mul(&t(&g, 0)).unwrap();
        assert_eq!(dt(&g, 0).bracket(&tdt).unwrap(), dt(&g, 0));

        let g = sig(0, 1);
        let euler = dth(&g, 0).left_mul(&th(&g, 0)).unwrap();
        assert_eq!(euler.bracket(&dth(&g, 0)).unwrap(), -&dth(&g, 0));
        assert!(dth(&g, 0).bracket(&dth(&g, 0)).unwrap().is_zero());
    }

    #[test]
    fn scale_examples() {
        let g = sig(1, 2);
        let x = dth(&g, 1).left_mul(&th(&g, 0)).unwrap();
        assert_eq!(x.parity(), Some(Parity::Even));
        let y = dt(&g, 0).left_mul(&th(&g, 0)).unwrap();
        assert!(y.left_mul(&th(&g, 0)).unwrap().is_zero());
        assert_eq!(y.parity(), Some(Parity::Odd));
    }

    #[test]
    fn filtration_and_symbol() {
        let g = sig(1, 1);
        let x = t(&g, 0);
        assert_eq!(dt(&g, 0).fil_degree().unwrap(), -1);
        let f = dt(&g, 0).left_mul(&x.pow(2)).unwrap();
        assert_eq!(f.fil_degree().unwrap(), 1);
        let mixed = &dt(&g, 0).left_mul(&th(&g, 0)).unwrap() + &dth(&g, 0).left_mul(&x.pow(2)).unwrap();
        assert_eq!(mixed.fil_degree().unwrap(), 0);
        let sym = mixed.symbol().unwrap();
        assert_eq!(sym.level(), 0);
        assert_eq!(sym.field(), &dt(&g, 0).left_mul(&th(&g, 0)).unwrap());

        let f = &dt(&g, 0).left_mul(&x.pow(2)).unwrap() + &dt(&g, 0).left_mul(&x.pow(3)).unwrap();
        assert_eq!(f.symbol().unwrap().field(), &dt(&g, 0).left_mul(&x.pow(2)).unwrap());
        let f = &dt(&g, 0) + &dt(&g, 0).left_mul(&x).unwrap();
        let sym = f.symbol().unwrap();
        assert_eq!((sym.level(), sym.field()), (-1, &dt(&g, 0)));
        assert!(VectorField::zero(&g).fil_degree().is_err());
    }

    #[test]
    fn coordinate_fields_are_dual_to_coordinates() {
        let g = sig(2, 2);
        for (a, x) in coordinate_fields(&g).iter().enumerate() {
            for (b, c) in g.coordinates().enumerate() {
                let v = x.apply(&SuperPolynomial::var(&g, c).unwrap()).unwrap();
                let expect = if a == b { 1 } else { 0 };
                assert_eq!(v, SuperPolynomial::from_integer(&g, expect));
            }
        }
    }

    #[test]
    fn mixed_bracket_is_bilinear() {
        let g = sig(1, 1);
        let x = &dt(&g, 0) + &dth(&g, 0);
        let y = &dt(&g, 0).left_mul(&th(&g, 0)).unwrap() + &dt(&g, 0).left_mul(&t(&g, 0)).unwrap();
        let lhs = x.bracket(&y).unwrap();
        let mut rhs = VectorField::zero(&g);
        for a in [dt(&g, 0), dth(&g, 0)] {
            for b in [
                dt(&g, 0).left_mul(&th(&g, 0)).unwrap(),
                dt(&g, 0).left_mul(&t(&g, 0)).unwrap(),
            ] {
                rhs = &rhs + &a.bracket(&b).unwrap();
            }
        }
        assert_eq!(lhs, rhs);
        assert_eq!(x.scale(&rat(2)), &x + &x);
    }
}
