use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::signature::{same_signature, CoordKind, Coordinate, Parity, Signature};
use super::Rational;
use crate::error::{Error, Result};

/// A rational closed point. Odd coordinates are implicitly zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn origin(r: usize) -> Self {
        Point {
            coords: vec![Rational::zero(); r],
        }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check(&self, sig: &Signature) -> Result<()> {
        if self.coords.len() != sig.r() {
            return Err(Error::SignatureMismatch(format!(
                "point has {} coordinates but the algebra has {} even variables",
                self.coords.len(),
                sig.r()
            )));
        }
        Ok(())
    }
}

impl Neg for &Point {
    type Output = Point;

    fn neg(self) -> Point {
        Point::new(self.coords.iter().map(|c| -c).collect())
    }
}

/// Element of `k[t_1..t_r | θ_1..θ_s]` with exact rational coefficients.
///
/// Terms are kept in a sorted map keyed by monomials in graded-lex order; a
/// stored coefficient is never zero, so equality of values is structural.
///
/// The arithmetic operators panic on mismatched signatures; use the named
/// methods (`mul`, `add`, ...) for checked variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperPolynomial {
    sig: Arc<Signature>,
    terms: BTreeMap<Monomial, Rational>,
}

impl SuperPolynomial {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        SuperPolynomial {
            sig: Arc::clone(sig),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(sig: &Arc<Signature>, c: Rational) -> Self {
        let mut p = Self::zero(sig);
        p.add_term(Monomial::one(sig.r()), c);
        p
    }

    pub fn from_integer(sig: &Arc<Signature>, c: i64) -> Self {
        Self::constant(sig, Rational::from_integer(c.into()))
    }

    pub fn one(sig: &Arc<Signature>) -> Self {
        Self::constant(sig, Rational::one())
    }

    pub fn var(sig: &Arc<Signature>, c: Coordinate) -> Result<Self> {
        sig.check(c)?;
        let mut m = Monomial::one(sig.r());
        match c.kind {
            CoordKind::Even => {
                let mut even = m.even_exponents().to_vec();
                even[c.index] = 1;
                m = Monomial::new(even, 0);
            }
            CoordKind::Odd => m = Monomial::new(m.even_exponents().to_vec(), 1 << c.index),
        }
        let mut p = Self::zero(sig);
        p.add_term(m, Rational::one());
        Ok(p)
    }

    /// A single term `c · m`; the monomial must fit the signature.
    pub fn term(sig: &Arc<Signature>, m: Monomial, c: Rational) -> Result<Self> {
        if m.even_exponents().len() != sig.r()
            || (sig.s() < 64 && m.odd_mask() >> sig.s() != 0)
        {
            return Err(Error::SignatureMismatch(format!(
                "monomial does not fit {sig}"
            )));
        }
        let mut p = Self::zero(sig);
        p.add_term(m, c);
        Ok(p)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.sig.r()))
    }

    /// `Some(c)` when the polynomial is a scalar (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Highest total degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Lowest total degree; `None` for zero.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::total_degree).min()
    }

    /// Parity if every monomial shares it. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut iter = self.terms.keys().map(Monomial::parity);
        let first = iter.next().unwrap_or(Parity::Even);
        iter.all(|p| p == first).then_some(first)
    }

    pub fn homogeneous_parity(&self, what: &str) -> Result<Parity> {
        self.parity()
            .ok_or_else(|| Error::ParityViolation(format!("{what} is not parity-homogeneous")))
    }

    /// `(even part, odd part)`.
    pub fn parity_parts(&self) -> (Self, Self) {
        let mut even = Self::zero(&self.sig);
        let mut odd = Self::zero(&self.sig);
        for (m, c) in &self.terms {
            let target = if m.parity().is_odd() { &mut odd } else { &mut even };
            target.terms.insert(m.clone(), c.clone());
        }
        (even, odd)
    }

    pub fn parity_part(&self, parity: Parity) -> Self {
        self.filter(|m| m.parity() == parity)
    }

    pub fn homogeneous_part(&self, degree: usize) -> Self {
        self.filter(|m| m.total_degree() == degree)
    }

    fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        SuperPolynomial {
            sig: Arc::clone(&self.sig),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of the terms of minimal total degree.
    pub fn min_degree_part(&self) -> Result<Self> {
        let d = self.min_degree().ok_or(Error::ZeroInput("polynomial"))?;
        Ok(self.homogeneous_part(d))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_signature(&self.sig, &other.sig)?;
        Ok(self + other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_signature(&self.sig, &other.sig)?;
        Ok(self - other)
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        same_signature(&self.sig, &other.sig)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        SuperPolynomial {
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.sig);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `∂_c f`, with the left-derivative convention for odd `c`.
    pub fn partial(&self, c: Coordinate) -> Result<Self> {
        self.sig.check(c)?;
        Ok(self.partial_unchecked(c))
    }

    pub(crate) fn partial_unchecked(&self, c: Coordinate) -> Self {
        let mut out = Self::zero(&self.sig);
        for (m, a) in &self.terms {
            match c.kind {
                CoordKind::Even => {
                    if let Some((k, dm)) = m.d_even(c.index) {
                        out.add_term(dm, a * Rational::from_integer(k.into()));
                    }
                }
                CoordKind::Odd => {
                    if let Some((negative, dm)) = m.d_odd(c.index) {
                        out.add_term(dm, if negative { -a } else { a.clone() });
                    }
                }
            }
        }
        out
    }

    /// Value at a closed point: even coordinates substituted, odd ones sent to zero.
    pub fn evaluate(&self, p: &Point) -> Result<Rational> {
        p.check(&self.sig)?;
        let mut acc = Rational::zero();
        for (m, a) in &self.terms {
            if m.odd_mask() != 0 {
                continue;
            }
            let mut v = a.clone();
            for (x, &k) in p.coords.iter().zip(m.even_exponents()) {
                if k > 0 {
                    v *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Substitutes `t_i ↦ t_i + p_i`.
    pub fn translate(&self, p: &Point) -> Result<Self> {
        p.check(&self.sig)?;
        if p.is_origin() {
            return Ok(self.clone());
        }
        let r = self.sig.r();
        let mut out = Self::zero(&self.sig);
        for (m, a) in &self.terms {
            // expand ∏ (t_i + p_i)^{k_i} one variable at a time
            let mut partial: Vec<(Vec<u32>, Rational)> = vec![(vec![0; r], a.clone())];
            for (i, &k) in m.even_exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let shift = &p.coords[i];
                let mut next = Vec::with_capacity(partial.len() * (k as usize + 1));
                for (exps, c) in &partial {
                    let mut binom = BigInt::one();
                    for j in 0..=k {
                        // C(k, j) t^j p^(k-j)
                        let coeff = c
                            * Rational::from_integer(binom.clone())
                            * num_traits::pow(shift.clone(), (k - j) as usize);
                        if !coeff.is_zero() {
                            let mut e = exps.clone();
                            e[i] = j;
                            next.push((e, coeff));
                        }
                        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
                    }
                }
                partial = next;
            }
            for (exps, c) in partial {
                out.add_term(Monomial::new(exps, m.odd_mask()), c);
            }
        }
        Ok(out)
    }

    /// Largest absolute numerator/denominator size, useful for diagnostics.
    pub fn height_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl Add for &SuperPolynomial {
    type Output = SuperPolynomial;

    fn add(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        assert!(same_signature(&self.sig, &rhs.sig).is_ok(), "signature mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SuperPolynomial {
    type Output = SuperPolynomial;

    fn sub(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        assert!(same_signature(&self.sig, &rhs.sig).is_ok(), "signature mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &SuperPolynomial {
    type Output = SuperPolynomial;

    fn neg(self) -> SuperPolynomial {
        SuperPolynomial {
            sig: Arc::clone(&self.sig),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SuperPolynomial {
    type Output = SuperPolynomial;

    fn mul(self, rhs: &SuperPolynomial) -> SuperPolynomial {
        assert!(same_signature(&self.sig, &rhs.sig).is_ok(), "signature mismatch");
        let mut out = SuperPolynomial::zero(&self.sig);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(r: usize, s: usize) -> Arc<Signature> {
        Signature::standard(r, s).unwrap().shared()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn t(sig: &Arc<Signature>, i: usize) -> SuperPolynomial {
        SuperPolynomial::var(sig, Coordinate::even(i)).unwrap()
    }

    fn th(sig: &Arc<Signature>, j: usize) -> SuperPolynomial {
        SuperPolynomial::var(sig, Coordinate::odd(j)).unwrap()
    }

    #[test]
    fn odd_products() {
        let g = sig(0, 2);
        let (a, b) = (th(&g, 0), th(&g, 1));
        let ab = &a * &b;
        assert_eq!(&b * &a, -&ab);
        assert!((&a * &a).is_zero());
    }

    #[test]
    fn difference_of_squares_with_nilpotent() {
        let g = sig(1, 2);
        let x = t(&g, 0);
        let n = &th(&g, 0) * &th(&g, 1);
        let p = &(&x + &n) * &(&x - &n);
        assert_eq!(p, x.pow(2));
    }

    #[test]
    fn partials() {
        let g = sig(1, 2);
        let x = t(&g, 0);
        assert_eq!(
            x.pow(3).partial(Coordinate::even(0)).unwrap(),
            x.pow(2).scale(&q(3))
        );
        let ab = &th(&g, 0) * &th(&g, 1);
        assert_eq!(ab.partial(Coordinate::odd(1)).unwrap(), -&th(&g, 0));
        assert_eq!(ab.partial(Coordinate::odd(0)).unwrap(), th(&g, 1));
        assert!(ab.partial(Coordinate::odd(2)).is_err());
        assert!(x.partial(Coordinate::even(1)).is_err());
    }

    #[test]
    fn evaluation() {
        let g = sig(1, 2);
        let x = t(&g, 0);
        let f = &x.pow(2) + &SuperPolynomial::from_integer(&g, 3);
        assert_eq!(f.evaluate(&Point::from_integers(&[2])).unwrap(), q(7));
        let f = &(&th(&g, 0) * &th(&g, 1)) + &x.scale(&q(5));
        assert_eq!(f.evaluate(&Point::from_integers(&[1])).unwrap(), q(5));
        let g2 = sig(2, 2);
        let f = &(&t(&g2, 0) * &t(&g2, 1)) - &(&th(&g2, 0) * &th(&g2, 1));
        assert_eq!(f.evaluate(&Point::from_integers(&[1, -1])).unwrap(), q(-1));
        assert!(f.evaluate(&Point::from_integers(&[1])).is_err());
    }

    #[test]
    fn translation() {
        let g = sig(1, 1);
        let x = t(&g, 0);
        let one = SuperPolynomial::one(&g);
        let expect = &(&x.pow(2) + &x.scale(&q(2))) + &one;
        assert_eq!(x.pow(2).translate(&Point::from_integers(&[1])).unwrap(), expect);
        assert_eq!(
            th(&g, 0).translate(&Point::from_integers(&[5])).unwrap(),
            th(&g, 0)
        );
        let g2 = sig(2, 0);
        let (a, b) = (t(&g2, 0), t(&g2, 1));
        let got = (&a * &b).translate(&Point::from_integers(&[1, 2])).unwrap();
        let expect = &(&(&(&a * &b) + &a.scale(&q(2))) + &b) + &SuperPolynomial::from_integer(&g2, 2);
        assert_eq!(got, expect);
    }

    #[test]
    fn min_degree_parts() {
        let g = sig(1, 2);
        let x = t(&g, 0);
        assert_eq!((&x.pow(2) + &x.pow(4)).min_degree_part().unwrap(), x.pow(2));
        let f = &th(&g, 0) + &(&x * &th(&g, 1));
        assert_eq!(f.min_degree_part().unwrap(), th(&g, 0));
        let f = &(&SuperPolynomial::from_integer(&g, 3) + &x) + &(&th(&g, 0) * &th(&g, 1));
        assert_eq!(f.min_degree_part().unwrap(), SuperPolynomial::from_integer(&g, 3));
        assert_eq!(
            SuperPolynomial::zero(&g).min_degree_part(),
            Err(Error::ZeroInput("polynomial"))
        );
    }

    #[test]
    fn signature_mismatch_is_reported() {
        let a = SuperPolynomial::one(&sig(1, 0));
        let b = SuperPolynomial::one(&sig(0, 1));
        assert!(matches!(a.mul(&b), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn parity_queries() {
        let g = sig(1, 2);
        let f = &t(&g, 0) + &th(&g, 0);
        assert_eq!(f.parity(), None);
        let (e, o) = f.parity_parts();
        assert_eq!(e, t(&g, 0));
        assert_eq!(o, th(&g, 0));
        assert_eq!(SuperPolynomial::zero(&g).parity(), Some(Parity::Even));
    }
}
