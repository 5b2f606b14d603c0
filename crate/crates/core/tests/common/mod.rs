#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;

use superfield::kernel::{rat, Monomial, Parity, Signature, SuperPolynomial};
use superfield::VectorField;

pub fn sig(r: usize, s: usize) -> Arc<Signature> {
    Signature::standard(r, s).unwrap().shared()
}

pub fn monomial(r: usize, s: usize, max_degree: usize) -> impl Strategy<Value = Monomial> {
    (prop::collection::vec(0..=max_degree as u32, r), 0..(1u64 << s))
        .prop_map(|(even, odd)| Monomial::new(even, odd))
        .prop_filter("degree bound", move |m| m.total_degree() <= max_degree)
}

pub fn poly(sig: Arc<Signature>, max_degree: usize, parity: Option<Parity>) -> impl Strategy<Value = SuperPolynomial> {
    let (r, s) = (sig.r(), sig.s());
    prop::collection::vec((monomial(r, s, max_degree), -4i64..=4), 0..5).prop_map(move |terms| {
        terms
            .into_iter()
            .filter(|(m, _)| parity.is_none_or(|p| m.parity() == p))
            .fold(SuperPolynomial::zero(&sig), |acc, (m, c)| {
                &acc + &SuperPolynomial::term(&sig, m, rat(c)).unwrap()
            })
    })
}

pub fn field(sig: Arc<Signature>, max_degree: usize, parity: Option<Parity>) -> impl Strategy<Value = VectorField> {
    let slots: Vec<_> = sig
        .coordinates()
        .map(|c| poly(sig.clone(), max_degree, parity.map(|p| p + c.parity())))
        .collect();
    slots.prop_map(move |coeffs| VectorField::from_coeffs(&sig, coeffs).unwrap())
}

pub fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

pub fn koszul(p: Parity, q: Parity) -> superfield::Rational {
    rat(p.koszul(q) as i64)
}
