use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Maximum number of odd variables. Odd monomials are stored as bitmasks.
pub const MAX_ODD: usize = 64;

/// The ℤ₂-degree of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    /// The Koszul sign `(-1)^(self * other)` as `1` or `-1`.
    pub fn koszul(self, other: Parity) -> i32 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;

    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl Mul for Parity {
    type Output = Parity;

    fn mul(self, rhs: Parity) -> Parity {
        if self.is_odd() && rhs.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordKind {
    Even,
    Odd,
}

/// One of the generators `t_i` or `θ_j`, indexed from zero within its kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coordinate {
    pub kind: CoordKind,
    pub index: usize,
}

impl Coordinate {
    pub fn even(index: usize) -> Self {
        Coordinate {
            kind: CoordKind::Even,
            index,
        }
    }

    pub fn odd(index: usize) -> Self {
        Coordinate {
            kind: CoordKind::Odd,
            index,
        }
    }

    pub fn parity(self) -> Parity {
        match self.kind {
            CoordKind::Even => Parity::Even,
            CoordKind::Odd => Parity::Odd,
        }
    }
}

/// Variable layout `r|s` of the free algebra `k[t_1..t_r | θ_1..θ_s]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    even_names: Vec<String>,
    odd_names: Vec<String>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new(even_names: Vec<String>, odd_names: Vec<String>) -> Result<Self> {
        if odd_names.len() > MAX_ODD {
            return Err(Error::InvalidSignature(format!(
                "at most {MAX_ODD} odd variables are supported, got {}",
                odd_names.len()
            )));
        }
        let all: Vec<&String> = even_names.iter().chain(odd_names.iter()).collect();
        for (i, name) in all.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidSignature(format!(
                    "`{name}` is not a valid variable name"
                )));
            }
            if name.as_str() == "d" {
                return Err(Error::InvalidSignature(
                    "`d` is reserved for coordinate derivations".into(),
                ));
            }
            if all[..i].contains(name) {
                return Err(Error::InvalidSignature(format!("duplicate variable name `{name}`")));
            }
        }
        Ok(Signature {
            even_names,
            odd_names,
        })
    }

    /// Default names: `t` (or `t1..tr`) and `theta1..thetas`.
    pub fn standard(r: usize, s: usize) -> Result<Self> {
        let even = if r == 1 {
            vec!["t".to_string()]
        } else {
            (1..=r).map(|i| format!("t{i}")).collect()
        };
        let odd = (1..=s).map(|j| format!("theta{j}")).collect();
        Signature::new(even, odd)
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn r(&self) -> usize {
        self.even_names.len()
    }

    pub fn s(&self) -> usize {
        self.odd_names.len()
    }

    /// Total number of coordinates `r + s`.
    pub fn dim(&self) -> usize {
        self.r() + self.s()
    }

    pub fn even_names(&self) -> &[String] {
        &self.even_names
    }

    pub fn odd_names(&self) -> &[String] {
        &self.odd_names
    }

    pub fn name(&self, c: Coordinate) -> &str {
        match c.kind {
            CoordKind::Even => &self.even_names[c.index],
            CoordKind::Odd => &self.odd_names[c.index],
        }
    }

    /// Coordinates in declaration order: even ones first.
    pub fn coordinates(&self) -> impl Iterator<Item = Coordinate> {
        let (r, s) = (self.r(), self.s());
        (0..r)
            .map(Coordinate::even)
            .chain((0..s).map(Coordinate::odd))
    }

    /// Position of a coordinate in the basis `∂_{t_1}..∂_{t_r}, ∂_{θ_1}..∂_{θ_s}`.
    pub fn slot(&self, c: Coordinate) -> usize {
        match c.kind {
            CoordKind::Even => c.index,
            CoordKind::Odd => self.r() + c.index,
        }
    }

    pub fn coordinate_at(&self, slot: usize) -> Coordinate {
        if slot < self.r() {
            Coordinate::even(slot)
        } else {
            Coordinate::odd(slot - self.r())
        }
    }

    pub fn check(&self, c: Coordinate) -> Result<()> {
        let (kind, len) = match c.kind {
            CoordKind::Even => ("even", self.r()),
            CoordKind::Odd => ("odd", self.s()),
        };
        if c.index >= len {
            return Err(Error::IndexOutOfRange {
                kind,
                index: c.index,
                len,
            });
        }
        Ok(())
    }

    /// Resolves a variable name. With a single even (odd) variable the
    /// aliases `t`/`t1` (`theta`/`theta1`) are interchangeable.
    pub fn lookup(&self, name: &str) -> Option<Coordinate> {
        if let Some(i) = self.even_names.iter().position(|n| n == name) {
            return Some(Coordinate::even(i));
        }
        if let Some(j) = self.odd_names.iter().position(|n| n == name) {
            return Some(Coordinate::odd(j));
        }
        let alias = |names: &[String], a: &str, b: &str| {
            names.len() == 1
                && ((name == a && names[0] == b) || (name == b && names[0] == a))
        };
        if alias(&self.even_names, "t", "t1") {
            return Some(Coordinate::even(0));
        }
        if alias(&self.odd_names, "theta", "theta1") {
            return Some(Coordinate::odd(0));
        }
        None
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k[{} | {}]",
            self.even_names.join(", "),
            self.odd_names.join(", ")
        )
    }
}

pub(crate) fn same_signature(a: &Arc<Signature>, b: &Arc<Signature>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SignatureMismatch(format!("{a} vs {b}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_names() {
        let sig = Signature::standard(1, 2).unwrap();
        assert_eq!(sig.even_names(), ["t"]);
        assert_eq!(sig.odd_names(), ["theta1", "theta2"]);
        let sig = Signature::standard(2, 0).unwrap();
        assert_eq!(sig.even_names(), ["t1", "t2"]);
    }

    #[test]
    fn aliases_for_single_variables() {
        let sig = Signature::standard(1, 1).unwrap();
        assert_eq!(sig.lookup("t1"), Some(Coordinate::even(0)));
        assert_eq!(sig.lookup("theta"), Some(Coordinate::odd(0)));
        let sig = Signature::standard(2, 2).unwrap();
        assert_eq!(sig.lookup("t"), None);
        assert_eq!(sig.lookup("theta"), None);
        assert_eq!(sig.lookup("theta2"), Some(Coordinate::odd(1)));
    }

    #[test]
    fn rejects_bad_names() {
        assert!(Signature::new(vec!["x".into(), "x".into()], vec![]).is_err());
        assert!(Signature::new(vec!["d".into()], vec![]).is_err());
        assert!(Signature::new(vec!["2x".into()], vec![]).is_err());
        assert!(Signature::new(vec!["x".into()], vec!["x".into()]).is_err());
    }

    #[test]
    fn slots() {
        let sig = Signature::standard(2, 3).unwrap();
        assert_eq!(sig.slot(Coordinate::odd(1)), 3);
        assert_eq!(sig.coordinate_at(4), Coordinate::odd(2));
        assert!(sig.check(Coordinate::even(2)).is_err());
    }

    #[test]
    fn parity_arithmetic() {
        assert_eq!(Parity::Odd + Parity::Odd, Parity::Even);
        assert_eq!(Parity::Odd + Parity::Even, Parity::Odd);
        assert_eq!(Parity::Odd.koszul(Parity::Odd), -1);
        assert_eq!(Parity::Even.koszul(Parity::Odd), 1);
    }
}
