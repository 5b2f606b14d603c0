//! Regular elements and regular sequences in `Λ_s`, decided by exact linear
//! algebra on the `2^s`-dimensional algebra.

use num_traits::Zero;

use super::grassmann;
use super::linalg::{Matrix, Subspace};
use crate::error::{Error, Result};
use crate::kernel::{Parity, Rational, SuperPolynomial};

fn dense(x: &SuperPolynomial, s: usize) -> Result<Vec<Rational>> {
    let sig = x.signature();
    if sig.r() != 0 || sig.s() != s {
        return Err(Error::SignatureMismatch(format!(
            "expected an element of Λ_{s}, got signature {sig}"
        )));
    }
    let mut v = vec![Rational::zero(); 1 << s];
    for (m, c) in x.terms() {
        v[m.odd_mask() as usize] = c.clone();
    }
    Ok(v)
}

/// Matrix of `y ↦ x·y` in the monomial basis.
fn multiplication_matrix(x: &[Rational]) -> Matrix {
    let n = x.len();
    let mut m = Matrix::zeros(n, n);
    for (col, _) in x.iter().enumerate() {
        for (mx, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, prod) = grassmann::mul(mx as u32, col as u32);
            if sign != 0 {
                let entry = m.get(prod as usize, col) + c * Rational::from_integer(sign.into());
                m.set(prod as usize, col, entry);
            }
        }
    }
    m
}

fn columns(m: &Matrix) -> Vec<Vec<Rational>> {
    (0..m.ncols()).map(|j| m.column(j)).collect()
}

/// Whether `Λ_s →ξ Λ_s →ξ Λ_s` is exact at the middle.
pub fn is_odd_regular(xi: &SuperPolynomial, s: usize) -> Result<bool> {
    if xi.parity() != Some(Parity::Odd) || xi.is_zero() {
        return Err(Error::ParityViolation("regular element must be odd".into()));
    }
    let m = multiplication_matrix(&dense(xi, s)?);
    let kernel = Subspace::from_vectors(1 << s, &m.nullspace());
    let image = Subspace::from_vectors(1 << s, &columns(&m));
    Ok(kernel == image)
}

/// Whether each element is regular modulo the ideal generated by the ones
/// before it: injective multiplication for even elements, exactness for odd.
pub fn is_regular_sequence(seq: &[SuperPolynomial], s: usize) -> Result<bool> {
    let n = 1usize << s;
    let mut ideal = Subspace::new(n);
    for a in seq {
        let parity = a.homogeneous_parity("sequence element")?;
        let m = multiplication_matrix(&dense(a, s)?);
        // Multiplication by `a` on the quotient, lifted: y ↦ a·y mod I.
        let reduced: Vec<Vec<Rational>> = columns(&m).iter().map(|c| ideal.reduce(c)).collect();
        let kernel = Subspace::from_vectors(n, &Matrix::from_columns(&reduced, n).nullspace()).sum(&ideal);
        let image = ideal.sum(&Subspace::from_vectors(n, &columns(&m)));
        let regular = match parity {
            Parity::Even => ideal.contains_subspace(&kernel),
            Parity::Odd => kernel == image,
        };
        if !regular {
            return Ok(false);
        }
        ideal = image;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Signature;
    use crate::textio::parse_poly;

    fn p(text: &str, s: usize) -> SuperPolynomial {
        parse_poly(text, &Signature::standard(0, s).unwrap().shared()).unwrap()
    }

    #[test]
    fn odd_regular_examples() {
        assert!(is_odd_regular(&p("theta1", 1), 1).unwrap());
        assert!(is_odd_regular(&p("theta1", 2), 2).unwrap());
        assert!(is_odd_regular(&p("theta1 + theta2", 2), 2).unwrap());
        assert!(!is_odd_regular(&p("theta1*theta2*theta3", 3), 3).unwrap());
        assert!(matches!(is_odd_regular(&p("theta1*theta2", 2), 2), Err(Error::ParityViolation(_))));
    }

    #[test]
    fn sequences() {
        assert!(is_regular_sequence(&[p("theta1", 2), p("theta2", 2)], 2).unwrap());
        assert!(!is_regular_sequence(&[p("theta1", 1), p("theta1", 1)], 1).unwrap());
        assert!(is_regular_sequence(&[], 3).unwrap());
        assert!(is_regular_sequence(&[p("1", 2)], 2).unwrap());
        assert!(!is_regular_sequence(&[p("theta1*theta2", 2)], 2).unwrap());
    }
}
