use std::fmt::Write;

use num_traits::{One, Signed};

use crate::fields::VectorField;
use crate::kernel::{Monomial, Rational, Signature, SuperPolynomial};

fn write_monomial(out: &mut String, sig: &Signature, m: &Monomial) {
    let mut first = true;
    let mut sep = |out: &mut String| {
        if !first {
            out.push('*');
        }
        first = false;
    };
    for (name, &k) in sig.even_names().iter().zip(m.even_exponents()) {
        match k {
            0 => {}
            1 => {
                sep(out);
                out.push_str(name);
            }
            _ => {
                sep(out);
                let _ = write!(out, "{name}^{k}");
            }
        }
    }
    for j in m.odd_indices() {
        sep(out);
        out.push_str(&sig.odd_names()[j]);
    }
}

/// Writes `|c|·m`, omitting a unit coefficient.
fn write_abs_term(out: &mut String, sig: &Signature, m: &Monomial, c: &Rational) {
    let c = c.abs();
    if m.is_one() {
        let _ = write!(out, "{c}");
    } else if c.is_one() {
        write_monomial(out, sig, m);
    } else {
        let _ = write!(out, "{c}*");
        write_monomial(out, sig, m);
    }
}

fn write_sign(out: &mut String, negative: bool, first: bool) {
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
}

/// Canonical text: terms in decreasing graded-lex order, `0` for zero.
pub fn print_poly(f: &SuperPolynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let sig = f.signature();
    let mut out = String::new();
    for (i, (m, c)) in f.terms().rev().enumerate() {
        write_sign(&mut out, c.is_negative(), i == 0);
        write_abs_term(&mut out, sig, m, c);
    }
    out
}

/// Canonical text: one term per basis direction in declaration order.
pub fn print_field(x: &VectorField) -> String {
    let sig = x.signature();
    let mut out = String::new();
    let mut first = true;
    for (slot, u) in x.coeffs().iter().enumerate() {
        if u.is_zero() {
            continue;
        }
        let name = sig.name(sig.coordinate_at(slot));
        if u.len() == 1 {
            let (m, c) = u.terms().next().expect("single term");
            write_sign(&mut out, c.is_negative(), first);
            if !(m.is_one() && c.abs().is_one()) {
                write_abs_term(&mut out, sig, m, c);
                out.push('*');
            }
        } else {
            write_sign(&mut out, false, first);
            let _ = write!(out, "({})*", print_poly(u));
        }
        let _ = write!(out, "d({name})");
        first = false;
    }
    if first {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::{parse_field, parse_poly};
    use std::sync::Arc;

    fn sig(r: usize, s: usize) -> Arc<Signature> {
        Signature::standard(r, s).unwrap().shared()
    }

    #[test]
    fn poly_text() {
        let g = sig(2, 2);
        assert_eq!(print_poly(&parse_poly("theta2*theta1", &g).unwrap()), "-theta1*theta2");
        assert_eq!(print_poly(&SuperPolynomial::zero(&g)), "0");
        assert_eq!(
            print_poly(&parse_poly("(t1 + 1)*(t2 + 2)", &g).unwrap()),
            "t1*t2 + 2*t1 + t2 + 2"
        );
        assert_eq!(
            print_poly(&parse_poly("1/2 - 3/4*t1^2*theta1", &g).unwrap()),
            "-3/4*t1^2*theta1 + 1/2"
        );
    }

    #[test]
    fn field_text() {
        let g = sig(1, 2);
        for text in [
            "d(theta1)",
            "t^2*d(t) - theta1*d(theta2)",
            "-d(t) + 2*d(theta1)",
            "(t^2 - 1)*d(t) + (-theta1 + 1/3)*d(theta1)",
            "0",
        ] {
            let x = parse_field(text, &g).unwrap();
            assert_eq!(print_field(&x), text);
        }
    }
}
