use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::construct::{lower_to_point, second_order_witness, separate_coordinate};
use super::recipe::{unit_certificate, JRecipe};
use super::{ensure_verified, CertifiedField, Certificate, Step, TraceStep};
use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::kernel::{rat, same_signature, Coordinate, Parity, Point, Rational, Signature, SuperPolynomial};
use crate::oracle::linalg::Matrix;
use crate::textio::print_poly;

/// `E = Σ_j θ_j ∂_{θ_j}`. `ad(E)` scales `m ∂_c` by `(odd degree of m) - [c odd]`,
/// whose parity is the parity of `m ∂_c`.
pub fn euler_field(sig: &Arc<Signature>) -> VectorField {
    let coeffs = sig
        .coordinates()
        .map(|c| match c.kind {
            crate::kernel::CoordKind::Even => SuperPolynomial::zero(sig),
            crate::kernel::CoordKind::Odd => SuperPolynomial::var(sig, c).expect("own coordinate"),
        })
        .collect();
    VectorField::from_coeffs(sig, coeffs).expect("own signature")
}

fn euler_weights(x: &VectorField) -> BTreeSet<i64> {
    let sig = x.signature();
    let mut out = BTreeSet::new();
    for (slot, u) in x.coeffs().iter().enumerate() {
        let shift = i64::from(sig.coordinate_at(slot).parity().is_odd());
        for (m, _) in u.terms() {
            out.insert(m.odd_degree() as i64 - shift);
        }
    }
    out
}

/// Coefficients (constant first) of `Σ_{w ∈ keep} Π_{w' ≠ w} (x - w')/(w - w')`.
fn projector_polynomial(weights: &BTreeSet<i64>, keep: impl Fn(i64) -> bool) -> Vec<Rational> {
    let mut total = vec![Rational::zero(); weights.len()];
    for &w in weights.iter().filter(|&&w| keep(w)) {
        let mut poly = vec![Rational::one()];
        for &v in weights.iter().filter(|&&v| v != w) {
            let denom = rat(w - v);
            // poly *= (x - v) / (w - v)
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c / &denom;
                next[k] -= c * rat(v) / &denom;
            }
            poly = next;
        }
        for (k, c) in poly.into_iter().enumerate() {
            total[k] += c;
        }
    }
    total
}

/// A nonzero homogeneous part of `η` with a certificate from `η`.
///
/// Homogeneous seeds are returned as the bare generator. Otherwise the even
/// part (or the odd part when the even part vanishes) is cut out by a
/// Lagrange polynomial in `ad(E)`, see [`euler_field`].
pub fn homogeneous_seed(eta: &VectorField) -> Result<(Certificate, VectorField, Vec<TraceStep>)> {
    if eta.is_zero() {
        return Err(Error::ZeroInput("seed field"));
    }
    if eta.parity().is_some() {
        return Ok((Certificate::generator(), eta.clone(), Vec::new()));
    }
    let parity = if eta.parity_part(Parity::Even).is_zero() {
        Parity::Odd
    } else {
        Parity::Even
    };
    let part = eta.parity_part(parity);
    let weights = euler_weights(eta);
    let coeffs = projector_polynomial(&weights, |w| Parity::from_count(w.rem_euclid(2) as usize) == parity);
    let e = euler_field(eta.signature());
    let mut power = Certificate::generator();
    let mut terms = Vec::new();
    for (k, c) in coeffs.into_iter().enumerate() {
        if k > 0 {
            power = power.ad(e.clone());
        }
        if !c.is_zero() {
            terms.push((c, power.clone()));
        }
    }
    let cert = Certificate::lincomb(terms.iter().map(|(c, n)| (c.clone(), n)));
    ensure_verified(Step::Lower, &cert, eta, &part)?;
    let trace = vec![TraceStep::new(
        Step::Lower,
        format!(
            "{parity} part of the seed via a degree-{} polynomial in ad(E) over weights {:?}",
            weights.len() - 1,
            weights
        ),
    )];
    Ok((cert, part, trace))
}

/// Certificate that `ν` lies in the Lie ideal generated by `η ≠ 0`.
///
/// Needs at least one even variable. Runs at the origin: lower `η`, separate
/// onto `t_1`, find the second-order witness `g`, certify
/// `h_0 = μ'(t_1) μ'(μ'(g)) ∈ J`, differentiate `h_0` down to `1`, and apply
/// the unit recipe to `ν`.
pub fn simplicity_certificate(eta: &VectorField, nu: &VectorField) -> Result<CertifiedField> {
    let sig = eta.signature().clone();
    same_signature(&sig, nu.signature())?;
    if sig.r() == 0 {
        return Err(Error::Unsupported(
            "purely odd algebra (r = 0): the engine needs an even coordinate; use the scan-wn oracle"
                .into(),
        ));
    }
    if eta.is_zero() {
        return Err(Error::ZeroInput("seed field"));
    }
    let p = Point::origin(sig.r());
    let t1 = Coordinate::even(0);
    let (mu, y) = lower_to_point(eta, &p)?;
    let mu1 = separate_coordinate(&mu, y, t1, &p)?;
    let (g, value) = second_order_witness(&mu1, 0, &p)?;
    let f = SuperPolynomial::var(&sig, t1)?;
    let mut mu1 = mu1;
    mu1.trace.push(TraceStep::new(
        Step::SecondOrder,
        format!("g = {}, mu'(mu'(g))(p) = {}", print_poly(&g), value),
    ));
    let h0 = JRecipe::principal(&mu1, &f, &g, &SuperPolynomial::one(&sig))?;
    let h0_at_p = h0.element().evaluate(&p)?;
    if h0_at_p.is_zero() {
        return Err(Error::Internal {
            step: Step::Principal.label(),
            message: "h0 vanishes at the point".into(),
        });
    }
    let unit = unit_certificate(&h0)?;
    let mut out = unit.recipe.certificate_for(nu)?;
    out.trace.push(TraceStep::new(
        Step::Final,
        format!(
            "1 in J after {} rounds ({} derivative steps, degrees {:?}); h0(p) = {}; applied to target",
            unit.rounds, unit.derivative_steps, unit.degrees, h0_at_p
        ),
    ));
    Ok(out)
}

/// Values `ν_z(x_k)(p)` of fields at a point, one row per field.
pub fn tangent_value_matrix(fields: &[VectorField], p: &Point) -> Result<Matrix> {
    let rows = fields
        .iter()
        .map(|x| x.coeffs().iter().map(|c| c.evaluate(p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

/// Certified fields `[(y - y(p)) ∂_z, μ]`, one per coordinate `z`, whose
/// values at `p` span the tangent space.
pub fn tangent_basis_certificates(eta: &VectorField, p: &Point) -> Result<Vec<CertifiedField>> {
    let sig = eta.signature().clone();
    if sig.dim() == 0 {
        return Err(Error::Precondition("r + s must be at least 1".into()));
    }
    let (mu, y) = lower_to_point(eta, p)?;
    let fields = sig
        .coordinates()
        .map(|z| separate_coordinate(&mu, y, z, p))
        .collect::<Result<Vec<_>>>()?;
    let targets: Vec<VectorField> = fields.iter().map(|c| c.target.clone()).collect();
    if tangent_value_matrix(&targets, p)?.determinant().is_zero() {
        return Err(Error::Internal {
            step: Step::Separate.label(),
            message: "tangent value matrix is singular".into(),
        });
    }
    Ok(fields)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::textio::{parse_field, print_field};

    fn sig(r: usize, s: usize) -> Arc<Signature> {
        Signature::standard(r, s).unwrap().shared()
    }

    #[test]
    fn certificate_examples() {
        for (r, s, eta, nu) in [
            (1, 0, "d(t)", "d(t)"),
            (1, 0, "t^2*d(t)", "t^5*d(t)"),
            (1, 1, "theta1*d(t)", "theta1*d(theta1)"),
            (1, 1, "theta1*d(t)", "d(theta1)"),
        ] {
            let g = sig(r, s);
            let eta = parse_field(eta, &g).unwrap();
            let c = simplicity_certificate(&eta, &parse_field(nu, &g).unwrap()).unwrap();
            assert!(c.verify().unwrap().is_verified());
            assert_eq!(c.seed, eta);
            assert_eq!(c.trace.last().unwrap().step, Step::Final);
        }
    }

    #[test]
    fn h0_for_the_unit_field() {
        // [t d(t), d(t)] = -d(t), so h0 = (-1) * 2.
        let g = sig(1, 0);
        let c = simplicity_certificate(&parse_field("d(t)", &g).unwrap(), &parse_field("d(t)", &g).unwrap()).unwrap();
        assert!(c.trace.iter().any(|t| t.detail.contains("h0(p) = -2")));
    }

    #[test]
    fn purely_odd_is_unsupported() {
        let g = sig(0, 2);
        let d = parse_field("d(theta1)", &g).unwrap();
        assert!(matches!(simplicity_certificate(&d, &d), Err(Error::Unsupported(_))));
    }

    #[test]
    fn mixed_seeds_are_projected() {
        let g = sig(1, 2);
        let eta = parse_field("t*d(t) + theta1*d(t) + theta1*theta2*d(theta2) + theta2*d(theta1)", &g).unwrap();
        let (cert, part, trace) = homogeneous_seed(&eta).unwrap();
        assert_eq!(part, eta.parity_part(Parity::Even));
        assert_eq!(trace.len(), 1);
        assert!(crate::certify::verify_certificate(&cert, &eta, &part).unwrap().is_verified());
        assert_eq!(print_field(&part), "t*d(t) + theta2*d(theta1)");
        let odd = parse_field("t*d(theta1) + theta1*d(t)", &g).unwrap();
        let (cert, part, trace) = homogeneous_seed(&odd).unwrap();
        assert_eq!((cert, part, trace.len()), (Certificate::generator(), odd, 0));
    }

    #[test]
    fn projector_picks_weights() {
        let weights: BTreeSet<i64> = [-1, 0, 1, 2].into_iter().collect();
        let even = projector_polynomial(&weights, |w| w % 2 == 0);
        let at = |x: i64| even.iter().rev().fold(Rational::zero(), |acc, c| acc * rat(x) + c);
        assert_eq!(at(0), rat(1));
        assert_eq!(at(2), rat(1));
        assert_eq!(at(1), rat(0));
        assert_eq!(at(-1), rat(0));
    }

    #[test]
    fn tangent_basis() {
        let g = sig(2, 1);
        let eta = parse_field("t1^2*theta1*d(t2)", &g).unwrap();
        let p = Point::from_integers(&[1, -2]);
        let fields = tangent_basis_certificates(&eta, &p).unwrap();
        let targets: Vec<_> = fields.iter().map(|c| c.target.clone()).collect();
        assert!(!tangent_value_matrix(&targets, &p).unwrap().determinant().is_zero());
    }
}
