use num_traits::Zero;

use super::pipeline::homogeneous_seed;
use super::{CertifiedField, Certificate, Step, TraceStep};
use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::kernel::{rat, same_signature, Coordinate, Parity, Point, Rational, SuperPolynomial};
use crate::textio::{print_field, print_poly};

/// Unverified certificate builders around an even field `μ` of the ideal.
pub(crate) struct EvenMu<'a> {
    pub mu: &'a VectorField,
    pub cert: &'a Certificate,
}

impl EvenMu<'_> {
    /// `μ(f)μ = -[fμ, μ]`.
    pub fn l1(&self, f: &SuperPolynomial) -> Certificate {
        let f_mu = self.mu.left_mul(f).expect("same signature");
        Certificate::lincomb([(rat(-1), &self.cert.ad(f_mu))])
    }

    /// `2μ(f)μ(g)μ = [μ, fμ(g)μ] - [fμ, μ(g)μ]`, both brackets turned so the
    /// ideal member sits on the right.
    pub fn l2(&self, f: &SuperPolynomial, g: &SuperPolynomial) -> Certificate {
        let mu_g = self.mu.apply_unchecked(g);
        let first = self.cert.ad(self.mu.left_mul(&(f * &mu_g)).expect("same signature"));
        let second = self.l1(g).ad(self.mu.left_mul(f).expect("same signature"));
        let half = Rational::new((-1).into(), 2.into());
        Certificate::lincomb([(half.clone(), &first), (half, &second)])
    }

    /// `fμ(μ(g))μ = μ(fμ(g))μ - μ(f)μ(g)μ`.
    pub fn l3(&self, f: &SuperPolynomial, g: &SuperPolynomial) -> Certificate {
        let mu_g = self.mu.apply_unchecked(g);
        Certificate::lincomb([
            (rat(1), &self.l1(&(f * &mu_g))),
            (rat(-1), &self.l2(f, g)),
        ])
    }

    /// `b μ(f) μ(μ(g)) τ` for homogeneous `b`, `τ`, given `L3(b)` and `L3(fb)`:
    ///
    /// ```text
    /// [hμ, fτ] - [fhμ, τ] - (-1)^{|τ||b|} τ(f) h μ = h μ(f) τ,   h = b μ(μ(g))
    /// ```
    #[allow(clippy::too_many_arguments)]
    pub fn principal_part(
        &self,
        f: &SuperPolynomial,
        g: &SuperPolynomial,
        b: &SuperPolynomial,
        b_parity: Parity,
        tau: &VectorField,
        tau_parity: Parity,
        l3_b: &Certificate,
        l3_fb: &Certificate,
    ) -> Certificate {
        let s = rat(b_parity.koszul(tau_parity) as i64);
        let f_tau = tau.left_mul(f).expect("same signature");
        let tf_b = &tau.apply_unchecked(f) * b;
        Certificate::lincomb([
            (-&s, &l3_b.ad(f_tau)),
            (s.clone(), &l3_fb.ad(tau.clone())),
            (-s, &self.l3(&tf_b, g)),
        ])
    }
}

fn even_poly(p: &SuperPolynomial, what: &str) -> Result<()> {
    match p.parity() {
        Some(Parity::Even) => Ok(()),
        _ => Err(Error::ParityViolation(format!("{what} must be even"))),
    }
}

fn chain_label(sig: &crate::kernel::Signature, chain: &[Coordinate]) -> String {
    if chain.is_empty() {
        return "empty chain".into();
    }
    chain
        .iter()
        .map(|&c| format!("ad(d({}))", sig.name(c)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Brackets `η` with coordinate fields until it moves some coordinate `y` at `p`.
///
/// The symbol of `η` recentered at `p` picks the first nonzero slot `y` and its
/// smallest monomial `t^k θ_{i_1}⋯θ_{i_l}`; `ad(∂_t)^k ad(∂_{θ_{i_1}})⋯ad(∂_{θ_{i_l}})`
/// acts on coefficients as the matching mixed partial, so the `y` coefficient
/// of the result is a nonzero constant at `p`.
pub fn lower_to_point(eta: &VectorField, p: &Point) -> Result<(CertifiedField, Coordinate)> {
    if eta.is_zero() {
        return Err(Error::ZeroInput("seed field"));
    }
    let sig = eta.signature().clone();
    let (mut cert, mut mu, mut trace) = homogeneous_seed(eta)?;
    let symbol = mu.translate(p)?.symbol()?;
    let slot = symbol
        .field()
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("symbol of a nonzero field is nonzero");
    let y = sig.coordinate_at(slot);
    let (mono, _) = symbol.field().coeffs()[slot]
        .terms()
        .next()
        .expect("nonzero coefficient");

    // the rightmost factor acts first: odd indices from the back, then t_r..t_1
    let mut chain: Vec<Coordinate> = mono.odd_indices().map(Coordinate::odd).collect();
    chain.reverse();
    for (i, &k) in mono.even_exponents().iter().enumerate().rev() {
        chain.extend(std::iter::repeat_n(Coordinate::even(i), k as usize));
    }
    for &c in &chain {
        let d = VectorField::coordinate(&sig, c)?;
        mu = d.bracket(&mu)?;
        cert = cert.ad(d);
    }

    let value = mu.coeff(y).evaluate(p)?;
    if value.is_zero() {
        return Err(Error::Internal {
            step: Step::Lower.label(),
            message: format!("lowered field does not move {} at the point", sig.name(y)),
        });
    }
    trace.push(TraceStep::new(
        Step::Lower,
        format!(
            "symbol level {} at d({}); monomial {}; {}; mu({})(p) = {}",
            symbol.level(),
            sig.name(y),
            print_poly(&SuperPolynomial::term(&sig, mono.clone(), rat(1))?),
            chain_label(&sig, &chain),
            sig.name(y),
            value
        ),
    ));
    let mu = CertifiedField::checked(Step::Lower, eta, mu, cert, trace)?;
    if mu.parity != Some(y.parity()) {
        return Err(Error::Internal {
            step: Step::Lower.label(),
            message: "lowered field does not have the parity of its coordinate".into(),
        });
    }
    Ok((mu, y))
}

/// `ν = [(y - y(p)) ∂_z, μ]`; then `ν(z)(p) = ∓μ(y)(p) ≠ 0`.
pub fn separate_coordinate(
    mu: &CertifiedField,
    y: Coordinate,
    z: Coordinate,
    p: &Point,
) -> Result<CertifiedField> {
    let sig = mu.target.signature().clone();
    sig.check(y)?;
    sig.check(z)?;
    let y_var = SuperPolynomial::var(&sig, y)?;
    let moved = mu.target.apply(&y_var)?.evaluate(p)?;
    if moved.is_zero() {
        return Err(Error::Precondition(format!(
            "field does not move {} at the point",
            sig.name(y)
        )));
    }
    let centered = match y.kind {
        crate::kernel::CoordKind::Even => {
            &y_var - &SuperPolynomial::constant(&sig, p.coords()[y.index].clone())
        }
        crate::kernel::CoordKind::Odd => y_var,
    };
    let left = VectorField::monomial_field(centered, z)?;
    let target = left.bracket(&mu.target)?;
    let value = target.coeff(z).evaluate(p)?;
    if value.is_zero() {
        return Err(Error::Internal {
            step: Step::Separate.label(),
            message: format!("separated field does not move {}", sig.name(z)),
        });
    }
    let mut trace = mu.trace.clone();
    trace.push(TraceStep::new(
        Step::Separate,
        format!("[{}, mu]; value at {} is {}", print_field(&left), sig.name(z), value),
    ));
    CertifiedField::checked(Step::Separate, &mu.seed, target, mu.cert.ad(left), trace)
}

/// An even `g` with `μ'(μ'(g))(p) ≠ 0`: `t_i` itself, or `t_i²`, for which the
/// value is `2 (μ'(t_i)(p))²` whenever `μ'(μ'(t_i))(p) = 0`.
pub fn second_order_witness(
    mu: &CertifiedField,
    i: usize,
    p: &Point,
) -> Result<(SuperPolynomial, Rational)> {
    mu.require_even("mu'")?;
    let sig = mu.target.signature().clone();
    let t = SuperPolynomial::var(&sig, Coordinate::even(i))?;
    let first = mu.target.apply(&t)?;
    if first.evaluate(p)?.is_zero() {
        return Err(Error::Precondition(format!(
            "mu'({})(p) must be nonzero",
            sig.name(Coordinate::even(i))
        )));
    }
    let twice = |g: &SuperPolynomial| -> Result<Rational> {
        mu.target.apply(&mu.target.apply(g)?)?.evaluate(p)
    };
    let v = twice(&t)?;
    if !v.is_zero() {
        return Ok((t, v));
    }
    let g = t.pow(2);
    let v = twice(&g)?;
    if v.is_zero() {
        return Err(Error::Internal {
            step: Step::SecondOrder.label(),
            message: "mu'(mu'(t^2))(p) vanished".into(),
        });
    }
    Ok((g, v))
}

/// Certificate for `μ(f)·μ`.
pub fn cert_l1(mu: &CertifiedField, f: &SuperPolynomial) -> Result<CertifiedField> {
    mu.require_even("mu")?;
    same_signature(mu.target.signature(), f.signature())?;
    let ctx = EvenMu {
        mu: &mu.target,
        cert: &mu.cert,
    };
    let target = mu.target.left_mul(&mu.target.apply(f)?)?;
    let mut trace = mu.trace.clone();
    trace.push(TraceStep::new(Step::L1, format!("f = {}", print_poly(f))));
    CertifiedField::checked(Step::L1, &mu.seed, target, ctx.l1(f), trace)
}

/// Certificate for `μ(f)·μ(g)·μ`, `g` even.
pub fn cert_l2(
    mu: &CertifiedField,
    f: &SuperPolynomial,
    g: &SuperPolynomial,
) -> Result<CertifiedField> {
    mu.require_even("mu")?;
    same_signature(mu.target.signature(), f.signature())?;
    even_poly(g, "g")?;
    let ctx = EvenMu {
        mu: &mu.target,
        cert: &mu.cert,
    };
    let m = &mu.target;
    let target = m.left_mul(&(&m.apply(f)? * &m.apply(g)?))?;
    let mut trace = mu.trace.clone();
    trace.push(TraceStep::new(
        Step::L2,
        format!("f = {}, g = {}", print_poly(f), print_poly(g)),
    ));
    CertifiedField::checked(Step::L2, &mu.seed, target, ctx.l2(f, g), trace)
}

/// Certificate for `f·μ(μ(g))·μ`, `g` even.
pub fn cert_l3(
    mu: &CertifiedField,
    f: &SuperPolynomial,
    g: &SuperPolynomial,
) -> Result<CertifiedField> {
    mu.require_even("mu")?;
    same_signature(mu.target.signature(), f.signature())?;
    even_poly(g, "g")?;
    let ctx = EvenMu {
        mu: &mu.target,
        cert: &mu.cert,
    };
    let m = &mu.target;
    let target = m.left_mul(&(f * &m.apply(&m.apply(g)?)?))?;
    let mut trace = mu.trace.clone();
    trace.push(TraceStep::new(
        Step::L3,
        format!("f = {}, g = {}", print_poly(f), print_poly(g)),
    ));
    CertifiedField::checked(Step::L3, &mu.seed, target, ctx.l3(f, g), trace)
}

pub(crate) fn principal_cert_unchecked(
    ctx: &EvenMu<'_>,
    f: &SuperPolynomial,
    g: &SuperPolynomial,
    b_parts: &[(Parity, SuperPolynomial, Certificate, Certificate)],
    tau: &VectorField,
) -> Certificate {
    let tau_parts = tau.homogeneous_parts();
    let mut pieces = Vec::with_capacity(b_parts.len() * tau_parts.len());
    for (bp, b, l3_b, l3_fb) in b_parts {
        for (tp, t) in &tau_parts {
            pieces.push(ctx.principal_part(f, g, b, *bp, t, *tp, l3_b, l3_fb));
        }
    }
    if pieces.len() == 1 {
        return pieces.pop().expect("one piece");
    }
    Certificate::lincomb(pieces.iter().map(|c| (rat(1), c)))
}

/// Splits `b` into parity parts with the `L3(b)`, `L3(fb)` certificates each needs.
pub(crate) fn principal_b_parts(
    ctx: &EvenMu<'_>,
    f: &SuperPolynomial,
    g: &SuperPolynomial,
    b: &SuperPolynomial,
) -> Vec<(Parity, SuperPolynomial, Certificate, Certificate)> {
    let (even, odd) = b.parity_parts();
    [(Parity::Even, even), (Parity::Odd, odd)]
        .into_iter()
        .filter(|(_, part)| !part.is_zero())
        .map(|(parity, part)| {
            let l3_b = ctx.l3(&part, g);
            let l3_fb = ctx.l3(&(f * &part), g);
            (parity, part, l3_b, l3_fb)
        })
        .collect()
}

/// Certificate for `b·μ(f)·μ(μ(g))·τ`, `μ`, `f`, `g` even. Mixed `b` or `τ`
/// are split into homogeneous parts.
pub fn principal_multiple_cert(
    mu: &CertifiedField,
    f: &SuperPolynomial,
    g: &SuperPolynomial,
    b: &SuperPolynomial,
    tau: &VectorField,
) -> Result<CertifiedField> {
    mu.require_even("mu")?;
    let sig = mu.target.signature();
    for p in [f, g, b] {
        same_signature(sig, p.signature())?;
    }
    same_signature(sig, tau.signature())?;
    even_poly(f, "f")?;
    even_poly(g, "g")?;
    let ctx = EvenMu {
        mu: &mu.target,
        cert: &mu.cert,
    };
    let m = &mu.target;
    let a = &(b * &m.apply(f)?) * &m.apply(&m.apply(g)?)?;
    let target = tau.left_mul(&a)?;
    let b_parts = principal_b_parts(&ctx, f, g, b);
    let cert = principal_cert_unchecked(&ctx, f, g, &b_parts, tau);
    let mut trace = mu.trace.clone();
    trace.push(TraceStep::new(
        Step::Principal,
        format!(
            "f = {}, g = {}, b = {}, tau = {}",
            print_poly(f),
            print_poly(g),
            print_poly(b),
            print_field(tau)
        ),
    ));
    CertifiedField::checked(Step::Principal, &mu.seed, target, cert, trace)
}
