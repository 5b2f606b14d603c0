use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::construct::{principal_b_parts, principal_cert_unchecked, EvenMu};
use super::{ensure_verified, CertifiedField, Certificate, Step, TraceStep};
use crate::error::{Error, Result};
use crate::fields::{coordinate_fields, VectorField};
use crate::kernel::{rat, same_signature, Coordinate, Monomial, Parity, Rational, SuperPolynomial};
use crate::textio::{print_field, print_poly};

enum RecipeKind {
    /// `b μ(f) μ(μ(g)) τ`, with `L3(b)` and `L3(fb)` built once per parity part of `b`.
    Principal {
        mu: VectorField,
        mu_cert: Certificate,
        f: SuperPolynomial,
        g: SuperPolynomial,
        b_parts: Vec<(Parity, SuperPolynomial, Certificate, Certificate)>,
    },
    /// `X(a) Y = [X, aY] - (-1)^{|X||a|} a [X, Y]`.
    Derivative {
        base: JRecipe,
        x: VectorField,
        sign: Rational,
    },
    /// `(a b) τ = a (b τ)`.
    Product { base: JRecipe, b: SuperPolynomial },
    Scale { base: JRecipe, c: Rational },
}

/// A member `a` of `J = { a ∈ A | a·Der(A) ⊆ ideal }` together with a way to
/// certify `a·τ` for any field `τ`.
///
/// The family `{a·τ}` is infinite, so certificates are produced on demand.
/// Construction verifies the recipe on every coordinate field.
#[derive(Clone)]
pub struct JRecipe {
    seed: VectorField,
    element: SuperPolynomial,
    kind: Arc<RecipeKind>,
    provenance: Vec<TraceStep>,
}

impl fmt::Debug for JRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JRecipe")
            .field("element", &print_poly(&self.element))
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl JRecipe {
    fn build(
        step: Step,
        seed: &VectorField,
        element: SuperPolynomial,
        kind: RecipeKind,
        provenance: Vec<TraceStep>,
    ) -> Result<Self> {
        let recipe = JRecipe {
            seed: seed.clone(),
            element,
            kind: Arc::new(kind),
            provenance,
        };
        for tau in coordinate_fields(seed.signature()) {
            let target = tau.left_mul(&recipe.element)?;
            ensure_verified(step, &recipe.certify(&tau), seed, &target)?;
        }
        Ok(recipe)
    }

    /// Recipe for `b·μ(f)·μ(μ(g))`, with `μ`, `f`, `g` even.
    pub fn principal(
        mu: &CertifiedField,
        f: &SuperPolynomial,
        g: &SuperPolynomial,
        b: &SuperPolynomial,
    ) -> Result<Self> {
        mu.require_even("mu")?;
        let sig = mu.target.signature();
        for p in [f, g, b] {
            same_signature(sig, p.signature())?;
        }
        for (p, what) in [(f, "f"), (g, "g")] {
            if p.parity() != Some(Parity::Even) {
                return Err(Error::ParityViolation(format!("{what} must be even")));
            }
        }
        let m = &mu.target;
        let element = &(b * &m.apply(f)?) * &m.apply(&m.apply(g)?)?;
        let ctx = EvenMu {
            mu: m,
            cert: &mu.cert,
        };
        let b_parts = principal_b_parts(&ctx, f, g, b);
        let mut provenance = mu.trace.clone();
        provenance.push(TraceStep::new(
            Step::Principal,
            format!(
                "h = {} from f = {}, g = {}, b = {}",
                print_poly(&element),
                print_poly(f),
                print_poly(g),
                print_poly(b)
            ),
        ));
        JRecipe::build(
            Step::Principal,
            &mu.seed,
            element,
            RecipeKind::Principal {
                mu: m.clone(),
                mu_cert: mu.cert.clone(),
                f: f.clone(),
                g: g.clone(),
                b_parts,
            },
            provenance,
        )
    }

    pub fn element(&self) -> &SuperPolynomial {
        &self.element
    }

    pub fn seed(&self) -> &VectorField {
        &self.seed
    }

    pub fn provenance(&self) -> &[TraceStep] {
        &self.provenance
    }

    /// Certificate for `element · τ`, not yet verified.
    pub fn certify(&self, tau: &VectorField) -> Certificate {
        if tau.is_zero() || self.element.is_zero() {
            return Certificate::zero();
        }
        match &*self.kind {
            RecipeKind::Principal {
                mu,
                mu_cert,
                f,
                g,
                b_parts,
            } => {
                let ctx = EvenMu { mu, cert: mu_cert };
                principal_cert_unchecked(&ctx, f, g, b_parts, tau)
            }
            RecipeKind::Derivative { base, x, sign } => {
                let bracket = x.bracket(tau).expect("same signature");
                let first = base.certify(tau).ad(x.clone());
                if bracket.is_zero() {
                    return first;
                }
                Certificate::lincomb([(rat(1), &first), (sign.clone(), &base.certify(&bracket))])
            }
            RecipeKind::Product { base, b } => {
                base.certify(&tau.left_mul(b).expect("same signature"))
            }
            RecipeKind::Scale { base, c } => base.certify(tau).scaled(c.clone()),
        }
    }

    /// Verified certificate for `element · τ`.
    pub fn certificate_for(&self, tau: &VectorField) -> Result<CertifiedField> {
        same_signature(self.seed.signature(), tau.signature())?;
        let target = tau.left_mul(&self.element)?;
        CertifiedField::checked(
            Step::Final,
            &self.seed,
            target,
            self.certify(tau),
            self.provenance.clone(),
        )
    }
}

/// Recipe for `X(a)`; `X` and `a` homogeneous.
pub fn j_derivative_step(a: &JRecipe, x: &VectorField) -> Result<JRecipe> {
    same_signature(a.seed.signature(), x.signature())?;
    let xp = x.homogeneous_parity("X")?;
    let ap = a.element.homogeneous_parity("J element")?;
    let element = x.apply(&a.element)?;
    let sign = rat(-(xp.koszul(ap) as i64));
    let mut provenance = a.provenance.clone();
    provenance.push(TraceStep::new(
        Step::JDerivative,
        format!("{} applied: {}", print_field(x), print_poly(&element)),
    ));
    JRecipe::build(
        Step::JDerivative,
        &a.seed,
        element,
        RecipeKind::Derivative {
            base: a.clone(),
            x: x.clone(),
            sign,
        },
        provenance,
    )
}

/// Recipe for `a·b`.
pub fn j_product_step(a: &JRecipe, b: &SuperPolynomial) -> Result<JRecipe> {
    same_signature(a.seed.signature(), b.signature())?;
    let element = &a.element * b;
    let mut provenance = a.provenance.clone();
    provenance.push(TraceStep::new(
        Step::JProduct,
        format!("times {}: {}", print_poly(b), print_poly(&element)),
    ));
    JRecipe::build(
        Step::JProduct,
        &a.seed,
        element,
        RecipeKind::Product {
            base: a.clone(),
            b: b.clone(),
        },
        provenance,
    )
}

/// Result of driving a `J` element down to the unit.
#[derive(Debug, Clone)]
pub struct UnitRun {
    /// Recipe whose element is exactly `1`.
    pub recipe: JRecipe,
    pub rounds: usize,
    /// Number of single derivative steps taken.
    pub derivative_steps: usize,
    /// Total degree of the element before each round and at the end.
    pub degrees: Vec<usize>,
}

/// Differentiates a nonzero homogeneous `J` element down to a nonzero scalar
/// and rescales it to `1`.
///
/// Each round picks the smallest monomial of minimal positive degree and
/// applies the matching mixed partial. That partial maps the monomial to a
/// nonzero scalar, kills the other monomials of its degree and the constant,
/// and lowers every surviving degree, so the result has a nonzero constant
/// term and strictly smaller degree.
pub fn unit_certificate(h0: &JRecipe) -> Result<UnitRun> {
    if h0.element.is_zero() {
        return Err(Error::ZeroInput("J element"));
    }
    h0.element.homogeneous_parity("J element")?;
    let sig = h0.seed.signature().clone();
    let start_degree = h0.element.degree().expect("nonzero");
    let mut current = h0.clone();
    let mut degrees = vec![start_degree];
    let mut rounds = 0;
    let mut derivative_steps = 0;
    loop {
        let element = current.element.clone();
        if let Some(c) = element.as_constant() {
            let mut provenance = current.provenance.clone();
            provenance.push(TraceStep::new(
                Step::Unit,
                format!("rescale by 1/{c} after {rounds} rounds"),
            ));
            let inv = Rational::one() / c;
            let recipe = JRecipe::build(
                Step::Unit,
                &current.seed.clone(),
                SuperPolynomial::one(&sig),
                RecipeKind::Scale {
                    base: current,
                    c: inv,
                },
                provenance,
            )?;
            return Ok(UnitRun {
                recipe,
                rounds,
                derivative_steps,
                degrees,
            });
        }
        let before = element.degree().expect("nonzero");
        let mono: Monomial = element
            .terms()
            .map(|(m, _)| m)
            .find(|m| m.total_degree() > 0)
            .expect("non-constant element has a positive-degree monomial")
            .clone();
        let mut partials: Vec<Coordinate> = Vec::new();
        for (i, &k) in mono.even_exponents().iter().enumerate() {
            partials.extend(std::iter::repeat_n(Coordinate::even(i), k as usize));
        }
        partials.extend(mono.odd_indices().map(Coordinate::odd));
        for c in partials {
            current = j_derivative_step(&current, &VectorField::coordinate(&sig, c)?)?;
            derivative_steps += 1;
        }
        rounds += 1;
        let after = &current.element;
        let ok = !after.constant_term().is_zero() && after.degree().is_some_and(|d| d < before);
        if !ok || rounds > start_degree {
            return Err(Error::Internal {
                step: Step::Unit.label(),
                message: format!(
                    "round {rounds} did not lower degree {before} with a nonzero constant: {}",
                    print_poly(after)
                ),
            });
        }
        degrees.push(after.degree().expect("nonzero constant term"));
    }
}
