//! Certificates that a nonzero vector field generates all of `Der(A)` as a Lie
//! ideal, built step by step and re-verified exactly after every step.
//!
//! The construction runs at the origin of `k[t_1..t_r | θ_1..θ_s]`:
//!
//! 1. [`lower_to_point`]: a chain of brackets with coordinate fields turns the
//!    seed `η` into `μ` with `μ(y)(0) ≠ 0` for some coordinate `y`.
//! 2. [`separate_coordinate`]: `μ' = [y ∂_{t_1}, μ]` is even and moves `t_1`.
//! 3. [`second_order_witness`]: an even `g` with `μ'(μ'(g))(0) ≠ 0`.
//! 4. [`cert_l1`], [`cert_l2`], [`cert_l3`], [`principal_multiple_cert`]:
//!    `b μ'(f) μ'(μ'(g)) τ` lies in the ideal for every `b` and `τ`, so
//!    `h_0 = μ'(t_1) μ'(μ'(g))` belongs to `J = { a | a·Der(A) ⊆ ideal }`.
//! 5. [`JRecipe`]: `J` is closed under derivatives and products; repeated
//!    derivatives take `h_0` down to a nonzero constant ([`unit_certificate`]).
//! 6. [`simplicity_certificate`]: `1 ∈ J` applied to the requested target.

mod certificate;
mod construct;
mod pipeline;
mod recipe;

use std::fmt;

pub use certificate::{verify_certificate, Certificate, Node, Verdict};
pub use construct::{
    cert_l1, cert_l2, cert_l3, lower_to_point, principal_multiple_cert, second_order_witness,
    separate_coordinate,
};
pub use pipeline::{
    euler_field, homogeneous_seed, simplicity_certificate, tangent_basis_certificates,
    tangent_value_matrix,
};
pub use recipe::{j_derivative_step, j_product_step, unit_certificate, JRecipe, UnitRun};

use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::kernel::Parity;
use crate::textio::CertificateDocument;

/// Which construction produced a layer of a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Lower,
    Separate,
    SecondOrder,
    L1,
    L2,
    L3,
    Principal,
    JDerivative,
    JProduct,
    Unit,
    Final,
}

impl Step {
    pub const ALL: [Step; 11] = [
        Step::Lower,
        Step::Separate,
        Step::SecondOrder,
        Step::L1,
        Step::L2,
        Step::L3,
        Step::Principal,
        Step::JDerivative,
        Step::JProduct,
        Step::Unit,
        Step::Final,
    ];

    /// Stable label used in documents and reports.
    pub fn label(self) -> &'static str {
        match self {
            Step::Lower => "prop-lower",
            Step::Separate => "prop-separate",
            Step::SecondOrder => "prop-second-order",
            Step::L1 => "lemma-L1",
            Step::L2 => "lemma-L2",
            Step::L3 => "lemma-L3",
            Step::Principal => "lemma-principal",
            Step::JDerivative => "j-derivative",
            Step::JProduct => "j-product",
            Step::Unit => "unit",
            Step::Final => "final",
        }
    }

    pub fn from_label(label: &str) -> Option<Step> {
        Step::ALL.into_iter().find(|s| s.label() == label)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub step: Step,
    pub detail: String,
}

impl TraceStep {
    pub fn new(step: Step, detail: impl Into<String>) -> Self {
        TraceStep {
            step,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.detail.is_empty() {
            write!(f, "{}", self.step)
        } else {
            write!(f, "{}: {}", self.step, self.detail)
        }
    }
}

/// A field together with a checked certificate that it lies in the ideal
/// generated by `seed`.
#[derive(Debug, Clone)]
pub struct CertifiedField {
    pub seed: VectorField,
    pub target: VectorField,
    pub cert: Certificate,
    pub trace: Vec<TraceStep>,
    /// `None` when the target mixes parities.
    pub parity: Option<Parity>,
}

impl CertifiedField {
    /// The seed itself, certified by the bare generator.
    pub fn generator(seed: &VectorField) -> Self {
        CertifiedField {
            seed: seed.clone(),
            target: seed.clone(),
            cert: Certificate::generator(),
            trace: Vec::new(),
            parity: seed.parity(),
        }
    }

    /// Verifies `cert` against `target` before wrapping them.
    pub(crate) fn checked(
        step: Step,
        seed: &VectorField,
        target: VectorField,
        cert: Certificate,
        trace: Vec<TraceStep>,
    ) -> Result<Self> {
        ensure_verified(step, &cert, seed, &target)?;
        Ok(CertifiedField {
            seed: seed.clone(),
            parity: target.parity(),
            target,
            cert,
            trace,
        })
    }

    pub fn verify(&self) -> Result<Verdict> {
        verify_certificate(&self.cert, &self.seed, &self.target)
    }

    pub fn to_document(&self) -> CertificateDocument {
        CertificateDocument {
            signature: self.seed.signature().clone(),
            seed: self.seed.clone(),
            target: self.target.clone(),
            root: self.cert.clone(),
            trace: self.trace.clone(),
        }
    }

    pub(crate) fn require_even(&self, what: &str) -> Result<()> {
        match self.target.parity() {
            Some(Parity::Even) => Ok(()),
            _ => Err(Error::ParityViolation(format!("{what} must be an even field"))),
        }
    }
}

pub(crate) fn ensure_verified(
    step: Step,
    cert: &Certificate,
    seed: &VectorField,
    target: &VectorField,
) -> Result<()> {
    match verify_certificate(cert, seed, target)? {
        Verdict::Verified => Ok(()),
        mismatch => Err(Error::Internal {
            step: step.label(),
            message: mismatch.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for s in Step::ALL {
            assert_eq!(Step::from_label(s.label()), Some(s));
        }
        assert_eq!(Step::from_label("lemma-L4"), None);
    }
}
