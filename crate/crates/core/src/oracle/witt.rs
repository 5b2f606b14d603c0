//! The purely odd algebra `W(s) = Der(Λ_s)` as a finite-dimensional Lie
//! superalgebra with explicit structure constants.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grassmann;
use super::linalg::Subspace;
use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::kernel::{rat, Monomial, Rational, Signature, SuperPolynomial};
use crate::textio::print_field;

pub const MAX_S: usize = 6;

/// Basis `m ∂_{θ_j}` of `Der(Λ_s)`, indexed by `j·2^s + m`.
#[derive(Debug, Clone)]
pub struct FiniteBasis {
    s: usize,
    sig: Arc<Signature>,
    /// Sparse `[e_a, e_b]` at `a·dim + b`.
    table: Vec<Vec<(usize, i64)>>,
}

impl FiniteBasis {
    pub fn new(s: usize) -> Result<Self> {
        if s == 0 || s > MAX_S {
            return Err(Error::Precondition(format!("s must be in 1..={MAX_S}, got {s}")));
        }
        let sig = Signature::standard(0, s)?.shared();
        let mut basis = FiniteBasis {
            s,
            sig,
            table: Vec::new(),
        };
        let n = basis.dim();
        basis.table = (0..n * n).map(|k| basis.bracket_elements(k / n, k % n)).collect();
        Ok(basis)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn dim(&self) -> usize {
        self.s << self.s
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    fn split(&self, a: usize) -> (u32, u32) {
        ((a >> self.s) as u32, (a & ((1 << self.s) - 1)) as u32)
    }

    /// `0` even, `1` odd.
    pub fn parity(&self, a: usize) -> u32 {
        let (_, m) = self.split(a);
        (grassmann::parity(m) + 1) % 2
    }

    /// `[m ∂_i, n ∂_j] = m ∂_i(n) ∂_j - (-1)^{|X||Y|} n ∂_j(m) ∂_i`.
    fn bracket_elements(&self, a: usize, b: usize) -> Vec<(usize, i64)> {
        let (i, m) = self.split(a);
        let (j, n) = self.split(b);
        let koszul = if self.parity(a) * self.parity(b) == 1 { -1 } else { 1 };
        let mut out: Vec<(usize, i64)> = Vec::new();
        let mut push = |slot: u32, mask: u32, c: i64| {
            let idx = ((slot as usize) << self.s) | mask as usize;
            match out.iter_mut().find(|(k, _)| *k == idx) {
                Some(e) => e.1 += c,
                None => out.push((idx, c)),
            }
        };
        let (s1, dn) = grassmann::d(i, n);
        if s1 != 0 {
            let (s2, prod) = grassmann::mul(m, dn);
            if s2 != 0 {
                push(j, prod, s1 * s2);
            }
        }
        let (s3, dm) = grassmann::d(j, m);
        if s3 != 0 {
            let (s4, prod) = grassmann::mul(n, dm);
            if s4 != 0 {
                push(i, prod, -koszul * s3 * s4);
            }
        }
        out.retain(|&(_, c)| c != 0);
        out.sort_unstable();
        out
    }

    /// Structure constants of `[e_a, e_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a * self.dim() + b]
    }

    /// `[e_a, v]`.
    pub fn ad_basis(&self, a: usize, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (b, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(k, k_c) in self.bracket_basis(a, b) {
                out[k] += c * rat(k_c);
            }
        }
        out
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, w) in out.iter_mut().zip(self.ad_basis(a, v)) {
                *o += c * w;
            }
        }
        out
    }

    pub fn unit_vector(&self, a: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[a] = rat(1);
        v
    }

    pub fn to_vector(&self, x: &VectorField) -> Result<Vec<Rational>> {
        let sig = x.signature();
        if sig.r() != 0 || sig.s() != self.s {
            return Err(Error::SignatureMismatch(format!(
                "expected a field over Λ_{}, got signature {sig}",
                self.s
            )));
        }
        let mut v = vec![Rational::zero(); self.dim()];
        for (j, coeff) in x.coeffs().iter().enumerate() {
            for (m, c) in coeff.terms() {
                v[(j << self.s) | m.odd_mask() as usize] = c.clone();
            }
        }
        Ok(v)
    }

    pub fn to_field(&self, v: &[Rational]) -> VectorField {
        let mut coeffs = vec![SuperPolynomial::zero(&self.sig); self.s];
        for (a, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (j, m) = self.split(a);
            let term = SuperPolynomial::term(&self.sig, Monomial::new(Vec::new(), u64::from(m)), c.clone())
                .expect("mask within s");
            coeffs[j as usize] = &coeffs[j as usize] + &term;
        }
        VectorField::from_coeffs(&self.sig, coeffs).expect("own signature")
    }

    pub fn basis_field(&self, a: usize) -> VectorField {
        self.to_field(&self.unit_vector(a))
    }

    /// Smallest ideal containing the given vectors.
    pub fn closure_of(&self, generators: &[Vec<Rational>]) -> Subspace {
        let mut span = Subspace::new(self.dim());
        let mut queue = Vec::new();
        for g in generators {
            if span.insert(g) {
                queue.push(g.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for a in 0..self.dim() {
                let w = self.ad_basis(a, &v);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        span
    }

    /// Whether `[e_a, v] ∈ sub` for every basis element and basis vector.
    pub fn is_ideal(&self, sub: &Subspace) -> bool {
        sub.basis()
            .iter()
            .all(|v| (0..self.dim()).all(|a| sub.contains(&self.ad_basis(a, v))))
    }
}

/// Ideal of `W(s)` generated by the given fields, checked to be bracket-stable.
pub fn ideal_closure(generators: &[VectorField], s: usize) -> Result<Subspace> {
    let basis = FiniteBasis::new(s)?;
    let vectors = generators
        .iter()
        .map(|g| basis.to_vector(g))
        .collect::<Result<Vec<_>>>()?;
    let span = basis.closure_of(&vectors);
    if !basis.is_ideal(&span) {
        return Err(Error::Internal {
            step: "ideal-closure",
            message: "closure is not bracket-stable".into(),
        });
    }
    Ok(span)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub generator: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperIdeal {
    pub generator: String,
    pub basis: Vec<String>,
}

/// Ideal closures of basis elements and random homogeneous elements of `W(s)`.
///
/// A proper ideal is a proof that `W(s)` is not simple. Full closures for
/// every generator tried are only evidence of simplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub s: usize,
    pub trials: usize,
    pub seed: u64,
    pub dim: usize,
    pub rows: Vec<ScanRow>,
    pub proper: Option<ProperIdeal>,
}

impl ScanReport {
    /// JSON listing the proper ideal basis, if one was found.
    pub fn ideal_document(&self) -> Option<String> {
        let ideal = self.proper.as_ref()?;
        let doc = serde_json::json!({
            "s": self.s,
            "generator": ideal.generator,
            "dimension": ideal.basis.len(),
            "basis": ideal.basis,
            "bracket_stable": true,
        });
        Some(format!("{doc}\n"))
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "# scan-wn s={} trials={} seed={} dim={}",
            self.s, self.trials, self.seed, self.dim
        )?;
        let width = self.rows.iter().map(|r| r.generator.len()).max().unwrap_or(0).max(9);
        writeln!(f, "{:<2} {:<width$} {:>7} verdict", "s", "generator", "closure")?;
        for row in &self.rows {
            let verdict = if row.dim == self.dim { "full" } else { "proper" };
            writeln!(f, "{:<2} {:<width$} {:>7} {verdict}", self.s, row.generator, row.dim)?;
        }
        match &self.proper {
            Some(ideal) => writeln!(f, "proper ideal found: {}", ideal.basis.join(", ")),
            None => {
                writeln!(f, "no proper ideal found; dim {}", self.dim)?;
                writeln!(
                    f,
                    "note: {} generators tested; this is evidence, not a proof of simplicity",
                    self.rows.len()
                )
            }
        }
    }
}

fn random_homogeneous(basis: &FiniteBasis, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let parity = rng.random_range(0..2u32);
    let members: Vec<usize> = (0..basis.dim()).filter(|&a| basis.parity(a) == parity).collect();
    loop {
        let mut v = vec![Rational::zero(); basis.dim()];
        for &a in &members {
            if rng.random_bool(0.5) {
                v[a] = rat(rng.random_range(-3..=3));
            }
        }
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

pub fn simplicity_scan(s: usize, trials: usize, seed: u64) -> Result<ScanReport> {
    let basis = FiniteBasis::new(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut generators: Vec<Vec<Rational>> = (0..basis.dim()).map(|a| basis.unit_vector(a)).collect();
    generators.extend((0..trials).map(|_| random_homogeneous(&basis, &mut rng)));
    let mut rows = Vec::new();
    let mut proper = None;
    for g in &generators {
        let span = basis.closure_of(std::slice::from_ref(g));
        let text = print_field(&basis.to_field(g));
        if span.dim() < basis.dim() && proper.is_none() {
            if !basis.is_ideal(&span) {
                return Err(Error::Internal {
                    step: "scan-wn",
                    message: format!("closure of {text} is not bracket-stable"),
                });
            }
            proper = Some(ProperIdeal {
                generator: text.clone(),
                basis: span.basis().iter().map(|v| print_field(&basis.to_field(v))).collect(),
            });
        }
        rows.push(ScanRow {
            generator: text,
            dim: span.dim(),
        });
    }
    Ok(ScanReport {
        s,
        trials,
        seed,
        dim: basis.dim(),
        rows,
        proper,
    })
}
