use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::kernel::{same_signature, Rational};
use crate::textio::print_field;

/// A bracket expression over the seed field.
///
/// Subtrees are reference counted, so a certificate built by the engine is a
/// DAG in memory; it is a plain tree once serialized.
#[derive(Debug, PartialEq)]
pub enum Node {
    /// The seed field.
    Generator,
    /// `[left, child]`.
    Ad { left: VectorField, child: Arc<Node> },
    /// `Σ c_i · child_i`.
    LinComb { terms: Vec<(Rational, Arc<Node>)> },
}

/// Root of a bracket-expression tree. Its value always lies in the Lie ideal
/// generated by the seed: only brackets with arbitrary fields and rational
/// linear combinations are available.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    root: Arc<Node>,
}

impl Certificate {
    pub fn generator() -> Self {
        Certificate {
            root: Arc::new(Node::Generator),
        }
    }

    pub fn from_node(root: Arc<Node>) -> Self {
        Certificate { root }
    }

    pub fn root(&self) -> &Arc<Node> {
        &self.root
    }

    /// `[left, self]`.
    pub fn ad(&self, left: VectorField) -> Self {
        Certificate {
            root: Arc::new(Node::Ad {
                left,
                child: Arc::clone(&self.root),
            }),
        }
    }

    /// `Σ c_i · cert_i`, dropping zero coefficients.
    pub fn lincomb<'a>(terms: impl IntoIterator<Item = (Rational, &'a Certificate)>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, cert)| (c, Arc::clone(&cert.root)))
            .collect();
        Certificate {
            root: Arc::new(Node::LinComb { terms }),
        }
    }

    pub fn scaled(&self, c: Rational) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Certificate::lincomb([(c, self)])
    }

    /// The empty combination, evaluating to the zero field.
    pub fn zero() -> Self {
        Certificate::lincomb([])
    }

    /// Number of distinct nodes in the shared representation.
    pub fn distinct_nodes(&self) -> usize {
        let mut seen = HashSet::new();
        let mut stack = vec![&self.root];
        while let Some(n) = stack.pop() {
            if !seen.insert(Arc::as_ptr(n)) {
                continue;
            }
            match &**n {
                Node::Generator => {}
                Node::Ad { child, .. } => stack.push(child),
                Node::LinComb { terms } => stack.extend(terms.iter().map(|(_, c)| c)),
            }
        }
        seen.len()
    }

    /// Number of nodes once written out as a tree.
    pub fn tree_size(&self) -> u128 {
        fn go(n: &Arc<Node>, memo: &mut HashMap<*const Node, u128>) -> u128 {
            if let Some(&v) = memo.get(&Arc::as_ptr(n)) {
                return v;
            }
            let v = 1 + match &**n {
                Node::Generator => 0,
                Node::Ad { child, .. } => go(child, memo),
                Node::LinComb { terms } => terms.iter().map(|(_, c)| go(c, memo)).sum(),
            };
            memo.insert(Arc::as_ptr(n), v);
            v
        }
        go(&self.root, &mut HashMap::new())
    }

    /// Number of `Ad` layers on the longest root-to-leaf path.
    pub fn bracket_depth(&self) -> usize {
        fn go(n: &Arc<Node>, memo: &mut HashMap<*const Node, usize>) -> usize {
            if let Some(&v) = memo.get(&Arc::as_ptr(n)) {
                return v;
            }
            let v = match &**n {
                Node::Generator => 0,
                Node::Ad { child, .. } => 1 + go(child, memo),
                Node::LinComb { terms } => {
                    terms.iter().map(|(_, c)| go(c, memo)).max().unwrap_or(0)
                }
            };
            memo.insert(Arc::as_ptr(n), v);
            v
        }
        go(&self.root, &mut HashMap::new())
    }

    /// Exact value with the generator replaced by `seed`.
    pub fn evaluate(&self, seed: &VectorField) -> Result<VectorField> {
        Evaluator::new(seed).eval(&self.root, &mut vec!["root".to_string()])
    }
}

struct Evaluator<'a> {
    seed: &'a VectorField,
    memo: HashMap<*const Node, VectorField>,
}

impl<'a> Evaluator<'a> {
    fn new(seed: &'a VectorField) -> Self {
        Evaluator {
            seed,
            memo: HashMap::new(),
        }
    }

    fn eval(&mut self, node: &Arc<Node>, path: &mut Vec<String>) -> Result<VectorField> {
        let key = Arc::as_ptr(node);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let value = match &**node {
            Node::Generator => self.seed.clone(),
            Node::Ad { left, child } => {
                same_signature(self.seed.signature(), left.signature()).map_err(|e| {
                    Error::Schema {
                        path: path.join(""),
                        message: e.to_string(),
                    }
                })?;
                path.push(".child".into());
                let inner = self.eval(child, path)?;
                path.pop();
                left.bracket(&inner)?
            }
            Node::LinComb { terms } => {
                let mut acc = VectorField::zero(self.seed.signature());
                for (i, (c, child)) in terms.iter().enumerate() {
                    path.push(format!(".terms[{i}].child"));
                    let v = self.eval(child, path)?;
                    path.pop();
                    acc = &acc + &v.scale(c);
                }
                acc
            }
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

/// Outcome of an exact certificate check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Mismatch {
        path: String,
        expected: String,
        found: String,
    },
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => f.write_str("VERIFIED"),
            Verdict::Mismatch {
                path,
                expected,
                found,
            } => write!(
                f,
                "MISMATCH at {path}: claimed {expected}, certificate evaluates to {found}"
            ),
        }
    }
}

/// Evaluates `cert` on `seed` and compares with `claimed` exactly.
///
/// Structural problems (an `Ad` field over a different signature) are errors
/// naming the offending node; a value mismatch is a `Verdict::Mismatch`.
pub fn verify_certificate(
    cert: &Certificate,
    seed: &VectorField,
    claimed: &VectorField,
) -> Result<Verdict> {
    same_signature(seed.signature(), claimed.signature())?;
    let value = cert.evaluate(seed)?;
    if &value == claimed {
        Ok(Verdict::Verified)
    } else {
        Ok(Verdict::Mismatch {
            path: "root".into(),
            expected: print_field(claimed),
            found: print_field(&value),
        })
    }
}
