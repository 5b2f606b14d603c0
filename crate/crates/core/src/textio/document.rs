//! Certificate interchange format.
//!
//! ```text
//! { "signature": { "r": 1, "s": 1, "even_names": ["t"], "odd_names": ["theta1"] },
//!   "seed": "<field>", "target": "<field>",
//!   "root": <node>,
//!   "trace": [ { "label": "prop-lower", "detail": "..." } ] }
//!
//! node := { "kind": "generator" }
//!       | { "kind": "ad", "left": "<field>", "child": <node> }
//!       | { "kind": "lincomb", "terms": [ { "coeff": "-2/5", "child": <node> } ] }
//! ```
//!
//! Rationals are strings; `trace` is optional. Identical subtrees are shared
//! again when a document is read back.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::{parse_field, print_field};
use crate::certify::{Certificate, Node, Step, TraceStep};
use crate::error::{Error, Result};
use crate::fields::VectorField;
use crate::kernel::{Rational, Signature};
use crate::textio::parse_rational;

/// A certificate together with everything needed to check it.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateDocument {
    pub signature: Arc<Signature>,
    pub seed: VectorField,
    pub target: VectorField,
    pub root: Certificate,
    pub trace: Vec<TraceStep>,
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

struct Emitter {
    texts: HashMap<*const Node, Value>,
}

impl Emitter {
    fn node(&mut self, n: &Arc<Node>) -> Value {
        if let Some(v) = self.texts.get(&Arc::as_ptr(n)) {
            return v.clone();
        }
        let v = match &**n {
            Node::Generator => json!({ "kind": "generator" }),
            Node::Ad { left, child } => json!({
                "kind": "ad",
                "left": print_field(left),
                "child": self.node(child),
            }),
            Node::LinComb { terms } => {
                let terms: Vec<Value> = terms
                    .iter()
                    .map(|(c, child)| json!({ "coeff": c.to_string(), "child": self.node(child) }))
                    .collect();
                json!({ "kind": "lincomb", "terms": terms })
            }
        };
        self.texts.insert(Arc::as_ptr(n), v.clone());
        v
    }
}

fn node_value(cert: &Certificate) -> Value {
    Emitter {
        texts: HashMap::new(),
    }
    .node(cert.root())
}

/// Serializes a bare certificate tree.
pub fn emit_certificate(cert: &Certificate) -> String {
    serde_json::to_string(&node_value(cert)).expect("json values serialize")
}

/// Serializes a full document.
pub fn emit_document(doc: &CertificateDocument) -> String {
    let sig = &doc.signature;
    let mut top = Map::new();
    top.insert(
        "signature".into(),
        json!({
            "r": sig.r(),
            "s": sig.s(),
            "even_names": sig.even_names(),
            "odd_names": sig.odd_names(),
        }),
    );
    top.insert("seed".into(), Value::String(print_field(&doc.seed)));
    top.insert("target".into(), Value::String(print_field(&doc.target)));
    top.insert("root".into(), node_value(&doc.root));
    if !doc.trace.is_empty() {
        let trace: Vec<Value> = doc
            .trace
            .iter()
            .map(|t| json!({ "label": t.step.label(), "detail": t.detail }))
            .collect();
        top.insert("trace".into(), Value::Array(trace));
    }
    let mut out = serde_json::to_string(&Value::Object(top)).expect("json values serialize");
    out.push('\n');
    out
}

fn read_json(text: &str) -> Result<Value> {
    let mut de = serde_json::Deserializer::from_str(text);
    de.disable_recursion_limit();
    let v = Value::deserialize(&mut de).map_err(|e| schema("$", format!("invalid JSON: {e}")))?;
    de.end()
        .map_err(|e| schema("$", format!("trailing characters: {e}")))?;
    Ok(v)
}

#[derive(PartialEq, Eq, Hash)]
enum NodeKey {
    Generator,
    Ad(String, usize),
    LinComb(Vec<(String, usize)>),
}

/// Rebuilds nodes bottom-up, sharing structurally identical subtrees.
struct Reader<'a> {
    sig: &'a Arc<Signature>,
    fields: HashMap<String, VectorField>,
    interned: HashMap<NodeKey, Arc<Node>>,
}

impl<'a> Reader<'a> {
    fn new(sig: &'a Arc<Signature>) -> Self {
        Reader {
            sig,
            fields: HashMap::new(),
            interned: HashMap::new(),
        }
    }

    fn field(&mut self, text: &str, path: &str) -> Result<VectorField> {
        if let Some(x) = self.fields.get(text) {
            return Ok(x.clone());
        }
        let x = parse_field(text, self.sig)
            .map_err(|e| schema(path, format!("bad field text `{text}`: {e}")))?;
        self.fields.insert(text.to_string(), x.clone());
        Ok(x)
    }

    fn intern(&mut self, key: NodeKey, make: impl FnOnce() -> Node) -> Arc<Node> {
        Arc::clone(self.interned.entry(key).or_insert_with(|| Arc::new(make())))
    }

    fn node(&mut self, v: &Value, path: &str) -> Result<Arc<Node>> {
        let obj = v
            .as_object()
            .ok_or_else(|| schema(path, "node must be an object"))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| schema(path, "missing string field `kind`"))?;
        let allowed: &[&str] = match kind {
            "generator" => &["kind"],
            "ad" => &["kind", "left", "child"],
            "lincomb" => &["kind", "terms"],
            other => {
                return Err(schema(
                    path,
                    format!("unknown node kind `{other}` (expected generator, ad or lincomb)"),
                ))
            }
        };
        if let Some(extra) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(schema(path, format!("unexpected field `{extra}` in {kind} node")));
        }
        match kind {
            "generator" => Ok(self.intern(NodeKey::Generator, || Node::Generator)),
            "ad" => {
                let text = obj
                    .get("left")
                    .and_then(Value::as_str)
                    .ok_or_else(|| schema(path, "ad node needs a string `left`"))?;
                let left = self.field(text, &format!("{path}.left"))?;
                let child_v = obj
                    .get("child")
                    .ok_or_else(|| schema(path, "ad node needs a `child`"))?;
                let child = self.node(child_v, &format!("{path}.child"))?;
                let key = NodeKey::Ad(text.to_string(), Arc::as_ptr(&child) as usize);
                Ok(self.intern(key, || Node::Ad { left, child }))
            }
            _ => {
                let arr = obj
                    .get("terms")
                    .and_then(Value::as_array)
                    .ok_or_else(|| schema(path, "lincomb node needs an array `terms`"))?;
                let mut terms = Vec::with_capacity(arr.len());
                let mut key = Vec::with_capacity(arr.len());
                for (i, t) in arr.iter().enumerate() {
                    let tpath = format!("{path}.terms[{i}]");
                    let tobj = t
                        .as_object()
                        .ok_or_else(|| schema(&tpath, "term must be an object"))?;
                    if let Some(extra) = tobj.keys().find(|k| *k != "coeff" && *k != "child") {
                        return Err(schema(&tpath, format!("unexpected field `{extra}` in term")));
                    }
                    let ctext = tobj
                        .get("coeff")
                        .and_then(Value::as_str)
                        .ok_or_else(|| schema(&tpath, "term needs a string `coeff`"))?;
                    let c: Rational = parse_rational(ctext).map_err(|e| {
                        schema(&format!("{tpath}.coeff"), format!("bad rational `{ctext}`: {e}"))
                    })?;
                    let child_v = tobj
                        .get("child")
                        .ok_or_else(|| schema(&tpath, "term needs a `child`"))?;
                    let child = self.node(child_v, &format!("{tpath}.child"))?;
                    key.push((c.to_string(), Arc::as_ptr(&child) as usize));
                    terms.push((c, child));
                }
                Ok(self.intern(NodeKey::LinComb(key), || Node::LinComb { terms }))
            }
        }
    }
}

/// Parses a bare certificate tree over `sig`.
pub fn parse_certificate(text: &str, sig: &Arc<Signature>) -> Result<Certificate> {
    let v = read_json(text)?;
    Ok(Certificate::from_node(Reader::new(sig).node(&v, "root")?))
}

fn parse_signature(v: &Value) -> Result<Arc<Signature>> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema("signature", "must be an object"))?;
    let names = |key: &str| -> Result<Vec<String>> {
        obj.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| schema(&format!("signature.{key}"), "must be an array of strings"))?
            .iter()
            .map(|n| {
                n.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| schema(&format!("signature.{key}"), "names must be strings"))
            })
            .collect()
    };
    let count = |key: &str| -> Result<usize> {
        obj.get(key)
            .and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or_else(|| schema(&format!("signature.{key}"), "must be a nonnegative integer"))
    };
    let (even, odd) = (names("even_names")?, names("odd_names")?);
    if count("r")? != even.len() || count("s")? != odd.len() {
        return Err(schema("signature", "r and s must match the name lists"));
    }
    Signature::new(even, odd)
        .map(Signature::shared)
        .map_err(|e| schema("signature", e.to_string()))
}

/// Parses a full document; the signature is read from the document itself.
pub fn parse_document(text: &str) -> Result<CertificateDocument> {
    let v = read_json(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| schema("$", "document must be an object"))?;
    for key in obj.keys() {
        if !["signature", "seed", "target", "root", "trace"].contains(&key.as_str()) {
            return Err(schema("$", format!("unexpected top-level field `{key}`")));
        }
    }
    let sig = parse_signature(
        obj.get("signature")
            .ok_or_else(|| schema("$", "missing `signature`"))?,
    )?;
    let mut reader = Reader::new(&sig);
    let mut field = |key: &str| -> Result<VectorField> {
        let text = obj
            .get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| schema(key, "must be a field string"))?;
        reader.field(text, key)
    };
    let seed = field("seed")?;
    let target = field("target")?;
    let root = reader.node(
        obj.get("root").ok_or_else(|| schema("$", "missing `root`"))?,
        "root",
    )?;
    let mut trace = Vec::new();
    if let Some(t) = obj.get("trace") {
        let arr = t
            .as_array()
            .ok_or_else(|| schema("trace", "must be an array"))?;
        for (i, item) in arr.iter().enumerate() {
            let path = format!("trace[{i}]");
            let label = item
                .get("label")
                .and_then(Value::as_str)
                .ok_or_else(|| schema(&path, "needs a string `label`"))?;
            let step = Step::from_label(label)
                .ok_or_else(|| schema(&path, format!("unknown trace label `{label}`")))?;
            let detail = item
                .get("detail")
                .and_then(Value::as_str)
                .unwrap_or_default()
                .to_string();
            trace.push(TraceStep { step, detail });
        }
    }
    Ok(CertificateDocument {
        signature: sig,
        seed,
        target,
        root: Certificate::from_node(root),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn sig() -> Arc<Signature> {
        Signature::standard(1, 1).unwrap().shared()
    }

    #[test]
    fn generator_leaf() {
        let text = emit_certificate(&Certificate::generator());
        assert_eq!(text, r#"{"kind":"generator"}"#);
        assert_eq!(parse_certificate(&text, &sig()).unwrap(), Certificate::generator());
    }

    #[test]
    fn ad_node_carries_field_text() {
        let g = sig();
        let left = parse_field("t*d(theta1)", &g).unwrap();
        let c = Certificate::generator().ad(left).scaled(rat(-1));
        let text = emit_certificate(&c);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["terms"][0]["child"]["kind"], "ad");
        assert_eq!(v["terms"][0]["child"]["left"], "t*d(theta1)");
        assert_eq!(v["terms"][0]["coeff"], "-1");
        assert_eq!(parse_certificate(&text, &g).unwrap(), c);
    }

    #[test]
    fn bad_kind_names_path() {
        let text = r#"{"kind":"lincomb","terms":[{"coeff":"1","child":{"kind":"add"}}]}"#;
        match parse_certificate(text, &sig()) {
            Err(Error::Schema { path, message }) => {
                assert_eq!(path, "root.terms[0].child");
                assert!(message.contains("unknown node kind `add`"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = r#"{"kind":"ad","left":"d(x)","child":{"kind":"generator"}}"#;
        assert!(matches!(
            parse_certificate(text, &sig()),
            Err(Error::Schema { path, .. }) if path == "root.left"
        ));
        let text = r#"{"kind":"lincomb","terms":[{"coeff":"1/0","child":{"kind":"generator"}}]}"#;
        assert!(matches!(
            parse_certificate(text, &sig()),
            Err(Error::Schema { path, .. }) if path == "root.terms[0].coeff"
        ));
        assert!(parse_certificate("{\"kind\":", &sig()).is_err());
    }

    #[test]
    fn parsing_restores_sharing() {
        let g = sig();
        let inner = Certificate::generator().ad(parse_field("d(t)", &g).unwrap());
        let c = Certificate::lincomb([(rat(1), &inner), (rat(2), &inner)]);
        let back = parse_certificate(&emit_certificate(&c), &g).unwrap();
        assert_eq!(back.distinct_nodes(), 3);
    }

    #[test]
    fn document_round_trip() {
        let g = sig();
        let doc = CertificateDocument {
            signature: Arc::clone(&g),
            seed: parse_field("theta1*d(t)", &g).unwrap(),
            target: parse_field("d(t)", &g).unwrap(),
            root: Certificate::generator().ad(parse_field("d(theta1)", &g).unwrap()),
            trace: vec![TraceStep {
                step: Step::Lower,
                detail: "ad(d(theta1))".into(),
            }],
        };
        let text = emit_document(&doc);
        assert_eq!(parse_document(&text).unwrap(), doc);
        let bad = text.replace("\"r\":1", "\"r\":2");
        assert!(parse_document(&bad).is_err());
    }
}
