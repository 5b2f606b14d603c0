//! Text forms of polynomials, vector fields and certificates.
//!
//! Polynomial grammar, lowest precedence first:
//!
//! ```text
//! sum     := ['+'|'-'] product (('+'|'-') product)*
//! product := power (['*'] power)*
//! power   := atom ['^' INT]          (even variables and even groups only)
//! atom    := INT ['/' INT] | name | '(' sum ')'
//! ```
//!
//! A field is a sum of `product '*' d(name)` terms. Juxtaposition needs a
//! separator after a number: `2*t`, never `2t`.

mod document;
mod parse;
mod print;

pub use document::{
    emit_certificate, emit_document, parse_certificate, parse_document, CertificateDocument,
};
pub use parse::{parse_field, parse_poly, parse_rational, ParseError, SourceSpan};
pub use print::{print_field, print_poly};
