//! Command-line front end. [`run`] is the whole program minus process setup,
//! so it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::certify::{simplicity_certificate, verify_certificate, Verdict};
use crate::error::Error;
use crate::fields::VectorField;
use crate::kernel::{Signature, SuperPolynomial};
use crate::oracle::simplicity_scan;
use crate::textio::{emit_document, parse_document, parse_field, parse_poly, print_field, print_poly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "superfield", version, about = "Exact vector fields on superspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct SigArgs {
    /// Number of even and odd variables, as `r,s`.
    #[arg(long, value_parser = parse_sig_counts)]
    sig: (usize, usize),
    /// Custom variable names, as `x,y|xi,eta` (even before the bar).
    #[arg(long)]
    names: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a field to a polynomial.
    Eval {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        field: String,
        #[arg(long)]
        arg: String,
    },
    /// Supercommutator of two fields.
    Bracket {
        #[command(flatten)]
        sig: SigArgs,
        x: String,
        y: String,
    },
    /// Certify that `nu` lies in the Lie ideal generated by `eta`.
    Certify {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        nu: String,
        /// Where to write the certificate document.
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check a certificate document.
    Verify { path: PathBuf },
    /// Ideal closures in the purely odd algebra Der(Λ_s).
    ScanWn {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=crate::oracle::MAX_S as u64))]
        s: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the proper ideal basis, if any, as JSON.
        #[arg(long)]
        ideal_out: Option<PathBuf>,
    },
}

fn parse_sig_counts(text: &str) -> Result<(usize, usize), String> {
    let (r, s) = text.split_once(',').ok_or("expected r,s")?;
    let r = r.trim().parse().map_err(|e| format!("r: {e}"))?;
    let s = s.trim().parse().map_err(|e| format!("s: {e}"))?;
    Ok((r, s))
}

/// Failure that has already been described; carries the exit status.
struct Exit(i32);

type CmdResult = Result<(), Exit>;

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, status: i32, message: impl std::fmt::Display) -> Exit {
        let _ = writeln!(self.err, "error: {message}");
        Exit(status)
    }
}

fn signature(io: &mut Io<'_>, args: &SigArgs) -> Result<Arc<Signature>, Exit> {
    let (r, s) = args.sig;
    if r + s == 0 {
        return Err(io.fail(EXIT_USAGE, "signature needs r + s >= 1"));
    }
    let sig = match &args.names {
        None => Signature::standard(r, s),
        Some(names) => {
            let (even, odd) = names.split_once('|').unwrap_or((names, ""));
            let split = |t: &str| -> Vec<String> {
                t.split(',').map(str::trim).filter(|n| !n.is_empty()).map(String::from).collect()
            };
            let (even, odd) = (split(even), split(odd));
            if even.len() != r || odd.len() != s {
                return Err(io.fail(EXIT_USAGE, format!("--names lists {}|{} names for --sig {r},{s}", even.len(), odd.len())));
            }
            Signature::new(even, odd)
        }
    };
    sig.map(Signature::shared).map_err(|e| io.fail(EXIT_USAGE, e))
}

fn field(io: &mut Io<'_>, text: &str, sig: &Arc<Signature>) -> Result<VectorField, Exit> {
    parse_field(text, sig).map_err(|e| io.fail(EXIT_USAGE, e.render(text)))
}

fn poly(io: &mut Io<'_>, text: &str, sig: &Arc<Signature>) -> Result<SuperPolynomial, Exit> {
    parse_poly(text, sig).map_err(|e| io.fail(EXIT_USAGE, e.render(text)))
}

fn write_out(io: &mut Io<'_>, text: std::fmt::Arguments<'_>) -> CmdResult {
    io.out.write_fmt(text).map_err(|e| Exit({
        let _ = writeln!(io.err, "error: {e}");
        EXIT_USAGE
    }))
}

macro_rules! say {
    ($io:expr, $($t:tt)*) => { write_out($io, format_args!("{}\n", format_args!($($t)*))) };
}

fn status_for(e: &Error) -> i32 {
    match e {
        Error::Mismatch { .. } => EXIT_MISMATCH,
        Error::Internal { .. } => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

fn cmd_eval(io: &mut Io<'_>, sig: &SigArgs, x: &str, arg: &str) -> CmdResult {
    let sig = signature(io, sig)?;
    let x = field(io, x, &sig)?;
    let f = poly(io, arg, &sig)?;
    let value = x.apply(&f).map_err(|e| io.fail(status_for(&e), e))?;
    say!(io, "{}", print_poly(&value))
}

fn cmd_bracket(io: &mut Io<'_>, sig: &SigArgs, x: &str, y: &str) -> CmdResult {
    let sig = signature(io, sig)?;
    let x = field(io, x, &sig)?;
    let y = field(io, y, &sig)?;
    let value = x.bracket(&y).map_err(|e| io.fail(status_for(&e), e))?;
    say!(io, "{}", print_field(&value))
}

/// Parses and checks a serialized document; prints nothing on success.
fn check_document(io: &mut Io<'_>, text: &str) -> Result<crate::textio::CertificateDocument, Exit> {
    let doc = parse_document(text).map_err(|e| io.fail(EXIT_USAGE, e))?;
    match verify_certificate(&doc.root, &doc.seed, &doc.target) {
        Ok(Verdict::Verified) => Ok(doc),
        Ok(mismatch) => Err(io.fail(EXIT_MISMATCH, mismatch)),
        Err(e) => Err(io.fail(EXIT_USAGE, e)),
    }
}

fn cmd_certify(io: &mut Io<'_>, sig: &SigArgs, eta: &str, nu: &str, out: &PathBuf) -> CmdResult {
    let sig = signature(io, sig)?;
    if sig.r() == 0 {
        return Err(io.fail(
            EXIT_USAGE,
            "purely odd signature (r = 0) is not handled by the certificate engine; use `superfield scan-wn --s <s>`",
        ));
    }
    let eta = field(io, eta, &sig)?;
    let nu = field(io, nu, &sig)?;
    if eta.is_zero() {
        return Err(io.fail(EXIT_USAGE, "eta must be a nonzero field"));
    }
    let certified = simplicity_certificate(&eta, &nu).map_err(|e| io.fail(status_for(&e), e))?;
    let text = emit_document(&certified.to_document());
    std::fs::write(out, &text).map_err(|e| io.fail(EXIT_USAGE, format!("{}: {e}", out.display())))?;
    let written = std::fs::read_to_string(out).map_err(|e| io.fail(EXIT_USAGE, format!("{}: {e}", out.display())))?;
    let doc = check_document(io, &written)?;
    say!(io, "# certify sig={} seed: none (deterministic construction)", sig)?;
    say!(io, "eta = {}", print_field(&doc.seed))?;
    say!(io, "nu = {}", print_field(&doc.target))?;
    for step in &doc.trace {
        say!(io, "  {step}")?;
    }
    say!(
        io,
        "certificate: {} distinct nodes, bracket depth {}, {} bytes -> {}",
        doc.root.distinct_nodes(),
        doc.root.bracket_depth(),
        written.len(),
        out.display()
    )?;
    say!(io, "VERIFIED")
}

fn cmd_verify(io: &mut Io<'_>, path: &PathBuf) -> CmdResult {
    let text = std::fs::read_to_string(path).map_err(|e| io.fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    let doc = check_document(io, &text)?;
    say!(io, "seed = {}", print_field(&doc.seed))?;
    say!(io, "target = {}", print_field(&doc.target))?;
    say!(io, "VERIFIED")
}

fn cmd_scan(io: &mut Io<'_>, s: usize, trials: usize, seed: u64, ideal_out: Option<&PathBuf>) -> CmdResult {
    let report = simplicity_scan(s, trials, seed).map_err(|e| io.fail(status_for(&e), e))?;
    write_out(io, format_args!("{report}"))?;
    if let (Some(path), Some(doc)) = (ideal_out, report.ideal_document()) {
        std::fs::write(path, doc).map_err(|e| io.fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
        say!(io, "ideal basis written to {}", path.display())?;
    }
    Ok(())
}

/// Runs the program on `args` (including the program name) and returns the
/// exit status: 0 success, 1 verification mismatch, 2 input or usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let mut io = Io { out, err };
    let result = match &cli.command {
        Command::Eval { sig, field, arg } => cmd_eval(&mut io, sig, field, arg),
        Command::Bracket { sig, x, y } => cmd_bracket(&mut io, sig, x, y),
        Command::Certify { sig, eta, nu, out } => cmd_certify(&mut io, sig, eta, nu, out),
        Command::Verify { path } => cmd_verify(&mut io, path),
        Command::ScanWn {
            s,
            trials,
            seed,
            ideal_out,
        } => cmd_scan(&mut io, *s as usize, *trials, *seed, ideal_out.as_ref()),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Exit(code)) => code,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("superfield").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_examples() {
        assert_eq!(call(&["eval", "--sig", "1,1", "--field", "d(t)", "--arg", "t^2"]).1, "2*t\n");
        assert_eq!(call(&["eval", "--sig", "1,1", "--field", "theta1*d(t)", "--arg", "t*theta1"]).1, "0\n");
        let (code, _, err) = call(&["eval", "--sig", "1,1", "--field", "d(t)", "--arg", "t^^2"]);
        assert_eq!(code, 2);
        assert!(err.contains('^'));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(call(&["bracket", "--sig", "1,0", "d(t)", "t*d(t)"]).1, "d(t)\n");
        assert_eq!(call(&["bracket", "--sig", "0,1", "theta1*d(theta1)", "d(theta1)"]).1, "-d(theta1)\n");
        assert_eq!(call(&["bracket", "--sig", "0,1", "d(theta1)", "d(theta1)"]).1, "0\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["scan-wn", "--s", "0"]).0, 2);
        assert_eq!(call(&["eval", "--sig", "0,0", "--field", "0", "--arg", "0"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        let (code, _, err) = call(&["certify", "--sig", "0,2", "--eta", "d(theta1)", "--nu", "d(theta2)", "--out", "/dev/null"]);
        assert_eq!(code, 2);
        assert!(err.contains("scan-wn"));
    }

    #[test]
    fn custom_names() {
        let (code, out, _) = call(&["eval", "--sig", "1,1", "--names", "x|xi", "--field", "xi*d(x)", "--arg", "x^2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "2*x*xi\n");
    }
}
