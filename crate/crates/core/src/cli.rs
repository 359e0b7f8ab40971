//! JSON front end.
//!
//! Every command prints one [`ResultDocument`] on stdout. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (including "indecomposable" and "approximate" results) |
//! | 2 | unreadable input, malformed document or bad arguments |
//! | 3 | degenerate curve: not squarefree, or degree inconsistent with genus |
//! | 4 | no extra involution detected, or the invariants vanish identically |
//! | 5 | model precondition violated, or the model is degenerate |
//! | 6 | floating-point root finding failed |

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::classify::{self, FactorSign};
use crate::error::{Error, Result};
use crate::invariants::{invariants_equal_tol, DEFAULT_TOL};
use crate::involution::{decompose_degree2, HyperellipticCurve};
use crate::models::{self, ModelFamily, RationalModelRequest};
use crate::numeric;
use crate::{Complex64, ComplexInvariants, DihedralInvariants, RatInvariants, RatPoly, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE_CURVE: i32 = 3;
pub const EXIT_NOT_IN_LOCUS: i32 = 4;
pub const EXIT_MODEL: i32 = 5;
pub const EXIT_NUMERIC: i32 = 6;

#[derive(Parser, Debug)]
#[command(
    name = "hyperell",
    version,
    about = "Dihedral invariants of hyperelliptic curves"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Emit JSON (the only output format; accepted for explicitness).
    #[arg(long, global = true)]
    pub json: bool,
    /// Also search for involutions numerically (Möbius search over C).
    #[arg(long, global = true)]
    pub numeric: bool,
    /// Relative tolerance of the numeric search.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dihedral invariants of a curve.
    Invariants { file: PathBuf },
    /// Invariants plus Klein four-group and factor analysis.
    Classify { file: PathBuf },
    /// Decide whether two curves with extra involutions are isomorphic.
    Isomorphic { left: PathBuf, right: PathBuf },
    /// Build a rational model from invariants.
    Model {
        #[arg(long)]
        genus: Option<usize>,
        /// Comma-separated invariants, e.g. `162,36,18` or `-16,8`.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, default_value = "generic_v4")]
        family: String,
        /// Parameter of the `g3_aut16` family.
        #[arg(long, allow_hyphen_values = true)]
        w: Option<String>,
    },
    /// Decompose the polynomial as G(X^2 + aX).
    Decompose { file: PathBuf },
}

/// Input curve: coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub genus: usize,
    pub coeffs: Vec<CoeffEntry>,
}

/// Coefficients are strings (`"3/4"`); plain integers are accepted too.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffEntry {
    Text(String),
    Int(i64),
}

impl CurveDocument {
    pub fn polynomial(&self) -> Result<RatPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                CoeffEntry::Text(s) => parse_rational(s),
                CoeffEntry::Int(n) => Ok(Rational::from_integer((*n).into())),
            })
            .collect::<Result<Vec<_>>>()?;
        match coeffs.last() {
            None => return Err(Error::InvalidInput("empty coefficient list".into())),
            Some(c) if c.is_zero() => {
                return Err(Error::InvalidInput(
                    "last coefficient must be nonzero".into(),
                ))
            }
            _ => {}
        }
        Ok(RatPoly::new(coeffs))
    }

    pub fn curve(&self) -> Result<HyperellipticCurve> {
        HyperellipticCurve::new(self.genus, self.polynomial()?)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ModelOutput {
    pub family: String,
    pub coeffs: Vec<String>,
    pub polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct DecompositionOutput {
    pub outer: Vec<String>,
    pub inner: Vec<String>,
    pub shift: String,
    /// Outer factor with respect to `(X - shift)^2`.
    pub centered_outer: Vec<String>,
}

/// Output of every command. Field order is the serialization order.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants_other: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approximate_invariants: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v4_embedded: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_sign: Option<FactorSign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionOutput>,
    pub exact: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl ResultDocument {
    fn new(command: &str) -> Self {
        ResultDocument {
            command: command.to_string(),
            status: "ok".to_string(),
            exact: true,
            ..Default::default()
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotSquarefree | Error::InvalidDegree(_) | Error::ZeroPolynomial => {
            EXIT_DEGENERATE_CURVE
        }
        Error::NotInLocus | Error::DegenerateLocus | Error::NotNormalizable(_) => EXIT_NOT_IN_LOCUS,
        Error::Precondition(_) | Error::DegenerateModel | Error::NotApplicable(_) => EXIT_MODEL,
        Error::NumericFailure(_) | Error::Verification(_) => EXIT_NUMERIC,
        Error::InvalidInput(_)
        | Error::InvalidBound { .. }
        | Error::InvalidRoot { .. }
        | Error::GenusMismatch { .. } => EXIT_USAGE,
    }
}

fn status_for(e: &Error) -> &'static str {
    match e {
        Error::NotSquarefree => "not-squarefree",
        Error::InvalidDegree(_) | Error::ZeroPolynomial => "invalid-degree",
        Error::NotInLocus => "not-in-L_g",
        Error::DegenerateLocus => "degenerate-locus",
        Error::NotNormalizable(_) => "not-normalizable",
        Error::Precondition(_) | Error::NotApplicable(_) => "precondition-failed",
        Error::DegenerateModel => "degenerate-model",
        Error::NumericFailure(_) | Error::Verification(_) => "numeric-failure",
        _ => "invalid-input",
    }
}

/// Reduced `num/den` with positive denominator, or just `num`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

fn format_tuple(u: &RatInvariants) -> Vec<String> {
    u.values().iter().map(format_rational).collect()
}

fn format_coeffs(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn format_float(x: f64) -> String {
    let r = (x * 1e9).round() / 1e9 + 0.0;
    format!("{r}")
}

fn format_complex(z: &Complex64, tol: f64) -> String {
    if z.im.abs() <= tol * z.re.abs().max(1.0) {
        format_float(z.re)
    } else {
        let im = format_float(z.im);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("{}{sign}{im}i", format_float(z.re))
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let bad = || Error::InvalidInput(format!("not a rational number: '{s}'"));
    let int = |x: &str| x.parse::<BigInt>().map_err(|_| bad());
    match t.split_once('/') {
        None => Ok(Rational::from_integer(int(t)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(int(n)?, d))
        }
    }
}

pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

/// Parses `x^8 - 3*x^6 + 2*x^4 - 3*x^2 + 1` (an optional `y^2 =` prefix is ignored).
pub fn parse_polynomial(text: &str) -> Result<RatPoly> {
    let body = match text.split_once('=') {
        Some((_, rhs)) => rhs,
        None => text,
    };
    let s: String = body
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| c.to_ascii_lowercase())
        .collect::<String>()
        .replace("**", "^");
    if s.is_empty() {
        return Err(Error::InvalidInput("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > start {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);

    let mut coeffs: Vec<Rational> = Vec::new();
    for term in terms {
        let bad = || Error::InvalidInput(format!("cannot parse term '{term}'"));
        let (negative, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        let (coeff, exp) = match body.split_once('x') {
            None => (parse_rational(body).map_err(|_| bad())?, 0),
            Some((c, rest)) => {
                let c = c.strip_suffix('*').unwrap_or(c);
                let coeff = if c.is_empty() {
                    Rational::from_integer(1.into())
                } else {
                    parse_rational(c).map_err(|_| bad())?
                };
                let exp = match rest {
                    "" => 1,
                    r => r
                        .strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(bad)?,
                };
                (coeff, exp)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, Rational::zero());
        }
        coeffs[exp] = coeffs[exp].clone() + if negative { -coeff } else { coeff };
    }
    let p = RatPoly::new(coeffs);
    if p.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    Ok(p)
}

/// JSON document, or a plain-text polynomial whose genus is read off its degree.
pub fn parse_curve_text(text: &str) -> Result<CurveDocument> {
    if text.trim_start().starts_with('{') {
        return serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("bad curve document: {e}")));
    }
    let p = parse_polynomial(text)?;
    let deg = p.degree().unwrap_or(0);
    Ok(CurveDocument {
        genus: deg.saturating_sub(1) / 2,
        coeffs: p
            .coeffs()
            .iter()
            .map(|c| CoeffEntry::Text(format_rational(c)))
            .collect(),
    })
}

fn load(path: &Path) -> Result<CurveDocument> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_curve_text(&text)
}

fn numeric_tuples(curve: &HyperellipticCurve, tol: f64) -> Result<Vec<ComplexInvariants>> {
    let (model, _) = curve.even_degree_model();
    let mut out: Vec<ComplexInvariants> = Vec::new();
    for inv in numeric::search_involutions_of_poly(&model, tol)? {
        if inv.fixes_branch_points {
            continue;
        }
        if let Some(u) = numeric::involution_invariants(&model, &inv)? {
            let mut seen = false;
            for v in &out {
                if invariants_equal_tol(v, &u, tol.sqrt())? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                out.push(u);
            }
        }
    }
    Ok(out)
}

fn format_complex_tuple(u: &DihedralInvariants<Complex64>, tol: f64) -> Vec<String> {
    u.values()
        .iter()
        .map(|z| format_complex(z, tol.sqrt()))
        .collect()
}

/// Exact tuples; with `--numeric`, approximate ones are added and an empty
/// exact result is no longer an error.
fn collect_invariants(
    curve: &HyperellipticCurve,
    opts: &GlobalOpts,
    doc: &mut ResultDocument,
) -> Result<Vec<RatInvariants>> {
    let exact = classify::rational_invariant_tuples(curve);
    if !opts.numeric {
        return exact;
    }
    let approx = numeric_tuples(curve, opts.tol)?;
    doc.exact = false;
    doc.approximate_invariants = Some(
        approx
            .iter()
            .map(|u| format_complex_tuple(u, opts.tol))
            .collect(),
    );
    match exact {
        Ok(t) => Ok(t),
        Err(Error::NotInLocus) | Err(Error::DegenerateLocus) if !approx.is_empty() => {
            doc.status = "approximate".into();
            doc.notes
                .push("no extra involution over Q; tuples found numerically".into());
            Ok(Vec::new())
        }
        Err(e) => Err(e),
    }
}

fn cmd_invariants(file: &Path, opts: &GlobalOpts) -> Result<ResultDocument> {
    let mut doc = ResultDocument::new("invariants");
    let curve = load(file)?.curve()?;
    doc.genus = Some(curve.genus());
    let tuples = collect_invariants(&curve, opts, &mut doc)?;
    doc.invariants = Some(tuples.iter().map(format_tuple).collect());
    Ok(doc)
}

fn cmd_classify(file: &Path, opts: &GlobalOpts) -> Result<ResultDocument> {
    let mut doc = ResultDocument::new("classify");
    let curve = load(file)?.curve()?;
    doc.genus = Some(curve.genus());
    if opts.numeric {
        match collect_invariants(&curve, opts, &mut doc) {
            Ok(_) | Err(Error::NotInLocus) | Err(Error::DegenerateLocus) => {}
            Err(e) => return Err(e),
        }
    }
    let report = classify::classify(&curve);
    doc.invariants = Some(report.invariant_tuples.iter().map(format_tuple).collect());
    doc.v4_embedded = Some(report.v4_embedded);
    doc.factor_sign = report.factor_sign;
    doc.d6 = report.d6.as_ref().map(format_rational);
    doc.notes.extend(report.notes);
    Ok(doc)
}

fn cmd_isomorphic(left: &Path, right: &Path) -> Result<ResultDocument> {
    let mut doc = ResultDocument::new("isomorphic");
    let a = load(left)?.curve()?;
    let b = load(right)?.curve()?;
    let ta = classify::rational_invariant_tuples(&a)?;
    let tb = classify::rational_invariant_tuples(&b)?;
    doc.isomorphic = Some(classify::curves_isomorphic_with_involution(&a, &b)?);
    doc.genus = Some(a.genus());
    doc.invariants = Some(ta.iter().map(format_tuple).collect());
    doc.invariants_other = Some(tb.iter().map(format_tuple).collect());
    if a.genus() != b.genus() {
        doc.notes
            .push(format!("genus {} vs {}", a.genus(), b.genus()));
    }
    Ok(doc)
}

fn cmd_model(
    genus: Option<usize>,
    u: Option<&str>,
    family: &str,
    w: Option<&str>,
) -> Result<ResultDocument> {
    let mut doc = ResultDocument::new("model");
    let family: ModelFamily = family.parse()?;
    let u = u
        .map(|s| parse_rational_list(s).and_then(DihedralInvariants::new))
        .transpose()
        .map_err(|e| match e {
            Error::InvalidInput(m) => Error::InvalidInput(m),
            other => Error::InvalidInput(format!("--u: {other}")),
        })?;
    let extra = w.map(parse_rational).transpose()?;
    let genus = genus
        .or(family.genus())
        .or(u.as_ref().map(|u| u.genus()))
        .ok_or_else(|| Error::InvalidInput("--genus or --u is required".into()))?;
    doc.genus = Some(genus);
    let req = RationalModelRequest {
        genus,
        u: u.clone(),
        family,
        extra,
    };
    let curve = models::build_model(&req)?;
    let mut out = ModelOutput {
        family: family.name().to_string(),
        coeffs: format_coeffs(curve.poly()),
        polynomial: curve.poly().to_string(),
        verified: None,
    };
    if let Some(note) = family.caveat() {
        doc.notes.push(note.to_string());
    }
    if let Some(u) = &u {
        doc.invariants = Some(vec![format_tuple(u)]);
        match models::verify_model_detailed(u, &curve) {
            Ok(v) => {
                out.verified = Some(v.matches);
                doc.exact = v.exact || !v.matches;
                if v.matches && !v.exact {
                    doc.diagnostics
                        .push("invariants reproduced numerically".into());
                }
            }
            Err(e) => {
                out.verified = Some(false);
                doc.diagnostics.push(e.to_string());
            }
        }
    }
    doc.model = Some(out);
    Ok(doc)
}

fn cmd_decompose(file: &Path) -> Result<ResultDocument> {
    let mut doc = ResultDocument::new("decompose");
    let cd = load(file)?;
    let p = cd.polynomial()?;
    doc.genus = Some(cd.genus);
    match decompose_degree2(&p) {
        Some(w) => {
            doc.status = "decomposable".into();
            doc.decomposition = Some(DecompositionOutput {
                outer: format_coeffs(&w.outer),
                inner: format_coeffs(&w.inner),
                shift: format_rational(&w.shift),
                centered_outer: format_coeffs(&w.centered_outer()),
            });
        }
        None => doc.status = "indecomposable".into(),
    }
    Ok(doc)
}

fn dispatch(cli: &Cli) -> (String, Result<ResultDocument>) {
    let opts = &cli.global;
    match &cli.command {
        Command::Invariants { file } => ("invariants".into(), cmd_invariants(file, opts)),
        Command::Classify { file } => ("classify".into(), cmd_classify(file, opts)),
        Command::Isomorphic { left, right } => ("isomorphic".into(), cmd_isomorphic(left, right)),
        Command::Model {
            genus,
            u,
            family,
            w,
        } => (
            "model".into(),
            cmd_model(*genus, u.as_deref(), family, w.as_deref()),
        ),
        Command::Decompose { file } => ("decompose".into(), cmd_decompose(file)),
    }
}

fn emit(out: &mut dyn Write, doc: &ResultDocument) {
    let text = serde_json::to_string_pretty(doc).expect("result documents serialize");
    let _ = writeln!(out, "{text}");
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let (command, result) = dispatch(&cli);
    match result {
        Ok(doc) => {
            emit(out, &doc);
            EXIT_OK
        }
        Err(e) => {
            let mut doc = ResultDocument::new(&command);
            doc.status = status_for(&e).to_string();
            doc.message = Some(e.to_string());
            emit(out, &doc);
            let _ = writeln!(err, "hyperell {command}: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn polynomial_parser() {
        assert_eq!(
            parse_polynomial("x^8 - 3*x^6 + 2*x^4 - 3*x^2 + 1").unwrap(),
            RatPoly::from_i64s(&[1, 0, -3, 0, 2, 0, -3, 0, 1])
        );
        assert_eq!(
            parse_polynomial("y^2 = -X^5 + 3/2x - 7").unwrap(),
            RatPoly::new(vec![
                rat(-7, 1),
                rat(3, 2),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(-1, 1)
            ])
        );
        assert_eq!(
            parse_polynomial("x**2 + x + x").unwrap(),
            RatPoly::from_i64s(&[0, 2, 1])
        );
        assert!(parse_polynomial("x^ + 1").is_err());
        assert!(parse_polynomial("x - x").is_err());
        assert!(parse_polynomial("").is_err());
    }

    #[test]
    fn documents() {
        let d = parse_curve_text(r#"{"genus": 2, "coeffs": ["1", 0, "-1/2", "0", "0", "0", "1"]}"#)
            .unwrap();
        assert_eq!(d.polynomial().unwrap().coeff(2), rat(-1, 2));
        let d = parse_curve_text("x^7 - 1").unwrap();
        assert_eq!(d.genus, 3);
        assert!(parse_curve_text(r#"{"genus": 2, "coeffs": ["1", "0"]}"#)
            .unwrap()
            .polynomial()
            .is_err());
        assert!(parse_curve_text(r#"{"genus": 2, "coeffs": [], "x": 1}"#).is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(
            format_complex(&Complex64::new(162.0000000000001, 1e-14), 1e-6),
            "162"
        );
        assert_eq!(format_complex(&Complex64::new(-0.0, 0.0), 1e-6), "0");
        assert_eq!(format_complex(&Complex64::new(1.5, -2.0), 1e-6), "1.5-2i");
    }
}
