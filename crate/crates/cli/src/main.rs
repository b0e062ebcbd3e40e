//! `phasetrop`: command-line front end. Reads a session file, prints JSON.
//!
//! Exit codes: 0 success, 2 input error, 3 non-convergence or a non-generic
//! outcome.

mod json;
mod selftest;
mod svg;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use phasetrop::hahn::fmt_valuation;
use phasetrop::ideal::{critical_levels, fiber_report, initial_ideal, is_homogeneous, ValuedIdeal};
use phasetrop::lifting::lift_hypersurface_root;
use phasetrop::parse::{parse_coeff, parse_rational, parse_session, Entry, Item, Session};
use phasetrop::phase::vector_initial_form;
use phasetrop::sl2::{limit_verify, psi_inverse, psi_limit, valuative_trop_exact, valuative_trop_sl2, CMat2, HahnMat2};
use phasetrop::surface::{det_free_reduce, hat_simplify, layer_decomposition, realize_from_layers};
use phasetrop::valued::{initial_poly, tilde_reduce, tropical_poly, tropical_roots};
use phasetrop::{Error, Exponent, HahnScalar, Monomial, ValuedPoly};

#[derive(Parser)]
#[command(name = "phasetrop", version, about = "Phase tropicalizations over Hahn-series fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Session file, `-` for standard input.
    file: PathBuf,
    /// Entry to operate on; defaults to the first suitable one.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Valuations and initial forms of scalars, vectors and matrices;
    /// tropical polynomials of polynomials.
    Val {
        #[command(flatten)]
        input: Input,
    },
    /// Initial polynomial or initial ideal at a level.
    Init {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[command(flatten)]
        input: Input,
    },
    /// Critical levels with interval and level ideals.
    Levels {
        #[command(flatten)]
        input: Input,
    },
    /// Fiber ideal and its dimension at a level.
    Fiber {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[command(flatten)]
        input: Input,
    },
    /// Lift a simple root of the residue polynomial.
    Lift {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, default_value_t = 3)]
        precision: u32,
        #[command(flatten)]
        input: Input,
    },
    /// Limit matrix of the valuative tropicalization of an SL2 matrix.
    Sl2Limit {
        #[command(flatten)]
        input: Input,
    },
    /// Level and phase of a complex SL2 matrix.
    Sl2Invert {
        #[command(flatten)]
        input: Input,
    },
    /// Layer decomposition of a surface `det = 1, f = 0`.
    Layers {
        /// Write an SVG picture to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// Numeric check of the limit formula at the given values of `s = log t`.
    VerifyLimit {
        #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
        s: Vec<f64>,
        #[command(flatten)]
        input: Input,
    },
    /// Surface with prescribed layer blocks (an ideal entry) and levels.
    Realize {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        roots: Vec<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Seeded randomized self-test of parsing and initial forms.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

enum Failure {
    Input(Error),
    Convergence(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::LiftStalled(_) | Error::DegreeCap(_) => Failure::Convergence(e),
            _ => Failure::Input(e),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Input(Error::Invalid(msg.into()))
}

/// Output plus whether the outcome is tagged (exit 3).
type Outcome = Result<(Value, bool), Failure>;

fn error_json(e: &Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    let mut obj = json!({"kind": kind, "message": e.to_string()});
    if let Error::Parse { line, column, .. } = e {
        obj["line"] = json!(line);
        obj["column"] = json!(column);
    }
    json!({ "error": obj })
}

fn load(input: &Input) -> Result<Session, Failure> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| invalid(format!("cannot read standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.file)
            .map_err(|e| invalid(format!("cannot read {}: {e}", input.file.display())))?
    };
    Ok(parse_session(&text)?)
}

fn pick<'a>(s: &'a Session, input: &Input, kinds: &[&str]) -> Result<&'a Entry, Failure> {
    let e = match &input.name {
        Some(n) => s.get(n).ok_or_else(|| invalid(format!("no entry named '{n}'")))?,
        None => s
            .entries
            .iter()
            .find(|e| kinds.contains(&e.item.kind()))
            .ok_or_else(|| invalid(format!("no {} entry in the input", kinds.join(" or "))))?,
    };
    if !kinds.contains(&e.item.kind()) {
        return Err(invalid(format!("'{}' is a {}, expected {}", e.name, e.item.kind(), kinds.join(" or "))));
    }
    Ok(e)
}

fn as_ideal(e: &Entry) -> Result<ValuedIdeal, Failure> {
    let gens = match &e.item {
        Item::Poly(p) => vec![p.clone()],
        Item::Ideal(g) => g.clone(),
        Item::Mat(_) => return Err(invalid("expected a polynomial or ideal")),
    };
    Ok(ValuedIdeal::new(gens)?)
}

fn constant(p: &ValuedPoly) -> Option<HahnScalar> {
    if p.is_constant() {
        Some(p.coeff(&Monomial::one(p.nvars())).cloned().unwrap_or_else(|| HahnScalar::from_int(0)))
    } else {
        None
    }
}

fn alpha_arg(s: &str) -> Result<Exponent, Failure> {
    Ok(parse_rational(s)?)
}

fn scalar_json(a: &HahnScalar) -> Value {
    match a.initial_form() {
        Ok(g) => json!({
            "kind": "scalar",
            "value": a.to_string(),
            "valuation": json::rational(&g.degree),
            "initial_form": {"degree": json::rational(&g.degree), "coeff": json::coeff(&g.coeff)},
        }),
        Err(_) => json!({"kind": "scalar", "value": "0", "valuation": fmt_valuation(&None), "initial_form": null}),
    }
}

fn cmd_val(s: &Session, input: &Input) -> Outcome {
    let entries: Vec<&Entry> = match &input.name {
        Some(_) => vec![pick(s, input, &["poly", "ideal", "mat"])?],
        None => s.entries.iter().collect(),
    };
    let mut out = Vec::new();
    for e in entries {
        let mut v = match &e.item {
            Item::Poly(p) => match constant(p) {
                Some(a) => scalar_json(&a),
                None => {
                    let trop = tropical_poly(p)?;
                    json!({
                        "kind": "poly",
                        "tropical": json::tropical_poly(&trop),
                        "roots": tropical_roots(p)?.iter().map(json::rational).collect::<Vec<_>>(),
                        "tilde": tilde_reduce(p)?.display_with(&s.vars).to_string(),
                    })
                }
            },
            Item::Ideal(g) => {
                let z: Option<Vec<HahnScalar>> = g.iter().map(constant).collect();
                let z = z.ok_or_else(|| invalid(format!("'{}' is not a vector of scalars", e.name)))?;
                let mut v = json::phase_point(&vector_initial_form(&z)?);
                v["kind"] = json!("vector");
                v
            }
            Item::Mat(m) => {
                let mut v = json::exact_trop(&valuative_trop_exact(m)?);
                v["kind"] = json!("matrix");
                v["sl2"] = json!(m.is_sl2());
                v
            }
        };
        v["name"] = json!(e.name);
        out.push(v);
    }
    Ok((json!({ "entries": out }), false))
}

fn cmd_init(s: &Session, input: &Input, alpha: &str) -> Outcome {
    let alpha = alpha_arg(alpha)?;
    let e = pick(s, input, &["poly", "ideal"])?;
    let upper = json::upper_names(&s.vars);
    match &e.item {
        Item::Poly(p) => {
            let (v, rep) = initial_poly(p, &alpha)?;
            Ok((json!({"value": json::rational(&v), "poly": json::complex_poly(&rep, &upper)}), false))
        }
        _ => {
            let i = initial_ideal(&as_ideal(e)?, &alpha)?;
            Ok((
                json!({
                    "alpha": json::rational(&alpha),
                    "ideal": json::ideal(&i, &upper),
                    "homogeneous": is_homogeneous(&i),
                }),
                false,
            ))
        }
    }
}

fn cmd_levels(s: &Session, input: &Input) -> Outcome {
    let e = pick(s, input, &["ideal", "poly"])?;
    let r = critical_levels(&as_ideal(e)?)?;
    Ok((json::critical_levels(&r, &json::upper_names(&s.vars)), false))
}

fn cmd_fiber(s: &Session, input: &Input, alpha: &str) -> Outcome {
    let alpha = alpha_arg(alpha)?;
    let e = pick(s, input, &["ideal", "poly"])?;
    let r = fiber_report(&as_ideal(e)?, &alpha)?;
    Ok((json::fiber(&r, &json::upper_names(&s.vars)), false))
}

fn cmd_lift(s: &Session, input: &Input, alpha: &str, theta: &str, p: u32) -> Outcome {
    let alpha = alpha_arg(alpha)?;
    let theta = parse_coeff(theta)?;
    let e = pick(s, input, &["poly"])?;
    let Item::Poly(f) = &e.item else { unreachable!() };
    let l = lift_hypersurface_root(f, &alpha, &theta, p)?;
    Ok((
        json!({
            "value": json::rational(&l.value),
            "root": l.root.to_string(),
            "residuals": l.residuals.iter().map(json::valuation).collect::<Vec<_>>(),
            "initial_form": json::phase_point(&vector_initial_form(std::slice::from_ref(&l.root))?),
        }),
        false,
    ))
}

fn mat(e: &Entry) -> &HahnMat2 {
    match &e.item {
        Item::Mat(m) => m,
        _ => unreachable!("picked a matrix"),
    }
}

fn cmd_sl2_limit(s: &Session, input: &Input) -> Outcome {
    let m = mat(pick(s, input, &["mat"])?);
    let exact = valuative_trop_exact(m)?;
    let p = valuative_trop_sl2(m)?;
    Ok((
        json!({
            "trop": json::exact_trop(&exact),
            "branch": p.branch(),
            "limit": json::cmat(&psi_limit(&p)?),
        }),
        false,
    ))
}

fn cmd_sl2_invert(s: &Session, input: &Input) -> Outcome {
    let m = mat(pick(s, input, &["mat"])?);
    let mut z = [num_complex::Complex64::new(0.0, 0.0); 4];
    for (k, a) in m.entries.iter().enumerate() {
        if !a.is_polynomial() || a.num().terms().iter().any(|(e, _)| !num_traits::Zero::is_zero(e)) {
            return Err(invalid("sl2-invert needs complex constant entries"));
        }
        z[k] = a.evaluate_numeric(0.0)?;
    }
    let c = CMat2::new(z[0], z[1], z[2], z[3]);
    let p = psi_inverse(&c)?;
    Ok((
        json!({
            "point": json::sl2_point(&p),
            "roundtrip_error": psi_limit(&p)?.dist(&c),
        }),
        false,
    ))
}

fn cmd_layers(s: &Session, input: &Input, svg_path: Option<&PathBuf>) -> Outcome {
    let e = pick(s, input, &["poly"])?;
    let Item::Poly(f) = &e.item else { unreachable!() };
    let reduced = det_free_reduce(f)?;
    let l = layer_decomposition(&reduced)?;
    let n = &s.vars;
    let mut v = json::layers(&l, &json::upper_names(n));
    v["det_free"] = json!(reduced.display_with(n).to_string());
    v["hat"] = json!(hat_simplify(&reduced)?.display_with(n).to_string());
    let trop = tropical_poly(&tilde_reduce(&reduced)?)?;
    v["tropical"] = json::tropical_poly(&trop);
    if let Some(path) = svg_path {
        std::fs::write(path, svg::layers_svg(&trop, &l))
            .map_err(|err| invalid(format!("cannot write {}: {err}", path.display())))?;
    }
    Ok((v, !l.is_generic()))
}

fn cmd_verify_limit(s: &Session, input: &Input, s_values: &[f64]) -> Outcome {
    let entries: Vec<&Entry> = match &input.name {
        Some(_) => vec![pick(s, input, &["mat"])?],
        None => s.entries.iter().filter(|e| e.item.kind() == "mat").collect(),
    };
    if entries.is_empty() {
        return Err(invalid("no mat entry in the input"));
    }
    let mut samples = Vec::new();
    let mut all_ok = true;
    for e in entries {
        let r = limit_verify(mat(e), s_values)?;
        all_ok &= r.rate_ok;
        samples.push(json::limit_sample(&e.name, &r));
    }
    Ok((json!({ "samples": samples }), !all_ok))
}

fn cmd_realize(s: &Session, input: &Input, roots: &[String]) -> Outcome {
    let e = pick(s, input, &["ideal", "poly"])?;
    let blocks = match &e.item {
        Item::Ideal(g) => g.clone(),
        Item::Poly(p) => vec![p.clone()],
        Item::Mat(_) => unreachable!(),
    };
    let roots: Vec<Exponent> = roots.iter().map(|r| alpha_arg(r)).collect::<Result<_, _>>()?;
    let f = realize_from_layers(&blocks, &roots)?;
    let got = tropical_roots(&f)?;
    Ok((
        json!({
            "poly": f.display_with(&s.vars).to_string(),
            "roots": roots.iter().map(json::rational).collect::<Vec<_>>(),
            "tropical_roots": got.iter().map(json::rational).collect::<Vec<_>>(),
        }),
        got != roots,
    ))
}

fn dispatch(cmd: &Command) -> Outcome {
    if let Command::Selftest { seed, count } = cmd {
        let v = selftest::run(*seed, *count);
        let ok = v["ok"].as_bool().unwrap_or(false);
        return Ok((v, !ok));
    }
    let input = match cmd {
        Command::Val { input }
        | Command::Init { input, .. }
        | Command::Levels { input }
        | Command::Fiber { input, .. }
        | Command::Lift { input, .. }
        | Command::Sl2Limit { input }
        | Command::Sl2Invert { input }
        | Command::Layers { input, .. }
        | Command::VerifyLimit { input, .. }
        | Command::Realize { input, .. } => input,
        Command::Selftest { .. } => unreachable!(),
    };
    let s = load(input)?;
    match cmd {
        Command::Val { .. } => cmd_val(&s, input),
        Command::Init { alpha, .. } => cmd_init(&s, input, alpha),
        Command::Levels { .. } => cmd_levels(&s, input),
        Command::Fiber { alpha, .. } => cmd_fiber(&s, input, alpha),
        Command::Lift {
            alpha, theta, precision, ..
        } => cmd_lift(&s, input, alpha, theta, *precision),
        Command::Sl2Limit { .. } => cmd_sl2_limit(&s, input),
        Command::Sl2Invert { .. } => cmd_sl2_invert(&s, input),
        Command::Layers { svg, .. } => cmd_layers(&s, input, svg.as_ref()),
        Command::VerifyLimit { s: values, .. } => cmd_verify_limit(&s, input, values),
        Command::Realize { roots, .. } => cmd_realize(&s, input, roots),
        Command::Selftest { .. } => unreachable!(),
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli.command) {
        Ok((v, tagged)) => {
            emit(&serde_json::to_string_pretty(&v).expect("json"));
            ExitCode::from(if tagged { 3 } else { 0 })
        }
        Err(Failure::Input(e)) => {
            emit(&error_json(&e).to_string());
            ExitCode::from(2)
        }
        Err(Failure::Convergence(e)) => {
            emit(&error_json(&e).to_string());
            ExitCode::from(3)
        }
    }
}
