//! Command-line surface. JSON goes to stdout (or `--out`), diagnostics to
//! stderr. Exit codes: 0 ok, 2 parse or parameter error, 3 verification
//! failure, 4 unsupported size.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::certify::verify_decomposition;
use crate::concanon::{concanonical_form_seeded, consimilar_to_real};
use crate::conisum::{
    coninv_sum_with, thm1b_decompose, DecompKind, Decomposition, SumOptions,
};
use crate::error::Error;
use crate::exactcanon::{frobenius_form, poly_to_json, poly_to_string, thm1a_decompose};
use crate::gen;
use crate::matcore::json::{cmat_to_json, matrix_from_value, matrix_to_json, qmat_to_json};
use crate::matcore::rational::rationalize_real;
use crate::matcore::scalar::parse_q;
use crate::matcore::{CMat, Mat, Matrix, Tolerance, C64, Q};
use crate::skewsum::skew_sum_seeded;

pub const DEFAULT_SEED: u64 = 0xC0571F;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_SIZE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "coninv", version, about = "Coninvolutory and skew-coninvolutory decompositions")]
pub struct Cli {
    /// Seed for every randomized stage (decimal or 0x-prefixed hex).
    #[arg(long, global = true, env = "CONINV_SEED", value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a matrix and certify the result.
    Decompose {
        #[arg(long, value_enum)]
        kind: DecomposeKind,
        /// Matrix JSON: a path, inline JSON, or `-` for stdin (the default).
        input: Option<String>,
        #[arg(long)]
        tol_abs: Option<f64>,
        #[arg(long)]
        tol_rel: Option<f64>,
        /// Pad a coninvolutory sum to exactly this many summands.
        #[arg(long)]
        pad_to: Option<usize>,
    },
    /// Canonical form under similarity (exact) or consimilarity.
    Canonical {
        #[arg(long, value_enum)]
        kind: CanonicalKind,
        input: Option<String>,
    },
    /// Check a decomposition against its matrix.
    Verify {
        /// The matrix.
        input: String,
        /// The decomposition JSON (a bare decomposition or `decompose` output).
        decomposition: String,
        #[arg(long)]
        tol_abs: Option<f64>,
        #[arg(long)]
        tol_rel: Option<f64>,
    },
    /// Generate a test matrix, e.g. `gen jordan n=2 λ=1` or
    /// `gen direct-sum jordan n=2 λ=3 + hblock m=1 μ=-2`.
    Gen {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeKind {
    Coninv,
    Skew,
    Thm1a,
    Thm1b,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalKind {
    Frobenius,
    Concanonical,
    Real,
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("bad seed {s:?}: {e}"))
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// JSON still emitted on failure (a failing certificate).
    pub output: Option<Value>,
}

impl Failure {
    fn parse(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: msg.into(),
            output: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidParameters(_) | Error::ExactRequired => EXIT_PARSE,
            Error::UnsupportedSize { .. } | Error::DeskScale { .. } => EXIT_SIZE,
            _ => EXIT_VERIFY,
        };
        Failure {
            code,
            message: e.to_string(),
            output: None,
        }
    }
}

type CliResult = std::result::Result<Value, Failure>;

fn read_source(src: Option<&str>) -> std::result::Result<String, Failure> {
    match src {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::parse(format!("reading stdin: {e}")))?;
            Ok(s)
        }
        Some(s) if s.trim_start().starts_with('{') => Ok(s.to_string()),
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("reading {path}: {e}"))),
    }
}

fn read_json(src: Option<&str>) -> std::result::Result<Value, Failure> {
    let text = read_source(src)?;
    serde_json::from_str(&text).map_err(|e| Failure::parse(format!("invalid JSON: {e}")))
}

fn read_matrix(src: Option<&str>) -> std::result::Result<Matrix, Failure> {
    Ok(matrix_from_value(&read_json(src)?)?)
}

fn tolerance(abs: Option<f64>, rel: Option<f64>) -> std::result::Result<Tolerance, Failure> {
    let d = Tolerance::certify_default();
    let t = Tolerance::new(abs.unwrap_or(d.abs), rel.unwrap_or(d.rel));
    t.validate()?;
    Ok(t)
}

/// Exact view of the input: exact matrices pass through, real floating
/// matrices are rationalized, complex ones are rejected.
fn exact_input(a: &Matrix) -> std::result::Result<Mat<Q>, Failure> {
    match a {
        Matrix::Exact(m) => Ok(m.clone()),
        Matrix::Floating(m) if m.im().max_abs() == 0.0 => Ok(rationalize_real(&m.re())),
        Matrix::Floating(_) => Err(Failure::parse(
            "this kind needs a real (preferably exact) matrix",
        )),
    }
}

fn certified(a: &Matrix, d: &Decomposition, tol: Tolerance, extra: Option<Value>) -> CliResult {
    let cert = verify_decomposition(a, d, tol);
    let mut out = json!({
        "decomposition": d.to_json(),
        "certificate": cert.to_json(),
    });
    if let Some(x) = extra {
        out["witness"] = x;
    }
    if cert.pass {
        Ok(out)
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: format!("certificate failed: {}", cert.failures.join("; ")),
            output: Some(out),
        })
    }
}

fn cmd_decompose(
    kind: DecomposeKind,
    input: Option<&str>,
    seed: u64,
    tol: Tolerance,
    pad_to: Option<usize>,
) -> CliResult {
    let a = read_matrix(input)?;
    if pad_to.is_some() && kind != DecomposeKind::Coninv {
        return Err(Failure::parse("--pad-to applies to --kind coninv only"));
    }
    match kind {
        DecomposeKind::Coninv => {
            let d = coninv_sum_with(&a, SumOptions { pad_to, seed })?;
            certified(&a, &d, tol, None)
        }
        DecomposeKind::Skew => {
            let d = skew_sum_seeded(&a, seed)?;
            certified(&a, &d, tol, None)
        }
        DecomposeKind::Thm1a => {
            let q = exact_input(&a)?;
            let t = thm1a_decompose(&q)?;
            let mut d = Decomposition::new(DecompKind::Thm1a);
            d.summands = vec![Matrix::Exact(t.v.clone()), Matrix::Exact(t.d.clone())];
            let witness = json!({
                "R": qmat_to_json(&t.r),
                "eigenvalues": t.eig.iter().map(crate::matcore::scalar::q_to_string).collect::<Vec<_>>(),
                "diagonalization_exact": t.diagonalization_holds(),
            });
            certified(&Matrix::Exact(q), &d, tol, Some(witness))
        }
        DecomposeKind::Thm1b => {
            let t = thm1b_decompose(&a)?;
            let witness = json!({
                "T": cmat_to_json(&t.t),
                "diagonal": t.diag,
            });
            certified(&a, &t.to_decomposition(), tol, Some(witness))
        }
    }
}

fn cmd_canonical(kind: CanonicalKind, input: Option<&str>, seed: u64) -> CliResult {
    let a = read_matrix(input)?;
    match kind {
        CanonicalKind::Frobenius => {
            let q = exact_input(&a)?;
            let f = frobenius_form(&q)?;
            let back = &(&f.s_inv * &f.canonical()) * &f.s;
            Ok(json!({
                "kind": "frobenius",
                "blocks": f.blocks.iter().map(poly_to_json).collect::<Vec<_>>(),
                "polynomials": f.blocks.iter().map(poly_to_string).collect::<Vec<_>>(),
                "S": qmat_to_json(&f.s),
                "exact": back == q,
            }))
        }
        CanonicalKind::Concanonical => {
            let f = concanonical_form_seeded(&a.to_c64(), seed)?;
            let mut out = f.to_json();
            out["kind"] = json!("concanonical");
            out["B"] = cmat_to_json(&f.canonical());
            Ok(out)
        }
        CanonicalKind::Real => {
            let c = a.to_c64();
            let r = consimilar_to_real(&c)?;
            let bc = CMat::from_real(&r.b);
            let res = (&(&c * &r.s) - &(&r.s.conj() * &bc)).norm_fro();
            Ok(json!({
                "kind": "real",
                "B": cmat_to_json(&bc),
                "S": cmat_to_json(&r.s),
                "max_imag": format!("{:e}", r.max_imag),
                "residual": format!("{res:e}"),
            }))
        }
    }
}

fn cmd_verify(
    input: &str,
    decomposition: &str,
    tol: Tolerance,
) -> CliResult {
    let a = read_matrix(Some(input))?;
    let v = read_json(Some(decomposition))?;
    let dv = if v.get("decomposition").is_some() {
        &v["decomposition"]
    } else {
        &v
    };
    let d = Decomposition::from_json(dv)?;
    let cert = verify_decomposition(&a, &d, tol);
    let out = json!({ "certificate": cert.to_json() });
    if cert.pass {
        Ok(out)
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: format!("certificate failed: {}", cert.failures.join("; ")),
            output: Some(out),
        })
    }
}

/// `a`, `bi`, `a+bi`, `a-bi`, `i`, or `re,im`; `−` is read as `-`.
pub fn parse_complex(s: &str) -> Option<C64> {
    let s: String = s.replace('−', "-").chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((re, im)) = s.split_once(',') {
        return Some(C64::new(re.parse().ok()?, im.parse().ok()?));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Some(C64::new(parse_real(&s)?, 0.0));
    };
    // split at the last sign that is not leading and not part of an exponent
    let bytes = body.as_bytes();
    let mut cut = None;
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            cut = Some(k);
            break;
        }
    }
    let (re, im) = match cut {
        Some(k) => (parse_real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => parse_real(x)?,
    };
    Some(C64::new(re, im))
}

fn parse_real(s: &str) -> Option<f64> {
    let s = s.replace('−', "-");
    s.parse::<f64>()
        .ok()
        .or_else(|| parse_q(&s).map(|q| crate::matcore::scalar::q_to_f64(&q)))
}

fn parse_list<T>(s: &str, f: impl Fn(&str) -> Option<T>) -> Option<Vec<T>> {
    s.split(',').map(|x| f(x.trim())).collect()
}

fn key_values(args: &[String]) -> std::result::Result<Vec<(String, String)>, Failure> {
    args.iter()
        .map(|a| {
            a.split_once('=')
                .map(|(k, v)| (canonical_key(k), v.to_string()))
                .ok_or_else(|| Failure::parse(format!("expected key=value, got {a:?}")))
        })
        .collect()
}

fn canonical_key(k: &str) -> String {
    match k {
        "λ" | "l" => "lambda".into(),
        "μ" => "mu".into(),
        "ε" | "e" => "eps".into(),
        other => other.to_string(),
    }
}

fn get<'a>(kv: &'a [(String, String)], key: &str) -> Option<&'a str> {
    kv.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn need_usize(kv: &[(String, String)], key: &str) -> std::result::Result<usize, Failure> {
    get(kv, key)
        .ok_or_else(|| Failure::parse(format!("missing {key}=")))?
        .parse()
        .map_err(|e| Failure::parse(format!("bad {key}: {e}")))
}

fn check_keys(kv: &[(String, String)], allowed: &[&str]) -> std::result::Result<(), Failure> {
    match kv.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        Some((k, _)) => Err(Failure::parse(format!(
            "unknown key {k:?}; expected one of {allowed:?}"
        ))),
        None => Ok(()),
    }
}

/// One generator spec such as `["jordan", "n=2", "λ=1"]`.
fn gen_one(spec: &[String], default_seed: u64) -> std::result::Result<Matrix, Failure> {
    let (head, rest) = spec
        .split_first()
        .ok_or_else(|| Failure::parse("empty generator spec"))?;
    if head.trim_start().starts_with('{') || std::path::Path::new(head).is_file() {
        if !rest.is_empty() {
            return Err(Failure::parse("a matrix operand takes no parameters"));
        }
        return read_matrix(Some(head));
    }
    let kv = key_values(rest)?;
    match head.as_str() {
        "random" => {
            check_keys(&kv, &["n", "scale", "seed", "field"])?;
            let n = need_usize(&kv, "n")?;
            if n == 0 {
                return Err(Failure::parse("n must be at least 1"));
            }
            let scale = match get(&kv, "scale") {
                Some(s) => parse_real(s).ok_or_else(|| Failure::parse("bad scale"))?,
                None => 1.0,
            };
            let seed = match get(&kv, "seed") {
                Some(s) => parse_seed(s).map_err(Failure::parse)?,
                None => default_seed,
            };
            let mut rng = gen::rng(seed);
            match get(&kv, "field").unwrap_or("complex") {
                "complex" => Ok(Matrix::Floating(gen::random_complex(n, scale, &mut rng))),
                "real" => Ok(Matrix::Floating(CMat::from_real(&gen::random_real(
                    n, scale, &mut rng,
                )))),
                "rational" => Ok(Matrix::Exact(gen::random_rational(n, &mut rng))),
                f => Err(Failure::parse(format!(
                    "field must be complex, real or rational, got {f:?}"
                ))),
            }
        }
        "jordan" => {
            check_keys(&kv, &["n", "lambda", "eps"])?;
            let lambdas: Vec<String> = get(&kv, "lambda")
                .ok_or_else(|| Failure::parse("missing λ="))?
                .replace('−', "-")
                .split(',')
                .map(|s| s.trim().to_string())
                .collect();
            let (diag, eps): (Vec<String>, Vec<u8>) = match get(&kv, "eps") {
                Some(e) => {
                    let eps = parse_list(e, |x| x.parse::<u8>().ok())
                        .ok_or_else(|| Failure::parse("ε must be a list of 0/1"))?;
                    (lambdas, eps)
                }
                None => {
                    // a single block J_n(λ)
                    if lambdas.len() != 1 {
                        return Err(Failure::parse("a λ list needs an ε list"));
                    }
                    let n = need_usize(&kv, "n")?;
                    (vec![lambdas[0].clone(); n], vec![1; n.saturating_sub(1)])
                }
            };
            if let Some(n) = get(&kv, "n") {
                if n.parse::<usize>().ok() != Some(diag.len()) {
                    return Err(Failure::parse("n disagrees with the λ list"));
                }
            }
            if diag.is_empty() {
                return Err(Failure::parse("n must be at least 1"));
            }
            let exact: Option<Vec<Q>> = diag.iter().map(|s| parse_q(s)).collect();
            let floats: Vec<f64> = diag
                .iter()
                .map(|s| parse_real(s).ok_or_else(|| Failure::parse(format!("bad λ {s:?}"))))
                .collect::<std::result::Result<_, _>>()?;
            let m = gen::jordan_chain(&floats, &eps)?;
            match exact {
                Some(q) => {
                    let mut e = Mat::diag(&q);
                    for (i, &c) in eps.iter().enumerate() {
                        if c == 1 {
                            e[(i, i + 1)] = Q::from_integer(1.into());
                        }
                    }
                    Ok(Matrix::Exact(e))
                }
                None => Ok(Matrix::Floating(CMat::from_real(&m))),
            }
        }
        "hblock" => {
            check_keys(&kv, &["m", "mu"])?;
            let m = need_usize(&kv, "m")?;
            let mu = get(&kv, "mu")
                .and_then(parse_complex)
                .ok_or_else(|| Failure::parse("missing or bad μ="))?;
            Ok(Matrix::Floating(gen::hblock(m, mu)?))
        }
        other => Err(Failure::parse(format!(
            "unknown generator {other:?}; expected random, jordan, hblock or direct-sum"
        ))),
    }
}

fn direct_sum(parts: &[Matrix]) -> Matrix {
    if parts.iter().all(|p| matches!(p, Matrix::Exact(_))) {
        let qs: Vec<Mat<Q>> = parts
            .iter()
            .map(|p| match p {
                Matrix::Exact(m) => m.clone(),
                Matrix::Floating(_) => unreachable!(),
            })
            .collect();
        Matrix::Exact(Mat::direct_sum(&qs))
    } else {
        Matrix::Floating(CMat::direct_sum(
            &parts.iter().map(|p| p.to_c64()).collect::<Vec<_>>(),
        ))
    }
}

fn cmd_gen(spec: &[String], seed: u64) -> CliResult {
    let m = if spec[0] == "direct-sum" {
        let parts: Vec<Matrix> = spec[1..]
            .split(|s| s == "+")
            .enumerate()
            .map(|(i, p)| gen_one(p, seed.wrapping_add(i as u64)))
            .collect::<std::result::Result<_, _>>()?;
        direct_sum(&parts)
    } else {
        gen_one(spec, seed)?
    };
    Ok(matrix_to_json(&m))
}

fn emit(v: &Value, out: Option<&PathBuf>) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| Failure {
            code: 1,
            message: format!("writing {}: {e}", p.display()),
            output: None,
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Runs a parsed command line and returns the exit code.
pub fn execute(cli: Cli) -> i32 {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let result = match &cli.command {
        Command::Decompose {
            kind,
            input,
            tol_abs,
            tol_rel,
            pad_to,
        } => tolerance(*tol_abs, *tol_rel)
            .and_then(|t| cmd_decompose(*kind, input.as_deref(), seed, t, *pad_to)),
        Command::Canonical { kind, input } => cmd_canonical(*kind, input.as_deref(), seed),
        Command::Verify {
            input,
            decomposition,
            tol_abs,
            tol_rel,
        } => tolerance(*tol_abs, *tol_rel).and_then(|t| cmd_verify(input, decomposition, t)),
        Command::Gen { spec } => cmd_gen(spec, seed),
    };
    match result {
        Ok(v) => match emit(&v, cli.out.as_ref()) {
            Ok(()) => EXIT_OK,
            Err(f) => {
                eprintln!("coninv: {}", f.message);
                f.code
            }
        },
        Err(f) => {
            if let Some(v) = &f.output {
                let _ = emit(v, cli.out.as_ref());
            }
            eprintln!("coninv: {}", f.message);
            f.code
        }
    }
}

pub fn run() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
