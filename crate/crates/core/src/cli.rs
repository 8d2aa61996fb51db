//! Command-line front end. [`run`] takes the argument vector and output
//! streams so it can be driven from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Result;
use crate::functor::{classification_manifest, classify_simples, f_of_simple, f_of_verma, segments_from_pair};
use crate::hecke::{central_character, composition_factors, induce_standard, FinModule, SegmentSequence};
use crate::kl::{kl_polynomial, KlEngine};
use crate::linalg::Matrix;
use crate::rational::fmt_q;
use crate::root_weyl::{dot_action, Perm, Weight};
use crate::verify::{run_suite, Suite};

/// Usage errors, including unknown subcommands.
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "dahecke", version, about = "Degenerate affine Hecke algebra modules and the functor from category O")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kazhdan-Lusztig polynomial P_{x,y}.
    Kl {
        x: String,
        y: String,
        #[arg(long)]
        n: usize,
    },
    /// Standard module of a segment sequence such as "[0,1];[-1,-1]".
    Standard {
        #[arg(long)]
        segments: String,
    },
    /// Images of Verma and simple modules.
    Functor {
        #[command(subcommand)]
        which: FunctorCommand,
    },
    /// Simple modules with the central character of lambda + rho.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Composition factors of a module read from JSON.
    Decompose {
        #[arg(long)]
        module: PathBuf,
    },
    /// Acceptance checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand, Debug)]
enum FunctorCommand {
    Verma {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        ell: usize,
    },
    Simple {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        w: String,
    },
}

fn matrix_text(m: &Matrix) -> String {
    (0..m.rows())
        .map(|r| format!("  [{}]", m.row(r).iter().map(fmt_q).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn module_text(m: &FinModule) -> String {
    let mut lines = vec![format!("dim {}", m.dim())];
    if m.is_zero() {
        return lines.remove(0);
    }
    for (i, s) in m.s_mats().iter().enumerate() {
        lines.push(format!("s{}:", i + 1));
        lines.push(matrix_text(s));
    }
    for (i, e) in m.eps_mats().iter().enumerate() {
        lines.push(format!("eps{}:", i + 1));
        lines.push(matrix_text(e));
    }
    if let Some(v) = m.cyclic() {
        lines.push(format!("cyclic: [{}]", v.iter().map(fmt_q).collect::<Vec<_>>().join(" ")));
    }
    lines.join("\n")
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }

    fn module(header: Vec<String>, m: &FinModule) -> Self {
        let mut text = header;
        text.push(module_text(m));
        Output::ok(text.join("\n"), m.to_json())
    }
}

fn execute(command: Command) -> Result<Output> {
    match command {
        Command::Kl { x, y, n } => {
            let (x, y) = (Perm::parse(&x, Some(n))?, Perm::parse(&y, Some(n))?);
            let p = kl_polynomial(&x, &y)?;
            let json = json!({ "x": x.to_string(), "y": y.to_string(), "polynomial": p.to_string(), "coefficients": p.coeffs() });
            Ok(Output::ok(p.to_string(), json))
        }
        Command::Standard { segments } => {
            let delta = SegmentSequence::parse(&segments)?;
            Ok(Output::module(vec![format!("segments {delta}")], &induce_standard(&delta)?))
        }
        Command::Functor { which: FunctorCommand::Verma { lambda, mu, ell } } => {
            let (lambda, mu) = (Weight::parse(&lambda)?, Weight::parse(&mu)?);
            let header = match segments_from_pair(&lambda, &mu, ell)? {
                Some(delta) => format!("segments {delta}"),
                None => "lambda - mu is not a weight of the tensor power".to_string(),
            };
            Ok(Output::module(vec![header], &f_of_verma(&lambda, &mu, ell)?))
        }
        Command::Functor { which: FunctorCommand::Simple { lambda, w } } => {
            let lambda = Weight::parse(&lambda)?;
            let w = Perm::parse(&w, Some(lambda.rank()))?;
            let mu = dot_action(&w, &lambda)?;
            Ok(Output::module(vec![format!("w o lambda = {mu}")], &f_of_simple(&lambda, &w)?))
        }
        Command::Classify { lambda } => {
            let lambda = Weight::parse(&lambda)?;
            let classes = classify_simples(&lambda)?;
            let manifest = classification_manifest(&lambda, &classes)?;
            let mut lines = vec![format!("{} simple classes", classes.len())];
            for c in &classes {
                let chi = central_character(&c.module)?;
                lines.push(format!(
                    "{}  {}  dim {}  central character ({})",
                    c.w_lr.word_string(),
                    c.w_lr,
                    c.module.dim(),
                    chi.iter().map(fmt_q).collect::<Vec<_>>().join(",")
                ));
            }
            Ok(Output::ok(lines.join("\n"), manifest))
        }
        Command::Decompose { module } => {
            let raw = std::fs::read_to_string(&module)?;
            let m = FinModule::from_json(&serde_json::from_str(&raw)?)?;
            let factors = composition_factors(&m)?;
            let mut lines = vec![format!("dim {}, {} non-isomorphic factors", m.dim(), factors.len())];
            let mut entries = Vec::new();
            for (f, mult) in &factors {
                let chi = central_character(f)?;
                let chi_text: Vec<String> = chi.iter().map(fmt_q).collect();
                lines.push(format!("dim {}  multiplicity {mult}  central character ({})", f.dim(), chi_text.join(",")));
                entries.push(json!({ "dim": f.dim(), "multiplicity": mult, "central_character": chi_text, "module": f.to_json() }));
            }
            Ok(Output::ok(lines.join("\n"), json!({ "dim": m.dim(), "factors": entries })))
        }
        Command::Verify { suite } => {
            let results = run_suite(Suite::parse(&suite)?);
            let passed = results.iter().all(|r| r.passed());
            let text = results.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            let json = json!({ "suite": suite, "passed": passed, "criteria": results.iter().map(|r| r.to_json()).collect::<Vec<_>>() });
            Ok(Output { text, json, code: if passed { 0 } else { 2 } })
        }
    }
}

fn with_cache<T>(f: impl FnOnce() -> T, err: &mut dyn Write) -> T {
    let path = std::env::var_os("KL_CACHE").map(PathBuf::from);
    let engine = KlEngine::global();
    if let Some(p) = path.as_ref().filter(|p| p.exists()) {
        if let Err(e) = engine.load(p) {
            let _ = writeln!(err, "warning: ignoring KL cache {}: {e}", p.display());
        }
    }
    let before = engine.cached_len();
    let out = f();
    if let Some(p) = &path {
        if engine.cached_len() != before || !p.exists() {
            if let Err(e) = engine.save(p) {
                let _ = writeln!(err, "warning: could not write KL cache {}: {e}", p.display());
            }
        }
    }
    out
}

/// Parses `argv` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let quiet = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if quiet {
                let _ = write!(out, "{rendered}");
                return 0;
            }
            let _ = write!(err, "{rendered}");
            return EXIT_USAGE;
        }
    };
    let format = cli.format;
    match with_cache(|| execute(cli.command), err) {
        Ok(o) => {
            let body = match format {
                Format::Text => o.text,
                Format::Json => serde_json::to_string_pretty(&o.json).expect("values serialize"),
            };
            let _ = writeln!(out, "{body}");
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
