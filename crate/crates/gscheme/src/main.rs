use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gscheme::audit::{self, AuditOptions, SuiteReport};
use gscheme::catalog::Scope;
use gscheme::dsl::parse_program;
use gscheme::export::{parse_prime_def, parse_variant, Format};
use gscheme::session::{build_group, cap_from_env, describe_expr, Session};
use gscheme::{dsl, CliResult};

/// Spectra, varieties and structure sheaves of groups with a fixed coefficient group.
#[derive(Parser, Debug)]
#[command(name = "gscheme", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct GlobalFlags {
    /// Divisor notion: t1 (commuting spans) or t2 (trivially meeting spans).
    #[arg(long, global = true, value_name = "t1|t2")]
    variant: Option<String>,
    /// Prime definition: quotient or elementwise.
    #[arg(long, global = true, value_name = "quotient|elementwise")]
    prime_def: Option<String>,
    /// Word length bound for searches and probes.
    #[arg(long, global = true, value_name = "N")]
    max_len: Option<usize>,
    /// Catalog used by `check`.
    #[arg(long, global = true, value_enum)]
    catalog: Option<Scope>,
    /// Export format. Setting it on a one-shot command also exports the result.
    #[arg(long, global = true, value_name = "json|dot")]
    format: Option<String>,
    /// Write exports here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Run a program file.
    Run { file: PathBuf },
    /// Run an audit suite, or `all`.
    Check {
        suite: String,
        /// Audit this single group instead of the catalog.
        #[arg(long = "G", value_name = "EXPR")]
        group: Option<String>,
    },
    /// List the audit suites.
    Suites,
    /// Prime spectrum of a group expression (identity structure).
    Spec { group: String },
    /// Sections of the structure sheaf on every open.
    Sections { group: String },
    /// Stalk at one point of the spectrum.
    Stalk { group: String, point: usize },
    /// Algebraic set of a family of words over a coefficient group.
    Variety {
        #[arg(long = "over", value_name = "EXPR")]
        over: String,
        #[arg(long, default_value_t = 1)]
        vars: usize,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Spectrum doubled along an open set of points.
    Glue {
        group: String,
        #[arg(long, value_delimiter = ',', value_name = "P,..")]
        along: Vec<usize>,
    },
}

fn session(flags: &GlobalFlags) -> CliResult<Session> {
    let mut s = Session::new(cap_from_env()?);
    if let Some(v) = &flags.variant {
        s.defaults.variant = parse_variant(v)?;
    }
    if let Some(d) = &flags.prime_def {
        s.defaults.prime_def = parse_prime_def(d)?;
    }
    if let Some(f) = &flags.format {
        s.defaults.format = f.parse::<Format>()?;
    }
    s.defaults.max_len = flags.max_len;
    s.defaults.scope = flags.catalog.unwrap_or(Scope::Small);
    s.defaults.out = flags.out.clone();
    Ok(s)
}

fn one_shot(flags: &GlobalFlags, head: &str, body: &str, command: &str) -> CliResult<(String, i32)> {
    let mut text = String::from(head);
    text.push_str(body);
    text.push_str(command);
    text.push('\n');
    if flags.format.is_some() {
        text.push_str("export H\n");
    }
    let program = parse_program(&text)?;
    let mut s = session(flags)?;
    let res = s.run(&program);
    finish(s, res)
}

fn finish(s: Session, res: CliResult<()>) -> CliResult<(String, i32)> {
    match res {
        Ok(()) => {
            let code = if s.audit_failed() { 3 } else { 0 };
            Ok((s.output, code))
        }
        Err(e) => {
            print!("{}", s.output);
            Err(e)
        }
    }
}

fn check(flags: &GlobalFlags, suite: &str, group: Option<&str>) -> CliResult<(String, i32)> {
    let group = match group {
        Some(text) => {
            let expr = dsl::parse_group_expr(text)?;
            let h = build_group(&expr, &Default::default(), std::path::Path::new("."))?;
            Some((describe_expr(&expr), h))
        }
        None => None,
    };
    let opts = AuditOptions { scope: flags.catalog.unwrap_or(Scope::Small), group, max_len: flags.max_len, cap: cap_from_env()? };
    let reports: Vec<SuiteReport> = if suite == "all" { audit::run_all(&opts)? } else { vec![audit::run_suite(suite, &opts)?] };
    let mut out: String = reports.iter().map(SuiteReport::render).collect();
    let failed = reports.iter().filter(|r| r.failed()).count();
    if reports.len() > 1 {
        out.push_str(&format!("{} suites, {failed} with failures\n", reports.len()));
    }
    Ok((out, if failed > 0 { 3 } else { 0 }))
}

fn dispatch(cli: &Cli) -> CliResult<(String, i32)> {
    let flags = &cli.global;
    let group_line = |g: &str| format!("group H = {g}\n");
    match &cli.command {
        Cmd::Run { file } => {
            let text = std::fs::read_to_string(file)?;
            let program = parse_program(&text)?;
            let mut s = session(flags)?;
            if let Some(dir) = file.parent() {
                s.base_dir = dir.to_path_buf();
            }
            let res = s.run(&program);
            finish(s, res)
        }
        Cmd::Check { suite, group } => check(flags, suite, group.as_deref()),
        Cmd::Suites => Ok((audit::SUITES.iter().map(|s| format!("{s}\n")).collect(), 0)),
        Cmd::Spec { group } => one_shot(flags, &group_line(group), "", "spec H"),
        Cmd::Sections { group } => one_shot(flags, &group_line(group), "", "sections H"),
        Cmd::Stalk { group, point } => one_shot(flags, &group_line(group), "", &format!("stalk H {point}")),
        Cmd::Glue { group, along } => {
            let pts: Vec<String> = along.iter().map(|p| p.to_string()).collect();
            one_shot(flags, &group_line(group), "", &format!("glue H along [{}]", pts.join(", ")))
        }
        Cmd::Variety { over, vars, words } => {
            let mut body = String::new();
            for (i, w) in words.iter().enumerate() {
                body.push_str(&format!("word W{i} over (G, {vars}) = {w}\n"));
            }
            let names: Vec<String> = (0..words.len()).map(|i| format!("W{i}")).collect();
            one_shot(flags, &format!("group G = {over}\n"), &body, &format!("variety {} as H", names.join(" ")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
