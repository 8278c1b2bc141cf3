//! `imprim`: run constructions and verifications from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a
//! computation raises a non-degenerate error, 2 for invalid configuration or
//! degenerate parameters.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use config::{Echo, Flags, Format, RunConfig};

#[derive(Parser)]
#[command(name = "imprim", version, about = "Exact checks for G(r,p,n), its Hecke and Cherednik algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Clone, Copy, Debug)]
enum Command {
    /// Orders, generators, hyperplane orbits and the τ-fixed group basis.
    Group,
    /// Multipartitions with dimensions and the sum-of-squares identity.
    Reps,
    /// Defining relations in every seminormal representation.
    VerifyRelations,
    /// τ ∘ shift = 1 on every simple module.
    TauShift,
    /// Clifford decomposition of every restriction to the subalgebra.
    Decompose,
    /// τ-fixed subspace of the regular image against the subalgebra span.
    FixedSubalgebra,
    /// Simple modules of the smash product with the cyclic group.
    SmashCensus,
    /// Dunkl operator relations for the configured k-table.
    DunklCheck,
    /// τ-invariance of the Cherednik relations and the PBW filter.
    Thm34,
    /// Graded restriction of C[V] ⊗ V(λ) at the group specialization.
    GradedRes,
    /// Fake degrees and their behaviour under the twist.
    FakeDegrees,
    /// Restriction table from B_n to D_n for n <= 4.
    BnDnDemo,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Group => "group",
            Command::Reps => "reps",
            Command::VerifyRelations => "verify-relations",
            Command::TauShift => "tau-shift",
            Command::Decompose => "decompose",
            Command::FixedSubalgebra => "fixed-subalgebra",
            Command::SmashCensus => "smash-census",
            Command::DunklCheck => "dunkl-check",
            Command::Thm34 => "thm34",
            Command::GradedRes => "graded-res",
            Command::FakeDegrees => "fake-degrees",
            Command::BnDnDemo => "bn-dn-demo",
        }
    }

    fn run(self, cfg: &RunConfig) -> imprim::Result<commands::Outcome> {
        match self {
            Command::Group => commands::group(cfg),
            Command::Reps => commands::reps(cfg),
            Command::VerifyRelations => commands::verify_relations_cmd(cfg),
            Command::TauShift => commands::tau_shift(cfg),
            Command::Decompose => commands::decompose(cfg),
            Command::FixedSubalgebra => commands::fixed_subalgebra(cfg),
            Command::SmashCensus => commands::smash_census(cfg),
            Command::DunklCheck => commands::dunkl_check(cfg),
            Command::Thm34 => commands::thm34(cfg),
            Command::GradedRes => commands::graded_res(cfg),
            Command::FakeDegrees => commands::fake_degrees(cfg),
            Command::BnDnDemo => commands::bn_dn_demo(cfg),
        }
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

#[derive(Serialize)]
struct Report {
    schema: u32,
    command: &'static str,
    params: Option<Echo>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
}

impl Report {
    fn exit_code(&self) -> u8 {
        match &self.error {
            None if self.passed => 0,
            None => 1,
            Some(e) if e.kind == "Config" || degenerate_kind(&e.kind) => 2,
            Some(_) => 1,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, if self.passed { "PASS" } else { "FAIL" });
        if let Some(e) = &self.error {
            out += &format!("error [{}]: {}\n", e.kind, e.message);
        }
        if let Some(result) = &self.result {
            if self.command == "bn-dn-demo" {
                out += &commands::bn_dn_text(result);
            } else {
                out += &serde_json::to_string_pretty(result).expect("report serializes");
                out.push('\n');
            }
        }
        out
    }
}

fn degenerate_kind(kind: &str) -> bool {
    matches!(kind, "BadParams" | "SeparationFailure" | "CapExceeded" | "Parse" | "NonInvertible")
}

fn error_body(e: &imprim::Error) -> ErrorBody {
    debug_assert_eq!(degenerate_kind(e.kind()), e.is_degenerate_input());
    ErrorBody { kind: e.kind().into(), message: e.to_string() }
}

fn failure(command: &'static str, cfg: &RunConfig, e: &imprim::Error) -> Report {
    Report { schema: 1, command, params: Some(cfg.echo()), passed: false, result: None, error: Some(error_body(e)) }
}

fn run(cli: &Cli) -> (Report, Format) {
    let command = cli.command.name();
    let mut cfg = match RunConfig::resolve(&cli.flags) {
        Ok(cfg) => cfg,
        Err(e) => {
            let body = match e.downcast_ref::<imprim::Error>() {
                Some(inner) => error_body(inner),
                None => ErrorBody { kind: "Config".into(), message: format!("{e:#}") },
            };
            let report = Report { schema: 1, command, params: None, passed: false, result: None, error: Some(body) };
            return (report, cli.flags.format.unwrap_or_default());
        }
    };
    if let Command::BnDnDemo = cli.command {
        match imprim::refgroup::GroupParams::new(2, 2, cfg.gp.n) {
            Ok(gp) => cfg.gp = gp,
            Err(e) => return (failure(command, &cfg, &e), cfg.format),
        }
    }
    if let Err(e) = cfg.validate() {
        return (failure(command, &cfg, &e), cfg.format);
    }
    let (passed, result, error) = match cli.command.run(&cfg) {
        Ok((passed, result)) => (passed, Some(result), None),
        Err(e) => (false, None, Some(error_body(&e))),
    };
    (Report { schema: 1, command, params: Some(cfg.echo()), passed, result, error }, cfg.format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, format) = run(&cli);
    let text = report.render(format);
    let written = match &cli.flags.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("imprim: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.exit_code() != 0 {
        if let Some(e) = &report.error {
            eprintln!("imprim {}: {}: {}", report.command, e.kind, e.message);
        }
    }
    ExitCode::from(report.exit_code())
}
