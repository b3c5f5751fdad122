use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use g2real::FieldSpec;
use g2real_cli::config::default_q;
use g2real_cli::scenarios::run;
use g2real_cli::{CliError, Kind, RunReport, Scenario, ScenarioConfig};

/// Reality checks for automorphisms of octonion algebras over finite
/// fields and the rationals.
#[derive(Parser, Debug)]
#[command(name = "g2real", version)]
struct Cli {
    /// key = value scenario file; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Composition, minimal equation, conjugation, Peirce, embedding and ρ suites.
    Axioms {
        /// A prime p ≠ 2, or Q.
        #[arg(long)]
        field: Option<String>,
        /// Random samples per suite (embedding suites use at most 1000).
        #[arg(long)]
        samples: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Build and decide the non-real element of the given kind.
    Counterexample {
        kind: Kind,
        #[arg(long)]
        q: Option<u64>,
        /// Also run the full coset sweep for the unitary case.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Every sampled semisimple element must be a product of two involutions.
    Cdk {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Factor companion matrices of self-dual cubics over F_{q²}.
    Companion {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the norm quotients for F_{q³}/F_q and F_{q⁶}/F_{q²}.
    Norms {
        #[arg(long)]
        q: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Render a saved JSON report.
    Report { path: PathBuf },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum number of candidates per exhaustive search.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the run report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn base_config(path: Option<&PathBuf>, scenario: Scenario) -> Result<ScenarioConfig, CliError> {
    let Some(path) = path else {
        return Ok(ScenarioConfig::new(scenario));
    };
    let cfg = ScenarioConfig::parse(&std::fs::read_to_string(path)?)?;
    if cfg.scenario != scenario {
        return Err(CliError::Usage(format!(
            "config is for scenario {}, not {}",
            cfg.scenario.name(),
            scenario.name()
        )));
    }
    Ok(cfg)
}

fn apply_common(cfg: &mut ScenarioConfig, c: &Common) {
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(b) = c.budget {
        cfg.budget = b;
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let config = cli.config.as_ref();
    let (cfg, json) = match cli.command {
        Some(Command::Report { path }) => {
            let report = RunReport::from_json(&std::fs::read_to_string(&path)?)?;
            print!("{}", report.render());
            return Ok(0);
        }
        None => {
            let path = config.ok_or_else(|| CliError::Usage("give a subcommand or --config".into()))?;
            (ScenarioConfig::parse(&std::fs::read_to_string(path)?)?, None)
        }
        Some(Command::Axioms { field, samples, common }) => {
            let mut cfg = base_config(config, Scenario::Axioms)?;
            if let Some(f) = field {
                cfg.field = f.parse::<FieldSpec>().map_err(|e| CliError::Usage(e.to_string()))?;
            }
            if let Some(n) = samples {
                cfg.samples = n;
            }
            apply_common(&mut cfg, &common);
            (cfg, common.json)
        }
        Some(Command::Counterexample { kind, q, exhaustive, common }) => {
            let mut cfg = base_config(config, Scenario::Counterexample)?;
            if cfg.kind != Some(kind) {
                cfg.q = default_q(Scenario::Counterexample, Some(kind));
            }
            if let Some(q) = q {
                cfg.q = q;
            }
            cfg.kind = Some(kind);
            cfg.exhaustive |= exhaustive;
            apply_common(&mut cfg, &common);
            (cfg, common.json)
        }
        Some(Command::Cdk { q, trials, common }) => {
            let mut cfg = base_config(config, Scenario::Cdk)?;
            cfg.q = q.unwrap_or(cfg.q);
            cfg.trials = trials.unwrap_or(cfg.trials);
            apply_common(&mut cfg, &common);
            (cfg, common.json)
        }
        Some(Command::Companion { q, trials, common }) => {
            let mut cfg = base_config(config, Scenario::Companion)?;
            cfg.q = q.unwrap_or(cfg.q);
            cfg.trials = trials.unwrap_or(cfg.trials);
            apply_common(&mut cfg, &common);
            (cfg, common.json)
        }
        Some(Command::Norms { q, common }) => {
            let mut cfg = base_config(config, Scenario::Norms)?;
            cfg.q = q.unwrap_or(cfg.q);
            apply_common(&mut cfg, &common);
            (cfg, common.json)
        }
    };
    let report = run(&cfg)?;
    print!("{}", report.render());
    if let Some(path) = json {
        report.write(&path)?;
    }
    Ok(report.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
