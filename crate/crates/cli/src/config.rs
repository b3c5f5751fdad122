//! Scenario configuration from `key = value` text and command-line flags.

use std::fmt;
use std::str::FromStr;

use g2real::FieldSpec;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Axioms,
    Counterexample,
    Cdk,
    Companion,
    Norms,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Axioms => "axioms",
            Scenario::Counterexample => "counterexample",
            Scenario::Cdk => "cdk",
            Scenario::Companion => "companion",
            Scenario::Norms => "norms",
        }
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "axioms" => Scenario::Axioms,
            "counterexample" => Scenario::Counterexample,
            "cdk" => Scenario::Cdk,
            "companion" => Scenario::Companion,
            "norms" => Scenario::Norms,
            _ => return Err(CliError::Usage(format!("unknown scenario {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Sl3,
    Su,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sl3 => "sl3",
            Kind::Su => "su",
        })
    }
}

impl FromStr for Kind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "sl3" => Ok(Kind::Sl3),
            "su" => Ok(Kind::Su),
            _ => Err(CliError::Usage(format!("kind must be sl3 or su, not {s:?}"))),
        }
    }
}

/// Every input a scenario reads. Echoed verbatim into the run report, so a
/// report can be replayed from its own `inputs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    /// Ground field for `axioms`.
    pub field: FieldSpec,
    /// Prime q for the finite-field scenarios.
    pub q: u64,
    pub kind: Option<Kind>,
    pub samples: u64,
    pub trials: u64,
    pub seed: u64,
    pub budget: u64,
    pub exhaustive: bool,
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario) -> Self {
        ScenarioConfig {
            scenario,
            field: FieldSpec::Prime(7),
            q: 5,
            kind: None,
            samples: 1000,
            trials: 200,
            seed: 0,
            budget: g2real::reality::DEFAULT_BUDGET,
            exhaustive: false,
        }
    }

    /// Parses `key = value` lines; `#` starts a comment. Keys not listed in
    /// [`ScenarioConfig`] are rejected.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut pairs = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("line {}: expected key = value", n + 1)))?;
            pairs.push((n + 1, key.trim().to_string(), value.trim().to_string()));
        }
        let scenario = pairs
            .iter()
            .find(|(_, k, _)| k == "scenario")
            .ok_or_else(|| CliError::Usage("config has no scenario key".into()))?
            .2
            .parse()?;
        let mut cfg = ScenarioConfig::new(scenario);
        cfg.q = default_q(scenario, None);
        let mut q_set = false;
        for (n, key, value) in pairs {
            let bad = |what: &str| CliError::Usage(format!("line {n}: {key} must be {what}, got {value:?}"));
            match key.as_str() {
                "scenario" => {}
                "field" => cfg.field = value.parse().map_err(|e: g2real::Error| CliError::Usage(e.to_string()))?,
                "q" => {
                    cfg.q = value.parse().map_err(|_| bad("an integer"))?;
                    q_set = true;
                }
                "kind" => cfg.kind = Some(value.parse()?),
                "samples" => cfg.samples = value.parse().map_err(|_| bad("an integer"))?,
                "trials" => cfg.trials = value.parse().map_err(|_| bad("an integer"))?,
                "seed" => cfg.seed = value.parse().map_err(|_| bad("an integer"))?,
                "budget" => cfg.budget = value.parse().map_err(|_| bad("an integer"))?,
                "exhaustive" => cfg.exhaustive = value.parse().map_err(|_| bad("true or false"))?,
                _ => return Err(CliError::Usage(format!("line {n}: unknown key {key:?}"))),
            }
        }
        if !q_set {
            cfg.q = default_q(scenario, cfg.kind);
        }
        Ok(cfg)
    }
}

/// Smallest q at which the scenario is meaningful.
pub fn default_q(scenario: Scenario, kind: Option<Kind>) -> u64 {
    match (scenario, kind) {
        (Scenario::Counterexample, Some(Kind::Su)) => 17,
        (Scenario::Counterexample, _) => 7,
        _ => 5,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_defaults() {
        let c = ScenarioConfig::parse("scenario = counterexample\nkind = su # the unitary one\n").unwrap();
        assert_eq!((c.kind, c.q, c.exhaustive), (Some(Kind::Su), 17, false));
        let c = ScenarioConfig::parse("scenario=axioms\nfield=Q\nsamples=10").unwrap();
        assert_eq!((c.field, c.samples), (FieldSpec::Q, 10));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(ScenarioConfig::parse("scenario = cdk\ncolour = red").is_err());
        assert!(ScenarioConfig::parse("scenario = cdk\ntrials = many").is_err());
        assert!(ScenarioConfig::parse("trials = 3").is_err());
        assert!(ScenarioConfig::parse("scenario = axioms\nfield = 2").is_err());
    }
}
