use jnorm::constants::{validate_params, Params};
use jnorm::geometry::{Dimension, JSpace};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FieldChoice {
    /// The rationals
    Rat,
    /// Rational functions in a positive infinitesimal `e`
    RatEps,
}

impl FieldChoice {
    pub fn name(self) -> &'static str {
        match self {
            FieldChoice::Rat => "rat",
            FieldChoice::RatEps => "rat-eps",
        }
    }
}

pub fn parse_dimension(s: &str) -> Result<Dimension, String> {
    if s == "inf" {
        return Ok(Dimension::Infinite);
    }
    match s.parse::<usize>() {
        Ok(d) if d >= 2 => Ok(Dimension::Finite(d)),
        Ok(d) => Err(format!("dimension {d} is below 2")),
        Err(_) => Err(format!("expected a natural >= 2 or 'inf', got '{s}'")),
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub p: u32,
    pub q: u32,
    pub field: FieldChoice,
    pub dimension: Dimension,
    pub depth: usize,
    pub bound: u32,
}

impl Config {
    pub fn params(&self) -> Result<Params, CliError> {
        validate_params(self.p, self.q).map_err(|e| CliError::Input(format!("--p {} --q {}: {e}", self.p, self.q)))
    }

    pub fn space(&self) -> Result<JSpace, CliError> {
        JSpace::new(self.params()?, self.dimension).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "q": self.q,
            "field": self.field.name(),
            "dimension": self.dimension.to_string(),
            "depth": self.depth,
            "bound": self.bound,
        })
    }
}
