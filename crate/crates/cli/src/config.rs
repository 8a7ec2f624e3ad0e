use std::path::Path;

use lambda_lab::symuniv::UniversalCap;
use serde_json::Value;

pub const PRIMES_ENV: &str = "LAMBDA_LAB_PRIMES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub primes_upto: u64,
    pub search_bound: u64,
    pub universal_cap: UniversalCap,
    pub output: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            primes_upto: 50,
            search_bound: 8,
            universal_cap: UniversalCap::default(),
            output: OutputFormat::Text,
        }
    }
}

fn uint(v: &Value, key: &str) -> Result<u64, String> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .ok_or_else(|| format!("{key}: expected a nonnegative integer")),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("{key}: expected a nonnegative integer, got {s:?}")),
        _ => Err(format!("{key}: expected a nonnegative integer")),
    }
}

pub fn parse_output(s: &str) -> Result<OutputFormat, String> {
    match s {
        "text" => Ok(OutputFormat::Text),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("output must be \"text\" or \"json\", got {other:?}")),
    }
}

impl Config {
    /// Applies the keys of a JSON config file on top of `self`.
    pub fn merge_json(&mut self, v: &Value) -> Result<(), String> {
        let obj = v.as_object().ok_or("config must be a JSON object")?;
        for (key, val) in obj {
            match key.as_str() {
                "primes_upto" => self.primes_upto = uint(val, key)?,
                "search_bound" => self.search_bound = uint(val, key)?,
                "output" => {
                    self.output = parse_output(val.as_str().ok_or("output must be a string")?)?;
                }
                "universal_cap" => {
                    let cap = val.as_object().ok_or("universal_cap must be an object")?;
                    for (k, x) in cap {
                        match k.as_str() {
                            "max_i" => self.universal_cap.max_i = uint(x, k)? as usize,
                            "max_ij" => self.universal_cap.max_ij = uint(x, k)? as usize,
                            other => return Err(format!("unknown universal_cap key {other:?}")),
                        }
                    }
                }
                other => return Err(format!("unknown config key {other:?}")),
            }
        }
        Ok(())
    }

    pub fn merge_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        self.merge_json(&v)
    }

    pub fn merge_env(&mut self, primes: Option<&str>) -> Result<(), String> {
        if let Some(s) = primes {
            self.primes_upto = s
                .trim()
                .parse()
                .map_err(|_| format!("{PRIMES_ENV}: expected an integer, got {s:?}"))?;
        }
        Ok(())
    }

    pub fn check(&self) -> Result<(), String> {
        if self.primes_upto < 7 {
            return Err(format!("primes_upto must be at least 7, got {}", self.primes_upto));
        }
        Ok(())
    }
}
