//! `key = value` defaults file. Command-line flags take precedence.

use std::fs;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub k: Option<f64>,
    pub n: Option<usize>,
    pub steps: Option<usize>,
    pub format: Option<String>,
    pub degrees: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = FileConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            let bad = |what: &str| format!("line {}: {key} must be {what}, got {value:?}", lineno + 1);
            match key.as_str() {
                "tol" => cfg.tol = Some(value.parse().map_err(|_| bad("a number"))?),
                "rel_tol" => cfg.rel_tol = Some(value.parse().map_err(|_| bad("a number"))?),
                "k" => cfg.k = Some(value.parse().map_err(|_| bad("a number"))?),
                "n" => cfg.n = Some(value.parse().map_err(|_| bad("a positive integer"))?),
                "steps" => cfg.steps = Some(value.parse().map_err(|_| bad("a positive integer"))?),
                "format" => match value {
                    "csv" | "json" => cfg.format = Some(value.to_string()),
                    _ => return Err(bad("csv or json")),
                },
                "degrees" => cfg.degrees = Some(value.parse().map_err(|_| bad("true or false"))?),
                _ => return Err(format!("line {}: unknown key {key:?}", lineno + 1)),
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let cfg = FileConfig::parse("# defaults\ntol = 1e-8\nrel-tol=1e-10 # quad\n\nformat = json\n").unwrap();
        assert_eq!(cfg.tol, Some(1e-8));
        assert_eq!(cfg.rel_tol, Some(1e-10));
        assert_eq!(cfg.format.as_deref(), Some("json"));
        assert_eq!(cfg.k, None);
    }

    #[test]
    fn rejects_unknown_key() {
        let err = FileConfig::parse("alpha = 1").unwrap_err();
        assert!(err.contains("unknown key"), "{err}");
    }

    #[test]
    fn rejects_bad_value() {
        let err = FileConfig::parse("tol = small").unwrap_err();
        assert!(err.contains("tol must be a number"), "{err}");
    }
}
