//! Flat `key = value` configuration files.
//!
//! Keys are the long flag names without the leading dashes (`n0-dbm-hz = -174`). Blank lines
//! and lines starting with `#` are ignored. Command-line flags always win over file values.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

pub const KNOWN_KEYS: &[&str] = &[
    "beta",
    "beta-db",
    "sigma-sq",
    "sigma-sq-db",
    "m",
    "n",
    "n0",
    "n0-dbm-hz",
    "nu",
    "eta",
    "bandwidth",
    "speed-of-light",
    "samples",
    "format",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
            if values.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(CliError::Usage(format!(
                    "config line {}: duplicate key `{key}`",
                    lineno + 1
                )));
            }
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.values
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config key `{key}`: cannot parse `{v}`")))
            })
            .transpose()
    }

    /// `flag` if given, otherwise the file value for `key`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// Resolve a quantity that may be given in linear form or in dB, from flags first and
    /// the file second. Supplying both forms at the same level is a usage error.
    pub fn pick_pair(
        &self,
        linear: Option<f64>,
        db: Option<f64>,
        linear_key: &str,
        db_key: &str,
    ) -> Result<Option<Form>, CliError> {
        match (linear, db) {
            (Some(_), Some(_)) => Err(CliError::Usage(format!(
                "--{linear_key} and --{db_key} are mutually exclusive"
            ))),
            (Some(v), None) => Ok(Some(Form::Linear(v))),
            (None, Some(v)) => Ok(Some(Form::Db(v))),
            (None, None) => match (self.get(linear_key)?, self.get(db_key)?) {
                (Some(_), Some(_)) => Err(CliError::Usage(format!(
                    "config sets both `{linear_key}` and `{db_key}`"
                ))),
                (Some(v), None) => Ok(Some(Form::Linear(v))),
                (None, Some(v)) => Ok(Some(Form::Db(v))),
                (None, None) => Ok(None),
            },
        }
    }
}

/// A value given either as a linear quantity or in dB(m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Form {
    Linear(f64),
    Db(f64),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects_unknown_keys() {
        let cfg = ConfigFile::parse("# test\n\nbeta-db = -80\nnu=1e-14\n").unwrap();
        assert_eq!(cfg.get::<f64>("beta-db").unwrap(), Some(-80.0));
        assert_eq!(cfg.get::<f64>("nu").unwrap(), Some(1e-14));
        assert_eq!(cfg.get::<f64>("eta").unwrap(), None);
        assert!(ConfigFile::parse("gamma = 1").is_err());
        assert!(ConfigFile::parse("beta").is_err());
        assert!(ConfigFile::parse("nu = 1\nnu = 2").is_err());
        assert!(ConfigFile::parse("nu = abc").unwrap().get::<f64>("nu").is_err());
    }

    #[test]
    fn flags_override_file() {
        let cfg = ConfigFile::parse("beta-db = -80\nnu = 1e-14").unwrap();
        assert_eq!(cfg.pick(Some(2e-14), "nu").unwrap(), Some(2e-14));
        assert_eq!(cfg.pick(None, "nu").unwrap(), Some(1e-14));
        assert_eq!(
            cfg.pick_pair(Some(1e-9), None, "beta", "beta-db").unwrap(),
            Some(Form::Linear(1e-9))
        );
        assert_eq!(
            cfg.pick_pair(None, None, "beta", "beta-db").unwrap(),
            Some(Form::Db(-80.0))
        );
        assert!(cfg.pick_pair(Some(1e-9), Some(-90.0), "beta", "beta-db").is_err());
        let both = ConfigFile::parse("beta = 1e-8\nbeta-db = -80").unwrap();
        assert!(both.pick_pair(None, None, "beta", "beta-db").is_err());
    }
}
