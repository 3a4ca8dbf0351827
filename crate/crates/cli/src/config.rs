//! Flat `key = value` configuration files and physical constants.
//!
//! Lines are `key = value`; `#` and `;` start comments; a `[section]` header
//! prefixes the keys below it with `section.`. Keys are normalized so that
//! `t-final` and `t_final` are the same key.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Serialize;

use crate::CliError;

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

#[derive(Debug, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, (usize, String)>,
    used: RefCell<BTreeSet<String>>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split(['#', ';']).next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::InvalidConfig {
                        key: format!("line {line_no}"),
                        reason: format!("unterminated section header {line:?}"),
                    })?;
                section = normalize(name);
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::InvalidConfig {
                    key: format!("line {line_no}"),
                    reason: format!("expected `key = value`, got {line:?}"),
                })?;
            let key = normalize(key);
            if key.is_empty() {
                return Err(CliError::InvalidConfig {
                    key: format!("line {line_no}"),
                    reason: "empty key".into(),
                });
            }
            let full = if section.is_empty() {
                key
            } else {
                format!("{section}.{key}")
            };
            if values
                .insert(full.clone(), (line_no, value.trim().to_string()))
                .is_some()
            {
                return Err(CliError::InvalidConfig {
                    key: full,
                    reason: format!("duplicate key on line {line_no}"),
                });
            }
        }
        Ok(Self {
            values,
            used: RefCell::default(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Raw value of `section.key`, falling back to the top-level `key`.
    pub fn get(&self, section: &str, key: &str) -> Option<(String, &str)> {
        let key = normalize(key);
        let scoped = format!("{}.{key}", normalize(section));
        for k in [scoped, key] {
            if let Some((_, v)) = self.values.get(&k) {
                self.used.borrow_mut().insert(k.clone());
                return Some((k, v.as_str()));
            }
        }
        None
    }

    /// Fails on keys that were never looked up, in the top level or in one
    /// of `sections`. Keys of other sections are left alone so one file can
    /// carry settings for several scenarios.
    pub fn reject_unused(&self, sections: &[&str]) -> Result<(), CliError> {
        let used = self.used.borrow();
        for (key, (line, _)) in &self.values {
            let relevant = match key.split_once('.') {
                None => true,
                Some((s, _)) => sections.iter().any(|w| normalize(w) == s),
            };
            if relevant && !used.contains(key) {
                return Err(CliError::InvalidConfig {
                    key: key.clone(),
                    reason: format!("unknown key on line {line}"),
                });
            }
        }
        Ok(())
    }
}

pub(crate) fn parse_value<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    raw.trim()
        .parse()
        .map_err(|e: T::Err| CliError::InvalidConfig {
            key: key.to_string(),
            reason: format!("cannot parse {raw:?}: {e}"),
        })
}

/// Parses `a,b,c` into three floats.
pub fn parse_vec3(raw: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated numbers, got {raw:?}"
        ));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.parse().map_err(|e| format!("{part:?}: {e}"))?;
    }
    Ok(out)
}

/// SI constants, CODATA 2018 unless overridden.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// J s
    pub hbar: f64,
    /// m/s
    pub c: f64,
    /// kg
    pub electron_mass: f64,
    /// C
    pub elementary_charge: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: Self = Self {
        hbar: 1.054_571_817e-34,
        c: 299_792_458.0,
        electron_mass: 9.109_383_701_5e-31,
        elementary_charge: 1.602_176_634e-19,
    };

    /// Defaults overridden by keys of the `[constants]` section.
    pub fn from_config(config: Option<&ConfigFile>) -> Result<Self, CliError> {
        let mut out = Self::CODATA_2018;
        if let Some(cfg) = config {
            for (name, slot) in [
                ("hbar", &mut out.hbar),
                ("c", &mut out.c),
                ("electron_mass", &mut out.electron_mass),
                ("elementary_charge", &mut out.elementary_charge),
            ] {
                let key = format!("constants.{name}");
                if let Some((k, raw)) = cfg.get("", &key) {
                    *slot = parse_value(&k, raw)?;
                }
            }
        }
        out.validate()?;
        Ok(out)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, v) in [
            ("constants.hbar", self.hbar),
            ("constants.c", self.c),
            ("constants.electron_mass", self.electron_mass),
            ("constants.elementary_charge", self.elementary_charge),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::InvalidConfig {
                    key: name.into(),
                    reason: format!("must be positive and finite, got {v}"),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_comments_and_fallback() {
        let cfg = ConfigFile::parse(
            "theta = 0.5 # top level\n; full comment\n[stern-gerlach]\nt-final = 40\n[constants]\nhbar=1\n",
        )
        .unwrap();
        assert_eq!(cfg.get("stern_gerlach", "t_final").unwrap().1, "40");
        assert_eq!(cfg.get("stern-gerlach", "theta").unwrap().1, "0.5");
        assert!(cfg.get("lorentz", "t_final").is_none());
        let k = PhysicalConstants::from_config(Some(&cfg)).unwrap();
        assert_eq!(k.hbar, 1.0);
        assert_eq!(k.c, PhysicalConstants::CODATA_2018.c);
        cfg.reject_unused(&["stern-gerlach", "constants"]).unwrap();
    }

    #[test]
    fn unknown_and_malformed_keys_are_rejected() {
        let cfg = ConfigFile::parse("thetaa = 1\n[lorentz]\nmass = 2\n").unwrap();
        let err = cfg.reject_unused(&["stern-gerlach"]).unwrap_err();
        assert!(matches!(err, CliError::InvalidConfig { ref key, .. } if key == "thetaa"));
        assert!(ConfigFile::parse("novalue\n").is_err());
        assert!(ConfigFile::parse("a = 1\na = 2\n").is_err());
        assert!(ConfigFile::parse("[open\n").is_err());
    }

    #[test]
    fn constants_must_be_positive() {
        let cfg = ConfigFile::parse("[constants]\nc = -3\n").unwrap();
        assert!(PhysicalConstants::from_config(Some(&cfg)).is_err());
    }

    #[test]
    fn vectors_parse() {
        assert_eq!(parse_vec3("1, -2,3e-1").unwrap(), [1.0, -2.0, 0.3]);
        assert!(parse_vec3("1,2").is_err());
        assert!(parse_vec3("1,x,2").is_err());
    }
}
