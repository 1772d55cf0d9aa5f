use reslab::{AfeConfig, Error, ResonatorConfig, Result, ScanConfig};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::path::Path;

/// Everything a run can be configured with. The file layout is
/// `{"scan": {..}, "resonator": {..}, "afe": {..}, "seed": n}`; the
/// resonator section also supplies the scan's resonator parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub scan: ScanConfig,
    pub resonator: ResonatorConfig,
    pub afe: AfeConfig,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scan: ScanConfig::default(),
            resonator: ResonatorConfig::default(),
            afe: AfeConfig::default(),
            seed: reslab::verify::DEFAULT_SEED,
        }
    }
}

/// Overlays `patch` onto `base`: objects merge key by key, anything else
/// replaces.
pub fn merge(base: &mut Value, patch: &Value) {
    match (base, patch) {
        (Value::Object(b), Value::Object(p)) => {
            for (k, v) in p {
                merge(b.entry(k.clone()).or_insert(Value::Null), v);
            }
        }
        (b, p) => *b = p.clone(),
    }
}

/// Sets `path` (dot separated) in a JSON object to `value`.
pub fn set_path(root: &mut Value, path: &str, value: Value) {
    let mut cur = root;
    for key in path.split('.') {
        if !cur.is_object() {
            *cur = Value::Object(Map::new());
        }
        cur = cur
            .as_object_mut()
            .unwrap()
            .entry(key)
            .or_insert(Value::Null);
    }
    *cur = value;
}

pub fn read_file(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Domain(format!("bad config {}: {e}", path.display())))
}

impl RunConfig {
    /// Builds the configuration from an optional file and flag overrides,
    /// then revalidates every section.
    pub fn resolve(file: Option<&Path>, flags: &Value) -> Result<Self> {
        let mut value = match file {
            Some(p) => read_file(p)?,
            None => Value::Object(Map::new()),
        };
        merge(&mut value, flags);
        let mut cfg: RunConfig = serde_json::from_value(value)
            .map_err(|e| Error::Domain(format!("invalid configuration: {e}")))?;
        cfg.scan.resonator = cfg.resonator;
        cfg.resonator.validate()?;
        cfg.scan.validate()?;
        cfg.afe.validate()?;
        Ok(cfg)
    }
}

/// Parses counts written as `1000000`, `1e6` or `10^6`.
pub fn parse_count(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim().replace('_', "");
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let value = if let Some((b, e)) = s.split_once('^') {
        let b: u64 = b.parse().map_err(|_| format!("bad base in '{s}'"))?;
        let e: u32 = e.parse().map_err(|_| format!("bad exponent in '{s}'"))?;
        return b.checked_pow(e).ok_or_else(|| format!("'{s}' overflows"));
    } else {
        s.parse::<f64>()
            .map_err(|_| format!("'{s}' is not a count"))?
    };
    if value.is_finite() && value >= 0.0 && value.fract() == 0.0 && value < u64::MAX as f64 {
        Ok(value as u64)
    } else {
        Err(format!("'{s}' is not a nonnegative integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn counts() {
        assert_eq!(parse_count("10^9"), Ok(1_000_000_000));
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("2.5e3"), Ok(2500));
        assert_eq!(parse_count("1_000"), Ok(1000));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("10^40").is_err());
    }

    #[test]
    fn merge_is_idempotent_and_order_free_on_disjoint_keys() {
        let base = json!({"scan": {"X": 20000}, "seed": 3});
        let p = json!({"scan": {"A": 0.5}});
        let q = json!({"resonator": {"gamma": 0.5}, "seed": 4});
        let mut a = base.clone();
        merge(&mut a, &p);
        merge(&mut a, &q);
        let mut b = base.clone();
        merge(&mut b, &q);
        merge(&mut b, &p);
        assert_eq!(a, b);
        let mut c = a.clone();
        merge(&mut c, &p);
        merge(&mut c, &q);
        assert_eq!(a, c);
        assert_eq!(a["scan"], json!({"X": 20000, "A": 0.5}));
    }

    #[test]
    fn flags_win_and_invalid_merges_are_rejected() {
        let mut flags = Value::Object(Map::new());
        set_path(&mut flags, "scan.X", json!(50000));
        let cfg = RunConfig::resolve(None, &flags).unwrap();
        assert_eq!(cfg.scan.x, 50000);
        set_path(&mut flags, "resonator.gamma", json!(0.7));
        assert!(RunConfig::resolve(None, &flags).unwrap_err().is_domain());
        assert!(RunConfig::resolve(None, &json!({"bogus": 1})).is_err());
    }
}
