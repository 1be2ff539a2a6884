//! Small text parsers for arguments and config files.

use std::str::FromStr;

use num_complex::Complex64;

use crate::CliError;

/// One `key = value` pair from a config file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigEntry {
    pub key: String,
    pub value: String,
}

/// Parses a config file: one `key = value` per line, `#` starts a comment,
/// blank lines are ignored. Keys are long flag names without the dashes.
pub fn parse_run_config(text: &str) -> Result<Vec<ConfigEntry>, CliError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| CliError::Usage(format!("config line {}: {msg}", lineno + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
        let (key, value) = (key.trim(), value.trim());
        let valid_key = !key.is_empty()
            && key.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-')
            && !key.starts_with('-');
        if !valid_key {
            return Err(bad(&format!("invalid key {key:?}")));
        }
        if key == "config" {
            return Err(bad("config files cannot include other config files"));
        }
        out.push(ConfigEntry { key: key.to_string(), value: value.to_string() });
    }
    Ok(out)
}

/// Turns config entries into command-line tokens. `true` becomes a bare
/// switch and `false` drops the entry.
pub fn config_to_args(entries: &[ConfigEntry]) -> Vec<String> {
    let mut args = Vec::new();
    for e in entries {
        match e.value.as_str() {
            "true" => args.push(format!("--{}", e.key)),
            "false" => {}
            v => {
                args.push(format!("--{}", e.key));
                args.push(v.to_string());
            }
        }
    }
    args
}

/// Integer list such as `2,3,5`, `1..=4`, `0..3,7` or the empty string.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>, String> {
    const MAX_LEN: i128 = 1_000_000;
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("invalid integer {t:?}"));
        let (lo, hi) = if let Some((a, b)) = part.split_once("..=") {
            (num(a)?, num(b)?)
        } else if let Some((a, b)) = part.split_once("..") {
            let b = num(b)?;
            match b.checked_sub(1) {
                Some(b) => (num(a)?, b),
                None => continue,
            }
        } else {
            let x = num(part)?;
            (x, x)
        };
        // check the length before materialising the range
        if out.len() as i128 + (hi as i128 - lo as i128 + 1).max(0) > MAX_LEN {
            return Err("list has more than 10^6 entries".into());
        }
        if lo <= hi {
            out.extend(lo..=hi);
        }
    }
    Ok(out)
}

/// Like [`parse_int_list`] but every entry must be non-negative.
pub fn parse_uint_list(s: &str) -> Result<Vec<u64>, String> {
    parse_int_list(s)?
        .into_iter()
        .map(|x| u64::try_from(x).map_err(|_| format!("negative entry {x}")))
        .collect()
}

/// Complex literal such as `0.5`, `-0.2i`, `0.3-0.4i` or `i`; must be finite.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let z = Complex64::from_str(s.trim()).map_err(|_| format!("invalid complex number {s:?}"))?;
    if z.is_finite() {
        Ok(z)
    } else {
        Err(format!("complex number {s:?} is not finite"))
    }
}
