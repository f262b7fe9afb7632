//! `key = value` config files, merged into the command line before parsing.
//!
//! Keys are long flag names without the dashes. Flags given on the command
//! line win over the file. `true` turns a switch on, `false` leaves it off.

use std::fs;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}:{line}: expected `key = value`")]
    Syntax { path: String, line: usize },
    #[error("--config needs a path")]
    MissingPath,
}

pub fn parse(text: &str, path: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { path: path.into(), line: i + 1 })?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(ConfigError::Syntax { path: path.into(), line: i + 1 });
        }
        pairs.push((key.to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn config_path(args: &[String]) -> Result<Option<String>, ConfigError> {
    for (i, a) in args.iter().enumerate() {
        if a == "--config" {
            return args.get(i + 1).cloned().map(Some).ok_or(ConfigError::MissingPath);
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Ok(Some(p.to_string()));
        }
    }
    Ok(None)
}

/// Appends the config file's settings that the command line leaves unset.
pub fn merge(args: Vec<String>) -> Result<Vec<String>, ConfigError> {
    let Some(path) = config_path(&args)? else {
        return Ok(args);
    };
    let text =
        fs::read_to_string(Path::new(&path)).map_err(|source| ConfigError::Read { path: path.clone(), source })?;
    let mut merged = args.clone();
    for (key, value) in parse(&text, &path)? {
        let flag = format!("--{key}");
        let given = args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        match value.as_str() {
            "true" => merged.push(flag),
            "false" => {}
            _ => merged.push(format!("{flag}={value}")),
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let pairs = parse("# run\np = 4\n\nfield = const:7  # trailing\n--N=3\n", "c").unwrap();
        assert_eq!(pairs, [("p".into(), "4".into()), ("field".into(), "const:7".into()), ("N".into(), "3".into())]);
    }

    #[test]
    fn rejects_lines_without_equals() {
        assert!(matches!(parse("p 4", "c"), Err(ConfigError::Syntax { line: 1, .. })));
    }
}
