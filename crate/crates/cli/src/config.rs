//! `key = value` run files and their expansion into command-line flags.

use crate::error::CliError;

/// One `key = value` entry with the line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

/// Parses a run file. Blank lines and lines starting with `#` are skipped;
/// keys are lowercase flag names (`_` is accepted for `-`), values may be
/// wrapped in double quotes. The special key `command` names the subcommand.
pub fn parse_config(text: &str) -> Result<Vec<Entry>, CliError> {
    let mut out: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (k, v) = body
            .split_once('=')
            .ok_or_else(|| CliError::Config { line, message: "expected `key = value`".into() })?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-') || key.starts_with('-') {
            return Err(CliError::Config { line, message: format!("invalid key `{}`", k.trim()) });
        }
        let mut value = v.trim();
        if value.len() >= 2 && value.starts_with('"') && value.ends_with('"') {
            value = &value[1..value.len() - 1];
        }
        if value.is_empty() {
            return Err(CliError::Config { line, message: format!("empty value for `{key}`") });
        }
        if out.iter().any(|e| e.key == key) {
            return Err(CliError::Config { line, message: format!("duplicate key `{key}`") });
        }
        out.push(Entry { line, key, value: value.to_string() });
    }
    Ok(out)
}

/// Removes `--config PATH` from `args` and splices the file's entries in as
/// flags. Flags given on the command line win over the file.
pub fn expand_args(args: Vec<String>, subcommands: &[&str]) -> Result<Vec<String>, CliError> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    if let Some(prog) = it.next() {
        rest.push(prog);
    }
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or_else(|| CliError::Validation("--config needs a path".into()))?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Validation(format!("cannot read config `{path}`: {e}")))?;
    let entries = parse_config(&text)?;
    merge(rest, &entries, subcommands)
}

/// Inserts config entries after the subcommand token.
pub fn merge(mut args: Vec<String>, entries: &[Entry], subcommands: &[&str]) -> Result<Vec<String>, CliError> {
    let mut pos = args.iter().skip(1).position(|a| subcommands.contains(&a.as_str())).map(|p| p + 1);
    if let Some(e) = entries.iter().find(|e| e.key == "command") {
        match pos {
            Some(p) if args[p] != e.value => {
                return Err(CliError::Config { line: e.line, message: format!("file names `{}` but the command line runs `{}`", e.value, args[p]) });
            }
            Some(_) => {}
            None => {
                if !subcommands.contains(&e.value.as_str()) {
                    return Err(CliError::Config { line: e.line, message: format!("unknown command `{}`", e.value) });
                }
                args.insert(1, e.value.clone());
                pos = Some(1);
            }
        }
    }
    let given = |key: &str| {
        let flag = format!("--{key}");
        let prefix = format!("--{key}=");
        args.iter().any(|a| *a == flag || a.starts_with(&prefix))
    };
    let mut extra = Vec::new();
    for e in entries.iter().filter(|e| e.key != "command") {
        if given(&e.key) {
            continue;
        }
        match e.value.as_str() {
            "true" => extra.push(format!("--{}", e.key)),
            "false" => {}
            v => {
                extra.push(format!("--{}", e.key));
                extra.push(v.to_string());
            }
        }
    }
    let at = pos.map_or(args.len(), |p| p + 1);
    args.splice(at..at, extra);
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn parses_entries() {
        let e = parse_config("# run\ncommand = constants\n\ngamma=2\nn_grid = \"400\"\n").unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e[2].key, "n-grid");
        assert_eq!(e[2].value, "400");
        assert_eq!(e[2].line, 5);
    }

    #[test]
    fn rejects_bad_lines() {
        for bad in ["gamma", "= 2", "Gamma = 2", "a = 1\na = 2", "x = \"\"", "--a = 1"] {
            assert!(matches!(parse_config(bad), Err(CliError::Config { .. })), "{bad}");
        }
    }

    #[test]
    fn potential_values_keep_inner_equals() {
        let e = parse_config("potential = harmonic:A=1,B=0").unwrap();
        assert_eq!(e[0].value, "harmonic:A=1,B=0");
    }

    #[test]
    fn merge_respects_command_line() {
        let subs = ["constants", "spectrum"];
        let entries = parse_config("command = constants\ngamma = 2\nd = 3\nquiet = true").unwrap();
        let out = merge(s(&["ltgn", "--d", "1"]), &entries, &subs).unwrap();
        assert_eq!(out, s(&["ltgn", "constants", "--gamma", "2", "--quiet", "--d", "1"]));
        let out = merge(s(&["ltgn", "constants", "--gamma=5"]), &entries, &subs).unwrap();
        assert_eq!(out, s(&["ltgn", "constants", "--d", "3", "--quiet", "--gamma=5"]));
        assert!(merge(s(&["ltgn", "spectrum"]), &entries, &subs).is_err());
    }
}
