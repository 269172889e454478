//! Command selection and parameters: defaults, then a TOML file, then flags.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use shrinkerlab_core::weakholo::parse_complex;
use shrinkerlab_core::LabError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown command '{0}'")]
    UnknownCommand(String),
    #[error("unknown parameter '{key}' for command {command} ({origin})")]
    UnknownKey { key: String, command: String, origin: String },
    #[error("bad value '{value}' for '{key}': {reason}")]
    BadParameter { key: String, value: String, reason: String },
    #[error("config file: {0}")]
    ConfigFile(String),
    #[error("{context}: {source}")]
    Computation {
        context: String,
        #[source]
        source: LabError,
    },
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::UnknownCommand(_) => "unknown_command",
            CliError::UnknownKey { .. } => "unknown_key",
            CliError::BadParameter { .. } => "bad_parameter",
            CliError::ConfigFile(_) => "config_file",
            CliError::Computation { .. } => "computation",
            CliError::Io(_) => "io",
        }
    }
}

/// Attach context to a core error.
pub(crate) fn ctx<T>(context: &str, r: shrinkerlab_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Computation { context: context.to_string(), source })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Profile,
    Umbilics,
    LpCheck,
    AxisLimit,
    TaylorAudit,
    Kq,
    Pompeiu,
    Order,
    Index,
    SurfaceSuite,
    Shoot,
}

pub const DEFAULT_OUT: &str = "shrinkerlab-out";
pub const DEFAULT_SEED: &str = "20240611";
pub const DEFAULT_FIXTURES: &str = "sphere 2; cylinder sqrt(2); plane; ellipsoid 1,1.2,1.5; torus 2,1";

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Profile,
        Command::Umbilics,
        Command::LpCheck,
        Command::AxisLimit,
        Command::TaylorAudit,
        Command::Kq,
        Command::Pompeiu,
        Command::Order,
        Command::Index,
        Command::SurfaceSuite,
        Command::Shoot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Profile => "profile",
            Command::Umbilics => "umbilics",
            Command::LpCheck => "lp-check",
            Command::AxisLimit => "axis-limit",
            Command::TaylorAudit => "taylor-audit",
            Command::Kq => "kq",
            Command::Pompeiu => "pompeiu",
            Command::Order => "order",
            Command::Index => "index",
            Command::SurfaceSuite => "surface-suite",
            Command::Shoot => "shoot",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::UnknownCommand(s.to_string()))
    }

    /// Parameter names with their defaults. `out` is accepted everywhere.
    pub fn defaults(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Command::Profile => &[
                ("b", "1"),
                ("x-end", "1.9"),
                ("tol", "1e-10"),
                ("chart", "graph"),
                ("s-end", "6"),
                ("samples", "200"),
            ],
            Command::Umbilics => &[("b", "1"), ("x-end", "1.9"), ("tol", "1e-10")],
            Command::LpCheck => &[
                ("b", "1"),
                ("p", "3"),
                ("eps", "0.2"),
                ("deltas", "1e-3,5e-4,2.5e-4,1.25e-4"),
            ],
            Command::AxisLimit => &[("b", "0.5,1,3")],
            Command::TaylorAudit => &[("b", "0.5,1,2,3"), ("order", "8")],
            Command::Kq => &[
                ("q", "1.5,1.8,1.95"),
                ("tol", "1e-8"),
                ("samples", "4194304"),
                ("seed", DEFAULT_SEED),
                ("eps", "1e-3"),
            ],
            Command::Pompeiu => &[
                ("field", "z^2*zbar"),
                ("k", "2"),
                ("xi", "0.3+0.2i"),
                ("center", "0"),
                ("radius", "1"),
                ("grids", "32,64,128,256"),
            ],
            Command::Order => &[
                ("field", "(z-0.2)^2*(3+z)"),
                ("z0", "0.2"),
                ("radii", "0.1,0.05,0.025,0.0125,0.00625,0.003125"),
            ],
            Command::Index => &[("field", "z^3"), ("z0", "0"), ("r", "0.5")],
            Command::SurfaceSuite => &[
                ("fixtures", DEFAULT_FIXTURES),
                ("weight", "linear:0.25"),
                ("grid", "10"),
                ("steps", "0.02,0.01,0.005"),
                ("lambdas", "-2,0,1.5,10"),
            ],
            Command::Shoot => &[("b-lo", "0.1"), ("b-hi", "5"), ("n", "25")],
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Every parameter of the command, resolved.
    pub params: BTreeMap<String, String>,
}

fn canonical_key(k: &str) -> String {
    k.replace('_', "-")
}

fn toml_to_string(key: &str, v: &toml::Value) -> Result<String, CliError> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => f.to_string(),
        toml::Value::Boolean(b) => b.to_string(),
        toml::Value::Array(items) => {
            let parts = items.iter().map(|x| toml_to_string(key, x)).collect::<Result<Vec<_>, _>>()?;
            let sep = if items.iter().all(|x| x.is_str()) { "; " } else { "," };
            parts.join(sep)
        }
        _ => {
            return Err(CliError::ConfigFile(format!(
                "'{key}' must be a string, number, boolean or array"
            )))
        }
    })
}

fn line_of(text: &str, key: &str) -> String {
    text.lines()
        .position(|l| {
            let l = l.trim_start();
            l.starts_with(key) && l[key.len()..].trim_start().starts_with('=')
        })
        .map_or_else(|| "config file".to_string(), |i| format!("config file line {}", i + 1))
}

/// Resolve `argv` (command first, then `--key value` pairs) over an optional
/// config file text. A `command` entry in the file is used when `argv` is empty
/// of a command name.
pub fn parse_config(argv: &[String], file_text: Option<&str>) -> Result<RunConfig, CliError> {
    let mut file_params: Vec<(String, String, String)> = Vec::new();
    let mut file_command = None;
    if let Some(text) = file_text {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::ConfigFile(e.to_string()))?;
        for (k, v) in &table {
            if k == "command" {
                file_command = Some(toml_to_string(k, v)?);
                continue;
            }
            file_params.push((canonical_key(k), toml_to_string(k, v)?, line_of(text, k)));
        }
    }

    let mut args = argv.iter();
    let mut flags: Vec<(String, String, String)> = Vec::new();
    let mut command_name = file_command;
    let mut rest: Vec<&String> = Vec::new();
    if let Some(first) = argv.first() {
        if !first.starts_with("--") {
            command_name = Some(first.clone());
            args.next();
        }
    }
    rest.extend(args);
    let mut i = 0;
    while i < rest.len() {
        let flag = rest[i];
        let Some(key) = flag.strip_prefix("--") else {
            return Err(CliError::Usage(format!("expected a --flag, found '{flag}'")));
        };
        let Some(value) = rest.get(i + 1) else {
            return Err(CliError::Usage(format!("flag --{key} needs a value")));
        };
        flags.push((canonical_key(key), (*value).clone(), format!("flag --{key}")));
        i += 2;
    }

    let Some(command_name) = command_name else {
        return Err(CliError::Usage(usage()));
    };
    let command = Command::parse(&command_name)?;
    let mut params: BTreeMap<String, String> = command
        .defaults()
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    params.insert("out".into(), DEFAULT_OUT.into());
    for (key, value, origin) in file_params.into_iter().chain(flags) {
        if key == "config" {
            continue;
        }
        if !params.contains_key(&key) {
            return Err(CliError::UnknownKey { key, command: command.name().into(), origin });
        }
        params.insert(key, value);
    }
    let cfg = RunConfig { command, params };
    for key in cfg.params.keys().filter(|k| k.ends_with("tol")) {
        let t = cfg.f64(key)?;
        if t.is_nan() || t <= 0.0 {
            return Err(bad(key, &cfg.params[key], "tolerances must be positive"));
        }
    }
    Ok(cfg)
}

/// Split off `--config <path>` from `argv`, returning the remaining arguments and the path.
pub fn take_config_path(argv: &[String]) -> Result<(Vec<String>, Option<String>), CliError> {
    let mut out = Vec::new();
    let mut path = None;
    let mut i = 0;
    while i < argv.len() {
        if argv[i] == "--config" {
            let p = argv.get(i + 1).ok_or_else(|| CliError::Usage("flag --config needs a value".into()))?;
            path = Some(p.clone());
            i += 2;
        } else {
            out.push(argv[i].clone());
            i += 1;
        }
    }
    Ok((out, path))
}

fn bad(key: &str, value: &str, reason: impl Into<String>) -> CliError {
    CliError::BadParameter { key: key.into(), value: value.into(), reason: reason.into() }
}

impl RunConfig {
    pub fn str(&self, key: &str) -> &str {
        self.params.get(key).map(String::as_str).unwrap_or_else(|| panic!("parameter '{key}' is not declared"))
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        let s = self.str(key);
        s.trim().parse::<f64>().map_err(|e| bad(key, s, e.to_string()))
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        let s = self.str(key);
        s.trim().parse::<usize>().map_err(|e| bad(key, s, e.to_string()))
    }

    pub fn u64(&self, key: &str) -> Result<u64, CliError> {
        let s = self.str(key);
        s.trim().parse::<u64>().map_err(|e| bad(key, s, e.to_string()))
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let s = self.str(key);
        s.split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|e| bad(key, s, e.to_string())))
            .collect()
    }

    /// Semicolon-separated list of names.
    pub fn name_list(&self, key: &str) -> Vec<String> {
        self.str(key).split(';').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
    }

    pub fn complex(&self, key: &str) -> Result<Complex64, CliError> {
        let s = self.str(key);
        parse_complex(s).ok_or_else(|| bad(key, s, "expected a complex number such as 0.3+0.2i"))
    }
}

pub fn usage() -> String {
    let mut s = String::from(
        "usage: shrinkerlab <command> [--key value]... [--config file.toml]\n\ncommands and their parameters (defaults):\n",
    );
    for c in Command::ALL {
        s.push_str(&format!("  {}\n", c.name()));
        for (k, v) in c.defaults() {
            s.push_str(&format!("      --{k} {v}\n"));
        }
    }
    s.push_str(&format!("\nevery command also takes --out <dir> (default {DEFAULT_OUT})\n"));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn flags_override_file() {
        let cfg = parse_config(&argv(&["lp-check", "--b", "1", "--p", "3"]), Some("b = 2\neps = 0.1\n")).unwrap();
        assert_eq!(cfg.f64("b").unwrap(), 1.0);
        assert_eq!(cfg.f64("p").unwrap(), 3.0);
        assert_eq!(cfg.f64("eps").unwrap(), 0.1);
        assert_eq!(cfg.str("out"), DEFAULT_OUT);
    }

    #[test]
    fn unknown_key_in_file_is_named() {
        let e = parse_config(&argv(&["profile"]), Some("b = 2\nwobble = 3\n")).unwrap_err();
        match e {
            CliError::UnknownKey { key, origin, .. } => {
                assert_eq!(key, "wobble");
                assert_eq!(origin, "config file line 2");
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_config(&argv(&["profile", "--q", "1"]), None),
            Err(CliError::UnknownKey { .. })
        ));
    }

    #[test]
    fn file_syntax_and_commands() {
        assert!(matches!(parse_config(&argv(&["kq"]), Some("q = [1.5,")), Err(CliError::ConfigFile(_))));
        assert!(matches!(parse_config(&argv(&["nope"]), None), Err(CliError::UnknownCommand(_))));
        assert!(matches!(parse_config(&[], None), Err(CliError::Usage(_))));
        assert!(matches!(parse_config(&argv(&["kq", "--tol", "-1"]), None), Err(CliError::BadParameter { .. })));
        let cfg = parse_config(&[], Some("command = \"kq\"\nq = [1.5, 1.8]\nx_end = 1")).unwrap_err();
        assert!(matches!(cfg, CliError::UnknownKey { .. }));
        let cfg = parse_config(&[], Some("command = \"profile\"\nx_end = 1.5")).unwrap();
        assert_eq!(cfg.f64("x-end").unwrap(), 1.5);
        let cfg = parse_config(&argv(&["surface-suite"]), Some("fixtures = [\"plane\", \"torus 2,1\"]")).unwrap();
        assert_eq!(cfg.name_list("fixtures"), vec!["plane", "torus 2,1"]);
    }

    #[test]
    fn config_path_is_split_off() {
        let (rest, path) = take_config_path(&argv(&["kq", "--config", "a.toml", "--q", "1.5"])).unwrap();
        assert_eq!(rest, argv(&["kq", "--q", "1.5"]));
        assert_eq!(path.as_deref(), Some("a.toml"));
    }
}
