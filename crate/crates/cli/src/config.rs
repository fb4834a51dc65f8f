//! Parsed invocation with a canonical `key=value` text form.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use extrinsic::parabolic::Ambient;
use extrinsic::rootsys::Family;
use extrinsic::Rat;
use thiserror::Error;

/// Largest rank accepted anywhere on the command line.
pub const MAX_RANK: usize = 8;

/// Default cap on `dim` of the ambient `gl(V)` or `o(V)`.
pub const DEFAULT_CAP: usize = 250;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown subcommand `{0}`")]
    UnknownCommand(String),
    #[error("malformed token `{0}`, expected key=value")]
    Token(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {msg}")]
    Value { key: String, msg: String },
    #[error("rank range {0}..{1} is outside 1..={MAX_RANK}")]
    RankRange(usize, usize),
    #[error("missing `{0}`")]
    Missing(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Rigidity,
    Cohomology,
    Prolong,
    Decompose,
    Pde,
}

impl Command {
    pub const ALL: [Command; 5] = [
        Command::Rigidity,
        Command::Cohomology,
        Command::Prolong,
        Command::Decompose,
        Command::Pde,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Rigidity => "rigidity",
            Command::Cohomology => "cohomology",
            Command::Prolong => "prolong",
            Command::Decompose => "decompose",
            Command::Pde => "pde",
        }
    }

    fn takes_algebra(self) -> bool {
        matches!(self, Command::Cohomology | Command::Prolong | Command::Decompose)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub families: Vec<Family>,
    /// Inclusive rank range; a single rank for the algebra commands.
    pub ranks: (usize, usize),
    pub max_sigma: usize,
    pub sigma: Vec<usize>,
    /// Highest weight in ω-coordinates; `None` means the adjoint module.
    pub weight: Option<Vec<Rat>>,
    pub ambient: Ambient,
    pub kostant_only: bool,
    pub cap: usize,
    /// Fixture name or path of an operator-system file.
    pub fixture: Option<String>,
    pub params: Vec<(String, Rat)>,
    pub n: Option<i64>,
    pub expect: Option<PathBuf>,
    pub tsv: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            families: Vec::new(),
            ranks: (1, 1),
            max_sigma: 2,
            sigma: Vec::new(),
            weight: None,
            ambient: Ambient::Gl,
            kostant_only: false,
            cap: DEFAULT_CAP,
            fixture: None,
            params: Vec::new(),
            n: None,
            expect: None,
            tsv: false,
            out: None,
        }
    }

    pub fn family(&self) -> Result<Family, ConfigError> {
        self.families.first().copied().ok_or(ConfigError::Missing("family"))
    }

    pub fn rank(&self) -> usize {
        self.ranks.0
    }

    /// Range checks shared by every construction path.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let (lo, hi) = self.ranks;
        if lo == 0 || lo > hi || hi > MAX_RANK {
            return Err(ConfigError::RankRange(lo, hi));
        }
        match self.command {
            Command::Rigidity => {}
            Command::Pde => {
                if self.fixture.is_none() {
                    return Err(ConfigError::Missing("fixture"));
                }
            }
            _ => {
                if self.families.len() != 1 {
                    return Err(ConfigError::Missing("family"));
                }
                if lo != hi {
                    return Err(ConfigError::Value {
                        key: "rank".into(),
                        msg: "a single rank is needed".into(),
                    });
                }
                if self.sigma.is_empty() {
                    return Err(ConfigError::Missing("sigma"));
                }
            }
        }
        Ok(())
    }

    /// One line, fixed key order, only keys meaningful for the command.
    pub fn canonical(&self) -> String {
        let mut parts = vec![self.command.name().to_string()];
        let join = |v: Vec<String>| v.join(",");
        match self.command {
            Command::Rigidity => {
                parts.push(format!("family={}", join(self.families.iter().map(|f| f.to_string()).collect())));
                parts.push(format!("rank={}..{}", self.ranks.0, self.ranks.1));
                parts.push(format!("max-sigma={}", self.max_sigma));
            }
            c if c.takes_algebra() => {
                parts.push(format!("family={}", join(self.families.iter().map(|f| f.to_string()).collect())));
                parts.push(format!("rank={}", self.ranks.0));
                parts.push(format!("sigma={}", join(self.sigma.iter().map(|s| s.to_string()).collect())));
                let w = match &self.weight {
                    None => "adjoint".to_string(),
                    Some(w) => join(w.iter().map(|x| x.to_string()).collect()),
                };
                parts.push(format!("weight={w}"));
                parts.push(format!("ambient={}", self.ambient));
                if c == Command::Cohomology {
                    parts.push(format!("kostant-only={}", self.kostant_only));
                }
                parts.push(format!("cap={}", self.cap));
            }
            _ => {
                parts.push(format!("fixture={}", self.fixture.as_deref().unwrap_or("")));
                for (k, v) in &self.params {
                    parts.push(format!("param={k}={v}"));
                }
                if let Some(n) = self.n {
                    parts.push(format!("N={n}"));
                }
                if let Some(e) = &self.expect {
                    parts.push(format!("expect={}", e.display()));
                }
            }
        }
        parts.push(format!("tsv={}", self.tsv));
        if let Some(o) = &self.out {
            parts.push(format!("out={}", o.display()));
        }
        parts.join(" ")
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

fn value_err(key: &str, msg: impl fmt::Display) -> ConfigError {
    ConfigError::Value {
        key: key.to_string(),
        msg: msg.to_string(),
    }
}

pub fn parse_list<T: FromStr>(key: &str, s: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|e| value_err(key, e)))
        .collect()
}

/// `N` or `M..N`.
pub fn parse_rank_range(s: &str) -> Result<(usize, usize), ConfigError> {
    let one = |x: &str| x.trim().parse::<usize>().map_err(|e| value_err("rank", e));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (one(a)?, one(b.trim_start_matches('='))?),
        None => {
            let r = one(s)?;
            (r, r)
        }
    };
    if lo == 0 || lo > hi || hi > MAX_RANK {
        return Err(ConfigError::RankRange(lo, hi));
    }
    Ok((lo, hi))
}

/// `NAME=RATIONAL`.
pub fn parse_param(s: &str) -> Result<(String, Rat), ConfigError> {
    let (k, v) = s.split_once('=').ok_or_else(|| value_err("param", format!("`{s}` is not NAME=VALUE")))?;
    let v = v.parse::<Rat>().map_err(|e| value_err("param", e))?;
    Ok((k.trim().to_string(), v))
}

fn parse_bool(key: &str, s: &str) -> Result<bool, ConfigError> {
    s.parse().map_err(|e| value_err(key, e))
}

impl FromStr for RunConfig {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<RunConfig, ConfigError> {
        let mut tokens = s.split_whitespace();
        let name = tokens.next().ok_or(ConfigError::Missing("subcommand"))?;
        let command = Command::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| ConfigError::UnknownCommand(name.to_string()))?;
        let mut c = RunConfig::new(command);
        for t in tokens {
            let (k, v) = t.split_once('=').ok_or_else(|| ConfigError::Token(t.to_string()))?;
            match k {
                "family" => c.families = parse_list(k, v)?,
                "rank" => c.ranks = parse_rank_range(v)?,
                "max-sigma" => c.max_sigma = v.parse().map_err(|e| value_err(k, e))?,
                "sigma" => c.sigma = parse_list(k, v)?,
                "weight" => c.weight = if v == "adjoint" { None } else { Some(parse_list(k, v)?) },
                "ambient" => c.ambient = v.parse().map_err(|e| value_err(k, e))?,
                "kostant-only" => c.kostant_only = parse_bool(k, v)?,
                "cap" => c.cap = v.parse().map_err(|e| value_err(k, e))?,
                "fixture" => c.fixture = Some(v.to_string()),
                "param" => c.params.push(parse_param(v)?),
                "N" => c.n = Some(v.parse().map_err(|e| value_err(k, e))?),
                "expect" => c.expect = Some(PathBuf::from(v)),
                "tsv" => c.tsv = parse_bool(k, v)?,
                "out" => c.out = Some(PathBuf::from(v)),
                _ => return Err(ConfigError::UnknownKey(k.to_string())),
            }
        }
        Ok(c)
    }
}
