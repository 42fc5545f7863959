//! Line-oriented checkpoint files.
//!
//! ```text
//! # ucf fmin checkpoint
//! config n=4 k=3 ground_cap=12 seed=max-lex bound=1 lemma3=1 pair_cap=1 canonicity=1 interval=1
//! split 2
//! incumbent 5
//! stats nodes=310 bound=12 canonicity=40 lemma3=0
//! best 5
//! witness 1 2 3|1 2 4|1 3 4|2 3 4
//! done 1 2 3|1 2 4
//! ```
//!
//! `done` lines are the completed top-level prefixes, sorted, so shards of
//! the same run can be merged by concatenating and re-sorting them.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use super::SearchConfig;
use crate::error::{Error, Result};

pub(crate) type Code = Vec<u64>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Stats {
    pub nodes: u64,
    pub bound: u64,
    pub canonicity: u64,
    pub lemma3: u64,
}

impl Stats {
    pub fn add(&mut self, other: &Stats) {
        self.nodes += other.nodes;
        self.bound += other.bound;
        self.canonicity += other.canonicity;
        self.lemma3 += other.lemma3;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Checkpoint {
    pub config: Vec<(String, String)>,
    pub split_depth: usize,
    pub incumbent: Option<u64>,
    pub stats: Stats,
    pub best: Option<u64>,
    pub witnesses: BTreeSet<Code>,
    pub done: BTreeSet<Code>,
}

/// The fields two runs must agree on before one may resume the other.
pub(crate) fn config_fields(config: &SearchConfig) -> Vec<(String, String)> {
    let p = &config.pruning;
    let flag = |b: bool| if b { "1" } else { "0" }.to_string();
    vec![
        ("n".into(), config.n.to_string()),
        ("k".into(), config.k.to_string()),
        ("ground_cap".into(), config.effective_ground_cap().to_string()),
        ("seed".into(), config.seed.to_string()),
        ("bound".into(), flag(p.bound)),
        ("lemma3".into(), flag(p.lemma3)),
        ("pair_cap".into(), flag(p.pair_ground_cap)),
        ("canonicity".into(), flag(p.canonicity)),
        ("interval".into(), p.canonicity_interval.to_string()),
    ]
}

pub(crate) fn encode_code(code: &[u64]) -> String {
    code.iter()
        .map(|&b| {
            (0..64)
                .filter(|i| b >> i & 1 == 1)
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("|")
}

fn decode_code(text: &str, line: usize) -> Result<Code> {
    text.split('|')
        .map(|set| {
            let mut bits = 0u64;
            for tok in set.split_whitespace() {
                let x: u32 = tok.parse().map_err(|_| bad(line, format!("bad label `{tok}`")))?;
                if !(1..=64).contains(&x) {
                    return Err(bad(line, format!("label {x} out of range")));
                }
                bits |= 1 << (x - 1);
            }
            Ok(bits)
        })
        .collect()
}

fn bad(line: usize, msg: String) -> Error {
    Error::Checkpoint(format!("line {line}: {msg}"))
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn parse_opt(s: &str, line: usize) -> Result<Option<u64>> {
    if s == "none" {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| bad(line, format!("bad value `{s}`")))
}

impl Checkpoint {
    pub fn to_text(&self) -> String {
        let mut out = String::from("# ucf fmin checkpoint\nconfig");
        for (key, value) in &self.config {
            out.push_str(&format!(" {key}={value}"));
        }
        out.push('\n');
        out.push_str(&format!("split {}\n", self.split_depth));
        out.push_str(&format!("incumbent {}\n", opt(self.incumbent)));
        let s = &self.stats;
        out.push_str(&format!(
            "stats nodes={} bound={} canonicity={} lemma3={}\n",
            s.nodes, s.bound, s.canonicity, s.lemma3
        ));
        out.push_str(&format!("best {}\n", opt(self.best)));
        for w in &self.witnesses {
            out.push_str(&format!("witness {}\n", encode_code(w)));
        }
        for d in &self.done {
            out.push_str(&format!("done {}\n", encode_code(d)));
        }
        out
    }

    /// `Ok(None)` for an empty file.
    pub fn parse(text: &str) -> Result<Option<Checkpoint>> {
        let mut cp = Checkpoint::default();
        let mut seen_config = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let (head, rest) = raw.split_once(' ').unwrap_or((raw, ""));
            match head {
                "config" => {
                    seen_config = true;
                    for kv in rest.split_whitespace() {
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| bad(line, format!("expected key=value, got `{kv}`")))?;
                        cp.config.push((k.to_string(), v.to_string()));
                    }
                }
                "split" => {
                    cp.split_depth = rest
                        .trim()
                        .parse()
                        .map_err(|_| bad(line, format!("bad split depth `{rest}`")))?
                }
                "incumbent" => cp.incumbent = parse_opt(rest.trim(), line)?,
                "best" => cp.best = parse_opt(rest.trim(), line)?,
                "stats" => {
                    for kv in rest.split_whitespace() {
                        let (k, v) = kv
                            .split_once('=')
                            .ok_or_else(|| bad(line, format!("expected key=value, got `{kv}`")))?;
                        let v: u64 = v.parse().map_err(|_| bad(line, format!("bad count `{v}`")))?;
                        match k {
                            "nodes" => cp.stats.nodes = v,
                            "bound" => cp.stats.bound = v,
                            "canonicity" => cp.stats.canonicity = v,
                            "lemma3" => cp.stats.lemma3 = v,
                            _ => return Err(bad(line, format!("unknown counter `{k}`"))),
                        }
                    }
                }
                "witness" => {
                    cp.witnesses.insert(decode_code(rest, line)?);
                }
                "done" => {
                    cp.done.insert(decode_code(rest, line)?);
                }
                other => return Err(bad(line, format!("unknown record `{other}`"))),
            }
        }
        if !seen_config {
            if cp == Checkpoint::default() {
                return Ok(None);
            }
            return Err(Error::Checkpoint("missing config line".into()));
        }
        Ok(Some(cp))
    }

    /// Reads `path`; a missing or empty file means a fresh start.
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        match fs::read_to_string(path) {
            Ok(text) => Checkpoint::parse(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, self.to_text())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Refuses to resume under a different configuration.
    pub fn check_matches(&self, expected: &[(String, String)]) -> Result<()> {
        let mut diffs = Vec::new();
        for (key, want) in expected {
            match self.config.iter().find(|(k, _)| k == key) {
                Some((_, got)) if got == want => {}
                Some((_, got)) => diffs.push(format!("{key}: checkpoint {got}, requested {want}")),
                None => diffs.push(format!("{key}: missing from checkpoint, requested {want}")),
            }
        }
        for (key, got) in &self.config {
            if !expected.iter().any(|(k, _)| k == key) {
                diffs.push(format!("{key}: checkpoint {got}, not a known setting"));
            }
        }
        if diffs.is_empty() {
            Ok(())
        } else {
            Err(Error::Checkpoint(format!(
                "configuration differs from checkpoint: {}",
                diffs.join("; ")
            )))
        }
    }
}
