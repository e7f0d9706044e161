//! Line-oriented checkpoint file for resumable searches.
//!
//! ```text
//! srdual-checkpoint 1
//! d 3
//! n 6
//! split 3
//! prune_with_bounds false
//! tasks 57
//! nodes 2093
//! evaluated 1210
//! s2_found 311
//! histogram 1:4 2:61 3:246
//! best 3 0,1,2,9
//! done 0 1 2 3 4
//! ```
//!
//! Counters and `best` cover the completed tasks only; the shallow prelude
//! that produces the task list is recomputed on resume. `best none` marks an
//! empty incumbent. `done` may repeat.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

const MAGIC: &str = "srdual-checkpoint 1";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Checkpoint {
    pub d: usize,
    pub n: usize,
    pub split: usize,
    pub prune_with_bounds: bool,
    pub tasks: usize,
    pub nodes: u64,
    pub evaluated: u64,
    pub s2_found: u64,
    pub histogram: BTreeMap<usize, u64>,
    /// Best diameter and its facet-index key.
    pub best: Option<(usize, Vec<usize>)>,
    pub done: BTreeSet<usize>,
}

impl Checkpoint {
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{MAGIC}");
        let _ = writeln!(out, "d {}", self.d);
        let _ = writeln!(out, "n {}", self.n);
        let _ = writeln!(out, "split {}", self.split);
        let _ = writeln!(out, "prune_with_bounds {}", self.prune_with_bounds);
        let _ = writeln!(out, "tasks {}", self.tasks);
        let _ = writeln!(out, "nodes {}", self.nodes);
        let _ = writeln!(out, "evaluated {}", self.evaluated);
        let _ = writeln!(out, "s2_found {}", self.s2_found);
        let hist: Vec<String> = self
            .histogram
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        let _ = writeln!(out, "histogram {}", hist.join(" "));
        match &self.best {
            Some((diam, key)) => {
                let key: Vec<String> = key.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "best {diam} {}", key.join(","));
            }
            None => out.push_str("best none\n"),
        }
        for chunk in self.done.iter().collect::<Vec<_>>().chunks(32) {
            let ids: Vec<String> = chunk.iter().map(|i| i.to_string()).collect();
            let _ = writeln!(out, "done {}", ids.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Checkpoint> {
        let bad = |line: usize, msg: &str| Error::Checkpoint(format!("line {line}: {msg}"));
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        match lines.next() {
            Some((_, MAGIC)) => {}
            _ => return Err(bad(1, "missing header")),
        }
        let mut cp = Checkpoint::default();
        let mut seen = BTreeSet::new();
        for (no, line) in lines {
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
            let num = |s: &str| s.parse::<u64>().map_err(|_| bad(no, "expected a number"));
            match key {
                "d" => cp.d = num(rest)? as usize,
                "n" => cp.n = num(rest)? as usize,
                "split" => cp.split = num(rest)? as usize,
                "tasks" => cp.tasks = num(rest)? as usize,
                "nodes" => cp.nodes = num(rest)?,
                "evaluated" => cp.evaluated = num(rest)?,
                "s2_found" => cp.s2_found = num(rest)?,
                "prune_with_bounds" => {
                    cp.prune_with_bounds = rest.parse().map_err(|_| bad(no, "expected a bool"))?
                }
                "histogram" => {
                    for item in rest.split_whitespace() {
                        let (k, v) = item.split_once(':').ok_or_else(|| bad(no, "bad bucket"))?;
                        cp.histogram.insert(num(k)? as usize, num(v)?);
                    }
                }
                "best" if rest == "none" => cp.best = None,
                "best" => {
                    let (diam, key) = rest.split_once(' ').unwrap_or((rest, ""));
                    let key = key
                        .split(',')
                        .filter(|s| !s.is_empty())
                        .map(|s| num(s).map(|v| v as usize))
                        .collect::<Result<Vec<_>>>()?;
                    cp.best = Some((num(diam)? as usize, key));
                }
                "done" => {
                    for id in rest.split_whitespace() {
                        cp.done.insert(num(id)? as usize);
                    }
                }
                other => return Err(bad(no, &format!("unknown key {other:?}"))),
            }
            seen.insert(key.to_string());
        }
        for required in ["d", "n", "split", "prune_with_bounds", "tasks", "best"] {
            if !seen.contains(required) {
                return Err(Error::Checkpoint(format!("missing {required}")));
            }
        }
        Ok(cp)
    }

    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        match std::fs::read_to_string(path) {
            Ok(text) => Checkpoint::parse(&text).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes through a temporary file and a rename.
    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.serialize())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut cp = Checkpoint {
            d: 3,
            n: 6,
            split: 3,
            prune_with_bounds: true,
            tasks: 40,
            nodes: 99,
            evaluated: 50,
            s2_found: 7,
            best: Some((3, vec![0, 1, 4])),
            ..Default::default()
        };
        cp.histogram.insert(2, 5);
        cp.histogram.insert(3, 2);
        cp.done.extend([0, 3, 39]);
        assert_eq!(Checkpoint::parse(&cp.serialize()).unwrap(), cp);
        cp.best = None;
        assert_eq!(Checkpoint::parse(&cp.serialize()).unwrap(), cp);
    }

    #[test]
    fn rejects_garbage() {
        assert!(Checkpoint::parse("hello").is_err());
        assert!(Checkpoint::parse("srdual-checkpoint 1\nd x\n").is_err());
        assert!(Checkpoint::parse("srdual-checkpoint 1\nd 3\n").is_err());
    }
}
