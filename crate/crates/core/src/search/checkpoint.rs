//! Resumable search state as a line-oriented text file.
//!
//! ```text
//! setlab-checkpoint/1
//! params {"n":6,...}
//! fingerprint 0123456789abcdef
//! words 1
//! seed 10
//! split_nodes 511
//! node 0 <inc words> <cand words>
//! ...
//! done 0 <best> <truncated 0|1> <nodes> <solution count>
//! sol <words>
//! ...
//! end
//! ```
//!
//! Word vectors are lowercase hex words joined by `:`.

use std::fmt::Write as _;
use std::path::Path;

use super::solver::{NodeWords, SubResult};
use crate::error::{Error, Result};

pub const CHECKPOINT_MAGIC: &str = "setlab-checkpoint/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Checkpoint {
    pub params: String,
    pub fingerprint: u64,
    pub words: usize,
    pub seed: usize,
    pub split_nodes: u64,
    pub frontier: Vec<NodeWords>,
    pub results: Vec<Option<SubResult>>,
}

fn words_text(words: &[u64]) -> String {
    words.iter().map(|w| format!("{w:x}")).collect::<Vec<_>>().join(":")
}

fn parse_words(text: &str, width: usize) -> Result<Vec<u64>> {
    let words = text
        .split(':')
        .map(|w| u64::from_str_radix(w, 16).map_err(|_| bad(format!("bad word `{w}`"))))
        .collect::<Result<Vec<u64>>>()?;
    if words.len() != width {
        return Err(bad(format!("expected {width} words, found {}", words.len())));
    }
    Ok(words)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Checkpoint(msg.into())
}

impl Checkpoint {
    pub(crate) fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{CHECKPOINT_MAGIC}");
        let _ = writeln!(out, "params {}", self.params);
        let _ = writeln!(out, "fingerprint {:016x}", self.fingerprint);
        let _ = writeln!(out, "words {}", self.words);
        let _ = writeln!(out, "seed {}", self.seed);
        let _ = writeln!(out, "split_nodes {}", self.split_nodes);
        for (idx, node) in self.frontier.iter().enumerate() {
            let _ = writeln!(out, "node {idx} {} {}", words_text(&node.inc), words_text(&node.cand));
        }
        for (idx, res) in self.results.iter().enumerate() {
            let Some(r) = res else { continue };
            let _ = writeln!(
                out,
                "done {idx} {} {} {} {}",
                r.best,
                u8::from(r.truncated),
                r.nodes,
                r.solutions.len()
            );
            for s in &r.solutions {
                let _ = writeln!(out, "sol {}", words_text(s));
            }
        }
        out.push_str("end\n");
        out
    }

    pub(crate) fn parse(text: &str) -> Result<Checkpoint> {
        let mut lines = text.lines();
        if lines.next() != Some(CHECKPOINT_MAGIC) {
            return Err(bad(format!("missing `{CHECKPOINT_MAGIC}` header")));
        }
        let mut field = |name: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| bad(format!("missing `{name}` line")))?;
            line.strip_prefix(name)
                .and_then(|rest| rest.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| bad(format!("expected `{name}`, found `{line}`")))
        };
        let params = field("params")?;
        let fingerprint = u64::from_str_radix(&field("fingerprint")?, 16)
            .map_err(|_| bad("bad fingerprint"))?;
        let num = |s: String| s.parse::<u64>().map_err(|_| bad(format!("bad number `{s}`")));
        let words = num(field("words")?)? as usize;
        let seed = num(field("seed")?)? as usize;
        let split_nodes = num(field("split_nodes")?)?;

        let mut frontier = Vec::new();
        let mut results: Vec<Option<SubResult>> = Vec::new();
        let mut ended = false;
        let mut open: Option<(usize, usize)> = None;
        for line in lines {
            if ended {
                if line.trim().is_empty() {
                    continue;
                }
                return Err(bad("content after `end`"));
            }
            let parts: Vec<&str> = line.split(' ').collect();
            match parts.as_slice() {
                ["node", idx, inc, cand] => {
                    if idx.parse::<usize>().ok() != Some(frontier.len()) || !results.is_empty() {
                        return Err(bad(format!("out of order `{line}`")));
                    }
                    frontier.push(NodeWords {
                        inc: parse_words(inc, words)?,
                        cand: parse_words(cand, words)?,
                    });
                }
                ["done", idx, best, trunc, nodes, count] => {
                    if open.is_some_and(|(_, left)| left > 0) {
                        return Err(bad("missing solution lines"));
                    }
                    if results.is_empty() {
                        results = vec![None; frontier.len()];
                    }
                    let idx: usize = idx.parse().map_err(|_| bad("bad index"))?;
                    if idx >= frontier.len() || results[idx].is_some() {
                        return Err(bad(format!("bad result index {idx}")));
                    }
                    let count = num(count.to_string())? as usize;
                    results[idx] = Some(SubResult {
                        best: num(best.to_string())? as usize,
                        truncated: match *trunc {
                            "0" => false,
                            "1" => true,
                            _ => return Err(bad("bad truncation flag")),
                        },
                        nodes: num(nodes.to_string())?,
                        solutions: Vec::with_capacity(count),
                    });
                    open = Some((idx, count));
                }
                ["sol", w] => {
                    let Some((idx, left)) = open.as_mut() else {
                        return Err(bad("solution outside a result"));
                    };
                    if *left == 0 {
                        return Err(bad("too many solution lines"));
                    }
                    *left -= 1;
                    let words = parse_words(w, words)?;
                    results[*idx].as_mut().unwrap().solutions.push(words);
                }
                ["end"] => {
                    if open.is_some_and(|(_, left)| left > 0) {
                        return Err(bad("missing solution lines"));
                    }
                    ended = true;
                }
                _ => return Err(bad(format!("unrecognized line `{line}`"))),
            }
        }
        if !ended {
            return Err(bad("truncated file: missing `end`"));
        }
        if results.is_empty() {
            results = vec![None; frontier.len()];
        }
        Ok(Checkpoint { params, fingerprint, words, seed, split_nodes, frontier, results })
    }

    pub(crate) fn load(path: &Path) -> Result<Option<Checkpoint>> {
        match std::fs::read_to_string(path) {
            Ok(text) => Checkpoint::parse(&text).map(Some),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes through a temporary sibling so an interrupted write never
    /// leaves a torn file.
    pub(crate) fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        std::fs::write(&tmp, self.render())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}
