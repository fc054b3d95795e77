//! Exhaustive maximum-family search and desk-scale theorem checks.
//!
//! A question "how large can a `(d,s,t)`-conditionally intersecting family
//! drawn from this pool be" becomes a maximum independent set problem in the
//! hypergraph whose edges are the violating `d`-tuples.

mod bits;
mod checkpoint;
mod conflicts;
mod report;
mod solver;
mod verify;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use checkpoint::CHECKPOINT_MAGIC;
pub use conflicts::{
    build_conflicts, ConflictStructure, SearchConstraints, VertexPool, DEFAULT_VERTEX_CAP,
};
pub use report::{build_report, SearchParams, SearchReport, Status, Verdict};
pub use solver::MAX_SOLUTIONS;
pub use verify::{
    parse_range, plan_instances, verify_theorem, Instance, InstanceOutcome, Theorem, VerifyRequest,
};

use checkpoint::Checkpoint;
use solver::{word_indices, Engine, SubResult, SPLIT_TARGET};

use crate::canon::DEFAULT_CANON_LIMIT;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::predicates::ConditionParams;

/// Environment variable consulted for the worker count.
pub const THREADS_ENV: &str = "SETLAB_THREADS";

/// Knobs shared by every search.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Worker threads; `None` reads `SETLAB_THREADS`, then uses every core.
    pub threads: Option<usize>,
    pub vertex_cap: usize,
    pub canon_limit: usize,
    /// Resume from and save to this file.
    pub checkpoint: Option<PathBuf>,
    /// Solve at most this many pending frontier nodes, then stop.
    pub stop_after: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: None,
            vertex_cap: DEFAULT_VERTEX_CAP,
            canon_limit: DEFAULT_CANON_LIMIT,
            checkpoint: None,
            stop_after: None,
        }
    }
}

/// Worker count from an explicit value or `SETLAB_THREADS`.
pub fn resolve_threads(explicit: Option<usize>) -> Result<Option<usize>> {
    if let Some(t) = explicit {
        if t == 0 {
            return Err(Error::argument("thread count must be positive"));
        }
        return Ok(Some(t));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(Error::argument(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(None),
    }
}

/// A maximum-family question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchRequest {
    pub n: usize,
    pub pool: VertexPool,
    pub params: ConditionParams,
    pub constraints: SearchConstraints,
    /// Families known to be feasible, used only to seed the incumbent.
    #[serde(skip)]
    pub hints: Vec<SetFamily>,
}

/// Exact optimum with every labeled optimal family (up to the cap).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: usize,
    pub solutions: Vec<SetFamily>,
    pub truncated: bool,
    pub nodes: u64,
    pub wall_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Complete(SearchResult),
    /// Stopped early; the checkpoint holds the remaining work.
    Interrupted { completed: usize, total: usize },
}

impl SearchRequest {
    pub fn new(n: usize, pool: VertexPool, params: ConditionParams) -> Self {
        SearchRequest { n, pool, params, constraints: SearchConstraints::default(), hints: Vec::new() }
    }

    /// Builds the conflict structure over the pool.
    pub fn structure(&self, cap: usize) -> Result<ConflictStructure> {
        if let Some(u) = self.constraints.max_member_size {
            if u > self.n {
                return Err(Error::argument(format!("u = {u} exceeds n = {}", self.n)));
            }
        }
        let size = self.pool.size(self.n);
        if size > cap as u128 {
            return Err(Error::capability(format!(
                "vertex pool has {size} candidates, above the cap of {cap}"
            )));
        }
        let mut vertices = self.pool.vertices(self.n)?;
        if let Some(u) = self.constraints.max_member_size {
            vertices.retain(|v| v.len() <= u);
        }
        build_conflicts(self.n, vertices, self.params, cap)
    }

    fn checkpoint_key(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Runs a search request to completion or to the `stop_after` budget.
pub fn run_search(request: &SearchRequest, opts: &SearchOptions) -> Result<SearchOutcome> {
    let structure = request.structure(opts.vertex_cap)?;
    max_family(&structure, request, opts)
}

/// Solves the maximum independent set problem for `structure` under the
/// request's constraints.
pub fn max_family(
    structure: &ConflictStructure,
    request: &SearchRequest,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    let started = Instant::now();
    let engine = Engine::new(structure, &request.constraints);
    let key = request.checkpoint_key();
    let fingerprint = structure.fingerprint();

    let mut state = match opts.checkpoint.as_deref().map(Checkpoint::load).transpose()?.flatten() {
        Some(cp) => {
            if cp.params != key || cp.fingerprint != fingerprint || cp.words != engine.words() {
                return Err(Error::Checkpoint(
                    "checkpoint belongs to a different search".into(),
                ));
            }
            cp
        }
        None => {
            let hints = hint_indices(structure, &request.hints);
            let plan = engine.plan(&hints, SPLIT_TARGET);
            Checkpoint {
                params: key,
                fingerprint,
                words: engine.words(),
                seed: plan.seed,
                split_nodes: plan.split_nodes,
                results: vec![None; plan.frontier.len()],
                frontier: plan.frontier,
            }
        }
    };

    let pending: Vec<usize> = (0..state.frontier.len())
        .filter(|&i| state.results[i].is_none())
        .take(opts.stop_after.unwrap_or(usize::MAX))
        .collect();
    let threads = resolve_threads(opts.threads)?;
    let mut builder = rayon::ThreadPoolBuilder::new().stack_size(64 << 20);
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::capability(format!("cannot start worker threads: {e}")))?;
    let seed = state.seed;
    let solved: Vec<SubResult> = pool.install(|| {
        pending
            .par_iter()
            .map(|&i| engine.solve(&state.frontier[i], seed))
            .collect()
    });
    for (i, r) in pending.iter().zip(solved) {
        state.results[*i] = Some(r);
    }
    if let Some(path) = &opts.checkpoint {
        state.save(path)?;
    }
    let completed = state.results.iter().filter(|r| r.is_some()).count();
    if completed < state.frontier.len() {
        return Ok(SearchOutcome::Interrupted { completed, total: state.frontier.len() });
    }

    let results: Vec<&SubResult> = state.results.iter().map(|r| r.as_ref().unwrap()).collect();
    let optimum = results.iter().map(|r| r.best).max().unwrap_or(state.seed).max(state.seed);
    let mut truncated = false;
    let mut labeled: Vec<Vec<usize>> = Vec::new();
    for r in results.iter().filter(|r| r.best == optimum) {
        truncated |= r.truncated;
        labeled.extend(r.solutions.iter().map(|w| word_indices(w)));
    }
    labeled.sort();
    labeled.dedup();
    if labeled.len() > MAX_SOLUTIONS {
        labeled.truncate(MAX_SOLUTIONS);
        truncated = true;
    }
    let nodes = state.split_nodes + results.iter().map(|r| r.nodes).sum::<u64>();
    let solutions = labeled
        .into_iter()
        .map(|idx| SetFamily::new(structure.n, idx.into_iter().map(|v| structure.vertices[v])))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchOutcome::Complete(SearchResult {
        optimum,
        solutions,
        truncated,
        nodes,
        wall_ms: started.elapsed().as_millis() as u64,
    }))
}

fn hint_indices(structure: &ConflictStructure, hints: &[SetFamily]) -> Vec<Vec<usize>> {
    hints
        .iter()
        .filter_map(|h| {
            h.iter()
                .map(|m| structure.vertices.binary_search(m).ok())
                .collect::<Option<Vec<usize>>>()
        })
        .collect()
}

/// Convenience wrapper that insists on completion.
pub fn solve(request: &SearchRequest, opts: &SearchOptions) -> Result<SearchResult> {
    match run_search(request, opts)? {
        SearchOutcome::Complete(r) => Ok(r),
        SearchOutcome::Interrupted { completed, total } => Err(Error::Checkpoint(format!(
            "search stopped after {completed} of {total} subproblems"
        ))),
    }
}
