//! Search reports: soundness re-check, isomorphism dedup and rendering.

use std::fmt::Write as _;

use serde::Serialize;

use super::conflicts::{SearchConstraints, VertexPool};
use super::{SearchRequest, SearchResult};
use crate::canon::canonical_form_with_limit;
use crate::error::{Error, Result};
use crate::family::{is_stable, SetFamily};
use crate::predicates::is_conditionally_intersecting;
use crate::text::member_line;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<String>,
    pub n: usize,
    pub pool: VertexPool,
    pub d: usize,
    pub s: usize,
    pub t: usize,
    pub constraints: SearchConstraints,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Open,
    Info,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Open => "OPEN",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// Closed-form bound the optimum is compared with, if any.
    pub bound: Option<u128>,
    /// Where the bound and the expected extremal families come from.
    pub provenance: String,
    pub detail: Vec<String>,
    /// Number of labeled optimal families found.
    pub labeled_optima: usize,
    /// More than the solution cap of labeled optima existed.
    pub truncated: bool,
}

/// Field order is the JSON schema: params, optimum, extremal, nodes,
/// wall_ms, verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub params: SearchParams,
    pub optimum: usize,
    /// Optimal families up to isomorphism, in canonical form and sorted.
    pub extremal: Vec<SetFamily>,
    pub nodes: u64,
    pub wall_ms: u64,
    pub verdict: Verdict,
}

fn sort_families(v: &mut Vec<SetFamily>) {
    v.sort_by(|a, b| a.members().cmp(b.members()));
    v.dedup();
}

/// Re-checks every labeled optimum against the predicates and constraints,
/// then deduplicates them up to isomorphism. The verdict starts as `INFO`.
pub fn build_report(
    request: &SearchRequest,
    theorem: Option<&str>,
    result: &SearchResult,
    canon_limit: usize,
) -> Result<SearchReport> {
    let c = &request.constraints;
    for f in &result.solutions {
        let fail = |why: &str| Error::invariant(format!("reported optimum {f} {why}"));
        if f.len() != result.optimum {
            return Err(fail("has the wrong size"));
        }
        if !is_conditionally_intersecting(f, request.params) {
            return Err(fail("violates the condition"));
        }
        if c.require_stable && !is_stable(f) {
            return Err(fail("is not stable"));
        }
        if c.require_nonintersecting && !f.has_disjoint_pair() {
            return Err(fail("has no disjoint pair"));
        }
        if c.max_member_size.is_some_and(|u| f.iter().any(|m| m.len() > u)) {
            return Err(fail("has a member above the size cap"));
        }
    }

    let mut detail = Vec::new();
    let mut extremal = if request.n <= canon_limit {
        result
            .solutions
            .iter()
            .map(|f| canonical_form_with_limit(f, canon_limit))
            .collect::<Result<Vec<_>>>()?
    } else {
        detail.push(format!(
            "n = {} is above the canonicalization limit {canon_limit}; extremal lists labeled families",
            request.n
        ));
        result.solutions.clone()
    };
    sort_families(&mut extremal);

    Ok(SearchReport {
        params: SearchParams {
            theorem: theorem.map(str::to_string),
            n: request.n,
            pool: request.pool,
            d: request.params.d,
            s: request.params.s,
            t: request.params.t,
            constraints: *c,
        },
        optimum: result.optimum,
        extremal,
        nodes: result.nodes,
        wall_ms: result.wall_ms,
        verdict: Verdict {
            status: Status::Info,
            bound: None,
            provenance: "unconstrained search; no bound applies".into(),
            detail,
            labeled_optima: result.solutions.len(),
            truncated: result.truncated,
        },
    })
}

fn family_line(f: &SetFamily) -> String {
    f.iter().map(member_line).collect::<Vec<_>>().join(" ")
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// JSON with `wall_ms` zeroed, for byte comparisons across runs.
    pub fn to_json_without_time(&self) -> String {
        let mut r = self.clone();
        r.wall_ms = 0;
        r.to_json()
    }

    /// Human-readable form. Node counts and timing are left out so the text
    /// is identical across runs.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut out = String::new();
        if let Some(t) = &p.theorem {
            let _ = write!(out, "{t}: ");
        }
        let pool = match p.pool {
            VertexPool::Uniform { k } => format!("k={k}"),
            VertexPool::UpTo { u } => format!("|F|<={u}"),
            VertexPool::PowerSet => "all subsets".to_string(),
        };
        let _ = write!(out, "n={} {pool} d={} s={} t={}", p.n, p.d, p.s, p.t);
        let c = &p.constraints;
        if c.require_stable {
            out.push_str(" stable");
        }
        if c.require_nonintersecting {
            out.push_str(" nonintersecting");
        }
        if let Some(u) = c.max_member_size {
            let _ = write!(out, " max-size={u}");
        }
        out.push('\n');
        let v = &self.verdict;
        let _ = write!(out, "verdict: {}", v.status.as_str());
        let _ = write!(out, "  optimum: {}", self.optimum);
        if let Some(b) = v.bound {
            let _ = write!(out, "  bound: {b}");
        }
        out.push('\n');
        let _ = writeln!(out, "provenance: {}", v.provenance);
        let _ = writeln!(
            out,
            "extremal: {} up to isomorphism ({} labeled{})",
            self.extremal.len(),
            v.labeled_optima,
            if v.truncated { ", truncated" } else { "" }
        );
        for f in &self.extremal {
            let _ = writeln!(out, "  {}", family_line(f));
        }
        for d in &v.detail {
            let _ = writeln!(out, "note: {d}");
        }
        out
    }
}
