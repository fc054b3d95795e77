//! Candidate pools and the conflict hypergraph over them.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::predicates::{for_each_cluster, ConditionParams};
use crate::set::{check_ground, k_subset_masks, ElementSet};

/// Default largest vertex pool accepted by [`build_conflicts`].
pub const DEFAULT_VERTEX_CAP: usize = 200;

/// Which subsets of `[n]` are candidate members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VertexPool {
    /// Every `k`-subset.
    Uniform { k: usize },
    /// Every subset with at most `u` elements, the empty set included.
    UpTo { u: usize },
    /// Every subset.
    PowerSet,
}

impl VertexPool {
    /// The pool in canonical member order.
    pub fn vertices(&self, n: usize) -> Result<Vec<ElementSet>> {
        check_ground(n)?;
        let top = match *self {
            VertexPool::Uniform { k } => {
                if k > n {
                    return Err(Error::argument(format!("k = {k} exceeds n = {n}")));
                }
                return ElementSet::all_of_size(n, k);
            }
            VertexPool::UpTo { u } => {
                if u > n {
                    return Err(Error::argument(format!("u = {u} exceeds n = {n}")));
                }
                u
            }
            VertexPool::PowerSet => n,
        };
        if n > 24 {
            return Err(Error::capability(format!("pool over [{n}] is too large to list")));
        }
        Ok((0..=top)
            .flat_map(|r| k_subset_masks(n, r))
            .map(|m| ElementSet::from_bits(n, m).expect("in range"))
            .collect())
    }

    /// Pool size without listing it.
    pub fn size(&self, n: usize) -> u128 {
        use crate::constructions::binomial;
        match *self {
            VertexPool::Uniform { k } => binomial(n, k),
            VertexPool::UpTo { u } => (0..=u.min(n)).map(|r| binomial(n, r)).sum(),
            VertexPool::PowerSet => 1u128 << n,
        }
    }
}

/// Side conditions on the families sought.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchConstraints {
    /// The family must be fixed by every left shift.
    pub require_stable: bool,
    /// The family must contain two disjoint members.
    pub require_nonintersecting: bool,
    /// Members have at most this many elements.
    pub max_member_size: Option<usize>,
}

/// Candidate members and every violating `d`-tuple among them, as indices
/// into `vertices`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictStructure {
    pub n: usize,
    pub params: ConditionParams,
    pub vertices: Vec<ElementSet>,
    pub conflicts: Vec<Vec<u32>>,
}

/// Enumerates every `d`-tuple of `vertices` with union of size at most `s`
/// and intersection smaller than `t`. Refuses pools larger than `cap`.
pub fn build_conflicts(
    n: usize,
    mut vertices: Vec<ElementSet>,
    params: ConditionParams,
    cap: usize,
) -> Result<ConflictStructure> {
    check_ground(n)?;
    if vertices.len() > cap {
        return Err(Error::capability(format!(
            "vertex pool has {} candidates, above the cap of {cap}",
            vertices.len()
        )));
    }
    if let Some(bad) = vertices.iter().find(|v| v.ground() != n) {
        return Err(Error::argument(format!("{bad} is not a subset of [{n}]")));
    }
    vertices.sort_unstable();
    vertices.dedup();
    let masks: Vec<u64> = vertices.iter().map(|v| v.bits()).collect();
    let mut conflicts = Vec::new();
    for_each_cluster(&masks, params, |tuple| {
        conflicts.push(tuple.iter().map(|&i| i as u32).collect());
        ControlFlow::Continue(())
    });
    Ok(ConflictStructure { n, params, vertices, conflicts })
}

impl ConflictStructure {
    /// FNV-1a over the structure's defining data, used to match checkpoints.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut feed = |x: u64| {
            for byte in x.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        };
        feed(self.n as u64);
        feed(self.params.d as u64);
        feed(self.params.s as u64);
        feed(self.params.t as u64);
        feed(self.vertices.len() as u64);
        for v in &self.vertices {
            feed(v.bits());
        }
        feed(self.conflicts.len() as u64);
        for c in &self.conflicts {
            for &i in c {
                feed(u64::from(i));
            }
        }
        h
    }
}
