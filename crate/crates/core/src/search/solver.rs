//! Exact maximum independent sets in the conflict hypergraph, enumerating
//! every optimum.
//!
//! A node is a pair (included, candidates). Conflicts that would be
//! completed by two candidates given the included vertices form an effective
//! graph; a greedy clique cover of the candidates in that graph bounds the
//! node. Nodes whose bound is strictly below the incumbent are cut, so every
//! optimum is reached. The tree is split breadth-first into a deterministic
//! frontier, and each frontier node is solved independently from the same
//! seed value, which makes results independent of scheduling.

use std::collections::HashMap;

use super::bits::Bits;
use super::conflicts::{ConflictStructure, SearchConstraints};

/// Labeled optima kept per search; beyond this the result is truncated.
pub const MAX_SOLUTIONS: usize = 10_000;

/// Frontier nodes to aim for when splitting.
pub(crate) const SPLIT_TARGET: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct NodeWords {
    pub inc: Vec<u64>,
    pub cand: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct SubResult {
    pub best: usize,
    pub truncated: bool,
    pub nodes: u64,
    /// Optimal vertex sets at `best`, as word vectors.
    pub solutions: Vec<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub(crate) struct Plan {
    pub seed: usize,
    pub split_nodes: u64,
    pub frontier: Vec<NodeWords>,
}

#[derive(Clone, Copy)]
struct Node<const W: usize> {
    inc: Bits<W>,
    cand: Bits<W>,
}

enum Conflicts<const W: usize> {
    /// `adj[v]`: vertices sharing a conflict pair with `v`.
    Pairs(Vec<Bits<W>>),
    /// `tri[v * nv + u]`: vertices completing a conflict triple with `v, u`.
    Triples(Vec<Bits<W>>),
    /// Every conflict as a bitset.
    General(Vec<Bits<W>>),
}

pub(crate) struct Problem<const W: usize> {
    nv: usize,
    masks: Vec<u64>,
    conflicts: Conflicts<W>,
    /// Vertices that must accompany each vertex in a stable family.
    requires: Option<Vec<Bits<W>>>,
    nonintersecting: bool,
    /// Vertices allowed at all (pool filters and unsatisfiable requirements).
    allowed: Bits<W>,
}

impl<const W: usize> Problem<W> {
    pub(crate) fn new(structure: &ConflictStructure, constraints: &SearchConstraints) -> Self {
        let nv = structure.vertices.len();
        assert!(nv <= Bits::<W>::CAPACITY);
        let masks: Vec<u64> = structure.vertices.iter().map(|v| v.bits()).collect();
        let d = structure.params.d;
        let conflicts = match d {
            2 => {
                let mut adj = vec![Bits::empty(); nv];
                for e in &structure.conflicts {
                    let (a, b) = (e[0] as usize, e[1] as usize);
                    adj[a].set(b);
                    adj[b].set(a);
                }
                Conflicts::Pairs(adj)
            }
            3 => {
                let mut tri = vec![Bits::empty(); nv * nv];
                for e in &structure.conflicts {
                    let (a, b, c) = (e[0] as usize, e[1] as usize, e[2] as usize);
                    for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                        tri[x * nv + y].set(z);
                        tri[y * nv + x].set(z);
                    }
                }
                Conflicts::Triples(tri)
            }
            _ => {
                let edges = structure
                    .conflicts
                    .iter()
                    .map(|e| {
                        let mut b = Bits::empty();
                        for &v in e {
                            b.set(v as usize);
                        }
                        b
                    })
                    .collect();
                Conflicts::General(edges)
            }
        };

        let mut allowed = Bits::prefix(nv);
        if let Some(u) = constraints.max_member_size {
            for (v, m) in masks.iter().enumerate() {
                if m.count_ones() as usize > u {
                    allowed.clear(v);
                }
            }
        }
        let requires = constraints.require_stable.then(|| {
            let index: HashMap<u64, usize> =
                masks.iter().enumerate().map(|(v, &m)| (m, v)).collect();
            let mut req = vec![Bits::empty(); nv];
            for (v, &m) in masks.iter().enumerate() {
                // stability follows from the elementary moves j -> j-1
                for j in 2..=structure.n {
                    let (bj, bi) = (1u64 << (j - 1), 1u64 << (j - 2));
                    if m & bj != 0 && m & bi == 0 {
                        match index.get(&(m & !bj | bi)) {
                            Some(&w) => req[v].set(w),
                            None => allowed.clear(v),
                        }
                    }
                }
            }
            req
        });
        Problem {
            nv,
            masks,
            conflicts,
            requires,
            nonintersecting: constraints.require_nonintersecting,
            allowed,
        }
    }

    fn root(&self) -> Option<Node<W>> {
        self.propagate(Node { inc: Bits::empty(), cand: self.allowed })
    }

    /// Drops candidates whose requirements cannot be met and rejects nodes
    /// where an included vertex has lost one.
    fn propagate(&self, mut node: Node<W>) -> Option<Node<W>> {
        let Some(req) = &self.requires else { return Some(node) };
        loop {
            let avail = node.inc.or(&node.cand);
            let mut changed = false;
            for v in node.cand.iter().collect::<Vec<_>>() {
                if !req[v].is_subset(&avail) {
                    node.cand.clear(v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let avail = node.inc.or(&node.cand);
        node.inc.iter().all(|v| req[v].is_subset(&avail)).then_some(node)
    }

    /// Fills `eff[v]` for candidates `v`: candidates that cannot join
    /// together with `v` given the included set.
    fn effective<'a>(&'a self, node: &Node<W>, buf: &'a mut Vec<Bits<W>>) -> &'a [Bits<W>] {
        match &self.conflicts {
            Conflicts::Pairs(adj) => adj,
            Conflicts::Triples(tri) => {
                buf.clear();
                buf.resize(self.nv, Bits::empty());
                let inc: Vec<usize> = node.inc.iter().collect();
                for v in node.cand.iter() {
                    let row = &tri[v * self.nv..(v + 1) * self.nv];
                    let mut acc = Bits::empty();
                    for &u in &inc {
                        acc.or_assign(&row[u]);
                    }
                    acc.and_assign(&node.cand);
                    buf[v] = acc;
                }
                buf
            }
            Conflicts::General(edges) => {
                buf.clear();
                buf.resize(self.nv, Bits::empty());
                let avail = node.inc.or(&node.cand);
                for e in edges {
                    if !e.is_subset(&avail) {
                        continue;
                    }
                    let mut rest = *e;
                    rest.andnot_assign(&node.inc);
                    if rest.count() == 2 {
                        let mut it = rest.iter();
                        let (a, b) = (it.next().unwrap(), it.next().unwrap());
                        buf[a].set(b);
                        buf[b].set(a);
                    }
                }
                buf
            }
        }
    }

    /// Greedy clique cover size of the candidates, stopping at `enough`.
    fn cover(cand: &Bits<W>, eff: &[Bits<W>], enough: usize) -> usize {
        let mut rem = *cand;
        let mut count = 0;
        while let Some(v) = rem.first() {
            rem.clear(v);
            let mut q = eff[v].and(&rem);
            while let Some(u) = q.first() {
                rem.clear(u);
                q.clear(u);
                q.and_assign(&eff[u]);
            }
            count += 1;
            if count >= enough {
                break;
            }
        }
        count
    }

    fn branch_vertex(cand: &Bits<W>, eff: &[Bits<W>]) -> usize {
        let mut best = (0, usize::MAX);
        for v in cand.iter() {
            let deg = eff[v].and(cand).count();
            if best.1 == usize::MAX || deg > best.0 {
                best = (deg, v);
            }
        }
        best.1
    }

    fn children(&self, node: &Node<W>, eff: &[Bits<W>], v: usize) -> [Option<Node<W>>; 2] {
        let mut inc = node.inc;
        inc.set(v);
        let mut cand = node.cand;
        cand.clear(v);
        let mut without = cand;
        without.andnot_assign(&eff[v]);
        [
            self.propagate(Node { inc, cand: without }),
            self.propagate(Node { inc: node.inc, cand }),
        ]
    }

    fn leaf_ok(&self, inc: &Bits<W>) -> bool {
        if !self.nonintersecting {
            return true;
        }
        let members: Vec<u64> = inc.iter().map(|v| self.masks[v]).collect();
        members
            .iter()
            .enumerate()
            .any(|(a, x)| members[a + 1..].iter().any(|y| x & y == 0))
    }

    fn is_independent(&self, set: &Bits<W>) -> bool {
        match &self.conflicts {
            Conflicts::Pairs(adj) => set.iter().all(|v| adj[v].and(set).is_empty()),
            Conflicts::Triples(tri) => {
                let vs: Vec<usize> = set.iter().collect();
                vs.iter().enumerate().all(|(a, &x)| {
                    vs[a + 1..].iter().all(|&y| tri[x * self.nv + y].and(set).is_empty())
                })
            }
            Conflicts::General(edges) => edges.iter().all(|e| !e.is_subset(set)),
        }
    }

    /// Whether a vertex set is a feasible solution under every constraint.
    fn feasible(&self, set: &Bits<W>) -> bool {
        if !set.is_subset(&self.allowed) || !self.is_independent(set) || !self.leaf_ok(set) {
            return false;
        }
        match &self.requires {
            Some(req) => set.iter().all(|v| req[v].is_subset(set)),
            None => true,
        }
    }

    /// Largest of the greedy solution and the feasible hints, zero if none.
    fn seed(&self, hints: &[Vec<usize>]) -> usize {
        let mut best = 0;
        if let Some(mut node) = self.root() {
            let mut buf = Vec::new();
            loop {
                let Some(v) = node.cand.first() else { break };
                let eff = self.effective(&node, &mut buf);
                match self.children(&node, eff, v) {
                    [Some(next), _] => node = next,
                    [None, Some(next)] => node = next,
                    [None, None] => break,
                }
            }
            if node.cand.is_empty() && self.feasible(&node.inc) {
                best = node.inc.count();
            }
        }
        for hint in hints {
            let mut set = Bits::empty();
            for &v in hint {
                set.set(v);
            }
            if self.feasible(&set) {
                best = best.max(set.count());
            }
        }
        best
    }

    pub(crate) fn plan(&self, hints: &[Vec<usize>], target: usize) -> Plan {
        let seed = self.seed(hints);
        let mut split_nodes = 0u64;
        let mut frontier: Vec<Node<W>> = self.root().into_iter().collect();
        let mut buf = Vec::new();
        while frontier.len() < target {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            let mut expanded = false;
            for node in &frontier {
                if node.cand.is_empty() {
                    next.push(*node);
                    continue;
                }
                split_nodes += 1;
                let eff = self.effective(node, &mut buf);
                let size = node.inc.count();
                if size + node.cand.count() < seed
                    || size + Self::cover(&node.cand, eff, seed.saturating_sub(size)) < seed
                {
                    continue;
                }
                expanded = true;
                let v = Self::branch_vertex(&node.cand, eff);
                next.extend(self.children(node, eff, v).into_iter().flatten());
            }
            frontier = next;
            if !expanded {
                break;
            }
        }
        Plan {
            seed,
            split_nodes,
            frontier: frontier
                .into_iter()
                .map(|n| NodeWords { inc: n.inc.0.to_vec(), cand: n.cand.0.to_vec() })
                .collect(),
        }
    }

    pub(crate) fn solve(&self, start: &NodeWords, seed: usize) -> SubResult {
        let node = Node {
            inc: Bits::from_words(&start.inc).expect("checked width"),
            cand: Bits::from_words(&start.cand).expect("checked width"),
        };
        let mut run = Run {
            problem: self,
            best: seed,
            solutions: Vec::new(),
            truncated: false,
            nodes: 0,
            scratch: Vec::new(),
        };
        run.dfs(node, 0);
        SubResult {
            best: run.best,
            truncated: run.truncated,
            nodes: run.nodes,
            solutions: run.solutions.into_iter().map(|b| b.0.to_vec()).collect(),
        }
    }
}

struct Run<'a, const W: usize> {
    problem: &'a Problem<W>,
    best: usize,
    solutions: Vec<Bits<W>>,
    truncated: bool,
    nodes: u64,
    scratch: Vec<Vec<Bits<W>>>,
}

impl<const W: usize> Run<'_, W> {
    fn record(&mut self, inc: Bits<W>) {
        let size = inc.count();
        if size < self.best || !self.problem.leaf_ok(&inc) {
            return;
        }
        if size > self.best {
            self.best = size;
            self.solutions.clear();
            self.truncated = false;
        }
        if self.solutions.len() < MAX_SOLUTIONS {
            self.solutions.push(inc);
        } else {
            self.truncated = true;
        }
    }

    fn dfs(&mut self, node: Node<W>, depth: usize) {
        self.nodes += 1;
        let size = node.inc.count();
        if node.cand.is_empty() {
            self.record(node.inc);
            return;
        }
        if size + node.cand.count() < self.best {
            return;
        }
        if self.scratch.len() <= depth {
            self.scratch.push(Vec::new());
        }
        let mut buf = std::mem::take(&mut self.scratch[depth]);
        let problem = self.problem;
        let eff = problem.effective(&node, &mut buf);
        let need = self.best.saturating_sub(size);
        if need > 0 && Problem::cover(&node.cand, eff, need) < need {
            self.scratch[depth] = buf;
            return;
        }
        let v = Problem::branch_vertex(&node.cand, eff);
        let kids = problem.children(&node, eff, v);
        self.scratch[depth] = buf;
        for child in kids.into_iter().flatten() {
            self.dfs(child, depth + 1);
        }
    }
}

/// Width-dispatched problem.
pub(crate) enum Engine {
    W1(Problem<1>),
    W2(Problem<2>),
    W4(Problem<4>),
    W8(Problem<8>),
    W16(Problem<16>),
}

/// Largest vertex count any engine width supports.
pub(crate) const MAX_VERTICES: usize = 64 * 16;

macro_rules! dispatch {
    ($engine:expr, $p:ident => $body:expr) => {
        match $engine {
            Engine::W1($p) => $body,
            Engine::W2($p) => $body,
            Engine::W4($p) => $body,
            Engine::W8($p) => $body,
            Engine::W16($p) => $body,
        }
    };
}

impl Engine {
    pub(crate) fn new(structure: &ConflictStructure, constraints: &SearchConstraints) -> Engine {
        let nv = structure.vertices.len();
        assert!(nv <= MAX_VERTICES, "vertex count above engine capacity");
        match nv.div_ceil(64) {
            0 | 1 => Engine::W1(Problem::new(structure, constraints)),
            2 => Engine::W2(Problem::new(structure, constraints)),
            3 | 4 => Engine::W4(Problem::new(structure, constraints)),
            5..=8 => Engine::W8(Problem::new(structure, constraints)),
            _ => Engine::W16(Problem::new(structure, constraints)),
        }
    }

    pub(crate) fn words(&self) -> usize {
        match self {
            Engine::W1(_) => 1,
            Engine::W2(_) => 2,
            Engine::W4(_) => 4,
            Engine::W8(_) => 8,
            Engine::W16(_) => 16,
        }
    }

    pub(crate) fn plan(&self, hints: &[Vec<usize>], target: usize) -> Plan {
        dispatch!(self, p => p.plan(hints, target))
    }

    pub(crate) fn solve(&self, start: &NodeWords, seed: usize) -> SubResult {
        dispatch!(self, p => p.solve(start, seed))
    }
}

/// Vertex indices set in a word vector.
pub(crate) fn word_indices(words: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, &w) in words.iter().enumerate() {
        let mut rest = w;
        while rest != 0 {
            out.push(i * 64 + rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
    }
    out
}
