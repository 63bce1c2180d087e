//! Feedback vertex set by degree reductions and short-cycle branching.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::change::ChangeOp;
use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::maintainer::Maintainer;
use crate::param::ParamState;

/// Undirected multigraph with edge multiplicity at most two and self-loops.
///
/// Vertices keep their original names; reductions only remove vertices or
/// replace paths by edges between surviving vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    alive: Vec<bool>,
    /// Multiplicity of each pair `(u, v)`, `u < v`.
    mult: BTreeMap<(usize, usize), u8>,
    adj: Vec<BTreeSet<usize>>,
    loops: BTreeSet<usize>,
}

impl MultiGraph {
    pub fn from_graph(g: &DynGraph) -> Self {
        let mut m = MultiGraph {
            n: g.n(),
            alive: vec![true; g.n() + 1],
            mult: BTreeMap::new(),
            adj: vec![BTreeSet::new(); g.n() + 1],
            loops: BTreeSet::new(),
        };
        m.alive[0] = false;
        for (u, v) in g.edges() {
            m.add_edge(u, v);
        }
        m
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(|&v| self.alive[v])
    }

    /// Distinct vertex pairs joined by at least one edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult.keys().copied()
    }

    /// Pairs joined by two edges.
    pub fn parallel(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mult.iter().filter(|(_, &m)| m == 2).map(|(&e, _)| e)
    }

    pub fn loops(&self) -> &BTreeSet<usize> {
        &self.loops
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u8 {
        self.mult.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// Loops count twice.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().map(|&w| self.multiplicity(v, w) as usize).sum::<usize>()
            + 2 * self.loops.contains(&v) as usize
    }

    pub fn is_edgeless(&self) -> bool {
        self.mult.is_empty() && self.loops.is_empty()
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        let e = (u.min(v), u.max(v));
        let m = self.mult.entry(e).or_insert(0);
        *m = (*m + 1).min(2);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_vertex(&mut self, v: usize) {
        for w in std::mem::take(&mut self.adj[v]) {
            self.adj[w].remove(&v);
            self.mult.remove(&(v.min(w), v.max(w)));
        }
        self.loops.remove(&v);
        self.alive[v] = false;
    }

    fn peel(&mut self) -> bool {
        let mut changed = false;
        let mut queue: VecDeque<usize> = self.vertices().filter(|&v| self.degree(v) <= 1).collect();
        while let Some(v) = queue.pop_front() {
            if !self.alive[v] || self.degree(v) > 1 {
                continue;
            }
            let nbrs: Vec<usize> = self.neighbours(v).collect();
            self.remove_vertex(v);
            changed = true;
            queue.extend(nbrs.into_iter().filter(|&w| self.degree(w) <= 1));
        }
        changed
    }

    /// Contracts the largest loop-free degree-2 vertex that has a neighbour.
    fn contract_one(&mut self) -> bool {
        let Some(x) = self
            .vertices()
            .filter(|&v| self.degree(v) == 2 && !self.loops.contains(&v) && !self.adj[v].is_empty())
            .max()
        else {
            return false;
        };
        let nbrs: Vec<usize> = self.neighbours(x).collect();
        self.remove_vertex(x);
        match nbrs[..] {
            [a] => {
                self.loops.insert(a);
            }
            [a, b] => self.add_edge(a, b),
            _ => unreachable!("degree two"),
        }
        true
    }
}

/// Removes attached trees and contracts degree-2 paths until neither applies.
pub fn fvs_reduce(mg: &MultiGraph) -> MultiGraph {
    let mut m = mg.clone();
    loop {
        m.peel();
        if !m.contract_one() {
            return m;
        }
    }
}

/// Depth-bounded BFS trees from every root: `B` holds the tree edges and
/// `I` the triples `(root, v, w)` with `v` on the tree path from the root to `w`.
#[derive(Clone, Debug)]
pub struct BfsCycleSearch {
    pub k0: usize,
    trees: BTreeMap<usize, BfsTree>,
}

#[derive(Clone, Debug)]
struct BfsTree {
    parent: Vec<Option<usize>>,
    depth: Vec<Option<usize>>,
    /// `ancestors[w]` has bit `v - 1` set iff `v` lies on the path root..w.
    ancestors: Vec<u64>,
}

impl BfsCycleSearch {
    pub fn new(mg: &MultiGraph, k0: usize) -> Self {
        let mut trees = BTreeMap::new();
        for root in mg.vertices() {
            let mut t = BfsTree {
                parent: vec![None; mg.n + 1],
                depth: vec![None; mg.n + 1],
                ancestors: vec![0; mg.n + 1],
            };
            t.depth[root] = Some(0);
            t.ancestors[root] = 1 << (root - 1);
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                let d = t.depth[x].unwrap();
                if d == k0 {
                    continue;
                }
                for y in mg.neighbours(x) {
                    if t.depth[y].is_none() {
                        t.depth[y] = Some(d + 1);
                        t.parent[y] = Some(x);
                        t.ancestors[y] = t.ancestors[x] | 1 << (y - 1);
                        queue.push_back(y);
                    }
                }
            }
            trees.insert(root, t);
        }
        BfsCycleSearch { k0, trees }
    }

    /// Tree edges `(parent, child)` of the tree rooted at `root`.
    pub fn tree_edges(&self, root: usize) -> Vec<(usize, usize)> {
        let t = &self.trees[&root];
        (1..t.parent.len())
            .filter_map(|c| t.parent[c].map(|p| (p, c)))
            .collect()
    }

    /// `(root, v, w)` in `I`.
    pub fn on_path(&self, root: usize, v: usize, w: usize) -> bool {
        self.trees[&root].ancestors[w] & (1 << (v - 1)) != 0
    }

    fn path_from_root(&self, root: usize, w: usize) -> Vec<usize> {
        let t = &self.trees[&root];
        let mut path = vec![w];
        let mut x = w;
        while let Some(p) = t.parent[x] {
            path.push(p);
            x = p;
        }
        path.reverse();
        path
    }

    /// Checks `I` against paths rebuilt from `B`.
    pub fn check(&self) -> Result<(), String> {
        for (&root, t) in &self.trees {
            for w in 1..t.depth.len() {
                if t.depth[w].is_none() {
                    continue;
                }
                let path = self.path_from_root(root, w);
                if path[0] != root || path.len() != t.depth[w].unwrap() + 1 {
                    return Err(format!("tree path {root}..{w} malformed"));
                }
                let mask = path.iter().fold(0u64, |m, &v| m | 1 << (v - 1));
                if mask != t.ancestors[w] {
                    return Err(format!("I disagrees with B for ({root}, _, {w})"));
                }
            }
        }
        Ok(())
    }

    /// Shortest cycle closed by a non-tree edge within the depth bound, over
    /// all roots in order. The cycle runs from the lowest common ancestor of
    /// the edge's endpoints.
    pub fn shortest_cycle(&self, mg: &MultiGraph) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for (&root, t) in &self.trees {
            for (x, y) in mg.edges() {
                let (Some(dx), Some(dy)) = (t.depth[x], t.depth[y]) else {
                    continue;
                };
                if t.parent[x] == Some(y) || t.parent[y] == Some(x) || dx + dy + 1 > 2 * self.k0 {
                    continue;
                }
                let common = t.ancestors[x] & t.ancestors[y];
                let lca = (1..t.depth.len())
                    .filter(|&v| common & (1 << (v - 1)) != 0)
                    .max_by_key(|&v| t.depth[v])
                    .unwrap();
                let px = self.path_from_root(root, x);
                let py = self.path_from_root(root, y);
                let dl = t.depth[lca].unwrap();
                let mut cycle: Vec<usize> = px[dl..].to_vec();
                cycle.extend(py[dl + 1..].iter().rev());
                if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                    best = Some(cycle);
                }
            }
        }
        best.filter(|c| c.len() <= 2 * self.k0)
    }
}

/// A loop, else a parallel pair, else a shortest cycle of length at most
/// `2 k0` found by the BFS search.
pub fn fvs_find_short_cycle(mg: &MultiGraph, k0: usize) -> Option<Vec<usize>> {
    if let Some(&v) = mg.loops().iter().next() {
        return Some(vec![v]);
    }
    if let Some((u, v)) = mg.parallel().next() {
        return (k0 >= 1).then(|| vec![u, v]);
    }
    BfsCycleSearch::new(mg, k0).shortest_cycle(mg)
}

/// Result of the branching solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FvsOutcome {
    /// Sorted feedback vertex set of size at most `k`, if one exists.
    pub witness: Option<Vec<usize>>,
    /// Branching nodes explored.
    pub nodes: usize,
}

/// Search-tree bound `(2k)^(k+1)` on explored nodes, for `k ≥ 1`.
pub fn fvs_node_bound(k: usize) -> u128 {
    (2 * k as u128).pow(k as u32 + 1)
}

pub fn fvs_solve(graph: &DynGraph, k: usize) -> FvsOutcome {
    fn branch(mg: MultiGraph, left: usize, chosen: &mut Vec<usize>, nodes: &mut usize) -> bool {
        *nodes += 1;
        let mg = fvs_reduce(&mg);
        if mg.is_edgeless() {
            return true;
        }
        if left == 0 {
            return false;
        }
        let Some(cycle) = fvs_find_short_cycle(&mg, left) else {
            return false;
        };
        for v in cycle {
            let mut next = mg.clone();
            next.remove_vertex(v);
            chosen.push(v);
            if branch(next, left - 1, chosen, nodes) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    let mut nodes = 0;
    let found = branch(MultiGraph::from_graph(graph), k, &mut chosen, &mut nodes);
    chosen.sort_unstable();
    FvsOutcome {
        witness: found.then_some(chosen),
        nodes,
    }
}

/// Directed graph in which every vertex `v` is split into `v_in → v_out`
/// and every arc `(u, v)` becomes `u_out → v_in`. Removing a vertex drops
/// its internal arc, which cuts every path through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitGraph {
    n: usize,
    out: Vec<BTreeSet<usize>>,
    removed: BTreeSet<usize>,
}

impl SplitGraph {
    pub fn new(n: usize) -> Self {
        SplitGraph {
            n,
            out: vec![BTreeSet::new(); n + 1],
            removed: BTreeSet::new(),
        }
    }

    /// Both orientations of every edge of `g`.
    pub fn from_undirected(g: &DynGraph) -> Self {
        let mut s = SplitGraph::new(g.n());
        for (u, v) in g.edges() {
            s.insert_arc(u, v);
            s.insert_arc(v, u);
        }
        s
    }

    pub fn insert_arc(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
    }

    pub fn delete_arc(&mut self, u: usize, v: usize) {
        self.out[u].remove(&v);
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(&v)
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(BTreeSet::len).sum()
    }

    pub fn remove_vertex(&mut self, v: usize) {
        self.removed.insert(v);
    }

    pub fn restore_vertex(&mut self, v: usize) {
        self.removed.remove(&v);
    }

    /// Split-graph node ids: `2(v-1)` for `v_in`, `2(v-1)+1` for `v_out`.
    fn successors(&self, node: usize) -> Vec<usize> {
        let v = node / 2 + 1;
        if node.is_multiple_of(2) {
            if self.removed.contains(&v) {
                Vec::new()
            } else {
                vec![node + 1]
            }
        } else {
            self.out[v].iter().map(|&w| 2 * (w - 1)).collect()
        }
    }

    /// Is `b_out` reachable from `a_in`?
    pub fn reach(&self, a: usize, b: usize) -> Result<bool> {
        for x in [a, b] {
            if x == 0 || x > self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
            if self.removed.contains(&x) {
                return Err(Error::Instance(format!("vertex {x} is removed")));
            }
        }
        let target = 2 * (b - 1) + 1;
        let mut seen = vec![false; 2 * self.n];
        let mut queue = VecDeque::from([2 * (a - 1)]);
        seen[2 * (a - 1)] = true;
        while let Some(x) = queue.pop_front() {
            if x == target {
                return Ok(true);
            }
            for y in self.successors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok(false)
    }

    /// The undirected graph these arcs encode is acyclic once `removed` is
    /// taken out: no edge `(u, v)` has `u` reachable from `v` without it.
    pub fn is_forest_without(&mut self, removed: &[usize]) -> bool {
        for &v in removed {
            self.remove_vertex(v);
        }
        let mut acyclic = true;
        'edges: for u in 1..=self.n {
            if self.removed.contains(&u) {
                continue;
            }
            let targets: Vec<usize> = self.out[u].range(u + 1..).copied().collect();
            for v in targets {
                if self.removed.contains(&v) {
                    continue;
                }
                self.delete_arc(u, v);
                self.delete_arc(v, u);
                let cyc = self.reach(v, u).unwrap();
                self.insert_arc(u, v);
                self.insert_arc(v, u);
                if cyc {
                    acyclic = false;
                    break 'edges;
                }
            }
        }
        for &v in removed {
            self.restore_vertex(v);
        }
        acyclic
    }
}

/// Feedback-vertex-set maintainer: recomputes with the branching solver
/// after every change and keeps a split graph in step with the input.
#[derive(Clone, Debug)]
pub struct FvsState {
    graph: DynGraph,
    split: SplitGraph,
    param: ParamState,
    outcome: FvsOutcome,
}

impl FvsState {
    pub fn new(n: usize, kmax: usize) -> Result<Self> {
        if n > 64 {
            return Err(Error::Guard(format!("feedback vertex set supports at most 64 vertices, got {n}")));
        }
        let graph = DynGraph::new(n);
        let param = ParamState::new(kmax)?;
        Ok(FvsState {
            split: SplitGraph::new(n),
            outcome: fvs_solve(&graph, param.k()),
            graph,
            param,
        })
    }

    pub fn graph(&self) -> &DynGraph {
        &self.graph
    }

    pub fn param(&self) -> ParamState {
        self.param
    }

    pub fn outcome(&self) -> &FvsOutcome {
        &self.outcome
    }

    fn refresh(&mut self) {
        self.outcome = fvs_solve(&self.graph, self.param.k());
    }
}

impl Maintainer for FvsState {
    fn problem(&self) -> &'static str {
        "fvs"
    }

    fn apply(&mut self, op: &ChangeOp) -> Result<()> {
        let changed = match *op {
            ChangeOp::InsE(u, v) => {
                let c = self.graph.insert_edge(u, v)?;
                self.split.insert_arc(u, v);
                self.split.insert_arc(v, u);
                c
            }
            ChangeOp::DelE(u, v) => {
                let c = self.graph.delete_edge(u, v)?;
                self.split.delete_arc(u, v);
                self.split.delete_arc(v, u);
                c
            }
            ChangeOp::IncK => self.param.inc(),
            ChangeOp::DecK => self.param.dec(),
            ChangeOp::Query => false,
            _ => {
                return Err(Error::Unsupported {
                    op: op.to_string(),
                    problem: self.problem(),
                })
            }
        };
        if changed {
            self.refresh();
        }
        Ok(())
    }

    fn answer(&self) -> Result<bool> {
        Ok(self.outcome.witness.is_some())
    }

    fn audit(&self) -> Result<(), String> {
        if self.split.arc_count() != 2 * self.graph.edge_count()
            || self.graph.edges().any(|(u, v)| !self.split.has_arc(u, v) || !self.split.has_arc(v, u))
        {
            return Err("split graph out of sync with the input".into());
        }
        let k = self.param.k();
        if self.outcome.nodes as u128 > fvs_node_bound(k) {
            return Err(format!("{} branching nodes exceed (2k)^(k+1) for k = {k}", self.outcome.nodes));
        }
        if let Some(w) = &self.outcome.witness {
            if w.len() > k || !self.split.clone().is_forest_without(w) {
                return Err(format!("witness {w:?} is not a feedback vertex set of size ≤ {k}"));
            }
        }
        Ok(())
    }
}
