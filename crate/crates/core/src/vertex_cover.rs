//! k-vertex-cover maintained through a bounded-depth search tree, plus the
//! static depth-first traversal solver.
//!
//! The tree lives inside the full binary tree of depth `kmax`. Every inner
//! node branches on an edge its candidate set leaves uncovered; the left
//! child adds the smaller endpoint, the right child the larger one. A node is
//! a leaf exactly when its candidate set covers the graph or it sits at depth
//! `kmax`.

use crate::change::ChangeOp;
use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::maintainer::Maintainer;
use crate::param::ParamState;

#[derive(Clone, Debug, PartialEq, Eq)]
struct TreeNode {
    /// Vertex this node adds to its parent's candidate set (`None` at the root).
    added: Option<usize>,
    branch: Option<(usize, usize)>,
    children: Option<Box<[TreeNode; 2]>>,
}

impl TreeNode {
    fn leaf(added: Option<usize>) -> Self {
        TreeNode {
            added,
            branch: None,
            children: None,
        }
    }

    fn count(&self) -> usize {
        1 + self
            .children
            .as_ref()
            .map_or(0, |c| c[0].count() + c[1].count())
    }
}

/// Read-only view of one tree node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeView {
    /// Root path as `L`/`R` letters; empty for the root.
    pub path: String,
    pub depth: usize,
    pub candidates: Vec<usize>,
    pub branch: Option<(usize, usize)>,
    pub is_leaf: bool,
    pub is_cover: bool,
}

pub(crate) fn covers(graph: &DynGraph, cand: &[usize]) -> bool {
    graph
        .edges()
        .all(|(u, v)| cand.contains(&u) || cand.contains(&v))
}

pub(crate) fn smallest_uncovered(graph: &DynGraph, cand: &[usize]) -> Option<(usize, usize)> {
    graph
        .edges()
        .find(|&(u, v)| !cand.contains(&u) && !cand.contains(&v))
}

/// Turns `node` into the canonical subtree for its candidate set: a leaf if
/// the set covers the graph or the depth bound is hit, otherwise a branch on
/// the lexicographically smallest uncovered edge with both children expanded.
fn expand(node: &mut TreeNode, cand: &mut Vec<usize>, depth: usize, kmax: usize, graph: &DynGraph) {
    node.branch = None;
    node.children = None;
    if depth == kmax {
        return;
    }
    let Some((u, v)) = smallest_uncovered(graph, cand) else {
        return;
    };
    let mut children = Box::new([TreeNode::leaf(Some(u)), TreeNode::leaf(Some(v))]);
    for child in children.iter_mut() {
        cand.push(child.added.unwrap());
        expand(child, cand, depth + 1, kmax, graph);
        cand.pop();
    }
    node.branch = Some((u, v));
    node.children = Some(children);
}

/// Expands every non-cover leaf above the depth bound in the subtree.
fn repair(node: &mut TreeNode, cand: &mut Vec<usize>, depth: usize, kmax: usize, graph: &DynGraph) {
    match node.children.as_mut() {
        Some(children) => {
            for child in children.iter_mut() {
                cand.push(child.added.unwrap());
                repair(child, cand, depth + 1, kmax, graph);
                cand.pop();
            }
        }
        None => {
            if depth < kmax && !covers(graph, cand) {
                expand(node, cand, depth, kmax, graph);
            }
        }
    }
}

/// The maintained search tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTree {
    kmax: usize,
    root: TreeNode,
}

impl SearchTree {
    pub fn new(kmax: usize) -> Self {
        SearchTree {
            kmax,
            root: TreeNode::leaf(None),
        }
    }

    /// Builds the canonical tree for `graph` from scratch.
    pub fn build(graph: &DynGraph, kmax: usize) -> Self {
        let mut t = SearchTree::new(kmax);
        expand(&mut t.root, &mut Vec::new(), 0, kmax, graph);
        t
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn node_count(&self) -> usize {
        self.root.count()
    }

    /// Update after `(u, v)` was added to `graph`.
    pub fn on_insert(&mut self, graph: &DynGraph, u: usize, v: usize) {
        fn walk(node: &mut TreeNode, cand: &mut Vec<usize>, depth: usize, kmax: usize, g: &DynGraph, e: (usize, usize)) {
            match node.children.as_mut() {
                Some(children) => {
                    for child in children.iter_mut() {
                        cand.push(child.added.unwrap());
                        walk(child, cand, depth + 1, kmax, g, e);
                        cand.pop();
                    }
                }
                None => {
                    // a leaf above kmax was a cover, so (u, v) is its only gap
                    if depth < kmax && !cand.contains(&e.0) && !cand.contains(&e.1) {
                        expand(node, cand, depth, kmax, g);
                    }
                }
            }
        }
        walk(&mut self.root, &mut Vec::new(), 0, self.kmax, graph, (u.min(v), u.max(v)));
    }

    /// Update after `(u, v)` was removed from `graph`.
    ///
    /// Every node branching on the removed edge (root-most first) takes over
    /// the subtree of its left child, which drops the smaller endpoint from
    /// all candidate sets below and lifts the subtree one level. Leaves that
    /// stopped being covers are then expanded again.
    pub fn on_delete(&mut self, graph: &DynGraph, u: usize, v: usize) {
        fn walk(node: &mut TreeNode, cand: &mut Vec<usize>, depth: usize, kmax: usize, g: &DynGraph, e: (usize, usize)) {
            if node.branch == Some(e) {
                let children = node.children.take().expect("inner node without children");
                let [left, _right] = *children;
                node.branch = left.branch;
                node.children = left.children;
                repair(node, cand, depth, kmax, g);
                return;
            }
            if let Some(children) = node.children.as_mut() {
                for child in children.iter_mut() {
                    cand.push(child.added.unwrap());
                    walk(child, cand, depth + 1, kmax, g, e);
                    cand.pop();
                }
            }
        }
        walk(&mut self.root, &mut Vec::new(), 0, self.kmax, graph, (u.min(v), u.max(v)));
    }

    /// True iff some leaf of depth at most `k` holds a vertex cover.
    pub fn query(&self, graph: &DynGraph, k: usize) -> bool {
        self.cover_within(graph, k).is_some()
    }

    /// A covering candidate set of minimum depth, if one of depth ≤ `k` exists.
    pub fn cover_within(&self, graph: &DynGraph, k: usize) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        fn walk(node: &TreeNode, cand: &mut Vec<usize>, k: usize, g: &DynGraph, best: &mut Option<Vec<usize>>) {
            if cand.len() > k {
                return;
            }
            match node.children.as_ref() {
                Some(children) => {
                    for child in children.iter() {
                        cand.push(child.added.unwrap());
                        walk(child, cand, k, g, best);
                        cand.pop();
                    }
                }
                None => {
                    if covers(g, cand) && best.as_ref().is_none_or(|b| cand.len() < b.len()) {
                        *best = Some(cand.clone());
                    }
                }
            }
        }
        walk(&self.root, &mut Vec::new(), k, graph, &mut best);
        best
    }

    /// Pre-order listing of all nodes.
    pub fn nodes(&self, graph: &DynGraph) -> Vec<NodeView> {
        let mut out = Vec::new();
        fn walk(node: &TreeNode, path: &mut String, cand: &mut Vec<usize>, g: &DynGraph, out: &mut Vec<NodeView>) {
            out.push(NodeView {
                path: path.clone(),
                depth: cand.len(),
                candidates: cand.clone(),
                branch: node.branch,
                is_leaf: node.children.is_none(),
                is_cover: covers(g, cand),
            });
            if let Some(children) = node.children.as_ref() {
                for (letter, child) in ['L', 'R'].into_iter().zip(children.iter()) {
                    path.push(letter);
                    cand.push(child.added.unwrap());
                    walk(child, path, cand, g, out);
                    cand.pop();
                    path.pop();
                }
            }
        }
        walk(&self.root, &mut String::new(), &mut Vec::new(), graph, &mut out);
        out
    }

    /// Checks the structural invariants against `graph`.
    pub fn audit(&self, graph: &DynGraph) -> Result<(), String> {
        fn walk(node: &TreeNode, cand: &mut Vec<usize>, kmax: usize, g: &DynGraph, path: &mut String) -> Result<(), String> {
            let depth = cand.len();
            if depth > kmax {
                return Err(format!("node {path:?} below depth bound {kmax}"));
            }
            let cover = covers(g, cand);
            match (node.branch, node.children.as_ref()) {
                (Some((u, v)), Some(children)) => {
                    if cover || depth == kmax {
                        return Err(format!("node {path:?} should be a leaf"));
                    }
                    if u >= v || !g.has_edge(u, v) {
                        return Err(format!("node {path:?} branches on non-edge ({u}, {v})"));
                    }
                    if cand.contains(&u) || cand.contains(&v) {
                        return Err(format!("node {path:?} branches on covered edge ({u}, {v})"));
                    }
                    if children[0].added != Some(u) || children[1].added != Some(v) {
                        return Err(format!("children of {path:?} do not add ({u}, {v})"));
                    }
                    for (letter, child) in ['L', 'R'].into_iter().zip(children.iter()) {
                        path.push(letter);
                        cand.push(child.added.unwrap());
                        walk(child, cand, kmax, g, path)?;
                        cand.pop();
                        path.pop();
                    }
                    Ok(())
                }
                (None, None) => {
                    if !cover && depth < kmax {
                        Err(format!("leaf {path:?} at depth {depth} is not a cover"))
                    } else {
                        Ok(())
                    }
                }
                _ => Err(format!("node {path:?} has mismatched branch and children")),
            }
        }
        if self.root.added.is_some() {
            return Err("root adds a vertex".into());
        }
        walk(&self.root, &mut Vec::new(), self.kmax, graph, &mut String::new())?;
        let bound = (1usize << (self.kmax + 1)) - 1;
        if self.node_count() > bound {
            return Err(format!("{} nodes exceed {bound}", self.node_count()));
        }
        Ok(())
    }
}

/// Vertex-cover maintainer over the search tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcState {
    graph: DynGraph,
    tree: SearchTree,
    param: ParamState,
}

impl VcState {
    pub fn new(n: usize, kmax: usize) -> Result<Self> {
        Ok(VcState {
            graph: DynGraph::new(n),
            tree: SearchTree::new(kmax),
            param: ParamState::new(kmax)?,
        })
    }

    pub fn graph(&self) -> &DynGraph {
        &self.graph
    }

    pub fn tree(&self) -> &SearchTree {
        &self.tree
    }

    pub fn param(&self) -> ParamState {
        self.param
    }

    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if self.graph.insert_edge(u, v)? {
            self.tree.on_insert(&self.graph, u, v);
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if self.graph.delete_edge(u, v)? {
            self.tree.on_delete(&self.graph, u, v);
        }
        Ok(())
    }

    /// Cover of size at most `k` (`k ≤ kmax`).
    pub fn query(&self, k: usize) -> bool {
        self.tree.query(&self.graph, k.min(self.tree.kmax()))
    }
}

impl Maintainer for VcState {
    fn problem(&self) -> &'static str {
        "vcover"
    }

    fn apply(&mut self, op: &ChangeOp) -> Result<()> {
        match *op {
            ChangeOp::InsE(u, v) => self.insert_edge(u, v),
            ChangeOp::DelE(u, v) => self.delete_edge(u, v),
            ChangeOp::IncK => {
                self.param.inc();
                Ok(())
            }
            ChangeOp::DecK => {
                self.param.dec();
                Ok(())
            }
            ChangeOp::Query => Ok(()),
            _ => Err(Error::Unsupported {
                op: op.to_string(),
                problem: self.problem(),
            }),
        }
    }

    fn answer(&self) -> Result<bool> {
        Ok(self.query(self.param.k()))
    }

    fn audit(&self) -> Result<(), String> {
        self.tree.audit(&self.graph)
    }
}

/// Result of the static traversal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalOutcome {
    pub cover: Option<Vec<usize>>,
    /// Forward and backtrack moves performed.
    pub steps: usize,
}

/// Depth-first search-tree traversal holding only the current root path:
/// `branches[i]` is the edge used at level `i + 1`, `chosen[i]` the vertex
/// taken from it.
pub fn vc_para_t_solve(graph: &DynGraph, k: usize) -> TraversalOutcome {
    let mut branches: Vec<(usize, usize)> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut steps = 0;
    loop {
        if covers(graph, &chosen) {
            return TraversalOutcome {
                cover: Some(chosen),
                steps,
            };
        }
        steps += 1;
        if chosen.len() < k {
            let e = smallest_uncovered(graph, &chosen).expect("non-cover leaves an edge uncovered");
            branches.push(e);
            chosen.push(e.0);
            continue;
        }
        // deepest level where the left endpoint was taken
        let Some(level) = (0..chosen.len()).rev().find(|&l| chosen[l] == branches[l].0) else {
            return TraversalOutcome { cover: None, steps };
        };
        branches.truncate(level + 1);
        chosen.truncate(level);
        chosen.push(branches[level].1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Minimum cover size by subset enumeration.
    fn min_cover(g: &DynGraph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|mask| g.edges().all(|(u, v)| mask & (1 << (u - 1)) != 0 || mask & (1 << (v - 1)) != 0))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn leaf_sets(s: &VcState) -> Vec<Vec<usize>> {
        s.tree
            .nodes(&s.graph)
            .into_iter()
            .filter(|n| n.is_leaf)
            .map(|n| n.candidates)
            .collect()
    }

    #[test]
    fn first_insertion_branches_root() {
        let mut s = VcState::new(4, 2).unwrap();
        s.insert_edge(1, 2).unwrap();
        let nodes = s.tree.nodes(&s.graph);
        assert_eq!(nodes[0].branch, Some((1, 2)));
        assert_eq!(leaf_sets(&s), vec![vec![1], vec![2]]);
        assert!(nodes.iter().filter(|n| n.is_leaf).all(|n| n.is_cover));
        s.audit().unwrap();
    }

    #[test]
    fn second_disjoint_edge_gives_four_leaves() {
        let mut s = VcState::new(4, 2).unwrap();
        s.insert_edge(1, 2).unwrap();
        s.insert_edge(3, 4).unwrap();
        assert_eq!(
            leaf_sets(&s),
            vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]
        );
        assert_eq!(min_cover(&s.graph), 2);
        assert!(!s.query(1));
        assert!(s.query(2));
        s.audit().unwrap();

        s.delete_edge(3, 4).unwrap();
        assert_eq!(leaf_sets(&s), vec![vec![1], vec![2]]);
        assert!(s.query(1));
        s.audit().unwrap();
    }

    #[test]
    fn covered_insertion_keeps_shape() {
        let mut s = VcState::new(4, 2).unwrap();
        s.insert_edge(1, 2).unwrap();
        s.insert_edge(1, 3).unwrap();
        let before = s.tree.node_count();
        s.insert_edge(1, 4).unwrap();
        // leaf {1} already covers (1,4); leaf {2,3} does not, but it is at kmax
        assert_eq!(s.tree.node_count(), before);
        s.audit().unwrap();
    }

    #[test]
    fn deleting_only_edge_collapses_tree() {
        let mut s = VcState::new(3, 2).unwrap();
        s.insert_edge(1, 2).unwrap();
        s.delete_edge(1, 2).unwrap();
        assert_eq!(s.tree.node_count(), 1);
        assert!(s.query(1));
        s.audit().unwrap();
    }

    #[test]
    fn star_spoke_deletion_repairs_path() {
        // centre 1 is the smaller endpoint of every spoke
        let mut s = VcState::new(5, 3).unwrap();
        for v in [2, 3, 4] {
            s.insert_edge(1, v).unwrap();
        }
        s.insert_edge(2, 5).unwrap();
        s.audit().unwrap();
        s.delete_edge(1, 2).unwrap();
        s.audit().unwrap();
        for k in 1..=3 {
            assert_eq!(s.query(k), min_cover(&s.graph) <= k, "k={k}");
        }
        // the same after deleting a spoke whose removal strips the centre
        s.delete_edge(1, 3).unwrap();
        s.audit().unwrap();
        for k in 1..=3 {
            assert_eq!(s.query(k), min_cover(&s.graph) <= k, "k={k}");
        }
    }

    #[test]
    fn triangle_and_matching_queries() {
        let mut s = VcState::new(3, 2).unwrap();
        for (u, v) in [(1, 2), (2, 3), (1, 3)] {
            s.insert_edge(u, v).unwrap();
        }
        assert!(!s.query(1));
        assert!(s.query(2));

        let mut m = VcState::new(6, 2).unwrap();
        for (u, v) in [(1, 2), (3, 4), (5, 6)] {
            m.insert_edge(u, v).unwrap();
        }
        assert!(!m.query(2));
        assert!(VcState::new(5, 3).unwrap().query(1));
    }

    #[test]
    fn no_op_changes_leave_state_identical() {
        let mut s = VcState::new(4, 2).unwrap();
        s.insert_edge(1, 2).unwrap();
        let snapshot = s.clone();
        s.insert_edge(2, 1).unwrap();
        s.delete_edge(3, 4).unwrap();
        assert_eq!(s, snapshot);
    }

    #[test]
    fn out_of_domain_is_rejected_without_change() {
        let mut s = VcState::new(3, 2).unwrap();
        let snapshot = s.clone();
        assert!(s.apply(&ChangeOp::InsE(1, 4)).is_err());
        assert!(s.apply(&ChangeOp::InsE(2, 2)).is_err());
        assert!(s.apply(&ChangeOp::SetB(0u32.into())).is_err());
        assert_eq!(s, snapshot);
    }

    #[test]
    fn traversal_examples() {
        let path = DynGraph::from_edges(3, &[(1, 2), (2, 3)]).unwrap();
        let out = vc_para_t_solve(&path, 1);
        assert_eq!(out.cover, Some(vec![2]));
        assert!(out.steps <= 8);

        let tri = DynGraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let out = vc_para_t_solve(&tri, 1);
        assert_eq!(out.cover, None);
        assert!(out.steps <= 8);

        let empty = DynGraph::new(4);
        assert_eq!(vc_para_t_solve(&empty, 1).cover, Some(vec![]));
    }

    #[test]
    fn matches_rebuild_after_changes() {
        let mut s = VcState::new(5, 3).unwrap();
        let ops = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 4)];
        for &(u, v) in &ops {
            s.insert_edge(u, v).unwrap();
            s.audit().unwrap();
        }
        for &(u, v) in ops.iter().rev() {
            s.delete_edge(u, v).unwrap();
            s.audit().unwrap();
            for k in 1..=3 {
                assert_eq!(s.query(k), min_cover(&s.graph) <= k);
            }
        }
        assert_eq!(s.tree, SearchTree::build(&s.graph, 3));
    }
}
