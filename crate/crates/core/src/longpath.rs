//! Simple s–t paths of length ℓ via colour coding.
//!
//! For every colouring λ of a universal family with `k = ℓ + 1` colours the
//! maintainer stores the relation `R_λ` of triples `(C, a, b)` such that some
//! simple a–b path has its vertices coloured bijectively onto `C`. A path of
//! length ℓ from s to t exists iff `([k], s, t) ∈ R_λ` for some λ.
//!
//! Relations are bit-packed: `rows[C * n + a]` holds the set of `b` as a mask.

use crate::change::ChangeOp;
use crate::colouring::{distinct_colourings, eval, ColouringIndex, FamilyParams};
use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::maintainer::Maintainer;
use crate::param::ParamState;

/// Largest colour count for which per-colouring relations are stored unless
/// explicitly overridden.
pub const DEFAULT_MAX_COLOURS: usize = 3;

/// Subset of the colours `1..=k`; bit `c - 1` stands for colour `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourSet(pub u32);

impl ColourSet {
    pub fn full(k: usize) -> Self {
        ColourSet((1u32 << k) - 1)
    }

    pub fn from_colours(colours: &[usize]) -> Self {
        ColourSet(colours.iter().fold(0, |m, &c| m | 1 << (c - 1)))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, colour: usize) -> bool {
        self.0 & (1 << (colour - 1)) != 0
    }
}

/// Colour-set path relation of one colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourPathRelation {
    pub lambda: ColouringIndex,
    /// Zero-based colour of vertex `x` at index `x - 1`.
    colours: Vec<u8>,
    k: usize,
    n: usize,
    rows: Vec<u64>,
}

impl ColourPathRelation {
    fn with_singletons(lambda: ColouringIndex, colours: Vec<u8>, k: usize) -> Self {
        let n = colours.len();
        let mut rows = vec![0u64; (1 << k) * n];
        for (a, &c) in colours.iter().enumerate() {
            rows[(1 << c) * n + a] = 1 << a;
        }
        ColourPathRelation {
            lambda,
            colours,
            k,
            n,
            rows,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Colour of vertex `x` in `1..=k`.
    pub fn colour(&self, x: usize) -> usize {
        self.colours[x - 1] as usize + 1
    }

    pub fn contains(&self, set: ColourSet, a: usize, b: usize) -> bool {
        self.rows[set.0 as usize * self.n + a - 1] & (1 << (b - 1)) != 0
    }

    /// Every stored triple `(C, a, b)` in lexicographic order.
    pub fn triples(&self) -> Vec<(ColourSet, usize, usize)> {
        let mut out = Vec::new();
        for set in 1..1usize << self.k {
            for a in 0..self.n {
                let row = self.rows[set * self.n + a];
                for b in 0..self.n {
                    if row & (1 << b) != 0 {
                        out.push((ColourSet(set as u32), a + 1, b + 1));
                    }
                }
            }
        }
        out
    }

    fn class_mask(&self, colour0: usize) -> u64 {
        self.colours
            .iter()
            .enumerate()
            .filter(|(_, &c)| c as usize == colour0)
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    /// Recomputes row `set` from rows of its one-smaller subsets.
    fn recompute_set(&mut self, set: usize, nbr: &[u64], classes: &[u64]) {
        let n = self.n;
        for a in 0..n {
            let mut row = 0u64;
            for c in 0..self.k {
                if set & (1 << c) == 0 {
                    continue;
                }
                let mut prev = self.rows[(set & !(1 << c)) * n + a];
                let mut reach = 0u64;
                while prev != 0 {
                    let b = prev.trailing_zeros() as usize;
                    prev &= prev - 1;
                    reach |= nbr[b];
                }
                row |= reach & classes[c];
            }
            self.rows[set * n + a] = row;
        }
    }

    /// Adds the triples created by the new edge `(u, v)`: a new simple path
    /// crosses the edge once, so it splits into an old `C'`-coloured a–u path
    /// and an old `C''`-coloured v–b path with disjoint colour sets.
    pub fn insert_edge(&mut self, u: usize, v: usize) {
        let n = self.n;
        let old = self.rows.clone();
        for (x, y) in [(u - 1, v - 1), (v - 1, u - 1)] {
            for left in 1..1usize << self.k {
                for a in 0..n {
                    if old[left * n + a] & (1 << x) == 0 {
                        continue;
                    }
                    let free = !left & ((1 << self.k) - 1);
                    // enumerate non-empty subsets of the free colours
                    let mut right = free;
                    while right != 0 {
                        self.rows[(left | right) * n + a] |= old[right * n + y];
                        right = (right - 1) & free;
                    }
                }
            }
        }
    }

    /// Restores the relation for the graph after `(u, v)` was removed.
    ///
    /// Only colour sets containing both endpoint colours can lose triples;
    /// those are recomputed by the colour-set recurrence in order of size.
    pub fn delete_edge(&mut self, graph_after: &DynGraph, u: usize, v: usize) {
        let (cu, cv) = (self.colours[u - 1] as usize, self.colours[v - 1] as usize);
        if cu == cv {
            return;
        }
        let both = (1 << cu) | (1 << cv);
        let nbr = neighbour_masks(graph_after);
        let classes: Vec<u64> = (0..self.k).map(|c| self.class_mask(c)).collect();
        for set in sets_by_size(self.k) {
            if set & both == both {
                self.recompute_set(set, &nbr, &classes);
            }
        }
    }

    /// The deletion rule read literally: a triple `(C, a, b)` with both
    /// endpoint colours in `C` survives iff some other edge `(u', v')` with
    /// the same endpoint colours joins an old `(C', a, u')` and `(C'', v', b)`.
    /// Kept for comparison only; it drops paths whose `c_u`- and
    /// `c_v`-coloured vertices are not adjacent.
    pub fn delete_edge_literal(&mut self, graph_after: &DynGraph, u: usize, v: usize) {
        let (cu, cv) = (self.colours[u - 1], self.colours[v - 1]);
        if cu == cv {
            return;
        }
        let n = self.n;
        let both = (1usize << cu) | (1 << cv);
        let old = self.rows.clone();
        let edges: Vec<(usize, usize)> = graph_after
            .edges()
            .flat_map(|(a, b)| [(a, b), (b, a)])
            .filter(|&(a, b)| self.colours[a - 1] == cu && self.colours[b - 1] == cv)
            .collect();
        let full = (1usize << self.k) - 1;
        for set in 1..=full {
            if set & both != both {
                continue;
            }
            for a in 0..n {
                let mut row = 0u64;
                for &(up, vp) in &edges {
                    let mut left = set;
                    while left != 0 {
                        let right = set & !left;
                        if right != 0 && old[left * n + a] & (1 << (up - 1)) != 0 {
                            row |= old[right * n + vp - 1];
                        }
                        left = (left - 1) & set;
                    }
                }
                self.rows[set * n + a] = row;
            }
        }
    }

    fn check_symmetric(&self) -> Result<(), String> {
        for (set, a, b) in self.triples() {
            if !self.contains(set, b, a) {
                return Err(format!("({:#b}, {a}, {b}) stored without its reverse", set.0));
            }
        }
        for x in 1..=self.n {
            if !self.contains(ColourSet(1 << (self.colour(x) - 1)), x, x) {
                return Err(format!("singleton triple of {x} missing"));
            }
        }
        Ok(())
    }
}

fn neighbour_masks(graph: &DynGraph) -> Vec<u64> {
    (1..=graph.n()).map(|v| graph.neighbour_mask(v)).collect()
}

/// Non-empty subsets of `k` colours, smaller sets first.
fn sets_by_size(k: usize) -> Vec<usize> {
    let mut sets: Vec<usize> = (1..1 << k).collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets
}

fn rebuild_with(graph: &DynGraph, lambda: ColouringIndex, colours: Vec<u8>, k: usize) -> ColourPathRelation {
    let mut rel = ColourPathRelation::with_singletons(lambda, colours, k);
    let nbr = neighbour_masks(graph);
    let classes: Vec<u64> = (0..k).map(|c| rel.class_mask(c)).collect();
    for set in sets_by_size(k) {
        if set.count_ones() > 1 {
            rel.recompute_set(set, &nbr, &classes);
        }
    }
    rel
}

/// The exact relation of `graph` under `lambda` (a member of the family with
/// `k` colours), computed from scratch.
pub fn lp_rebuild(graph: &DynGraph, lambda: &ColouringIndex, k: usize) -> ColourPathRelation {
    let colours = (1..=graph.n())
        .map(|x| (eval(lambda, k, k, x) - 1) as u8)
        .collect();
    rebuild_with(graph, *lambda, colours, k)
}

/// How stored relations react to an edge deletion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DeletionRule {
    /// Recompute colour sets containing both endpoint colours.
    #[default]
    Restricted,
    /// Literal edge-substitution rule, for experiments only.
    Literal,
}

/// Maintained long-path instance `(G, s, t, ℓ)`.
///
/// Relations are kept for every `ℓ` in `1..=kmax`, so parameter steps only
/// switch which family answers.
#[derive(Clone, Debug)]
pub struct LongPathState {
    graph: DynGraph,
    s: usize,
    t: usize,
    param: ParamState,
    /// `families[ℓ - 1]` holds one relation per distinct colouring with `ℓ + 1` colours.
    families: Vec<Vec<ColourPathRelation>>,
    rule: DeletionRule,
}

impl LongPathState {
    pub fn new(n: usize, s: usize, t: usize, ell: usize, kmax: usize, allow_large: bool) -> Result<Self> {
        if n > 64 {
            return Err(Error::Guard(format!("long-path maintainer supports at most 64 vertices, got {n}")));
        }
        if !allow_large && kmax + 1 > DEFAULT_MAX_COLOURS {
            return Err(Error::Guard(format!(
                "storing relations for {} colours exceeds the default limit of {DEFAULT_MAX_COLOURS}",
                kmax + 1
            )));
        }
        let graph = DynGraph::new(n);
        graph.check_vertex(s)?;
        graph.check_vertex(t)?;
        let param = ParamState::with_value(ell, kmax)?;
        let mut families = Vec::with_capacity(kmax);
        for ell in 1..=kmax {
            let k = ell + 1;
            let family = distinct_colourings(FamilyParams::new(n, k, k)?)?;
            families.push(
                family
                    .into_iter()
                    .map(|(idx, colours)| rebuild_with(&graph, idx, colours, k))
                    .collect(),
            );
        }
        Ok(LongPathState {
            graph,
            s,
            t,
            param,
            families,
            rule: DeletionRule::Restricted,
        })
    }

    pub fn with_deletion_rule(mut self, rule: DeletionRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn graph(&self) -> &DynGraph {
        &self.graph
    }

    pub fn ell(&self) -> usize {
        self.param.k()
    }

    pub fn relations(&self, ell: usize) -> &[ColourPathRelation] {
        &self.families[ell - 1]
    }

    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if self.graph.insert_edge(u, v)? {
            for rel in self.families.iter_mut().flatten() {
                rel.insert_edge(u, v);
            }
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if self.graph.delete_edge(u, v)? {
            let (u, v) = (u.min(v), u.max(v));
            for rel in self.families.iter_mut().flatten() {
                match self.rule {
                    DeletionRule::Restricted => rel.delete_edge(&self.graph, u, v),
                    DeletionRule::Literal => rel.delete_edge_literal(&self.graph, u, v),
                }
            }
        }
        Ok(())
    }

    /// Simple a–b path of length `ell` (`ell ≤ kmax`)?
    pub fn query_pair(&self, a: usize, b: usize, ell: usize) -> bool {
        if ell == 0 {
            return a == b;
        }
        let full = ColourSet::full(ell + 1);
        self.families[ell - 1]
            .iter()
            .any(|rel| rel.contains(full, a, b))
    }

    /// Compares every stored relation with a fresh rebuild.
    pub fn audit_against_rebuild(&self) -> Result<(), String> {
        for (i, family) in self.families.iter().enumerate() {
            for rel in family {
                let fresh = rebuild_with(&self.graph, rel.lambda, rel.colours.clone(), i + 2);
                if fresh.rows != rel.rows {
                    return Err(format!(
                        "relation for {:?} ({} colours) differs from rebuild",
                        rel.lambda,
                        i + 2
                    ));
                }
            }
        }
        Ok(())
    }
}

impl Maintainer for LongPathState {
    fn problem(&self) -> &'static str {
        "longpath"
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
        Ok(self.query_pair(self.s, self.t, self.ell()))
    }

    fn audit(&self) -> Result<(), String> {
        self.families
            .iter()
            .flatten()
            .try_for_each(|rel| rel.check_symmetric())
    }
}

/// Outcome of the iterative colour-order search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColourOrderOutcome {
    pub found: bool,
    /// Colourings examined.
    pub colourings: usize,
    /// Colour orders (permutations) examined.
    pub orders: usize,
}

/// Layer sets for one colouring and colour order: entry `i` holds the
/// vertices reachable from `s` along a path coloured `order[0..=i]`.
pub fn colour_layers(graph: &DynGraph, colours: &[u8], order: &[usize], s: usize) -> Vec<u64> {
    let nbr = neighbour_masks(graph);
    let class = |c: usize| {
        colours
            .iter()
            .enumerate()
            .filter(|(_, &x)| x as usize == c)
            .fold(0u64, |m, (i, _)| m | 1 << i)
    };
    let mut layers = Vec::with_capacity(order.len());
    let mut current = if colours[s - 1] as usize == order[0] { 1u64 << (s - 1) } else { 0 };
    layers.push(current);
    for &c in &order[1..] {
        let mut next = 0u64;
        let mut rest = current;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= nbr[x];
        }
        current = next & class(c);
        layers.push(current);
    }
    layers
}

/// Static solver: for every colouring of the family and every order of the
/// `ell + 1` colours, grows the layer sets from `s` and checks whether `t`
/// is reached in the last layer.
pub fn lp_para_t_solve(graph: &DynGraph, s: usize, t: usize, ell: usize) -> Result<ColourOrderOutcome> {
    let mut outcome = ColourOrderOutcome {
        found: false,
        colourings: 0,
        orders: 0,
    };
    if ell == 0 {
        outcome.found = s == t;
        return Ok(outcome);
    }
    if ell >= graph.n() || graph.n() > 64 {
        if graph.n() > 64 {
            return Err(Error::Guard("colour-order search supports at most 64 vertices".into()));
        }
        return Ok(outcome);
    }
    let k = ell + 1;
    for (_, colours) in distinct_colourings(FamilyParams::new(graph.n(), k, k)?)? {
        outcome.colourings += 1;
        let mut order: Vec<usize> = (0..k).collect();
        loop {
            outcome.orders += 1;
            let layers = colour_layers(graph, &colours, &order, s);
            if layers[k - 1] & (1 << (t - 1)) != 0 {
                outcome.found = true;
                return Ok(outcome);
            }
            if !next_permutation(&mut order) {
                break;
            }
        }
    }
    Ok(outcome)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
