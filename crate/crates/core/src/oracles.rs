//! Brute-force reference solvers and seeded instance generators.
//!
//! Nothing here calls into the maintainers; the oracles work from plain
//! edge lists, coordinate vectors and item lists.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::change::ChangeOp;
use crate::closest_string::StringInstance;
use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::script::{Header, Problem};

pub const VC_ORACLE_MAX_N: usize = 20;
pub const GRAPH_ORACLE_MAX_N: usize = 12;
pub const KNAPSACK_ORACLE_MAX_N: usize = 16;
pub const PLC_ORACLE_MAX_N: usize = 10;
pub const CSTRING_ORACLE_MAX_CANDIDATES: u128 = 10_000_000;

fn guard(n: usize, max: usize, what: &str) -> Result<()> {
    if n > max {
        return Err(Error::Guard(format!("{what} oracle handles at most {max}, got {n}")));
    }
    Ok(())
}

fn edge_list(g: &DynGraph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

/// Calls `f` on every subset of `0..n` with at most `k` elements until it
/// returns `true`.
fn any_subset(n: usize, k: usize, f: &mut impl FnMut(u64) -> bool) -> bool {
    fn go(start: usize, n: usize, left: usize, set: u64, f: &mut impl FnMut(u64) -> bool) -> bool {
        if f(set) {
            return true;
        }
        if left == 0 {
            return false;
        }
        (start..n).any(|i| go(i + 1, n, left - 1, set | 1 << i, f))
    }
    go(0, n, k, 0, f)
}

/// Is there a vertex cover with at most `k` vertices?
pub fn oracle_vc(g: &DynGraph, k: usize) -> Result<bool> {
    guard(g.n(), VC_ORACLE_MAX_N, "vertex cover")?;
    let edges = edge_list(g);
    Ok(any_subset(g.n(), k, &mut |s| {
        edges.iter().all(|&(u, v)| s & (1 << (u - 1)) != 0 || s & (1 << (v - 1)) != 0)
    }))
}

pub fn oracle_min_vc(g: &DynGraph) -> Result<usize> {
    guard(g.n(), VC_ORACLE_MAX_N, "vertex cover")?;
    Ok((0..=g.n()).find(|&k| oracle_vc(g, k).unwrap()).unwrap())
}

/// Is there a simple `s`–`t` path with exactly `ell` edges?
pub fn oracle_longpath(g: &DynGraph, s: usize, t: usize, ell: usize) -> Result<bool> {
    guard(g.n(), GRAPH_ORACLE_MAX_N, "long path")?;
    let mut adj = vec![Vec::new(); g.n() + 1];
    for (u, v) in edge_list(g) {
        adj[u].push(v);
        adj[v].push(u);
    }
    fn dfs(adj: &[Vec<usize>], x: usize, t: usize, left: usize, seen: &mut Vec<bool>) -> bool {
        if left == 0 {
            return x == t;
        }
        seen[x] = true;
        let found = adj[x].iter().any(|&y| !seen[y] && dfs(adj, y, t, left - 1, seen));
        seen[x] = false;
        found
    }
    Ok(dfs(&adj, s, t, ell, &mut vec![false; g.n() + 1]))
}

fn acyclic_without(n: usize, edges: &[(usize, usize)], removed: u64) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(u, v) in edges {
        if removed & (1 << (u - 1)) != 0 || removed & (1 << (v - 1)) != 0 {
            continue;
        }
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Is there a set of at most `k` vertices whose removal leaves a forest?
pub fn oracle_fvs(g: &DynGraph, k: usize) -> Result<bool> {
    guard(g.n(), GRAPH_ORACLE_MAX_N, "feedback vertex set")?;
    let edges = edge_list(g);
    Ok(any_subset(g.n(), k, &mut |s| acyclic_without(g.n(), &edges, s)))
}

pub fn oracle_min_fvs(g: &DynGraph) -> Result<usize> {
    guard(g.n(), GRAPH_ORACLE_MAX_N, "feedback vertex set")?;
    Ok((0..=g.n()).find(|&k| oracle_fvs(g, k).unwrap()).unwrap())
}

/// Length of a shortest cycle, if any.
pub fn oracle_girth(g: &DynGraph) -> Option<usize> {
    let edges = edge_list(g);
    let mut best = None;
    for &(u, v) in &edges {
        // shortest u–v path avoiding the edge itself, by BFS
        let mut dist = vec![usize::MAX; g.n() + 1];
        dist[u] = 0;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &(a, b) in &edges {
                if (a, b) == (u, v) {
                    continue;
                }
                let y = if a == x { b } else if b == x { a } else { continue };
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if dist[v] != usize::MAX {
            let len = dist[v] + 1;
            best = Some(best.map_or(len, |b: usize| b.min(len)));
        }
    }
    best
}

/// Is there a subset with total weight at most `capacity` and profit at
/// least `threshold`? Items are `(profit, weight)`.
pub fn oracle_knapsack(items: &[(BigUint, BigUint)], capacity: &BigUint, threshold: &BigUint) -> Result<bool> {
    guard(items.len(), KNAPSACK_ORACLE_MAX_N, "knapsack")?;
    Ok((0u32..1 << items.len()).any(|s| {
        let chosen = items.iter().enumerate().filter(|(i, _)| s & (1 << i) != 0);
        let (p, w) = chosen.fold((BigUint::default(), BigUint::default()), |(p, w), (_, it)| (p + &it.0, w + &it.1));
        w <= *capacity && p >= *threshold
    }))
}

/// Largest profit of a subset of items `i..=j` (1-based) with weight
/// exactly `b`.
pub fn oracle_interval_profit(items: &[(BigUint, BigUint)], i: usize, j: usize, b: usize) -> Result<Option<BigUint>> {
    guard(items.len(), KNAPSACK_ORACLE_MAX_N, "knapsack")?;
    let range: Vec<usize> = (i..=j).collect();
    let target = BigUint::from(b);
    let mut best: Option<BigUint> = None;
    for s in 0u32..1 << range.len() {
        let mut p = BigUint::default();
        let mut w = BigUint::default();
        for (bit, &idx) in range.iter().enumerate() {
            if s & (1 << bit) != 0 {
                p += &items[idx - 1].0;
                w += &items[idx - 1].1;
            }
        }
        if w == target && best.as_ref().is_none_or(|x| p > *x) {
            best = Some(p);
        }
    }
    Ok(best)
}

/// Row `b = 0..=bmax` of the interval table for items `i..=j`, from one
/// pass over the subsets of the interval.
pub fn oracle_interval_row(items: &[(BigUint, BigUint)], i: usize, j: usize, bmax: usize) -> Result<Vec<Option<BigUint>>> {
    guard(items.len(), KNAPSACK_ORACLE_MAX_N, "knapsack")?;
    let range: Vec<usize> = (i..=j).collect();
    let mut row: Vec<Option<BigUint>> = vec![None; bmax + 1];
    for s in 0u32..1 << range.len() {
        let mut p = BigUint::default();
        let mut w = BigUint::default();
        for (bit, &idx) in range.iter().enumerate() {
            if s & (1 << bit) != 0 {
                p += &items[idx - 1].0;
                w += &items[idx - 1].1;
            }
        }
        if let Some(b) = usize::try_from(&w).ok().filter(|&b| b <= bmax) {
            if row[b].as_ref().is_none_or(|x| p > *x) {
                row[b] = Some(p);
            }
        }
    }
    Ok(row)
}

/// Collinearity over the rationals: `r - p` is a multiple of `q - p`.
pub fn rational_collinear(p: &[BigUint], q: &[BigUint], r: &[BigUint]) -> bool {
    if p == q || p == r || q == r {
        return true;
    }
    let diff = |a: &BigUint, b: &BigUint| BigInt::from(a.clone()) - BigInt::from(b.clone());
    let a = (0..p.len()).find(|&a| q[a] != p[a]).unwrap();
    let scale = BigRational::new(diff(&r[a], &p[a]), diff(&q[a], &p[a]));
    (0..p.len()).all(|b| BigRational::from_integer(diff(&r[b], &p[b])) == &scale * BigRational::from_integer(diff(&q[b], &p[b])))
}

/// Can at most `k` lines cover the points? Duplicate coordinates count as
/// one point. Tries every set of at most `k` lines spanned by point pairs
/// and covers the rest with one line each.
pub fn oracle_plc(points: &[Vec<BigUint>], k: usize) -> Result<bool> {
    guard(points.len(), PLC_ORACLE_MAX_N, "point-line cover")?;
    let mut distinct: Vec<&Vec<BigUint>> = Vec::new();
    for p in points {
        if !distinct.contains(&p) {
            distinct.push(p);
        }
    }
    let m = distinct.len();
    let mut lines: BTreeSet<u64> = BTreeSet::new();
    for a in 0..m {
        for b in a + 1..m {
            let on = (0..m)
                .filter(|&c| rational_collinear(distinct[a], distinct[b], distinct[c]))
                .fold(0u64, |s, c| s | 1 << c);
            lines.insert(on);
        }
    }
    let lines: Vec<u64> = lines.into_iter().collect();
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    Ok(any_subset(lines.len(), k, &mut |chosen| {
        let used = chosen.count_ones() as usize;
        let covered = (0..lines.len())
            .filter(|i| chosen & (1 << i) != 0)
            .fold(0u64, |s, i| s | lines[i]);
        used + (all & !covered).count_ones() as usize <= k
    }))
}

/// Tries every string within distance `d` of the first one.
pub fn oracle_cstring(inst: &StringInstance) -> Result<bool> {
    let Some(first) = inst.strings.first() else {
        return Ok(true);
    };
    let len = first.len();
    let sigma = inst.alphabet.len() as u128;
    let count: u128 = (0..=inst.d.min(len))
        .map(|i| binomial(len, i) * (sigma.max(1) - 1).pow(i as u32))
        .sum();
    if count > CSTRING_ORACLE_MAX_CANDIDATES {
        return Err(Error::Guard(format!("{count} closest-string candidates")));
    }
    let within = |c: &[char]| {
        inst.strings
            .iter()
            .all(|s| s.iter().zip(c).filter(|(a, b)| a != b).count() <= inst.d)
    };
    fn go(c: &mut Vec<char>, from: usize, left: usize, alphabet: &[char], within: &dyn Fn(&[char]) -> bool) -> bool {
        if within(c) {
            return true;
        }
        if left == 0 {
            return false;
        }
        for j in from..c.len() {
            let old = c[j];
            for &x in alphabet.iter().filter(|&&x| x != old) {
                c[j] = x;
                if go(c, j + 1, left - 1, alphabet, within) {
                    return true;
                }
            }
            c[j] = old;
        }
        false
    }
    Ok(go(&mut first.clone(), 0, inst.d, &inst.alphabet, &within))
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Reference copy of an instance that follows the change semantics on its own.
#[derive(Clone, Debug)]
pub struct Shadow {
    pub header: Header,
    pub graph: DynGraph,
    pub k: usize,
    pub kmax: usize,
    pub coords: Vec<Vec<BigUint>>,
    pub enabled: Vec<bool>,
    pub items: Vec<(BigUint, BigUint)>,
    pub capacity: BigUint,
    pub threshold: BigUint,
    pub strings: Vec<Option<String>>,
}

impl Shadow {
    pub fn new(header: &Header) -> Self {
        let kmax = header.kmax.unwrap_or(0);
        let (pn, pd) = header.points.unwrap_or((0, 0));
        Shadow {
            header: header.clone(),
            graph: DynGraph::new(header.domain.unwrap_or(0)),
            k: header.ell.unwrap_or(kmax),
            kmax,
            coords: vec![vec![BigUint::default(); pd]; pn],
            enabled: vec![false; pn],
            items: vec![(BigUint::default(), BigUint::default()); header.items.unwrap_or(0)],
            capacity: BigUint::default(),
            threshold: BigUint::default(),
            strings: Vec::new(),
        }
    }

    pub fn apply(&mut self, op: &ChangeOp) {
        match op {
            ChangeOp::InsE(u, v) => {
                let _ = self.graph.insert_edge(*u, *v);
            }
            ChangeOp::DelE(u, v) => {
                let _ = self.graph.delete_edge(*u, *v);
            }
            ChangeOp::IncK => self.k = (self.k + 1).min(self.kmax),
            ChangeOp::DecK => self.k = self.k.saturating_sub(1).max(1),
            ChangeOp::SetItem { item, profit, weight } => self.items[item - 1] = (profit.clone(), weight.clone()),
            ChangeOp::SetB(b) => self.capacity = b.clone(),
            ChangeOp::SetT(t) => self.threshold = t.clone(),
            ChangeOp::FlipBit { point, dim, bit } => {
                let c = &mut self.coords[point - 1][dim - 1];
                *c ^= BigUint::from(1u8) << *bit;
            }
            ChangeOp::Enable(i) => self.enabled[i - 1] = true,
            ChangeOp::Disable(i) => self.enabled[i - 1] = false,
            ChangeOp::SetString(i, s) => {
                if self.strings.len() < *i {
                    self.strings.resize(*i, None);
                }
                self.strings[i - 1] = Some(s.clone());
            }
            ChangeOp::Query => {}
        }
    }

    pub fn answer(&self) -> Result<bool> {
        let h = &self.header;
        match h.problem {
            Problem::VCover | Problem::VCoverCompress => oracle_vc(&self.graph, self.k),
            Problem::LongPath => oracle_longpath(&self.graph, h.s.unwrap(), h.t.unwrap(), self.k),
            Problem::Fvs => oracle_fvs(&self.graph, self.k),
            Problem::Plc => {
                let pts: Vec<Vec<BigUint>> = (0..self.coords.len())
                    .filter(|&i| self.enabled[i])
                    .map(|i| self.coords[i].clone())
                    .collect();
                oracle_plc(&pts, self.k)
            }
            Problem::Knapsack => oracle_knapsack(&self.items, &self.capacity, &self.threshold),
            Problem::CString => {
                let strings = self
                    .strings
                    .iter()
                    .map(|s| s.as_ref().map(|s| s.chars().collect()))
                    .collect::<Option<Vec<Vec<char>>>>()
                    .ok_or_else(|| Error::Instance("undefined string".into()))?;
                oracle_cstring(&StringInstance {
                    alphabet: h.alphabet.clone().unwrap_or_default().chars().collect(),
                    strings,
                    d: h.d.unwrap_or(0),
                })
            }
        }
    }
}

/// Random instance header within the fuzzing guards: graphs with at most
/// ten vertices and `kmax ≤ 3` (long paths: at most seven vertices and
/// `kmax ≤ 2`), up to eight planar points with 8-bit coordinates, up to six
/// knapsack items with `B_max ≤ 20`.
pub fn gen_header(problem: Problem, rng: &mut impl Rng) -> Header {
    match problem {
        Problem::VCover | Problem::VCoverCompress | Problem::Fvs => {
            let n = rng.gen_range(3..=10);
            Header::graph(problem, n, rng.gen_range(1..=3))
        }
        Problem::LongPath => {
            let n = rng.gen_range(3..=7);
            let kmax = rng.gen_range(1..=2);
            Header {
                s: Some(rng.gen_range(1..=n)),
                t: Some(rng.gen_range(1..=n)),
                ell: Some(rng.gen_range(1..=kmax)),
                ..Header::graph(problem, n, kmax)
            }
        }
        Problem::Plc => Header {
            points: Some((rng.gen_range(3..=8), 2)),
            kmax: Some(rng.gen_range(1..=3)),
            ..Header::new(problem)
        },
        Problem::Knapsack => Header {
            items: Some(rng.gen_range(1..=6)),
            bmax: Some(rng.gen_range(1..=20)),
            ..Header::new(problem)
        },
        Problem::CString => Header {
            alphabet: Some(["AB", "ABC"][rng.gen_range(0..2)].to_string()),
            len: Some(rng.gen_range(1..=8)),
            d: Some(rng.gen_range(0..=2)),
            ..Header::new(problem)
        },
    }
}

/// Bits a generated plc flip may touch.
pub const PLC_COORD_BITS: usize = 8;

fn random_string(rng: &mut impl Rng, alphabet: &[char], len: usize) -> String {
    (0..len).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

/// `length` valid changes for the instance, each followed by a query.
pub fn gen_change_sequence(header: &Header, rng: &mut impl Rng, length: usize) -> Vec<ChangeOp> {
    let mut graph = DynGraph::new(header.domain.unwrap_or(0));
    let mut ops = Vec::with_capacity(2 * length);
    let mut defined = 0;
    let strings_wanted = rng.gen_range(1..=5);
    for _ in 0..length {
        let op = match header.problem {
            Problem::VCover | Problem::VCoverCompress | Problem::LongPath | Problem::Fvs => {
                let n = graph.n();
                let roll: f64 = rng.gen();
                if roll < 0.12 {
                    ChangeOp::IncK
                } else if roll < 0.24 {
                    ChangeOp::DecK
                } else if roll < 0.5 && graph.edge_count() > 0 {
                    let edges: Vec<_> = graph.edges().collect();
                    let (u, v) = *edges.choose(rng).unwrap();
                    graph.delete_edge(u, v).unwrap();
                    ChangeOp::DelE(u, v)
                } else {
                    let u = rng.gen_range(1..=n);
                    let v = loop {
                        let v = rng.gen_range(1..=n);
                        if v != u {
                            break v;
                        }
                    };
                    graph.insert_edge(u, v).unwrap();
                    ChangeOp::InsE(u, v)
                }
            }
            Problem::Plc => {
                let (n, d) = header.points.unwrap();
                let roll: f64 = rng.gen();
                let point = rng.gen_range(1..=n);
                if roll < 0.1 {
                    ChangeOp::IncK
                } else if roll < 0.2 {
                    ChangeOp::DecK
                } else if roll < 0.4 {
                    ChangeOp::Enable(point)
                } else if roll < 0.47 {
                    ChangeOp::Disable(point)
                } else {
                    ChangeOp::FlipBit {
                        point,
                        dim: rng.gen_range(1..=d),
                        bit: rng.gen_range(0..PLC_COORD_BITS),
                    }
                }
            }
            Problem::Knapsack => {
                let bmax = header.bmax.unwrap();
                let roll: f64 = rng.gen();
                if roll < 0.6 {
                    ChangeOp::SetItem {
                        item: rng.gen_range(1..=header.items.unwrap()),
                        profit: BigUint::from(rng.gen_range(0u32..=30)),
                        weight: BigUint::from(rng.gen_range(0..=bmax as u32 + 3)),
                    }
                } else if roll < 0.8 {
                    ChangeOp::SetB(BigUint::from(rng.gen_range(0..=bmax as u32)))
                } else {
                    ChangeOp::SetT(BigUint::from(rng.gen_range(0u32..=60)))
                }
            }
            Problem::CString => {
                let alphabet: Vec<char> = header.alphabet.as_ref().unwrap().chars().collect();
                let text = random_string(rng, &alphabet, header.len.unwrap());
                let index = if defined < strings_wanted {
                    defined += 1;
                    defined
                } else {
                    rng.gen_range(1..=defined)
                };
                ChangeOp::SetString(index, text)
            }
        };
        ops.push(op);
        ops.push(ChangeOp::Query);
    }
    ops
}

/// Vertex-cover sequence on ten vertices that repeatedly drives the minimum
/// cover above `2k` and back, by edge changes and parameter steps. Returns
/// the header and the changes, each followed by a query.
pub fn gen_boundary_sequence(rng: &mut impl Rng, length: usize) -> Result<(Header, Vec<ChangeOp>)> {
    let n = 10;
    let kmax = rng.gen_range(1..=3);
    let header = Header::graph(Problem::VCoverCompress, n, kmax);
    let mut g = DynGraph::new(n);
    let mut k = kmax;
    let mut ops = Vec::new();
    for _ in 0..length {
        let current = oracle_min_vc(&g)?;
        let over = current > 2 * k;
        let op = if rng.gen_bool(0.2) {
            // noise that keeps the side of the boundary
            let edges: Vec<_> = g.edges().collect();
            let mut pick = None;
            for _ in 0..20 {
                let u = rng.gen_range(1..=n);
                let v = rng.gen_range(1..=n);
                if u == v {
                    continue;
                }
                let mut h = g.clone();
                let op = if h.has_edge(u, v) {
                    h.delete_edge(u, v)?;
                    ChangeOp::DelE(u.min(v), u.max(v))
                } else {
                    h.insert_edge(u, v)?;
                    ChangeOp::InsE(u.min(v), u.max(v))
                };
                if (oracle_min_vc(&h)? > 2 * k) == over {
                    pick = Some(op);
                    break;
                }
            }
            pick.unwrap_or_else(|| match edges.first() {
                Some(&(u, v)) if over => ChangeOp::DelE(u, v),
                _ => ChangeOp::IncK,
            })
        } else if !over {
            // push the minimum cover up, or the bound down
            let mut raising = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if !g.has_edge(u, v) {
                        let mut h = g.clone();
                        h.insert_edge(u, v)?;
                        if oracle_min_vc(&h)? > current {
                            raising.push((u, v));
                        }
                    }
                }
            }
            if k > 1 && (raising.is_empty() || rng.gen_bool(0.25)) {
                ChangeOp::DecK
            } else if let Some(&(u, v)) = raising.choose(rng) {
                ChangeOp::InsE(u, v)
            } else {
                ChangeOp::IncK
            }
        } else {
            let lowering: Vec<_> = g
                .edges()
                .filter(|&(u, v)| {
                    let mut h = g.clone();
                    h.delete_edge(u, v).unwrap();
                    oracle_min_vc(&h).unwrap() < current
                })
                .collect();
            if k < kmax && (lowering.is_empty() || rng.gen_bool(0.25)) {
                ChangeOp::IncK
            } else {
                // without a critical edge, any deletion makes progress towards one
                let edges: Vec<_> = g.edges().collect();
                let &(u, v) = lowering.choose(rng).or_else(|| edges.choose(rng)).expect("a graph above the bound has edges");
                ChangeOp::DelE(u, v)
            }
        };
        match op {
            ChangeOp::InsE(u, v) => {
                g.insert_edge(u, v)?;
            }
            ChangeOp::DelE(u, v) => {
                g.delete_edge(u, v)?;
            }
            ChangeOp::IncK => k = (k + 1).min(kmax),
            ChangeOp::DecK => k = (k - 1).max(1),
            _ => {}
        }
        ops.push(op);
        ops.push(ChangeOp::Query);
    }
    Ok((header, ops))
}

/// Number of times the minimum cover crosses `2k` upwards and downwards.
pub fn boundary_crossings(header: &Header, ops: &[ChangeOp]) -> Result<(usize, usize)> {
    let mut shadow = Shadow::new(header);
    let mut over = false;
    let (mut up, mut down) = (0, 0);
    for op in ops.iter().filter(|op| **op != ChangeOp::Query) {
        shadow.apply(op);
        let now = oracle_min_vc(&shadow.graph)? > 2 * shadow.k;
        match (over, now) {
            (false, true) => up += 1,
            (true, false) => down += 1,
            _ => {}
        }
        over = now;
    }
    Ok((up, down))
}

/// Random graph on `n` vertices with minimum degree at least three.
pub fn gen_min_degree3_graph(rng: &mut impl Rng, n: usize) -> DynGraph {
    assert!(n >= 4, "minimum degree three needs four vertices");
    let mut g = DynGraph::new(n);
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        if u != v {
            g.insert_edge(u, v).unwrap();
        }
    }
    while let Some(v) = (1..=n).find(|&v| g.degree(v) < 3) {
        let choices: Vec<usize> = (1..=n).filter(|&w| w != v && !g.has_edge(v, w)).collect();
        let w = *choices.choose(rng).unwrap();
        g.insert_edge(v, w).unwrap();
    }
    g
}

/// Random closest-string instance: alphabet of two or three symbols, length
/// at most 8, at most five strings, `d ≤ 2`.
pub fn gen_cstring_instance(rng: &mut impl Rng) -> StringInstance {
    let alphabet: Vec<char> = ["AB", "ABC"][rng.gen_range(0..2)].chars().collect();
    let len = rng.gen_range(1..=8);
    let m = rng.gen_range(1..=5);
    let d = rng.gen_range(0..=2);
    let base: Vec<char> = random_string(rng, &alphabet, len).chars().collect();
    // perturb a common centre so that both answers occur
    let strings = (0..m)
        .map(|_| {
            let mut s = base.clone();
            for _ in 0..rng.gen_range(0..=3) {
                let j = rng.gen_range(0..len);
                s[j] = *alphabet.choose(rng).unwrap();
            }
            s
        })
        .collect();
    StringInstance { alphabet, strings, d }
}
