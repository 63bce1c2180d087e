//! Round-robin rebuild scheduling, and the vertex-cover maintainer built on
//! it from iterative compression.
//!
//! A short-term program can only answer for a bounded number of steps after
//! a from-scratch rebuild, and a rebuild takes several iterations. The
//! scheduler starts a fresh logical thread at every change. A thread first
//! rebuilds from its snapshot, buffering the changes that arrive meanwhile,
//! then replays the buffer, and finally serves answers until a younger
//! thread catches up. Each change gives every unfinished thread two units of
//! work.

use std::collections::VecDeque;

use crate::change::ChangeOp;
use crate::error::{Error, Result};
use crate::graph::DynGraph;
use crate::maintainer::Maintainer;
use crate::param::ParamState;
use crate::vertex_cover::{covers, smallest_uncovered, vc_para_t_solve};

/// Work units every unfinished thread performs per change.
pub const UNITS_PER_STEP: usize = 2;

/// A maintainer that is correct only for a while after a rebuild, together
/// with an iterative rebuilder.
pub trait ShortTermProgram {
    type Rebuild;
    type State;

    fn name(&self) -> &'static str;

    fn begin(&self, graph: &DynGraph, k: usize) -> Self::Rebuild;

    fn iterate(&self, rebuild: &mut Self::Rebuild, graph: &DynGraph);

    /// Turns a rebuild that has had its full iteration budget into a state.
    fn finish(&self, rebuild: &mut Self::Rebuild, graph: &DynGraph, k: usize) -> Self::State;

    /// Applies a change; `graph` and `k` already reflect it.
    fn apply(&self, state: &mut Self::State, graph: &DynGraph, k: usize, op: &ChangeOp);

    fn answer(&self, state: &Self::State, graph: &DynGraph, k: usize) -> bool;

    /// Answer used while no thread serves yet.
    fn bootstrap(&self, graph: &DynGraph, k: usize) -> bool;

    fn audit(&self, _state: &Self::State, _graph: &DynGraph, _k: usize) -> Result<(), String> {
        Ok(())
    }
}

#[derive(Clone, Debug)]
enum Phase<R, S> {
    Rebuilding { rebuild: R, done: usize, budget: usize },
    Replaying(S),
    Serving(S),
}

#[derive(Clone, Debug)]
struct Thread<R, S> {
    start: u64,
    graph: DynGraph,
    param: ParamState,
    phase: Phase<R, S>,
    buffer: VecDeque<ChangeOp>,
}

/// Phase of a logical thread as seen from outside.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseKind {
    Rebuilding,
    Replaying,
    Serving,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreadView {
    pub start: u64,
    pub phase: PhaseKind,
    pub iterations: usize,
    pub buffered: usize,
}

fn step_instance(graph: &mut DynGraph, param: &mut ParamState, op: &ChangeOp) {
    match *op {
        ChangeOp::InsE(u, v) => {
            graph.insert_edge(u, v).expect("validated change");
        }
        ChangeOp::DelE(u, v) => {
            graph.delete_edge(u, v).expect("validated change");
        }
        ChangeOp::IncK => {
            param.inc();
        }
        ChangeOp::DecK => {
            param.dec();
        }
        _ => {}
    }
}

/// The round-robin scheduler. `budget(k)` is the number of rebuild
/// iterations a thread started at parameter `k` runs before it replays.
#[derive(Clone, Debug)]
pub struct MuddlingScheduler<P: ShortTermProgram> {
    program: P,
    budget: fn(usize) -> usize,
    graph: DynGraph,
    param: ParamState,
    clock: u64,
    threads: Vec<Thread<P::Rebuild, P::State>>,
}

impl<P: ShortTermProgram> MuddlingScheduler<P>
where
    P::Rebuild: Clone,
    P::State: Clone,
{
    pub fn new(program: P, budget: fn(usize) -> usize, n: usize, kmax: usize) -> Result<Self> {
        let mut s = MuddlingScheduler {
            program,
            budget,
            graph: DynGraph::new(n),
            param: ParamState::new(kmax)?,
            clock: 0,
            threads: Vec::new(),
        };
        s.start_thread();
        Ok(s)
    }

    pub fn graph(&self) -> &DynGraph {
        &self.graph
    }

    pub fn param(&self) -> ParamState {
        self.param
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    pub fn rebuild_budget(&self, k: usize) -> usize {
        (self.budget)(k)
    }

    pub fn threads(&self) -> Vec<ThreadView> {
        self.threads
            .iter()
            .map(|t| {
                let (phase, iterations) = match &t.phase {
                    Phase::Rebuilding { done, .. } => (PhaseKind::Rebuilding, *done),
                    Phase::Replaying(_) => (PhaseKind::Replaying, 0),
                    Phase::Serving(_) => (PhaseKind::Serving, 0),
                };
                ThreadView {
                    start: t.start,
                    phase,
                    iterations,
                    buffered: t.buffer.len(),
                }
            })
            .collect()
    }

    fn start_thread(&mut self) {
        let k = self.param.k();
        let budget = (self.budget)(k);
        let mut rebuild = self.program.begin(&self.graph, k);
        let phase = if budget == 0 {
            Phase::Serving(self.program.finish(&mut rebuild, &self.graph, k))
        } else {
            Phase::Rebuilding {
                rebuild,
                done: 0,
                budget,
            }
        };
        self.threads.push(Thread {
            start: self.clock,
            graph: self.graph.clone(),
            param: self.param,
            phase,
            buffer: VecDeque::new(),
        });
        self.retire();
    }

    /// Drops every thread older than the youngest serving one.
    fn retire(&mut self) {
        let youngest = self
            .threads
            .iter()
            .filter(|t| matches!(t.phase, Phase::Serving(_)))
            .map(|t| t.start)
            .max();
        if let Some(start) = youngest {
            self.threads.retain(|t| t.start >= start);
        }
    }

    fn advance(program: &P, thread: &mut Thread<P::Rebuild, P::State>, op: &ChangeOp) {
        if let Phase::Serving(state) = &mut thread.phase {
            step_instance(&mut thread.graph, &mut thread.param, op);
            program.apply(state, &thread.graph, thread.param.k(), op);
            return;
        }
        thread.buffer.push_back(op.clone());
        for _ in 0..UNITS_PER_STEP {
            match &mut thread.phase {
                Phase::Rebuilding {
                    rebuild,
                    done,
                    budget,
                } => {
                    program.iterate(rebuild, &thread.graph);
                    *done += 1;
                    if done == budget {
                        let state = program.finish(rebuild, &thread.graph, thread.param.k());
                        thread.phase = Phase::Replaying(state);
                    }
                }
                Phase::Replaying(state) => {
                    if let Some(op) = thread.buffer.pop_front() {
                        step_instance(&mut thread.graph, &mut thread.param, &op);
                        program.apply(state, &thread.graph, thread.param.k(), &op);
                    }
                }
                Phase::Serving(_) => {}
            }
        }
        if thread.buffer.is_empty() {
            if let Phase::Replaying(state) = &thread.phase {
                thread.phase = Phase::Serving(state.clone());
            }
        }
    }

    /// Applies one change. Changes without effect (no-op edge updates,
    /// clamped parameter steps, queries) do not advance the clock.
    pub fn apply_change(&mut self, op: &ChangeOp) -> Result<()> {
        let changed = match *op {
            ChangeOp::InsE(u, v) => self.graph.insert_edge(u, v)?,
            ChangeOp::DelE(u, v) => self.graph.delete_edge(u, v)?,
            ChangeOp::IncK => self.param.inc(),
            ChangeOp::DecK => self.param.dec(),
            ChangeOp::Query => false,
            _ => {
                return Err(Error::Unsupported {
                    op: op.to_string(),
                    problem: self.program.name(),
                })
            }
        };
        if !changed {
            return Ok(());
        }
        self.clock += 1;
        for thread in &mut self.threads {
            Self::advance(&self.program, thread, op);
        }
        self.retire();
        self.start_thread();
        Ok(())
    }

    fn serving(&self) -> Option<&Thread<P::Rebuild, P::State>> {
        self.threads
            .iter()
            .filter(|t| matches!(t.phase, Phase::Serving(_)))
            .max_by_key(|t| t.start)
    }

    pub fn is_bootstrapping(&self) -> bool {
        self.serving().is_none()
    }

    pub fn query(&self) -> bool {
        match self.serving() {
            Some(Thread {
                phase: Phase::Serving(state),
                graph,
                ..
            }) => self.program.answer(state, graph, self.param.k()),
            _ => self.program.bootstrap(&self.graph, self.param.k()),
        }
    }

    pub fn check(&self) -> Result<(), String> {
        let bound = (self.budget)(self.param.kmax()) + 1;
        if self.threads.len() > bound {
            return Err(format!("{} live threads exceed {bound}", self.threads.len()));
        }
        let serving: Vec<_> = self
            .threads
            .iter()
            .filter(|t| matches!(t.phase, Phase::Serving(_)))
            .collect();
        if serving.len() > 1 {
            return Err("more than one serving thread".into());
        }
        if self.clock >= (self.budget)(self.param.kmax()) as u64 && serving.is_empty() {
            return Err(format!("no serving thread at clock {}", self.clock));
        }
        for t in serving {
            if t.graph != self.graph || t.param != self.param {
                return Err(format!("serving thread from {} lags behind the input", t.start));
            }
            if let Phase::Serving(state) = &t.phase {
                self.program.audit(state, &t.graph, t.param.k())?;
            }
        }
        Ok(())
    }
}

impl<P: ShortTermProgram> Maintainer for MuddlingScheduler<P>
where
    P::Rebuild: Clone,
    P::State: Clone,
{
    fn problem(&self) -> &'static str {
        self.program.name()
    }

    fn apply(&mut self, op: &ChangeOp) -> Result<()> {
        self.apply_change(op)
    }

    fn answer(&self) -> Result<bool> {
        Ok(self.query())
    }

    fn audit(&self) -> Result<(), String> {
        self.check()
    }
}

/// Resumable breadth-first construction of the depth-`2k` vertex-cover
/// search tree. The first iteration appends four levels, later ones two.
#[derive(Clone, Debug)]
pub struct CoverRebuild {
    limit: usize,
    depth: usize,
    iterations: usize,
    frontier: Vec<Vec<usize>>,
    best: Option<Vec<usize>>,
}

impl CoverRebuild {
    pub fn new(graph: &DynGraph, k: usize) -> Self {
        let empty_covers = covers(graph, &[]);
        CoverRebuild {
            limit: 2 * k,
            depth: 0,
            iterations: 0,
            frontier: if empty_covers { Vec::new() } else { vec![Vec::new()] },
            best: empty_covers.then(Vec::new),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.best.is_some() || self.depth >= self.limit || self.frontier.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn level(&mut self, graph: &DynGraph) {
        let mut next = Vec::new();
        let mut found: Vec<Vec<usize>> = Vec::new();
        for cand in &self.frontier {
            let (u, v) = smallest_uncovered(graph, cand).expect("frontier sets are not covers");
            for x in [u, v] {
                let mut c = cand.clone();
                c.push(x);
                c.sort_unstable();
                if covers(graph, &c) {
                    found.push(c);
                } else {
                    next.push(c);
                }
            }
        }
        next.sort();
        next.dedup();
        self.depth += 1;
        self.frontier = next;
        self.best = found.into_iter().min();
    }

    pub fn iterate(&mut self, graph: &DynGraph) {
        let levels = if self.iterations == 0 { 4 } else { 2 };
        self.iterations += 1;
        for _ in 0..levels {
            if self.is_complete() {
                return;
            }
            self.level(graph);
        }
    }

    /// Smallest cover (lexicographically first among equal sizes) of size
    /// at most `2k`, or `None` on overflow. Levels the budget did not reach
    /// are completed here.
    pub fn result(&mut self, graph: &DynGraph) -> Option<Vec<usize>> {
        while !self.is_complete() {
            self.level(graph);
        }
        self.best.clone()
    }
}

/// Iterations the cover rebuild needs for parameter `k`.
pub fn compression_budget(k: usize) -> usize {
    k.saturating_sub(1).max(1)
}

/// Minimum vertex cover of size at most `2k`, or `None` if there is none,
/// computed in `compression_budget(k)` iterations.
pub fn vc_rebuild_2k(graph: &DynGraph, k: usize) -> Option<Vec<usize>> {
    let mut r = CoverRebuild::new(graph, k);
    for _ in 0..compression_budget(k) {
        r.iterate(graph);
    }
    debug_assert!(r.is_complete());
    r.result(graph)
}

/// A minimum vertex cover, or the overflow marker once the minimum exceeds `2k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionState {
    pub cover: Option<Vec<usize>>,
}

impl CompressionState {
    pub fn is_overflowed(&self) -> bool {
        self.cover.is_none()
    }
}

/// One compression round: the lexicographically smallest cover
/// `Z ∪ N(C_t \ Z)` of size `|C_t| - 1` meeting `C_t` exactly in `Z`, or
/// `C_t` itself if there is none.
pub fn compress(graph: &DynGraph, ct: &[usize]) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u64..1 << ct.len() {
        let z: Vec<usize> = (0..ct.len()).filter(|i| mask & (1 << i) != 0).map(|i| ct[i]).collect();
        let mut c: Vec<usize> = z.clone();
        for (i, &x) in ct.iter().enumerate() {
            if mask & (1 << i) == 0 {
                c.extend(graph.neighbours(x));
            }
        }
        c.sort_unstable();
        c.dedup();
        if c.len() + 1 != ct.len() {
            continue;
        }
        if c.iter().any(|x| ct.contains(x) && !z.contains(x)) {
            continue;
        }
        if covers(graph, &c) && best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    }
    best.unwrap_or_else(|| ct.to_vec())
}

/// Updates the cover for a change already applied to `graph` (parameter `k`
/// after the change).
pub fn compress_step(state: &mut CompressionState, graph: &DynGraph, k: usize, op: &ChangeOp) {
    let Some(cover) = state.cover.as_mut() else {
        return;
    };
    match *op {
        ChangeOp::InsE(u, v) => {
            let mut ct = cover.clone();
            let u = u.min(v);
            if !ct.contains(&u) {
                ct.push(u);
                ct.sort_unstable();
            }
            *cover = compress(graph, &ct);
        }
        ChangeOp::DelE(..) => {
            *cover = compress(graph, cover);
        }
        _ => {}
    }
    if cover.len() > 2 * k {
        state.cover = None;
    }
}

/// Short-term program: a cover kept minimal by one compression per change.
#[derive(Clone, Copy, Debug, Default)]
pub struct VcCompression;

impl ShortTermProgram for VcCompression {
    type Rebuild = CoverRebuild;
    type State = CompressionState;

    fn name(&self) -> &'static str {
        "vcover-compress"
    }

    fn begin(&self, graph: &DynGraph, k: usize) -> CoverRebuild {
        CoverRebuild::new(graph, k)
    }

    fn iterate(&self, rebuild: &mut CoverRebuild, graph: &DynGraph) {
        rebuild.iterate(graph);
    }

    fn finish(&self, rebuild: &mut CoverRebuild, graph: &DynGraph, _k: usize) -> CompressionState {
        CompressionState {
            cover: rebuild.result(graph),
        }
    }

    fn apply(&self, state: &mut CompressionState, graph: &DynGraph, k: usize, op: &ChangeOp) {
        compress_step(state, graph, k, op);
    }

    fn answer(&self, state: &CompressionState, _graph: &DynGraph, k: usize) -> bool {
        state.cover.as_ref().is_some_and(|c| c.len() <= k)
    }

    fn bootstrap(&self, graph: &DynGraph, k: usize) -> bool {
        vc_para_t_solve(graph, k).cover.is_some()
    }

    fn audit(&self, state: &CompressionState, graph: &DynGraph, k: usize) -> Result<(), String> {
        match &state.cover {
            Some(c) if !covers(graph, c) => Err(format!("{c:?} is not a vertex cover")),
            Some(c) if c.len() > 2 * k => Err(format!("{c:?} is larger than {}", 2 * k)),
            _ => Ok(()),
        }
    }
}

/// Vertex-cover maintainer combining compression and the scheduler.
pub type VcCompressState = MuddlingScheduler<VcCompression>;

pub fn vc_compress_maintainer(n: usize, kmax: usize) -> Result<VcCompressState> {
    MuddlingScheduler::new(VcCompression, compression_budget, n, kmax)
}
