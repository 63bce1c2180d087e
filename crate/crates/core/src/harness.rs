//! Seeded differential testing against the oracles, and per-change timing
//! against recomputation from scratch.

use std::time::Instant;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::change::ChangeOp;
use crate::closest_string::{cs_solve, StringInstance};
use crate::error::{Error, Result};
use crate::fvs::fvs_solve;
use crate::knapsack::KnapsackState;
use crate::longpath::lp_para_t_solve;
use crate::maintainer::Maintainer;
use crate::oracles::{gen_change_sequence, gen_header, Shadow};
use crate::plc::PlcState;
use crate::script::{Problem, Script};
use crate::vertex_cover::vc_para_t_solve;

/// Seed of trial `trial` in a run started from `seed`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(trial as u64)
}

/// The script a trial runs: a random header and `len` changes, each
/// followed by a query.
pub fn generated_script(problem: Problem, seed: u64, len: usize) -> Script {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let header = gen_header(problem, &mut rng);
    let ops = gen_change_sequence(&header, &mut rng, len);
    Script::new(header, ops)
}

/// First disagreement of a trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub seed: u64,
    /// 1-based index of the offending command.
    pub step: usize,
    pub detail: String,
    /// The script up to and including the offending command.
    pub reproducer: Script,
}

/// Runs `script` on the maintainer and the shadow oracle side by side,
/// auditing after every command. `flip_query` inverts the maintainer's
/// answer to that (1-based) query, for harness self-tests.
pub fn check_script(script: &Script, seed: u64, flip_query: Option<usize>) -> Result<(), Mismatch> {
    let fail = |step: usize, detail: String| Mismatch {
        seed,
        step,
        detail,
        reproducer: Script {
            header: script.header.clone(),
            commands: script.commands[..step].to_vec(),
        },
    };
    let mut m = script.header.build().map_err(|e| fail(0, format!("cannot build maintainer: {e}")))?;
    let mut shadow = Shadow::new(&script.header);
    let mut queries = 0;
    for (i, (_, op)) in script.commands.iter().enumerate() {
        let step = i + 1;
        m.apply(op).map_err(|e| fail(step, format!("`{op}` rejected: {e}")))?;
        shadow.apply(op);
        m.audit().map_err(|e| fail(step, format!("audit after `{op}`: {e}")))?;
        if *op == ChangeOp::Query {
            queries += 1;
            let got = m.answer().map_err(|e| fail(step, format!("query failed: {e}")))?;
            let got = if flip_query == Some(queries) { !got } else { got };
            let want = shadow.answer().map_err(|e| fail(step, format!("oracle failed: {e}")))?;
            if got != want {
                return Err(fail(step, format!("query {queries}: maintainer says {got}, oracle says {want}")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub problem: Problem,
    pub trials: usize,
    pub passed: usize,
    pub first_failure: Option<(usize, Mismatch)>,
}

impl VerifyReport {
    pub fn summary(&self) -> String {
        format!("pass {}/{}", self.passed, self.trials)
    }
}

/// Runs one trial of [`verify`].
pub fn verify_trial(problem: Problem, seed: u64, trial: usize, len: usize, fault: Option<(usize, usize)>) -> Result<(), Mismatch> {
    let s = trial_seed(seed, trial);
    let flip = fault.filter(|&(t, _)| t == trial).map(|(_, q)| q);
    check_script(&generated_script(problem, s, len), s, flip)
}

/// Folds trial outcomes (in trial order) into a report.
pub fn collect_report(problem: Problem, outcomes: Vec<Result<(), Mismatch>>) -> VerifyReport {
    let trials = outcomes.len();
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    let first_failure = outcomes.into_iter().enumerate().find_map(|(i, o)| o.err().map(|m| (i, m)));
    VerifyReport {
        problem,
        trials,
        passed,
        first_failure,
    }
}

/// `trials` seeded trials of `len` changes each. `fault = (trial, query)`
/// inverts one maintainer answer.
pub fn verify(problem: Problem, seed: u64, trials: usize, len: usize, fault: Option<(usize, usize)>) -> VerifyReport {
    let outcomes = (0..trials).map(|t| verify_trial(problem, seed, t, len, fault)).collect();
    collect_report(problem, outcomes)
}

/// One benchmarked change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub idx: usize,
    pub kind: &'static str,
    pub maint_ns: u128,
    pub recompute_ns: u128,
    pub answer: bool,
}

pub const BENCH_CSV_HEADER: &str = "idx,kind,maint_ns,recompute_ns,answer";

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.idx,
            self.kind,
            self.maint_ns,
            self.recompute_ns,
            if self.answer { "yes" } else { "no" }
        )
    }
}

/// Answer computed from scratch on the shadow instance with the static solvers.
pub fn recompute(shadow: &Shadow) -> Result<bool> {
    let h = &shadow.header;
    Ok(match h.problem {
        Problem::VCover | Problem::VCoverCompress => vc_para_t_solve(&shadow.graph, shadow.k).cover.is_some(),
        Problem::LongPath => lp_para_t_solve(&shadow.graph, h.s.unwrap(), h.t.unwrap(), shadow.k)?.found,
        Problem::Fvs => fvs_solve(&shadow.graph, shadow.k).witness.is_some(),
        Problem::Plc => {
            let (n, d) = h.points.unwrap();
            let mut s = PlcState::new(n, d, shadow.kmax)?;
            for _ in shadow.k..shadow.kmax {
                s.apply(&ChangeOp::DecK)?;
            }
            for (i, p) in shadow.coords.iter().enumerate() {
                for (dim, c) in p.iter().enumerate() {
                    for bit in 0..c.bits() {
                        if c.bit(bit) {
                            s.apply(&ChangeOp::FlipBit {
                                point: i + 1,
                                dim: dim + 1,
                                bit: bit as usize,
                            })?;
                        }
                    }
                }
                if shadow.enabled[i] {
                    s.apply(&ChangeOp::Enable(i + 1))?;
                }
            }
            s.answer()?
        }
        Problem::Knapsack => {
            let mut s = KnapsackState::new(shadow.items.len(), h.bmax.unwrap());
            for (i, (p, w)) in shadow.items.iter().enumerate() {
                if *p != BigUint::default() || *w != BigUint::default() {
                    s.set_item(i + 1, p.clone(), w.clone())?;
                }
            }
            s.set_capacity(shadow.capacity.clone());
            s.set_threshold(shadow.threshold.clone());
            s.query()?
        }
        Problem::CString => {
            let strings = shadow
                .strings
                .iter()
                .map(|s| s.as_ref().map(|s| s.chars().collect()))
                .collect::<Option<Vec<Vec<char>>>>()
                .ok_or_else(|| Error::Instance("undefined string".into()))?;
            cs_solve(&StringInstance {
                alphabet: h.alphabet.clone().unwrap_or_default().chars().collect(),
                strings,
                d: h.d.unwrap_or(0),
            })
            .witness
            .is_some()
        }
    })
}

/// Times every change of `script` (queries excluded) on the maintainer and
/// by recomputation. The two answers must agree.
pub fn bench_script(script: &Script) -> Result<Vec<BenchRecord>> {
    let mut m = script.header.build()?;
    let mut shadow = Shadow::new(&script.header);
    let mut out = Vec::new();
    for (_, op) in script.commands.iter().filter(|(_, op)| *op != ChangeOp::Query) {
        let start = Instant::now();
        m.apply(op)?;
        let answer = m.answer()?;
        let maint_ns = start.elapsed().as_nanos();
        shadow.apply(op);
        let start = Instant::now();
        let again = recompute(&shadow)?;
        let recompute_ns = start.elapsed().as_nanos();
        if answer != again {
            return Err(Error::Invariant(format!(
                "change {} (`{op}`): maintainer says {answer}, recomputation says {again}",
                out.len() + 1
            )));
        }
        out.push(BenchRecord {
            idx: out.len() + 1,
            kind: op.kind(),
            maint_ns,
            recompute_ns,
            answer,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::run;

    #[test]
    fn vacuous_and_passing_runs() {
        let r = verify(Problem::VCover, 7, 0, 50, None);
        assert_eq!(r.summary(), "pass 0/0");
        let r = verify(Problem::Knapsack, 7, 5, 20, None);
        assert_eq!(r.summary(), "pass 5/5");
    }

    #[test]
    fn injected_fault_is_reported() {
        let r = verify(Problem::Fvs, 3, 4, 10, Some((2, 3)));
        assert_eq!(r.passed, 3);
        let (trial, m) = r.first_failure.unwrap();
        assert_eq!(trial, 2);
        assert_eq!(m.step, 6);
        assert_eq!(m.reproducer.commands.len(), 6);
    }

    #[test]
    fn bench_matches_run() {
        let script = generated_script(Problem::VCoverCompress, 11, 15);
        let rows = bench_script(&script).unwrap();
        assert_eq!(rows.len(), 15);
        let answers: Vec<bool> = rows.iter().map(|r| r.answer).collect();
        assert_eq!(run(&script, false).unwrap(), answers);
        assert!(bench_script(&generated_script(Problem::Plc, 1, 0)).unwrap().is_empty());
    }
}
