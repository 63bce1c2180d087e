use std::process::ExitCode;
use std::time::Instant;

use dynparam::closest_string::{cs_node_bound, cs_solve};
use dynparam::colouring::{check_universal, FamilyParams};
use dynparam::fvs::{fvs_node_bound, FvsState};
use dynparam::harness::{check_script, generated_script, trial_seed};
use dynparam::knapsack::KnapsackState;
use dynparam::longpath::LongPathState;
use dynparam::muddling::vc_compress_maintainer;
use dynparam::oracles::{
    boundary_crossings, gen_boundary_sequence, gen_cstring_instance, gen_min_degree3_graph, oracle_cstring, oracle_girth,
    oracle_interval_row, oracle_min_fvs, oracle_vc, rational_collinear, Shadow,
};
use dynparam::plc::PlcState;
use dynparam::script::{Problem, Script};
use dynparam::vertex_cover::{vc_para_t_solve, VcState};
use dynparam::{ChangeOp, Maintainer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SEED: u64 = 0x5eed_2024;
const TRIALS: usize = 1000;
const CHANGES: usize = 50;

#[derive(Default, Clone, Copy)]
struct Tally {
    trials: usize,
    passed: usize,
    queries: usize,
    yes: usize,
    /// Largest observed value of `measure / bound`.
    worst: f64,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.trials += o.trials;
        self.passed += o.passed;
        self.queries += o.queries;
        self.yes += o.yes;
        self.worst = self.worst.max(o.worst);
        self
    }

    fn ok(&self) -> bool {
        self.trials > 0 && self.passed == self.trials
    }
}

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, ok: bool, what: &str, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("[{}] {id} {what}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

/// Replays a generated script on `m` next to the shadow oracle. `extra` is
/// run after every command and reports `measure / bound` for the trial.
fn drive<M: Maintainer>(
    script: &Script,
    m: &mut M,
    mut extra: impl FnMut(&M, &ChangeOp, &Shadow) -> Result<f64, String>,
) -> Result<Tally, String> {
    let mut shadow = Shadow::new(&script.header);
    let mut t = Tally {
        trials: 1,
        passed: 1,
        ..Tally::default()
    };
    for (i, (_, op)) in script.commands.iter().enumerate() {
        m.apply(op).map_err(|e| format!("step {}: `{op}` rejected: {e}", i + 1))?;
        shadow.apply(op);
        m.audit().map_err(|e| format!("step {}: audit: {e}", i + 1))?;
        t.worst = t.worst.max(extra(m, op, &shadow).map_err(|e| format!("step {}: {e}", i + 1))?);
        if *op == ChangeOp::Query {
            let got = m.answer().map_err(|e| e.to_string())?;
            let want = shadow.answer().map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!("step {}: maintainer {got}, oracle {want}", i + 1));
            }
            t.queries += 1;
            t.yes += got as usize;
        }
    }
    Ok(t)
}

fn fuzz<F>(problem: Problem, trial: F) -> (Tally, Option<String>)
where
    F: Fn(&Script) -> Result<Tally, String> + Sync,
{
    let outcomes: Vec<_> = (0..TRIALS)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(SEED, i);
            trial(&generated_script(problem, seed, CHANGES)).map_err(|e| format!("seed {seed}: {e}"))
        })
        .collect();
    let mut total = Tally::default();
    let mut first = None;
    for o in outcomes {
        match o {
            Ok(t) => total = total.merge(t),
            Err(e) => {
                total.trials += 1;
                first.get_or_insert(e);
            }
        }
    }
    (total, first)
}

fn fuzz_detail(t: &Tally, first: &Option<String>) -> String {
    let mut s = format!("{}/{} trials, {} queries ({} yes)", t.passed, t.trials, t.queries, t.yes);
    if let Some(e) = first {
        s += &format!("; first failure {e}");
    }
    s
}

fn graph_dims(s: &Script) -> (usize, usize) {
    (s.header.domain.unwrap(), s.header.kmax.unwrap())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut rep = Report { failed: 0 };

    let (vc, vc_err) = fuzz(Problem::VCover, |s| {
        let (n, kmax) = graph_dims(s);
        let tree_bound = (1usize << (kmax + 1)) - 1;
        drive(s, &mut VcState::new(n, kmax).map_err(|e| e.to_string())?, |m, _, sh| {
            let nodes = m.tree().node_count();
            if nodes > tree_bound {
                return Err(format!("search tree has {nodes} nodes, bound {tree_bound}"));
            }
            let k = m.param().k();
            let run = vc_para_t_solve(m.graph(), k);
            let step_bound = 1usize << (k + 2);
            if run.steps > step_bound {
                return Err(format!("traversal took {} steps, bound {step_bound}", run.steps));
            }
            if run.cover.is_some() != oracle_vc(&sh.graph, k).map_err(|e| e.to_string())? {
                return Err("traversal answer disagrees with the oracle".into());
            }
            Ok((nodes as f64 / tree_bound as f64).max(run.steps as f64 / step_bound as f64))
        })
    });
    let (vcc, vcc_err) = fuzz(Problem::VCoverCompress, |s| {
        let (n, kmax) = graph_dims(s);
        drive(s, &mut vc_compress_maintainer(n, kmax).map_err(|e| e.to_string())?, |m, _, _| {
            m.check().map(|_| 0.0)
        })
    });
    let (lp, lp_err) = fuzz(Problem::LongPath, |s| {
        let h = &s.header;
        let mut m = LongPathState::new(h.domain.unwrap(), h.s.unwrap(), h.t.unwrap(), h.ell.unwrap(), h.kmax.unwrap(), false)
            .map_err(|e| e.to_string())?;
        drive(s, &mut m, |m, op, _| {
            if matches!(op, ChangeOp::InsE(..) | ChangeOp::DelE(..)) {
                m.audit_against_rebuild().map_err(|e| format!("after `{op}`: {e}"))?;
            }
            Ok(0.0)
        })
    });
    let (fvs, fvs_err) = fuzz(Problem::Fvs, |s| {
        let (n, kmax) = graph_dims(s);
        drive(s, &mut FvsState::new(n, kmax).map_err(|e| e.to_string())?, |m, _, _| {
            let k = m.param().k();
            let bound = fvs_node_bound(k);
            let nodes = m.outcome().nodes as u128;
            if nodes > bound {
                return Err(format!("{nodes} branching nodes at k = {k}, bound {bound}"));
            }
            Ok(nodes as f64 / bound as f64)
        })
    });
    let (plc, plc_err) = fuzz(Problem::Plc, |s| {
        let (n, d) = s.header.points.unwrap();
        drive(s, &mut PlcState::new(n, d, s.header.kmax.unwrap()).map_err(|e| e.to_string())?, |m, op, _| {
            if let ChangeOp::FlipBit { .. } = op {
                let ps = m.points();
                for a in 1..=n {
                    for b in a + 1..=n {
                        for c in b + 1..=n {
                            if ps.collinear(a, b, c) != rational_collinear(ps.point(a), ps.point(b), ps.point(c)) {
                                return Err(format!("collinearity of ({a}, {b}, {c}) is stale after `{op}`"));
                            }
                        }
                    }
                }
            }
            Ok(0.0)
        })
    });
    let (ks, ks_err) = fuzz(Problem::Knapsack, |s| {
        let n = s.header.items.unwrap();
        let bmax = s.header.bmax.unwrap();
        drive(s, &mut KnapsackState::new(n, bmax), |m, _, sh| {
            for i in 1..=n + 1 {
                for j in i - 1..=n {
                    let row = oracle_interval_row(&sh.items, i, j, bmax).map_err(|e| e.to_string())?;
                    for (b, want) in row.iter().enumerate() {
                        if m.entry(i, j, b) != want.as_ref() {
                            return Err(format!("A({i}, {j}, {b}) = {:?}, oracle {want:?}", m.entry(i, j, b)));
                        }
                    }
                }
            }
            Ok(0.0)
        })
    });

    let all = [
        (Problem::VCover, &vc, &vc_err),
        (Problem::VCoverCompress, &vcc, &vcc_err),
        (Problem::LongPath, &lp, &lp_err),
        (Problem::Fvs, &fvs, &fvs_err),
        (Problem::Plc, &plc, &plc_err),
        (Problem::Knapsack, &ks, &ks_err),
    ];
    let ok1 = all.iter().all(|(_, t, e)| t.ok() && e.is_none() && t.trials == TRIALS);
    let detail1 = all
        .iter()
        .map(|(p, t, e)| format!("{p} {}", fuzz_detail(t, e)))
        .collect::<Vec<_>>()
        .join("; ");
    rep.line("1", ok1, &format!("oracle agreement, {TRIALS} trials x {CHANGES} changes"), detail1);

    let params = [(8, 2, 2), (10, 3, 2), (6, 3, 3)];
    let mut results = Vec::new();
    let mut ok2 = true;
    for (n, k, c) in params {
        let r = FamilyParams::new(n, k, c).and_then(check_universal);
        ok2 &= matches!(r, Ok(true));
        results.push(format!("(n={n}, k={k}, c={c}) {:?}", r));
    }
    rep.line("2", ok2, "colouring family universality", results.join("; "));

    rep.line(
        "3",
        vc.ok() && vc.worst <= 1.0,
        "vertex-cover tree size <= 2^(kmax+1)-1 and traversal steps <= 2^(k+2)",
        format!("{}; worst measure/bound {:.3}", fuzz_detail(&vc, &vc_err), vc.worst),
    );

    let girth_cases: Vec<Result<(usize, usize), String>> = (0..500)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(SEED ^ 4, i));
            let n = rng.gen_range(4..=12);
            let g = gen_min_degree3_graph(&mut rng, n);
            let girth = oracle_girth(&g).ok_or_else(|| format!("case {i}: minimum degree three graph is acyclic"))?;
            let f = oracle_min_fvs(&g).map_err(|e| e.to_string())?;
            if girth > 2 * f {
                return Err(format!("case {i}: girth {girth} > 2 * {f}"));
            }
            Ok((girth, f))
        })
        .collect();
    let girth_fail = girth_cases.iter().find_map(|r| r.as_ref().err().cloned());
    let girth_ok = girth_cases.iter().filter(|r| r.is_ok()).count();
    rep.line(
        "4",
        fvs.ok() && fvs.worst <= 1.0 && girth_fail.is_none(),
        "fvs branching nodes <= (2k)^(k+1); girth <= 2 * min fvs on min-degree-3 graphs",
        format!(
            "{}; worst nodes/bound {:.4}; girth {girth_ok}/500{}",
            fuzz_detail(&fvs, &fvs_err),
            fvs.worst,
            girth_fail.map(|e| format!(" ({e})")).unwrap_or_default()
        ),
    );

    rep.line(
        "5",
        lp.ok(),
        "long-path relation equals rebuild after every insertion and deletion",
        fuzz_detail(&lp, &lp_err),
    );

    rep.line(
        "6",
        ks.ok(),
        "knapsack interval table equals brute force after every change",
        fuzz_detail(&ks, &ks_err),
    );

    const BOUNDARY_RUNS: usize = TRIALS;
    const BOUNDARY_LEN: usize = CHANGES;
    const MIN_CROSSINGS: usize = 5;
    let boundary: Vec<Result<(usize, usize), String>> = (0..BOUNDARY_RUNS)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(SEED ^ 7, i);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (h, ops) = gen_boundary_sequence(&mut rng, BOUNDARY_LEN).map_err(|e| e.to_string())?;
            let (up, down) = boundary_crossings(&h, &ops).map_err(|e| e.to_string())?;
            if up < MIN_CROSSINGS || down < MIN_CROSSINGS {
                return Err(format!("seed {seed}: only {up} up / {down} down crossings"));
            }
            check_script(&Script::new(h, ops), seed, None).map_err(|m| format!("seed {seed} step {}: {}", m.step, m.detail))?;
            Ok((up, down))
        })
        .collect();
    let b_ok = boundary.iter().filter(|r| r.is_ok()).count();
    let b_min = boundary.iter().filter_map(|r| r.as_ref().ok()).map(|&(u, d)| u.min(d)).min().unwrap_or(0);
    let b_fail = boundary.iter().find_map(|r| r.as_ref().err().cloned());
    rep.line(
        "7",
        b_ok == BOUNDARY_RUNS,
        &format!("compression maintainer on sequences crossing 2k at least {MIN_CROSSINGS} times each way"),
        format!(
            "{b_ok}/{BOUNDARY_RUNS} sequences of {BOUNDARY_LEN} changes, fewest crossings {b_min}{}",
            b_fail.map(|e| format!("; first failure {e}")).unwrap_or_default()
        ),
    );

    let cs: Vec<Result<bool, String>> = (0..500)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(SEED ^ 8, i));
            let inst = gen_cstring_instance(&mut rng);
            let out = cs_solve(&inst);
            let want = oracle_cstring(&inst).map_err(|e| e.to_string())?;
            if out.witness.is_some() != want {
                return Err(format!("case {i}: solver {}, oracle {want}", out.witness.is_some()));
            }
            if out.nodes as u128 > cs_node_bound(inst.d) {
                return Err(format!("case {i}: {} nodes, bound {}", out.nodes, cs_node_bound(inst.d)));
            }
            if out.max_depth > inst.d + 1 {
                return Err(format!("case {i}: stack depth {} > d + 1", out.max_depth));
            }
            Ok(want)
        })
        .collect();
    let cs_ok = cs.iter().filter(|r| r.is_ok()).count();
    let cs_yes = cs.iter().filter(|r| matches!(r, Ok(true))).count();
    let cs_fail = cs.iter().find_map(|r| r.as_ref().err().cloned());
    rep.line(
        "8",
        cs_ok == 500,
        "closest string agrees with brute force within (d+1)^(d+1) nodes",
        format!(
            "{cs_ok}/500 instances ({cs_yes} yes){}",
            cs_fail.map(|e| format!("; first failure {e}")).unwrap_or_default()
        ),
    );

    rep.line(
        "9",
        plc.ok(),
        "cached collinearity equals rational recomputation after every flip",
        fuzz_detail(&plc, &plc_err),
    );

    println!(
        "{} of 9 criteria passed in {:.1}s",
        9 - rep.failed,
        start.elapsed().as_secs_f64()
    );
    if rep.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
