use dynparam::harness::verify;
use dynparam::script::{run, Problem};

fn assert_clean(problem: Problem, trials: usize, len: usize) {
    let r = verify(problem, 20240601, trials, len, None);
    if let Some((trial, m)) = &r.first_failure {
        panic!(
            "{problem}: trial {trial} failed at step {}: {}\n{}",
            m.step,
            m.detail,
            m.reproducer.to_text()
        );
    }
    assert_eq!(r.passed, trials);
}

#[test]
fn vcover_agrees_with_oracle() {
    assert_clean(Problem::VCover, 150, 50);
}

#[test]
fn vcover_compress_agrees_with_oracle() {
    assert_clean(Problem::VCoverCompress, 150, 50);
}

#[test]
fn longpath_agrees_with_oracle() {
    assert_clean(Problem::LongPath, 60, 50);
}

#[test]
fn fvs_agrees_with_oracle() {
    assert_clean(Problem::Fvs, 150, 50);
}

#[test]
fn plc_agrees_with_oracle() {
    assert_clean(Problem::Plc, 150, 50);
}

#[test]
fn knapsack_agrees_with_oracle() {
    assert_clean(Problem::Knapsack, 150, 50);
}

#[test]
fn cstring_agrees_with_oracle() {
    assert_clean(Problem::CString, 150, 20);
}

#[test]
fn reproducer_scripts_replay() {
    let r = verify(Problem::VCover, 5, 3, 12, Some((1, 4)));
    let (_, m) = r.first_failure.unwrap();
    let answers = run(&m.reproducer, true).unwrap();
    assert_eq!(answers.len(), 4);
}
