//! Closest string by a bounded search tree walked depth-first with an
//! explicit stack of branch tuples.

use crate::change::ChangeOp;
use crate::error::{Error, Result};
use crate::maintainer::Maintainer;

/// Number of positions where `a` and `b` differ.
pub fn hamming<T: PartialEq>(a: &[T], b: &[T]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::Instance(format!("lengths {} and {} differ", a.len(), b.len())));
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Positions where `a` and `b` differ, scanning left to right and stopping
/// after `limit` of them.
fn mismatches(a: &[char], b: &[char], limit: usize) -> Vec<usize> {
    (0..a.len()).filter(|&j| a[j] != b[j]).take(limit).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringInstance {
    pub alphabet: Vec<char>,
    pub strings: Vec<Vec<char>>,
    pub d: usize,
}

impl StringInstance {
    pub fn new(alphabet: &str, strings: &[&str], d: usize) -> Result<Self> {
        let inst = StringInstance {
            alphabet: alphabet.chars().collect(),
            strings: strings.iter().map(|s| s.chars().collect()).collect(),
            d,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let Some(first) = self.strings.first() else {
            return Ok(());
        };
        for (i, s) in self.strings.iter().enumerate() {
            if s.len() != first.len() {
                return Err(Error::Instance(format!("string {} has length {}, expected {}", i + 1, s.len(), first.len())));
            }
            if let Some(c) = s.iter().find(|c| !self.alphabet.contains(c)) {
                return Err(Error::Instance(format!("string {} uses {c:?} outside the alphabet", i + 1)));
            }
        }
        Ok(())
    }
}

/// One stack entry: at `level` the candidate took the symbol of string
/// `string` at `position`, its `rank`-th mismatch (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CsFrame {
    pub level: usize,
    pub string: usize,
    pub position: usize,
    pub rank: usize,
    replaced: char,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsOutcome {
    pub witness: Option<String>,
    /// Search-tree nodes visited.
    pub nodes: usize,
    /// Deepest stack reached.
    pub max_depth: usize,
}

/// Node budget `(d+1)^(d+1)`.
pub fn cs_node_bound(d: usize) -> u128 {
    (d as u128 + 1).pow(d as u32 + 1)
}

pub fn cs_solve(inst: &StringInstance) -> CsOutcome {
    let mut out = CsOutcome {
        witness: None,
        nodes: 0,
        max_depth: 0,
    };
    let Some(first) = inst.strings.first() else {
        out.witness = Some(String::new());
        return out;
    };
    let d = inst.d;
    let mut cand = first.clone();
    let mut stack: Vec<CsFrame> = Vec::new();
    loop {
        out.nodes += 1;
        out.max_depth = out.max_depth.max(stack.len());
        let far = inst
            .strings
            .iter()
            .position(|s| mismatches(&cand, s, d + 1).len() > d);
        let Some(i) = far else {
            out.witness = Some(cand.iter().collect());
            return out;
        };
        if stack.len() < d {
            let j = mismatches(&cand, &inst.strings[i], 1)[0];
            stack.push(CsFrame {
                level: stack.len() + 1,
                string: i,
                position: j,
                rank: 1,
                replaced: cand[j],
            });
            cand[j] = inst.strings[i][j];
            continue;
        }
        // backtrack to the deepest frame that still has an untried mismatch
        loop {
            let Some(top) = stack.pop() else {
                return out;
            };
            cand[top.position] = top.replaced;
            if top.rank <= d {
                let s = &inst.strings[top.string];
                let pos = mismatches(&cand, s, top.rank + 1);
                if let Some(&j) = pos.get(top.rank) {
                    stack.push(CsFrame {
                        position: j,
                        rank: top.rank + 1,
                        replaced: cand[j],
                        ..top
                    });
                    cand[j] = s[j];
                    break;
                }
            }
        }
    }
}

/// Script-facing wrapper: strings are defined one by one, queries run the solver.
#[derive(Clone, Debug)]
pub struct CsState {
    alphabet: Vec<char>,
    len: usize,
    d: usize,
    strings: Vec<Option<Vec<char>>>,
}

impl CsState {
    pub fn new(alphabet: &str, len: usize, d: usize) -> Result<Self> {
        if alphabet.is_empty() {
            return Err(Error::Instance("empty alphabet".into()));
        }
        Ok(CsState {
            alphabet: alphabet.chars().collect(),
            len,
            d,
            strings: Vec::new(),
        })
    }

    pub fn set_string(&mut self, index: usize, text: &str) -> Result<()> {
        if index == 0 {
            return Err(Error::IndexOutOfRange {
                what: "string",
                index,
                max: usize::MAX,
            });
        }
        let s: Vec<char> = text.chars().collect();
        if s.len() != self.len {
            return Err(Error::Instance(format!("string {index} has length {}, expected {}", s.len(), self.len)));
        }
        if let Some(c) = s.iter().find(|c| !self.alphabet.contains(c)) {
            return Err(Error::Instance(format!("symbol {c:?} outside the alphabet")));
        }
        if self.strings.len() < index {
            self.strings.resize(index, None);
        }
        self.strings[index - 1] = Some(s);
        Ok(())
    }

    pub fn instance(&self) -> Result<StringInstance> {
        let strings = self
            .strings
            .iter()
            .enumerate()
            .map(|(i, s)| s.clone().ok_or_else(|| Error::Instance(format!("string {} is undefined", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(StringInstance {
            alphabet: self.alphabet.clone(),
            strings,
            d: self.d,
        })
    }
}

impl Maintainer for CsState {
    fn problem(&self) -> &'static str {
        "cstring"
    }

    fn apply(&mut self, op: &ChangeOp) -> Result<()> {
        match op {
            ChangeOp::SetString(i, text) => self.set_string(*i, text),
            ChangeOp::Query => Ok(()),
            _ => Err(Error::Unsupported {
                op: op.to_string(),
                problem: self.problem(),
            }),
        }
    }

    fn answer(&self) -> Result<bool> {
        let inst = self.instance()?;
        let out = cs_solve(&inst);
        if let Some(w) = &out.witness {
            let w: Vec<char> = w.chars().collect();
            for s in &inst.strings {
                if hamming(&w, s)? > inst.d {
                    return Err(Error::Invariant(format!("witness {w:?} too far from {s:?}")));
                }
            }
        }
        Ok(out.witness.is_some())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(strings: &[&str], d: usize) -> CsOutcome {
        cs_solve(&StringInstance::new("AB", strings, d).unwrap())
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming(b"AAAA", b"AAAB").unwrap(), 1);
        assert_eq!(hamming(b"ABAB", b"ABAB").unwrap(), 0);
        assert_eq!(hamming(b"AB", b"BA").unwrap(), 2);
        assert!(hamming(b"A", b"AB").is_err());
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&["AAAA", "AAAB", "ABAA"], 1).witness.as_deref(), Some("AAAA"));
        assert_eq!(solve(&["AA", "BB"], 0).witness, None);
        let w = solve(&["AB", "BA"], 1).witness.unwrap();
        assert!(["AA", "BB", "AB", "BA"].contains(&w.as_str()));
    }

    #[test]
    fn needs_a_second_level() {
        // s1 must change in two places to get within 2 of both others
        let out = solve(&["AAAAAA", "BBBBAA", "AABBBB"], 2);
        let w: Vec<char> = out.witness.clone().unwrap().chars().collect();
        for s in ["AAAAAA", "BBBBAA", "AABBBB"] {
            assert!(hamming(&w, &s.chars().collect::<Vec<_>>()).unwrap() <= 2);
        }
        assert!(out.max_depth <= 2);
        assert!(out.nodes as u128 <= cs_node_bound(2));
    }

    #[test]
    fn exhausts_within_budget() {
        let out = solve(&["AAAA", "BBBB", "ABAB"], 1);
        assert_eq!(out.witness, None);
        assert!(out.nodes as u128 <= cs_node_bound(1));
    }

    #[test]
    fn state_rejects_gaps_and_bad_symbols() {
        let mut s = CsState::new("AB", 2, 1).unwrap();
        assert!(s.answer().unwrap());
        assert!(s.set_string(1, "AC").is_err());
        assert!(s.set_string(1, "ABA").is_err());
        s.set_string(2, "AB").unwrap();
        assert!(s.answer().is_err());
        s.set_string(1, "BA").unwrap();
        assert!(s.answer().unwrap());
    }
}
