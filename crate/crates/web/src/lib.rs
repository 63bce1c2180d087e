use std::fmt::Write;

use dynparam::colouring::{check_universal, FamilyParams};
use dynparam::knapsack::KnapsackState;
use dynparam::vertex_cover::VcState;
use dynparam::{ChangeOp, Maintainer};
use num_bigint::BigUint;
use wasm_bindgen::prelude::*;

/// Vertex cover with the dynamic search tree shown after every change.
#[wasm_bindgen]
pub struct VertexCoverDemo {
    state: VcState,
}

#[wasm_bindgen]
impl VertexCoverDemo {
    #[wasm_bindgen(constructor)]
    pub fn new(n: usize, kmax: usize) -> Result<VertexCoverDemo, String> {
        if kmax > n.max(1) || kmax > 6 {
            return Err(format!("kmax must be at most min(n, 6), got {kmax}"));
        }
        Ok(VertexCoverDemo {
            state: VcState::new(n, kmax).map_err(|e| e.to_string())?,
        })
    }

    /// Inserts the edge if absent, deletes it otherwise. Returns presence afterwards.
    pub fn toggle_edge(&mut self, u: usize, v: usize) -> Result<bool, String> {
        let present = self.state.graph().has_edge(u, v);
        let op = if present { ChangeOp::DelE(u, v) } else { ChangeOp::InsE(u, v) };
        self.state.apply(&op).map_err(|e| e.to_string())?;
        Ok(!present)
    }

    pub fn inc_k(&mut self) {
        let _ = self.state.apply(&ChangeOp::IncK);
    }

    pub fn dec_k(&mut self) {
        let _ = self.state.apply(&ChangeOp::DecK);
    }

    pub fn k(&self) -> usize {
        self.state.param().k()
    }

    pub fn answer(&self) -> bool {
        self.state.query(self.k())
    }

    /// Edges as a flat `[u1, v1, u2, v2, ...]` list.
    pub fn edges(&self) -> Vec<u32> {
        self.state.graph().edges().flat_map(|(u, v)| [u as u32, v as u32]).collect()
    }

    /// The search tree, one node per line, indented by depth.
    pub fn tree_text(&self) -> String {
        let g = self.state.graph();
        let mut out = String::new();
        for node in self.state.tree().nodes(g) {
            let name = if node.path.is_empty() { "root".to_string() } else { node.path.clone() };
            write!(out, "{}{name} {{{}}}", "  ".repeat(node.depth), join(&node.candidates)).unwrap();
            if let Some((u, v)) = node.branch {
                write!(out, " branch on {u}-{v}").unwrap();
            }
            if node.is_cover {
                out.push_str(" cover");
            }
            out.push('\n');
        }
        out
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
}

/// Interval knapsack table under item, capacity and threshold changes.
#[wasm_bindgen]
pub struct KnapsackDemo {
    state: KnapsackState,
}

#[wasm_bindgen]
impl KnapsackDemo {
    #[wasm_bindgen(constructor)]
    pub fn new(n: usize, bmax: usize) -> Result<KnapsackDemo, String> {
        if n == 0 || n > 12 || bmax > 64 {
            return Err("the demo allows 1 to 12 items and bmax up to 64".into());
        }
        Ok(KnapsackDemo {
            state: KnapsackState::new(n, bmax),
        })
    }

    pub fn set_item(&mut self, item: usize, profit: u32, weight: u32) -> Result<(), String> {
        self.state
            .set_item(item, BigUint::from(profit), BigUint::from(weight))
            .map_err(|e| e.to_string())
    }

    pub fn set_capacity(&mut self, b: u32) {
        self.state.set_capacity(BigUint::from(b));
    }

    pub fn set_threshold(&mut self, t: u32) {
        self.state.set_threshold(BigUint::from(t));
    }

    pub fn answer(&self) -> Result<bool, String> {
        self.state.query().map_err(|e| e.to_string())
    }

    /// Rows `A(1, j, ·)` for `j = 0..=n` as tab-separated text; `-` marks
    /// unreachable weights.
    pub fn prefix_table(&self) -> String {
        let n = self.state.n();
        let bmax = self.state.bmax();
        let mut out = String::from("j\\b");
        for b in 0..=bmax {
            write!(out, "\t{b}").unwrap();
        }
        out.push('\n');
        for j in 0..=n {
            write!(out, "{j}").unwrap();
            for b in 0..=bmax {
                match self.state.entry(1, j, b) {
                    Some(p) => write!(out, "\t{p}").unwrap(),
                    None => out.push_str("\t-"),
                }
            }
            out.push('\n');
        }
        out
    }
}

/// `universal: yes|no` and the family size, as two lines.
#[wasm_bindgen]
pub fn colouring_check(n: usize, k: usize, c: usize) -> Result<String, String> {
    let params = FamilyParams::new(n, k, c).map_err(|e| e.to_string())?;
    let universal = check_universal(params).map_err(|e| e.to_string())?;
    let size = params.cardinality().map_or("overflow".to_string(), |s| s.to_string());
    Ok(format!("universal: {}\ncardinality: {size}", if universal { "yes" } else { "no" }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_needs_two() {
        let mut d = VertexCoverDemo::new(3, 2).unwrap();
        for (u, v) in [(1, 2), (2, 3), (1, 3)] {
            assert!(d.toggle_edge(u, v).unwrap());
        }
        assert!(d.answer());
        d.dec_k();
        assert_eq!(d.k(), 1);
        assert!(!d.answer());
        assert!(!d.toggle_edge(1, 3).unwrap());
        assert!(d.answer());
        assert_eq!(d.edges(), vec![1, 2, 2, 3]);
        assert!(d.tree_text().starts_with("root {} branch on 1-2\n"));
    }

    #[test]
    fn knapsack_table() {
        let mut d = KnapsackDemo::new(2, 3).unwrap();
        d.set_item(1, 5, 2).unwrap();
        d.set_item(2, 4, 1).unwrap();
        d.set_capacity(3);
        d.set_threshold(9);
        assert!(d.answer().unwrap());
        d.set_threshold(10);
        assert!(!d.answer().unwrap());
        assert_eq!(d.prefix_table().lines().nth(3), Some("2\t0\t4\t5\t9"));
    }

    #[test]
    fn colouring() {
        assert!(colouring_check(8, 2, 2).unwrap().starts_with("universal: yes\ncardinality: "));
        assert!(colouring_check(0, 2, 2).is_err());
    }
}
