//! Knapsack maintained through the interval table `A(i, j, b)`: the largest
//! profit of a subset of items `i..=j` whose weights sum to exactly `b`.

use num_bigint::BigUint;

use crate::change::ChangeOp;
use crate::error::{Error, Result};
use crate::maintainer::Maintainer;

/// A profit, or `None` when no subset reaches the weight exactly.
pub type Entry = Option<BigUint>;

fn max_entry(a: Entry, b: Entry) -> Entry {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub profit: BigUint,
    pub weight: BigUint,
}

/// Items, capacity `B`, threshold `T` and the interval table up to `B_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackState {
    items: Vec<Item>,
    bmax: usize,
    capacity: BigUint,
    threshold: BigUint,
    table: Vec<Entry>,
}

impl KnapsackState {
    /// `n` items of profit and weight zero, `B = T = 0`.
    pub fn new(n: usize, bmax: usize) -> Self {
        let zero = Item {
            profit: BigUint::default(),
            weight: BigUint::default(),
        };
        let mut s = KnapsackState {
            items: vec![zero; n],
            bmax,
            capacity: BigUint::default(),
            threshold: BigUint::default(),
            table: vec![None; (n + 2) * (n + 1) * (bmax + 1)],
        };
        for i in 1..=n + 1 {
            for j in i - 1..=n {
                let idx = s.idx(i, j, 0);
                s.table[idx] = Some(BigUint::default());
            }
        }
        s
    }

    pub fn n(&self) -> usize {
        self.items.len()
    }

    pub fn bmax(&self) -> usize {
        self.bmax
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn capacity(&self) -> &BigUint {
        &self.capacity
    }

    pub fn threshold(&self) -> &BigUint {
        &self.threshold
    }

    fn idx(&self, i: usize, j: usize, b: usize) -> usize {
        (i * (self.n() + 1) + j) * (self.bmax + 1) + b
    }

    /// `A(i, j, b)` for `1 ≤ i ≤ j + 1 ≤ n + 1`, `b ≤ B_max`.
    pub fn entry(&self, i: usize, j: usize, b: usize) -> Option<&BigUint> {
        assert!(i >= 1 && i <= j + 1 && j <= self.n() && b <= self.bmax, "entry ({i}, {j}, {b}) out of range");
        self.table[self.idx(i, j, b)].as_ref()
    }

    /// Best `A(i, l-1, b1) + A(l+1, j, b2) + extra` over `b1 + b2 = total`.
    fn split(&self, i: usize, l: usize, j: usize, total: usize, extra: &BigUint) -> Entry {
        let mut best = None;
        for b1 in 0..=total {
            if let (Some(x), Some(y)) = (self.entry(i, l - 1, b1), self.entry(l + 1, j, total - b1)) {
                best = max_entry(best, Some(x + y + extra));
            }
        }
        best
    }

    /// Replaces item `l` and recomputes every interval containing it.
    pub fn set_item(&mut self, l: usize, profit: BigUint, weight: BigUint) -> Result<()> {
        if l == 0 || l > self.n() {
            return Err(Error::IndexOutOfRange {
                what: "item",
                index: l,
                max: self.n(),
            });
        }
        let w = usize::try_from(&weight).ok().filter(|&w| w <= self.bmax);
        let zero = BigUint::default();
        let mut updates = Vec::new();
        for i in 1..=l {
            for j in l..=self.n() {
                for b in 0..=self.bmax {
                    let without = self.split(i, l, j, b, &zero);
                    let with = match w {
                        Some(w) if w <= b => self.split(i, l, j, b - w, &profit),
                        _ => None,
                    };
                    updates.push((self.idx(i, j, b), max_entry(without, with)));
                }
            }
        }
        for (idx, e) in updates {
            self.table[idx] = e;
        }
        self.items[l - 1] = Item { profit, weight };
        Ok(())
    }

    pub fn set_capacity(&mut self, b: BigUint) {
        self.capacity = b;
    }

    pub fn set_threshold(&mut self, t: BigUint) {
        self.threshold = t;
    }

    /// Some `b ≤ B` with `A(1, n, b) ≥ T`?
    pub fn query(&self) -> Result<bool> {
        let cap = usize::try_from(&self.capacity)
            .ok()
            .filter(|&c| c <= self.bmax)
            .ok_or_else(|| Error::ParameterBound(format!("capacity {} exceeds B_max = {}", self.capacity, self.bmax)))?;
        let n = self.n();
        Ok((0..=cap).any(|b| self.entry(1, n, b).is_some_and(|p| *p >= self.threshold)))
    }
}

impl Maintainer for KnapsackState {
    fn problem(&self) -> &'static str {
        "knapsack"
    }

    fn apply(&mut self, op: &ChangeOp) -> Result<()> {
        match op {
            ChangeOp::SetItem { item, profit, weight } => self.set_item(*item, profit.clone(), weight.clone()),
            ChangeOp::SetB(b) => {
                self.set_capacity(b.clone());
                Ok(())
            }
            ChangeOp::SetT(t) => {
                self.set_threshold(t.clone());
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
        self.query()
    }

    fn audit(&self) -> Result<(), String> {
        for i in 1..=self.n() + 1 {
            for j in i - 1..=self.n() {
                if self.entry(i, j, 0).is_none() {
                    return Err(format!("A({i}, {j}, 0) is bottom"));
                }
                if j + 1 == i && (1..=self.bmax).any(|b| self.entry(i, j, b).is_some()) {
                    return Err(format!("empty interval at {i} has positive-weight entries"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn two_items() -> KnapsackState {
        let mut s = KnapsackState::new(2, 10);
        s.set_item(1, big(3), big(2)).unwrap();
        s.set_item(2, big(4), big(3)).unwrap();
        s
    }

    #[test]
    fn set_item_examples() {
        let mut s = KnapsackState::new(2, 10);
        s.set_item(1, big(3), big(2)).unwrap();
        assert_eq!(s.entry(1, 2, 2), Some(&big(3)));
        assert_eq!(s.entry(1, 2, 0), Some(&big(0)));
        s.set_item(2, big(4), big(3)).unwrap();
        assert_eq!(s.entry(1, 2, 5), Some(&big(7)));
        assert_eq!(s.entry(1, 2, 4), None);
        s.audit().unwrap();
    }

    #[test]
    fn heavy_item_never_fits() {
        let mut s = KnapsackState::new(2, 5);
        s.set_item(1, big(9), big(6)).unwrap();
        assert!((1..=5).all(|b| s.entry(1, 1, b).is_none()));
        s.set_item(1, big(9), BigUint::from(10u32).pow(40)).unwrap();
        assert!((1..=5).all(|b| s.entry(1, 2, b).is_none()));
    }

    #[test]
    fn query_examples() {
        let mut s = two_items();
        s.set_capacity(big(5));
        s.set_threshold(big(7));
        assert!(s.query().unwrap());
        s.set_capacity(big(4));
        assert!(!s.query().unwrap());
        s.set_threshold(big(0));
        assert!(s.query().unwrap());
        s.set_capacity(big(0));
        assert!(s.query().unwrap());
        s.set_capacity(big(11));
        assert!(matches!(s.query(), Err(Error::ParameterBound(_))));
    }

    #[test]
    fn locality() {
        let mut s = KnapsackState::new(4, 6);
        s.set_item(1, big(1), big(1)).unwrap();
        s.set_item(4, big(2), big(2)).unwrap();
        let before = s.clone();
        s.set_item(2, big(5), big(3)).unwrap();
        for i in 1..=5 {
            for j in i - 1..=4 {
                if j < 2 || i > 2 {
                    for b in 0..=6 {
                        assert_eq!(s.entry(i, j, b), before.entry(i, j, b));
                    }
                }
            }
        }
    }

    #[test]
    fn zero_weight_items_raise_entries() {
        let mut s = KnapsackState::new(2, 3);
        s.set_item(1, big(5), big(0)).unwrap();
        assert_eq!(s.entry(1, 2, 0), Some(&big(5)));
        s.set_threshold(big(5));
        assert!(s.query().unwrap());
    }
}
