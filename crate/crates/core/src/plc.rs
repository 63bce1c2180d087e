//! Point-line cover: collinearity maintained under bit flips through cached
//! coordinate products, and the kernel built from it.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::change::ChangeOp;
use crate::colouring::ceil_log2;
use crate::error::{Error, Result};
use crate::maintainer::Maintainer;
use crate::param::ParamState;

/// Highest bit index a flip may address.
pub const MAX_BIT: usize = 4096;

/// Points `1..=n` in `N^d` with per-bit updates, plus every product
/// `p_x^a · p_y^b` of coordinates of two distinct points in two distinct
/// dimensions and the derived collinearity relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    n: usize,
    d: usize,
    coords: Vec<Vec<BigUint>>,
    enabled: Vec<bool>,
    products: Vec<BigUint>,
    collinear: Vec<bool>,
}

impl PointSet {
    /// All points start disabled at the origin.
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Instance(format!("dimension must be at least 2, got {d}")));
        }
        if n > 64 {
            return Err(Error::Guard(format!("point-line cover supports at most 64 points, got {n}")));
        }
        Ok(PointSet {
            n,
            d,
            coords: vec![vec![BigUint::default(); d]; n],
            enabled: vec![false; n],
            products: vec![BigUint::default(); n * n * d * d],
            collinear: vec![true; n * n * n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Coordinate `dim` (1-based) of point `i` (1-based).
    pub fn coord(&self, i: usize, dim: usize) -> &BigUint {
        &self.coords[i - 1][dim - 1]
    }

    pub fn point(&self, i: usize) -> &[BigUint] {
        &self.coords[i - 1]
    }

    pub fn is_enabled(&self, i: usize) -> bool {
        self.enabled[i - 1]
    }

    fn check_point(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                what: "point",
                index: i,
                max: self.n,
            });
        }
        Ok(())
    }

    fn pidx(&self, x: usize, a: usize, y: usize, b: usize) -> usize {
        ((x * self.n + y) * self.d + a) * self.d + b
    }

    fn cidx(&self, x: usize, y: usize, z: usize) -> usize {
        (x * self.n + y) * self.n + z
    }

    /// Cached `p_x^a · p_y^b` (0-based indices).
    fn product(&self, x: usize, a: usize, y: usize, b: usize) -> &BigUint {
        &self.products[self.pidx(x, a, y, b)]
    }

    fn collinear_from_cache(&self, x: usize, y: usize, z: usize) -> bool {
        let p = |u, a, v, b| self.product(u, a, v, b);
        (0..self.d).all(|a| {
            (a + 1..self.d).all(|b| {
                p(y, a, z, b) + p(z, a, x, b) + p(x, a, y, b) == p(z, a, y, b) + p(y, a, x, b) + p(x, a, z, b)
            })
        })
    }

    pub fn set_enabled(&mut self, i: usize, on: bool) -> Result<()> {
        self.check_point(i)?;
        self.enabled[i - 1] = on;
        Ok(())
    }

    /// Toggles bit `bit` (0 = least significant) of coordinate `dim` of point `i`.
    pub fn flip_bit(&mut self, i: usize, dim: usize, bit: usize) -> Result<()> {
        self.check_point(i)?;
        if dim == 0 || dim > self.d {
            return Err(Error::IndexOutOfRange {
                what: "dimension",
                index: dim,
                max: self.d,
            });
        }
        if bit > MAX_BIT {
            return Err(Error::IndexOutOfRange {
                what: "bit",
                index: bit,
                max: MAX_BIT,
            });
        }
        let (x, a) = (i - 1, dim - 1);
        let c = &mut self.coords[x][a];
        let set = c.bit(bit as u64);
        c.set_bit(bit as u64, !set);
        for y in (0..self.n).filter(|&y| y != x) {
            for b in (0..self.d).filter(|&b| b != a) {
                let left = self.pidx(x, a, y, b);
                self.products[left] = &self.coords[x][a] * &self.coords[y][b];
                let right = self.pidx(y, b, x, a);
                self.products[right] = &self.coords[y][b] * &self.coords[x][a];
            }
        }
        for y in 0..self.n {
            for z in 0..self.n {
                if y == x || z == x || y == z {
                    continue;
                }
                let c = self.collinear_from_cache(x, y, z);
                for (p, q, r) in [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                    let idx = self.cidx(p, q, r);
                    self.collinear[idx] = c;
                }
            }
        }
        Ok(())
    }

    /// Cached collinearity of three points; any repeated index counts as collinear.
    pub fn collinear(&self, i1: usize, i2: usize, i3: usize) -> bool {
        if i1 == i2 || i1 == i3 || i2 == i3 {
            return true;
        }
        self.collinear[self.cidx(i1 - 1, i2 - 1, i3 - 1)]
    }

    /// Compares every cached product and triple with a fresh computation.
    pub fn audit(&self) -> Result<(), String> {
        for x in 0..self.n {
            for y in (0..self.n).filter(|&y| y != x) {
                for a in 0..self.d {
                    for b in (0..self.d).filter(|&b| b != a) {
                        if *self.product(x, a, y, b) != &self.coords[x][a] * &self.coords[y][b] {
                            return Err(format!("stale product for points {}, {} dims {}, {}", x + 1, y + 1, a + 1, b + 1));
                        }
                    }
                }
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if x != y && y != z && x != z && self.collinear[self.cidx(x, y, z)] != self.collinear_from_cache(x, y, z) {
                        return Err(format!("stale collinearity for ({}, {}, {})", x + 1, y + 1, z + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Enabled points with duplicates of an earlier enabled location dropped.
    pub fn enabled_locations(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for i in 1..=self.n {
            if self.enabled[i - 1] && !out.iter().any(|&j| self.coords[j - 1] == self.coords[i - 1]) {
                out.push(i);
            }
        }
        out
    }
}

/// Outcome of the kernelisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlcKernel {
    /// The parameter is already large; the instance is its own kernel.
    Passthrough,
    /// Constant no-instance.
    No,
    Kernel { points: Vec<usize>, k: usize },
}

/// A line of the kernel, named by its lexicographically smallest point pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HeavyLine {
    pub pair: (usize, usize),
    pub points: Vec<usize>,
}

/// Lines through at least `k + 1` of the given points.
pub fn heavy_lines(ps: &PointSet, points: &[usize], k: usize) -> Vec<HeavyLine> {
    let mut lines = Vec::new();
    for (ai, &a) in points.iter().enumerate() {
        for &b in &points[ai + 1..] {
            let on: Vec<usize> = points.iter().copied().filter(|&c| ps.collinear(a, b, c)).collect();
            // the pair is canonical iff no smaller pair spans the same line
            if on[0] == a && on[1] == b && on.len() > k {
                lines.push(HeavyLine { pair: (a, b), points: on });
            }
        }
    }
    lines
}

pub fn plc_kernel(ps: &PointSet, k: usize) -> PlcKernel {
    if k >= ceil_log2(ps.n()) {
        return PlcKernel::Passthrough;
    }
    let points = ps.enabled_locations();
    let lines = heavy_lines(ps, &points, k);
    if lines.len() > k {
        return PlcKernel::No;
    }
    let rest: Vec<usize> = points
        .into_iter()
        .filter(|p| !lines.iter().any(|l| l.points.contains(p)))
        .collect();
    if rest.len() > k * k {
        return PlcKernel::No;
    }
    PlcKernel::Kernel {
        points: rest,
        k: k - lines.len(),
    }
}

/// Can `k` lines cover `points`? Branches on the first uncovered point: a
/// line through it and another uncovered point, or a line through it alone.
pub fn plc_decide(ps: &PointSet, points: &[usize], k: usize) -> bool {
    fn go(ps: &PointSet, points: &[usize], k: usize) -> bool {
        let Some((&p, rest)) = points.split_first() else {
            return true;
        };
        if k == 0 {
            return false;
        }
        let mut seen_lines: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &q in rest {
            let left: Vec<usize> = rest.iter().copied().filter(|&r| !ps.collinear(p, q, r)).collect();
            if seen_lines.insert(left.clone()) && go(ps, &left, k - 1) {
                return true;
            }
        }
        go(ps, rest, k - 1)
    }
    go(ps, points, k)
}

/// Point-line-cover maintainer.
#[derive(Clone, Debug)]
pub struct PlcState {
    points: PointSet,
    param: ParamState,
}

impl PlcState {
    pub fn new(n: usize, d: usize, kmax: usize) -> Result<Self> {
        Ok(PlcState {
            points: PointSet::new(n, d)?,
            param: ParamState::new(kmax)?,
        })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn param(&self) -> ParamState {
        self.param
    }

    pub fn kernel(&self) -> PlcKernel {
        plc_kernel(&self.points, self.param.k())
    }
}

impl Maintainer for PlcState {
    fn problem(&self) -> &'static str {
        "plc"
    }

    fn apply(&mut self, op: &ChangeOp) -> Result<()> {
        match *op {
            ChangeOp::FlipBit { point, dim, bit } => self.points.flip_bit(point, dim, bit),
            ChangeOp::Enable(i) => self.points.set_enabled(i, true),
            ChangeOp::Disable(i) => self.points.set_enabled(i, false),
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
        Ok(match self.kernel() {
            PlcKernel::Passthrough => plc_decide(&self.points, &self.points.enabled_locations(), self.param.k()),
            PlcKernel::No => false,
            PlcKernel::Kernel { points, k } => plc_decide(&self.points, &points, k),
        })
    }

    fn audit(&self) -> Result<(), String> {
        self.points.audit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set_coord(ps: &mut PointSet, i: usize, dim: usize, value: u64) {
        for bit in 0..64 {
            if ps.coord(i, dim).bit(bit) != (value >> bit & 1 == 1) {
                ps.flip_bit(i, dim, bit as usize).unwrap();
            }
        }
    }

    fn points(coords: &[(u64, u64)], n: usize) -> PointSet {
        let mut ps = PointSet::new(n, 2).unwrap();
        for (i, &(x, y)) in coords.iter().enumerate() {
            set_coord(&mut ps, i + 1, 1, x);
            set_coord(&mut ps, i + 1, 2, y);
            ps.set_enabled(i + 1, true).unwrap();
        }
        ps
    }

    #[test]
    fn flip_makes_collinear() {
        let mut ps = points(&[(0, 0), (1, 1), (2, 3)], 3);
        assert!(!ps.collinear(1, 2, 3));
        ps.flip_bit(3, 2, 0).unwrap();
        assert!(ps.collinear(1, 2, 3));
        assert!(ps.collinear(3, 1, 2));
        ps.audit().unwrap();
    }

    #[test]
    fn double_flip_is_identity() {
        let before = points(&[(4, 1), (1, 7), (2, 3)], 3);
        let mut ps = before.clone();
        ps.flip_bit(2, 1, 5).unwrap();
        ps.flip_bit(2, 1, 5).unwrap();
        assert_eq!(ps, before);
    }

    #[test]
    fn disabled_points_still_tracked() {
        let mut ps = points(&[(0, 0), (1, 1)], 3);
        set_coord(&mut ps, 3, 1, 2);
        set_coord(&mut ps, 3, 2, 2);
        assert!(!ps.is_enabled(3));
        assert!(ps.collinear(1, 2, 3));
        assert_eq!(ps.enabled_locations(), vec![1, 2]);
    }

    #[test]
    fn collinear_examples() {
        assert!(points(&[(0, 0), (1, 1), (2, 2)], 3).collinear(1, 2, 3));
        assert!(!points(&[(0, 0), (1, 1), (2, 3)], 3).collinear(1, 2, 3));
        assert!(points(&[(5, 5), (5, 5), (7, 9)], 3).collinear(1, 2, 3));
        // equal first coordinates
        assert!(points(&[(3, 1), (3, 4), (3, 9)], 3).collinear(1, 2, 3));
        assert!(!points(&[(3, 1), (3, 4), (5, 9)], 3).collinear(1, 2, 3));
    }

    #[test]
    fn collinear_in_three_dimensions() {
        let mut ps = PointSet::new(3, 3).unwrap();
        for (i, p) in [[1u64, 2, 3], [2, 4, 6], [3, 6, 9]].iter().enumerate() {
            for (dim, &v) in p.iter().enumerate() {
                set_coord(&mut ps, i + 1, dim + 1, v);
            }
        }
        assert!(ps.collinear(1, 2, 3));
        ps.flip_bit(3, 3, 0).unwrap();
        assert!(!ps.collinear(1, 2, 3));
    }

    #[test]
    fn kernel_examples() {
        let line = points(&[(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)], 5);
        assert_eq!(plc_kernel(&line, 1), PlcKernel::Kernel { points: vec![], k: 0 });
        assert_eq!(heavy_lines(&line, &line.enabled_locations(), 1)[0].pair, (1, 2));

        let tri = points(&[(0, 0), (1, 0), (0, 1)], 3);
        assert_eq!(plc_kernel(&tri, 1), PlcKernel::No);

        let empty = PointSet::new(8, 2).unwrap();
        assert_eq!(plc_kernel(&empty, 2), PlcKernel::Kernel { points: vec![], k: 2 });
        assert_eq!(plc_kernel(&empty, 3), PlcKernel::Passthrough);
    }

    #[test]
    fn decide_examples() {
        let ps = points(&[(0, 0), (1, 0), (0, 1), (1, 1)], 4);
        assert!(plc_decide(&ps, &[], 0));
        assert!(plc_decide(&ps, &[1, 2, 3, 4], 2));
        assert!(!plc_decide(&ps, &[1, 2, 3], 1));
    }

    #[test]
    fn duplicates_do_not_inflate_lines() {
        // A, A, B, C, D with k = 2: lines AB and CD cover everything
        let ps = points(&[(0, 0), (0, 0), (1, 0), (0, 1), (5, 7)], 8);
        let mut s = PlcState {
            points: ps,
            param: ParamState::new(2).unwrap(),
        };
        assert!(s.answer().unwrap());
        s.apply(&ChangeOp::DecK).unwrap();
        assert!(!s.answer().unwrap());
    }
}
