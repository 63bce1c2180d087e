//! Universal colouring families built from `x ↦ ω((j·x mod p) mod k²)`.
//!
//! A family is addressed lazily: a member is a base map (a hash `λ_{p,j}` or,
//! for tiny domains, the identity on `1..=n`) composed with a colour table
//! `ω` that is stored as a base-`c` integer.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// Largest number of `(subset, colour assignment)` pairs `check_universal`
/// is willing to enumerate.
pub const UNIVERSAL_CHECK_LIMIT: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyParams {
    pub n: usize,
    pub k: usize,
    pub c: usize,
}

impl FamilyParams {
    pub fn new(n: usize, k: usize, c: usize) -> Result<Self> {
        if n == 0 || k == 0 || c == 0 {
            return Err(Error::Instance(format!(
                "family parameters must be positive (n={n}, k={k}, c={c})"
            )));
        }
        Ok(FamilyParams { n, k, c })
    }

    /// `k² · ⌈log₂ n⌉`, the exclusive upper bound on the primes used.
    pub fn prime_bound(&self) -> usize {
        self.k * self.k * ceil_log2(self.n)
    }

    /// True when no prime lies below the bound and the family falls back to
    /// all functions `1..=n → 1..=c`.
    pub fn uses_direct_fallback(&self) -> bool {
        self.prime_bound() <= 2
    }

    pub fn primes(&self) -> Vec<usize> {
        primes_below(self.prime_bound())
    }

    fn base_maps(&self) -> Vec<BaseMap> {
        if self.uses_direct_fallback() {
            return vec![BaseMap::Identity];
        }
        self.primes()
            .into_iter()
            .flat_map(|p| (1..p).map(move |j| BaseMap::Hash { p, j }))
            .collect()
    }

    /// Size of the range of a base map.
    fn base_range(&self, base: BaseMap) -> usize {
        match base {
            BaseMap::Hash { .. } => self.k * self.k,
            BaseMap::Identity => self.n,
        }
    }

    /// Number of colour tables per base map, `c^(range)`, if it fits.
    fn omega_count(&self, base: BaseMap) -> Option<u128> {
        checked_pow(self.c as u128, self.base_range(base))
    }

    /// Total number of family members, `None` on overflow.
    pub fn cardinality(&self) -> Option<u128> {
        if self.uses_direct_fallback() {
            return self.omega_count(BaseMap::Identity);
        }
        let per_base = self.omega_count(BaseMap::Hash { p: 2, j: 1 })?;
        let bases: u128 = self.primes().iter().map(|&p| (p - 1) as u128).sum();
        bases.checked_mul(per_base)
    }
}

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

pub fn primes_below(bound: usize) -> Vec<usize> {
    if bound < 3 {
        return Vec::new();
    }
    let mut sieve = vec![true; bound];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < bound {
        if sieve[i] {
            let mut m = i * i;
            while m < bound {
                sieve[m] = false;
                m += i;
            }
        }
        i += 1;
    }
    (0..bound).filter(|&i| sieve[i]).collect()
}

fn checked_pow(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseMap {
    /// `x ↦ (j·x mod p) mod k²`.
    Hash { p: usize, j: usize },
    /// `x ↦ x - 1`, used by the small-domain fallback.
    Identity,
}

impl BaseMap {
    pub fn raw(&self, k: usize, x: usize) -> usize {
        match *self {
            BaseMap::Hash { p, j } => ((j * x) % p) % (k * k),
            BaseMap::Identity => x - 1,
        }
    }
}

/// One member `ω ∘ base` of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColouringIndex {
    pub base: BaseMap,
    pub omega_idx: u128,
}

impl ColouringIndex {
    pub fn hashed(p: usize, j: usize, omega_idx: u128) -> Self {
        ColouringIndex {
            base: BaseMap::Hash { p, j },
            omega_idx,
        }
    }

    /// `ω(m)` for table position `m`, a colour in `1..=c`.
    pub fn omega(&self, c: usize, m: usize) -> usize {
        let c = c as u128;
        let mut idx = self.omega_idx;
        for _ in 0..m {
            idx /= c;
        }
        (idx % c) as usize + 1
    }
}

/// Colour of `x` under member `idx`.
pub fn eval(idx: &ColouringIndex, k: usize, c: usize, x: usize) -> usize {
    idx.omega(c, idx.base.raw(k, x))
}

/// Lazily enumerates every member in lexicographic `(p, j, ω)` order.
pub fn build_family(params: FamilyParams) -> Result<impl Iterator<Item = ColouringIndex>> {
    let bases = params.base_maps();
    let counts: Vec<u128> = bases
        .iter()
        .map(|&b| params.omega_count(b))
        .collect::<Option<_>>()
        .ok_or_else(|| {
            Error::Guard(format!(
                "colour tables for {params:?} exceed 128-bit addressing"
            ))
        })?;
    Ok(bases
        .into_iter()
        .zip(counts)
        .flat_map(|(base, count)| (0..count).map(move |omega_idx| ColouringIndex { base, omega_idx })))
}

/// The distinct colourings of `1..=n` realised by the family, each with the
/// first member that produces it. Entry `x - 1` of the vector holds the
/// colour of `x` minus one.
///
/// Members agreeing on the image of their base map induce the same colouring,
/// so only colour tables restricted to that image are enumerated.
pub fn distinct_colourings(params: FamilyParams) -> Result<Vec<(ColouringIndex, Vec<u8>)>> {
    if params.c > u8::MAX as usize {
        return Err(Error::Guard(format!("{} colours exceed u8 storage", params.c)));
    }
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut out = Vec::new();
    for base in params.base_maps() {
        let raw: Vec<usize> = (1..=params.n).map(|x| base.raw(params.k, x)).collect();
        let mut image = raw.clone();
        image.sort_unstable();
        image.dedup();
        let combos = checked_pow(params.c as u128, image.len())
            .filter(|&v| v <= 1 << 24)
            .ok_or_else(|| {
                Error::Guard(format!(
                    "{}^{} colourings per base map is beyond desk scale",
                    params.c,
                    image.len()
                ))
            })?;
        for assignment in 0..combos {
            // digit i of `assignment` colours image value image[i]
            let mut digits = vec![0u8; image.len()];
            let mut a = assignment;
            for d in digits.iter_mut() {
                *d = (a % params.c as u128) as u8;
                a /= params.c as u128;
            }
            let colouring: Vec<u8> = raw
                .iter()
                .map(|r| digits[image.binary_search(r).unwrap()])
                .collect();
            if seen.insert(colouring.clone()) {
                let mut omega_idx: u128 = 0;
                for (i, &m) in image.iter().enumerate() {
                    omega_idx += digits[i] as u128 * (params.c as u128).pow(m as u32);
                }
                out.push((ColouringIndex { base, omega_idx }, colouring));
            }
        }
    }
    Ok(out)
}

/// Exhaustively checks that every `k`-subset of `1..=n` sees every colour
/// assignment under some member.
pub fn check_universal(params: FamilyParams) -> Result<bool> {
    let FamilyParams { n, k, c } = params;
    let work = binomial(n, k).saturating_mul(checked_pow(c as u128, k).unwrap_or(u128::MAX));
    if work > UNIVERSAL_CHECK_LIMIT {
        return Err(Error::Guard(format!(
            "C({n},{k})·{c}^{k} = {work} subset/assignment pairs exceeds {UNIVERSAL_CHECK_LIMIT}"
        )));
    }
    if k > n {
        return Ok(true);
    }
    let patterns = c.pow(k as u32);
    let bases = params.base_maps();
    let mut subset: Vec<usize> = (1..=k).collect();
    loop {
        let mut realised = vec![false; patterns];
        let mut missing = patterns;
        for &base in &bases {
            let raw: Vec<usize> = subset.iter().map(|&x| base.raw(k, x)).collect();
            // position of each element's hash among the distinct hashes of S
            let mut distinct = raw.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let slot: Vec<usize> = raw
                .iter()
                .map(|r| distinct.binary_search(r).unwrap())
                .collect();
            for assignment in 0..c.pow(distinct.len() as u32) {
                let mut pattern = 0;
                for (pos, &s) in slot.iter().enumerate() {
                    let colour = (assignment / c.pow(s as u32)) % c;
                    pattern += colour * c.pow(pos as u32);
                }
                if !realised[pattern] {
                    realised[pattern] = true;
                    missing -= 1;
                }
            }
            if missing == 0 {
                break;
            }
        }
        if missing > 0 {
            return Ok(false);
        }
        if !next_combination(&mut subset, n) {
            return Ok(true);
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Advances a sorted `k`-subset of `1..=n` to its lexicographic successor.
pub(crate) fn next_combination(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - (k - 1 - i) {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, k: usize, c: usize) -> FamilyParams {
        FamilyParams::new(n, k, c).unwrap()
    }

    /// Literal check: every member evaluated on every subset, every assignment.
    fn universal_by_enumeration(p: FamilyParams) -> bool {
        let members: Vec<ColouringIndex> = build_family(p).unwrap().collect();
        let mut subset: Vec<usize> = (1..=p.k).collect();
        loop {
            let mut seen = HashSet::new();
            for m in &members {
                let colours: Vec<usize> = subset.iter().map(|&x| eval(m, p.k, p.c, x)).collect();
                seen.insert(colours);
            }
            if seen.len() != p.c.pow(p.k as u32) {
                return false;
            }
            if !next_combination(&mut subset, p.n) {
                return true;
            }
        }
    }

    #[test]
    fn prime_range_for_n8_k2() {
        let p = params(8, 2, 2);
        assert_eq!(p.prime_bound(), 12);
        assert_eq!(p.primes(), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn sixteen_tables_per_hash() {
        let p = params(8, 2, 2);
        let members: Vec<_> = build_family(p).unwrap().collect();
        let first: Vec<_> = members
            .iter()
            .filter(|m| m.base == BaseMap::Hash { p: 2, j: 1 })
            .collect();
        assert_eq!(first.len(), 16);
        // Σ (p-1) = 1 + 2 + 4 + 6 + 10 = 23
        assert_eq!(members.len(), 23 * 16);
        assert_eq!(p.cardinality(), Some(23 * 16));
    }

    #[test]
    fn degenerate_family_is_single_constant() {
        let p = params(1, 1, 1);
        assert!(p.uses_direct_fallback());
        let members: Vec<_> = build_family(p).unwrap().collect();
        assert_eq!(members.len(), 1);
        assert_eq!(eval(&members[0], 1, 1, 1), 1);
        assert!(check_universal(p).unwrap());
    }

    #[test]
    fn eval_examples() {
        // ω with ω(0) = 2 and everything else 1: index 1 in base 2
        let idx = ColouringIndex::hashed(5, 2, 1);
        assert_eq!(BaseMap::Hash { p: 5, j: 2 }.raw(2, 7), 0);
        assert_eq!(eval(&idx, 2, 2, 7), 2);
        assert_eq!(BaseMap::Hash { p: 5, j: 1 }.raw(2, 5), 0);
        let constant = ColouringIndex::hashed(5, 3, 0);
        assert!((1..=20).all(|x| eval(&constant, 2, 2, x) == 1));
    }

    #[test]
    fn enumeration_order_is_lexicographic_and_stable() {
        let p = params(8, 2, 2);
        let a: Vec<_> = build_family(p).unwrap().collect();
        let b: Vec<_> = build_family(p).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn universal_matches_literal_enumeration() {
        for (n, k, c) in [(8, 2, 2), (5, 2, 3), (4, 1, 3), (6, 3, 2), (1, 1, 1), (3, 2, 2)] {
            let p = params(n, k, c);
            assert_eq!(
                check_universal(p).unwrap(),
                universal_by_enumeration(p),
                "{p:?}"
            );
        }
    }

    #[test]
    fn desk_scale_families_are_universal() {
        assert!(check_universal(params(8, 2, 2)).unwrap());
        assert!(check_universal(params(6, 3, 3)).unwrap());
    }

    #[test]
    fn guard_refuses_huge_enumeration() {
        let err = check_universal(params(200, 6, 5)).unwrap_err();
        assert!(matches!(err, Error::Guard(_)));
    }

    #[test]
    fn injective_hash_exists_for_every_small_subset() {
        for n in 2..=10 {
            for k in 1..=3.min(n) {
                let p = params(n, k, k);
                let bases = p.base_maps();
                let mut s: Vec<usize> = (1..=k).collect();
                loop {
                    let ok = bases.iter().any(|b| {
                        let mut h: Vec<usize> = s.iter().map(|&x| b.raw(k, x)).collect();
                        h.sort_unstable();
                        h.dedup();
                        h.len() == k
                    });
                    assert!(ok, "no injective base map for {s:?} (n={n}, k={k})");
                    if !next_combination(&mut s, n) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn distinct_colourings_cover_family() {
        let p = params(6, 2, 2);
        let distinct = distinct_colourings(p).unwrap();
        let mut from_family = HashSet::new();
        for m in build_family(p).unwrap() {
            let col: Vec<u8> = (1..=6).map(|x| (eval(&m, 2, 2, x) - 1) as u8).collect();
            from_family.insert(col);
        }
        let got: HashSet<Vec<u8>> = distinct.iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(got, from_family);
        for (idx, col) in &distinct {
            let recomputed: Vec<u8> = (1..=6).map(|x| (eval(idx, 2, 2, x) - 1) as u8).collect();
            assert_eq!(&recomputed, col);
        }
    }
}
