//! Chirotope tables: materialized orientation maps over sorted tuples.
//!
//! A table of rank `r` on `n` elements stores one sign per sorted
//! `r`-subset; lookups on arbitrary tuple orderings apply the alternating
//! rule (parity of the sorting permutation). Tables must not be
//! identically zero.

use itertools::Itertools;

use crate::predicates::{Orientation, PointSet};
use crate::{Error, Result};

pub(crate) fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// Colex rank of a strictly increasing subset.
fn subset_rank(sorted: &[usize]) -> usize {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &s)| binom(s, i + 1) as usize)
        .sum()
}

fn default_guard(dim: usize) -> usize {
    match dim {
        1 | 2 => 64,
        3 => 16,
        _ => 12,
    }
}

/// A rank-`d+1` orientation map materialized over all sorted subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChirotopeTable {
    rank: usize,
    n: usize,
    signs: Vec<i8>,
}

impl ChirotopeTable {
    /// Build from explicit per-subset signs listed in lexicographic subset
    /// order (the file order).
    pub fn from_signs_lex(rank: usize, n: usize, signs_lex: &[Orientation]) -> Result<Self> {
        if rank < 2 || n < rank {
            return Err(Error::Invalid(format!(
                "need n >= rank >= 2, got rank {rank}, n {n}"
            )));
        }
        let total = binom(n, rank) as usize;
        if signs_lex.len() != total {
            return Err(Error::Invalid(format!(
                "expected {total} signs, got {}",
                signs_lex.len()
            )));
        }
        let mut signs = vec![0i8; total];
        for (subset, &o) in (0..n).combinations(rank).zip(signs_lex.iter()) {
            signs[subset_rank(&subset)] = match o {
                Orientation::Minus => -1,
                Orientation::Zero => 0,
                Orientation::Plus => 1,
            };
        }
        if signs.iter().all(|&s| s == 0) {
            return Err(Error::ZeroChirotope);
        }
        Ok(ChirotopeTable { rank, n, signs })
    }

    /// Build by evaluating a sign function on every sorted subset.
    pub fn from_fn(
        rank: usize,
        n: usize,
        mut f: impl FnMut(&[usize]) -> Orientation,
    ) -> Result<Self> {
        let lex: Vec<Orientation> = (0..n).combinations(rank).map(|s| f(&s)).collect();
        ChirotopeTable::from_signs_lex(rank, n, &lex)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry for a sorted subset.
    pub fn sorted_entry(&self, sorted: &[usize]) -> Orientation {
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
        Orientation::from_i64(self.signs[subset_rank(sorted)] as i64)
    }

    /// Lookup on an arbitrary ordering: sort, then apply the parity of the
    /// sorting permutation. Repeated labels give `Zero`.
    pub fn lookup(&self, tuple: &[usize]) -> Orientation {
        debug_assert_eq!(tuple.len(), self.rank);
        let mut t: Vec<usize> = tuple.to_vec();
        let mut swaps = 0usize;
        for i in 1..t.len() {
            let mut j = i;
            while j > 0 && t[j - 1] > t[j] {
                t.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if t.windows(2).any(|w| w[0] == w[1]) {
            return Orientation::Zero;
        }
        self.sorted_entry(&t).times_parity(swaps % 2 == 0)
    }

    /// Flip the sign of one sorted subset (test fixture for invalid tables).
    pub fn with_flipped_entry(&self, sorted: &[usize]) -> Self {
        let mut out = self.clone();
        let idx = subset_rank(sorted);
        out.signs[idx] = -out.signs[idx];
        out
    }

    pub fn iter_sorted_subsets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.n).combinations(self.rank)
    }
}

/// Materialize the order type of a realizable point set as a table.
///
/// Guarded because the table has `C(n, d+1)` entries: by default `n <= 64`
/// for `d = 2` and `n <= 16` for `d = 3`; pass `max_n` to override.
pub fn chirotope_from_points(ps: &PointSet, max_n: Option<usize>) -> Result<ChirotopeTable> {
    let d = ps.dim();
    let n = ps.len();
    let guard = max_n.unwrap_or_else(|| default_guard(d));
    if n > guard {
        return Err(Error::GuardExceeded(n, guard));
    }
    if n < d + 1 {
        return Err(Error::TooFewPoints { need: d + 1, got: n });
    }
    ChirotopeTable::from_fn(d + 1, n, |subset| ps.orient_labels(subset))
}

/// Outcome of chirotope validation.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub nonzero: bool,
    pub alternating_ok: bool,
    /// True when the exhaustive rank-3 exchange axiom was actually run.
    pub axiom_checked: bool,
    /// A violating pair of tuples, when the axiom check failed.
    pub axiom_witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.nonzero && self.alternating_ok && self.axiom_witness.is_none()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "nonzero: {}", if self.nonzero { "ok" } else { "FAIL" })?;
        writeln!(
            f,
            "alternating: {}",
            if self.alternating_ok { "ok" } else { "FAIL" }
        )?;
        if !self.axiom_checked {
            writeln!(f, "exchange axiom: skipped")?;
        } else {
            match &self.axiom_witness {
                None => writeln!(f, "exchange axiom: ok")?,
                Some((x, y)) => writeln!(f, "exchange axiom: FAIL at x={x:?} y={y:?}")?,
            }
        }
        Ok(())
    }
}

/// Check a table: non-zero, alternating lookup consistency, and (when
/// `exhaustive` and the size permits) the rank-3 exchange axiom over all
/// pairs of tuples.
pub fn validate_chirotope(t: &ChirotopeTable, exhaustive: bool) -> ValidationReport {
    let nonzero = t
        .iter_sorted_subsets()
        .any(|s| t.sorted_entry(&s) != Orientation::Zero);

    let mut alternating_ok = true;
    'outer: for subset in t.iter_sorted_subsets() {
        let base = t.lookup(&subset);
        // One adjacent swap and the full reversal of the tuple.
        for k in 0..subset.len() - 1 {
            let mut sw = subset.clone();
            sw.swap(k, k + 1);
            if t.lookup(&sw) != base.negate() {
                alternating_ok = false;
                break 'outer;
            }
        }
        let rev: Vec<usize> = subset.iter().rev().copied().collect();
        let parity_even = (subset.len() * (subset.len() - 1) / 2) % 2 == 0;
        if t.lookup(&rev) != base.times_parity(parity_even) {
            alternating_ok = false;
            break;
        }
    }

    let can_exhaust = t.rank() == 3 && t.n() <= 10;
    let mut axiom_witness = None;
    if exhaustive && can_exhaust {
        axiom_witness = exchange_axiom_witness(t);
    }

    ValidationReport {
        nonzero,
        alternating_ok,
        axiom_checked: exhaustive && can_exhaust,
        axiom_witness,
    }
}

/// Search for a pair of triples violating the rank-3 exchange axiom:
/// whenever `chi(x) * chi(y) != 0`, some position `i` satisfies
/// `chi(y_i, x_2, x_3) * chi(y with x_1 at slot i) = chi(x) * chi(y)`.
fn exchange_axiom_witness(t: &ChirotopeTable) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = t.n();
    let sign = |o: Orientation| -> i8 {
        match o {
            Orientation::Minus => -1,
            Orientation::Zero => 0,
            Orientation::Plus => 1,
        }
    };
    let mut tuples: Vec<[usize; 3]> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a != b && a != c && b != c {
                    tuples.push([a, b, c]);
                }
            }
        }
    }
    for x in &tuples {
        let cx = sign(t.lookup(x));
        if cx == 0 {
            continue;
        }
        for y in &tuples {
            let cy = sign(t.lookup(y));
            if cy == 0 {
                continue;
            }
            let target = cx * cy;
            let mut ok = false;
            for i in 0..3 {
                let left = sign(t.lookup(&[y[i], x[1], x[2]]));
                if left == 0 {
                    continue;
                }
                let mut swapped = *y;
                swapped[i] = x[0];
                let right = sign(t.lookup(&swapped));
                if left * right == target {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Some((x.to_vec(), y.to_vec()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::PointSet;

    pub(crate) fn square_center() -> PointSet {
        PointSet::from_i64(
            2,
            &[vec![0, 0], vec![2, 0], vec![2, 2], vec![0, 2], vec![1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn triangle_has_single_plus_entry() {
        let ps = PointSet::from_i64(2, &[vec![0, 0], vec![2, 0], vec![0, 2]]).unwrap();
        let t = chirotope_from_points(&ps, None).unwrap();
        assert_eq!(t.sorted_entry(&[0, 1, 2]), Orientation::Plus);
    }

    #[test]
    fn collinear_points_rejected_as_zero_table() {
        let ps = PointSet::from_i64(
            2,
            &[vec![0, 0], vec![1, 0], vec![2, 0], vec![3, 0]],
        )
        .unwrap();
        assert!(matches!(
            chirotope_from_points(&ps, None),
            Err(Error::ZeroChirotope)
        ));
    }

    #[test]
    fn square_center_diagonal_entry_is_zero() {
        let t = chirotope_from_points(&square_center(), None).unwrap();
        assert_eq!(t.signs.len(), 10);
        assert_eq!(t.sorted_entry(&[0, 2, 4]), Orientation::Zero);
        assert_eq!(t.sorted_entry(&[1, 3, 4]), Orientation::Zero);
        assert_eq!(t.sorted_entry(&[0, 1, 2]), Orientation::Plus);
    }

    #[test]
    fn guard_is_enforced() {
        let pts: Vec<Vec<i64>> = (0..20).map(|i| vec![i, i * i]).collect();
        let ps = PointSet::from_i64(2, &pts).unwrap();
        assert!(chirotope_from_points(&ps, Some(10)).is_err());
        assert!(chirotope_from_points(&ps, None).is_ok());
    }

    #[test]
    fn lookup_applies_parity_and_repeats_are_zero() {
        let t = chirotope_from_points(&square_center(), None).unwrap();
        assert_eq!(t.lookup(&[0, 1, 2]), Orientation::Plus);
        assert_eq!(t.lookup(&[1, 0, 2]), Orientation::Minus);
        assert_eq!(t.lookup(&[2, 0, 1]), Orientation::Plus);
        assert_eq!(t.lookup(&[0, 0, 1]), Orientation::Zero);
    }

    #[test]
    fn realizable_tables_validate() {
        let t = chirotope_from_points(&square_center(), None).unwrap();
        let report = validate_chirotope(&t, true);
        assert!(report.pass());
        assert!(report.axiom_checked);
    }

    #[test]
    fn flipped_entry_fails_with_witness() {
        let t = chirotope_from_points(&square_center(), None).unwrap();
        let bad = t.with_flipped_entry(&[0, 1, 2]);
        let report = validate_chirotope(&bad, true);
        assert!(!report.pass());
        assert!(report.axiom_witness.is_some());
    }

    #[test]
    fn zero_table_cannot_be_built() {
        let r = ChirotopeTable::from_fn(3, 4, |_| Orientation::Zero);
        assert!(matches!(r, Err(Error::ZeroChirotope)));
    }

    #[test]
    fn cyclic_hexagon_table_validates() {
        let t = ChirotopeTable::from_fn(3, 6, |_| Orientation::Plus).unwrap();
        assert!(validate_chirotope(&t, true).pass());
    }
}
