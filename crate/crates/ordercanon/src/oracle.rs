//! The orientation oracle abstraction.
//!
//! Every algorithm in this crate consumes orientations through
//! [`OrientationOracle`]: a deterministic, alternating predicate on
//! `(d+1)`-tuples of labels. Realizable point sets and chirotope tables
//! both implement it, and views add relabeling and global negation without
//! copying the underlying data.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::chirotope::ChirotopeTable;
use crate::predicates::{Orientation, PointSet};
use crate::{Error, Result};

/// A deterministic orientation predicate on `(d+1)`-tuples of labels.
///
/// Implementations may assume the tuple has length `dim() + 1` with
/// distinct labels in `[0, n)`; [`oracle_query`] is the validating
/// front-end. Oracles are immutable after construction and safe to share
/// across threads for read-only queries.
pub trait OrientationOracle: Sync {
    fn n(&self) -> usize;
    fn dim(&self) -> usize;
    fn query(&self, tuple: &[usize]) -> Orientation;
}

/// Validating query front-end: checks arity, range and distinctness.
pub fn oracle_query(o: &dyn OrientationOracle, tuple: &[usize]) -> Result<Orientation> {
    if tuple.len() != o.dim() + 1 {
        return Err(Error::DimensionMismatch {
            expected: o.dim() + 1,
            got: tuple.len(),
        });
    }
    for (i, &l) in tuple.iter().enumerate() {
        if l >= o.n() {
            return Err(Error::LabelOutOfRange(l, o.n()));
        }
        if tuple[..i].contains(&l) {
            return Err(Error::RepeatedLabel);
        }
    }
    Ok(o.query(tuple))
}

/// A permutation of `[0, n)` stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::NotBijection(n));
            }
            seen[v] = true;
        }
        Ok(Perm(image))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0usize; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    /// `(self.compose(other))(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Perm(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }
}

/// Realizable oracle backed by exact point coordinates.
#[derive(Debug, Clone)]
pub struct RealizableOracle {
    ps: PointSet,
}

impl RealizableOracle {
    pub fn new(ps: PointSet) -> Self {
        RealizableOracle { ps }
    }

    pub fn points(&self) -> &PointSet {
        &self.ps
    }
}

impl OrientationOracle for RealizableOracle {
    fn n(&self) -> usize {
        self.ps.len()
    }

    fn dim(&self) -> usize {
        self.ps.dim()
    }

    fn query(&self, tuple: &[usize]) -> Orientation {
        self.ps.orient_labels(tuple)
    }
}

/// Oracle backed by a chirotope table.
///
/// Construction rejects tables containing matroid-level duplicates: two
/// labels `e, f` whose every completed tuple is zero are indistinguishable
/// and must be deduplicated by the caller.
#[derive(Debug, Clone)]
pub struct TabledOracle {
    table: ChirotopeTable,
}

impl TabledOracle {
    pub fn new(table: ChirotopeTable) -> Result<Self> {
        let n = table.n();
        let r = table.rank();
        for e in 0..n {
            'pair: for f in e + 1..n {
                for subset in table.iter_sorted_subsets() {
                    if subset.contains(&e)
                        && subset.contains(&f)
                        && table.sorted_entry(&subset) != Orientation::Zero
                    {
                        continue 'pair;
                    }
                }
                let _ = r;
                return Err(Error::DuplicatePoints(e, f));
            }
        }
        Ok(TabledOracle { table })
    }

    pub fn table(&self) -> &ChirotopeTable {
        &self.table
    }
}

impl OrientationOracle for TabledOracle {
    fn n(&self) -> usize {
        self.table.n()
    }

    fn dim(&self) -> usize {
        self.table.rank() - 1
    }

    fn query(&self, tuple: &[usize]) -> Orientation {
        self.table.lookup(tuple)
    }
}

/// Relabeled and optionally negated view over another oracle.
pub struct OracleView<'a> {
    inner: &'a dyn OrientationOracle,
    perm: Perm,
    negate: bool,
}

impl OrientationOracle for OracleView<'_> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn query(&self, tuple: &[usize]) -> Orientation {
        let mapped: Vec<usize> = tuple.iter().map(|&l| self.perm.apply(l)).collect();
        let o = self.inner.query(&mapped);
        if self.negate {
            o.negate()
        } else {
            o
        }
    }
}

/// View with `query(t) = (negate ? -1 : +1) * inner.query(perm(t))`.
pub fn make_view(
    inner: &dyn OrientationOracle,
    perm: Perm,
    negate: bool,
) -> Result<OracleView<'_>> {
    if perm.len() != inner.n() {
        return Err(Error::NotBijection(inner.n()));
    }
    Ok(OracleView {
        inner,
        perm,
        negate,
    })
}

/// All orientations reversed.
pub fn negated(inner: &dyn OrientationOracle) -> OracleView<'_> {
    OracleView {
        perm: Perm::identity(inner.n()),
        inner,
        negate: true,
    }
}

/// Restriction of an oracle to a member subset, with optional fixed labels
/// appended to every query (lowering the dimension by one per fixed label).
///
/// Local labels `0..members.len()` map to the inner labels in `members`;
/// the fixed suffix is appended after the mapped tuple.
pub struct SubOracle<'a> {
    inner: &'a dyn OrientationOracle,
    members: Vec<usize>,
    appended: Vec<usize>,
}

impl<'a> SubOracle<'a> {
    pub fn new(
        inner: &'a dyn OrientationOracle,
        members: Vec<usize>,
        appended: Vec<usize>,
    ) -> Result<Self> {
        if appended.len() >= inner.dim() {
            return Err(Error::Invalid(
                "cannot fix dim() or more labels of an oracle".into(),
            ));
        }
        for &l in members.iter().chain(appended.iter()) {
            if l >= inner.n() {
                return Err(Error::LabelOutOfRange(l, inner.n()));
            }
        }
        Ok(SubOracle {
            inner,
            members,
            appended,
        })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }
}

impl OrientationOracle for SubOracle<'_> {
    fn n(&self) -> usize {
        self.members.len()
    }

    fn dim(&self) -> usize {
        self.inner.dim() - self.appended.len()
    }

    fn query(&self, tuple: &[usize]) -> Orientation {
        let mut mapped: Vec<usize> = tuple.iter().map(|&l| self.members[l]).collect();
        mapped.extend_from_slice(&self.appended);
        self.inner.query(&mapped)
    }
}

/// Probe-counting wrapper used by tests and the bench harness.
pub struct CountingOracle<'a> {
    inner: &'a dyn OrientationOracle,
    count: AtomicU64,
}

impl<'a> CountingOracle<'a> {
    pub fn new(inner: &'a dyn OrientationOracle) -> Self {
        CountingOracle {
            inner,
            count: AtomicU64::new(0),
        }
    }

    pub fn count(&self) -> u64 {
        self.count.load(AtomicOrdering::Relaxed)
    }

    pub fn reset(&self) {
        self.count.store(0, AtomicOrdering::Relaxed);
    }
}

impl OrientationOracle for CountingOracle<'_> {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn query(&self, tuple: &[usize]) -> Orientation {
        self.count.fetch_add(1, AtomicOrdering::Relaxed);
        self.inner.query(tuple)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chirotope::chirotope_from_points;

    fn triangle_oracle() -> TabledOracle {
        let ps = PointSet::from_i64(2, &[vec![0, 0], vec![2, 0], vec![0, 2]]).unwrap();
        TabledOracle::new(chirotope_from_points(&ps, None).unwrap()).unwrap()
    }

    fn square_center_oracle() -> RealizableOracle {
        RealizableOracle::new(
            PointSet::from_i64(
                2,
                &[vec![0, 0], vec![2, 0], vec![2, 2], vec![0, 2], vec![1, 1]],
            )
            .unwrap(),
        )
    }

    #[test]
    fn tabled_triangle_alternates() {
        let o = triangle_oracle();
        assert_eq!(oracle_query(&o, &[0, 1, 2]).unwrap(), Orientation::Plus);
        assert_eq!(oracle_query(&o, &[1, 0, 2]).unwrap(), Orientation::Minus);
    }

    #[test]
    fn realizable_square_center_diagonal() {
        let o = square_center_oracle();
        assert_eq!(oracle_query(&o, &[0, 2, 4]).unwrap(), Orientation::Zero);
    }

    #[test]
    fn repeated_label_is_an_error() {
        let o = triangle_oracle();
        assert!(matches!(
            oracle_query(&o, &[0, 0, 1]),
            Err(Error::RepeatedLabel)
        ));
        assert!(matches!(
            oracle_query(&o, &[0, 1, 7]),
            Err(Error::LabelOutOfRange(7, 3))
        ));
    }

    #[test]
    fn identity_view_is_transparent() {
        let o = triangle_oracle();
        let v = make_view(&o, Perm::identity(3), false).unwrap();
        assert_eq!(v.query(&[0, 1, 2]), Orientation::Plus);
    }

    #[test]
    fn cyclic_relabeling_preserves_even_tuples() {
        let o = triangle_oracle();
        let v = make_view(&o, Perm::new(vec![1, 2, 0]).unwrap(), false).unwrap();
        assert_eq!(v.query(&[0, 1, 2]), Orientation::Plus);
    }

    #[test]
    fn negation_flips() {
        let o = triangle_oracle();
        let v = negated(&o);
        assert_eq!(v.query(&[0, 1, 2]), Orientation::Minus);
    }

    #[test]
    fn views_compose() {
        let o = square_center_oracle();
        let p1 = Perm::new(vec![1, 2, 3, 4, 0]).unwrap();
        let p2 = Perm::new(vec![4, 3, 2, 1, 0]).unwrap();
        let v1 = make_view(&o, p1.clone(), true).unwrap();
        let v2 = make_view(&v1, p2.clone(), true).unwrap();
        let direct = make_view(&o, p1.compose(&p2), false).unwrap();
        for t in [[0, 1, 2], [0, 2, 4], [1, 3, 4], [2, 3, 4]] {
            assert_eq!(v2.query(&t), direct.query(&t));
        }
    }

    #[test]
    fn non_bijection_rejected() {
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        let o = triangle_oracle();
        assert!(make_view(&o, Perm::identity(4), false).is_err());
    }

    #[test]
    fn perm_algebra() {
        let p = Perm::new(vec![2, 0, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.inverse().apply(2), 0);
    }

    #[test]
    fn sub_oracle_restricts_and_fixes() {
        let o = square_center_oracle();
        // Fix the center: rank drops to 2; members are the square corners.
        let s = SubOracle::new(&o, vec![0, 1, 2, 3], vec![4]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.n(), 4);
        // query(a, b) = orient(a, b, center)
        assert_eq!(s.query(&[0, 1]), Orientation::Plus);
        assert_eq!(s.query(&[1, 0]), Orientation::Minus);
        assert_eq!(s.query(&[0, 2]), Orientation::Zero);
    }

    #[test]
    fn counting_oracle_counts() {
        let o = triangle_oracle();
        let c = CountingOracle::new(&o);
        let _ = c.query(&[0, 1, 2]);
        let _ = c.query(&[0, 2, 1]);
        assert_eq!(c.count(), 2);
    }
}
