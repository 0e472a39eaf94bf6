//! Brute-force reference oracle for tiny instances.
//!
//! The flat encoding lists the orientation of every sorted tuple in
//! lexicographic subset order under the fixed value order
//! `Zero < Minus < Plus`. Canonicalization minimizes the encoding over all
//! permutations; nothing here is clever on purpose.

use itertools::Itertools;

use crate::oracle::{OrientationOracle, Perm};
use crate::predicates::Orientation;
use crate::{Error, Result};

/// Permutation-count guard; raise with `ORDERCANON_GUARD_N` when needed.
pub fn brute_guard() -> usize {
    std::env::var("ORDERCANON_GUARD_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(8)
}

fn check_guard(n: usize) -> Result<()> {
    let g = brute_guard();
    if n > g {
        return Err(Error::GuardExceeded(n, g));
    }
    Ok(())
}

/// Orientations of all sorted `(d+1)`-subsets in lexicographic subset
/// order; together with the alternating rule this determines the oracle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatEncoding(Vec<u8>);

fn value_key(o: Orientation) -> u8 {
    match o {
        Orientation::Zero => 0,
        Orientation::Minus => 1,
        Orientation::Plus => 2,
    }
}

/// Encode `oracle o perm` over all sorted subsets.
fn encode_under(o: &dyn OrientationOracle, perm: &[usize]) -> FlatEncoding {
    let r = o.dim() + 1;
    let values = (0..o.n())
        .combinations(r)
        .map(|subset| {
            let mapped: Vec<usize> = subset.iter().map(|&x| perm[x]).collect();
            value_key(o.query(&mapped))
        })
        .collect();
    FlatEncoding(values)
}

/// The identity-labeled encoding.
pub fn flat_encode(o: &dyn OrientationOracle) -> FlatEncoding {
    let id: Vec<usize> = (0..o.n()).collect();
    encode_under(o, &id)
}

/// Minimum encoding over all `n!` relabelings, with every minimizer.
pub fn brute_canonical(o: &dyn OrientationOracle) -> Result<(FlatEncoding, Vec<Perm>)> {
    let n = o.n();
    check_guard(n)?;
    let mut best: Option<(FlatEncoding, Vec<Perm>)> = None;
    for perm in (0..n).permutations(n) {
        let enc = encode_under(o, &perm);
        match &mut best {
            None => best = Some((enc, vec![Perm::new(perm).unwrap()])),
            Some((b, mins)) => match enc.cmp(b) {
                std::cmp::Ordering::Less => best = Some((enc, vec![Perm::new(perm).unwrap()])),
                std::cmp::Ordering::Equal => mins.push(Perm::new(perm).unwrap()),
                std::cmp::Ordering::Greater => {}
            },
        }
    }
    Ok(best.expect("n >= 0 has at least the identity"))
}

/// Brute isomorphism result.
#[derive(Debug, Clone)]
pub struct BruteIso {
    pub same: bool,
    pub reflected: bool,
    pub witness: Option<Perm>,
}

fn matches_under(
    a: &dyn OrientationOracle,
    b: &dyn OrientationOracle,
    perm: &[usize],
    negate: bool,
) -> bool {
    let r = a.dim() + 1;
    (0..a.n()).combinations(r).all(|subset| {
        let mapped: Vec<usize> = subset.iter().map(|&x| perm[x]).collect();
        let want = if negate {
            b.query(&mapped).negate()
        } else {
            b.query(&mapped)
        };
        a.query(&subset) == want
    })
}

/// Exhaustive isomorphism test; the first witness in lexicographic
/// permutation order is returned.
pub fn brute_isomorphic(
    a: &dyn OrientationOracle,
    b: &dyn OrientationOracle,
    allow_reflection: bool,
) -> Result<BruteIso> {
    if a.n() != b.n() || a.dim() != b.dim() {
        return Ok(BruteIso {
            same: false,
            reflected: false,
            witness: None,
        });
    }
    let n = a.n();
    check_guard(n)?;
    for perm in (0..n).permutations(n) {
        if matches_under(a, b, &perm, false) {
            return Ok(BruteIso {
                same: true,
                reflected: false,
                witness: Some(Perm::new(perm).unwrap()),
            });
        }
    }
    if allow_reflection {
        for perm in (0..n).permutations(n) {
            if matches_under(a, b, &perm, true) {
                return Ok(BruteIso {
                    same: true,
                    reflected: true,
                    witness: Some(Perm::new(perm).unwrap()),
                });
            }
        }
    }
    Ok(BruteIso {
        same: false,
        reflected: false,
        witness: None,
    })
}

/// All permutations fixing the oracle. Closure under composition is
/// asserted for reasonably small groups.
pub fn brute_automorphisms(o: &dyn OrientationOracle) -> Result<Vec<Perm>> {
    let n = o.n();
    check_guard(n)?;
    let mut autos = Vec::new();
    for perm in (0..n).permutations(n) {
        if matches_under(o, o, &perm, false) {
            autos.push(Perm::new(perm).unwrap());
        }
    }
    if autos.len() <= 1000 {
        let set: std::collections::BTreeSet<Vec<usize>> =
            autos.iter().map(|p| p.as_slice().to_vec()).collect();
        for a in &autos {
            for b in &autos {
                debug_assert!(set.contains(a.compose(b).as_slice()));
            }
        }
    }
    Ok(autos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn triangle_has_three_minimizers() {
        let o = triangle();
        let (_, mins) = brute_canonical(&o).unwrap();
        assert_eq!(mins.len(), 3);
    }

    #[test]
    fn collinear_four_all_permutations_minimize() {
        let o = realizable(&[[0, 0], [1, 0], [2, 0], [3, 0]]);
        let (enc, mins) = brute_canonical(&o).unwrap();
        assert_eq!(mins.len(), 24);
        assert!(enc.0.iter().all(|&v| v == 0));
    }

    #[test]
    fn square_center_has_four_minimizers() {
        let o = square_center();
        let (_, mins) = brute_canonical(&o).unwrap();
        assert_eq!(mins.len(), 4);
        let autos = brute_automorphisms(&o).unwrap();
        assert_eq!(autos.len(), 4);
    }

    #[test]
    fn relabeled_copy_is_isomorphic() {
        let o = square_center();
        let perm = crate::oracle::Perm::new(vec![2, 4, 0, 3, 1]).unwrap();
        let view = crate::oracle::make_view(&o, perm, false).unwrap();
        let r = brute_isomorphic(&o, &view, false).unwrap();
        assert!(r.same);
        let w = r.witness.unwrap();
        assert!(matches_under(&o, &view, w.as_slice(), false));
    }

    #[test]
    fn triangle_vs_collinear_differ() {
        let a = triangle();
        let b = realizable(&[[0, 0], [1, 0], [2, 0]]);
        assert!(!brute_isomorphic(&a, &b, true).unwrap().same);
    }

    #[test]
    fn all_convex_quadrilaterals_share_one_order_type() {
        let a = realizable(&[[0, 0], [4, 1], [5, 6], [-1, 3]]);
        let b = realizable(&[[0, 0], [9, 0], [10, 10], [1, 7]]);
        assert!(brute_isomorphic(&a, &b, false).unwrap().same);
    }

    #[test]
    fn guard_is_enforced() {
        let pts: Vec<[i64; 2]> = (0..9).map(|i| [i, i * i]).collect();
        let o = realizable(&pts);
        assert!(matches!(
            brute_canonical(&o),
            Err(Error::GuardExceeded(9, 8))
        ));
    }

    #[test]
    fn generic_point_set_has_trivial_group() {
        let o = realizable(&[[0, 0], [7, 1], [3, 9], [11, 4], [5, 5], [1, 6]]);
        let autos = brute_automorphisms(&o).unwrap();
        assert_eq!(autos.len(), 1);
        assert!(autos[0].is_identity());
    }

    #[test]
    fn cyclic_hexagon_group_is_cyclic_of_order_six() {
        let o = cyclic_hexagon();
        let autos = brute_automorphisms(&o).unwrap();
        assert_eq!(autos.len(), 6);
    }
}
