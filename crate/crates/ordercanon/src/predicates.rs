//! Exact orientation predicates over integer point sets.
//!
//! The orientation of `d+1` points in dimension `d` is the sign of the
//! determinant of the homogenized matrix whose row `i` is
//! `(1, coordinates of point i)`. All arithmetic is exact: a machine-word
//! fast path covers small coordinates and falls back to arbitrary-precision
//! integers whenever an intermediate product could overflow.

use num_bigint::BigInt;
use num_bigint::Sign as BigSign;

use crate::{Error, Result};

/// Three-valued orientation sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Minus,
    Zero,
    Plus,
}

impl Orientation {
    /// Negation maps `Plus <-> Minus` and fixes `Zero`.
    pub fn negate(self) -> Self {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
            Orientation::Zero => Orientation::Zero,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Orientation::Zero
    }

    /// Multiply by the sign of a permutation (`+1` or `-1`).
    pub fn times_parity(self, even: bool) -> Self {
        if even {
            self
        } else {
            self.negate()
        }
    }

    pub fn from_i64(v: i64) -> Self {
        match v.cmp(&0) {
            std::cmp::Ordering::Less => Orientation::Minus,
            std::cmp::Ordering::Equal => Orientation::Zero,
            std::cmp::Ordering::Greater => Orientation::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Orientation::Minus => '-',
            Orientation::Zero => '0',
            Orientation::Plus => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '-' => Some(Orientation::Minus),
            '0' => Some(Orientation::Zero),
            '+' => Some(Orientation::Plus),
            _ => None,
        }
    }
}

/// A labeled set of distinct integer points in dimension `d >= 1`.
///
/// Coordinates are arbitrary-precision integers; rational inputs must be
/// pre-scaled by the caller. A parallel `i64` copy is kept when every
/// coordinate fits, enabling the overflow-checked fast path.
#[derive(Debug, Clone)]
pub struct PointSet {
    dim: usize,
    coords: Vec<Vec<BigInt>>,
    small: Option<Vec<Vec<i64>>>,
}

impl PointSet {
    pub fn new(dim: usize, coords: Vec<Vec<BigInt>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        for (i, row) in coords.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for earlier in 0..i {
                if coords[earlier] == coords[i] {
                    return Err(Error::DuplicatePoints(earlier, i));
                }
            }
        }
        let small = coords
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| i64::try_from(c).ok())
                    .collect::<Option<Vec<i64>>>()
            })
            .collect::<Option<Vec<Vec<i64>>>>();
        Ok(PointSet { dim, coords, small })
    }

    pub fn from_i64(dim: usize, pts: &[Vec<i64>]) -> Result<Self> {
        let coords = pts
            .iter()
            .map(|row| row.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        PointSet::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[BigInt] {
        &self.coords[i]
    }

    pub fn points(&self) -> &[Vec<BigInt>] {
        &self.coords
    }

    /// Orientation of the labeled tuple, all labels distinct and in range.
    pub fn orient_labels(&self, labels: &[usize]) -> Orientation {
        debug_assert_eq!(labels.len(), self.dim + 1);
        if let Some(small) = &self.small {
            if let Some(o) = orient_small(self.dim, small, labels) {
                return o;
            }
        }
        let rows: Vec<&[BigInt]> = labels.iter().map(|&l| self.point(l)).collect();
        orient_big(&rows)
    }
}

/// Sign of the orientation determinant of `d+1` points in dimension `d`.
///
/// Row `i` of the homogenized matrix is `(1, p_i)`; subtracting the first
/// row reduces it to a `d x d` determinant of coordinate differences with
/// the same sign.
pub fn orient(points: &[Vec<BigInt>]) -> Result<Orientation> {
    if points.is_empty() {
        return Err(Error::Invalid("empty point tuple".into()));
    }
    let d = points.len() - 1;
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
    }
    let rows: Vec<&[BigInt]> = points.iter().map(|p| p.as_slice()).collect();
    Ok(orient_big(&rows))
}

/// Convenience wrapper over `i64` coordinates.
pub fn orient_i64(points: &[Vec<i64>]) -> Result<Orientation> {
    let big: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    orient(&big)
}

fn orient_big(rows: &[&[BigInt]]) -> Orientation {
    let d = rows.len() - 1;
    // Difference matrix relative to row 0.
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    for r in 1..=d {
        m.push((0..d).map(|c| &rows[r][c] - &rows[0][c]).collect());
    }
    det_sign_big(m)
}

fn det_sign_big(mut m: Vec<Vec<BigInt>>) -> Orientation {
    // Fraction-free Gaussian elimination (Bareiss).
    let n = m.len();
    if n == 0 {
        return Orientation::Plus;
    }
    let mut sign_flips = 0usize;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k].sign() == BigSign::NoSign {
            let swap = (k + 1..n).find(|&r| m[r][k].sign() != BigSign::NoSign);
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign_flips += 1;
                }
                None => return Orientation::Zero,
            }
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &m[r][c] * &m[k][k] - &m[r][k] * &m[k][c];
                m[r][c] = num / &prev;
            }
            m[r][k] = BigInt::from(0);
        }
        prev = m[k][k].clone();
    }
    let s = m[n - 1][n - 1].sign();
    let o = match s {
        BigSign::Minus => Orientation::Minus,
        BigSign::NoSign => Orientation::Zero,
        BigSign::Plus => Orientation::Plus,
    };
    o.times_parity(sign_flips % 2 == 0)
}

fn orient_small(dim: usize, pts: &[Vec<i64>], labels: &[usize]) -> Option<Orientation> {
    match dim {
        2 => {
            let a = &pts[labels[0]];
            let b = &pts[labels[1]];
            let c = &pts[labels[2]];
            let ux = b[0] as i128 - a[0] as i128;
            let uy = b[1] as i128 - a[1] as i128;
            let vx = c[0] as i128 - a[0] as i128;
            let vy = c[1] as i128 - a[1] as i128;
            // |diff| < 2^64 so each product fits in i128 and the
            // subtraction cannot overflow.
            let det = ux * vy - uy * vx;
            Some(match det.cmp(&0) {
                std::cmp::Ordering::Less => Orientation::Minus,
                std::cmp::Ordering::Equal => Orientation::Zero,
                std::cmp::Ordering::Greater => Orientation::Plus,
            })
        }
        _ => {
            let mut m: Vec<Vec<i128>> = Vec::with_capacity(dim);
            let a = &pts[labels[0]];
            for &l in &labels[1..] {
                m.push(
                    (0..dim)
                        .map(|c| pts[l][c] as i128 - a[c] as i128)
                        .collect(),
                );
            }
            det_sign_i128(m)
        }
    }
}

/// Checked Bareiss over `i128`; `None` means a potential overflow and the
/// caller must redo the computation with big integers.
fn det_sign_i128(mut m: Vec<Vec<i128>>) -> Option<Orientation> {
    let n = m.len();
    let mut sign_flips = 0usize;
    let mut prev: i128 = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flips += 1;
                }
                None => return Some(Orientation::Zero),
            }
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let t1 = m[r][c].checked_mul(m[k][k])?;
                let t2 = m[r][k].checked_mul(m[k][c])?;
                m[r][c] = t1.checked_sub(t2)? / prev;
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    let o = Orientation::from_i64(m[n - 1][n - 1].signum() as i64);
    Some(o.times_parity(sign_flips % 2 == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o2(pts: &[[i64; 2]]) -> Orientation {
        orient_i64(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn unit_ccw_triangle_is_plus() {
        assert_eq!(o2(&[[0, 0], [1, 0], [0, 1]]), Orientation::Plus);
    }

    #[test]
    fn collinear_is_zero() {
        assert_eq!(o2(&[[0, 0], [1, 1], [2, 2]]), Orientation::Zero);
    }

    #[test]
    fn transposition_flips_sign() {
        assert_eq!(o2(&[[1, 0], [0, 0], [0, 1]]), Orientation::Minus);
    }

    #[test]
    fn orient_3d_simplex() {
        let pts = vec![
            vec![0i64, 0, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ];
        assert_eq!(orient_i64(&pts).unwrap(), Orientation::Plus);
        let swapped = vec![
            vec![1i64, 0, 0],
            vec![0, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
        ];
        assert_eq!(orient_i64(&swapped).unwrap(), Orientation::Minus);
    }

    #[test]
    fn big_coordinates_stay_exact() {
        // Values chosen so the cross product overflows i64 arithmetic done
        // naively but the exact sign is Plus.
        let big = 3_000_000_000i64;
        assert_eq!(
            o2(&[[-big, -big], [big, -big + 1], [-big + 1, big]]),
            Orientation::Plus
        );
    }

    #[test]
    fn pointset_rejects_duplicates_and_ragged_rows() {
        assert!(matches!(
            PointSet::from_i64(2, &[vec![0, 0], vec![0, 0]]),
            Err(Error::DuplicatePoints(0, 1))
        ));
        assert!(PointSet::new(2, vec![vec![BigInt::from(0)]]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let pts = vec![vec![BigInt::from(0)], vec![BigInt::from(1), BigInt::from(2)]];
        assert!(orient(&pts).is_err());
    }

    #[test]
    fn pointset_orient_matches_free_function() {
        let ps = PointSet::from_i64(2, &[vec![0, 0], vec![2, 0], vec![2, 2], vec![0, 2]]).unwrap();
        assert_eq!(ps.orient_labels(&[0, 1, 2]), Orientation::Plus);
        assert_eq!(ps.orient_labels(&[0, 2, 1]), Orientation::Minus);
    }
}
