//! Seeded random instance generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::Perm;
use crate::predicates::PointSet;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct GenOptions {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub range: i64,
    /// Probability of placing a point on the line through two earlier
    /// points (planar inputs only).
    pub collinear_frac: f64,
}

impl GenOptions {
    pub fn new(n: usize, d: usize, seed: u64) -> Self {
        GenOptions {
            n,
            d,
            seed,
            range: 1000,
            collinear_frac: 0.0,
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, d: usize, range: i64) -> Vec<i64> {
    (0..d).map(|_| rng.gen_range(-range..=range)).collect()
}

fn collinear_candidate(rng: &mut ChaCha8Rng, pts: &[Vec<i64>], range: i64) -> Option<Vec<i64>> {
    let i = rng.gen_range(0..pts.len());
    let mut j = rng.gen_range(0..pts.len());
    if i == j {
        j = (j + 1) % pts.len();
    }
    let (a, b) = (&pts[i], &pts[j]);
    let dx = b[0] - a[0];
    let dy = b[1] - a[1];
    // Integer multiples along the line, and the midpoint when integral.
    let mut choices: Vec<Vec<i64>> = [-3i64, -2, -1, 2, 3, 4]
        .iter()
        .map(|&t| vec![a[0] + t * dx, a[1] + t * dy])
        .collect();
    if dx % 2 == 0 && dy % 2 == 0 {
        choices.push(vec![a[0] + dx / 2, a[1] + dy / 2]);
    }
    let pick = choices[rng.gen_range(0..choices.len())].clone();
    let in_range = pick.iter().all(|&c| -range <= c && c <= range);
    (in_range && !pts.contains(&pick)).then_some(pick)
}

/// Rejection-sample distinct integer points in `[-range, range]^d`; with
/// probability `collinear_frac` a planar point is aligned with two earlier
/// ones to exercise degeneracy handling.
pub fn generate_points(opts: &GenOptions) -> Result<PointSet> {
    if opts.n == 0 || opts.d == 0 {
        return Err(Error::Invalid("need n >= 1 and d >= 1".into()));
    }
    let volume = (2 * opts.range + 1).checked_pow(opts.d as u32);
    if volume.map_or(false, |v| (v as u128) < opts.n as u128) {
        return Err(Error::Invalid("range too small for n distinct points".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pts: Vec<Vec<i64>> = Vec::with_capacity(opts.n);
    while pts.len() < opts.n {
        if opts.d == 2 && pts.len() >= 2 && rng.gen::<f64>() < opts.collinear_frac {
            let placed = (0..32).find_map(|_| collinear_candidate(&mut rng, &pts, opts.range));
            if let Some(p) = placed {
                pts.push(p);
                continue;
            }
        }
        let p = random_point(&mut rng, opts.d, opts.range);
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointSet::from_i64(opts.d, &pts)
}

/// Random points with no `d+1` of them on a common hyperplane. Retries
/// whole samples until the check passes, so keep `n` small.
pub fn generate_general_position(n: usize, d: usize, seed: u64, range: i64) -> Result<PointSet> {
    for attempt in 0..256 {
        let opts = GenOptions {
            n,
            d,
            seed: seed.wrapping_add(attempt * 0x9e37),
            range,
            collinear_frac: 0.0,
        };
        let ps = generate_points(&opts)?;
        if is_general_position(&ps) {
            return Ok(ps);
        }
    }
    Err(Error::Invalid(
        "could not sample a general-position configuration; widen the range".into(),
    ))
}

pub fn is_general_position(ps: &PointSet) -> bool {
    let n = ps.len();
    let d = ps.dim();
    if n < d + 1 {
        return true;
    }
    let mut idx: Vec<usize> = (0..=d).collect();
    loop {
        if ps.orient_labels(&idx).is_zero() {
            return false;
        }
        // Next combination.
        let mut i = d;
        loop {
            idx[i] += 1;
            if idx[i] <= n - (d + 1 - i) {
                for k in i + 1..=d {
                    idx[k] = idx[k - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return true;
            }
            i -= 1;
        }
    }
}

/// Uniform random permutation.
pub fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    use rand::seq::SliceRandom;
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Perm::new(image).expect("shuffle preserves bijectivity")
}
