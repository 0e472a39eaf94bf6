//! Timing harness probing the quadratic scaling of the planar pipeline.

use std::time::Instant;

use crate::canon2d::canonical_form_2d;
use crate::generate::{generate_points, GenOptions};
use crate::layers::convex_layers;
use crate::oracle::RealizableOracle;
use crate::Result;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: usize,
    pub ms_layers: f64,
    pub ms_canon: f64,
}

/// Generate one random planar instance per size and time the layer
/// decomposition and the full canonicalization.
pub fn run_bench(sizes: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for (i, &n) in sizes.iter().enumerate() {
        let opts = GenOptions {
            range: 1_000_000,
            ..GenOptions::new(n, 2, seed.wrapping_add(i as u64))
        };
        let ps = generate_points(&opts)?;
        let oracle = RealizableOracle::new(ps);

        let t0 = Instant::now();
        let _ = convex_layers(&oracle)?;
        let ms_layers = t0.elapsed().as_secs_f64() * 1e3;

        let t1 = Instant::now();
        let _ = canonical_form_2d(&oracle)?;
        let ms_canon = t1.elapsed().as_secs_f64() * 1e3;

        rows.push(BenchRow {
            n,
            ms_layers,
            ms_canon,
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,ms_layers,ms_canon\n");
    for r in rows {
        out.push_str(&format!("{},{:.3},{:.3}\n", r.n, r.ms_layers, r.ms_canon));
    }
    out
}
