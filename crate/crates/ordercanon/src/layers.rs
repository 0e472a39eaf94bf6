//! Convex hull and convex layers driven purely by orientation queries.
//!
//! Layers are peeled by repeated gift wrapping. Hull cycles are
//! counterclockwise and include points lying on hull edges, emitted in
//! order along each edge. All comparisons — including distance along a
//! line — are reduced to orientation queries, so the module works for
//! abstract rank-3 inputs exactly as for realizable ones.
//!
//! Distance along a line is decided by a betweenness test: for collinear
//! `a, b, c` and a witness `z` off the line, `b` lies strictly between `a`
//! and `c` iff `orient(a,b,z) == orient(b,c,z)`.

use crate::oracle::OrientationOracle;
use crate::predicates::Orientation;
use crate::{Error, Result};

/// A hull traversal: a proper CCW cycle, or an ordered chain when the
/// subset is entirely collinear (size >= 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HullCycle {
    Proper(Vec<usize>),
    Degenerate(Vec<usize>),
}

impl HullCycle {
    pub fn labels(&self) -> &[usize] {
        match self {
            HullCycle::Proper(v) | HullCycle::Degenerate(v) => v,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, HullCycle::Degenerate(_))
    }
}

/// Convex layers of a planar oracle: the onion decomposition, the tangent
/// map into the next layer, the minimum-size layer and the keypoint set.
#[derive(Debug, Clone)]
pub struct ConvexLayers {
    cycles: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
    pos_in_cycle: Vec<usize>,
    tangent: Vec<Option<usize>>,
    min_layer: Option<usize>,
    last_is_chain: bool,
    keypoints: Vec<usize>,
}

impl ConvexLayers {
    pub fn m(&self) -> usize {
        self.cycles.len()
    }

    pub fn n(&self) -> usize {
        self.layer_of.len()
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle(&self, j: usize) -> &[usize] {
        &self.cycles[j]
    }

    pub fn layer_of(&self, label: usize) -> usize {
        self.layer_of[label]
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }

    /// CCW successor of a label on its own layer cycle.
    pub fn succ(&self, label: usize) -> usize {
        let cyc = &self.cycles[self.layer_of[label]];
        cyc[(self.pos_in_cycle[label] + 1) % cyc.len()]
    }

    /// CW neighbor (cycle predecessor).
    pub fn pred(&self, label: usize) -> usize {
        let cyc = &self.cycles[self.layer_of[label]];
        cyc[(self.pos_in_cycle[label] + cyc.len() - 1) % cyc.len()]
    }

    /// Tangent target on the next-deeper layer, if any.
    pub fn tangent_of(&self, label: usize) -> Option<usize> {
        self.tangent[label]
    }

    /// Index of the outermost layer of minimum size among layers with at
    /// least two points.
    pub fn min_layer(&self) -> Option<usize> {
        self.min_layer
    }

    pub fn min_layer_size(&self) -> Option<usize> {
        self.min_layer.map(|j| self.cycles[j].len())
    }

    pub fn keypoints(&self) -> &[usize] {
        &self.keypoints
    }

    /// True when the innermost layer is a collinear chain of 3+ points.
    ///
    /// Such a chain has no geometric CCW direction: both traversal
    /// directions are legitimate cycles and canonicalization enumerates
    /// labelings over both variants.
    pub fn last_is_chain(&self) -> bool {
        self.last_is_chain
    }

    /// The variant with the innermost chain traversed in the opposite
    /// direction. Keypoints are recomputed since the s-map sees the new
    /// successors.
    pub fn chain_reversed(&self, o: &dyn OrientationOracle) -> Result<ConvexLayers> {
        let mut out = self.clone();
        let last = out.cycles.len() - 1;
        out.cycles[last].reverse();
        rotate_lowest_first(&mut out.cycles[last]);
        for (idx, &l) in out.cycles[last].iter().enumerate() {
            out.pos_in_cycle[l] = idx;
        }
        out.keypoints = keypoints(o, &out)?;
        Ok(out)
    }
}

fn rotate_lowest_first(cycle: &mut Vec<usize>) {
    if cycle.is_empty() {
        return;
    }
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|&(_, &l)| l)
        .map(|(i, _)| i)
        .unwrap();
    cycle.rotate_left(min_pos);
}

/// First label `z` not collinear with the line through `a` and `b`.
///
/// The witness may lie outside the current working subset; any label of
/// the oracle is acceptable for a direction comparison.
pub(crate) fn off_line_witness(o: &dyn OrientationOracle, a: usize, b: usize) -> Option<usize> {
    (0..o.n()).find(|&z| z != a && z != b && !o.query(&[a, b, z]).is_zero())
}

/// For collinear `a, b` and a witness `z` off their line: the direction
/// sign of the segment `a -> b` relative to `z`.
pub(crate) fn dir_sign(o: &dyn OrientationOracle, a: usize, b: usize, z: usize) -> Orientation {
    o.query(&[a, b, z])
}

/// `x` strictly between `a` and `b` (all three collinear, `z` off-line).
pub(crate) fn strictly_between(o: &dyn OrientationOracle, a: usize, x: usize, b: usize, z: usize) -> bool {
    let s1 = dir_sign(o, a, x, z);
    let s2 = dir_sign(o, x, b, z);
    !s1.is_zero() && s1 == s2
}

enum StartInfo {
    Vertex(usize),
    Collinear,
}

/// Find a strict hull vertex of the subset, or report that the subset is
/// entirely collinear. Scans candidates in label order; for each, a
/// single-pass tournament proposes a supporting ray and a verification
/// pass accepts or rejects it. A strict hull vertex always verifies, so
/// the scan terminates.
fn extreme_start(o: &dyn OrientationOracle, subset: &[usize]) -> Result<StartInfo> {
    if subset.len() <= 2 {
        return Ok(StartInfo::Collinear);
    }
    for &c in subset {
        let mut v = None;
        for &w in subset {
            if w == c {
                continue;
            }
            match v {
                None => v = Some(w),
                Some(cur) => {
                    if o.query(&[c, cur, w]) == Orientation::Minus {
                        v = Some(w);
                    }
                }
            }
        }
        let v = v.unwrap();
        let mut online: Vec<usize> = vec![c, v];
        let mut witness = None;
        let mut ok = true;
        for &w in subset {
            if w == c || w == v {
                continue;
            }
            match o.query(&[c, v, w]) {
                Orientation::Minus => {
                    ok = false;
                    break;
                }
                Orientation::Zero => online.push(w),
                Orientation::Plus => witness = Some(w),
            }
        }
        if !ok {
            continue;
        }
        if online.len() == subset.len() {
            return Ok(StartInfo::Collinear);
        }
        // Extreme point of the collinear group in the direction c -> v.
        let z = witness.expect("non-collinear subset has an off-line point");
        let forward = dir_sign(o, c, v, z);
        let mut e = online[0];
        for &w in &online[1..] {
            if dir_sign(o, e, w, z) == forward {
                e = w;
            }
        }
        return Ok(StartInfo::Vertex(e));
    }
    Err(Error::Invalid(
        "no hull vertex found; oracle violates convexity axioms".into(),
    ))
}

/// One gift-wrapping step: the next boundary point counterclockwise from
/// `cur`, given the previous walk point. Candidates are ranked by the
/// counterclockwise angle from the incoming direction; collinear ties on a
/// tangent ray advance to the nearest point first so edge-interior points
/// are emitted in order, and points straight behind rank last.
fn pivot(
    o: &dyn OrientationOracle,
    subset: &[usize],
    cur: usize,
    prev: Option<usize>,
) -> Result<usize> {
    let mut best: Option<usize> = None;
    for &w in subset {
        if w == cur {
            continue;
        }
        let b = match best {
            None => {
                best = Some(w);
                continue;
            }
            Some(b) => b,
        };
        match o.query(&[cur, b, w]) {
            Orientation::Minus => best = Some(w),
            Orientation::Plus => {}
            Orientation::Zero => {
                let z = off_line_witness(o, cur, b).ok_or(Error::AllCollinear)?;
                let sb = dir_sign(o, cur, b, z);
                let sw = dir_sign(o, cur, w, z);
                if sb == sw {
                    // Same ray from cur.
                    let backward = match prev {
                        Some(p) => {
                            p == b
                                || (o.query(&[cur, b, p]).is_zero()
                                    && dir_sign(o, cur, p, z) == sb)
                        }
                        None => false,
                    };
                    let replace = if backward {
                        strictly_between(o, cur, b, w, z)
                    } else {
                        strictly_between(o, cur, w, b, z)
                    };
                    if replace {
                        best = Some(w);
                    }
                } else {
                    // Opposite rays: this line is the supporting line
                    // through prev and cur; prefer the forward ray.
                    let p = prev.ok_or_else(|| {
                        Error::Invalid("antipodal candidates at a layer start".into())
                    })?;
                    if sw == dir_sign(o, p, cur, z) {
                        best = Some(w);
                    }
                }
            }
        }
    }
    best.ok_or_else(|| Error::Invalid("pivot on a single point".into()))
}

fn jarvis_cycle(o: &dyn OrientationOracle, subset: &[usize], start: usize) -> Result<Vec<usize>> {
    let mut cycle = vec![start];
    let mut cur = start;
    let mut prev = None;
    loop {
        let next = pivot(o, subset, cur, prev)?;
        if next == start {
            break;
        }
        cycle.push(next);
        if cycle.len() > subset.len() {
            return Err(Error::Invalid(
                "hull walk does not close; oracle violates convexity axioms".into(),
            ));
        }
        prev = Some(cur);
        cur = next;
    }
    Ok(cycle)
}

/// Order an entirely collinear subset along its line. Uses any off-line
/// label as a direction witness; without one (the whole ground set is
/// collinear) the chain is returned in ascending label order, which is all
/// the predicate can distinguish.
fn build_chain(o: &dyn OrientationOracle, subset: &[usize]) -> Vec<usize> {
    let mut chain: Vec<usize> = subset.to_vec();
    chain.sort_unstable();
    if chain.len() <= 2 {
        return chain;
    }
    let (a, b) = (chain[0], chain[1]);
    let z = match off_line_witness(o, a, b) {
        Some(z) => z,
        None => return chain,
    };
    let forward = dir_sign(o, a, b, z);
    chain.sort_by(|&x, &y| {
        if x == y {
            std::cmp::Ordering::Equal
        } else if dir_sign(o, x, y, z) == forward {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    chain
}

/// CCW hull cycle of a subset, including points interior to hull edges.
/// Collinear subsets of size >= 2 come back as `Degenerate` chains.
pub fn convex_hull_ccw(o: &dyn OrientationOracle, subset: &[usize]) -> Result<HullCycle> {
    if subset.is_empty() {
        return Err(Error::TooFewPoints { need: 1, got: 0 });
    }
    for (i, &l) in subset.iter().enumerate() {
        if l >= o.n() {
            return Err(Error::LabelOutOfRange(l, o.n()));
        }
        if subset[..i].contains(&l) {
            return Err(Error::RepeatedLabel);
        }
    }
    if subset.len() == 1 {
        return Ok(HullCycle::Proper(vec![subset[0]]));
    }
    match extreme_start(o, subset)? {
        StartInfo::Collinear => Ok(HullCycle::Degenerate(build_chain(o, subset))),
        StartInfo::Vertex(e) => {
            let mut cycle = jarvis_cycle(o, subset, e)?;
            rotate_lowest_first(&mut cycle);
            Ok(HullCycle::Proper(cycle))
        }
    }
}

/// Is candidate `v` (an index into `inner`) the tangent target from `p`:
/// the first inner point on the counterclockwise tangent ray.
fn is_tangent(o: &dyn OrientationOracle, p: usize, v_idx: usize, inner: &[usize]) -> Result<bool> {
    let r = inner.len();
    if r == 1 {
        return Ok(true);
    }
    let v = inner[v_idx];
    let mut neighbors = vec![inner[(v_idx + 1) % r]];
    let pred = inner[(v_idx + r - 1) % r];
    if pred != neighbors[0] {
        neighbors.push(pred);
    }
    for nb in neighbors {
        match o.query(&[p, v, nb]) {
            Orientation::Minus => return Ok(false),
            Orientation::Zero => {
                let z = off_line_witness(o, p, v).ok_or(Error::AllCollinear)?;
                if strictly_between(o, p, nb, v, z) {
                    return Ok(false);
                }
            }
            Orientation::Plus => {}
        }
    }
    Ok(true)
}

/// Tangent target on `inner` for an external point `p`, by a one-pass
/// tournament (valid because the candidates span less than a half turn
/// when seen from outside their hull).
fn first_tangent(o: &dyn OrientationOracle, p: usize, inner: &[usize]) -> Result<usize> {
    let mut best = 0usize;
    for (i, &w) in inner.iter().enumerate().skip(1) {
        match o.query(&[p, inner[best], w]) {
            Orientation::Minus => best = i,
            Orientation::Zero => {
                let z = off_line_witness(o, p, inner[best]).ok_or(Error::AllCollinear)?;
                if strictly_between(o, p, w, inner[best], z) {
                    best = i;
                }
            }
            Orientation::Plus => {}
        }
    }
    Ok(best)
}

/// Tangents from every point of `outer` to the inner cycle, found by
/// walking both cycles in parallel; the tangent index only advances, so
/// the whole pass costs O(|outer| + |inner|) probes.
pub fn tangents_between(
    o: &dyn OrientationOracle,
    outer: &[usize],
    inner: &[usize],
) -> Result<Vec<usize>> {
    if inner.len() == 1 {
        return Ok(vec![inner[0]; outer.len()]);
    }
    let mut out = Vec::with_capacity(outer.len());
    let mut t = first_tangent(o, outer[0], inner)?;
    for (k, &p) in outer.iter().enumerate() {
        if k > 0 {
            let mut advanced = 0usize;
            while !is_tangent(o, p, t, inner)? {
                t = (t + 1) % inner.len();
                advanced += 1;
                if advanced > inner.len() {
                    // The walk lost the tangent; recover with a fresh scan.
                    t = first_tangent(o, p, inner)?;
                    break;
                }
            }
        }
        out.push(inner[t]);
    }
    Ok(out)
}

/// Peel the convex layers of a planar oracle.
///
/// Errors with [`Error::AllCollinear`] when the whole input is collinear;
/// the caller owns that degenerate path.
pub fn convex_layers(o: &dyn OrientationOracle) -> Result<ConvexLayers> {
    if o.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: o.dim(),
        });
    }
    let n = o.n();
    if n == 0 {
        return Err(Error::TooFewPoints { need: 1, got: 0 });
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut last_is_chain = false;
    while !remaining.is_empty() {
        let hull = convex_hull_ccw(o, &remaining)?;
        if hull.is_degenerate() && cycles.is_empty() {
            return Err(Error::AllCollinear);
        }
        let cyc = hull.labels().to_vec();
        last_is_chain = hull.is_degenerate() && cyc.len() >= 3;
        remaining.retain(|l| !cyc.contains(l));
        if hull.is_degenerate() {
            debug_assert!(remaining.is_empty());
        }
        cycles.push(cyc);
    }

    let mut layer_of = vec![0usize; n];
    let mut pos_in_cycle = vec![0usize; n];
    for (j, cyc) in cycles.iter().enumerate() {
        for (idx, &l) in cyc.iter().enumerate() {
            layer_of[l] = j;
            pos_in_cycle[l] = idx;
        }
    }

    let mut tangent = vec![None; n];
    for j in 0..cycles.len().saturating_sub(1) {
        let targets = tangents_between(o, &cycles[j], &cycles[j + 1])?;
        for (&p, &t) in cycles[j].iter().zip(targets.iter()) {
            tangent[p] = Some(t);
        }
    }

    let min_layer = cycles
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() >= 2)
        .min_by_key(|(j, c)| (c.len(), *j))
        .map(|(j, _)| j);

    if let Some(j) = min_layer {
        let k = cycles[j].len();
        debug_assert!(k * (cycles.len() - 1) + 1 <= n);
    }

    let mut layers = ConvexLayers {
        cycles,
        layer_of,
        pos_in_cycle,
        tangent,
        min_layer,
        last_is_chain,
        keypoints: Vec::new(),
    };
    if layers.min_layer.is_some() {
        layers.keypoints = keypoints(o, &layers)?;
    }
    Ok(layers)
}

/// The s-map: for `v` on the outer hull, its clockwise neighbor; for a
/// deeper `v` with CCW successor `v'`, the counterclockwise-last point of
/// the contiguous hull arc lying strictly right of the directed line
/// `v' -> v`.
pub fn s_of(o: &dyn OrientationOracle, layers: &ConvexLayers, v: usize) -> Result<usize> {
    let j = layers.layer_of(v);
    if layers.cycle(j).len() < 2 {
        return Err(Error::Invalid(format!(
            "s-map undefined for label {v} on a singleton layer"
        )));
    }
    if j == 0 {
        return Ok(layers.pred(v));
    }
    let vp = layers.succ(v);
    let hull = layers.cycle(0);
    let flags: Vec<bool> = hull
        .iter()
        .map(|&q| o.query(&[vp, v, q]) == Orientation::Minus)
        .collect();
    let len = hull.len();
    let true_count = flags.iter().filter(|&&f| f).count();
    if true_count == 0 || true_count == len {
        return Err(Error::Invalid(
            "negative arc must be a proper nonempty hull arc".into(),
        ));
    }
    let transitions = (0..len)
        .filter(|&i| !flags[i] && flags[(i + 1) % len])
        .count();
    if transitions != 1 {
        return Err(Error::Invalid(
            "negative arc is not contiguous; oracle violates convexity axioms".into(),
        ));
    }
    let last = (0..len)
        .find(|&i| flags[i] && !flags[(i + 1) % len])
        .expect("nonempty proper arc has an end");
    Ok(hull[last])
}

/// The keypoint set: s-images of the outermost minimum-size layer.
pub fn keypoints(o: &dyn OrientationOracle, layers: &ConvexLayers) -> Result<Vec<usize>> {
    let j = layers
        .min_layer()
        .ok_or_else(|| Error::Invalid("no layer with at least two points".into()))?;
    let mut ks: Vec<usize> = layers
        .cycle(j)
        .iter()
        .map(|&p| s_of(o, layers, p))
        .collect::<Result<_>>()?;
    ks.sort_unstable();
    ks.dedup();
    Ok(ks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::oracle::{make_view, CountingOracle, Perm};

    #[test]
    fn square_center_hull() {
        let o = square_center();
        let h = convex_hull_ccw(&o, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(h, HullCycle::Proper(vec![0, 1, 2, 3]));
    }

    #[test]
    fn grid_hull_has_eight_boundary_points() {
        let o = grid3();
        let h = convex_hull_ccw(&o, &(0..9).collect::<Vec<_>>()).unwrap();
        // Labels: (x, y) -> 3 * y + x; boundary CCW from (0,0).
        assert_eq!(h, HullCycle::Proper(vec![0, 1, 2, 5, 8, 7, 6, 3]));
    }

    #[test]
    fn single_label_hull() {
        let o = triangle();
        let h = convex_hull_ccw(&o, &[1]).unwrap();
        assert_eq!(h, HullCycle::Proper(vec![1]));
    }

    #[test]
    fn collinear_subset_is_degenerate_chain() {
        let o = edge_run();
        // Labels 0..4 lie on the x-axis at x = 0, 1, 2, 3; label 4 is off.
        let h = convex_hull_ccw(&o, &[2, 0, 3, 1]).unwrap();
        assert!(h.is_degenerate());
        let chain = h.labels();
        assert!(chain == [0, 1, 2, 3] || chain == [3, 2, 1, 0]);
    }

    #[test]
    fn hull_edge_points_emitted_in_order() {
        let o = edge_run();
        let h = convex_hull_ccw(&o, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(h, HullCycle::Proper(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn square_center_layers() {
        let o = square_center();
        let l = convex_layers(&o).unwrap();
        assert_eq!(l.cycles(), &[vec![0, 1, 2, 3], vec![4]]);
        assert_eq!(l.m(), 2);
        assert_eq!(l.min_layer(), Some(0));
        assert_eq!(l.min_layer_size(), Some(4));
        assert_eq!(l.tangent_of(0), Some(4));
    }

    #[test]
    fn grid_layers() {
        let o = grid3();
        let l = convex_layers(&o).unwrap();
        assert_eq!(l.m(), 2);
        assert_eq!(l.cycle(0).len(), 8);
        assert_eq!(l.cycle(1), &[4]);
        assert_eq!(l.min_layer_size(), Some(8));
    }

    #[test]
    fn triangle_layers() {
        let o = triangle();
        let l = convex_layers(&o).unwrap();
        assert_eq!(l.m(), 1);
        assert_eq!(l.cycles(), &[vec![0, 1, 2]]);
        assert_eq!(l.min_layer_size(), Some(3));
    }

    #[test]
    fn all_collinear_is_an_error() {
        let o = collinear5();
        assert!(matches!(convex_layers(&o), Err(Error::AllCollinear)));
    }

    #[test]
    fn inner_chain_layer_is_flagged() {
        let o = chain_inside_square();
        let l = convex_layers(&o).unwrap();
        assert_eq!(l.m(), 2);
        assert!(l.last_is_chain());
        assert_eq!(l.cycle(1).len(), 3);
        let rev = l.chain_reversed(&o).unwrap();
        let a: Vec<usize> = l.cycle(1).to_vec();
        let mut b: Vec<usize> = rev.cycle(1).to_vec();
        b.reverse();
        // Same cycle reversed, up to rotation.
        let doubled: Vec<usize> = a.iter().chain(a.iter()).copied().collect();
        assert!(doubled.windows(b.len()).any(|w| w == b.as_slice()));
    }

    #[test]
    fn s_of_hull_vertex_is_cw_neighbor() {
        let o = square_center();
        let l = convex_layers(&o).unwrap();
        assert_eq!(s_of(&o, &l, 0).unwrap(), 3);
        assert_eq!(s_of(&o, &l, 1).unwrap(), 0);
    }

    #[test]
    fn s_of_inner_point_matches_brute_arc_scan() {
        let o = hexagon_pair();
        let l = convex_layers(&o).unwrap();
        assert_eq!(l.m(), 2);
        assert_eq!(l.cycle(1).len(), 2);
        for &v in l.cycle(1) {
            let vp = l.succ(v);
            let s = s_of(&o, &l, v).unwrap();
            // s is in the negative arc and its CCW successor is not.
            assert_eq!(o.query(&[vp, v, s]), Orientation::Minus);
            let hull = l.cycle(0);
            let pos = hull.iter().position(|&q| q == s).unwrap();
            let after = hull[(pos + 1) % hull.len()];
            assert_ne!(o.query(&[vp, v, after]), Orientation::Minus);
        }
    }

    #[test]
    fn s_of_singleton_layer_errors() {
        let o = square_center();
        let l = convex_layers(&o).unwrap();
        assert!(s_of(&o, &l, 4).is_err());
    }

    #[test]
    fn keypoints_of_fixtures() {
        let o = square_center();
        let l = convex_layers(&o).unwrap();
        assert_eq!(l.keypoints(), &[0, 1, 2, 3]);

        let o = triangle();
        let l = convex_layers(&o).unwrap();
        assert_eq!(l.keypoints(), &[0, 1, 2]);

        let o = grid3();
        let l = convex_layers(&o).unwrap();
        assert_eq!(l.keypoints().len(), 8);
    }

    #[test]
    fn layer_partition_and_convex_order_invariants() {
        for o in planar_fixture_oracles() {
            let l = match convex_layers(o.as_ref()) {
                Ok(l) => l,
                Err(Error::AllCollinear) => continue,
                Err(e) => panic!("{e}"),
            };
            let n = o.n();
            let mut seen = vec![false; n];
            for cyc in l.cycles() {
                for &p in cyc {
                    assert!(!seen[p]);
                    seen[p] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
            for (j, cyc) in l.cycles().iter().enumerate() {
                if cyc.len() < 3 {
                    continue;
                }
                for i in 0..cyc.len() {
                    let u = cyc[i];
                    let v = cyc[(i + 1) % cyc.len()];
                    for w in 0..n {
                        if l.layer_of(w) >= j && w != u && w != v {
                            assert_ne!(
                                o.query(&[u, v, w]),
                                Orientation::Minus,
                                "convex ordering violated at layer {j}"
                            );
                        }
                    }
                }
            }
            if let Some(k) = l.min_layer_size() {
                assert!(k * (l.m() - 1) + 1 <= n);
            }
            assert!(l.keypoints().iter().all(|&p| l.layer_of(p) == 0));
        }
    }

    #[test]
    fn relabeling_equivariance() {
        let o = hexagon_pair();
        let base = convex_layers(&o).unwrap();
        let perm = Perm::new(vec![3, 6, 0, 7, 2, 5, 1, 4]).unwrap();
        let view = make_view(&o, perm.clone(), false).unwrap();
        let rl = convex_layers(&view).unwrap();
        let inv = perm.inverse();
        assert_eq!(base.m(), rl.m());
        for (j, cyc) in base.cycles().iter().enumerate() {
            let mapped: Vec<usize> = cyc.iter().map(|&l| inv.apply(l)).collect();
            let got = rl.cycle(j);
            assert_eq!(got.len(), mapped.len());
            if mapped.len() >= 2 {
                let doubled: Vec<usize> = got.iter().chain(got.iter()).copied().collect();
                assert!(
                    doubled.windows(mapped.len()).any(|w| w == mapped),
                    "cycle {j} not a rotation: {got:?} vs {mapped:?}"
                );
            }
        }
    }

    #[test]
    fn tangent_walk_probe_budget() {
        let o = grid5();
        let l = convex_layers(&o).unwrap();
        for j in 0..l.m() - 1 {
            let outer = l.cycle(j).to_vec();
            let inner = l.cycle(j + 1).to_vec();
            if inner.len() < 2 {
                continue;
            }
            let counter = CountingOracle::new(&o);
            let _ = tangents_between(&counter, &outer, &inner).unwrap();
            let budget = 4 * (outer.len() + inner.len()) as u64;
            assert!(
                counter.count() <= budget,
                "layer {j}: {} probes > {budget}",
                counter.count()
            );
        }
    }
}
