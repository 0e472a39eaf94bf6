//! Spiral labelings: walk the hull counterclockwise from a keypoint,
//! drop to the next layer along the stored tangent, repeat.

use crate::layers::ConvexLayers;
use crate::{Error, Result};

/// A labeling of all points by spiral traversal order. Positions are
/// 0-based internally; serialized labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpiralLabeling {
    order: Vec<usize>,
    pos_of: Vec<usize>,
    knobs: Vec<usize>,
    origin: usize,
}

impl SpiralLabeling {
    /// Label at a spiral position.
    pub fn label_at(&self, pos: usize) -> usize {
        self.order[pos]
    }

    /// Spiral position of a label.
    pub fn pos_of(&self, label: usize) -> usize {
        self.pos_of[label]
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// First spiral vertex on each layer.
    pub fn knobs(&self) -> &[usize] {
        &self.knobs
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Build the spiral labeling seeded at hull point `p`: walk the hull CCW
/// from `p`, jump via the tangent from the last vertex of each layer to
/// the next layer's knob, and walk each layer CCW.
pub fn spiral_labeling(layers: &ConvexLayers, p: usize) -> Result<SpiralLabeling> {
    if p >= layers.n() || layers.layer_of(p) != 0 {
        return Err(Error::Invalid(format!(
            "spiral origin {p} is not on the outer hull"
        )));
    }
    let n = layers.n();
    let mut order = Vec::with_capacity(n);
    let mut knobs = Vec::with_capacity(layers.m());
    let mut knob = p;
    for j in 0..layers.m() {
        knobs.push(knob);
        let mut v = knob;
        for _ in 0..layers.cycle(j).len() {
            order.push(v);
            v = layers.succ(v);
        }
        if j + 1 < layers.m() {
            let last = *order.last().expect("layer is nonempty");
            knob = layers
                .tangent_of(last)
                .ok_or_else(|| Error::Invalid("missing tangent for a non-innermost layer".into()))?;
        }
    }
    debug_assert_eq!(order.len(), n);
    let mut pos_of = vec![0usize; n];
    for (i, &l) in order.iter().enumerate() {
        pos_of[l] = i;
    }
    Ok(SpiralLabeling {
        order,
        pos_of,
        knobs,
        origin: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::layers::convex_layers;

    #[test]
    fn square_center_spiral_from_origin() {
        let o = square_center();
        let l = convex_layers(&o).unwrap();
        let s = spiral_labeling(&l, 0).unwrap();
        assert_eq!(s.order(), &[0, 1, 2, 3, 4]);
        assert_eq!(s.knobs(), &[0, 4]);
    }

    #[test]
    fn triangle_spiral_is_the_ccw_cycle() {
        let o = triangle();
        let l = convex_layers(&o).unwrap();
        for p in 0..3 {
            let s = spiral_labeling(&l, p).unwrap();
            assert_eq!(s.label_at(0), p);
            assert_eq!(s.label_at(1), l.succ(p));
            assert_eq!(s.label_at(2), l.succ(l.succ(p)));
        }
    }

    #[test]
    fn grid_spiral_from_corner() {
        let o = grid3();
        let l = convex_layers(&o).unwrap();
        let s = spiral_labeling(&l, 0).unwrap();
        assert_eq!(s.order(), &[0, 1, 2, 5, 8, 7, 6, 3, 4]);
        assert_eq!(s.knobs(), &[0, 4]);
    }

    #[test]
    fn interior_origin_rejected() {
        let o = square_center();
        let l = convex_layers(&o).unwrap();
        assert!(spiral_labeling(&l, 4).is_err());
    }
}
