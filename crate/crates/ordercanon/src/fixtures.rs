//! Shared test fixtures.

use crate::chirotope::{chirotope_from_points, ChirotopeTable};
use crate::oracle::{OrientationOracle, RealizableOracle, TabledOracle};
use crate::predicates::{Orientation, PointSet};

pub(crate) fn realizable(pts: &[[i64; 2]]) -> RealizableOracle {
    let rows: Vec<Vec<i64>> = pts.iter().map(|p| p.to_vec()).collect();
    RealizableOracle::new(PointSet::from_i64(2, &rows).unwrap())
}

/// Unit triangle, CCW labels.
pub(crate) fn triangle() -> RealizableOracle {
    realizable(&[[0, 0], [2, 0], [0, 2]])
}

/// Axis-aligned square with its center: labels 0..3 CCW corners, 4 center.
pub(crate) fn square_center() -> RealizableOracle {
    realizable(&[[0, 0], [2, 0], [2, 2], [0, 2], [1, 1]])
}

/// 3x3 integer grid, label of (x, y) is `3 * y + x`.
pub(crate) fn grid3() -> RealizableOracle {
    let pts: Vec<[i64; 2]> = (0..3)
        .flat_map(|y| (0..3).map(move |x| [x, y]))
        .collect();
    realizable(&pts)
}

/// 5x5 integer grid, label of (x, y) is `5 * y + x`.
pub(crate) fn grid5() -> RealizableOracle {
    let pts: Vec<[i64; 2]> = (0..5)
        .flat_map(|y| (0..5).map(move |x| [x, y]))
        .collect();
    realizable(&pts)
}

/// Hexagon with two interior points: the minimum-size layer is the inner
/// pair, exercising the s-map for points off the outer hull.
pub(crate) fn hexagon_pair() -> RealizableOracle {
    realizable(&[
        [4, 0],
        [2, 3],
        [-2, 3],
        [-4, 0],
        [-2, -3],
        [2, -3],
        [1, 0],
        [-1, 0],
    ])
}

/// Four collinear points on the x-axis plus an apex: labels 0..3 lie on
/// one hull edge.
pub(crate) fn edge_run() -> RealizableOracle {
    realizable(&[[0, 0], [1, 0], [2, 0], [3, 0], [1, 2]])
}

/// Five collinear points (degenerate input).
pub(crate) fn collinear5() -> RealizableOracle {
    realizable(&[[0, 0], [1, 0], [2, 0], [3, 0], [4, 0]])
}

/// Square with three collinear interior points: the innermost layer is a
/// chain without a geometric CCW direction.
pub(crate) fn chain_inside_square() -> RealizableOracle {
    realizable(&[[0, 0], [6, 0], [6, 6], [0, 6], [2, 2], [3, 3], [4, 4]])
}

/// Abstract convex hexagon: every increasing triple is Plus.
pub(crate) fn cyclic_hexagon() -> TabledOracle {
    let t = ChirotopeTable::from_fn(3, 6, |_| Orientation::Plus).unwrap();
    TabledOracle::new(t).unwrap()
}

/// Tabled copy of a realizable oracle, for abstract-input paths.
pub(crate) fn tabled_from(o: &RealizableOracle) -> TabledOracle {
    TabledOracle::new(chirotope_from_points(o.points(), None).unwrap()).unwrap()
}

pub(crate) fn planar_fixture_oracles() -> Vec<Box<dyn OrientationOracle>> {
    vec![
        Box::new(triangle()),
        Box::new(square_center()),
        Box::new(grid3()),
        Box::new(grid5()),
        Box::new(hexagon_pair()),
        Box::new(edge_run()),
        Box::new(collinear5()),
        Box::new(chain_inside_square()),
        Box::new(cyclic_hexagon()),
    ]
}
