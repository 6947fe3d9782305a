//! Fixtures shared by the benchmarks in `benches/`.

use newton_dm1::campaign::two_segment_polygons;
use newton_dm1::{NewtonPolygon, PolygonPoset};

/// Every saturated `ζ ⋖ ξ` with `ξ` two-segment, mixed-slope, of height exactly `h`.
pub fn mixed_pairs(h: u32) -> Vec<(NewtonPolygon, NewtonPolygon)> {
    let mut out = Vec::new();
    for xi in two_segment_polygons(h) {
        if xi.height() != h || !xi.is_mixed_two_segment() {
            continue;
        }
        let poset = PolygonPoset::new(h, xi.dimension());
        for zeta in poset.saturated_below(&xi) {
            out.push((zeta, xi.clone()));
        }
    }
    out
}
