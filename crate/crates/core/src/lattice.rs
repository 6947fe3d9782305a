//! Planar lattice helpers.

use crate::error::{Error, Result};

pub type Vector = (i64, i64);

/// `⟨a, b⟩ = a₁b₂ − a₂b₁`.
pub fn cross(a: Vector, b: Vector) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Scans the bounding box for a lattice point strictly inside the triangle
/// `(0,0), a, b`. Requires `⟨a, b⟩ > 0`.
pub fn lattice_interior_empty(a: Vector, b: Vector) -> Result<bool> {
    let area = cross(a, b);
    if area <= 0 {
        return Err(Error::NonPositiveCross(area));
    }
    let xs = [0, a.0, b.0];
    let ys = [0, a.1, b.1];
    let (x_lo, x_hi) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y_lo, y_hi) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let edge = (b.0 - a.0, b.1 - a.1);
    for x in x_lo..=x_hi {
        for y in y_lo..=y_hi {
            let p = (x, y);
            if cross(a, p) > 0 && cross(p, b) > 0 && cross(edge, (x - a.0, y - a.1)) > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// No lattice point of the closed triangle `(0,0), a, b` besides its three
/// corners. Unlike [`lattice_interior_empty`] this counts points on the
/// edges, and it holds exactly when `⟨a, b⟩ = 1`. Requires `⟨a, b⟩ > 0`.
pub fn lattice_triangle_empty(a: Vector, b: Vector) -> Result<bool> {
    let area = cross(a, b);
    if area <= 0 {
        return Err(Error::NonPositiveCross(area));
    }
    let (x_lo, x_hi) = (a.0.min(b.0).min(0), a.0.max(b.0).max(0));
    let (y_lo, y_hi) = (a.1.min(b.1).min(0), a.1.max(b.1).max(0));
    for x in x_lo..=x_hi {
        for y in y_lo..=y_hi {
            let p = (x, y);
            let (s, t) = (cross(p, b), cross(a, p));
            if s >= 0 && t >= 0 && s + t <= area && p != (0, 0) && p != a && p != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// The unique `(x, y)` with `p·x − q·y = 1`, `1 ≤ x ≤ q` (so `0 ≤ y < p` when
/// `q > 0`). `None` unless `gcd(p, q) = 1` and `q ≥ 1`.
pub fn unit_solution(p: i64, q: i64) -> Option<(i64, i64)> {
    if q < 1 || p < 0 {
        return None;
    }
    let (g, s, _) = ext_gcd(p, q);
    if g != 1 {
        return None;
    }
    // p·s ≡ 1 (mod q); pick the representative in [1, q]
    let x = (s % q + q) % q;
    let x = if x == 0 { q } else { x };
    let num = p * x - 1;
    if num < 0 || num % q != 0 {
        return None;
    }
    Some((x, num / q))
}
