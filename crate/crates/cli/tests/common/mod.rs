//! Test-side oracles, written from the definitions and sharing no code with
//! the library beyond the types used to call it.

#![allow(dead_code)]

use std::collections::BTreeSet;

use newton_dm1::{np_normalize, NewtonPolygon, Word};
use num_rational::Ratio;

pub type Q = Ratio<i64>;

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

pub fn to_string(b: &[u8]) -> String {
    b.iter().map(|&x| char::from(b'0' + x)).collect()
}

/// Every 0/1 string of length `len`.
pub fn all_strings(len: usize) -> Vec<String> {
    (0u32..1 << len)
        .map(|k| (0..len).rev().map(|i| if k >> i & 1 == 1 { '1' } else { '0' }).collect())
        .collect()
}

/// `1^m 0^n`.
pub fn simple(m: u32, n: u32) -> String {
    "1".repeat(m as usize) + &"0".repeat(n as usize)
}

/// Pairs `(i, j)`, `i < j`, with a 0 at `i` and a 1 at `j`.
pub fn ell(s: &str) -> u64 {
    let b = bits(s);
    let mut zeros = 0;
    let mut count = 0;
    for x in b {
        if x == 0 {
            zeros += 1;
        } else {
            count += zeros;
        }
    }
    count
}

pub fn minus(s: &str) -> Option<String> {
    let i = s.find("01")?;
    Some(format!("{}10{}", &s[..i], &s[i + 2..]))
}

pub fn dual(s: &str) -> String {
    s.chars().rev().map(|c| if c == '0' { '1' } else { '0' }).collect()
}

/// `succ` of the diagram: the `k`-th 0 goes to position `k`, the `k`-th 1 to
/// position `#zeros + k`.
pub fn successor(s: &str) -> Vec<usize> {
    let b = bits(s);
    let zeros = b.iter().filter(|&&x| x == 0).count();
    let (mut z, mut o) = (0, 0);
    b.iter()
        .map(|&x| {
            if x == 0 {
                z += 1;
                z - 1
            } else {
                o += 1;
                zeros + o - 1
            }
        })
        .collect()
}

/// Subsequences of `s` on each cycle of `successor(s)`, sorted.
pub fn cycles(s: &str) -> Vec<String> {
    let succ = successor(s);
    let b = bits(s);
    let mut seen = vec![false; b.len()];
    let mut out = Vec::new();
    for start in 0..b.len() {
        if seen[start] {
            continue;
        }
        let mut pos = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            pos.push(i);
            i = succ[i];
        }
        pos.sort();
        out.push(pos.iter().map(|&p| char::from(b'0' + b[p])).collect());
    }
    out.sort();
    out
}

/// Minimal word of `(m₁,n₁)+(m₂,n₂)` with `λ₂ < 1/2 < λ₁`.
pub fn closed_form(m1: u32, n1: u32, m2: u32, n2: u32) -> String {
    let r = |c: &str, k: u32| c.repeat(k as usize);
    [r("1", m1), r("0", n1 - m1), r("1", n2), r("0", m1), r("1", m2 - n2), r("0", n2)].concat()
}

/// A polygon as a multiset of coprime `(m, n)`, sorted.
pub type Poly = Vec<(u32, u32)>;

pub fn poly(p: &Poly) -> NewtonPolygon {
    np_normalize(p).unwrap()
}

pub fn segments_of(p: &NewtonPolygon) -> Poly {
    let mut v: Poly = p.pairs().iter().map(|&[m, n]| (m, n)).collect();
    v.sort();
    v
}

/// Every multiset of coprime segments with total `(h, d)`.
pub fn all_polygons(h: u32, d: u32) -> Vec<Poly> {
    let mut segs = Vec::new();
    for m in 0..=h {
        for n in 0..=h - m {
            if m + n > 0 && gcd(m, n) == 1 {
                segs.push((m, n));
            }
        }
    }
    fn go(segs: &[(u32, u32)], from: usize, m: u32, n: u32, acc: &mut Poly, out: &mut Vec<Poly>) {
        if m == 0 && n == 0 {
            out.push(acc.clone());
            return;
        }
        for (k, &(a, b)) in segs.iter().enumerate().skip(from) {
            if a <= m && b <= n {
                acc.push((a, b));
                go(segs, k, m - a, n - b, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d <= h {
        go(&segs, 0, h - d, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Height of the graph at integer `x`, segments laid out by increasing slope.
pub fn value(p: &Poly, x: i64) -> Q {
    let mut segs = p.clone();
    segs.sort_by(|a, b| (u64::from(a.1) * u64::from(b.0 + b.1)).cmp(&(u64::from(b.1) * u64::from(a.0 + a.1))));
    let (mut x0, mut y0) = (0i64, Q::from_integer(0));
    for (m, n) in segs {
        let w = i64::from(m + n);
        if x <= x0 + w {
            return y0 + Q::new((x - x0) * i64::from(n), w);
        }
        x0 += w;
        y0 += Q::from_integer(i64::from(n));
    }
    y0
}

pub fn height(p: &Poly) -> u32 {
    p.iter().map(|&(m, n)| m + n).sum()
}

/// `ζ` on or above `ξ` everywhere; corners are integral, so integers suffice.
pub fn above(zeta: &Poly, xi: &Poly) -> bool {
    let h = i64::from(height(xi));
    (0..=h).all(|x| value(zeta, x) >= value(xi, x))
}

/// `2 Σₓ (ζ(x) − ξ(x))` over integer `x`.
pub fn c(zeta: &Poly, xi: &Poly) -> i64 {
    let h = i64::from(height(xi));
    let s: Q = (0..=h).map(|x| value(zeta, x) - value(xi, x)).sum();
    let twice = s * 2;
    assert!(twice.is_integer(), "non-integral area {twice}");
    twice.to_integer()
}

pub fn endpoint(p: &Poly) -> (u32, u32) {
    (height(p), p.iter().map(|s| s.1).sum())
}

/// Saturated: nothing strictly between.
pub fn saturated(zeta: &Poly, xi: &Poly, same_endpoint: &[Poly]) -> bool {
    zeta != xi
        && above(zeta, xi)
        && !same_endpoint
            .iter()
            .any(|e| e != zeta && e != xi && above(zeta, e) && above(e, xi))
}

/// Two distinct coprime segments of total height `≤ h_max`.
pub fn two_segment(h_max: u32) -> Vec<Poly> {
    let mut set = BTreeSet::new();
    for h in 2..=h_max {
        for d in 0..=h {
            for p in all_polygons(h, d) {
                if p.len() == 2 && p[0] != p[1] {
                    set.insert(p);
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Slopes `n₂/h₂ < 1/2 < n₁/h₁`; returns `((m₁,n₁),(m₂,n₂))`.
pub fn mixed(p: &Poly) -> Option<((u32, u32), (u32, u32))> {
    if p.len() != 2 {
        return None;
    }
    let steep = |s: (u32, u32)| s.1 > s.0;
    let shallow = |s: (u32, u32)| s.1 < s.0;
    match (p[0], p[1]) {
        (a, b) if steep(a) && shallow(b) => Some((a, b)),
        (a, b) if steep(b) && shallow(a) => Some((b, a)),
        _ => None,
    }
}
