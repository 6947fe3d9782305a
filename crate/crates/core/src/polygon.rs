//! Newton polygons as slope-sorted multisets of coprime segments.
//!
//! A segment `(m, n)` has horizontal extent `m + n`, rise `n` and slope
//! `λ = n/(m+n)`. Segments are stored slope-descending; the graph starts at
//! the origin with the shallowest segment, so it is convex and runs from
//! `(0, 0)` to `(h, d)`. `ζ ≺ ξ` means `ζ` lies on or above `ξ`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{direct_sum_all, simple_word, Word};

/// Exact rational numbers.
pub type Rational = BigRational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    m: u32,
    n: u32,
}

impl Segment {
    pub fn new(m: u32, n: u32) -> Result<Segment> {
        if m.gcd(&n) != 1 {
            return Err(Error::NotCoprime { m, n });
        }
        Ok(Segment { m, n })
    }

    pub fn m(self) -> u32 {
        self.m
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn height(self) -> u32 {
        self.m + self.n
    }

    pub fn slope(self) -> Rational {
        Rational::new(self.n.into(), self.height().into())
    }

    /// Compares slopes `n/(m+n)` exactly.
    pub fn cmp_slope(self, other: Segment) -> Ordering {
        (u64::from(self.n) * u64::from(other.height()))
            .cmp(&(u64::from(other.n) * u64::from(self.height())))
    }

    pub fn word(self) -> Word {
        simple_word(self.m, self.n).expect("segments are coprime")
    }

    /// `2λ` compared with 1.
    fn cmp_half(self) -> Ordering {
        (2 * self.n).cmp(&self.height())
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.m, self.n].serialize(serializer)
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical Newton polygon. Two polygons are equal iff their segment
/// multisets are.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NewtonPolygon {
    segments: Vec<Segment>,
}

impl NewtonPolygon {
    pub fn new(mut segments: Vec<Segment>) -> NewtonPolygon {
        // distinct coprime segments never share a slope, so this is total
        segments.sort_by(|a, b| b.cmp_slope(*a));
        NewtonPolygon { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of segments, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn height(&self) -> u32 {
        self.segments.iter().map(|s| s.height()).sum()
    }

    pub fn dimension(&self) -> u32 {
        self.segments.iter().map(|s| s.n).sum()
    }

    pub fn endpoint(&self) -> (u32, u32) {
        (self.height(), self.dimension())
    }

    /// Corners of the graph including both endpoints, left to right. Every
    /// segment contributes one vertex, so repeated segments give collinear
    /// vertices.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        let (mut x, mut y) = (0i64, 0i64);
        out.push((x, y));
        for s in self.segments.iter().rev() {
            x += i64::from(s.height());
            y += i64::from(s.n);
            out.push((x, y));
        }
        out
    }

    /// `ξ(x)` at an integer abscissa as an unreduced fraction `(num, den)`
    /// with `den > 0`.
    pub(crate) fn eval_at(&self, x: i64) -> (i64, i64) {
        let (mut x0, mut y0) = (0i64, 0i64);
        for s in self.segments.iter().rev() {
            let (w, n) = (i64::from(s.height()), i64::from(s.n));
            if x <= x0 + w {
                return (y0 * w + (x - x0) * n, w);
            }
            x0 += w;
            y0 += n;
        }
        (y0, 1)
    }

    pub fn contains_segment(&self, s: Segment) -> bool {
        self.segments.contains(&s)
    }

    /// Removes one copy of `s`.
    pub fn remove_segment(&self, s: Segment) -> Option<NewtonPolygon> {
        let i = self.segments.iter().position(|&t| t == s)?;
        let mut segments = self.segments.clone();
        segments.remove(i);
        Some(NewtonPolygon { segments })
    }

    /// Multiset sum.
    pub fn plus(&self, other: &NewtonPolygon) -> NewtonPolygon {
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        NewtonPolygon::new(segments)
    }

    /// Splits `(self, other)` into `(common, self − common, other − common)`.
    pub fn split_common(&self, other: &NewtonPolygon) -> (NewtonPolygon, NewtonPolygon, NewtonPolygon) {
        let mut rest = other.segments.clone();
        let mut common = Vec::new();
        let mut mine = Vec::new();
        for &s in &self.segments {
            match rest.iter().position(|&t| t == s) {
                Some(i) => {
                    rest.remove(i);
                    common.push(s);
                }
                None => mine.push(s),
            }
        }
        (
            NewtonPolygon::new(common),
            NewtonPolygon::new(mine),
            NewtonPolygon::new(rest),
        )
    }

    /// `(m₁,n₁)+(m₂,n₂)` with `λ₂ < 1/2 < λ₁`.
    pub fn is_mixed_two_segment(&self) -> bool {
        matches!(self.segments.as_slice(), [a, b]
            if a.cmp_half() == Ordering::Greater && b.cmp_half() == Ordering::Less)
    }

    /// `(m,n) ↦ (n,m)` on every segment; `A_{ξ*}` is the dual of `A_ξ`.
    pub fn dual(&self) -> NewtonPolygon {
        NewtonPolygon::new(self.segments.iter().map(|s| Segment { m: s.n, n: s.m }).collect())
    }

    pub fn pairs(&self) -> Vec<[u32; 2]> {
        self.segments.iter().map(|s| [s.m, s.n]).collect()
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.segments.len() {
            let s = self.segments[i];
            let mut k = 1;
            while i + k < self.segments.len() && self.segments[i + k] == s {
                k += 1;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if k > 1 {
                write!(f, "{k}")?;
            }
            write!(f, "{s}")?;
            i += k;
        }
        Ok(())
    }
}

impl fmt::Debug for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NewtonPolygon({self})")
    }
}

fn parse_u32(s: &str, whole: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {s:?} in polygon {whole:?}")))
}

/// Accepts `(m,n)+k(m,n)+…` in any order, bare `m,n` terms, and `0` or the
/// empty string for the empty polygon.
impl FromStr for NewtonPolygon {
    type Err = Error;

    fn from_str(s: &str) -> Result<NewtonPolygon> {
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if body.is_empty() || body == "0" {
            return Ok(NewtonPolygon::default());
        }
        let mut pairs = Vec::new();
        for term in body.split('+') {
            let (mult, inner) = match term.find('(') {
                Some(open) => {
                    let inner = term[open + 1..]
                        .strip_suffix(')')
                        .ok_or_else(|| Error::Parse(format!("unbalanced term {term:?} in {s:?}")))?;
                    let mult = if open == 0 { 1 } else { parse_u32(&term[..open], s)? };
                    (mult, inner)
                }
                None => (1, term),
            };
            if mult == 0 {
                return Err(Error::Parse(format!("zero multiplicity in {s:?}")));
            }
            let (m, n) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("term {term:?} is not m,n")))?;
            let (m, n) = (parse_u32(m, s)?, parse_u32(n, s)?);
            pairs.extend(std::iter::repeat_n((m, n), mult as usize));
        }
        np_normalize(&pairs)
    }
}

impl Serialize for NewtonPolygon {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NewtonPolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<NewtonPolygon, D::Error> {
        let pairs: Vec<(u32, u32)> = Vec::deserialize(d)?;
        np_normalize(&pairs).map_err(serde::de::Error::custom)
    }
}

pub fn np_normalize(segs: &[(u32, u32)]) -> Result<NewtonPolygon> {
    let segments = segs
        .iter()
        .map(|&(m, n)| Segment::new(m, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(NewtonPolygon::new(segments))
}

fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact value of the graph at `x ∈ [0, h]`.
pub fn np_eval(xi: &NewtonPolygon, x: &Rational) -> Result<Rational> {
    let h = Rational::from_integer(xi.height().into());
    if x.is_negative() || *x > h {
        return Err(Error::OutOfDomain(x.to_string()));
    }
    let mut x0 = Rational::zero();
    let mut y0 = Rational::zero();
    for s in xi.segments.iter().rev() {
        let w = Rational::from_integer(s.height().into());
        if *x <= &x0 + &w {
            return Ok(y0 + (x - &x0) * s.slope());
        }
        x0 += w;
        y0 += Rational::from_integer(s.n.into());
    }
    Ok(y0)
}

fn check_endpoints(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<()> {
    if zeta.endpoint() != xi.endpoint() {
        return Err(Error::EndpointMismatch {
            left: zeta.endpoint(),
            right: xi.endpoint(),
        });
    }
    Ok(())
}

/// `ζ ≺ ξ`: every point of `ζ` is on or above `ξ`. Both graphs are piecewise
/// linear with lattice corners, so comparing at the union of corners is
/// enough, and integer cross-multiplication keeps it exact.
pub fn precedes(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<bool> {
    check_endpoints(zeta, xi)?;
    Ok(precedes_unchecked(zeta, xi))
}

pub(crate) fn precedes_unchecked(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> bool {
    zeta.vertices().into_iter().all(|(x, y)| {
        let (num, den) = xi.eval_at(x);
        y * den >= num
    }) && xi.vertices().into_iter().all(|(x, y)| {
        let (num, den) = zeta.eval_at(x);
        num >= y * den
    })
}

fn twice_sum_to_int(sum: Rational) -> Result<u64> {
    let twice = sum * rational(2, 1);
    if !twice.is_integer() || twice.is_negative() {
        return Err(Error::NonIntegerArea(twice.to_string()));
    }
    twice
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::NonIntegerArea(twice.to_string()))
}

/// `c(ζ,ξ) = 2 Σ_{i=1}^{h} (ζ(i) − ξ(i))`, twice the area between the graphs.
pub fn c_value(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<u64> {
    if !precedes(zeta, xi)? {
        return Err(Error::NotPrecedes {
            zeta: zeta.to_string(),
            xi: xi.to_string(),
        });
    }
    let h = i64::from(xi.height());
    let sum = (1..=h).fold(Rational::zero(), |acc, i| {
        let (zn, zd) = zeta.eval_at(i);
        let (xn, xd) = xi.eval_at(i);
        acc + rational(zn, zd) - rational(xn, xd)
    });
    twice_sum_to_int(sum)
}

/// `c(ξ) := c(σ, ξ)` computed against the line `y = d·x/h` directly.
pub fn c_line(xi: &NewtonPolygon) -> Result<u64> {
    let (h, d) = (i64::from(xi.height()), i64::from(xi.dimension()));
    if h == 0 {
        return Ok(0);
    }
    let sum = (1..=h).fold(Rational::zero(), |acc, i| {
        let (xn, xd) = xi.eval_at(i);
        acc + rational(d * i, h) - rational(xn, xd)
    });
    twice_sum_to_int(sum)
}

/// The straight line from `(0,0)` to `(h,d)`, i.e. `g·((h−d)/g, d/g)` with
/// `g = gcd(h−d, d)`.
pub fn straight_line(h: u32, d: u32) -> Result<NewtonPolygon> {
    if d > h {
        return Err(Error::OutOfDomain(format!("d = {d} > h = {h}")));
    }
    if h == 0 {
        return Ok(NewtonPolygon::default());
    }
    let g = (h - d).gcd(&d);
    let s = Segment::new((h - d) / g, d / g)?;
    Ok(NewtonPolygon::new(vec![s; g as usize]))
}

/// `χ = (h−d)(1,0) + d(0,1)`, the lowest polygon with endpoint `(h,d)`.
pub fn ordinary(h: u32, d: u32) -> Result<NewtonPolygon> {
    if d > h {
        return Err(Error::OutOfDomain(format!("d = {d} > h = {h}")));
    }
    let mut segs = vec![Segment { m: 0, n: 1 }; d as usize];
    segs.extend(std::iter::repeat_n(Segment { m: 1, n: 0 }, (h - d) as usize));
    Ok(NewtonPolygon::new(segs))
}

/// Coprime segments of height at most `h`, slope-descending.
pub(crate) fn segments_up_to(h: u32) -> Vec<Segment> {
    let mut segs: Vec<Segment> = (1..=h)
        .flat_map(|w| (0..=w).filter_map(move |n| Segment::new(w - n, n).ok()))
        .collect();
    segs.sort_by(|a, b| b.cmp_slope(*a));
    segs
}

/// All Newton polygons of height `h` and dimension `d`, each once, sorted.
pub fn enumerate_nps(h: u32, d: u32) -> Vec<NewtonPolygon> {
    if d > h {
        return Vec::new();
    }
    fn go(
        segs: &[Segment],
        from: usize,
        h: u32,
        d: u32,
        acc: &mut Vec<Segment>,
        out: &mut Vec<NewtonPolygon>,
    ) {
        if h == 0 {
            if d == 0 {
                out.push(NewtonPolygon {
                    segments: acc.clone(),
                });
            }
            return;
        }
        for (i, &s) in segs.iter().enumerate().skip(from) {
            if s.height() <= h && s.n <= d && s.m <= h - d {
                acc.push(s);
                go(segs, i, h - s.height(), d - s.n, acc, out);
                acc.pop();
            }
        }
    }
    let segs = segments_up_to(h);
    let mut out = Vec::new();
    go(&segs, 0, h, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// No polygon lies strictly between `ζ` and `ξ`.
pub fn is_saturated(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<bool> {
    if zeta == xi || !precedes(zeta, xi)? {
        return Err(Error::NotPrecedes {
            zeta: zeta.to_string(),
            xi: xi.to_string(),
        });
    }
    let (h, d) = xi.endpoint();
    Ok(!enumerate_nps(h, d).iter().any(|eta| {
        eta != zeta && eta != xi && precedes_unchecked(zeta, eta) && precedes_unchecked(eta, xi)
    }))
}

/// `A_ξ`: the direct sum of the simple words of the segments, folded in
/// canonical order.
pub fn minimal_word(xi: &NewtonPolygon) -> Word {
    let words: Vec<Word> = xi.segments.iter().map(|s| s.word()).collect();
    direct_sum_all(&words)
}

/// `1^{m₁} 0^{n₁−m₁} 1^{n₂} 0^{m₁} 1^{m₂−n₂} 0^{n₂}`, the minimal word of
/// `(m₁,n₁)+(m₂,n₂)` when `λ₂ < 1/2 < λ₁`.
pub fn two_segment_closed_form(m1: u32, n1: u32, m2: u32, n2: u32) -> Result<Word> {
    let first = Segment::new(m1, n1)?;
    let second = Segment::new(m2, n2)?;
    if first.cmp_half() != Ordering::Greater || second.cmp_half() != Ordering::Less {
        return Err(Error::SlopeCondition(format!("{first}+{second}")));
    }
    let blocks = [
        (1u8, m1),
        (0, n1 - m1),
        (1, n2),
        (0, m1),
        (1, m2 - n2),
        (0, n2),
    ];
    let bits = blocks
        .iter()
        .flat_map(|&(b, k)| std::iter::repeat_n(b, k as usize))
        .collect();
    Word::new(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn np(s: &str) -> NewtonPolygon {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        rational(n, d)
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(np_normalize(&[(3, 2), (3, 5)]).unwrap().pairs(), vec![[3, 5], [3, 2]]);
        assert_eq!(np_normalize(&[(1, 0), (0, 1)]).unwrap().pairs(), vec![[0, 1], [1, 0]]);
        assert_eq!(np_normalize(&[(2, 4)]), Err(Error::NotCoprime { m: 2, n: 4 }));
        assert!(np_normalize(&[(0, 0)]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let z = np("4(1,1) + (2,3)");
        assert_eq!(z.to_string(), "(2,3)+4(1,1)");
        assert_eq!(np("3,5+3,2"), np("(3,2)+(3,5)"));
        assert_eq!(np("").len(), 0);
        assert!("(1,2".parse::<NewtonPolygon>().is_err());
        assert!("0(1,1)".parse::<NewtonPolygon>().is_err());
        assert!("(a,1)".parse::<NewtonPolygon>().is_err());
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, "[[2,3],[1,1],[1,1],[1,1],[1,1]]");
        assert_eq!(serde_json::from_str::<NewtonPolygon>(&json).unwrap(), z);
    }

    #[test]
    fn eval_examples() {
        let xi = np("(0,1)+(1,0)");
        assert_eq!(np_eval(&xi, &q(1, 1)).unwrap(), q(0, 1));
        assert_eq!(np_eval(&xi, &q(2, 1)).unwrap(), q(1, 1));
        assert_eq!(np_eval(&np("(1,1)"), &q(1, 1)).unwrap(), q(1, 2));
        let z = np("(2,3)+4(1,1)");
        assert_eq!(np_eval(&z, &q(0, 1)).unwrap(), q(0, 1));
        assert_eq!(np_eval(&z, &q(13, 1)).unwrap(), q(7, 1));
        assert!(np_eval(&z, &q(14, 1)).is_err());
        assert!(np_eval(&z, &q(-1, 2)).is_err());
    }

    #[test]
    fn eval_at_agrees_with_np_eval() {
        for xi in enumerate_nps(9, 4) {
            for x in 0..=9 {
                let (n, d) = xi.eval_at(x);
                assert_eq!(q(n, d), np_eval(&xi, &q(x, 1)).unwrap());
            }
        }
    }

    #[test]
    fn precedes_examples() {
        assert!(precedes(&np("(2,3)+4(1,1)"), &np("(3,5)+(3,2)")).unwrap());
        let xi = np("(3,5)+(3,2)");
        assert!(precedes(&xi, &xi).unwrap());
        assert!(!precedes(&np("(0,1)+(1,0)"), &np("(1,1)")).unwrap());
        assert!(precedes(&np("(1,1)"), &np("(0,1)+(1,0)")).unwrap());
        assert!(precedes(&np("(1,1)"), &np("(1,2)")).is_err());
    }

    #[test]
    fn precedes_is_a_partial_order() {
        for h in 0..=10 {
            for d in 0..=h {
                let all = enumerate_nps(h, d);
                for a in &all {
                    assert!(precedes(a, a).unwrap());
                    for b in &all {
                        let ab = precedes(a, b).unwrap();
                        if ab && a != b {
                            assert!(!precedes(b, a).unwrap(), "{a} {b}");
                        }
                        if !ab {
                            continue;
                        }
                        for c in &all {
                            if precedes(b, c).unwrap() {
                                assert!(precedes(a, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    // Independent oracle: 2Σ(ζ(i) − ξ(i)) via np_eval on rationals.
    fn c_oracle(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Rational {
        let mut sum = Rational::zero();
        for i in 1..=i64::from(xi.height()) {
            sum += np_eval(zeta, &q(i, 1)).unwrap() - np_eval(xi, &q(i, 1)).unwrap();
        }
        sum * q(2, 1)
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_value(&np("(1,1)"), &np("(0,1)+(1,0)")).unwrap(), 1);
        let (z, x) = (np("(2,3)+4(1,1)"), np("(3,5)+(3,2)"));
        assert_eq!(c_oracle(&z, &x), q(5, 1));
        assert_eq!(c_value(&z, &x).unwrap(), 5);
        assert_eq!(c_value(&x, &x).unwrap(), 0);
        assert!(matches!(c_value(&x, &z), Err(Error::NotPrecedes { .. })));
    }

    #[test]
    fn c_is_additive() {
        for h in 1..=9 {
            for d in 0..=h {
                let all = enumerate_nps(h, d);
                for a in &all {
                    for b in all.iter().filter(|b| precedes(a, b).unwrap()) {
                        for c in all.iter().filter(|c| precedes(b, c).unwrap()) {
                            assert_eq!(
                                c_value(a, c).unwrap(),
                                c_value(a, b).unwrap() + c_value(b, c).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn line_polygon_matches_line_graph() {
        for h in 1..=12 {
            for d in 0..=h {
                let sigma = straight_line(h, d).unwrap();
                assert_eq!(sigma.endpoint(), (h, d));
                for xi in enumerate_nps(h, d) {
                    assert!(precedes(&sigma, &xi).unwrap());
                    assert_eq!(c_value(&sigma, &xi).unwrap(), c_line(&xi).unwrap());
                    assert!(precedes(&xi, &ordinary(h, d).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn enumerate_small() {
        let two: BTreeSet<_> = enumerate_nps(2, 1).into_iter().collect();
        assert_eq!(two, [np("(0,1)+(1,0)"), np("(1,1)")].into_iter().collect());
        assert_eq!(enumerate_nps(1, 0), vec![np("(1,0)")]);
        assert_eq!(enumerate_nps(0, 0), vec![NewtonPolygon::default()]);
        assert!(enumerate_nps(2, 3).is_empty());
    }

    // Independent oracle: a polygon is its chain of corners, lattice points
    // joined by edges of strictly increasing slope in [0, 1].
    fn corner_chains(h: i64, d: i64) -> BTreeSet<NewtonPolygon> {
        fn go(
            at: (i64, i64),
            last: Option<(i64, i64)>,
            end: (i64, i64),
            edges: &mut Vec<(i64, i64)>,
            out: &mut BTreeSet<NewtonPolygon>,
        ) {
            if at == end {
                let mut segs = Vec::new();
                for &(dx, dy) in edges.iter() {
                    let g = dx.gcd(&dy);
                    let s = Segment::new(((dx - dy) / g) as u32, (dy / g) as u32).unwrap();
                    segs.extend(std::iter::repeat_n(s, g as usize));
                }
                out.insert(NewtonPolygon::new(segs));
                return;
            }
            for x in at.0 + 1..=end.0 {
                for y in at.1..=end.1 {
                    let (dx, dy) = (x - at.0, y - at.1);
                    if dy > dx {
                        continue;
                    }
                    if let Some((lx, ly)) = last {
                        // slope must strictly increase: dy/dx > ly/lx
                        if dy * lx <= ly * dx {
                            continue;
                        }
                    }
                    edges.push((dx, dy));
                    go((x, y), Some((dx, dy)), end, edges, out);
                    edges.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go((0, 0), None, (h, d), &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn enumerate_matches_corner_oracle() {
        for h in 1..=9u32 {
            for d in 0..=h {
                let fast: BTreeSet<_> = enumerate_nps(h, d).into_iter().collect();
                assert_eq!(fast.len(), enumerate_nps(h, d).len());
                assert_eq!(fast, corner_chains(h.into(), d.into()), "h={h} d={d}");
            }
        }
        assert_eq!(enumerate_nps(8, 4).len(), corner_chains(8, 4).len());
    }

    #[test]
    fn saturation_examples() {
        assert!(is_saturated(&np("(1,1)"), &np("(0,1)+(1,0)")).unwrap());
        assert!(is_saturated(&np("(2,3)+4(1,1)"), &np("(3,5)+(3,2)")).unwrap());
        assert!(!is_saturated(&np("2(1,1)"), &np("2(0,1)+2(1,0)")).unwrap());
        assert!(is_saturated(&np("(1,1)"), &np("(1,1)")).is_err());
    }

    #[test]
    fn minimal_word_examples() {
        assert_eq!(minimal_word(&np("(3,5)+(3,2)")).to_string(), "1110011000100");
        assert_eq!(minimal_word(&np("(2,3)+(4,3)")).to_string(), "110111001000");
        assert_eq!(minimal_word(&np("(3,5)")).to_string(), "11100000");
        assert_eq!(minimal_word(&NewtonPolygon::default()), Word::empty());
    }

    #[test]
    fn minimal_word_independent_of_fold_order() {
        for h in 1..=10 {
            for d in 0..=h {
                for xi in enumerate_nps(h, d) {
                    let mut words: Vec<Word> = xi.segments().iter().map(|s| s.word()).collect();
                    let forward = minimal_word(&xi);
                    words.reverse();
                    assert_eq!(direct_sum_all(&words), forward, "{xi}");
                    let half = words.len() / 2;
                    words.rotate_left(half);
                    assert_eq!(direct_sum_all(&words), forward, "{xi}");
                }
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(two_segment_closed_form(3, 5, 3, 2).unwrap().to_string(), "1110011000100");
        assert_eq!(two_segment_closed_form(2, 3, 4, 3).unwrap().to_string(), "110111001000");
        assert_eq!(two_segment_closed_form(0, 1, 1, 0).unwrap().to_string(), "01");
        assert!(matches!(two_segment_closed_form(1, 1, 1, 0), Err(Error::SlopeCondition(_))));
        assert!(two_segment_closed_form(2, 4, 1, 0).is_err());
    }

    #[test]
    fn closed_form_agrees_with_minimal_word() {
        let segs = segments_up_to(16);
        for a in &segs {
            for b in &segs {
                if a.height() + b.height() > 16 {
                    continue;
                }
                if let Ok(word) = two_segment_closed_form(a.m, a.n, b.m, b.n) {
                    let xi = NewtonPolygon::new(vec![*a, *b]);
                    assert_eq!(word, minimal_word(&xi), "{xi}");
                }
            }
        }
    }

    #[test]
    fn split_common_parts() {
        let (c, a, b) = np("(1,1)+(1,0)").split_common(&np("(0,1)+2(1,0)"));
        assert_eq!((c, a, b), (np("(1,0)"), np("(1,1)"), np("(0,1)+(1,0)")));
        assert!(np("(3,5)+(3,2)").is_mixed_two_segment());
        assert!(!np("(1,2)+(1,1)").is_mixed_two_segment());
    }
}
