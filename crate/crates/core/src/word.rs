//! DM₁'s encoded as 0/1 words.
//!
//! A word `δ₁δ₂⋯δ_h` determines a level-one truncated Dieudonné module on
//! `e₁,…,e_h`: `F e_i = e_j` with `j = #{t ≤ i : δ_t = 0}` when `δ_i = 0`, and
//! `V e_j = e_{i_k}` for `j > v`, where `v` counts the zeros and
//! `i₁ < ⋯ < i_u` are the positions of the ones. Every position has exactly
//! one outgoing arrow (`F` out of a 0, `V⁻¹` out of a 1), so the arrows form
//! a permutation whose cycles are the indecomposable summands.
//!
//! Positions are 0-based throughout the Rust API. Text and JSON renderings
//! that face users convert to 1-based indices at the boundary.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite 0/1 sequence, the classifying datum of a DM₁.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: Vec<u8>,
}

impl Word {
    pub fn new(bits: Vec<u8>) -> Result<Word> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Parse(format!("symbol {b} is not 0 or 1")));
        }
        Ok(Word { bits })
    }

    pub fn empty() -> Word {
        Word { bits: Vec::new() }
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Word {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Word { bits }
    }

    pub fn from_bools(bits: impl IntoIterator<Item = bool>) -> Word {
        Word {
            bits: bits.into_iter().map(u8::from).collect(),
        }
    }

    /// Height `h`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Number of 1s (`u`).
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Number of 0s (`v`).
    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    /// Subsequence on the given positions, in the order given.
    pub fn restrict(&self, positions: &[usize]) -> Word {
        Word::from_bits_unchecked(positions.iter().map(|&p| self.bits[p]).collect())
    }

    /// Index of the leftmost adjacent "01", if any.
    pub fn first_zero_one(&self) -> Option<usize> {
        self.bits.windows(2).position(|w| w == [0, 1])
    }

    /// Indices `i` with `self[i] = 0` and `self[i+1] = 1`.
    pub fn zero_one_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .windows(2)
            .enumerate()
            .filter(|(_, w)| *w == [0, 1])
            .map(|(i, _)| i)
    }

    /// Replace the "01" starting at `index` by "10".
    pub fn swap_zero_one(&self, index: usize) -> Result<Word> {
        if index + 1 >= self.len() {
            return Err(Error::PositionOutOfRange {
                index,
                len: self.len(),
            });
        }
        if self.bits[index] != 0 || self.bits[index + 1] != 1 {
            return Err(Error::NoZeroOne);
        }
        let mut bits = self.bits.clone();
        bits.swap(index, index + 1);
        Ok(Word { bits })
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("invalid symbol {other:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word { bits })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `F` and `V` written as partial maps on positions; `None` means the basis
/// vector is sent to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FvStructure {
    pub f_image: Vec<Option<usize>>,
    pub v_image: Vec<Option<usize>>,
}

impl FvStructure {
    /// `Ker F = Im V` and `Im F = Ker V`, as sets of coordinate indices.
    pub fn check_dm1_axioms(&self) -> bool {
        let h = self.f_image.len();
        if self.v_image.len() != h {
            return false;
        }
        let mut ker_f = vec![false; h];
        let mut im_f = vec![false; h];
        let mut ker_v = vec![false; h];
        let mut im_v = vec![false; h];
        for i in 0..h {
            match self.f_image[i] {
                None => ker_f[i] = true,
                Some(j) if j < h => im_f[j] = true,
                Some(_) => return false,
            }
            match self.v_image[i] {
                None => ker_v[i] = true,
                Some(j) if j < h => im_v[j] = true,
                Some(_) => return false,
            }
        }
        ker_f == im_v && im_f == ker_v
    }
}

/// Builds `F` and `V` from the word.
pub fn fv_structure(w: &Word) -> FvStructure {
    let h = w.len();
    let v = w.zeros();
    let mut f_image = vec![None; h];
    let mut ones = Vec::with_capacity(h - v);
    let mut zeros_seen = 0;
    for (i, &b) in w.bits().iter().enumerate() {
        if b == 0 {
            f_image[i] = Some(zeros_seen);
            zeros_seen += 1;
        } else {
            ones.push(i);
        }
    }
    let v_image = (0..h)
        .map(|j| if j >= v { Some(ones[j - v]) } else { None })
        .collect();
    FvStructure { f_image, v_image }
}

pub fn check_dm1_axioms(s: &FvStructure) -> bool {
    s.check_dm1_axioms()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Arrow {
    F,
    #[serde(rename = "Vinv")]
    VInv,
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arrow::F => "F",
            Arrow::VInv => "V^-1",
        })
    }
}

/// The `(F, V⁻¹)`-diagram as a permutation of positions.
///
/// `succ[i]` is the head of the unique arrow leaving `i`; `label[j]` is the
/// kind of the unique arrow entering `j`, which is `F` exactly for `j < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FvPermutation {
    pub succ: Vec<usize>,
    pub label: Vec<Arrow>,
}

impl FvPermutation {
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.succ.len()];
        for &j in &self.succ {
            if j >= seen.len() || std::mem::replace(&mut seen[j], true) {
                return false;
            }
        }
        true
    }

    pub fn pred(&self) -> Vec<usize> {
        let mut pred = vec![0; self.succ.len()];
        for (i, &j) in self.succ.iter().enumerate() {
            pred[j] = i;
        }
        pred
    }

    /// Cycles as position lists, each starting at its smallest position and
    /// following `succ`; cycles are ordered by that smallest position.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.succ.len()];
        let mut out = Vec::new();
        for start in 0..self.succ.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.succ[p];
            }
            out.push(cycle);
        }
        out
    }
}

pub fn fv_permutation(w: &Word) -> FvPermutation {
    let s = fv_structure(w);
    let v = w.zeros();
    let mut succ = vec![0; w.len()];
    for (i, f) in s.f_image.iter().enumerate() {
        if let Some(j) = f {
            succ[i] = *j;
        }
    }
    for (j, img) in s.v_image.iter().enumerate() {
        if let Some(i) = img {
            succ[*i] = j;
        }
    }
    let label = (0..w.len())
        .map(|j| if j < v { Arrow::F } else { Arrow::VInv })
        .collect();
    FvPermutation { succ, label }
}

/// One indecomposable summand: a cycle of the diagram together with the
/// word of the summand, which is the subsequence of the ambient word on the
/// cycle's positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    pub word: Word,
    pub positions: Vec<usize>,
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

impl Serialize for CyclicWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(serializer)
    }
}

/// Cycles of the diagram, ordered by their smallest position.
pub fn cycle_decomposition(w: &Word) -> Vec<CyclicWord> {
    fv_permutation(w)
        .cycles()
        .into_iter()
        .map(|mut positions| {
            positions.sort_unstable();
            CyclicWord {
                word: w.restrict(&positions),
                positions,
            }
        })
        .collect()
}

/// Summand words as a sorted multiset.
pub fn cycle_words(w: &Word) -> Vec<Word> {
    let mut words: Vec<Word> = cycle_decomposition(w).into_iter().map(|c| c.word).collect();
    words.sort();
    words
}

/// A purely periodic binary expansion `0.(p₁⋯p_ℓ)‾`.
///
/// Equality and order are those of the infinite expansions, so `0.(10)‾`
/// and `0.(1010)‾` are equal. `0.(1)‾` is the value 1.
#[derive(Clone)]
pub struct PeriodicBinary {
    period: Vec<u8>,
}

impl PeriodicBinary {
    pub fn new(period: Vec<u8>) -> Result<PeriodicBinary> {
        if period.is_empty() {
            return Err(Error::Parse("empty period".into()));
        }
        if period.iter().any(|&b| b > 1) {
            return Err(Error::Parse("period is not a bit-string".into()));
        }
        Ok(PeriodicBinary { period })
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// The value as `(numerator, denominator)` with denominator `2^ℓ − 1`,
    /// for periods short enough to fit.
    pub fn as_fraction(&self) -> Option<(u128, u128)> {
        if self.period.len() > 120 {
            return None;
        }
        let num = self
            .period
            .iter()
            .fold(0u128, |acc, &b| (acc << 1) | u128::from(b));
        let den = (1u128 << self.period.len()) - 1;
        let g = num.gcd(&den);
        Some((num / g, den / g))
    }
}

impl PartialEq for PeriodicBinary {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for PeriodicBinary {}

impl PartialOrd for PeriodicBinary {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PeriodicBinary {
    fn cmp(&self, other: &Self) -> Ordering {
        // Two periodic sequences with periods a and b that agree on the first
        // a + b symbols agree everywhere (Fine–Wilf).
        let (x, y) = (&self.period, &other.period);
        (0..x.len() + y.len())
            .map(|k| x[k % x.len()].cmp(&y[k % y.len()]))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for PeriodicBinary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("0.(")?;
        for &b in &self.period {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for PeriodicBinary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn compare_b(x: &PeriodicBinary, y: &PeriodicBinary) -> Ordering {
    x.cmp(y)
}

/// `b_A(i)` for every position at once.
///
/// Walking the diagram backwards from `i`, the `l`-th bit records whether the
/// arrow entering the current position is `V⁻¹` (1) or `F` (0).
pub fn b_expansions(w: &Word) -> Vec<PeriodicBinary> {
    let perm = fv_permutation(w);
    let pred = perm.pred();
    let mut out: Vec<Option<PeriodicBinary>> = vec![None; w.len()];
    for start in 0..w.len() {
        if out[start].is_some() {
            continue;
        }
        let mut walk = vec![start];
        let mut p = pred[start];
        while p != start {
            walk.push(p);
            p = pred[p];
        }
        let bits: Vec<u8> = walk
            .iter()
            .map(|&q| u8::from(perm.label[q] == Arrow::VInv))
            .collect();
        for (k, &q) in walk.iter().enumerate() {
            let mut period = bits[k..].to_vec();
            period.extend_from_slice(&bits[..k]);
            out[q] = Some(PeriodicBinary { period });
        }
    }
    out.into_iter().map(|b| b.expect("every position lies on a cycle")).collect()
}

/// `b_A(i)` for a 0-based position `i`.
pub fn b_expansion(w: &Word, i: usize) -> Result<PeriodicBinary> {
    if i >= w.len() {
        return Err(Error::PositionOutOfRange {
            index: i,
            len: w.len(),
        });
    }
    Ok(b_expansions(w).swap_remove(i))
}

/// The word of `N_a ⊕ N_b`: all symbols of both words arranged in ascending
/// order of their binary expansions. Ties keep `a`'s symbols first and each
/// word's internal order.
pub fn direct_sum(a: &Word, b: &Word) -> Word {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let mut keyed: Vec<(PeriodicBinary, u8)> = b_expansions(a)
        .into_iter()
        .zip(a.bits().iter().copied())
        .chain(b_expansions(b).into_iter().zip(b.bits().iter().copied()))
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    Word::from_bits_unchecked(keyed.into_iter().map(|(_, bit)| bit).collect())
}

/// Left fold of [`direct_sum`], starting from the empty word.
pub fn direct_sum_all<'a>(words: impl IntoIterator<Item = &'a Word>) -> Word {
    words
        .into_iter()
        .fold(Word::empty(), |acc, w| direct_sum(&acc, w))
}

/// `A_{m,n} = 1^m 0^n`.
pub fn simple_word(m: u32, n: u32) -> Result<Word> {
    if m.gcd(&n) != 1 {
        return Err(Error::NotCoprime { m, n });
    }
    let mut bits = vec![1u8; m as usize];
    bits.resize((m + n) as usize, 0);
    Ok(Word::from_bits_unchecked(bits))
}

/// `ℓ(A) = #{(i,j) : i < j, δ_i = 0, δ_j = 1}`.
pub fn length_ell(w: &Word) -> u64 {
    let mut zeros = 0u64;
    let mut total = 0u64;
    for &b in w.bits() {
        if b == 0 {
            zeros += 1;
        } else {
            total += zeros;
        }
    }
    total
}

/// `S⁻`: the leftmost adjacent "01" exchanged for "10".
pub fn minus(w: &Word) -> Result<Word> {
    let i = w.first_zero_one().ok_or(Error::NoZeroOne)?;
    w.swap_zero_one(i)
}

/// Reverse and complement.
pub fn dual(w: &Word) -> Word {
    Word::from_bits_unchecked(w.bits().iter().rev().map(|&b| 1 - b).collect())
}
