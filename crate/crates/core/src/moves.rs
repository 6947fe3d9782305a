//! Elementary moves and the combinatorial order `B ≤ A` they generate.
//!
//! A move rewrites `A = P ⊕ Q` as `P ⊕ Q'`, where `Q'` is `Q` with one
//! adjacent "01" exchanged for "10". The indecomposable summands of `A` are
//! its cycles, so `P` and `Q` range over complementary sub-multisets of
//! [`cycle_decomposition`].

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{cycle_decomposition, direct_sum, direct_sum_all, length_ell, Word};

/// Certificate for one elementary move `before → after`.
///
/// `swap_index` is the 0-based index of the "0" of the exchanged pair inside
/// `q_before`; it is written 1-based in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveWitness {
    pub before: Word,
    pub after: Word,
    pub p_cycles: Vec<Word>,
    pub q_before: Word,
    pub q_after: Word,
    pub swap_index: usize,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    before: Word,
    after: Word,
    p_cycles: Vec<Word>,
    q_before: Word,
    q_after: Word,
    swap_index: usize,
}

impl Serialize for MoveWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessRepr {
            before: self.before.clone(),
            after: self.after.clone(),
            p_cycles: self.p_cycles.clone(),
            q_before: self.q_before.clone(),
            q_after: self.q_after.clone(),
            swap_index: self.swap_index + 1,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MoveWitness {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WitnessRepr::deserialize(d)?;
        if r.swap_index == 0 {
            return Err(serde::de::Error::custom("swap_index is 1-based"));
        }
        Ok(MoveWitness {
            before: r.before,
            after: r.after,
            p_cycles: r.p_cycles,
            q_before: r.q_before,
            q_after: r.q_after,
            swap_index: r.swap_index - 1,
        })
    }
}

impl MoveWitness {
    /// The whole-word move `w → w⁻` (`P` empty).
    pub fn whole_word_minus(w: &Word) -> Result<MoveWitness> {
        let i = w.first_zero_one().ok_or(Error::NoZeroOne)?;
        let after = w.swap_zero_one(i)?;
        Ok(MoveWitness {
            before: w.clone(),
            after: after.clone(),
            p_cycles: Vec::new(),
            q_before: w.clone(),
            q_after: after,
            swap_index: i,
        })
    }
}

/// Distinct cycle words of `w` with their multiplicities, sorted by word.
fn cycle_classes(w: &Word) -> Vec<(Word, usize)> {
    let mut classes: Vec<(Word, usize)> = Vec::new();
    let mut words: Vec<Word> = cycle_decomposition(w).into_iter().map(|c| c.word).collect();
    words.sort();
    for word in words {
        match classes.last_mut() {
            Some((last, count)) if *last == word => *count += 1,
            _ => classes.push((word, 1)),
        }
    }
    classes
}

/// Every move out of `w` whose `P` satisfies `keep`, deduplicated by the
/// resulting word (first witness wins).
pub fn elementary_moves_where(
    w: &Word,
    mut keep: impl FnMut(&[Word]) -> bool,
) -> Vec<(Word, MoveWitness)> {
    let classes = cycle_classes(w);
    let mut out: Vec<(Word, MoveWitness)> = Vec::new();
    let mut seen: HashMap<Word, ()> = HashMap::new();
    // counts[k] = copies of class k placed in Q
    let mut counts = vec![0usize; classes.len()];
    loop {
        // advance the mixed-radix counter; the all-zero state is skipped
        let mut k = 0;
        while k < counts.len() && counts[k] == classes[k].1 {
            counts[k] = 0;
            k += 1;
        }
        if k == counts.len() {
            break;
        }
        counts[k] += 1;

        let mut q_parts = Vec::new();
        let mut p_cycles = Vec::new();
        for ((word, mult), &c) in classes.iter().zip(&counts) {
            q_parts.extend(std::iter::repeat_n(word, c));
            p_cycles.extend(std::iter::repeat_n(word.clone(), mult - c));
        }
        if !keep(&p_cycles) {
            continue;
        }
        let q_before = direct_sum_all(q_parts);
        let p_word = direct_sum_all(&p_cycles);
        for i in q_before.zero_one_positions().collect::<Vec<_>>() {
            let q_after = q_before.swap_zero_one(i).expect("position comes from zero_one_positions");
            let after = direct_sum(&q_after, &p_word);
            if seen.insert(after.clone(), ()).is_some() {
                continue;
            }
            out.push((
                after.clone(),
                MoveWitness {
                    before: w.clone(),
                    after,
                    p_cycles: p_cycles.clone(),
                    q_before: q_before.clone(),
                    q_after,
                    swap_index: i,
                },
            ));
        }
    }
    out
}

pub fn elementary_moves(w: &Word) -> Vec<(Word, MoveWitness)> {
    elementary_moves_where(w, |_| true)
}

/// True when `pinned ⊆ p_cycles` as multisets; both must be sorted.
pub(crate) fn contains_multiset(p_cycles: &[Word], pinned: &[Word]) -> bool {
    let mut it = p_cycles.iter();
    pinned.iter().all(|need| it.by_ref().any(|have| have == need))
}

/// Memoized successor lists of the move graph.
#[derive(Debug, Default)]
pub struct MoveGraph {
    succ: HashMap<Word, Vec<Word>>,
}

impl MoveGraph {
    pub fn new() -> MoveGraph {
        MoveGraph::default()
    }

    pub fn successors(&mut self, w: &Word) -> &[Word] {
        self.succ
            .entry(w.clone())
            .or_insert_with(|| elementary_moves(w).into_iter().map(|(x, _)| x).collect())
    }

    /// `b ≤ a`: `b` is reachable from `a` by elementary moves.
    pub fn leq(&mut self, b: &Word, a: &Word) -> Result<bool> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                left: b.len(),
                right: a.len(),
            });
        }
        if a == b {
            return Ok(true);
        }
        // moves preserve the number of 1s and drop ℓ by one
        if a.ones() != b.ones() {
            return Ok(false);
        }
        let floor = length_ell(b);
        if length_ell(a) <= floor {
            return Ok(false);
        }
        let mut seen: HashMap<Word, ()> = HashMap::new();
        let mut queue = VecDeque::from([a.clone()]);
        seen.insert(a.clone(), ());
        while let Some(x) = queue.pop_front() {
            for y in self.successors(&x).to_vec() {
                if y == *b {
                    return Ok(true);
                }
                if length_ell(&y) > floor && seen.insert(y.clone(), ()).is_none() {
                    queue.push_back(y);
                }
            }
        }
        Ok(false)
    }
}

/// Breadth-first reachability in the move graph.
pub fn leq_oracle(b: &Word, a: &Word) -> Result<bool> {
    MoveGraph::new().leq(b, a)
}

/// Shortest sequence of moves from `upper` down to `lower` in which every
/// move keeps the multiset `pinned` inside `P`. `None` if no such path.
pub fn move_path(upper: &Word, lower: &Word, pinned: &[Word]) -> Option<Vec<MoveWitness>> {
    if upper.len() != lower.len() || upper.ones() != lower.ones() {
        return None;
    }
    if upper == lower {
        return Some(Vec::new());
    }
    let mut pinned = pinned.to_vec();
    pinned.sort();
    let floor = length_ell(lower);
    let mut parent: HashMap<Word, MoveWitness> = HashMap::new();
    let mut queue = VecDeque::from([upper.clone()]);
    while let Some(x) = queue.pop_front() {
        if length_ell(&x) <= floor {
            continue;
        }
        for (y, witness) in elementary_moves_where(&x, |p| contains_multiset(p, &pinned)) {
            if y == *upper || parent.contains_key(&y) {
                continue;
            }
            parent.insert(y.clone(), witness);
            if y == *lower {
                let mut path = Vec::new();
                let mut cur = y;
                while cur != *upper {
                    let wit = parent[&cur].clone();
                    cur = wit.before.clone();
                    path.push(wit);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(y);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::cycle_words;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn all_words(h: usize) -> impl Iterator<Item = Word> {
        (0u32..1 << h).map(move |mask| Word::from_bools((0..h).map(|i| mask >> (h - 1 - i) & 1 == 1)))
    }

    #[test]
    fn moves_of_01() {
        let moves = elementary_moves(&w("01"));
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].0, w("10"));
    }

    #[test]
    fn no_moves_from_10() {
        assert!(elementary_moves(&w("10")).is_empty());
        assert!(elementary_moves(&w("1100")).is_empty());
    }

    #[test]
    fn example_second_exchange_is_a_move() {
        let moves = elementary_moves(&w("1110101000100"));
        assert!(moves.iter().any(|(x, _)| *x == w("1111001000100")));
    }

    #[test]
    fn every_move_lowers_ell() {
        for h in 1..=9 {
            for word in all_words(h) {
                for (next, wit) in elementary_moves(&word) {
                    assert!(length_ell(&next) < length_ell(&word), "{word} -> {next}");
                    let p = direct_sum_all(&wit.p_cycles);
                    assert_eq!(direct_sum(&wit.q_before, &p), word);
                    assert_eq!(direct_sum(&wit.q_after, &p), next);
                    // the P summands survive; only Q's cycles change
                    let mut after_cycles = cycle_words(&next);
                    for c in &wit.p_cycles {
                        let i = after_cycles.iter().position(|x| x == c).expect("P cycle kept");
                        after_cycles.remove(i);
                    }
                    assert_eq!(after_cycles, cycle_words(&wit.q_after));
                }
            }
        }
    }

    #[test]
    fn leq_examples() {
        assert!(leq_oracle(&w("11110000"), &w("11010100")).unwrap());
        assert!(leq_oracle(&w("0110"), &w("0110")).unwrap());
        assert!(leq_oracle(&w("10"), &w("01")).unwrap());
        assert!(!leq_oracle(&w("01"), &w("10")).unwrap());
        assert!(leq_oracle(&w("01"), &w("011")).is_err());
    }

    #[test]
    fn move_path_respects_pins() {
        let path = move_path(&w("1110101000100"), &w("1111001000100"), &[]).unwrap();
        assert_eq!(path.len(), 1);
        // "11000" is a summand of the lower word but not of the upper one,
        // so pinning it makes the step impossible
        assert!(move_path(&w("1110101000100"), &w("1111001000100"), &[w("11000")]).is_none());
        assert_eq!(move_path(&w("10"), &w("10"), &[]), Some(vec![]));
    }

    #[test]
    fn witness_json_is_one_based() {
        let wit = MoveWitness::whole_word_minus(&w("1101")).unwrap();
        let json = serde_json::to_value(&wit).unwrap();
        assert_eq!(json["swap_index"], 3);
        let back: MoveWitness = serde_json::from_value(json).unwrap();
        assert_eq!(back, wit);
    }

    #[test]
    fn multiset_containment() {
        assert!(contains_multiset(&[w("10"), w("10"), w("110")], &[w("10"), w("110")]));
        assert!(!contains_multiset(&[w("10"), w("110")], &[w("10"), w("10")]));
        assert!(contains_multiset(&[], &[]));
    }
}
