//! Independent re-checking of chains and move witnesses.

use std::fmt;

use serde::Serialize;

use crate::moves::MoveWitness;
use crate::polygon::{c_value, minimal_word};
use crate::specialization::Chain;
use crate::word::{cycle_decomposition, direct_sum, direct_sum_all, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDefect {
    /// `q_after` is not `q_before` with "01" at `swap_index` turned into "10".
    NotASwap,
    /// `q_before ⊕ P ≠ before`.
    BeforeMismatch,
    /// `q_after ⊕ P ≠ after`.
    AfterMismatch,
    /// A listed `P` summand is not indecomposable.
    DecomposableSummand { word: Word },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainDefect {
    NoWords,
    StartMismatch { expected: Word, found: Word },
    EndMismatch { expected: Word, found: Word },
    NotPrecedes,
    WrongC { expected: u64, found: u64 },
    StepCount { expected: u64, found: usize },
    StepListMismatch { words: usize, steps: usize },
    EmptyStep { step: usize },
    BrokenPath { step: usize, index: usize },
    Witness { step: usize, index: usize, defect: WitnessDefect },
}

impl fmt::Display for ChainDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainDefect::NoWords => f.write_str("chain has no words"),
            ChainDefect::StartMismatch { expected, found } => {
                write!(f, "first word {found} is not A_zeta = {expected}")
            }
            ChainDefect::EndMismatch { expected, found } => {
                write!(f, "last word {found} is not A_xi = {expected}")
            }
            ChainDefect::NotPrecedes => f.write_str("endpoints are not ordered"),
            ChainDefect::WrongC { expected, found } => {
                write!(f, "recorded c = {found}, actual c = {expected}")
            }
            ChainDefect::StepCount { expected, found } => {
                write!(f, "{found} steps, expected c = {expected}")
            }
            ChainDefect::StepListMismatch { words, steps } => {
                write!(f, "{words} words but {steps} step witness lists")
            }
            ChainDefect::EmptyStep { step } => write!(f, "step {step} has no moves"),
            ChainDefect::BrokenPath { step, index } => {
                write!(f, "step {step}: move {index} does not continue the path")
            }
            ChainDefect::Witness {
                step,
                index,
                defect,
            } => write!(f, "step {step}, move {index}: {defect:?}"),
        }
    }
}

pub fn verify_witness(w: &MoveWitness) -> Result<(), WitnessDefect> {
    match w.q_before.swap_zero_one(w.swap_index) {
        Ok(q) if q == w.q_after => {}
        _ => return Err(WitnessDefect::NotASwap),
    }
    if let Some(p) = w
        .p_cycles
        .iter()
        .find(|p| cycle_decomposition(p).len() != 1)
    {
        return Err(WitnessDefect::DecomposableSummand { word: p.clone() });
    }
    let p = direct_sum_all(&w.p_cycles);
    if direct_sum(&w.q_before, &p) != w.before {
        return Err(WitnessDefect::BeforeMismatch);
    }
    if direct_sum(&w.q_after, &p) != w.after {
        return Err(WitnessDefect::AfterMismatch);
    }
    Ok(())
}

/// Checks endpoints, `c`, the step count and every witness.
///
/// `steps[i]` must be a path of moves from `words[i+1]` down to `words[i]`.
pub fn verify_chain(ch: &Chain) -> Result<(), ChainDefect> {
    let (first, last) = match (ch.words.first(), ch.words.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(ChainDefect::NoWords),
    };
    let a_zeta = minimal_word(&ch.zeta);
    if *first != a_zeta {
        return Err(ChainDefect::StartMismatch {
            expected: a_zeta,
            found: first.clone(),
        });
    }
    let a_xi = minimal_word(&ch.xi);
    if *last != a_xi {
        return Err(ChainDefect::EndMismatch {
            expected: a_xi,
            found: last.clone(),
        });
    }
    let c = c_value(&ch.zeta, &ch.xi).map_err(|_| ChainDefect::NotPrecedes)?;
    if c != ch.c {
        return Err(ChainDefect::WrongC {
            expected: c,
            found: ch.c,
        });
    }
    if ch.steps.len() + 1 != ch.words.len() {
        return Err(ChainDefect::StepListMismatch {
            words: ch.words.len(),
            steps: ch.steps.len(),
        });
    }
    if ch.steps.len() as u64 != c {
        return Err(ChainDefect::StepCount {
            expected: c,
            found: ch.steps.len(),
        });
    }
    for (step, moves) in ch.steps.iter().enumerate() {
        if moves.is_empty() {
            return Err(ChainDefect::EmptyStep { step });
        }
        let mut cur = &ch.words[step + 1];
        for (index, m) in moves.iter().enumerate() {
            if m.before != *cur {
                return Err(ChainDefect::BrokenPath { step, index });
            }
            verify_witness(m).map_err(|defect| ChainDefect::Witness {
                step,
                index,
                defect,
            })?;
            cur = &m.after;
        }
        if *cur != ch.words[step] {
            return Err(ChainDefect::BrokenPath {
                step,
                index: moves.len(),
            });
        }
    }
    Ok(())
}
