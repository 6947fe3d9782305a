//! Certified specialization chains `A_ζ = A⁽⁰⁾ < ⋯ < A⁽ᶜ⁾ = A_ξ`.
//!
//! For a two-segment `ξ = (m₁,n₁)+(m₂,n₂)` with `λ₂ < 1/2 < λ₁` the chain is
//! built recursively: applying `S⁻` twice to `A_ξ` splits off a simple
//! summand `A_ρ`, what remains is `A_{ξ'}⁻` for a smaller two-segment `ξ'`,
//! and the chain for `ζ' = ζ − ρ ≺ ξ'` lifts by `⊕ A_ρ`. Other slope
//! configurations fall back to a search in the move graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::unit_solution;
use crate::moves::{move_path, MoveWitness};
use crate::polygon::{c_value, is_saturated, minimal_word, precedes, NewtonPolygon, Segment};
use crate::poset::PolygonPoset;
use crate::verify::verify_chain;
use crate::word::{cycle_decomposition, direct_sum, dual, minus, Word};

/// The six-case split of mixed-slope two-segment polygons, plus `h = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    I,
    II,
    III,
    IV,
    V,
    VI,
    #[serde(rename = "BASE_H2")]
    BaseH2,
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::I,
        CaseTag::II,
        CaseTag::III,
        CaseTag::IV,
        CaseTag::V,
        CaseTag::VI,
        CaseTag::BaseH2,
    ];
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
            CaseTag::IV => "IV",
            CaseTag::V => "V",
            CaseTag::VI => "VI",
            CaseTag::BaseH2 => "BASE_H2",
        })
    }
}

fn mixed_segments(xi: &NewtonPolygon) -> Result<(Segment, Segment)> {
    match xi.segments() {
        [a, b] => {
            if !xi.is_mixed_two_segment() {
                return Err(Error::SlopeCondition(xi.to_string()));
            }
            Ok((*a, *b))
        }
        _ => Err(Error::NotTwoSegment(xi.to_string())),
    }
}

pub fn classify_case(xi: &NewtonPolygon) -> Result<CaseTag> {
    let (s1, s2) = mixed_segments(xi)?;
    let (m1, n1, n2) = (s1.m(), s1.n(), s2.n());
    if xi.height() == 2 {
        return Ok(CaseTag::BaseH2);
    }
    // λ₁ > 1/2 gives n₁ > m₁
    let gap = n1 - m1;
    let hits: Vec<CaseTag> = [
        (CaseTag::I, gap > 1 && n2 > 0),
        (CaseTag::II, gap == 1 && m1 > 0 && n2 == 1),
        (CaseTag::III, n2 == 0 && m1 > 1),
        (CaseTag::IV, gap == 1 && n2 > 1),
        (CaseTag::V, m1 == 0 && n2 == 1),
        (CaseTag::VI, m1 == 1 && n2 == 0),
    ]
    .into_iter()
    .filter_map(|(tag, holds)| holds.then_some(tag))
    .collect();
    match hits.as_slice() {
        [tag] => Ok(*tag),
        [] => Err(Error::NoCaseMatches(xi.to_string())),
        _ => Err(Error::NoCaseMatches(format!("{xi} matches {hits:?}"))),
    }
}

/// The split-off segment `ρ = (a, b)`: `a·n₁ − b·m₁ = 1` in cases I and III,
/// `(1, 1)` in case II, and `b·m₂ − a·n₂ = 1` in case IV.
pub fn rho_segment(xi: &NewtonPolygon, case: CaseTag) -> Result<Segment> {
    let (s1, s2) = mixed_segments(xi)?;
    let wrong = || Error::WrongCase {
        case: case.to_string(),
    };
    let (a, b) = match case {
        CaseTag::I | CaseTag::III => {
            let (a, b) = unit_solution(s1.n().into(), s1.m().into()).ok_or_else(wrong)?;
            if !(1..=i64::from(s1.n())).contains(&b) {
                return Err(wrong());
            }
            (a, b)
        }
        CaseTag::II => (1, 1),
        CaseTag::IV => {
            let (b, a) = unit_solution(s2.m().into(), s2.n().into()).ok_or_else(wrong)?;
            if !(0..=i64::from(s2.m())).contains(&a) {
                return Err(wrong());
            }
            (a, b)
        }
        _ => return Err(wrong()),
    };
    Segment::new(a as u32, b as u32)
}

/// `N_ξ⁻⁻ = N_{ξ'}⁻ ⊕ N_ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionResult {
    pub xi_prime: NewtonPolygon,
    pub rho: Segment,
    pub left_word: Word,
    pub rho_word: Word,
    pub case: CaseTag,
}

/// Cases I–IV: splits `A_ξ⁻⁻` into its two cycles and checks both against
/// the predicted summands.
pub fn minus_square_decompose(xi: &NewtonPolygon) -> Result<DecompositionResult> {
    let case = classify_case(xi)?;
    if !matches!(case, CaseTag::I | CaseTag::II | CaseTag::III | CaseTag::IV) {
        return Err(Error::WrongCase {
            case: case.to_string(),
        });
    }
    let (s1, s2) = mixed_segments(xi)?;
    let rho = rho_segment(xi, case)?;
    let twice = minus(&minus(&minimal_word(xi))?)?;
    let cycles = cycle_decomposition(&twice);
    if cycles.len() != 2 {
        return Err(Error::CycleCount {
            word: twice.to_string(),
            expected: 2,
            found: cycles.len(),
        });
    }
    let rho_word = rho.word();
    let k = cycles
        .iter()
        .position(|c| c.word == rho_word)
        .ok_or_else(|| {
            Error::Identification(format!(
                "{xi}: no cycle of {twice} equals A_rho = {rho_word}"
            ))
        })?;
    let left_word = cycles[1 - k].word.clone();

    let ident = |msg: String| Error::Identification(msg);
    let shrink = |s: Segment| {
        Segment::new(s.m() - rho.m(), s.n() - rho.n())
            .map_err(|_| ident(format!("{xi}: {s} - {rho} is not a segment")))
    };
    let xi_prime = match case {
        CaseTag::IV => NewtonPolygon::new(vec![s1, shrink(s2)?]),
        _ => NewtonPolygon::new(vec![shrink(s1)?, s2]),
    };
    let expected_left = minus(&minimal_word(&xi_prime))
        .map_err(|_| ident(format!("{xi}: A_xi' of {xi_prime} has no 01")))?;
    if left_word != expected_left {
        return Err(ident(format!(
            "{xi}: left cycle {left_word} != minus(A_xi') = {expected_left} for xi' = {xi_prime}"
        )));
    }
    Ok(DecompositionResult {
        xi_prime,
        rho,
        left_word,
        rho_word,
        case,
    })
}

/// Cases V, VI and `h = 2`: the segments of `ζ` read off directly, together
/// with `A_ξ⁻⁻` (`A_ξ⁻` for `h = 2`).
pub fn prop3_decompose(xi: &NewtonPolygon) -> Result<(Vec<Segment>, Word)> {
    let case = classify_case(xi)?;
    let (s1, s2) = mixed_segments(xi)?;
    let one_one = Segment::new(1, 1)?;
    let a_xi = minimal_word(xi);
    let (segs, word) = match case {
        CaseTag::BaseH2 => (vec![one_one], minus(&a_xi)?),
        CaseTag::V => (vec![one_one, Segment::new(s2.m() - 1, 1)?], minus(&minus(&a_xi)?)?),
        CaseTag::VI => (vec![Segment::new(1, s1.n() - 1)?, one_one], minus(&minus(&a_xi)?)?),
        _ => {
            return Err(Error::WrongCase {
                case: case.to_string(),
            })
        }
    };
    let expected = minimal_word(&NewtonPolygon::new(segs.clone()));
    if word != expected {
        return Err(Error::Identification(format!(
            "{xi} ({case}): {word} != {expected}"
        )));
    }
    let cycles = cycle_decomposition(&word).len();
    if cycles != segs.len() {
        return Err(Error::CycleCount {
            word: word.to_string(),
            expected: segs.len(),
            found: cycles,
        });
    }
    Ok((segs, word))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Constructive,
    Search,
}

/// `words[0] = A_ζ`, `words[c] = A_ξ`; `steps[i]` is a path of elementary
/// moves from `words[i+1]` down to `words[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub zeta: NewtonPolygon,
    pub xi: NewtonPolygon,
    pub c: u64,
    pub method: Method,
    pub words: Vec<Word>,
    pub steps: Vec<Vec<MoveWitness>>,
}

impl Chain {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }
}

/// Bottom-up words `A_ζ, …, A_ξ⁻` and, per step, the summands that must stay
/// in `P` while re-deriving that step's witness.
struct Claim {
    words: Vec<Word>,
    pins: Vec<Vec<Word>>,
}

fn structure(msg: String) -> Error {
    Error::SaturationStructure(msg)
}

fn claim(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<Claim> {
    if !xi.is_mixed_two_segment() {
        return Err(Error::RecursionLeftClassification(xi.to_string()));
    }
    let case = classify_case(xi)?;
    let a_minus = minus(&minimal_word(xi))?;
    match case {
        CaseTag::BaseH2 => {
            if zeta.to_string() != "(1,1)" {
                return Err(structure(format!("{zeta} below {xi} at h = 2")));
            }
            Ok(Claim {
                words: vec![a_minus],
                pins: Vec::new(),
            })
        }
        CaseTag::V | CaseTag::VI => {
            let (segs, twice) = prop3_decompose(xi)?;
            if NewtonPolygon::new(segs) != *zeta {
                return Err(structure(format!("{zeta} is not the split of {xi} ({case})")));
            }
            Ok(Claim {
                words: vec![twice, a_minus],
                pins: vec![Vec::new()],
            })
        }
        _ => {
            let dec = minus_square_decompose(xi)?;
            let segs = zeta.segments();
            let expected_end = match case {
                CaseTag::IV => segs.last(),
                _ => segs.first(),
            };
            if expected_end != Some(&dec.rho) {
                return Err(structure(format!(
                    "rho = {} is not the {} segment of {zeta} ({case})",
                    dec.rho,
                    if case == CaseTag::IV { "shallowest" } else { "steepest" }
                )));
            }
            let zeta_prime = zeta
                .remove_segment(dec.rho)
                .ok_or_else(|| structure(format!("rho = {} not in {zeta}", dec.rho)))?;
            let inner = claim(&zeta_prime, &dec.xi_prime)?;
            let mut words: Vec<Word> = inner
                .words
                .iter()
                .map(|b| direct_sum(b, &dec.rho_word))
                .collect();
            let mut pins: Vec<Vec<Word>> = inner
                .pins
                .into_iter()
                .map(|mut p| {
                    p.push(dec.rho_word.clone());
                    p
                })
                .collect();
            let twice = minus(&a_minus)?;
            if words.last() != Some(&twice) {
                return Err(Error::Identification(format!(
                    "{xi}: lifted top {:?} != A_xi-- = {twice}",
                    words.last()
                )));
            }
            words.push(a_minus);
            pins.push(Vec::new());
            Ok(Claim { words, pins })
        }
    }
}

/// Witness path for `upper → lower` keeping `pins` inside `P`.
fn step_witnesses(upper: &Word, lower: &Word, pins: &[Word]) -> Result<Vec<MoveWitness>> {
    if pins.is_empty() && minus(upper).as_ref() == Ok(lower) {
        return Ok(vec![MoveWitness::whole_word_minus(upper)?]);
    }
    move_path(upper, lower, pins)
        .filter(|p| !p.is_empty())
        .ok_or_else(|| Error::SearchExhausted(format!("no move path {upper} -> {lower} pinning {pins:?}")))
}

fn check_saturated(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<()> {
    if !precedes(zeta, xi)? {
        return Err(Error::NotPrecedes {
            zeta: zeta.to_string(),
            xi: xi.to_string(),
        });
    }
    if xi.len() != 2 {
        return Err(Error::NotTwoSegment(xi.to_string()));
    }
    if !is_saturated(zeta, xi)? {
        return Err(Error::NotSaturated {
            zeta: zeta.to_string(),
            xi: xi.to_string(),
        });
    }
    Ok(())
}

fn finish(chain: Chain) -> Result<Chain> {
    verify_chain(&chain).map_err(Error::InvalidChain)?;
    Ok(chain)
}

/// The chain for a saturated `ζ ≺ ξ` with two-segment `ξ`: constructive for
/// mixed slopes, move-graph search otherwise.
pub fn chain_saturated_two_segment(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<Chain> {
    check_saturated(zeta, xi)?;
    if xi.is_mixed_two_segment() {
        constructive_chain(zeta, xi)
    } else {
        search_chain(zeta, xi)
    }
}

fn constructive_chain(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<Chain> {
    let Claim { mut words, mut pins } = claim(zeta, xi)?;
    words.push(minimal_word(xi));
    pins.push(Vec::new());
    let steps = words
        .windows(2)
        .zip(&pins)
        .map(|(pair, pin)| step_witnesses(&pair[1], &pair[0], pin))
        .collect::<Result<Vec<_>>>()?;
    finish(Chain {
        zeta: zeta.clone(),
        xi: xi.clone(),
        c: c_value(zeta, xi)?,
        method: Method::Constructive,
        words,
        steps,
    })
}

fn dual_witness(w: &MoveWitness) -> MoveWitness {
    let mut p_cycles: Vec<Word> = w.p_cycles.iter().map(dual).collect();
    p_cycles.sort();
    MoveWitness {
        before: dual(&w.before),
        after: dual(&w.after),
        p_cycles,
        q_before: dual(&w.q_before),
        q_after: dual(&w.q_after),
        swap_index: w.q_before.len() - 2 - w.swap_index,
    }
}

/// Breadth-first search from `A_ξ` down to `A_ζ`, grouped into `c(ζ,ξ)`
/// steps. Polygons with every slope `≥ 1/2` are handled through the
/// reverse-complement duality, which maps moves to moves.
pub fn search_chain(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<Chain> {
    if !precedes(zeta, xi)? {
        return Err(Error::NotPrecedes {
            zeta: zeta.to_string(),
            xi: xi.to_string(),
        });
    }
    let steep = |p: &NewtonPolygon| p.segments().iter().all(|s| 2 * s.n() >= s.height());
    if !xi.is_empty() && steep(xi) && steep(zeta) && xi.dual() != *xi {
        let mirrored = raw_search(&zeta.dual(), &xi.dual())?;
        return finish(Chain {
            zeta: zeta.clone(),
            xi: xi.clone(),
            c: mirrored.c,
            method: Method::Search,
            words: mirrored.words.iter().map(dual).collect(),
            steps: mirrored
                .steps
                .iter()
                .map(|s| s.iter().map(dual_witness).collect())
                .collect(),
        });
    }
    finish(raw_search(zeta, xi)?)
}

fn raw_search(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<Chain> {
    let c = c_value(zeta, xi)?;
    let (upper, lower) = (minimal_word(xi), minimal_word(zeta));
    let path = move_path(&upper, &lower, &[])
        .ok_or_else(|| Error::SearchExhausted(format!("{lower} not reachable from {upper}")))?;
    if (path.len() as u64) < c || (c == 0) != path.is_empty() {
        return Err(Error::SearchExhausted(format!(
            "path of {} moves cannot be grouped into {c} steps",
            path.len()
        )));
    }
    // top-down groups: c − 1 single moves, the remainder in the last group
    let mut groups: Vec<Vec<MoveWitness>> = Vec::new();
    let mut rest = path.into_iter();
    for _ in 1..c {
        groups.push(vec![rest.next().expect("length checked")]);
    }
    if c > 0 {
        groups.push(rest.collect());
    }
    let mut words = vec![upper];
    for g in &groups {
        words.push(g.last().expect("groups are nonempty").after.clone());
    }
    words.reverse();
    groups.reverse();
    Ok(Chain {
        zeta: zeta.clone(),
        xi: xi.clone(),
        c,
        method: Method::Search,
        words,
        steps: groups,
    })
}

/// One saturated step `lo ⋖ hi` of a general chain.
fn saturated_piece(lo: &NewtonPolygon, hi: &NewtonPolygon) -> Result<Chain> {
    let (common, lo_rest, hi_rest) = lo.split_common(hi);
    let reducible = hi_rest.len() == 2
        && precedes(&lo_rest, &hi_rest)?
        && is_saturated(&lo_rest, &hi_rest)?;
    if !reducible {
        return search_chain(lo, hi);
    }
    let sub = chain_saturated_two_segment(&lo_rest, &hi_rest)?;
    if common.is_empty() {
        return Ok(sub);
    }
    let a_common = minimal_word(&common);
    let pins: Vec<Word> = common.segments().iter().map(|s| s.word()).collect();
    let words: Vec<Word> = sub.words.iter().map(|w| direct_sum(w, &a_common)).collect();
    let steps = words
        .windows(2)
        .map(|pair| step_witnesses(&pair[1], &pair[0], &pins))
        .collect::<Result<Vec<_>>>()?;
    finish(Chain {
        zeta: lo.clone(),
        xi: hi.clone(),
        c: sub.c,
        method: sub.method,
        words,
        steps,
    })
}

/// A chain for any `ζ ≺ ξ`, assembled from saturated steps.
pub fn chain_general(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<Chain> {
    if !precedes(zeta, xi)? {
        return Err(Error::NotPrecedes {
            zeta: zeta.to_string(),
            xi: xi.to_string(),
        });
    }
    if zeta == xi {
        return finish(Chain {
            zeta: zeta.clone(),
            xi: xi.clone(),
            c: 0,
            method: Method::Constructive,
            words: vec![minimal_word(xi)],
            steps: Vec::new(),
        });
    }
    let (h, d) = xi.endpoint();
    let poset = PolygonPoset::new(h, d);
    let path = poset
        .saturated_chain(zeta, xi, |lo, hi| lo.split_common(hi).2.len() == 2)
        .ok_or_else(|| Error::SearchExhausted(format!("no saturated chain {zeta} -> {xi}")))?;
    let mut words = vec![minimal_word(zeta)];
    let mut steps = Vec::new();
    let mut method = Method::Constructive;
    for pair in path.windows(2) {
        let piece = saturated_piece(&pair[0], &pair[1])?;
        if piece.method == Method::Search {
            method = Method::Search;
        }
        words.extend(piece.words.into_iter().skip(1));
        steps.extend(piece.steps);
    }
    finish(Chain {
        zeta: zeta.clone(),
        xi: xi.clone(),
        c: c_value(zeta, xi)?,
        method,
        words,
        steps,
    })
}
