//! Exhaustive verification campaigns with mergeable reports.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moves::MoveGraph;
use crate::polygon::{
    c_value, enumerate_nps, is_saturated, minimal_word, ordinary, precedes_unchecked, segments_up_to,
    straight_line, NewtonPolygon, Segment,
};
use crate::poset::PolygonPoset;
use crate::specialization::{
    chain_saturated_two_segment, classify_case, minus_square_decompose, prop3_decompose,
    rho_segment, CaseTag, Method,
};
use crate::verify::verify_chain;
use crate::word::{
    check_dm1_axioms, cycle_words, direct_sum, direct_sum_all, dual, fv_permutation,
    fv_structure, length_ell, simple_word, Word,
};

/// Largest `h_max` for campaigns over polygons.
pub const POLYGON_BOUND: u32 = 14;
/// Largest `h_max` for campaigns over all words or the move graph.
pub const WORD_BOUND: u32 = 10;
/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x00d1_5eed;
/// Largest height at which the theorem campaign also searches non-mixed pairs.
pub const SEARCH_BOUND: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CampaignKind {
    Theorem,
    Prop4,
    Props123,
    Dimension,
    Axioms,
    Order,
    Algebra,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 7] = [
        CampaignKind::Theorem,
        CampaignKind::Prop4,
        CampaignKind::Props123,
        CampaignKind::Dimension,
        CampaignKind::Axioms,
        CampaignKind::Order,
        CampaignKind::Algebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CampaignKind::Theorem => "theorem",
            CampaignKind::Prop4 => "prop4",
            CampaignKind::Props123 => "props123",
            CampaignKind::Dimension => "dimension",
            CampaignKind::Axioms => "axioms",
            CampaignKind::Order => "order",
            CampaignKind::Algebra => "algebra",
        }
    }

    pub fn bound(self) -> u32 {
        match self {
            CampaignKind::Axioms | CampaignKind::Order => WORD_BOUND,
            CampaignKind::Algebra => 12,
            _ => POLYGON_BOUND,
        }
    }
}

impl fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CampaignKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<CampaignKind> {
        CampaignKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown campaign {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub campaign: CampaignKind,
    pub h_max: u32,
    pub instances: u64,
    pub passed: u64,
    pub failed: u64,
    /// Instance counts keyed by case tag or by size.
    pub per_case: BTreeMap<String, u64>,
    pub counterexamples: Vec<Counterexample>,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.counterexamples.is_empty()
    }

    fn empty(campaign: CampaignKind, h_max: u32) -> Report {
        Report {
            campaign,
            h_max,
            instances: 0,
            passed: 0,
            failed: 0,
            per_case: BTreeMap::new(),
            counterexamples: Vec::new(),
            wall_time_ms: 0,
        }
    }

    fn record(&mut self, o: Outcome) {
        self.instances += 1;
        *self.per_case.entry(o.tag).or_default() += 1;
        match o.failure {
            None => self.passed += 1,
            Some(reason) => {
                self.failed += 1;
                self.counterexamples.push(Counterexample {
                    instance: o.instance,
                    reason,
                });
            }
        }
    }

    /// Associative merge; wall times add.
    pub fn merge(mut self, other: Report) -> Report {
        self.instances += other.instances;
        self.passed += other.passed;
        self.failed += other.failed;
        for (k, v) in other.per_case {
            *self.per_case.entry(k).or_default() += v;
        }
        self.counterexamples.extend(other.counterexamples);
        self.wall_time_ms += other.wall_time_ms;
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} (h_max = {}): {} instances, {} passed, {} failed, {} ms",
            self.campaign, self.h_max, self.instances, self.passed, self.failed, self.wall_time_ms
        )?;
        for (k, v) in &self.per_case {
            writeln!(f, "  {k}: {v}")?;
        }
        for c in &self.counterexamples {
            writeln!(f, "  FAIL {}: {}", c.instance, c.reason)?;
        }
        write!(f, "{}", if self.ok() { "pass" } else { "fail" })
    }
}

struct Outcome {
    instance: String,
    tag: String,
    failure: Option<String>,
}

impl Outcome {
    fn new(instance: impl fmt::Display, tag: impl fmt::Display, r: Result<()>) -> Outcome {
        Outcome {
            instance: instance.to_string(),
            tag: tag.to_string(),
            failure: r.err().map(|e| e.to_string()),
        }
    }
}

fn fail(msg: String) -> Error {
    Error::Identification(msg)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

pub fn run_campaign(kind: CampaignKind, h_max: u32, seed: u64) -> Result<Report> {
    if h_max > kind.bound() {
        return Err(Error::Bound(format!(
            "{kind} supports h_max <= {}, got {h_max}",
            kind.bound()
        )));
    }
    let start = Instant::now();
    let outcomes = match kind {
        CampaignKind::Theorem => theorem(h_max),
        CampaignKind::Prop4 => segment_count(h_max),
        CampaignKind::Props123 => decompositions(h_max),
        CampaignKind::Dimension => dimension(h_max),
        CampaignKind::Axioms => axioms(h_max),
        CampaignKind::Order => order(h_max),
        CampaignKind::Algebra => algebra(h_max, seed),
    };
    let mut report = Report::empty(kind, h_max);
    for o in outcomes {
        report.record(o);
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Polygons with exactly two distinct segments and height in `2..=h_max`.
pub fn two_segment_polygons(h_max: u32) -> Vec<NewtonPolygon> {
    let segs = segments_up_to(h_max);
    let mut out = Vec::new();
    for (i, &a) in segs.iter().enumerate() {
        for &b in &segs[i + 1..] {
            if a.height() + b.height() <= h_max {
                out.push(NewtonPolygon::new(vec![a, b]));
            }
        }
    }
    out.sort_by_key(|p| (p.height(), p.clone()));
    out
}

/// Every saturated pair `ζ ⋖ ξ` with `ξ` in `uppers`.
fn saturated_pairs(uppers: &[NewtonPolygon]) -> Vec<(NewtonPolygon, NewtonPolygon)> {
    let mut endpoints: Vec<(u32, u32)> = uppers.iter().map(|p| p.endpoint()).collect();
    endpoints.sort();
    endpoints.dedup();
    let posets: HashMap<(u32, u32), PolygonPoset> = endpoints
        .into_par_iter()
        .map(|(h, d)| ((h, d), PolygonPoset::new(h, d)))
        .collect();
    uppers
        .iter()
        .flat_map(|xi| {
            posets[&xi.endpoint()]
                .saturated_below(xi)
                .into_iter()
                .map(move |zeta| (zeta, xi.clone()))
        })
        .collect()
}

fn pair_name(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> String {
    format!("{zeta} < {xi}")
}

fn theorem(h_max: u32) -> Vec<Outcome> {
    let all = two_segment_polygons(h_max);
    let mut pairs = saturated_pairs(&all);
    pairs.retain(|(_, xi)| xi.is_mixed_two_segment() || xi.height() <= SEARCH_BOUND);
    pairs
        .par_iter()
        .map(|(zeta, xi)| {
            let tag = match classify_case(xi) {
                Ok(case) => case.to_string(),
                Err(_) => "SEARCH".to_string(),
            };
            Outcome::new(pair_name(zeta, xi), tag, theorem_instance(zeta, xi))
        })
        .collect()
}

fn theorem_instance(zeta: &NewtonPolygon, xi: &NewtonPolygon) -> Result<()> {
    let chain = chain_saturated_two_segment(zeta, xi)?;
    let expected = if xi.is_mixed_two_segment() {
        Method::Constructive
    } else {
        Method::Search
    };
    ensure(chain.method == expected, || format!("method {:?}", chain.method))?;
    let c = c_value(zeta, xi)?;
    ensure(chain.steps.len() as u64 == c, || {
        format!("{} steps, c = {c}", chain.steps.len())
    })?;
    verify_chain(&chain).map_err(Error::InvalidChain)?;
    for (i, moves) in chain.steps.iter().enumerate() {
        let drop = length_ell(&chain.words[i + 1]) as i64 - length_ell(&chain.words[i]) as i64;
        ensure(drop >= 1, || format!("step {i} drops ell by {drop}"))?;
        for m in moves {
            ensure(length_ell(&m.after) < length_ell(&m.before), || {
                format!("move {} -> {} does not lower ell", m.before, m.after)
            })?;
        }
    }
    ensure(c == zeta.len() as u64, || {
        format!("c = {c} but zeta has {} segments", zeta.len())
    })?;
    dimension_instance(xi)
}

fn segment_count(h_max: u32) -> Vec<Outcome> {
    let pairs = saturated_pairs(&two_segment_polygons(h_max));
    pairs
        .par_iter()
        .map(|(zeta, xi)| {
            let tag = if xi.is_mixed_two_segment() { "mixed" } else { "non-mixed" };
            let r = c_value(zeta, xi).and_then(|c| {
                ensure(c == zeta.len() as u64, || {
                    format!("c = {c}, #segments = {}", zeta.len())
                })
            });
            Outcome::new(pair_name(zeta, xi), tag, r)
        })
        .collect()
}

fn decompositions(h_max: u32) -> Vec<Outcome> {
    let uppers: Vec<NewtonPolygon> = two_segment_polygons(h_max)
        .into_iter()
        .filter(|p| p.is_mixed_two_segment())
        .collect();
    uppers
        .par_iter()
        .map(|xi| {
            let tag = classify_case(xi).map_or("?".to_string(), |c| c.to_string());
            Outcome::new(xi, tag, decomposition_instance(xi))
        })
        .collect()
}

fn decomposition_instance(xi: &NewtonPolygon) -> Result<()> {
    let case = classify_case(xi)?;
    match case {
        CaseTag::V | CaseTag::VI | CaseTag::BaseH2 => prop3_decompose(xi).map(|_| ()),
        _ => {
            let dec = minus_square_decompose(xi)?;
            let rho = rho_segment(xi, case)?;
            ensure(dec.rho == rho, || format!("rho {} vs {rho}", dec.rho))?;
            let [s1, s2] = [xi.segments()[0], xi.segments()[1]];
            let (a, b) = (i64::from(rho.m()), i64::from(rho.n()));
            let euclid = match case {
                CaseTag::I | CaseTag::III => a * i64::from(s1.n()) - b * i64::from(s1.m()),
                CaseTag::IV => b * i64::from(s2.m()) - a * i64::from(s2.n()),
                _ => 1,
            };
            ensure(euclid == 1, || format!("Euclid condition gives {euclid}"))?;
            ensure(dec.rho_word == simple_word(rho.m(), rho.n())?, || {
                "rho cycle is not simple_word(rho)".to_string()
            })?;
            ensure(dec.xi_prime.height() + rho.height() == xi.height(), || {
                format!("xi' = {} has the wrong height", dec.xi_prime)
            })?;
            let twice = crate::word::minus(&crate::word::minus(&minimal_word(xi))?)?;
            let mut cycles = cycle_words(&twice);
            let mut expected = vec![dec.left_word.clone(), dec.rho_word.clone()];
            cycles.sort();
            expected.sort();
            ensure(cycles == expected, || format!("cycles of {twice}: {cycles:?}"))?;
            if !dec.xi_prime.is_mixed_two_segment() {
                return Err(Error::RecursionLeftClassification(dec.xi_prime.to_string()));
            }
            Ok(())
        }
    }
}

fn dimension_instance(xi: &NewtonPolygon) -> Result<()> {
    let (h, d) = xi.endpoint();
    let sigma = straight_line(h, d)?;
    let ell = length_ell(&minimal_word(xi));
    let c = c_value(&sigma, xi)?;
    ensure(ell == c, || format!("ell(A_xi) = {ell}, c(sigma, xi) = {c}"))
}

fn dimension(h_max: u32) -> Vec<Outcome> {
    let polygons: Vec<NewtonPolygon> = (1..=h_max)
        .flat_map(|h| (0..=h).flat_map(move |d| enumerate_nps(h, d)))
        .collect();
    let mut out: Vec<Outcome> = polygons
        .par_iter()
        .map(|xi| Outcome::new(xi, format!("h={:02}", xi.height()), dimension_instance(xi)))
        .collect();
    for h in 1..=h_max {
        for d in 0..=h {
            let r = (|| {
                let sigma = straight_line(h, d)?;
                let chi = ordinary(h, d)?;
                let (ls, lc) = (length_ell(&minimal_word(&sigma)), length_ell(&minimal_word(&chi)));
                ensure(ls == 0, || format!("ell(A_sigma) = {ls}"))?;
                let top = u64::from((h - d) * d);
                ensure(lc == top, || format!("ell(A_chi) = {lc}, (h-d)d = {top}"))
            })();
            out.push(Outcome::new(format!("extremes ({h},{d})"), "extremes", r));
        }
    }
    out
}

/// Every 0/1 word of length `len`.
pub fn all_words(len: usize) -> impl Iterator<Item = Word> {
    (0u64..1 << len).map(move |k| Word::from_bools((0..len).rev().map(|i| k >> i & 1 == 1)))
}

fn axioms(h_max: u32) -> Vec<Outcome> {
    (1..=h_max as usize)
        .into_par_iter()
        .flat_map_iter(|len| {
            all_words(len).map(move |w| {
                let r = ensure(check_dm1_axioms(&fv_structure(&w)), || "axioms fail".into())
                    .and_then(|_| {
                        ensure(fv_permutation(&w).is_bijection(), || "not a permutation".into())
                    });
                Outcome::new(&w, format!("len={len:02}"), r)
            })
        })
        .collect()
}

fn order(h_max: u32) -> Vec<Outcome> {
    let endpoints: Vec<(u32, u32)> = (1..=h_max).flat_map(|h| (0..=h).map(move |d| (h, d))).collect();
    endpoints
        .into_par_iter()
        .flat_map_iter(|(h, d)| {
            let polys = enumerate_nps(h, d);
            let words: Vec<Word> = polys.iter().map(minimal_word).collect();
            let mut graph = MoveGraph::new();
            let mut out = Vec::new();
            for (i, zeta) in polys.iter().enumerate() {
                for (j, xi) in polys.iter().enumerate() {
                    let r = graph.leq(&words[i], &words[j]).and_then(|leq| {
                        let prec = precedes_unchecked(zeta, xi);
                        ensure(leq == prec, || format!("leq = {leq}, precedes = {prec}"))
                    });
                    out.push(Outcome::new(pair_name(zeta, xi), format!("h={h:02}"), r));
                }
            }
            // tally whether each cover cuts down to a saturated two-segment window
            let poset = PolygonPoset::new(h, d);
            for j in 0..poset.len() {
                for i in poset.covers_below(j) {
                    let (zeta, xi) = (&poset.polygons()[i], &poset.polygons()[j]);
                    let (_, lo, hi) = zeta.split_common(xi);
                    let window = hi.len() == 2
                        && precedes_unchecked(&lo, &hi)
                        && is_saturated(&lo, &hi).unwrap_or(false);
                    let tag = if window { "cover:window" } else { "cover:fallback" };
                    out.push(Outcome::new(pair_name(zeta, xi), tag, Ok(())));
                }
            }
            out
        })
        .collect()
}

/// Simple words `A_{m,n}` with `1 ≤ m + n ≤ max_len`.
pub fn simple_words(max_len: u32) -> Vec<Word> {
    segments_up_to(max_len).into_iter().map(Segment::word).collect()
}

fn sum_laws(x: &Word, y: &Word, z: &Word) -> Result<()> {
    ensure(direct_sum(x, y) == direct_sum(y, x), || format!("{x} + {y} not commutative"))?;
    let left = direct_sum(&direct_sum(x, y), z);
    let right = direct_sum(x, &direct_sum(y, z));
    ensure(left == right, || format!("({x} + {y}) + {z} = {left}, {x} + ({y} + {z}) = {right}"))
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    Word::from_bools((0..len).map(|_| rng.gen_bool(0.5)))
}

/// `direct_sum` laws, the cycle round trip and duality. `h_max` bounds the
/// exhaustive part; random triples use `seed`.
fn algebra(h_max: u32, seed: u64) -> Vec<Outcome> {
    let simple = simple_words(h_max);
    let mut out: Vec<Outcome> = simple
        .par_iter()
        .flat_map_iter(|x| {
            let simple = &simple;
            simple.iter().flat_map(move |y| {
                simple
                    .iter()
                    .filter(move |z| x.len() + y.len() + z.len() <= h_max as usize)
                    .map(move |z| Outcome::new(format!("{x},{y},{z}"), "simple triples", sum_laws(x, y, z)))
            })
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let total = rng.gen_range(3..=15);
        let a = rng.gen_range(1..=total - 2);
        let b = rng.gen_range(1..=total - a - 1);
        let (x, y, z) = (
            random_word(&mut rng, a),
            random_word(&mut rng, b),
            random_word(&mut rng, total - a - b),
        );
        out.push(Outcome::new(format!("{x},{y},{z}"), "random triples", sum_laws(&x, &y, &z)));
    }

    out.par_extend((1..=h_max as usize).into_par_iter().flat_map_iter(|len| {
        all_words(len).map(|w| {
            let back = direct_sum_all(&cycle_words(&w));
            let r = ensure(back == w, || format!("cycles recombine to {back}"))
                .and_then(|_| ensure(dual(&dual(&w)) == w, || "dual is not an involution".into()));
            Outcome::new(&w, "round trip", r)
        })
    }));

    for s in segments_up_to(h_max) {
        let r = simple_word(s.n(), s.m()).and_then(|flipped| {
            ensure(dual(&s.word()) == flipped, || format!("dual(A_{s}) = {}", dual(&s.word())))
        });
        out.push(Outcome::new(s, "dual simple", r));
    }
    out
}
