//! Axiom checking for class (4,3), the domino rule, minimal class and
//! p-class computation, neutrality detection, and left-weightedness.

use rayon::prelude::*;

use crate::enumerate::Stratum;
use crate::error::{Error, Result};
use crate::normaliser::{left_divides, MonoidElement};
use crate::qmap::{AltStart, QuadMap};
use crate::rewriting::{normal_form_table, NormalFormTable};
use crate::words::{Letter, Word};

/// φ is idempotent and satisfies ft_212 = ft_2121 = ft_1212 on all
/// length-three words (both checked exhaustively).
pub fn check_axioms_43(map: &QuadMap) -> bool {
    if !map.is_idempotent() {
        return false;
    }
    let n = map.alphabet().len();
    let stratum = Stratum::new(n, 3);
    (0..stratum.count()).all(|idx| {
        let w = stratum.word(idx);
        let w212 = ft(map, &w, &[2, 1, 2]);
        w212 == ft(map, &w, &[2, 1, 2, 1]) && w212 == ft(map, &w, &[1, 2, 1, 2])
    })
}

fn ft(map: &QuadMap, w: &Word, positions: &[usize]) -> Word {
    let mut out = w.clone();
    for &p in positions {
        map.apply_at_unchecked(&mut out, p - 1);
    }
    out
}

/// The domino rule: whenever s1|s2 is φ-invariant and
/// s'1|t1 = φ(t0|s1), s'2|t2 = φ(t1|s2), the pair s'1|s'2 is φ-invariant.
pub fn check_domino(map: &QuadMap) -> bool {
    domino_counterexample(map).is_none()
}

/// A triple (t0, s1, s2) violating the domino rule, if any.
pub fn domino_counterexample(map: &QuadMap) -> Option<(Letter, Letter, Letter)> {
    let letters: Vec<Letter> = map.alphabet().letters().collect();
    for &t0 in &letters {
        for &s1 in &letters {
            for &s2 in &letters {
                if !map.pair_invariant(s1, s2) {
                    continue;
                }
                let (s1p, t1) = map.image(t0, s1);
                let (s2p, _t2) = map.image(t1, s2);
                if !map.pair_invariant(s1p, s2p) {
                    return Some((t0, s1, s2));
                }
            }
        }
    }
    None
}

/// One side of a (p-)class measurement.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SideClass {
    /// Every word stabilises within this many alternation steps.
    Finite(usize),
    /// Some word had not stabilised at the cap (slow, not provably never).
    Capped,
    /// Some word's alternation orbit cycles without stabilising.
    NonNormalising,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideResult {
    pub class: SideClass,
    /// First word (in enumeration order) attaining the maximum, hitting the
    /// cap, or cycling.
    pub witness: Option<Word>,
    pub cap: usize,
}

/// The pair of side measurements forming the minimal (p-)class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassValue {
    pub left: SideResult,
    pub right: SideResult,
}

impl ClassValue {
    pub fn as_finite(&self) -> Option<(usize, usize)> {
        match (&self.left.class, &self.right.class) {
            (SideClass::Finite(c), SideClass::Finite(cp)) => Some((*c, *cp)),
            _ => None,
        }
    }

    /// Is the measured class at most (c, c')?
    pub fn within(&self, c: usize, cp: usize) -> bool {
        matches!(self.as_finite(), Some((l, r)) if l <= c && r <= cp)
    }
}

/// Outcome of alternating normalisation on a single word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Stabilised { steps: usize },
    Cycles { cycle: Vec<Word> },
    CapReached,
}

/// Applies ν̄ alternately (positions 1, 2 from the given start) to a
/// length-three word until the result is invariant under both positions;
/// detects orbit cycles by state repetition.
pub fn stabilisation_steps(
    map: &QuadMap,
    w: &Word,
    start: AltStart,
    cap: usize,
) -> StepOutcome {
    assert_eq!(w.len(), 3, "pair alternation measures length-three words");
    alternation(w, start, cap, |word, pos| {
        let mut v = word.clone();
        map.apply_at_unchecked(&mut v, pos - 1);
        v
    }, |word| map.is_phi_invariant(word))
}

fn alternation(
    w: &Word,
    start: AltStart,
    cap: usize,
    mut step: impl FnMut(&Word, usize) -> Word,
    mut invariant: impl FnMut(&Word) -> bool,
) -> StepOutcome {
    let first = match start {
        AltStart::Left => 1usize,
        AltStart::Right => 2usize,
    };
    let mut trail: Vec<Word> = Vec::new();
    let mut seen: std::collections::HashMap<(Word, usize), usize> =
        std::collections::HashMap::new();
    let mut cur = w.clone();
    for k in 0..=cap {
        if invariant(&cur) {
            return StepOutcome::Stabilised { steps: k };
        }
        if k == cap {
            return StepOutcome::CapReached;
        }
        let parity = k % 2;
        if let Some(&at) = seen.get(&(cur.clone(), parity)) {
            let mut cycle: Vec<Word> = trail[at..].to_vec();
            cycle.push(cur);
            return StepOutcome::Cycles { cycle };
        }
        seen.insert((cur.clone(), parity), trail.len());
        trail.push(cur.clone());
        let pos = if parity == 0 { first } else { 3 - first };
        cur = step(&cur, pos);
    }
    StepOutcome::CapReached
}

fn aggregate_side(
    stratum: &Stratum,
    cap: usize,
    outcome: impl Fn(&Word) -> StepOutcome + Sync,
) -> SideResult {
    #[derive(Clone)]
    struct Acc {
        max: usize,
        max_at: usize,
        cycle_at: Option<usize>,
        cap_at: Option<usize>,
    }
    let empty = Acc {
        max: 0,
        max_at: usize::MAX,
        cycle_at: None,
        cap_at: None,
    };
    let merge = |a: Acc, b: Acc| Acc {
        max: a.max.max(b.max),
        max_at: if b.max > a.max {
            b.max_at
        } else if a.max_at == usize::MAX {
            b.max_at
        } else {
            a.max_at
        },
        cycle_at: match (a.cycle_at, b.cycle_at) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        },
        cap_at: match (a.cap_at, b.cap_at) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        },
    };
    let acc = (0..stratum.count())
        .into_par_iter()
        .fold(
            || empty.clone(),
            |acc, idx| {
                let w = stratum.word(idx);
                let item = match outcome(&w) {
                    StepOutcome::Stabilised { steps } => Acc {
                        max: steps,
                        max_at: idx,
                        cycle_at: None,
                        cap_at: None,
                    },
                    StepOutcome::Cycles { .. } => Acc {
                        max: 0,
                        max_at: usize::MAX,
                        cycle_at: Some(idx),
                        cap_at: None,
                    },
                    StepOutcome::CapReached => Acc {
                        max: 0,
                        max_at: usize::MAX,
                        cycle_at: None,
                        cap_at: Some(idx),
                    },
                };
                merge(acc, item)
            },
        )
        .reduce(|| empty.clone(), merge);
    if let Some(idx) = acc.cycle_at {
        SideResult {
            class: SideClass::NonNormalising,
            witness: Some(stratum.word(idx)),
            cap,
        }
    } else if let Some(idx) = acc.cap_at {
        SideResult {
            class: SideClass::Capped,
            witness: Some(stratum.word(idx)),
            cap,
        }
    } else {
        SideResult {
            class: SideClass::Finite(acc.max),
            witness: (acc.max_at != usize::MAX).then(|| stratum.word(acc.max_at)),
            cap,
        }
    }
}

/// The minimal class: for each length-three word, the least number of
/// alternating ν̄ applications (from the left and from the right) after
/// which the word is invariant under both positions; maxima over S³.
pub fn minimal_class(map: &QuadMap, cap: usize) -> Result<ClassValue> {
    if let Some((s, t)) = map.idempotency_witness() {
        return Err(Error::NotIdempotent {
            witness: format!(
                "{}.{}",
                map.alphabet().name(s),
                map.alphabet().name(t)
            ),
        });
    }
    let stratum = Stratum::new(map.alphabet().len(), 3);
    let left = aggregate_side(&stratum, cap, |w| {
        stabilisation_steps(map, w, AltStart::Left, cap)
    });
    let right = aggregate_side(&stratum, cap, |w| {
        stabilisation_steps(map, w, AltStart::Right, cap)
    });
    Ok(ClassValue { left, right })
}

/// Window-alternation outcome for one length-p word: each step fully
/// normalises the length-(p-1) window at position 1 or 2.
pub fn p_stabilisation_steps(
    map: &QuadMap,
    w: &Word,
    start: AltStart,
    cap: usize,
) -> Result<StepOutcome> {
    let p = w.len();
    assert!(p >= 3, "p-class requires words of length at least 3");
    let table = window_table(map, p - 1)?;
    Ok(p_stabilisation_with(&table, w, start, cap))
}

fn window_table(map: &QuadMap, window_len: usize) -> Result<NormalFormTable> {
    // delta is the universal recipe once the class-(4,3) axioms hold;
    // otherwise fall back to the exhaustive closure
    if map.axioms_43() && window_len >= 2 {
        return Ok(delta_table(map, window_len));
    }
    normal_form_table(map, window_len)
}

fn delta_table(map: &QuadMap, len: usize) -> NormalFormTable {
    let stratum = Stratum::new(map.alphabet().len(), len);
    let delta = crate::qmap::delta_sequence(len);
    let nfs: Vec<u32> = (0..stratum.count())
        .into_par_iter()
        .map(|idx| {
            let w = stratum.word(idx);
            let nf = map.apply_sequence(&w, &delta).expect("delta positions valid");
            stratum.index(&nf) as u32
        })
        .collect();
    NormalFormTable::from_parts(stratum, nfs)
}

fn p_stabilisation_with(
    table: &NormalFormTable,
    w: &Word,
    start: AltStart,
    cap: usize,
) -> StepOutcome {
    let p = w.len();
    let window = p - 1;
    let apply_window = |word: &Word, pos: usize| -> Word {
        let lo = pos - 1;
        let sub = Word::from_letters(&word.letters()[lo..lo + window]);
        let nf = table.nf(&sub);
        let mut out = word.clone();
        for (k, l) in nf.iter().enumerate() {
            out.set(lo + k, l);
        }
        out
    };
    let invariant = |word: &Word| -> bool {
        (1..=2).all(|pos| {
            let lo = pos - 1;
            let sub = Word::from_letters(&word.letters()[lo..lo + window]);
            table.nf(&sub) == sub
        })
    };
    alternation(w, start, cap, apply_window, invariant)
}

/// The minimal p-class: as `minimal_class`, but each alternation step fully
/// normalises a length-(p-1) window of a length-p word.
pub fn minimal_p_class(map: &QuadMap, p: usize, cap: usize) -> Result<ClassValue> {
    if p < 3 {
        return Err(Error::InvalidParameter(format!(
            "p-class needs p >= 3, got {p}"
        )));
    }
    if let Some((s, t)) = map.idempotency_witness() {
        return Err(Error::NotIdempotent {
            witness: format!(
                "{}.{}",
                map.alphabet().name(s),
                map.alphabet().name(t)
            ),
        });
    }
    let table = window_table(map, p - 1)?;
    let stratum = Stratum::new(map.alphabet().len(), p);
    let left = aggregate_side(&stratum, cap, |w| {
        p_stabilisation_with(&table, w, AltStart::Left, cap)
    });
    let right = aggregate_side(&stratum, cap, |w| {
        p_stabilisation_with(&table, w, AltStart::Right, cap)
    });
    Ok(ClassValue { left, right })
}

/// Result of scanning for a ν-neutral letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeutralDetection {
    pub letter: Option<Letter>,
    pub warnings: Vec<String>,
}

/// Finds the letter e with φ(e,s) = φ(s,e) = (s,e) for every s, if any.
pub fn detect_neutral(map: &QuadMap) -> NeutralDetection {
    let qualifies = |e: Letter| {
        map.alphabet()
            .letters()
            .all(|s| map.image(e, s) == (s, e) && map.image(s, e) == (s, e))
    };
    let candidates: Vec<Letter> = map.alphabet().letters().filter(|&e| qualifies(e)).collect();
    let mut warnings = Vec::new();
    if candidates.len() > 1 {
        warnings.push(format!(
            "{} letters satisfy the neutrality equations; a genuine normalisation admits at most one",
            candidates.len()
        ));
    }
    if candidates.len() == 1 && map.alphabet().len() == 1 {
        warnings.push(
            "degenerate single-letter alphabet: the only letter qualifies formally".into(),
        );
    }
    NeutralDetection {
        letter: candidates.first().copied(),
        warnings,
    }
}

/// Left-weightedness verdict with its honesty flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftWeighted {
    pub holds: bool,
    /// True when every divisibility search was provably complete.
    pub complete: bool,
    /// Pairs (s, t) where s does not left-divide the first entry of φ(s|t).
    pub failures: Vec<(Letter, Letter)>,
}

/// For all e-free s, t with s'|t' = φ(s|t), checks that s left-divides s'.
///
/// Preconditions: the class-(4,3) axioms and a verified neutral.
pub fn check_left_weighted(map: &QuadMap, bound: usize) -> Result<LeftWeighted> {
    if !map.axioms_43() {
        return Err(Error::PreconditionFailed(
            "left-weightedness is only evaluated after the class-(4,3) axioms hold".into(),
        ));
    }
    let e = map.verified_neutral()?;
    let mut holds = true;
    let mut complete = true;
    let mut failures = Vec::new();
    for s in map.alphabet().plain_letters() {
        for t in map.alphabet().plain_letters() {
            let (s2, _t2) = map.image(s, t);
            let x = MonoidElement::from_letter(map, s)?;
            let g = if s2 == e {
                MonoidElement::unit()
            } else {
                MonoidElement::from_letter(map, s2)?
            };
            let d = left_divides(map, &x, &g, bound)?;
            if !d.divides {
                holds = false;
                failures.push((s, t));
                if !d.complete {
                    complete = false;
                }
            }
        }
    }
    Ok(LeftWeighted {
        holds,
        complete,
        failures,
    })
}

/// The assembled analysis of one map.
#[derive(Debug, Clone)]
pub struct ClassReport {
    pub idempotent_phi: bool,
    pub axioms_43: bool,
    pub domino: bool,
    pub minimal_class: Option<ClassValue>,
    pub p_class: Vec<(usize, ClassValue)>,
    pub neutral: Option<Letter>,
    pub neutral_warnings: Vec<String>,
    pub left_weighted: Option<LeftWeighted>,
    pub cap: usize,
}

/// Runs the full analysis: axioms, domino, minimal class, requested
/// p-classes, neutrality, and (when meaningful) left-weightedness.
pub fn class_report(
    map: &QuadMap,
    ps: &[usize],
    cap: usize,
    lw_bound: usize,
) -> ClassReport {
    let idempotent_phi = map.is_idempotent();
    let axioms_43 = idempotent_phi && check_axioms_43(map);
    let domino = check_domino(map);
    let minimal_class = if idempotent_phi {
        minimal_class(map, cap).ok()
    } else {
        None
    };
    let p_class = ps
        .iter()
        .filter_map(|&p| minimal_p_class(map, p, cap).ok().map(|v| (p, v)))
        .collect();
    let detection = detect_neutral(map);
    let left_weighted = if axioms_43 && map.neutral_verified() {
        check_left_weighted(map, lw_bound).ok()
    } else {
        None
    };
    ClassReport {
        idempotent_phi,
        axioms_43,
        domino,
        minimal_class,
        p_class,
        neutral: detection.letter,
        neutral_warnings: detection.warnings,
        left_weighted,
        cap,
    }
}
