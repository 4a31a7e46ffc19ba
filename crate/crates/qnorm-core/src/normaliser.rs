//! The full normalisation map built from φ, with three strategies; mod-e
//! normal forms; and the monoid of normal-form representatives with
//! multiplication by concatenate-then-normalise-then-project.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::qmap::{delta_sequence, QuadMap};
use crate::words::{pad_projection, Letter, Word};

/// How to drive the length-two map to a normal word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Apply the universal sequence δ_p. Only valid once the class-(4,3)
    /// axioms have been verified.
    Delta,
    /// Repeatedly rewrite the leftmost non-invariant length-two factor.
    Leftmost,
    /// Breadth-first closure under all positional applications; the word's
    /// component must contain exactly one invariant word.
    Exhaustive,
}

/// One past the Theorem-B bound for a length-p word, so a legitimate
/// class-(4,3) run is never truncated.
pub fn default_step_budget(p: usize) -> usize {
    if p >= usize::BITS as usize - 1 {
        return usize::MAX;
    }
    (1usize << p).saturating_sub(p + 1) + 1
}

pub fn normalize(map: &QuadMap, w: &Word, strategy: Strategy) -> Result<Word> {
    normalize_with_budget(map, w, strategy, None)
}

pub fn normalize_with_budget(
    map: &QuadMap,
    w: &Word,
    strategy: Strategy,
    budget: Option<usize>,
) -> Result<Word> {
    let budget = budget.unwrap_or_else(|| default_step_budget(w.len()));
    match strategy {
        Strategy::Delta => {
            if !map.axioms_43() {
                return Err(Error::AxiomsNotSatisfied);
            }
            if w.len() < 2 {
                return Ok(w.clone());
            }
            map.apply_sequence(w, &delta_sequence(w.len()))
        }
        Strategy::Leftmost => leftmost(map, w, budget),
        Strategy::Exhaustive => exhaustive(map, w, budget),
    }
}

fn leftmost(map: &QuadMap, w: &Word, budget: usize) -> Result<Word> {
    let mut cur = w.clone();
    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(cur.clone());
    for _ in 0..budget {
        let Some(i0) = (0..cur.len().saturating_sub(1))
            .find(|&i0| !map.pair_invariant(cur.get(i0).unwrap(), cur.get(i0 + 1).unwrap()))
        else {
            return Ok(cur);
        };
        map.apply_at_unchecked(&mut cur, i0);
        if !seen.insert(cur.clone()) {
            return Err(Error::StrategyCycle {
                strategy: "leftmost".into(),
                witness: map.alphabet().render(w),
            });
        }
    }
    if map.is_phi_invariant(&cur) {
        Ok(cur)
    } else {
        Err(Error::BudgetExceeded {
            budget,
            witness: map.alphabet().render(w),
        })
    }
}

fn exhaustive(map: &QuadMap, w: &Word, budget: usize) -> Result<Word> {
    let mut seen: HashMap<Word, usize> = HashMap::new();
    let mut order: Vec<Word> = vec![w.clone()];
    seen.insert(w.clone(), 0);
    let mut frontier = vec![0usize];
    let mut normals: Vec<Word> = Vec::new();
    if map.is_phi_invariant(w) {
        return Ok(w.clone());
    }
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth == budget {
            return Err(Error::BudgetExceeded {
                budget,
                witness: map.alphabet().render(w),
            });
        }
        depth += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            let word = order[v].clone();
            for i0 in 0..word.len().saturating_sub(1) {
                let (s, t) = (word.get(i0).unwrap(), word.get(i0 + 1).unwrap());
                if map.pair_invariant(s, t) {
                    continue;
                }
                let mut u = word.clone();
                map.apply_at_unchecked(&mut u, i0);
                if !seen.contains_key(&u) {
                    let id = order.len();
                    seen.insert(u.clone(), id);
                    if map.is_phi_invariant(&u) {
                        normals.push(u.clone());
                    } else {
                        next.push(id);
                    }
                    order.push(u);
                }
            }
        }
        frontier = next;
    }
    match normals.len() {
        1 => Ok(normals.pop().unwrap()),
        0 => {
            let cycle = find_cycle(map, w);
            Err(Error::NotNormalising {
                witness: map.alphabet().render(w),
                cycle,
            })
        }
        _ => {
            normals.sort();
            Err(Error::NotConfluent {
                witness: map.alphabet().render(w),
                first: map.alphabet().render(&normals[0]),
                second: map.alphabet().render(&normals[1]),
            })
        }
    }
}

fn find_cycle(map: &QuadMap, start: &Word) -> Vec<String> {
    // the component has no normal word, so following any non-invariant
    // position from each word must eventually repeat
    let mut trail: Vec<Word> = vec![start.clone()];
    let mut at: HashMap<Word, usize> = HashMap::new();
    at.insert(start.clone(), 0);
    let mut cur = start.clone();
    loop {
        let Some(i0) = (0..cur.len().saturating_sub(1))
            .find(|&i0| !map.pair_invariant(cur.get(i0).unwrap(), cur.get(i0 + 1).unwrap()))
        else {
            return Vec::new();
        };
        let mut next = cur.clone();
        map.apply_at_unchecked(&mut next, i0);
        if let Some(&k) = at.get(&next) {
            let mut cycle: Vec<String> =
                trail[k..].iter().map(|u| map.alphabet().render(u)).collect();
            cycle.push(map.alphabet().render(&next));
            return cycle;
        }
        at.insert(next.clone(), trail.len());
        trail.push(next.clone());
        cur = next;
    }
}

/// The geodesic normal form of the element represented by an e-free word:
/// π_e of the normalisation. Requires a verified neutral.
pub fn normalize_mod_e(map: &QuadMap, w: &Word) -> Result<Word> {
    let e = map.verified_neutral()?;
    if w.contains(e) {
        return Err(Error::NotEFree(map.alphabet().render(w)));
    }
    let strategy = if map.axioms_43() {
        Strategy::Delta
    } else {
        Strategy::Exhaustive
    };
    let nf = normalize(map, w, strategy)?;
    pad_projection(&nf, map.alphabet())
}

/// The normal form defining a monoid element: mod-e when a neutral is
/// declared, plain otherwise (the graded case).
fn element_nf(map: &QuadMap, w: &Word) -> Result<Word> {
    if map.alphabet().neutral().is_some() {
        normalize_mod_e(map, w)
    } else {
        let strategy = if map.axioms_43() {
            Strategy::Delta
        } else {
            Strategy::Exhaustive
        };
        normalize(map, w, strategy)
    }
}

/// An element of the monoid presented by the normalisation, represented by
/// its unique e-free normal word. Equality is normal-form equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement {
    nf: Word,
}

impl MonoidElement {
    pub fn new(map: &QuadMap, w: &Word) -> Result<Self> {
        Ok(MonoidElement {
            nf: element_nf(map, w)?,
        })
    }

    pub fn unit() -> Self {
        MonoidElement { nf: Word::empty() }
    }

    pub fn from_letter(map: &QuadMap, l: Letter) -> Result<Self> {
        Self::new(map, &Word::single(l))
    }

    /// Wraps a word already known to be an e-free normal word.
    pub fn from_normal_word(nf: Word) -> Self {
        MonoidElement { nf }
    }

    pub fn nf(&self) -> &Word {
        &self.nf
    }

    pub fn degree(&self) -> usize {
        self.nf.len()
    }

    pub fn is_unit(&self) -> bool {
        self.nf.is_empty()
    }
}

/// nf(x) · nf(y), normalised and projected.
pub fn multiply(map: &QuadMap, x: &MonoidElement, y: &MonoidElement) -> Result<MonoidElement> {
    MonoidElement::new(map, &x.nf.concat(&y.nf))
}

/// Outcome of a bounded left-divisibility search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisibility {
    pub divides: bool,
    /// Whether a negative answer is definitive: either a witness was found,
    /// or the monoid is graded and the bound covers every possible cofactor.
    pub complete: bool,
    pub witness: Option<MonoidElement>,
}

/// Letter-count grading holds when no relation shortens a word: without a
/// neutral this is automatic; with one, no e-free pair may map into e.
pub fn is_letter_graded(map: &QuadMap) -> bool {
    match map.alphabet().neutral() {
        None => true,
        Some(e) => map.alphabet().plain_letters().all(|s| {
            map.alphabet().plain_letters().all(|t| {
                let (s2, t2) = map.image(s, t);
                s2 != e && t2 != e
            })
        }),
    }
}

/// Does x left-divide g, searching cofactors h with ‖nf(h)‖ ≤ bound?
pub fn left_divides(
    map: &QuadMap,
    x: &MonoidElement,
    g: &MonoidElement,
    bound: usize,
) -> Result<Divisibility> {
    if x == g {
        return Ok(Divisibility {
            divides: true,
            complete: true,
            witness: Some(MonoidElement::unit()),
        });
    }
    let graded = is_letter_graded(map);
    if graded {
        // cofactor degree is forced; outside the bound the search is moot
        if g.degree() < x.degree() {
            return Ok(Divisibility {
                divides: false,
                complete: true,
                witness: None,
            });
        }
        let need = g.degree() - x.degree();
        if need > bound {
            return Ok(Divisibility {
                divides: false,
                complete: false,
                witness: None,
            });
        }
        for h in invariant_words(map, need, true) {
            let cand = MonoidElement::from_normal_word(h);
            if multiply(map, x, &cand)? == *g {
                return Ok(Divisibility {
                    divides: true,
                    complete: true,
                    witness: Some(cand),
                });
            }
        }
        return Ok(Divisibility {
            divides: false,
            complete: true,
            witness: None,
        });
    }
    for len in 0..=bound {
        for h in invariant_words(map, len, true) {
            let cand = MonoidElement::from_normal_word(h);
            if multiply(map, x, &cand)? == *g {
                return Ok(Divisibility {
                    divides: true,
                    complete: true,
                    witness: Some(cand),
                });
            }
        }
    }
    Ok(Divisibility {
        divides: false,
        complete: false,
        witness: None,
    })
}

/// All φ-invariant words of exactly the given length, in lexicographic
/// order; optionally restricted to e-free letters. Grown letter-by-letter:
/// invariance only constrains adjacent pairs, so invariant words are
/// prefix-closed.
pub fn invariant_words(map: &QuadMap, len: usize, e_free: bool) -> Vec<Word> {
    let letters: Vec<Letter> = if e_free {
        map.alphabet().plain_letters().collect()
    } else {
        map.alphabet().letters().collect()
    };
    let mut current = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &current {
            for &l in &letters {
                match w.letters().last() {
                    Some(&last) if !map.pair_invariant(last, l) => continue,
                    _ => {}
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        current = next;
    }
    current
}

/// All monoid elements of degree at most `max_degree` (their normal words).
pub fn elements_up_to(map: &QuadMap, max_degree: usize) -> Vec<MonoidElement> {
    let mut out = Vec::new();
    for len in 0..=max_degree {
        out.extend(
            invariant_words(map, len, true)
                .into_iter()
                .map(MonoidElement::from_normal_word),
        );
    }
    out
}
