//! The length-two restriction map φ of a quadratic normalisation: a total
//! table on pairs of letters, applied at positions inside words, together
//! with the universal δ position sequences and the alternating sequences
//! used to measure the class.

use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, PositionSequence, Word};

/// A total map S x S -> S x S, stored as a dense |S|^2 table.
///
/// Immutable after construction. Idempotency is *not* assumed here; it is
/// diagnosed by the analysis module so that bad inputs can be reported
/// rather than rejected at parse time.
#[derive(Debug)]
pub struct QuadMap {
    alphabet: Alphabet,
    table: Vec<(Letter, Letter)>,
    axioms_43: OnceLock<bool>,
    neutral_verified: OnceLock<bool>,
}

impl Clone for QuadMap {
    fn clone(&self) -> Self {
        QuadMap {
            alphabet: self.alphabet.clone(),
            table: self.table.clone(),
            axioms_43: OnceLock::new(),
            neutral_verified: OnceLock::new(),
        }
    }
}

impl PartialEq for QuadMap {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.table == other.table
    }
}

impl QuadMap {
    /// The identity map: every pair is invariant (free monoid).
    pub fn identity(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        let mut table = Vec::with_capacity(n * n);
        for s in 0..n as u16 {
            for t in 0..n as u16 {
                table.push((Letter(s), Letter(t)));
            }
        }
        QuadMap {
            alphabet,
            table,
            axioms_43: OnceLock::new(),
            neutral_verified: OnceLock::new(),
        }
    }

    /// Builds from a list of non-identity entries; unlisted pairs default to
    /// the identity. Duplicate input pairs are rejected.
    pub fn from_entries(
        alphabet: Alphabet,
        entries: &[((Letter, Letter), (Letter, Letter))],
    ) -> Result<Self> {
        let mut map = Self::identity(alphabet);
        let n = map.alphabet.len();
        let mut seen = vec![false; n * n];
        for &((s, t), (s2, t2)) in entries {
            for l in [s, t, s2, t2] {
                if l.index() >= n {
                    return Err(Error::OutOfRange {
                        pos: l.index(),
                        len: n,
                    });
                }
            }
            let idx = s.index() * n + t.index();
            if seen[idx] {
                return Err(Error::Parse(format!(
                    "duplicate phi entry for ({}, {})",
                    map.alphabet.name(s),
                    map.alphabet.name(t)
                )));
            }
            seen[idx] = true;
            map.table[idx] = (s2, t2);
        }
        Ok(map)
    }

    /// Builds from named entries, e.g. `[(("b","a"),("a","b"))]`.
    pub fn from_named_entries(
        alphabet: Alphabet,
        entries: &[((&str, &str), (&str, &str))],
    ) -> Result<Self> {
        let resolved = entries
            .iter()
            .map(|((a, b), (c, d))| {
                Ok((
                    (alphabet.letter(a)?, alphabet.letter(b)?),
                    (alphabet.letter(c)?, alphabet.letter(d)?),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(alphabet, &resolved)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The image of the pair (s, t).
    pub fn image(&self, s: Letter, t: Letter) -> (Letter, Letter) {
        self.table[s.index() * self.alphabet.len() + t.index()]
    }

    pub fn pair_invariant(&self, s: Letter, t: Letter) -> bool {
        self.image(s, t) == (s, t)
    }

    /// Applies φ to the entries at 1-based positions i, i+1.
    pub fn apply_at(&self, w: &Word, i: usize) -> Result<Word> {
        if i < 1 || i + 1 > w.len() {
            return Err(Error::OutOfRange {
                pos: i,
                len: w.len(),
            });
        }
        let mut out = w.clone();
        self.apply_at_unchecked(&mut out, i - 1);
        Ok(out)
    }

    /// In-place application at 0-based position `i0`; bounds must hold.
    pub(crate) fn apply_at_unchecked(&self, w: &mut Word, i0: usize) {
        let (s, t) = (w.get(i0).unwrap(), w.get(i0 + 1).unwrap());
        let (s2, t2) = self.image(s, t);
        w.set(i0, s2);
        w.set(i0 + 1, t2);
    }

    /// Left-to-right composition of `apply_at` along the sequence.
    pub fn apply_sequence(&self, w: &Word, seq: &PositionSequence) -> Result<Word> {
        let mut out = w.clone();
        for &i in seq.positions() {
            if i < 1 || i + 1 > out.len() {
                return Err(Error::OutOfRange {
                    pos: i,
                    len: out.len(),
                });
            }
            self.apply_at_unchecked(&mut out, i - 1);
        }
        Ok(out)
    }

    /// True iff every length-two factor of `w` is fixed by φ. Words of
    /// length at most one are invariant.
    pub fn is_phi_invariant(&self, w: &Word) -> bool {
        w.letters()
            .windows(2)
            .all(|p| self.pair_invariant(p[0], p[1]))
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotency_witness().is_none()
    }

    /// A pair on which φ(φ(s,t)) differs from φ(s,t), if any.
    pub fn idempotency_witness(&self) -> Option<(Letter, Letter)> {
        for s in self.alphabet.letters() {
            for t in self.alphabet.letters() {
                let (s2, t2) = self.image(s, t);
                if self.image(s2, t2) != (s2, t2) {
                    return Some((s, t));
                }
            }
        }
        None
    }

    /// Cached Theorem-A axiom check; see `analysis::check_axioms_43`.
    pub fn axioms_43(&self) -> bool {
        *self
            .axioms_43
            .get_or_init(|| crate::analysis::check_axioms_43(self))
    }

    /// Cached check that the declared neutral satisfies the neutrality
    /// equations φ(e,s) = φ(s,e) = (s,e).
    pub fn neutral_verified(&self) -> bool {
        *self.neutral_verified.get_or_init(|| {
            let Some(e) = self.alphabet.neutral() else {
                return false;
            };
            self.alphabet
                .letters()
                .all(|s| self.image(e, s) == (s, e) && self.image(s, e) == (s, e))
        })
    }

    /// The verified neutral letter, or an error describing what failed.
    pub fn verified_neutral(&self) -> Result<Letter> {
        let e = self.alphabet.neutral().ok_or(Error::NoNeutral)?;
        if self.neutral_verified() {
            Ok(e)
        } else {
            Err(Error::NeutralNotVerified(
                self.alphabet.name(e).to_string(),
            ))
        }
    }
}

/// Which end an alternating position sequence starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltStart {
    /// 1 2 1 2 ...
    Left,
    /// 2 1 2 1 ...
    Right,
}

/// An alternating sequence `121...` or `212...` of a given length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternatingKind {
    pub start: AltStart,
    pub length: usize,
}

pub fn alternating_sequence(kind: AlternatingKind) -> PositionSequence {
    let first = match kind.start {
        AltStart::Left => 1,
        AltStart::Right => 2,
    };
    PositionSequence::new(
        (0..kind.length)
            .map(|k| if k % 2 == 0 { first } else { 3 - first })
            .collect(),
    )
    .expect("positions are 1 or 2")
}

static DELTA_CACHE: OnceLock<Mutex<Vec<Vec<usize>>>> = OnceLock::new();

/// The universal sequence δ_p, defined by δ_1 = ε and
/// δ_p = sh(δ_{p-1}) · 1 · 2 · ... · (p-1). Its length is p(p-1)/2.
///
/// Computed iteratively with an explicit shift and memoised per p.
pub fn delta_sequence(p: usize) -> PositionSequence {
    assert!(p >= 1, "delta_sequence requires p >= 1");
    let cache = DELTA_CACHE.get_or_init(|| Mutex::new(vec![Vec::new()]));
    let mut cache = cache.lock().unwrap();
    while cache.len() < p {
        let q = cache.len() + 1; // building delta_q from delta_{q-1}
        let mut next: Vec<usize> = cache[q - 2].iter().map(|i| i + 1).collect();
        next.extend(1..q);
        cache.push(next);
    }
    PositionSequence::new(cache[p - 1].clone()).expect("delta entries are positive")
}
