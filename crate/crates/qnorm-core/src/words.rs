//! Alphabets, words over an alphabet, position sequences, and the padding /
//! projection helpers for alphabets with a neutral letter.
//!
//! Letters are interned to small integer indices at alphabet construction;
//! every word operation works on indices. Words are immutable values and all
//! operations return fresh words, so they can be shared freely across
//! threads and used as map keys.

use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// An interned letter: an index into its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite ordered set of named letters, with an optional neutral letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
    neutral: Option<Letter>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = letters.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), Letter(i as u16)).is_some() {
                return Err(Error::DuplicateLetter(name.clone()));
            }
        }
        Ok(Alphabet {
            names,
            index,
            neutral: None,
        })
    }

    pub fn with_neutral<I, S>(letters: I, neutral: &str) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut a = Self::new(letters)?;
        let e = a.letter(neutral)?;
        a.neutral = Some(e);
        Ok(a)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.names.len() as u16).map(Letter)
    }

    /// Letters other than the neutral, if one is declared.
    pub fn plain_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.letters().filter(move |l| Some(*l) != self.neutral)
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(name.to_string()))
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn neutral(&self) -> Option<Letter> {
        self.neutral
    }

    /// Parses a dot-separated word such as `a.b.c`. The empty string is the
    /// empty word.
    pub fn parse_word(&self, dotted: &str) -> Result<Word> {
        if dotted.is_empty() {
            return Ok(Word::empty());
        }
        dotted
            .split('.')
            .map(|name| self.letter(name))
            .collect::<Result<_>>()
    }

    /// Renders a word as dot-separated letter names.
    pub fn render(&self, word: &Word) -> String {
        word.iter()
            .map(|l| self.name(l))
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// A finite sequence of letters of some alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    entries: SmallVec<[Letter; 8]>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            entries: SmallVec::new(),
        }
    }

    pub fn single(letter: Letter) -> Self {
        let mut entries = SmallVec::new();
        entries.push(letter);
        Word { entries }
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word {
            entries: SmallVec::from_slice(letters),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Letter> {
        self.entries.get(i).copied()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.entries.iter().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Word { entries }
    }

    pub fn push(&mut self, letter: Letter) {
        self.entries.push(letter);
    }

    pub(crate) fn set(&mut self, i: usize, letter: Letter) {
        self.entries[i] = letter;
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.entries.contains(&letter)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word {
            entries: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.iter()
                .map(|l| l.0.to_string())
                .collect::<Vec<_>>()
                .join(".")
        )
    }
}

/// A sequence of 1-based factor start positions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PositionSequence(Vec<usize>);

impl PositionSequence {
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = positions.iter().find(|&&p| p == 0) {
            return Err(Error::OutOfRange { pos: bad, len: 0 });
        }
        Ok(PositionSequence(positions))
    }

    pub fn empty() -> Self {
        PositionSequence(Vec::new())
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a single position.
    pub fn then(mut self, pos: usize) -> Self {
        self.0.push(pos);
        self
    }
}

impl fmt::Display for PositionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(".")
        )
    }
}

/// Extracts the length-`len` factor of `w` starting at 1-based position `i`.
pub fn factor(w: &Word, i: usize, len: usize) -> Result<Word> {
    if i < 1 || i + len - 1 > w.len() {
        return Err(Error::FactorOutOfRange {
            start: i,
            len,
            word_len: w.len(),
        });
    }
    Ok(Word::from_letters(&w.letters()[i - 1..i - 1 + len]))
}

/// The canonical projection removing every occurrence of the neutral letter.
pub fn pad_projection(w: &Word, alphabet: &Alphabet) -> Result<Word> {
    let e = alphabet.neutral().ok_or(Error::NoNeutral)?;
    Ok(w.iter().filter(|&l| l != e).collect())
}

/// Appends `m` copies of the padding letter `e`.
pub fn append_padding(w: &Word, m: usize, e: Letter) -> Word {
    let mut out = w.clone();
    for _ in 0..m {
        out.push(e);
    }
    out
}
