//! Shared test oracles, independent of the library's normalisation paths:
//! a Knuth-closure oracle for the plactic monoid and a presentation-closure
//! oracle for monoids with length-preserving relations.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

/// Knuth-equivalence machinery over digit words.
pub mod knuth {
    use super::*;

    /// The Knuth class of a word: closure under xzy ~ zxy (x <= y < z) and
    /// yxz ~ yzx (x < y <= z), applied in both directions anywhere.
    pub fn class(word: &[u8]) -> BTreeSet<Vec<u8>> {
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(2) {
                let (a, b, c) = (w[i], w[i + 1], w[i + 2]);
                let push = |x: u8, y: u8, z: u8, seen: &mut BTreeSet<Vec<u8>>,
                                queue: &mut VecDeque<Vec<u8>>| {
                    let mut v = w.clone();
                    v[i] = x;
                    v[i + 1] = y;
                    v[i + 2] = z;
                    if seen.insert(v.clone()) {
                        queue.push_back(v);
                    }
                };
                // xzy ~ zxy for x <= y < z
                if a <= c && c < b {
                    push(b, a, c, &mut seen, &mut queue);
                }
                if b <= c && c < a {
                    push(b, a, c, &mut seen, &mut queue);
                }
                // yxz ~ yzx for x < y <= z
                if b < a && a <= c {
                    push(a, c, b, &mut seen, &mut queue);
                }
                if c < a && a <= b {
                    push(a, c, b, &mut seen, &mut queue);
                }
            }
        }
        seen
    }

    /// Splits a word into its maximal strictly decreasing runs.
    pub fn decreasing_runs(word: &[u8]) -> Vec<Vec<u8>> {
        let mut runs: Vec<Vec<u8>> = Vec::new();
        for &x in word {
            match runs.last_mut() {
                Some(run) if *run.last().unwrap() > x => run.push(x),
                _ => runs.push(vec![x]),
            }
        }
        runs
    }

    /// The tableau adjacency condition on two columns (strictly decreasing
    /// words): the left column is at least as long, and entries agree level
    /// by level counted from the small end.
    pub fn column_pair_normal(c: &[u8], cp: &[u8]) -> bool {
        if c.len() < cp.len() {
            return false;
        }
        (0..cp.len()).all(|k| c[c.len() - 1 - k] <= cp[cp.len() - 1 - k])
    }

    pub fn is_tableau_word(word: &[u8]) -> bool {
        let runs = decreasing_runs(word);
        runs.windows(2).all(|p| column_pair_normal(&p[0], &p[1]))
    }

    /// The unique tableau word in the Knuth class of `word`; asserts
    /// uniqueness, which is the point of the construction.
    pub fn tableau_word(word: &[u8]) -> Vec<u8> {
        let members: Vec<Vec<u8>> = class(word)
            .into_iter()
            .filter(|w| is_tableau_word(w))
            .collect();
        assert_eq!(
            members.len(),
            1,
            "Knuth class of {word:?} must contain exactly one tableau word, got {members:?}"
        );
        members.into_iter().next().unwrap()
    }

    /// The tableau columns of the product of two columns, via the closure.
    pub fn product_columns(c: &[u8], cp: &[u8]) -> Vec<Vec<u8>> {
        let mut word = c.to_vec();
        word.extend_from_slice(cp);
        decreasing_runs(&tableau_word(&word))
    }
}

/// A finitely presented monoid with length-preserving relations,
/// materialised as congruence classes of words up to a degree bound.
pub struct PresentedMonoid {
    gen_count: usize,
    max_len: usize,
    class_of: HashMap<Vec<u8>, u32>,
    members: Vec<Vec<Vec<u8>>>,
}

/// Advances `word` like an odometer over `n` symbols; false on wrap.
fn next_word(word: &mut [u8], n: u8) -> bool {
    for k in (0..word.len()).rev() {
        if word[k] + 1 < n {
            word[k] += 1;
            for x in &mut word[k + 1..] {
                *x = 0;
            }
            return true;
        }
        word[k] = 0;
    }
    false
}

impl PresentedMonoid {
    pub fn new(gen_count: usize, relations: &[(Vec<u8>, Vec<u8>)], max_len: usize) -> Self {
        for (l, r) in relations {
            assert_eq!(l.len(), r.len(), "relations must preserve length");
        }
        let mut class_of: HashMap<Vec<u8>, u32> = HashMap::new();
        let mut members: Vec<Vec<Vec<u8>>> = Vec::new();
        for len in 0..=max_len {
            let mut word = vec![0u8; len];
            loop {
                if !class_of.contains_key(&word) {
                    let cid = members.len() as u32;
                    let mut comp = Vec::new();
                    let mut queue = VecDeque::new();
                    class_of.insert(word.clone(), cid);
                    queue.push_back(word.clone());
                    while let Some(w) = queue.pop_front() {
                        comp.push(w.clone());
                        for (l, r) in relations {
                            for (a, b) in [(l, r), (r, l)] {
                                for i in 0..w.len().saturating_sub(a.len() - 1) {
                                    if &w[i..i + a.len()] == a.as_slice() {
                                        let mut v = w.clone();
                                        v[i..i + b.len()].copy_from_slice(b);
                                        if !class_of.contains_key(&v) {
                                            class_of.insert(v.clone(), cid);
                                            queue.push_back(v);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    comp.sort();
                    members.push(comp);
                }
                if !next_word(&mut word, gen_count as u8) {
                    break;
                }
            }
        }
        PresentedMonoid {
            gen_count,
            max_len,
            class_of,
            members,
        }
    }

    pub fn cls(&self, w: &[u8]) -> u32 {
        *self
            .class_of
            .get(w)
            .unwrap_or_else(|| panic!("word {w:?} beyond the bound"))
    }

    pub fn rep(&self, c: u32) -> &[u8] {
        &self.members[c as usize][0]
    }

    pub fn deg(&self, c: u32) -> usize {
        self.rep(c).len()
    }

    pub fn equivalent(&self, a: &[u8], b: &[u8]) -> bool {
        self.cls(a) == self.cls(b)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut w = self.rep(a).to_vec();
        w.extend_from_slice(self.rep(b));
        self.cls(&w)
    }

    pub fn classes_of_degree(&self, d: usize) -> Vec<u32> {
        (0..self.members.len() as u32)
            .filter(|&c| self.deg(c) == d)
            .collect()
    }

    pub fn left_divides(&self, a: u32, g: u32) -> bool {
        let (da, dg) = (self.deg(a), self.deg(g));
        if da > dg {
            return false;
        }
        let mut h = vec![0u8; dg - da];
        loop {
            let mut w = self.rep(a).to_vec();
            w.extend_from_slice(&h);
            if self.cls(&w) == g {
                return true;
            }
            if !next_word(&mut h, self.gen_count as u8) {
                return false;
            }
        }
    }

    pub fn right_divisor_classes(&self, c: u32) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for m in &self.members[c as usize] {
            for i in 0..=m.len() {
                out.insert(self.cls(&m[i..]));
            }
        }
        out
    }

    /// The maximal element of `simples` left-dividing g; panics when no
    /// maximum exists (i.e. the family is not behaving like a Garside one).
    pub fn head(&self, simples: &[u32], g: u32) -> u32 {
        let divisors: Vec<u32> = simples
            .iter()
            .copied()
            .filter(|&s| self.left_divides(s, g))
            .collect();
        for &s in &divisors {
            if divisors.iter().all(|&t| self.left_divides(t, s)) {
                return s;
            }
        }
        panic!("no maximal simple divisor for class {g}");
    }

    /// The unique complement h with a·h = g.
    pub fn complement(&self, a: u32, g: u32) -> u32 {
        let d = self.deg(g) - self.deg(a);
        let found: Vec<u32> = self
            .classes_of_degree(d)
            .into_iter()
            .filter(|&h| self.mul(a, h) == g)
            .collect();
        assert_eq!(found.len(), 1, "complement of {a} in {g} not unique");
        found[0]
    }

    /// The greedy decomposition of g over the simples.
    pub fn greedy_decomposition(&self, simples: &[u32], g: u32) -> Vec<u32> {
        let unit = self.cls(&[]);
        let mut out = Vec::new();
        let mut cur = g;
        while cur != unit {
            let h = self.head(simples, cur);
            out.push(h);
            cur = self.complement(h, cur);
        }
        out
    }
}

/// The braid monoid on two generators a, b with aba = bab.
pub fn braid_b3(max_len: usize) -> PresentedMonoid {
    PresentedMonoid::new(2, &[(vec![0, 1, 0], vec![1, 0, 1])], max_len)
}

/// The Artin-Tits monoid on three generators with all three braid
/// relations.
pub fn artin_a2t(max_len: usize) -> PresentedMonoid {
    let rel = vec![
        (vec![0, 1, 0], vec![1, 0, 1]),
        (vec![1, 2, 1], vec![2, 1, 2]),
        (vec![0, 2, 0], vec![2, 0, 2]),
    ];
    PresentedMonoid::new(3, &rel, max_len)
}

/// The Chinese monoid on three generators: zyx = zxy = yzx for x <= y <= z.
pub fn chinese3(max_len: usize) -> PresentedMonoid {
    let mut rel = Vec::new();
    for u in 0u8..3 {
        for v in u..3 {
            for w in v..3 {
                rel.push((vec![w, v, u], vec![w, u, v]));
                rel.push((vec![w, v, u], vec![v, w, u]));
            }
        }
    }
    PresentedMonoid::new(3, &rel, max_len)
}

/// Packed normal-form tables used by the exhaustive sweeps.
pub mod sweep {
    use qnorm_core::enumerate::Stratum;
    use qnorm_core::qmap::{delta_sequence, QuadMap};
    use qnorm_core::rewriting::normal_form_table;
    use rayon::prelude::*;

    /// Per-length tables of delta-strategy normal forms, as packed indices.
    pub fn delta_tables(map: &QuadMap, max_len: usize) -> Vec<Vec<u32>> {
        (0..=max_len)
            .map(|l| {
                let st = Stratum::new(map.alphabet().len(), l);
                if l < 2 {
                    return (0..st.count() as u32).collect();
                }
                let delta = delta_sequence(l);
                (0..st.count())
                    .into_par_iter()
                    .map(|i| {
                        let w = st.word(i);
                        let nf = map.apply_sequence(&w, &delta).unwrap();
                        st.index(&nf) as u32
                    })
                    .collect()
            })
            .collect()
    }

    /// Per-length tables of exhaustive-closure normal forms.
    pub fn exhaustive_tables(
        map: &QuadMap,
        max_len: usize,
    ) -> qnorm_core::Result<Vec<Vec<u32>>> {
        (0..=max_len)
            .map(|l| {
                let st = Stratum::new(map.alphabet().len(), l);
                if l < 2 {
                    return Ok((0..st.count() as u32).collect());
                }
                let table = normal_form_table(map, l)?;
                Ok((0..st.count()).map(|i| table.nf_index(i) as u32).collect())
            })
            .collect()
    }
}

/// Row-reading variants of the tableau-word machinery.
pub mod knuth_rows {
    use super::knuth;

    pub fn nondecreasing_runs(word: &[u8]) -> Vec<Vec<u8>> {
        let mut runs: Vec<Vec<u8>> = Vec::new();
        for &x in word {
            match runs.last_mut() {
                Some(run) if *run.last().unwrap() <= x => run.push(x),
                _ => runs.push(vec![x]),
            }
        }
        runs
    }

    pub fn row_pair_normal(r: &[u8], rp: &[u8]) -> bool {
        r.len() <= rp.len() && (0..r.len()).all(|k| r[k] > rp[k])
    }

    pub fn is_row_tableau_word(word: &[u8]) -> bool {
        let runs = nondecreasing_runs(word);
        runs.windows(2).all(|p| row_pair_normal(&p[0], &p[1]))
    }

    /// The unique row-reading word in the Knuth class.
    pub fn row_tableau_word(word: &[u8]) -> Vec<u8> {
        let members: Vec<Vec<u8>> = knuth::class(word)
            .into_iter()
            .filter(|w| is_row_tableau_word(w))
            .collect();
        assert_eq!(members.len(), 1, "row word of {word:?}: {members:?}");
        members.into_iter().next().unwrap()
    }

    pub fn product_rows(r: &[u8], rp: &[u8]) -> Vec<Vec<u8>> {
        let mut word = r.to_vec();
        word.extend_from_slice(rp);
        nondecreasing_runs(&row_tableau_word(&word))
    }
}
