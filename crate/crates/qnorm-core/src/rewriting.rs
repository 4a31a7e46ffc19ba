//! The rewriting system attached to a length-two map: rule extraction (plain
//! and mod-e), bounded-exhaustive exploration of the rewrite relation,
//! termination / normalisation / confluence classification, and longest
//! rewriting sequences.
//!
//! Exploration is breadth-first with a visited set keyed by whole words;
//! classification runs over the dense space of all words up to a length
//! bound, using Tarjan's algorithm so that cyclic systems (which may still
//! be normalising) are handled exactly. Cycle witnesses are the first back
//! edge found in a depth-first sweep with roots and successors in
//! enumeration order, so diagnostics are reproducible given the letter
//! order.

use std::collections::HashMap;

use crate::enumerate::{Space, Stratum};
use crate::error::{Error, Result};
use crate::qmap::QuadMap;
use crate::words::{pad_projection, Alphabet, Letter, Word};

/// One quadratic rule: a non-invariant pair and its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: (Letter, Letter),
    /// Two letters for plain systems; length 0..=2 after e-projection in
    /// the mod-e variant.
    pub rhs: Word,
}

/// A reduced quadratic rule set extracted from a map.
#[derive(Debug, Clone)]
pub struct RuleSet {
    alphabet: Alphabet,
    mod_e: bool,
    rules: Vec<Rule>,
    by_pair: Vec<Option<u32>>,
}

impl RuleSet {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn is_mod_e(&self) -> bool {
        self.mod_e
    }

    pub fn rule_for(&self, s: Letter, t: Letter) -> Option<&Rule> {
        self.by_pair[s.index() * self.alphabet.len() + t.index()]
            .map(|i| &self.rules[i as usize])
    }

    /// Applies the rule matching at 0-based position `i0`, if any.
    pub fn rewrite_at(&self, w: &Word, i0: usize) -> Option<Word> {
        let (s, t) = (w.get(i0)?, w.get(i0 + 1)?);
        let rule = self.rule_for(s, t)?;
        let mut out = Word::from_letters(&w.letters()[..i0]);
        for l in rule.rhs.iter() {
            out.push(l);
        }
        for &l in &w.letters()[i0 + 2..] {
            out.push(l);
        }
        Some(out)
    }

    /// All single-step rewrites, labelled by 1-based position.
    pub fn successors(&self, w: &Word) -> Vec<(usize, Word)> {
        (0..w.len().saturating_sub(1))
            .filter_map(|i0| self.rewrite_at(w, i0).map(|v| (i0 + 1, v)))
            .collect()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        w.letters()
            .windows(2)
            .all(|p| self.rule_for(p[0], p[1]).is_none())
    }

    /// Reducedness: every right-hand side is normal, and no left-hand side
    /// is rewritten by a different rule (automatic for one rule per pair).
    pub fn is_reduced(&self) -> bool {
        self.rules
            .iter()
            .all(|r| self.is_normal(&r.rhs) && Word::from_letters(&[r.lhs.0, r.lhs.1]) != r.rhs)
    }
}

/// Extracts the rule set of a map: one rule `s|t -> φ(s|t)` per
/// non-invariant pair. In the mod-e variant the left-hand sides range over
/// the e-free letters and the right-hand sides are e-projected; this
/// requires a verified neutral.
pub fn extract_rules(map: &QuadMap, mod_e: bool) -> Result<RuleSet> {
    let alphabet = map.alphabet().clone();
    let n = alphabet.len();
    let mut rules = Vec::new();
    let mut by_pair = vec![None; n * n];
    if mod_e {
        map.verified_neutral()?;
        for s in alphabet.plain_letters() {
            for t in alphabet.plain_letters() {
                let (s2, t2) = map.image(s, t);
                if (s2, t2) == (s, t) {
                    continue;
                }
                let rhs =
                    pad_projection(&Word::from_letters(&[s2, t2]), &alphabet)?;
                by_pair[s.index() * n + t.index()] = Some(rules.len() as u32);
                rules.push(Rule { lhs: (s, t), rhs });
            }
        }
    } else {
        for s in alphabet.letters() {
            for t in alphabet.letters() {
                let (s2, t2) = map.image(s, t);
                if (s2, t2) == (s, t) {
                    continue;
                }
                by_pair[s.index() * n + t.index()] = Some(rules.len() as u32);
                rules.push(Rule {
                    lhs: (s, t),
                    rhs: Word::from_letters(&[s2, t2]),
                });
            }
        }
    }
    Ok(RuleSet {
        alphabet,
        mod_e,
        rules,
        by_pair,
    })
}

/// Per-SCC summary of which normal words are reachable.
#[derive(Debug, Clone, Copy, Default)]
struct NfSet {
    count: u8, // saturates at 2
    first: u32,
    second: u32,
}

impl NfSet {
    fn add(&mut self, nf: u32) {
        match self.count {
            0 => {
                self.first = nf;
                self.count = 1;
            }
            1 if self.first != nf => {
                self.second = nf;
                self.count = 2;
            }
            _ => {}
        }
    }

    fn merge(&mut self, other: &NfSet) {
        if other.count >= 1 {
            self.add(other.first);
        }
        if other.count >= 2 {
            self.add(other.second);
        }
    }
}

/// Tarjan SCC computation plus reachable-normal-form bookkeeping, with
/// successors supplied on the fly.
struct GraphAnalysis {
    scc_of: Vec<u32>,
    cyclic: Vec<bool>,    // per SCC
    nf_sets: Vec<NfSet>,  // per SCC
    cycle_witness: Option<Vec<usize>>,
}

const UNVISITED: u32 = u32::MAX;

fn analyse_graph<F>(n: usize, mut succs: F) -> GraphAnalysis
where
    F: FnMut(usize, &mut Vec<usize>),
{
    let mut index = vec![UNVISITED; n];
    let mut lowlink = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut on_path = vec![false; n];
    let mut scc_of = vec![UNVISITED; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut cyclic = Vec::new();
    let mut nf_sets: Vec<NfSet> = Vec::new();
    let mut cycle_witness: Option<Vec<usize>> = None;
    let mut next_index = 0u32;

    struct Frame {
        node: usize,
        succ: Vec<usize>,
        next: usize,
    }

    let mut frames: Vec<Frame> = Vec::new();
    let mut buf = Vec::new();
    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        buf.clear();
        succs(root, &mut buf);
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        on_path[root] = true;
        frames.push(Frame {
            node: root,
            succ: buf.clone(),
            next: 0,
        });

        while !frames.is_empty() {
            let (v, step) = {
                let top = frames.last_mut().unwrap();
                let v = top.node;
                if top.next < top.succ.len() {
                    let w = top.succ[top.next];
                    top.next += 1;
                    (v, Some(w))
                } else {
                    (v, None)
                }
            };
            match step {
                Some(w) if index[w] == UNVISITED => {
                    buf.clear();
                    succs(w, &mut buf);
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    on_path[w] = true;
                    frames.push(Frame {
                        node: w,
                        succ: buf.clone(),
                        next: 0,
                    });
                }
                Some(w) => {
                    if on_stack[w] {
                        lowlink[v] = lowlink[v].min(index[w]);
                    }
                    if cycle_witness.is_none() && on_path[w] {
                        // first back edge in depth-first order: the frame
                        // path from w down to v plus this edge closes a walk
                        let mut walk: Vec<usize> = frames
                            .iter()
                            .map(|f| f.node)
                            .skip_while(|&x| x != w)
                            .collect();
                        walk.push(w);
                        cycle_witness = Some(walk);
                    }
                }
                None => {
                    on_path[v] = false;
                    if lowlink[v] == index[v] {
                        let scc_id = cyclic.len() as u32;
                        let mut members = Vec::new();
                        loop {
                            let u = stack.pop().unwrap();
                            on_stack[u] = false;
                            scc_of[u] = scc_id;
                            members.push(u);
                            if u == v {
                                break;
                            }
                        }
                        let mut set = NfSet::default();
                        let mut is_cyclic = members.len() > 1;
                        for &u in &members {
                            buf.clear();
                            succs(u, &mut buf);
                            if buf.is_empty() {
                                set.add(u as u32);
                            }
                            for &w in buf.iter() {
                                if scc_of[w] == scc_id {
                                    is_cyclic = true;
                                } else {
                                    set.merge(&nf_sets[scc_of[w] as usize]);
                                }
                            }
                        }
                        cyclic.push(is_cyclic);
                        nf_sets.push(set);
                    }
                    let done = frames.pop().unwrap();
                    if let Some(parent) = frames.last_mut() {
                        lowlink[parent.node] =
                            lowlink[parent.node].min(lowlink[done.node]);
                    }
                }
            }
        }
    }

    GraphAnalysis {
        scc_of,
        cyclic,
        nf_sets,
        cycle_witness,
    }
}

/// A table of unique normal forms for every word of one fixed length, under
/// the length-preserving rewriting of a map. Errors carry a witness when
/// some word has no (or more than one) reachable normal form.
pub struct NormalFormTable {
    stratum: Stratum,
    nfs: Vec<u32>,
}

impl NormalFormTable {
    pub(crate) fn from_parts(stratum: Stratum, nfs: Vec<u32>) -> Self {
        NormalFormTable { stratum, nfs }
    }

    pub fn nf_index(&self, idx: usize) -> usize {
        self.nfs[idx] as usize
    }

    pub fn nf(&self, w: &Word) -> Word {
        self.stratum.word(self.nfs[self.stratum.index(w)] as usize)
    }

    pub fn stratum(&self) -> &Stratum {
        &self.stratum
    }
}

/// Builds the normal-form table for words of length `len`, using the
/// exhaustive closure (sound for any normalising confluent system, cyclic
/// or not).
pub fn normal_form_table(map: &QuadMap, len: usize) -> Result<NormalFormTable> {
    let n = map.alphabet().len();
    let stratum = Stratum::new(n, len);
    let succs = |idx: usize, out: &mut Vec<usize>| {
        out.clear();
        if len < 2 {
            return;
        }
        let w = stratum.word(idx);
        for i0 in 0..len - 1 {
            let (s, t) = (w.get(i0).unwrap(), w.get(i0 + 1).unwrap());
            let (s2, t2) = map.image(s, t);
            if (s2, t2) != (s, t) {
                let mut v = w.clone();
                v.set(i0, s2);
                v.set(i0 + 1, t2);
                out.push(stratum.index(&v));
            }
        }
    };
    let analysis = analyse_graph(stratum.count(), |i, o| succs(i, o));
    let mut nfs = vec![0u32; stratum.count()];
    for idx in 0..stratum.count() {
        let set = analysis.nf_sets[analysis.scc_of[idx] as usize];
        match set.count {
            1 => nfs[idx] = set.first,
            0 => {
                let witness = stratum.word(idx);
                let cycle = extract_cycle(&stratum, map, idx, &analysis);
                return Err(Error::NotNormalising {
                    witness: map.alphabet().render(&witness),
                    cycle,
                });
            }
            _ => {
                return Err(Error::NotConfluent {
                    witness: map.alphabet().render(&stratum.word(idx)),
                    first: map.alphabet().render(&stratum.word(set.first as usize)),
                    second: map
                        .alphabet()
                        .render(&stratum.word(set.second as usize)),
                });
            }
        }
    }
    Ok(NormalFormTable { stratum, nfs })
}

fn extract_cycle(
    stratum: &Stratum,
    map: &QuadMap,
    start: usize,
    analysis: &GraphAnalysis,
) -> Vec<String> {
    // follow successors that cannot reach a normal word until a node repeats
    let mut seen = HashMap::new();
    let mut path = vec![start];
    seen.insert(start, 0usize);
    let mut cur = start;
    loop {
        let w = stratum.word(cur);
        let mut next = None;
        for i0 in 0..w.len().saturating_sub(1) {
            let (s, t) = (w.get(i0).unwrap(), w.get(i0 + 1).unwrap());
            let (s2, t2) = map.image(s, t);
            if (s2, t2) != (s, t) {
                let mut v = w.clone();
                v.set(i0, s2);
                v.set(i0 + 1, t2);
                let vidx = stratum.index(&v);
                if analysis.nf_sets[analysis.scc_of[vidx] as usize].count == 0 {
                    next = Some(vidx);
                    break;
                }
            }
        }
        let Some(next) = next else { break };
        if let Some(&at) = seen.get(&next) {
            let mut cycle: Vec<String> = path[at..]
                .iter()
                .map(|&i| map.alphabet().render(&stratum.word(i)))
                .collect();
            cycle.push(map.alphabet().render(&stratum.word(next)));
            return cycle;
        }
        seen.insert(next, path.len());
        path.push(next);
        cur = next;
    }
    Vec::new()
}

/// The explored rewrite graph of one word's component.
#[derive(Debug, Clone)]
pub struct RewriteGraph {
    /// Words in breadth-first visit order; index 0 is the start word.
    pub nodes: Vec<Word>,
    /// Edges (from, 1-based position, to) over node indices.
    pub edges: Vec<(usize, usize, usize)>,
    pub has_cycle: bool,
    pub cycle_witness: Option<Vec<Word>>,
    /// Every node reaches at least one normal word; None when the budget
    /// ran out before the component was closed.
    pub normalising: Option<bool>,
    pub non_normalising_witness: Option<Word>,
    /// Every node reaches exactly one normal word; None under budget.
    pub confluent: Option<bool>,
    /// Longest rewriting sequence from the start word; only defined when
    /// the reachable subgraph is acyclic and fully explored.
    pub longest_from_start: Option<usize>,
    /// The frontier was still growing when the round budget ran out.
    pub budget_exhausted: bool,
}

/// Breadth-first closure of the rewrite relation from `start`, bounded by
/// `max_steps` expansion rounds.
pub fn explore(rules: &RuleSet, start: &Word, max_steps: usize) -> RewriteGraph {
    let mut ids: HashMap<Word, usize> = HashMap::new();
    let mut nodes: Vec<Word> = vec![start.clone()];
    ids.insert(start.clone(), 0);
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut adjacency: Vec<Vec<usize>> = Vec::new();
    let mut frontier = vec![0usize];
    let mut budget_exhausted = false;

    let mut round = 0;
    while !frontier.is_empty() {
        if round == max_steps {
            budget_exhausted = true;
            break;
        }
        round += 1;
        let mut next_frontier = Vec::new();
        for &v in &frontier {
            let succ = rules.successors(&nodes[v]);
            while adjacency.len() <= v {
                adjacency.push(Vec::new());
            }
            for (pos, w) in succ {
                let id = match ids.get(&w) {
                    Some(&id) => id,
                    None => {
                        let id = nodes.len();
                        ids.insert(w.clone(), id);
                        nodes.push(w);
                        next_frontier.push(id);
                        id
                    }
                };
                edges.push((v, pos, id));
                adjacency[v].push(id);
            }
        }
        frontier = next_frontier;
    }
    while adjacency.len() < nodes.len() {
        adjacency.push(Vec::new());
    }
    let analysis = analyse_graph(nodes.len(), |v, out| {
        out.clear();
        out.extend_from_slice(&adjacency[v]);
    });
    let has_cycle = analysis.cyclic.iter().any(|&c| c);
    let cycle_witness = analysis
        .cycle_witness
        .as_ref()
        .map(|walk| walk.iter().map(|&i| nodes[i].clone()).collect());
    let (normalising, confluent, non_normalising_witness) = if budget_exhausted {
        (None, None, None)
    } else {
        let mut normalising = true;
        let mut confluent = true;
        let mut witness = None;
        for v in 0..nodes.len() {
            let count = analysis.nf_sets[analysis.scc_of[v] as usize].count;
            if count == 0 && normalising {
                normalising = false;
                witness = Some(nodes[v].clone());
            }
            if count != 1 {
                confluent = false;
            }
        }
        (Some(normalising), Some(confluent), witness)
    };
    let longest_from_start = if has_cycle || budget_exhausted {
        None
    } else {
        Some(longest_path(&adjacency))
    };
    RewriteGraph {
        nodes,
        edges,
        has_cycle,
        cycle_witness,
        normalising,
        non_normalising_witness,
        confluent,
        longest_from_start,
        budget_exhausted,
    }
}

fn longest_path(adjacency: &[Vec<usize>]) -> usize {
    // adjacency is acyclic here; memoised longest path from node 0
    let mut memo: Vec<Option<usize>> = vec![None; adjacency.len()];
    let mut stack = vec![0usize];
    while let Some(&v) = stack.last() {
        if memo[v].is_some() {
            stack.pop();
            continue;
        }
        let pending: Vec<usize> = adjacency[v]
            .iter()
            .copied()
            .filter(|&w| memo[w].is_none())
            .collect();
        if pending.is_empty() {
            memo[v] = Some(
                adjacency[v]
                    .iter()
                    .map(|&w| 1 + memo[w].unwrap())
                    .max()
                    .unwrap_or(0),
            );
            stack.pop();
        } else {
            stack.extend(pending);
        }
    }
    memo[0].unwrap()
}

impl RewriteGraph {
    /// Line-oriented edge list: `word TAB position TAB word`, nodes in
    /// breadth-first order, edges in discovery order.
    pub fn export_edge_list(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        for &(from, pos, to) in &self.edges {
            out.push_str(&alphabet.render(&self.nodes[from]));
            out.push('\t');
            out.push_str(&pos.to_string());
            out.push('\t');
            out.push_str(&alphabet.render(&self.nodes[to]));
            out.push('\n');
        }
        out
    }
}

/// Classification of the rewriting relation over all words of length at
/// most `max_len`. All verdicts are "within bounds" qualified.
#[derive(Debug, Clone)]
pub struct ClassifySummary {
    pub max_len: usize,
    pub terminating: bool,
    pub normalising: bool,
    pub confluent: bool,
    pub cycle_witness: Option<Vec<String>>,
    pub non_normalising_witness: Option<String>,
    pub non_confluent_witness: Option<(String, String, String)>,
}

pub fn classify(rules: &RuleSet, max_len: usize) -> ClassifySummary {
    let n = rules.alphabet().len();
    let space = Space::new(n, max_len);
    let succs = |idx: usize, out: &mut Vec<usize>| {
        out.clear();
        let w = space.word(idx);
        for i0 in 0..w.len().saturating_sub(1) {
            if let Some(v) = rules.rewrite_at(&w, i0) {
                out.push(space.index(&v));
            }
        }
    };
    let analysis = analyse_graph(space.total(), |i, o| succs(i, o));
    let terminating = !analysis.cyclic.iter().any(|&c| c);
    let mut normalising = true;
    let mut confluent = true;
    let mut non_normalising_witness = None;
    let mut non_confluent_witness = None;
    for idx in 0..space.total() {
        let set = analysis.nf_sets[analysis.scc_of[idx] as usize];
        if set.count == 0 && non_normalising_witness.is_none() {
            normalising = false;
            non_normalising_witness =
                Some(rules.alphabet().render(&space.word(idx)));
        }
        if set.count > 1 && non_confluent_witness.is_none() {
            confluent = false;
            non_confluent_witness = Some((
                rules.alphabet().render(&space.word(idx)),
                rules.alphabet().render(&space.word(set.first as usize)),
                rules.alphabet().render(&space.word(set.second as usize)),
            ));
        }
    }
    if !normalising {
        confluent = false;
    }
    let cycle_witness = analysis.cycle_witness.as_ref().map(|walk| {
        walk.iter()
            .map(|&i| rules.alphabet().render(&space.word(i)))
            .collect()
    });
    ClassifySummary {
        max_len,
        terminating,
        normalising,
        confluent,
        cycle_witness,
        non_normalising_witness,
        non_confluent_witness,
    }
}

/// Which termination bound a class entitles us to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// p(p-1)/2, valid in class (3,3).
    Quadratic,
    /// 2^p - p - 1, valid in class (4,3) / (3,4).
    Exponential,
}

impl BoundKind {
    pub fn value(self, p: usize) -> usize {
        match self {
            BoundKind::Quadratic => p * (p - 1) / 2,
            BoundKind::Exponential => (1usize << p) - p - 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BoundKind::Quadratic => "p(p-1)/2",
            BoundKind::Exponential => "2^p-p-1",
        }
    }
}

/// Result of sweeping every length-p start word for acyclicity and the
/// exact longest rewriting sequence.
#[derive(Debug, Clone)]
pub struct TerminationReport {
    pub p: usize,
    pub terminating: bool,
    pub cycle_witness: Option<Vec<String>>,
    /// Maximum over all length-p words of the longest sequence; None when
    /// a cycle was found.
    pub max_sequence: Option<usize>,
    pub max_witness: Option<String>,
    pub bound: Option<(BoundKind, usize)>,
    pub within_bound: Option<bool>,
}

/// Explores all words of length `p` (and the shorter words reachable from
/// them in the mod-e case) and verifies the class-appropriate bound.
pub fn verify_termination_bound(
    rules: &RuleSet,
    class: Option<(usize, usize)>,
    p: usize,
) -> TerminationReport {
    let n = rules.alphabet().len();
    let space = Space::new(n, p);
    let succs = |idx: usize, out: &mut Vec<usize>| {
        out.clear();
        let w = space.word(idx);
        for i0 in 0..w.len().saturating_sub(1) {
            if let Some(v) = rules.rewrite_at(&w, i0) {
                out.push(space.index(&v));
            }
        }
    };
    let analysis = analyse_graph(space.total(), |i, o| succs(i, o));
    // only classes up to (4,3) / (3,4) entitle us to a bound
    let bound = class
        .and_then(|(c, cp)| {
            if c <= 3 && cp <= 3 {
                Some(BoundKind::Quadratic)
            } else if (c <= 4 && cp <= 3) || (c <= 3 && cp <= 4) {
                Some(BoundKind::Exponential)
            } else {
                None
            }
        })
        .map(|kind| (kind, kind.value(p)));
    if analysis.cyclic.iter().any(|&c| c) {
        let cycle_witness = analysis.cycle_witness.as_ref().map(|walk| {
            walk.iter()
                .map(|&i| rules.alphabet().render(&space.word(i)))
                .collect()
        });
        return TerminationReport {
            p,
            terminating: false,
            cycle_witness,
            max_sequence: None,
            max_witness: None,
            bound,
            within_bound: Some(false),
        };
    }
    // acyclic: memoised longest path over the whole bounded space
    let mut memo: Vec<Option<u32>> = vec![None; space.total()];
    let mut longest = |start: usize| -> usize {
        let mut stack = vec![start];
        let mut buf = Vec::new();
        while let Some(&v) = stack.last() {
            if memo[v].is_some() {
                stack.pop();
                continue;
            }
            succs(v, &mut buf);
            let pending: Vec<usize> =
                buf.iter().copied().filter(|&w| memo[w].is_none()).collect();
            if pending.is_empty() {
                let best = buf
                    .iter()
                    .map(|&w| 1 + memo[w].unwrap())
                    .max()
                    .unwrap_or(0);
                memo[v] = Some(best);
                stack.pop();
            } else {
                stack.extend(pending);
            }
        }
        memo[start].unwrap() as usize
    };
    let stratum = Stratum::new(n, p);
    let mut max_sequence = 0usize;
    let mut max_witness = stratum.word(0);
    for idx in 0..stratum.count() {
        let w = stratum.word(idx);
        let l = longest(space.index(&w));
        if l > max_sequence {
            max_sequence = l;
            max_witness = w;
        }
    }
    let within_bound = bound.map(|(_, b)| max_sequence <= b);
    TerminationReport {
        p,
        terminating: true,
        cycle_witness: None,
        max_sequence: Some(max_sequence),
        max_witness: Some(rules.alphabet().render(&max_witness)),
        bound,
        within_bound,
    }
}
