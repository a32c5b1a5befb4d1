//! The reflection groupoid on orientations of a finite tree.
//!
//! Objects are orientations; generators are the reflections `Σ_i` at a
//! source or sink and the global duality `D`. The defining relations are
//! `Σ_i² = 1`, commutation of `Σ_i` and `Σ_j` for unlinked vertices,
//! `D² = 1` and `DΣ_i = Σ_iD`. Morphism equality is decided syntactically:
//! duals are pushed to the front and cancelled to a parity, and the
//! remaining reflection word is reduced by involutive cancellation inside
//! its trace and brought to Cartier–Foata normal form.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::decorated::sigma;
use crate::graph::{almost_positive_roots, alternating_orientation, Quiver, TreeGraph, Vertex};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    Sigma(Vertex),
    Dual,
}

/// A composable sequence of generators read left to right from a start
/// orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub start: Quiver,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(start: Quiver, letters: Vec<Letter>) -> Self {
        Word { start, letters }
    }

    pub fn sigmas(start: Quiver, vertices: &[Vertex]) -> Self {
        Word {
            start,
            letters: vertices.iter().map(|&v| Letter::Sigma(v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn sigma_letters(&self) -> Vec<Vertex> {
        self.letters
            .iter()
            .filter_map(|l| match l {
                Letter::Sigma(v) => Some(*v),
                Letter::Dual => None,
            })
            .collect()
    }

    fn dual_count(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| matches!(l, Letter::Dual))
            .count()
    }
}

/// Applies a word letter by letter, failing at the first inapplicable
/// position.
pub fn apply_word(word: &Word) -> Result<Quiver> {
    let mut quiver = word.start.clone();
    for (pos, letter) in word.letters.iter().enumerate() {
        match letter {
            Letter::Dual => quiver = quiver.opposite(),
            Letter::Sigma(v) => {
                if !quiver.is_admissible(*v) {
                    return Err(Error::Admissibility(format!(
                        "letter Sigma({v}) at position {pos} is not applicable: {v} is neither a source nor a sink of {quiver}"
                    )));
                }
                quiver = quiver.reflect(*v)?;
            }
        }
    }
    Ok(quiver)
}

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

/// Canonical representative modulo the defining relations: a dual parity
/// (duals commute with everything and square to one) and the Cartier–Foata
/// block decomposition of the cancelled reflection word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub dual_parity: bool,
    pub blocks: Vec<Vec<Vertex>>,
}

impl NormalForm {
    /// Number of reflection letters.
    pub fn sigma_len(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn letters(&self) -> Vec<Vertex> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn is_identity(&self) -> bool {
        !self.dual_parity && self.blocks.is_empty()
    }
}

fn depends(graph: &TreeGraph, a: Vertex, b: Vertex) -> bool {
    a == b || graph.are_adjacent(a, b)
}

/// Deletes pairs of equal letters separated only by letters that commute
/// with them, repeatedly, until no such pair remains. One full scan per
/// deletion; the pass is idempotent on its output.
fn cancel_to_fixpoint(graph: &TreeGraph, mut word: Vec<Vertex>) -> Vec<Vertex> {
    'restart: loop {
        for s in 0..word.len() {
            for t in s + 1..word.len() {
                if word[t] == word[s] {
                    word.remove(t);
                    word.remove(s);
                    continue 'restart;
                }
                if depends(graph, word[t], word[s]) {
                    break;
                }
            }
        }
        return word;
    }
}

/// Cartier–Foata blocks: repeatedly extract the letters whose first
/// occurrence sees no earlier dependent letter; each block is sorted.
fn cartier_foata(graph: &TreeGraph, letters: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut remaining: Vec<Vertex> = letters.to_vec();
    let mut blocks = Vec::new();
    while !remaining.is_empty() {
        let mut take = vec![false; remaining.len()];
        for p in 0..remaining.len() {
            let blocked = (0..p).any(|q| depends(graph, remaining[q], remaining[p]));
            if !blocked {
                take[p] = true;
            }
        }
        let mut block: Vec<Vertex> = remaining
            .iter()
            .zip(&take)
            .filter(|(_, &t)| t)
            .map(|(&v, _)| v)
            .collect();
        block.sort_unstable();
        block.dedup();
        // Keep only the first occurrence of each taken letter.
        let mut seen: Vec<Vertex> = Vec::new();
        remaining = remaining
            .into_iter()
            .zip(take)
            .filter_map(|(v, t)| {
                if t && !seen.contains(&v) {
                    seen.push(v);
                    None
                } else {
                    Some(v)
                }
            })
            .collect();
        blocks.push(block);
    }
    blocks
}

/// Canonical linearization of a reflection word: cancel, then flatten the
/// Cartier–Foata blocks.
fn canonical_sigma_word(graph: &TreeGraph, letters: &[Vertex]) -> Vec<Vertex> {
    let cancelled = cancel_to_fixpoint(graph, letters.to_vec());
    let blocks = cartier_foata(graph, &cancelled);
    debug_assert_eq!(
        cancel_to_fixpoint(graph, blocks.iter().flatten().copied().collect()).len(),
        blocks.iter().map(|b| b.len()).sum::<usize>(),
        "cancellation must be idempotent on the normal form"
    );
    blocks.into_iter().flatten().collect()
}

/// Normal form of an applicable word: dual letters are pushed to the
/// front and cancelled to a parity; the reflection part is cancelled and
/// brought to Cartier–Foata form.
pub fn normal_form(word: &Word) -> Result<NormalForm> {
    apply_word(word)?;
    let graph = word.start.graph();
    let sigmas = canonical_sigma_word(graph, &word.sigma_letters());
    Ok(NormalForm {
        dual_parity: word.dual_count() % 2 == 1,
        blocks: cartier_foata(graph, &sigmas),
    })
}

// ---------------------------------------------------------------------------
// Reduced words
// ---------------------------------------------------------------------------

fn reduced_criterion(graph: &TreeGraph, letters: &[Vertex]) -> bool {
    for (t, &i) in letters.iter().enumerate() {
        if let Some(s) = (0..t).rev().find(|&s| letters[s] == i) {
            let linked_between = letters[s + 1..t].iter().any(|&j| graph.are_adjacent(i, j));
            if !linked_between {
                return false;
            }
        }
    }
    true
}

/// A dual-free applicable word is reduced exactly when between any two
/// occurrences of the same vertex some linked vertex occurs.
pub fn is_reduced(word: &Word) -> Result<bool> {
    if word.dual_count() > 0 {
        return Err(Error::Domain(
            "reducedness is defined for dual-free words".into(),
        ));
    }
    apply_word(word)?;
    Ok(reduced_criterion(word.start.graph(), &word.sigma_letters()))
}

/// For a reduced word: between consecutive occurrences of any vertex,
/// every linked vertex occurs exactly once. Holds for every reduced word;
/// exposed as a checkable predicate.
pub fn check_inbetween(word: &Word) -> Result<bool> {
    if !is_reduced(word)? {
        return Err(Error::Domain(
            "the in-between law applies to reduced words".into(),
        ));
    }
    let graph = word.start.graph();
    let letters = word.sigma_letters();
    Ok(inbetween_criterion(graph, &letters))
}

fn inbetween_criterion(graph: &TreeGraph, letters: &[Vertex]) -> bool {
    for (t, &i) in letters.iter().enumerate() {
        if let Some(s) = (0..t).rev().find(|&s| letters[s] == i) {
            for &j in graph.neighbors(i) {
                let count = letters[s + 1..t].iter().filter(|&&x| x == j).count();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Exactly-one-of for reduced words landing on the alternating quiver or
/// its opposite. Words here apply left to right, so "before the first
/// occurrence" in the composition order becomes: after the *last*
/// occurrence of each used vertex, either no neighbor occurs at all, or
/// every neighbor occurs exactly once.
fn extremal_criterion(graph: &TreeGraph, letters: &[Vertex]) -> bool {
    let mut last: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (p, &v) in letters.iter().enumerate() {
        last.insert(v, p);
    }
    for (&i, &f) in &last {
        let counts: Vec<usize> = graph
            .neighbors(i)
            .iter()
            .map(|&j| letters[f + 1..].iter().filter(|&&x| x == j).count())
            .collect();
        let all_zero = counts.iter().all(|&c| c == 0);
        let all_once = counts.iter().all(|&c| c == 1);
        if !(all_zero || all_once) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Word enumeration (small bounds)
// ---------------------------------------------------------------------------

/// Visits every applicable dual-free word from `start` up to the length
/// bound, depth first in ascending vertex order. The visitor receives the
/// letters and the end orientation.
pub fn walk_words(start: &Quiver, max_len: usize, visit: &mut impl FnMut(&[Vertex], &Quiver)) {
    fn go(
        quiver: &Quiver,
        letters: &mut Vec<Vertex>,
        max_len: usize,
        visit: &mut impl FnMut(&[Vertex], &Quiver),
    ) {
        visit(letters, quiver);
        if letters.len() == max_len {
            return;
        }
        for &v in quiver.vertices() {
            if quiver.is_admissible(v) {
                let next = quiver.reflect(v).expect("admissible");
                letters.push(v);
                go(&next, letters, max_len, visit);
                letters.pop();
            }
        }
    }
    let mut letters = Vec::new();
    go(start, &mut letters, max_len, visit);
}

// ---------------------------------------------------------------------------
// Loop classification
// ---------------------------------------------------------------------------

/// Report of the loop classification; counts are numbers of applicable
/// words (not of distinct morphisms).
#[derive(Debug, Clone, Serialize)]
pub struct LoopReport {
    pub graph_vertices: usize,
    pub start: String,
    pub max_len: usize,
    pub total_words: u64,
    /// Dual-free loops by the exponent `k` of their alternating normal
    /// form `(Σ₊Σ₋)^k` or `(Σ₋Σ₊)^k` (smallest `k` on collisions). On a
    /// forest each component contributes its own exponent and `k` is the
    /// sum.
    pub loops_by_k: BTreeMap<usize, u64>,
    pub loops_by_len: BTreeMap<usize, u64>,
    /// Odd-dual loops, canonicalized as a reflection word from the
    /// alternating quiver to its opposite followed by one dual; classified
    /// by the exponent `k` in `Σ₊(Σ₋Σ₊)^k` / `Σ₋(Σ₊Σ₋)^k`.
    pub dual_loops_by_k: BTreeMap<usize, u64>,
    pub violations: Vec<String>,
}

impl LoopReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Right multiplication of a canonical reflection word by one generator:
/// scanning from the right, the first dependent letter either cancels (if
/// equal) or blocks (if merely adjacent); otherwise the generator is
/// appended. The result is re-canonicalized.
fn mult_canonical(graph: &TreeGraph, word: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut out = word.to_vec();
    for p in (0..out.len()).rev() {
        if out[p] == v {
            out.remove(p);
            return cartier_foata(graph, &out).into_iter().flatten().collect();
        }
        if depends(graph, out[p], v) {
            break;
        }
    }
    out.push(v);
    cartier_foata(graph, &out).into_iter().flatten().collect()
}

/// Canonical forms of all alternating words with normal form not longer
/// than the bound, multiplied out one letter at a time so collisions on
/// degenerate graphs resolve exactly as the rewriting does. Even numbers
/// of half-periods land in `even`, odd in `odd`; on collision the
/// smallest exponent wins.
fn alternating_targets(
    graph: &TreeGraph,
    plus: &[Vertex],
    minus: &[Vertex],
    max_len: usize,
    even: &mut BTreeMap<Vec<Vertex>, usize>,
    odd: &mut BTreeMap<Vec<Vertex>, usize>,
) {
    for plus_first in [true, false] {
        let mut word: Vec<Vertex> = Vec::new();
        for half in 0..=(2 * max_len + 4) {
            if half % 2 == 0 {
                even.entry(word.clone()).or_insert(half / 2);
            } else {
                odd.entry(word.clone()).or_insert(half / 2);
            }
            if word.len() > max_len {
                break;
            }
            let part = if (half % 2 == 0) == plus_first {
                plus
            } else {
                minus
            };
            for &v in part {
                word = mult_canonical(graph, &word, v);
            }
        }
    }
}

/// Per-component alternating targets: restricting a loop's canonical form
/// to a component must give an alternating power of that component. On a
/// connected tree this is the whole classification; on a forest the
/// components contribute independent exponents, because letters in
/// different components always commute.
struct ComponentTargets {
    vertices: Vec<Vertex>,
    even: BTreeMap<Vec<Vertex>, usize>,
    odd: BTreeMap<Vec<Vertex>, usize>,
}

impl ComponentTargets {
    fn classify(&self, graph: &TreeGraph, canon: &[Vertex], odd: bool) -> Option<usize> {
        let restricted: Vec<Vertex> = canon
            .iter()
            .copied()
            .filter(|v| self.vertices.binary_search(v).is_ok())
            .collect();
        let restricted: Vec<Vertex> = cartier_foata(graph, &restricted)
            .into_iter()
            .flatten()
            .collect();
        let map = if odd { &self.odd } else { &self.even };
        map.get(&restricted).copied()
    }
}

fn classify_against(
    graph: &TreeGraph,
    components: &[ComponentTargets],
    canon: &[Vertex],
    odd: bool,
) -> Option<usize> {
    components
        .iter()
        .map(|c| c.classify(graph, canon, odd))
        .sum()
}

/// Classifies every applicable dual-free loop at the alternating quiver of
/// length at most `max_len`: each must normalize, componentwise, to an
/// alternating word; the reported exponent sums the per-component ones.
/// Loops with odd dual parity are covered through their reflection
/// skeletons ending at the opposite orientation. Counting is exact: the
/// walk is folded over canonical forms, so the length bound can be far
/// beyond what word-by-word enumeration could reach.
pub fn classify_loops(graph: &TreeGraph, max_len: usize) -> Result<LoopReport> {
    let (gamma0, plus_set, minus_set) = alternating_orientation(graph);
    let n = graph.vertices().len();

    // Dual-free loops match (Σ₊Σ₋)^k / (Σ₋Σ₊)^k per component; odd-dual
    // loops match Σ₊(Σ₋Σ₊)^k / Σ₋(Σ₊Σ₋)^k instead.
    let components: Vec<ComponentTargets> = graph
        .components()
        .into_iter()
        .map(|vertices| {
            let plus: Vec<Vertex> = vertices
                .iter()
                .copied()
                .filter(|v| plus_set.contains(v))
                .collect();
            let minus: Vec<Vertex> = vertices
                .iter()
                .copied()
                .filter(|v| minus_set.contains(v))
                .collect();
            let mut even = BTreeMap::new();
            let mut odd = BTreeMap::new();
            alternating_targets(graph, &plus, &minus, max_len, &mut even, &mut odd);
            ComponentTargets {
                vertices,
                even,
                odd,
            }
        })
        .collect();

    // Exact count DP over (canonical word, end orientation).
    let mut states: BTreeMap<Vec<Vertex>, (u64, u64)> = BTreeMap::new();
    states.insert(Vec::new(), (gamma0.orientation_mask(), 1));

    let mut report = LoopReport {
        graph_vertices: n,
        start: gamma0.to_string(),
        max_len,
        total_words: 0,
        loops_by_k: BTreeMap::new(),
        loops_by_len: BTreeMap::new(),
        dual_loops_by_k: BTreeMap::new(),
        violations: Vec::new(),
    };
    let gamma0_mask = gamma0.orientation_mask();
    let opposite_mask = gamma0.opposite().orientation_mask();

    for length in 0..=max_len {
        for (canon, &(mask, count)) in &states {
            report.total_words += count;
            if mask == gamma0_mask {
                *report.loops_by_len.entry(length).or_insert(0) += count;
                match classify_against(graph, &components, canon, false) {
                    Some(k) => *report.loops_by_k.entry(k).or_insert(0) += count,
                    None => report.violations.push(format!(
                        "loop of length {length} normalizes to non-alternating {canon:?}"
                    )),
                }
            }
            if mask == opposite_mask && length < max_len {
                match classify_against(graph, &components, canon, true) {
                    Some(k) => *report.dual_loops_by_k.entry(k).or_insert(0) += count,
                    None => report.violations.push(format!(
                        "dual loop skeleton of length {length} normalizes to non-alternating {canon:?}"
                    )),
                }
            }
        }
        if length == max_len {
            break;
        }
        let mut next: BTreeMap<Vec<Vertex>, (u64, u64)> = BTreeMap::new();
        for (canon, &(mask, count)) in &states {
            let quiver = Quiver::from_orientation_mask(graph, mask);
            for &v in graph.vertices() {
                if !quiver.is_admissible(v) {
                    continue;
                }
                let new_canon = mult_canonical(graph, canon, v);
                let new_mask = quiver.reflect(v)?.orientation_mask();
                let entry = next.entry(new_canon).or_insert((new_mask, 0));
                if entry.0 != new_mask {
                    return Err(Error::Internal(
                        "two words with one normal form reach different orientations".into(),
                    ));
                }
                entry.1 += count;
            }
        }
        states = next;
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Lemma sweep
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub start: String,
    pub max_len: usize,
    pub extremal_max_len: usize,
    pub words_checked: u64,
    pub reduced_words: u64,
    pub violations: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive check of the reduced-word lemmas by plain enumeration from
/// the alternating quiver:
///
/// * a word is reduced exactly when its normal form has full length;
/// * between consecutive occurrences of a vertex every neighbor occurs
///   exactly once (reduced words);
/// * a nonidentity reduced loop uses every vertex of each component it
///   touches;
/// * for reduced words from any start that end on the alternating quiver
///   or its opposite, each used vertex sees either none or all of its
///   neighbors (exactly once) before its first occurrence; checked up to
///   the separate `extremal_max_len` bound since it quantifies over all
///   start orientations.
pub fn check_lemmas(graph: &TreeGraph, max_len: usize, extremal_max_len: usize) -> LemmaReport {
    let (gamma0, _, _) = alternating_orientation(graph);
    let mut report = LemmaReport {
        start: gamma0.to_string(),
        max_len,
        extremal_max_len,
        words_checked: 0,
        reduced_words: 0,
        violations: Vec::new(),
    };
    let components = graph.components();
    walk_words(&gamma0, max_len, &mut |letters, end| {
        report.words_checked += 1;
        let reduced = reduced_criterion(graph, letters);
        let canon = canonical_sigma_word(graph, letters);
        if reduced != (canon.len() == letters.len()) {
            report.violations.push(format!(
                "reduced criterion and normal-form length disagree on {letters:?}"
            ));
        }
        if reduced {
            report.reduced_words += 1;
            if !inbetween_criterion(graph, letters) {
                report
                    .violations
                    .push(format!("in-between law fails on reduced word {letters:?}"));
            }
            if end == &gamma0 && !letters.is_empty() {
                for comp in &components {
                    let touched = comp.iter().any(|v| letters.contains(v));
                    let covered = comp.iter().all(|v| letters.contains(v));
                    if touched && !covered {
                        report.violations.push(format!(
                            "reduced loop {letters:?} misses vertices of its component {comp:?}"
                        ));
                    }
                }
            }
        }
    });

    let gamma0_op = gamma0.opposite();
    for start in crate::graph::enumerate_orientations(graph) {
        walk_words(&start, extremal_max_len, &mut |letters, end| {
            if letters.is_empty() || (end != &gamma0 && end != &gamma0_op) {
                return;
            }
            if reduced_criterion(graph, letters) && !extremal_criterion(graph, letters) {
                report.violations.push(format!(
                    "extremal law fails on reduced word {letters:?} from {start}"
                ));
            }
        });
    }
    report
}

// ---------------------------------------------------------------------------
// Action on roots
// ---------------------------------------------------------------------------

/// The permutation of the almost positive roots induced by a word: each
/// reflection letter acts by the piecewise-linear `σ`, duality acts as the
/// identity.
#[derive(Debug, Clone)]
pub struct RootAction {
    pub roots: Vec<crate::graph::RootVector>,
    /// `perm[k]` is the index of the image of `roots[k]`.
    pub perm: Vec<usize>,
}

pub fn word_action_on_roots(word: &Word) -> Result<RootAction> {
    apply_word(word)?;
    let graph = word.start.graph();
    let roots = almost_positive_roots(graph)?;
    let mut perm: Vec<usize> = (0..roots.len()).collect();
    for letter in &word.letters {
        if let Letter::Sigma(v) = letter {
            for slot in perm.iter_mut() {
                let image = sigma(graph, *v, &roots[*slot])?;
                *slot = roots.iter().position(|r| r == &image).ok_or_else(|| {
                    Error::Internal(format!(
                        "sigma left the almost positive roots at {}",
                        image.label()
                    ))
                })?;
            }
        }
    }
    Ok(RootAction { roots, perm })
}
