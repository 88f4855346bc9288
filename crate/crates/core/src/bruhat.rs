//! The higher Bruhat order `B(n, 2)`: commutation classes of reduced words
//! for `w₀`, keyed by their inversion triples and labeled by the majority
//! relation of the uniform tally.
//!
//! A braid move `(j, j±1, j) → (j±1, j, j±1)` is available in some word of a
//! class exactly when the heap has a chain `x ⋖ y ⋖ z` with letters
//! `(j, j±1, j)` whose interval `[x, z]` is `{x, y, z}`; the three can then
//! be made consecutive in a linear extension. Neighbors are therefore read
//! off a single heap rather than by enumerating the class.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::heap::{build_heap, HeapPoset};
use crate::majority::{majority_of_domain, MajorityError, PrelinearOrder};
use crate::parallel::{self, Execution};
use crate::perm::{BitIter, PermError, ReducedWord};

/// Triple sets are `u128` bitmasks, so `C(n, 3) <= 128` caps the rank here.
pub const MAX_BRUHAT_RANK: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruhatError {
    #[error("word {0} is not a reduced word of the longest permutation")]
    NotLongestPermutation(String),
    #[error("B({n},2) needs n <= {max}")]
    RankTooLarge { n: usize, max: usize },
    #[error("node budget of {limit} exceeded after discovering {discovered} classes; resume from the checkpoint with a larger budget")]
    BudgetExceeded {
        limit: usize,
        discovered: usize,
        checkpoint: Box<Checkpoint>,
    },
    #[error("malformed checkpoint: {0}")]
    BadCheckpoint(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Majority(#[from] MajorityError),
}

impl BruhatError {
    pub fn code(&self) -> &'static str {
        match self {
            BruhatError::NotLongestPermutation(_) => "NotLongestPermutation",
            BruhatError::RankTooLarge { .. } => "RankTooLarge",
            BruhatError::BudgetExceeded { .. } => "BudgetExceeded",
            BruhatError::BadCheckpoint(_) => "BadCheckpoint",
            BruhatError::Perm(e) => e.code(),
            BruhatError::Majority(e) => e.code(),
        }
    }
}

fn triple_index(a: usize, b: usize, c: usize) -> usize {
    debug_assert!(1 <= a && a < b && b < c && c <= MAX_BRUHAT_RANK);
    let choose2 = |m: usize| m * m.saturating_sub(1) / 2;
    let choose3 = |m: usize| m * m.saturating_sub(1) * m.saturating_sub(2) / 6;
    choose3(c - 1) + choose2(b - 1) + (a - 1)
}

fn triple_from_index(idx: usize) -> (usize, usize, usize) {
    (3..=MAX_BRUHAT_RANK)
        .flat_map(|c| (2..c).flat_map(move |b| (1..b).map(move |a| (a, b, c))))
        .find(|&(a, b, c)| triple_index(a, b, c) == idx)
        .expect("index in range")
}

/// A set of triples `abc`, `a < b < c <= 9`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionTripleSet(u128);

impl InversionTripleSet {
    pub fn empty() -> Self {
        InversionTripleSet(0)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn insert(&mut self, a: usize, b: usize, c: usize) {
        self.0 |= 1u128 << triple_index(a, b, c);
    }

    pub fn contains(self, a: usize, b: usize, c: usize) -> bool {
        self.0 >> triple_index(a, b, c) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn difference(self, other: Self) -> Self {
        InversionTripleSet(self.0 & !other.0)
    }

    /// Triples in lexicographic order.
    pub fn triples(self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<_> = BitIter(self.0).map(triple_from_index).collect();
        out.sort_unstable();
        out
    }

    /// `none`, `all` (every triple of `[n]`), or `123,124,...`.
    pub fn label(self, n: usize) -> String {
        let total = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        if self.is_empty() {
            "none".into()
        } else if self.len() == total {
            "all".into()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for InversionTripleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .triples()
            .into_iter()
            .map(|(a, b, c)| format!("{a}{b}{c}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for InversionTripleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromIterator<(usize, usize, usize)> for InversionTripleSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize, usize)>>(iter: I) -> Self {
        let mut set = InversionTripleSet::empty();
        for (a, b, c) in iter {
            set.insert(a, b, c);
        }
        set
    }
}

fn check_rank(n: usize) -> Result<(), BruhatError> {
    if n > MAX_BRUHAT_RANK {
        return Err(BruhatError::RankTooLarge {
            n,
            max: MAX_BRUHAT_RANK,
        });
    }
    Ok(())
}

/// `abc` is an inversion triple when the word creates `bc`, then `ac`, then
/// `ab`.
pub fn inversion_triples(word: &ReducedWord) -> Result<InversionTripleSet, BruhatError> {
    check_rank(word.n())?;
    if !word.permutation().is_longest() {
        return Err(BruhatError::NotLongestPermutation(word.to_string()));
    }
    let n = word.n();
    let mut when = vec![vec![0usize; n + 1]; n + 1];
    for (t, (a, b)) in word.inversion_sequence().into_iter().enumerate() {
        when[a][b] = t;
    }
    let mut set = InversionTripleSet::empty();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if when[b][c] < when[a][c] && when[a][c] < when[a][b] {
                    set.insert(a, b, c);
                }
            }
        }
    }
    Ok(set)
}

/// Words one literal braid move away, tagged by the 1-based position of the
/// replaced substring.
pub fn yang_baxter_neighbors(word: &ReducedWord) -> Vec<(usize, ReducedWord)> {
    let l = word.letters();
    (0..l.len().saturating_sub(2))
        .filter(|&j| l[j] == l[j + 2] && l[j].abs_diff(l[j + 1]) == 1)
        .map(|j| {
            let mut next = word.to_vec();
            next[j] = l[j + 1] as usize;
            next[j + 1] = l[j] as usize;
            next[j + 2] = l[j + 1] as usize;
            (
                j + 1,
                ReducedWord::new(word.n(), &next).expect("braid moves preserve reducedness"),
            )
        })
        .collect()
}

/// The lexicographically least word of the class: repeatedly take the
/// available element with the smallest letter.
pub fn canonical_word(heap: &HeapPoset) -> ReducedWord {
    let mut placed = 0u128;
    let mut letters = Vec::with_capacity(heap.len());
    while letters.len() < heap.len() {
        let x = (0..heap.len())
            .filter(|&x| placed >> x & 1 == 0 && heap.strictly_below(x) & !placed == 0)
            .min_by_key(|&x| heap.letter(x))
            .expect("a minimal element remains");
        placed |= 1u128 << x;
        letters.push(heap.letter(x));
    }
    ReducedWord::new(heap.n(), &letters).expect("linear extensions are reduced")
}

/// Words of neighboring classes, one per available braid move, each in
/// canonical form.
pub fn class_neighbors(word: &ReducedWord) -> Vec<ReducedWord> {
    let heap = build_heap(word);
    let mut upper: Vec<Vec<usize>> = vec![Vec::new(); heap.len()];
    for &(x, y) in heap.covers() {
        upper[x].push(y);
    }
    let mut out = BTreeSet::new();
    for x in 0..heap.len() {
        for &y in &upper[x] {
            for &z in &upper[y] {
                if heap.letter(z) != heap.letter(x) || heap.strictly_above(x) & heap.strictly_below(z) != 1u128 << y {
                    continue;
                }
                let down = heap.strictly_below(z) | 1u128 << z;
                let core = 1u128 << x | 1u128 << y | 1u128 << z;
                let mut order: Vec<usize> = BitIter(down & !core).collect();
                order.extend([x, y, z]);
                order.extend(BitIter(heap.all() & !down));
                let (j, k) = (heap.letter(x), heap.letter(y));
                let at = order.len() - (heap.len() - down.count_ones() as usize) - 3;
                let mut letters: Vec<usize> = order.iter().map(|&e| heap.letter(e)).collect();
                letters[at..at + 3].copy_from_slice(&[k, j, k]);
                let moved = ReducedWord::new(heap.n(), &letters).expect("braid moves preserve reducedness");
                out.insert(canonical_word(&build_heap(&moved)));
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatNode {
    pub id: usize,
    pub triples: InversionTripleSet,
    /// Lexicographically least word of the class.
    pub representative: ReducedWord,
    pub majority: PrelinearOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruhatEdge {
    pub lower: usize,
    pub upper: usize,
    pub triple: (usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatPoset {
    pub n: usize,
    /// Sorted by number of triples, then by triple list.
    pub nodes: Vec<BruhatNode>,
    pub edges: Vec<BruhatEdge>,
}

/// Resumable enumeration state: discovered class words and the words still
/// to expand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub discovered: Vec<String>,
    pub frontier: Vec<String>,
}

impl Checkpoint {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("checkpoint serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, BruhatError> {
        serde_json::from_str(text).map_err(|e| BruhatError::BadCheckpoint(e.to_string()))
    }
}

fn node_order(a: &(InversionTripleSet, ReducedWord), b: &(InversionTripleSet, ReducedWord)) -> std::cmp::Ordering {
    (a.0.len(), a.0.triples()).cmp(&(b.0.len(), b.0.triples()))
}

struct Discovery {
    n: usize,
    seen: HashMap<InversionTripleSet, ReducedWord>,
    frontier: Vec<ReducedWord>,
}

impl Discovery {
    fn checkpoint(&self, extra: &[ReducedWord]) -> Checkpoint {
        let mut discovered: Vec<String> = self.seen.values().map(ToString::to_string).collect();
        discovered.sort();
        let mut frontier: Vec<String> = self.frontier.iter().chain(extra).map(ToString::to_string).collect();
        frontier.sort();
        frontier.dedup();
        Checkpoint {
            n: self.n,
            discovered,
            frontier,
        }
    }

    /// Level-synchronous BFS: a level's neighbor lists are computed in
    /// parallel, then merged in frontier order so the result is
    /// deterministic.
    fn run(&mut self, limit: usize, exec: Execution) -> Result<(), BruhatError> {
        while !self.frontier.is_empty() {
            let lists = parallel::map(exec, &self.frontier, class_neighbors);
            let mut next = Vec::new();
            for list in lists {
                for word in list {
                    let key = inversion_triples(&word)?;
                    if self.seen.contains_key(&key) {
                        continue;
                    }
                    if self.seen.len() >= limit {
                        return Err(BruhatError::BudgetExceeded {
                            limit,
                            discovered: self.seen.len(),
                            checkpoint: Box::new(self.checkpoint(&next)),
                        });
                    }
                    self.seen.insert(key, word.clone());
                    next.push(word);
                }
            }
            self.frontier = next;
        }
        Ok(())
    }
}

fn lex_first_word(n: usize) -> ReducedWord {
    let letters: Vec<usize> = (1..n).flat_map(|row| (1..=row).rev()).collect();
    ReducedWord::new(n, &letters).expect("lex-first word is reduced")
}

/// Breadth-first enumeration of `B(n, 2)` from the lex-first class, with at
/// most `limit` classes.
pub fn enumerate_bruhat(n: usize, limit: usize, exec: Execution) -> Result<BruhatPoset, BruhatError> {
    check_rank(n)?;
    let start = canonical_word(&build_heap(&lex_first_word(n.max(1))));
    let mut discovery = Discovery {
        n,
        seen: HashMap::from([(inversion_triples(&start)?, start.clone())]),
        frontier: vec![start],
    };
    discovery.run(limit, exec)?;
    finish(discovery, exec)
}

/// Continues an enumeration that stopped at its budget.
pub fn resume_bruhat(checkpoint: &Checkpoint, limit: usize, exec: Execution) -> Result<BruhatPoset, BruhatError> {
    check_rank(checkpoint.n)?;
    let parse = |s: &String| -> Result<ReducedWord, BruhatError> {
        let word: ReducedWord = s.parse()?;
        let word = word.with_rank(checkpoint.n)?;
        Ok(canonical_word(&build_heap(&word)))
    };
    let mut seen = HashMap::new();
    for s in &checkpoint.discovered {
        let word = parse(s)?;
        seen.insert(inversion_triples(&word)?, word);
    }
    let frontier = checkpoint.frontier.iter().map(parse).collect::<Result<Vec<_>, _>>()?;
    for word in &frontier {
        seen.entry(inversion_triples(word)?).or_insert_with(|| word.clone());
    }
    let mut discovery = Discovery {
        n: checkpoint.n,
        seen,
        frontier,
    };
    discovery.run(limit, exec)?;
    finish(discovery, exec)
}

fn finish(discovery: Discovery, exec: Execution) -> Result<BruhatPoset, BruhatError> {
    let mut seeds: Vec<(InversionTripleSet, ReducedWord)> = discovery.seen.into_iter().collect();
    seeds.sort_by(node_order);
    let index: HashMap<InversionTripleSet, usize> = seeds.iter().enumerate().map(|(i, (k, _))| (*k, i)).collect();
    let labeled = parallel::try_map(exec, &seeds, |(key, word)| {
        let majority = majority_of_domain(word, None, Execution::Sequential)?.order;
        let ups = class_neighbors(word)
            .into_iter()
            .map(|w| inversion_triples(&w))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|k| key.is_subset(*k))
            .collect::<Vec<_>>();
        Ok::<_, BruhatError>((majority, ups))
    })?;
    let mut nodes = Vec::with_capacity(seeds.len());
    let mut edges = Vec::new();
    for (id, ((key, word), (majority, ups))) in seeds.into_iter().zip(labeled).enumerate() {
        for up in ups {
            let added = up.difference(key);
            debug_assert_eq!(added.len(), 1);
            edges.push(BruhatEdge {
                lower: id,
                upper: index[&up],
                triple: added.triples()[0],
            });
        }
        nodes.push(BruhatNode {
            id,
            triples: key,
            representative: word,
            majority,
        });
    }
    edges.sort_by_key(|e| (e.lower, e.upper));
    Ok(BruhatPoset {
        n: discovery.n,
        nodes,
        edges,
    })
}

impl BruhatPoset {
    pub fn node_by_triples(&self, triples: InversionTripleSet) -> Option<&BruhatNode> {
        self.nodes.iter().find(|node| node.triples == triples)
    }

    /// Graphviz rendering with labels `majority\nInv₃`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bruhat {\n  rankdir=BT;\n  node [shape=box];\n");
        for node in &self.nodes {
            let majority = if self.n <= 9 {
                node.majority.compact()
            } else {
                node.majority.to_string()
            };
            writeln!(
                out,
                "  c{} [label=\"{}\\n{}\"];",
                node.id,
                majority,
                node.triples.label(self.n)
            )
            .unwrap();
        }
        for e in &self.edges {
            let (a, b, c) = e.triple;
            writeln!(out, "  c{} -> c{} [label=\"{a}{b}{c}\"];", e.lower, e.upper).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "nodes": self.nodes.iter().map(|node| json!({
                "id": node.id,
                "triples": node.triples.label(self.n),
                "representative": node.representative.to_string(),
                "majority": node.majority.to_string(),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "lower": e.lower,
                "upper": e.upper,
                "added_triple": format!("{}{}{}", e.triple.0, e.triple.1, e.triple.2),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Cover relations as the transitive closure of single-triple covers agree
/// with strict containment of triple sets.
pub fn felsner_weil_check(poset: &BruhatPoset) -> bool {
    let count = poset.nodes.len();
    let words = count.div_ceil(64);
    let mut reach = vec![vec![0u64; words]; count];
    let mut ups: Vec<Vec<usize>> = vec![Vec::new(); count];
    for e in &poset.edges {
        let (lo, hi) = (&poset.nodes[e.lower].triples, &poset.nodes[e.upper].triples);
        if !lo.is_subset(*hi) || hi.difference(*lo).len() != 1 {
            return false;
        }
        ups[e.lower].push(e.upper);
    }
    // nodes are sorted by size, so uppers come later
    for i in (0..count).rev() {
        for &j in &ups[i] {
            reach[i][j / 64] |= 1 << (j % 64);
            let upper = reach[j].clone();
            for (r, u) in reach[i].iter_mut().zip(upper) {
                *r |= u;
            }
        }
    }
    (0..count).all(|i| {
        (0..count).all(|j| {
            let reachable = reach[i][j / 64] >> (j % 64) & 1 == 1;
            let below = i != j && poset.nodes[i].triples.is_subset(poset.nodes[j].triples);
            reachable == below
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverDiff {
    pub lower: usize,
    pub upper: usize,
    pub added_triple: (usize, usize, usize),
    pub maj_lower: PrelinearOrder,
    pub maj_upper: PrelinearOrder,
    /// Values whose block index differs.
    pub block_changed: Vec<usize>,
    /// Values whose tie partner differs.
    pub partner_changed: Vec<usize>,
    /// Union of the two.
    pub changed_values: Vec<usize>,
    /// Some changed value lies outside `{a, b, c}`.
    pub outside_triple: bool,
    /// Some changed value lies outside `[a, c]`.
    pub outside_range: bool,
}

impl CoverDiff {
    pub fn to_json(&self) -> Value {
        let (a, b, c) = self.added_triple;
        json!({
            "lower": self.lower,
            "upper": self.upper,
            "added_triple": format!("{a}{b}{c}"),
            "maj_lower": self.maj_lower.to_string(),
            "maj_upper": self.maj_upper.to_string(),
            "block_changed": self.block_changed,
            "partner_changed": self.partner_changed,
            "changed_values": self.changed_values,
            "outside_triple": self.outside_triple,
            "outside_range": self.outside_range,
        })
    }
}

pub fn cover_diff(poset: &BruhatPoset, edge: &BruhatEdge) -> CoverDiff {
    let (lo, hi) = (&poset.nodes[edge.lower].majority, &poset.nodes[edge.upper].majority);
    let values = 1..=poset.n;
    let block_changed: Vec<usize> = values
        .clone()
        .filter(|&x| lo.block_index(x) != hi.block_index(x))
        .collect();
    let partner_changed: Vec<usize> = values.filter(|&x| lo.partner(x) != hi.partner(x)).collect();
    let changed: BTreeSet<usize> = block_changed.iter().chain(&partner_changed).copied().collect();
    let (a, b, c) = edge.triple;
    CoverDiff {
        lower: edge.lower,
        upper: edge.upper,
        added_triple: edge.triple,
        maj_lower: lo.clone(),
        maj_upper: hi.clone(),
        outside_triple: changed.iter().any(|&x| x != a && x != b && x != c),
        outside_range: changed.iter().any(|&x| x < a || x > c),
        block_changed,
        partner_changed,
        changed_values: changed.into_iter().collect(),
    }
}

pub fn cover_diff_report(poset: &BruhatPoset) -> Vec<CoverDiff> {
    poset.edges.iter().map(|e| cover_diff(poset, e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: usize, letters: &[usize]) -> ReducedWord {
        ReducedWord::new(n, letters).unwrap()
    }

    fn triples(s: &str) -> InversionTripleSet {
        s.split(',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let d: Vec<usize> = t.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
                (d[0], d[1], d[2])
            })
            .collect()
    }

    #[test]
    fn triple_indexing() {
        let mut seen = BTreeSet::new();
        for c in 3..=9 {
            for b in 2..c {
                for a in 1..b {
                    let i = triple_index(a, b, c);
                    assert!(i < 84 && seen.insert(i));
                    assert_eq!(triple_from_index(i), (a, b, c));
                }
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(
            inversion_triples(&word(5, &[2, 3, 1, 2, 1, 3, 4, 3, 2, 1])).unwrap(),
            triples("123,124")
        );
        assert_eq!(
            inversion_triples(&word(5, &[2, 3, 2, 1, 2, 3, 4, 3, 2, 1])).unwrap(),
            triples("123,124,134")
        );
        assert!(inversion_triples(&lex_first_word(4)).unwrap().is_empty());
        assert_eq!(inversion_triples(&word(3, &[2, 1, 2])).unwrap().label(3), "all");
        assert!(matches!(
            inversion_triples(&word(3, &[1, 2])),
            Err(BruhatError::NotLongestPermutation(_))
        ));
        assert_eq!(
            yang_baxter_neighbors(&word(3, &[1, 2, 1])),
            vec![(1, word(3, &[2, 1, 2]))]
        );
        assert!(yang_baxter_neighbors(&word(4, &[1, 3])).is_empty());
        let moves = yang_baxter_neighbors(&word(5, &[2, 3, 1, 2, 1, 3, 4, 3, 2, 1]));
        assert!(moves.contains(&(3, word(5, &[2, 3, 2, 1, 2, 3, 4, 3, 2, 1]))));
    }

    #[test]
    fn small_orders() {
        let b3 = enumerate_bruhat(3, 100, Execution::Sequential).unwrap();
        assert_eq!((b3.nodes.len(), b3.edges.len()), (2, 1));
        assert!(felsner_weil_check(&b3));
        let b4 = enumerate_bruhat(4, 100, Execution::Parallel).unwrap();
        assert_eq!(b4.nodes.len(), 8);
        assert!(felsner_weil_check(&b4));
        assert_eq!(b4.nodes[0].triples.label(4), "none");
        assert_eq!(b4.nodes.last().unwrap().triples.label(4), "all");
    }

    #[test]
    fn budget_and_resume() {
        let err = enumerate_bruhat(4, 3, Execution::Sequential).unwrap_err();
        let BruhatError::BudgetExceeded { checkpoint, .. } = err else {
            panic!("{err:?}")
        };
        let restored = Checkpoint::from_json(&checkpoint.to_json()).unwrap();
        assert_eq!(&restored, checkpoint.as_ref());
        let full = resume_bruhat(&restored, 100, Execution::Sequential).unwrap();
        assert_eq!(full, enumerate_bruhat(4, 100, Execution::Sequential).unwrap());
    }

    #[test]
    fn cover_example() {
        let b5 = enumerate_bruhat(5, 1000, Execution::Parallel).unwrap();
        let lo = b5.node_by_triples(triples("123,124")).unwrap();
        let hi = b5.node_by_triples(triples("123,124,134")).unwrap();
        assert_eq!(lo.majority.compact(), "34215");
        assert_eq!(hi.majority.compact(), "43125");
        let edge = b5.edges.iter().find(|e| e.lower == lo.id && e.upper == hi.id).unwrap();
        let diff = cover_diff(&b5, edge);
        assert_eq!(diff.added_triple, (1, 3, 4));
        assert!(diff.changed_values.contains(&2) && !diff.changed_values.contains(&5));
        assert!(diff.outside_triple && !diff.outside_range);
    }
}
