//! Heap posets of reduced words, commutation classes, order ideals and the
//! tiling-type domains `Pre(C)` they parametrize.
//!
//! Heap elements are the positions `0..l` of the word the heap was built
//! from (rendered 1-based). Position `j` lies below position `k` when `j < k`
//! and the letters differ by at most one, closed transitively. Because a
//! reduced word in rank 16 has at most 120 letters, every set of heap
//! elements fits a `u128`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use thiserror::Error;

use crate::perm::{pair_label, BitIter, InversionSet, Permutation, ReducedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeapError {
    #[error("enumeration exceeded the limit of {limit} items")]
    SizeExceeded { limit: usize },
    #[error("ideal count overflowed 128 bits")]
    Overflow,
    #[error("unknown label mode `{0}`")]
    UnknownLabelMode(String),
}

impl HeapError {
    pub fn code(&self) -> &'static str {
        match self {
            HeapError::SizeExceeded { .. } => "SizeExceeded",
            HeapError::Overflow => "Overflow",
            HeapError::UnknownLabelMode(_) => "UnknownLabelMode",
        }
    }
}

/// A downward-closed set of heap elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct OrderIdeal(u128);

impl OrderIdeal {
    pub const fn empty() -> Self {
        OrderIdeal(0)
    }

    pub const fn from_bits(bits: u128) -> Self {
        OrderIdeal(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }
}

/// The commutation class `C(i)` of a reduced word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationClass {
    /// Lexicographically smallest member when the class was fully
    /// enumerated, the input word otherwise.
    pub representative: ReducedWord,
    /// Sorted members, present only when enumeration finished under the limit.
    pub members: Option<Vec<ReducedWord>>,
    pub size: Option<usize>,
    pub size_exceeded: bool,
}

impl CommutationClass {
    pub fn contains(&self, word: &ReducedWord) -> Option<bool> {
        self.members.as_ref().map(|m| m.binary_search(word).is_ok())
    }
}

fn commuting_moves(word: &[u8]) -> Vec<Vec<u8>> {
    (0..word.len().saturating_sub(1))
        .filter(|&j| word[j].abs_diff(word[j + 1]) >= 2)
        .map(|j| {
            let mut next = word.to_vec();
            next.swap(j, j + 1);
            next
        })
        .collect()
}

fn braid_moves(word: &[u8]) -> Vec<Vec<u8>> {
    (0..word.len().saturating_sub(2))
        .filter(|&j| word[j] == word[j + 2] && word[j].abs_diff(word[j + 1]) == 1)
        .map(|j| {
            let mut next = word.to_vec();
            let (a, b) = (word[j], word[j + 1]);
            next[j] = b;
            next[j + 1] = a;
            next[j + 2] = b;
            next
        })
        .collect()
}

/// Breadth-first closure of `start` under `moves`, or `None` past `limit`.
fn closure<F>(start: Vec<u8>, limit: usize, moves: F) -> Option<HashSet<Vec<u8>>>
where
    F: Fn(&[u8]) -> Vec<Vec<u8>>,
{
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(word) = queue.pop_front() {
        for next in moves(&word) {
            if !seen.contains(&next) {
                if seen.len() >= limit {
                    return None;
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Some(seen)
}

/// Enumerates the commutation class of `word` by BFS over single commuting
/// moves. Past `limit` words the class is reported by its input word with
/// `size_exceeded` set.
pub fn commutation_class(word: &ReducedWord, limit: usize) -> CommutationClass {
    match closure(word.letters().to_vec(), limit, commuting_moves) {
        Some(set) => {
            let mut members: Vec<ReducedWord> = set.into_iter().map(|l| ReducedWord::from_raw(word.n(), l)).collect();
            members.sort();
            CommutationClass {
                representative: members[0].clone(),
                size: Some(members.len()),
                members: Some(members),
                size_exceeded: false,
            }
        }
        None => CommutationClass {
            representative: word.clone(),
            members: None,
            size: None,
            size_exceeded: true,
        },
    }
}

/// Every reduced word of `w`, sorted, by BFS over commuting and braid moves.
pub fn reduced_words(w: &Permutation, limit: usize) -> Result<Vec<ReducedWord>, HeapError> {
    let start = w.reduced_word();
    let set = closure(start.letters().to_vec(), limit, |word| {
        let mut moves = commuting_moves(word);
        moves.extend(braid_moves(word));
        moves
    })
    .ok_or(HeapError::SizeExceeded { limit })?;
    let mut words: Vec<ReducedWord> = set.into_iter().map(|l| ReducedWord::from_raw(w.n(), l)).collect();
    words.sort();
    Ok(words)
}

/// All commutation classes of reduced words of `w`, sorted by representative.
pub fn commutation_classes(w: &Permutation, limit: usize) -> Result<Vec<CommutationClass>, HeapError> {
    let words = reduced_words(w, limit)?;
    let mut assigned: HashSet<&[u8]> = HashSet::new();
    let mut classes = Vec::new();
    for word in &words {
        if assigned.contains(word.letters()) {
            continue;
        }
        let class = commutation_class(word, limit);
        for member in class.members.as_ref().expect("class smaller than its word set") {
            let idx = words
                .binary_search(member)
                .expect("class member is a reduced word of w");
            assigned.insert(words[idx].letters());
        }
        classes.push(class);
    }
    classes.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(classes)
}

/// Which of the three labelings to print on heap elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelMode {
    Position,
    Letter,
    #[default]
    Inversion,
}

impl FromStr for LabelMode {
    type Err = HeapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "position" => Ok(LabelMode::Position),
            "letter" => Ok(LabelMode::Letter),
            "inversion" => Ok(LabelMode::Inversion),
            other => Err(HeapError::UnknownLabelMode(other.to_string())),
        }
    }
}

/// The heap poset `P_C` of a commutation class, built from one of its words.
#[derive(Clone, PartialEq, Eq)]
pub struct HeapPoset {
    word: ReducedWord,
    inversions: Vec<(u8, u8)>,
    /// Strict down-sets.
    below: Vec<u128>,
    /// Strict up-sets.
    above: Vec<u128>,
    covers: Vec<(usize, usize)>,
    rank: Vec<usize>,
    height: Vec<usize>,
}

pub fn build_heap(word: &ReducedWord) -> HeapPoset {
    let len = word.len();
    let letters = word.letters();
    let mut below = vec![0u128; len];
    for k in 0..len {
        for j in 0..k {
            if letters[j].abs_diff(letters[k]) <= 1 {
                below[k] |= below[j] | 1u128 << j;
            }
        }
    }
    let mut above = vec![0u128; len];
    for (k, &down) in below.iter().enumerate() {
        for j in BitIter(down) {
            above[j] |= 1u128 << k;
        }
    }
    let mut covers = Vec::new();
    for k in 0..len {
        let covered = BitIter(below[k]).fold(0u128, |acc, j| acc | below[j]);
        for j in BitIter(below[k] & !covered) {
            covers.push((j, k));
        }
    }
    covers.sort_unstable();
    let mut rank = vec![0usize; len];
    for k in 0..len {
        rank[k] = BitIter(below[k]).map(|j| rank[j] + 1).max().unwrap_or(0);
    }
    let mut height = vec![0usize; len];
    for k in (0..len).rev() {
        height[k] = BitIter(above[k]).map(|j| height[j] + 1).max().unwrap_or(0);
    }
    let inversions = word
        .inversion_sequence()
        .into_iter()
        .map(|(a, b)| (a as u8, b as u8))
        .collect();
    HeapPoset {
        word: word.clone(),
        inversions,
        below,
        above,
        covers,
        rank,
        height,
    }
}

impl fmt::Debug for HeapPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeapPoset")
            .field("word", &self.word)
            .field("covers", &self.labeled_covers())
            .finish()
    }
}

impl HeapPoset {
    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.n()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Bitmask of all elements.
    pub fn all(&self) -> u128 {
        if self.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.len()) - 1
        }
    }

    pub fn permutation(&self) -> Permutation {
        self.word.permutation()
    }

    /// True when the heap's permutation is the longest permutation `w0`.
    pub fn is_maximal(&self) -> bool {
        self.permutation().is_longest()
    }

    pub fn letter(&self, x: usize) -> usize {
        self.word.letter(x)
    }

    pub fn inversion(&self, x: usize) -> (usize, usize) {
        let (a, b) = self.inversions[x];
        (a as usize, b as usize)
    }

    pub fn element_of_inversion(&self, a: usize, b: usize) -> Option<usize> {
        self.inversions
            .iter()
            .position(|&(x, y)| (x as usize, y as usize) == (a, b))
    }

    /// Cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Covers rendered through the inversion labeling, sorted. Two heaps of
    /// the same commutation class agree on this regardless of word.
    pub fn labeled_covers(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out: Vec<_> = self
            .covers
            .iter()
            .map(|&(x, y)| (self.inversion(x), self.inversion(y)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn strictly_below(&self, x: usize) -> u128 {
        self.below[x]
    }

    pub fn strictly_above(&self, x: usize) -> u128 {
        self.above[x]
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.below[y] >> x & 1 == 1
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Length of the longest chain ending at `x`.
    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// Length of the longest chain starting at `x`.
    pub fn height(&self, x: usize) -> usize {
        self.height[x]
    }

    pub fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    pub fn is_ideal(&self, set: u128) -> bool {
        BitIter(set).all(|x| self.below[x] & !set == 0)
    }

    pub fn is_antichain(&self, set: u128) -> bool {
        BitIter(set).all(|x| self.below[x] & set == 0)
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|x| (0..x).all(|y| self.less(y, x)))
    }

    /// Connected components as element masks, ordered by least element.
    pub fn components(&self) -> Vec<u128> {
        let mut seen = 0u128;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = 1u128 << start;
            loop {
                let grown = BitIter(comp).fold(comp, |acc, x| acc | self.below[x] | self.above[x]);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Streams every order ideal exactly once.
    pub fn order_ideals(&self) -> OrderIdeals<'_> {
        OrderIdeals {
            heap: self,
            stack: vec![(0, 0)],
        }
    }

    /// Splits the ideal enumeration into at least `target` independent
    /// subtrees (fewer when the heap is too small), in a fixed order.
    pub fn ideal_subtrees(&self, target: usize) -> Vec<OrderIdeals<'_>> {
        let mut level: Vec<u128> = vec![0];
        let mut t = 0;
        while level.len() < target && t < self.len() {
            let mut next = Vec::with_capacity(level.len() * 2);
            for &mask in &level {
                next.push(mask);
                if self.below[t] & !mask == 0 {
                    next.push(mask | 1u128 << t);
                }
            }
            level = next;
            t += 1;
        }
        level
            .into_iter()
            .map(|mask| OrderIdeals {
                heap: self,
                stack: vec![(t, mask)],
            })
            .collect()
    }

    /// `|J(P)|`.
    pub fn ideal_count(&self) -> Result<u128, HeapError> {
        self.count_ideals_of_convex(self.all())
    }

    /// Counts the order ideals of the subposet on `mask`, which must be
    /// convex (an ideal, a filter, or an intersection of such) so that its
    /// induced order is the heap of the corresponding subword.
    ///
    /// An ideal takes a prefix of the occurrences of each letter, and the
    /// only constraints tie neighbouring letters, so the count is a product
    /// of transfer matrices along the letters `1..n`.
    pub fn count_ideals_of_convex(&self, mask: u128) -> Result<u128, HeapError> {
        debug_assert!(self.is_convex(mask));
        let n = self.n();
        if n < 2 {
            return Ok(1);
        }
        let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in BitIter(mask) {
            occurrences[self.letter(x)].push(x);
        }
        let mut counts: Vec<u128> = vec![1; occurrences[1].len() + 1];
        for letter in 1..n - 1 {
            let lower = &occurrences[letter];
            let upper = &occurrences[letter + 1];
            // need_upper[k]: occurrences of letter+1 preceding the k-th
            // occurrence of `letter`, all of which must already be in
            let need_upper: Vec<usize> = std::iter::once(0)
                .chain(lower.iter().map(|&p| upper.partition_point(|&q| q < p)))
                .collect();
            let need_lower: Vec<usize> = std::iter::once(0)
                .chain(upper.iter().map(|&q| lower.partition_point(|&p| p < q)))
                .collect();
            let mut prefix = vec![0u128; counts.len() + 1];
            for (k, &c) in counts.iter().enumerate() {
                prefix[k + 1] = prefix[k].checked_add(c).ok_or(HeapError::Overflow)?;
            }
            let mut next = vec![0u128; upper.len() + 1];
            for (k_up, slot) in next.iter_mut().enumerate() {
                // need_upper is nondecreasing, so the admissible lower counts
                // form the interval [need_lower[k_up], hi)
                let lo = need_lower[k_up];
                let hi = need_upper.partition_point(|&need| need <= k_up);
                if lo < hi {
                    *slot = prefix[hi] - prefix[lo];
                }
            }
            counts = next;
        }
        counts
            .into_iter()
            .try_fold(0u128, |acc, c| acc.checked_add(c))
            .ok_or(HeapError::Overflow)
    }

    fn is_convex(&self, mask: u128) -> bool {
        BitIter(mask).all(|x| BitIter(mask).all(|y| !self.less(x, y) || (self.below[y] & self.above[x] & !mask) == 0))
    }

    /// The permutation in `Pre(C)` whose inversion set is the ideal's label
    /// set, read along the position order.
    pub fn ideal_to_permutation(&self, ideal: OrderIdeal) -> Permutation {
        let mut w = Permutation::identity(self.n());
        for x in ideal.members() {
            w.swap_in_place(self.letter(x));
        }
        w
    }

    /// Like [`Self::ideal_to_permutation`] but multiplying letters in the
    /// given order, which must list the ideal's members as a linear
    /// extension.
    pub fn ideal_to_permutation_along(&self, ideal: OrderIdeal, order: &[usize]) -> Option<Permutation> {
        let mut placed = 0u128;
        let mut w = Permutation::identity(self.n());
        for &x in order {
            if !ideal.contains(x) || placed >> x & 1 == 1 || self.below[x] & !placed != 0 {
                return None;
            }
            placed |= 1u128 << x;
            w.swap_in_place(self.letter(x));
        }
        (placed == ideal.bits()).then_some(w)
    }

    pub fn inversion_labels(&self, ideal: OrderIdeal) -> InversionSet {
        ideal.members().map(|x| self.inversion(x)).collect()
    }

    /// The ideal with the given inversion labels, if they form one.
    pub fn ideal_of_inversions(&self, inversions: InversionSet) -> Option<OrderIdeal> {
        let mut mask = 0u128;
        for (a, b) in inversions.pairs() {
            mask |= 1u128 << self.element_of_inversion(a, b)?;
        }
        self.is_ideal(mask).then_some(OrderIdeal(mask))
    }

    /// The domain `Pre(C)`, in ideal enumeration order.
    pub fn domain(&self) -> Vec<Permutation> {
        self.order_ideals().map(|i| self.ideal_to_permutation(i)).collect()
    }

    pub fn to_dot(&self, mode: LabelMode) -> String {
        let mut out = String::from("digraph heap {\n  rankdir=BT;\n  node [shape=circle];\n");
        for x in 0..self.len() {
            out.push_str(&format!("  p{} [label=\"{}\"];\n", x + 1, self.label(x, mode)));
        }
        for &(x, y) in &self.covers {
            out.push_str(&format!("  p{} -> p{};\n", x + 1, y + 1));
        }
        out.push_str("}\n");
        out
    }

    pub fn label(&self, x: usize, mode: LabelMode) -> String {
        match mode {
            LabelMode::Position => (x + 1).to_string(),
            LabelMode::Letter => format!("s{}", self.letter(x)),
            LabelMode::Inversion => {
                let (a, b) = self.inversion(x);
                pair_label(a, b)
            }
        }
    }

    /// JSON export of elements with all three labels and the 1-based covers.
    pub fn to_json(&self) -> Value {
        let elements: Vec<Value> = (0..self.len())
            .map(|x| {
                json!({
                    "position": x + 1,
                    "letter": self.letter(x),
                    "inversion": self.label(x, LabelMode::Inversion),
                })
            })
            .collect();
        let covers: Vec<Value> = self.covers.iter().map(|&(x, y)| json!([x + 1, y + 1])).collect();
        json!({
            "word": self.word.to_string(),
            "n": self.n(),
            "permutation": self.permutation().to_string(),
            "elements": elements,
            "covers": covers,
        })
    }
}

/// Depth-first stream of order ideals. Elements are decided in position
/// order, which is a linear extension, so including an element only needs
/// its down-set to be present already; excluding is always possible.
#[derive(Clone)]
pub struct OrderIdeals<'a> {
    heap: &'a HeapPoset,
    stack: Vec<(usize, u128)>,
}

impl Iterator for OrderIdeals<'_> {
    type Item = OrderIdeal;

    fn next(&mut self) -> Option<OrderIdeal> {
        while let Some((t, mask)) = self.stack.pop() {
            if t == self.heap.len() {
                return Some(OrderIdeal(mask));
            }
            self.stack.push((t + 1, mask));
            if self.heap.below[t] & !mask == 0 {
                self.stack.push((t + 1, mask | 1u128 << t));
            }
        }
        None
    }
}

/// True unless some triple `{a, b, c}` is ordered by the domain in all three
/// rotations of one cyclic orientation.
pub fn is_condorcet_domain(domain: &[Permutation]) -> bool {
    let Some(first) = domain.first() else {
        return true;
    };
    let n = first.n();
    if domain.iter().any(|w| w.n() != n) {
        return false;
    }
    let positions: Vec<Vec<usize>> = domain.iter().map(|w| w.positions()).collect();
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                let mut seen = 0u8;
                for pos in &positions {
                    let (pa, pb, pc) = (pos[a], pos[b], pos[c]);
                    let pattern = if pa < pb && pb < pc {
                        0 // a b c
                    } else if pb < pc && pc < pa {
                        1 // b c a
                    } else if pc < pa && pa < pb {
                        2 // c a b
                    } else if pa < pc && pc < pb {
                        3 // a c b
                    } else if pc < pb && pb < pa {
                        4 // c b a
                    } else {
                        5 // b a c
                    };
                    seen |= 1 << pattern;
                }
                if seen & 0b000111 == 0b000111 || seen & 0b111000 == 0b111000 {
                    return false;
                }
            }
        }
    }
    true
}

/// The set of permutations, for membership tests.
pub fn domain_set(heap: &HeapPoset) -> BTreeSet<Permutation> {
    heap.domain().into_iter().collect()
}
