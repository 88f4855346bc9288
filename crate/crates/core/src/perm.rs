//! Permutations of `[n]` in one-line notation, reduced words, inversion sets,
//! direct sums and S-support.
//!
//! Everything is 1-indexed: a permutation of `[n]` stores the values `1..=n`,
//! and the letter `i` of a word stands for the adjacent transposition `s_i`.
//! Multiplying by `s_i` on the right swaps the entries in positions `i` and
//! `i + 1` of the one-line word built so far, so the word `(2,1,3,2,6,5)`
//! walks `1234567 -> 1324567 -> 3124567 -> 3142567 -> 3412567 -> 3412576 ->
//! 3412756`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported rank. Inversion sets are `u128` bitsets over the
/// `C(16, 2) = 120` pairs and heap element sets are `u128` bitsets over
/// positions of a reduced word, whose length never exceeds 120.
pub const MAX_RANK: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("a permutation needs at least one entry")]
    Empty,
    #[error("entry {value} appears more than once")]
    DuplicateEntry { value: usize },
    #[error("entry {value} is outside 1..={n}")]
    OutOfRange { value: usize, n: usize },
    #[error("rank {n} exceeds the supported maximum {max}")]
    RankTooLarge { n: usize, max: usize },
    #[error("letter {letter} is outside 1..{n} for rank {n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("word {word} is not reduced")]
    NotReduced { word: String },
    #[error("cannot parse `{0}`")]
    Parse(String),
}

impl PermError {
    pub fn code(&self) -> &'static str {
        match self {
            PermError::Empty => "Empty",
            PermError::DuplicateEntry { .. } => "DuplicateEntry",
            PermError::OutOfRange { .. } => "OutOfRange",
            PermError::RankTooLarge { .. } => "RankTooLarge",
            PermError::LetterOutOfRange { .. } => "LetterOutOfRange",
            PermError::NotReduced { .. } => "NotReduced",
            PermError::Parse(_) => "Parse",
        }
    }
}

/// Bit index of the pair `(a, b)`, `1 <= a < b`. The index does not depend on
/// `n`, so sets over different ranks compare sensibly.
#[inline]
pub fn pair_index(a: usize, b: usize) -> usize {
    debug_assert!(1 <= a && a < b && b <= MAX_RANK);
    (b - 1) * (b - 2) / 2 + (a - 1)
}

#[inline]
pub fn pair_from_index(idx: usize) -> (usize, usize) {
    let mut b = 2;
    while (b - 1) * b / 2 <= idx {
        b += 1;
    }
    let a = idx - (b - 1) * (b - 2) / 2 + 1;
    (a, b)
}

/// Renders a pair without punctuation (`13`) when both values are single
/// digits, and as `a,b` otherwise.
pub fn pair_label(a: usize, b: usize) -> String {
    if b <= 9 {
        format!("{a}{b}")
    } else {
        format!("{a},{b}")
    }
}

/// Parses the labels produced by [`pair_label`].
pub fn parse_pair_label(s: &str) -> Result<(usize, usize), PermError> {
    let bad = || PermError::Parse(s.to_string());
    let (a, b) = if let Some((a, b)) = s.split_once(',') {
        (
            a.trim().parse::<usize>().map_err(|_| bad())?,
            b.trim().parse::<usize>().map_err(|_| bad())?,
        )
    } else {
        let digits: Vec<usize> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(bad)?;
        if digits.len() != 2 {
            return Err(bad());
        }
        (digits[0], digits[1])
    };
    if a == 0 || a >= b || b > MAX_RANK {
        return Err(bad());
    }
    Ok((a, b))
}

/// Set of inversion pairs `(a, b)` with `a < b`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionSet(u128);

impl InversionSet {
    pub const fn empty() -> Self {
        InversionSet(0)
    }

    pub const fn from_bits(bits: u128) -> Self {
        InversionSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.0 |= 1u128 << pair_index(a, b);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.0 &= !(1u128 << pair_index(a, b));
    }

    pub fn contains(self, a: usize, b: usize) -> bool {
        self.0 >> pair_index(a, b) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: InversionSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: InversionSet) -> InversionSet {
        InversionSet(self.0 | other.0)
    }

    pub fn difference(self, other: InversionSet) -> InversionSet {
        InversionSet(self.0 & !other.0)
    }

    /// Pairs sorted by `(a, b)`.
    pub fn pairs(self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = BitIter(self.0).map(pair_from_index).collect();
        out.sort_unstable();
        out
    }
}

impl FromIterator<(usize, usize)> for InversionSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        let mut set = InversionSet::empty();
        for (a, b) in iter {
            set.insert(a, b);
        }
        set
    }
}

impl fmt::Debug for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.pairs().into_iter().map(|(a, b)| pair_label(a, b)).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// Iterates the set bits of a `u128`, lowest first.
#[derive(Clone, Copy)]
pub struct BitIter(pub u128);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    pub fn from_one_line(entries: &[usize]) -> Result<Self, PermError> {
        let n = entries.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        if n > MAX_RANK {
            return Err(PermError::RankTooLarge { n, max: MAX_RANK });
        }
        let mut seen = [false; MAX_RANK + 1];
        for &value in entries {
            if value == 0 || value > n {
                return Err(PermError::OutOfRange { value, n });
            }
            if seen[value] {
                return Err(PermError::DuplicateEntry { value });
            }
            seen[value] = true;
        }
        Ok(Permutation {
            entries: entries.iter().map(|&v| v as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&n), "rank {n} out of range");
        Permutation {
            entries: (1..=n as u8).collect(),
        }
    }

    /// The longest permutation `w0 = (n, n-1, ..., 1)`.
    pub fn longest(n: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&n), "rank {n} out of range");
        Permutation {
            entries: (1..=n as u8).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.entries.iter().map(|&v| v as usize).collect()
    }

    /// `positions()[v]` is the 0-based position of value `v` (index 0 unused).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.n() + 1];
        for (i, &v) in self.entries.iter().enumerate() {
            pos[v as usize] = i;
        }
        pos
    }

    /// `a <_w b`: value `a` appears before value `b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        let pos = self.positions();
        pos[a] < pos[b]
    }

    pub fn inversion_set(&self) -> InversionSet {
        let mut set = InversionSet::empty();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let (x, y) = (self.entries[i] as usize, self.entries[j] as usize);
                if x > y {
                    set.insert(y, x);
                }
            }
        }
        set
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.entries[i] > self.entries[j] {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    pub fn is_longest(&self) -> bool {
        let n = self.n();
        self.entries.iter().enumerate().all(|(i, &v)| v as usize == n - i)
    }

    /// Right multiplication by `s_letter`: swaps positions `letter` and
    /// `letter + 1`. Returns the pair `(a, b)`, `a < b`, whose relative order
    /// changed and whether it became an inversion.
    pub(crate) fn swap_in_place(&mut self, letter: usize) -> ((usize, usize), bool) {
        let (x, y) = (self.entries[letter - 1], self.entries[letter]);
        self.entries.swap(letter - 1, letter);
        if x < y {
            ((x as usize, y as usize), true)
        } else {
            ((y as usize, x as usize), false)
        }
    }

    pub fn times_letter(&self, letter: usize) -> Result<Permutation, PermError> {
        if letter == 0 || letter >= self.n() {
            return Err(PermError::LetterOutOfRange { letter, n: self.n() });
        }
        let mut out = self.clone();
        out.swap_in_place(letter);
        Ok(out)
    }

    /// A reduced word for this permutation, obtained by repeatedly sorting
    /// away the leftmost descent.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut current = self.clone();
        let mut letters = Vec::with_capacity(self.length());
        while let Some(i) = (0..current.n().saturating_sub(1)).find(|&i| current.entries[i] > current.entries[i + 1]) {
            current.entries.swap(i, i + 1);
            letters.push((i + 1) as u8);
        }
        letters.reverse();
        ReducedWord {
            n: self.n() as u8,
            letters,
        }
    }

    /// The permutation with the given inversion set, if one exists.
    pub fn from_inversion_set(n: usize, inversions: InversionSet) -> Option<Permutation> {
        if n == 0 || n > MAX_RANK {
            return None;
        }
        if inversions.bits() >> (n * (n - 1) / 2) != 0 {
            return None;
        }
        // b goes before a exactly when (a, b) is an inversion; the position of
        // x is the number of values placed before it
        let mut values = vec![0usize; n];
        for x in 1..=n {
            let before = (1..=n)
                .filter(|&y| y != x)
                .filter(|&y| {
                    if y < x {
                        !inversions.contains(y, x)
                    } else {
                        inversions.contains(x, y)
                    }
                })
                .count();
            if values[before] != 0 {
                return None;
            }
            values[before] = x;
        }
        let w = Permutation::from_one_line(&values).ok()?;
        if w.inversion_set() == inversions {
            Some(w)
        } else {
            None
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| PermError::Parse(s.to_string())))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| PermError::Parse(s.to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::from_one_line(&entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A reduced word `(i_1, ..., i_l)` for a permutation of `[n]`. Reducedness is
/// checked on construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    n: u8,
    letters: Vec<u8>,
}

fn check_letters(n: usize, letters: &[usize]) -> Result<(), PermError> {
    if n == 0 {
        return Err(PermError::Empty);
    }
    if n > MAX_RANK {
        return Err(PermError::RankTooLarge { n, max: MAX_RANK });
    }
    match letters.iter().find(|&&l| l == 0 || l >= n) {
        Some(&letter) => Err(PermError::LetterOutOfRange { letter, n }),
        None => Ok(()),
    }
}

fn format_letters<T: fmt::Display>(letters: &[T]) -> String {
    let parts: Vec<String> = letters.iter().map(|l| l.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Multiplies the identity of `S_n` by `s_{i_1} ... s_{i_l}` left to right.
/// The word need not be reduced.
pub fn apply_word(n: usize, letters: &[usize]) -> Result<Permutation, PermError> {
    check_letters(n, letters)?;
    let mut w = Permutation::identity(n);
    for &l in letters {
        w.swap_in_place(l);
    }
    Ok(w)
}

pub fn is_reduced(n: usize, letters: &[usize]) -> Result<bool, PermError> {
    check_letters(n, letters)?;
    let mut w = Permutation::identity(n);
    for &l in letters {
        if !w.swap_in_place(l).1 {
            return Ok(false);
        }
    }
    Ok(true)
}

impl ReducedWord {
    pub fn new(n: usize, letters: &[usize]) -> Result<Self, PermError> {
        if !is_reduced(n, letters)? {
            return Err(PermError::NotReduced {
                word: format_letters(letters),
            });
        }
        Ok(ReducedWord {
            n: n as u8,
            letters: letters.iter().map(|&l| l as u8).collect(),
        })
    }

    /// Builds a word with `n = 1 + max letter` (or `n = 1` for the empty
    /// word).
    pub fn infer(letters: &[usize]) -> Result<Self, PermError> {
        let n = letters.iter().copied().max().unwrap_or(0) + 1;
        Self::new(n, letters)
    }

    pub fn empty(n: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&n), "rank {n} out of range");
        ReducedWord {
            n: n as u8,
            letters: Vec::new(),
        }
    }

    /// Skips the reducedness check; callers guarantee it.
    pub(crate) fn from_raw(n: usize, letters: Vec<u8>) -> Self {
        debug_assert!(is_reduced(n, &letters.iter().map(|&l| l as usize).collect::<Vec<_>>()).unwrap_or(false));
        ReducedWord { n: n as u8, letters }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn letter(&self, position: usize) -> usize {
        self.letters[position] as usize
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.letters.iter().map(|&l| l as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn permutation(&self) -> Permutation {
        let mut w = Permutation::identity(self.n());
        for &l in &self.letters {
            w.swap_in_place(l as usize);
        }
        w
    }

    /// The product of the first `len` letters.
    pub fn prefix_permutation(&self, len: usize) -> Permutation {
        let mut w = Permutation::identity(self.n());
        for &l in &self.letters[..len] {
            w.swap_in_place(l as usize);
        }
        w
    }

    /// The inversion created by each letter, in order.
    pub fn inversion_sequence(&self) -> Vec<(usize, usize)> {
        let mut w = Permutation::identity(self.n());
        self.letters.iter().map(|&l| w.swap_in_place(l as usize).0).collect()
    }

    /// Same letters viewed in a larger ambient rank.
    pub fn with_rank(&self, n: usize) -> Result<Self, PermError> {
        check_letters(n, &self.to_vec())?;
        Ok(ReducedWord {
            n: n as u8,
            letters: self.letters.clone(),
        })
    }
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_letters(&self.letters))
    }
}

/// Parses `2,1,3` or `(2,1,3)` into letters. An empty string or `()` is the
/// empty word.
pub fn parse_letters(s: &str) -> Result<Vec<usize>, PermError> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| PermError::Parse(s.to_string())))
        .collect()
}

impl FromStr for ReducedWord {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ReducedWord::infer(&parse_letters(s)?)
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `w1 ⊕ w2`: `w1` followed by `w2` shifted up by `n1`.
pub fn direct_sum(w1: &Permutation, w2: &Permutation) -> Permutation {
    let n1 = w1.n() as u8;
    let mut entries = w1.entries.clone();
    entries.extend(w2.entries.iter().map(|&v| v + n1));
    assert!(entries.len() <= MAX_RANK, "direct sum exceeds rank {MAX_RANK}");
    Permutation { entries }
}

/// The set of distinct letters of a reduced word.
pub fn s_support(word: &ReducedWord) -> BTreeSet<usize> {
    word.letters.iter().map(|&l| l as usize).collect()
}

/// Like [`s_support`] but validates reducedness of raw letters first.
pub fn s_support_of(n: usize, letters: &[usize]) -> Result<BTreeSet<usize>, PermError> {
    Ok(s_support(&ReducedWord::new(n, letters)?))
}

/// The finest list of indecomposable blocks whose direct sum is `w`.
pub fn decompose(w: &Permutation) -> Vec<Permutation> {
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut max_seen = 0;
    for (i, &v) in w.entries.iter().enumerate() {
        max_seen = max_seen.max(v as usize);
        if max_seen == i + 1 {
            let block: Vec<u8> = w.entries[start..=i].iter().map(|&x| x - start as u8).collect();
            blocks.push(Permutation { entries: block });
            start = i + 1;
        }
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn one_line_construction() {
        let w = Permutation::from_one_line(&[3, 4, 1, 2, 7, 5, 6]).unwrap();
        assert_eq!(w.n(), 7);
        assert_eq!(w.to_string(), "3412756");
        let e = Permutation::from_one_line(&[1, 2, 3]).unwrap();
        assert!(e.is_identity());
        assert_eq!(e.length(), 0);
        assert_eq!(
            Permutation::from_one_line(&[2, 1, 3, 4, 3]),
            Err(PermError::DuplicateEntry { value: 3 })
        );
        assert_eq!(
            Permutation::from_one_line(&[1, 5]),
            Err(PermError::OutOfRange { value: 5, n: 2 })
        );
        assert_eq!(Permutation::from_one_line(&[]), Err(PermError::Empty));
    }

    #[test]
    fn inversion_sets() {
        let inv = p("3412756").inversion_set();
        assert_eq!(inv.pairs(), vec![(1, 3), (1, 4), (2, 3), (2, 4), (5, 7), (6, 7)]);
        assert_eq!(inv.to_string(), "{13,14,23,24,57,67}");
        assert!(Permutation::identity(5).inversion_set().is_empty());
        assert_eq!(Permutation::longest(4).inversion_set().len(), 6);
    }

    #[test]
    fn applying_words() {
        assert_eq!(apply_word(7, &[2, 1, 3, 2, 6, 5]).unwrap(), p("3412756"));
        assert_eq!(apply_word(5, &[]).unwrap(), p("12345"));
        assert_eq!(apply_word(3, &[1, 1]).unwrap(), p("123"));
        assert!(!is_reduced(3, &[1, 1]).unwrap());
        assert!(is_reduced(7, &[2, 1, 3, 2, 6, 5]).unwrap());
        assert!(is_reduced(3, &[1, 2, 1]).unwrap());
        assert!(!is_reduced(3, &[1, 2, 1, 2]).unwrap());
        assert_eq!(
            apply_word(3, &[3]),
            Err(PermError::LetterOutOfRange { letter: 3, n: 3 })
        );
    }

    #[test]
    fn running_example_chain() {
        let word = ReducedWord::new(7, &[2, 1, 3, 2, 6, 5]).unwrap();
        let chain: Vec<String> = (0..=6).map(|k| word.prefix_permutation(k).to_string()).collect();
        assert_eq!(
            chain,
            ["1234567", "1324567", "3124567", "3142567", "3412567", "3412576", "3412756"]
        );
        assert_eq!(
            word.inversion_sequence(),
            vec![(2, 3), (1, 3), (2, 4), (1, 4), (6, 7), (5, 7)]
        );
    }

    #[test]
    fn direct_sums_and_decomposition() {
        assert_eq!(direct_sum(&p("3412"), &p("312")), p("3412756"));
        assert_eq!(direct_sum(&p("21"), &p("21")), p("2143"));
        assert_eq!(direct_sum(&p("12"), &p("123")), p("12345"));
        assert_eq!(decompose(&p("3412756")), vec![p("3412"), p("312")]);
        assert_eq!(decompose(&p("123")), vec![p("1"), p("1"), p("1")]);
        assert_eq!(decompose(&p("4321")), vec![p("4321")]);
    }

    #[test]
    fn support() {
        let word = ReducedWord::new(7, &[2, 1, 3, 2, 6, 5]).unwrap();
        assert_eq!(s_support(&word), BTreeSet::from([1, 2, 3, 5, 6]));
        let w0 = Permutation::longest(4).reduced_word();
        assert_eq!(s_support(&w0), BTreeSet::from([1, 2, 3]));
        assert_eq!(s_support_of(4, &[1]).unwrap(), BTreeSet::from([1]));
        assert!(matches!(s_support_of(3, &[1, 1]), Err(PermError::NotReduced { .. })));
    }

    #[test]
    fn reduced_word_of_permutation() {
        for s in ["3412756", "4321", "1", "2143", "623145"] {
            let w = p(s);
            let word = w.reduced_word();
            assert_eq!(word.len(), w.length());
            assert_eq!(word.permutation(), w);
        }
    }

    #[test]
    fn text_forms() {
        let big = Permutation::longest(11);
        assert_eq!(big.to_string(), "11,10,9,8,7,6,5,4,3,2,1");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        let word: ReducedWord = "(2,1,3,2,6,5)".parse().unwrap();
        assert_eq!(word.n(), 7);
        assert_eq!(word.to_string(), "(2,1,3,2,6,5)");
        assert_eq!(pair_label(1, 12), "1,12");
        assert_eq!(parse_pair_label("1,12").unwrap(), (1, 12));
        assert_eq!(parse_pair_label("57").unwrap(), (5, 7));
    }

    #[test]
    fn pair_index_roundtrip() {
        for b in 2..=MAX_RANK {
            for a in 1..b {
                assert_eq!(pair_from_index(pair_index(a, b)), (a, b));
            }
        }
        assert_eq!(pair_index(15, 16), 119);
    }

    #[test]
    fn inversion_set_inverse() {
        let w = p("3142576");
        assert_eq!(Permutation::from_inversion_set(7, w.inversion_set()), Some(w));
        // {12, 23} without 13 is not the inversion set of anything
        let bad: InversionSet = [(1, 2), (2, 3)].into_iter().collect();
        assert_eq!(Permutation::from_inversion_set(3, bad), None);
    }
}
