//! Vote tallies, tally functions on heap posets, and majority relations.
//!
//! Three routes to the same relation are provided: the tally-function route
//! over the ideal stream (any positive tally supported on `Pre(C)`), the
//! uniform route that counts ideals of filtered subposets without touching
//! the domain, and [`brute_force_majority`], which sums votes directly and
//! works for any tally at all. Thresholds are compared as `Σ > |ρ| - Σ`
//! (equivalently `2Σ > |ρ|`) in exact 128-bit integers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde_json::Value;
use thiserror::Error;

use crate::heap::{build_heap, HeapError, HeapPoset, OrderIdeal};
use crate::parallel::{self, Execution};
use crate::perm::{pair_label, PermError, Permutation, ReducedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MajorityError {
    #[error(
        "tally support differs from Pre(C): {missing} domain permutations have no votes{}, {extra} supported permutations lie outside the domain{}",
        .first_missing.as_ref().map(|w| format!(" (e.g. {w})")).unwrap_or_default(),
        .first_extra.as_ref().map(|w| format!(" (e.g. {w})")).unwrap_or_default()
    )]
    SupportMismatch {
        missing: usize,
        extra: usize,
        first_missing: Option<Permutation>,
        first_extra: Option<Permutation>,
    },
    #[error("tally is not strictly decreasing: {lower} < {upper} in the heap but the tally does not drop")]
    NotDecreasing { lower: String, upper: String },
    #[error("u and v do not form a prelinear order with simple ties: {0}")]
    NotIntersectable(String),
    #[error("tally arithmetic overflowed 128 bits")]
    Overflow,
    #[error("tally ranks disagree: expected n={expected}, found n={found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("malformed tally: {0}")]
    BadTally(String),
    #[error(transparent)]
    Heap(#[from] HeapError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

impl MajorityError {
    pub fn code(&self) -> &'static str {
        match self {
            MajorityError::SupportMismatch { .. } => "SupportMismatch",
            MajorityError::NotDecreasing { .. } => "NotDecreasing",
            MajorityError::NotIntersectable(_) => "NotIntersectable",
            MajorityError::Overflow => "Overflow",
            MajorityError::RankMismatch { .. } => "RankMismatch",
            MajorityError::BadTally(_) => "BadTally",
            MajorityError::Heap(e) => e.code(),
            MajorityError::Perm(e) => e.code(),
        }
    }
}

/// Voter counts per preference order. Only positive counts are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteTally {
    n: usize,
    counts: BTreeMap<Permutation, u128>,
}

impl VoteTally {
    pub fn new(n: usize) -> Self {
        VoteTally {
            n,
            counts: BTreeMap::new(),
        }
    }

    /// The uniform tally `1_D`.
    pub fn uniform<'a, I: IntoIterator<Item = &'a Permutation>>(n: usize, domain: I) -> Result<Self, MajorityError> {
        let mut tally = VoteTally::new(n);
        for w in domain {
            tally.set(w.clone(), 1)?;
        }
        Ok(tally)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, w: Permutation, count: u128) -> Result<(), MajorityError> {
        if w.n() != self.n {
            return Err(MajorityError::RankMismatch {
                expected: self.n,
                found: w.n(),
            });
        }
        if count == 0 {
            self.counts.remove(&w);
        } else {
            self.counts.insert(w, count);
        }
        Ok(())
    }

    pub fn get(&self, w: &Permutation) -> u128 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    /// `supp(ρ)` in sorted order.
    pub fn support(&self) -> impl Iterator<Item = &Permutation> {
        self.counts.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Permutation, u128)> {
        self.counts.iter().map(|(w, &c)| (w, c))
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    /// `|ρ|`.
    pub fn total(&self) -> Result<u128, MajorityError> {
        self.counts
            .values()
            .try_fold(0u128, |acc, &c| acc.checked_add(c))
            .ok_or(MajorityError::Overflow)
    }

    /// Parses a JSON object mapping one-line permutations to counts given as
    /// integers or decimal strings. Zero counts are dropped.
    pub fn from_json(n: usize, text: &str) -> Result<Self, MajorityError> {
        let value: Value = serde_json::from_str(text).map_err(|e| MajorityError::BadTally(e.to_string()))?;
        let object = value
            .as_object()
            .ok_or_else(|| MajorityError::BadTally("expected a JSON object".into()))?;
        let mut tally = VoteTally::new(n);
        for (key, count) in object {
            let w: Permutation = key.parse()?;
            let count = match count {
                Value::String(s) => s.parse::<u128>().ok(),
                Value::Number(num) => num.as_u64().map(u128::from),
                _ => None,
            }
            .ok_or_else(|| MajorityError::BadTally(format!("count for {key} is not a non-negative integer")))?;
            tally.set(w, count)?;
        }
        Ok(tally)
    }

    /// JSON object with decimal-string counts.
    pub fn to_json(&self) -> Value {
        Value::Object(
            self.counts
                .iter()
                .map(|(w, c)| (w.to_string(), Value::String(c.to_string())))
                .collect(),
        )
    }
}

/// `Σ_ρ` indexed by heap element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TallyFunction {
    values: Vec<u128>,
}

impl TallyFunction {
    pub fn from_values(values: Vec<u128>) -> Self {
        TallyFunction { values }
    }

    pub fn get(&self, x: usize) -> u128 {
        self.values[x]
    }

    pub fn values(&self) -> &[u128] {
        &self.values
    }

    /// Values keyed by inversion pair.
    pub fn by_inversion(&self, heap: &HeapPoset) -> BTreeMap<(usize, usize), u128> {
        self.values
            .iter()
            .enumerate()
            .map(|(x, &v)| (heap.inversion(x), v))
            .collect()
    }

    /// First cover `x < y` with `Σ(x) <= Σ(y)`, if any.
    pub fn decrease_violation(&self, heap: &HeapPoset) -> Option<(usize, usize)> {
        heap.covers()
            .iter()
            .copied()
            .find(|&(x, y)| self.values[x] <= self.values[y])
    }
}

fn subtree_target(exec: Execution) -> usize {
    if exec.is_parallel() {
        256
    } else {
        1
    }
}

/// `Σ_ρ(ab) = Σ ρ(w')` over `w' ∈ Pre(C)` inverting `ab`, by one sweep over
/// the ideal stream. Requires `supp(ρ) = Pre(C)` exactly.
pub fn tally_function(heap: &HeapPoset, rho: &VoteTally, exec: Execution) -> Result<TallyFunction, MajorityError> {
    if rho.n() != heap.n() {
        return Err(MajorityError::RankMismatch {
            expected: heap.n(),
            found: rho.n(),
        });
    }
    struct Partial {
        sums: Vec<u128>,
        hits: usize,
        missing: usize,
        first_missing: Option<Permutation>,
    }
    let subtrees = heap.ideal_subtrees(subtree_target(exec));
    let partials = parallel::try_map(exec, &subtrees, |stream| {
        let mut part = Partial {
            sums: vec![0; heap.len()],
            hits: 0,
            missing: 0,
            first_missing: None,
        };
        for ideal in stream.clone() {
            let w = heap.ideal_to_permutation(ideal);
            let weight = rho.get(&w);
            if weight == 0 {
                part.missing += 1;
                part.first_missing.get_or_insert(w);
                continue;
            }
            part.hits += 1;
            for x in ideal.members() {
                part.sums[x] = part.sums[x].checked_add(weight).ok_or(MajorityError::Overflow)?;
            }
        }
        Ok::<_, MajorityError>(part)
    })?;
    let mut sums = vec![0u128; heap.len()];
    let (mut hits, mut missing, mut first_missing) = (0, 0, None);
    for part in partials {
        for (acc, s) in sums.iter_mut().zip(&part.sums) {
            *acc = acc.checked_add(*s).ok_or(MajorityError::Overflow)?;
        }
        hits += part.hits;
        missing += part.missing;
        if first_missing.is_none() {
            first_missing = part.first_missing;
        }
    }
    let extra = rho.support_len() - hits;
    if missing > 0 || extra > 0 {
        let first_extra = if extra > 0 {
            rho.support()
                .find(|w| heap.ideal_of_inversions(w.inversion_set()).is_none())
                .cloned()
        } else {
            None
        };
        return Err(MajorityError::SupportMismatch {
            missing,
            extra,
            first_missing,
            first_extra,
        });
    }
    Ok(TallyFunction { values: sums })
}

/// The uniform tally function `Σ(x) = |J(P_{≰x})|`, computed by counting
/// ideals of the filter of elements not below `x`; the domain is never
/// materialized.
pub fn uniform_tally_function(heap: &HeapPoset, exec: Execution) -> Result<TallyFunction, HeapError> {
    let elements: Vec<usize> = (0..heap.len()).collect();
    let values = parallel::try_map(exec, &elements, |&x| {
        let filter = heap.all() & !(heap.strictly_below(x) | 1u128 << x);
        heap.count_ideals_of_convex(filter)
    })?;
    Ok(TallyFunction { values })
}

fn ideal_where(heap: &HeapPoset, keep: impl Fn(u128) -> bool) -> OrderIdeal {
    OrderIdeal::from_bits(
        (0..heap.len())
            .filter(|&x| keep(x as u128))
            .fold(0u128, |m, x| m | 1u128 << x),
    )
}

/// `(u, v)` with `Inv(u) = {Σ > |ρ|/2}` and `Inv(v) = {Σ >= |ρ|/2}`.
pub fn majority_uv(
    heap: &HeapPoset,
    tally: &TallyFunction,
    total: u128,
) -> Result<(Permutation, Permutation), MajorityError> {
    if let Some((x, y)) = tally.decrease_violation(heap) {
        let (a, b) = heap.inversion(x);
        let (c, d) = heap.inversion(y);
        return Err(MajorityError::NotDecreasing {
            lower: pair_label(a, b),
            upper: pair_label(c, d),
        });
    }
    if tally.values.iter().any(|&s| s > total) {
        return Err(MajorityError::BadTally("a tally value exceeds the total".into()));
    }
    let strict = ideal_where(heap, |x| {
        let s = tally.values[x as usize];
        s > total - s
    });
    let weak = ideal_where(heap, |x| {
        let s = tally.values[x as usize];
        s >= total - s
    });
    debug_assert!(heap.is_ideal(strict.bits()) && heap.is_ideal(weak.bits()));
    Ok((heap.ideal_to_permutation(strict), heap.ideal_to_permutation(weak)))
}

/// An ordered set partition `(B_1, ..., B_m)` of `[n]`; earlier blocks beat
/// later ones and values sharing a block are tied.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrelinearOrder {
    n: usize,
    blocks: Vec<Vec<u8>>,
}

impl PrelinearOrder {
    /// Blocks are sorted internally; they must partition `[n]`.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self, MajorityError> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &v in blocks.iter().flatten() {
            if v == 0 || v > n || seen[v] {
                return Err(MajorityError::NotIntersectable(format!(
                    "blocks do not partition [{n}]"
                )));
            }
            seen[v] = true;
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(MajorityError::NotIntersectable("empty block".into()));
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.into_iter().map(|v| v as u8).collect()
            })
            .collect();
        Ok(PrelinearOrder { n, blocks })
    }

    /// The total order `<_w`.
    pub fn total(w: &Permutation) -> Self {
        PrelinearOrder {
            n: w.n(),
            blocks: w.entries().iter().map(|&v| vec![v]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn max_block_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_total(&self) -> bool {
        self.max_block_size() <= 1
    }

    /// Tied pairs `(a, b)`, `a < b`, from blocks of size two.
    pub fn ties(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .filter(|b| b.len() == 2)
            .map(|b| (b[0] as usize, b[1] as usize))
            .collect()
    }

    pub fn block_index(&self, value: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&(value as u8)))
            .expect("value in [n]")
    }

    /// The other member of `value`'s block when the block has size two.
    pub fn partner(&self, value: usize) -> Option<usize> {
        let block = &self.blocks[self.block_index(value)];
        (block.len() == 2).then(|| block.iter().map(|&v| v as usize).find(|&v| v != value).unwrap())
    }

    pub fn to_relation(&self) -> BinaryRelation {
        let mut pairs = BTreeSet::new();
        for (r, earlier) in self.blocks.iter().enumerate() {
            for later in &self.blocks[r + 1..] {
                for &a in earlier {
                    for &b in later {
                        pairs.insert((a, b));
                    }
                }
            }
        }
        BinaryRelation { n: self.n, pairs }
    }

    /// The prelinear order whose relation is `relation`, if it is one.
    pub fn from_relation(relation: &BinaryRelation) -> Option<Self> {
        let n = relation.n;
        let mut beaten_by = vec![0usize; n + 1];
        for &(_, b) in &relation.pairs {
            beaten_by[b as usize] += 1;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 1..=n {
            groups.entry(beaten_by[v]).or_default().push(v);
        }
        let candidate = PrelinearOrder::new(groups.into_values().collect()).ok()?;
        (candidate.to_relation() == *relation).then_some(candidate)
    }

    /// Compact rendering without spaces, e.g. `3{24}{15}`. Only
    /// unambiguous for `n <= 9`.
    pub fn compact(&self) -> String {
        self.blocks
            .iter()
            .map(|b| match b.as_slice() {
                [v] => v.to_string(),
                many => format!("{{{}}}", many.iter().map(|v| v.to_string()).collect::<String>()),
            })
            .collect()
    }
}

impl fmt::Display for PrelinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| match b.as_slice() {
                [v] => v.to_string(),
                many => format!(
                    "{{{}}}",
                    many.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
                ),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for PrelinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PrelinearOrder {
    type Err = MajorityError;

    /// Accepts the spaced form `{1 3} {2 4} 5 7 6` and the compact form
    /// `{13}{24}576`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MajorityError::NotIntersectable(format!("cannot parse prelinear order `{s}`"));
        let spaced = s.trim().contains(char::is_whitespace);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut open: Option<Vec<usize>> = None;
        let mut number = String::new();
        let flush = |number: &mut String,
                     open: &mut Option<Vec<usize>>,
                     blocks: &mut Vec<Vec<usize>>|
         -> Result<(), MajorityError> {
            if number.is_empty() {
                return Ok(());
            }
            let v: usize = number.parse().map_err(|_| bad())?;
            number.clear();
            match open {
                Some(block) => block.push(v),
                None => blocks.push(vec![v]),
            }
            Ok(())
        };
        for c in s.trim().chars() {
            match c {
                '{' => {
                    flush(&mut number, &mut open, &mut blocks)?;
                    if open.is_some() {
                        return Err(bad());
                    }
                    open = Some(Vec::new());
                }
                '}' => {
                    flush(&mut number, &mut open, &mut blocks)?;
                    blocks.push(open.take().ok_or_else(bad)?);
                }
                d if d.is_ascii_digit() => {
                    number.push(d);
                    if !spaced {
                        flush(&mut number, &mut open, &mut blocks)?;
                    }
                }
                w if w.is_whitespace() => flush(&mut number, &mut open, &mut blocks)?,
                _ => return Err(bad()),
            }
        }
        flush(&mut number, &mut open, &mut blocks)?;
        if open.is_some() {
            return Err(bad());
        }
        PrelinearOrder::new(blocks)
    }
}

/// A set of ordered pairs `(a, b)` meaning `a ≻ b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryRelation {
    n: usize,
    pairs: BTreeSet<(u8, u8)>,
}

impl BinaryRelation {
    pub fn empty(n: usize) -> Self {
        BinaryRelation {
            n,
            pairs: BTreeSet::new(),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        BinaryRelation {
            n,
            pairs: pairs.into_iter().map(|(a, b)| (a as u8, b as u8)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a as u8, b as u8))
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pairs.iter().map(|&(a, b)| (a as usize, b as usize)).collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| !self.pairs.contains(&(b, a)))
    }

    /// True when some chain `a ≻ b ≻ ... ≻ a` exists.
    pub fn has_cycle(&self) -> bool {
        let n = self.n;
        let mut reach = vec![vec![false; n + 1]; n + 1];
        for &(a, b) in &self.pairs {
            reach[a as usize][b as usize] = true;
        }
        for k in 1..=n {
            for i in 1..=n {
                if reach[i][k] {
                    for j in 1..=n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        (1..=n).any(|i| reach[i][i])
    }
}

impl fmt::Debug for BinaryRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a}>{b}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `<_u ∩ <_v` as a prelinear order. Requires `Inv(u) ⊆ Inv(v)` with the
/// difference a set of pairwise disjoint pairs.
pub fn prelinear_from_uv(u: &Permutation, v: &Permutation) -> Result<PrelinearOrder, MajorityError> {
    if u.n() != v.n() {
        return Err(MajorityError::RankMismatch {
            expected: u.n(),
            found: v.n(),
        });
    }
    let (inv_u, inv_v) = (u.inversion_set(), v.inversion_set());
    if !inv_u.is_subset(inv_v) {
        return Err(MajorityError::NotIntersectable(format!(
            "Inv({u}) is not contained in Inv({v})"
        )));
    }
    let ties = inv_v.difference(inv_u);
    let mut used = BTreeSet::new();
    for (a, b) in ties.pairs() {
        if !used.insert(a) || !used.insert(b) {
            return Err(MajorityError::NotIntersectable(format!(
                "tied pairs of {u} and {v} overlap"
            )));
        }
    }
    let entries = u.to_vec();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < entries.len() {
        let a = entries[i];
        if let Some(&b) = entries.get(i + 1) {
            if ties.contains(a.min(b), a.max(b)) {
                blocks.push(vec![a, b]);
                i += 2;
                continue;
            }
        }
        if used.contains(&a) {
            return Err(MajorityError::NotIntersectable(format!(
                "tied value {a} is not adjacent to its partner in {u}"
            )));
        }
        blocks.push(vec![a]);
        i += 1;
    }
    PrelinearOrder::new(blocks)
}

/// Direct evaluation of `a ≻ b ⟺ Σ_{w: a <_w b} ρ(w) > |ρ|/2`.
pub fn brute_force_majority(rho: &VoteTally) -> Result<BinaryRelation, MajorityError> {
    let n = rho.n();
    let total = rho.total()?;
    let mut ahead = vec![vec![0u128; n + 1]; n + 1];
    for (w, count) in rho.entries() {
        let e = w.entries();
        for i in 0..n {
            for j in i + 1..n {
                let cell = &mut ahead[e[i] as usize][e[j] as usize];
                *cell = cell.checked_add(count).ok_or(MajorityError::Overflow)?;
            }
        }
    }
    let mut pairs = BTreeSet::new();
    for a in 1..=n {
        for b in 1..=n {
            let s = ahead[a][b];
            if a != b && s > total - s {
                pairs.insert((a as u8, b as u8));
            }
        }
    }
    Ok(BinaryRelation { n, pairs })
}

/// Everything the tally-function route produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityOutcome {
    pub u: Permutation,
    pub v: Permutation,
    pub order: PrelinearOrder,
    pub tally: TallyFunction,
    pub total: u128,
}

/// Heap, tally function, `(u, v)` and the prelinear order. With `rho =
/// None` the uniform tally on `Pre(C)` is used.
pub fn majority_of_heap(
    heap: &HeapPoset,
    rho: Option<&VoteTally>,
    exec: Execution,
) -> Result<MajorityOutcome, MajorityError> {
    let (tally, total) = match rho {
        Some(rho) => (tally_function(heap, rho, exec)?, rho.total()?),
        None => (uniform_tally_function(heap, exec)?, heap.ideal_count()?),
    };
    let (u, v) = majority_uv(heap, &tally, total)?;
    let order = prelinear_from_uv(&u, &v)?;
    Ok(MajorityOutcome {
        u,
        v,
        order,
        tally,
        total,
    })
}

pub fn majority_of_domain(
    word: &ReducedWord,
    rho: Option<&VoteTally>,
    exec: Execution,
) -> Result<MajorityOutcome, MajorityError> {
    majority_of_heap(&build_heap(word), rho, exec)
}
