//! Horizontal folding symmetries of heap posets.
//!
//! A fold is an involutive antiautomorphism `φ` together with an ideal `I`
//! with `x <= φ(x)` on `I`, `I ∪ φ(I) = P` and `A = I ∩ φ(I)` an antichain.
//! Once `φ` is fixed the rest is forced: `I = {x : x <= φ(x)}` and `A` is the
//! fixed-point set, so the search only has to find involutive
//! antiautomorphisms under which every element is comparable to its image.
//! Such a map never mixes connected components, so components are searched
//! independently.

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::heap::{HeapPoset, OrderIdeal};
use crate::majority::{uniform_tally_function, MajorityError};
use crate::parallel::Execution;
use crate::perm::{pair_label, BitIter, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoldError {
    #[error("fold search gave up on a component of {elements} elements (bound {bound}); existence unknown")]
    SearchBudgetExceeded { elements: usize, bound: usize },
    #[error("invalid fold: {0}")]
    InvalidFold(String),
    #[error("map is not an antiautomorphism of the heap")]
    NotAntiautomorphism,
    #[error(transparent)]
    Majority(#[from] MajorityError),
}

impl FoldError {
    pub fn code(&self) -> &'static str {
        match self {
            FoldError::SearchBudgetExceeded { .. } => "SearchBudgetExceeded",
            FoldError::InvalidFold(_) => "InvalidFold",
            FoldError::NotAntiautomorphism => "NotAntiautomorphism",
            FoldError::Majority(e) => e.code(),
        }
    }
}

/// Backtracking steps allowed per component before reporting "unknown".
const STEP_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldingSymmetry {
    phi: Vec<usize>,
    below: OrderIdeal,
    fold: u128,
}

impl FoldingSymmetry {
    /// Unchecked; see [`check_folding`].
    pub fn new(phi: Vec<usize>, below: OrderIdeal, fold: u128) -> Self {
        FoldingSymmetry { phi, below, fold }
    }

    /// Completes `phi` to a fold with the forced `I` and `A`, if valid.
    pub fn from_involution(heap: &HeapPoset, phi: Vec<usize>) -> Option<Self> {
        if phi.len() != heap.len() || phi.iter().any(|&y| y >= heap.len()) {
            return None;
        }
        let below = (0..heap.len())
            .filter(|&x| heap.leq(x, phi[x]))
            .fold(0u128, |m, x| m | 1u128 << x);
        let fold = (0..heap.len())
            .filter(|&x| phi[x] == x)
            .fold(0u128, |m, x| m | 1u128 << x);
        let candidate = FoldingSymmetry {
            phi,
            below: OrderIdeal::from_bits(below),
            fold,
        };
        check_folding(heap, &candidate).then_some(candidate)
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn image(&self, x: usize) -> usize {
        self.phi[x]
    }

    pub fn below(&self) -> OrderIdeal {
        self.below
    }

    pub fn fold(&self) -> u128 {
        self.fold
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.phi.len()).filter(|&x| self.phi[x] == x).collect()
    }

    /// Swapped pairs `(x, φ(x))` with `x < φ(x)` as element indices.
    pub fn swaps(&self) -> Vec<(usize, usize)> {
        (0..self.phi.len())
            .filter(|&x| x < self.phi[x])
            .map(|x| (x, self.phi[x]))
            .collect()
    }

    /// `fixes 13, 24; swaps 23<->14, 67<->57`, with elements named by their
    /// inversions.
    pub fn describe(&self, heap: &HeapPoset) -> String {
        let name = |x: usize| {
            let (a, b) = heap.inversion(x);
            pair_label(a, b)
        };
        let fixed: Vec<String> = self.fixed_points().into_iter().map(name).collect();
        let swaps: Vec<String> = self
            .swaps()
            .into_iter()
            .map(|(x, y)| format!("{}<->{}", name(x), name(y)))
            .collect();
        let mut out = String::new();
        write!(
            out,
            "fixes {}",
            if fixed.is_empty() {
                "nothing".into()
            } else {
                fixed.join(", ")
            }
        )
        .unwrap();
        write!(
            out,
            "; swaps {}",
            if swaps.is_empty() {
                "nothing".into()
            } else {
                swaps.join(", ")
            }
        )
        .unwrap();
        out
    }

    /// `{"phi": [...], "below": [...], "fold": [...]}` with 1-based word
    /// positions.
    pub fn to_json(&self) -> Value {
        let one_based = |mask: u128| BitIter(mask).map(|x| x + 1).collect::<Vec<_>>();
        json!({
            "phi": self.phi.iter().map(|&y| y + 1).collect::<Vec<_>>(),
            "below": one_based(self.below.bits()),
            "fold": one_based(self.fold),
        })
    }

    /// Inverse of [`FoldingSymmetry::to_json`]; structural checks only.
    pub fn from_json(len: usize, value: &Value) -> Result<Self, FoldError> {
        let field = |name: &str| -> Result<Vec<usize>, FoldError> {
            let items = value
                .get(name)
                .and_then(Value::as_array)
                .ok_or_else(|| FoldError::InvalidFold(format!("missing array `{name}`")))?;
            items
                .iter()
                .map(|v| match v.as_u64() {
                    Some(p) if p >= 1 && p as usize <= len => Ok(p as usize - 1),
                    _ => Err(FoldError::InvalidFold(format!(
                        "`{name}` entries must be positions 1..={len}"
                    ))),
                })
                .collect()
        };
        let phi = field("phi")?;
        if phi.len() != len {
            return Err(FoldError::InvalidFold(format!("`phi` must have {len} entries")));
        }
        let mask = |xs: Vec<usize>| xs.into_iter().fold(0u128, |m, x| m | 1u128 << x);
        Ok(FoldingSymmetry {
            phi,
            below: OrderIdeal::from_bits(mask(field("below")?)),
            fold: mask(field("fold")?),
        })
    }
}

/// `φ` is a bijection with `x < y ⟺ φ(y) < φ(x)`.
pub fn is_antiautomorphism(heap: &HeapPoset, phi: &[usize]) -> bool {
    let len = heap.len();
    if phi.len() != len {
        return false;
    }
    let mut hit = 0u128;
    for &y in phi {
        if y >= len || hit >> y & 1 == 1 {
            return false;
        }
        hit |= 1u128 << y;
    }
    (0..len).all(|x| (0..len).all(|y| heap.less(x, y) == heap.less(phi[y], phi[x])))
}

/// Validates every defining condition literally.
pub fn check_folding(heap: &HeapPoset, candidate: &FoldingSymmetry) -> bool {
    let phi = &candidate.phi;
    if !is_antiautomorphism(heap, phi) || (0..heap.len()).any(|x| phi[phi[x]] != x) {
        return false;
    }
    let below = candidate.below.bits();
    if below & !heap.all() != 0 || !heap.is_ideal(below) {
        return false;
    }
    if !BitIter(below).all(|x| heap.leq(x, phi[x])) {
        return false;
    }
    let image = BitIter(below).fold(0u128, |m, x| m | 1u128 << phi[x]);
    below | image == heap.all() && candidate.fold == below & image && heap.is_antichain(candidate.fold)
}

/// `Inv(u) = I \ A` and `Inv(v) = I`; no tally is computed.
pub fn majority_from_fold(heap: &HeapPoset, fold: &FoldingSymmetry) -> Result<(Permutation, Permutation), FoldError> {
    if !check_folding(heap, fold) {
        return Err(FoldError::InvalidFold("candidate fails the folding conditions".into()));
    }
    let strict = fold.below.bits() & !fold.fold;
    debug_assert!(heap.is_ideal(strict));
    Ok((
        heap.ideal_to_permutation(OrderIdeal::from_bits(strict)),
        heap.ideal_to_permutation(fold.below),
    ))
}

/// `Σ(x) + Σ(φ(x)) = |J(P)|` for every element, with the uniform tally.
pub fn balance_check(heap: &HeapPoset, phi: &[usize], exec: Execution) -> Result<bool, FoldError> {
    if !is_antiautomorphism(heap, phi) {
        return Err(FoldError::NotAntiautomorphism);
    }
    let tally = uniform_tally_function(heap, exec).map_err(MajorityError::from)?;
    let total = heap.ideal_count().map_err(MajorityError::from)?;
    Ok((0..heap.len()).all(|x| tally.get(x).checked_add(tally.get(phi[x])) == Some(total)))
}

/// Candidate involutions from letter symmetries of one component: reverse
/// the occurrences of each letter, optionally after reflecting the
/// component's letter range.
fn letter_reversals(heap: &HeapPoset, component: u128) -> Vec<Vec<(usize, usize)>> {
    let members: Vec<usize> = BitIter(component).collect();
    let letters: Vec<usize> = members.iter().map(|&x| heap.letter(x)).collect();
    let (lo, hi) = (*letters.iter().min().unwrap(), *letters.iter().max().unwrap());
    let occurrences =
        |letter: usize| -> Vec<usize> { members.iter().copied().filter(|&x| heap.letter(x) == letter).collect() };
    let mut out = Vec::new();
    for reflect in [false, true] {
        let mut pairs = Vec::with_capacity(members.len());
        let mut ok = true;
        for letter in lo..=hi {
            let target = if reflect { lo + hi - letter } else { letter };
            let (from, to) = (occurrences(letter), occurrences(target));
            if from.len() != to.len() {
                ok = false;
                break;
            }
            let m = from.len();
            pairs.extend((0..m).map(|t| (from[t], to[m - 1 - t])));
        }
        if ok {
            out.push(pairs);
        }
    }
    // chains reverse by position
    out.push(
        members
            .iter()
            .zip(members.iter().rev())
            .map(|(&x, &y)| (x, y))
            .collect(),
    );
    out
}

struct Search<'a> {
    heap: &'a HeapPoset,
    members: Vec<usize>,
    signature: Vec<(u32, u32, u32, u32)>,
    phi: Vec<Option<usize>>,
    steps: usize,
    budget: usize,
}

impl<'a> Search<'a> {
    fn new(heap: &'a HeapPoset, component: u128, budget: usize) -> Self {
        let mut lower = vec![0u32; heap.len()];
        let mut upper = vec![0u32; heap.len()];
        for &(x, y) in heap.covers() {
            upper[x] += 1;
            lower[y] += 1;
        }
        let signature = (0..heap.len())
            .map(|x| {
                (
                    heap.strictly_below(x).count_ones(),
                    heap.strictly_above(x).count_ones(),
                    lower[x],
                    upper[x],
                )
            })
            .collect();
        Search {
            heap,
            members: BitIter(component).collect(),
            signature,
            phi: vec![None; heap.len()],
            steps: 0,
            budget,
        }
    }

    fn compatible(&self, x: usize, y: usize) -> bool {
        let (sx, sy) = (self.signature[x], self.signature[y]);
        if (sx.0, sx.1, sx.2, sx.3) != (sy.1, sy.0, sy.3, sy.2) {
            return false;
        }
        if x != y && !self.heap.comparable(x, y) {
            return false;
        }
        let h = self.heap;
        self.members.iter().all(|&a| match self.phi[a] {
            None => true,
            Some(b) => {
                h.less(x, a) == h.less(b, y)
                    && h.less(a, x) == h.less(y, b)
                    && h.less(y, a) == h.less(b, x)
                    && h.less(a, y) == h.less(x, b)
            }
        })
    }

    /// Calls `found` on each complete assignment; stops when it returns
    /// false. `Err(())` means the budget ran out.
    fn run(&mut self, found: &mut dyn FnMut(&[Option<usize>]) -> bool) -> Result<bool, ()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(());
        }
        let Some(&x) = self.members.iter().find(|&&x| self.phi[x].is_none()) else {
            return Ok(found(&self.phi));
        };
        let candidates: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&y| self.phi[y].is_none() && self.compatible(x, y))
            .collect();
        for y in candidates {
            self.phi[x] = Some(y);
            self.phi[y] = Some(x);
            let keep_going = self.run(found)?;
            self.phi[x] = None;
            self.phi[y] = None;
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn component_fold(heap: &HeapPoset, component: u128, bound: usize) -> Result<Option<Vec<(usize, usize)>>, FoldError> {
    let size = component.count_ones() as usize;
    let valid = |pairs: &[(usize, usize)]| {
        let mut phi: Vec<usize> = (0..heap.len()).collect();
        for &(x, y) in pairs {
            phi[x] = y;
        }
        let involutive = pairs.iter().all(|&(x, y)| phi[y] == x);
        involutive
            && is_antiautomorphism(heap, &phi)
            && BitIter(component).all(|x| heap.comparable(x, phi[x]) || phi[x] == x)
    };
    for pairs in letter_reversals(heap, component) {
        if valid(&pairs) {
            return Ok(Some(pairs));
        }
    }
    if size > bound {
        return Err(FoldError::SearchBudgetExceeded { elements: size, bound });
    }
    let mut search = Search::new(heap, component, STEP_BUDGET);
    let mut result = None;
    let outcome = search.run(&mut |phi| {
        result = Some(BitIter(component).map(|x| (x, phi[x].unwrap())).collect());
        false
    });
    match outcome {
        Err(()) => Err(FoldError::SearchBudgetExceeded { elements: size, bound }),
        Ok(_) => Ok(result),
    }
}

/// Some horizontal folding symmetry of `heap`, or `None` if there is none.
/// Components larger than `bound` are only tried with the letter-reversal
/// constructions; if those fail the answer is unknown and reported as
/// [`FoldError::SearchBudgetExceeded`].
pub fn find_folding_symmetry(heap: &HeapPoset, bound: usize) -> Result<Option<FoldingSymmetry>, FoldError> {
    let mut phi: Vec<usize> = (0..heap.len()).collect();
    for component in heap.components() {
        match component_fold(heap, component, bound)? {
            Some(pairs) => {
                for (x, y) in pairs {
                    phi[x] = y;
                }
            }
            None => return Ok(None),
        }
    }
    let fold = FoldingSymmetry::from_involution(heap, phi);
    debug_assert!(fold.is_some(), "component folds must assemble to a fold");
    Ok(fold)
}

/// Every horizontal folding symmetry, by exhaustive backtracking over the
/// whole heap. Intended for small heaps.
pub fn all_folding_symmetries(heap: &HeapPoset) -> Result<Vec<FoldingSymmetry>, FoldError> {
    let mut search = Search::new(heap, heap.all(), usize::MAX);
    let mut out = Vec::new();
    search
        .run(&mut |phi| {
            let phi: Vec<usize> = phi.iter().map(|y| y.unwrap()).collect();
            out.extend(FoldingSymmetry::from_involution(heap, phi));
            true
        })
        .map_err(|()| FoldError::SearchBudgetExceeded {
            elements: heap.len(),
            bound: heap.len(),
        })?;
    Ok(out)
}
