//! Named reduced words with closed-form majority relations: singleton
//! classes (including the four cocktail-shaker words for `w₀`), the
//! lex-first word for `w₀`, bipartite Coxeter powers `c^p c_odd`, and the
//! diamond grids `i_k`. Powers `c^p` without the trailing `c_odd` have only a
//! conjectured answer, checked here by exact computation.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::folding::{check_folding, find_folding_symmetry, majority_from_fold, FoldError, FoldingSymmetry};
use crate::heap::{build_heap, commutation_class, domain_set, HeapPoset, OrderIdeal};
use crate::majority::{
    brute_force_majority, majority_of_heap, prelinear_from_uv, MajorityError, PrelinearOrder, VoteTally,
};
use crate::parallel::Execution;
use crate::perm::{PermError, Permutation, ReducedWord, MAX_RANK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("no closed form is known for {0}; enable conjecture mode to use the conjectured order")]
    NoClosedForm(String),
    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Majority(#[from] MajorityError),
    #[error(transparent)]
    Fold(#[from] FoldError),
}

impl FamilyError {
    pub fn code(&self) -> &'static str {
        match self {
            FamilyError::ParamOutOfRange(_) => "ParamOutOfRange",
            FamilyError::NoClosedForm(_) => "NoClosedForm",
            FamilyError::ResourceExceeded(_) => "ResourceExceeded",
            FamilyError::Perm(e) => e.code(),
            FamilyError::Majority(e) => e.code(),
            FamilyError::Fold(e) => e.code(),
        }
    }
}

/// The four reduced words of `w₀` whose commutation class is a singleton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShakerVariant {
    Forward,
    Reverse,
    Complement,
    ReverseComplement,
}

impl ShakerVariant {
    pub const ALL: [ShakerVariant; 4] = [
        ShakerVariant::Forward,
        ShakerVariant::Reverse,
        ShakerVariant::Complement,
        ShakerVariant::ReverseComplement,
    ];
}

impl std::str::FromStr for ShakerVariant {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "forward" => Ok(ShakerVariant::Forward),
            "reverse" => Ok(ShakerVariant::Reverse),
            "complement" => Ok(ShakerVariant::Complement),
            "reverse_complement" => Ok(ShakerVariant::ReverseComplement),
            other => Err(FamilyError::ParamOutOfRange(format!(
                "unknown cocktail-shaker variant `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Any reduced word whose commutation class is `{word}`.
    SingletonWord {
        n: usize,
        letters: Vec<usize>,
    },
    CocktailShaker {
        n: usize,
        variant: ShakerVariant,
    },
    LexFirst {
        n: usize,
    },
    /// `c^p c_odd` when `trailing_odd`, otherwise `c^p`.
    BipartitePower {
        n: usize,
        p: usize,
        trailing_odd: bool,
    },
    Diamond {
        k: usize,
    },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::SingletonWord { letters, .. } => {
                let parts: Vec<String> = letters.iter().map(|l| l.to_string()).collect();
                write!(f, "singleton word ({})", parts.join(","))
            }
            FamilySpec::CocktailShaker { n, variant } => write!(f, "cocktail shaker ({variant:?}) n={n}"),
            FamilySpec::LexFirst { n } => write!(f, "lex-first n={n}"),
            FamilySpec::BipartitePower {
                n,
                p,
                trailing_odd: true,
            } => write!(f, "c^{p} c_odd n={n}"),
            FamilySpec::BipartitePower {
                n,
                p,
                trailing_odd: false,
            } => write!(f, "c^{p} n={n}"),
            FamilySpec::Diamond { k } => write!(f, "diamond k={k}"),
        }
    }
}

impl FamilySpec {
    pub fn n(&self) -> usize {
        match self {
            FamilySpec::SingletonWord { n, .. }
            | FamilySpec::CocktailShaker { n, .. }
            | FamilySpec::LexFirst { n }
            | FamilySpec::BipartitePower { n, .. } => *n,
            FamilySpec::Diamond { k } => 2 * k,
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("spec serializes")
    }

    fn validate(&self) -> Result<(), FamilyError> {
        let out = |msg: String| Err(FamilyError::ParamOutOfRange(msg));
        let n = self.n();
        if n > MAX_RANK {
            return out(format!("n={n} exceeds the maximum rank {MAX_RANK}"));
        }
        match *self {
            FamilySpec::SingletonWord { n, ref letters } => {
                let word = ReducedWord::new(n, letters)?;
                if !build_heap(&word).is_chain() {
                    return out(format!("the commutation class of {word} is not a singleton"));
                }
            }
            FamilySpec::CocktailShaker { n, .. } | FamilySpec::LexFirst { n } if n < 1 => {
                return out("n must be at least 1".into())
            }
            FamilySpec::BipartitePower { n, p, trailing_odd } => {
                if n < 1 {
                    return out("n must be at least 1".into());
                }
                if trailing_odd && 2 * p > n - 1 {
                    return out(format!("c^p c_odd needs p <= (n-1)/2, got n={n}, p={p}"));
                }
                if !trailing_odd && (p < 1 || 2 * p > n) {
                    return out(format!("c^p needs 1 <= p <= n/2, got n={n}, p={p}"));
                }
            }
            FamilySpec::Diamond { k } if k < 1 => return out("k must be at least 1".into()),
            _ => {}
        }
        Ok(())
    }
}

pub fn cocktail_shaker_letters(n: usize, variant: ShakerVariant) -> Vec<usize> {
    let mut letters = Vec::new();
    if n >= 2 {
        let (mut lo, mut hi) = (1, n - 1);
        loop {
            letters.extend((lo..=hi).rev());
            lo += 1;
            if lo > hi {
                break;
            }
            letters.extend(lo..=hi);
            hi -= 1;
            if lo > hi {
                break;
            }
        }
    }
    if matches!(variant, ShakerVariant::Reverse | ShakerVariant::ReverseComplement) {
        letters.reverse();
    }
    if matches!(variant, ShakerVariant::Complement | ShakerVariant::ReverseComplement) {
        for l in &mut letters {
            *l = n - *l;
        }
    }
    letters
}

pub fn lex_first_letters(n: usize) -> Vec<usize> {
    (1..n).flat_map(|row| (1..=row).rev()).collect()
}

pub fn c_odd(n: usize) -> Vec<usize> {
    (1..n).filter(|i| i % 2 == 1).collect()
}

pub fn c_even(n: usize) -> Vec<usize> {
    (1..n).filter(|i| i % 2 == 0).collect()
}

/// The first `factors` factors of `c_odd c_even c_odd c_even ...`.
pub fn bipartite_letters(n: usize, factors: usize) -> Vec<usize> {
    (0..factors)
        .flat_map(|f| if f % 2 == 0 { c_odd(n) } else { c_even(n) })
        .collect()
}

pub fn diamond_letters(k: usize) -> Vec<usize> {
    let row = |r: usize| (0..=r).map(move |j| k - r + 2 * j);
    (0..k).chain((0..k.saturating_sub(1)).rev()).flat_map(row).collect()
}

/// The displayed word of the family, verified reduced.
pub fn family_word(spec: &FamilySpec) -> Result<ReducedWord, FamilyError> {
    spec.validate()?;
    let n = spec.n();
    let letters = match *spec {
        FamilySpec::SingletonWord { ref letters, .. } => letters.clone(),
        FamilySpec::CocktailShaker { n, variant } => cocktail_shaker_letters(n, variant),
        FamilySpec::LexFirst { n } => lex_first_letters(n),
        FamilySpec::BipartitePower { n, p, trailing_odd } => bipartite_letters(n, 2 * p + usize::from(trailing_odd)),
        FamilySpec::Diamond { k } => diamond_letters(k),
    };
    Ok(ReducedWord::new(n, &letters)?)
}

fn prefix_perm(n: usize, letters: &[usize]) -> Permutation {
    ReducedWord::new(n, letters)
        .expect("prefix of a reduced word")
        .permutation()
}

fn pairs_to_order(pairs: Vec<(usize, usize)>) -> Result<PrelinearOrder, FamilyError> {
    let blocks = pairs
        .into_iter()
        .map(|(a, b)| if a == b { vec![a] } else { vec![a, b] })
        .collect();
    Ok(PrelinearOrder::new(blocks)?)
}

/// The tie pattern for `c^p c_odd`: a left tail of even pairs, a middle run
/// of ties `{t, t+2p+1}` for odd `t`, and a right tail of odd pairs.
pub fn bipartite_pattern(n: usize, p: usize) -> Result<PrelinearOrder, FamilyError> {
    let (m, q) = if n.is_multiple_of(2) { (n, n - 1) } else { (n - 1, n) };
    let mut pairs = Vec::new();
    let left: Vec<(usize, usize)> = (1..)
        .map(|j| (2 * j, 2 * p + 2 - 2 * j.min(p + 1)))
        .take_while(|&(a, b)| a <= b)
        .collect();
    pairs.extend(left.into_iter().rev());
    let mut t = 1;
    while t + 2 * p < m {
        pairs.push((t, t + 2 * p + 1));
        t += 2;
    }
    for j in 1.. {
        let (a, b) = (m + 2 * j - 2 * p - 1, (q + 2).saturating_sub(2 * j));
        if a > b {
            break;
        }
        pairs.push((a, b));
    }
    pairs_to_order(pairs)
}

/// The closed-form majority relation for the uniform tally. Bipartite powers
/// without `c_odd` use the conjectured total order only when
/// `conjecture_mode` is set.
pub fn predicted_majority(spec: &FamilySpec, conjecture_mode: bool) -> Result<PrelinearOrder, FamilyError> {
    let word = family_word(spec)?;
    let n = spec.n();
    match *spec {
        FamilySpec::SingletonWord { .. } | FamilySpec::CocktailShaker { .. } => {
            let letters = word.to_vec();
            let l = letters.len();
            let u = prefix_perm(n, &letters[..l / 2]);
            let v = prefix_perm(n, &letters[..l.div_ceil(2)]);
            Ok(prelinear_from_uv(&u, &v)?)
        }
        FamilySpec::LexFirst { n } => pairs_to_order((1..=n.div_ceil(2)).rev().map(|a| (a, n + 1 - a)).collect()),
        FamilySpec::BipartitePower {
            n,
            p,
            trailing_odd: true,
        } => bipartite_pattern(n, p),
        FamilySpec::BipartitePower {
            n,
            p,
            trailing_odd: false,
        } => {
            if !conjecture_mode {
                return Err(FamilyError::NoClosedForm(spec.to_string()));
            }
            Ok(PrelinearOrder::total(&conjectured_u(n, p)))
        }
        FamilySpec::Diamond { k } => pairs_to_order((1..=k).map(|i| (i, k + i)).collect()),
    }
}

/// `u` of the conjecture for `c^p`: the product of its first `p` factors.
pub fn conjectured_u(n: usize, p: usize) -> Permutation {
    prefix_perm(n, &bipartite_letters(n, p))
}

/// The `(u, v)` pair the closed forms are built from, where one is known:
/// prefixes for singleton words, first `p` and `p+1` factors for
/// `c^p c_odd`.
pub fn closed_form_uv(spec: &FamilySpec) -> Result<Option<(Permutation, Permutation)>, FamilyError> {
    let word = family_word(spec)?;
    let n = spec.n();
    Ok(match *spec {
        FamilySpec::SingletonWord { .. } | FamilySpec::CocktailShaker { .. } => {
            let letters = word.to_vec();
            let l = letters.len();
            Some((
                prefix_perm(n, &letters[..l / 2]),
                prefix_perm(n, &letters[..l.div_ceil(2)]),
            ))
        }
        FamilySpec::BipartitePower {
            n,
            p,
            trailing_odd: true,
        } => Some((
            prefix_perm(n, &bipartite_letters(n, p)),
            prefix_perm(n, &bipartite_letters(n, p + 1)),
        )),
        _ => None,
    })
}

fn same_letter_rank_reflection(heap: &HeapPoset, top: usize) -> Option<Vec<usize>> {
    (0..heap.len())
        .map(|x| {
            let target = top.checked_sub(heap.rank(x))?;
            (0..heap.len()).find(|&y| heap.letter(y) == heap.letter(x) && heap.rank(y) == target)
        })
        .collect()
}

fn mask_where(heap: &HeapPoset, keep: impl Fn(usize) -> bool) -> u128 {
    (0..heap.len()).filter(|&x| keep(x)).fold(0u128, |m, x| m | 1u128 << x)
}

/// The fold used in the family's proof, with its stated `I` and `A`, or
/// `None` for `c^p` (no stated fold). Certified by `check_folding`.
pub fn closed_form_fold(spec: &FamilySpec, heap: &HeapPoset) -> Result<Option<FoldingSymmetry>, FamilyError> {
    let len = heap.len();
    let (phi, below, fold) = match *spec {
        FamilySpec::SingletonWord { .. } | FamilySpec::CocktailShaker { .. } => {
            let phi = (0..len).map(|t| len - 1 - t).collect();
            let half = len.div_ceil(2);
            let below = mask_where(heap, |t| t < half);
            let fold = mask_where(heap, |t| len % 2 == 1 && t == len / 2);
            (phi, below, fold)
        }
        FamilySpec::LexFirst { n } => {
            let phi = (0..len)
                .map(|x| {
                    let (a, b) = heap.inversion(x);
                    heap.element_of_inversion(n + 1 - b, n + 1 - a)
                        .expect("w0 inverts every pair")
                })
                .collect();
            let sum = |x: usize| heap.inversion(x).0 + heap.inversion(x).1;
            (
                phi,
                mask_where(heap, |x| sum(x) <= n + 1),
                mask_where(heap, |x| sum(x) == n + 1),
            )
        }
        FamilySpec::BipartitePower {
            p, trailing_odd: true, ..
        } => {
            let phi = same_letter_rank_reflection(heap, 2 * p)
                .ok_or_else(|| FoldError::InvalidFold("rank reflection is not defined".into()))?;
            (
                phi,
                mask_where(heap, |x| heap.rank(x) <= p),
                mask_where(heap, |x| heap.rank(x) == p),
            )
        }
        FamilySpec::Diamond { k } => {
            let phi = same_letter_rank_reflection(heap, 2 * k - 2)
                .ok_or_else(|| FoldError::InvalidFold("rank reflection is not defined".into()))?;
            (
                phi,
                mask_where(heap, |x| heap.rank(x) < k),
                mask_where(heap, |x| heap.rank(x) == k - 1),
            )
        }
        FamilySpec::BipartitePower {
            trailing_odd: false, ..
        } => return Ok(None),
    };
    let candidate = FoldingSymmetry::new(phi, OrderIdeal::from_bits(below), fold);
    if !check_folding(heap, &candidate) {
        return Err(FoldError::InvalidFold(format!("closed-form fold for {spec} fails the folding conditions")).into());
    }
    Ok(Some(candidate))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub spec: FamilySpec,
    pub word: ReducedWord,
    pub heap_size: usize,
    pub ideal_count: u128,
    pub predicted: PrelinearOrder,
    pub computed: PrelinearOrder,
    pub u: Permutation,
    pub v: Permutation,
    pub matches: bool,
    pub fold: Option<FoldingSymmetry>,
    /// `majority_from_fold` on the closed-form fold agrees with the tally.
    pub fold_agrees: Option<bool>,
}

impl FamilyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "spec": self.spec.to_json(),
            "word": self.word.to_string(),
            "heap_size": self.heap_size,
            "ideal_count": self.ideal_count.to_string(),
            "predicted": self.predicted.to_string(),
            "computed": self.computed.to_string(),
            "u": self.u.to_string(),
            "v": self.v.to_string(),
            "match": self.matches,
            "fold": self.fold.as_ref().map(FoldingSymmetry::to_json),
            "fold_agrees": self.fold_agrees,
        })
    }
}

/// Computes the uniform majority relation of the family word and compares it
/// with the closed form.
pub fn verify_family(spec: &FamilySpec, exec: Execution) -> Result<FamilyReport, FamilyError> {
    let word = family_word(spec)?;
    let predicted = predicted_majority(spec, true)?;
    let heap = build_heap(&word);
    let outcome = majority_of_heap(&heap, None, exec)?;
    let fold = closed_form_fold(spec, &heap)?;
    let fold_agrees = match &fold {
        Some(f) => Some(majority_from_fold(&heap, f)? == (outcome.u.clone(), outcome.v.clone())),
        None => None,
    };
    Ok(FamilyReport {
        spec: spec.clone(),
        heap_size: heap.len(),
        ideal_count: outcome.total,
        matches: predicted == outcome.order,
        predicted,
        computed: outcome.order,
        u: outcome.u,
        v: outcome.v,
        word,
        fold,
        fold_agrees,
    })
}

/// Whether the commutation class of the word is a singleton, by class BFS.
pub fn is_singleton_class(word: &ReducedWord) -> bool {
    commutation_class(word, 2).size == Some(1)
}

/// Outcome of a fold search on a heap, as data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FoldStatus {
    Found,
    None,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: usize,
    pub p: usize,
    pub word: ReducedWord,
    pub heap_size: usize,
    pub ideal_count: u128,
    pub conjectured_u: Permutation,
    pub computed: PrelinearOrder,
    pub u: Permutation,
    pub v: Permutation,
    /// The computed relation is the total order `<_u` with the conjectured `u`.
    pub holds: bool,
    /// Brute-force oracle agreement when the domain is small enough.
    pub oracle_agrees: Option<bool>,
    pub fold: FoldStatus,
}

impl ConjectureReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "p": self.p,
            "word": self.word.to_string(),
            "heap_size": self.heap_size,
            "ideal_count": self.ideal_count.to_string(),
            "predicted": PrelinearOrder::total(&self.conjectured_u).to_string(),
            "computed": self.computed.to_string(),
            "u": self.u.to_string(),
            "v": self.v.to_string(),
            "match": self.holds,
            "oracle_agrees": self.oracle_agrees,
            "fold": self.fold,
        })
    }
}

/// Domains up to this size are also run through the brute-force oracle.
pub const ORACLE_DOMAIN_LIMIT: u128 = 20_000;

/// Computes the majority relation of `c^p` exactly and reports whether it
/// is the conjectured total order. Never assumes the conjecture.
pub fn check_conjecture(
    n: usize,
    p: usize,
    fold_bound: usize,
    exec: Execution,
) -> Result<ConjectureReport, FamilyError> {
    let spec = FamilySpec::BipartitePower {
        n,
        p,
        trailing_odd: false,
    };
    let word = family_word(&spec)?;
    let heap = build_heap(&word);
    let outcome = majority_of_heap(&heap, None, exec).map_err(|e| match e {
        MajorityError::Overflow => FamilyError::ResourceExceeded(format!("ideal counts of {spec} overflow 128 bits")),
        other => other.into(),
    })?;
    let conjectured_u = conjectured_u(n, p);
    let holds = outcome.order == PrelinearOrder::total(&conjectured_u);
    let oracle_agrees = if outcome.total <= ORACLE_DOMAIN_LIMIT {
        let rho = VoteTally::uniform(n, &domain_set(&heap))?;
        Some(brute_force_majority(&rho)? == outcome.order.to_relation())
    } else {
        None
    };
    let fold = match find_folding_symmetry(&heap, fold_bound) {
        Ok(Some(_)) => FoldStatus::Found,
        Ok(None) => FoldStatus::None,
        Err(FoldError::SearchBudgetExceeded { .. }) => FoldStatus::Unknown,
        Err(e) => return Err(e.into()),
    };
    Ok(ConjectureReport {
        n,
        p,
        heap_size: heap.len(),
        ideal_count: outcome.total,
        word,
        conjectured_u,
        computed: outcome.order,
        u: outcome.u,
        v: outcome.v,
        holds,
        oracle_agrees,
        fold,
    })
}

/// `check_conjecture` for every `1 <= p <= min(max_p, n/2)`, in parallel
/// across `p`.
pub fn conjecture_sweep(
    n: usize,
    max_p: usize,
    fold_bound: usize,
    exec: Execution,
) -> Result<Vec<ConjectureReport>, FamilyError> {
    let ps: Vec<usize> = (1..=max_p.min(n / 2)).collect();
    crate::parallel::try_map(exec, &ps, |&p| {
        check_conjecture(n, p, fold_bound, Execution::Sequential)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> PrelinearOrder {
        s.parse().unwrap()
    }

    #[test]
    fn words() {
        assert_eq!(
            cocktail_shaker_letters(6, ShakerVariant::Forward),
            vec![5, 4, 3, 2, 1, 2, 3, 4, 5, 4, 3, 2, 3, 4, 3]
        );
        assert_eq!(
            cocktail_shaker_letters(6, ShakerVariant::Reverse),
            vec![3, 4, 3, 2, 3, 4, 5, 4, 3, 2, 1, 2, 3, 4, 5]
        );
        assert_eq!(lex_first_letters(4), vec![1, 2, 1, 3, 2, 1]);
        assert_eq!(diamond_letters(2), vec![2, 1, 3, 2]);
        assert_eq!(diamond_letters(4).len(), 16);
        let w = family_word(&FamilySpec::BipartitePower {
            n: 10,
            p: 3,
            trailing_odd: true,
        })
        .unwrap();
        assert_eq!(w.len(), 32);
        for n in 1..=9 {
            assert!(family_word(&FamilySpec::LexFirst { n })
                .unwrap()
                .permutation()
                .is_longest());
            for v in ShakerVariant::ALL {
                let w = family_word(&FamilySpec::CocktailShaker { n, variant: v }).unwrap();
                assert!(w.permutation().is_longest());
            }
        }
    }

    #[test]
    fn ranges() {
        assert!(family_word(&FamilySpec::BipartitePower {
            n: 6,
            p: 3,
            trailing_odd: true
        })
        .is_err());
        assert!(family_word(&FamilySpec::BipartitePower {
            n: 6,
            p: 3,
            trailing_odd: false
        })
        .is_ok());
        assert!(family_word(&FamilySpec::BipartitePower {
            n: 6,
            p: 0,
            trailing_odd: false
        })
        .is_err());
        assert!(family_word(&FamilySpec::Diamond { k: 0 }).is_err());
        assert!(family_word(&FamilySpec::Diamond { k: 9 }).is_err());
        assert!(family_word(&FamilySpec::SingletonWord {
            n: 4,
            letters: vec![1, 3]
        })
        .is_err());
        assert!(family_word(&FamilySpec::SingletonWord {
            n: 4,
            letters: vec![1, 2, 3]
        })
        .is_ok());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            predicted_majority(&FamilySpec::LexFirst { n: 5 }, false).unwrap(),
            order("3 {2 4} {1 5}")
        );
        assert_eq!(
            predicted_majority(
                &FamilySpec::BipartitePower {
                    n: 16,
                    p: 2,
                    trailing_odd: true
                },
                false
            )
            .unwrap(),
            order("{2 4} {1 6} {3 8} {5 10} {7 12} {9 14} {11 16} {13 15}")
        );
        assert_eq!(
            predicted_majority(&FamilySpec::Diamond { k: 4 }, false).unwrap(),
            order("{1 5} {2 6} {3 7} {4 8}")
        );
        assert_eq!(
            predicted_majority(
                &FamilySpec::CocktailShaker {
                    n: 6,
                    variant: ShakerVariant::Forward
                },
                false
            )
            .unwrap(),
            order("6 2 3 {1 4} 5")
        );
        let conj = FamilySpec::BipartitePower {
            n: 6,
            p: 2,
            trailing_odd: false,
        };
        assert_eq!(predicted_majority(&conj, false).unwrap_err().code(), "NoClosedForm");
        assert!(predicted_majority(&conj, true).unwrap().is_total());
    }

    #[test]
    fn pattern_agrees_with_uv() {
        for n in 1..=16 {
            for p in 0..=(n - 1) / 2 {
                let spec = FamilySpec::BipartitePower {
                    n,
                    p,
                    trailing_odd: true,
                };
                let (u, v) = closed_form_uv(&spec).unwrap().unwrap();
                assert_eq!(
                    bipartite_pattern(n, p).unwrap(),
                    prelinear_from_uv(&u, &v).unwrap(),
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn small_verifications() {
        for spec in [
            FamilySpec::CocktailShaker {
                n: 6,
                variant: ShakerVariant::Reverse,
            },
            FamilySpec::LexFirst { n: 6 },
            FamilySpec::BipartitePower {
                n: 7,
                p: 2,
                trailing_odd: true,
            },
            FamilySpec::Diamond { k: 3 },
        ] {
            let r = verify_family(&spec, Execution::Sequential).unwrap();
            assert!(r.matches, "{spec}: {} vs {}", r.predicted, r.computed);
            assert_eq!(r.fold_agrees, Some(true));
        }
        let r = verify_family(
            &FamilySpec::CocktailShaker {
                n: 6,
                variant: ShakerVariant::Reverse,
            },
            Execution::Parallel,
        )
        .unwrap();
        assert_eq!(r.computed, order("1 5 4 {3 6} 2"));
    }

    #[test]
    fn conjecture_small() {
        let r = check_conjecture(2, 1, 40, Execution::Sequential).unwrap();
        assert_eq!(r.computed, order("{1 2}"));
        assert!(!r.holds);
        assert_eq!(r.oracle_agrees, Some(true));
        let r = check_conjecture(4, 2, 40, Execution::Sequential).unwrap();
        assert_eq!(r.oracle_agrees, Some(true));
    }
}
