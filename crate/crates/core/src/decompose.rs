//! Direct-sum decompositions. A reduced word of `w = w⁽¹⁾ ⊕ ... ⊕ w⁽ᵐ⁾`
//! splits into per-block words whose heaps are the connected components of
//! the original heap; majority relations then assemble block by block.

use serde_json::{json, Value};

use crate::majority::{majority_of_domain, BinaryRelation, MajorityError, MajorityOutcome, PrelinearOrder, VoteTally};
use crate::parallel::{self, Execution};
use crate::perm::{decompose, direct_sum, PermError, Permutation, ReducedWord};

/// One indecomposable block: values `offset+1 ..= offset+size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub offset: usize,
    /// The block's word with letters shifted down by `offset`, in `S_size`.
    pub word: ReducedWord,
}

impl Block {
    pub fn size(&self) -> usize {
        self.word.n()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub word: ReducedWord,
    /// Finest blocks in order, including fixed points as size-one blocks.
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    /// Blocks that carry at least one letter.
    pub fn nontrivial_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().filter(|b| !b.word.is_empty())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.blocks
                .iter()
                .map(|b| json!({"offset": b.offset, "n": b.size(), "word": b.word.to_string()}))
                .collect(),
        )
    }
}

/// Splits `word` into the finest direct-sum blocks of its permutation. Each
/// block's word is the subsequence of letters inside the block, relabeled
/// `s_i ↦ s_{i - offset}`.
pub fn split_class(word: &ReducedWord) -> Result<BlockDecomposition, PermError> {
    let mut blocks = Vec::new();
    let mut offset = 0;
    for part in decompose(&word.permutation()) {
        let size = part.n();
        let letters: Vec<usize> = word
            .to_vec()
            .into_iter()
            .filter(|&l| l > offset && l < offset + size)
            .map(|l| l - offset)
            .collect();
        let local = ReducedWord::new(size, &letters)?;
        debug_assert_eq!(local.permutation(), part);
        blocks.push(Block { offset, word: local });
        offset += size;
    }
    Ok(BlockDecomposition {
        word: word.clone(),
        blocks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FubiniOutcome {
    pub per_block: Vec<MajorityOutcome>,
    pub u: Permutation,
    pub v: Permutation,
    pub order: PrelinearOrder,
    /// `|ρ| = Π |ρ⁽ⁱ⁾|`.
    pub total: u128,
}

/// Uniform-tally majority per block, assembled by direct sums:
/// `u = u⁽¹⁾ ⊕ u⁽²⁾ ⊕ ...` and likewise for `v`.
pub fn fubini_majority(dec: &BlockDecomposition, exec: Execution) -> Result<FubiniOutcome, MajorityError> {
    let per_block = parallel::try_map(exec, &dec.blocks, |b| {
        majority_of_domain(&b.word, None, Execution::Sequential)
    })?;
    let mut parts = per_block.iter();
    let first = parts.next().expect("at least one block");
    let (mut u, mut v, mut total) = (first.u.clone(), first.v.clone(), first.total);
    for part in parts {
        u = direct_sum(&u, &part.u);
        v = direct_sum(&v, &part.v);
        total = total.checked_mul(part.total).ok_or(MajorityError::Overflow)?;
    }
    let order = crate::majority::prelinear_from_uv(&u, &v)?;
    Ok(FubiniOutcome {
        per_block,
        u,
        v,
        order,
        total,
    })
}

/// The block relations side by side, with no pairs across blocks.
pub fn disjoint_union(rel1: &BinaryRelation, rel2: &BinaryRelation) -> BinaryRelation {
    let n1 = rel1.n();
    let pairs = rel1
        .pairs()
        .into_iter()
        .chain(rel2.pairs().into_iter().map(|(a, b)| (a + n1, b + n1)));
    BinaryRelation::from_pairs(n1 + rel2.n(), pairs)
}

/// The majority relation of a product of two nonzero tallies. Within each
/// block it is that block's relation. Across blocks every supported order
/// `w⁽¹⁾ ⊕ w⁽²⁾` ranks the whole first block ahead of the second, so each
/// cross pair `a ≻ b` with `a <= n₁ < b` is unanimous and present.
pub fn product_tally_majority(rel1: &BinaryRelation, rel2: &BinaryRelation) -> BinaryRelation {
    let (n1, n2) = (rel1.n(), rel2.n());
    let cross = (1..=n1).flat_map(|a| (n1 + 1..=n1 + n2).map(move |b| (a, b)));
    BinaryRelation::from_pairs(n1 + n2, disjoint_union(rel1, rel2).pairs().into_iter().chain(cross))
}

/// `ρ(w⁽¹⁾ ⊕ w⁽²⁾) = ρ⁽¹⁾(w⁽¹⁾) · ρ⁽²⁾(w⁽²⁾)`.
pub fn product_tally(rho1: &VoteTally, rho2: &VoteTally) -> Result<VoteTally, MajorityError> {
    let mut out = VoteTally::new(rho1.n() + rho2.n());
    for (w1, c1) in rho1.entries() {
        for (w2, c2) in rho2.entries() {
            out.set(direct_sum(w1, w2), c1.checked_mul(c2).ok_or(MajorityError::Overflow)?)?;
        }
    }
    Ok(out)
}
