//! Partitions, decomposability, and multidecomposition witnesses.

use serde::Serialize;

use super::{solution_from_brace, Solution};
use crate::brace::{quotient, SkewBrace};
use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::structure::check_abelian_series;

/// Largest ground set for which every partition is tried.
pub const EXHAUSTIVE_PARTITION_MAX: usize = 5;

/// Disjoint non-empty blocks covering `ground`, sorted by least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    ground: ElementSet,
    blocks: Vec<ElementSet>,
    uniform: bool,
}

impl Partition {
    pub fn new(ground: &ElementSet, mut blocks: Vec<ElementSet>) -> Result<Self> {
        let mut covered = ElementSet::empty(ground.universe());
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::PartitionInvalid("empty block".into()));
            }
            if b.universe() != ground.universe() || !b.is_subset(ground) {
                return Err(Error::PartitionInvalid(format!("block {b:?} leaves the ground set")));
            }
            if !b.intersection(&covered).is_empty() {
                return Err(Error::PartitionInvalid(format!("block {b:?} overlaps another block")));
            }
            covered = covered.union(b);
        }
        if &covered != ground {
            return Err(Error::PartitionInvalid("blocks do not cover the ground set".into()));
        }
        blocks.sort_by_key(|b| b.least());
        let uniform = blocks.windows(2).all(|w| w[0].len() == w[1].len());
        Ok(Self {
            ground: ground.clone(),
            blocks,
            uniform,
        })
    }

    pub fn singletons(ground: &ElementSet) -> Self {
        let blocks = ground
            .iter()
            .map(|x| ElementSet::from_iter(ground.universe(), [x]))
            .collect();
        Self::new(ground, blocks).expect("singletons partition their ground set")
    }

    pub fn whole(ground: &ElementSet) -> Self {
        Self::new(ground, vec![ground.clone()]).expect("a non-empty set is a partition of itself")
    }

    pub fn ground(&self) -> &ElementSet {
        &self.ground
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(x))
    }
}

/// First pair `(x, y)` with `r(x, y)` outside `X_j x X_i`, where `x ∈ X_i`
/// and `y ∈ X_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub block_i: usize,
    pub block_j: usize,
    pub x: usize,
    pub y: usize,
    pub image: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposability {
    pub decomposable: bool,
    pub uniform: bool,
    pub violation: Option<Violation>,
}

/// Whether `r(X_i x X_j) = X_j x X_i` for every pair of blocks.
///
/// Containment is checked pairwise; since `r` is injective on the closed
/// ground set, containment for every pair of blocks forces equality.
pub fn is_p_decomposable(solution: &Solution, partition: &Partition) -> Result<Decomposability> {
    let ground = partition.ground();
    if ground.universe() != solution.size() {
        return Err(Error::PartitionInvalid(
            "partition and solution have different ground sets".into(),
        ));
    }
    if !solution.is_closed(ground) {
        return Err(Error::PartitionInvalid("ground set is not r-closed".into()));
    }
    let mut block = vec![usize::MAX; solution.size()];
    for (i, b) in partition.blocks().iter().enumerate() {
        for x in b.iter() {
            block[x] = i;
        }
    }
    for x in ground.iter() {
        for y in ground.iter() {
            let (u, v) = solution.apply(x, y);
            if block[u] != block[y] || block[v] != block[x] {
                return Ok(Decomposability {
                    decomposable: false,
                    uniform: partition.is_uniform(),
                    violation: Some(Violation {
                        block_i: block[x],
                        block_j: block[y],
                        x,
                        y,
                        image: (u, v),
                    }),
                });
            }
        }
    }
    Ok(Decomposability {
        decomposable: true,
        uniform: partition.is_uniform(),
        violation: None,
    })
}

/// Every partition of `ground` into at least two blocks for which the
/// solution is decomposable, for `|ground| <= 5`.
pub fn decomposable_partitions(solution: &Solution, ground: &ElementSet) -> Result<Vec<Partition>> {
    let elems = ground.to_vec();
    let k = elems.len();
    if k > EXHAUSTIVE_PARTITION_MAX {
        return Err(Error::BoundExceeded {
            what: "exhaustive partition search",
            size: k,
            bound: EXHAUSTIVE_PARTITION_MAX,
        });
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; k];
    // restricted growth strings: labels[i] <= 1 + max(labels[..i])
    loop {
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        if count >= 2 {
            let blocks = (0..count)
                .map(|c| ElementSet::from_iter(ground.universe(), (0..k).filter(|&i| labels[i] == c).map(|i| elems[i])))
                .collect();
            let p = Partition::new(ground, blocks)?;
            if is_p_decomposable(solution, &p)?.decomposable {
                out.push(p);
            }
        }
        let mut i = k;
        loop {
            if i <= 1 {
                return Ok(out);
            }
            i -= 1;
            let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
            if labels[i] <= prefix_max {
                labels[i] += 1;
                for l in labels.iter_mut().skip(i + 1) {
                    *l = 0;
                }
                break;
            }
        }
    }
}

/// A decomposition `{A, X ∖ A}` if one exists. Any decomposition with more
/// blocks coarsens to one of this form, so this decides decomposability.
pub fn two_block_decomposition(solution: &Solution, ground: &ElementSet) -> Result<Option<Partition>> {
    let elems = ground.to_vec();
    let k = elems.len();
    if k > 20 {
        return Err(Error::BoundExceeded {
            what: "two-block partition search",
            size: k,
            bound: 20,
        });
    }
    if k < 2 {
        return Ok(None);
    }
    for mask in 0u32..(1 << (k - 1)) {
        // the first element always lies in A
        let a = ElementSet::from_iter(
            ground.universe(),
            std::iter::once(elems[0]).chain((1..k).filter(|i| mask >> (i - 1) & 1 == 1).map(|i| elems[i])),
        );
        if &a == ground {
            continue;
        }
        let p = Partition::new(ground, vec![a.clone(), ground.difference(&a)])?;
        if is_p_decomposable(solution, &p)?.decomposable {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Left multiplicative cosets `b I` of `I` inside the subbrace `within`,
/// checked to coincide with the additive cosets `b + I`.
pub fn coset_partition(brace: &SkewBrace, ideal: &ElementSet, within: &ElementSet) -> Result<Partition> {
    let (sub, embed) = brace.restrict(within)?;
    if !ideal.is_subset(within) {
        return Err(Error::NotAnIdeal(format!("{ideal:?} is not inside {within:?}")));
    }
    let local = ElementSet::from_iter(sub.order(), (0..sub.order()).filter(|&i| ideal.contains(embed[i])));
    if !sub.is_ideal(&local) {
        return Err(Error::NotAnIdeal(format!("{ideal:?} in {within:?}")));
    }
    let n = brace.order();
    let mut seen = ElementSet::empty(n);
    let mut blocks = Vec::new();
    for b in within.iter() {
        if seen.contains(b) {
            continue;
        }
        let mul = ElementSet::from_iter(n, ideal.iter().map(|i| brace.mul(b, i)));
        let add = ElementSet::from_iter(n, ideal.iter().map(|i| brace.add(b, i)));
        if mul != add {
            return Err(Error::InternalInvariant(format!("bI differs from b + I for b = {b}")));
        }
        seen = seen.union(&mul);
        blocks.push(mul);
    }
    Partition::new(within, blocks)
}

/// Verification verdicts for one level `X_i ⊇ X_{i+1}` of a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    pub level: usize,
    pub size: usize,
    pub blocks: usize,
    pub r_closed: bool,
    pub partition_of_level: bool,
    pub next_is_block: bool,
    pub decomposable: bool,
    pub uniform: bool,
}

impl LevelCheck {
    fn holds(&self, need_uniform: bool) -> bool {
        self.r_closed
            && self.partition_of_level
            && self.next_is_block
            && self.decomposable
            && (self.uniform || !need_uniform)
    }
}

/// `X = X_0 ⊇ X_1 ⊇ ... ⊇ X_n`, `|X_n| = 1`, with partitions `P_i` of `X_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultidecompositionWitness {
    pub chain: Vec<ElementSet>,
    pub partitions: Vec<Partition>,
    pub uniform: bool,
    pub checks: Vec<LevelCheck>,
    pub verified: bool,
}

/// Re-checks every condition of a witness against the solution.
pub fn verify_witness(solution: &Solution, chain: &[ElementSet], partitions: &[Partition]) -> Result<Vec<LevelCheck>> {
    if chain.is_empty() || partitions.len() + 1 != chain.len() {
        return Err(Error::InvalidInput("a witness needs one partition per level".into()));
    }
    let mut checks = Vec::with_capacity(partitions.len());
    for (i, p) in partitions.iter().enumerate() {
        let x = &chain[i];
        let r_closed = solution.is_closed(x);
        let partition_of_level = p.ground() == x;
        let next_is_block = p.blocks().contains(&chain[i + 1]);
        let decomposable = r_closed && partition_of_level && is_p_decomposable(solution, p)?.decomposable;
        checks.push(LevelCheck {
            level: i,
            size: x.len(),
            blocks: p.len(),
            r_closed,
            partition_of_level,
            next_is_block,
            decomposable,
            uniform: p.is_uniform(),
        });
    }
    Ok(checks)
}

fn finish_witness(
    solution: &Solution,
    chain: Vec<ElementSet>,
    partitions: Vec<Partition>,
    need_uniform: bool,
) -> Result<MultidecompositionWitness> {
    let checks = verify_witness(solution, &chain, &partitions)?;
    let starts_full = chain[0].is_full();
    let ends_single = chain.last().expect("non-empty").len() == 1;
    let verified = starts_full && ends_single && checks.iter().all(|c| c.holds(need_uniform));
    if !verified {
        return Err(Error::InternalInvariant(format!(
            "constructed witness failed verification: {checks:?}"
        )));
    }
    let uniform = checks.iter().all(|c| c.uniform);
    Ok(MultidecompositionWitness {
        chain,
        partitions,
        uniform,
        checks,
        verified,
    })
}

/// The uniform multidecomposition of `(B, r_B)` given by the cosets of
/// `I_{k+1}` in `I_k` along an abelian series.
pub fn multidecomposition_from_series(brace: &SkewBrace, series: &[ElementSet]) -> Result<MultidecompositionWitness> {
    check_abelian_series(brace, series)?;
    let solution = solution_from_brace(brace)?;
    let partitions = series
        .windows(2)
        .map(|w| coset_partition(brace, &w[1], &w[0]))
        .collect::<Result<Vec<_>>>()?;
    finish_witness(&solution, series.to_vec(), partitions, true)
}

/// The uniform `|B:I|`-block decomposition by the cosets of a proper ideal
/// with abelian quotient.
pub fn n_decomposability(brace: &SkewBrace, ideal: &ElementSet) -> Result<Partition> {
    if !brace.is_ideal(ideal) {
        return Err(Error::NotAnIdeal(format!("{ideal:?}")));
    }
    if ideal.is_full() {
        return Err(Error::NotProper);
    }
    if !quotient(brace, ideal)?.brace.is_abelian() {
        return Err(Error::QuotientNotAbelian);
    }
    let p = coset_partition(brace, ideal, &ElementSet::full(brace.order()))?;
    let d = is_p_decomposable(&solution_from_brace(brace)?, &p)?;
    if !d.decomposable || !p.is_uniform() || p.len() != brace.order() / ideal.len() {
        return Err(Error::InternalInvariant(format!(
            "coset partition of {ideal:?} is not a uniform decomposition"
        )));
    }
    Ok(p)
}

/// A multidecomposition of a solution on `X` that embeds into `(B, r_B)`.
///
/// With `X_j = X ∩ I_j` for `j < n` and `X_n = {x_0}`, `x_0` the least
/// element of `X_{n-1}`, the partition of `X_j` consists of the non-empty
/// intersections of `X_j` with the cosets of `I_{j+1}` in `I_j`. Levels with
/// `X_{j+1} = X_j` carry the one-block partition and are dropped.
pub fn embedded_multidecomposition(
    solution: &Solution,
    brace: &SkewBrace,
    embed: &[usize],
    series: &[ElementSet],
) -> Result<MultidecompositionWitness> {
    let m = solution.size();
    let n = brace.order();
    if embed.len() != m || embed.iter().any(|&e| e >= n) {
        return Err(Error::InvalidInput("embedding must map 0..|X| into the brace".into()));
    }
    let mut preimage = vec![usize::MAX; n];
    for (x, &e) in embed.iter().enumerate() {
        if preimage[e] != usize::MAX {
            return Err(Error::EmbeddingIncompatible {
                x: preimage[e],
                y: x,
                reason: "both map to the same brace element".into(),
            });
        }
        preimage[e] = x;
    }
    for x in 0..m {
        for y in 0..m {
            let (ex, ey) = (embed[x], embed[y]);
            let l = brace.lambda(ex, ey);
            if embed[solution.lambda(x, y)] != l {
                return Err(Error::EmbeddingIncompatible {
                    x,
                    y,
                    reason: "first components differ".into(),
                });
            }
            if embed[solution.rho(y, x)] != brace.mul(brace.minv(l), brace.mul(ex, ey)) {
                return Err(Error::EmbeddingIncompatible {
                    x,
                    y,
                    reason: "second components differ".into(),
                });
            }
        }
    }
    check_abelian_series(brace, series)?;
    let levels = series.len() - 1;
    let pull = |s: &ElementSet| ElementSet::from_iter(m, (0..m).filter(|&x| s.contains(embed[x])));
    let whole = ElementSet::full(m);
    if levels == 0 {
        return finish_witness(solution, vec![whole], Vec::new(), false);
    }
    let last = pull(&series[levels - 1]);
    let Some(x0) = last.least() else {
        return Err(Error::HypothesisFailed(
            "X meets no element of the last non-zero series term".into(),
        ));
    };
    let mut xs: Vec<ElementSet> = series[..levels].iter().map(pull).collect();
    xs[0] = whole;
    xs.push(ElementSet::from_iter(m, [x0]));
    let mut chain = vec![xs[0].clone()];
    let mut partitions = Vec::new();
    for j in 0..levels {
        if xs[j + 1] == xs[j] {
            continue;
        }
        let cosets = coset_partition(brace, &series[j + 1], &series[j])?;
        let blocks: Vec<ElementSet> = cosets
            .blocks()
            .iter()
            .map(|c| pull(c).intersection(&xs[j]))
            .filter(|b| !b.is_empty())
            .collect();
        partitions.push(Partition::new(&xs[j], blocks)?);
        chain.push(xs[j + 1].clone());
    }
    finish_witness(solution, chain, partitions, false)
}
