//! Finite set-theoretic solutions of the Yang-Baxter equation.

mod decompose;

pub use decompose::{
    coset_partition, decomposable_partitions, embedded_multidecomposition, is_p_decomposable,
    multidecomposition_from_series, n_decomposability, two_block_decomposition, verify_witness, Decomposability,
    LevelCheck, MultidecompositionWitness, Partition, EXHAUSTIVE_PARTITION_MAX,
};

use rayon::prelude::*;

use crate::brace::SkewBrace;
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// `r(x, y) = (λ_x(y), ρ_y(x))` on `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    size: usize,
    /// `lambda[x * m + y] = λ_x(y)`.
    lambda: Vec<usize>,
    /// `rho[y * m + x] = ρ_y(x)`.
    rho: Vec<usize>,
}

fn flatten(rows: &[Vec<usize>], m: usize) -> Result<Vec<usize>> {
    let mut flat = Vec::with_capacity(m * m);
    for (a, row) in rows.iter().enumerate() {
        if row.len() != m {
            return Err(Error::NotSquare {
                row: a,
                len: row.len(),
                expected: m,
            });
        }
        for (b, &value) in row.iter().enumerate() {
            if value >= m {
                return Err(Error::NotClosed { a, b, value, order: m });
            }
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

fn is_bijection(values: impl Iterator<Item = usize>, m: usize) -> bool {
    let mut seen = vec![false; m];
    values.into_iter().all(|v| !std::mem::replace(&mut seen[v], true))
}

/// Checks that every `λ_x` and every `ρ_y` is a bijection, that `r` is a
/// bijection of `X x X`, and the braid relation on all of `X³`.
pub fn validate_solution(lambda_rows: &[Vec<usize>], rho_rows: &[Vec<usize>]) -> Result<Solution> {
    let m = lambda_rows.len();
    if m == 0 {
        return Err(Error::EmptyTable);
    }
    if rho_rows.len() != m {
        return Err(Error::OrderMismatch {
            declared: m,
            actual: rho_rows.len(),
        });
    }
    let lambda = flatten(lambda_rows, m)?;
    let rho = flatten(rho_rows, m)?;
    let s = Solution { size: m, lambda, rho };
    if let Some(x) = (0..m).find(|&x| !is_bijection((0..m).map(|y| s.lambda(x, y)), m)) {
        return Err(Error::Degenerate(format!("λ_{x} is not a bijection")));
    }
    if let Some(y) = (0..m).find(|&y| !is_bijection((0..m).map(|x| s.rho(y, x)), m)) {
        return Err(Error::Degenerate(format!("ρ_{y} is not a bijection")));
    }
    let image = (0..m * m).map(|i| {
        let (u, v) = s.apply(i / m, i % m);
        u * m + v
    });
    if !is_bijection(image, m * m) {
        return Err(Error::NotBijective("two pairs share an image".into()));
    }
    if let Some((x, y, z)) = s.braid_failure() {
        return Err(Error::BraidFailed { x, y, z });
    }
    Ok(s)
}

impl Solution {
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn lambda(&self, x: usize, y: usize) -> usize {
        self.lambda[x * self.size + y]
    }

    #[inline]
    pub fn rho(&self, y: usize, x: usize) -> usize {
        self.rho[y * self.size + x]
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.lambda(x, y), self.rho(y, x))
    }

    pub fn lambda_rows(&self) -> Vec<Vec<usize>> {
        self.lambda.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn rho_rows(&self) -> Vec<Vec<usize>> {
        self.rho.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// `r(x, y) = (y, x)`.
    pub fn flip(m: usize) -> Self {
        let lambda = (0..m * m).map(|i| i % m).collect();
        let rho = (0..m * m).map(|i| i % m).collect();
        Self { size: m, lambda, rho }
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.apply(x, y) == (y, x)))
    }

    /// Least triple where `r₁₂ r₂₃ r₁₂` and `r₂₃ r₁₂ r₂₃` differ.
    fn braid_failure(&self) -> Option<(usize, usize, usize)> {
        let m = self.size;
        (0..m).into_par_iter().find_map_first(|x| {
            for y in 0..m {
                for z in 0..m {
                    let left = {
                        let (a, b) = self.apply(x, y);
                        let (b, c) = self.apply(b, z);
                        let (a, b) = self.apply(a, b);
                        (a, b, c)
                    };
                    let right = {
                        let (b, c) = self.apply(y, z);
                        let (a, b) = self.apply(x, b);
                        let (b, c) = self.apply(b, c);
                        (a, b, c)
                    };
                    if left != right {
                        return Some((x, y, z));
                    }
                }
            }
            None
        })
    }

    /// `r(X x X) ⊆ X x X`.
    pub fn is_closed(&self, set: &ElementSet) -> bool {
        set.iter().all(|x| {
            set.iter().all(|y| {
                let (u, v) = self.apply(x, y);
                set.contains(u) && set.contains(v)
            })
        })
    }

    /// The restriction to an `r`-closed subset, re-indexed by increasing
    /// order, with the embedding `new -> old`.
    pub fn restrict(&self, set: &ElementSet) -> Result<(Solution, Vec<usize>)> {
        if set.is_empty() || !self.is_closed(set) {
            return Err(Error::InvalidInput(format!(
                "{set:?} is not a non-empty r-closed subset"
            )));
        }
        let embed = set.to_vec();
        let mut local = vec![usize::MAX; self.size];
        for (i, &x) in embed.iter().enumerate() {
            local[x] = i;
        }
        let rows = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            embed
                .iter()
                .map(|&a| embed.iter().map(|&b| local[f(a, b)]).collect())
                .collect()
        };
        let lambda = rows(&|x, y| self.lambda(x, y));
        let rho = rows(&|y, x| self.rho(y, x));
        let sub = validate_solution(&lambda, &rho)
            .map_err(|e| Error::InternalInvariant(format!("restriction of a solution failed validation: {e}")))?;
        Ok((sub, embed))
    }

    /// Every non-empty `r`-closed subset, for `m <= 16`.
    pub fn closed_subsets(&self) -> Result<Vec<ElementSet>> {
        let m = self.size;
        if m > 16 {
            return Err(Error::BoundExceeded {
                what: "closed-subset enumeration",
                size: m,
                bound: 16,
            });
        }
        let mut out: Vec<ElementSet> = (1u32..1 << m)
            .map(|mask| ElementSet::from_iter(m, (0..m).filter(|i| mask >> i & 1 == 1)))
            .filter(|s| self.is_closed(s))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// `r_B(a, b) = (λ_a(b), λ_a(b)⁻¹ a b)`.
pub fn solution_from_brace(brace: &SkewBrace) -> Result<Solution> {
    let n = brace.order();
    let lambda: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| brace.lambda(a, b)).collect()).collect();
    let rho: Vec<Vec<usize>> = (0..n)
        .map(|b| {
            (0..n)
                .map(|a| brace.mul(brace.minv(brace.lambda(a, b)), brace.mul(a, b)))
                .collect()
        })
        .collect();
    validate_solution(&lambda, &rho)
        .map_err(|e| Error::InternalInvariant(format!("solution of a brace failed validation: {e}")))
}
