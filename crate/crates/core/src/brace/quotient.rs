use super::{validate_brace, SkewBrace};
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// `B/I` on coset representatives, with the projection from `B`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub brace: SkewBrace,
    /// `projection[b]` is the index of `b + I` in the quotient.
    pub projection: Vec<usize>,
    /// Least element of each coset; `representatives[0] = 0`.
    pub representatives: Vec<usize>,
}

/// Quotient by an ideal. Cosets are indexed in increasing order of their
/// least elements, and the resulting tables are re-validated as a brace.
pub fn quotient(brace: &SkewBrace, ideal: &ElementSet) -> Result<Quotient> {
    if !brace.is_ideal(ideal) {
        return Err(Error::NotAnIdeal(format!("{ideal:?}")));
    }
    let n = brace.order();
    let mut projection = vec![usize::MAX; n];
    let mut representatives = Vec::new();
    for b in 0..n {
        if projection[b] != usize::MAX {
            continue;
        }
        let idx = representatives.len();
        representatives.push(b);
        for x in ideal.iter() {
            projection[brace.add(b, x)] = idx;
        }
    }
    let k = representatives.len();
    let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        representatives
            .iter()
            .map(|&a| representatives.iter().map(|&b| projection[op(a, b)]).collect())
            .collect()
    };
    let add = table(&|a, b| brace.add(a, b));
    let mul = table(&|a, b| brace.mul(a, b));
    let q =
        validate_brace(&add, &mul).map_err(|e| Error::InternalInvariant(format!("quotient is not a brace: {e}")))?;
    debug_assert_eq!(q.order(), k);
    Ok(Quotient {
        brace: q,
        projection,
        representatives,
    })
}

impl Quotient {
    pub fn project(&self, set: &ElementSet) -> ElementSet {
        set.map(self.brace.order(), |x| self.projection[x])
    }

    /// Full preimage in `B` of a subset of the quotient.
    pub fn preimage(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_iter(
            self.projection.len(),
            (0..self.projection.len()).filter(|&b| set.contains(self.projection[b])),
        )
    }
}
