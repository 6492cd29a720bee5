use serde::Serialize;

use super::{all_ideals, commutator, ChiefFactorReport};
use crate::bounds::Bounds;
use crate::brace::{quotient, SkewBrace};
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Largest order for which every abelian or chief series is enumerated.
pub const EXHAUSTIVE_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// The derived series; each term is an ideal of its predecessor.
    Derived,
    /// An abelian series; each term is an ideal of its predecessor.
    Abelian,
    /// A chief series; each term is an ideal of the whole brace.
    Chief,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StepCertificate {
    /// `lower` inside `upper`, with the quotient checked to be abelian.
    AbelianQuotient {
        upper_order: usize,
        lower_order: usize,
        ideal_of_predecessor: bool,
        quotient_trivial: bool,
        quotient_additive_abelian: bool,
    },
    ChiefFactor(ChiefFactorReport),
}

impl StepCertificate {
    pub fn holds(&self) -> bool {
        match self {
            StepCertificate::AbelianQuotient {
                ideal_of_predecessor,
                quotient_trivial,
                quotient_additive_abelian,
                ..
            } => *ideal_of_predecessor && *quotient_trivial && *quotient_additive_abelian,
            StepCertificate::ChiefFactor(r) => r.is_chief_factor,
        }
    }
}

/// A descending chain `chain[0] = B ⊋ chain[1] ⊋ ...` with one certificate
/// per step `chain[k] ⊇ chain[k + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeriesWitness {
    pub kind: SeriesKind,
    pub chain: Vec<ElementSet>,
    pub certificates: Vec<StepCertificate>,
}

impl SeriesWitness {
    /// Number of steps.
    pub fn length(&self) -> usize {
        self.chain.len() - 1
    }

    /// Whether the last term is `{0}`.
    pub fn reaches_zero(&self) -> bool {
        self.chain.last().is_some_and(|s| s.is_zero())
    }

    /// The chain from `{0}` upwards.
    pub fn ascending(&self) -> Vec<ElementSet> {
        self.chain.iter().rev().cloned().collect()
    }
}

/// Certificate for the step `upper ⊇ lower`, computed inside `upper` as a
/// brace in its own right.
pub fn abelian_step(brace: &SkewBrace, upper: &ElementSet, lower: &ElementSet) -> Result<StepCertificate> {
    let (sub, embed) = brace.restrict(upper)?;
    let local = local_set(&embed, lower, brace.order())?;
    let ideal = sub.is_ideal(&local);
    let (trivial, additive_abelian) = if ideal {
        let q = quotient(&sub, &local)?;
        (q.brace.is_trivial(), q.brace.add_group().is_abelian())
    } else {
        (false, false)
    };
    Ok(StepCertificate::AbelianQuotient {
        upper_order: upper.len(),
        lower_order: lower.len(),
        ideal_of_predecessor: ideal,
        quotient_trivial: trivial,
        quotient_additive_abelian: additive_abelian,
    })
}

/// `set` (a subset of the image of `embed`) in the indices of the restriction.
fn local_set(embed: &[usize], set: &ElementSet, n: usize) -> Result<ElementSet> {
    let mut local = vec![usize::MAX; n];
    for (i, &x) in embed.iter().enumerate() {
        local[x] = i;
    }
    let mut out = ElementSet::empty(embed.len());
    for x in set.iter() {
        if local[x] == usize::MAX {
            return Err(Error::InvalidInput(format!("{x} lies outside the subbrace")));
        }
        out.insert(local[x]);
    }
    Ok(out)
}

/// `B ⊇ ∂(B) ⊇ ∂₂(B) ⊇ ...` until the chain reaches `{0}` or stops
/// descending; `∂ᵢ` is the commutator of `∂ᵢ₋₁` taken inside `∂ᵢ₋₁`.
pub fn derived_series(brace: &SkewBrace) -> Result<SeriesWitness> {
    let n = brace.order();
    let mut chain = vec![ElementSet::full(n)];
    let mut certificates = Vec::new();
    loop {
        let current = chain.last().expect("chain is non-empty").clone();
        if current.is_zero() {
            break;
        }
        let (sub, embed) = brace.restrict(&current)?;
        let whole = ElementSet::full(sub.order());
        let next = commutator(&sub, &whole, &whole)?.map(n, |i| embed[i]);
        if next == current {
            break;
        }
        certificates.push(abelian_step(brace, &current, &next)?);
        chain.push(next);
    }
    Ok(SeriesWitness {
        kind: SeriesKind::Derived,
        chain,
        certificates,
    })
}

/// Solubility verdict with the derived series as witness.
pub fn is_soluble(brace: &SkewBrace) -> Result<(bool, SeriesWitness)> {
    let series = derived_series(brace)?;
    Ok((series.reaches_zero(), series))
}

/// Length of the derived series for soluble braces.
pub fn derived_length(brace: &SkewBrace) -> Result<Option<usize>> {
    let series = derived_series(brace)?;
    Ok(series.reaches_zero().then(|| series.length()))
}

/// Checks that `chain` is a strictly descending abelian series from `B` to
/// `{0}` and returns it with certificates.
pub fn check_abelian_series(brace: &SkewBrace, chain: &[ElementSet]) -> Result<SeriesWitness> {
    let n = brace.order();
    let invalid = |step: usize, reason: &str| Error::SeriesInvalid {
        step,
        reason: reason.to_string(),
    };
    if chain.first().is_none_or(|s| !s.is_full() || s.universe() != n) {
        return Err(invalid(0, "series must start at the whole brace"));
    }
    if !chain.last().expect("non-empty").is_zero() {
        return Err(invalid(chain.len() - 1, "series must end at {0}"));
    }
    let mut certificates = Vec::new();
    for (k, w) in chain.windows(2).enumerate() {
        if w[1].universe() != n || !w[1].is_subset(&w[0]) || w[1] == w[0] {
            return Err(invalid(k + 1, "series must descend strictly"));
        }
        if !brace.is_subbrace(&w[0]) {
            return Err(invalid(k, "term is not a subbrace"));
        }
        let cert = abelian_step(brace, &w[0], &w[1])?;
        if !cert.holds() {
            return Err(invalid(
                k + 1,
                "term is not an ideal of its predecessor with abelian quotient",
            ));
        }
        certificates.push(cert);
    }
    Ok(SeriesWitness {
        kind: SeriesKind::Abelian,
        chain: chain.to_vec(),
        certificates,
    })
}

/// Every strictly descending abelian series of `B`, for `|B| <= 8`.
pub fn all_abelian_series(brace: &SkewBrace, bounds: &Bounds) -> Result<Vec<Vec<ElementSet>>> {
    let n = brace.order();
    if n > EXHAUSTIVE_MAX_ORDER {
        return Err(Error::BoundExceeded {
            what: "exhaustive series search",
            size: n,
            bound: EXHAUSTIVE_MAX_ORDER,
        });
    }
    let mut out = Vec::new();
    let mut prefix = vec![ElementSet::full(n)];
    extend_abelian(brace, bounds, &mut prefix, &mut out)?;
    out.sort();
    Ok(out)
}

fn extend_abelian(
    brace: &SkewBrace,
    bounds: &Bounds,
    prefix: &mut Vec<ElementSet>,
    out: &mut Vec<Vec<ElementSet>>,
) -> Result<()> {
    let current = prefix.last().expect("non-empty").clone();
    if current.is_zero() {
        out.push(prefix.clone());
        return Ok(());
    }
    let n = brace.order();
    let (sub, embed) = brace.restrict(&current)?;
    for j in all_ideals(&sub, bounds)? {
        if j.is_full() {
            continue;
        }
        if !quotient(&sub, &j)?.brace.is_abelian() {
            continue;
        }
        prefix.push(j.map(n, |i| embed[i]));
        extend_abelian(brace, bounds, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, FiniteGroup};

    #[test]
    fn derived_series_examples() {
        let z4 = SkewBrace::trivial(&FiniteGroup::cyclic(4));
        let d = derived_series(&z4).unwrap();
        assert_eq!(d.chain, vec![ElementSet::full(4), ElementSet::zero(4)]);
        assert_eq!(derived_length(&z4).unwrap(), Some(1));

        let s3 = catalog::symmetric(3);
        let t = SkewBrace::trivial(&s3);
        let d = derived_series(&t).unwrap();
        assert_eq!(d.chain.len(), 3);
        assert_eq!(d.chain[1].len(), 3);
        assert!(d.certificates.iter().all(|c| c.holds()));
        assert_eq!(derived_length(&t).unwrap(), Some(2));

        let zero = SkewBrace::zero();
        assert_eq!(derived_length(&zero).unwrap(), Some(0));

        let at = SkewBrace::almost_trivial(&s3);
        assert_eq!(derived_length(&at).unwrap(), Some(2));
    }

    #[test]
    fn trivial_a5_is_not_soluble() {
        let t = SkewBrace::trivial(&catalog::alternating5());
        let (soluble, w) = is_soluble(&t).unwrap();
        assert!(!soluble);
        assert_eq!(w.chain.len(), 1);
        assert_eq!(derived_length(&t).unwrap(), None);
    }

    #[test]
    fn abelian_series_checks() {
        let z4 = SkewBrace::trivial(&FiniteGroup::cyclic(4));
        let chain = vec![
            ElementSet::full(4),
            ElementSet::from_iter(4, [0, 2]),
            ElementSet::zero(4),
        ];
        assert!(check_abelian_series(&z4, &chain).is_ok());
        let bad = vec![
            ElementSet::full(4),
            ElementSet::from_iter(4, [0, 1]),
            ElementSet::zero(4),
        ];
        assert!(matches!(
            check_abelian_series(&z4, &bad),
            Err(Error::SeriesInvalid { .. })
        ));
        let t = SkewBrace::trivial(&catalog::symmetric(3));
        let short = vec![ElementSet::full(6), ElementSet::zero(6)];
        assert!(check_abelian_series(&t, &short).is_err());
        let all = all_abelian_series(&z4, &Bounds::default()).unwrap();
        assert_eq!(all.len(), 2);
    }
}
