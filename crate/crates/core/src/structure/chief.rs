use serde::Serialize;

use super::series::EXHAUSTIVE_MAX_ORDER;
use super::{all_ideals, frattini, maximal_subbraces, minimal_above, SeriesKind, SeriesWitness, StepCertificate};
use crate::bounds::Bounds;
use crate::brace::{all_subbraces, quotient, SkewBrace};
use crate::error::{Error, Result};
use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    /// `I/J ⊆ Φ(B/J)`.
    Frattini,
    /// `I/J` has a complementing subbrace in `B/J`.
    Complemented,
    /// A non-abelian factor, which is neither by classification.
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiefFactorReport {
    pub lower: ElementSet,
    pub upper: ElementSet,
    pub is_chief_factor: bool,
    pub factor_order: usize,
    pub kind: FactorKind,
    pub in_frattini: bool,
    /// Least subbrace `T` of `B` containing `lower` with `upper ∩ T = lower`
    /// and `upper + T = B`, i.e. the preimage of a complement in `B/lower`.
    pub complement_witness: Option<ElementSet>,
    pub complement_count: usize,
    /// Every complement is a maximal subbrace of `B/lower`.
    pub complements_maximal: bool,
    pub abelian: bool,
    pub p_elementary: Option<usize>,
}

/// Classifies the chief factor `upper/lower` of `B`.
///
/// Errors with `InternalInvariant` when an abelian factor is neither
/// Frattini nor complemented, or has a complement that is not maximal.
pub fn classify_chief_factor(
    brace: &SkewBrace,
    lower: &ElementSet,
    upper: &ElementSet,
    bounds: &Bounds,
) -> Result<ChiefFactorReport> {
    let ideals = all_ideals(brace, bounds)?;
    classify_with(brace, &ideals, lower, upper, bounds)
}

fn classify_with(
    brace: &SkewBrace,
    ideals: &[ElementSet],
    lower: &ElementSet,
    upper: &ElementSet,
    bounds: &Bounds,
) -> Result<ChiefFactorReport> {
    for s in [lower, upper] {
        if !ideals.contains(s) {
            return Err(Error::NotAnIdeal(format!("{s:?}")));
        }
    }
    if !lower.is_subset(upper) || lower == upper {
        return Err(Error::InvalidInput("chief factor needs lower ⊊ upper".into()));
    }
    let is_chief_factor = !ideals
        .iter()
        .any(|k| lower.is_subset(k) && k.is_subset(upper) && k != lower && k != upper);
    if !is_chief_factor {
        return Err(Error::InvalidInput(format!(
            "{upper:?}/{lower:?} is not a chief factor"
        )));
    }
    let q = quotient(brace, lower)?;
    let qb = &q.brace;
    let f = q.project(upper);
    let (factor, _) = qb.restrict(&f)?;
    let abelian = factor.is_abelian();
    let p_elementary = if abelian {
        factor.add_group().elementary_abelian_prime()
    } else {
        None
    };

    let in_frattini = f.is_subset(&frattini(qb, bounds)?);
    let complements: Vec<ElementSet> = all_subbraces(qb, bounds)?
        .into_iter()
        .filter(|t| t.intersection(&f).is_zero() && t.len() * f.len() == qb.order())
        .collect();
    let maximal = maximal_subbraces(qb, bounds)?;
    let complements_maximal = complements.iter().all(|t| maximal.contains(t));
    let complement_witness = complements.iter().map(|t| q.preimage(t)).min();

    let kind = if !abelian {
        FactorKind::Neither
    } else {
        match (in_frattini, !complements.is_empty()) {
            (true, false) => FactorKind::Frattini,
            (false, true) => FactorKind::Complemented,
            (true, true) => {
                return Err(Error::InternalInvariant(format!(
                    "factor {upper:?}/{lower:?} is both Frattini and complemented"
                )))
            }
            (false, false) => {
                return Err(Error::InternalInvariant(format!(
                    "abelian factor {upper:?}/{lower:?} is neither Frattini nor complemented"
                )))
            }
        }
    };
    if abelian && !complements_maximal {
        return Err(Error::InternalInvariant(format!(
            "abelian factor {upper:?}/{lower:?} has a non-maximal complement"
        )));
    }
    Ok(ChiefFactorReport {
        lower: lower.clone(),
        upper: upper.clone(),
        is_chief_factor,
        factor_order: f.len(),
        kind,
        in_frattini,
        complement_count: complements.len(),
        complement_witness,
        complements_maximal,
        abelian,
        p_elementary,
    })
}

/// A chief series built from `{0}` upwards, choosing at each stage the
/// least (canonical order) ideal minimal over the current one. Stored
/// descending, `chain[0] = B`.
pub fn chief_series(brace: &SkewBrace, bounds: &Bounds) -> Result<SeriesWitness> {
    let ideals = all_ideals(brace, bounds)?;
    let n = brace.order();
    let mut ascending = vec![ElementSet::zero(n)];
    while !ascending.last().expect("non-empty").is_full() {
        let next = minimal_above(&ideals, ascending.last().expect("non-empty"))
            .into_iter()
            .min()
            .ok_or_else(|| Error::InternalInvariant("no ideal above a proper ideal".into()))?;
        ascending.push(next);
    }
    witness_from_ascending(brace, &ideals, ascending, bounds)
}

fn witness_from_ascending(
    brace: &SkewBrace,
    ideals: &[ElementSet],
    mut ascending: Vec<ElementSet>,
    bounds: &Bounds,
) -> Result<SeriesWitness> {
    ascending.reverse();
    let certificates = ascending
        .windows(2)
        .map(|w| classify_with(brace, ideals, &w[1], &w[0], bounds).map(StepCertificate::ChiefFactor))
        .collect::<Result<Vec<_>>>()?;
    Ok(SeriesWitness {
        kind: SeriesKind::Chief,
        chain: ascending,
        certificates,
    })
}

/// Every chief series of `B`, for `|B| <= 8`, in canonical order.
pub fn all_chief_series(brace: &SkewBrace, bounds: &Bounds) -> Result<Vec<SeriesWitness>> {
    let n = brace.order();
    if n > EXHAUSTIVE_MAX_ORDER {
        return Err(Error::BoundExceeded {
            what: "exhaustive series search",
            size: n,
            bound: EXHAUSTIVE_MAX_ORDER,
        });
    }
    let ideals = all_ideals(brace, bounds)?;
    let mut chains = Vec::new();
    let mut prefix = vec![ElementSet::zero(n)];
    extend_chief(&ideals, &mut prefix, &mut chains);
    chains.sort();
    chains
        .into_iter()
        .map(|c| witness_from_ascending(brace, &ideals, c, bounds))
        .collect()
}

fn extend_chief(ideals: &[ElementSet], prefix: &mut Vec<ElementSet>, out: &mut Vec<Vec<ElementSet>>) {
    let current = prefix.last().expect("non-empty").clone();
    if current.is_full() {
        out.push(prefix.clone());
        return;
    }
    for next in minimal_above(ideals, &current) {
        prefix.push(next);
        extend_chief(ideals, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, FiniteGroup};

    fn b() -> Bounds {
        Bounds::default()
    }

    fn factors(w: &SeriesWitness) -> Vec<&ChiefFactorReport> {
        w.certificates
            .iter()
            .map(|c| match c {
                StepCertificate::ChiefFactor(r) => r,
                _ => panic!("chief series with a non-chief certificate"),
            })
            .collect()
    }

    #[test]
    fn chief_series_examples() {
        let z5 = SkewBrace::trivial(&FiniteGroup::cyclic(5));
        assert_eq!(
            chief_series(&z5, &b()).unwrap().ascending(),
            vec![ElementSet::zero(5), ElementSet::full(5)]
        );
        let z4 = SkewBrace::trivial(&FiniteGroup::cyclic(4));
        let w = chief_series(&z4, &b()).unwrap();
        assert_eq!(w.ascending()[1], ElementSet::from_iter(4, [0, 2]));
        let f = factors(&w);
        assert_eq!(f[1].kind, FactorKind::Frattini);
        assert_eq!(f[1].factor_order, 2);

        let s3 = catalog::symmetric(3);
        let at = SkewBrace::almost_trivial(&s3);
        let w = chief_series(&at, &b()).unwrap();
        assert_eq!(w.chain.len(), 3);
        assert_eq!(w.chain[1].len(), 3);
        let f = factors(&w);
        assert!(f[0].abelian && f[1].abelian);
        assert_eq!(f[1].kind, FactorKind::Complemented);
        let t = f[1].complement_witness.as_ref().unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(s3.element_order(t.to_vec()[1]), 2);
    }

    #[test]
    fn klein_four_factor_is_complemented() {
        let v4 = SkewBrace::trivial(&FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)));
        let r = classify_chief_factor(&v4, &ElementSet::zero(4), &ElementSet::from_iter(4, [0, 1]), &b()).unwrap();
        assert_eq!(r.kind, FactorKind::Complemented);
        assert_eq!(r.p_elementary, Some(2));
        assert!(r.complements_maximal);
    }

    #[test]
    fn non_abelian_factor() {
        let t = SkewBrace::trivial(&catalog::alternating5());
        let w = chief_series(&t, &b()).unwrap();
        assert_eq!(w.length(), 1);
        let f = factors(&w);
        assert!(!f[0].abelian);
        assert_eq!(f[0].kind, FactorKind::Neither);
    }

    #[test]
    fn exhaustive_chief_series() {
        let v4 = SkewBrace::trivial(&FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)));
        assert_eq!(all_chief_series(&v4, &b()).unwrap().len(), 3);
        let z4 = SkewBrace::trivial(&FiniteGroup::cyclic(4));
        assert_eq!(all_chief_series(&z4, &b()).unwrap().len(), 1);
        assert!(classify_chief_factor(&z4, &ElementSet::zero(4), &ElementSet::full(4), &b()).is_err());
    }
}
