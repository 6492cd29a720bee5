//! Ideal lattice, commutators, derived and chief series, Frattini subbrace.

mod chief;
mod series;
pub mod theorems;

pub use chief::{all_chief_series, chief_series, classify_chief_factor, ChiefFactorReport, FactorKind};
pub use series::{
    all_abelian_series, check_abelian_series, derived_length, derived_series, is_soluble, SeriesKind, SeriesWitness,
    StepCertificate, EXHAUSTIVE_MAX_ORDER,
};

use serde::Serialize;

use crate::bounds::Bounds;
use crate::brace::{all_subbraces, quotient, SkewBrace};
use crate::error::{Error, Result};
use crate::group::subgroups;
use crate::set::ElementSet;

/// Every ideal, in canonical order.
pub fn all_ideals(brace: &SkewBrace, bounds: &Bounds) -> Result<Vec<ElementSet>> {
    Ok(subgroups(brace.add_group(), bounds)?
        .into_iter()
        .filter(|s| brace.is_ideal(s))
        .collect())
}

/// Smallest ideal containing `gens`.
///
/// Closes under addition, negation, additive and multiplicative conjugation,
/// every `λ_b` and `x -> x * b` until nothing new appears. Each of these
/// preserves any ideal, so the fixpoint is the least ideal over `gens`.
pub fn ideal_closure<I: IntoIterator<Item = usize>>(brace: &SkewBrace, gens: I) -> ElementSet {
    let n = brace.order();
    let mut set = ElementSet::zero(n);
    let mut members = vec![0];
    let mut queue = Vec::new();
    for g in gens {
        if set.insert(g) {
            members.push(g);
            queue.push(g);
        }
    }
    let mut fresh = Vec::new();
    while let Some(x) = queue.pop() {
        fresh.clear();
        fresh.push(brace.neg(x));
        for b in 0..n {
            fresh.push(brace.add(brace.add(b, x), brace.neg(b)));
            fresh.push(brace.mul(brace.mul(b, x), brace.minv(b)));
            fresh.push(brace.lambda(b, x));
            fresh.push(brace.star(x, b));
        }
        let mut i = 0;
        while i < members.len() {
            fresh.push(brace.add(x, members[i]));
            fresh.push(brace.add(members[i], x));
            i += 1;
        }
        for &y in &fresh {
            if set.insert(y) {
                members.push(y);
                queue.push(y);
            }
        }
    }
    set
}

/// `[I, J]` with the sets it was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorIdeal {
    pub left: ElementSet,
    pub right: ElementSet,
    pub result: ElementSet,
}

/// Smallest ideal containing `[I,J]₊`, `[I,J]·` and every `ij - (i + j)`.
pub fn commutator(brace: &SkewBrace, left: &ElementSet, right: &ElementSet) -> Result<ElementSet> {
    for s in [left, right] {
        if !brace.is_ideal(s) {
            return Err(Error::NotAnIdeal(format!("{s:?}")));
        }
    }
    let mut gens = Vec::new();
    for i in left.iter() {
        for j in right.iter() {
            gens.push(brace.add_group().commutator(i, j));
            gens.push(brace.mul_group().commutator(i, j));
            gens.push(brace.sub(brace.mul(i, j), brace.add(i, j)));
        }
    }
    Ok(ideal_closure(brace, gens))
}

pub fn commutator_ideal(brace: &SkewBrace, left: &ElementSet, right: &ElementSet) -> Result<CommutatorIdeal> {
    Ok(CommutatorIdeal {
        result: commutator(brace, left, right)?,
        left: left.clone(),
        right: right.clone(),
    })
}

/// `(I/J ⊆ ζ(B/J), [I,B] ⊆ J)` for ideals `J ⊆ I`; the two must agree.
pub fn annihilator_quotient_test(brace: &SkewBrace, upper: &ElementSet, lower: &ElementSet) -> Result<(bool, bool)> {
    if !lower.is_subset(upper) {
        return Err(Error::InvalidInput(
            "lower ideal is not contained in the upper one".into(),
        ));
    }
    let q = quotient(brace, lower)?;
    if !brace.is_ideal(upper) {
        return Err(Error::NotAnIdeal(format!("{upper:?}")));
    }
    let central = q.project(upper).is_subset(&q.brace.annihilator()?);
    let commutes = commutator(brace, upper, &ElementSet::full(brace.order()))?.is_subset(lower);
    if central != commutes {
        return Err(Error::InternalInvariant(format!(
            "I/J ⊆ ζ(B/J) is {central} but [I,B] ⊆ J is {commutes} for I = {upper:?}, J = {lower:?}"
        )));
    }
    Ok((central, commutes))
}

/// Non-zero ideals containing no smaller non-zero ideal.
pub fn minimal_ideals(brace: &SkewBrace, bounds: &Bounds) -> Result<Vec<ElementSet>> {
    let ideals = all_ideals(brace, bounds)?;
    Ok(minimal_above(&ideals, &ElementSet::zero(brace.order())))
}

/// Proper ideals contained in no larger proper ideal.
pub fn maximal_ideals(brace: &SkewBrace, bounds: &Bounds) -> Result<Vec<ElementSet>> {
    let ideals = all_ideals(brace, bounds)?;
    let proper: Vec<ElementSet> = ideals.into_iter().filter(|s| !s.is_full()).collect();
    Ok(maximal_of(&proper))
}

/// Members of `sets` strictly above `base` and minimal with that property.
pub(crate) fn minimal_above(sets: &[ElementSet], base: &ElementSet) -> Vec<ElementSet> {
    let above: Vec<&ElementSet> = sets.iter().filter(|s| base.is_subset(s) && *s != base).collect();
    above
        .iter()
        .filter(|s| !above.iter().any(|t| t != *s && t.is_subset(s)))
        .map(|s| (*s).clone())
        .collect()
}

pub(crate) fn maximal_of(sets: &[ElementSet]) -> Vec<ElementSet> {
    sets.iter()
        .filter(|s| !sets.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect()
}

/// Proper subbraces contained in no larger proper subbrace.
pub fn maximal_subbraces(brace: &SkewBrace, bounds: &Bounds) -> Result<Vec<ElementSet>> {
    let proper: Vec<ElementSet> = all_subbraces(brace, bounds)?
        .into_iter()
        .filter(|s| !s.is_full())
        .collect();
    Ok(maximal_of(&proper))
}

/// Intersection of the maximal subbraces, or `B` when there are none.
pub fn frattini(brace: &SkewBrace, bounds: &Bounds) -> Result<ElementSet> {
    let max = maximal_subbraces(brace, bounds)?;
    Ok(max
        .iter()
        .fold(ElementSet::full(brace.order()), |acc, s| acc.intersection(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, FiniteGroup};

    fn b() -> Bounds {
        Bounds::default()
    }

    fn a3(s3: &FiniteGroup) -> ElementSet {
        s3.generate((1..6).filter(|&x| s3.element_order(x) == 3))
    }

    #[test]
    fn ideal_lattices() {
        let z5 = SkewBrace::trivial(&FiniteGroup::cyclic(5));
        assert_eq!(all_ideals(&z5, &b()).unwrap().len(), 2);
        let z4 = SkewBrace::trivial(&FiniteGroup::cyclic(4));
        assert_eq!(all_ideals(&z4, &b()).unwrap().len(), 3);
        let s3 = catalog::symmetric(3);
        let at = SkewBrace::almost_trivial(&s3);
        let ideals = all_ideals(&at, &b()).unwrap();
        assert_eq!(ideals, vec![ElementSet::zero(6), a3(&s3), ElementSet::full(6)]);
    }

    #[test]
    fn ideal_closure_is_least() {
        for brace in [
            SkewBrace::almost_trivial(&catalog::symmetric(3)),
            SkewBrace::trivial(&catalog::dihedral(4)),
            SkewBrace::almost_trivial(&catalog::quaternion8()),
        ] {
            let ideals = all_ideals(&brace, &b()).unwrap();
            for x in 0..brace.order() {
                let c = ideal_closure(&brace, [x]);
                assert!(brace.is_ideal(&c));
                let least = ideals.iter().filter(|i| i.contains(x)).min_by_key(|i| i.len()).unwrap();
                assert_eq!(&c, least);
            }
        }
    }

    #[test]
    fn commutator_examples() {
        let s3 = catalog::symmetric(3);
        let t = SkewBrace::trivial(&s3);
        let all = ElementSet::full(6);
        assert_eq!(commutator(&t, &all, &all).unwrap(), a3(&s3));
        assert!(commutator(&t, &ElementSet::zero(6), &all).unwrap().is_zero());
        let z6 = SkewBrace::trivial(&FiniteGroup::cyclic(6));
        assert!(commutator(&z6, &all, &all).unwrap().is_zero());
        assert!(commutator(&z6, &ElementSet::from_iter(6, [0, 1]), &all).is_err());
    }

    #[test]
    fn annihilator_quotient_examples() {
        let z4 = SkewBrace::trivial(&FiniteGroup::cyclic(4));
        let all = ElementSet::full(4);
        assert_eq!(annihilator_quotient_test(&z4, &all, &all).unwrap(), (true, true));
        assert_eq!(
            annihilator_quotient_test(&z4, &all, &ElementSet::zero(4)).unwrap(),
            (true, true)
        );
        let at = SkewBrace::almost_trivial(&catalog::symmetric(3));
        let full = ElementSet::full(6);
        assert_eq!(
            annihilator_quotient_test(&at, &full, &ElementSet::zero(6)).unwrap(),
            (false, false)
        );
    }

    #[test]
    fn minimal_maximal_frattini() {
        let z5 = SkewBrace::trivial(&FiniteGroup::cyclic(5));
        assert_eq!(minimal_ideals(&z5, &b()).unwrap(), vec![ElementSet::full(5)]);
        assert_eq!(maximal_ideals(&z5, &b()).unwrap(), vec![ElementSet::zero(5)]);
        assert_eq!(maximal_subbraces(&z5, &b()).unwrap(), vec![ElementSet::zero(5)]);
        assert!(frattini(&z5, &b()).unwrap().is_zero());

        let z4 = SkewBrace::trivial(&FiniteGroup::cyclic(4));
        let half = ElementSet::from_iter(4, [0, 2]);
        assert_eq!(minimal_ideals(&z4, &b()).unwrap(), vec![half.clone()]);
        assert_eq!(maximal_ideals(&z4, &b()).unwrap(), vec![half.clone()]);
        assert_eq!(maximal_subbraces(&z4, &b()).unwrap(), vec![half.clone()]);
        assert_eq!(frattini(&z4, &b()).unwrap(), half);

        let s3 = catalog::symmetric(3);
        let at = SkewBrace::almost_trivial(&s3);
        assert_eq!(minimal_ideals(&at, &b()).unwrap(), vec![a3(&s3)]);
        assert_eq!(maximal_ideals(&at, &b()).unwrap(), vec![a3(&s3)]);

        let zero = SkewBrace::zero();
        assert!(maximal_subbraces(&zero, &b()).unwrap().is_empty());
        assert!(frattini(&zero, &b()).unwrap().is_full());
    }
}
