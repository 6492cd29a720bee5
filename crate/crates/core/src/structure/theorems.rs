//! Executable checks of the structural theorems on concrete braces.

use serde::Serialize;

use super::{
    chief_series, derived_series, frattini, maximal_subbraces, ChiefFactorReport, FactorKind, StepCertificate,
};
use crate::bounds::Bounds;
use crate::brace::{all_subbraces, quotient, SkewBrace};
use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::util::{is_prime, prime_power_base};

/// Outcome of the minimal-brace check on one brace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalBraceWitness {
    pub index: usize,
    pub order: usize,
    pub trivial: bool,
    pub cyclic_prime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    pub checked: usize,
    /// Non-zero braces with no subbrace besides `0` and `B`.
    pub without_proper_subbrace: Vec<MinimalBraceWitness>,
}

/// Every non-zero brace without a proper subbrace must be trivial on a
/// cyclic group of prime order.
pub fn verify_theorem_a(census: &[SkewBrace], bounds: &Bounds) -> Result<TheoremAReport> {
    let mut without = Vec::new();
    for (index, b) in census.iter().enumerate() {
        let n = b.order();
        if n == 1 {
            continue;
        }
        let subs = all_subbraces(b, bounds)?;
        let has_proper = subs.len() > 2;
        if has_proper != b.proper_subbrace().is_some() {
            return Err(Error::InternalInvariant(format!(
                "subbrace enumeration disagrees for brace {index}"
            )));
        }
        if has_proper {
            continue;
        }
        let w = MinimalBraceWitness {
            index,
            order: n,
            trivial: b.is_trivial(),
            cyclic_prime: is_prime(n) && (0..n).any(|x| b.add_group().element_order(x) == n),
        };
        if !(w.trivial && w.cyclic_prime) {
            return Err(Error::TheoremViolation {
                theorem: "A",
                detail: format!("brace {index} of order {n} has no proper subbrace but is not trivial of prime order"),
            });
        }
        without.push(w);
    }
    Ok(TheoremAReport {
        checked: census.len(),
        without_proper_subbrace: without,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalSubbraceIndex {
    pub subbrace: ElementSet,
    pub index: usize,
    pub prime: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremBReport {
    pub order: usize,
    pub chief_factors: Vec<ChiefFactorReport>,
    pub maximal_subbraces: Vec<MaximalSubbraceIndex>,
}

fn violation_b(detail: String) -> Error {
    Error::TheoremViolation { theorem: "B", detail }
}

/// For a soluble brace: every chief factor is elementary abelian and
/// Frattini or complemented, and every maximal subbrace has prime-power
/// index. Non-soluble input is rejected.
pub fn verify_theorem_b(brace: &SkewBrace, bounds: &Bounds) -> Result<TheoremBReport> {
    let derived = derived_series(brace)?;
    if !derived.reaches_zero() {
        return Err(Error::NotSoluble {
            stable_order: derived.chain.last().expect("non-empty").len(),
        });
    }
    let chief = chief_series(brace, bounds)?;
    let mut factors = Vec::new();
    for cert in chief.certificates {
        let StepCertificate::ChiefFactor(r) = cert else {
            return Err(Error::InternalInvariant(
                "chief series certificate of the wrong type".into(),
            ));
        };
        if !r.abelian || r.p_elementary.is_none() {
            return Err(violation_b(format!(
                "chief factor {:?}/{:?} is not elementary abelian",
                r.upper, r.lower
            )));
        }
        if r.kind == FactorKind::Neither {
            return Err(violation_b(format!(
                "chief factor {:?}/{:?} is unclassified",
                r.upper, r.lower
            )));
        }
        factors.push(r);
    }
    let mut maximal = Vec::new();
    for s in maximal_subbraces(brace, bounds)? {
        let index = brace.order() / s.len();
        let prime = prime_power_base(index);
        if prime.is_none() {
            return Err(violation_b(format!("maximal subbrace {s:?} has index {index}")));
        }
        maximal.push(MaximalSubbraceIndex {
            subbrace: s,
            index,
            prime,
        });
    }
    Ok(TheoremBReport {
        order: brace.order(),
        chief_factors: factors,
        maximal_subbraces: maximal,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxCentReport {
    pub subbrace: ElementSet,
    pub annihilator_inside: bool,
    pub is_ideal: bool,
    /// `|B/S|` when `S` is an ideal.
    pub quotient_order: Option<usize>,
    pub quotient_abelian: Option<bool>,
}

/// For a maximal subbrace `S`: `ζ(B) ⊆ S`, or `S` is an ideal with `B/S`
/// abelian of prime order.
pub fn verify_max_centvprime(brace: &SkewBrace, sub: &ElementSet, bounds: &Bounds) -> Result<MaxCentReport> {
    if !maximal_subbraces(brace, bounds)?.contains(sub) {
        return Err(Error::NotASubbrace(format!("{sub:?} is not a maximal subbrace")));
    }
    let zeta = brace.annihilator()?;
    let inside = zeta.is_subset(sub);
    let is_ideal = brace.is_ideal(sub);
    let (quotient_order, quotient_abelian) = if is_ideal {
        let q = quotient(brace, sub)?;
        (Some(q.brace.order()), Some(q.brace.is_abelian()))
    } else {
        (None, None)
    };
    let second = is_ideal && quotient_abelian == Some(true) && quotient_order.is_some_and(is_prime);
    if !inside && !second {
        return Err(Error::TheoremViolation {
            theorem: "maximal subbrace annihilator",
            detail: format!("maximal subbrace {sub:?} misses ζ(B) but is not a prime-index ideal"),
        });
    }
    Ok(MaxCentReport {
        subbrace: sub.clone(),
        annihilator_inside: inside,
        is_ideal,
        quotient_order,
        quotient_abelian,
    })
}

/// Runs [`verify_max_centvprime`] on every maximal subbrace and checks
/// `ζ(B) ∩ ∂(B) ⊆ Φ(B)`.
pub fn verify_max_centvprime_all(brace: &SkewBrace, bounds: &Bounds) -> Result<Vec<MaxCentReport>> {
    let mut out = Vec::new();
    for s in maximal_subbraces(brace, bounds)? {
        out.push(verify_max_centvprime(brace, &s, bounds)?);
    }
    let derived = derived_series(brace)?;
    let d1 = derived
        .chain
        .get(1)
        .cloned()
        .unwrap_or_else(|| derived.chain[0].clone());
    let meet = brace.annihilator()?.intersection(&d1);
    if !meet.is_subset(&frattini(brace, bounds)?) {
        return Err(Error::TheoremViolation {
            theorem: "maximal subbrace annihilator corollary",
            detail: format!("ζ(B) ∩ ∂(B) = {meet:?} is not inside Φ(B)"),
        });
    }
    Ok(out)
}
