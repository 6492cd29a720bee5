use serde::Serialize;

use super::SkewBrace;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::set::ElementSet;

/// Which substructure predicates a subset satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SubsetFlags {
    pub subbrace: bool,
    pub left_ideal: bool,
    pub ideal: bool,
}

/// Decides all three predicates straight from their definitions.
pub fn classify_subset(brace: &SkewBrace, set: &ElementSet) -> SubsetFlags {
    let subbrace = brace.is_subbrace(set);
    let left_ideal = brace.is_left_ideal(set);
    let ideal = left_ideal && brace.is_ideal(set);
    SubsetFlags {
        subbrace,
        left_ideal,
        ideal,
    }
}

/// All subbraces in canonical order.
pub fn all_subbraces(brace: &SkewBrace, bounds: &Bounds) -> Result<Vec<ElementSet>> {
    bounds.check_order("brace", brace.order())?;
    Ok(crate::group::subgroups::enumerate_closed(brace.order(), |s, g| {
        brace.generate_subbrace(s.iter().chain([g]))
    }))
}

impl SkewBrace {
    /// Smallest subset containing `gens` closed under both operations.
    pub fn generate_subbrace<I: IntoIterator<Item = usize>>(&self, gens: I) -> ElementSet {
        let n = self.order();
        let mut set = ElementSet::zero(n);
        let mut members = vec![0];
        let mut frontier: Vec<usize> = Vec::new();
        for g in gens {
            if set.insert(g) {
                members.push(g);
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            let mut i = 0;
            while i < members.len() {
                let y = members[i];
                i += 1;
                for z in [self.add(x, y), self.add(y, x), self.mul(x, y), self.mul(y, x)] {
                    if set.insert(z) {
                        members.push(z);
                        frontier.push(z);
                    }
                }
            }
        }
        set
    }

    pub fn is_subbrace(&self, set: &ElementSet) -> bool {
        self.add_group().is_subgroup(set) && self.mul_group().is_subgroup(set)
    }

    /// Additive subgroup with `λ_b(I) ⊆ I` for every `b`.
    pub fn is_left_ideal(&self, set: &ElementSet) -> bool {
        self.add_group().is_subgroup(set)
            && (0..self.order()).all(|b| set.iter().all(|x| set.contains(self.lambda(b, x))))
    }

    /// Left ideal, additively normal, with `I * B ⊆ I`.
    pub fn is_ideal(&self, set: &ElementSet) -> bool {
        self.is_left_ideal(set)
            && self.add_group().is_normal(set)
            && set
                .iter()
                .all(|x| (0..self.order()).all(|b| set.contains(self.star(x, b))))
    }

    /// Additive subgroup generated by all `x * y`.
    pub fn star_span(&self, xs: &ElementSet, ys: &ElementSet) -> ElementSet {
        let gens: Vec<usize> = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.star(x, y))
            .collect();
        self.add_group().generate(gens)
    }

    /// `{a : ab = a + b for all b}`.
    pub fn kernel_lambda(&self) -> Result<ElementSet> {
        let n = self.order();
        let set = ElementSet::from_iter(n, (0..n).filter(|&a| (0..n).all(|b| self.lambda(a, b) == b)));
        if !self.is_subbrace(&set) {
            return Err(Error::InternalInvariant("Ker λ is not a subbrace".into()));
        }
        Ok(set)
    }

    /// `{a : λ_b(a) = a for all b}`, verified to be a left ideal.
    pub fn fix_set(&self) -> Result<ElementSet> {
        let n = self.order();
        let set = ElementSet::from_iter(n, (0..n).filter(|&a| (0..n).all(|b| self.lambda(b, a) == a)));
        if !self.is_left_ideal(&set) {
            return Err(Error::InternalInvariant("Fix(B) is not a left ideal".into()));
        }
        Ok(set)
    }

    /// `Ker λ ∩ Z(B,+)`, verified to be an ideal.
    pub fn socle(&self) -> Result<ElementSet> {
        let set = self.kernel_lambda()?.intersection(&self.add_group().center());
        if !self.is_ideal(&set) {
            return Err(Error::InternalInvariant("Soc(B) is not an ideal".into()));
        }
        Ok(set)
    }

    /// `ζ(B) = Soc(B) ∩ Fix(B)`, verified to be an ideal.
    pub fn annihilator(&self) -> Result<ElementSet> {
        let set = self.socle()?.intersection(&self.fix_set()?);
        if !self.is_ideal(&set) {
            return Err(Error::InternalInvariant("ζ(B) is not an ideal".into()));
        }
        Ok(set)
    }

    /// A subbrace other than `0` and `B`, if one exists. It suffices to look
    /// at the subbraces generated by single elements.
    pub fn proper_subbrace(&self) -> Option<ElementSet> {
        (1..self.order())
            .map(|x| self.generate_subbrace([x]))
            .find(|s| !s.is_full())
    }

    /// The subbrace `set` as a brace in its own right, re-indexed by the
    /// increasing order of its members. Returns the brace and the embedding
    /// `new index -> old index`.
    pub fn restrict(&self, set: &ElementSet) -> Result<(SkewBrace, Vec<usize>)> {
        if !self.is_subbrace(set) {
            return Err(Error::NotASubbrace(format!("{set:?}")));
        }
        let embed = set.to_vec();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &x) in embed.iter().enumerate() {
            local[x] = i;
        }
        let k = embed.len();
        let mut add = vec![0; k * k];
        let mut mul = vec![0; k * k];
        for (i, &x) in embed.iter().enumerate() {
            for (j, &y) in embed.iter().enumerate() {
                add[i * k + j] = local[self.add(x, y)];
                mul[i * k + j] = local[self.mul(x, y)];
            }
        }
        let brace = SkewBrace::from_groups_unchecked(
            FiniteGroup::from_flat_unchecked(k, add),
            FiniteGroup::from_flat_unchecked(k, mul),
        );
        Ok((brace, embed))
    }
}
