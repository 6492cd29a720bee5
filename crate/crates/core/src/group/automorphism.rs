use std::collections::HashMap;

use super::hom::{search_homomorphisms, Generators};
use super::FiniteGroup;
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// A bijection of `0..n` that respects a group table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    perm: Vec<usize>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect() }
    }

    /// Wraps `perm` after checking it is an automorphism of `group`.
    pub fn new(group: &FiniteGroup, perm: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if perm.len() != n {
            return Err(Error::InvalidInput(format!(
                "permutation of length {} on a group of order {n}",
                perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &x in &perm {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidInput("not a bijection".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if perm[group.op(a, b)] != group.op(perm[a], perm[b]) {
                    return Err(Error::InvalidInput(format!("not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(Self { perm })
    }

    pub(crate) fn from_perm_unchecked(perm: Vec<usize>) -> Self {
        Self { perm }
    }

    /// Inner automorphism `x -> g x g^{-1}`.
    pub fn inner(group: &FiniteGroup, g: usize) -> Self {
        Self {
            perm: (0..group.order()).map(|x| group.conjugate(g, x)).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            perm: other.perm.iter().map(|&x| self.perm[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut perm = vec![0; self.perm.len()];
        for (i, &x) in self.perm.iter().enumerate() {
            perm[x] = i;
        }
        Automorphism { perm }
    }
}

/// The full automorphism group of a finite group, in lexicographic order of
/// permutations (so the identity is element `0`), with a composition table.
#[derive(Debug, Clone)]
pub struct AutGroup {
    degree: usize,
    elements: Vec<Automorphism>,
    compose: Vec<usize>,
    /// `action[phi * degree + x] = elements[phi](x)`.
    action: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

/// All automorphisms of `group`, found by backtracking over images of a
/// greedy generating set with candidates restricted to equal element order.
pub fn automorphism_group(group: &FiniteGroup, bounds: &Bounds) -> Result<AutGroup> {
    bounds.check_order("group", group.order())?;
    let gens = Generators::greedy(group);
    let candidates: Vec<Vec<usize>> = gens
        .gens()
        .iter()
        .map(|&g| {
            (1..group.order())
                .filter(|&y| group.element_order(y) == group.element_order(g))
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut overflow = false;
    search_homomorphisms(group, group, &gens, &candidates, true, &mut |f| {
        found.push(Automorphism::from_perm_unchecked(f));
        if found.len() > bounds.max_automorphisms {
            overflow = true;
            return false;
        }
        true
    });
    if overflow {
        return Err(Error::BoundExceeded {
            what: "automorphism group",
            size: found.len(),
            bound: bounds.max_automorphisms,
        });
    }
    Ok(AutGroup::from_elements(group.order(), found))
}

/// The inner automorphisms `{x -> g x g^{-1}}`, deduplicated and sorted.
pub fn inner_automorphism_subgroup(group: &FiniteGroup) -> Vec<Automorphism> {
    let mut inner: Vec<Automorphism> = (0..group.order()).map(|g| Automorphism::inner(group, g)).collect();
    inner.sort();
    inner.dedup();
    inner
}

impl AutGroup {
    pub(crate) fn from_elements(degree: usize, mut elements: Vec<Automorphism>) -> Self {
        elements.sort();
        elements.dedup();
        let m = elements.len();
        let index: HashMap<Vec<usize>, usize> = elements.iter().enumerate().map(|(i, a)| (a.perm.clone(), i)).collect();
        let mut compose = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                let c = elements[i].compose(&elements[j]);
                compose[i * m + j] = *index.get(&c.perm).expect("automorphisms closed under composition");
            }
        }
        let action = elements.iter().flat_map(|a| a.perm.iter().copied()).collect();
        Self {
            degree,
            elements,
            compose,
            action,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Automorphism {
        &self.elements[i]
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// `elements[i] ∘ elements[j]`.
    #[inline]
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.compose[i * self.elements.len() + j]
    }

    #[inline]
    pub fn apply(&self, phi: usize, x: usize) -> usize {
        self.action[phi * self.degree + x]
    }

    /// The automorphism group itself as a Cayley table (identity is index 0).
    pub fn as_group(&self) -> FiniteGroup {
        FiniteGroup::from_flat_unchecked(self.elements.len(), self.compose.clone())
    }

    /// Indices of the inner automorphisms of `group`.
    pub fn inner_indices(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut idx: Vec<usize> = inner_automorphism_subgroup(group)
            .iter()
            .map(|a| self.index_of(a.perm()).expect("inner automorphisms lie in Aut(G)"))
            .collect();
        idx.sort_unstable();
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    /// Brute force over all `n!` bijections.
    fn brute_force_count(g: &FiniteGroup) -> usize {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(g.order())
            .into_iter()
            .filter(|p| (0..g.order()).all(|a| (0..g.order()).all(|b| p[g.op(a, b)] == g.op(p[a], p[b]))))
            .count()
    }

    #[test]
    fn counts_match_brute_force() {
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        let cases = [
            (FiniteGroup::trivial(), 1),
            (FiniteGroup::cyclic(4), 2),
            (v4, 6),
            (catalog::symmetric(3), 6),
            (FiniteGroup::cyclic(5), 4),
        ];
        for (g, expected) in cases {
            assert_eq!(brute_force_count(&g), expected);
            assert_eq!(automorphism_group(&g, &Bounds::default()).unwrap().len(), expected);
        }
        for g in [catalog::dihedral(4), catalog::quaternion8(), FiniteGroup::cyclic(8)] {
            assert_eq!(
                automorphism_group(&g, &Bounds::default()).unwrap().len(),
                brute_force_count(&g)
            );
        }
    }

    #[test]
    fn closed_under_composition_and_inverse() {
        let g = catalog::dihedral(4);
        let aut = automorphism_group(&g, &Bounds::default()).unwrap();
        assert!(aut.get(0).is_identity());
        for a in aut.elements() {
            assert!(aut.index_of(a.inverse().perm()).is_some());
            for b in aut.elements() {
                assert!(aut.index_of(a.compose(b).perm()).is_some());
            }
        }
    }

    #[test]
    fn inner_automorphism_laws() {
        let g = catalog::symmetric(3);
        assert_eq!(inner_automorphism_subgroup(&g).len(), 6);
        assert_eq!(inner_automorphism_subgroup(&FiniteGroup::cyclic(4)).len(), 1);
        let aut = automorphism_group(&g, &Bounds::default()).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                let lhs = Automorphism::inner(&g, x).compose(&Automorphism::inner(&g, y));
                assert_eq!(lhs, Automorphism::inner(&g, g.op(x, y)));
            }
            for f in aut.elements() {
                let conj = f.compose(&Automorphism::inner(&g, x)).compose(&f.inverse());
                assert_eq!(conj, Automorphism::inner(&g, f.apply(x)));
            }
        }
    }

    #[test]
    fn automorphism_bound_is_enforced() {
        let c2 = FiniteGroup::cyclic(2);
        let c2_3 = c2.direct_product(&c2).direct_product(&c2);
        let bounds = Bounds {
            max_automorphisms: 100,
            ..Bounds::default()
        };
        assert!(matches!(
            automorphism_group(&c2_3, &bounds),
            Err(Error::BoundExceeded { .. })
        ));
        assert_eq!(
            automorphism_group(&c2_3, &Bounds::default()).unwrap().len(),
            brute_force_count(&c2_3)
        );
    }
}
