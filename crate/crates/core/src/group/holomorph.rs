//! The holomorph `[G]Aut(G)` with product `(g, φ)(h, ψ) = (g φ(h), φ ψ)`,
//! and the search for its regular subgroups.

use rayon::prelude::*;
use serde::Serialize;

use super::{AutGroup, FiniteGroup};
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// `(g, φ)` with `φ` an index into the owning [`AutGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HolomorphElement {
    pub g: usize,
    pub phi: usize,
}

/// Which automorphisms the second coordinate may range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// The full holomorph `[G]Aut(G)`.
    Full,
    /// The subgroup `[G]Int(G)`.
    Inner,
}

#[derive(Debug, Clone)]
pub struct Holomorph {
    group: FiniteGroup,
    auts: AutGroup,
}

impl Holomorph {
    pub fn new(group: FiniteGroup, auts: AutGroup) -> Self {
        Self { group, auts }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn auts(&self) -> &AutGroup {
        &self.auts
    }

    pub fn order(&self) -> usize {
        self.group.order() * self.auts.len()
    }

    #[inline]
    pub fn mul(&self, x: HolomorphElement, y: HolomorphElement) -> HolomorphElement {
        HolomorphElement {
            g: self.group.op(x.g, self.auts.apply(x.phi, y.g)),
            phi: self.auts.compose(x.phi, y.phi),
        }
    }

    /// Flat index `g + |G| φ`; the identity `(0, id)` is index 0.
    pub fn index(&self, x: HolomorphElement) -> usize {
        x.g + self.group.order() * x.phi
    }

    pub fn element(&self, i: usize) -> HolomorphElement {
        HolomorphElement {
            g: i % self.group.order(),
            phi: i / self.group.order(),
        }
    }

    fn allowed(&self, ambient: Ambient) -> Vec<usize> {
        match ambient {
            Ambient::Full => (0..self.auts.len()).collect(),
            Ambient::Inner => self.auts.inner_indices(&self.group),
        }
    }

    /// Subgroup generated by `gens`, as `g -> φ_g`, or `None` as soon as two
    /// elements share a first coordinate.
    fn close_regular(&self, gens: &[HolomorphElement]) -> Option<Vec<usize>> {
        let n = self.group.order();
        let mut phi_of = vec![usize::MAX; n];
        phi_of[0] = 0;
        let mut members = vec![HolomorphElement { g: 0, phi: 0 }];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &s in gens {
                let y = self.mul(x, s);
                match phi_of[y.g] {
                    usize::MAX => {
                        phi_of[y.g] = y.phi;
                        members.push(y);
                    }
                    p if p == y.phi => {}
                    _ => return None,
                }
            }
        }
        Some(phi_of)
    }

    fn search(
        &self,
        allowed: &[usize],
        gens: &mut Vec<HolomorphElement>,
        phi_of: &[usize],
        out: &mut Vec<RegularSubgroup>,
    ) {
        let Some(g) = phi_of.iter().position(|&p| p == usize::MAX) else {
            out.push(RegularSubgroup { phis: phi_of.to_vec() });
            return;
        };
        for &a in allowed {
            gens.push(HolomorphElement { g, phi: a });
            if let Some(next) = self.close_regular(gens) {
                self.search(allowed, gens, &next, out);
            }
            gens.pop();
        }
    }
}

/// Materialises the Cayley table of `Hol(G)`.
pub fn holomorph(group: &FiniteGroup, bounds: &Bounds) -> Result<FiniteGroup> {
    let auts = super::automorphism_group(group, bounds)?;
    let hol = Holomorph::new(group.clone(), auts);
    let m = hol.order();
    if m > bounds.max_holomorph {
        return Err(Error::BoundExceeded {
            what: "holomorph",
            size: m,
            bound: bounds.max_holomorph,
        });
    }
    let mut table = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            table[i * m + j] = hol.index(hol.mul(hol.element(i), hol.element(j)));
        }
    }
    Ok(FiniteGroup::from_flat_unchecked(m, table))
}

/// A regular subgroup `{(g, φ_g)}` of a holomorph, stored as `g -> φ_g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegularSubgroup {
    phis: Vec<usize>,
}

impl RegularSubgroup {
    /// Checks that `phis` (one automorphism index per element) is closed
    /// under the holomorph product.
    pub fn new(hol: &Holomorph, phis: Vec<usize>) -> Result<Self> {
        let n = hol.group().order();
        if phis.len() != n {
            return Err(Error::NotRegular(format!(
                "{} coordinates for a group of order {n}",
                phis.len()
            )));
        }
        if let Some(&bad) = phis.iter().find(|&&p| p >= hol.auts().len()) {
            return Err(Error::NotRegular(format!("automorphism index {bad} out of range")));
        }
        for g in 0..n {
            for h in 0..n {
                let x = HolomorphElement { g, phi: phis[g] };
                let y = HolomorphElement { g: h, phi: phis[h] };
                let z = hol.mul(x, y);
                if phis[z.g] != z.phi {
                    return Err(Error::NotRegular(format!(
                        "product of elements over {g} and {h} leaves the set"
                    )));
                }
            }
        }
        Ok(Self { phis })
    }

    pub fn phi(&self, g: usize) -> usize {
        self.phis[g]
    }

    pub fn phis(&self) -> &[usize] {
        &self.phis
    }

    pub fn order(&self) -> usize {
        self.phis.len()
    }

    pub fn elements(&self) -> Vec<HolomorphElement> {
        self.phis
            .iter()
            .enumerate()
            .map(|(g, &phi)| HolomorphElement { g, phi })
            .collect()
    }

    /// The group structure of the subgroup transported to first coordinates:
    /// `g ∘ h = g φ_g(h)`.
    pub fn as_group(&self, hol: &Holomorph) -> FiniteGroup {
        let n = self.phis.len();
        let mut table = vec![0; n * n];
        for g in 0..n {
            for h in 0..n {
                table[g * n + h] = hol.group().op(g, hol.auts().apply(self.phis[g], h));
            }
        }
        FiniteGroup::from_flat_unchecked(n, table)
    }
}

/// Every regular subgroup of `ambient`, sorted by the vector `g -> φ_g`.
///
/// Backtracks over the function `g -> φ_g`: the least group element without
/// an assigned automorphism receives each allowed candidate in turn, the
/// chosen pairs are closed under the holomorph product, and a branch dies as
/// soon as the closure puts two automorphisms over one first coordinate.
/// Each regular subgroup is reached along exactly one branch.
pub fn regular_subgroups(hol: &Holomorph, ambient: Ambient, bounds: &Bounds) -> Result<Vec<RegularSubgroup>> {
    let allowed = hol.allowed(ambient);
    let size = hol.group().order() * allowed.len();
    if size > bounds.max_holomorph {
        return Err(Error::BoundExceeded {
            what: "holomorph",
            size,
            bound: bounds.max_holomorph,
        });
    }
    let n = hol.group().order();
    if n == 1 {
        return Ok(vec![RegularSubgroup { phis: vec![0] }]);
    }
    let mut found: Vec<RegularSubgroup> = allowed
        .par_iter()
        .flat_map_iter(|&a| {
            let mut gens = vec![HolomorphElement { g: 1, phi: a }];
            let mut out = Vec::new();
            if let Some(next) = hol.close_regular(&gens) {
                hol.search(&allowed, &mut gens, &next, &mut out);
            }
            out
        })
        .collect();
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{automorphism_group, catalog};

    fn hol(g: FiniteGroup) -> Holomorph {
        let auts = automorphism_group(&g, &Bounds::default()).unwrap();
        Holomorph::new(g, auts)
    }

    /// Oracle: every function `g -> φ_g` with `φ_0 = id`, kept when closed.
    fn brute_force_regular(h: &Holomorph) -> Vec<Vec<usize>> {
        let n = h.group().order();
        let m = h.auts().len();
        let mut out = Vec::new();
        let total = m.pow((n - 1) as u32);
        for code in 0..total {
            let mut phis = vec![0; n];
            let mut c = code;
            for p in phis.iter_mut().skip(1) {
                *p = c % m;
                c /= m;
            }
            if RegularSubgroup::new(h, phis.clone()).is_ok() {
                out.push(phis);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn holomorph_orders() {
        let b = Bounds::default();
        assert_eq!(holomorph(&FiniteGroup::cyclic(3), &b).unwrap().order(), 6);
        assert_eq!(holomorph(&FiniteGroup::trivial(), &b).unwrap().order(), 1);
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        let h = holomorph(&v4, &b).unwrap();
        assert_eq!(h.order(), 24);
        assert!(super::super::validate_group(&h.rows()).is_ok());
    }

    #[test]
    fn prime_cyclic_has_one_regular_subgroup() {
        for p in [2, 3, 5] {
            let h = hol(FiniteGroup::cyclic(p));
            let regs = regular_subgroups(&h, Ambient::Full, &Bounds::default()).unwrap();
            assert_eq!(regs.len(), 1, "p = {p}");
            assert_eq!(brute_force_regular(&h).len(), 1);
            assert!(regs[0].phis().iter().all(|&p| p == 0));
        }
        let h = hol(FiniteGroup::trivial());
        assert_eq!(
            regular_subgroups(&h, Ambient::Full, &Bounds::default()).unwrap().len(),
            1
        );
    }

    #[test]
    fn search_agrees_with_brute_force() {
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        for g in [
            FiniteGroup::cyclic(4),
            v4,
            catalog::symmetric(3),
            FiniteGroup::cyclic(6),
        ] {
            let h = hol(g);
            let fast: Vec<Vec<usize>> = regular_subgroups(&h, Ambient::Full, &Bounds::default())
                .unwrap()
                .into_iter()
                .map(|r| r.phis().to_vec())
                .collect();
            assert_eq!(fast, brute_force_regular(&h));
        }
    }

    #[test]
    fn regular_subgroups_are_regular() {
        let h = hol(catalog::dihedral(4));
        for r in regular_subgroups(&h, Ambient::Full, &Bounds::default()).unwrap() {
            let elems = r.elements();
            assert_eq!(elems.len(), 8);
            let mut firsts: Vec<usize> = elems.iter().map(|e| e.g).collect();
            firsts.sort_unstable();
            assert_eq!(firsts, (0..8).collect::<Vec<_>>());
            for &x in &elems {
                for &y in &elems {
                    assert!(elems.contains(&h.mul(x, y)));
                }
            }
        }
    }

    #[test]
    fn holomorph_bound_is_enforced() {
        let h = hol(catalog::symmetric(3));
        let b = Bounds {
            max_holomorph: 30,
            ..Bounds::default()
        };
        assert!(matches!(
            regular_subgroups(&h, Ambient::Full, &b),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
