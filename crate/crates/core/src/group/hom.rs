//! Homomorphisms determined by generator images, and the backtracking search
//! over such images used for automorphisms and isomorphisms.

use super::FiniteGroup;
use crate::set::ElementSet;

/// A generating sequence together with, for each prefix, a spanning tree
/// of the subgroup it generates.
#[derive(Debug, Clone)]
pub struct Generators {
    gens: Vec<usize>,
    /// `prefix_steps[k]`: `(x, parent, j)` with `x = parent * gens[j]`, `j <= k`,
    /// covering the subgroup generated by `gens[..=k]` in BFS order.
    prefix_steps: Vec<Vec<(usize, usize, usize)>>,
    prefix_members: Vec<Vec<usize>>,
}

impl Generators {
    /// Greedy generating set: repeatedly add the element of largest order
    /// (least index on ties) outside the current subgroup.
    pub fn greedy(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut candidates: Vec<usize> = (1..n).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(group.element_order(x)), x));
        let mut gens = Vec::new();
        let mut current = ElementSet::zero(n);
        for x in candidates {
            if current.is_full() {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = group.generate(gens.iter().copied());
            }
        }
        Self::from_gens(group, gens)
    }

    /// The caller guarantees `gens` generates the group.
    pub fn from_gens(group: &FiniteGroup, gens: Vec<usize>) -> Self {
        let n = group.order();
        let mut prefix_steps = Vec::with_capacity(gens.len());
        let mut prefix_members = Vec::with_capacity(gens.len());
        for k in 0..gens.len() {
            let mut seen = ElementSet::zero(n);
            let mut order = vec![0];
            let mut steps = Vec::new();
            let mut head = 0;
            while head < order.len() {
                let x = order[head];
                head += 1;
                for (j, &g) in gens[..=k].iter().enumerate() {
                    let y = group.op(x, g);
                    if seen.insert(y) {
                        order.push(y);
                        steps.push((y, x, j));
                    }
                }
            }
            prefix_steps.push(steps);
            prefix_members.push(order);
        }
        Self {
            gens,
            prefix_steps,
            prefix_members,
        }
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Extends `images` (one per generator of the first `images.len()`
    /// generators) to a homomorphism on the subgroup they generate. Returns
    /// the partial map (`usize::MAX` off the subgroup) or `None` if the images
    /// do not define a homomorphism, or if `injective` and the map is not.
    pub fn extend(
        &self,
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: &[usize],
        injective: bool,
    ) -> Option<Vec<usize>> {
        if images.is_empty() {
            let mut f = vec![usize::MAX; source.order()];
            f[0] = 0;
            return Some(f);
        }
        let k = images.len() - 1;
        let mut f = vec![usize::MAX; source.order()];
        f[0] = 0;
        for &(x, parent, j) in &self.prefix_steps[k] {
            f[x] = target.op(f[parent], images[j]);
        }
        for &x in &self.prefix_members[k] {
            for (j, &g) in self.gens[..=k].iter().enumerate() {
                if f[source.op(x, g)] != target.op(f[x], images[j]) {
                    return None;
                }
            }
        }
        if injective {
            let mut hit = ElementSet::empty(target.order());
            for &x in &self.prefix_members[k] {
                if !hit.insert(f[x]) {
                    return None;
                }
            }
        }
        Some(f)
    }
}

/// Depth-first search over generator images. `candidates[j]` lists allowed
/// images of generator `j`; `visit` receives every complete homomorphism and
/// returns `false` to stop the search.
pub(crate) fn search_homomorphisms(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &Generators,
    candidates: &[Vec<usize>],
    injective: bool,
    visit: &mut dyn FnMut(Vec<usize>) -> bool,
) {
    fn rec(
        source: &FiniteGroup,
        target: &FiniteGroup,
        gens: &Generators,
        candidates: &[Vec<usize>],
        injective: bool,
        images: &mut Vec<usize>,
        visit: &mut dyn FnMut(Vec<usize>) -> bool,
    ) -> bool {
        let depth = images.len();
        if depth == gens.len() {
            let f = gens
                .extend(source, target, images, injective)
                .expect("complete assignment was checked at the previous depth");
            return visit(f);
        }
        for &c in &candidates[depth] {
            images.push(c);
            let ok = gens.extend(source, target, images, injective).is_some();
            if ok && !rec(source, target, gens, candidates, injective, images, visit) {
                images.pop();
                return false;
            }
            images.pop();
        }
        true
    }
    if gens.is_empty() {
        let mut f = vec![usize::MAX; source.order()];
        f[0] = 0;
        visit(f);
        return;
    }
    let mut images = Vec::with_capacity(gens.len());
    rec(source, target, gens, candidates, injective, &mut images, visit);
}

/// An isomorphism `a -> b` as an index map, if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let mut orders_a: Vec<usize> = (0..a.order()).map(|x| a.element_order(x)).collect();
    let mut orders_b: Vec<usize> = (0..b.order()).map(|x| b.element_order(x)).collect();
    orders_a.sort_unstable();
    orders_b.sort_unstable();
    if orders_a != orders_b {
        return None;
    }
    let gens = Generators::greedy(a);
    let candidates: Vec<Vec<usize>> = gens
        .gens()
        .iter()
        .map(|&g| {
            (0..b.order())
                .filter(|&y| b.element_order(y) == a.element_order(g))
                .collect()
        })
        .collect();
    let mut found = None;
    search_homomorphisms(a, b, &gens, &candidates, true, &mut |f| {
        found = Some(f);
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn greedy_generators_generate() {
        for g in [
            catalog::symmetric(3),
            catalog::quaternion8(),
            catalog::alternating5(),
            FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2)),
        ] {
            let gens = Generators::greedy(&g);
            assert!(g.generate(gens.gens().iter().copied()).is_full());
        }
    }

    #[test]
    fn isomorphism_between_relabelled_copies() {
        let c6 = FiniteGroup::cyclic(6);
        let c2c3 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(3));
        let f = find_isomorphism(&c6, &c2c3).expect("C6 = C2 x C3");
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(f[c6.op(x, y)], c2c3.op(f[x], f[y]));
            }
        }
        assert!(find_isomorphism(&c6, &catalog::symmetric(3)).is_none());
        assert!(find_isomorphism(
            &FiniteGroup::cyclic(4),
            &FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2))
        )
        .is_none());
    }
}
