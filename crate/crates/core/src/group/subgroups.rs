use std::collections::HashSet;

use super::FiniteGroup;
use crate::bounds::Bounds;
use crate::error::Result;
use crate::set::ElementSet;

/// Closure-based enumeration of every subset of `0..n` closed under the
/// given generator-to-subgroup function, starting from `{0}` and adjoining
/// one element at a time. Every finitely generated substructure is reached.
pub(crate) fn enumerate_closed(n: usize, close: impl Fn(&ElementSet, usize) -> ElementSet) -> Vec<ElementSet> {
    let start = ElementSet::zero(n);
    let mut seen: HashSet<ElementSet> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for g in 0..n {
            if current.contains(g) {
                continue;
            }
            let next = close(&current, g);
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    queue.sort();
    queue
}

/// All subgroups in canonical order.
pub fn subgroups(group: &FiniteGroup, bounds: &Bounds) -> Result<Vec<ElementSet>> {
    bounds.check_order("group", group.order())?;
    Ok(enumerate_closed(group.order(), |k, g| {
        group.generate(k.iter().chain([g]))
    }))
}

pub fn normal_subgroups(group: &FiniteGroup, bounds: &Bounds) -> Result<Vec<ElementSet>> {
    Ok(subgroups(group, bounds)?
        .into_iter()
        .filter(|s| group.is_normal(s))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    /// Independent oracle: test every subset of the carrier.
    fn brute_force(group: &FiniteGroup) -> Vec<ElementSet> {
        let n = group.order();
        let mut out: Vec<ElementSet> = (0u64..1 << n)
            .filter(|mask| mask & 1 == 1)
            .map(|mask| ElementSet::from_iter(n, (0..n).filter(|i| mask >> i & 1 == 1)))
            .filter(|s| group.is_subgroup(s))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn small_counts() {
        let b = Bounds::default();
        let z4 = subgroups(&FiniteGroup::cyclic(4), &b).unwrap();
        assert_eq!(
            z4.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
            vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]
        );
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(subgroups(&FiniteGroup::cyclic(p), &b).unwrap().len(), 2);
        }
        assert_eq!(subgroups(&catalog::symmetric(3), &b).unwrap().len(), 6);
    }

    #[test]
    fn agrees_with_brute_force_up_to_order_16() {
        let b = Bounds::default();
        for n in 1..=15 {
            for entry in catalog::groups_of_order(n).unwrap() {
                assert_eq!(
                    subgroups(&entry.group, &b).unwrap(),
                    brute_force(&entry.group),
                    "{}",
                    entry.name
                );
            }
        }
        let c2 = FiniteGroup::cyclic(2);
        let c2_4 = c2.direct_product(&c2).direct_product(&c2).direct_product(&c2);
        assert_eq!(subgroups(&c2_4, &b).unwrap(), brute_force(&c2_4));
    }

    #[test]
    fn bound_is_enforced() {
        let b = Bounds {
            max_order: 4,
            ..Bounds::default()
        };
        assert!(subgroups(&FiniteGroup::cyclic(5), &b).is_err());
    }
}
