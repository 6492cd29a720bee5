use super::SkewBrace;
use crate::group::hom::{search_homomorphisms, Generators};

/// Per-element invariant preserved by brace isomorphisms.
type Signature = (usize, usize, usize);

fn signatures(brace: &SkewBrace) -> Vec<Signature> {
    let n = brace.order();
    (0..n)
        .map(|x| {
            let mut orbit = crate::set::ElementSet::empty(n);
            for b in 0..n {
                orbit.insert(brace.lambda(b, x));
            }
            (
                brace.add_group().element_order(x),
                brace.mul_group().element_order(x),
                orbit.len(),
            )
        })
        .collect()
}

/// A bijection `f` with `f(a + b) = f(a) + f(b)` and `f(ab) = f(a) f(b)`, if any.
///
/// Backtracks over images of an additive generating set, allowing only
/// images with the same (additive order, multiplicative order, λ-orbit size)
/// signature, and checks the multiplicative table on each complete candidate.
pub fn is_isomorphic(first: &SkewBrace, second: &SkewBrace) -> Option<Vec<usize>> {
    let n = first.order();
    if second.order() != n
        || first.is_trivial() != second.is_trivial()
        || first.is_almost_trivial() != second.is_almost_trivial()
    {
        return None;
    }
    let sig1 = signatures(first);
    let sig2 = signatures(second);
    let (mut s1, mut s2) = (sig1.clone(), sig2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    let gens = Generators::greedy(first.add_group());
    let candidates: Vec<Vec<usize>> = gens
        .gens()
        .iter()
        .map(|&g| (0..n).filter(|&y| sig2[y] == sig1[g]).collect())
        .collect();
    let mut found = None;
    search_homomorphisms(
        first.add_group(),
        second.add_group(),
        &gens,
        &candidates,
        true,
        &mut |f| {
            let ok = (0..n).all(|x| sig2[f[x]] == sig1[x])
                && (0..n).all(|a| (0..n).all(|b| f[first.mul(a, b)] == second.mul(f[a], f[b])));
            if ok {
                found = Some(f);
            }
            !ok
        },
    );
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::validate_brace;
    use crate::group::{catalog, relabel_rows, FiniteGroup};

    #[test]
    fn self_isomorphism() {
        let at = SkewBrace::almost_trivial(&catalog::dihedral(4));
        let f = is_isomorphic(&at, &at).unwrap();
        assert_eq!(f.len(), 8);
    }

    #[test]
    fn non_isomorphic_pairs() {
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        assert!(is_isomorphic(&SkewBrace::trivial(&FiniteGroup::cyclic(4)), &SkewBrace::trivial(&v4)).is_none());
        let s3 = catalog::symmetric(3);
        let t = SkewBrace::trivial(&s3);
        let at = SkewBrace::almost_trivial(&s3);
        assert_eq!(t.kernel_lambda().unwrap().len(), 6);
        assert_eq!(at.kernel_lambda().unwrap().len(), 1);
        assert!(is_isomorphic(&t, &at).is_none());
    }

    #[test]
    fn relabelled_brace_is_isomorphic() {
        let at = SkewBrace::almost_trivial(&catalog::symmetric(3));
        let perm = vec![0, 3, 5, 1, 2, 4];
        let add = relabel_rows(&at.add_rows(), &perm);
        let mul = relabel_rows(&at.mul_rows(), &perm);
        let copy = validate_brace(&add, &mul).unwrap();
        let f = is_isomorphic(&at, &copy).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(f[at.add(a, b)], copy.add(f[a], f[b]));
                assert_eq!(f[at.mul(a, b)], copy.mul(f[a], f[b]));
            }
        }
    }
}
