use super::SkewBrace;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// Componentwise brace on `B1 x B2`; `(a, b)` is stored at `a |B2| + b`.
pub fn direct_product(first: &SkewBrace, second: &SkewBrace, bounds: &Bounds) -> Result<SkewBrace> {
    bounds.check_order("direct product", first.order() * second.order())?;
    Ok(SkewBrace::from_groups_unchecked(
        first.add_group().direct_product(second.add_group()),
        first.mul_group().direct_product(second.mul_group()),
    ))
}

/// `SI = {s y}` for a subbrace `S` and ideal `I`. Also computes `S + I`
/// and checks that the two agree and form a subbrace.
pub fn subbrace_product(brace: &SkewBrace, sub: &ElementSet, ideal: &ElementSet) -> Result<ElementSet> {
    if !brace.is_subbrace(sub) {
        return Err(Error::NotASubbrace(format!("{sub:?}")));
    }
    if !brace.is_ideal(ideal) {
        return Err(Error::NotAnIdeal(format!("{ideal:?}")));
    }
    let n = brace.order();
    let pairs = || sub.iter().flat_map(|s| ideal.iter().map(move |y| (s, y)));
    let product = ElementSet::from_iter(n, pairs().map(|(s, y)| brace.mul(s, y)));
    let sum = ElementSet::from_iter(n, pairs().map(|(s, y)| brace.add(s, y)));
    if product != sum {
        return Err(Error::InternalInvariant(format!(
            "SI = {product:?} differs from S+I = {sum:?}"
        )));
    }
    if !brace.is_subbrace(&product) {
        return Err(Error::InternalInvariant("SI is not a subbrace".into()));
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::is_isomorphic;
    use crate::group::{catalog, FiniteGroup};

    #[test]
    fn product_examples() {
        let b = Bounds::default();
        let at = SkewBrace::almost_trivial(&catalog::symmetric(3));
        let p = direct_product(&at, &SkewBrace::zero(), &b).unwrap();
        assert!(is_isomorphic(&p, &at).is_some());
        let z2 = SkewBrace::trivial(&FiniteGroup::cyclic(2));
        let z3 = SkewBrace::trivial(&FiniteGroup::cyclic(3));
        let z6 = SkewBrace::trivial(&FiniteGroup::cyclic(6));
        assert!(is_isomorphic(&direct_product(&z2, &z3, &b).unwrap(), &z6).is_some());
        let tiny = Bounds {
            max_order: 5,
            ..Bounds::default()
        };
        assert!(direct_product(&z2, &z3, &tiny).is_err());
    }

    #[test]
    fn annihilator_of_product_is_product_of_annihilators() {
        let b = Bounds::default();
        let s3 = catalog::symmetric(3);
        let pairs = [
            (SkewBrace::trivial(&s3), SkewBrace::trivial(&FiniteGroup::cyclic(2))),
            (
                SkewBrace::almost_trivial(&s3),
                SkewBrace::trivial(&FiniteGroup::cyclic(3)),
            ),
            (
                SkewBrace::trivial(&FiniteGroup::cyclic(4)),
                SkewBrace::almost_trivial(&s3),
            ),
        ];
        for (b1, b2) in pairs {
            let p = direct_product(&b1, &b2, &b).unwrap();
            let z1 = b1.annihilator().unwrap();
            let z2 = b2.annihilator().unwrap();
            let n2 = b2.order();
            let expected = ElementSet::from_iter(p.order(), z1.iter().flat_map(|x| z2.iter().map(move |y| x * n2 + y)));
            assert_eq!(p.annihilator().unwrap(), expected);
        }
    }

    #[test]
    fn subbrace_product_examples() {
        let s3 = catalog::symmetric(3);
        let at = SkewBrace::almost_trivial(&s3);
        let a3 = s3.generate((1..6).filter(|&x| s3.element_order(x) == 3));
        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let s = ElementSet::from_iter(6, [0, t]);
        assert!(subbrace_product(&at, &s, &a3).unwrap().is_full());
        assert_eq!(subbrace_product(&at, &ElementSet::zero(6), &a3).unwrap(), a3);
        assert_eq!(subbrace_product(&at, &s, &ElementSet::zero(6)).unwrap(), s);
    }
}
