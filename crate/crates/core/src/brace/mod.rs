//! Skew left braces: one carrier with an additive and a multiplicative group
//! sharing the identity `0`, linked by `a(b + c) = ab - a + ac`.

mod iso;
mod product;
mod quotient;
mod sets;

pub use iso::is_isomorphic;
pub use product::{direct_product, subbrace_product};
pub use quotient::{quotient, Quotient};
pub use sets::{all_subbraces, classify_subset, SubsetFlags};

use crate::bounds::Bounds;
use crate::error::{Error, Operation, Result};
use crate::group::{validate_group_with, Automorphism, FiniteGroup};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewBrace {
    add: FiniteGroup,
    mul: FiniteGroup,
    /// `lambda[a * n + b] = -a + ab`.
    lambda: Vec<usize>,
    trivial: bool,
    almost_trivial: bool,
}

impl std::fmt::Debug for SkewBrace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SkewBrace")
            .field("order", &self.order())
            .field("trivial", &self.trivial)
            .field("almost_trivial", &self.almost_trivial)
            .finish_non_exhaustive()
    }
}

/// Validates both tables as groups, then scans every triple for the brace axiom.
pub fn validate_brace(add_rows: &[Vec<usize>], mul_rows: &[Vec<usize>]) -> Result<SkewBrace> {
    validate_brace_with(add_rows, mul_rows, &Bounds::default())
}

pub fn validate_brace_with(add_rows: &[Vec<usize>], mul_rows: &[Vec<usize>], bounds: &Bounds) -> Result<SkewBrace> {
    let add = validate_group_with(add_rows, bounds).map_err(|e| Error::GroupInvalid {
        which: Operation::Add,
        source: Box::new(e),
    })?;
    let mul = validate_group_with(mul_rows, bounds).map_err(|e| Error::GroupInvalid {
        which: Operation::Mul,
        source: Box::new(e),
    })?;
    SkewBrace::new(add, mul)
}

impl SkewBrace {
    /// Pairs two groups on the same carrier, checking the brace axiom.
    pub fn new(add: FiniteGroup, mul: FiniteGroup) -> Result<Self> {
        let n = add.order();
        if mul.order() != n {
            return Err(Error::OrderMismatch {
                declared: n,
                actual: mul.order(),
            });
        }
        for a in 0..n {
            let neg_a = add.inv(a);
            for b in 0..n {
                let ab_minus_a = add.op(mul.op(a, b), neg_a);
                for c in 0..n {
                    if mul.op(a, add.op(b, c)) != add.op(ab_minus_a, mul.op(a, c)) {
                        return Err(Error::BraceAxiomFailed { a, b, c });
                    }
                }
            }
        }
        Ok(Self::from_groups_unchecked(add, mul))
    }

    pub(crate) fn from_groups_unchecked(add: FiniteGroup, mul: FiniteGroup) -> Self {
        let n = add.order();
        let mut lambda = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                lambda[a * n + b] = add.op(add.inv(a), mul.op(a, b));
            }
        }
        let trivial = add.table() == mul.table();
        let almost_trivial = (0..n).all(|a| (0..n).all(|b| mul.op(a, b) == add.op(b, a)));
        Self {
            add,
            mul,
            lambda,
            trivial,
            almost_trivial,
        }
    }

    /// Trivial brace: `ab = a + b`.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_groups_unchecked(group.clone(), group.clone())
    }

    /// Almost trivial brace: `ab = b + a`.
    pub fn almost_trivial(group: &FiniteGroup) -> Self {
        let n = group.order();
        let table = (0..n * n).map(|i| group.op(i % n, i / n)).collect();
        Self::from_groups_unchecked(group.clone(), FiniteGroup::from_flat_unchecked(n, table))
    }

    /// The brace of order 1.
    pub fn zero() -> Self {
        Self::trivial(&FiniteGroup::trivial())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn add_group(&self) -> &FiniteGroup {
        &self.add
    }

    pub fn mul_group(&self) -> &FiniteGroup {
        &self.mul
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.op(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.add.inv(a)
    }

    /// Multiplicative inverse.
    #[inline]
    pub fn minv(&self, a: usize) -> usize {
        self.mul.inv(a)
    }

    /// `a - b = a + (-b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add.op(a, self.add.inv(b))
    }

    /// `λ_a(b) = -a + ab`.
    #[inline]
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.lambda[a * self.order() + b]
    }

    pub fn lambda_map(&self, a: usize) -> Automorphism {
        let n = self.order();
        Automorphism::from_perm_unchecked(self.lambda[a * n..(a + 1) * n].to_vec())
    }

    /// `a * b = λ_a(b) - b`.
    #[inline]
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.sub(self.lambda(a, b), b)
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn is_almost_trivial(&self) -> bool {
        self.almost_trivial
    }

    /// `[B,B] = 0`: trivial with abelian additive group.
    pub fn is_abelian(&self) -> bool {
        self.trivial && self.add.is_abelian()
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.add.rows()
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul.rows()
    }

    /// Lexicographic key `(add table, mul table)` used to pick class representatives.
    pub fn table_key(&self) -> (&[usize], &[usize]) {
        (self.add.table(), self.mul.table())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;
    use proptest::prelude::*;

    fn small_braces() -> Vec<SkewBrace> {
        let s3 = catalog::symmetric(3);
        vec![
            SkewBrace::zero(),
            SkewBrace::trivial(&FiniteGroup::cyclic(3)),
            SkewBrace::trivial(&s3),
            SkewBrace::almost_trivial(&s3),
            SkewBrace::almost_trivial(&catalog::quaternion8()),
            SkewBrace::trivial(&catalog::dihedral(4)),
        ]
    }

    #[test]
    fn trivial_and_almost_trivial_validate() {
        let z3 = FiniteGroup::cyclic(3);
        let b = validate_brace(&z3.rows(), &z3.rows()).unwrap();
        assert!(b.is_trivial());
        let s3 = catalog::symmetric(3);
        let at = SkewBrace::almost_trivial(&s3);
        let b = validate_brace(&at.add_rows(), &at.mul_rows()).unwrap();
        assert!(b.is_almost_trivial());
        assert!(!b.is_trivial());
    }

    fn all_zero_fixing_perms(n: usize) -> Vec<Vec<usize>> {
        crate::construct::all_permutations(n)
            .into_iter()
            .filter(|p| p[0] == 0)
            .collect()
    }

    /// Pairs the additive table of `add` with each relabelling of `mul`
    /// fixing 0. An independent triple scan decides the brace axiom and the
    /// validator must agree, reporting a genuine witness. Returns the number
    /// of rejected pairings.
    fn scan_pairings(add: &FiniteGroup, mul: &FiniteGroup) -> usize {
        let n = add.order();
        let mut rejected = 0;
        for p in all_zero_fixing_perms(n) {
            let mul_rows = crate::group::relabel_rows(&mul.rows(), &p);
            let prod = |a: usize, b: usize| mul_rows[a][b];
            let axiom = |a: usize, b: usize, c: usize| {
                prod(a, add.op(b, c)) == add.op(add.op(prod(a, b), add.inv(a)), prod(a, c))
            };
            let holds = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| axiom(a, b, c))));
            match validate_brace(&add.rows(), &mul_rows) {
                Ok(_) => assert!(holds),
                Err(Error::BraceAxiomFailed { a, b, c }) => {
                    assert!(!holds);
                    assert!(!axiom(a, b, c));
                    rejected += 1;
                }
                Err(e) => panic!("unexpected {e:?}"),
            }
        }
        rejected
    }

    #[test]
    fn non_brace_pairings_are_rejected_with_witness() {
        let z4 = FiniteGroup::cyclic(4);
        let v4 = FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2));
        // on four points every such pairing satisfies the axiom
        assert_eq!(scan_pairings(&z4, &v4), 0);
        assert_eq!(scan_pairings(&v4, &z4), 0);
        let z6 = FiniteGroup::cyclic(6);
        let s3 = catalog::symmetric(3);
        assert!(scan_pairings(&z6, &s3) > 0);
        assert!(scan_pairings(&s3, &z6) > 0);
    }

    #[test]
    fn invalid_group_names_the_table() {
        let z3 = FiniteGroup::cyclic(3);
        let mut bad = z3.rows();
        bad[1][1] = 0;
        assert!(matches!(
            validate_brace(&z3.rows(), &bad),
            Err(Error::GroupInvalid {
                which: Operation::Mul,
                ..
            })
        ));
    }

    #[test]
    fn lambda_examples() {
        let s3 = catalog::symmetric(3);
        let t = SkewBrace::trivial(&s3);
        let at = SkewBrace::almost_trivial(&s3);
        for a in 0..6 {
            assert!(t.lambda_map(a).is_identity());
            assert_eq!(at.lambda_map(a), Automorphism::inner(&s3, s3.inv(a)));
            for b in 0..6 {
                assert_eq!(t.star(a, b), 0);
                // -a + b + a - b
                let comm = s3.op(s3.op(s3.op(s3.inv(a), b), a), s3.inv(b));
                assert_eq!(at.star(a, b), comm);
            }
        }
        for b in small_braces() {
            assert!(b.lambda_map(0).is_identity());
            for a in 0..b.order() {
                assert_eq!(b.star(a, 0), 0);
                assert_eq!(b.star(0, a), 0);
            }
        }
    }

    proptest! {
        #[test]
        fn product_lambda_identities(idx in 0usize..6, a in 0usize..64, b in 0usize..64) {
            let braces = small_braces();
            let br = &braces[idx];
            let n = br.order();
            let (a, b) = (a % n, b % n);
            prop_assert_eq!(br.mul(a, b), br.add(a, br.lambda(a, b)));
            prop_assert_eq!(br.add(a, b), br.mul(a, br.lambda(br.minv(a), b)));
            let lab = br.lambda_map(br.mul(a, b));
            prop_assert_eq!(lab, br.lambda_map(a).compose(&br.lambda_map(b)));
        }
    }
}
