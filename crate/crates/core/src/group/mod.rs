//! Finite groups given by Cayley tables over `0..n`, identity at `0`.

mod automorphism;
pub mod catalog;
mod holomorph;
pub(crate) mod hom;
pub(crate) mod subgroups;

pub use automorphism::{automorphism_group, inner_automorphism_subgroup, AutGroup, Automorphism};
pub use holomorph::{holomorph, regular_subgroups, Ambient, Holomorph, HolomorphElement, RegularSubgroup};
pub use hom::{find_isomorphism, Generators};
pub use subgroups::{normal_subgroups, subgroups};

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A finite group stored as a flat row-major Cayley table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    element_orders: Vec<usize>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// Validates a Cayley table with the default bounds.
pub fn validate_group(rows: &[Vec<usize>]) -> Result<FiniteGroup> {
    validate_group_with(rows, &Bounds::default())
}

/// Validates a Cayley table, reporting the first failed axiom in the order
/// closure, Latin square, identity at `0`, associativity, inverses.
///
/// Associativity is scanned only when `n <= bounds.max_order`; larger tables
/// are rejected outright.
pub fn validate_group_with(rows: &[Vec<usize>], bounds: &Bounds) -> Result<FiniteGroup> {
    let table = flatten_square(rows)?;
    let n = rows.len();
    bounds.check_order("group", n)?;
    check_latin(n, &table)?;
    for a in 0..n {
        if table[a] != a || table[a * n] != a {
            return Err(Error::NoIdentityAtZero { a });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a * n + b];
            for c in 0..n {
                if table[ab * n + c] != table[a * n + table[b * n + c]] {
                    return Err(Error::NotAssociative { a, b, c });
                }
            }
        }
    }
    for a in 0..n {
        if !(0..n).any(|b| table[a * n + b] == 0 && table[b * n + a] == 0) {
            return Err(Error::NoInverse { a });
        }
    }
    Ok(FiniteGroup::from_flat_unchecked(n, table))
}

/// Result of [`load_group`]: the validated group and the relabelling applied.
#[derive(Debug, Clone)]
pub struct LoadReport {
    pub group: FiniteGroup,
    /// `relabel[old] = new`, present only when the identity was not at `0`.
    pub relabel: Option<Vec<usize>>,
}

/// Loads a table whose identity may sit at any index, moving it to `0`.
pub fn load_group(rows: &[Vec<usize>], bounds: &Bounds) -> Result<LoadReport> {
    let table = flatten_square(rows)?;
    let n = rows.len();
    let identity = (0..n).find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x));
    match identity {
        Some(e) if e != 0 => {
            let perm: Vec<usize> = (0..n)
                .map(|x| {
                    if x == 0 {
                        e
                    } else if x == e {
                        0
                    } else {
                        x
                    }
                })
                .collect();
            let relabeled = relabel_rows(rows, &perm);
            let group = validate_group_with(&relabeled, bounds)?;
            Ok(LoadReport {
                group,
                relabel: Some(perm),
            })
        }
        _ => Ok(LoadReport {
            group: validate_group_with(rows, bounds)?,
            relabel: None,
        }),
    }
}

/// Applies `perm` (old -> new) to a table: `t'[p(a)][p(b)] = p(t[a][b])`.
pub(crate) fn relabel_rows(rows: &[Vec<usize>], perm: &[usize]) -> Vec<Vec<usize>> {
    let n = rows.len();
    let mut out = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a]][perm[b]] = perm[rows[a][b]];
        }
    }
    out
}

fn flatten_square(rows: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let mut table = Vec::with_capacity(n * n);
    for (a, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                row: a,
                len: row.len(),
                expected: n,
            });
        }
        for (b, &value) in row.iter().enumerate() {
            if value >= n {
                return Err(Error::NotClosed { a, b, value, order: n });
            }
        }
        table.extend_from_slice(row);
    }
    Ok(table)
}

fn check_latin(n: usize, table: &[usize]) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let v = table[a * n + b];
            if seen[v] != usize::MAX && seen[v] / n == a {
                let prev = seen[v] % n;
                return Err(Error::NotLatin {
                    a,
                    b: prev,
                    c: a,
                    d: b,
                    value: v,
                });
            }
            seen[v] = a * n + b;
        }
    }
    seen.fill(usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let v = table[a * n + b];
            if seen[v] != usize::MAX && seen[v] % n == b {
                let prev = seen[v] / n;
                return Err(Error::NotLatin {
                    a: prev,
                    b,
                    c: a,
                    d: b,
                    value: v,
                });
            }
            seen[v] = a * n + b;
        }
    }
    Ok(())
}

impl FiniteGroup {
    /// Builds a group from a table already known to satisfy the axioms.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("group table without inverse");
        }
        let mut element_orders = vec![1; order];
        for a in 1..order {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * order + a];
                k += 1;
            }
            element_orders[a] = k;
        }
        Self {
            order,
            table,
            inverse,
            element_orders,
        }
    }

    /// Builds and validates the group whose product is `f(a, b)`.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| f(a, b)).collect()).collect();
        validate_group(&rows)
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0])
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat_unchecked(n, table)
    }

    /// Direct product, element `(a, b)` stored at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n1, n2) = (self.order, other.order);
        let n = n1 * n2;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = self.op(x / n2, y / n2);
                let b = other.op(x % n2, y % n2);
                table[x * n + y] = a * n2 + b;
            }
        }
        Self::from_flat_unchecked(n, table)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a * b^{-1}`.
    #[inline]
    pub fn div(&self, a: usize, b: usize) -> usize {
        self.op(a, self.inverse[b])
    }

    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.op(self.op(g, x), self.inverse[g])
    }

    /// `a^{-1} b^{-1} a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.op(self.op(self.inverse[a], self.inverse[b]), self.op(a, b))
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.op(a, b) == self.op(b, a)))
    }

    pub fn center(&self) -> ElementSet {
        ElementSet::from_iter(
            self.order,
            (0..self.order).filter(|&a| (0..self.order).all(|b| self.op(a, b) == self.op(b, a))),
        )
    }

    /// Subgroup generated by `gens`.
    pub fn generate<I: IntoIterator<Item = usize>>(&self, gens: I) -> ElementSet {
        let gens: Vec<usize> = gens.into_iter().filter(|&g| g != 0).collect();
        let mut set = ElementSet::zero(self.order);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.op(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        set.contains(0) && set.iter().all(|a| set.iter().all(|b| set.contains(self.div(a, b))))
    }

    pub fn is_normal(&self, set: &ElementSet) -> bool {
        self.is_subgroup(set) && (0..self.order).all(|g| set.iter().all(|x| set.contains(self.conjugate(g, x))))
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure<I: IntoIterator<Item = usize>>(&self, gens: I) -> ElementSet {
        let mut set = self.generate(gens);
        loop {
            let conj: Vec<usize> = set
                .iter()
                .flat_map(|x| (0..self.order).map(move |g| (g, x)))
                .map(|(g, x)| self.conjugate(g, x))
                .filter(|&y| !set.contains(y))
                .collect();
            if conj.is_empty() {
                return set;
            }
            set = self.generate(set.iter().chain(conj));
        }
    }

    /// Simple: nontrivial with no normal subgroups besides `1` and itself.
    pub fn is_simple(&self) -> bool {
        self.order > 1 && (1..self.order).all(|x| self.normal_closure([x]).is_full())
    }

    /// Left cosets `gS`, sorted by least element.
    pub fn left_cosets(&self, subgroup: &ElementSet) -> Vec<ElementSet> {
        let mut seen = ElementSet::empty(self.order);
        let mut cosets = Vec::new();
        for g in 0..self.order {
            if seen.contains(g) {
                continue;
            }
            let coset = ElementSet::from_iter(self.order, subgroup.iter().map(|s| self.op(g, s)));
            for x in coset.iter() {
                seen.insert(x);
            }
            cosets.push(coset);
        }
        cosets
    }

    /// True when the group is an elementary abelian `p`-group; returns `p`.
    pub fn elementary_abelian_prime(&self) -> Option<usize> {
        if self.order < 2 || !self.is_abelian() {
            return None;
        }
        let p = self.element_orders[1];
        if !crate::util::is_prime(p) {
            return None;
        }
        (1..self.order).all(|a| self.element_orders[a] == p).then_some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_rows() -> Vec<Vec<usize>> {
        (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect()
    }

    #[test]
    fn order_one_and_cyclic_three() {
        let g = validate_group(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
        let rows: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let g = validate_group(&rows).unwrap();
        assert_eq!(g.inv(1), 2);
        assert_eq!(g.element_order(2), 3);
    }

    /// Every mutation of one entry of the Z/4 table must be rejected, and the
    /// error must point at a real defect found by an independent axiom scan.
    #[test]
    fn every_single_entry_mutation_of_z4_is_rejected() {
        let base = z4_rows();
        for a in 0..4 {
            for b in 0..4 {
                for v in 0..4 {
                    if v == base[a][b] {
                        continue;
                    }
                    let mut rows = base.clone();
                    rows[a][b] = v;
                    let err = validate_group(&rows).unwrap_err();
                    match err {
                        Error::NotLatin { a, b, c, d, value } => {
                            assert_eq!(rows[a][b], value);
                            assert_eq!(rows[c][d], value);
                            assert!((a == c) != (b == d));
                        }
                        Error::NotAssociative { a, b, c } => {
                            assert_ne!(rows[rows[a][b]][c], rows[a][rows[b][c]]);
                        }
                        Error::NoIdentityAtZero { a } => {
                            assert!(rows[0][a] != a || rows[a][0] != a);
                        }
                        other => panic!("unexpected rejection {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn swapped_row_pair_gives_witness() {
        let mut rows = z4_rows();
        rows[1].swap(2, 3);
        assert!(matches!(
            validate_group(&rows),
            Err(Error::NotLatin { .. } | Error::NotAssociative { .. })
        ));
    }

    #[test]
    fn out_of_range_entry_is_not_closed() {
        let mut rows = z4_rows();
        rows[2][3] = 7;
        assert!(matches!(
            validate_group(&rows),
            Err(Error::NotClosed {
                a: 2,
                b: 3,
                value: 7,
                ..
            })
        ));
    }

    #[test]
    fn loader_moves_identity_to_zero() {
        // Z/3 written with identity at label 2: x*y = (x + y + 1) mod 3.
        let rows: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b + 1) % 3).collect()).collect();
        assert!(validate_group(&rows).is_err());
        let report = load_group(&rows, &Bounds::default()).unwrap();
        assert_eq!(report.relabel, Some(vec![2, 1, 0]));
        assert_eq!(report.group.order(), 3);
        assert!(report.group.is_abelian());
    }

    #[test]
    fn simplicity_and_center() {
        assert!(FiniteGroup::cyclic(5).is_simple());
        assert!(!FiniteGroup::cyclic(4).is_simple());
        let s3 = catalog::symmetric(3);
        assert!(!s3.is_simple());
        assert_eq!(s3.center().len(), 1);
        assert!(catalog::alternating5().is_simple());
    }
}
