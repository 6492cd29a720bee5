//! Built-in groups: every group of order at most 15 up to isomorphism,
//! plus the alternating group of degree 5.
//!
//! Tables are generated from standard constructions and re-validated as
//! group tables whenever the catalog is queried.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use super::{validate_group, FiniteGroup};
use crate::bounds::Bounds;
use crate::error::{Error, Result};

/// Largest order covered by the built-in catalog.
pub const BUILTIN_MAX_ORDER: usize = 15;

#[derive(Debug, Clone)]
pub struct CatalogGroup {
    pub name: String,
    pub group: FiniteGroup,
}

/// Built-in groups, optionally extended with user-supplied tables.
#[derive(Debug, Clone, Default)]
pub struct GroupCatalog {
    extra: BTreeMap<usize, Vec<CatalogGroup>>,
}

impl GroupCatalog {
    pub fn builtin() -> Self {
        Self::default()
    }

    /// Adds the groups of a JSON catalog file: an array of
    /// `{"name": ..., "order": n, "table": [[...]]}` objects. For any order
    /// present in the file the file's list replaces the built-in one.
    pub fn with_file(mut self, path: &Path, bounds: &Bounds) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let entries: Vec<crate::io::GroupFile> = serde_json::from_str(&text)?;
        for (i, entry) in entries.into_iter().enumerate() {
            let name = entry.name.clone().unwrap_or_else(|| format!("G{}_{}", entry.order, i));
            let report = entry.into_group(bounds)?;
            self.extra.entry(report.group.order()).or_default().push(CatalogGroup {
                name,
                group: report.group,
            });
        }
        Ok(self)
    }

    pub fn groups_of_order(&self, n: usize) -> Result<Vec<CatalogGroup>> {
        match self.extra.get(&n) {
            Some(list) => Ok(list.clone()),
            None => groups_of_order(n),
        }
    }
}

/// All built-in groups of order `n`, in a fixed order (cyclic first).
pub fn groups_of_order(n: usize) -> Result<Vec<CatalogGroup>> {
    let c = FiniteGroup::cyclic;
    let list: Vec<(&str, FiniteGroup)> = match n {
        1 => vec![("C1", FiniteGroup::trivial())],
        2 | 3 | 5 | 7 | 11 | 13 => vec![("", c(n))],
        4 => vec![("C4", c(4)), ("C2xC2", c(2).direct_product(&c(2)))],
        6 => vec![("C6", c(6)), ("S3", symmetric(3))],
        8 => vec![
            ("C8", c(8)),
            ("C4xC2", c(4).direct_product(&c(2))),
            ("C2xC2xC2", c(2).direct_product(&c(2)).direct_product(&c(2))),
            ("D4", dihedral(4)),
            ("Q8", quaternion8()),
        ],
        9 => vec![("C9", c(9)), ("C3xC3", c(3).direct_product(&c(3)))],
        10 => vec![("C10", c(10)), ("D5", dihedral(5))],
        12 => vec![
            ("C12", c(12)),
            ("C6xC2", c(6).direct_product(&c(2))),
            ("D6", dihedral(6)),
            ("A4", alternating4()),
            ("Dic3", dicyclic(3)),
        ],
        14 => vec![("C14", c(14)), ("D7", dihedral(7))],
        15 => vec![("C15", c(15))],
        _ => return Err(Error::CatalogMissing(n)),
    };
    list.into_iter()
        .map(|(name, group)| {
            let name = if name.is_empty() {
                format!("C{n}")
            } else {
                name.to_string()
            };
            let group = validate_group(&group.rows())?;
            Ok(CatalogGroup { name, group })
        })
        .collect()
}

/// Group generated by permutations of `0..degree`, product `(ab)(x) = a(b(x))`.
/// The identity permutation is element `0`; other elements in BFS order.
pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> FiniteGroup {
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in gens {
            let y: Vec<usize> = g.iter().map(|&i| x[i]).collect();
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    let n = elements.len();
    let mut table = vec![0; n * n];
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let ab: Vec<usize> = b.iter().map(|&k| a[k]).collect();
            table[i * n + j] = index[&ab];
        }
    }
    FiniteGroup::from_flat_unchecked(n, table)
}

pub fn symmetric(degree: usize) -> FiniteGroup {
    if degree <= 1 {
        return FiniteGroup::trivial();
    }
    let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
    let mut swap: Vec<usize> = (0..degree).collect();
    swap.swap(0, 1);
    from_permutations(degree, &[cycle, swap])
}

pub fn alternating4() -> FiniteGroup {
    from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// The alternating group of degree 5, order 60.
pub fn alternating5() -> FiniteGroup {
    from_permutations(5, &[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]])
}

/// Dihedral group of order `2m`: `r^k s^e` at index `k + m e`.
pub fn dihedral(m: usize) -> FiniteGroup {
    let n = 2 * m;
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (k1, e1) = (x % m, x / m);
            let (k2, e2) = (y % m, y / m);
            let k = if e1 == 0 { (k1 + k2) % m } else { (k1 + m - k2) % m };
            table[x * n + y] = k + m * ((e1 + e2) % 2);
        }
    }
    FiniteGroup::from_flat_unchecked(n, table)
}

/// Dicyclic group of order `4m`: `a^k x^e` with `a^{2m} = 1`, `x^2 = a^m`,
/// `x a x^{-1} = a^{-1}`, stored at index `k + 2m e`.
pub fn dicyclic(m: usize) -> FiniteGroup {
    let r = 2 * m;
    let n = 2 * r;
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (k1, e1) = (x % r, x / r);
            let (k2, e2) = (y % r, y / r);
            let (k, e) = match (e1, e2) {
                (0, e2) => ((k1 + k2) % r, e2),
                (_, 0) => ((k1 + r - k2) % r, 1),
                _ => ((k1 + r - k2 + m) % r, 0),
            };
            table[x * n + y] = k + r * e;
        }
    }
    FiniteGroup::from_flat_unchecked(n, table)
}

pub fn quaternion8() -> FiniteGroup {
    dicyclic(2)
}
