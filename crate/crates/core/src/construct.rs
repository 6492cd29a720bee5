//! Braces from regular subgroups of holomorphs, the census of all braces of
//! a given order, and a brute-force oracle for small orders.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::brace::{is_isomorphic, SkewBrace};
use crate::error::{Error, Result};
use crate::group::catalog::GroupCatalog;
use crate::group::{
    automorphism_group, find_isomorphism, regular_subgroups, Ambient, Automorphism, FiniteGroup, Holomorph,
    RegularSubgroup,
};

/// One brace of a census together with where it came from.
#[derive(Debug, Clone)]
pub struct CensusEntry {
    pub brace: SkewBrace,
    /// Index of the additive group in the catalog list for this order.
    pub add_group_id: Option<usize>,
    /// Index of the catalog group isomorphic to the multiplicative group.
    pub mul_group_id: Option<usize>,
    /// `provenance[g]` is the permutation `φ_g` with `(g, φ_g)` in the
    /// regular subgroup.
    pub provenance: Vec<Vec<usize>>,
}

/// One line of a census file.
#[derive(Debug, Clone, Serialize)]
pub struct CensusRecord {
    pub index: usize,
    pub order: usize,
    pub add_group_id: Option<usize>,
    pub add_group: Option<String>,
    pub mul_group_id: Option<usize>,
    pub mul_group: Option<String>,
    pub trivial: bool,
    pub almost_trivial: bool,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub provenance: Vec<Vec<usize>>,
}

/// `bc := b + φ_b(c)` for the subgroup `{(b, φ_b)}` of `hol`, given as one
/// automorphism index per element.
pub fn brace_from_regular_subgroup(hol: &Holomorph, phis: &[usize]) -> Result<SkewBrace> {
    let sub = RegularSubgroup::new(hol, phis.to_vec())?;
    let g = hol.group();
    let n = g.order();
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|b| (0..n).map(|c| g.op(b, hol.auts().apply(sub.phi(b), c))).collect())
        .collect();
    let mul = crate::group::validate_group(&rows)
        .map_err(|e| Error::NotRegular(format!("induced product is not a group: {e}")))?;
    SkewBrace::new(g.clone(), mul)
}

/// The subgroup `{(b, λ_b)}` of `Hol(B,+)` attached to a brace.
pub fn regular_subgroup_of_brace(hol: &Holomorph, brace: &SkewBrace) -> Result<RegularSubgroup> {
    let phis = (0..brace.order())
        .map(|b| {
            hol.auts()
                .index_of(brace.lambda_map(b).perm())
                .ok_or_else(|| Error::InternalInvariant(format!("λ_{b} is not in Aut(B,+)")))
        })
        .collect::<Result<Vec<_>>>()?;
    RegularSubgroup::new(hol, phis)
}

pub fn holomorph_of(group: &FiniteGroup, bounds: &Bounds) -> Result<Holomorph> {
    bounds.check_order("group", group.order())?;
    let auts = automorphism_group(group, bounds)?;
    Ok(Holomorph::new(group.clone(), auts))
}

/// One brace per regular subgroup of `Hol(G)`, in the order of the subgroups.
pub fn enumerate_braces_on(group: &FiniteGroup, bounds: &Bounds) -> Result<Vec<CensusEntry>> {
    let hol = holomorph_of(group, bounds)?;
    let subs = regular_subgroups(&hol, Ambient::Full, bounds)?;
    subs.iter()
        .map(|h| {
            let brace = brace_from_regular_subgroup(&hol, h.phis())?;
            let provenance = h.phis().iter().map(|&p| hol.auts().get(p).perm().to_vec()).collect();
            Ok(CensusEntry {
                brace,
                add_group_id: None,
                mul_group_id: None,
                provenance,
            })
        })
        .collect()
}

/// Isomorphism invariants used to bucket braces before the pairwise test.
fn invariant_key(b: &SkewBrace) -> (bool, bool, usize, usize, Vec<(usize, usize)>) {
    let n = b.order();
    let ker = (0..n).filter(|&a| (0..n).all(|x| b.lambda(a, x) == x)).count();
    let fix = (0..n).filter(|&a| (0..n).all(|x| b.lambda(x, a) == a)).count();
    let mut orders: Vec<(usize, usize)> = (0..n)
        .map(|x| (b.add_group().element_order(x), b.mul_group().element_order(x)))
        .collect();
    orders.sort_unstable();
    (b.is_trivial(), b.mul_group().is_abelian(), ker, fix, orders)
}

/// Keeps the first brace of each isomorphism class, in input order.
pub fn dedup_braces<T>(items: Vec<T>, brace: impl Fn(&T) -> &SkewBrace) -> Vec<T> {
    let mut kept: Vec<(T, _)> = Vec::new();
    for item in items {
        let key = invariant_key(brace(&item));
        let dup = kept
            .iter()
            .any(|(other, k)| *k == key && is_isomorphic(brace(other), brace(&item)).is_some());
        if !dup {
            kept.push((item, key));
        }
    }
    kept.into_iter().map(|(t, _)| t).collect()
}

/// All braces of order `n` up to isomorphism.
///
/// Braces on non-isomorphic additive groups are never isomorphic, so
/// deduplication happens per additive group. Each class is represented by
/// its lexicographically least multiplicative table, and the result is
/// sorted by (additive group, multiplicative table).
pub fn enumerate_braces(n: usize, catalog: &GroupCatalog, bounds: &Bounds) -> Result<Vec<CensusEntry>> {
    bounds.check_order("census", n)?;
    let groups = catalog.groups_of_order(n)?;
    let per_group: Vec<Result<Vec<CensusEntry>>> = groups
        .par_iter()
        .enumerate()
        .map(|(id, cg)| {
            let mut entries = enumerate_braces_on(&cg.group, bounds)?;
            entries.sort_by(|a, b| a.brace.table_key().cmp(&b.brace.table_key()));
            let mut kept = dedup_braces(entries, |e| &e.brace);
            for e in &mut kept {
                e.add_group_id = Some(id);
                e.mul_group_id = groups
                    .iter()
                    .position(|m| find_isomorphism(e.brace.mul_group(), &m.group).is_some());
            }
            Ok(kept)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_group {
        out.extend(r?);
    }
    Ok(out)
}

pub fn census_records(entries: &[CensusEntry], catalog: &GroupCatalog) -> Result<Vec<CensusRecord>> {
    let mut out = Vec::with_capacity(entries.len());
    for (index, e) in entries.iter().enumerate() {
        let n = e.brace.order();
        let groups = catalog.groups_of_order(n)?;
        let name = |id: Option<usize>| id.map(|i| groups[i].name.clone());
        out.push(CensusRecord {
            index,
            order: n,
            add_group_id: e.add_group_id,
            add_group: name(e.add_group_id),
            mul_group_id: e.mul_group_id,
            mul_group: name(e.mul_group_id),
            trivial: e.brace.is_trivial(),
            almost_trivial: e.brace.is_almost_trivial(),
            add: e.brace.add_rows(),
            mul: e.brace.mul_rows(),
            provenance: e.provenance.clone(),
        });
    }
    Ok(out)
}

/// Largest order accepted by [`oracle_enumerate_braces`].
pub const ORACLE_MAX_ORDER: usize = 6;

/// Brute-force census: for each additive group `A`, every function
/// `λ: A -> Aut(A)` is tried and kept when `b c := b + λ_b(c)` is a group
/// satisfying the brace axiom; classes are then separated by testing all
/// bijections. Shares no search code with [`enumerate_braces`].
pub fn oracle_enumerate_braces(n: usize, catalog: &GroupCatalog) -> Result<Vec<SkewBrace>> {
    if n > ORACLE_MAX_ORDER {
        return Err(Error::BoundExceeded {
            what: "oracle order",
            size: n,
            bound: ORACLE_MAX_ORDER,
        });
    }
    let perms = all_permutations(n);
    let mut classes: Vec<SkewBrace> = Vec::new();
    for cg in catalog.groups_of_order(n)? {
        let a = &cg.group;
        let auts: Vec<&Vec<usize>> = perms
            .iter()
            .filter(|p| (0..n).all(|x| (0..n).all(|y| p[a.op(x, y)] == a.op(p[x], p[y]))))
            .collect();
        let m = auts.len();
        let total = m.pow(n as u32);
        let mut found: Vec<SkewBrace> = Vec::new();
        for code in 0..total {
            let mut c = code;
            let lam: Vec<&Vec<usize>> = (0..n)
                .map(|_| {
                    let p = auts[c % m];
                    c /= m;
                    p
                })
                .collect();
            let mul: Vec<usize> = (0..n * n).map(|i| a.op(i / n, lam[i / n][i % n])).collect();
            if !oracle_is_group(n, &mul) || !oracle_brace_axiom(a, n, &mul) {
                continue;
            }
            let brace = SkewBrace::from_groups_unchecked(a.clone(), FiniteGroup::from_flat_unchecked(n, mul));
            if !found.iter().any(|b| oracle_isomorphic(b, &brace, &perms)) {
                found.push(brace);
            }
        }
        classes.extend(found);
    }
    Ok(classes)
}

/// Whether `a` and `b` are isomorphic, by trying every bijection.
pub fn oracle_isomorphic(a: &SkewBrace, b: &SkewBrace, perms: &[Vec<usize>]) -> bool {
    let n = a.order();
    b.order() == n
        && perms.iter().any(|p| {
            (0..n).all(|x| (0..n).all(|y| p[a.add(x, y)] == b.add(p[x], p[y]) && p[a.mul(x, y)] == b.mul(p[x], p[y])))
        })
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn oracle_is_group(n: usize, t: &[usize]) -> bool {
    let identity = (0..n).all(|x| t[x] == x && t[x * n] == x);
    let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]])));
    let inverses = (0..n).all(|x| (0..n).any(|y| t[x * n + y] == 0 && t[y * n + x] == 0));
    identity && assoc && inverses
}

fn oracle_brace_axiom(a: &FiniteGroup, n: usize, mul: &[usize]) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| mul[x * n + a.op(y, z)] == a.op(a.op(mul[x * n + y], a.inv(x)), mul[x * n + z])))
    })
}

/// Regular subgroups of `[G]Int(G)` isomorphic to `G`, for `G` simple and
/// non-abelian. Simplicity is checked by a normal-subgroup scan for
/// `|G| <= 360`.
pub fn regular_subgroups_in_g_intg(group: &FiniteGroup, bounds: &Bounds) -> Result<(Holomorph, Vec<RegularSubgroup>)> {
    if group.is_abelian() {
        return Err(Error::NotSimple("group is abelian".into()));
    }
    if group.order() <= 360 && !group.is_simple() {
        return Err(Error::NotSimple(
            "group has a proper non-trivial normal subgroup".into(),
        ));
    }
    let hol = holomorph_of(group, bounds)?;
    let subs = regular_subgroups(&hol, Ambient::Inner, bounds)?;
    let iso: Vec<RegularSubgroup> = subs
        .into_iter()
        .filter(|h| find_isomorphism(&h.as_group(&hol), group).is_some())
        .collect();
    Ok((hol, iso))
}

/// The two subgroups `G x 1` and `{(a, α_{a^{-1}})}` of `[G]Int(G)`.
pub fn expected_g_intg_subgroups(hol: &Holomorph) -> Result<Vec<RegularSubgroup>> {
    let g = hol.group();
    let n = g.order();
    let identity = RegularSubgroup::new(hol, vec![0; n])?;
    let conj = (0..n)
        .map(|a| {
            hol.auts()
                .index_of(Automorphism::inner(g, g.inv(a)).perm())
                .ok_or_else(|| Error::InternalInvariant("inner automorphism missing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = vec![identity, RegularSubgroup::new(hol, conj)?];
    out.sort();
    Ok(out)
}
