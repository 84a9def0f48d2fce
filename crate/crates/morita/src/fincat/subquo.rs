//! Representative listings of subobjects and quotients.
//!
//! `Sub A` holds one mono into `A` per isomorphism class, `Quo A` one
//! epi out of `A`. The triangular listing orders `Sub A` by a linear
//! extension of the adjoint-comparison relation so the induced matrix
//! of any representation is upper triangular with identity diagonal.

use super::category::{FinCategory, MorId, ObjId};
use super::factorization::{FactorizationSystem, FsError};

/// Representative monos into an object and epis out of it.
#[derive(Debug, Clone, PartialEq)]
pub struct SubQuoListing {
    pub object: ObjId,
    pub subs: Vec<MorId>,
    pub quos: Vec<MorId>,
}

/// Isomorphism-class representatives (least id) of `M`-morphisms into `a`.
pub fn sub_reps(cat: &FinCategory, fs: &FactorizationSystem, a: ObjId) -> Vec<MorId> {
    let mut monos: Vec<MorId> = Vec::new();
    for u in cat.objects() {
        monos.extend(fs.m_hom(cat, u, a));
    }
    monos.sort();
    let mut reps: Vec<MorId> = Vec::new();
    for &m in &monos {
        let iso_seen = reps.iter().any(|&r| {
            fs.g_hom(cat, cat.dom(m), cat.dom(r))
                .iter()
                .any(|&g| cat.compose(r, g) == Some(m))
        });
        if !iso_seen {
            reps.push(m);
        }
    }
    reps
}

/// Isomorphism-class representatives (least id) of `E`-morphisms out of `a`.
pub fn quo_reps(cat: &FinCategory, fs: &FactorizationSystem, a: ObjId) -> Vec<MorId> {
    let mut epis: Vec<MorId> = Vec::new();
    for w in cat.objects() {
        epis.extend(fs.e_hom(cat, a, w));
    }
    epis.sort();
    let mut reps: Vec<MorId> = Vec::new();
    for &e in &epis {
        let iso_seen = reps.iter().any(|&r| {
            fs.g_hom(cat, cat.cod(r), cat.cod(e))
                .iter()
                .any(|&g| cat.compose(g, r) == Some(e))
        });
        if !iso_seen {
            reps.push(e);
        }
    }
    reps
}

/// Arbitrary-order representative listings of `Sub a` and `Quo a`.
pub fn sub_quo(cat: &FinCategory, fs: &FactorizationSystem, a: ObjId) -> SubQuoListing {
    SubQuoListing { object: a, subs: sub_reps(cat, fs, a), quos: quo_reps(cat, fs, a) }
}

/// For a mono `m`, the least `E`-morphism `m*` with `m* . m = 1` and
/// `m . m* <= 1` in the hom-order.
fn right_adjoint_retraction(
    cat: &FinCategory,
    fs: &FactorizationSystem,
    m: MorId,
) -> Option<MorId> {
    let (u, a) = (cat.dom(m), cat.cod(m));
    let id_u = cat.identity(u);
    let id_a = cat.identity(a);
    fs.e_hom(cat, a, u).into_iter().find(|&e| {
        cat.compose(e, m) == Some(id_u) && cat.le(cat.compose(m, e).unwrap(), id_a)
    })
}

/// Listings of `Sub a` ordered by a linear extension of the relation
/// "`m` precedes `n` iff `m . x <= n` for some invertible `x`", with
/// `Quo a` the paired retractions. Requires hom-order data.
pub fn triangular_listing(
    cat: &FinCategory,
    fs: &FactorizationSystem,
    a: ObjId,
) -> Result<SubQuoListing, FsError> {
    if !cat.has_hom_order() {
        return Err(FsError::NoHomOrder);
    }
    let subs = sub_reps(cat, fs, a);
    let mut adj = Vec::with_capacity(subs.len());
    for &m in &subs {
        adj.push(right_adjoint_retraction(cat, fs, m).ok_or(FsError::MissingAdjoint(m.0))?);
    }

    let n = subs.len();
    let precedes = |i: usize, j: usize| -> bool {
        let (m, nn) = (subs[i], subs[j]);
        fs.g_hom(cat, cat.dom(nn), cat.dom(m))
            .iter()
            .any(|&x| cat.le(cat.compose(m, x).unwrap(), nn))
    };
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = precedes(i, j);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rel[i][j] && rel[j][i] {
                return Err(FsError::OrderCycle(subs[i].0, subs[j].0));
            }
        }
    }

    // stable topological sort: repeatedly take the least-index source
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .find(|&j| {
                !placed[j] && (0..n).all(|i| placed[i] || i == j || !rel[i][j])
            })
            .expect("acyclic relation always has a source");
        placed[next] = true;
        order.push(next);
    }
    let subs_sorted: Vec<MorId> = order.iter().map(|&i| subs[i]).collect();
    let quos_sorted: Vec<MorId> = order.iter().map(|&i| adj[i]).collect();

    // Post-condition: e_i . m_i = 1 and e_i . m_j invertible only for i <= j.
    for (i, (&m, &e)) in subs_sorted.iter().zip(&quos_sorted).enumerate() {
        assert_eq!(
            cat.compose(e, m),
            Some(cat.identity(cat.dom(m))),
            "retraction property lost in sorting"
        );
        for (j, &mj) in subs_sorted.iter().enumerate() {
            if cat.cod(mj) == a && cat.dom(e) == a {
                if let Some(c) = cat.compose(e, mj) {
                    if fs.in_g(c) && i > j {
                        panic!("triangular listing violated at ({i}, {j}); this is a bug");
                    }
                }
            }
        }
        let _ = i;
    }

    Ok(SubQuoListing { object: a, subs: subs_sorted, quos: quos_sorted })
}
