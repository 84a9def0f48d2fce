//! Builders for the standard example categories: the category of finite
//! nonempty pointed ordinals (monotone first-element-preserving maps),
//! finite vector spaces over a prime field, and spans of finite sets
//! with injective legs.
//!
//! All builders number objects and morphisms deterministically, so ids
//! are stable across runs and file round trips.

use crate::exactalg::{Matrix, PrimeField};
use crate::fincat::{FactorizationSystem, FinCategory, MorData, MorId, ObjId};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// A built category together with its factorization system.
#[derive(Debug, Clone)]
pub struct Instance {
    pub cat: FinCategory,
    pub fs: FactorizationSystem,
}

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("{0}")]
    BadParameter(String),
    #[error("morphism name {0:?} is not a matrix literal; not a vector-space instance")]
    NotVect(String),
}

// ---------------------------------------------------------------------------
// Pointed ordinals
// ---------------------------------------------------------------------------

/// Monotone maps `{0..a-1} -> {0..b-1}` fixing `0`, listed in
/// lexicographic image order.
fn pointed_monotone_maps(a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; a];
    fn rec(cur: &mut Vec<usize>, pos: usize, b: usize, out: &mut Vec<Vec<usize>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        let lo = cur[pos - 1];
        for v in lo..b {
            cur[pos] = v;
            rec(cur, pos + 1, b, out);
        }
    }
    if a == 0 {
        return out;
    }
    rec(&mut cur, 1, b, &mut out);
    out
}

/// The category of pointed ordinals `1..n` with monotone bottom-preserving
/// maps, surjections as `E`, injections as `M`, and the pointwise
/// hom-order.
pub fn delta_bot(n: usize) -> Instance {
    assert!(n >= 1, "need at least the ordinal 1");
    let object_names: Vec<String> = (1..=n).map(|a| a.to_string()).collect();
    // objects indexed 0..n with ordinal = index + 1
    let mut morphisms = Vec::new();
    let mut images: Vec<Vec<usize>> = Vec::new();
    let mut lookup: BTreeMap<(usize, usize, Vec<usize>), MorId> = BTreeMap::new();
    for a in 1..=n {
        for b in 1..=n {
            for img in pointed_monotone_maps(a, b) {
                let id = MorId(morphisms.len());
                let name =
                    img.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                morphisms.push(MorData { dom: ObjId(a - 1), cod: ObjId(b - 1), name });
                lookup.insert((a, b, img.clone()), id);
                images.push(img);
            }
        }
    }
    let identities: Vec<MorId> =
        (1..=n).map(|a| lookup[&(a, a, (0..a).collect::<Vec<_>>())]).collect();
    let mut table = BTreeMap::new();
    for (gi, g) in morphisms.iter().enumerate() {
        for (fi, f) in morphisms.iter().enumerate() {
            if g.dom != f.cod {
                continue;
            }
            let composite: Vec<usize> = images[fi].iter().map(|&x| images[gi][x]).collect();
            let gf = lookup[&(f.dom.0 + 1, g.cod.0 + 1, composite)];
            table.insert((MorId(gi), MorId(fi)), gf);
        }
    }
    let mut e_set = BTreeSet::new();
    let mut m_set = BTreeSet::new();
    for (i, m) in morphisms.iter().enumerate() {
        let img = &images[i];
        let b = m.cod.0 + 1;
        let surjective = (0..b).all(|v| img.contains(&v));
        let injective = img.windows(2).all(|w| w[0] < w[1]);
        if surjective {
            e_set.insert(MorId(i));
        }
        if injective {
            m_set.insert(MorId(i));
        }
    }
    let mut hom_order = BTreeSet::new();
    for (i, mi) in morphisms.iter().enumerate() {
        for (j, mj) in morphisms.iter().enumerate() {
            if mi.dom == mj.dom
                && mi.cod == mj.cod
                && images[i].iter().zip(&images[j]).all(|(x, y)| x <= y)
            {
                hom_order.insert((MorId(i), MorId(j)));
            }
        }
    }
    let cat =
        FinCategory::from_parts(object_names, morphisms, identities, table, Some(hom_order))
            .expect("pointed-ordinal category is well formed");
    Instance { cat, fs: FactorizationSystem::new(e_set, m_set) }
}

/// Find a pointed-ordinal morphism by its image tuple and codomain
/// ordinal; the image tuple alone fixes only the domain.
pub fn delta_bot_map(cat: &FinCategory, img: &[usize], cod: usize) -> Option<MorId> {
    let name = img.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    let (a, b) = (ObjId(img.len() - 1), ObjId(cod - 1));
    cat.hom(a, b).iter().copied().find(|&f| cat.mor_name(f) == name)
}

/// An endomorphism of the ordinal `img.len()` by its image tuple.
pub fn delta_bot_endo(cat: &FinCategory, img: &[usize]) -> Option<MorId> {
    delta_bot_map(cat, img, img.len())
}

// ---------------------------------------------------------------------------
// Finite vector spaces
// ---------------------------------------------------------------------------

/// A vector-space instance: the category plus the matrix realization of
/// every morphism, needed by the convolution machinery.
#[derive(Debug, Clone)]
pub struct VectInstance {
    pub instance: Instance,
    pub field: PrimeField,
    /// `matrices[i]` is the `cod x dom` matrix of morphism `i`.
    pub matrices: Vec<Matrix<PrimeField>>,
}

fn mat_name(m: &Matrix<PrimeField>) -> String {
    let body = (0..m.rows)
        .flat_map(|i| (0..m.cols).map(move |j| m.get(i, j).to_string()))
        .collect::<Vec<_>>()
        .join(",");
    format!("M{}x{}:{}", m.rows, m.cols, body)
}

fn parse_mat_name(field: PrimeField, name: &str) -> Option<Matrix<PrimeField>> {
    let rest = name.strip_prefix('M')?;
    let (dims, body) = rest.split_once(':')?;
    let (r, c) = dims.split_once('x')?;
    let (rows, cols): (usize, usize) = (r.parse().ok()?, c.parse().ok()?);
    let entries: Vec<u64> = if body.is_empty() {
        Vec::new()
    } else {
        body.split(',').map(|t| t.parse().ok()).collect::<Option<_>>()?
    };
    if entries.len() != rows * cols || entries.iter().any(|&e| e >= field.modulus()) {
        return None;
    }
    Some(Matrix::from_fn(field, rows, cols, |i, j| entries[i * cols + j]))
}

/// The category of spaces `F_q^0 .. F_q^dmax` with all linear maps,
/// surjections as `E` and injections as `M`. `q` must be prime.
pub fn vect(q: u64, dmax: usize) -> Result<VectInstance, CatalogError> {
    let field = PrimeField::new(q).map_err(CatalogError::BadParameter)?;
    let object_names: Vec<String> = (0..=dmax).map(|d| format!("F{q}^{d}")).collect();
    let mut morphisms = Vec::new();
    let mut matrices: Vec<Matrix<PrimeField>> = Vec::new();
    let mut lookup: BTreeMap<String, MorId> = BTreeMap::new();
    for a in 0..=dmax {
        for b in 0..=dmax {
            let count = q.pow((a * b) as u32);
            for k in 0..count {
                let mut digits = k;
                let mat = Matrix::from_fn(field, b, a, |_, _| {
                    let d = digits % q;
                    digits /= q;
                    d
                });
                let name = mat_name(&mat);
                let id = MorId(morphisms.len());
                morphisms.push(MorData { dom: ObjId(a), cod: ObjId(b), name: name.clone() });
                lookup.insert(name, id);
                matrices.push(mat);
            }
        }
    }
    let identities: Vec<MorId> =
        (0..=dmax).map(|d| lookup[&mat_name(&Matrix::identity(field, d))]).collect();
    let mut table = BTreeMap::new();
    for (gi, g) in morphisms.iter().enumerate() {
        for (fi, f) in morphisms.iter().enumerate() {
            if g.dom != f.cod {
                continue;
            }
            let product = matrices[gi].mul(&matrices[fi]);
            table.insert((MorId(gi), MorId(fi)), lookup[&mat_name(&product)]);
        }
    }
    let mut e_set = BTreeSet::new();
    let mut m_set = BTreeSet::new();
    for (i, mat) in matrices.iter().enumerate() {
        let rank = mat.rank();
        if rank == mat.rows {
            e_set.insert(MorId(i));
        }
        if rank == mat.cols {
            m_set.insert(MorId(i));
        }
    }
    let cat = FinCategory::from_parts(object_names, morphisms, identities, table, None)
        .expect("vector-space category is well formed");
    Ok(VectInstance {
        instance: Instance { cat, fs: FactorizationSystem::new(e_set, m_set) },
        field,
        matrices,
    })
}

impl VectInstance {
    /// Rebuild matrix semantics from a loaded category whose morphism
    /// names are matrix literals. Rejects anything else.
    pub fn from_instance(q: u64, instance: Instance) -> Result<Self, CatalogError> {
        let field = PrimeField::new(q).map_err(CatalogError::BadParameter)?;
        let mut matrices = Vec::with_capacity(instance.cat.n_morphisms());
        for f in instance.cat.morphisms() {
            let name = instance.cat.mor_name(f);
            let mat = parse_mat_name(field, name)
                .ok_or_else(|| CatalogError::NotVect(name.to_string()))?;
            matrices.push(mat);
        }
        Ok(Self { instance, field, matrices })
    }

    pub fn mat(&self, f: MorId) -> &Matrix<PrimeField> {
        &self.matrices[f.0]
    }

    /// Recover a morphism id from its matrix.
    pub fn find(&self, mat: &Matrix<PrimeField>) -> Option<MorId> {
        let name = mat_name(mat);
        self.instance.cat.morphisms().find(|&f| self.instance.cat.mor_name(f) == name)
    }

    pub fn dim(&self, a: ObjId) -> usize {
        a.0
    }
}

// ---------------------------------------------------------------------------
// Spans of finite sets with injective legs
// ---------------------------------------------------------------------------

/// Partial injections `[a] -> [b]`, each a sorted pair list, enumerated
/// deterministically.
fn partial_injections(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let mut cur: Vec<(usize, usize)> = Vec::new();
    fn rec(
        x: usize,
        a: usize,
        b: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if x == a {
            out.push(cur.clone());
            return;
        }
        // leave x unmatched
        rec(x + 1, a, b, used, cur, out);
        for y in 0..b {
            if !used[y] {
                used[y] = true;
                cur.push((x, y));
                rec(x + 1, a, b, used, cur, out);
                cur.pop();
                used[y] = false;
            }
        }
    }
    let mut used = vec![false; b];
    rec(0, a, b, &mut used, &mut cur, &mut out);
    out.sort();
    out
}

fn span_name(pairs: &[(usize, usize)]) -> String {
    let body =
        pairs.iter().map(|(x, y)| format!("{x}>{y}")).collect::<Vec<_>>().join(",");
    format!("({body})")
}

/// The category of spans of injections between the sets `0..nmax`, with
/// morphisms materialized as partial bijections (the canonical
/// representatives of span isomorphism classes), composition by
/// pullback, `M` the total maps, `E` the image-total maps, and the
/// inclusion hom-order.
pub fn span_fi(nmax: usize) -> Instance {
    let object_names: Vec<String> = (0..=nmax).map(|k| k.to_string()).collect();
    let mut morphisms = Vec::new();
    let mut graphs: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut lookup: BTreeMap<(usize, usize, Vec<(usize, usize)>), MorId> = BTreeMap::new();
    for a in 0..=nmax {
        for b in 0..=nmax {
            for g in partial_injections(a, b) {
                let id = MorId(morphisms.len());
                morphisms.push(MorData { dom: ObjId(a), cod: ObjId(b), name: span_name(&g) });
                lookup.insert((a, b, g.clone()), id);
                graphs.push(g);
            }
        }
    }
    let identities: Vec<MorId> = (0..=nmax)
        .map(|k| lookup[&(k, k, (0..k).map(|x| (x, x)).collect::<Vec<_>>())])
        .collect();
    let mut table = BTreeMap::new();
    for (gi, g) in morphisms.iter().enumerate() {
        for (fi, f) in morphisms.iter().enumerate() {
            if g.dom != f.cod {
                continue;
            }
            // pullback of injective spans = relational composite
            let mut composite: Vec<(usize, usize)> = Vec::new();
            for &(x, y) in &graphs[fi] {
                for &(y2, z) in &graphs[gi] {
                    if y == y2 {
                        composite.push((x, z));
                    }
                }
            }
            composite.sort();
            let gf = lookup[&(f.dom.0, g.cod.0, composite)];
            table.insert((MorId(gi), MorId(fi)), gf);
        }
    }
    let mut e_set = BTreeSet::new();
    let mut m_set = BTreeSet::new();
    for (i, m) in morphisms.iter().enumerate() {
        let g = &graphs[i];
        if g.len() == m.dom.0 {
            m_set.insert(MorId(i)); // left leg invertible: total
        }
        if g.len() == m.cod.0 {
            e_set.insert(MorId(i)); // right leg invertible: image-total
        }
    }
    let mut hom_order = BTreeSet::new();
    for (i, mi) in morphisms.iter().enumerate() {
        for (j, mj) in morphisms.iter().enumerate() {
            if mi.dom == mj.dom
                && mi.cod == mj.cod
                && graphs[i].iter().all(|p| graphs[j].contains(p))
            {
                hom_order.insert((MorId(i), MorId(j)));
            }
        }
    }
    let cat =
        FinCategory::from_parts(object_names, morphisms, identities, table, Some(hom_order))
            .expect("span category is well formed");
    Instance { cat, fs: FactorizationSystem::new(e_set, m_set) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_bot_three_has_six_endos() {
        let inst = delta_bot(3);
        let a = ObjId(2);
        assert_eq!(inst.cat.hom(a, a).len(), 6);
        assert!(inst.cat.validate().is_valid());
    }

    #[test]
    fn delta_bot_relation_tau_sigma0() {
        // tau . sigma0 = sigma0 in the endomorphisms of the ordinal 3
        let inst = delta_bot(3);
        let sigma0 = delta_bot_endo(&inst.cat, &[0, 0, 2]).unwrap();
        let tau = delta_bot_endo(&inst.cat, &[0, 2, 2]).unwrap();
        assert_eq!(inst.cat.compose(tau, sigma0), Some(sigma0));
    }

    #[test]
    fn delta_bot_one_is_terminal() {
        let inst = delta_bot(1);
        assert_eq!(inst.cat.n_objects(), 1);
        assert_eq!(inst.cat.n_morphisms(), 1);
        assert!(inst.cat.validate().is_valid());
    }

    #[test]
    fn vect_counts_over_f2() {
        let v = vect(2, 2).unwrap();
        let two = ObjId(2);
        assert_eq!(v.instance.cat.hom(two, two).len(), 16);
        let invertible =
            v.instance.cat.hom(two, two).iter().filter(|&&f| v.instance.cat.is_invertible(f)).count();
        assert_eq!(invertible, 6);
        let injections = v.instance.fs.m_hom(&v.instance.cat, ObjId(1), two).len();
        assert_eq!(injections, 3);
        assert!(v.instance.cat.validate().is_valid());
    }

    #[test]
    fn vect_dmax_zero_is_trivial() {
        let v = vect(2, 0).unwrap();
        assert_eq!(v.instance.cat.n_objects(), 1);
        assert_eq!(v.instance.cat.n_morphisms(), 1);
    }

    #[test]
    fn vect_name_round_trip() {
        let v = vect(3, 1).unwrap();
        let w = VectInstance::from_instance(3, v.instance.clone()).unwrap();
        for f in v.instance.cat.morphisms() {
            assert_eq!(v.mat(f), w.mat(f));
        }
    }

    #[test]
    fn span_core_is_symmetric_groupoid() {
        let inst = span_fi(3);
        assert!(inst.cat.validate().is_valid());
        let core = inst.cat.core_groupoid();
        // |S_0| + |S_1| + |S_2| + |S_3| = 1 + 1 + 2 + 6
        assert_eq!(core.cat.n_morphisms(), 10);
        let three = ObjId(3);
        assert_eq!(core.cat.hom(three, three).len(), 6);
    }

    #[test]
    fn span_empty_set_has_only_identity() {
        let inst = span_fi(2);
        let zero = ObjId(0);
        assert_eq!(inst.cat.hom(zero, zero).len(), 1);
    }
}
