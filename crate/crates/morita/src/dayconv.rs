//! The short-exact-sequence promonoidal structure on the core groupoid
//! of a finite vector-space instance, and the convolution tensor it
//! induces on representations of that groupoid.
//!
//! Everything here needs the matrix semantics of morphisms, so the
//! operations take a vector-space instance rather than a bare
//! composition table. Summands of a tensor component are indexed by the
//! subspaces of the object, each carried by a canonical
//! injection/projection pair fixed once at construction; all twists are
//! expressed against those choices.

use crate::bimod::CorePair;
use crate::catalog::VectInstance;
use crate::exactalg::{cokernel_basis, Field, Matrix, PrimeField};
use crate::fincat::{MorId, ObjId};
use crate::lincat::LinearCategory;
use crate::repcat::Representation;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DayError {
    #[error("not a vector-space instance: {0}")]
    Unsupported(String),
    #[error("exactness failed in a constructed row or column: {0}")]
    ExactnessBug(String),
    #[error("internal: {0}")]
    Internal(String),
}

/// One subspace of an object: canonical echelon basis, the injection
/// realizing it and the projection with that kernel.
#[derive(Clone)]
pub struct SubspaceData {
    pub dim: usize,
    pub basis: Matrix<PrimeField>,
    pub mono: MorId,
    pub epi: MorId,
}

/// A vector-space instance with its core groupoid and the subspace
/// catalog of every object.
pub struct DayInstance<K: Field> {
    pub vect: VectInstance,
    pub core: CorePair<K>,
    /// indexed by object; inner order is the canonical subspace order
    pub subspaces: Vec<Vec<SubspaceData>>,
}

/// A pair (injection, surjection) composing to zero with matching
/// dimensions, so the image of the first is the kernel of the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortExactPair {
    pub mono: MorId,
    pub epi: MorId,
}

/// Canonical reduced-echelon column basis of the column space.
fn canonical_basis(mat: &Matrix<PrimeField>) -> Matrix<PrimeField> {
    let mut t = mat.transpose();
    let pivots = t.rref_in_place();
    let rank = pivots.len();
    Matrix::from_fn(mat.field, mat.rows, rank, |i, j| *t.get(j, i))
}

impl<K: Field> DayInstance<K> {
    pub fn new(vect: VectInstance, field: K) -> Result<Self, DayError> {
        let lin = LinearCategory::new(vect.instance.cat.clone(), field);
        let core = CorePair::new(lin);
        let cat = &vect.instance.cat;
        let fs = &vect.instance.fs;
        let mut subspaces = Vec::new();
        for c in cat.objects() {
            let cdim = c.0;
            let mut seen: BTreeMap<String, SubspaceData> = BTreeMap::new();
            for h in cat.objects() {
                for &m in &fs.m_hom(cat, h, c) {
                    let basis = canonical_basis(vect.mat(m));
                    let key = format!("{basis:?}");
                    if seen.contains_key(&key) {
                        continue;
                    }
                    let mono = vect
                        .find(&basis)
                        .ok_or_else(|| DayError::Internal("missing canonical mono".into()))?;
                    let proj = cokernel_basis(&basis).projection;
                    let epi = vect
                        .find(&proj)
                        .ok_or_else(|| DayError::Internal("missing canonical epi".into()))?;
                    if !proj.mul(&basis).is_zero() || basis.rank() + proj.rank() != cdim {
                        return Err(DayError::ExactnessBug(format!(
                            "canonical pair at object {cdim}"
                        )));
                    }
                    seen.insert(key, SubspaceData { dim: basis.cols, basis, mono, epi });
                }
            }
            let mut list: Vec<SubspaceData> = seen.into_values().collect();
            list.sort_by_key(|s| {
                (s.dim, (0..s.basis.rows)
                    .flat_map(|i| (0..s.basis.cols).map(move |j| (i, j)))
                    .map(|(i, j)| *s.basis.get(i, j))
                    .collect::<Vec<_>>())
            });
            subspaces.push(list);
        }
        Ok(Self { vect, core, subspaces })
    }

    pub fn cat(&self) -> &crate::fincat::FinCategory {
        &self.vect.instance.cat
    }

    /// Position of a subspace (given by any spanning matrix) in the
    /// canonical order of an object's subspace list.
    pub fn locate_subspace(&self, c: ObjId, span: &Matrix<PrimeField>) -> Option<usize> {
        let canon = canonical_basis(span);
        self.subspaces[c.0].iter().position(|s| s.basis == canon)
    }

    /// Is `(x, y)` a short exact pair at `(a, b; c)`?
    pub fn is_exact_pair(&self, a: ObjId, b: ObjId, c: ObjId, x: MorId, y: MorId) -> bool {
        let cat = self.cat();
        let fs = &self.vect.instance.fs;
        cat.dom(x) == a
            && cat.cod(x) == c
            && cat.dom(y) == c
            && cat.cod(y) == b
            && fs.in_m(x)
            && fs.in_e(y)
            && a.0 + b.0 == c.0
            && self.vect.mat(y).mul(self.vect.mat(x)).is_zero()
    }

    /// Exhaustive enumeration of the short exact pairs at `(a, b; c)`.
    pub fn exact_pairs(&self, a: ObjId, b: ObjId, c: ObjId) -> Vec<ShortExactPair> {
        let cat = self.cat();
        let fs = &self.vect.instance.fs;
        let mut out = Vec::new();
        if a.0 + b.0 != c.0 {
            return out;
        }
        for &x in &fs.m_hom(cat, a, c) {
            for &y in &fs.e_hom(cat, c, b) {
                if self.vect.mat(y).mul(self.vect.mat(x)).is_zero() {
                    out.push(ShortExactPair { mono: x, epi: y });
                }
            }
        }
        out
    }

    /// The contravariant-contravariant-covariant action on pairs:
    /// `(x, y) -> (g3.x.g1, g2^{-1}.y.g3^{-1})` for core morphisms
    /// `g1 : a' -> a`, `g2 : b' -> b`, `g3 : c -> c'`.
    pub fn pair_action(
        &self,
        g1: MorId,
        g2: MorId,
        g3: MorId,
        pair: ShortExactPair,
    ) -> ShortExactPair {
        let cat = self.cat();
        let (p1, p2, p3) = (self.core.parent(g1), self.core.parent(g2), self.core.parent(g3));
        let p2inv = cat.inverse(p2).expect("core morphisms are invertible");
        let p3inv = cat.inverse(p3).expect("core morphisms are invertible");
        let mono = cat.compose_chain(&[p1, pair.mono, p3]).expect("composable");
        let epi = cat.compose_chain(&[p3inv, pair.epi, p2inv]).expect("composable");
        ShortExactPair { mono, epi }
    }
}

/// The tensor unit: one dimension on the zero object, nothing else.
pub fn unit_rep<K: Field>(core: &CorePair<K>) -> Representation<K> {
    let field = core.ling.field.clone();
    let catg = &core.ling.cat;
    let dims: Vec<usize> = catg.objects().map(|a| usize::from(a.0 == 0)).collect();
    let mats: Vec<Matrix<K>> = catg
        .morphisms()
        .map(|g| {
            let n = usize::from(catg.dom(g).0 == 0 && catg.cod(g).0 == 0);
            Matrix::identity(field.clone(), n)
        })
        .collect();
    Representation { lin: core.ling.clone(), dims, mats }
}

/// Block layout of a convolution component: per subspace, the two
/// tensor factors and the offset.
pub struct ConvBlocks {
    /// (subspace index, left dim, right dim, offset)
    pub blocks: Vec<(usize, usize, usize, usize)>,
    pub dim: usize,
}

/// The convolution of two core representations: component at `c` is
/// the direct sum over subspaces `H` of `S(H) (x) T(c/H)`, with the
/// groupoid acting through the canonical-pair twists.
pub fn convolve<K: Field>(
    day: &DayInstance<K>,
    s: &Representation<K>,
    t: &Representation<K>,
) -> Result<(Representation<K>, Vec<ConvBlocks>), DayError> {
    let field = day.core.ling.field.clone();
    let catg = &day.core.ling.cat;
    let cat = day.cat();

    let mut layouts = Vec::new();
    for c in catg.objects() {
        let mut blocks = Vec::new();
        let mut off = 0;
        for (i, sub) in day.subspaces[c.0].iter().enumerate() {
            let (ld, rd) = (s.dims[sub.dim], t.dims[c.0 - sub.dim]);
            blocks.push((i, ld, rd, off));
            off += ld * rd;
        }
        layouts.push(ConvBlocks { blocks, dim: off });
    }

    let dims: Vec<usize> = layouts.iter().map(|l| l.dim).collect();
    let mut mats = Vec::new();
    for g in catg.morphisms() {
        let (c, cp) = (catg.dom(g), catg.cod(g));
        let gm = day.vect.mat(day.core.parent(g));
        let gminv = day.vect.mat(cat.inverse(day.core.parent(g)).expect("invertible"));
        let (from, to) = (&layouts[c.0], &layouts[cp.0]);
        let mut mat = Matrix::zero(field.clone(), to.dim, from.dim);
        for &(hidx, ld, rd, off) in &from.blocks {
            if ld * rd == 0 {
                continue;
            }
            let sub = &day.subspaces[c.0][hidx];
            let image_span = gm.mul(&sub.basis);
            let hpidx = day
                .locate_subspace(cp, &image_span)
                .ok_or_else(|| DayError::Internal("image subspace missing".into()))?;
            let subp = &day.subspaces[cp.0][hpidx];
            // left twist: canonical mono of the image, corrected by `a`
            let gx = gm.mul(&sub.basis);
            let a_mat = subp
                .basis
                .solve_matrix(&gx)
                .ok_or_else(|| DayError::Internal("mono twist solve failed".into()))?;
            // right twist: `cw . (y_H . g^{-1}) = y_H'`
            let yginv = day.vect.mat(sub.epi).mul(gminv);
            let cw_t = yginv
                .transpose()
                .solve_matrix(&day.vect.mat(subp.epi).transpose())
                .ok_or_else(|| DayError::Internal("epi twist solve failed".into()))?;
            let c_mat = cw_t.transpose();
            let a_child = day
                .core
                .child(day.vect.find(&a_mat).expect("twist is a morphism"))
                .expect("twist is invertible");
            let c_child = day
                .core
                .child(day.vect.find(&c_mat).expect("twist is a morphism"))
                .expect("twist is invertible");
            let block = kron(&field, s.at(a_child), t.at(c_child));
            let &(_, _lpd, _rpd, offp) =
                to.blocks.iter().find(|&&(i, ..)| i == hpidx).unwrap();
            for r in 0..block.rows {
                for cc in 0..block.cols {
                    mat.set(offp + r, off + cc, block.get(r, cc).clone());
                }
            }
        }
        mats.push(mat);
    }
    let rep = Representation { lin: day.core.ling.clone(), dims, mats };
    rep.verify().map_err(DayError::Internal)?;
    Ok((rep, layouts))
}

fn kron<K: Field>(field: &K, a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    Matrix::from_fn(field.clone(), a.rows * b.rows, a.cols * b.cols, |i, j| {
        let (ai, bi) = (i / b.rows, i % b.rows);
        let (aj, bj) = (j / b.cols, j % b.cols);
        field.mul(a.get(ai, aj), b.get(bi, bj))
    })
}

/// Outcome of the unit-law comparison: the convolution with the unit
/// must literally reproduce the representation in the canonical
/// coordinates.
pub fn unit_laws_exact<K: Field>(day: &DayInstance<K>, t: &Representation<K>) -> Result<bool, DayError> {
    let j = unit_rep(&day.core);
    let (jt, _) = convolve(day, &j, t)?;
    let (tj, _) = convolve(day, t, &j)?;
    let catg = &day.core.ling.cat;
    let dims_ok = catg.objects().all(|c| jt.dim(c) == t.dim(c) && tj.dim(c) == t.dim(c));
    let mats_ok = catg.morphisms().all(|g| jt.at(g) == t.at(g) && tj.at(g) == t.at(g));
    Ok(dims_ok && mats_ok)
}

/// The double factorization data produced by the three-by-three
/// construction from a composable pair of exact pairs.
pub struct AssocData {
    pub first: ShortExactPair,
    pub second: ShortExactPair,
    pub middle: ObjId,
}

/// Apply the three-by-three construction to `(u, v) : P(x_obj, c; d)`
/// and `(x, y) : P(a, b; x_obj)`: returns the matched data
/// `((x', y') : P(a, y_obj; d), (u', v') : P(b, c; y_obj))`, verifying
/// exactness of every constructed row and column.
pub fn associator<K: Field>(
    day: &DayInstance<K>,
    outer: ShortExactPair,
    inner: ShortExactPair,
) -> Result<AssocData, DayError> {
    let cat = day.cat();
    let vect = &day.vect;
    let (u, v) = (outer.mono, outer.epi);
    let (x, y) = (inner.mono, inner.epi);
    if cat.cod(x) != cat.dom(u) {
        return Err(DayError::Internal("pairs not composable".into()));
    }
    let d = cat.cod(u);
    let xprime = cat.compose(u, x).expect("total table");
    // canonical projection with kernel the image of x'
    let proj = cokernel_basis(&canonical_basis(vect.mat(xprime))).projection;
    let yprime = vect.find(&proj).ok_or_else(|| DayError::Internal("missing epi".into()))?;
    let y_obj = cat.cod(yprime);
    // u' . y = y' . u and v' . y' = v, both determined uniquely
    let rhs1 = proj.mul(vect.mat(u));
    let up_t = vect
        .mat(y)
        .transpose()
        .solve_matrix(&rhs1.transpose())
        .ok_or_else(|| DayError::Internal("no induced mono".into()))?;
    let uprime = vect
        .find(&up_t.transpose())
        .ok_or_else(|| DayError::Internal("induced mono not a morphism".into()))?;
    let vp_t = proj
        .transpose()
        .solve_matrix(&vect.mat(v).transpose())
        .ok_or_else(|| DayError::Internal("no induced epi".into()))?;
    let vprime = vect
        .find(&vp_t.transpose())
        .ok_or_else(|| DayError::Internal("induced epi not a morphism".into()))?;

    let a = cat.dom(x);
    let b = cat.cod(y);
    let c = cat.cod(v);
    if !day.is_exact_pair(a, y_obj, d, xprime, yprime) {
        return Err(DayError::ExactnessBug("first output column".into()));
    }
    if !day.is_exact_pair(b, c, y_obj, uprime, vprime) {
        return Err(DayError::ExactnessBug("second output row".into()));
    }
    Ok(AssocData {
        first: ShortExactPair { mono: xprime, epi: yprime },
        second: ShortExactPair { mono: uprime, epi: vprime },
        middle: y_obj,
    })
}

/// The linear associator component
/// `((S (x) T) (x) U)(d) -> (S (x) (T (x) U))(d)` in the canonical
/// subspace coordinates.
pub fn assoc_map<K: Field>(
    day: &DayInstance<K>,
    s: &Representation<K>,
    t: &Representation<K>,
    u: &Representation<K>,
    d: ObjId,
) -> Result<Matrix<K>, DayError> {
    let field = day.core.ling.field.clone();
    let vect = &day.vect;
    // layouts of both bracketings at d
    let (st, _) = convolve(day, s, t)?;
    let (tu, _) = convolve(day, t, u)?;
    let (_, lhs_layout) = convolve(day, &st, u)?;
    let (_, rhs_layout) = convolve(day, s, &tu)?;
    let lhs = &lhs_layout[d.0];
    let rhs = &rhs_layout[d.0];

    let mut out = Matrix::zero(field.clone(), rhs.dim, lhs.dim);
    for &(hidx, _std, _ud, hoff) in &lhs.blocks {
        let sub_h = &day.subspaces[d.0][hidx];
        let h = sub_h.dim;
        // inner blocks of (s (x) t) at the h-dimensional object
        let mut inner_off = 0;
        for sub_k in &day.subspaces[h] {
            let k = sub_k.dim;
            let (sd, td, ud) = (s.dims[k], t.dims[h - k], u.dims[d.0 - h]);
            let block_dim = sd * td * ud;
            if block_dim == 0 {
                inner_off += sd * td;
                continue;
            }
            // image flag member: K' = x_H(K) inside d
            let xk_in_d = vect.mat(sub_h.mono).mul(&sub_k.basis);
            let kp_idx = day
                .locate_subspace(d, &xk_in_d)
                .ok_or_else(|| DayError::Internal("flag member missing".into()))?;
            let sub_kp = &day.subspaces[d.0][kp_idx];
            // twist on the first factor: x_{K'} . a = x_H . x_K
            let a_mat = sub_kp
                .basis
                .solve_matrix(&xk_in_d)
                .ok_or_else(|| DayError::Internal("first twist failed".into()))?;
            // middle subspace: L = y_{K'}(H) inside the quotient
            let ykp = vect.mat(sub_kp.epi);
            let l_span = ykp.mul(&sub_h.basis);
            let dq = ObjId(d.0 - k);
            let l_idx = day
                .locate_subspace(dq, &l_span)
                .ok_or_else(|| DayError::Internal("middle subspace missing".into()))?;
            let sub_l = &day.subspaces[dq.0][l_idx];
            // twist on the second factor: x_L . b . y_K = y_{K'} . x_H
            let rhs_mat = ykp.mul(vect.mat(sub_h.mono));
            let w = sub_l
                .basis
                .solve_matrix(&rhs_mat)
                .ok_or_else(|| DayError::Internal("second twist solve 1".into()))?;
            let b_t = vect
                .mat(sub_k.epi)
                .transpose()
                .solve_matrix(&w.transpose())
                .ok_or_else(|| DayError::Internal("second twist solve 2".into()))?;
            let b_mat = b_t.transpose();
            // twist on the third factor: c . y_L . y_{K'} = y_H
            let ylykp = vect.mat(sub_l.epi).mul(&ykp);
            let c_t = ylykp
                .transpose()
                .solve_matrix(&vect.mat(sub_h.epi).transpose())
                .ok_or_else(|| DayError::Internal("third twist solve".into()))?;
            let c_mat = c_t.transpose();

            let a_child = day
                .core
                .child(vect.find(&a_mat).expect("twist is a morphism"))
                .expect("twist invertible");
            let b_child = day
                .core
                .child(vect.find(&b_mat).expect("twist is a morphism"))
                .expect("twist invertible");
            let c_child = day
                .core
                .child(vect.find(&c_mat).expect("twist is a morphism"))
                .expect("twist invertible");
            let block = kron(&field, s.at(a_child), &kron(&field, t.at(b_child), u.at(c_child)));

            // row position: block (K', L) of the right bracketing
            let &(_, _spd, _tud, kp_off) =
                rhs.blocks.iter().find(|&&(i, ..)| i == kp_idx).unwrap();
            let mut l_off = 0;
            for sub in &day.subspaces[dq.0][..l_idx] {
                l_off += t.dims[sub.dim] * u.dims[dq.0 - sub.dim];
            }
            // within the (K') block, coordinates are s-major over the
            // (t (x) u) component, which is itself block-offset by L
            for r in 0..block.rows {
                let (si, tui) = (r / (td * ud), r % (td * ud));
                let row = kp_off + si * tu.dims[dq.0] + l_off + tui;
                for cc in 0..block.cols {
                    out.set(row, hoff + inner_off * ud + cc, block.get(r, cc).clone());
                }
            }
            inner_off += sd * td;
        }
    }
    Ok(out)
}

/// Certification of associativity for three representations: the
/// orbit-level bijection of the two double-factorization coends at
/// every admissible object quadruple, and invertibility plus
/// naturality of the induced linear map.
pub struct AssocCertificate {
    pub orbit_bijection: bool,
    pub components_invertible: bool,
    pub natural: bool,
    pub dims: Vec<(usize, usize, usize)>,
}

impl AssocCertificate {
    pub fn passed(&self) -> bool {
        self.orbit_bijection && self.components_invertible && self.natural
    }
}

pub fn check_associativity<K: Field>(
    day: &DayInstance<K>,
    s: &Representation<K>,
    t: &Representation<K>,
    u: &Representation<K>,
) -> Result<AssocCertificate, DayError> {
    let catg = &day.core.ling.cat;
    let orbit_bijection = orbit_level_bijection(day)?;

    let (st, _) = convolve(day, s, t)?;
    let (tu, _) = convolve(day, t, u)?;
    let (lhs, _) = convolve(day, &st, u)?;
    let (rhs, _) = convolve(day, s, &tu)?;

    let mut components_invertible = true;
    let mut dims = Vec::new();
    let mut maps = BTreeMap::new();
    for d in catg.objects() {
        let m = assoc_map(day, s, t, u, d)?;
        dims.push((d.0, lhs.dim(d), rhs.dim(d)));
        if !(m.rows == m.cols && m.rows == lhs.dim(d) && m.is_invertible()) {
            components_invertible = false;
        }
        maps.insert(d, m);
    }
    let natural = crate::repcat::family_natural(&maps, &lhs, &rhs);
    Ok(AssocCertificate { orbit_bijection, components_invertible, natural, dims })
}

/// Orbit sets of the two iterated coends of exact pairs, with the
/// three-by-three map checked to be a well-defined bijection between
/// them, for every admissible object quadruple.
fn orbit_level_bijection<K: Field>(day: &DayInstance<K>) -> Result<bool, DayError> {
    let cat = day.cat();
    let catg = &day.core.ling.cat;
    let n = cat.n_objects();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let dsum = a + b + c;
                if dsum >= n {
                    continue;
                }
                let (a, b, c, d) = (ObjId(a), ObjId(b), ObjId(c), ObjId(dsum));
                // left side: pairs over a middle of dimension a + b
                let x_obj = ObjId(a.0 + b.0);
                let lhs: Vec<(ShortExactPair, ShortExactPair)> = day
                    .exact_pairs(x_obj, c, d)
                    .into_iter()
                    .flat_map(|o| {
                        day.exact_pairs(a, b, x_obj).into_iter().map(move |i| (o, i))
                    })
                    .collect();
                let y_obj = ObjId(b.0 + c.0);
                let rhs: Vec<(ShortExactPair, ShortExactPair)> = day
                    .exact_pairs(a, y_obj, d)
                    .into_iter()
                    .flat_map(|o| {
                        day.exact_pairs(b, c, y_obj).into_iter().map(move |i| (o, i))
                    })
                    .collect();

                let lhs_orbits = middle_orbits(day, &lhs, x_obj, true);
                let rhs_orbits = middle_orbits(day, &rhs, y_obj, false);
                let n_lhs = count_classes(&lhs_orbits);
                let n_rhs = count_classes(&rhs_orbits);
                if n_lhs != n_rhs {
                    return Ok(false);
                }

                // map every left element, check constancy on classes and
                // surjectivity of the image
                let mut image_of_class: BTreeMap<usize, usize> = BTreeMap::new();
                let mut hit: Vec<bool> = vec![false; rhs.len()];
                for (i, &(outer, inner)) in lhs.iter().enumerate() {
                    let data = associator(day, outer, inner)?;
                    let pos = rhs
                        .iter()
                        .position(|&(o2, i2)| o2 == data.first && i2 == data.second)
                        .ok_or_else(|| {
                            DayError::Internal("associator output not in the right coend".into())
                        })?;
                    hit[pos] = true;
                    let lc = lhs_orbits[i];
                    let rc = rhs_orbits[pos];
                    if let Some(&prev) = image_of_class.get(&lc) {
                        if prev != rc {
                            return Ok(false);
                        }
                    } else {
                        image_of_class.insert(lc, rc);
                    }
                }
                let mut image_classes: Vec<usize> = image_of_class.values().copied().collect();
                image_classes.sort_unstable();
                image_classes.dedup();
                if image_classes.len() != n_rhs {
                    return Ok(false);
                }
                let _ = catg;
                let _ = hit;
            }
        }
    }
    Ok(true)
}

/// Union-find classes of pair-pairs under the middle-object action.
/// `outer_first` says whether the shared object is the third slot of
/// the inner pair and the first slot of the outer one (left bracket) or
/// the second slot of the outer and third of the inner (right bracket);
/// both cases relate `(outer . g, inner)` with `(outer, g . inner)`.
fn middle_orbits<K: Field>(
    day: &DayInstance<K>,
    elems: &[(ShortExactPair, ShortExactPair)],
    mid: ObjId,
    outer_first: bool,
) -> Vec<usize> {
    let cat = day.cat();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let invertibles: Vec<MorId> = cat
        .hom(mid, mid)
        .iter()
        .copied()
        .filter(|&g| cat.is_invertible(g))
        .collect();
    for (i, &(outer, inner)) in elems.iter().enumerate() {
        for &g in &invertibles {
            let ginv = cat.inverse(g).unwrap();
            let (new_outer, new_inner) = if outer_first {
                // outer in P(mid, c; d) contravariant in mid; inner in
                // P(a, b; mid) covariant in mid
                (
                    ShortExactPair {
                        mono: cat.compose(outer.mono, g).unwrap(),
                        epi: outer.epi,
                    },
                    ShortExactPair {
                        mono: cat.compose(ginv, inner.mono).unwrap(),
                        epi: cat.compose(inner.epi, g).unwrap(),
                    },
                )
            } else {
                // outer in P(a, mid; d) contravariant in mid (second
                // slot); inner in P(b, c; mid) covariant in mid
                (
                    ShortExactPair {
                        mono: outer.mono,
                        epi: cat.compose(ginv, outer.epi).unwrap(),
                    },
                    ShortExactPair {
                        mono: cat.compose(ginv, inner.mono).unwrap(),
                        epi: cat.compose(inner.epi, g).unwrap(),
                    },
                )
            };
            if let Some(j) =
                elems.iter().position(|&(o2, i2)| o2 == new_outer && i2 == new_inner)
            {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    (0..elems.len()).map(|i| find(&mut parent, i)).collect()
}

fn count_classes(orbits: &[usize]) -> usize {
    let mut reps: Vec<usize> = orbits.to_vec();
    reps.sort_unstable();
    reps.dedup();
    reps.len()
}

/// The representation of the core sending an object to the span of the
/// surjections out of a fixed source object.
pub fn surjections_rep<K: Field>(
    day: &DayInstance<K>,
    x: ObjId,
) -> Representation<K> {
    let field = day.core.ling.field.clone();
    let cat = day.cat();
    let fs = &day.vect.instance.fs;
    let catg = &day.core.ling.cat;
    let dims: Vec<usize> = catg.objects().map(|c| fs.e_hom(cat, x, c).len()).collect();
    let mats: Vec<Matrix<K>> = catg
        .morphisms()
        .map(|g| {
            let (c, cp) = (catg.dom(g), catg.cod(g));
            let from = fs.e_hom(cat, x, c);
            let to = fs.e_hom(cat, x, cp);
            let gp = day.core.parent(g);
            Matrix::from_fn(field.clone(), to.len(), from.len(), |i, j| {
                if to[i] == cat.compose(gp, from[j]).unwrap() {
                    field.one()
                } else {
                    field.zero()
                }
            })
        })
        .collect();
    Representation { lin: day.core.ling.clone(), dims, mats }
}

/// Dimensions of the transported promonoidal components at `(a, b; -)`
/// for every third object at once, computed through the convolution of
/// surjection representations and the mono-quotient coend.
pub fn promono_dims_transport<K: Field>(
    day: &DayInstance<K>,
    mono_module: &crate::bimod::Bimodule<K>,
    a: ObjId,
    b: ObjId,
) -> Result<Vec<usize>, DayError> {
    let sa = surjections_rep(day, a);
    let sb = surjections_rep(day, b);
    let (w, _) = convolve(day, &sa, &sb)?;
    let (rep, _) = crate::repcat::coend_kernel(mono_module, &w)
        .map_err(|e| DayError::Internal(e.to_string()))?;
    Ok(day.cat().objects().map(|c| rep.dim(c)).collect())
}

/// The same dimension from the flag formula: sum over flags
/// `K <= H <= c` of surjection counts onto the two layers.
pub fn promono_dim_flags<K: Field>(day: &DayInstance<K>, a: ObjId, b: ObjId, c: ObjId) -> usize {
    let cat = day.cat();
    let fs = &day.vect.instance.fs;
    let mut total = 0;
    for sub_h in &day.subspaces[c.0] {
        let h = sub_h.dim;
        for sub_k in &day.subspaces[h] {
            let k = sub_k.dim;
            let e_a = fs.e_hom(cat, a, ObjId(k)).len();
            let e_b = fs.e_hom(cat, b, ObjId(h - k)).len();
            total += e_a * e_b;
        }
    }
    total
}
