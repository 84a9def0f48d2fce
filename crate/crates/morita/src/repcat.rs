//! Representations of a free linear category in finite-dimensional
//! spaces, the coend and end kernels induced by the canonical modules,
//! the triangular transformation between the subobject and quotient
//! realizations, and transport of representations across the
//! equivalence.

use crate::bimod::{compose_modules, BimodError, Bimodule, Composite, CorePair};
use crate::exactalg::{split_idempotent, Field, Matrix};
use crate::fincat::{terminal_category, FactorizationSystem, MorId, ObjId, SubQuoListing};
use crate::lincat::{IdempotentFamily, LinCombo, LinearCategory};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A functor to finite-dimensional spaces: one dimension per object,
/// one matrix per morphism, extended linearly to combinations.
#[derive(Clone)]
pub struct Representation<K: Field> {
    pub lin: Arc<LinearCategory<K>>,
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix<K>>,
}

impl<K: Field> Representation<K> {
    pub fn dim(&self, a: ObjId) -> usize {
        self.dims[a.0]
    }

    pub fn at(&self, f: MorId) -> &Matrix<K> {
        &self.mats[f.0]
    }

    pub fn of_combo(&self, x: &LinCombo<K>) -> Matrix<K> {
        let field = self.lin.field.clone();
        let mut m = Matrix::zero(field, self.dim(x.cod), self.dim(x.dom));
        for (&f, c) in &x.coeffs {
            m = m.add(&self.at(f).scale(c));
        }
        m
    }

    /// Exact functoriality check: identities and all composable pairs.
    pub fn verify(&self) -> Result<(), String> {
        let cat = &self.lin.cat;
        for a in cat.objects() {
            if !(self.dim(a) == 0 || self.at(cat.identity(a)).is_identity()) {
                return Err(format!("identity of object {} not the identity matrix", a.0));
            }
        }
        for g in cat.morphisms() {
            for f in cat.morphisms() {
                if cat.dom(g) != cat.cod(f) {
                    continue;
                }
                let gf = cat.compose(g, f).unwrap();
                if self.at(g).mul(self.at(f)) != *self.at(gf) {
                    return Err(format!("functoriality fails at {} . {}", g.0, f.0));
                }
            }
        }
        Ok(())
    }

    /// The constant representation: one-dimensional everywhere, every
    /// morphism the identity.
    pub fn constant(lin: Arc<LinearCategory<K>>) -> Self {
        let field = lin.field.clone();
        let dims = vec![1; lin.cat.n_objects()];
        let mats = lin.cat.morphisms().map(|_| Matrix::identity(field.clone(), 1)).collect();
        Self { lin, dims, mats }
    }

    /// The representable functor of an object: hom-spaces out of it with
    /// postcomposition as the action.
    pub fn representable(lin: Arc<LinearCategory<K>>, x: ObjId) -> Self {
        let field = lin.field.clone();
        let cat = lin.cat.clone();
        let dims: Vec<usize> = cat.objects().map(|a| cat.hom(x, a).len()).collect();
        let mats = cat
            .morphisms()
            .map(|f| {
                let (a, b) = (cat.dom(f), cat.cod(f));
                let from = cat.hom(x, a);
                let to = cat.hom(x, b);
                Matrix::from_fn(field.clone(), to.len(), from.len(), |i, j| {
                    if to[i] == cat.compose(f, from[j]).unwrap() {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        Self { lin, dims, mats }
    }
}

/// The one-object linear category used as the unit target when viewing
/// representations as modules.
pub fn unit_lin<K: Field>(field: &K) -> Arc<LinearCategory<K>> {
    Arc::new(LinearCategory::new(terminal_category(), field.clone()))
}

/// View a representation as a module to the unit category.
pub fn rep_as_module<K: Field>(
    rep: &Representation<K>,
    unit: Arc<LinearCategory<K>>,
) -> Bimodule<K> {
    let field = rep.lin.field.clone();
    let dims = rep.dims.clone();
    let dims2 = rep.dims.clone();
    let mats = rep.mats.clone();
    Bimodule::from_actions(
        rep.lin.clone(),
        unit,
        &move |_pt, a| dims[a.0],
        &move |_idf, a, j| {
            let mut col = vec![field.zero(); dims2[a.0]];
            col[j] = field.one();
            col
        },
        &move |u, _pt, j| mats[u.0].col(j),
    )
}

/// Recover a representation of `module.source` from a module to the
/// unit category.
pub fn module_as_rep<K: Field>(module: &Bimodule<K>) -> Representation<K> {
    let lin = module.source.clone();
    let pt = ObjId(0);
    let dims: Vec<usize> = lin.cat.objects().map(|a| module.dim(pt, a)).collect();
    let mats: Vec<Matrix<K>> =
        lin.cat.morphisms().map(|u| module.left_mat(u, pt).clone()).collect();
    Representation { lin, dims, mats }
}

/// The coend kernel of a module applied to a representation of the
/// module's target category. For the mono quotient this realizes a core
/// representation as a representation of the whole category.
pub fn coend_kernel<K: Field>(
    module: &Bimodule<K>,
    t: &Representation<K>,
) -> Result<(Representation<K>, Composite<K>), BimodError> {
    let unit = unit_lin(&t.lin.field);
    let tmod = rep_as_module(t, unit);
    let comp = compose_modules(&tmod, module)?;
    let rep = module_as_rep(&comp.module);
    rep.verify().map_err(BimodError::Internal)?;
    Ok((rep, comp))
}

/// The chosen presentation of an end: ambient block offsets and the
/// inclusion of the end as a kernel subspace.
pub struct EndPresentation<K: Field> {
    /// (source object, rep dim, module dim, offset)
    pub blocks: Vec<(ObjId, usize, usize, usize)>,
    pub ambient_dim: usize,
    pub inclusion: Matrix<K>,
}

impl<K: Field> EndPresentation<K> {
    pub fn dim(&self) -> usize {
        self.inclusion.cols
    }

    /// Ambient coordinate of entry (row, col) of the block of `a`.
    pub fn slot(&self, a: ObjId, row: usize, col: usize) -> usize {
        let &(_, _td, md, off) = self.blocks.iter().find(|&&(o, ..)| o == a).unwrap();
        off + row * md + col
    }
}

/// The end kernel of a module applied to a representation of the
/// module's source category: the component at a target object `b` is
/// the space of families `phi_a : module(b, a) -> T(a)` natural in `a`,
/// computed as the kernel of the naturality-difference map.
pub fn end_kernel<K: Field>(
    module: &Bimodule<K>,
    t: &Representation<K>,
) -> Result<(Representation<K>, BTreeMap<ObjId, EndPresentation<K>>), BimodError> {
    let field = t.lin.field.clone();
    let scat = module.source.cat.clone();
    let tcat = module.target.cat.clone();
    assert!(scat == t.lin.cat, "representation must live over the module source");

    let mut pres: BTreeMap<ObjId, EndPresentation<K>> = BTreeMap::new();
    for b in tcat.objects() {
        let mut blocks = Vec::new();
        let mut off = 0;
        for a in scat.objects() {
            let (td, md) = (t.dim(a), module.dim(b, a));
            blocks.push((a, td, md, off));
            off += td * md;
        }
        let ambient = off;
        let mut rows: Vec<Vec<K::Elem>> = Vec::new();
        for g in scat.morphisms() {
            if scat.is_identity(g) {
                continue;
            }
            let (a0, a1) = (scat.dom(g), scat.cod(g));
            let tg = t.at(g);
            let lg = module.left_mat(g, b); // module(b, a0) -> module(b, a1)
            let (_, _, md0, off0) = *blocks.iter().find(|&&(o, ..)| o == a0).unwrap();
            let (_, _, md1, off1) = *blocks.iter().find(|&&(o, ..)| o == a1).unwrap();
            // T(g) . phi_{a0} = phi_{a1} . module(g), entrywise
            for rp in 0..t.dim(a1) {
                for c in 0..md0 {
                    let mut row = vec![field.zero(); ambient];
                    for r in 0..t.dim(a0) {
                        let v = tg.get(rp, r);
                        if !field.is_zero(v) {
                            let slot = off0 + r * md0 + c;
                            row[slot] = field.add(&row[slot], v);
                        }
                    }
                    for cp in 0..md1 {
                        let v = lg.get(cp, c);
                        if !field.is_zero(v) {
                            let slot = off1 + rp * md1 + cp;
                            row[slot] = field.sub(&row[slot], v);
                        }
                    }
                    if row.iter().any(|e| !field.is_zero(e)) {
                        rows.push(row);
                    }
                }
            }
        }
        let mut constraint = Matrix::zero(field.clone(), rows.len(), ambient);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                constraint.set(i, j, v.clone());
            }
        }
        let kernel = constraint.kernel_basis();
        let inclusion = Matrix::from_cols(field.clone(), ambient, &kernel);
        pres.insert(b, EndPresentation { blocks, ambient_dim: ambient, inclusion });
    }

    let dims: Vec<usize> = tcat.objects().map(|b| pres[&b].dim()).collect();
    let mut mats = Vec::new();
    for f in tcat.morphisms() {
        let (b0, b1) = (tcat.dom(f), tcat.cod(f));
        let (p0, p1) = (&pres[&b0], &pres[&b1]);
        // ambient map: phi -> phi . (right action of f)
        let mut amb = Matrix::zero(field.clone(), p1.ambient_dim, p0.ambient_dim);
        for &(a, td, _md, _off) in &p1.blocks {
            let rf = module.right_mat(f, a); // module(b1, a) -> module(b0, a)
            for r in 0..td {
                for c in 0..module.dim(b1, a) {
                    for cp in 0..module.dim(b0, a) {
                        let v = rf.get(cp, c);
                        if !field.is_zero(v) {
                            let to = p1.slot(a, r, c);
                            let from = p0.slot(a, r, cp);
                            let cur = amb.get(to, from).clone();
                            amb.set(to, from, field.add(&cur, v));
                        }
                    }
                }
            }
        }
        let image = amb.mul(&p0.inclusion);
        let mat = p1
            .inclusion
            .solve_matrix(&image)
            .ok_or_else(|| BimodError::Internal("end action leaves the end".into()))?;
        mats.push(mat);
    }
    let rep = Representation { lin: module.target.clone(), dims, mats };
    rep.verify().map_err(BimodError::Internal)?;
    Ok((rep, pres))
}

/// Canonical map from the direct sum over a subobject listing onto the
/// coend realization; invertibility certifies the direct-sum formula.
pub fn sub_sum_iso<K: Field>(
    core: &CorePair<K>,
    fs: &FactorizationSystem,
    comp: &Composite<K>,
    t: &Representation<K>,
    listing: &SubQuoListing,
) -> Matrix<K> {
    let field = core.linf.field.clone();
    let a = listing.object;
    let pt = ObjId(0);
    let pres = comp.pres_at(pt, a);
    let catf = &core.linf.cat;
    let mut cols = Vec::new();
    for &m in &listing.subs {
        let u = catf.dom(m);
        let monos = fs.m_hom(catf, u, a);
        let h = monos.iter().position(|&x| x == m).unwrap();
        let s = pres.summand_position(u).unwrap();
        for k in 0..t.dim(u) {
            let mut big = vec![field.zero(); pres.big_dim];
            big[pres.index(s, h, k)] = field.one();
            cols.push(pres.projection.mul_vec(&big));
        }
    }
    Matrix::from_cols(field, pres.dim(), &cols)
}

/// Canonical map from the end realization onto the direct sum over a
/// quotient listing: evaluate each family at the listed epis.
pub fn quo_sum_iso<K: Field>(
    core: &CorePair<K>,
    fs: &FactorizationSystem,
    pres: &EndPresentation<K>,
    t: &Representation<K>,
    listing: &SubQuoListing,
) -> Matrix<K> {
    let field = core.linf.field.clone();
    let a = listing.object;
    let catf = &core.linf.cat;
    let total: usize = listing.quos.iter().map(|&e| t.dim(catf.cod(e))).sum();
    let mut rows_done = 0;
    let mut out = Matrix::zero(field.clone(), total, pres.dim());
    for &e in &listing.quos {
        let w = catf.cod(e);
        let epis = fs.e_hom(catf, a, w);
        let col_of_e = epis.iter().position(|&x| x == e).unwrap();
        for r in 0..t.dim(w) {
            let slot = pres.slot(w, r, col_of_e);
            for j in 0..pres.dim() {
                out.set(rows_done + r, j, pres.inclusion.get(slot, j).clone());
            }
        }
        rows_done += t.dim(w);
    }
    out
}

/// The block matrix of the transformation from the subobject to the
/// quotient realization, with its triangularity certificate.
pub struct ThetaMatrix<K: Field> {
    pub matrix: Matrix<K>,
    /// row blocks follow the quotient listing, column blocks the
    /// subobject listing
    pub row_blocks: Vec<usize>,
    pub col_blocks: Vec<usize>,
    pub upper_triangular: bool,
    pub unit_diagonal: bool,
    pub invertible: bool,
}

/// Build the transformation in the listing bases: block `(i, j)` is
/// `T(e_i . m_j)` when that composite is invertible, zero otherwise.
pub fn theta<K: Field>(
    core: &CorePair<K>,
    t: &Representation<K>,
    listing: &SubQuoListing,
) -> ThetaMatrix<K> {
    let field = core.linf.field.clone();
    let catf = &core.linf.cat;
    let row_blocks: Vec<usize> = listing.quos.iter().map(|&e| t.dim(catf.cod(e))).collect();
    let col_blocks: Vec<usize> = listing.subs.iter().map(|&m| t.dim(catf.dom(m))).collect();
    let rows: usize = row_blocks.iter().sum();
    let cols: usize = col_blocks.iter().sum();
    let mut matrix = Matrix::zero(field.clone(), rows, cols);
    let mut upper_triangular = true;
    let mut unit_diagonal = listing.quos.len() == listing.subs.len();
    let mut roff = 0;
    for (i, &e) in listing.quos.iter().enumerate() {
        let mut coff = 0;
        for (j, &m) in listing.subs.iter().enumerate() {
            let em = catf.compose(e, m).expect("total table");
            if let Some(child) = core.child(em) {
                let block = t.at(child);
                if i > j && !block.is_zero() {
                    upper_triangular = false;
                }
                if i == j && !block.is_identity() {
                    unit_diagonal = false;
                }
                for r in 0..block.rows {
                    for c in 0..block.cols {
                        matrix.set(roff + r, coff + c, block.get(r, c).clone());
                    }
                }
            } else if i == j {
                unit_diagonal = false;
            }
            coff += col_blocks[j];
        }
        roff += row_blocks[i];
    }
    let invertible = rows == cols && matrix.is_invertible();
    ThetaMatrix { matrix, row_blocks, col_blocks, upper_triangular, unit_diagonal, invertible }
}

/// The same transformation computed through the adjunction route:
/// pair each coend class against every epi by the
/// composition-or-zero collapse and land in the end. Returns `None`
/// when the image fails to lie in the end, which would refute the
/// construction.
pub fn theta_mate_route<K: Field>(
    core: &CorePair<K>,
    fs: &FactorizationSystem,
    mhat: &Composite<K>,
    t: &Representation<K>,
    epres: &BTreeMap<ObjId, EndPresentation<K>>,
    a: ObjId,
) -> Option<Matrix<K>> {
    let field = core.linf.field.clone();
    let catf = &core.linf.cat;
    let catg = &core.ling.cat;
    let pt = ObjId(0);
    let cpres = mhat.pres_at(pt, a);
    let ep = &epres[&a];
    let mut cols = Vec::new();
    for v in 0..cpres.dim() {
        let lifted = cpres.section.col(v);
        let mut amb = vec![field.zero(); ep.ambient_dim];
        for (idx, cv) in lifted.iter().enumerate() {
            if field.is_zero(cv) {
                continue;
            }
            let (s, h, k) = locate_pres(cpres, idx);
            let b = cpres.summands[s].0;
            let m = fs.m_hom(catf, b, a)[h];
            for c in catg.objects() {
                let epis = fs.e_hom(catf, a, c);
                for (epos, &e) in epis.iter().enumerate() {
                    let em = catf.compose(e, m).unwrap();
                    if let Some(child) = core.child(em) {
                        let block = t.at(child);
                        for r in 0..block.rows {
                            let add = field.mul(cv, block.get(r, k));
                            if !field.is_zero(&add) {
                                let slot = ep.slot(c, r, epos);
                                amb[slot] = field.add(&amb[slot], &add);
                            }
                        }
                    }
                }
            }
        }
        let in_end = ep.inclusion.solve(&amb)?;
        cols.push(in_end);
    }
    Some(Matrix::from_cols(field, ep.dim(), &cols))
}

fn locate_pres<K: Field>(
    pres: &crate::bimod::CoendPresentation<K>,
    idx: usize,
) -> (usize, usize, usize) {
    for (s, &(_, hd, kd, off)) in pres.summands.iter().enumerate() {
        if hd * kd > 0 && idx >= off && idx < off + hd * kd {
            let rel = idx - off;
            return (s, rel / kd, rel % kd);
        }
    }
    panic!("index {idx} outside the big sum");
}

/// Transport of a representation of the whole category to one of the
/// core: split the idempotent action objectwise and conjugate the core
/// action through the splitting.
pub struct Transport<K: Field> {
    pub rep: Representation<K>,
    /// per object: section (category dim x rank)
    pub sections: Vec<Matrix<K>>,
    /// per object: retraction (rank x category dim)
    pub retractions: Vec<Matrix<K>>,
}

pub fn transport<K: Field>(
    core: &CorePair<K>,
    p: &IdempotentFamily<K>,
    frep: &Representation<K>,
) -> Result<Transport<K>, BimodError> {
    assert!(frep.lin.cat == core.linf.cat, "representation must live over the category");
    let catg = &core.ling.cat;
    let mut sections = Vec::new();
    let mut retractions = Vec::new();
    let mut dims = Vec::new();
    for c in catg.objects() {
        let idem = frep.of_combo(p.at(c));
        let (s, r) = split_idempotent(&idem)
            .map_err(|e| BimodError::Internal(format!("transport split failed: {e}")))?;
        dims.push(s.cols);
        sections.push(s);
        retractions.push(r);
    }
    let mats: Vec<Matrix<K>> = catg
        .morphisms()
        .map(|g| {
            let (c, d) = (catg.dom(g), catg.cod(g));
            retractions[d.0].mul(frep.at(core.parent(g))).mul(&sections[c.0])
        })
        .collect();
    let rep = Representation { lin: core.ling.clone(), dims, mats };
    rep.verify().map_err(BimodError::Internal)?;
    Ok(Transport { rep, sections, retractions })
}

/// The canonical comparison from the coend realization of a transported
/// representation back to the original: classes `m (x) t` map to
/// `F(m) . section . t`. Returns the per-object matrices.
pub fn round_trip_maps<K: Field>(
    core: &CorePair<K>,
    fs: &FactorizationSystem,
    frep: &Representation<K>,
    tr: &Transport<K>,
    comp: &Composite<K>,
) -> BTreeMap<ObjId, Matrix<K>> {
    let field = core.linf.field.clone();
    let catf = &core.linf.cat;
    let pt = ObjId(0);
    let mut out = BTreeMap::new();
    for a in catf.objects() {
        let pres = comp.pres_at(pt, a);
        let mut big = Matrix::zero(field.clone(), frep.dim(a), pres.big_dim);
        for (s, &(b, hd, kd, _)) in pres.summands.iter().enumerate() {
            let monos = fs.m_hom(catf, b, a);
            debug_assert_eq!(monos.len(), hd);
            for (h, &m) in monos.iter().enumerate() {
                let fm = frep.at(m).mul(&tr.sections[b.0]);
                for k in 0..kd {
                    let col = pres.index(s, h, k);
                    for r in 0..fm.rows {
                        big.set(r, col, fm.get(r, k).clone());
                    }
                }
            }
        }
        out.insert(a, big.mul(&pres.section));
    }
    out
}

/// Dimension of the space of natural transformations between two
/// representations of the same category.
pub fn nat_hom_dim<K: Field>(x: &Representation<K>, y: &Representation<K>) -> usize {
    let field = x.lin.field.clone();
    let cat = &x.lin.cat;
    let mut blocks = Vec::new();
    let mut off = 0;
    for a in cat.objects() {
        blocks.push(off);
        off += x.dim(a) * y.dim(a);
    }
    let ambient = off;
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    for f in cat.morphisms() {
        if cat.is_identity(f) {
            continue;
        }
        let (a, b) = (cat.dom(f), cat.cod(f));
        let (xf, yf) = (x.at(f), y.at(f));
        // y(f) . eta_a = eta_b . x(f); unknowns eta_a, row-major
        for r in 0..y.dim(b) {
            for c in 0..x.dim(a) {
                let mut row = vec![field.zero(); ambient];
                for k in 0..y.dim(a) {
                    let v = yf.get(r, k);
                    if !field.is_zero(v) {
                        let slot = blocks[a.0] + k * x.dim(a) + c;
                        row[slot] = field.add(&row[slot], v);
                    }
                }
                for k in 0..x.dim(b) {
                    let v = xf.get(k, c);
                    if !field.is_zero(v) {
                        let slot = blocks[b.0] + r * x.dim(b) + k;
                        row[slot] = field.sub(&row[slot], v);
                    }
                }
                if row.iter().any(|e| !field.is_zero(e)) {
                    rows.push(row);
                }
            }
        }
    }
    let mut constraint = Matrix::zero(field.clone(), rows.len(), ambient);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            constraint.set(i, j, v.clone());
        }
    }
    constraint.kernel_basis().len()
}

/// Components of the comparison sending the epi-coend of a mono-coend
/// of a core representation back to the representation. Every component
/// must be invertible and the family natural over the core.
pub fn coend_then_epi_coend_iso<K: Field>(
    core: &CorePair<K>,
    fs: &FactorizationSystem,
    mhat: &Composite<K>,
    ehat: &Composite<K>,
    t: &Representation<K>,
) -> BTreeMap<ObjId, Matrix<K>> {
    let field = core.linf.field.clone();
    let catf = &core.linf.cat;
    let pt = ObjId(0);
    let mut out = BTreeMap::new();
    for c in core.ling.cat.objects() {
        let epres = ehat.pres_at(pt, c);
        let mut big = Matrix::zero(field.clone(), t.dim(c), epres.big_dim);
        for (s, &(b, hd, kd, _)) in epres.summands.iter().enumerate() {
            let epis = fs.e_hom(catf, b, c);
            debug_assert_eq!(epis.len(), hd);
            let mpres = mhat.pres_at(pt, b);
            debug_assert_eq!(mpres.dim(), kd);
            for (h, &e) in epis.iter().enumerate() {
                for k in 0..kd {
                    let lifted = mpres.section.col(k);
                    let col = epres.index(s, h, k);
                    for (idx, cv) in lifted.iter().enumerate() {
                        if field.is_zero(cv) {
                            continue;
                        }
                        let (s2, h2, k2) = locate_pres(mpres, idx);
                        let bp = mpres.summands[s2].0;
                        let m = fs.m_hom(catf, bp, b)[h2];
                        let em = catf.compose(e, m).unwrap();
                        if let Some(child) = core.child(em) {
                            let block = t.at(child);
                            for r in 0..block.rows {
                                let add = field.mul(cv, block.get(r, k2));
                                if !field.is_zero(&add) {
                                    let cur = big.get(r, col).clone();
                                    big.set(r, col, field.add(&cur, &add));
                                }
                            }
                        }
                    }
                }
            }
        }
        out.insert(c, big.mul(&epres.section));
    }
    out
}

/// Naturality of a per-object family against two representations.
pub fn family_natural<K: Field>(
    maps: &BTreeMap<ObjId, Matrix<K>>,
    from: &Representation<K>,
    to: &Representation<K>,
) -> bool {
    let cat = &from.lin.cat;
    cat.morphisms().all(|f| {
        let (a, b) = (cat.dom(f), cat.cod(f));
        maps[&b].mul(from.at(f)) == to.at(f).mul(&maps[&a])
    })
}
