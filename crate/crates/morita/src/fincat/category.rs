//! Finite categories as explicit composition tables.
//!
//! Objects and morphisms are opaque ids; all semantics live in the
//! tables. Values are immutable after construction and every operation
//! on them is a pure function.

use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Identifier of an object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub usize);

/// Identifier of a morphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub usize);

/// One morphism record: domain, codomain and a display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorData {
    pub dom: ObjId,
    pub cod: ObjId,
    pub name: String,
}

/// A finite category presented by a total composition table, optionally
/// carrying a partial order on each hom-set.
#[derive(Debug, Clone, PartialEq)]
pub struct FinCategory {
    object_names: Vec<String>,
    morphisms: Vec<MorData>,
    identities: Vec<MorId>,
    /// compose[g][f] = g after f, for dom(g) = cod(f).
    table: BTreeMap<(MorId, MorId), MorId>,
    /// `(f, g)` present means `f <= g` within one hom-set.
    hom_order: Option<BTreeSet<(MorId, MorId)>>,
    hom_index: BTreeMap<(ObjId, ObjId), Vec<MorId>>,
}

#[derive(Debug, Error, PartialEq)]
pub enum CategoryError {
    #[error("morphism {0} refers to missing object {1}")]
    DanglingObject(usize, usize),
    #[error("identity entry for object {0} names missing morphism {1}")]
    DanglingIdentity(usize, usize),
    #[error("identity of object {0} must be an endomorphism of it")]
    BadIdentity(usize),
    #[error("identities must be given for all {expected} objects, got {got}")]
    MissingIdentities { expected: usize, got: usize },
    #[error("composition table entry ({0}, {1}) refers to a missing morphism")]
    DanglingComposite(usize, usize),
    #[error("table entry for non-composable pair g={0}, f={1}")]
    NonComposablePair(usize, usize),
    #[error("composite of g={g} after f={f} missing from the table")]
    MissingComposite { g: usize, f: usize },
    #[error("composite of g={g} after f={f} has wrong endpoints")]
    BadCompositeType { g: usize, f: usize },
    #[error("hom-order pair ({0}, {1}) does not relate parallel morphisms")]
    OrderNotParallel(usize, usize),
}

/// One violation found by `validate_category`.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `(h.g).f != h.(g.f)` at the given composable triple.
    Associativity { h: MorId, g: MorId, f: MorId },
    /// `id . f != f` or `f . id != f`.
    Unit { f: MorId },
    /// The hom-order is not reflexive at `f`.
    OrderReflexive { f: MorId },
    /// `f <= g` and `g <= f` with `f != g`.
    OrderAntisymmetric { f: MorId, g: MorId },
    /// `f <= g <= h` but not `f <= h`.
    OrderTransitive { f: MorId, g: MorId, h: MorId },
    /// Composition is not monotone: `f <= g` but `h.f <= h.g` fails
    /// (or on the other side).
    OrderWhiskering { f: MorId, g: MorId, by: MorId },
}

/// Outcome of validating a composition table.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl FinCategory {
    /// Assemble a category from raw parts. Structural referencing errors
    /// are rejected here; the category *laws* are checked separately by
    /// [`FinCategory::validate`].
    pub fn from_parts(
        object_names: Vec<String>,
        morphisms: Vec<MorData>,
        identities: Vec<MorId>,
        table: BTreeMap<(MorId, MorId), MorId>,
        hom_order: Option<BTreeSet<(MorId, MorId)>>,
    ) -> Result<Self, CategoryError> {
        let n_obj = object_names.len();
        let n_mor = morphisms.len();
        for (i, m) in morphisms.iter().enumerate() {
            if m.dom.0 >= n_obj {
                return Err(CategoryError::DanglingObject(i, m.dom.0));
            }
            if m.cod.0 >= n_obj {
                return Err(CategoryError::DanglingObject(i, m.cod.0));
            }
        }
        if identities.len() != n_obj {
            return Err(CategoryError::MissingIdentities { expected: n_obj, got: identities.len() });
        }
        for (o, &id) in identities.iter().enumerate() {
            if id.0 >= n_mor {
                return Err(CategoryError::DanglingIdentity(o, id.0));
            }
            let m = &morphisms[id.0];
            if m.dom.0 != o || m.cod.0 != o {
                return Err(CategoryError::BadIdentity(o));
            }
        }
        for (&(g, f), &gf) in &table {
            if g.0 >= n_mor || f.0 >= n_mor || gf.0 >= n_mor {
                return Err(CategoryError::DanglingComposite(g.0, f.0));
            }
            if morphisms[g.0].dom != morphisms[f.0].cod {
                return Err(CategoryError::NonComposablePair(g.0, f.0));
            }
            let expect_dom = morphisms[f.0].dom;
            let expect_cod = morphisms[g.0].cod;
            if morphisms[gf.0].dom != expect_dom || morphisms[gf.0].cod != expect_cod {
                return Err(CategoryError::BadCompositeType { g: g.0, f: f.0 });
            }
        }
        // totality on composable pairs
        for g in 0..n_mor {
            for f in 0..n_mor {
                if morphisms[g].dom == morphisms[f].cod
                    && !table.contains_key(&(MorId(g), MorId(f)))
                {
                    return Err(CategoryError::MissingComposite { g, f });
                }
            }
        }
        if let Some(ord) = &hom_order {
            for &(f, g) in ord {
                if f.0 >= n_mor || g.0 >= n_mor {
                    return Err(CategoryError::OrderNotParallel(f.0, g.0));
                }
                let (mf, mg) = (&morphisms[f.0], &morphisms[g.0]);
                if mf.dom != mg.dom || mf.cod != mg.cod {
                    return Err(CategoryError::OrderNotParallel(f.0, g.0));
                }
            }
        }
        let mut hom_index: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
        for a in 0..n_obj {
            for b in 0..n_obj {
                hom_index.insert((ObjId(a), ObjId(b)), Vec::new());
            }
        }
        for (i, m) in morphisms.iter().enumerate() {
            hom_index.get_mut(&(m.dom, m.cod)).unwrap().push(MorId(i));
        }
        Ok(Self { object_names, morphisms, identities, table, hom_order, hom_index })
    }

    pub fn n_objects(&self) -> usize {
        self.object_names.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        (0..self.n_objects()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> {
        (0..self.n_morphisms()).map(MorId)
    }

    pub fn object_name(&self, a: ObjId) -> &str {
        &self.object_names[a.0]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn dom(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].dom
    }

    pub fn cod(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].cod
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identities[a.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities.contains(&f)
    }

    /// `g` after `f`; `None` when not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.table.get(&(g, f)).copied()
    }

    /// Compose a left-to-right chain `f1 ; f2 ; ...` (i.e. `... . f2 . f1`).
    pub fn compose_chain(&self, chain: &[MorId]) -> Option<MorId> {
        let mut it = chain.iter();
        let mut acc = *it.next()?;
        for &f in it {
            acc = self.compose(f, acc)?;
        }
        Some(acc)
    }

    /// Morphisms `a -> b` in ascending id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        self.hom_index.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn endos(&self, a: ObjId) -> &[MorId] {
        self.hom(a, a)
    }

    pub fn has_hom_order(&self) -> bool {
        self.hom_order.is_some()
    }

    /// `f <= g` in the hom-order; false when no order is carried.
    pub fn le(&self, f: MorId, g: MorId) -> bool {
        match &self.hom_order {
            Some(ord) => f == g || ord.contains(&(f, g)),
            None => false,
        }
    }

    pub fn hom_order_pairs(&self) -> Option<&BTreeSet<(MorId, MorId)>> {
        self.hom_order.as_ref()
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.dom(f), self.cod(f));
        let (ida, idb) = (self.identity(a), self.identity(b));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == Some(ida) && self.compose(f, g) == Some(idb))
    }

    pub fn is_invertible(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// Exhaustive check of the category laws and, when present, of the
    /// hom-order axioms. The report lists every violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for f in self.morphisms() {
            let (a, b) = (self.dom(f), self.cod(f));
            let left = self.compose(self.identity(b), f);
            let right = self.compose(f, self.identity(a));
            if left != Some(f) || right != Some(f) {
                violations.push(Violation::Unit { f });
            }
        }
        for h in self.morphisms() {
            for g in self.morphisms() {
                if self.dom(h) != self.cod(g) {
                    continue;
                }
                for f in self.morphisms() {
                    if self.dom(g) != self.cod(f) {
                        continue;
                    }
                    let hg_f = self.compose(h, g).and_then(|hg| self.compose(hg, f));
                    let h_gf = self.compose(g, f).and_then(|gf| self.compose(h, gf));
                    if hg_f != h_gf || hg_f.is_none() {
                        violations.push(Violation::Associativity { h, g, f });
                    }
                }
            }
        }
        if let Some(ord) = &self.hom_order {
            for f in self.morphisms() {
                if !self.le(f, f) {
                    violations.push(Violation::OrderReflexive { f });
                }
            }
            for &(f, g) in ord {
                if f != g && ord.contains(&(g, f)) {
                    violations.push(Violation::OrderAntisymmetric { f, g });
                }
            }
            for &(f, g) in ord {
                for &(g2, h) in ord {
                    if g == g2 && !self.le(f, h) {
                        violations.push(Violation::OrderTransitive { f, g, h });
                    }
                }
            }
            for &(f, g) in ord {
                if f == g {
                    continue;
                }
                for w in self.morphisms() {
                    if self.dom(w) == self.cod(f) {
                        let (wf, wg) = (self.compose(w, f).unwrap(), self.compose(w, g).unwrap());
                        if !self.le(wf, wg) {
                            violations.push(Violation::OrderWhiskering { f, g, by: w });
                        }
                    }
                    if self.cod(w) == self.dom(f) {
                        let (fw, gw) = (self.compose(f, w).unwrap(), self.compose(g, w).unwrap());
                        if !self.le(fw, gw) {
                            violations.push(Violation::OrderWhiskering { f, g, by: w });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// The wide subcategory of invertible morphisms, with the mapping
    /// from its morphism ids back to this category's.
    pub fn core_groupoid(&self) -> Subcategory {
        let invertible: Vec<MorId> = self.morphisms().filter(|&f| self.is_invertible(f)).collect();
        self.wide_subcategory(&invertible)
    }

    /// The wide subcategory on a composition-closed morphism set
    /// containing all identities. Panics when the set is not closed;
    /// callers validate their morphism classes first.
    pub fn wide_subcategory(&self, keep: &[MorId]) -> Subcategory {
        let mut to_new: BTreeMap<MorId, MorId> = BTreeMap::new();
        let mut sorted = keep.to_vec();
        sorted.sort();
        sorted.dedup();
        for (i, &f) in sorted.iter().enumerate() {
            to_new.insert(f, MorId(i));
        }
        let morphisms: Vec<MorData> = sorted.iter().map(|&f| self.morphisms[f.0].clone()).collect();
        let identities: Vec<MorId> =
            self.identities.iter().map(|id| *to_new.get(id).expect("identities kept")).collect();
        let mut table = BTreeMap::new();
        for &g in &sorted {
            for &f in &sorted {
                if self.dom(g) == self.cod(f) {
                    let gf = self.compose(g, f).expect("total table");
                    let new_gf = *to_new.get(&gf).expect("subcategory closed under composition");
                    table.insert((to_new[&g], to_new[&f]), new_gf);
                }
            }
        }
        let hom_order = self.hom_order.as_ref().map(|ord| {
            ord.iter()
                .filter_map(|&(f, g)| Some((*to_new.get(&f)?, *to_new.get(&g)?)))
                .collect()
        });
        let cat = FinCategory::from_parts(
            self.object_names.clone(),
            morphisms,
            identities,
            table,
            hom_order,
        )
        .expect("subcategory structurally sound");
        Subcategory { cat, mor_to_parent: sorted }
    }

    /// Is every morphism invertible?
    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|f| self.is_invertible(f))
    }

    /// A greedy generating set: every morphism is a composite of the
    /// returned ones and identities.
    pub fn generating_morphisms(&self) -> Vec<MorId> {
        let mut closed: BTreeSet<MorId> = self.identities.iter().copied().collect();
        let mut gens = Vec::new();
        for f in self.morphisms() {
            if closed.contains(&f) {
                continue;
            }
            gens.push(f);
            closed.insert(f);
            loop {
                let mut grew = false;
                let current: Vec<MorId> = closed.iter().copied().collect();
                for &g in &current {
                    for &h in &current {
                        if self.dom(g) == self.cod(h) {
                            let gh = self.compose(g, h).expect("total table");
                            if closed.insert(gh) {
                                grew = true;
                            }
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
        }
        gens
    }

    /// A copy with one composition-table entry replaced. The result may
    /// fail validation; negative-control tests rely on that.
    pub fn with_composite(&self, g: MorId, f: MorId, gf: MorId) -> Self {
        let mut copy = self.clone();
        copy.table.insert((g, f), gf);
        copy
    }
}

/// A wide subcategory together with the morphism-id map into its parent.
#[derive(Debug, Clone)]
pub struct Subcategory {
    pub cat: FinCategory,
    pub mor_to_parent: Vec<MorId>,
}

impl Subcategory {
    pub fn parent_of(&self, f: MorId) -> MorId {
        self.mor_to_parent[f.0]
    }

    pub fn find_child(&self, parent: MorId) -> Option<MorId> {
        self.mor_to_parent.iter().position(|&p| p == parent).map(MorId)
    }
}

/// The one-object, one-morphism category.
pub fn terminal_category() -> FinCategory {
    FinCategory::from_parts(
        vec!["*".into()],
        vec![MorData { dom: ObjId(0), cod: ObjId(0), name: "id".into() }],
        vec![MorId(0)],
        BTreeMap::from([((MorId(0), MorId(0)), MorId(0))]),
        None,
    )
    .expect("terminal category is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_category_is_valid() {
        let cat = terminal_category();
        assert!(cat.validate().is_valid());
        assert!(cat.is_groupoid());
        assert_eq!(cat.core_groupoid().cat.n_morphisms(), 1);
    }

    #[test]
    fn missing_composite_is_structural_error() {
        let res = FinCategory::from_parts(
            vec!["*".into()],
            vec![
                MorData { dom: ObjId(0), cod: ObjId(0), name: "id".into() },
                MorData { dom: ObjId(0), cod: ObjId(0), name: "e".into() },
            ],
            vec![MorId(0)],
            BTreeMap::from([((MorId(0), MorId(0)), MorId(0))]),
            None,
        );
        assert!(matches!(res, Err(CategoryError::MissingComposite { .. })));
    }

    #[test]
    fn dangling_object_reported() {
        let res = FinCategory::from_parts(
            vec!["*".into()],
            vec![MorData { dom: ObjId(0), cod: ObjId(3), name: "f".into() }],
            vec![MorId(0)],
            BTreeMap::new(),
            None,
        );
        assert_eq!(res.unwrap_err(), CategoryError::DanglingObject(0, 3));
    }
}
