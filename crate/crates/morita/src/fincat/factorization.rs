//! Factorization systems on a finite category: axiom certification,
//! factorization of morphisms, uniqueness up to a middle isomorphism,
//! stiffness analysis and the pigeonhole property.

use super::category::{FinCategory, MorId, ObjId};
use std::collections::BTreeSet;
use thiserror::Error;

/// A candidate pair of morphism classes `(E, M)` on a category.
#[derive(Debug, Clone)]
pub struct FactorizationSystem {
    pub e_set: BTreeSet<MorId>,
    pub m_set: BTreeSet<MorId>,
}

impl FactorizationSystem {
    pub fn new(e_set: BTreeSet<MorId>, m_set: BTreeSet<MorId>) -> Self {
        Self { e_set, m_set }
    }

    pub fn in_e(&self, f: MorId) -> bool {
        self.e_set.contains(&f)
    }

    pub fn in_m(&self, f: MorId) -> bool {
        self.m_set.contains(&f)
    }

    /// Members of `E(a, b)` in ascending id order.
    pub fn e_hom(&self, cat: &FinCategory, a: ObjId, b: ObjId) -> Vec<MorId> {
        cat.hom(a, b).iter().copied().filter(|&f| self.in_e(f)).collect()
    }

    pub fn m_hom(&self, cat: &FinCategory, a: ObjId, b: ObjId) -> Vec<MorId> {
        cat.hom(a, b).iter().copied().filter(|&f| self.in_m(f)).collect()
    }

    /// The groupoid part `E `intersect` M`.
    pub fn g_hom(&self, cat: &FinCategory, a: ObjId, b: ObjId) -> Vec<MorId> {
        cat.hom(a, b).iter().copied().filter(|&f| self.in_e(f) && self.in_m(f)).collect()
    }

    pub fn in_g(&self, f: MorId) -> bool {
        self.in_e(f) && self.in_m(f)
    }

    /// On `(E, M)` both-classes-everything; the factorization system of
    /// any groupoid.
    pub fn everything(cat: &FinCategory) -> Self {
        let all: BTreeSet<MorId> = cat.morphisms().collect();
        Self { e_set: all.clone(), m_set: all }
    }
}

/// A failed axiom with a concrete witness.
#[derive(Debug, Clone, PartialEq)]
pub enum FsViolation {
    /// `m . w` (or `w . e`) left the class for an invertible `w`.
    Fs0 { class_member: MorId, invertible: MorId },
    /// A commuting square `m.h = k.e` with no diagonal fill-in.
    Fs1Missing { e: MorId, m: MorId, h: MorId, k: MorId },
    /// A square with at least two distinct fill-ins.
    Fs1NotUnique { e: MorId, m: MorId, h: MorId, k: MorId, l1: MorId, l2: MorId },
    /// A morphism with no factorization `m . e`.
    Fs2 { f: MorId },
    /// A member of `E` that is not an epimorphism (or dually for `M`).
    Properness { member: MorId, u: MorId, v: MorId },
    /// `E` intersect `M` differs from the invertibles at this morphism.
    GroupoidPart { f: MorId },
    /// The class is not closed under composition.
    NotClosed { g: MorId, f: MorId },
    /// An identity missing from a class.
    IdentityMissing { obj: ObjId },
    /// `h.f` in `M` but `f` not in `M` (or the dual) under properness.
    Cancellation { h: MorId, f: MorId },
}

/// Certification report for a factorization-system candidate.
#[derive(Debug, Clone)]
pub struct FsReport {
    pub fs0: Vec<FsViolation>,
    pub fs1: Vec<FsViolation>,
    pub fs2: Vec<FsViolation>,
    pub proper: Vec<FsViolation>,
    pub structure: Vec<FsViolation>,
    /// Cancellation consequences, checked only when properness holds.
    pub cancellation: Vec<FsViolation>,
}

impl FsReport {
    pub fn axioms_hold(&self) -> bool {
        self.fs0.is_empty() && self.fs1.is_empty() && self.fs2.is_empty() && self.structure.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        self.axioms_hold() && self.proper.is_empty() && self.cancellation.is_empty()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum FsError {
    #[error("morphism {0} admits no (e, m) factorization; the system is inconsistent")]
    NoFactorization(usize),
    #[error("no right adjoint in E with identity unit found for mono {0}")]
    MissingAdjoint(usize),
    #[error("subobject relation fails antisymmetry between monos {0} and {1}")]
    OrderCycle(usize, usize),
    #[error("hom-order data required but absent")]
    NoHomOrder,
}

/// Certify FS0-FS2, properness, and the derived closure/cancellation
/// facts, each by exhaustive search; every failure carries a witness.
pub fn check_factorization_system(cat: &FinCategory, fs: &FactorizationSystem) -> FsReport {
    let mut report = FsReport {
        fs0: Vec::new(),
        fs1: Vec::new(),
        fs2: Vec::new(),
        proper: Vec::new(),
        structure: Vec::new(),
        cancellation: Vec::new(),
    };
    let invertibles: BTreeSet<MorId> = cat.morphisms().filter(|&f| cat.is_invertible(f)).collect();

    // FS0: closure under invertible pre/post-composition.
    for &m in &fs.m_set {
        for &w in &invertibles {
            if cat.cod(w) == cat.dom(m) {
                let mw = cat.compose(m, w).unwrap();
                if !fs.in_m(mw) {
                    report.fs0.push(FsViolation::Fs0 { class_member: m, invertible: w });
                }
            }
        }
    }
    for &e in &fs.e_set {
        for &w in &invertibles {
            if cat.dom(w) == cat.cod(e) {
                let we = cat.compose(w, e).unwrap();
                if !fs.in_e(we) {
                    report.fs0.push(FsViolation::Fs0 { class_member: e, invertible: w });
                }
            }
        }
    }

    // FS1: unique diagonal fill-in for every square m.h = k.e.
    for &e in &fs.e_set {
        for &m in &fs.m_set {
            let (a, p) = (cat.dom(e), cat.cod(e));
            let (qq, b) = (cat.dom(m), cat.cod(m));
            for &h in cat.hom(a, qq) {
                let mh = cat.compose(m, h).unwrap();
                for &k in cat.hom(p, b) {
                    let ke = cat.compose(k, e).unwrap();
                    if mh != ke {
                        continue;
                    }
                    let fills: Vec<MorId> = cat
                        .hom(p, qq)
                        .iter()
                        .copied()
                        .filter(|&l| {
                            cat.compose(l, e) == Some(h) && cat.compose(m, l) == Some(k)
                        })
                        .collect();
                    match fills.len() {
                        0 => report.fs1.push(FsViolation::Fs1Missing { e, m, h, k }),
                        1 => {}
                        _ => report.fs1.push(FsViolation::Fs1NotUnique {
                            e,
                            m,
                            h,
                            k,
                            l1: fills[0],
                            l2: fills[1],
                        }),
                    }
                }
            }
        }
    }

    // FS2: every morphism factors.
    for f in cat.morphisms() {
        if factorize(cat, fs, f).is_err() {
            report.fs2.push(FsViolation::Fs2 { f });
        }
    }

    // FSP: E inside the epimorphisms, M inside the monomorphisms.
    for &e in &fs.e_set {
        let b = cat.cod(e);
        'outer_e: for x in cat.objects() {
            let hom = cat.hom(b, x);
            for (i, &u) in hom.iter().enumerate() {
                for &v in &hom[i + 1..] {
                    if cat.compose(u, e) == cat.compose(v, e) {
                        report.proper.push(FsViolation::Properness { member: e, u, v });
                        break 'outer_e;
                    }
                }
            }
        }
    }
    for &m in &fs.m_set {
        let a = cat.dom(m);
        'outer_m: for x in cat.objects() {
            let hom = cat.hom(x, a);
            for (i, &u) in hom.iter().enumerate() {
                for &v in &hom[i + 1..] {
                    if cat.compose(m, u) == cat.compose(m, v) {
                        report.proper.push(FsViolation::Properness { member: m, u, v });
                        break 'outer_m;
                    }
                }
            }
        }
    }

    // Derived structure: E intersect M = invertibles; closure under
    // composition; identities in both classes.
    for f in cat.morphisms() {
        let in_both = fs.in_e(f) && fs.in_m(f);
        if in_both != invertibles.contains(&f) {
            report.structure.push(FsViolation::GroupoidPart { f });
        }
    }
    for a in cat.objects() {
        let id = cat.identity(a);
        if !fs.in_e(id) || !fs.in_m(id) {
            report.structure.push(FsViolation::IdentityMissing { obj: a });
        }
    }
    for &g in &fs.m_set {
        for &f in &fs.m_set {
            if cat.dom(g) == cat.cod(f) && !fs.in_m(cat.compose(g, f).unwrap()) {
                report.structure.push(FsViolation::NotClosed { g, f });
            }
        }
    }
    for &g in &fs.e_set {
        for &f in &fs.e_set {
            if cat.dom(g) == cat.cod(f) && !fs.in_e(cat.compose(g, f).unwrap()) {
                report.structure.push(FsViolation::NotClosed { g, f });
            }
        }
    }

    // Cancellation: h.f in M forces f in M; f.k in E forces f in E.
    // Only meaningful for proper systems.
    if report.proper.is_empty() {
        for h in cat.morphisms() {
            for f in cat.morphisms() {
                if cat.dom(h) != cat.cod(f) {
                    continue;
                }
                let hf = cat.compose(h, f).unwrap();
                if fs.in_m(hf) && !fs.in_m(f) {
                    report.cancellation.push(FsViolation::Cancellation { h, f });
                }
                if fs.in_e(hf) && !fs.in_e(h) {
                    report.cancellation.push(FsViolation::Cancellation { h, f });
                }
            }
        }
    }

    report
}

/// Factor `f = m . e` with `e` in `E`, `m` in `M`, choosing the
/// lexicographically least `(e, m)` id pair.
pub fn factorize(
    cat: &FinCategory,
    fs: &FactorizationSystem,
    f: MorId,
) -> Result<(MorId, MorId), FsError> {
    let (a, b) = (cat.dom(f), cat.cod(f));
    let mut best: Option<(MorId, MorId)> = None;
    for c in cat.objects() {
        for &e in &fs.e_hom(cat, a, c) {
            for &m in &fs.m_hom(cat, c, b) {
                if cat.compose(m, e) == Some(f) {
                    let cand = (e, m);
                    if best.map_or(true, |cur| cand < cur) {
                        best = Some(cand);
                    }
                }
            }
        }
    }
    best.ok_or(FsError::NoFactorization(f.0))
}

/// Witness that the orbit-counting bijection failed at a hom-set.
#[derive(Debug, Clone, PartialEq)]
pub struct UniqueFactorWitness {
    pub a: ObjId,
    pub b: ObjId,
    pub orbits: usize,
    pub hom_size: usize,
}

/// Check that, for every `(a, b)`, composition induces a bijection from
/// the middle-isomorphism orbits of pairs `(m, e)` onto the hom-set.
pub fn verify_unique_factorization(
    cat: &FinCategory,
    fs: &FactorizationSystem,
) -> Result<(), UniqueFactorWitness> {
    for a in cat.objects() {
        for b in cat.objects() {
            let mut pairs: Vec<(MorId, MorId)> = Vec::new();
            for c in cat.objects() {
                for &m in &fs.m_hom(cat, c, b) {
                    for &e in &fs.e_hom(cat, a, c) {
                        pairs.push((m, e));
                    }
                }
            }
            let index = |p: &(MorId, MorId)| pairs.iter().position(|q| q == p).unwrap();
            let mut uf = UnionFind::new(pairs.len());
            for (i, &(m, e)) in pairs.iter().enumerate() {
                let c = cat.dom(m);
                for cp in cat.objects() {
                    for &g in &fs.g_hom(cat, cp, c) {
                        let ginv = cat.inverse(g).expect("class G is invertible");
                        let mg = cat.compose(m, g).unwrap();
                        let ge = cat.compose(ginv, e).unwrap();
                        uf.union(i, index(&(mg, ge)));
                    }
                }
            }
            let mut reps: Vec<usize> = (0..pairs.len()).map(|i| uf.find(i)).collect();
            reps.sort_unstable();
            reps.dedup();
            let orbits = reps.len();
            let hom_size = cat.hom(a, b).len();
            // Composites must also separate orbits; counting both ways
            // pins the bijection.
            let mut composites: Vec<MorId> =
                reps.iter().map(|&r| cat.compose(pairs[r].0, pairs[r].1).unwrap()).collect();
            composites.sort_unstable();
            composites.dedup();
            if orbits != hom_size || composites.len() != orbits {
                return Err(UniqueFactorWitness { a, b, orbits, hom_size });
            }
        }
    }
    Ok(())
}

/// Classify morphisms as stiff/costiff and test whether those classes
/// form a proper factorization system.
#[derive(Debug, Clone)]
pub struct StiffnessAnalysis {
    pub stiff: BTreeSet<MorId>,
    pub costiff: BTreeSet<MorId>,
    pub is_stiff_category: bool,
}

/// A morphism is stiff when every factorization through an endomorphism
/// of its domain forces that endomorphism invertible; costiff dually.
pub fn stiffness_analysis(cat: &FinCategory) -> StiffnessAnalysis {
    let mut stiff = BTreeSet::new();
    let mut costiff = BTreeSet::new();
    for f in cat.morphisms() {
        let (a, b) = (cat.dom(f), cat.cod(f));
        let mut f_stiff = true;
        for &u in cat.endos(a) {
            if cat.is_invertible(u) {
                continue;
            }
            if cat.hom(a, b).iter().any(|&v| cat.compose(v, u) == Some(f)) {
                f_stiff = false;
                break;
            }
        }
        if f_stiff {
            stiff.insert(f);
        }
        let mut f_costiff = true;
        for &u in cat.endos(b) {
            if cat.is_invertible(u) {
                continue;
            }
            if cat.hom(a, b).iter().any(|&v| cat.compose(u, v) == Some(f)) {
                f_costiff = false;
                break;
            }
        }
        if f_costiff {
            costiff.insert(f);
        }
    }
    let fs = FactorizationSystem::new(costiff.clone(), stiff.clone());
    let is_stiff_category = check_factorization_system(cat, &fs).is_proper();
    StiffnessAnalysis { stiff, costiff, is_stiff_category }
}

/// True when `M(a,a) = G(a,a) = E(a,a)` for every object `a`.
pub fn check_pigeonhole(cat: &FinCategory, fs: &FactorizationSystem) -> bool {
    pigeonhole_witness(cat, fs).is_none()
}

/// A non-invertible endomorphism inside `M` or `E`, if any.
pub fn pigeonhole_witness(cat: &FinCategory, fs: &FactorizationSystem) -> Option<MorId> {
    for a in cat.objects() {
        for &f in cat.endos(a) {
            let inv = cat.is_invertible(f);
            if (fs.in_m(f) || fs.in_e(f)) && !inv {
                return Some(f);
            }
        }
    }
    None
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = ra.min(rb);
        }
    }
}
