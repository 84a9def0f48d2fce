//! Representation-side checks: coend/end dimensions against direct-sum
//! and product formulas, the triangular transformation and its two
//! construction routes, transport across the equivalence and the
//! hom-space consequences.

use morita::bimod::{canonical_modules, CorePair};
use morita::catalog::{delta_bot, span_fi, vect};
use morita::exactalg::Rationals;
use morita::fincat::{sub_quo, triangular_listing, FactorizationSystem, ObjId};
use morita::lincat::{complement_family, kovacs_family, LinearCategory};
use morita::repcat::{
    coend_kernel, coend_then_epi_coend_iso, end_kernel, family_natural, nat_hom_dim, quo_sum_iso,
    round_trip_maps, sub_sum_iso, theta, theta_mate_route, transport, Representation,
};

fn delta3_core() -> (CorePair<Rationals>, FactorizationSystem) {
    let inst = delta_bot(3);
    (CorePair::new(LinearCategory::new(inst.cat, Rationals)), inst.fs)
}

fn vect22_core() -> (CorePair<Rationals>, FactorizationSystem) {
    let v = vect(2, 2).unwrap();
    (CorePair::new(LinearCategory::new(v.instance.cat, Rationals)), v.instance.fs)
}

#[test]
fn coend_dimension_counts_subobjects() {
    let (core, fs) = delta3_core();
    let cm = canonical_modules(&core, &fs);
    let t = Representation::constant(core.ling.clone());
    let (rep, _) = coend_kernel(&cm.mono_part, &t).unwrap();
    assert_eq!(rep.dim(ObjId(2)), 4);

    let (core, fs) = vect22_core();
    let cm = canonical_modules(&core, &fs);
    let t = Representation::constant(core.ling.clone());
    let (rep, _) = coend_kernel(&cm.mono_part, &t).unwrap();
    // subspaces of the plane over F2: 1 + 3 + 1
    assert_eq!(rep.dim(ObjId(2)), 5);
}

#[test]
fn end_dimension_counts_quotients() {
    let (core, fs) = delta3_core();
    let cm = canonical_modules(&core, &fs);
    let t = Representation::constant(core.ling.clone());
    let (rep, _) = end_kernel(&cm.epi_part, &t).unwrap();
    assert_eq!(rep.dim(ObjId(2)), 4);

    let (core, fs) = vect22_core();
    let cm = canonical_modules(&core, &fs);
    let t = Representation::constant(core.ling.clone());
    let (rep, _) = end_kernel(&cm.epi_part, &t).unwrap();
    assert_eq!(rep.dim(ObjId(2)), 5);
}

#[test]
fn identity_module_coend_and_end_recover_the_representation() {
    // both kernels applied along the groupoid's own hom module
    let (core, _) = delta3_core();
    let hm = morita::bimod::hom_module(core.ling.clone());
    let t = Representation::representable(core.ling.clone(), ObjId(1));
    let (via_coend, _) = coend_kernel(&hm, &t).unwrap();
    let (via_end, _) = end_kernel(&hm, &t).unwrap();
    for a in core.ling.cat.objects() {
        assert_eq!(via_coend.dim(a), t.dim(a));
        assert_eq!(via_end.dim(a), t.dim(a));
    }
}

#[test]
fn direct_sum_formulas_give_explicit_isomorphisms() {
    for (core, fs) in [delta3_core(), vect22_core()] {
        let cm = canonical_modules(&core, &fs);
        let t = Representation::constant(core.ling.clone());
        let (_, mcomp) = coend_kernel(&cm.mono_part, &t).unwrap();
        let (_, epres) = end_kernel(&cm.epi_part, &t).unwrap();
        for a in core.linf.cat.objects() {
            let listing = sub_quo(&core.linf.cat, &fs, a);
            let si = sub_sum_iso(&core, &fs, &mcomp, &t, &listing);
            assert!(si.rows == si.cols && si.is_invertible(), "sum iso at {}", a.0);
            let qi = quo_sum_iso(&core, &fs, &epres[&a], &t, &listing);
            assert!(qi.rows == qi.cols && qi.is_invertible(), "product iso at {}", a.0);
        }
    }
}

#[test]
fn theta_is_unitriangular_on_ordered_listings() {
    let (core, fs) = delta3_core();
    let t = Representation::constant(core.ling.clone());
    let listing = triangular_listing(&core.linf.cat, &fs, ObjId(2)).unwrap();
    let th = theta(&core, &t, &listing);
    assert_eq!(th.matrix.rows, 4);
    assert!(th.upper_triangular);
    assert!(th.unit_diagonal);
    assert!(th.invertible);

    let inst = span_fi(2);
    let core = CorePair::new(LinearCategory::new(inst.cat, Rationals));
    let t = Representation::constant(core.ling.clone());
    let listing = triangular_listing(&core.linf.cat, &inst.fs, ObjId(2)).unwrap();
    let th = theta(&core, &t, &listing);
    assert_eq!(th.matrix.rows, 4); // one block per subset of a 2-element set
    assert!(th.upper_triangular);
    assert!(th.unit_diagonal);
    assert!(th.invertible);
}

#[test]
fn theta_routes_agree_and_are_natural() {
    let (core, fs) = delta3_core();
    let cm = canonical_modules(&core, &fs);
    let t = Representation::constant(core.ling.clone());
    let (mrep, mcomp) = coend_kernel(&cm.mono_part, &t).unwrap();
    let (erep, epres) = end_kernel(&cm.epi_part, &t).unwrap();

    // route comparison in the listing bases, objectwise
    for a in core.linf.cat.objects() {
        let listing = triangular_listing(&core.linf.cat, &fs, a).unwrap();
        let alt = theta(&core, &t, &listing);
        let mate = theta_mate_route(&core, &fs, &mcomp, &t, &epres, a).unwrap();
        let si = sub_sum_iso(&core, &fs, &mcomp, &t, &listing);
        let qi = quo_sum_iso(&core, &fs, &epres[&a], &t, &listing);
        let transported = qi.mul(&mate).mul(&si);
        assert_eq!(transported, alt.matrix, "routes disagree at object {}", a.0);
    }

    // naturality over every morphism, in the kernel coordinates
    let mates: Vec<_> = core
        .linf
        .cat
        .objects()
        .map(|a| theta_mate_route(&core, &fs, &mcomp, &t, &epres, a).unwrap())
        .collect();
    for f in core.linf.cat.morphisms() {
        let (a, b) = (core.linf.cat.dom(f), core.linf.cat.cod(f));
        let lhs = mates[b.0].mul(mrep.at(f));
        let rhs = erep.at(f).mul(&mates[a.0]);
        assert_eq!(lhs, rhs, "naturality fails at morphism {}", f.0);
    }
}

#[test]
fn epi_coend_inverts_mono_coend_on_core_representations() {
    let (core, fs) = delta3_core();
    let cm = canonical_modules(&core, &fs);
    for x in core.ling.cat.objects() {
        let t = Representation::representable(core.ling.clone(), x);
        let (mrep, mcomp) = coend_kernel(&cm.mono_part, &t).unwrap();
        let (erep, ecomp) = coend_kernel(&cm.epi_part, &mrep).unwrap();
        let maps = coend_then_epi_coend_iso(&core, &fs, &mcomp, &ecomp, &t);
        for (c, m) in &maps {
            assert!(m.rows == m.cols && m.is_invertible(), "component at {}", c.0);
        }
        assert!(family_natural(&maps, &erep, &t));
    }
}

#[test]
fn transport_dims_equal_idempotent_ranks() {
    let (core, fs) = delta3_core();
    let ells = kovacs_family(&core.linf, &fs).unwrap().unwrap();
    let p = complement_family(&core.linf, &ells);
    let frep = Representation::representable(core.linf.clone(), ObjId(0));
    let tr = transport(&core, &p, &frep).unwrap();
    for c in core.ling.cat.objects() {
        let rank = frep.of_combo(p.at(c)).rank();
        assert_eq!(tr.rep.dim(c), rank);
    }
    assert_eq!(
        core.ling.cat.objects().map(|c| tr.rep.dim(c)).collect::<Vec<_>>(),
        vec![1, 0, 0]
    );
}

#[test]
fn transport_on_groupoid_is_identity() {
    let inst = delta_bot(1);
    let core = CorePair::new(LinearCategory::new(inst.cat, Rationals));
    let p = morita::lincat::IdempotentFamily {
        per_object: vec![core.linf.identity_combo(ObjId(0))],
    };
    let frep = Representation::constant(core.linf.clone());
    let tr = transport(&core, &p, &frep).unwrap();
    assert_eq!(tr.rep.dim(ObjId(0)), 1);
}

#[test]
fn round_trip_recovers_the_representation() {
    let (core, fs) = vect22_core();
    let ells = kovacs_family(&core.linf, &fs).unwrap().unwrap();
    let p = complement_family(&core.linf, &ells);
    let cm = canonical_modules(&core, &fs);
    let frep = Representation::constant(core.linf.clone());
    let tr = transport(&core, &p, &frep).unwrap();
    let (back, comp) = coend_kernel(&cm.mono_part, &tr.rep).unwrap();
    let maps = round_trip_maps(&core, &fs, &frep, &tr, &comp);
    for (a, m) in &maps {
        assert!(m.rows == m.cols && m.is_invertible(), "component at {}", a.0);
    }
    assert!(family_natural(&maps, &back, &frep));
}

#[test]
fn transported_hom_spaces_match_yoneda_dimensions() {
    let (core, fs) = delta3_core();
    let ells = kovacs_family(&core.linf, &fs).unwrap().unwrap();
    let p = complement_family(&core.linf, &ells);
    let reps: Vec<Representation<Rationals>> = core
        .linf
        .cat
        .objects()
        .map(|x| Representation::representable(core.linf.clone(), x))
        .collect();
    let transported: Vec<_> =
        reps.iter().map(|r| transport(&core, &p, r).unwrap().rep).collect();
    for (xi, x) in core.linf.cat.objects().enumerate() {
        for (yi, y) in core.linf.cat.objects().enumerate() {
            let expected = core.linf.cat.hom(y, x).len();
            assert_eq!(
                nat_hom_dim(&reps[xi], &reps[yi]),
                expected,
                "whole-category hom at ({}, {})",
                x.0,
                y.0
            );
            assert_eq!(
                nat_hom_dim(&transported[xi], &transported[yi]),
                expected,
                "core hom at ({}, {})",
                x.0,
                y.0
            );
        }
    }
}
