//! Module-level checks: composite dimensions against independent
//! counts, the pairing isomorphism, splittings, the full equivalence
//! certificate, and the counit preimage induction.

use morita::bimod::{
    canonical_modules, certify_equivalence, compose_modules, counit_preimage, naive_compose_map,
    phi_check, splittings_and_mates, CorePair,
};
use morita::catalog::{delta_bot, delta_bot_endo, vect};
use morita::exactalg::Rationals;
use morita::fincat::{FactorizationSystem, MorId, ObjId};
use morita::lincat::{complement_family, kovacs_family, IdempotentFamily, LinearCategory};

fn delta3_core() -> (CorePair<Rationals>, FactorizationSystem) {
    let inst = delta_bot(3);
    (CorePair::new(LinearCategory::new(inst.cat, Rationals)), inst.fs)
}

fn vect22_core() -> (CorePair<Rationals>, FactorizationSystem) {
    let v = vect(2, 2).unwrap();
    (CorePair::new(LinearCategory::new(v.instance.cat, Rationals)), v.instance.fs)
}

fn kovacs_p(
    core: &CorePair<Rationals>,
    fs: &FactorizationSystem,
) -> IdempotentFamily<Rationals> {
    let ells = kovacs_family(&core.linf, fs).unwrap().unwrap();
    complement_family(&core.linf, &ells)
}

#[test]
fn composite_of_mono_and_epi_quotients_has_core_dimensions() {
    // mono . epi over the vector-space instance: the component at the
    // plane equals the invertible count
    let (core, fs) = vect22_core();
    let cm = canonical_modules(&core, &fs);
    assert!(cm.passed());
    let me = compose_modules(&cm.mono_part, &cm.epi_part).unwrap();
    let two = ObjId(2);
    assert_eq!(me.module.dim(two, two), 6);
    for a in core.linf.cat.objects() {
        for b in core.linf.cat.objects() {
            assert_eq!(me.module.dim(a, b), core.ling.cat.hom(a, b).len());
        }
    }
}

#[test]
fn composite_of_epi_and_mono_quotients_has_hom_dimensions() {
    let (core, fs) = delta3_core();
    let cm = canonical_modules(&core, &fs);
    let em = compose_modules(&cm.epi_part, &cm.mono_part).unwrap();
    let three = ObjId(2);
    assert_eq!(em.module.dim(three, three), 6);
    for a in core.linf.cat.objects() {
        for b in core.linf.cat.objects() {
            assert_eq!(em.module.dim(a, b), core.linf.cat.hom(a, b).len());
        }
    }
}

#[test]
fn canonical_module_dimensions_over_f2() {
    let (core, fs) = vect22_core();
    let cm = canonical_modules(&core, &fs);
    let (one, two) = (ObjId(1), ObjId(2));
    assert_eq!(cm.restriction.dim(one, two), 4);
    assert_eq!(cm.mono_part.dim(one, two), 3);
    assert_eq!(cm.mono_complement.dim(one, two), 1);
    let _ = fs;
}

#[test]
fn pairing_is_invertible_on_both_instances() {
    for (core, fs) in [delta3_core(), vect22_core()] {
        let cm = canonical_modules(&core, &fs);
        let me = compose_modules(&cm.mono_part, &cm.epi_part).unwrap();
        let phi = phi_check(&core, &fs, &me);
        assert!(phi.passed(), "{:?}", phi.checks.iter().find(|c| !c.passed).map(|c| &c.name));
    }
}

#[test]
fn splitting_section_of_identity_mono_is_p() {
    // the mono-quotient section applied to an identity recovers p
    let (core, fs) = delta3_core();
    let cm = canonical_modules(&core, &fs);
    let p = kovacs_p(&core, &fs);
    let spl = splittings_and_mates(&core, &fs, &cm, &p);
    assert!(spl.passed(), "{:?}", spl.checks.iter().find(|c| !c.passed).map(|c| &c.name));
    let three = ObjId(2);
    let catf = &core.linf.cat;
    let monos: Vec<MorId> =
        catf.hom(three, three).iter().copied().filter(|&m| fs.in_m(m)).collect();
    let id_pos = monos.iter().position(|&m| m == catf.identity(three)).unwrap();
    let got = spl.rho.at(three, three).col(id_pos);
    let expected = core.linf.to_vec(p.at(three));
    assert_eq!(got, expected);
}

#[test]
fn equivalence_certificate_on_pointed_ordinals_three() {
    let (core, fs) = delta3_core();
    let p = kovacs_p(&core, &fs);
    let cert = certify_equivalence(&core, &fs, &p).unwrap();
    assert!(cert.passed(), "first failure: {:?}", cert.first_failure().map(|c| &c.name));
}

#[test]
fn counit_component_dimensions_over_f2() {
    let (core, fs) = vect22_core();
    let p = kovacs_p(&core, &fs);
    let cert = certify_equivalence(&core, &fs, &p).unwrap();
    assert!(cert.passed(), "first failure: {:?}", cert.first_failure().map(|c| &c.name));
    let two = ObjId(2);
    let comp = cert
        .counit_components
        .iter()
        .find(|&&(a, b, ..)| a == two && b == two)
        .unwrap();
    assert_eq!(comp.2, 16);
}

#[test]
fn naive_composition_map_differs_from_counit() {
    // the unique-factorization isomorphism is not the counit when the
    // idempotents are not identities
    let (core, fs) = vect22_core();
    let p = kovacs_p(&core, &fs);
    let cert = certify_equivalence(&core, &fs, &p).unwrap();
    let cm = canonical_modules(&core, &fs);
    let em = compose_modules(&cm.epi_part, &cm.mono_part).unwrap();
    let naive = naive_compose_map(&core, &fs, &em);
    let mut all_invertible = true;
    let mut differs = false;
    for (key, mat) in &naive {
        if !(mat.rows == mat.cols && mat.is_invertible()) {
            all_invertible = false;
        }
        if mat != cert.counit.at(key.0, key.1) {
            differs = true;
        }
    }
    assert!(all_invertible);
    assert!(differs);
}

#[test]
fn naive_composition_map_equals_counit_on_groupoids() {
    // with p = 1 on a groupoid the two maps agree
    let inst = delta_bot(1);
    let core = CorePair::new(LinearCategory::new(inst.cat, Rationals));
    let fs = FactorizationSystem::everything(&core.linf.cat);
    let p = IdempotentFamily {
        per_object: core.linf.cat.objects().map(|a| core.linf.identity_combo(a)).collect(),
    };
    let cert = certify_equivalence(&core, &fs, &p).unwrap();
    assert!(cert.passed());
    let cm = canonical_modules(&core, &fs);
    let em = compose_modules(&cm.epi_part, &cm.mono_part).unwrap();
    let naive = naive_compose_map(&core, &fs, &em);
    for (key, mat) in &naive {
        assert_eq!(mat, cert.counit.at(key.0, key.1));
    }
}

#[test]
fn counit_preimage_of_collapse_and_generator() {
    let (core, fs) = delta3_core();
    let p = kovacs_p(&core, &fs);
    // the total collapse factors through the bottom ordinal, whose
    // idempotent is the identity
    let zeta = delta_bot_endo(&core.linf.cat, &[0, 0, 0]).unwrap();
    let terms = counit_preimage(&core, &fs, &p, zeta).unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].through, ObjId(0));
    // a non-invertible idempotent expands into several terms
    let sigma0 = delta_bot_endo(&core.linf.cat, &[0, 0, 2]).unwrap();
    let terms = counit_preimage(&core, &fs, &p, sigma0).unwrap();
    assert!(!terms.is_empty());
    // identity preimage on a one-object groupoid is the trivial term
    let inst = delta_bot(1);
    let core1 = CorePair::new(LinearCategory::new(inst.cat, Rationals));
    let fs1 = FactorizationSystem::everything(&core1.linf.cat);
    let p1 = IdempotentFamily { per_object: vec![core1.linf.identity_combo(ObjId(0))] };
    let id = core1.linf.cat.identity(ObjId(0));
    let terms = counit_preimage(&core1, &fs1, &p1, id).unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].mono, id);
    assert_eq!(terms[0].epi, id);
}
