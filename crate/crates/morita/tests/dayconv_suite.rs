//! Convolution-side checks: exact-pair enumeration, equivariance,
//! tensor dimensions against subspace counts, exact unit laws, the
//! three-by-three associator, and the two routes to the transported
//! promonoidal dimensions.

use morita::bimod::canonical_modules;
use morita::catalog::vect;
use morita::dayconv::{
    assoc_map, check_associativity, convolve, promono_dim_flags, promono_dims_transport,
    unit_laws_exact, unit_rep, DayInstance,
};
use morita::exactalg::Rationals;
use morita::fincat::ObjId;
use morita::repcat::Representation;

fn day22() -> DayInstance<Rationals> {
    DayInstance::new(vect(2, 2).unwrap(), Rationals).unwrap()
}

#[test]
fn subspace_catalog_matches_gaussian_counts() {
    let day = day22();
    assert_eq!(day.subspaces[0].len(), 1);
    assert_eq!(day.subspaces[1].len(), 2);
    assert_eq!(day.subspaces[2].len(), 5);
}

#[test]
fn exact_pair_enumeration() {
    let day = day22();
    let (zero, one, two) = (ObjId(0), ObjId(1), ObjId(2));
    // unit leg: every pair out of the zero object has an invertible epi
    let pairs = day.exact_pairs(zero, two, two);
    assert_eq!(pairs.len(), 6);
    assert!(pairs.iter().all(|p| day.cat().is_invertible(p.epi)));
    // three choices of a line in the plane, one projection each
    assert_eq!(day.exact_pairs(one, one, two).len(), 3);
    // dimension obstruction
    assert!(day.exact_pairs(two, one, one).is_empty());
}

#[test]
fn pair_action_is_functorial() {
    let day = day22();
    let (one, two) = (ObjId(1), ObjId(2));
    let catg = &day.core.ling.cat;
    let pairs = day.exact_pairs(one, one, two);
    let auts1: Vec<_> = catg.hom(one, one).to_vec();
    let auts2: Vec<_> = catg.hom(two, two).to_vec();
    for &p in &pairs {
        // identities act trivially
        let idp = day.pair_action(catg.identity(one), catg.identity(one), catg.identity(two), p);
        assert_eq!(idp, p);
        // results stay exact and composition matches the two-step action
        for &g1 in &auts1 {
            for &g2 in &auts1 {
                for &g3 in &auts2 {
                    let q = day.pair_action(g1, g2, g3, p);
                    assert!(day.is_exact_pair(one, one, two, q.mono, q.epi));
                    for &h1 in &auts1 {
                        for &h2 in &auts1 {
                            for &h3 in &auts2 {
                                let two_step = day.pair_action(g1, g2, g3, day.pair_action(h1, h2, h3, p));
                                let g1h1 = catg.compose(h1, g1).unwrap();
                                let g2h2 = catg.compose(h2, g2).unwrap();
                                let g3h3 = catg.compose(g3, h3).unwrap();
                                let one_step = day.pair_action(g1h1, g2h2, g3h3, p);
                                assert_eq!(two_step, one_step);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn convolution_dimensions_count_subspaces() {
    let day = day22();
    let s = Representation::constant(day.core.ling.clone());
    let t = Representation::constant(day.core.ling.clone());
    let (st, _) = convolve(&day, &s, &t).unwrap();
    assert_eq!(st.dim(ObjId(2)), 5);
    assert_eq!(st.dim(ObjId(1)), 2);
    assert_eq!(st.dim(ObjId(0)), 1);
}

#[test]
fn unit_laws_hold_exactly() {
    let day = day22();
    let constant = Representation::constant(day.core.ling.clone());
    assert!(unit_laws_exact(&day, &constant).unwrap());
    let reg = Representation::representable(day.core.ling.clone(), ObjId(2));
    assert!(unit_laws_exact(&day, &reg).unwrap());
    // convolving the unit with itself stays the unit
    let j = unit_rep(&day.core);
    assert!(unit_laws_exact(&day, &j).unwrap());
}

#[test]
fn associator_certificate_for_constants() {
    let day = day22();
    let c = Representation::constant(day.core.ling.clone());
    let cert = check_associativity(&day, &c, &c, &c).unwrap();
    assert!(cert.orbit_bijection, "orbit-level bijection failed");
    assert!(cert.components_invertible, "components: {:?}", cert.dims);
    assert!(cert.natural, "associator not natural");
    // both triple products at the plane have one dimension per flag
    let flag_count: usize = day.subspaces[2]
        .iter()
        .map(|h| day.subspaces[h.dim].len())
        .sum();
    assert_eq!(flag_count, 12);
    let at_two = cert.dims.iter().find(|d| d.0 == 2).unwrap();
    assert_eq!((at_two.1, at_two.2), (flag_count, flag_count));
}

#[test]
fn associator_on_constants_is_a_permutation() {
    let day = day22();
    let c = Representation::constant(day.core.ling.clone());
    let m = assoc_map(&day, &c, &c, &c, ObjId(2)).unwrap();
    let q = Rationals;
    for i in 0..m.rows {
        let ones = (0..m.cols).filter(|&j| *m.get(i, j) == morita::exactalg::Field::one(&q)).count();
        let zeros = (0..m.cols)
            .filter(|&j| morita::exactalg::Field::is_zero(&q, m.get(i, j)))
            .count();
        assert_eq!(ones, 1);
        assert_eq!(zeros, m.cols - 1);
    }
}

#[test]
fn associator_natural_for_mixed_representations() {
    let day = day22();
    let c = Representation::constant(day.core.ling.clone());
    let reg = Representation::representable(day.core.ling.clone(), ObjId(1));
    let cert = check_associativity(&day, &c, &reg, &c).unwrap();
    assert!(cert.passed());
}

#[test]
fn transported_promonoidal_dimensions_agree() {
    let day = day22();
    let cm = canonical_modules(&day.core, &day.vect.instance.fs);
    for a in day.cat().objects() {
        for b in day.cat().objects() {
            let via_transport = promono_dims_transport(&day, &cm.mono_part, a, b).unwrap();
            for c in day.cat().objects() {
                let via_flags = promono_dim_flags(&day, a, b, c);
                assert_eq!(
                    via_transport[c.0], via_flags,
                    "promonoidal dimension mismatch at ({}, {}; {})",
                    a.0, b.0, c.0
                );
            }
        }
    }
}
