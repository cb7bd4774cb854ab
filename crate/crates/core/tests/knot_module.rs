use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slingcalc::knot_module::{
    annihilator_trivial_check, displayed_relator, one_minus_t_invertible,
    presentation_reduce_wild, seifert_cycle_relations_check, torsion_decide,
    wild_module_companion, wild_orbit_by_rewriting, wild_presentation, LocalElem,
    ModulePresentation, RingTag,
};
use slingcalc::{resultant, AuxPoly, Error, LaurentPoly};

fn t(s: &str) -> LaurentPoly {
    LaurentPoly::parse(&["t"], s).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: i64) -> LaurentPoly {
    let low = rng.gen_range(-2..=0);
    let len = rng.gen_range(1..=(max_deg + 1) as usize);
    let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
    LaurentPoly::from_coeffs("t", low, &coeffs)
}

#[test]
fn reduction_reproduces_relator() {
    let r = presentation_reduce_wild().unwrap();
    assert_eq!(r.relator, displayed_relator());
    assert_eq!(r.presentation.gens.len(), 1);
    // relator · e_α = c1 R1 + c2 R2 in the two-generator presentation
    let pres = wild_presentation();
    let [c1, c2] = &r.combination;
    let alpha = &(c1 * &pres.rels[0][0]) + &(c2 * &pres.rels[1][0]);
    let beta = &(c1 * &pres.rels[0][1]) + &(c2 * &pres.rels[1][1]);
    assert_eq!(alpha, r.relator);
    assert!(beta.is_zero());
    assert_eq!(r.steps.len(), 4);
}

#[test]
fn seifert_bookkeeping() {
    let c = seifert_cycle_relations_check();
    assert!(c.eliminated_forms_match);
    assert!(c.presentation_matches);
}

#[test]
fn companion_unit_and_inverse() {
    let c = wild_module_companion();
    let det = c.determinant();
    assert!(det.is_unit());
    assert_eq!(det, LocalElem::from_poly(t("-t")).unwrap());
    let inv = c.inverse().unwrap();
    assert!(c.compose(&inv).is_identity());
    assert!(inv.compose(&c).is_identity());
    // s^-1 x_1 = x_0
    let x1 = [LocalElem::zero(), LocalElem::one()];
    assert_eq!(inv.apply(&x1), [LocalElem::one(), LocalElem::zero()]);
}

#[test]
fn orbit_two_ways() {
    let c = wild_module_companion();
    let inv = c.inverse().unwrap();
    let x0 = [LocalElem::one(), LocalElem::zero()];
    let mut up = x0.clone();
    let mut down = x0.clone();
    for k in 0..=6i64 {
        assert_eq!(up, wild_orbit_by_rewriting(k).unwrap(), "k = {k}");
        assert_eq!(down, wild_orbit_by_rewriting(-k).unwrap(), "k = -{k}");
        up = c.apply(&up);
        down = inv.apply(&down);
    }
}

#[test]
fn orbit_satisfies_relation() {
    let a = LocalElem::from_poly(t("1 - t^-1")).unwrap();
    let b = LocalElem::from_poly(t("1 - t")).unwrap();
    let c = LocalElem::from_poly(t("2t + 2t^-1 - 3")).unwrap();
    for i in -5..=5 {
        let (p, x, n) = (
            wild_orbit_by_rewriting(i - 1).unwrap(),
            wild_orbit_by_rewriting(i).unwrap(),
            wild_orbit_by_rewriting(i + 1).unwrap(),
        );
        for j in 0..2 {
            let s = a.mul(&n[j]).add(&b.mul(&p[j])).add(&c.mul(&x[j]));
            assert!(s.is_zero());
        }
    }
}

#[test]
fn annihilator_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 100 {
        let p = random_poly(&mut rng, 8);
        if p.is_zero() {
            continue;
        }
        assert!(annihilator_trivial_check(&p).unwrap());
        done += 1;
    }
    for s in ["1 - t", "2t + 2t^-1 - 3", "t^5 - 1"] {
        assert!(annihilator_trivial_check(&t(s)).unwrap());
    }
    assert!(matches!(annihilator_trivial_check(&t("0")), Err(Error::Usage(_))));
}

#[test]
fn trefoil_module() {
    let tre = ModulePresentation::cyclic(t("t^2 - t + 1")).unwrap();
    assert!(torsion_decide(&tre).unwrap());
    assert!(one_minus_t_invertible(&tre).unwrap());
}

#[test]
fn invertibility_matches_resultant() {
    let proto = LaurentPoly::one(&["c"]);
    let lift = |p: &LaurentPoly| {
        AuxPoly::from_terms(
            &proto,
            p.terms().map(|(e, c)| (e[0], LaurentPoly::constant(&["c"], c.clone()))),
        )
    };
    let one_minus = lift(&t("1 - t"));
    for s in ["1", "t^2 - t + 1", "2t^2 - 3t + 2", "t - 3", "t^2 - 3t + 1", "3"] {
        let delta = t(s);
        let res = resultant(&one_minus, &lift(&delta)).unwrap();
        let expect = res.constant_term().abs() == BigInt::from(1);
        let got = one_minus_t_invertible(&ModulePresentation::cyclic(delta).unwrap()).unwrap();
        assert_eq!(got, expect, "{s}");
    }
    for s in ["1", "t^2 - t + 1", "2t^2 - 3t + 2"] {
        assert!(one_minus_t_invertible(&ModulePresentation::cyclic(t(s)).unwrap()).unwrap());
    }
}

#[test]
fn torsion_metamorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let gens = rng.gen_range(1..=3);
        let nrels = rng.gen_range(0..=3);
        let mut rels: Vec<Vec<LaurentPoly>> = (0..nrels)
            .map(|_| (0..gens).map(|_| random_poly(&mut rng, 2)).collect())
            .collect();
        let names = (0..gens).map(|i| format!("g{i}")).collect::<Vec<_>>();
        let base = torsion_decide(&ModulePresentation::new(RingTag::LaurentT, names.clone(), rels.clone()).unwrap()).unwrap();
        // row operation: add a multiple of one relation to another
        if nrels >= 2 {
            let f = random_poly(&mut rng, 2);
            let extra: Vec<LaurentPoly> = rels[1].iter().map(|p| &f * p).collect();
            for (a, b) in rels[0].iter_mut().zip(extra) {
                *a = &*a + &b;
            }
        }
        // column operation: add a multiple of one generator column to another
        if gens >= 2 {
            let f = random_poly(&mut rng, 2);
            for row in rels.iter_mut() {
                let add = &f * &row[1];
                row[0] = &row[0] + &add;
            }
        }
        // scale a column by a unit and permute columns
        for row in rels.iter_mut() {
            row[0] = &row[0] * &t("-t^2");
            row.reverse();
        }
        let after = torsion_decide(&ModulePresentation::new(RingTag::LaurentT, names, rels).unwrap()).unwrap();
        assert_eq!(base, after);
    }
}

#[test]
fn presentation_json() {
    let text = r#"{"ring":"Z[t^]","gens":["a","b"],"rels":[["1 - t", "-1"], [[{"e":1,"c":"1"}], "t^2"]]}"#;
    let p = ModulePresentation::from_json(text).unwrap();
    assert_eq!(p.rels[1][0], t("t"));
    assert!(torsion_decide(&p).unwrap());
    let round = ModulePresentation::from_json(&p.to_json().to_string()).unwrap();
    assert_eq!(round, p);
    let err = ModulePresentation::from_json(r#"{"ring":"Z[t^]", "gens":}"#).unwrap_err();
    match err {
        Error::Parse(msg) => assert!(msg.contains("column")),
        other => panic!("unexpected {other:?}"),
    }
}
