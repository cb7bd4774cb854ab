//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every comparison is exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slingcalc::conway::{
    cover_identity, fibonacci, generating_function_coeffs, mazur_from_relations, nabla_j,
    nabla_j_oracle, nabla_m, omega_mr, omega_mr_oracle, splice, substitute_u, LinkData, XY,
};
use slingcalc::group::{
    conj_t_vs_txy, freeprod_conjugate_test, t_conjugate_closed_form, trefoil_word_translate,
    GElement, HeisElement, Word,
};
use slingcalc::knot_module::{
    annihilator_trivial_check, displayed_relator, one_minus_t_invertible,
    presentation_reduce_wild, torsion_decide, wild_module_companion, ModulePresentation,
};
use slingcalc::rational::{
    accumulate_product, accumulate_sum, counterexample_mobius_sum, counterexample_product,
    fit_rational, stage_divisibility, RationalFitBound, StageData, Variant,
};
use slingcalc::walg::{cochran_splice_add, omega_to_w, pk_expand, reduced_w, u1_component, WElement};
use slingcalc::{LaurentPoly, RationalSeries, TruncatedSeries};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn z(s: &str) -> LaurentPoly {
    LaurentPoly::parse(&["z"], s).unwrap()
}

fn t(s: &str) -> LaurentPoly {
    LaurentPoly::parse(&["t"], s).unwrap()
}

fn xy(s: &str) -> LaurentPoly {
    LaurentPoly::parse(&XY, s).unwrap()
}

fn c1_oracles() -> Check {
    for r in 1..=12 {
        ensure!(ok(nabla_j(r))? == ok(nabla_j_oracle(r))?, "nabla_J differs from product at r = {r}");
    }
    for r in 1..=8 {
        ensure!(ok(omega_mr(r))? == ok(omega_mr_oracle(r))?, "Omega_M differs from product at r = {r}");
    }
    Ok(())
}

fn c2_degrees() -> Check {
    let one = BigInt::one();
    for r in 1..=30usize {
        let (nj, nm, om) = (ok(nabla_j(r))?, ok(nabla_m(r))?, ok(omega_mr(r))?);
        let r_i = r as i64;
        ensure!(nj.degree() == Some(2 * r_i - 2), "deg nabla_J_{r} = {:?}", nj.degree());
        ensure!(nm.degree() == Some(2 * r_i + 3), "deg nabla_M_{r} = {:?}", nm.degree());
        ensure!(ok(nj.eval(&[BigInt::from(0)]))?.is_one(), "nabla_J_{r}(0) != 1");
        ensure!(ok(om.eval(&[one.clone(), one.clone()]))?.is_one(), "Omega_M_{r}(1,1) != 1");
        let at_y1 = ok(om.specialize(1, &one))?;
        ensure!(at_y1 == ok(substitute_u(&nj, "x"))?, "Omega_M_{r}(x,1) != nabla_J(x - 1/x)");
    }
    Ok(())
}

fn c3_generating_function() -> Check {
    let n = 40;
    let lib = generating_function_coeffs(n);
    let mut nabla = vec![LaurentPoly::zero(&["z"])];
    for k in 1..=n {
        let p = ok(nabla_j(k))?;
        ensure!(p.degree().unwrap_or(0) <= 80, "z-degree above 80 at n = {k}");
        nabla.push(p);
    }
    for k in 0..=n {
        ensure!(lib[k] == nabla[k], "expansion differs at x^{k}");
    }
    // Oracle: (1 + z^2 x - z^2 x^2) G(x) = x (1/(1-x) + 1/(1+z^2 x) - 1).
    let z2 = z("z^2");
    for m in 1..=n {
        let mut lhs = nabla[m].clone();
        lhs = &lhs + &(&z2 * &nabla[m - 1]);
        if m >= 2 {
            lhs = &lhs - &(&z2 * &nabla[m - 2]);
        }
        let rhs = if m == 1 { z("1") } else { &z("1") + &(-&z2).pow(m as u32 - 1) };
        ensure!(lhs == rhs, "cleared-denominator identity fails at x^{m}");
    }
    Ok(())
}

fn c4_closed_forms() -> Check {
    let m1 = &xy("1") + &(&(&xy("x y + x^-1 y^-1") * &xy("x - x^-1")) * &xy("y - y^-1"));
    ensure!(ok(omega_mr(1))? == m1, "Omega_M_1 closed form");
    ensure!(mazur_from_relations() == m1, "Omega_M_1 from skein relations");
    ensure!(ok(nabla_j(2))? == z("1 - 2z^2"), "nabla_J_2");
    ensure!(ok(nabla_j(3))? == z("1 + 3z^4"), "nabla_J_3");
    ensure!(ok(nabla_m(1))? == z("z + 2z^3 + z^5"), "nabla_M_1");
    Ok(())
}

fn c5_rationality() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (m, n) = (3usize, 3usize);
    for case in 0..500 {
        let num: Vec<i64> = (0..=m).map(|_| rng.gen_range(-5..=5)).collect();
        let mut den: Vec<i64> = (0..=n).map(|_| rng.gen_range(-5..=5)).collect();
        den[0] = if rng.gen_bool(0.5) { 1 } else { -1 };
        let p = LaurentPoly::from_coeffs("x", 0, &num);
        let q = LaurentPoly::from_coeffs("x", 0, &den);
        let s = ok(TruncatedSeries::from_fraction(&p, &q, 2 * (m + n) + 2))?;
        let fit = ok(fit_rational(&s, RationalFitBound::new(m, n)))?
            .ok_or(format!("case {case}: no fit found"))?;
        if p.is_zero() {
            ensure!(fit.num().is_zero(), "case {case}: zero series");
        } else {
            ensure!(fit == ok(RationalSeries::new(p, q))?, "case {case}: wrong fraction");
        }
    }
    let x = |s: &str| LaurentPoly::parse(&["x"], s).unwrap();
    let (_, fit) = ok(counterexample_product(20))?;
    let fit = fit.ok_or("product counterexample has no fit")?;
    ensure!((fit.num(), fit.den()) == (&x("2"), &x("1 - x")), "product counterexample fit {fit:?}");
    let (_, fit) = ok(counterexample_mobius_sum(20))?;
    let fit = fit.ok_or("sum counterexample has no fit")?;
    ensure!((fit.num(), fit.den()) == (&x("2x"), &x("1 - 2x")), "sum counterexample fit {fit:?}");
    Ok(())
}

fn c6_non_fit() -> Check {
    let mut problems = Vec::new();
    let sum = ok(StageData::stages(Variant::Growth2, &[2, 10]).and_then(|s| accumulate_sum(&s, 10)))?;
    if let Some(f) = ok(fit_rational(&sum, RationalFitBound::new(3, 2)))? {
        problems.push(format!("growth2 (2,10) at order 10 fits ({})/({})", f.num(), f.den()));
    }
    let prod =
        ok(StageData::stages(Variant::Growth1, &[2, 100]).and_then(|s| accumulate_product(&s, 37)))?;
    if let Some(f) = ok(fit_rational(&prod, RationalFitBound::new(6, 2)))? {
        problems.push(format!("growth1 (2,100) at order 37 fits ({})/({})", f.num(), f.den()));
    }
    for (variant, a, b) in [(Variant::Growth1, 2, 100), (Variant::Growth2, 2, 10)] {
        let (holds, threshold, val) = ok(stage_divisibility(variant, a, b))?;
        if !holds {
            problems.push(format!("{variant:?} divisibility: valuation {val} < {threshold}"));
        }
    }
    ensure!(problems.is_empty(), "{}", problems.join("; "));
    Ok(())
}

fn c7_walgebra() -> Check {
    let x_diag = |p: &LaurentPoly| {
        let x = LaurentPoly::var(&["x"], 0);
        p.compose(&[x.clone(), x])
    };
    let mut corpus = vec![LinkData::hopf()];
    for r in 1..=8 {
        let l = ok(LinkData::mazur_cover(r))?;
        corpus.push(l.swapped());
        corpus.push(l.reversed());
        corpus.push(l);
    }
    for l in &corpus {
        let mho = ok(omega_to_w(&l.omega, l.lk))?;
        ensure!(ok(mho.to_omega())? == l.omega, "round trip fails for {}", l.name);
        let diag = ok(substitute_u(&mho.specialize_diagonal(), "x"))?;
        ensure!(diag == ok(x_diag(&l.omega))?, "diagonal specialization fails for {}", l.name);
    }
    for r in 1..=8 {
        let mho = ok(omega_to_w(&ok(omega_mr(r))?, 1))?;
        ensure!(&mho.specialize_diagonal() * &z("z") == ok(nabla_m(r))?, "z * diagonal != nabla_M_{r}");
    }
    let w = WElement::w();
    let w2 = w.mul(&w);
    let expect = ok(WElement::from_terms(
        1,
        [
            ((2, 0, false), BigInt::one()),
            ((0, 2, false), BigInt::one()),
            ((0, 0, false), BigInt::from(4)),
            ((1, 1, true), -BigInt::one()),
        ],
        None,
    ))?;
    ensure!(w2 == expect, "w^2 reduction gives {w2}");
    let wl = ok(w.to_omega())?;
    ensure!(ok(w2.to_omega())? == &wl * &wl, "w^2 disagrees with the Laurent square");
    for r in 1..=20 {
        let (lhs, rhs) = ok(cover_identity(r))?;
        ensure!(lhs == rhs, "cover identity fails at r = {r}");
    }
    Ok(())
}

fn reduced(l: &LinkData, order: u32) -> std::result::Result<WElement, String> {
    let mho = ok(omega_to_w(&l.omega, l.lk))?;
    ok(reduced_w(&mho, &l.knots[0], &l.knots[1], order))
}

fn c8_cochran() -> Check {
    let mut bad = Vec::new();
    for r in 1..=8usize {
        let order = 2 * r + 6;
        let l = ok(LinkData::mazur_cover(r))?.swapped();
        let u1 = ok(u1_component(&reduced(&l, order as u32 + 1)?))?;
        let num = fibonacci(r as i64).shift([r as i64, 0], &BigInt::one()).rename(&["v"]);
        let expect = ok(TruncatedSeries::from_fraction(&num, &ok(nabla_j(r))?.rename(&["v"]), order))?;
        if u1 != expect {
            let negated = u1.coeffs().iter().zip(expect.coeffs()).all(|(a, b)| a == &-b);
            bad.push(format!("r = {r}{}", if negated { " (off by sign -1)" } else { "" }));
        }
    }
    let order = 14;
    let l1 = ok(LinkData::mazur_cover(2))?.swapped();
    let l2 = ok(LinkData::mazur_cover(3))?.swapped();
    let (r1, r2, ry) = (reduced(&l1, order)?, reduced(&l2, order)?, reduced(&ok(splice(&l1, &l2))?, order)?);
    ensure!(r1.mul(&r2) == ry, "splice product path differs");
    let c = |e: &WElement| -> std::result::Result<TruncatedSeries, String> {
        ok(pk_expand(e, 1))?.cochran().cloned().ok_or("missing P_1".to_string())
    };
    ensure!(ok(cochran_splice_add(&c(&r1)?, &c(&r2)?))? == c(&ry)?, "Cochran additivity fails");
    ensure!(bad.is_empty(), "u^1-w component differs for {}", bad.join(", "));
    Ok(())
}

fn c9_groups() -> Check {
    let tg = GElement::t();
    for k in -3..=3 {
        for l in -3..=3 {
            for m in -3..=3 {
                for n in -3..=3 {
                    let g = GElement::new(k, HeisElement::new(l, m, n));
                    ensure!(tg.conj(&g) == t_conjugate_closed_form(&g), "closed form at {g}");
                }
            }
        }
    }
    let w = conj_t_vs_txy(6);
    ensure!(w.forced == (1, 0) && w.residual != 0, "system is consistent: {w:?}");
    ensure!(w.found.is_empty() && w.search_bound == 6, "search found {:?}", w.found);
    let tr = |s: &str| ok(Word::parse(s)).and_then(|w| ok(trefoil_word_translate(&w)));
    let (a, b) = (tr("x^2 y^-1")?, tr("x")?);
    let (la, lb) = (a.cyclic_reduce().len(), b.cyclic_reduce().len());
    ensure!((la, lb) == (6, 2), "alternation lengths {la} vs {lb}");
    ensure!(!freeprod_conjugate_test(&a, &b), "trefoil words reported conjugate");
    Ok(())
}

fn c10_module() -> Check {
    let red = ok(presentation_reduce_wild())?;
    ensure!(red.relator == displayed_relator(), "relator {}", red.relator);
    let c = wild_module_companion();
    ensure!(c.determinant().is_unit(), "determinant is not a unit");
    let inv = ok(c.inverse())?;
    ensure!(c.compose(&inv).is_identity() && inv.compose(&c).is_identity(), "action∘inverse != id");
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut done = 0;
    while done < 100 {
        let low = rng.gen_range(-3..=0);
        let coeffs: Vec<i64> = (0..rng.gen_range(1..=9)).map(|_| rng.gen_range(-4..=4)).collect();
        let p = LaurentPoly::from_coeffs("t", low, &coeffs);
        if p.is_zero() {
            continue;
        }
        ensure!(ok(annihilator_trivial_check(&p))?, "annihilator check fails for {p}");
        done += 1;
    }
    let delta = t("t^2 - t + 1");
    ensure!(ok(delta.eval(&[BigInt::one()]))?.abs().is_one(), "Delta(1) != ±1");
    let tre = ok(ModulePresentation::cyclic(delta))?;
    ensure!(ok(torsion_decide(&tre))?, "trefoil module not torsion");
    ensure!(ok(one_minus_t_invertible(&tre))?, "1 - t not invertible");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("oracle equivalence", Duration::from_secs(60), c1_oracles),
        ("degree and normalization facts", Duration::from_secs(30), c2_degrees),
        ("generating function", Duration::from_secs(60), c3_generating_function),
        ("known closed forms", Duration::from_secs(60), c4_closed_forms),
        ("rationality soundness and completeness", Duration::from_secs(30), c5_rationality),
        ("non-fit certification at desk orders", Duration::from_secs(300), c6_non_fit),
        ("w-algebra", Duration::from_secs(60), c7_walgebra),
        ("Cochran consistency", Duration::from_secs(60), c8_cochran),
        ("group suite", Duration::from_secs(60), c9_groups),
        ("module suite", Duration::from_secs(30), c10_module),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(r) => r,
            Err(_) => Err("panicked".to_string()),
        };
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > budget {
                Err(format!("took {elapsed:.1?}, budget {budget:?}"))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
