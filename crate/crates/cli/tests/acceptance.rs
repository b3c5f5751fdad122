//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Sample sizes, seeds and time limits are pinned here.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use g2real::automorphism::{in_su, involution_conjugacy_classes, AutMap};
use g2real::composition::models::{zorn, HermitianSpace3};
use g2real::field::{first_irreducible_cubic, poly, CubicAlgebra, PrimeField, QuadraticEtale, Rationals};
use g2real::reality::{
    brute_force_reality_oracle, build_counterexample_sl3, build_counterexample_su, companion_factorization,
    companion_matrix, is_regular, random_sl3, reality_sl3, reality_su, semisimple_sl3, semisimple_su,
    symmetric_decomposition, unitriangular_family, Ambient, SplitSetting, UnitarySetting, Verdict, DEFAULT_BUDGET,
};
use g2real::{Field, GroundField, Matrix};
use g2real_cli::report::Check;
use g2real_cli::suites;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const SEED: u64 = 20_240_601;

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn f(q: u64) -> PrimeField {
    PrimeField::new(q).expect("prime")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn clean(c: &Check, what: &str, expected: u64) -> Result<(), String> {
    ensure(
        c.failed == 0 && c.passed == expected,
        format!("{what}: {} passed, {} failed, expected {expected}", c.passed, c.failed),
    )
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, format!("{what} took {elapsed:.2?}, limit {limit:?}"))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// ι₁² = ι₂² = 1 and ι₁ι₂ = t, checked directly on the 8×8 maps.
fn is_witness<F: GroundField>(pair: &(AutMap<F>, AutMap<F>), t: &AutMap<F>) -> bool {
    let (i1, i2) = pair;
    i1.is_involution() && i2.is_involution() && i1.compose(i2) == *t
}

fn composition_law() -> Outcome {
    const PAIRS: usize = 100_000;
    let start = Instant::now();
    let mut failures = vec![
        ("F5", zorn(f(5)).composition_failures(PAIRS, &mut rng(1))),
        ("F7", zorn(f(7)).composition_failures(PAIRS, &mut rng(2))),
    ];
    failures.push(("Q", zorn(Rationals).composition_failures(PAIRS, &mut rng(3))));
    let elapsed = start.elapsed();
    for (name, n) in &failures {
        ensure(*n == 0, format!("{n} failures over {name}"))?;
    }
    within(elapsed, Duration::from_secs(5), "3 x 1e5 pairs")?;
    Ok(format!("3 x {PAIRS} pairs, 0 failures, {elapsed:.2?}"))
}

fn minimal_equation_over<F: GroundField>(k: &F, salt: u64) -> Result<(), String> {
    const SAMPLES: u64 = 10_000;
    for (name, alg) in suites::models(k).map_err(err)? {
        ensure(alg.dim() == 8, format!("{name} has dimension {}", alg.dim()))?;
        let c = suites::minimal_equation(&alg, SAMPLES, &mut rng(salt));
        clean(&c, &format!("{name} over {}", k.spec()), 8 + SAMPLES)?;
    }
    Ok(())
}

fn minimal_equation() -> Outcome {
    minimal_equation_over(&f(7), 10)?;
    minimal_equation_over(&Rationals, 11)?;
    Ok("zorn, doubled, hermitian over F7 and Q: 8 basis + 1e4 random each".into())
}

fn embeddings() -> Outcome {
    const PAIRS: u64 = 1000;
    for q in [5, 7] {
        let k = f(q);
        let split = SplitSetting::zorn(k.clone()).map_err(err)?;
        clean(&suites::sl3_embedding(&split, PAIRS, &mut rng(20 + q)), &format!("sl3 over F{q}"), PAIRS)?;
        let l = QuadraticEtale::finite_extension(k).map_err(err)?;
        let unitary = UnitarySetting::hermitian(&HermitianSpace3::new(l, [1, 1, 1]).map_err(err)?).map_err(err)?;
        clean(&suites::su_embedding(&unitary, PAIRS, &mut rng(30 + q)), &format!("su over F{q}^2"), PAIRS)?;
    }
    Ok(format!("{PAIRS} certified product pairs each for sl3 and su over F5 and F7"))
}

fn rho() -> Outcome {
    const SAMPLES: u64 = 100;
    for q in [5, 7] {
        let split = SplitSetting::zorn(f(q)).map_err(err)?;
        clean(&suites::rho_action(&split, SAMPLES, &mut rng(40 + q)), &format!("rho over F{q}"), 1 + SAMPLES)?;
    }
    Ok(format!("rho^2 = 1, rho|L = sigma, {SAMPLES} transpose-inverse checks over F5 and F7"))
}

fn sl3_counterexample() -> Outcome {
    let start = Instant::now();
    let c = build_counterexample_sl3(7).map_err(err)?;
    let k = c.setting.field();
    ensure((c.omega, c.b) == (2, 2), format!("omega = {}, b = {}", c.omega, c.b))?;
    let r = reality_sl3(k, &c.b_matrix, DEFAULT_BUDGET).map_err(err)?;
    ensure(r.verdict == Verdict::NotReal, format!("criterion says {:?}", r.verdict))?;
    let o = brute_force_reality_oracle(Ambient::Split(&c.setting), &c.t, DEFAULT_BUDGET).map_err(err)?;
    ensure(o.verdict == Verdict::NotReal, format!("oracle says {:?}", o.verdict))?;
    ensure(o.candidates[1] == 343, format!("rho-coset span has {} elements", o.candidates[1]))?;
    let t = Matrix::from_rows(vec![vec![0, 0, 1], vec![0, 6, 0], vec![1, 0, 0]]);
    let conj = t.mul(k, &c.a).mul(k, &t.inverse(k).expect("invertible"));
    ensure(conj == c.a.transpose(), "antidiag(1,-1,1) does not conjugate A to its transpose")?;
    let value = r.obstruction.as_ref().map(|o| k.parse(&o.value)).transpose().map_err(err)?.ok_or("no obstruction")?;
    let ratio = k.mul(&value, &k.inv(&k.square(&c.b)).expect("nonzero"));
    ensure(k.pow(&ratio, 2) == 1, format!("obstruction {value} is not in the class of b^2"))?;
    let sym = symmetric_decomposition(k, &c.b_matrix, DEFAULT_BUDGET).map_err(err)?;
    ensure(sym.is_none(), "B has a symmetric det-1 conjugator")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "q = 7 reproduction")?;
    let obstruction = r.obstruction.map(|o| o.value).unwrap_or_default();
    Ok(format!("not_real ({obstruction}), oracle spans {:?}, {elapsed:.2?}", o.candidates))
}

fn su_counterexample() -> Outcome {
    let start = Instant::now();
    let c = build_counterexample_su(17).map_err(err)?;
    let l = c.setting.l();
    ensure(in_su(l, &[1, 1, 1], &c.a), "A is not in SU(3)")?;
    let root = [l.neg(&c.omega), l.one()];
    let cube = poly::mul(l, &poly::mul(l, &root, &root), &root);
    ensure(c.a.char_poly3(l) == cube && is_regular(l, &c.a), "minimal polynomial of A is not (X - omega)^3")?;
    let binv2 = l.square(&l.inv(&c.b).expect("unit"));
    ensure(l.is_cube(&binv2) == Some(false), "b^-2 is a cube in F289*")?;
    let r = reality_su(l, c.setting.gram(), &c.b_matrix, DEFAULT_BUDGET).map_err(err)?;
    ensure(r.verdict == Verdict::NotReal && r.obstruction.is_some(), format!("criterion says {:?}", r.verdict))?;
    let value = r.obstruction.as_ref().map(|o| l.parse(&o.value)).transpose().map_err(err)?.ok_or("no obstruction")?;
    // same class modulo cubes of L^1, which has order 18
    let ratio = l.mul(&value, &l.inv(&binv2).expect("unit"));
    ensure(l.is_one(&l.pow(&ratio, 6)), "obstruction is not in the class of b^-2")?;
    let quick = start.elapsed();
    within(quick, Duration::from_secs(1), "construction and criterion")?;

    let start = Instant::now();
    let o = brute_force_reality_oracle(Ambient::Unitary(&c.setting), &c.t, DEFAULT_BUDGET).map_err(err)?;
    let sweep = start.elapsed();
    ensure(o.verdict == Verdict::NotReal, format!("oracle says {:?}", o.verdict))?;
    ensure(o.candidates == [1, 17u64.pow(6)], format!("spans {:?}", o.candidates))?;
    within(sweep, Duration::from_secs(120), "exhaustive sweep")?;
    Ok(format!("not_real in {quick:.2?}; sweep of {} candidates agrees in {sweep:.2?}", o.candidates[1]))
}

fn cdk() -> Outcome {
    const TRIALS: usize = 200;
    for q in [5, 7] {
        let k = f(q);
        let s = SplitSetting::zorn(k.clone()).map_err(err)?;
        let mut rng = rng(70 + q);
        for i in 0..TRIALS {
            let a = semisimple_sl3(&k, &mut rng);
            let r = reality_sl3(&k, &a, DEFAULT_BUDGET).map_err(err)?;
            let (s1, s2) = r.decomposition.ok_or(format!("SL(3,F{q}) #{i}: {:?} without decomposition", r.verdict))?;
            let pair = s.two_involutions(&s1, &s2).map_err(err)?;
            ensure(is_witness(&pair, &s.embed(&a).map_err(err)?), format!("SL(3,F{q}) #{i}: witness fails"))?;
        }
    }
    let l = QuadraticEtale::finite_extension(f(5)).map_err(err)?;
    let s = UnitarySetting::hermitian(&HermitianSpace3::new(l.clone(), [1, 1, 1]).map_err(err)?).map_err(err)?;
    let mut rng = rng(77);
    for i in 0..TRIALS {
        let a = semisimple_su(&l, s.gram(), &mut rng);
        let r = reality_su(&l, s.gram(), &a, DEFAULT_BUDGET).map_err(err)?;
        let (a1, a2) = r.decomposition.ok_or(format!("SU(3) #{i}: {:?} without decomposition", r.verdict))?;
        let pair = s.two_involutions(&a1, &a2).map_err(err)?;
        ensure(is_witness(&pair, &s.embed(&a).map_err(err)?), format!("SU(3) #{i}: witness fails"))?;
    }
    Ok(format!("{TRIALS} each in SL(3,F5), SL(3,F7), SU(3,F25/F5): all real with witnesses"))
}

fn companion() -> Outcome {
    const TRIALS: usize = 100;
    let l = QuadraticEtale::finite_extension(f(5)).map_err(err)?;
    let mut rng = rng(80);
    let conj = |m: &Matrix<_>| m.map(|x| l.sigma(x));
    for i in 0..TRIALS {
        let a = l.random(&mut rng);
        let m = [l.neg(&l.one()), a.clone(), l.neg(&l.sigma(&a))];
        let (a1, a2) = companion_factorization(&l, &m).map_err(err)?;
        ensure(a1.mul(&l, &a2) == companion_matrix(&l, &m), format!("#{i}: A1 A2 is not the companion"))?;
        ensure(conj(&a1).mul(&l, &a1).is_identity(&l), format!("#{i}: conj(A1) A1 != I"))?;
        ensure(conj(&a2).mul(&l, &a2).is_identity(&l), format!("#{i}: conj(A2) A2 != I"))?;
    }
    Ok(format!("{TRIALS} self-dual cubics over F25"))
}

fn criterion_vs_oracle() -> Outcome {
    const WANTED: usize = 200;
    let k = f(7);
    let s = SplitSetting::zorn(k.clone()).map_err(err)?;
    let mut rng = rng(90);
    let (mut checked, mut irreducible, mut not_real) = (0, 0, 0);
    while checked < WANTED {
        let a = random_sl3(&k, &mut rng);
        let t = s.embed(&a).map_err(err)?;
        // the oracle covers elements whose fixed subalgebra is exactly L
        if !is_regular(&k, &a) || t.fixed_space().len() != 2 {
            continue;
        }
        let r = reality_sl3(&k, &a, DEFAULT_BUDGET).map_err(err)?;
        let o = brute_force_reality_oracle(Ambient::Split(&s), &t, DEFAULT_BUDGET).map_err(err)?;
        ensure(r.verdict == o.verdict, format!("{}: criterion {:?}, oracle {:?}", a.format(&k), r.verdict, o.verdict))?;
        irreducible += usize::from(poly::roots(&k, &r.char_poly).is_some_and(|v| v.is_empty()));
        not_real += usize::from(o.verdict == Verdict::NotReal);
        checked += 1;
    }
    ensure(irreducible > 0 && irreducible < WANTED, format!("{irreducible} irreducible of {WANTED}"))?;
    Ok(format!("{WANTED} regular elements agree ({irreducible} irreducible, {not_real} not real)"))
}

fn norm_quotients() -> Outcome {
    let mut tallies = Vec::new();
    for q in [5, 7] {
        let k = f(q);
        let cubic = first_irreducible_cubic(&k).ok_or("no irreducible cubic")?;
        let l = QuadraticEtale::finite_extension(k).map_err(err)?;
        let nq = CubicAlgebra::new(l, cubic).norm_quotient_report().map_err(err)?;
        ensure(nq.kstar_over_norm_fstar == 1, format!("|k*/N(F*)| = {} at q = {q}", nq.kstar_over_norm_fstar))?;
        ensure(nq.l1_over_norm_e1 == 1, format!("|L1/N(E1)| = {} at q = {q}", nq.l1_over_norm_e1))?;
        tallies.push(format!("q = {q}: |L1| = {}", nq.l1_order));
    }
    Ok(format!("both quotients trivial; {}", tallies.join(", ")))
}

fn unipotent() -> Outcome {
    let k = f(5);
    let s = SplitSetting::zorn(k.clone()).map_err(err)?;
    let family = unitriangular_family(&k);
    ensure(family.len() >= 100, format!("family has {} elements", family.len()))?;
    for a in &family {
        let r = reality_sl3(&k, a, DEFAULT_BUDGET).map_err(err)?;
        let (s1, s2) = r.decomposition.ok_or(format!("{}: no decomposition", a.format(&k)))?;
        let pair = s.two_involutions(&s1, &s2).map_err(err)?;
        ensure(is_witness(&pair, &s.embed(a).map_err(err)?), format!("{}: witness fails", a.format(&k)))?;
    }
    Ok(format!("{} unitriangular elements over F5, all with witnesses", family.len()))
}

fn involution_classes() -> Outcome {
    for q in [5, 7] {
        let alg = Arc::new(zorn(f(q)));
        let c = involution_conjugacy_classes(&alg, 2, SEED).map_err(err)?;
        ensure(c.classes == 1, format!("{} classes over F{q}", c.classes))?;
        ensure(!c.conjugators.is_empty(), format!("no conjugator over F{q}"))?;
        for (i, j, g) in &c.conjugators {
            ensure(g.is_certified(), format!("conjugator over F{q} is not certified"))?;
            ensure(c.involutions[*i].conjugate_by(g) == c.involutions[*j], format!("conjugator over F{q} fails"))?;
        }
    }
    Ok("one class over F5 and F7, conjugators verified".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("composition law", composition_law),
        ("minimal equation", minimal_equation),
        ("embedding homomorphisms", embeddings),
        ("rho properties", rho),
        ("split counterexample q=7", sl3_counterexample),
        ("unitary counterexample q=17", su_counterexample),
        ("semisimple elements are bireflectional", cdk),
        ("companion factorization", companion),
        ("criterion agrees with oracle", criterion_vs_oracle),
        ("norm quotients", norm_quotients),
        ("unipotent bireflectionality", unipotent),
        ("involution classes", involution_classes),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
