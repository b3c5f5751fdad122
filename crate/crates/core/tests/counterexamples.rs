use g2real::composition::models::HermitianSpace3;
use g2real::field::{PrimeField, QuadraticEtale};
use g2real::reality::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn sl3_counterexamples_are_not_real() {
    for q in [7, 13] {
        let c = build_counterexample_sl3(q).unwrap();
        let k = c.setting.field();
        let r = reality_sl3(k, &c.b_matrix, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::NotReal, "q = {q}");
        let o = brute_force_reality_oracle(Ambient::Split(&c.setting), &c.t, DEFAULT_BUDGET).unwrap();
        assert_eq!(o.verdict, Verdict::NotReal, "q = {q}");
        // A itself is conjugate to its inverse
        assert_eq!(reality_sl3(k, &c.a, DEFAULT_BUDGET).unwrap().verdict, Verdict::Real);
    }
}

#[test]
fn su_counterexample_at_17_is_not_real() {
    let c = build_counterexample_su(17).unwrap();
    let r = reality_su(c.setting.l(), c.setting.gram(), &c.b_matrix, DEFAULT_BUDGET).unwrap();
    assert_eq!(r.verdict, Verdict::NotReal);
    let o = brute_force_reality_oracle(Ambient::Unitary(&c.setting), &c.t, DEFAULT_BUDGET).unwrap();
    assert_eq!(o.verdict, Verdict::NotReal);
    assert_eq!(o.candidates, [1, 17u64.pow(6)]);
}

#[test]
fn split_criterion_agrees_with_oracle_over_f7() {
    let s = SplitSetting::zorn(PrimeField::new(7).unwrap()).unwrap();
    let k = s.field();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    let mut family = unitriangular_family(k);
    family.extend((0..40).map(|_| random_sl3(k, &mut rng)));
    for a in family {
        let t = s.embed(&a).unwrap();
        if t.fixed_space().len() != 2 || !is_regular(k, &a) {
            continue;
        }
        let r = reality_sl3(k, &a, DEFAULT_BUDGET).unwrap();
        let o = brute_force_reality_oracle(Ambient::Split(&s), &t, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, o.verdict, "{a:?}");
        checked += 1;
    }
    assert!(checked > 20, "only {checked} elements checked");
}

#[test]
fn unitary_criterion_agrees_with_oracle_over_f25() {
    let k = PrimeField::new(5).unwrap();
    let l = QuadraticEtale::finite_extension(k).unwrap();
    let s = UnitarySetting::hermitian(&HermitianSpace3::new(l.clone(), [1, 1, 1]).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut real = 0;
    for _ in 0..30 {
        let a = random_su(&l, s.gram(), &mut rng);
        let t = s.embed(&a).unwrap();
        if t.fixed_space().len() != 2 || !is_regular(&l, &a) {
            continue;
        }
        let r = reality_su(&l, s.gram(), &a, DEFAULT_BUDGET).unwrap();
        let o = brute_force_reality_oracle(Ambient::Unitary(&s), &t, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, o.verdict, "{a:?}");
        if o.verdict == Verdict::Real {
            real += 1;
            assert!(o.members.iter().sum::<u64>() > 0);
        }
    }
    assert!(real > 5);
}
