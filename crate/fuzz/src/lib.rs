//! Bodies of the fuzz targets. Every parser must reject bad input with an
//! error and never panic; whatever it accepts must survive a round trip.
//! The corpus replay test in `crates/cli` includes this file directly.

use g2real::composition::models::zorn;
use g2real::composition::{Algebra, AlgebraDescriptor};
use g2real::field::{first_irreducible_cubic, CubicRing, PrimeField, QuadraticEtale, Rationals};
use g2real::reality::{verify_sl3_witness, verify_su_witness, WitnessRecord};
use g2real::{Field, FieldSpec, GroundField, Matrix};
use g2real_cli::{RunReport, ScenarioConfig};

fn text(data: &[u8]) -> Option<&str> {
    std::str::from_utf8(data).ok()
}

fn round_trip<F: Field>(f: &F, s: &str) {
    if let Ok(x) = f.parse(s) {
        assert_eq!(f.parse(&f.format(&x)).expect("formatted element parses"), x, "{s:?}");
    }
}

pub fn field_elem(data: &[u8]) {
    let Some(s) = text(data) else { return };
    round_trip(&PrimeField::new(7).unwrap(), s);
    round_trip(&PrimeField::new(65_521).unwrap(), s);
    round_trip(&Rationals, s);
    if let Ok(spec) = s.parse::<FieldSpec>() {
        assert_eq!(spec.to_string().parse::<FieldSpec>().unwrap(), spec);
    }
}

pub fn quadratic_elem(data: &[u8]) {
    let Some(s) = text(data) else { return };
    round_trip(&QuadraticEtale::finite_extension(PrimeField::new(17).unwrap()).unwrap(), s);
    round_trip(&QuadraticEtale::field(Rationals, Rationals.from_i64(-1)).unwrap(), s);
}

pub fn cubic_elem(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let k = PrimeField::new(5).unwrap();
    let l = QuadraticEtale::finite_extension(k.clone()).unwrap();
    let modulus = first_irreducible_cubic(&k).unwrap().map(|c| l.embed(&c));
    let e = CubicRing::new(l, modulus);
    if let Ok(x) = e.parse(s) {
        assert_eq!(e.parse(&e.format(&x)).unwrap(), x);
    }
}

fn octonion_over<F: GroundField>(k: F, s: &str) {
    let alg = zorn(k);
    if let Ok(x) = alg.parse_elem(s) {
        assert_eq!(alg.parse_elem(&alg.format_elem(&x)).unwrap(), x);
    }
}

pub fn octonion(data: &[u8]) {
    let Some(s) = text(data) else { return };
    octonion_over(PrimeField::new(7).unwrap(), s);
    octonion_over(Rationals, s);
}

fn matrix_over<F: Field>(f: &F, s: &str) {
    if let Ok(m) = Matrix::parse(f, s) {
        assert_eq!(Matrix::parse(f, &m.format(f)).unwrap(), m);
    }
}

pub fn matrix(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let k = PrimeField::new(7).unwrap();
    matrix_over(&k, s);
    matrix_over(&QuadraticEtale::finite_extension(k).unwrap(), s);
    matrix_over(&Rationals, s);
}

pub fn scenario_config(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(cfg) = ScenarioConfig::parse(s) {
        let json = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<ScenarioConfig>(&json).unwrap(), cfg);
    }
}

pub fn run_report(data: &[u8]) {
    let Some(s) = text(data) else { return };
    if let Ok(r) = RunReport::from_json(s) {
        assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
        let _ = r.render();
    }
}

fn rebuild<F: GroundField>(k: F, d: &AlgebraDescriptor) {
    if let Ok(a) = Algebra::from_descriptor(k.clone(), d) {
        let again = Algebra::from_descriptor(k, &a.descriptor()).expect("own descriptor loads");
        assert_eq!(again.descriptor(), a.descriptor());
    }
}

pub fn algebra_descriptor(data: &[u8]) {
    let Ok(d) = serde_json::from_slice::<AlgebraDescriptor>(data) else { return };
    match d.field {
        FieldSpec::Prime(p) => {
            if let Ok(k) = PrimeField::new(p) {
                rebuild(k, &d);
            }
        }
        FieldSpec::Rationals(_) => rebuild(Rationals, &d),
    }
}

/// First line: a 3×3 matrix; the rest: a witness record as JSON.
pub fn witness_record(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Some((m, json)) = s.split_once('\n') else { return };
    let Ok(record) = serde_json::from_str::<WitnessRecord>(json) else { return };
    let k = PrimeField::new(7).unwrap();
    if let Ok(a) = Matrix::parse(&k, m) {
        if a.rows() == 3 && a.cols() == 3 {
            let _ = verify_sl3_witness(&k, &a, &record);
        }
    }
    let l = QuadraticEtale::finite_extension(PrimeField::new(5).unwrap()).unwrap();
    if let Ok(a) = Matrix::parse(&l, m) {
        if a.rows() == 3 && a.cols() == 3 {
            let _ = verify_su_witness(&l, &[1, 1, 1], &a, &record);
        }
    }
}
