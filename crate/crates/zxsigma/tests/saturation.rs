mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use zxsigma::constants::SigmaConfig;
use zxsigma::lattice::*;
use zxsigma::pid::{ker_int, IntMat};
use zxsigma::poly::IntPoly;
use zxsigma::saturation::*;

const ID: SigmaConfig = SigmaConfig::Identity;

fn lat(n: usize, gens: &[LatVec]) -> GhnfBasis {
    ghnf(n, gens).unwrap()
}

fn x_lattice() -> Vec<LatVec> {
    cols(&[&["-x+2", "1", "1"], &["3*x+2", "1", "2*x+1"], &["0", "2*x", "x^2"]])
}

fn x_lattice_sat() -> Vec<LatVec> {
    cols(&[&["-x+2", "1", "0"], &["3*x+2", "-3", "2"], &["0", "4", "x-2"]])
}

fn z_lattice() -> Vec<LatVec> {
    cols(&[&["x^2+2*x-2", "x+2", "1"], &["0", "4", "2*x"]])
}

fn z_lattice_sat() -> Vec<LatVec> {
    cols(&[&["x^2+2*x-2", "x+2", "1", "-1"], &["0", "4", "2*x", "x^2-2"]])
}

fn shift_pair() -> Vec<LatVec> {
    cols(&[&["x-1", "-2", "0"], &["0", "2", "x-1"]])
}

/// `h ≡ ±target` modulo the lattice.
fn same_class(b: &GhnfBasis, h: &LatVec, target: &LatVec) -> bool {
    b.contains(&h.sub(target)) || b.contains(&h.add(target))
}

fn check_x_witness(b: &GhnfBasis, w: &SatWitnessX) {
    let coeffs: Vec<IntPoly> = w.e.iter().map(|a| IntPoly::constant(a.clone())).collect();
    assert_eq!(combine(b.dim(), &coeffs, b.columns()), w.h.shift(1));
    assert!(!b.contains(&w.h));
}

fn check_z_witness(b: &GhnfBasis, w: &SatWitnessZ) {
    assert_eq!(combine(b.dim(), &w.e, b.columns()), w.h.scale_int(&BigInt::from(w.k)));
    assert!(!b.contains(&w.h));
}

#[test]
fn xfactor_finds_the_printed_witness() {
    let c = lat(3, &x_lattice());
    let w = xfactor(&c);
    assert!(!w.is_empty());
    for x in &w {
        check_x_witness(&c, x);
    }
    let target = col(&["0", "2", "x-2"]);
    assert!(!c.contains(&target));
    assert!(w.iter().any(|x| same_class(&c, &x.h, &target)));
    assert!(xfactor(&lat(3, &x_lattice_sat())).is_empty());
    assert!(!is_saturated(&c, SatKind::X, ID));
}

#[test]
fn xfactor_of_a_shifted_unit() {
    let b = lat(1, &[col(&["x"])]);
    let w = xfactor(&b);
    assert_eq!(w, vec![SatWitnessX { h: col(&["1"]), e: vec![BigInt::one()] }]);
}

#[test]
fn sat_x_examples() {
    let s = sat_x(3, &x_lattice()).unwrap();
    assert!(s.lattice_equal(&lat(3, &x_lattice_sat())));
    assert!(is_saturated(&s, SatKind::X, ID));
    let c1 = lat(3, &x_lattice_sat());
    assert_eq!(sat_x(3, c1.columns()).unwrap(), c1);
    assert_eq!(sat_x(2, &[col(&["x^2", "0"])]).unwrap(), lat(2, &[col(&["1", "0"])]));
}

#[test]
fn zfactor_finds_the_printed_witness() {
    let c = lat(2, &z_lattice());
    let w = zfactor(&c);
    assert!(!w.is_empty());
    for x in &w {
        check_z_witness(&c, x);
    }
    let target = col(&["1-x", "x^3"]);
    assert!(w.iter().any(|x| x.k == 2 && same_class(&c, &x.h, &target)));
    assert!(zfactor(&lat(2, &z_lattice_sat())).is_empty());
    let two = lat(1, &[col(&["2"])]);
    let w = zfactor(&two);
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].k, 2);
    assert!(same_class(&two, &w[0].h, &col(&["1"])));
}

#[test]
fn sat_z_examples() {
    let s = sat_z(2, &z_lattice()).unwrap();
    assert!(s.basis.lattice_equal(&lat(2, &z_lattice_sat())));
    let input = lat(2, &z_lattice());
    for (g, m) in s.basis.columns().iter().zip(&s.multipliers) {
        assert!(input.contains(&g.scale_int(m)));
    }
    let c2 = lat(2, &z_lattice_sat());
    let again = sat_z(2, c2.columns()).unwrap();
    assert_eq!(again.basis, c2);
    assert!(again.multipliers.iter().all(One::is_one));

    let s = sat_z(1, &[col(&["2"]), col(&["x"])]).unwrap();
    assert_eq!(s.basis.columns(), &[col(&["1"])]);
    assert_eq!(s.multipliers, vec![BigInt::from(2)]);
}

#[test]
fn sat_m_examples() {
    let s = sat_m(1, &[col(&["2"])], ID).unwrap();
    assert!(s.lattice_equal(&lat(1, &[col(&["2"]), col(&["x-1"])])));
    assert!(is_saturated(&s, SatKind::M, ID));
    assert_eq!(sat_m(1, s.columns(), ID).unwrap(), s);
    let s = sat_m(1, &[col(&["3"])], SigmaConfig::Conjugation).unwrap();
    assert!(s.lattice_equal(&lat(1, &[col(&["3"]), col(&["x-2"])])));
    let support = cols(&[&["2", "x-1", "0", "0"], &["0", "0", "2", "x-1"]]);
    assert!(is_saturated(&lat(2, &support), SatKind::M, ID));
}

#[test]
fn sat_p_and_full_saturation() {
    let l = lat(2, &shift_pair());
    assert_eq!(sat_p(2, &shift_pair(), ID).unwrap(), l);
    assert!(is_saturated(&l, SatKind::P, ID));
    let full = sat_full(2, &shift_pair()).unwrap();
    assert!(full.lattice_equal(&lat(2, &cols(&[&["x-1", "-1"], &["0", "1"]]))));
    assert_eq!(sat_full(2, full.columns()).unwrap(), full);
    assert_eq!(sat_p(2, full.columns(), ID).unwrap(), full);
}

fn sat(kind: SatKind, n: usize, gens: &[LatVec]) -> GhnfBasis {
    match kind {
        SatKind::X => sat_x(n, gens).unwrap(),
        SatKind::Z => sat_z(n, gens).unwrap().basis,
        SatKind::M => sat_m(n, gens, ID).unwrap(),
        SatKind::P => sat_p(n, gens, ID).unwrap(),
    }
}

proptest! {
    #![proptest_config(seeded(200))]

    #[test]
    fn saturations_contain_and_are_idempotent((n, gens) in arb_gens(3)) {
        let l = lat(n, &gens);
        for kind in [SatKind::X, SatKind::Z, SatKind::M, SatKind::P] {
            let s = sat(kind, n, &gens);
            prop_assert!(l.columns().iter().all(|c| s.contains(c)));
            prop_assert_eq!(sat(kind, n, s.columns()), s.clone());
            prop_assert!(is_saturated(&s, kind, ID));
            prop_assert_eq!(s.rank(), l.rank());
        }
    }

    #[test]
    fn p_saturation_commutes((n, gens) in arb_gens(3)) {
        let xm = sat_x(n, sat_m(n, &gens, ID).unwrap().columns()).unwrap();
        let mx = sat_m(n, sat_x(n, &gens).unwrap().columns(), ID).unwrap();
        prop_assert_eq!(&xm, &mx);
        prop_assert_eq!(&xm, &sat_p(n, &gens, ID).unwrap());
        let c = SigmaConfig::Conjugation;
        let xm = sat_x(n, sat_m(n, &gens, c).unwrap().columns()).unwrap();
        let mx = sat_m(n, sat_x(n, &gens).unwrap().columns(), c).unwrap();
        prop_assert_eq!(&xm, &mx);
    }

    #[test]
    fn witnesses_are_sound((n, gens) in arb_gens(3)) {
        let l = lat(n, &gens);
        for w in xfactor(&l) {
            check_x_witness(&l, &w);
        }
        for w in zfactor(&l) {
            check_z_witness(&l, &w);
        }
        let tb = sat_z(n, &gens).unwrap();
        for (g, m) in tb.basis.columns().iter().zip(&tb.multipliers) {
            prop_assert!(l.contains(&g.scale_int(m)));
        }
    }

    #[test]
    fn x_saturation_matches_the_oracle((n, gens) in arb_gens(3), v in (1usize..=4).prop_flat_map(|n| arb_vec(n, 2, 5))) {
        let s = sat_x(n, &gens).unwrap();
        // Every combination of the columns with vanishing constant term is x times a member.
        let f = IntMat::new(n, s.columns().iter().map(LatVec::at_zero).collect());
        for e in ker_int(&f) {
            let coeffs: Vec<IntPoly> = e.iter().map(|a| IntPoly::constant(a.clone())).collect();
            let h = combine(n, &coeffs, s.columns()).unshift(1).unwrap();
            prop_assert!(member_oracle(s.columns(), &h, 4));
        }
        if v.dim() == n && member_oracle(s.columns(), &v.shift(1), 4) {
            prop_assert!(member_oracle(s.columns(), &v, 4));
        }
    }
}
