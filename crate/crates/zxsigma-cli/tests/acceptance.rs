//! One PASS/FAIL line per acceptance criterion, each under five seconds.

#[path = "../../zxsigma/tests/common/mod.rs"]
mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use zxsigma::constants::{parse_const, x_minus_o, FieldConst, SigmaConfig};
use zxsigma::lattice::*;
use zxsigma::laurent::{self, LaurentBinomial};
use num_rational::BigRational;
use zxsigma::saturation::*;
use zxsigma::text::{parse_matrix, Matrix};

const ID: SigmaConfig = SigmaConfig::Identity;
const CONJ: SigmaConfig = SigmaConfig::Conjugation;
const LIMIT: Duration = Duration::from_secs(5);
const SEED: u8 = 0x5e;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn zx(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zxsigma"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::inherit())
        .spawn()
        .expect("spawn zxsigma");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    (o.status.code().unwrap_or(-1), String::from_utf8(o.stdout).unwrap())
}

fn zx_ok(args: &[&str], stdin: &str) -> Result<String, String> {
    match zx(args, stdin) {
        (0, out) => Ok(out),
        (code, out) => Err(format!("{args:?} exited with {code}: {out}")),
    }
}

/// Matrix text, one column per line, from rows as printed in the literature.
fn matrix_text(rows: &[&[&str]]) -> String {
    (0..rows[0].len()).map(|j| format!("[{}]\n", rows.iter().map(|r| r[j]).collect::<Vec<_>>().join(", "))).collect()
}

fn lattice_of(text: &str) -> Result<GhnfBasis, String> {
    let m: Matrix = parse_matrix(text).map_err(|e| e.to_string())?;
    ghnf(m.n, &m.columns).map_err(|e| e.to_string())
}

fn supports(text: &str) -> Result<(GhnfBasis, Vec<FieldConst>), String> {
    let sys = laurent::parse_laurent(text).map_err(|e| e.to_string())?;
    let sup: Vec<LatVec> = sys.binomials.iter().map(|b| b.support.clone()).collect();
    let b = ghnf(sys.n, &sup).map_err(|e| e.to_string())?;
    Ok((b, sys.binomials.into_iter().map(|b| b.constant).collect()))
}

fn x_saturation() -> Check {
    let c = matrix_text(&[&["-x+2", "1", "1"], &["3*x+2", "1", "2*x+1"], &["0", "2*x", "x^2"]]);
    let c1 = matrix_text(&[&["-x+2", "1", "0"], &["3*x+2", "-3", "2"], &["0", "4", "x-2"]]);
    let out = zx_ok(&["satx"], &c)?;
    let (got, want) = (lattice_of(&out)?, lattice_of(&c1)?);
    ensure!(got.lattice_equal(&want), "satx gave {out}");
    ensure!(got == want, "canonical forms differ: {out}");
    ensure!(zx_ok(&["is-saturated", "--kind", "x"], &c1)? == "true\n", "printed result not x-saturated");
    ensure!(zx_ok(&["is-saturated", "--kind", "x"], &c)? == "false\n", "input reported x-saturated");
    Ok(())
}

fn z_saturation() -> Check {
    let c = matrix_text(&[&["x^2+2*x-2", "x+2", "1"], &["0", "4", "2*x"]]);
    let c2 = matrix_text(&[&["x^2+2*x-2", "x+2", "1", "-1"], &["0", "4", "2*x", "x^2-2"]]);
    let out = zx_ok(&["satz"], &c)?;
    ensure!(lattice_of(&out)?.lattice_equal(&lattice_of(&c2)?), "satz gave {out}");
    let l = lattice_of(&c)?;
    let target = col(&["1-x", "x^3"]);
    let w = zfactor(&l);
    ensure!(
        w.iter().any(|x| x.k == 2 && (l.contains(&x.h.sub(&target)) || l.contains(&x.h.add(&target)))),
        "no witness congruent to (1-x, x^3) with k = 2"
    );
    for x in &w {
        ensure!(combine(2, &x.e, l.columns()) == x.h.scale_int(&BigInt::from(x.k)), "unsound witness");
    }
    Ok(())
}

fn c_sets() -> Check {
    let c = cols(&[&["6", "3*x", "0", "3", "2*x"], &["0", "0", "6", "3*x", "x^3+x"]]);
    let b = GhnfBasis::from_columns(2, c).map_err(|e| e.to_string())?;
    let (minus, inf) = enumerate_c(&b, 2);
    ensure!(minus == cols(&[&["6", "0", "3", "3*x"], &["0", "6", "3*x", "3*x^2"]]), "C_- differs");
    let want = cols(&[
        &["6", "3*x", "3*x^2", "3*x^3", "0", "3", "3*x", "2*x", "2*x^2", "2*x^3"],
        &["0", "0", "0", "0", "6", "3*x", "3*x^2", "x^3+x", "x^4+x^2", "x^5+x^3"],
    ]);
    ensure!(inf == want, "C_inf prefix differs");
    Ok(())
}

const TOWER: &str = "y1^(x^2-2) - 1\ny2^(x^2-2) - 1\ny1*y2^(-x)*y3^(2) - 1\n";

fn laurent_decomposition() -> Check {
    let out = zx_ok(&["dec-laurent"], TOWER)?;
    let comps = laurent::parse_components(&out, ID).map_err(|e| e.to_string())?;
    ensure!(comps.len() == 2, "expected two components, got {out}");
    let h = col(&["1", "-x", "x^2"]);
    let mut constants = Vec::new();
    for c in &comps {
        constants.push(c.value(&h).map_err(|e| e.to_string())?.ok_or("h outside a component lattice")?);
        let chain = laurent::print_laurent(&laurent::LaurentSystem { n: 3, binomials: c.chain() });
        ensure!(c.chain().iter().any(|b| b.support == h), "no generator on h");
        ensure!(zx_ok(&["is-prime"], &chain)? == "true\n", "component not prime");
        ensure!(zx_ok(&["is-reflexive"], &chain)? == "true\n", "component not reflexive");
    }
    constants.sort_by_key(FieldConst::canonical_key);
    ensure!(constants == vec![FieldConst::one(), FieldConst::minus_one()], "constants {constants:?}");
    Ok(())
}

fn binomial_decomposition() -> Check {
    let a = "y1^(x^2) - y1^2\ny2^(x^2) - y2^2\ny1*y3^2 - y2^(x)\n";
    let want = "dim 3
component
y1^(x^2) - y1^(2)
y2^(x^2) - y2^(2)
y1*y3^(2) - y2^(x)
y1*y3^(x^2) - y2^(x)
component
y1^(x^2) - y1^(2)
y2^(x^2) - y2^(2)
y1*y3^(2) - y2^(x)
y1*y3^(x^2) - zeta(2)*y2^(x)
component
zero y1 y2
component
zero y2 y3
nonzero y1
y1^(x^2) - y1^(2)
";
    let out = zx_ok(&["dec-binomial"], a)?;
    ensure!(out == want, "got\n{out}");
    Ok(())
}

fn cube_roots_of_unity() -> Check {
    for (sigma, o) in [("id", "x-1"), ("conj", "x-2")] {
        let out = zx_ok(&["--sigma", sigma, "wellmixed-closure"], "y^3 - 1\n".replace('y', "y1").as_str())?;
        let (b, cs) = supports(&out)?;
        let want = ghnf(1, &[col(&["3"]), col(&[o])]).unwrap();
        ensure!(b.lattice_equal(&want), "{sigma}: lattice of {out}");
        ensure!(cs.iter().all(FieldConst::is_one), "{sigma}: constants of {out}");
    }
    Ok(())
}

fn gaussian_pair() -> Check {
    let p = "y1^2 + 1\ny1^(x) - y1\ny2^2 + 1\ny2^(x) + y2\n";
    for cmd in ["wellmixed-closure", "perfect-closure"] {
        ensure!(zx(&[cmd], p) == (1, "unit\n".to_string()), "{cmd} is not unit");
    }
    let support = matrix_text(&[&["2", "x-1", "0", "0"], &["0", "0", "2", "x-1"]]);
    ensure!(zx_ok(&["is-saturated", "--kind", "m"], &support)? == "true\n", "support not M-saturated");
    Ok(())
}

fn perfect_lattice() -> Check {
    let c = cols(&[&["x-1", "-2", "0"], &["0", "2", "x-1"]]);
    let text = matrix_text(&[&["x-1", "-2", "0"], &["0", "2", "x-1"]]);
    ensure!(zx_ok(&["is-saturated", "--kind", "p"], &text)? == "true\n", "not P-saturated");
    let full = sat_full(2, &c).map_err(|e| e.to_string())?;
    let want = ghnf(2, &cols(&[&["x-1", "-1"], &["0", "1"]])).unwrap();
    ensure!(full == want, "sat_full is {:?}", full.columns());
    Ok(())
}

fn runner(salt: u8) -> TestRunner {
    TestRunner::new_with_rng(Config::default(), TestRng::from_seed(RngAlgorithm::ChaCha, &[SEED ^ salt; 32]))
}

fn sample<S: Strategy>(r: &mut TestRunner, s: &S) -> S::Value {
    s.new_tree(r).expect("strategy").current()
}

fn property_suite() -> Check {
    let mut r = runner(0);
    let consts: Vec<FieldConst> = ["1", "1", "-1", "2", "1/2", "zeta(3)", "2^(1/2)"].iter().map(|s| parse_const(s).unwrap()).collect();
    for case in 0..200 {
        let (n, g) = sample(&mut r, &arb_gens(3));
        let mults = sample(&mut r, &prop::collection::vec(arb_poly(2, 5), g.len()));
        let fail = |what: &str| format!("case {case}: {what} on n = {n}, {g:?}");

        let b = ghnf(n, &g).map_err(|e| e.to_string())?;
        ensure!(verify_ghnf(&b).is_empty(), "{}", fail("not a GHNF"));
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let s = s_vector(&b.columns()[i], &b.columns()[j]);
                ensure!(grem(&s, &b).unwrap().is_zero(), "{}", fail("Buchberger criterion"));
            }
        }
        ensure!(ghnf(n, b.columns()).unwrap() == b, "{}", fail("ghnf not idempotent"));
        let comb = combine(n, &mults, &g);
        let mut more = g.clone();
        more.push(comb.clone());
        more.reverse();
        ensure!(ghnf(n, &more).unwrap() == b, "{}", fail("ghnf depends on the generators"));

        let noise = LatVec::unit(n, case % n);
        for v in [&comb, &comb.add(&noise)] {
            let deg = v.entries().iter().filter_map(|e| e.degree()).max().unwrap_or(0);
            ensure!(b.contains(v) == member_oracle(b.columns(), v, deg + 4), "{}", fail("membership oracle"));
        }

        for kind in [SatKind::X, SatKind::Z, SatKind::M, SatKind::P] {
            let s = match kind {
                SatKind::X => sat_x(n, &g),
                SatKind::Z => sat_z(n, &g).map(|t| t.basis),
                SatKind::M => sat_m(n, &g, ID),
                SatKind::P => sat_p(n, &g, ID),
            }
            .map_err(|e| e.to_string())?;
            ensure!(g.iter().all(|c| s.contains(c)), "{}", fail("saturation containment"));
            ensure!(is_saturated(&s, kind, ID), "{}", fail("saturation not saturated"));
            ensure!(s.rank() == b.rank(), "{}", fail("saturation changed the rank"));
        }
        ensure!(sat_x(n, sat_x(n, &g).unwrap().columns()).unwrap() == sat_x(n, &g).unwrap(), "{}", fail("sat_x idempotence"));
        for s in [ID, CONJ] {
            let xm = sat_x(n, sat_m(n, &g, s).unwrap().columns()).unwrap();
            let mx = sat_m(n, sat_x(n, &g).unwrap().columns(), s).unwrap();
            ensure!(xm == mx, "{}", fail("sat_x and sat_m do not commute"));
        }

        for k in gker(n, &g).map_err(|e| e.to_string())? {
            ensure!(apply(n, &g, &k).is_zero(), "{}", fail("kernel element"));
        }

        let cs: Vec<FieldConst> = (0..g.len()).map(|i| consts[(case + 3 * i) % consts.len()].clone()).collect();
        let bs: Vec<LaurentBinomial> =
            g.iter().zip(cs).filter(|(f, _)| !f.is_zero()).map(|(f, c)| LaurentBinomial::new(f.clone(), c)).collect();
        let s = if case % 3 == 0 { CONJ } else { ID };
        let comps = laurent::dec_laurent(n, &bs, s).map_err(|e| e.to_string())?;
        for c in &comps {
            ensure!(laurent::is_reflexive(c) && laurent::is_prime(c), "{}", fail("component not reflexive prime"));
            ensure!(c.basis.lattice_equal(&comps[0].basis), "{}", fail("component lattices differ"));
        }
    }
    Ok(())
}

fn constants_suite() -> Check {
    for s in [ID, CONJ] {
        for m in 1..=12u64 {
            for k in 1..=5u64 {
                ensure!(s.o_m(k * m) % m == s.o_m(m) % m, "o_km mod m, {s} m = {m} k = {k}");
            }
            let e = x_minus_o(&BigInt::from(m), s);
            ensure!(FieldConst::zeta(m).pow_zx(&e, s).is_one(), "zeta({m})^(x - o_m) != 1 under {s}");
        }
    }
    let mut r = runner(1);
    let factor = (prop::sample::select(vec![2u64, 3, 5]), -6i64..=6, 1i64..=4)
        .prop_map(|(p, a, d)| FieldConst::prime_power(p, BigRational::new(a.into(), d.into())));
    let konst = (prop::collection::vec(factor, 0..=2), 0i64..12, 1i64..=12).prop_map(|(fs, t, m)| {
        fs.iter().fold(FieldConst::root_of_unity(BigRational::new(t.into(), m.into())), |a, f| a.mul(f))
    });
    for _ in 0..200 {
        let (a, b) = (sample(&mut r, &konst), sample(&mut r, &konst));
        let (e, f) = (sample(&mut r, &arb_poly(3, 10)), sample(&mut r, &arb_poly(3, 10)));
        let k = sample(&mut r, &(1u64..=12));
        for s in [ID, CONJ] {
            ensure!(a.mul(&b).pow_zx(&e, s) == a.pow_zx(&e, s).mul(&b.pow_zx(&e, s)), "pow_zx not multiplicative");
            ensure!(a.pow_zx(&(&e + &f), s) == a.pow_zx(&e, s).mul(&a.pow_zx(&f, s)), "pow_zx not additive");
            ensure!(a.pow_zx(&(&e * &f), s) == a.pow_zx(&e, s).pow_zx(&f, s), "pow_zx composition");
        }
        let roots = a.kth_roots(k);
        ensure!(roots.iter().all(|x| x.pow(&BigInt::from(k)) == a), "a k-th root of {a} is wrong");
        let distinct: std::collections::BTreeSet<String> = roots.iter().map(FieldConst::canonical_key).collect();
        ensure!(distinct.len() as u64 == k, "k-th roots of {a} not distinct");
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("x-saturation regression", x_saturation),
        ("Z-saturation regression", z_saturation),
        ("C-set enumeration", c_sets),
        ("Laurent decomposition", laurent_decomposition),
        ("binomial decomposition", binomial_decomposition),
        ("well-mixed closure of y^3 - 1", cube_roots_of_unity),
        ("Unit closures over an M-saturated lattice", gaussian_pair),
        ("P-saturation and full saturation", perfect_lattice),
        ("randomized property suite", property_suite),
        ("constants suite", constants_suite),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed();
        let res = res.and_then(|()| if dt < LIMIT { Ok(()) } else { Err(format!("took {dt:?}")) });
        match &res {
            Ok(()) => println!("PASS {}: {name} ({:.2} s)", i + 1, dt.as_secs_f64()),
            Err(e) => {
                println!("FAIL {}: {name} ({:.2} s): {e}", i + 1, dt.as_secs_f64());
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
