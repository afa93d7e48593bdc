//! Dispatch from parsed arguments to the library.

use serde_json::{json, Value};
use zxsigma::binomial::{dec_binomial, parse_binomials, print_components};
use zxsigma::constants::SigmaConfig;
use zxsigma::lattice::{gker, ghnf, GhnfBasis, LatVec};
use zxsigma::laurent::{self, IdealResult, LaurentSystem, PartialCharacter};
use zxsigma::saturation::{is_saturated, sat_m, sat_p, sat_x, sat_z};
use zxsigma::text::{parse_matrix, print_matrix, Matrix};
use zxsigma::{Error, Result};

use crate::{json, Cli, Command, Input, Output};

pub fn input_of(c: &Command) -> &Input {
    use Command::*;
    match c {
        Ghnf(i) | Kernel(i) | Satx(i) | Satz(i) | Satm(i) | Satp(i) | Charset(i) | Proper(i) | ReflexiveClosure(i)
        | WellmixedClosure(i) | PerfectClosure(i) | IsPrime(i) | IsReflexive(i) | IsWellmixed(i) | IsPerfect(i)
        | DecLaurent(i) | DecBinomial(i) | Dimension(i) => i,
        IsSaturated { input, .. } | Member { input, .. } => input,
    }
}

struct Fmt {
    json: bool,
}

impl Fmt {
    fn emit(&self, text: String, value: Value, proper: bool) -> Output {
        let text = if self.json { format!("{value}\n") } else { text };
        Output { text, proper }
    }

    fn basis(&self, b: &GhnfBasis) -> Output {
        self.matrix(Matrix { n: b.dim(), columns: b.columns().to_vec(), multipliers: None })
    }

    fn matrix(&self, m: Matrix) -> Output {
        self.emit(print_matrix(&m), json::matrix(&m), true)
    }

    fn boolean(&self, b: bool) -> Output {
        self.emit(format!("{b}\n"), json!({ "result": b }), true)
    }

    fn unit(&self) -> Output {
        self.emit("unit\n".into(), json::unit(), false)
    }

    fn ideal(&self, r: IdealResult) -> Output {
        match r {
            IdealResult::Proper(rho) => self.emit(rho.to_string(), json::character(&rho), true),
            IdealResult::Unit => self.unit(),
        }
    }

    /// Apply `f` to the character of the system, or report Unit.
    fn with_character(&self, sys: &LaurentSystem, s: SigmaConfig, f: impl FnOnce(&PartialCharacter) -> Result<bool>) -> Result<Output> {
        match laurent::charset(sys.n, &sys.binomials, s)? {
            IdealResult::Proper(rho) => Ok(self.boolean(f(&rho)?)),
            IdealResult::Unit => Ok(self.unit()),
        }
    }
}

pub fn run(cli: &Cli, src: &str) -> Result<Output> {
    let s = cli.sigma;
    let out = Fmt { json: cli.json };
    use Command::*;
    match &cli.command {
        Ghnf(_) => {
            let m = parse_matrix(src)?;
            Ok(out.basis(&ghnf(m.n, &m.columns)?))
        }
        Kernel(_) => {
            let m = parse_matrix(src)?;
            let k = gker(m.n, &m.columns)?;
            let columns = k.into_iter().map(LatVec::new).collect();
            Ok(out.matrix(Matrix { n: m.columns.len(), columns, multipliers: None }))
        }
        Satx(_) => {
            let m = parse_matrix(src)?;
            Ok(out.basis(&sat_x(m.n, &m.columns)?))
        }
        Satz(_) => {
            let m = parse_matrix(src)?;
            let t = sat_z(m.n, &m.columns)?;
            Ok(out.matrix(Matrix { n: m.n, columns: t.basis.columns().to_vec(), multipliers: Some(t.multipliers) }))
        }
        Satm(_) => {
            let m = parse_matrix(src)?;
            Ok(out.basis(&sat_m(m.n, &m.columns, s)?))
        }
        Satp(_) => {
            let m = parse_matrix(src)?;
            Ok(out.basis(&sat_p(m.n, &m.columns, s)?))
        }
        IsSaturated { kind, .. } => {
            let m = parse_matrix(src)?;
            Ok(out.boolean(is_saturated(&ghnf(m.n, &m.columns)?, *kind, s)))
        }
        Charset(_) => {
            let sys = laurent::parse_laurent(src)?;
            Ok(out.ideal(laurent::charset(sys.n, &sys.binomials, s)?))
        }
        Proper(_) => {
            let sys = laurent::parse_laurent(src)?;
            Ok(out.boolean(!laurent::charset(sys.n, &sys.binomials, s)?.is_unit()))
        }
        Member { binomial, .. } => {
            let sys = laurent::parse_laurent(src)?;
            let b = laurent::parse_laurent(&format!("dim {}\n{binomial}", sys.n))?;
            let [b] = b.binomials.as_slice() else {
                return Err(Error::Parse { line: 1, col: 1, msg: "expected exactly one binomial".into() });
            };
            match laurent::charset(sys.n, &sys.binomials, s)? {
                IdealResult::Proper(rho) => Ok(out.boolean(laurent::member(b, &rho)?)),
                IdealResult::Unit => Ok(out.boolean(true)),
            }
        }
        ReflexiveClosure(_) => {
            let sys = laurent::parse_laurent(src)?;
            Ok(out.ideal(laurent::reflexive_closure(sys.n, &sys.binomials, s)?))
        }
        WellmixedClosure(_) => {
            let sys = laurent::parse_laurent(src)?;
            Ok(out.ideal(laurent::wellmixed_closure(sys.n, &sys.binomials, s)?))
        }
        PerfectClosure(_) => {
            let sys = laurent::parse_laurent(src)?;
            Ok(out.ideal(laurent::perfect_closure(sys.n, &sys.binomials, s)?))
        }
        IsPrime(_) => out.with_character(&laurent::parse_laurent(src)?, s, |r| Ok(laurent::is_prime(r))),
        IsReflexive(_) => out.with_character(&laurent::parse_laurent(src)?, s, |r| Ok(laurent::is_reflexive(r))),
        IsWellmixed(_) => out.with_character(&laurent::parse_laurent(src)?, s, laurent::is_wellmixed),
        IsPerfect(_) => out.with_character(&laurent::parse_laurent(src)?, s, laurent::is_perfect),
        DecLaurent(_) => {
            let sys = laurent::parse_laurent(src)?;
            let comps = laurent::dec_laurent(sys.n, &sys.binomials, s)?;
            Ok(out.emit(laurent::print_components(sys.n, &comps), json::characters(sys.n, &comps), true))
        }
        DecBinomial(_) => {
            let sys = parse_binomials(src)?;
            let comps = dec_binomial(sys.n, &sys.items, s)?;
            Ok(out.emit(print_components(sys.n, &comps), json::components(sys.n, &comps), true))
        }
        Dimension(_) => {
            let sys = laurent::parse_laurent(src)?;
            let Some(rho) = laurent::charset(sys.n, &sys.binomials, s)?.proper() else { return Ok(out.unit()) };
            match laurent::dimension(&rho) {
                Ok(d) => Ok(out.emit(format!("{d}\n"), json!({ "dimension": d }), true)),
                Err(Error::NotReflexivePrime) => {
                    Ok(out.emit("not reflexive prime\n".into(), json!({ "unit": false, "reflexive_prime": false }), false))
                }
                Err(e) => Err(e),
            }
        }
    }
}
