//! Parsers never panic and every accepted input prints back to itself.

mod common;

use common::*;
use proptest::prelude::*;
use zxsigma::binomial::{self, parse_binomials, print_binomials};
use zxsigma::constants::{parse_const, SigmaConfig};
use zxsigma::laurent::{self, parse_laurent, print_laurent};
use zxsigma::text::{parse_matrix, parse_poly, print_matrix};

const SEEDS: &[&str] = &[
    "3*x^2+4*x+1",
    "2^(1/2)*zeta(8)^3",
    "-3",
    "[-x+2, 3*x+2, 0]\n[1, 1, 2*x]\n",
    "# c\n[x^2+2*x-2, 0] mult 2\n[x+2, 4] mult 1\n",
    "y1^(x^2-2) - 1\ny1*y2^(-x)*y3^(2) - 1\n",
    "dim 2\ny1^(x)*y2^(-2) - 2^(1/2)\n",
    "y1^(x^2) - y1^2\ny1*y3^2 - y2^(x)\ny1*y2\n",
    "dim 3\ncomponent\nzero y2 y3\nnonzero y1\ny1^(x^2) - y1^(2)\n",
    "dim 1\ncomponent\ny1^(3) - 1\ny1^(x-1) - 1\n",
];

const ALPHABET: &[char] =
    &['y', 'x', '1', '2', '3', '0', '^', '(', ')', '*', '+', '-', '/', '[', ']', ',', ' ', '\n', '#', 'd', 'i', 'm', 'z', 'e', 't', 'a'];

/// A seed with a few characters inserted, deleted or replaced.
fn mutated() -> impl Strategy<Value = String> {
    let edit = (any::<prop::sample::Index>(), 0u8..3, prop::sample::select(ALPHABET.to_vec()));
    (prop::sample::select(SEEDS.to_vec()), prop::collection::vec(edit, 0..3)).prop_map(|(s, edits)| {
        let mut cs: Vec<char> = s.chars().collect();
        for (i, op, c) in edits {
            let k = i.index(cs.len() + 1);
            match op {
                0 => cs.insert(k, c),
                1 if k < cs.len() => {
                    cs.remove(k);
                }
                _ if k < cs.len() => cs[k] = c,
                _ => cs.push(c),
            }
        }
        cs.into_iter().collect()
    })
}

fn inputs() -> impl Strategy<Value = String> {
    prop_oneof![3 => mutated(), 1 => prop::collection::vec(prop::sample::select(ALPHABET.to_vec()), 0..40).prop_map(|v| v.into_iter().collect())]
}

proptest! {
    #![proptest_config(seeded(std::env::var("ZX_CASES").ok().and_then(|s| s.parse().ok()).unwrap_or(1000)))]

    #[test]
    fn parsers_round_trip(src in inputs()) {
        if let Ok(p) = parse_poly(&src) {
            prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
        if let Ok(c) = parse_const(&src) {
            prop_assert_eq!(parse_const(&c.to_string()).unwrap(), c);
        }
        if let Ok(m) = parse_matrix(&src) {
            prop_assert_eq!(parse_matrix(&print_matrix(&m)).unwrap(), m);
        }
        if let Ok(s) = parse_laurent(&src) {
            prop_assert_eq!(parse_laurent(&print_laurent(&s)).unwrap(), s);
        }
        if let Ok(s) = parse_binomials(&src) {
            prop_assert_eq!(parse_binomials(&print_binomials(&s)).unwrap(), s);
        }
        let s = SigmaConfig::Identity;
        if let Ok(cs) = laurent::parse_components(&src, s) {
            if let Some(n) = cs.first().map(|c| c.n) {
                prop_assert_eq!(laurent::parse_components(&laurent::print_components(n, &cs), s).unwrap(), cs);
            }
        }
        if let Ok(cs) = binomial::parse_components(&src, s) {
            if let Some(n) = cs.first().map(|c| c.n) {
                prop_assert_eq!(binomial::parse_components(&binomial::print_components(n, &cs), s).unwrap(), cs);
            }
        }
    }
}
