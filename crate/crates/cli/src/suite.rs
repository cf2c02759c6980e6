//! The acceptance matrix behind `twlab suite`.

use std::path::Path;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Deserialize;
use twlab_core::biring::{self, Biring};
use twlab_core::lawvere::{self, Caps, FiniteAlgebra, Theory};
use twlab_core::toycoh::{self, IsoLevel, SequenceRing};
use twlab_core::twmon::{self, FiniteMonoid, FunTw, MonoidPlethory, PolyTw};
use twlab_core::{FiniteCarrier, FiniteRing, Monomial, Polynomial, Report, Ring, Var};

use crate::commands::{decomposition_count_oracle, idempotents_by_squaring, parse_ring, Fallible};
use crate::report::{CliCase, CliReport};
use crate::Global;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteConfig {
    pub roster: Vec<String>,
    pub criteria: Vec<u8>,
    pub seed: Option<u64>,
    pub cap_carrier: Option<usize>,
    pub cogroup: Vec<u64>,
    pub monoids: Vec<usize>,
    /// Extra `[R, B]` pairs for the μ check.
    pub mu_bases: Vec<[String; 2]>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            roster: ["GF(2,1)", "GF(3,1)", "GF(2,2)", "GF(5,1)", "Z/4", "Z/6", "Z/9", "Z/10", "Z/12", "Z/2xZ/2"]
                .map(String::from)
                .to_vec(),
            criteria: (1..=10).collect(),
            seed: None,
            cap_carrier: None,
            cogroup: vec![2, 3, 4, 5],
            monoids: vec![2, 3],
            mu_bases: vec![["Z/6".into(), "Z/6xZ/2".into()]],
        }
    }
}

impl SuiteConfig {
    pub fn load(path: &Path) -> Fallible<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

type Job<'a> = Box<dyn Fn() -> Fallible<Vec<CliCase>> + Send + Sync + 'a>;

fn summarize(name: String, inputs: String, rep: &Report) -> CliCase {
    let total = rep.total();
    match rep.failures().next() {
        Some(c) => CliCase {
            name,
            inputs: format!("{inputs}: {} ({} of {total} cases failed)", c.input, rep.failed()),
            expected: format!("{}: {}", c.law, c.expected),
            got: c.got.clone(),
            pass: false,
        },
        None => CliCase {
            name,
            inputs,
            expected: format!("{total}/{total} cases"),
            got: format!("{}/{total} cases", rep.passed()),
            pass: total == rep.passed(),
        },
    }
}

fn compare(name: String, inputs: String, expected: String, got: String) -> CliCase {
    let pass = expected == got;
    CliCase { name, inputs, expected, got, pass }
}

/// What the coideal test must report for `(x^q - x)` over `r`, computed
/// from binomial coefficients and `r^q = r` directly.
fn coideal_oracle(r: &FiniteRing, q: u64) -> String {
    let mut binom = vec![BigInt::from(1)];
    for k in 1..=q {
        let prev = binom.last().unwrap().clone();
        binom.push(prev * BigInt::from(q + 1 - k) / BigInt::from(k));
    }
    let terms = (1..q).filter_map(|k| {
        let c = r.from_int(&binom[k as usize]);
        let m = Monomial::from_pairs([(Var::new("x"), (q - k) as u32), (Var::new("y"), k as u32)]);
        (!r.is_zero(&c)).then_some((m, c))
    });
    let p = Polynomial::from_terms(r, terms);
    if !p.is_zero() {
        return format!("coaddition leaves {p}");
    }
    for e in r.elements() {
        let v = r.sub(&r.pow(&e, q), &e);
        if !r.is_zero(&v) {
            return format!("counit at {} gives {}", r.label(&e), r.label(&v));
        }
    }
    "coideal".into()
}

fn coideal_outcome(r: &FiniteRing, q: u64) -> Fallible<String> {
    Ok(match Biring::new(r.clone()).is_coideal(q).map_err(|e| e.to_string())? {
        Ok(()) => "coideal".into(),
        Err(w) => biring::describe_witness(r, &w),
    })
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn jobs<'a>(cfg: &'a SuiteConfig, roster: &'a [FiniteRing], cap: usize, seed: u64) -> Fallible<Vec<Job<'a>>> {
    let mut out: Vec<Job<'a>> = Vec::new();
    let fields: Vec<&FiniteRing> = roster.iter().filter(|r| r.is_field()).collect();
    let small: Vec<FiniteRing> = roster.iter().filter(|r| r.size() <= 4).cloned().collect();
    let mut mu_pairs = Vec::new();
    for [a, b] in &cfg.mu_bases {
        mu_pairs.push((parse_ring(a)?, parse_ring(b)?));
    }
    for &c in &cfg.criteria {
        match c {
            1 => {
                for &r in &fields {
                    out.push(Box::new(move || {
                        let level = IsoLevel::for_order(r.size());
                        let rep = toycoh::tw_iso_check(r, level, cap).map_err(err)?;
                        Ok(vec![summarize(format!("c1 iso {r}"), format!("{r}, {level:?}"), &rep)])
                    }));
                }
            }
            2 => {
                let pairs: Vec<(FiniteRing, FiniteRing)> =
                    roster.iter().map(|r| (r.clone(), r.clone())).chain(mu_pairs.iter().cloned()).collect();
                for (r, b) in pairs {
                    out.push(Box::new(move || {
                        let v = toycoh::mu_is_bijection(&r, &b, cap).map_err(err)?;
                        let trivial = idempotents_by_squaring(&r).len() == 2;
                        let expected = if trivial { "bijection" } else { "not a bijection" };
                        let got = match (v.injective, v.bijection) {
                            (false, _) => "not injective",
                            (true, true) => "bijection",
                            (true, false) => "not a bijection",
                        };
                        Ok(vec![compare(format!("c2 mu {r} {b}"), format!("R={r}, B={b}"), expected.into(), got.into())])
                    }));
                }
            }
            3 => {
                for r in roster {
                    out.push(Box::new(move || {
                        let sr = SequenceRing::new(r.clone(), r);
                        let all = toycoh::decompositions(r, r.size(), cap).map_err(err)?;
                        let mut exceptions = 0;
                        for a in &all {
                            let (by_product, supported) = sr.idempotent_support(a).map_err(err)?;
                            exceptions += usize::from(by_product != supported);
                        }
                        Ok(vec![compare(
                            format!("c3 support {r}"),
                            format!("{r}, {} decompositions", all.len()),
                            "0 exceptions".into(),
                            format!("{exceptions} exceptions"),
                        )])
                    }));
                }
            }
            4 => {
                for r in roster {
                    out.push(Box::new(move || {
                        let q = r.size() as u64;
                        Ok(vec![compare(
                            format!("c4 coideal {r}"),
                            format!("{r}, q={q}"),
                            coideal_oracle(r, q),
                            coideal_outcome(r, q)?,
                        )])
                    }));
                }
            }
            5 => {
                for r in &small {
                    for theory in Theory::builtins() {
                        let r = r.clone();
                        out.push(Box::new(move || {
                            let alg = FiniteAlgebra::from_ring(&theory, &r).map_err(err)?;
                            let mut rep = Report::new(theory.name.clone());
                            for n in 0..=2 {
                                let gens: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
                                for op in theory.operations() {
                                    rep.absorb(
                                        lawvere::verify_coop_property(&theory, &op.symbol, &gens, &alg, 2, Caps::default())
                                            .map_err(err)?,
                                    );
                                }
                                rep.absorb(lawvere::hom_structures_agree(&theory, &gens, &alg, Caps::default()).map_err(err)?);
                            }
                            Ok(vec![summarize(
                                format!("c5 co-operations {} {r}", theory.name),
                                format!("{} on {r}, |S| <= 2, depth 2", theory.name),
                                &rep,
                            )])
                        }));
                    }
                }
            }
            6 => {
                for a in small.clone() {
                    let small = small.clone();
                    out.push(Box::new(move || {
                        let mut rep = Report::new("currying");
                        for s1 in 0..=2 {
                            for s2 in 0..=2 {
                                rep.absorb(twmon::currying_iso(s1, s2, &a, &small, cap as u128).map_err(err)?);
                            }
                        }
                        Ok(vec![summarize(format!("c6 currying {a}"), format!("A={a}, |S1|,|S2| <= 2"), &rep)])
                    }));
                }
            }
            7 => {
                for &r in fields.iter().filter(|r| r.size() <= 3) {
                    out.push(Box::new(move || {
                        let q = r.size() as u64;
                        let pt = PolyTw::over(r, Some(q)).map_err(err)?;
                        let carrier = pt.carrier().unwrap_or_default();
                        let poly = twmon::verify_tw_axioms(&pt, &carrier);
                        let ft = FunTw::new(r);
                        let fun = twmon::verify_tw_axioms(&ft, &ft.carrier());
                        let transport = twmon::eta_transport(r).map_err(err)?;
                        Ok(vec![
                            summarize(format!("c7 polynomial axioms {r}"), format!("{r}[x]/(x^{q} - x)"), &poly),
                            summarize(format!("c7 function axioms {r}"), format!("{r}^{r}"), &fun),
                            summarize(format!("c7 eta transport {r}"), r.to_string(), &transport),
                        ])
                    }));
                }
                for &n in &cfg.monoids {
                    out.push(Box::new(move || {
                        if n == 0 {
                            return Err("monoid order must be at least 1".into());
                        }
                        let mp = MonoidPlethory::new(FiniteMonoid::cyclic(n));
                        let samples = mp.samples(4, seed);
                        let rep = twmon::verify_tw_axioms(&mp, &samples);
                        Ok(vec![summarize(format!("c7 monoid axioms C{n}"), format!("C{n}, {} samples", samples.len()), &rep)])
                    }));
                }
            }
            8 => {
                for r in roster {
                    out.push(Box::new(move || {
                        let q = r.size() as u64;
                        let rep = twmon::descent_check(r, q, 32, seed).map_err(err)?;
                        let expected = if coideal_oracle(r, q) == "coideal" { "descends" } else { "does not descend" };
                        let got = if rep.is_pass() { "descends" } else { "does not descend" };
                        Ok(vec![compare(format!("c8 descent {r}"), format!("{r}, q={q}"), expected.into(), got.into())])
                    }));
                }
            }
            9 => {
                for &r in &fields {
                    out.push(Box::new(move || {
                        let t = toycoh::eta(r, &toycoh::delta0_poly(r)).map_err(err)?;
                        Ok(vec![compare(
                            format!("c9 delta0 {r}"),
                            r.to_string(),
                            toycoh::format_table(r, &toycoh::indicator(r, r.zero())),
                            toycoh::format_table(r, &t),
                        )])
                    }));
                }
                for r in roster {
                    out.push(Box::new(move || {
                        let count = toycoh::decompositions(r, r.size(), cap).map_err(err)?.len();
                        Ok(vec![compare(
                            format!("c9 decompositions {r}"),
                            format!("{r}, {} slots", r.size()),
                            decomposition_count_oracle(r, r.size()).to_string(),
                            count.to_string(),
                        )])
                    }));
                }
            }
            10 => {
                for &n in &cfg.cogroup {
                    out.push(Box::new(move || {
                        let count = twmon::cogroup_uniqueness(n, 1 << 20).map_err(err)?;
                        Ok(vec![compare(format!("c10 co-groups Z/{n}"), format!("Z/{n}"), "1".into(), count.to_string())])
                    }));
                }
            }
            other => return Err(format!("unknown criterion {other}; criteria are numbered 1 to 10")),
        }
    }
    Ok(out)
}

/// Runs the configured matrix. Jobs run on the current rayon pool; cases
/// are collected in job order.
pub fn run(config: Option<&Path>, global: &Global, rep: &mut CliReport) -> Fallible {
    let cfg = match config {
        Some(p) => SuiteConfig::load(p)?,
        None => SuiteConfig::default(),
    };
    let seed = cfg.seed.unwrap_or(global.seed);
    let cap = cfg.cap_carrier.unwrap_or(global.cap_carrier);
    rep.seed = seed;
    let roster: Vec<FiniteRing> = cfg.roster.iter().map(|s| parse_ring(s)).collect::<Fallible<_>>()?;
    if let Some(big) = roster.iter().find(|r| r.size() > cap) {
        return Err(format!("{big} has {} elements, above the carrier cap {cap}", big.size()));
    }
    let work = jobs(&cfg, &roster, cap, seed)?;
    let results: Vec<Fallible<Vec<CliCase>>> = work.par_iter().map(|job| job()).collect();
    for r in results {
        rep.cases.extend(r?);
    }
    rep.headline.push(format!(
        "suite: roster [{}], criteria {:?}, seed {seed}",
        cfg.roster.join(", "),
        cfg.criteria
    ));
    Ok(())
}
