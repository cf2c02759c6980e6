use std::collections::BTreeMap;

use twlab_core::biring::{self, Biring};
use twlab_core::lawvere::{self, Caps, FiniteAlgebra, Theory};
use twlab_core::toycoh::{self, IsoLevel, SequenceRing};
use twlab_core::twmon::{self, FiniteMonoid, FunTw, MonoidPlethory, PolyTw};
use twlab_core::{FiniteCarrier, FiniteRing, Integers, Polynomial, Ring, Var};

use crate::report::CliReport;
use crate::{suite, BiringCmd, Cli, Command, LawvereCmd, Level, PolyCmd, RingCmd, ToyCmd, TwCmd};

pub type Fallible<T = ()> = Result<T, String>;

pub fn parse_ring(spec: &str) -> Fallible<FiniteRing> {
    FiniteRing::parse(spec).map_err(|e| format!("invalid ring `{spec}`: {e}"))
}

fn parse_field(spec: &str) -> Fallible<FiniteRing> {
    let r = parse_ring(spec)?;
    if !r.is_field() {
        return Err(format!("`{spec}` is not a field"));
    }
    Ok(r)
}

fn parse_theory(name: &str) -> Fallible<Theory> {
    match name.to_ascii_lowercase().as_str() {
        "monoid" => Ok(Theory::monoid()),
        "abgroup" => Ok(Theory::ab_group()),
        "commring" => Ok(Theory::comm_ring()),
        _ => {
            let text = std::fs::read_to_string(name)
                .map_err(|e| format!("`{name}` is neither monoid, abgroup, commring nor a readable theory file: {e}"))?;
            Theory::parse(&text).map_err(|e| format!("{name}: {e}"))
        }
    }
}

fn generator_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

/// Idempotents found by squaring every element.
pub fn idempotents_by_squaring(r: &FiniteRing) -> Vec<twlab_core::Element> {
    r.elements().into_iter().filter(|a| r.mul(a, a) == *a).collect()
}

fn modulus_for(r: &FiniteRing, q: Option<u64>) -> u64 {
    q.unwrap_or(r.size() as u64)
}

pub fn dispatch(cli: &Cli, rep: &mut CliReport) -> Fallible {
    let cap = cli.global.cap_carrier;
    let seed = cli.global.seed;
    match &cli.command {
        Command::Ring(cmd) => ring(cmd, rep),
        Command::Poly(args) => {
            if args.ring == "Z" {
                poly(&Integers, &args.op, rep)
            } else {
                poly(&parse_ring(&args.ring)?, &args.op, rep)
            }
        }
        Command::Biring(cmd) => biring(cmd, cap, rep),
        Command::Lawvere(cmd) => lawvere(cmd, rep),
        Command::Toy(cmd) => toy(cmd, cap, seed, rep),
        Command::Tw(cmd) => tw(cmd, cap, seed, rep),
        Command::Suite { config } => suite::run(config.as_deref(), &cli.global, rep),
    }
}

fn ring(cmd: &RingCmd, rep: &mut CliReport) -> Fallible {
    match cmd {
        RingCmd::Idempotents { ring } => {
            let r = parse_ring(ring)?;
            let got = r.format_set(&r.idempotents());
            rep.headline.push(got.clone());
            rep.compare("idempotents", ring.as_str(), r.format_set(&idempotents_by_squaring(&r)), got);
        }
        RingCmd::Info { ring } => {
            let r = parse_ring(ring)?;
            let units = r.elements().into_iter().filter(|a| r.inverse(*a).is_some()).count();
            rep.headline.push(format!(
                "{r}: size {}, characteristic {}, {}, {} units, idempotents {}, nilpotents {}",
                r.size(),
                r.characteristic(),
                if r.is_field() { "field" } else { "not a field" },
                units,
                r.format_set(&r.idempotents()),
                r.format_set(&r.nilpotents()),
            ));
            match r.verify_axioms() {
                Ok(status) => rep.case("axioms", ring.as_str(), "commutative unital ring", format!("{status:?}"), true),
                Err(why) => rep.case("axioms", ring.as_str(), "commutative unital ring", why, false),
            }
        }
        RingCmd::Irreducible { p, k } => {
            let f = twlab_core::finring::find_irreducible(*p, *k).map_err(|e| e.to_string())?;
            let text = twlab_core::finring::format_upoly(&f, "x");
            rep.headline.push(text.clone());
            let ok = f.len() == *k as usize + 1 && twlab_core::finring::is_irreducible(&f, *p);
            rep.case("irreducible", format!("p={p}, k={k}"), format!("monic irreducible of degree {k}"), text, ok);
        }
    }
    Ok(())
}

fn parse_poly<R: Ring>(ring: &R, text: &str) -> Fallible<Polynomial<R>> {
    Polynomial::parse(text, ring).map_err(|e| format!("invalid polynomial `{text}`: {e}"))
}

fn split_binding(b: &str) -> Fallible<(&str, &str)> {
    b.split_once('=')
        .map(|(v, t)| (v.trim(), t.trim()))
        .ok_or_else(|| format!("expected `var=value`, got `{b}`"))
}

fn round_trip<R: Ring>(ring: &R, p: &Polynomial<R>, rep: &mut CliReport) -> Fallible {
    let text = p.to_string();
    let back = parse_poly(ring, &text)?;
    rep.case("round trip", text.clone(), text, back.to_string(), back == *p);
    Ok(())
}

fn poly<R: Ring>(ring: &R, cmd: &PolyCmd, rep: &mut CliReport) -> Fallible {
    let result = match cmd {
        PolyCmd::Show { p } => parse_poly(ring, p)?,
        PolyCmd::Add { p, q } => {
            let (a, b) = (parse_poly(ring, p)?, parse_poly(ring, q)?);
            let sum = &a + &b;
            rep.compare("commutativity", format!("{a}; {b}"), sum.to_string(), (&b + &a).to_string());
            sum
        }
        PolyCmd::Mul { p, q } => {
            let (a, b) = (parse_poly(ring, p)?, parse_poly(ring, q)?);
            let prod = &a * &b;
            rep.compare("commutativity", format!("{a}; {b}"), prod.to_string(), (&b * &a).to_string());
            prod
        }
        PolyCmd::Subst { p, bindings } => {
            let a = parse_poly(ring, p)?;
            let mut map = BTreeMap::new();
            for b in bindings {
                let (v, t) = split_binding(b)?;
                map.insert(Var::new(v), parse_poly(ring, t)?);
            }
            a.substitute_some(&map).map_err(|e| e.to_string())?
        }
        PolyCmd::Eval { p, env } => {
            let a = parse_poly(ring, p)?;
            let mut values = BTreeMap::new();
            let mut consts = BTreeMap::new();
            for b in env {
                let (v, t) = split_binding(b)?;
                let c = parse_poly(ring, t)?;
                if !c.is_constant() {
                    return Err(format!("value for `{v}` is not a constant: `{t}`"));
                }
                values.insert(Var::new(v), c.constant_term());
                consts.insert(Var::new(v), c);
            }
            let value = a.evaluate(&values).map_err(|e| e.to_string())?;
            let by_subst = a.substitute(&consts).map_err(|e| e.to_string())?;
            rep.compare("evaluation", a.to_string(), by_subst.to_string(), Polynomial::constant(ring, value.clone()).to_string());
            rep.headline.push(ring.label(&value));
            return Ok(());
        }
        PolyCmd::Reduce { p, q } => {
            let a = parse_poly(ring, p)?;
            let vars: Vec<Var> = a.vars().into_iter().collect();
            let red = a.reduce_xq(*q, &vars).map_err(|e| e.to_string())?;
            let again = red.reduce_xq(*q, &vars).map_err(|e| e.to_string())?;
            rep.compare("idempotent", red.to_string(), red.to_string(), again.to_string());
            let bounded = vars.iter().all(|v| (red.degree_in(v) as u64) < *q);
            rep.case("degree bound", red.to_string(), format!("degree below {q} in each variable"), red.to_string(), bounded);
            red
        }
    };
    rep.headline.push(result.to_string());
    round_trip(ring, &result, rep)
}

fn biring(cmd: &BiringCmd, cap: usize, rep: &mut CliReport) -> Fallible {
    match cmd {
        BiringCmd::Coops { ring, p, q } => {
            let r = parse_ring(ring)?;
            let b = match q {
                Some(q) => Biring::quotient(r.clone(), *q).map_err(|e| e.to_string())?,
                None => Biring::new(r.clone()),
            };
            let a = b.canonical(&parse_poly(&r, p)?, &[biring::x()]);
            let coadd = b.coadd(&a).map_err(|e| e.to_string())?;
            let comul = b.comul(&a).map_err(|e| e.to_string())?;
            let coinv = b.coinverse(&a).map_err(|e| e.to_string())?;
            rep.headline.push(format!("coadd: {coadd}"));
            rep.headline.push(format!("comul: {comul}"));
            rep.headline.push(format!("coinverse: {coinv}"));
            let counits: Vec<String> = r
                .elements()
                .iter()
                .map(|e| b.counit(&a, e).map(|v| format!("{}->{}", r.label(e), r.label(&v))))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            rep.headline.push(format!("counits: {}", counits.join(" ")));
            let laws = b.verify_colaws(std::slice::from_ref(&a)).map_err(|e| e.to_string())?;
            rep.absorb("", &a.to_string(), &laws);
        }
        BiringCmd::Coideal { ring, q } => {
            let r = parse_ring(ring)?;
            let q = modulus_for(&r, *q);
            let got = match Biring::new(r.clone()).is_coideal(q).map_err(|e| e.to_string())? {
                Ok(()) => "coideal".to_string(),
                Err(w) => biring::describe_witness(&r, &w),
            };
            rep.headline.push(format!("(x^{q} - x) over {r}: {got}"));
            rep.compare("coideal", format!("{r}, q={q}"), "coideal", got);
        }
        BiringCmd::Colaws { ring, q } => {
            let r = parse_ring(ring)?;
            let q = modulus_for(&r, *q);
            let count = (r.size() as u128).checked_pow(q as u32).unwrap_or(u128::MAX);
            if count > cap as u128 {
                return Err(format!("{count} quotient elements exceed --cap-carrier {cap}"));
            }
            let b = Biring::quotient(r.clone(), q).map_err(|e| e.to_string())?;
            let sample = b.quotient_elements().unwrap_or_default();
            let laws = b.verify_colaws(&sample).map_err(|e| e.to_string())?;
            rep.absorb("", &format!("{r}[x]/(x^{q} - x)"), &laws);
        }
    }
    Ok(())
}

fn lawvere(cmd: &LawvereCmd, rep: &mut CliReport) -> Fallible {
    let caps = Caps::default();
    match cmd {
        LawvereCmd::Model { theory, ring } => {
            let t = parse_theory(theory)?;
            let r = parse_ring(ring)?;
            let alg = FiniteAlgebra::from_ring(&t, &r).map_err(|e| e.to_string())?;
            let found = alg.is_model(usize::MAX).map_err(|e| e.to_string())?;
            let got = found.map_or_else(|| "model".to_string(), |c| c.to_string());
            rep.compare("model", format!("{} on {r}", t.name), "model", got);
        }
        LawvereCmd::Coop { theory, ring, gens, depth, op } => {
            let t = parse_theory(theory)?;
            let r = parse_ring(ring)?;
            let alg = FiniteAlgebra::from_ring(&t, &r).map_err(|e| e.to_string())?;
            let names = generator_names(*gens);
            let symbols: Vec<String> = match op {
                Some(s) if t.arity(s).is_some() => vec![s.clone()],
                Some(s) => return Err(format!("{} has no operation `{s}`", t.name)),
                None => t.operations().iter().map(|o| o.symbol.clone()).collect(),
            };
            for s in &symbols {
                let coop = lawvere::co_operation_on_free(&t, s, &names).map_err(|e| e.to_string())?;
                for (g, term) in &coop {
                    rep.headline.push(format!("{s}: {g} -> {term}"));
                }
                let r2 = lawvere::verify_coop_property(&t, s, &names, &alg, *depth, caps).map_err(|e| e.to_string())?;
                rep.absorb("", &format!("{} on {r}, |S|={gens}, depth {depth}", t.name), &r2);
            }
        }
        LawvereCmd::Homs { theory, ring, gens } => {
            let t = parse_theory(theory)?;
            let r = parse_ring(ring)?;
            let alg = FiniteAlgebra::from_ring(&t, &r).map_err(|e| e.to_string())?;
            let r2 = lawvere::hom_structures_agree(&t, &generator_names(*gens), &alg, caps).map_err(|e| e.to_string())?;
            rep.absorb("", &format!("{} on {r}, |S|={gens}", t.name), &r2);
        }
    }
    Ok(())
}

/// Number of decompositions of 1 into `slots` orthogonal idempotents:
/// `slots^k` where `2^k` is the number of idempotents.
pub fn decomposition_count_oracle(r: &FiniteRing, slots: usize) -> u128 {
    let k = idempotents_by_squaring(r).len().trailing_zeros();
    (slots as u128).pow(k)
}

fn toy(cmd: &ToyCmd, cap: usize, seed: u64, rep: &mut CliReport) -> Fallible {
    match cmd {
        ToyCmd::Iso { field, level } => {
            let r = parse_field(field)?;
            let level = match level {
                Level::Auto => IsoLevel::for_order(r.size()),
                Level::Full => IsoLevel::Full,
                Level::Bijection => IsoLevel::BijectionOnly,
            };
            let r2 = toycoh::tw_iso_check(&r, level, cap).map_err(|e| e.to_string())?;
            rep.absorb("", &format!("{r}, {level:?}"), &r2);
        }
        ToyCmd::Mu { ring, base } => {
            let r = parse_ring(ring)?;
            let b = match base {
                Some(b) => parse_ring(b)?,
                None => r.clone(),
            };
            let v = toycoh::mu_is_bijection(&r, &b, cap).map_err(|e| e.to_string())?;
            let inputs = format!("R={r}, B={b}");
            rep.headline.push(format!(
                "mu: {} decompositions of B, {} of the sequence ring",
                v.domain, v.codomain
            ));
            rep.case("injective", inputs.as_str(), "true", v.injective.to_string(), v.injective);
            let got = match &v.witness {
                None => "bijection".to_string(),
                Some(w) => {
                    let sr = SequenceRing::new(b.clone(), &r);
                    let parts: Vec<String> = w.iter().map(|p| sr.label(p)).collect();
                    format!("not surjective, missing [{}]", parts.join(", "))
                }
            };
            rep.compare("bijection", inputs.as_str(), "bijection", got);
            let trivial = idempotents_by_squaring(&r).len() == 2;
            rep.compare("idempotent criterion", inputs, trivial.to_string(), v.bijection.to_string());
        }
        ToyCmd::Decompositions { ring, slots } => {
            let r = parse_ring(ring)?;
            let all = toycoh::decompositions(&r, *slots, cap).map_err(|e| e.to_string())?;
            for d in all.iter().take(16) {
                rep.headline.push(format!("({})", d.iter().map(|e| r.label(e)).collect::<Vec<_>>().join(", ")));
            }
            if all.len() > 16 {
                rep.headline.push(format!("... {} more", all.len() - 16));
            }
            rep.compare(
                "count",
                format!("{r}, {slots} slots"),
                decomposition_count_oracle(&r, *slots).to_string(),
                all.len().to_string(),
            );
        }
        ToyCmd::Support { ring } => {
            let r = parse_ring(ring)?;
            let sr = SequenceRing::new(r.clone(), &r);
            let mut mismatches = Vec::new();
            let all = toycoh::decompositions(&r, r.size(), cap).map_err(|e| e.to_string())?;
            for a in &all {
                let (by_product, supported) = sr.idempotent_support(a).map_err(|e| e.to_string())?;
                if by_product != supported {
                    mismatches.push(sr.label(a));
                }
            }
            rep.case(
                "idempotent iff supported",
                format!("{r}, {} decompositions", all.len()),
                "0 exceptions",
                format!("{} exceptions", mismatches.len()),
                mismatches.is_empty(),
            );
            rep.notes.extend(mismatches.into_iter().take(8).map(|m| format!("exception: {m}")));
        }
        ToyCmd::Delta0 { field } => {
            let r = parse_field(field)?;
            let p = toycoh::delta0_poly(&r);
            let t = toycoh::eta(&r, &p).map_err(|e| e.to_string())?;
            rep.compare(
                "indicator of zero",
                p.to_string(),
                toycoh::format_table(&r, &toycoh::indicator(&r, r.zero())),
                toycoh::format_table(&r, &t),
            );
        }
        ToyCmd::Kernel { field, lifts } => {
            let r = parse_field(field)?;
            let r2 = toycoh::kernel_is_principal(&r, *lifts, seed, cap).map_err(|e| e.to_string())?;
            rep.absorb("", &r.to_string(), &r2);
        }
    }
    Ok(())
}

fn tw(cmd: &TwCmd, cap: usize, seed: u64, rep: &mut CliReport) -> Fallible {
    let check_cap = |what: &str, n: u128| -> Fallible {
        if n > cap as u128 {
            Err(format!("{what} of size {n} exceeds --cap-carrier {cap}"))
        } else {
            Ok(())
        }
    };
    match cmd {
        TwCmd::Poly { ring, q } => {
            let r = parse_ring(ring)?;
            let len = q.unwrap_or(3) as u32;
            check_cap("sample", (r.size() as u128).saturating_pow(len))?;
            let t = PolyTw::over(&r, *q).map_err(|e| e.to_string())?;
            let samples = t.carrier().unwrap_or_else(|| biring::reduced_polynomials(&r, len as usize));
            let r2 = twmon::verify_tw_axioms(&t, &samples);
            rep.absorb("", &format!("{} samples", samples.len()), &r2);
        }
        TwCmd::Fun { ring } => {
            let r = parse_ring(ring)?;
            check_cap("function ring", (r.size() as u128).saturating_pow(r.size() as u32))?;
            let t = FunTw::new(&r);
            let r2 = twmon::verify_tw_axioms(&t, &t.carrier());
            rep.absorb("", &format!("{r}^{r}"), &r2);
        }
        TwCmd::Monoid { n, random } => {
            if *n == 0 {
                return Err("the cyclic monoid needs n >= 1".into());
            }
            let t = MonoidPlethory::new(FiniteMonoid::cyclic(*n));
            let samples = t.samples(*random, seed);
            let r2 = twmon::verify_tw_axioms(&t, &samples);
            rep.absorb("", &format!("C{n}, {} samples", samples.len()), &r2);
        }
        TwCmd::Transport { field } => {
            let r = parse_field(field)?;
            check_cap("function ring", (r.size() as u128).saturating_pow(r.size() as u32))?;
            let r2 = twmon::eta_transport(&r).map_err(|e| e.to_string())?;
            rep.absorb("", &r.to_string(), &r2);
        }
        TwCmd::Descent { ring, q, random } => {
            let r = parse_ring(ring)?;
            let q = modulus_for(&r, *q);
            let r2 = twmon::descent_check(&r, q, *random, seed).map_err(|e| e.to_string())?;
            rep.absorb("", &format!("{r}, q={q}"), &r2);
        }
        TwCmd::Curry { s1, s2, ring, with } => {
            let a = parse_ring(ring)?;
            let mut roster = vec![a.clone()];
            for w in with {
                let b = parse_ring(w)?;
                if !roster.contains(&b) {
                    roster.push(b);
                }
            }
            let r2 = twmon::currying_iso(*s1, *s2, &a, &roster, cap as u128).map_err(|e| e.to_string())?;
            rep.absorb("", &format!("|S1|={s1}, |S2|={s2}, A={a}"), &r2);
        }
        TwCmd::Cogroup { n } => {
            let found = twmon::cogroup_structures(*n, cap as u64).map_err(|e| e.to_string())?;
            for (a, b, c) in &found {
                rep.headline.push(format!("coaddition v -> ({a}v, {b}v), coinverse v -> {c}v"));
            }
            rep.compare("unique", format!("Z/{n}"), "1", found.len().to_string());
        }
    }
    Ok(())
}
