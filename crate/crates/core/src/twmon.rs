//! Tall–Wraith monoid instances and their verifiers.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::biring::{self, describe_witness, Biring, BiringError};
use crate::finring::{Element, FiniteRing};
use crate::poly::{Monomial, PolyError, Polynomial, Var};
use crate::report::Report;
use crate::ring::{FiniteCarrier, Integers, Ring};
use crate::toycoh::{self, PointwiseRing, Table, ToyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwError {
    #[error("not a monoid: {0}")]
    NotAMonoid(String),
    #[error("element does not belong to this instance")]
    InstanceMismatch,
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("modulus degree must be at least 2, got {0}")]
    InvalidModulusDegree(u64),
    #[error(transparent)]
    Biring(#[from] BiringError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Toy(#[from] ToyError),
}

/// A ring with a composition product, a unit for it, and the two
/// co-operations expressed through their legwise folds.
pub trait TallWraith {
    type Elem: Clone + Eq + Hash + Debug;
    type Scalar: Clone + Eq + Debug;

    fn name(&self) -> String;
    fn contains(&self, a: &Self::Elem) -> bool;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The unit for composition.
    fn unit(&self) -> Self::Elem;
    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `Σ (a′ ⊙ b)(a″ ⊙ c)` over `Δ⁺a = Σ a′ ⊗ a″`.
    fn coadd_fold(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem;
    /// `Σ (a′ ⊙ b)(a″ ⊙ c)` over `Δ^×a = Σ a′ ⊗ a″`.
    fn comul_fold(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem;
    fn scalars(&self) -> Vec<Self::Scalar>;
    fn constant(&self, s: &Self::Scalar) -> Self::Elem;
    fn counit(&self, a: &Self::Elem, s: &Self::Scalar) -> Self::Scalar;
    fn describe(&self, a: &Self::Elem) -> String;

    fn try_compose(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, TwError> {
        if self.contains(a) && self.contains(b) {
            Ok(self.compose(a, b))
        } else {
            Err(TwError::InstanceMismatch)
        }
    }
}

/// `R[x]` or `R[x]/(x^q - x)` under substitution.
#[derive(Clone, Debug)]
pub struct PolyTw<R: Ring> {
    biring: Biring<R>,
    scalars: Vec<R::Elem>,
}

impl<R: Ring> PolyTw<R> {
    pub fn new(biring: Biring<R>, scalars: Vec<R::Elem>) -> Self {
        PolyTw { biring, scalars }
    }

    pub fn biring(&self) -> &Biring<R> {
        &self.biring
    }

    fn reduce(&self, p: &Polynomial<R>) -> Polynomial<R> {
        self.biring.canonical(p, &[biring::x()])
    }

    fn fold(&self, delta: &Polynomial<R>, b: &Polynomial<R>, c: &Polynomial<R>) -> Polynomial<R> {
        let out = delta
            .substitute_some(&BTreeMap::from([(biring::x(), b.clone()), (biring::y(), c.clone())]))
            .expect("same ring");
        self.reduce(&out)
    }
}

impl PolyTw<FiniteRing> {
    /// Over a finite ring, with every element as a scalar.
    pub fn over(base: &FiniteRing, modulus: Option<u64>) -> Result<Self, TwError> {
        let b = match modulus {
            Some(q) => Biring::quotient(base.clone(), q)?,
            None => Biring::new(base.clone()),
        };
        Ok(PolyTw::new(b, base.elements()))
    }

    /// Every reduced element; requires a modulus.
    pub fn carrier(&self) -> Option<Vec<Polynomial<FiniteRing>>> {
        self.biring.quotient_elements()
    }
}

impl<R: Ring> TallWraith for PolyTw<R> {
    type Elem = Polynomial<R>;
    type Scalar = R::Elem;

    fn name(&self) -> String {
        match self.biring.modulus() {
            Some(q) => format!("polynomials mod x^{q} - x over {:?}", self.biring.base()),
            None => format!("polynomials over {:?}", self.biring.base()),
        }
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.ring() == self.biring.base() && a.vars().iter().all(|v| *v == biring::x()) && *a == self.reduce(a)
    }

    fn zero(&self) -> Self::Elem {
        Polynomial::zero(self.biring.base())
    }

    fn one(&self) -> Self::Elem {
        Polynomial::one(self.biring.base())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.reduce(&(a * b))
    }

    fn unit(&self) -> Self::Elem {
        self.biring.var()
    }

    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let out = a
            .substitute_some(&BTreeMap::from([(biring::x(), b.clone())]))
            .expect("same ring");
        self.reduce(&out)
    }

    fn coadd_fold(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.fold(&self.biring.coadd(a).expect("element of the instance"), b, c)
    }

    fn comul_fold(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.fold(&self.biring.comul(a).expect("element of the instance"), b, c)
    }

    fn scalars(&self) -> Vec<Self::Scalar> {
        self.scalars.clone()
    }

    fn constant(&self, s: &Self::Scalar) -> Self::Elem {
        Polynomial::constant(self.biring.base(), s.clone())
    }

    fn counit(&self, a: &Self::Elem, s: &Self::Scalar) -> Self::Scalar {
        self.biring.counit(a, s).expect("element of the instance")
    }

    fn describe(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
}

/// `R^R` under function composition.
#[derive(Clone, Debug)]
pub struct FunTw {
    ring: FiniteRing,
    fr: PointwiseRing,
}

impl FunTw {
    pub fn new(ring: &FiniteRing) -> Self {
        FunTw {
            ring: ring.clone(),
            fr: PointwiseRing::functions(ring),
        }
    }

    pub fn carrier(&self) -> Vec<Table> {
        self.fr.elements()
    }

    /// Expands a table on `R × R` over the basis `δ_{r₁} ⊗ δ_{r₂}` and folds.
    fn fold(&self, two: &Table, b: &Table, c: &Table) -> Table {
        let n = self.ring.size();
        let elems = self.ring.elements();
        let mut acc = self.fr.zero();
        for (i, r1) in elems.iter().enumerate() {
            let left = toycoh::compose(&self.ring, &toycoh::indicator(&self.ring, *r1), b).expect("table");
            for (j, r2) in elems.iter().enumerate() {
                let coeff = two[i * n + j];
                if self.ring.is_zero(&coeff) {
                    continue;
                }
                let right = toycoh::compose(&self.ring, &toycoh::indicator(&self.ring, *r2), c).expect("table");
                let term = self.fr.mul(&self.fr.constant(coeff), &self.fr.mul(&left, &right));
                acc = self.fr.add(&acc, &term);
            }
        }
        acc
    }
}

impl TallWraith for FunTw {
    type Elem = Table;
    type Scalar = Element;

    fn name(&self) -> String {
        format!("functions on {}", self.ring)
    }

    fn contains(&self, a: &Table) -> bool {
        self.fr.contains(a)
    }

    fn zero(&self) -> Table {
        self.fr.zero()
    }

    fn one(&self) -> Table {
        self.fr.one()
    }

    fn add(&self, a: &Table, b: &Table) -> Table {
        self.fr.add(a, b)
    }

    fn mul(&self, a: &Table, b: &Table) -> Table {
        self.fr.mul(a, b)
    }

    fn unit(&self) -> Table {
        toycoh::identity_fn(&self.ring)
    }

    fn compose(&self, a: &Table, b: &Table) -> Table {
        toycoh::compose(&self.ring, a, b).expect("table")
    }

    fn coadd_fold(&self, a: &Table, b: &Table, c: &Table) -> Table {
        self.fold(&toycoh::coadd_fn(&self.ring, a).expect("table"), b, c)
    }

    fn comul_fold(&self, a: &Table, b: &Table, c: &Table) -> Table {
        self.fold(&toycoh::comul_fn(&self.ring, a).expect("table"), b, c)
    }

    fn scalars(&self) -> Vec<Element> {
        self.ring.elements()
    }

    fn constant(&self, s: &Element) -> Table {
        self.fr.constant(*s)
    }

    fn counit(&self, a: &Table, s: &Element) -> Element {
        a[s.index()]
    }

    fn describe(&self, a: &Table) -> String {
        toycoh::format_table(&self.ring, a)
    }
}

/// A finite monoid with the identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    table: Vec<usize>,
}

impl FiniteMonoid {
    pub fn new(labels: Vec<String>, table: Vec<usize>) -> Result<Self, TwError> {
        let n = labels.len();
        if n == 0 || table.len() != n * n || table.iter().any(|&v| v >= n) {
            return Err(TwError::NotAMonoid("table shape".into()));
        }
        let m = FiniteMonoid { labels, table };
        for a in 0..n {
            if m.op(0, a) != a || m.op(a, 0) != a {
                return Err(TwError::NotAMonoid(format!("{} is not the identity", m.labels[0])));
            }
            for b in 0..n {
                for c in 0..n {
                    if m.op(m.op(a, b), c) != m.op(a, m.op(b, c)) {
                        return Err(TwError::NotAMonoid(format!(
                            "({0}{1}){2} != {0}({1}{2})",
                            m.labels[a], m.labels[b], m.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// `C_n = {e, g, …, g^{n-1}}`.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteMonoid::new(labels, table).expect("cyclic group")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size() + b]
    }
}

/// `ℤ[x_m : m ∈ M]` with `P ⊙ Q = P[x_m := σ_m(Q)]`, where `σ_m` is the ring
/// endomorphism `x_{m′} ↦ x_{m·m′}`.
#[derive(Clone, Debug)]
pub struct MonoidPlethory {
    monoid: FiniteMonoid,
    scalars: Vec<BigInt>,
}

impl MonoidPlethory {
    pub fn new(monoid: FiniteMonoid) -> Self {
        MonoidPlethory {
            monoid,
            scalars: (-2..=2).map(BigInt::from).collect(),
        }
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn var_name(m: usize) -> String {
        format!("x{m}")
    }

    pub fn generator(&self, m: usize) -> Polynomial<Integers> {
        Polynomial::var(&Integers, &Self::var_name(m))
    }

    fn vars(&self, prefix: &str) -> Vec<Var> {
        (0..self.monoid.size()).map(|m| Var::new(&format!("{prefix}{m}"))).collect()
    }

    /// `σ_m(Q)`.
    pub fn sigma(&self, m: usize, q: &Polynomial<Integers>) -> Polynomial<Integers> {
        let bindings = (0..self.monoid.size())
            .map(|k| (Var::new(&Self::var_name(k)), self.generator(self.monoid.op(m, k))))
            .collect();
        q.substitute_some(&bindings).expect("integer polynomials")
    }

    fn fold(&self, leg: impl Fn(&Polynomial<Integers>, &Polynomial<Integers>) -> Polynomial<Integers>, a: &Polynomial<Integers>, b: &Polynomial<Integers>, c: &Polynomial<Integers>) -> Polynomial<Integers> {
        let n = self.monoid.size();
        let xs = self.vars("x");
        let ys = self.vars("y");
        let split: BTreeMap<Var, Polynomial<Integers>> = (0..n)
            .map(|m| {
                let xm = Polynomial::var(&Integers, xs[m].name());
                let ym = Polynomial::var(&Integers, ys[m].name());
                (xs[m].clone(), leg(&xm, &ym))
            })
            .collect();
        let delta = a.substitute_some(&split).expect("integer polynomials");
        let mut legs = BTreeMap::new();
        for m in 0..n {
            legs.insert(xs[m].clone(), self.sigma(m, b));
            legs.insert(ys[m].clone(), self.sigma(m, c));
        }
        delta.substitute_some(&legs).expect("integer polynomials")
    }

    /// Generators, their pairwise sums, differences and products, a few
    /// constants, then `random` seeded polynomials of degree at most 2.
    pub fn samples(&self, random: usize, seed: u64) -> Vec<Polynomial<Integers>> {
        let n = self.monoid.size();
        let mut out = vec![
            Polynomial::zero(&Integers),
            Polynomial::one(&Integers),
            Polynomial::from_int(&Integers, -2),
        ];
        for i in 0..n {
            out.push(self.generator(i));
        }
        for i in 0..n {
            for j in i..n {
                let (a, b) = (self.generator(i), self.generator(j));
                out.push(&a * &b);
                if i != j {
                    out.push(&a + &b);
                    out.push(&a - &b);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..random {
            let mut terms = vec![(Monomial::one(), BigInt::from(rng.gen_range(-2..=2)))];
            for i in 0..n {
                terms.push((Monomial::var(Var::new(&Self::var_name(i))), BigInt::from(rng.gen_range(-2..=2))));
                for j in i..n {
                    let m = Monomial::from_pairs([
                        (Var::new(&Self::var_name(i)), 1),
                        (Var::new(&Self::var_name(j)), 1),
                    ]);
                    terms.push((m, BigInt::from(rng.gen_range(-1..=1))));
                }
            }
            out.push(Polynomial::from_terms(&Integers, terms));
        }
        out
    }
}

impl TallWraith for MonoidPlethory {
    type Elem = Polynomial<Integers>;
    type Scalar = BigInt;

    fn name(&self) -> String {
        format!("monoid plethory over a monoid of order {}", self.monoid.size())
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        let n = self.monoid.size();
        a.vars()
            .iter()
            .all(|v| (0..n).any(|m| v.name() == Self::var_name(m)))
    }

    fn zero(&self) -> Self::Elem {
        Polynomial::zero(&Integers)
    }

    fn one(&self) -> Self::Elem {
        Polynomial::one(&Integers)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }

    fn unit(&self) -> Self::Elem {
        self.generator(0)
    }

    fn compose(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let bindings = (0..self.monoid.size())
            .map(|m| (Var::new(&Self::var_name(m)), self.sigma(m, b)))
            .collect();
        a.substitute_some(&bindings).expect("integer polynomials")
    }

    fn coadd_fold(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.fold(|x, y| x + y, a, b, c)
    }

    fn comul_fold(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.fold(|x, y| x * y, a, b, c)
    }

    fn scalars(&self) -> Vec<BigInt> {
        self.scalars.clone()
    }

    fn constant(&self, s: &BigInt) -> Self::Elem {
        Polynomial::constant(&Integers, s.clone())
    }

    fn counit(&self, a: &Self::Elem, s: &BigInt) -> BigInt {
        let env = (0..self.monoid.size())
            .map(|m| (Var::new(&Self::var_name(m)), s.clone()))
            .collect();
        a.evaluate(&env).expect("all generators bound")
    }

    fn describe(&self, a: &Self::Elem) -> String {
        a.to_string()
    }
}

struct Memo<'a, T: TallWraith> {
    t: &'a T,
    table: HashMap<(T::Elem, T::Elem), T::Elem>,
}

impl<T: TallWraith> Memo<'_, T> {
    fn compose(&mut self, a: &T::Elem, b: &T::Elem) -> T::Elem {
        if let Some(v) = self.table.get(&(a.clone(), b.clone())) {
            return v.clone();
        }
        let v = self.t.compose(a, b);
        self.table.insert((a.clone(), b.clone()), v.clone());
        v
    }
}

/// Checks the monoid, left ring-compatibility and right co-compatibility
/// laws on every triple of samples.
pub fn verify_tw_axioms<T: TallWraith>(t: &T, samples: &[T::Elem]) -> Report {
    let mut report = Report::new(format!("Tall-Wraith axioms for {}", t.name()));
    let mut memo = Memo {
        t,
        table: HashMap::new(),
    };
    let unit = t.unit();
    let one = t.one();
    let d = |a: &T::Elem| t.describe(a);
    for a in samples {
        let (l, r) = (memo.compose(&unit, a), memo.compose(a, &unit));
        report.check("left unit", l == *a, || (d(a), d(a), d(&l)));
        report.check("right unit", r == *a, || (d(a), d(a), d(&r)));
        let o = memo.compose(&one, a);
        report.check("one", o == one, || (d(a), d(&one), d(&o)));
        for s in t.scalars() {
            let got = memo.compose(a, &t.constant(&s));
            let expected = t.constant(&t.counit(a, &s));
            report.check("counit", got == expected, || (format!("{} at {s:?}", d(a)), d(&expected), d(&got)));
        }
    }
    for a in samples {
        for b in samples {
            let ab = memo.compose(a, b);
            for c in samples {
                let ac = memo.compose(a, c);
                let bc = memo.compose(b, c);
                let left = memo.compose(&ab, c);
                let right = memo.compose(a, &bc);
                let input = || format!("{} | {} | {}", d(a), d(b), d(c));
                report.check("associativity", left == right, || (input(), d(&left), d(&right)));

                let got = memo.compose(&t.add(a, b), c);
                let expected = t.add(&ac, &bc);
                report.check("left additivity", got == expected, || (input(), d(&expected), d(&got)));
                let got = memo.compose(&t.mul(a, b), c);
                let expected = t.mul(&ac, &bc);
                report.check("left multiplicativity", got == expected, || (input(), d(&expected), d(&got)));

                let got = memo.compose(a, &t.add(b, c));
                let expected = t.coadd_fold(a, b, c);
                report.check("right coaddition", got == expected, || (input(), d(&expected), d(&got)));
                let got = memo.compose(a, &t.mul(b, c));
                let expected = t.comul_fold(a, b, c);
                report.check("right comultiplication", got == expected, || (input(), d(&expected), d(&got)));
            }
        }
    }
    report
}

/// `η(a ⊙ b) = η(a) ∘ η(b)` on every pair of reduced polynomials.
pub fn eta_transport(r: &FiniteRing) -> Result<Report, TwError> {
    let q = r.size() as u64;
    let poly = PolyTw::over(r, Some(q))?;
    let fun = FunTw::new(r);
    let carrier = poly.carrier().expect("modulus set");
    let tables: Vec<Table> = carrier.iter().map(|p| toycoh::eta(r, p)).collect::<Result<_, _>>()?;
    let mut report = Report::new(format!("eta transport over {r}"));
    for (a, ta) in carrier.iter().zip(&tables) {
        for (b, tb) in carrier.iter().zip(&tables) {
            let lhs = toycoh::eta(r, &poly.compose(a, b))?;
            let rhs = fun.compose(ta, tb);
            report.check("transport", lhs == rhs, || {
                (format!("{a} | {b}"), fun.describe(&rhs), fun.describe(&lhs))
            });
        }
    }
    Ok(report)
}

/// Checks that `(x^q - x)` descends: it is a coideal, and composing with
/// its elements stays inside it. The absorption laws are checked on a
/// spanning family plus `random` seeded samples, so they are a sampled
/// guarantee rather than a proof.
pub fn descent_check(base: &FiniteRing, q: u64, random: usize, seed: u64) -> Result<Report, TwError> {
    if q < 2 {
        return Err(TwError::InvalidModulusDegree(q));
    }
    let mut report = Report::new(format!("descent of x^{q} - x over {base}"));
    report.seed = Some(seed);
    let free = PolyTw::over(base, None)?;
    let b = Biring::new(base.clone());
    let verdict = b.is_coideal(q)?;
    report.check("coideal", verdict.is_ok(), || {
        (
            format!("x^{q} - x"),
            "coideal".into(),
            match &verdict {
                Ok(()) => "coideal".into(),
                Err(w) => describe_witness(base, w),
            },
        )
    });
    let f = b.defining_poly(q);
    let x = [biring::x()];
    let xp = |k: u64| Polynomial::var(base, "x").pow(k as u32);
    let mut family: Vec<(Polynomial<FiniteRing>, Polynomial<FiniteRing>)> = Vec::new();
    for k in 0..=q + 1 {
        for j in 0..=q {
            family.push((xp(k), xp(j)));
        }
    }
    let elems = base.elements();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_poly = |deg: u64| {
        Polynomial::from_terms(
            base,
            (0..=deg).map(|i| (Monomial::power(biring::x(), i as u32), elems[rng.gen_range(0..elems.len())])),
        )
    };
    for _ in 0..random {
        let p = random_poly(q + 1);
        let m = random_poly(2);
        family.push((p, m));
    }
    let zero = free.zero();
    for (p, m) in &family {
        let t = m * &f;
        let diff = &free.compose(p, &t) - &free.compose(p, &zero);
        let red = diff.reduce_xq(q, &x)?;
        report.check("right absorption", red.is_zero(), || {
            (format!("{p} | ({m})*({f})"), "0".into(), red.to_string())
        });
        let left = free.compose(&t, p).reduce_xq(q, &x)?;
        report.check("left absorption", left.is_zero(), || {
            (format!("({m})*({f}) | {p}"), "0".into(), left.to_string())
        });
    }
    report.note(format!(
        "absorption checked on {} pairs (spanning family plus {random} seeded samples)",
        family.len()
    ));
    Ok(report)
}

/// Brute-force unital ring homomorphisms `A → B`, as tables.
pub fn ring_homs(a: &FiniteRing, b: &FiniteRing, cap: u128) -> Result<Vec<Table>, TwError> {
    let candidates = (b.size() as u128).saturating_pow(a.size() as u32);
    if candidates > cap {
        return Err(TwError::CapExceeded {
            what: "hom search",
            size: candidates,
            cap,
        });
    }
    let ae = a.elements();
    let be = b.elements();
    let mut out = Vec::new();
    crate::lawvere::for_each_tuple(be.len(), ae.len(), |t| {
        let phi = |e: &Element| be[t[e.index()]];
        let ok = phi(&a.zero()) == b.zero()
            && phi(&a.one()) == b.one()
            && ae.iter().all(|x| {
                ae.iter().all(|y| {
                    phi(&a.add(x, y)) == b.add(&phi(x), &phi(y)) && phi(&a.mul(x, y)) == b.mul(&phi(x), &phi(y))
                })
            });
        if ok {
            out.push(ae.iter().map(phi).collect());
        }
        true
    });
    Ok(out)
}

fn curry(flat: &[Element], s1: usize, s2: usize) -> Vec<Table> {
    (0..s1).map(|i| flat[i * s2..(i + 1) * s2].to_vec()).collect()
}

/// Checks that currying `Set(S₁×S₂, A) → Set(S₁, Set(S₂, A))` is a ring
/// isomorphism for the pointwise structures, natural in `A` along every ring
/// homomorphism into the roster.
pub fn currying_iso(s1: usize, s2: usize, a: &FiniteRing, roster: &[FiniteRing], cap: u128) -> Result<Report, TwError> {
    let flat = PointwiseRing::new(a, s1 * s2);
    let size = flat.checked_size().map(|s| s as u128).unwrap_or(u128::MAX);
    if size > cap {
        return Err(TwError::CapExceeded {
            what: "function set",
            size,
            cap,
        });
    }
    let inner = PointwiseRing::new(a, s2);
    let nest = |u: &[Table], v: &[Table], f: &dyn Fn(&Table, &Table) -> Table| -> Vec<Table> {
        (0..s1).map(|i| f(&u[i], &v[i])).collect()
    };
    let to_nested = |f: &Table| curry(f, s1, s2);
    let mut report = Report::new(format!("currying {s1}x{s2} into {a}"));
    let elements = flat.elements();
    let images: Vec<Vec<Table>> = elements.iter().map(to_nested).collect();
    let distinct: std::collections::HashSet<&Vec<Table>> = images.iter().collect();
    let nested_count = (inner.size() as u128).pow(s1 as u32);
    report.check("bijection", distinct.len() as u128 == nested_count && elements.len() as u128 == nested_count, || {
        (
            format!("{} flat functions", elements.len()),
            nested_count.to_string(),
            distinct.len().to_string(),
        )
    });
    let nested_zero: Vec<Table> = vec![inner.zero(); s1];
    let nested_one: Vec<Table> = vec![inner.one(); s1];
    report.check_eq("zero", || "0".into(), &nested_zero, &to_nested(&flat.zero()));
    report.check_eq("one", || "1".into(), &nested_one, &to_nested(&flat.one()));
    for (f, cf) in elements.iter().zip(&images) {
        for (g, cg) in elements.iter().zip(&images) {
            let sum = to_nested(&flat.add(f, g));
            let expected = nest(cf, cg, &|u, v| inner.add(u, v));
            report.check("sum", sum == expected, || {
                (format!("{f:?} {g:?}"), format!("{expected:?}"), format!("{sum:?}"))
            });
            let prod = to_nested(&flat.mul(f, g));
            let expected = nest(cf, cg, &|u, v| inner.mul(u, v));
            report.check("product", prod == expected, || {
                (format!("{f:?} {g:?}"), format!("{expected:?}"), format!("{prod:?}"))
            });
        }
    }
    for target in roster {
        let homs = match ring_homs(a, target, 1 << 16) {
            Ok(h) => h,
            Err(e) => {
                report.note(format!("naturality into {target} skipped: {e}"));
                continue;
            }
        };
        for phi in &homs {
            let apply = |t: &Table| -> Table { t.iter().map(|e| phi[e.index()]).collect() };
            for (f, cf) in elements.iter().zip(&images) {
                let pushed = apply(f);
                let lhs = curry(&pushed, s1, s2);
                let rhs: Vec<Table> = cf.iter().map(apply).collect();
                report.check("naturality", lhs == rhs, || {
                    (format!("{f:?} along {phi:?} into {target}"), format!("{rhs:?}"), format!("{lhs:?}"))
                });
            }
        }
    }
    Ok(report)
}

/// Survivors `(a, b, c)` of the co-group search on `ℤ/n`: co-addition
/// `v ↦ (av, bv)`, the zero counit and co-inverse `v ↦ cv`.
pub fn cogroup_structures(n: u64, cap: u64) -> Result<Vec<(u64, u64, u64)>, TwError> {
    if n == 0 || n.saturating_pow(3) > cap {
        return Err(TwError::CapExceeded {
            what: "co-group search",
            size: (n as u128).pow(3),
            cap: cap as u128,
        });
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let alpha = |v: u64| (a * v % n, b * v % n);
            let coassoc = (0..n).all(|v| {
                let (l, r) = alpha(v);
                let (ll, lr) = alpha(l);
                let (rl, rr) = alpha(r);
                (ll, lr, r) == (l, rl, rr)
            });
            let counit = (0..n).all(|v| alpha(v) == (v, v));
            for c in 0..n {
                let coinverse = (0..n).all(|v| {
                    let (l, r) = alpha(v);
                    (c * l + r) % n == 0 && (l + c * r) % n == 0
                });
                if coassoc && counit && coinverse {
                    out.push((a, b, c));
                }
            }
        }
    }
    Ok(out)
}

/// Number of co-group structures on `ℤ/n` in the category of abelian groups.
pub fn cogroup_uniqueness(n: u64, cap: u64) -> Result<usize, TwError> {
    Ok(cogroup_structures(n, cap)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> FiniteRing {
        FiniteRing::parse(s).unwrap()
    }

    #[test]
    fn poly_compose_example() {
        let gf2 = ring("GF(2,1)");
        let t = PolyTw::over(&gf2, Some(2)).unwrap();
        let a = Polynomial::parse("x^2", &gf2).unwrap();
        let b = Polynomial::parse("x + 1", &gf2).unwrap();
        assert_eq!(t.compose(&a, &b), b);
        assert_eq!(t.compose(&b, &t.unit()), b);
        let alien = Polynomial::parse("x", &ring("Z/3")).unwrap();
        assert_eq!(t.try_compose(&alien, &b), Err(TwError::InstanceMismatch));
    }

    #[test]
    fn monoid_compose_example() {
        let t = MonoidPlethory::new(FiniteMonoid::cyclic(2));
        let g = t.generator(1);
        assert_eq!(t.compose(&g, &g), t.generator(0));
        let p = Polynomial::parse("x0*x1 + 2*x1", &Integers).unwrap();
        assert_eq!(t.compose(&p, &t.unit()), p);
        assert_eq!(t.compose(&t.unit(), &p), p);
    }

    #[test]
    fn monoid_validation() {
        let bad = FiniteMonoid::new(vec!["a".into(), "b".into()], vec![0, 0, 1, 1]);
        assert!(matches!(bad, Err(TwError::NotAMonoid(_))));
        assert_eq!(FiniteMonoid::cyclic(3).op(2, 2), 1);
    }

    #[test]
    fn axioms_polytw_gf2() {
        let t = PolyTw::over(&ring("GF(2,1)"), Some(2)).unwrap();
        let r = verify_tw_axioms(&t, &t.carrier().unwrap());
        assert!(r.is_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.tally("associativity").passed, 64);
    }

    #[test]
    fn axioms_funtw_gf2() {
        let t = FunTw::new(&ring("GF(2,1)"));
        let r = verify_tw_axioms(&t, &t.carrier());
        assert!(r.is_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn axioms_monoid_c2() {
        let t = MonoidPlethory::new(FiniteMonoid::cyclic(2));
        let r = verify_tw_axioms(&t, &t.samples(3, 1));
        assert!(r.is_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn trivial_monoid_collapses_to_polynomials() {
        let mp = MonoidPlethory::new(FiniteMonoid::cyclic(1));
        let pt = PolyTw::new(Biring::new(Integers), (-2..=2).map(BigInt::from).collect());
        let rename = |p: &Polynomial<Integers>| p.rename(&[("x0", "x")]);
        let samples = mp.samples(4, 9);
        for a in &samples {
            for b in &samples {
                assert_eq!(rename(&mp.compose(a, b)), pt.compose(&rename(a), &rename(b)));
            }
        }
    }

    #[test]
    fn transport_small() {
        assert!(eta_transport(&ring("GF(2,1)")).unwrap().is_pass());
    }

    #[test]
    fn descent_examples() {
        assert!(descent_check(&ring("GF(2,1)"), 2, 10, 3).unwrap().is_pass());
        assert!(descent_check(&ring("GF(3,1)"), 3, 10, 3).unwrap().is_pass());
        let r = descent_check(&ring("Z/6"), 6, 10, 3).unwrap();
        assert_eq!(r.tally("coideal").failed, 1);
        assert!(matches!(descent_check(&ring("Z/6"), 1, 0, 0), Err(TwError::InvalidModulusDegree(1))));
    }

    #[test]
    fn currying_examples() {
        let z2 = ring("Z/2");
        let r = currying_iso(1, 1, &z2, std::slice::from_ref(&z2), 4096).unwrap();
        assert!(r.is_pass());
        let z3 = ring("Z/3");
        let r = currying_iso(2, 2, &z3, std::slice::from_ref(&z3), 4096).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.tally("naturality").passed, 81);
        let z4 = ring("Z/4");
        let r = currying_iso(2, 0, &z4, &[z4.clone(), z2.clone()], 4096).unwrap();
        assert!(r.is_pass());
        assert_eq!(r.tally("sum").passed, 1);
    }

    #[test]
    fn ring_hom_search() {
        let z4 = ring("Z/4");
        let z2 = ring("Z/2");
        assert_eq!(ring_homs(&z4, &z2, 1 << 16).unwrap().len(), 1);
        assert_eq!(ring_homs(&z2, &z4, 1 << 16).unwrap().len(), 0);
        assert_eq!(ring_homs(&ring("GF(2,2)"), &ring("GF(2,2)"), 1 << 16).unwrap().len(), 2);
    }

    #[test]
    fn cogroup_counts() {
        for n in 2..=5 {
            assert_eq!(cogroup_uniqueness(n, 1 << 20).unwrap(), 1);
            assert_eq!(cogroup_structures(n, 1 << 20).unwrap(), vec![(1, 1, n - 1)]);
        }
    }
}
