//! The function ring `R^R`, idempotent decompositions, the sequence ring and
//! the comparison maps `μ` and `η`.
//!
//! Functions on a finite set are stored as tables in canonical carrier order.
//! Tables on `R × R` use the index `i·|R| + j`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::biring::{self, Biring};
use crate::finring::{Element, FiniteRing};
use crate::poly::{PolyError, Polynomial, Var};
use crate::report::Report;
use crate::ring::{FiniteCarrier, Literal, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToyError {
    #[error("{0} is not a field")]
    NotAField(String),
    #[error("field of order {q} gives {q}^{q} functions, above the cap of {cap}")]
    FieldTooLarge { q: usize, cap: usize },
    #[error("base of size {size} exceeds the cap of {cap}")]
    BaseTooLarge { size: usize, cap: usize },
    #[error("expected {expected} slots, got {found}")]
    IndexMismatch { expected: usize, found: usize },
    #[error("function tables belong to different rings")]
    RingMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A function table `X → |R|`.
pub type Table = Vec<Element>;

/// Functions from a finite set of size `domain` into `R`, with pointwise
/// operations.
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseRing {
    base: FiniteRing,
    domain: usize,
}

impl PointwiseRing {
    pub fn new(base: &FiniteRing, domain: usize) -> Self {
        PointwiseRing {
            base: base.clone(),
            domain,
        }
    }

    /// `R^R`.
    pub fn functions(base: &FiniteRing) -> Self {
        Self::new(base, base.size())
    }

    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    /// `|R|^domain`, when it fits.
    pub fn checked_size(&self) -> Option<usize> {
        self.base.size().checked_pow(self.domain as u32)
    }

    pub fn constant(&self, c: Element) -> Table {
        vec![c; self.domain]
    }

    fn zip(&self, a: &Table, b: &Table, f: impl Fn(&Element, &Element) -> Element) -> Table {
        a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
    }
}

impl Ring for PointwiseRing {
    type Elem = Table;

    fn zero(&self) -> Table {
        self.constant(self.base.zero())
    }

    fn one(&self) -> Table {
        self.constant(self.base.one())
    }

    fn add(&self, a: &Table, b: &Table) -> Table {
        self.zip(a, b, |x, y| self.base.add(x, y))
    }

    fn mul(&self, a: &Table, b: &Table) -> Table {
        self.zip(a, b, |x, y| self.base.mul(x, y))
    }

    fn neg(&self, a: &Table) -> Table {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn from_int(&self, n: &num_bigint::BigInt) -> Table {
        self.constant(self.base.from_int(n))
    }

    fn contains(&self, a: &Table) -> bool {
        a.len() == self.domain && a.iter().all(|x| self.base.contains(x))
    }

    fn literal(&self, a: &Table) -> Literal {
        Literal::Encoded(a.iter().map(|e| e.index() as u64).collect())
    }

    fn from_literal(&self, lit: &Literal) -> Option<Table> {
        match lit {
            Literal::Int(n) => Some(self.from_int(n)),
            Literal::Encoded(v) if v.len() == self.domain => v
                .iter()
                .map(|&i| self.base.element(i as usize).ok())
                .collect(),
            Literal::Encoded(_) => None,
        }
    }

    fn label(&self, a: &Table) -> String {
        format_table(&self.base, a)
    }
}

impl FiniteCarrier for PointwiseRing {
    fn size(&self) -> usize {
        self.checked_size().expect("pointwise ring too large to enumerate")
    }

    /// Tables in lexicographic order of their entries.
    fn elements(&self) -> Vec<Table> {
        let elems = self.base.elements();
        let mut out = Vec::with_capacity(self.size());
        crate::lawvere::for_each_tuple(elems.len(), self.domain, |t| {
            out.push(t.iter().map(|&i| elems[i]).collect());
            true
        });
        out
    }
}

/// `(a,b,c)` using the ring's element labels.
pub fn format_table(r: &FiniteRing, t: &[Element]) -> String {
    let parts: Vec<String> = t.iter().map(|e| r.label(e)).collect();
    format!("({})", parts.join(","))
}

pub fn identity_fn(r: &FiniteRing) -> Table {
    r.elements()
}

/// `δ_c`: one at `c`, zero elsewhere.
pub fn indicator(r: &FiniteRing, c: Element) -> Table {
    r.elements()
        .into_iter()
        .map(|e| if e == c { r.one() } else { r.zero() })
        .collect()
}

fn check_fn(r: &FiniteRing, f: &[Element]) -> Result<(), ToyError> {
    if f.len() == r.size() && f.iter().all(|e| r.contains(e)) {
        Ok(())
    } else {
        Err(ToyError::RingMismatch)
    }
}

/// `f ∘ g`.
pub fn compose(r: &FiniteRing, f: &[Element], g: &[Element]) -> Result<Table, ToyError> {
    check_fn(r, f)?;
    check_fn(r, g)?;
    Ok(g.iter().map(|v| f[v.index()]).collect())
}

/// `f · g` for `g : X → |R|`, i.e. `x ↦ f(g(x))`.
pub fn module_action(r: &FiniteRing, f: &[Element], g: &[Element]) -> Result<Table, ToyError> {
    check_fn(r, f)?;
    if !g.iter().all(|e| r.contains(e)) {
        return Err(ToyError::RingMismatch);
    }
    Ok(g.iter().map(|v| f[v.index()]).collect())
}

fn binary_table(r: &FiniteRing, f: &[Element], op: impl Fn(&Element, &Element) -> Element) -> Table {
    let elems = r.elements();
    let mut out = Vec::with_capacity(elems.len() * elems.len());
    for a in &elems {
        for b in &elems {
            out.push(f[op(a, b).index()]);
        }
    }
    out
}

/// `(r₁, r₂) ↦ f(r₁ + r₂)`.
pub fn coadd_fn(r: &FiniteRing, f: &[Element]) -> Result<Table, ToyError> {
    check_fn(r, f)?;
    Ok(binary_table(r, f, |a, b| r.add(a, b)))
}

/// `(r₁, r₂) ↦ f(r₁ · r₂)`.
pub fn comul_fn(r: &FiniteRing, f: &[Element]) -> Result<Table, ToyError> {
    check_fn(r, f)?;
    Ok(binary_table(r, f, |a, b| r.mul(a, b)))
}

/// The table of a polynomial in `x`.
pub fn eta(r: &FiniteRing, p: &Polynomial<FiniteRing>) -> Result<Table, ToyError> {
    if p.ring() != r {
        return Err(PolyError::MixedCoefficientRings.into());
    }
    let x = Var::new("x");
    r.elements()
        .into_iter()
        .map(|e| p.evaluate(&BTreeMap::from([(x.clone(), e)])).map_err(ToyError::from))
        .collect()
}

/// The table on `R × R` of a polynomial in `x, y`.
pub fn eta2(r: &FiniteRing, p: &Polynomial<FiniteRing>) -> Result<Table, ToyError> {
    let (x, y) = (Var::new("x"), Var::new("y"));
    let elems = r.elements();
    let mut out = Vec::with_capacity(elems.len() * elems.len());
    for a in &elems {
        for b in &elems {
            out.push(p.evaluate(&BTreeMap::from([(x.clone(), *a), (y.clone(), *b)]))?);
        }
    }
    Ok(out)
}

/// `1 - x^{q-1}` for `q = |R|`.
pub fn delta0_poly(r: &FiniteRing) -> Polynomial<FiniteRing> {
    let q = r.size() as u32;
    let x = Polynomial::var(r, "x");
    &Polynomial::one(r) - &x.pow(q - 1)
}

fn require_field(r: &FiniteRing, cap: usize) -> Result<usize, ToyError> {
    if !r.is_field() {
        return Err(ToyError::NotAField(r.to_string()));
    }
    let q = r.size();
    match q.checked_pow(q as u32) {
        Some(n) if n <= cap => Ok(q),
        _ => Err(ToyError::FieldTooLarge { q, cap }),
    }
}

/// Checks that `η(P) = 0` exactly when `P ≡ 0 mod (x^q - x)`: exhaustively on
/// reduced polynomials, then on `lifts` random unreduced representatives.
pub fn kernel_is_principal(r: &FiniteRing, lifts: usize, seed: u64, cap: usize) -> Result<Report, ToyError> {
    let q = require_field(r, cap)?;
    let mut report = Report::new(format!("kernel of eta over {r}"));
    report.seed = Some(seed);
    let zero_fn = PointwiseRing::functions(r).zero();
    let reduced = biring::reduced_polynomials(r, q);
    for p in &reduced {
        let t = eta(r, p)?;
        report.check("reduced", (t == zero_fn) == p.is_zero(), || {
            (p.to_string(), (!p.is_zero()).to_string(), (t != zero_fn).to_string())
        });
    }
    let b = Biring::new(r.clone());
    let f = b.defining_poly(q as u64);
    let x = [Var::new("x")];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elems = r.elements();
    for _ in 0..lifts {
        let p = &reduced[rng.gen_range(0..reduced.len())];
        let deg = rng.gen_range(0..=q);
        let m = Polynomial::from_terms(
            r,
            (0..=deg).map(|i| {
                (
                    crate::poly::Monomial::power(Var::new("x"), i as u32),
                    elems[rng.gen_range(0..elems.len())],
                )
            }),
        );
        let lift = p + &(&m * &f);
        let (tl, tp) = (eta(r, &lift)?, eta(r, p)?);
        let back = lift.reduce_xq(q as u64, &x)?;
        let pass = tl == tp && back == *p && ((tl == zero_fn) == back.is_zero());
        report.check("lift", pass, || (lift.to_string(), p.to_string(), back.to_string()));
    }
    Ok(report)
}

/// Whether `parts` are pairwise orthogonal idempotents summing to one.
pub fn is_decomposition<B: Ring>(b: &B, parts: &[B::Elem]) -> bool {
    if !parts.iter().all(|e| b.contains(e) && b.mul(e, e) == *e) {
        return false;
    }
    for (i, e) in parts.iter().enumerate() {
        for f in &parts[i + 1..] {
            if !b.is_zero(&b.mul(e, f)) {
                return false;
            }
        }
    }
    b.is_one(&b.sum(parts))
}

/// All decompositions of one into `slots` pairwise orthogonal idempotents,
/// lexicographic in the canonical order of idempotents.
pub fn decompositions<B: FiniteCarrier>(b: &B, slots: usize, cap: usize) -> Result<Vec<Vec<B::Elem>>, ToyError> {
    if b.size() > cap {
        return Err(ToyError::BaseTooLarge { size: b.size(), cap });
    }
    if slots == 0 {
        return Ok(if b.is_one(&b.zero()) { vec![Vec::new()] } else { Vec::new() });
    }
    let idem = b.idempotents();
    let pos: HashMap<&B::Elem, usize> = idem.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = idem.len();
    // sum_of[i][j] is the index of e_i + e_j when e_i e_j = 0.
    let mut sum_of = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            if b.is_zero(&b.mul(&idem[i], &idem[j])) {
                sum_of[i * n + j] = pos.get(&b.add(&idem[i], &idem[j])).copied();
            }
        }
    }
    let zero = pos[&b.zero()];
    let one = b.one();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(slots);
    fn go<E: Clone>(
        idem: &[E],
        sum_of: &[Option<usize>],
        last: &dyn Fn(usize) -> usize,
        slots: usize,
        acc: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<E>>,
    ) {
        let n = idem.len();
        if chosen.len() + 1 == slots {
            chosen.push(last(acc));
            out.push(chosen.iter().map(|&i| idem[i].clone()).collect());
            chosen.pop();
            return;
        }
        for e in 0..n {
            if let Some(next) = sum_of[acc * n + e] {
                chosen.push(e);
                go(idem, sum_of, last, slots, next, chosen, out);
                chosen.pop();
            }
        }
    }
    let complement = |acc: usize| pos[&b.sub(&one, &idem[acc])];
    go(&idem, &sum_of, &complement, slots, zero, &mut chosen, &mut out);
    Ok(out)
}

struct SeqData<B: FiniteCarrier> {
    base: B,
    index: FiniteRing,
    index_elems: Vec<Element>,
    carrier: OnceLock<Vec<Vec<B::Elem>>>,
}

/// Decompositions of `base` indexed by the carrier of `index`, under the
/// convolution operations.
pub struct SequenceRing<B: FiniteCarrier>(Arc<SeqData<B>>);

impl<B: FiniteCarrier> Clone for SequenceRing<B> {
    fn clone(&self) -> Self {
        SequenceRing(Arc::clone(&self.0))
    }
}

impl<B: FiniteCarrier> PartialEq for SequenceRing<B> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.base == other.0.base && self.0.index == other.0.index)
    }
}

impl<B: FiniteCarrier> fmt::Debug for SequenceRing<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SequenceRing({:?}, {})", self.0.base, self.0.index)
    }
}

impl<B: FiniteCarrier> SequenceRing<B> {
    pub fn new(base: B, index: &FiniteRing) -> Self {
        SequenceRing(Arc::new(SeqData {
            base,
            index: index.clone(),
            index_elems: index.elements(),
            carrier: OnceLock::new(),
        }))
    }

    pub fn base(&self) -> &B {
        &self.0.base
    }

    pub fn index(&self) -> &FiniteRing {
        &self.0.index
    }

    fn slots(&self) -> usize {
        self.0.index_elems.len()
    }

    /// The unit of the base in slot `r`, zero elsewhere.
    pub fn delta(&self, r: Element) -> Vec<B::Elem> {
        let b = &self.0.base;
        (0..self.slots())
            .map(|i| if i == r.index() { b.one() } else { b.zero() })
            .collect()
    }

    fn convolve(&self, a: &[B::Elem], c: &[B::Elem], op: impl Fn(&Element, &Element) -> Element) -> Vec<B::Elem> {
        let b = &self.0.base;
        let idx = &self.0.index_elems;
        let mut out = vec![b.zero(); self.slots()];
        for (i, r1) in idx.iter().enumerate() {
            if b.is_zero(&a[i]) {
                continue;
            }
            for (j, r2) in idx.iter().enumerate() {
                let k = op(r1, r2).index();
                out[k] = b.add(&out[k], &b.mul(&a[i], &c[j]));
            }
        }
        debug_assert!(is_decomposition(b, &out), "sequence ring operation left the carrier");
        out
    }

    /// `(r₁·α)_{r₀} = Σ_{r₁ r₂ = r₀} α_{r₂}`.
    pub fn scalar(&self, r1: Element, a: &[B::Elem]) -> Vec<B::Elem> {
        let b = &self.0.base;
        let index = &self.0.index;
        let mut out = vec![b.zero(); self.slots()];
        for (j, r2) in self.0.index_elems.iter().enumerate() {
            let k = index.mul(&r1, r2).index();
            out[k] = b.add(&out[k], &a[j]);
        }
        debug_assert!(is_decomposition(b, &out), "scalar action left the carrier");
        out
    }

    fn check_len(&self, a: &[B::Elem]) -> Result<(), ToyError> {
        if a.len() == self.slots() {
            Ok(())
        } else {
            Err(ToyError::IndexMismatch {
                expected: self.slots(),
                found: a.len(),
            })
        }
    }

    pub fn try_add(&self, a: &[B::Elem], c: &[B::Elem]) -> Result<Vec<B::Elem>, ToyError> {
        self.check_len(a)?;
        self.check_len(c)?;
        Ok(self.convolve(a, c, |x, y| self.0.index.add(x, y)))
    }

    pub fn try_mul(&self, a: &[B::Elem], c: &[B::Elem]) -> Result<Vec<B::Elem>, ToyError> {
        self.check_len(a)?;
        self.check_len(c)?;
        Ok(self.convolve(a, c, |x, y| self.0.index.mul(x, y)))
    }

    /// Evaluates `Σ_{r₁² = r₀} α_{r₁}` slotwise.
    pub fn square_by_formula(&self, a: &[B::Elem]) -> Vec<B::Elem> {
        let b = &self.0.base;
        let mut out = vec![b.zero(); self.slots()];
        for (i, r1) in self.0.index_elems.iter().enumerate() {
            let k = self.0.index.mul(r1, r1).index();
            out[k] = b.add(&out[k], &a[i]);
        }
        out
    }

    /// Whether `α·α = α`, and independently whether `α` vanishes on every
    /// non-idempotent slot.
    pub fn idempotent_support(&self, a: &[B::Elem]) -> Result<(bool, bool), ToyError> {
        self.check_len(a)?;
        let by_product = self.try_mul(a, a)? == a;
        let index = &self.0.index;
        let supported = self
            .0
            .index_elems
            .iter()
            .zip(a)
            .all(|(r, part)| index.mul(r, r) == *r || self.0.base.is_zero(part));
        Ok((by_product, supported))
    }

    /// `(α_s) ↦ ((1 - α_s, α_s, 0, …, 0))_s`.
    pub fn mu_image(&self, alpha: &[B::Elem]) -> Result<Vec<Vec<B::Elem>>, ToyError> {
        self.check_len(alpha)?;
        let b = &self.0.base;
        let one_slot = self.0.index.one().index();
        Ok(alpha
            .iter()
            .map(|a| {
                let mut part = vec![b.zero(); self.slots()];
                part[0] = b.sub(&b.one(), a);
                part[one_slot] = b.add(&part[one_slot], a);
                part
            })
            .collect())
    }

    fn base_position(&self, e: &B::Elem) -> usize {
        self.0
            .base
            .elements()
            .iter()
            .position(|x| x == e)
            .expect("base element")
    }
}

impl<B: FiniteCarrier> Ring for SequenceRing<B> {
    type Elem = Vec<B::Elem>;

    fn zero(&self) -> Self::Elem {
        self.delta(self.0.index.zero())
    }

    fn one(&self) -> Self::Elem {
        self.delta(self.0.index.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.try_add(a, b).expect("index mismatch")
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.try_mul(a, b).expect("index mismatch")
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scalar(self.0.index.neg(&self.0.index.one()), a)
    }

    fn from_int(&self, n: &num_bigint::BigInt) -> Self::Elem {
        self.delta(self.0.index.from_int(n))
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.len() == self.slots() && is_decomposition(&self.0.base, a)
    }

    fn literal(&self, a: &Self::Elem) -> Literal {
        Literal::Encoded(a.iter().map(|e| self.base_position(e) as u64).collect())
    }

    fn label(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.iter().map(|e| self.0.base.label(e)).collect();
        format!("({})", parts.join(","))
    }
}

impl<B: FiniteCarrier> FiniteCarrier for SequenceRing<B> {
    fn size(&self) -> usize {
        self.carrier().len()
    }

    fn elements(&self) -> Vec<Self::Elem> {
        self.carrier().clone()
    }
}

impl<B: FiniteCarrier> SequenceRing<B> {
    /// The carrier, enumerated once.
    pub fn carrier(&self) -> &Vec<Vec<B::Elem>> {
        self.0
            .carrier
            .get_or_init(|| decompositions(&self.0.base, self.slots(), usize::MAX).expect("uncapped"))
    }
}

/// Outcome of [`mu_is_bijection`].
#[derive(Clone, Debug)]
pub struct MuVerdict<E> {
    pub bijection: bool,
    pub injective: bool,
    /// Number of `|R|`-indexed decompositions of `B`.
    pub domain: usize,
    /// Number of `|R|`-indexed decompositions of the sequence ring.
    pub codomain: usize,
    /// Whether `R` has only the idempotents 0 and 1.
    pub trivial_idempotents: bool,
    /// First decomposition of the sequence ring outside the image.
    pub witness: Option<Vec<Vec<E>>>,
}

/// Compares the decompositions of `SequenceRing(B, R)` with the image of `μ`.
pub fn mu_is_bijection<B: FiniteCarrier>(r: &FiniteRing, b: &B, cap: usize) -> Result<MuVerdict<B::Elem>, ToyError> {
    if b.size() > cap {
        return Err(ToyError::BaseTooLarge { size: b.size(), cap });
    }
    let slots = r.size();
    let sr = SequenceRing::new(b.clone(), r);
    let domain = decompositions(b, slots, cap)?;
    let image: Vec<_> = domain
        .iter()
        .map(|a| sr.mu_image(a))
        .collect::<Result<_, _>>()?;
    let image_set: HashSet<&Vec<Vec<B::Elem>>> = image.iter().collect();
    let injective = image_set.len() == image.len();
    let codomain = decompositions(&sr, slots, usize::MAX)?;
    let witness = codomain.iter().find(|d| !image_set.contains(d)).cloned();
    let all_valid = image.iter().all(|d| is_decomposition(&sr, d));
    let trivial_idempotents = r.idempotents().len() <= 2;
    Ok(MuVerdict {
        bijection: injective && all_valid && witness.is_none() && codomain.len() == image.len(),
        injective,
        domain: domain.len(),
        codomain: codomain.len(),
        trivial_idempotents,
        witness,
    })
}

/// How much of [`tw_iso_check`] to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoLevel {
    Full,
    BijectionOnly,
}

impl IsoLevel {
    /// Full checks up to 256 functions, bijection only above.
    pub fn for_order(q: usize) -> Self {
        match q.checked_pow(q as u32) {
            Some(n) if n <= 256 => IsoLevel::Full,
            _ => IsoLevel::BijectionOnly,
        }
    }
}

/// Default cap on `q^q` for [`tw_iso_check`].
pub const ISO_CAP: usize = 4096;

/// Verifies that `η̄ : R[x]/(x^q - x) → R^R` is an isomorphism of the full
/// structure for a finite field `R` of order `q`.
pub fn tw_iso_check(r: &FiniteRing, level: IsoLevel, cap: usize) -> Result<Report, ToyError> {
    let q = require_field(r, cap)?;
    let mut report = Report::new(format!("eta isomorphism over {r}"));
    let fr = PointwiseRing::functions(r);
    let polys = biring::reduced_polynomials(r, q);
    let tables: Vec<Table> = polys.iter().map(|p| eta(r, p)).collect::<Result<_, _>>()?;
    let x = [Var::new("x")];
    let distinct: HashSet<&Table> = tables.iter().collect();
    let expected = q.pow(q as u32);
    report.check("bijection", distinct.len() == expected && polys.len() == expected && fr.size() == expected, || {
        (
            format!("{} reduced polynomials", polys.len()),
            expected.to_string(),
            distinct.len().to_string(),
        )
    });

    let xpoly = Polynomial::var(r, "x");
    let id = eta(r, &xpoly)?;
    report.check_eq("generator", || "x".into(), &identity_fn(r), &id);
    let d0 = delta0_poly(r);
    let d0_table = eta(r, &d0)?;
    report.check_eq("delta0", || d0.to_string(), &indicator(r, r.zero()), &d0_table);

    if level == IsoLevel::BijectionOnly {
        report.note(format!("bijection-only check over {} elements", expected));
        return Ok(report);
    }

    report.check_eq("unit", || "0, 1".into(), &(fr.zero(), fr.one()), &(
        eta(r, &Polynomial::zero(r))?,
        eta(r, &Polynomial::one(r))?,
    ));

    let b = Biring::quotient(r.clone(), q as u64).expect("q >= 2");
    for (p, t) in polys.iter().zip(&tables) {
        let add2 = eta2(r, &b.coadd(p).expect("univariate"))?;
        report.check_eq("coaddition", || p.to_string(), &coadd_fn(r, t)?, &add2);
        let mul2 = eta2(r, &b.comul(p).expect("univariate"))?;
        report.check_eq("comultiplication", || p.to_string(), &comul_fn(r, t)?, &mul2);
        for e in r.elements() {
            let c = b.counit(p, &e).expect("univariate");
            report.check("counit", c == t[e.index()], || {
                (format!("{p} at {}", r.label(&e)), r.label(&t[e.index()]), r.label(&c))
            });
        }
    }

    let lookup: HashMap<&Polynomial<FiniteRing>, usize> = polys.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let image_of = |p: &Polynomial<FiniteRing>| -> Result<Table, ToyError> {
        let red = p.reduce_xq(q as u64, &x)?;
        match lookup.get(&red) {
            Some(&i) => Ok(tables[i].clone()),
            None => eta(r, &red),
        }
    };
    for (i, p) in polys.iter().enumerate() {
        for (j, s) in polys.iter().enumerate() {
            let (tp, ts) = (&tables[i], &tables[j]);
            report.check_eq("sum", || format!("{p} | {s}"), &fr.add(tp, ts), &image_of(&(p + s))?);
            report.check_eq("product", || format!("{p} | {s}"), &fr.mul(tp, ts), &image_of(&(p * s))?);
            let comp = p.substitute(&BTreeMap::from([(Var::new("x"), s.clone())]))?;
            report.check_eq("composition", || format!("{p} | {s}"), &compose(r, tp, ts)?, &image_of(&comp)?);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> FiniteRing {
        FiniteRing::parse(s).unwrap()
    }

    fn el(r: &FiniteRing, i: i64) -> Element {
        r.from_i64(i)
    }

    fn p(s: &str, r: &FiniteRing) -> Polynomial<FiniteRing> {
        Polynomial::parse(s, r).unwrap()
    }

    #[test]
    fn pointwise_examples() {
        let z2 = ring("Z/2");
        let fr = PointwiseRing::functions(&z2);
        let id = identity_fn(&z2);
        assert_eq!(fr.add(&id, &id), fr.zero());
        assert_eq!(fr.add(&id, &fr.zero()), id);
        let z3 = ring("Z/3");
        let fr3 = PointwiseRing::functions(&z3);
        let id3 = identity_fn(&z3);
        assert_eq!(fr3.mul(&id3, &id3), vec![el(&z3, 0), el(&z3, 1), el(&z3, 1)]);
        assert_eq!(fr3.size(), 27);
        assert_eq!(fr3.elements().len(), 27);
    }

    #[test]
    fn composition_examples() {
        let z2 = ring("Z/2");
        let d0 = indicator(&z2, z2.zero());
        assert_eq!(d0, vec![z2.one(), z2.zero()]);
        assert_eq!(compose(&z2, &d0, &d0).unwrap(), identity_fn(&z2));
        assert_eq!(compose(&z2, &d0, &identity_fn(&z2)).unwrap(), d0);
        let c = vec![z2.one(); 2];
        assert_eq!(compose(&z2, &c, &d0).unwrap(), c);
        assert_eq!(compose(&z2, &c, &[z2.one()]), Err(ToyError::RingMismatch));
    }

    #[test]
    fn kunneth_tables() {
        let z2 = ring("Z/2");
        let id = identity_fn(&z2);
        let add = coadd_fn(&z2, &id).unwrap();
        let expected: Vec<Element> = [0, 1, 1, 0].iter().map(|&i| el(&z2, i)).collect();
        assert_eq!(add, expected);
        let mul = comul_fn(&z2, &indicator(&z2, z2.zero())).unwrap();
        let expected: Vec<Element> = [1, 1, 1, 0].iter().map(|&i| el(&z2, i)).collect();
        assert_eq!(mul, expected);
        let c = vec![z2.one(); 2];
        assert_eq!(coadd_fn(&z2, &c).unwrap(), vec![z2.one(); 4]);
    }

    #[test]
    fn eta_examples() {
        let gf3 = ring("GF(3,1)");
        assert_eq!(eta(&gf3, &p("x", &gf3)).unwrap(), identity_fn(&gf3));
        assert_eq!(
            eta(&gf3, &delta0_poly(&gf3)).unwrap(),
            vec![gf3.one(), gf3.zero(), gf3.zero()]
        );
        let z2 = ring("Z/2");
        assert_eq!(eta(&z2, &p("x^2 + x", &z2)).unwrap(), vec![z2.zero(); 2]);
    }

    #[test]
    fn eta_intertwines_substitution() {
        let gf3 = ring("GF(3,1)");
        let a = p("x^2 + 2*x + 1", &gf3);
        let b = p("2*x^2 + 1", &gf3);
        let ab = a.substitute(&BTreeMap::from([(Var::new("x"), b.clone())])).unwrap();
        assert_eq!(
            eta(&gf3, &ab).unwrap(),
            compose(&gf3, &eta(&gf3, &a).unwrap(), &eta(&gf3, &b).unwrap()).unwrap()
        );
    }

    #[test]
    fn kernel_examples() {
        for spec in ["GF(2,1)", "GF(3,1)", "GF(2,2)"] {
            let r = kernel_is_principal(&ring(spec), 50, 7, ISO_CAP).unwrap();
            assert!(r.is_pass(), "{spec}");
        }
        assert!(matches!(kernel_is_principal(&ring("Z/4"), 0, 0, ISO_CAP), Err(ToyError::NotAField(_))));
    }

    #[test]
    fn decomposition_examples() {
        let gf4 = ring("GF(2,2)");
        let d = decompositions(&gf4, 2, 64).unwrap();
        assert_eq!(d, vec![vec![gf4.zero(), gf4.one()], vec![gf4.one(), gf4.zero()]]);
        let z6 = ring("Z/6");
        assert_eq!(decompositions(&z6, 6, 64).unwrap().len(), 36);
        for spec in ["Z/6", "Z/4", "GF(3,1)"] {
            let r = ring(spec);
            assert_eq!(decompositions(&r, 1, 64).unwrap(), vec![vec![r.one()]]);
        }
        assert_eq!(
            decompositions(&ring("Z/70"), 2, 64).unwrap_err(),
            ToyError::BaseTooLarge { size: 70, cap: 64 }
        );
    }

    #[test]
    fn decomposition_count_for_fields() {
        for spec in ["GF(2,1)", "GF(3,1)", "GF(2,2)", "GF(5,1)"] {
            let r = ring(spec);
            assert_eq!(decompositions(&r, r.size(), 64).unwrap().len(), r.size(), "{spec}");
        }
    }

    #[test]
    fn sequence_ring_examples() {
        let z2 = ring("Z/2");
        let sr = SequenceRing::new(z2.clone(), &z2);
        let d1 = sr.one();
        assert_eq!(sr.add(&d1, &d1), sr.zero());
        for a in sr.elements() {
            assert_eq!(sr.mul(&d1, &a), a);
            assert_eq!(sr.scalar(z2.zero(), &a), sr.zero());
        }
        assert_eq!(
            sr.try_add(&d1, &[z2.one()]),
            Err(ToyError::IndexMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn sequence_ring_is_a_ring_on_small_cases() {
        let z3 = ring("Z/3");
        let sr = SequenceRing::new(z3.clone(), &z3);
        let els = sr.elements();
        assert_eq!(els.len(), 3);
        for a in &els {
            assert_eq!(sr.add(a, &sr.neg(a)), sr.zero());
            for b in &els {
                assert_eq!(sr.add(a, b), sr.add(b, a));
                assert_eq!(sr.mul(a, b), sr.mul(b, a));
                for c in &els {
                    assert_eq!(sr.mul(a, &sr.add(b, c)), sr.add(&sr.mul(a, b), &sr.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn mu_image_examples() {
        let gf2 = ring("GF(2,1)");
        let sr = SequenceRing::new(gf2.clone(), &gf2);
        let d1 = vec![gf2.zero(), gf2.one()];
        let img = sr.mu_image(&d1).unwrap();
        assert_eq!(img, vec![vec![gf2.one(), gf2.zero()], vec![gf2.zero(), gf2.one()]]);
        assert_eq!(img[0], sr.zero());

        let z6 = ring("Z/6");
        let sr6 = SequenceRing::new(z6.clone(), &z6);
        let dom = decompositions(&z6, 6, 64).unwrap();
        let imgs: HashSet<_> = dom.iter().map(|a| sr6.mu_image(a).unwrap()).collect();
        assert_eq!(imgs.len(), 36);
    }

    #[test]
    fn idempotent_support_examples() {
        let z6 = ring("Z/6");
        let sr = SequenceRing::new(z6.clone(), &z6);
        // 3 in the slot of 3, 4 in the slot of 4.
        let mut a = vec![z6.zero(); 6];
        a[el(&z6, 3).index()] = el(&z6, 3);
        a[el(&z6, 4).index()] = el(&z6, 4);
        assert_eq!(sr.idempotent_support(&a).unwrap(), (true, true));
        let mut b = vec![z6.zero(); 6];
        b[el(&z6, 2).index()] = z6.one();
        assert_eq!(sr.idempotent_support(&b).unwrap(), (false, false));
        assert_eq!(sr.mul(&b, &b), sr.delta(el(&z6, 4)));

        let gf3 = ring("GF(3,1)");
        let sr3 = SequenceRing::new(gf3.clone(), &gf3);
        for a in decompositions(&gf3, 3, 64).unwrap() {
            let (prod, sup) = sr3.idempotent_support(&a).unwrap();
            assert_eq!(prod, sup);
            assert_eq!(sup, a[2] == gf3.zero());
        }
    }

    #[test]
    fn square_formula_agrees_with_product() {
        for spec in ["Z/4", "Z/6", "GF(2,2)"] {
            let r = ring(spec);
            let sr = SequenceRing::new(r.clone(), &r);
            for a in decompositions(&r, r.size(), 64).unwrap() {
                assert_eq!(sr.mul(&a, &a), sr.square_by_formula(&a));
            }
        }
    }

    #[test]
    fn mu_small_cases() {
        let gf2 = ring("GF(2,1)");
        let v = mu_is_bijection(&gf2, &gf2, 64).unwrap();
        assert!(v.bijection && v.trivial_idempotents);
        let z4 = ring("Z/4");
        let v = mu_is_bijection(&z4, &z4, 64).unwrap();
        assert!(v.bijection);
        let z6 = ring("Z/6");
        let v = mu_is_bijection(&z6, &z6, 64).unwrap();
        assert!(!v.bijection && v.injective && !v.trivial_idempotents);
        assert_eq!(v.domain, 36);
        assert!(v.witness.is_some());
    }

    #[test]
    fn iso_small_fields() {
        let gf2 = ring("GF(2,1)");
        let r = tw_iso_check(&gf2, IsoLevel::Full, ISO_CAP).unwrap();
        assert!(r.is_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.tally("composition").passed, 16);
        assert!(matches!(tw_iso_check(&ring("Z/6"), IsoLevel::Full, ISO_CAP), Err(ToyError::NotAField(_))));
        assert_eq!(
            tw_iso_check(&ring("GF(7,1)"), IsoLevel::Full, ISO_CAP).unwrap_err(),
            ToyError::FieldTooLarge { q: 7, cap: ISO_CAP }
        );
    }

    #[test]
    fn module_action_examples() {
        let gf2 = ring("GF(2,1)");
        let fr = PointwiseRing::functions(&gf2);
        let x2 = PointwiseRing::new(&gf2, 2);
        let id = identity_fn(&gf2);
        for g in x2.elements() {
            assert_eq!(module_action(&gf2, &id, &g).unwrap(), g);
            for c in gf2.elements() {
                assert_eq!(module_action(&gf2, &fr.constant(c), &g).unwrap(), x2.constant(c));
            }
        }
    }

    #[test]
    fn frobenius_naturality_on_gf4() {
        let gf4 = ring("GF(2,2)");
        let frob = |e: &Element| gf4.mul(e, e);
        let frob_table: Table = gf4.elements().iter().map(frob).collect();
        for poly in biring::reduced_polynomials(&gf4, 4) {
            let twisted = poly.map_coefficients(&gf4, frob);
            let lhs = compose(&gf4, &eta(&gf4, &poly).unwrap(), &frob_table).unwrap();
            let rhs = compose(&gf4, &frob_table, &eta(&gf4, &twisted).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{poly}");
        }
    }
}
