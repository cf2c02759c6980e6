//! Finite commutative unital rings: `Z/n`, `GF(p^k)` and finite products.
//!
//! Elements are positions in the canonical carrier: zero first, one second,
//! then the remaining elements in encoding order. The encoding of an element
//! is its residue (`Z/n`), its coefficient vector low degree first (`GF`), or
//! the concatenation of the two component encodings (products). Encoding
//! order is the mixed-radix rank, which compares GF coefficient vectors from
//! the highest coefficient down and products left component first.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::error::ParseError;
use crate::ring::{FiniteCarrier, Literal, Ring};

/// Carriers up to this size get precomputed operation tables.
const TABLE_LIMIT: u64 = 256;
const MAX_SIZE: u128 = 1 << 24;
/// Exhaustive axiom verification runs up to this carrier size.
pub const AXIOM_CHECK_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("characteristic {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("ring size must be positive")]
    ZeroSize,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("ring of size {0} exceeds the supported maximum")]
    TooLarge(u128),
    #[error("element {0} is not canonical for this ring")]
    ForeignElement(String),
}

/// Description of a finite ring to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    ZmodN(u64),
    /// `modulus` holds monic coefficients, constant term first; `None` picks
    /// the least irreducible polynomial.
    GaloisField {
        p: u64,
        k: u32,
        modulus: Option<Vec<u64>>,
    },
    Product(Box<RingSpec>, Box<RingSpec>),
}

impl RingSpec {
    pub fn product(left: RingSpec, right: RingSpec) -> Self {
        RingSpec::Product(Box::new(left), Box::new(right))
    }

    pub fn gf(p: u64, k: u32) -> Self {
        RingSpec::GaloisField { p, k, modulus: None }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ZmodN(n) => write!(f, "Z/{n}"),
            RingSpec::GaloisField { p, k, modulus: None } => write!(f, "GF({p},{k})"),
            RingSpec::GaloisField {
                p,
                k,
                modulus: Some(m),
            } => write!(f, "GF({p},{k};{})", format_upoly(m, "x")),
            RingSpec::Product(l, r) => match **r {
                RingSpec::Product(..) => write!(f, "{l}x({r})"),
                _ => write!(f, "{l}x{r}"),
            },
        }
    }
}

impl FromStr for RingSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_ring_spec(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Layout {
    Zmod(u64),
    Galois { p: u64, modulus: Vec<u64> },
    Product(Box<Layout>, Box<Layout>),
}

impl Layout {
    fn size(&self) -> u64 {
        match self {
            Layout::Zmod(n) => *n,
            Layout::Galois { p, modulus } => p.pow((modulus.len() - 1) as u32),
            Layout::Product(l, r) => l.size() * r.size(),
        }
    }

    fn width(&self) -> usize {
        match self {
            Layout::Zmod(_) => 1,
            Layout::Galois { modulus, .. } => modulus.len() - 1,
            Layout::Product(l, r) => l.width() + r.width(),
        }
    }

    fn decode(&self, rank: u64, out: &mut Vec<u64>) {
        match self {
            Layout::Zmod(_) => out.push(rank),
            Layout::Galois { p, modulus } => {
                let mut r = rank;
                for _ in 0..modulus.len() - 1 {
                    out.push(r % p);
                    r /= p;
                }
            }
            Layout::Product(l, r) => {
                let rs = r.size();
                l.decode(rank / rs, out);
                r.decode(rank % rs, out);
            }
        }
    }

    fn encode(&self, enc: &[u64]) -> Option<u64> {
        if enc.len() != self.width() {
            return None;
        }
        match self {
            Layout::Zmod(n) => (enc[0] < *n).then_some(enc[0]),
            Layout::Galois { p, .. } => {
                let mut rank = 0u64;
                for &c in enc.iter().rev() {
                    if c >= *p {
                        return None;
                    }
                    rank = rank * p + c;
                }
                Some(rank)
            }
            Layout::Product(l, r) => {
                let (a, b) = enc.split_at(l.width());
                Some(l.encode(a)? * r.size() + r.encode(b)?)
            }
        }
    }

    fn digits(&self, rank: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.width());
        self.decode(rank, &mut v);
        v
    }

    fn one(&self) -> u64 {
        match self {
            Layout::Zmod(n) => 1 % n,
            Layout::Galois { .. } => 1,
            Layout::Product(l, r) => l.one() * r.size() + r.one(),
        }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            Layout::Zmod(n) => ((a as u128 + b as u128) % *n as u128) as u64,
            Layout::Galois { p, .. } => {
                let (x, y) = (self.digits(a), self.digits(b));
                let sum: Vec<u64> = x.iter().zip(&y).map(|(s, t)| (s + t) % p).collect();
                self.encode(&sum).unwrap()
            }
            Layout::Product(l, r) => {
                let rs = r.size();
                l.add(a / rs, b / rs) * rs + r.add(a % rs, b % rs)
            }
        }
    }

    fn neg(&self, a: u64) -> u64 {
        match self {
            Layout::Zmod(n) => (n - a) % n,
            Layout::Galois { p, .. } => {
                let neg: Vec<u64> = self.digits(a).iter().map(|c| (p - c) % p).collect();
                self.encode(&neg).unwrap()
            }
            Layout::Product(l, r) => {
                let rs = r.size();
                l.neg(a / rs) * rs + r.neg(a % rs)
            }
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            Layout::Zmod(n) => ((a as u128 * b as u128) % *n as u128) as u64,
            Layout::Galois { p, modulus } => {
                let (x, y) = (self.digits(a), self.digits(b));
                let mut prod = vec![0u64; x.len() + y.len() - 1];
                for (i, &s) in x.iter().enumerate() {
                    if s == 0 {
                        continue;
                    }
                    for (j, &t) in y.iter().enumerate() {
                        prod[i + j] = ((prod[i + j] as u128 + s as u128 * t as u128) % *p as u128) as u64;
                    }
                }
                let mut rem = upoly_rem(&prod, modulus, *p);
                rem.resize(modulus.len() - 1, 0);
                self.encode(&rem).unwrap()
            }
            Layout::Product(l, r) => {
                let rs = r.size();
                l.mul(a / rs, b / rs) * rs + r.mul(a % rs, b % rs)
            }
        }
    }

    fn int_rank(&self, n: &BigInt) -> u64 {
        match self {
            Layout::Zmod(m) => n.mod_floor(&BigInt::from(*m)).to_u64().unwrap(),
            Layout::Galois { p, .. } => n.mod_floor(&BigInt::from(*p)).to_u64().unwrap(),
            Layout::Product(l, r) => l.int_rank(n) * r.size() + r.int_rank(n),
        }
    }

    fn characteristic(&self) -> u64 {
        match self {
            Layout::Zmod(n) => *n,
            Layout::Galois { p, .. } => *p,
            Layout::Product(l, r) => l.characteristic().lcm(&r.characteristic()),
        }
    }

    fn label(&self, rank: u64) -> String {
        match self {
            Layout::Zmod(_) => rank.to_string(),
            Layout::Galois { modulus, .. } if modulus.len() == 2 => rank.to_string(),
            Layout::Galois { .. } => format_upoly(&self.digits(rank), "g"),
            Layout::Product(l, r) => {
                let rs = r.size();
                format!("({},{})", l.label(rank / rs), r.label(rank % rs))
            }
        }
    }
}

struct RingData {
    spec: RingSpec,
    layout: Layout,
    size: usize,
    one_rank: u64,
    add: Option<Vec<u32>>,
    mul: Option<Vec<u32>>,
}

/// A finite commutative unital ring with a canonical carrier.
///
/// Cloning is cheap; the operation tables are shared.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

/// An element of a [`FiniteRing`], stored as its position in the canonical
/// carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u32);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Outcome of [`FiniteRing::verify_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomStatus {
    Verified,
    /// Carrier above [`AXIOM_CHECK_LIMIT`]; axioms hold by construction.
    Trusted,
}

impl FiniteRing {
    pub fn new(spec: RingSpec) -> Result<Self, RingError> {
        let layout = resolve_layout(&spec)?;
        let size = layout.size() as u128;
        if size > MAX_SIZE {
            return Err(RingError::TooLarge(size));
        }
        let size = size as usize;
        let one_rank = layout.one();
        let mut data = RingData {
            spec,
            layout,
            size,
            one_rank,
            add: None,
            mul: None,
        };
        if (size as u64) <= TABLE_LIMIT {
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for i in 0..size {
                let a = idx_to_rank(i, one_rank);
                for j in 0..size {
                    let b = idx_to_rank(j, one_rank);
                    add.push(rank_to_idx(data.layout.add(a, b), one_rank) as u32);
                    mul.push(rank_to_idx(data.layout.mul(a, b), one_rank) as u32);
                }
            }
            data.add = Some(add);
            data.mul = Some(mul);
        }
        Ok(FiniteRing(Arc::new(data)))
    }

    pub fn zmod(n: u64) -> Result<Self, RingError> {
        Self::new(RingSpec::ZmodN(n))
    }

    pub fn galois(p: u64, k: u32) -> Result<Self, RingError> {
        Self::new(RingSpec::gf(p, k))
    }

    pub fn product(left: &FiniteRing, right: &FiniteRing) -> Result<Self, RingError> {
        Self::new(RingSpec::product(left.spec().clone(), right.spec().clone()))
    }

    /// Parses and builds a ring from the ring-spec grammar.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let spec = parse_ring_spec(text)?;
        FiniteRing::new(spec).map_err(|e| ParseError::new(0, e.to_string()))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn size(&self) -> usize {
        self.0.size
    }

    pub fn characteristic(&self) -> u64 {
        self.0.layout.characteristic()
    }

    fn rank(&self, e: Element) -> u64 {
        idx_to_rank(e.index(), self.0.one_rank)
    }

    fn at_rank(&self, rank: u64) -> Element {
        Element(rank_to_idx(rank, self.0.one_rank) as u32)
    }

    pub fn element(&self, index: usize) -> Result<Element, RingError> {
        if index < self.size() {
            Ok(Element(index as u32))
        } else {
            Err(RingError::ForeignElement(format!("#{index}")))
        }
    }

    pub fn check(&self, e: Element) -> Result<Element, RingError> {
        self.element(e.index())
    }

    pub fn encoding(&self, e: Element) -> Vec<u64> {
        self.0.layout.digits(self.rank(e))
    }

    pub fn element_from_encoding(&self, enc: &[u64]) -> Result<Element, RingError> {
        self.0
            .layout
            .encode(enc)
            .map(|r| self.at_rank(r))
            .ok_or_else(|| RingError::ForeignElement(format!("{enc:?}")))
    }

    pub fn try_add(&self, a: Element, b: Element) -> Result<Element, RingError> {
        Ok(self.add(&self.check(a)?, &self.check(b)?))
    }

    pub fn try_sub(&self, a: Element, b: Element) -> Result<Element, RingError> {
        Ok(self.sub(&self.check(a)?, &self.check(b)?))
    }

    pub fn try_mul(&self, a: Element, b: Element) -> Result<Element, RingError> {
        Ok(self.mul(&self.check(a)?, &self.check(b)?))
    }

    pub fn try_neg(&self, a: Element) -> Result<Element, RingError> {
        Ok(self.neg(&self.check(a)?))
    }

    pub fn inverse(&self, a: Element) -> Option<Element> {
        let one = self.one();
        self.elements().into_iter().find(|b| self.mul(&a, b) == one)
    }

    /// Every nonzero element is invertible (and the ring is nonzero).
    pub fn is_field(&self) -> bool {
        self.size() > 1 && self.elements().into_iter().skip(1).all(|a| self.inverse(a).is_some())
    }

    pub fn nilpotents(&self) -> Vec<Element> {
        let zero = self.zero();
        let bound = self.size() as u64;
        self.elements()
            .into_iter()
            .filter(|a| self.pow(a, bound) == zero)
            .collect()
    }

    /// Exhaustive check of the commutative unital ring axioms.
    pub fn verify_axioms(&self) -> Result<AxiomStatus, String> {
        if self.size() > AXIOM_CHECK_LIMIT {
            return Ok(AxiomStatus::Trusted);
        }
        let el = self.elements();
        let (zero, one) = (self.zero(), self.one());
        for &a in &el {
            if self.add(&a, &zero) != a {
                return Err(format!("additive identity fails at {}", self.label(&a)));
            }
            if self.mul(&a, &one) != a {
                return Err(format!("multiplicative identity fails at {}", self.label(&a)));
            }
            if self.add(&a, &self.neg(&a)) != zero {
                return Err(format!("additive inverse fails at {}", self.label(&a)));
            }
            for &b in &el {
                if self.add(&a, &b) != self.add(&b, &a) || self.mul(&a, &b) != self.mul(&b, &a) {
                    return Err(format!(
                        "commutativity fails at ({}, {})",
                        self.label(&a),
                        self.label(&b)
                    ));
                }
                for &c in &el {
                    let assoc_add = self.add(&self.add(&a, &b), &c) == self.add(&a, &self.add(&b, &c));
                    let assoc_mul = self.mul(&self.mul(&a, &b), &c) == self.mul(&a, &self.mul(&b, &c));
                    let distrib = self.mul(&a, &self.add(&b, &c))
                        == self.add(&self.mul(&a, &b), &self.mul(&a, &c));
                    if !(assoc_add && assoc_mul && distrib) {
                        return Err(format!(
                            "associativity or distributivity fails at ({}, {}, {})",
                            self.label(&a),
                            self.label(&b),
                            self.label(&c)
                        ));
                    }
                }
            }
        }
        Ok(AxiomStatus::Verified)
    }

    /// The carrier reordered so that it starts with `prefix`, followed by the
    /// remaining elements in canonical order.
    pub fn enumerate_with_prefix(&self, prefix: &[Element]) -> Result<Vec<Element>, RingError> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::with_capacity(self.size());
        for &e in prefix {
            self.check(e)?;
            if std::mem::replace(&mut seen[e.index()], true) {
                return Err(RingError::ForeignElement(format!(
                    "{} repeated in prefix",
                    self.label(&e)
                )));
            }
            out.push(e);
        }
        out.extend(self.elements().into_iter().filter(|e| !seen[e.index()]));
        Ok(out)
    }

    /// Formats a set of elements as `{a,b,...}`.
    pub fn format_set(&self, elems: &[Element]) -> String {
        let parts: Vec<String> = elems.iter().map(|e| self.label(e)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.layout == other.0.layout
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.0.spec)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

impl Ring for FiniteRing {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element(0)
    }

    fn one(&self) -> Element {
        if self.size() == 1 {
            Element(0)
        } else {
            Element(1)
        }
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        match &self.0.add {
            Some(t) => Element(t[a.index() * self.size() + b.index()]),
            None => self.at_rank(self.0.layout.add(self.rank(*a), self.rank(*b))),
        }
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        match &self.0.mul {
            Some(t) => Element(t[a.index() * self.size() + b.index()]),
            None => self.at_rank(self.0.layout.mul(self.rank(*a), self.rank(*b))),
        }
    }

    fn neg(&self, a: &Element) -> Element {
        self.at_rank(self.0.layout.neg(self.rank(*a)))
    }

    fn from_int(&self, n: &BigInt) -> Element {
        self.at_rank(self.0.layout.int_rank(n))
    }

    fn contains(&self, a: &Element) -> bool {
        a.index() < self.size()
    }

    fn literal(&self, a: &Element) -> Literal {
        let enc = self.encoding(*a);
        match &self.0.layout {
            Layout::Zmod(_) => Literal::Int(BigInt::from(enc[0])),
            Layout::Galois { .. } if enc[1..].iter().all(|&c| c == 0) => Literal::Int(BigInt::from(enc[0])),
            _ => Literal::Encoded(enc),
        }
    }

    fn from_literal(&self, lit: &Literal) -> Option<Element> {
        match lit {
            Literal::Int(n) => Some(self.from_int(n)),
            Literal::Encoded(enc) => self.element_from_encoding(enc).ok(),
        }
    }

    fn label(&self, a: &Element) -> String {
        self.0.layout.label(self.rank(*a))
    }
}

impl FiniteCarrier for FiniteRing {
    fn size(&self) -> usize {
        self.0.size
    }

    fn elements(&self) -> Vec<Element> {
        (0..self.size() as u32).map(Element).collect()
    }
}

fn idx_to_rank(i: usize, one_rank: u64) -> u64 {
    match i {
        0 => 0,
        1 => one_rank,
        _ => {
            let r = (i - 1) as u64;
            if r >= one_rank {
                r + 1
            } else {
                r
            }
        }
    }
}

fn rank_to_idx(r: u64, one_rank: u64) -> usize {
    if r == 0 {
        0
    } else if r == one_rank {
        1
    } else if r < one_rank {
        (r + 1) as usize
    } else {
        r as usize
    }
}

fn resolve_layout(spec: &RingSpec) -> Result<Layout, RingError> {
    match spec {
        RingSpec::ZmodN(0) => Err(RingError::ZeroSize),
        RingSpec::ZmodN(n) => Ok(Layout::Zmod(*n)),
        RingSpec::GaloisField { p, k, modulus } => {
            if !is_prime(*p) {
                return Err(RingError::NonPrimeModulus(*p));
            }
            if *k == 0 {
                return Err(RingError::InvalidModulus("extension degree must be at least 1".into()));
            }
            if (*p as u128).checked_pow(*k).is_none_or(|s| s > MAX_SIZE) {
                return Err(RingError::TooLarge(u128::MAX));
            }
            let modulus = match modulus {
                None => find_irreducible(*p, *k)?,
                Some(m) => {
                    if m.len() != *k as usize + 1 || m.last() != Some(&1) || m.iter().any(|&c| c >= *p) {
                        return Err(RingError::InvalidModulus(format!(
                            "{} is not a reduced monic polynomial of degree {k}",
                            format_upoly(m, "x")
                        )));
                    }
                    if !is_irreducible(m, *p) {
                        return Err(RingError::ReducibleModulus(format_upoly(m, "x")));
                    }
                    m.clone()
                }
            };
            Ok(Layout::Galois { p: *p, modulus })
        }
        RingSpec::Product(l, r) => {
            let (l, r) = (resolve_layout(l)?, resolve_layout(r)?);
            if l.size() as u128 * r.size() as u128 > MAX_SIZE {
                return Err(RingError::TooLarge(l.size() as u128 * r.size() as u128));
            }
            Ok(Layout::Product(Box::new(l), Box::new(r)))
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over `Z/p`; coefficient
/// vectors are constant term first.
fn upoly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            let sub = (lead as u128 * c as u128 % p as u128) as u64;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Whether a monic polynomial over `Z/p` has no monic factor of degree
/// between 1 and half its degree.
pub fn is_irreducible(monic: &[u64], p: u64) -> bool {
    let deg = monic.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut r = low;
            for _ in 0..d {
                f.push(r % p);
                r /= p;
            }
            f.push(1);
            if upoly_rem(monic, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The least monic irreducible polynomial of degree `k` over `Z/p`, compared
/// from the highest non-leading coefficient down. Coefficients are returned
/// constant term first, including the leading 1.
pub fn find_irreducible(p: u64, k: u32) -> Result<Vec<u64>, RingError> {
    if !is_prime(p) {
        return Err(RingError::NonPrimeModulus(p));
    }
    if k == 0 {
        return Err(RingError::InvalidModulus("extension degree must be at least 1".into()));
    }
    let count = p
        .checked_pow(k)
        .ok_or(RingError::TooLarge(u128::MAX))?;
    for low in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut r = low;
        for _ in 0..k {
            f.push(r % p);
            r /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Renders a coefficient vector (constant term first) as `x^2 + x + 1`.
pub fn format_upoly(coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        parts.push(match (c, e) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

struct SpecParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> SpecParser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos, format!("expected `{token}`")))
        }
    }

    fn number(&mut self) -> Result<(u64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(ParseError::new(start, "expected a number"));
        }
        self.pos += digits;
        let n = self.text[start..self.pos]
            .parse::<u64>()
            .map_err(|_| ParseError::new(start, "number out of range"))?;
        Ok((n, start))
    }

    fn spec(&mut self) -> Result<RingSpec, ParseError> {
        let mut acc = self.atom()?;
        while self.eat("x") {
            let rhs = self.atom()?;
            acc = RingSpec::product(acc, rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RingSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("Z/") {
            let (n, at) = self.number()?;
            if n == 0 {
                return Err(ParseError::new(at, "ring size must be positive"));
            }
            Ok(RingSpec::ZmodN(n))
        } else if self.eat("GF(") {
            let (first, at) = self.number()?;
            let (p, k) = if self.eat(",") {
                let (k, kat) = self.number()?;
                if !is_prime(first) {
                    return Err(ParseError::new(at, format!("{first} is not prime")));
                }
                if k == 0 || k > 64 {
                    return Err(ParseError::new(kat, "extension degree must be between 1 and 64"));
                }
                (first, k as u32)
            } else {
                prime_power(first)
                    .ok_or_else(|| ParseError::new(at, format!("{first} is not a prime power")))?
            };
            let modulus = if self.eat(";") {
                self.skip_ws();
                let mstart = self.pos;
                let mut depth = 0usize;
                let len = self
                    .rest()
                    .char_indices()
                    .find(|&(_, c)| match c {
                        '(' => {
                            depth += 1;
                            false
                        }
                        ')' if depth == 0 => true,
                        ')' => {
                            depth -= 1;
                            false
                        }
                        _ => false,
                    })
                    .map(|(i, _)| i)
                    .ok_or_else(|| ParseError::new(self.text.len(), "unterminated modulus"))?;
                self.pos += len;
                Some(parse_modulus(&self.text[mstart..mstart + len], p, k).map_err(|e| e.shifted(mstart))?)
            } else {
                None
            };
            self.expect(")")?;
            let spec = RingSpec::GaloisField { p, k, modulus };
            resolve_layout(&spec).map_err(|e| ParseError::new(start, e.to_string()))?;
            Ok(spec)
        } else if self.eat("(") {
            let inner = self.spec()?;
            self.expect(")")?;
            Ok(inner)
        } else {
            Err(ParseError::new(start, "expected `Z/`, `GF(` or `(`"))
        }
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn parse_modulus(text: &str, p: u64, k: u32) -> Result<Vec<u64>, ParseError> {
    use crate::poly::Polynomial;

    let base = FiniteRing::zmod(p).map_err(|e| ParseError::new(0, e.to_string()))?;
    let poly = Polynomial::parse(text, &base)?;
    let vars = poly.vars();
    if vars.len() > 1 {
        return Err(ParseError::new(0, "modulus must be univariate"));
    }
    let mut coeffs = vec![0u64; k as usize + 1];
    for (mono, c) in poly.terms() {
        let e = mono.degree() as usize;
        if e > k as usize {
            return Err(ParseError::new(0, format!("modulus degree exceeds {k}")));
        }
        coeffs[e] = base.encoding(*c)[0];
    }
    if coeffs[k as usize] != 1 {
        return Err(ParseError::new(0, format!("modulus must be monic of degree {k}")));
    }
    if !is_irreducible(&coeffs, p) {
        return Err(ParseError::new(0, format!("modulus {} is reducible", format_upoly(&coeffs, "x"))));
    }
    Ok(coeffs)
}

/// Parses the ring-spec grammar: `Z/6`, `GF(2,2)`, `GF(4)`,
/// `GF(2,2;x^2+x+1)`, `Z/2xZ/3` (left-associative), with parentheses for
/// grouping.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec, ParseError> {
    let mut p = SpecParser { text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(ParseError::new(p.pos, "unexpected trailing input"));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> FiniteRing {
        FiniteRing::parse(s).unwrap()
    }

    fn el(r: &FiniteRing, enc: &[u64]) -> Element {
        r.element_from_encoding(enc).unwrap()
    }

    #[test]
    fn zero_ring_has_zero_equal_one() {
        let r = FiniteRing::zmod(1).unwrap();
        assert_eq!(r.size(), 1);
        assert_eq!(r.zero(), r.one());
        assert_eq!(r.verify_axioms(), Ok(AxiomStatus::Verified));
    }

    #[test]
    fn gf4_has_four_elements() {
        let r = ring("GF(2,2;x^2+x+1)");
        assert_eq!(r.size(), 4);
        assert_eq!(r, ring("GF(2,2)"));
        assert_eq!(r, ring("GF(4)"));
    }

    #[test]
    fn crt_product_matches_z6_tables() {
        // CRT: k ↦ (k mod 2, k mod 3) is a ring isomorphism Z/6 → Z/2 × Z/3.
        let z6 = ring("Z/6");
        let prod = ring("Z/2xZ/3");
        assert_eq!(prod.size(), 6);
        let crt = |k: u64| prod.from_i64(k as i64);
        let mut images: Vec<Element> = (0..6).map(crt).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), 6);
        for a in 0..6u64 {
            for b in 0..6u64 {
                let (ea, eb) = (el(&z6, &[a]), el(&z6, &[b]));
                let sum = z6.encoding(z6.add(&ea, &eb))[0];
                let prod_ab = z6.encoding(z6.mul(&ea, &eb))[0];
                assert_eq!(prod.add(&crt(a), &crt(b)), crt(sum));
                assert_eq!(prod.mul(&crt(a), &crt(b)), crt(prod_ab));
            }
        }
    }

    #[test]
    fn canonical_order_starts_zero_one() {
        for s in ["Z/6", "GF(3,2)", "Z/2xZ/3", "Z/4xGF(2,2)", "Z/2"] {
            let r = ring(s);
            let el = r.elements();
            assert_eq!(r.encoding(el[0]).iter().sum::<u64>(), 0, "{s}");
            assert_eq!(el[1], r.one());
            let mut encs: Vec<Vec<u64>> = el.iter().map(|e| r.encoding(*e)).collect();
            let n = encs.len();
            encs.sort();
            encs.dedup();
            assert_eq!(encs.len(), n, "duplicate encodings in {s}");
        }
        // Z/2 x Z/3: one is (1,1), so (0,1) and (0,2) come before it in the tail.
        let r = ring("Z/2xZ/3");
        let labels: Vec<String> = r.elements().iter().map(|e| r.label(e)).collect();
        assert_eq!(labels, ["(0,0)", "(1,1)", "(0,1)", "(0,2)", "(1,0)", "(1,2)"]);
    }

    #[test]
    fn z6_addition() {
        let r = ring("Z/6");
        assert_eq!(r.add(&el(&r, &[3]), &el(&r, &[4])), el(&r, &[1]));
        for a in r.elements() {
            assert_eq!(r.add(&a, &r.zero()), a);
        }
    }

    #[test]
    fn gf4_generator_squares_to_generator_plus_one() {
        let r = ring("GF(2,2)");
        let g = el(&r, &[0, 1]);
        assert_eq!(r.mul(&g, &g), el(&r, &[1, 1]));
        assert_eq!(r.label(&r.mul(&g, &g)), "g + 1");
    }

    #[test]
    fn idempotents_of_small_rings() {
        let r = ring("Z/6");
        assert_eq!(r.format_set(&r.idempotents()), "{0,1,3,4}");
        let r = ring("Z/12");
        assert_eq!(r.format_set(&r.idempotents()), "{0,1,4,9}");
        let r = ring("GF(2,2)");
        assert_eq!(r.idempotents(), vec![r.zero(), r.one()]);
    }

    #[test]
    fn irreducible_search() {
        assert_eq!(find_irreducible(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(find_irreducible(2, 3).unwrap(), vec![1, 1, 0, 1]);
        assert_eq!(find_irreducible(4, 1), Err(RingError::NonPrimeModulus(4)));
    }

    #[test]
    fn irreducible_search_is_least() {
        // Brute force: every monic polynomial of lower rank has a root or a
        // quadratic factor; for degree <= 3 a root suffices.
        for (p, k) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = find_irreducible(p, k).unwrap();
            let rank = |g: &[u64]| g[..k as usize].iter().rev().fold(0u64, |acc, &c| acc * p + c);
            let has_root = |g: &[u64]| {
                (0..p).any(|r| g.iter().rev().fold(0u64, |acc, &c| (acc * r + c) % p) == 0)
            };
            assert!(!has_root(&f));
            for low in 0..rank(&f) {
                let mut g: Vec<u64> = (0..k).map(|i| low / p.pow(i) % p).collect();
                g.push(1);
                assert!(has_root(&g), "{g:?} over Z/{p} should have a root");
            }
        }
    }

    #[test]
    fn build_errors() {
        assert_eq!(FiniteRing::zmod(0).unwrap_err(), RingError::ZeroSize);
        assert_eq!(FiniteRing::galois(6, 1).unwrap_err(), RingError::NonPrimeModulus(6));
        let reducible = RingSpec::GaloisField {
            p: 2,
            k: 2,
            modulus: Some(vec![1, 0, 1]),
        };
        assert!(matches!(FiniteRing::new(reducible), Err(RingError::ReducibleModulus(_))));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = parse_ring_spec("Z/0").unwrap_err();
        assert_eq!(e.offset, 2);
        let e = parse_ring_spec("Z/2xGF(6,1)").unwrap_err();
        assert_eq!(e.offset, 7);
        let e = parse_ring_spec("Z/2xQ").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_ring_spec("GF(2,2;x^2+1)").unwrap_err();
        assert!(e.message.contains("reducible"), "{e}");
        let e = parse_ring_spec("Z/6 junk").unwrap_err();
        assert_eq!(e.offset, 4);
    }

    #[test]
    fn spec_display_round_trips() {
        for s in ["Z/6", "GF(2,2)", "GF(2,2;x^2 + x + 1)", "Z/2xZ/3xZ/5", "Z/2x(Z/3xZ/5)", "GF(3,1)xZ/4"] {
            let spec = parse_ring_spec(s).unwrap();
            assert_eq!(parse_ring_spec(&spec.to_string()).unwrap(), spec, "{s}");
        }
        assert_eq!(parse_ring_spec("Z/2xZ/3xZ/5").unwrap().to_string(), "Z/2xZ/3xZ/5");
    }

    #[test]
    fn field_detection_and_nilpotents() {
        for (s, field) in [("Z/5", true), ("GF(2,2)", true), ("Z/4", false), ("Z/6", false), ("GF(3,2)", true)] {
            let r = ring(s);
            assert_eq!(r.is_field(), field, "{s}");
            if field {
                assert_eq!(r.idempotents().len(), 2);
            }
        }
        let z4 = ring("Z/4");
        assert_eq!(z4.idempotents().len(), 2);
        assert_eq!(z4.format_set(&z4.nilpotents()), "{0,2}");
    }

    #[test]
    fn prefix_enumeration_realizes_custom_order() {
        let r = ring("Z/6");
        let three = el(&r, &[3]);
        let four = el(&r, &[4]);
        let order = r.enumerate_with_prefix(&[r.zero(), r.one(), three, four]).unwrap();
        let labels: Vec<String> = order.iter().map(|e| r.label(e)).collect();
        assert_eq!(labels, ["0", "1", "3", "4", "2", "5"]);
        assert!(r.enumerate_with_prefix(&[three, three]).is_err());
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let r = ring("Z/3");
        let big = ring("Z/9");
        let alien = big.element(7).unwrap();
        assert!(matches!(r.try_add(alien, r.one()), Err(RingError::ForeignElement(_))));
        assert!(r.element_from_encoding(&[3]).is_err());
        assert!(r.element_from_encoding(&[1, 0]).is_err());
    }

    #[test]
    fn large_rings_compute_without_tables() {
        let r = FiniteRing::galois(2, 9).unwrap();
        assert_eq!(r.size(), 512);
        assert_eq!(r.verify_axioms(), Ok(AxiomStatus::Trusted));
        let g = r.element_from_encoding(&[0, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        // g^(2^9 - 1) = 1 in the multiplicative group of GF(512).
        assert_eq!(r.pow(&g, 511), r.one());
        assert_eq!(r.add(&g, &g), r.zero());
    }

    #[test]
    fn exhaustive_axioms_for_small_rings() {
        for s in ["Z/1", "Z/2", "Z/6", "Z/12", "GF(2,2)", "GF(3,2)", "Z/2xZ/2", "Z/4xZ/3", "GF(2,3)xZ/2"] {
            assert_eq!(ring(s).verify_axioms(), Ok(AxiomStatus::Verified), "{s}");
        }
    }
}
