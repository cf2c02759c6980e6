//! Sparse multivariate polynomials over a [`Ring`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`]; zero coefficients are
//! never stored. Display and the text format use graded lexicographic order
//! with variables compared alphabetically, highest term first.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::error::ParseError;
use crate::ring::{literal_is_negative, Literal, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials over different coefficient rings")]
    MixedCoefficientRings,
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("modulus degree must be at least 2, got {0}")]
    InvalidModulusDegree(u64),
    #[error("value for `{0}` is not an element of the coefficient ring")]
    ForeignElement(String),
}

/// A polynomial variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A power product of variables; exponents are positive and variables sorted.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn power(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Graded lexicographic comparison with variables in alphabetical order.
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal if ea != eb => return ea.cmp(eb),
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }

    fn map_exponents(&self, mut f: impl FnMut(&Var, u32) -> u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|(v, e)| (v.clone(), f(v, *e)))
                .filter(|&(_, e)| e > 0)
                .collect(),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial with coefficients in `R`.
#[derive(Clone)]
pub struct Polynomial<R: Ring> {
    ring: R,
    terms: BTreeMap<Monomial, R::Elem>,
}

/// Variable bindings for [`Polynomial::substitute`].
pub type Bindings<R> = BTreeMap<Var, Polynomial<R>>;

impl<R: Ring> Polynomial<R> {
    pub fn zero(ring: &R) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &R) -> Self {
        Self::constant(ring, ring.one())
    }

    pub fn constant(ring: &R, c: R::Elem) -> Self {
        Self::monomial(ring, c, Monomial::one())
    }

    pub fn from_int(ring: &R, n: i64) -> Self {
        Self::constant(ring, ring.from_i64(n))
    }

    pub fn var(ring: &R, name: &str) -> Self {
        Self::monomial(ring, ring.one(), Monomial::var(Var::new(name)))
    }

    pub fn monomial(ring: &R, c: R::Elem, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms(ring: &R, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.ring.add(o.get(), &c);
                if self.ring.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    /// Terms in display order (graded lexicographic, highest first).
    pub fn terms_grlex(&self) -> Vec<(&Monomial, &R::Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coeff(&Monomial::one())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    fn same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::MixedCoefficientRings)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, a)| (m.clone(), self.ring.mul(c, a))),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution; every variable must be bound.
    pub fn substitute(&self, bindings: &Bindings<R>) -> Result<Self, PolyError> {
        if let Some(v) = self.vars().into_iter().find(|v| !bindings.contains_key(v)) {
            return Err(PolyError::UnboundVariable(v.name().to_string()));
        }
        self.substitute_some(bindings)
    }

    /// Simultaneous substitution; unbound variables are kept.
    pub fn substitute_some(&self, bindings: &Bindings<R>) -> Result<Self, PolyError> {
        for b in bindings.values() {
            self.same_ring(b)?;
        }
        let mut powers: HashMap<&Var, Vec<Self>> = HashMap::new();
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut term = Self::constant(&self.ring, c.clone());
            let mut kept = Vec::new();
            for (v, e) in m.iter() {
                match bindings.get(v) {
                    Some(img) => {
                        let cache = powers.entry(v).or_insert_with(|| vec![Self::one(&self.ring)]);
                        while cache.len() <= e as usize {
                            let next = &cache[cache.len() - 1] * img;
                            cache.push(next);
                        }
                        term = &term * &cache[e as usize];
                    }
                    None => kept.push((v.clone(), e)),
                }
            }
            if !kept.is_empty() {
                term = &term * &Self::monomial(&self.ring, self.ring.one(), Monomial(kept));
            }
            for (m2, c2) in term.terms {
                out.add_term(m2, c2);
            }
        }
        Ok(out)
    }

    /// Renames variables; the renaming should be injective on `self.vars()`.
    pub fn rename(&self, map: &[(&str, &str)]) -> Self {
        let lookup: HashMap<&str, &str> = map.iter().copied().collect();
        Self::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| {
                let m2 = Monomial::from_pairs(m.iter().map(|(v, e)| {
                    (
                        lookup.get(v.name()).map_or_else(|| v.clone(), |n| Var::new(n)),
                        e,
                    )
                }));
                (m2, c.clone())
            }),
        )
    }

    /// Value of the polynomial under `env`, summing term by term.
    pub fn evaluate(&self, env: &BTreeMap<Var, R::Elem>) -> Result<R::Elem, PolyError> {
        for (v, a) in env {
            if !self.ring.contains(a) {
                return Err(PolyError::ForeignElement(v.name().to_string()));
            }
        }
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let a = env
                    .get(v)
                    .ok_or_else(|| PolyError::UnboundVariable(v.name().to_string()))?;
                t = self.ring.mul(&t, &self.ring.pow(a, e as u64));
            }
            acc = self.ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Normal form modulo `v^q - v` for every `v` in `vars`.
    pub fn reduce_xq(&self, q: u64, vars: &[Var]) -> Result<Self, PolyError> {
        if q < 2 {
            return Err(PolyError::InvalidModulusDegree(q));
        }
        let period = q - 1;
        Ok(Self::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| {
                let m2 = m.map_exponents(|v, e| {
                    if vars.contains(v) && e as u64 >= q {
                        (1 + (e as u64 - 1) % period) as u32
                    } else {
                        e
                    }
                });
                (m2, c.clone())
            }),
        ))
    }

    pub fn map_coefficients<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Polynomial<S> {
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Parses the text format (`3*x^2*y + 1`, with `-`, parentheses and
    /// `{c0,c1}` encoded coefficients).
    pub fn parse(text: &str, ring: &R) -> Result<Self, ParseError> {
        let mut p = PolyParser { text, pos: 0, ring };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(ParseError::new(p.pos, "unexpected trailing input"));
        }
        Ok(poly)
    }
}

impl<R: Ring> PartialEq for Polynomial<R> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}

impl<R: Ring> Eq for Polynomial<R> {}

impl<R: Ring> Hash for Polynomial<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<R: Ring> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms_grlex().into_iter().enumerate() {
            let lit = self.ring.literal(c);
            let negative = literal_is_negative(&lit);
            let (c_abs, lit_abs) = if negative {
                let n = self.ring.neg(c);
                let l = self.ring.literal(&n);
                (n, l)
            } else {
                (c.clone(), lit)
            };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let coeff_text = match lit_abs {
                Literal::Int(n) => n.to_string(),
                Literal::Encoded(v) => {
                    let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                    format!("{{{}}}", parts.join(","))
                }
            };
            if m.is_one() {
                f.write_str(&coeff_text)?;
            } else if self.ring.is_one(&c_abs) {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff_text}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]", self)
    }
}

impl<R: Ring> Add for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn add(self, rhs: Self) -> Polynomial<R> {
        self.checked_add(rhs).expect("mixed coefficient rings")
    }
}

impl<R: Ring> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn sub(self, rhs: Self) -> Polynomial<R> {
        self.checked_sub(rhs).expect("mixed coefficient rings")
    }
}

impl<R: Ring> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn mul(self, rhs: Self) -> Polynomial<R> {
        self.checked_mul(rhs).expect("mixed coefficient rings")
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn neg(self) -> Polynomial<R> {
        Polynomial::neg(self)
    }
}

/// Builds a binding map from `(name, image)` pairs.
pub fn bind<R: Ring>(pairs: impl IntoIterator<Item = (&'static str, Polynomial<R>)>) -> Bindings<R> {
    pairs.into_iter().map(|(v, p)| (Var::new(v), p)).collect()
}

struct PolyParser<'a, R: Ring> {
    text: &'a str,
    pos: usize,
    ring: &'a R,
}

impl<'a, R: Ring> PolyParser<'a, R> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let n = self.rest().len() - self.rest().trim_start().len();
        self.pos += n;
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn bump(&mut self) {
        self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
    }

    fn expr(&mut self) -> Result<Polynomial<R>, ParseError> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.bump();
                self.term()?.neg()
            }
            Some('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<R>, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.bump();
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Polynomial<R>, ParseError> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.bump();
            let (e, at) = self.uint()?;
            let e = u32::try_from(e).map_err(|_| ParseError::new(at, "exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn uint(&mut self) -> Result<(BigInt, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let n = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if n == 0 {
            return Err(ParseError::new(start, "expected a non-negative integer"));
        }
        self.pos += n;
        Ok((self.text[start..self.pos].parse().unwrap(), start))
    }

    fn primary(&mut self) -> Result<Polynomial<R>, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let (n, _) = self.uint()?;
                Ok(Polynomial::constant(self.ring, self.ring.from_int(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let n = self
                    .rest()
                    .bytes()
                    .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                    .count();
                let name = &self.text[self.pos..self.pos + n];
                self.pos += n;
                Ok(Polynomial::var(self.ring, name))
            }
            Some('{') => {
                self.bump();
                let mut enc = Vec::new();
                loop {
                    let (n, at) = self.uint()?;
                    let n = u64::try_from(&n).map_err(|_| ParseError::new(at, "encoding entry too large"))?;
                    enc.push(n);
                    match self.peek() {
                        Some(',') => self.bump(),
                        Some('}') => {
                            self.bump();
                            break;
                        }
                        _ => return Err(ParseError::new(self.pos, "expected `,` or `}`")),
                    }
                }
                let c = self
                    .ring
                    .from_literal(&Literal::Encoded(enc))
                    .ok_or_else(|| ParseError::new(start, "encoding is not an element of the coefficient ring"))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(ParseError::new(self.pos, "expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) => Err(ParseError::new(start, format!("unexpected `{c}`"))),
            None => Err(ParseError::new(start, "unexpected end of input")),
        }
    }
}

/// Whether every coefficient is non-negative; used by printers that want to
/// avoid subtraction.
pub fn has_negative_coefficients(p: &Polynomial<crate::ring::Integers>) -> bool {
    p.terms().any(|(_, c)| c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::FiniteRing;
    use crate::ring::Integers;

    fn zp(n: u64) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn p<R: Ring>(s: &str, r: &R) -> Polynomial<R> {
        Polynomial::parse(s, r).unwrap()
    }

    #[test]
    fn char_two_square() {
        let r = zp(2);
        let a = p("x+1", &r);
        assert_eq!((&a * &a).to_string(), "x^2 + 1");
        assert_eq!(&a + &Polynomial::zero(&r), a);
    }

    #[test]
    fn integer_binomial() {
        let z = Integers;
        let a = p("x+y", &z);
        assert_eq!((&a * &a).to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(p("x - 3*y^2 - 1", &z).to_string(), "-3*y^2 + x - 1");
        assert_eq!(p("-x", &z).to_string(), "-x");
    }

    #[test]
    fn substitution_examples() {
        let r = zp(2);
        let sq = p("x^2", &r);
        let out = sq.substitute(&bind([("x", p("x+y", &r))])).unwrap();
        assert_eq!(out, p("x^2 + y^2", &r));

        let poly = p("x^3 + x*y + 1", &r);
        let id = bind([("x", p("x", &r)), ("y", p("y", &r))]);
        assert_eq!(poly.substitute(&id).unwrap(), poly);

        let z = Integers;
        let cube = p("x^3", &z).substitute(&bind([("x", p("x*y", &z))])).unwrap();
        assert_eq!(cube.to_string(), "x^3*y^3");
    }

    #[test]
    fn substitution_errors() {
        let r = zp(3);
        let poly = p("x*y", &r);
        assert_eq!(
            poly.substitute(&bind([("x", p("x", &r))])),
            Err(PolyError::UnboundVariable("y".into()))
        );
        let other = zp(5);
        assert_eq!(
            poly.substitute(&bind([("x", p("x", &other)), ("y", p("y", &other))])),
            Err(PolyError::MixedCoefficientRings)
        );
        assert_eq!(p("x", &r).checked_add(&p("x", &other)), Err(PolyError::MixedCoefficientRings));
    }

    #[test]
    fn evaluation_examples() {
        let z6 = zp(6);
        let five = z6.from_i64(5);
        let env = BTreeMap::from([(Var::new("x"), five)]);
        assert_eq!(p("x", &z6).evaluate(&env).unwrap(), five);
        assert_eq!(Polynomial::zero(&z6).evaluate(&BTreeMap::new()).unwrap(), z6.zero());

        let z5 = zp(5);
        let env = BTreeMap::from([(Var::new("x"), z5.from_i64(2)), (Var::new("y"), z5.from_i64(3))]);
        assert_eq!(p("(x+y)*x", &z5).evaluate(&env).unwrap(), z5.zero());
        assert_eq!(
            p("x*y", &z5).evaluate(&BTreeMap::from([(Var::new("x"), z5.one())])),
            Err(PolyError::UnboundVariable("y".into()))
        );
        let alien = zp(9).element(7).unwrap();
        assert_eq!(
            p("x", &z5).evaluate(&BTreeMap::from([(Var::new("x"), alien)])),
            Err(PolyError::ForeignElement("x".into()))
        );
    }

    #[test]
    fn reduce_examples() {
        let z = Integers;
        let x = [Var::new("x")];
        let xy = [Var::new("x"), Var::new("y")];
        assert_eq!(p("x^4", &z).reduce_xq(3, &x).unwrap(), p("x^2", &z));
        assert_eq!(p("x", &z).reduce_xq(5, &x).unwrap(), p("x", &z));
        assert_eq!(p("x^2*y^6", &z).reduce_xq(3, &xy).unwrap(), p("x^2*y^2", &z));
        assert_eq!(p("x^7*y^7", &z).reduce_xq(4, &x).unwrap(), p("x*y^7", &z));
        assert_eq!(p("x", &z).reduce_xq(1, &x), Err(PolyError::InvalidModulusDegree(1)));
    }

    #[test]
    fn reduce_difference_is_divisible() {
        // Oracle: x^e - x^r is divisible by x^q - x exactly when long division
        // over Z leaves no remainder.
        fn divides_by_xq_minus_x(mut coeffs: Vec<i64>, q: usize) -> bool {
            // coeffs constant term first; divide by x^q - x.
            while coeffs.len() > q {
                let lead = coeffs.pop().unwrap();
                let shift = coeffs.len() - q;
                coeffs[shift + 1] += lead;
            }
            coeffs.iter().all(|&c| c == 0)
        }
        let z = Integers;
        let x = [Var::new("x")];
        for q in 2..=5usize {
            for e in 0..=20u32 {
                let red = p(&format!("x^{e}"), &z).reduce_xq(q as u64, &x).unwrap();
                let r = red.degree() as usize;
                let mut diff = vec![0i64; e.max(r as u32) as usize + 1];
                diff[e as usize] += 1;
                diff[r] -= 1;
                assert!(divides_by_xq_minus_x(diff, q), "x^{e} vs x^{r} for q={q}");
                assert!(r < q);
            }
        }
    }

    #[test]
    fn encoded_coefficients_round_trip() {
        let r = FiniteRing::parse("Z/2xZ/3").unwrap();
        let text = "{1,2}*x^2 + x + {0,1}";
        let poly = p(text, &r);
        assert_eq!(poly.to_string(), text);
        let gf = FiniteRing::parse("GF(3,2)").unwrap();
        let poly = p("{0,1}*x*y + 2*y + 1", &gf);
        assert_eq!(poly.to_string(), "{0,1}*x*y + 2*y + 1");
    }

    #[test]
    fn parse_errors_report_offsets() {
        let z = Integers;
        assert_eq!(Polynomial::parse("x + * y", &z).unwrap_err().offset, 4);
        assert_eq!(Polynomial::parse("(x + 1", &z).unwrap_err().offset, 6);
        assert_eq!(Polynomial::parse("x^y", &z).unwrap_err().offset, 2);
        assert_eq!(Polynomial::parse("3 x", &z).unwrap_err().offset, 2);
        let r = zp(3);
        assert_eq!(Polynomial::parse("{5}*x", &r).unwrap_err().offset, 0);
    }

    #[test]
    fn grlex_display_order() {
        let z = Integers;
        let poly = p("1 + y^2 + x*y + x^2 + x + y + x^3", &z);
        assert_eq!(poly.to_string(), "x^3 + x^2 + x*y + y^2 + x + y + 1");
    }
}
