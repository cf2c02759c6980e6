//! The biring `R[x]` and its quotients `R[x]/(x^q - x)`.
//!
//! Tensor legs: the first factor is the variable `x`, the second `y`, and a
//! third (for coassociativity) `z`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::poly::{Monomial, PolyError, Polynomial, Var};
use crate::report::Report;
use crate::ring::{FiniteCarrier, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BiringError {
    #[error("expected a polynomial in x, found variable `{0}`")]
    ForeignVariable(String),
    #[error("element is not in the base ring")]
    ForeignElement,
    #[error("modulus degree must be at least 2, got {0}")]
    InvalidModulusDegree(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `R[x]`, or `R[x]/(x^q - x)` when a modulus is set.
#[derive(Clone, Debug, PartialEq)]
pub struct Biring<R: Ring> {
    base: R,
    modulus: Option<u64>,
}

/// Which component of the coideal test failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoidealWitness<E> {
    /// Nonzero normal form of `Δ⁺(x^q - x)`.
    Coadd(String),
    /// Nonzero normal form of `Δ^×(x^q - x)`.
    Comul(String),
    /// `ε_r(x^q - x) = value ≠ 0`.
    Counit { r: E, value: E },
}

pub fn x() -> Var {
    Var::new("x")
}

pub fn y() -> Var {
    Var::new("y")
}

pub fn z() -> Var {
    Var::new("z")
}

impl<R: Ring> Biring<R> {
    pub fn new(base: R) -> Self {
        Biring { base, modulus: None }
    }

    pub fn quotient(base: R, q: u64) -> Result<Self, BiringError> {
        if q < 2 {
            return Err(BiringError::InvalidModulusDegree(q));
        }
        Ok(Biring { base, modulus: Some(q) })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn var(&self) -> Polynomial<R> {
        Polynomial::var(&self.base, "x")
    }

    /// `x^q - x`.
    pub fn defining_poly(&self, q: u64) -> Polynomial<R> {
        let x = self.var();
        &x.pow(q as u32) - &x
    }

    /// Reduces in the listed variables when a modulus is set.
    pub fn canonical(&self, p: &Polynomial<R>, vars: &[Var]) -> Polynomial<R> {
        match self.modulus {
            Some(q) => p.reduce_xq(q, vars).expect("modulus validated"),
            None => p.clone(),
        }
    }

    fn check_univariate(&self, p: &Polynomial<R>) -> Result<(), BiringError> {
        if p.ring() != &self.base {
            return Err(PolyError::MixedCoefficientRings.into());
        }
        match p.vars().into_iter().find(|v| *v != x()) {
            Some(v) => Err(BiringError::ForeignVariable(v.name().to_string())),
            None => Ok(()),
        }
    }

    fn poly(&self, text: &str) -> Polynomial<R> {
        Polynomial::parse(text, &self.base).expect("internal polynomial literal")
    }

    fn leg_substitute(&self, p: &Polynomial<R>, image: &str, vars: &[Var]) -> Result<Polynomial<R>, BiringError> {
        self.check_univariate(p)?;
        let out = p.substitute_some(&BTreeMap::from([(x(), self.poly(image))]))?;
        Ok(self.canonical(&out, vars))
    }

    /// `Δ⁺P = P(x + y)`.
    pub fn coadd(&self, p: &Polynomial<R>) -> Result<Polynomial<R>, BiringError> {
        self.leg_substitute(p, "x + y", &[x(), y()])
    }

    /// `Δ^×P = P(x·y)`.
    pub fn comul(&self, p: &Polynomial<R>) -> Result<Polynomial<R>, BiringError> {
        self.leg_substitute(p, "x*y", &[x(), y()])
    }

    /// `ε_r(P) = P(r)`.
    pub fn counit(&self, p: &Polynomial<R>, r: &R::Elem) -> Result<R::Elem, BiringError> {
        self.check_univariate(p)?;
        if !self.base.contains(r) {
            return Err(BiringError::ForeignElement);
        }
        Ok(p.evaluate(&BTreeMap::from([(x(), r.clone())]))?)
    }

    /// `P(-x)`.
    pub fn coinverse(&self, p: &Polynomial<R>) -> Result<Polynomial<R>, BiringError> {
        self.leg_substitute(p, "-x", &[x()])
    }

    /// Checks the co-ring laws on each sample element.
    pub fn verify_colaws(&self, sample: &[Polynomial<R>]) -> Result<Report, BiringError>
    where
        R: FiniteCarrier,
    {
        let mut report = Report::new("biring co-laws");
        if let Some(q) = self.modulus {
            if let Err(w) = Biring::new(self.base.clone()).is_coideal(q)? {
                report.flag(format!(
                    "x^{q} - x does not generate a coideal over this base ({}); the quotient co-operations are ill-defined",
                    describe_witness(&self.base, &w)
                ));
            }
        }
        let xyz = [x(), y(), z()];
        let xy = [x(), y()];
        for p in sample {
            let p = self.canonical(p, &[x()]);
            let input = || p.to_string();
            let add = self.coadd(&p)?;
            let mul = self.comul(&p)?;

            for (name, delta, leg) in [("coassociativity(+)", &add, "x + y"), ("coassociativity(*)", &mul, "x*y")] {
                let left = self.canonical(
                    &delta.substitute(&BTreeMap::from([(x(), self.poly(leg)), (y(), self.poly("z"))]))?,
                    &xyz,
                );
                let right = self.canonical(
                    &delta.substitute(&BTreeMap::from([
                        (x(), self.poly("x")),
                        (y(), self.poly(&leg.replace('y', "z").replace('x', "y"))),
                    ]))?,
                    &xyz,
                );
                report.check(name, left == right, || (input(), left.to_string(), right.to_string()));
            }

            for (name, delta) in [("cocommutativity(+)", &add), ("cocommutativity(*)", &mul)] {
                let swapped = delta.rename(&[("x", "y"), ("y", "x")]);
                report.check(name, swapped == *delta, || (input(), delta.to_string(), swapped.to_string()));
            }

            for (name, delta, unit) in [("counit(+)", &add, 0i64), ("counit(*)", &mul, 1)] {
                let c = Polynomial::from_int(&self.base, unit);
                let left = delta.substitute(&BTreeMap::from([(x(), c.clone()), (y(), self.var())]))?;
                let right = delta.substitute(&BTreeMap::from([(x(), self.var()), (y(), c)]))?;
                let left = self.canonical(&left, &[x()]);
                let right = self.canonical(&right, &[x()]);
                let pass = left == p && right == p;
                report.check(name, pass, || (input(), p.to_string(), format!("{left} / {right}")));
            }

            // (Δ⁺ ⊗ id)Δ^× P against Δ^× applied to both summands: P((x+y)z) = P(xz + yz).
            let left = self.canonical(
                &mul.substitute(&BTreeMap::from([(x(), self.poly("x + y")), (y(), self.poly("z"))]))?,
                &xyz,
            );
            let right = self.canonical(
                &add.substitute(&BTreeMap::from([(x(), self.poly("x*z")), (y(), self.poly("y*z"))]))?,
                &xyz,
            );
            report.check("distributivity", left == right, || (input(), left.to_string(), right.to_string()));

            let folded = self.canonical(
                &add.substitute(&BTreeMap::from([(x(), self.poly("-x")), (y(), self.var())]))?,
                &[x()],
            );
            let expected = Polynomial::constant(&self.base, self.counit(&p, &self.base.zero())?);
            report.check("antipode", folded == expected, || {
                (input(), expected.to_string(), folded.to_string())
            });

            let again = self.canonical(&add, &xy);
            report.check("canonical", again == add, || (input(), add.to_string(), again.to_string()));
        }
        Ok(report)
    }
}

impl<R: FiniteCarrier> Biring<R> {
    /// Whether `(x^q - x)` is a coideal for both co-operations.
    ///
    /// Membership in `I⊗B + B⊗I` is decided by the normal form in both
    /// variables. The components are tested in the order coaddition,
    /// comultiplication, counit; the first failure is returned.
    pub fn is_coideal(&self, q: u64) -> Result<Result<(), CoidealWitness<R::Elem>>, BiringError> {
        if q < 2 {
            return Err(BiringError::InvalidModulusDegree(q));
        }
        let free = Biring::new(self.base.clone());
        let f = free.defining_poly(q);
        let xy = [x(), y()];
        let add = free.coadd(&f)?.reduce_xq(q, &xy)?;
        if !add.is_zero() {
            return Ok(Err(CoidealWitness::Coadd(add.to_string())));
        }
        let mul = free.comul(&f)?.reduce_xq(q, &xy)?;
        if !mul.is_zero() {
            return Ok(Err(CoidealWitness::Comul(mul.to_string())));
        }
        for r in self.base.elements() {
            let value = free.counit(&f, &r)?;
            if !self.base.is_zero(&value) {
                return Ok(Err(CoidealWitness::Counit { r, value }));
            }
        }
        Ok(Ok(()))
    }

    /// Every reduced polynomial `Σ_{i<q} c_i x^i`, in mixed-radix order of
    /// the coefficient vector (constant coefficient fastest).
    pub fn quotient_elements(&self) -> Option<Vec<Polynomial<R>>> {
        let q = self.modulus?;
        Some(reduced_polynomials(&self.base, q as usize))
    }
}

/// All polynomials of degree below `len` over a finite ring.
pub fn reduced_polynomials<R: FiniteCarrier>(ring: &R, len: usize) -> Vec<Polynomial<R>> {
    let elems = ring.elements();
    let n = elems.len();
    let count = n.checked_pow(len as u32).expect("reduced polynomial count overflows");
    let mut out = Vec::with_capacity(count);
    let mut digits = vec![0usize; len];
    for _ in 0..count {
        out.push(Polynomial::from_terms(
            ring,
            digits
                .iter()
                .enumerate()
                .map(|(i, &d)| (Monomial::power(x(), i as u32), elems[d].clone())),
        ));
        for d in digits.iter_mut() {
            *d += 1;
            if *d < n {
                break;
            }
            *d = 0;
        }
    }
    out
}

pub fn describe_witness<R: Ring>(ring: &R, w: &CoidealWitness<R::Elem>) -> String {
    match w {
        CoidealWitness::Coadd(p) => format!("coaddition leaves {p}"),
        CoidealWitness::Comul(p) => format!("comultiplication leaves {p}"),
        CoidealWitness::Counit { r, value } => {
            format!("counit at {} gives {}", ring.label(r), ring.label(value))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::FiniteRing;
    use crate::ring::Integers;

    fn ring(s: &str) -> FiniteRing {
        FiniteRing::parse(s).unwrap()
    }

    fn p<R: Ring>(s: &str, r: &R) -> Polynomial<R> {
        Polynomial::parse(s, r).unwrap()
    }

    #[test]
    fn coaddition_examples() {
        let z2 = ring("Z/2");
        let b = Biring::new(z2.clone());
        assert_eq!(b.coadd(&b.var()).unwrap(), p("x + y", &z2));
        assert_eq!(b.coadd(&p("x^2 + x", &z2)).unwrap(), p("x^2 + x + y^2 + y", &z2));
        let z3 = ring("Z/3");
        let b3 = Biring::new(z3.clone());
        assert_eq!(b3.coadd(&p("x^2", &z3)).unwrap(), p("x^2 + 2*x*y + y^2", &z3));
    }

    #[test]
    fn comultiplication_examples() {
        let z2 = ring("Z/2");
        let b = Biring::new(z2.clone());
        assert_eq!(b.comul(&b.var()).unwrap(), p("x*y", &z2));
        assert_eq!(b.comul(&p("x^2 + x", &z2)).unwrap(), p("x^2*y^2 + x*y", &z2));
        assert_eq!(b.comul(&p("1", &z2)).unwrap(), p("1", &z2));
    }

    #[test]
    fn counit_and_coinverse_examples() {
        let z6 = ring("Z/6");
        let b = Biring::new(z6.clone());
        assert_eq!(b.counit(&b.var(), &z6.from_i64(5)).unwrap(), z6.from_i64(5));
        let z3 = ring("Z/3");
        let b3 = Biring::new(z3.clone());
        assert_eq!(b3.counit(&p("1 - x^2", &z3), &z3.zero()).unwrap(), z3.one());
        assert_eq!(b3.coinverse(&p("x^2 + x", &z3)).unwrap(), p("x^2 + 2*x", &z3));
        assert_eq!(b3.coinverse(&b3.var()).unwrap(), p("-x", &z3));
        let z2 = ring("Z/2");
        let b2 = Biring::new(z2.clone());
        let q = p("x^3 + x + 1", &z2);
        assert_eq!(b2.coinverse(&q).unwrap(), q);
    }

    #[test]
    fn counit_kills_defining_poly_over_fields() {
        for spec in ["GF(2,1)", "GF(3,1)", "GF(2,2)", "GF(5,1)"] {
            let r = ring(spec);
            let b = Biring::new(r.clone());
            let f = b.defining_poly(r.size() as u64);
            for e in r.elements() {
                assert_eq!(b.counit(&f, &e).unwrap(), r.zero(), "{spec}");
            }
        }
    }

    #[test]
    fn foreign_inputs_rejected() {
        let z3 = ring("Z/3");
        let b = Biring::new(z3.clone());
        assert_eq!(b.coadd(&p("y", &z3)), Err(BiringError::ForeignVariable("y".into())));
        let alien = ring("Z/7").element(5).unwrap();
        assert_eq!(b.counit(&b.var(), &alien), Err(BiringError::ForeignElement));
        assert_eq!(Biring::quotient(z3, 1), Err(BiringError::InvalidModulusDegree(1)));
    }

    #[test]
    fn coideal_examples() {
        assert_eq!(Biring::new(ring("Z/3")).is_coideal(3).unwrap(), Ok(()));
        assert_eq!(Biring::new(ring("Z/2")).is_coideal(2).unwrap(), Ok(()));
        let w = Biring::new(ring("Z/6")).is_coideal(6).unwrap().unwrap_err();
        assert_eq!(w, CoidealWitness::Coadd("3*x^4*y^2 + 2*x^3*y^3 + 3*x^2*y^4".into()));
    }

    #[test]
    fn comul_decomposition_over_integers() {
        // x^q y^q - xy = y^q (x^q - x) + x (y^q - y), symbolically over Z.
        let z = Integers;
        for q in 2..=7u32 {
            let lhs = p(&format!("x^{q}*y^{q} - x*y"), &z);
            let rhs = p(&format!("y^{q}*(x^{q} - x) + x*(y^{q} - y)"), &z);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn colaws_over_gf2_exhaustive() {
        let b = Biring::quotient(ring("GF(2,1)"), 2).unwrap();
        let elems = b.quotient_elements().unwrap();
        assert_eq!(elems.len(), 4);
        let r = b.verify_colaws(&elems).unwrap();
        assert!(r.is_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.flags.is_empty());
    }

    #[test]
    fn colaws_flag_bad_configuration() {
        let z6 = ring("Z/6");
        let b = Biring::quotient(z6.clone(), 6).unwrap();
        let r = b.verify_colaws(&[p("x^6 - x", &z6), b.var()]).unwrap();
        assert_eq!(r.tally("coassociativity(+)").failed, 0);
        assert_eq!(r.flags.len(), 1);
    }

    #[test]
    fn quotient_enumeration_counts() {
        let b = Biring::quotient(ring("GF(3,1)"), 3).unwrap();
        let elems = b.quotient_elements().unwrap();
        assert_eq!(elems.len(), 27);
        let distinct: std::collections::HashSet<_> = elems.iter().collect();
        assert_eq!(distinct.len(), 27);
        assert!(elems.iter().all(|e| e.degree() < 3));
    }
}
