//! Polynomials over `F_p`, kept sorted under the local term order so that the
//! first term is the leading (lowest degree) one.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::monomial::{Monomial, MAX_VARS};

/// Order of a polynomial: the least degree of a term, `Infinite` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(d) => Some(d),
            Order::Infinite => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    terms: Vec<(Monomial, Fp)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    /// Build from unsorted terms; merges duplicates and drops zeros.
    pub fn from_terms(field: &PrimeField, mut terms: Vec<(Monomial, Fp)>) -> Self {
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, Fp)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out }
    }

    /// Terms must already be strictly decreasing with nonzero coefficients.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, Fp)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|t| !t.1.is_zero()));
        Poly { terms }
    }

    pub fn constant(c: Fp) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn one() -> Self {
        Poly::constant(Fp::ONE)
    }

    pub fn monomial(m: Monomial, c: Fp) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(i: usize) -> Self {
        Poly::monomial(Monomial::var(i), Fp::ONE)
    }

    pub fn terms(&self) -> &[(Monomial, Fp)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Fp)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(Monomial, Fp)> {
        self.terms.first().copied()
    }

    pub fn order(&self) -> Order {
        match self.terms.first() {
            Some((m, _)) => Order::Finite(m.degree()),
            None => Order::Infinite,
        }
    }

    /// Highest total degree of a term; 0 for the zero polynomial.
    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Fp {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => Fp::ZERO,
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn coefficient(&self, m: Monomial) -> Fp {
        self.terms
            .binary_search_by(|t| m.cmp(&t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(Fp::ZERO)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|t| t.0.degree() == d)
                .collect(),
        }
    }

    /// Drop every term of degree `>= d`.
    pub fn truncate_below(&self, d: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .copied()
                .filter(|t| t.0.degree() < d)
                .collect(),
        }
    }

    pub fn add(&self, field: &PrimeField, other: &Poly) -> Poly {
        self.axpy(field, Fp::ONE, Monomial::ONE, other)
    }

    pub fn sub(&self, field: &PrimeField, other: &Poly) -> Poly {
        self.axpy(field, field.neg(Fp::ONE), Monomial::ONE, other)
    }

    pub fn neg(&self, field: &PrimeField) -> Poly {
        Poly {
            terms: self.terms.iter().map(|&(m, c)| (m, field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, field: &PrimeField, c: Fp) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|&(m, a)| (m, field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, field: &PrimeField, c: Fp, m: Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // multiplying by a monomial preserves the order of the terms
        Poly {
            terms: self
                .terms
                .iter()
                .map(|&(t, a)| (t.mul(m), field.mul(a, c)))
                .collect(),
        }
    }

    /// `self + c * m * other`, merged in one pass.
    pub fn axpy(&self, field: &PrimeField, c: Fp, m: Monomial, other: &Poly) -> Poly {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = b[j].0.mul(m);
            if i == a.len() {
                out.push((bm, field.mul(b[j].1, c)));
                j += 1;
                continue;
            }
            match a[i].0.cmp(&bm) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((bm, field.mul(b[j].1, c)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = field.add(a[i].1, field.mul(b[j].1, c));
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn mul(&self, field: &PrimeField, other: &Poly) -> Poly {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Poly::zero();
        for &(m, c) in &small.terms {
            acc = acc.axpy(field, c, m, large);
        }
        acc
    }

    pub fn pow(&self, field: &PrimeField, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, field: &PrimeField) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(field, field.inv(c).expect("nonzero leading coefficient")),
            None => Poly::zero(),
        }
    }

    /// Substitute `x_i -> images[i]`.
    pub fn substitute(&self, field: &PrimeField, images: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for &(m, c) in &self.terms {
            let mut t = Poly::constant(c);
            for (i, img) in images.iter().enumerate() {
                let e = m.exponent(i);
                if e > 0 {
                    t = t.mul(field, &img.pow(field, e));
                }
            }
            acc = acc.add(field, &t);
        }
        acc
    }

    /// Split `self = x_var * q + r` where no term of `r` is divisible by `x_var`.
    pub fn split_by_var(&self, var: usize) -> (Poly, Poly) {
        let v = Monomial::var(var);
        let mut q = Vec::new();
        let mut r = Vec::new();
        for &(m, c) in &self.terms {
            match v.quotient_of(m) {
                Some(qm) => q.push((qm, c)),
                None => r.push((m, c)),
            }
        }
        (Poly::from_sorted(q), Poly::from_sorted(r))
    }

    /// Exact division by a monomial, `None` if some term is not divisible.
    pub fn div_monomial(&self, m: Monomial) -> Option<Poly> {
        let mut out = Vec::with_capacity(self.terms.len());
        for &(t, c) in &self.terms {
            out.push((m.quotient_of(t)?, c));
        }
        Some(Poly::from_sorted(out))
    }

    /// Render with the given variable names; coefficients use the signed
    /// representative in `(-p/2, p/2]`.
    pub fn to_string_with(&self, field: &PrimeField, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, &(m, c)) in self.terms.iter().enumerate() {
            let v = field.signed(c);
            let mag = v.unsigned_abs();
            if k == 0 {
                if v < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(if v < 0 { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, name) in names.iter().enumerate().take(MAX_VARS) {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                let _ = write!(s, "{mag}");
            } else {
                if mag != 1 {
                    let _ = write!(s, "{mag}*");
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

/// Default variable names: `x, y, z` for up to three variables, `x1..xn` beyond.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars <= 3 {
        ["x", "y", "z"][..nvars]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

/// The polynomial ring `F_p[x_1..x_e]` with the local order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyRing {
    pub field: PrimeField,
    pub names: Vec<String>,
}

impl PolyRing {
    pub fn new(field: PrimeField, names: Vec<String>) -> Result<Self> {
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        Ok(PolyRing { field, names })
    }

    /// `F_p[x, y]` (or more variables) with default names.
    pub fn with_vars(p: u32, nvars: usize) -> Result<Self> {
        PolyRing::new(PrimeField::new(p)?, default_names(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(i)
    }

    pub fn vars(&self) -> Vec<Poly> {
        (0..self.nvars()).map(Poly::var).collect()
    }

    pub fn c(&self, v: i64) -> Fp {
        self.field.elem(v)
    }

    /// Build a polynomial from `(coefficient, exponents)` pairs.
    pub fn poly(&self, terms: &[(i64, &[u32])]) -> Poly {
        let ts = terms
            .iter()
            .map(|(c, e)| {
                (
                    Monomial::from_exponents(e).expect("valid exponents"),
                    self.field.elem(*c),
                )
            })
            .collect();
        Poly::from_terms(&self.field, ts)
    }

    pub fn show(&self, f: &Poly) -> String {
        f.to_string_with(&self.field, &self.names)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(&self.field, b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(&self.field, b)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(&self.field, b)
    }

    pub fn scale(&self, a: &Poly, c: Fp) -> Poly {
        a.scale(&self.field, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> PolyRing {
        PolyRing::with_vars(101, 2).unwrap()
    }

    #[test]
    fn order_examples() {
        let r = ring();
        let f = r.poly(&[(1, &[2, 0]), (1, &[0, 3])]);
        assert_eq!(f.order(), Order::Finite(2));
        assert_eq!(Poly::zero().order(), Order::Infinite);
        let a = r.poly(&[(1, &[1, 0]), (1, &[0, 1])]);
        let b = r.poly(&[(1, &[1, 0]), (-1, &[0, 1])]);
        let prod = r.mul(&a, &b);
        assert_eq!(prod, r.poly(&[(1, &[2, 0]), (-1, &[0, 2])]));
        assert_eq!(prod.order(), Order::Finite(2));
    }

    #[test]
    fn leading_term_is_lowest_degree() {
        let r = ring();
        let f = r.poly(&[(1, &[0, 3]), (5, &[2, 0]), (7, &[1, 1])]);
        assert_eq!(
            f.leading().unwrap().0,
            Monomial::from_exponents(&[2, 0]).unwrap()
        );
        assert!(Poly::zero().leading().is_none());
    }

    #[test]
    fn display_uses_signed_coefficients() {
        let r = ring();
        let f = r.poly(&[(1, &[2, 0]), (-1, &[0, 3])]);
        assert_eq!(r.show(&f), "x^2 - y^3");
        let g = r.poly(&[(3, &[1, 1]), (100, &[0, 0])]);
        assert_eq!(r.show(&g), "-1 + 3*x*y");
    }

    #[test]
    fn substitution() {
        let r = ring();
        // x^2 + x*y with x -> x, y -> y - x becomes x*y
        let f = r.poly(&[(1, &[2, 0]), (1, &[1, 1])]);
        let img = vec![Poly::var(0), r.poly(&[(1, &[0, 1]), (-1, &[1, 0])])];
        assert_eq!(f.substitute(&r.field, &img), r.poly(&[(1, &[1, 1])]));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec((0i64..101, 0u32..4, 0u32..4), 0..6).prop_map(|ts| {
            let r = PolyRing::with_vars(101, 2).unwrap();
            let terms: Vec<(Monomial, Fp)> = ts
                .into_iter()
                .map(|(c, a, b)| (Monomial::from_exponents(&[a, b]).unwrap(), r.field.elem(c)))
                .collect();
            Poly::from_terms(&r.field, terms)
        })
    }

    proptest! {
        #[test]
        fn order_is_additive(f in arb_poly(), g in arb_poly()) {
            let r = ring();
            let fg = r.mul(&f, &g);
            match (f.order(), g.order()) {
                (Order::Finite(a), Order::Finite(b)) => prop_assert_eq!(fg.order(), Order::Finite(a + b)),
                _ => prop_assert!(fg.is_zero()),
            }
            let s = r.add(&f, &g);
            prop_assert!(s.order() >= f.order().min(g.order()));
        }

        #[test]
        fn ring_laws(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let r = ring();
            prop_assert_eq!(r.mul(&f, &g), r.mul(&g, &f));
            prop_assert_eq!(r.mul(&f, &r.add(&g, &h)), r.add(&r.mul(&f, &g), &r.mul(&f, &h)));
            prop_assert!(r.sub(&f, &f).is_zero());
        }
    }
}
