//! Elements of free modules `S^r`, ordered position-over-term: a smaller
//! component index leads, and within a component the local term order decides.

use std::cmp::Ordering;

use crate::field::{Fp, PrimeField};
use crate::monomial::Monomial;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: Fp,
}

#[inline]
fn cmp_pos(a: (u32, Monomial), b: (u32, Monomial)) -> Ordering {
    // Greater means "leads"
    b.0.cmp(&a.0).then(a.1.cmp(&b.1))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_polys(polys: &[Poly]) -> Self {
        Vector::from_polys_offset(polys, 0)
    }

    /// Place `polys[i]` in component `offset + i`.
    pub fn from_polys_offset(polys: &[Poly], offset: u32) -> Self {
        let mut terms = Vec::new();
        for (i, p) in polys.iter().enumerate() {
            for &(mono, coeff) in p.terms() {
                terms.push(Term {
                    comp: offset + i as u32,
                    mono,
                    coeff,
                });
            }
        }
        // components are emitted in increasing order and each poly is sorted
        Vector { terms }
    }

    pub fn unit(comp: u32, p: &Poly) -> Self {
        Vector {
            terms: p
                .terms()
                .iter()
                .map(|&(mono, coeff)| Term { comp, mono, coeff })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
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

    pub fn leading(&self) -> Option<Term> {
        self.terms.first().copied()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|t| t.mono.degree())
            .max()
            .unwrap_or(0)
    }

    /// Mora's ecart: top degree minus the degree of the leading term.
    pub fn ecart(&self) -> u32 {
        match self.terms.first() {
            Some(t) => self.max_degree() - t.mono.degree(),
            None => 0,
        }
    }

    pub fn component(&self, comp: u32) -> Poly {
        let ts: Vec<(Monomial, Fp)> = self
            .terms
            .iter()
            .filter(|t| t.comp == comp)
            .map(|t| (t.mono, t.coeff))
            .collect();
        Poly::from_sorted(ts)
    }

    pub fn to_polys(&self, rank: usize) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Monomial, Fp)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.comp as usize].push((t.mono, t.coeff));
        }
        buckets.into_iter().map(Poly::from_sorted).collect()
    }

    /// Keep components in `[lo, hi)`, shifted down by `lo`.
    pub fn slice(&self, lo: u32, hi: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= lo && t.comp < hi)
                .map(|t| Term {
                    comp: t.comp - lo,
                    ..*t
                })
                .collect(),
        }
    }

    pub fn shift(&self, by: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp + by,
                    ..*t
                })
                .collect(),
        }
    }

    pub fn truncate_degree(&mut self, d: u32) {
        self.terms.retain(|t| t.mono.degree() < d);
    }

    pub fn scale(&self, field: &PrimeField, c: Fp) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(t.coeff, c),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn monic(&self, field: &PrimeField) -> Vector {
        match self.leading() {
            Some(t) => self.scale(field, field.inv(t.coeff).expect("nonzero")),
            None => Vector::zero(),
        }
    }

    pub fn mul_term(&self, field: &PrimeField, c: Fp, m: Monomial) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mono: t.mono.mul(m),
                    coeff: field.mul(t.coeff, c),
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, field: &PrimeField, p: &Poly) -> Vector {
        let mut acc = Vector::zero();
        for &(m, c) in p.terms() {
            acc = acc.axpy(field, c, m, self);
        }
        acc
    }

    pub fn add(&self, field: &PrimeField, other: &Vector) -> Vector {
        self.axpy(field, Fp::ONE, Monomial::ONE, other)
    }

    pub fn sub(&self, field: &PrimeField, other: &Vector) -> Vector {
        self.axpy(field, field.neg(Fp::ONE), Monomial::ONE, other)
    }

    /// `self + c * m * other`.
    pub fn axpy(&self, field: &PrimeField, c: Fp, m: Monomial, other: &Vector) -> Vector {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bm = b[j].mono.mul(m);
            match cmp_pos((a[i].comp, a[i].mono), (b[j].comp, bm)) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        comp: b[j].comp,
                        mono: bm,
                        coeff: field.mul(b[j].coeff, c),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(a[i].coeff, field.mul(b[j].coeff, c));
                    if !s.is_zero() {
                        out.push(Term {
                            comp: a[i].comp,
                            mono: bm,
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push(Term {
                comp: t.comp,
                mono: t.mono.mul(m),
                coeff: field.mul(t.coeff, c),
            });
        }
        Vector { terms: out }
    }

    /// Concatenate two vectors whose component ranges do not overlap and where
    /// every component of `self` is smaller than every component of `other`.
    pub fn concat(&self, other: &Vector) -> Vector {
        debug_assert!(match (self.terms.last(), other.terms.first()) {
            (Some(a), Some(b)) => a.comp < b.comp,
            _ => true,
        });
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Vector { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    #[test]
    fn position_over_term() {
        let r = PolyRing::with_vars(101, 2).unwrap();
        let v = Vector::from_polys(&[r.poly(&[(1, &[3, 0])]), r.poly(&[(1, &[0, 0])])]);
        // component 0 leads even though component 1 holds a constant
        assert_eq!(v.leading().unwrap().comp, 0);
        assert_eq!(v.ecart(), 0);
        let w = Vector::from_polys(&[r.poly(&[(1, &[1, 0]), (1, &[0, 4])])]);
        assert_eq!(w.ecart(), 3);
        let back = v.to_polys(2);
        assert_eq!(back[0], r.poly(&[(1, &[3, 0])]));
        assert_eq!(back[1], Poly::one());
    }

    #[test]
    fn axpy_cancels() {
        let r = PolyRing::with_vars(101, 2).unwrap();
        let v = Vector::from_polys(&[r.poly(&[(1, &[1, 0])]), r.poly(&[(2, &[0, 1])])]);
        let z = v.axpy(&r.field, r.c(-1), Monomial::ONE, &v);
        assert!(z.is_zero());
        let y = Vector::from_polys(&[Poly::zero(), r.poly(&[(1, &[0, 1])])]);
        let s = v.slice(1, 2);
        assert_eq!(s.component(0), r.poly(&[(2, &[0, 1])]));
        assert_eq!(y.shift(1).leading().unwrap().comp, 2);
    }
}
