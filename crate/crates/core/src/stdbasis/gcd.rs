//! Greatest common divisors in `F_p[x, y]` (global polynomial ring) and the
//! factorization `I = a * I'` with `I'` of codimension two or the unit ideal.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::monomial::Monomial;
use crate::poly::Poly;

use super::ideal::Ideal;

type Uni = Vec<Fp>;

fn trim(mut a: Uni) -> Uni {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn uni_sub(f: &PrimeField, a: &Uni, b: &Uni) -> Uni {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            f.sub(
                a.get(i).copied().unwrap_or(Fp::ZERO),
                b.get(i).copied().unwrap_or(Fp::ZERO),
            )
        })
        .collect();
    trim(out)
}

fn uni_mul(f: &PrimeField, a: &Uni, b: &Uni) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Fp::ZERO; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(ai, bj));
        }
    }
    trim(out)
}

fn uni_divrem(f: &PrimeField, a: &Uni, b: &Uni) -> (Uni, Uni) {
    let mut r = a.clone();
    if b.is_empty() || r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = f.inv(*b.last().expect("nonzero")).expect("nonzero");
    let mut q = vec![Fp::ZERO; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().expect("nonempty"), inv);
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, bj));
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn uni_monic(f: &PrimeField, a: Uni) -> Uni {
    match a.last() {
        Some(&c) => {
            let inv = f.inv(c).expect("nonzero");
            a.into_iter().map(|x| f.mul(x, inv)).collect()
        }
        None => a,
    }
}

fn uni_gcd(f: &PrimeField, a: &Uni, b: &Uni) -> Uni {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = uni_divrem(f, &a, &b);
        a = b;
        b = r;
    }
    uni_monic(f, a)
}

/// Polynomial in `y` with coefficients in `F_p[x]`, low degree first.
type Bi = Vec<Uni>;

fn to_bi(p: &Poly) -> Bi {
    let mut out: Bi = Vec::new();
    for &(m, c) in p.terms() {
        let (i, j) = (m.exponent(0) as usize, m.exponent(1) as usize);
        if out.len() <= j {
            out.resize(j + 1, Vec::new());
        }
        if out[j].len() <= i {
            out[j].resize(i + 1, Fp::ZERO);
        }
        out[j][i] = c;
    }
    out
}

fn from_bi(f: &PrimeField, b: &Bi) -> Poly {
    let mut terms = Vec::new();
    for (j, u) in b.iter().enumerate() {
        for (i, &c) in u.iter().enumerate() {
            if !c.is_zero() {
                terms.push((
                    Monomial::from_exponents(&[i as u32, j as u32]).expect("two variables"),
                    c,
                ));
            }
        }
    }
    Poly::from_terms(f, terms)
}

fn bi_trim(mut a: Bi) -> Bi {
    while a.last().is_some_and(|c| c.is_empty()) {
        a.pop();
    }
    a
}

fn content(f: &PrimeField, a: &Bi) -> Uni {
    a.iter().fold(
        Vec::new(),
        |g, c| if c.is_empty() { g } else { uni_gcd(f, &g, c) },
    )
}

fn divide_by_content(f: &PrimeField, a: &Bi, c: &Uni) -> Bi {
    a.iter()
        .map(|u| {
            if u.is_empty() {
                Vec::new()
            } else {
                uni_divrem(f, u, c).0
            }
        })
        .collect()
}

fn primitive(f: &PrimeField, a: &Bi) -> Bi {
    let c = content(f, a);
    bi_trim(divide_by_content(f, a, &c))
}

/// Pseudo-remainder of `a` by `b` as polynomials in `y`.
fn prem(f: &PrimeField, a: &Bi, b: &Bi) -> Bi {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lr = r.last().expect("nonempty").clone();
        r = r.iter().map(|u| uni_mul(f, u, &lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = uni_sub(f, &r[shift + j], &uni_mul(f, &lr, bj));
        }
        r = bi_trim(r);
    }
    r
}

fn bi_gcd(f: &PrimeField, a: &Bi, b: &Bi) -> Bi {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let c = uni_gcd(f, &content(f, a), &content(f, b));
    let (mut p, mut q) = (primitive(f, a), primitive(f, b));
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = prem(f, &p, &q);
        p = q;
        q = if r.is_empty() { r } else { primitive(f, &r) };
    }
    let g = if p.len() == 1 { vec![vec![Fp::ONE]] } else { p };
    g.iter().map(|u| uni_mul(f, u, &c)).collect()
}

/// Greatest common divisor in `F_p[x, y]`, scaled so that its leading term
/// under the local order has coefficient one.
pub fn gcd2(field: &PrimeField, a: &Poly, b: &Poly) -> Poly {
    from_bi(field, &bi_gcd(field, &to_bi(a), &to_bi(b))).monic(field)
}

/// Exact division in `F_p[x_1..x_e]` by lex-leading terms; `None` unless
/// `d` divides `a`.
pub fn exact_div(field: &PrimeField, a: &Poly, d: &Poly) -> Option<Poly> {
    let key = |m: Monomial| m.exponents(crate::monomial::MAX_VARS);
    let mut rem: BTreeMap<Vec<u32>, (Monomial, Fp)> =
        a.terms().iter().map(|&(m, c)| (key(m), (m, c))).collect();
    let (dm, dc) = d.terms().iter().copied().max_by_key(|t| key(t.0))?;
    let dinv = field.inv(dc).ok()?;
    let mut q = Vec::new();
    while let Some((_, &(m, c))) = rem.iter().next_back() {
        let qm = dm.quotient_of(m)?;
        let qc = field.mul(c, dinv);
        q.push((qm, qc));
        for &(t, tc) in d.terms() {
            let mm = t.mul(qm);
            let k = key(mm);
            let old = rem.get(&k).map(|x| x.1).unwrap_or(Fp::ZERO);
            let v = field.sub(old, field.mul(qc, tc));
            if v.is_zero() {
                rem.remove(&k);
            } else {
                rem.insert(k, (mm, v));
            }
        }
    }
    Some(Poly::from_terms(field, q))
}

/// `I = a * I'`: `a` is the polynomial gcd of the generators (set to 1 when it
/// is a local unit) and `I'` is generated by the quotients.
pub fn gcd_part(ideal: &Ideal) -> Result<(Poly, Ideal)> {
    let ring = ideal.ring();
    if ring.nvars() != 2 {
        return Err(Error::unsupported("gcd_part needs two variables"));
    }
    if ideal.is_zero() {
        return Err(Error::invalid("gcd_part of the zero ideal"));
    }
    let f = &ring.field;
    let gens = ideal.generators();
    let mut a = gens.iter().fold(Poly::zero(), |g, h| gcd2(f, &g, h));
    if a.is_unit() {
        a = Poly::one();
    }
    let quotients = gens
        .iter()
        .map(|g| {
            exact_div(f, g, &a).ok_or_else(|| Error::invalid("gcd does not divide a generator"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((
        a,
        Ideal::with_config(ring.clone(), quotients, ideal.config()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ring() -> Arc<PolyRing> {
        Arc::new(PolyRing::with_vars(101, 2).unwrap())
    }

    #[test]
    fn gcd_examples() {
        let r = ring();
        let f = &r.field;
        let x = r.var(0);
        let y = r.var(1);
        let xy = r.mul(&x, &y);
        let x2 = r.mul(&x, &x);
        assert_eq!(gcd2(f, &xy, &x2), x);
        let a = r.poly(&[(1, &[1, 0]), (1, &[0, 1]), (3, &[2, 1])]);
        let b = r.poly(&[(1, &[0, 2]), (-1, &[3, 0]), (1, &[0, 0])]);
        let c = r.poly(&[(2, &[1, 1]), (1, &[0, 3])]);
        let g = gcd2(f, &r.mul(&a, &b), &r.mul(&a, &c));
        assert_eq!(g, a.monic(f));
        assert!(gcd2(f, &b, &c).is_unit());
    }

    #[test]
    fn gcd_part_examples() {
        let r = ring();
        let m = |a: u32, b: u32| r.poly(&[(1, &[a, b])]);
        let (a, ip) = gcd_part(&Ideal::new(r.clone(), vec![m(1, 1), m(2, 0)])).unwrap();
        assert_eq!(a, r.var(0));
        assert!(ip.same_as(&Ideal::maximal(r.clone())).unwrap());
        let i = Ideal::new(r.clone(), vec![m(3, 0), m(1, 2), m(0, 3)]);
        let (a, ip) = gcd_part(&i).unwrap();
        assert_eq!(a, Poly::one());
        assert!(ip.same_as(&i).unwrap());
        let (a, ip) = gcd_part(&Ideal::new(r.clone(), vec![m(1, 1)])).unwrap();
        assert_eq!(a, m(1, 1));
        assert!(ip.is_unit_ideal().unwrap());
    }

    fn small_poly() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
        prop::collection::vec((-5i64..5, 0u32..3, 0u32..3), 1..4)
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
            let r = ring();
            let f = &r.field;
            let mk = |v: &Vec<(i64, u32, u32)>| {
                let ts: Vec<(i64, [u32; 2])> = v.iter().map(|&(c, i, j)| (c, [i, j])).collect();
                let refs: Vec<(i64, &[u32])> = ts.iter().map(|(c, e)| (*c, &e[..])).collect();
                r.poly(&refs)
            };
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let (ca, cb) = (r.mul(&a, &c), r.mul(&b, &c));
            let g = gcd2(f, &ca, &cb);
            prop_assert!(exact_div(f, &ca, &g).is_some());
            prop_assert!(exact_div(f, &cb, &g).is_some());
            prop_assert!(exact_div(f, &g, &c).is_some());
        }
    }
}
