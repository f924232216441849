//! `syz_1(m) ≅ m*` through `f -> (f(y), -f(x))`, and the Fitting criterion
//! for the restriction `J* -> I*`.

use serde::{Deserialize, Serialize};

use crate::artinian::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::quotient::{QuotientRing, RingKind};
use crate::resolver::{to_fl_module, Resolver, SubmoduleR};
use crate::stdbasis::{gcd_part, Ideal};
use crate::vector::Vector;

use super::{algebra_of, require_edim2};

/// Truncation degree used to compare dimensions when `R` is not Artinian.
pub const DUAL_TRUNCATION: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualCheck {
    pub kind: RingKind,
    /// Generators `(f(x), f(y))` of `m* ⊂ R^2`.
    pub dual_gens: Vec<[String; 2]>,
    pub image_equals_syz1: bool,
    /// `dim_k` of the image and of `syz_1(m)`; modulo `n^12` when `R` has
    /// dimension one.
    pub dims: (usize, usize),
    pub truncated: bool,
    pub pass: bool,
}

fn swap(f: &crate::field::PrimeField, v: &Vector) -> Vector {
    let p = v.to_polys(2);
    Vector::from_polys(&[p[1].clone(), p[0].neg(f)])
}

fn dims(q: &QuotientRing, a: &SubmoduleR, b: &SubmoduleR) -> Result<((usize, usize), bool)> {
    let (alg, truncated) = if q.dim()? == 0 {
        (algebra_of(q)?, false)
    } else {
        let alg = ArtinianAlgebra::truncated(q.ring(), q.ideal().generators(), DUAL_TRUNCATION)?;
        (std::sync::Arc::new(alg), true)
    };
    Ok((
        (to_fl_module(&alg, a).dim(), to_fl_module(&alg, b).dim()),
        truncated,
    ))
}

/// `m* = {(a, b) in R^2 : s a + t b = 0 for every syzygy (s, t) of (x, y)}`,
/// mapped by `(a, b) -> (b, -a)` and compared with `syz_1(m)`.
pub fn dual_iso_check(q: &QuotientRing) -> Result<DualCheck> {
    require_edim2(q)?;
    let kind = q.classify()?.kind;
    if matches!(kind, RingKind::ZeroDimCi | RingKind::Regular) {
        return Err(Error::unsupported(format!(
            "not applicable to a {} ring",
            kind.label()
        )));
    }
    let ring = q.ring();
    let f = &ring.field;
    let e = Resolver::new(q)?;
    let syz1 = e.syzygy_step(&e.maximal_ideal())?;
    let rows = syz1.columns();
    let c1: Vec<Poly> = rows.iter().map(|r| r[0].clone()).collect();
    let c2: Vec<Poly> = rows.iter().map(|r| r[1].clone()).collect();
    let dual = e.syzygies(
        &[Vector::from_polys(&c1), Vector::from_polys(&c2)],
        rows.len(),
    )?;
    let dual = SubmoduleR::new(2, e.minimal_generators(2, &dual)?);
    let image = SubmoduleR::new(2, dual.gens.iter().map(|v| swap(f, v)).collect());
    let image_equals_syz1 = e.same_submodule(&image, &syz1)?;
    let (dims, truncated) = dims(q, &image, &syz1)?;
    let dual_gens = dual
        .columns()
        .iter()
        .map(|c| [ring.show(&c[0]), ring.show(&c[1])])
        .collect();
    Ok(DualCheck {
        kind,
        dual_gens,
        image_equals_syz1,
        dims,
        truncated,
        pass: image_equals_syz1 && dims.0 == dims.1,
    })
}

/// `J = (x^i, y^j)`, a monomial parameter ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterIdeal {
    pub i: u32,
    pub j: u32,
}

impl ParameterIdeal {
    pub fn maximal() -> Self {
        ParameterIdeal { i: 1, j: 1 }
    }

    pub fn new(i: u32, j: u32) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::invalid("parameters must lie in n"));
        }
        Ok(ParameterIdeal { i, j })
    }

    fn u(&self) -> Monomial {
        Monomial::from_exponents(&[self.i, 0]).expect("two variables")
    }

    fn v(&self) -> Monomial {
        Monomial::from_exponents(&[0, self.j]).expect("two variables")
    }

    pub fn label(&self) -> String {
        let p = |name: &str, e: u32| {
            if e == 1 {
                name.to_string()
            } else {
                format!("{name}^{e}")
            }
        };
        format!("({}, {})", p("x", self.i), p("y", self.j))
    }

    /// `h = u f + v g` term by term; `None` if some term lies outside `J`.
    fn cofactors(&self, f: &crate::field::PrimeField, h: &Poly) -> Option<(Poly, Poly)> {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for &(m, c) in h.terms() {
            if let Some(r) = self.u().quotient_of(m) {
                a.push((r, c));
            } else {
                let r = self.v().quotient_of(m)?;
                b.push((r, c));
            }
        }
        Some((Poly::from_terms(f, a), Poly::from_terms(f, b)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FittingCheck {
    pub j: String,
    pub gcd_factor: String,
    pub fitt2: Vec<String>,
    /// The restriction `J* -> I*` vanishes.
    pub restriction_zero: bool,
    /// `a Fitt_2(I) ⊂ J`.
    pub fitting_contained: bool,
    /// `(JR)* ≅ syz_1(JR)` by the swap map; only run when the condition holds.
    pub dual_swap: Option<bool>,
    pub pass: bool,
}

impl FittingCheck {
    pub fn holds(&self) -> bool {
        self.restriction_zero && self.fitting_contained
    }
}

pub fn fitting_criterion_check(q: &QuotientRing, jp: ParameterIdeal) -> Result<FittingCheck> {
    require_edim2(q)?;
    let i = q.ideal();
    if i.is_zero() {
        return Err(Error::unsupported("R is regular"));
    }
    let ring = q.ring();
    let f = &ring.field;
    let (a, ip) = gcd_part(i)?;
    let (u, v) = (
        Poly::monomial(jp.u(), crate::field::Fp::ONE),
        Poly::monomial(jp.v(), crate::field::Fp::ONE),
    );
    let j = Ideal::with_config(ring.clone(), vec![u.clone(), v.clone()], i.config());
    if ip.is_unit_ideal()? || !j.contains_ideal(&ip)? {
        return Err(Error::unsupported(format!(
            "I' is not contained in {}",
            jp.label()
        )));
    }
    let e = Resolver::new(q)?;

    // left: every phi in J* sends each generator of I into I
    let jstar = e.syzygies(
        &[
            Vector::from_polys(std::slice::from_ref(&v)),
            Vector::from_polys(&[u.neg(f)]),
        ],
        1,
    )?;
    let jstar = e.minimal_generators(2, &jstar)?;
    let mut restriction_zero = true;
    'outer: for h in i.generators() {
        let (fh, gh) = jp
            .cofactors(f, h)
            .ok_or_else(|| Error::unsupported("generator not termwise in J"))?;
        for phi in &jstar {
            let ab = phi.to_polys(2);
            if !i.contains(&fh.mul(f, &ab[0]).add(f, &gh.mul(f, &ab[1])))? {
                restriction_zero = false;
                break 'outer;
            }
        }
    }

    // right: a Fitt_2(I) inside J
    let fitt = i.fitting_ideal(2)?;
    let prod = Ideal::with_config(
        ring.clone(),
        fitt.generators().iter().map(|g| g.mul(f, &a)).collect(),
        i.config(),
    );
    let fitting_contained = j.contains_ideal(&prod)?;

    let dual_swap = if restriction_zero && fitting_contained {
        let jr = e.syzygies(
            &[
                Vector::from_polys(std::slice::from_ref(&u)),
                Vector::from_polys(std::slice::from_ref(&v)),
            ],
            1,
        )?;
        let syz = SubmoduleR::new(2, jr);
        let img = SubmoduleR::new(2, jstar.iter().map(|w| swap(f, w)).collect());
        Some(e.same_submodule(&img, &syz)?)
    } else {
        None
    };
    let fitt2 = if fitt.is_zero() {
        Vec::new()
    } else if fitt.is_unit_ideal()? {
        vec!["1".to_string()]
    } else {
        fitt.minimal_generators()?
            .iter()
            .map(|g| ring.show(g))
            .collect()
    };
    let pass = restriction_zero == fitting_contained && dual_swap.unwrap_or(true);
    Ok(FittingCheck {
        j: jp.label(),
        gcd_factor: ring.show(&a),
        fitt2,
        restriction_zero,
        fitting_contained,
        dual_swap,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{mono, q};
    use super::*;

    #[test]
    fn dual_examples() {
        for ms in [
            &[[3, 0], [1, 2], [0, 3]][..],
            &[[2, 0], [1, 1], [0, 2]][..],
            &[[1, 1]][..],
            &[[1, 1], [2, 0]][..],
        ] {
            let d = dual_iso_check(&mono(ms)).unwrap();
            assert!(d.pass, "{ms:?}: {d:?}");
        }
        let d = dual_iso_check(&q(&[&[(1, [2, 0]), (-1, [0, 3])]])).unwrap();
        assert!(d.pass && d.truncated);
        assert!(dual_iso_check(&mono(&[[2, 0], [0, 2]])).is_err());
    }

    #[test]
    fn fitting_examples() {
        let c =
            fitting_criterion_check(&mono(&[[3, 0], [1, 2], [0, 3]]), ParameterIdeal::maximal())
                .unwrap();
        assert!(c.pass && c.holds(), "{c:?}");
        assert_eq!(c.dual_swap, Some(true));
        let c =
            fitting_criterion_check(&mono(&[[2, 0], [0, 2]]), ParameterIdeal::maximal()).unwrap();
        assert!(c.pass, "{c:?}");
        assert!(!c.restriction_zero && !c.fitting_contained);
        assert!(fitting_criterion_check(&mono(&[[1, 1]]), ParameterIdeal::maximal()).is_err());
    }

    #[test]
    fn monotone_in_j() {
        let r = mono(&[[2, 0], [0, 2]]);
        let chain = [
            ParameterIdeal::new(2, 2).unwrap(),
            ParameterIdeal::new(1, 2).unwrap(),
            ParameterIdeal::maximal(),
        ];
        let held: Vec<bool> = chain
            .iter()
            .map(|&j| {
                let c = fitting_criterion_check(&r, j).unwrap();
                assert!(c.pass, "{c:?}");
                c.holds()
            })
            .collect();
        assert!(held.windows(2).all(|w| !w[0] || w[1]), "{held:?}");
    }
}
