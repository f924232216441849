//! Structure of the syzygies of `k` over `R = S/I` with `S` local of
//! dimension two.

pub mod decompose;
pub mod dual;
pub mod frame;
pub mod lmatrix;
pub mod thm54;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::artinian::{ArtinianAlgebra, FlModule};
use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::monomial::Monomial;
use crate::poly::{Poly, PolyRing};
use crate::quotient::QuotientRing;
use crate::stdbasis::Ideal;

pub use decompose::{
    compute_a, decompose_m, prop41_case, socle_count_a, AValue, MDecomposition, Prop41, Shape,
};
pub use dual::{dual_iso_check, fitting_criterion_check, DualCheck, FittingCheck, ParameterIdeal};
pub use frame::{find_split_coordinates, CoordinateFrame, FrameSearch};
pub use lmatrix::{build_l, split_syz2, LMatrix, SplitSyz2};
pub use thm54::{thm53_inventory, thm54_classify, Inventory, InventoryLevel, Thm54, Verdict};

/// An invertible linear change of coordinates `x' = m00 x + m01 y`,
/// `y' = m10 x + m11 y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFrame {
    pub m: [[Fp; 2]; 2],
}

impl LinearFrame {
    pub fn identity() -> Self {
        LinearFrame {
            m: [[Fp::ONE, Fp::ZERO], [Fp::ZERO, Fp::ONE]],
        }
    }

    pub fn det(&self, f: &PrimeField) -> Fp {
        f.sub(
            f.mul(self.m[0][0], self.m[1][1]),
            f.mul(self.m[0][1], self.m[1][0]),
        )
    }

    /// A frame whose first coordinate is `l`, completed by `x` or `y`.
    pub fn with_first(f: &PrimeField, l: [Fp; 2]) -> Self {
        let second = if l[1].is_zero() {
            [Fp::ZERO, Fp::ONE]
        } else {
            [Fp::ONE, Fp::ZERO]
        };
        let fr = LinearFrame { m: [l, second] };
        debug_assert!(!fr.det(f).is_zero());
        fr
    }

    /// The new coordinates as polynomials in the old variables.
    pub fn coordinates(&self, f: &PrimeField) -> (Poly, Poly) {
        (linear_poly(f, self.m[0]), linear_poly(f, self.m[1]))
    }

    /// Old variables in terms of the new ones: `x = r[0][0] x' + r[0][1] y'`.
    fn inverse(&self, f: &PrimeField) -> Result<[[Fp; 2]; 2]> {
        let d = f
            .inv(self.det(f))
            .map_err(|_| Error::invalid("singular frame"))?;
        let m = &self.m;
        Ok([
            [f.mul(m[1][1], d), f.neg(f.mul(m[0][1], d))],
            [f.neg(f.mul(m[1][0], d)), f.mul(m[0][0], d)],
        ])
    }

    /// Rewrite `h(x, y)` as a polynomial in the new coordinates, returned in
    /// the same variable slots.
    pub fn rewrite(&self, f: &PrimeField, h: &Poly) -> Result<Poly> {
        let r = self.inverse(f)?;
        Ok(h.substitute(f, &[linear_poly(f, r[0]), linear_poly(f, r[1])]))
    }

    pub fn rewrite_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        let f = &ideal.ring().field;
        let gens = ideal
            .generators()
            .iter()
            .map(|g| self.rewrite(f, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::with_config(
            ideal.ring().clone(),
            gens,
            ideal.config(),
        ))
    }
}

pub(crate) fn linear_poly(f: &PrimeField, c: [Fp; 2]) -> Poly {
    let terms = vec![(Monomial::var(0), c[0]), (Monomial::var(1), c[1])];
    Poly::from_terms(f, terms)
}

/// Linear part of `p` as `[coeff of x, coeff of y]`.
pub(crate) fn linear_part(p: &Poly) -> [Fp; 2] {
    [
        p.coefficient(Monomial::var(0)),
        p.coefficient(Monomial::var(1)),
    ]
}

/// `h = l1 a + l2 b` for `h` without constant term and independent linear
/// forms `l1`, `l2`; each term is split through `x` or `y`, so `a` and `b`
/// have order at least `ord h - 1`.
pub(crate) fn split_linear(
    f: &PrimeField,
    h: &Poly,
    l1: [Fp; 2],
    l2: [Fp; 2],
) -> Result<(Poly, Poly)> {
    let det = f.sub(f.mul(l1[0], l2[1]), f.mul(l1[1], l2[0]));
    let d = f
        .inv(det)
        .map_err(|_| Error::invalid("dependent linear forms"))?;
    // x = (l2[1] l1 - l1[1] l2) / det, y = (-l2[0] l1 + l1[0] l2) / det
    let via_x = [f.mul(l2[1], d), f.neg(f.mul(l1[1], d))];
    let via_y = [f.neg(f.mul(l2[0], d)), f.mul(l1[0], d)];
    let mut a = Vec::new();
    let mut b = Vec::new();
    for &(m, c) in h.terms() {
        let (var, coef) = if m.exponent(0) > 0 {
            (0, via_x)
        } else if m.exponent(1) > 0 {
            (1, via_y)
        } else {
            return Err(Error::invalid("constant term cannot be split"));
        };
        let rest = Monomial::var(var).quotient_of(m).expect("divisible");
        a.push((rest, f.mul(c, coef[0])));
        b.push((rest, f.mul(c, coef[1])));
    }
    Ok((Poly::from_terms(f, a), Poly::from_terms(f, b)))
}

/// Cofactors `h = x f + y g` in the standard coordinates.
pub(crate) fn cofactors(f: &PrimeField, h: &Poly) -> Result<(Poly, Poly)> {
    split_linear(f, h, [Fp::ONE, Fp::ZERO], [Fp::ZERO, Fp::ONE])
}

pub(crate) fn require_edim2(q: &QuotientRing) -> Result<()> {
    if q.nvars() != 2 {
        return Err(Error::unsupported("needs embedding dimension two"));
    }
    Ok(())
}

/// The quotient by the same ideal written in another frame.
pub(crate) fn quotient_in_frame(q: &QuotientRing, fr: &LinearFrame) -> Result<QuotientRing> {
    QuotientRing::new(fr.rewrite_ideal(q.ideal())?)
}

/// Exact linear-algebra model of an Artinian `R`.
pub(crate) fn algebra_of(q: &QuotientRing) -> Result<Arc<ArtinianAlgebra>> {
    let i = q.ideal();
    Ok(Arc::new(ArtinianAlgebra::from_ideal(
        q.ring(),
        i.generators(),
        i.config().degree_cap,
    )?))
}

/// `R / J` for an ideal `J` containing `I`.
pub(crate) fn cyclic_module(alg: &Arc<ArtinianAlgebra>, j: &Ideal) -> FlModule {
    let vecs: Vec<Vec<Fp>> = j.generators().iter().map(|g| alg.reduce(g)).collect();
    FlModule::free(alg, 1).quotient(&alg.closure(1, &vecs))
}

pub(crate) fn show_all(ring: &PolyRing, ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| ring.show(p)).collect()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// `S/I` over `F_101[x, y]` from `(coefficient, [a, b])` lists.
    pub fn q(gens: &[&[(i64, [u32; 2])]]) -> QuotientRing {
        let r = Arc::new(PolyRing::with_vars(101, 2).unwrap());
        let gens = gens
            .iter()
            .map(|t| {
                let terms: Vec<(i64, &[u32])> = t.iter().map(|(c, e)| (*c, &e[..])).collect();
                r.poly(&terms)
            })
            .collect();
        QuotientRing::new(Ideal::new(r, gens)).unwrap()
    }

    /// Monomial ideal shortcut.
    pub fn mono(ms: &[[u32; 2]]) -> QuotientRing {
        let t: Vec<Vec<(i64, [u32; 2])>> = ms.iter().map(|m| vec![(1, *m)]).collect();
        let refs: Vec<&[(i64, [u32; 2])]> = t.iter().map(|v| &v[..]).collect();
        q(&refs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_linear_is_exact() {
        let r = PolyRing::with_vars(101, 2).unwrap();
        let f = &r.field;
        let h = r.poly(&[(3, &[3, 0]), (2, &[1, 2]), (-1, &[0, 4])]);
        let l1 = [f.elem(1), f.elem(1)];
        let l2 = [f.elem(2), f.elem(-1)];
        let (a, b) = split_linear(f, &h, l1, l2).unwrap();
        let back = r.add(
            &r.mul(&linear_poly(f, l1), &a),
            &r.mul(&linear_poly(f, l2), &b),
        );
        assert_eq!(back, h);
        assert!(a.order() >= crate::poly::Order::Finite(2));
    }

    #[test]
    fn rewrite_round_trip() {
        let r = PolyRing::with_vars(101, 2).unwrap();
        let f = &r.field;
        let fr = LinearFrame {
            m: [[f.elem(1), f.elem(1)], [f.elem(0), f.elem(1)]],
        };
        // x' = x + y, y' = y, so x^2 + xy = x (x + y) becomes (x' - y') x'
        let h = r.poly(&[(1, &[2, 0]), (1, &[1, 1])]);
        assert_eq!(
            fr.rewrite(f, &h).unwrap(),
            r.poly(&[(1, &[2, 0]), (-1, &[1, 1])])
        );
    }
}
