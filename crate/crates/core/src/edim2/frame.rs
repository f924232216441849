//! Search for a regular system of parameters `(x, y)` with `xy in I`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::{Fp, PrimeField};
use crate::matrix::MatrixFp;
use crate::monomial::Monomial;
use crate::poly::{Order, Poly};
use crate::stdbasis::{gcd_part, Ideal};

use super::{linear_part, linear_poly, split_linear};

/// New parameters `x'`, `y'` with invertible linear parts and `x'y' in I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateFrame {
    pub x: Poly,
    pub y: Poly,
    pub linear: [[Fp; 2]; 2],
    pub det: Fp,
}

impl CoordinateFrame {
    fn new(f: &PrimeField, x: Poly, y: Poly) -> Self {
        let linear = [linear_part(&x), linear_part(&y)];
        let det = f.sub(
            f.mul(linear[0][0], linear[1][1]),
            f.mul(linear[0][1], linear[1][0]),
        );
        CoordinateFrame { x, y, linear, det }
    }

    /// Invertible linear part and `x'y' in I`, checked by membership.
    pub fn verify(&self, ideal: &Ideal) -> Result<bool> {
        if self.det.is_zero() {
            return Ok(false);
        }
        let r = ideal.ring();
        ideal.contains(&r.mul(&self.x, &self.y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum FrameSearch {
    Found {
        frame: CoordinateFrame,
    },
    /// Certified impossible. `field_dependent` is set when a quadric that
    /// would work splits only over `F_{p^2}`.
    None {
        reason: String,
        field_dependent: bool,
    },
    Undetermined {
        reason: String,
    },
}

impl FrameSearch {
    pub fn frame(&self) -> Option<&CoordinateFrame> {
        match self {
            FrameSearch::Found { frame } => Some(frame),
            _ => None,
        }
    }
}

/// `[x^2, xy, y^2]` coefficients of the degree-two part.
pub(crate) fn quadric(p: &Poly) -> [Fp; 3] {
    let m = |a, b| Monomial::from_exponents(&[a, b]).expect("two variables");
    [
        p.coefficient(m(2, 0)),
        p.coefficient(m(1, 1)),
        p.coefficient(m(0, 2)),
    ]
}

fn quadric_poly(f: &PrimeField, q: [Fp; 3]) -> Poly {
    let m = |a, b| Monomial::from_exponents(&[a, b]).expect("two variables");
    Poly::from_terms(f, vec![(m(2, 0), q[0]), (m(1, 1), q[1]), (m(0, 2), q[2])])
}

/// Split `q` into two independent linear forms, if it does over `F_p`.
/// `Err(true)` means nondegenerate but irreducible over `F_p`.
fn factor_quadric(f: &PrimeField, q: [Fp; 3]) -> std::result::Result<([Fp; 2], [Fp; 2]), bool> {
    let [a, b, c] = q;
    let disc = f.sub(f.mul(b, b), f.mul(f.elem(4), f.mul(a, c)));
    if disc.is_zero() {
        return Err(false);
    }
    let Some(s) = f.sqrt(disc) else {
        return Err(true);
    };
    if a.is_zero() {
        // q = y (b x + c y)
        return Ok(([b, c], [Fp::ZERO, Fp::ONE]));
    }
    // q = a (x - r1 y)(x - r2 y) with r = (-b +- s) / 2a
    let two_a = f.mul(f.elem(2), a);
    let r1 = f.div(f.add(f.neg(b), s), two_a).expect("a != 0");
    let r2 = f.div(f.sub(f.neg(b), s), two_a).expect("a != 0");
    Ok(([a, f.neg(f.mul(a, r1))], [Fp::ONE, f.neg(r2)]))
}

/// Order-raising substitution `x <- x + f_2`, `y <- y + f_1` applied to an
/// element `g = l1 l2 + (higher)` of `I`, until `g - xy` has order `>= bound`
/// or vanishes.
fn raise(
    f: &PrimeField,
    g: &Poly,
    l1: [Fp; 2],
    l2: [Fp; 2],
    bound: u32,
) -> Result<Option<(Poly, Poly)>> {
    let (mut x, mut y) = (linear_poly(f, l1), linear_poly(f, l2));
    loop {
        let rest = g.sub(f, &x.mul(f, &y)).truncate_below(bound);
        let k = match rest.order() {
            Order::Infinite => return Ok(Some((x, y))),
            Order::Finite(k) => k,
        };
        if k < 3 {
            return Ok(None);
        }
        let (a, b) = split_linear(f, &rest.homogeneous_part(k), l1, l2)?;
        x = x.add(f, &b).truncate_below(bound);
        y = y.add(f, &a).truncate_below(bound);
    }
}

/// Quadrics spanned by the degree-two parts of `gens`, with the generator
/// combinations realizing each basis vector.
fn quadric_space(f: &PrimeField, gens: &[Poly]) -> Vec<([Fp; 3], Vec<Fp>)> {
    let mut out: Vec<([Fp; 3], Vec<Fp>)> = Vec::new();
    let mut ech = crate::matrix::EchelonBasis::new(3);
    for (i, g) in gens.iter().enumerate() {
        let q = quadric(g);
        if ech.insert(f, &q) {
            let mut c = vec![Fp::ZERO; gens.len()];
            c[i] = Fp::ONE;
            out.push((q, c));
        }
    }
    out
}

fn combine(f: &PrimeField, gens: &[Poly], c: &[Fp]) -> Poly {
    gens.iter()
        .zip(c)
        .fold(Poly::zero(), |acc, (g, &k)| acc.add(f, &g.scale(f, k)))
}

/// Cap on the pencil sweep for very large primes.
const PENCIL_SWEEP: u64 = 200_003;

/// Find `(x', y')` generating `n` with `x'y' in I`, or certify there is none.
pub fn find_split_coordinates(ideal: &Ideal) -> Result<FrameSearch> {
    let ring = ideal.ring();
    let f = ring.field;
    if ring.nvars() != 2 {
        return Err(crate::error::Error::unsupported("needs two variables"));
    }
    if ideal.is_zero() {
        return Ok(FrameSearch::None {
            reason: "I = 0".into(),
            field_dependent: false,
        });
    }
    let dim = ideal.krull_dim()?;
    if dim == 1 {
        let (a, ip) = gcd_part(ideal)?;
        if !ip.is_unit_ideal()? {
            if a.order() != Order::Finite(1) {
                return Ok(FrameSearch::None {
                    reason: "the common factor has order > 1 and I' is proper".into(),
                    field_dependent: false,
                });
            }
            let la = linear_part(&a);
            for g in ip.minimal_generators()? {
                let lg = linear_part(g);
                let det = f.sub(f.mul(la[0], lg[1]), f.mul(la[1], lg[0]));
                if g.order() == Order::Finite(1) && !det.is_zero() {
                    let fr = CoordinateFrame::new(&f, a.clone(), g.clone());
                    return Ok(FrameSearch::Found { frame: fr });
                }
            }
            // an order-one element of I' independent of a would show up among
            // the minimal generators modulo n^2
            let ok = ip
                .minimal_generators()?
                .iter()
                .filter(|g| g.order() == Order::Finite(1))
                .count();
            let reason = if ok == 0 {
                "I' has no element of order one"
            } else {
                "every order-one element of I' is a multiple of a"
            };
            return Ok(FrameSearch::None {
                reason: reason.into(),
                field_dependent: false,
            });
        }
    }
    let gens = ideal.minimal_generators()?.to_vec();
    let space = quadric_space(&f, &gens);
    if space.is_empty() {
        return Ok(FrameSearch::None {
            reason: "I has no element of order two".into(),
            field_dependent: false,
        });
    }
    let bound = if dim == 0 {
        ideal.nilpotency_degree()?.unwrap_or(1)
    } else {
        ideal.config().degree_cap
    };
    let mut candidates: Vec<([Fp; 3], Vec<Fp>)> = Vec::new();
    match space.len() {
        1 => candidates.push(space[0].clone()),
        2 => {
            let (u, cu) = &space[0];
            let (v, cv) = &space[1];
            candidates.push((*v, cv.clone()));
            for t in 0..(f.modulus() as u64).min(PENCIL_SWEEP) {
                let t = Fp(t as u32);
                let q = [0, 1, 2].map(|i| f.add(u[i], f.mul(t, v[i])));
                let c = cu
                    .iter()
                    .zip(cv)
                    .map(|(&a, &b)| f.add(a, f.mul(t, b)))
                    .collect();
                candidates.push((q, c));
            }
        }
        _ => {
            // every quadric occurs; take xy
            let m =
                MatrixFp::from_columns(&space.iter().map(|s| s.0.to_vec()).collect::<Vec<_>>(), 3);
            let w = m
                .solve(&f, &[Fp::ZERO, Fp::ONE, Fp::ZERO])
                .expect("full rank");
            let mut c = vec![Fp::ZERO; gens.len()];
            for (k, s) in space.iter().enumerate() {
                for (ci, &si) in c.iter_mut().zip(&s.1) {
                    *ci = f.add(*ci, f.mul(w[k], si));
                }
            }
            candidates.push(([Fp::ZERO, Fp::ONE, Fp::ZERO], c));
        }
    }
    let mut irreducible = false;
    for (q, c) in candidates {
        match factor_quadric(&f, q) {
            Ok((l1, l2)) => {
                let g = combine(&f, &gens, &c);
                debug_assert_eq!(g.homogeneous_part(2), quadric_poly(&f, q));
                if let Some((x, y)) = raise(&f, &g, l1, l2, bound)? {
                    let fr = CoordinateFrame::new(&f, x, y);
                    if fr.verify(ideal)? {
                        return Ok(FrameSearch::Found { frame: fr });
                    }
                }
                if dim == 1 {
                    return Ok(FrameSearch::Undetermined {
                        reason: format!("order raising did not close up below degree {bound}"),
                    });
                }
            }
            Err(nondegenerate) => irreducible |= nondegenerate,
        }
    }
    if space.len() == 2 && f.modulus() as u64 > PENCIL_SWEEP {
        return Ok(FrameSearch::Undetermined {
            reason: "pencil too large to sweep".into(),
        });
    }
    let reason = if irreducible {
        "the quadrics of I do not split over F_p (they do over F_{p^2})"
    } else {
        "every quadric of I is a square of a linear form"
    };
    Ok(FrameSearch::None {
        reason: reason.into(),
        field_dependent: irreducible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use std::sync::Arc;

    fn ideal(terms: &[&[(i64, &[u32])]]) -> Ideal {
        let r = Arc::new(PolyRing::with_vars(101, 2).unwrap());
        let gens = terms.iter().map(|t| r.poly(t)).collect();
        Ideal::new(r, gens)
    }

    fn found(s: &FrameSearch) -> bool {
        matches!(s, FrameSearch::Found { .. })
    }

    #[test]
    fn spec_examples() {
        let i = ideal(&[&[(1, &[2, 0]), (1, &[1, 1])]]);
        let s = find_split_coordinates(&i).unwrap();
        assert!(s.frame().unwrap().verify(&i).unwrap());
        let i = ideal(&[&[(1, &[3, 0])], &[(1, &[1, 2])], &[(1, &[0, 3])]]);
        assert!(matches!(
            find_split_coordinates(&i).unwrap(),
            FrameSearch::None {
                field_dependent: false,
                ..
            }
        ));
        let i = ideal(&[&[(1, &[2, 0])], &[(1, &[1, 1])], &[(1, &[0, 2])]]);
        let s = find_split_coordinates(&i).unwrap();
        assert!(s.frame().unwrap().verify(&i).unwrap());
    }

    #[test]
    fn order_raising_closes_up() {
        // xy + x^3 + y^4 together with n^5: the perturbation is absorbed
        let r = Arc::new(PolyRing::with_vars(101, 2).unwrap());
        let mut gens = vec![r.poly(&[(1, &[1, 1]), (1, &[3, 0]), (1, &[0, 4])])];
        gens.extend((0..=5).map(|i| r.poly(&[(1, &[i, 5 - i])])));
        let i = Ideal::new(r.clone(), gens);
        let s = find_split_coordinates(&i).unwrap();
        let fr = s.frame().expect("found");
        assert!(fr.verify(&i).unwrap());
        assert!(!i.contains(&r.poly(&[(1, &[1, 1])])).unwrap());
    }

    #[test]
    fn dimension_one_shapes() {
        let xy: &[(i64, &[u32])] = &[(1, &[1, 1])];
        let x2: &[(i64, &[u32])] = &[(1, &[2, 0])];
        let x3: &[(i64, &[u32])] = &[(1, &[3, 0])];
        for t in [vec![xy], vec![xy, x2], vec![xy, x3]] {
            let i = ideal(&t);
            assert!(found(&find_split_coordinates(&i).unwrap()), "{}", i.show());
        }
        let cusp = ideal(&[&[(1, &[2, 0]), (-1, &[0, 3])]]);
        assert!(matches!(
            find_split_coordinates(&cusp).unwrap(),
            FrameSearch::None { .. }
        ));
        let i = ideal(&[&[(1, &[2, 0])], &[(1, &[1, 2])]]);
        assert!(matches!(
            find_split_coordinates(&i).unwrap(),
            FrameSearch::None { .. }
        ));
    }

    #[test]
    fn complete_intersection_still_has_a_frame() {
        // x^2 - y^2 = (x - y)(x + y)
        let i = ideal(&[&[(1, &[2, 0])], &[(1, &[0, 2])]]);
        assert!(found(&find_split_coordinates(&i).unwrap()));
        // x^2 - 2 y^2 is irreducible mod 101 since 2 is not a square there
        let i = ideal(&[
            &[(1, &[2, 0]), (-2, &[0, 2])],
            &[(1, &[3, 0])],
            &[(1, &[0, 3])],
        ]);
        let s = find_split_coordinates(&i).unwrap();
        assert!(
            matches!(
                s,
                FrameSearch::None {
                    field_dependent: true,
                    ..
                }
            ),
            "{s:?}"
        );
    }
}
