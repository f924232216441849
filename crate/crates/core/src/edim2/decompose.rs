//! Decomposability of `m`, the cyclic pieces, and the number `a` of residue
//! field summands split off `syz_2(k)`.

use serde::{Deserialize, Serialize};

use crate::artinian::FlModule;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::quotient::{QuotientRing, RingKind};
use crate::resolver::{iso_test, to_fl_module, ModuleKind, Resolver};
use crate::stdbasis::ideal::determinant;
use crate::stdbasis::ideal::scalar;
use crate::stdbasis::Ideal;

use super::{
    algebra_of, cofactors, cyclic_module, find_split_coordinates, require_edim2, show_all,
    FrameSearch,
};

/// `I = (x'y', x'^alpha, y'^beta)`; a missing exponent means that power
/// does not occur (its coefficient is zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub alpha: Option<u32>,
    pub beta: Option<u32>,
    pub verified: bool,
}

impl Shape {
    pub fn label(&self) -> String {
        let mut parts = vec!["xy".to_string()];
        if let Some(a) = self.alpha {
            parts.push(format!("x^{a}"));
        }
        if let Some(b) = self.beta {
            parts.push(format!("y^{b}"));
        }
        format!("({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MDecomposition {
    pub kind: RingKind,
    pub search: FrameSearch,
    /// `None` when the frame search was inconclusive.
    pub decomposable: Option<bool>,
    pub reason: String,
    pub ann_x: Vec<String>,
    pub ann_y: Vec<String>,
    pub shape: Option<Shape>,
    /// `m ≅ R/(0:x) ⊕ R/(0:y)`, Artinian rings only.
    pub iso: Option<String>,
}

/// Least `k <= cap` with `t^k in J`, or `None` when `R/J` is not Artinian.
fn least_power(j: &Ideal, t: &Poly) -> Result<Option<u32>> {
    if j.krull_dim()? != 0 {
        return Ok(None);
    }
    let f = &j.ring().field;
    let mut p = t.clone();
    for k in 1..=j.config().degree_cap {
        if j.contains(&p)? {
            return Ok(Some(k));
        }
        p = p.mul(f, t);
    }
    let cap = j.config().degree_cap;
    Err(Error::DegreeCapExceeded { cap, degree: cap })
}

pub fn decompose_m(q: &QuotientRing, seed: u64) -> Result<MDecomposition> {
    require_edim2(q)?;
    let kind = q.classify()?.kind;
    let search = find_split_coordinates(q.ideal())?;
    let mut out = MDecomposition {
        kind,
        search: search.clone(),
        decomposable: Some(false),
        reason: String::new(),
        ann_x: Vec::new(),
        ann_y: Vec::new(),
        shape: None,
        iso: None,
    };
    let frame = match &search {
        FrameSearch::Found { frame } => frame.clone(),
        FrameSearch::None { reason, .. } => {
            out.reason = format!("no parameters with xy in I: {reason}");
            return Ok(out);
        }
        FrameSearch::Undetermined { reason } => {
            out.decomposable = None;
            out.reason = reason.clone();
            return Ok(out);
        }
    };
    if matches!(kind, RingKind::Regular | RingKind::ZeroDimCi) {
        out.reason = format!("R is {}", kind.label());
        return Ok(out);
    }
    out.decomposable = Some(true);
    out.reason = "xy in I".into();
    let i = q.ideal();
    let ring = q.ring();
    let f = &ring.field;
    let (x, y) = (&frame.x, &frame.y);
    let ann_x = i.colon_poly(x)?;
    let ann_y = i.colon_poly(y)?;
    out.ann_x = show_all(ring, ann_x.minimal_generators()?);
    out.ann_y = show_all(ring, ann_y.minimal_generators()?);

    let alpha = least_power(&i.add_generators(std::slice::from_ref(y)), x)?;
    let beta = least_power(&i.add_generators(std::slice::from_ref(x)), y)?;
    let mut gens = vec![x.mul(f, y)];
    gens.extend(alpha.map(|a| x.pow(f, a)));
    gens.extend(beta.map(|b| y.pow(f, b)));
    let verified = Ideal::with_config(ring.clone(), gens, i.config()).same_as(i)?;
    out.shape = Some(Shape {
        alpha,
        beta,
        verified,
    });

    if kind == RingKind::ArtinianNonCi {
        let alg = algebra_of(q)?;
        let e = Resolver::new(q)?;
        let m = to_fl_module(&alg, &e.maximal_ideal());
        let rx = cyclic_module(&alg, &ann_x);
        let ry = cyclic_module(&alg, &ann_y);
        let sum = FlModule::direct_sum(&[&rx, &ry])?;
        out.iso = Some(iso_test(&alg, &m, &sum, seed)?.label().to_string());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop41 {
    pub kind: RingKind,
    pub a: usize,
    pub case: String,
    pub mu_syz2: usize,
    pub expected_mu: usize,
    pub k_syz2: usize,
    pub expected_k: usize,
    /// `syz_2(k) ≅ m ⊕ k^a`, Artinian rings only.
    pub iso: Option<String>,
    pub pass: bool,
}

/// `syz_2(k) ≅ m ⊕ k^a` when `m` decomposes.
pub fn prop41_case(q: &QuotientRing, seed: u64) -> Result<Prop41> {
    let d = decompose_m(q, seed)?;
    if d.decomposable != Some(true) {
        return Err(Error::unsupported("m is not known to be decomposable"));
    }
    let (a, case) = match d.kind {
        RingKind::ArtinianNonCi => (2, "dim R = 0"),
        RingKind::Depth0DimOne => (1, "depth R = 0, dim R = 1"),
        RingKind::CmDimOne => (0, "R Cohen-Macaulay of dimension 1"),
        k => {
            return Err(Error::unsupported(format!(
                "unexpected ring kind {}",
                k.label()
            )))
        }
    };
    let e = Resolver::new(q)?;
    let m = e.maximal_ideal();
    let res = e.resolve(ModuleKind::K, 2)?;
    let syz2 = res.syzygy(2).expect("length 2");
    let mu_syz2 = e.mu(syz2)?;
    let k_syz2 = e.count_k_summands(syz2)?;
    let expected_mu = e.mu(&m)? + a;
    let expected_k = e.count_k_summands(&m)? + a;
    let iso = if d.kind == RingKind::ArtinianNonCi {
        let alg = algebra_of(q)?;
        let lhs = to_fl_module(&alg, syz2);
        let km = FlModule::residue_field(&alg).power(a)?;
        let rhs = FlModule::direct_sum(&[&to_fl_module(&alg, &m), &km])?;
        Some(iso_test(&alg, &lhs, &rhs, seed)?.label().to_string())
    } else {
        None
    };
    let pass =
        mu_syz2 == expected_mu && k_syz2 == expected_k && iso.as_deref().is_none_or(|v| v == "YES");
    Ok(Prop41 {
        kind: d.kind,
        a,
        case: case.into(),
        mu_syz2,
        expected_mu,
        k_syz2,
        expected_k,
        iso,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AValue {
    /// `dim_k n(I:n) / nI`.
    pub a: usize,
    pub k_summands_syz2: usize,
    pub agree: bool,
    /// `I:n = I + (Δ)` with `Δ` the determinant of the cofactor matrix,
    /// checked for complete intersections of dimension zero.
    pub ci_certificate: Option<bool>,
}

/// `dim_k n(I:n)/nI`: each `x c`, `y c` with `c in I:n` has `n x c` inside
/// `nI`, so independence modulo `nI` can be tested one element at a time.
pub fn socle_count_a(i: &Ideal) -> Result<usize> {
    let ring = i.ring();
    let f = &ring.field;
    let colon = i.colon(&Ideal::maximal(ring.clone()))?;
    let mut sb = i.times_maximal().std_basis()?.clone();
    let mut a = 0;
    for c in colon.generators() {
        for v in ring.vars() {
            let r = sb.normal_form(f, &scalar(&c.mul(f, &v)))?;
            if !r.is_zero() {
                a += 1;
                sb.push_unchecked(f, r);
            }
        }
    }
    Ok(a)
}

pub fn compute_a(q: &QuotientRing) -> Result<AValue> {
    require_edim2(q)?;
    let i = q.ideal();
    let a = socle_count_a(i)?;
    let e = Resolver::new(q)?;
    let res = e.resolve(ModuleKind::K, 2)?;
    let k_summands_syz2 = e.count_k_summands(res.syzygy(2).expect("length 2"))?;
    let ci_certificate = if q.classify()?.kind == RingKind::ZeroDimCi {
        let f = &q.ring().field;
        let g = i.minimal_generators()?;
        let rows: Vec<Vec<Poly>> = g
            .iter()
            .map(|h| cofactors(f, h).map(|(a, b)| vec![a, b]))
            .collect::<Result<_>>()?;
        let delta = determinant(f, &rows);
        let colon = i.colon(&Ideal::maximal(q.ring().clone()))?;
        Some(colon.same_as(&i.add_generators(&[delta]))?)
    } else {
        None
    };
    Ok(AValue {
        a,
        k_summands_syz2,
        agree: a == k_summands_syz2,
        ci_certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{mono, q};
    use super::*;

    #[test]
    fn decomposition_table() {
        let cases: &[(&[[u32; 2]], bool)] = &[
            (&[[2, 0], [1, 1], [0, 2]], true),
            (&[[3, 0], [1, 2], [0, 3]], false),
            (&[[1, 1]], true),
            (&[[1, 1], [2, 0]], true),
            (&[[1, 1], [3, 0]], true),
            (&[[1, 1], [2, 0], [0, 3]], true),
            (&[[3, 0], [2, 1], [1, 2], [0, 3]], false),
            (&[[4, 0], [1, 1], [0, 4]], true),
            (&[[2, 0], [0, 2]], false),
            (&[[3, 0], [0, 2]], false),
        ];
        for (ms, dec) in cases {
            let r = mono(ms);
            let d = decompose_m(&r, 7).unwrap();
            assert_eq!(d.decomposable, Some(*dec), "{ms:?}: {}", d.reason);
            if *dec {
                assert!(d.shape.as_ref().unwrap().verified, "{ms:?}");
                assert!(d.iso.as_deref().is_none_or(|v| v == "YES"), "{ms:?}");
            }
        }
        let cusp = q(&[&[(1, [2, 0]), (-1, [0, 3])]]);
        assert_eq!(decompose_m(&cusp, 7).unwrap().decomposable, Some(false));
        let node = q(&[&[(1, [2, 0]), (1, [1, 1])]]);
        assert_eq!(decompose_m(&node, 7).unwrap().decomposable, Some(true));
    }

    #[test]
    fn shapes() {
        let d = decompose_m(&mono(&[[1, 1], [3, 0]]), 1).unwrap();
        let s = d.shape.unwrap();
        assert_eq!((s.alpha, s.beta), (Some(3), None));
        let d = decompose_m(&mono(&[[2, 0], [1, 1], [0, 2]]), 1).unwrap();
        assert_eq!(d.shape.unwrap().label(), "(xy, x^2, y^2)");
    }

    #[test]
    fn prop41_table() {
        for (ms, a) in [
            (&[[2, 0], [1, 1], [0, 2]][..], 2),
            (&[[1, 1], [2, 0]][..], 1),
            (&[[1, 1]][..], 0),
            (&[[1, 1], [2, 0], [0, 3]][..], 2),
        ] {
            let p = prop41_case(&mono(ms), 3).unwrap();
            assert_eq!(p.a, a);
            assert!(p.pass, "{ms:?}: {p:?}");
        }
        assert!(prop41_case(&mono(&[[3, 0], [1, 2], [0, 3]]), 3).is_err());
    }

    #[test]
    fn a_values() {
        let v = compute_a(&mono(&[[3, 0], [1, 2], [0, 3]])).unwrap();
        assert_eq!((v.a, v.agree), (2, true));
        let v = compute_a(&mono(&[[3, 0], [2, 1], [1, 2], [0, 3]])).unwrap();
        assert_eq!((v.a, v.agree), (4, true));
        let v = compute_a(&q(&[&[(1, [2, 0]), (-1, [0, 3])]])).unwrap();
        assert_eq!((v.a, v.agree), (0, true));
        let v = compute_a(&mono(&[[2, 0], [0, 2]])).unwrap();
        assert_eq!((v.a, v.ci_certificate), (0, Some(true)));
        assert_eq!(compute_a(&mono(&[[1, 1]])).unwrap().a, 0);
    }
}
