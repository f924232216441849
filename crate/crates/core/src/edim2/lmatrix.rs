//! The `2 x (n+1)` cofactor matrix and the splitting `syz_2(k) = N ⊕ N'`.

use serde::{Deserialize, Serialize};

use crate::artinian::FlModule;
use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::poly::{Poly, PolyRing};
use crate::quotient::{QuotientRing, RingKind};
use crate::resolver::{iso_test, to_fl_module, ModuleKind, Resolver, SubmoduleR};
use crate::stdbasis::ideal::scalar;
use crate::stdbasis::Ideal;
use crate::vector::Vector;

use super::frame::quadric;
use super::{algebra_of, cofactors, decompose_m, quotient_in_frame, require_edim2, LinearFrame};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LMatrix {
    /// Coordinates the matrix is written in.
    pub frame: LinearFrame,
    /// `h_1..h_n` in the new coordinates.
    pub gens: Vec<String>,
    /// `(f_i, g_i)` with `L_0 = (y, -x)` first.
    pub columns: Vec<[String; 2]>,
    /// Columns before this index generate `N`, the rest `N'`.
    pub split: usize,
    pub a: usize,
    /// `f_i, g_i in I:n` for the last `a` columns.
    pub colon_flags: Vec<bool>,
    pub identities_hold: bool,
    pub generates_syz1: bool,
    pub minimal: bool,
    #[serde(skip)]
    pub(crate) cols: Vec<[Poly; 2]>,
}

impl LMatrix {
    pub fn certified(&self) -> bool {
        self.identities_hold
            && self.generates_syz1
            && self.minimal
            && self.colon_flags.iter().all(|&b| b)
    }
}

/// `l` with `q = c l^2`, when the quadric has rank one.
fn square_root_form(f: &PrimeField, q: [Fp; 3]) -> Option<[Fp; 2]> {
    let [a, b, c] = q;
    let disc = f.sub(f.mul(b, b), f.mul(f.elem(4), f.mul(a, c)));
    if !disc.is_zero() || q.iter().all(|t| t.is_zero()) {
        return None;
    }
    if a.is_zero() {
        return Some([Fp::ZERO, Fp::ONE]);
    }
    Some([Fp::ONE, f.div(b, f.mul(f.elem(2), a)).ok()?])
}

/// Choose coordinates: if the quadric parts of `I` span the line of a
/// square `l^2`, take `x = l`.
fn choose_frame(i: &Ideal) -> Result<LinearFrame> {
    let f = &i.ring().field;
    let mut quads: Vec<[Fp; 3]> = Vec::new();
    let mut ech = crate::matrix::EchelonBasis::new(3);
    for g in i.minimal_generators()? {
        let q = quadric(g);
        if ech.insert(f, &q) {
            quads.push(q);
        }
    }
    if quads.len() == 1 {
        if let Some(l) = square_root_form(f, quads[0]) {
            return Ok(LinearFrame::with_first(f, l));
        }
    }
    Ok(LinearFrame::identity())
}

/// Greedy selection modulo a growing standard basis of `nI`; returns the
/// picked elements.
fn independent_mod(
    f: &PrimeField,
    sb: &mut crate::stdbasis::StandardBasis,
    cands: Vec<Poly>,
) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for c in cands {
        let r = sb.normal_form(f, &scalar(&c))?;
        if !r.is_zero() {
            sb.push_unchecked(f, r);
            out.push(c);
        }
    }
    Ok(out)
}

fn show_pair(ring: &PolyRing, c: &[Poly; 2]) -> [String; 2] {
    [ring.show(&c[0]), ring.show(&c[1])]
}

/// The matrix `L` for `I`, with the generators whose images span
/// `n(I:n)/nI` placed last and their cofactors taken in `I:n`.
pub fn build_l(q: &QuotientRing) -> Result<LMatrix> {
    require_edim2(q)?;
    if q.ideal().is_zero() {
        return Err(Error::unsupported("R is regular"));
    }
    let frame = choose_frame(q.ideal())?;
    let qf = quotient_in_frame(q, &frame)?;
    let i = qf.ideal();
    let ring = qf.ring();
    let f = &ring.field;
    let (x, y) = (Poly::var(0), Poly::var(1));
    let colon = i.colon(&Ideal::maximal(ring.clone()))?;
    let mut sb = i.times_maximal().std_basis()?.clone();

    // n(I:n) part: x c and y c with cofactors (c, 0) and (0, c)
    let mut special: Vec<(Poly, [Poly; 2])> = Vec::new();
    for c in colon.generators() {
        for (v, pair) in [
            (&x, [c.clone(), Poly::zero()]),
            (&y, [Poly::zero(), c.clone()]),
        ] {
            let h = c.mul(f, v);
            if !independent_mod(f, &mut sb, vec![h.clone()])?.is_empty() {
                special.push((h, pair));
            }
        }
    }
    let a = special.len();
    let mut rest = independent_mod(f, &mut sb, i.minimal_generators()?.to_vec())?;
    // a generator with a quadric part goes first; clear that quadric from the others
    if let Some(pos) = rest.iter().position(|g| quadric(g) != [Fp::ZERO; 3]) {
        rest.swap(0, pos);
        let q1 = quadric(&rest[0]);
        let piv = q1.iter().position(|c| !c.is_zero()).expect("nonzero");
        for k in 1..rest.len() {
            let qk = quadric(&rest[k]);
            let t = f.div(qk[piv], q1[piv])?;
            let cand = rest[k].sub(f, &rest[0].scale(f, t));
            if quadric(&cand) == [Fp::ZERO; 3] {
                rest[k] = cand;
            }
        }
    }
    let mut gens = Vec::new();
    let mut cols = vec![[y.clone(), x.neg(f)]];
    for h in &rest {
        let (a1, b1) = cofactors(f, h)?;
        cols.push([a1, b1]);
        gens.push(h.clone());
    }
    for (h, pair) in &special {
        cols.push(pair.clone());
        gens.push(h.clone());
    }
    let identities_hold = gens
        .iter()
        .zip(&cols[1..])
        .all(|(h, c)| c[0].mul(f, &x).add(f, &c[1].mul(f, &y)) == *h);
    let colon_flags = special
        .iter()
        .map(|(_, c)| Ok(colon.contains(&c[0])? && colon.contains(&c[1])?))
        .collect::<Result<Vec<bool>>>()?;
    let e = Resolver::new(&qf)?;
    let lsub = SubmoduleR::new(2, cols.iter().map(|c| Vector::from_polys(c)).collect());
    let syz1 = e.syzygy_step(&e.maximal_ideal())?;
    let generates_syz1 = e.same_submodule(&lsub, &syz1)?;
    let minimal = lsub.gens.len() == cols.len() && e.mu(&lsub)? == i.mu()? + 1;
    Ok(LMatrix {
        frame,
        gens: gens.iter().map(|g| ring.show(g)).collect(),
        columns: cols.iter().map(|c| show_pair(ring, c)).collect(),
        split: cols.len() - a,
        a,
        colon_flags,
        identities_hold,
        generates_syz1,
        minimal,
        cols,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSyz2 {
    pub l: LMatrix,
    pub a: usize,
    pub mu_n: usize,
    pub expected_mu_n: usize,
    pub k_summands_n: usize,
    /// `m N' = 0`.
    pub n_prime_killed: bool,
    /// `syz_2(k) ≅ N ⊕ k^a`, Artinian rings only.
    pub iso_sum: Option<String>,
    /// `m N ≅ m/(0:m)`, Artinian rings only.
    pub iso_eq5: Option<String>,
    pub pass: bool,
}

pub fn split_syz2(q: &QuotientRing, seed: u64) -> Result<SplitSyz2> {
    let d = decompose_m(q, seed)?;
    if d.decomposable != Some(false) {
        return Err(Error::unsupported(
            "m is decomposable or undetermined; syz_2(k) = m ⊕ k^a there",
        ));
    }
    let l = build_l(q)?;
    let qf = quotient_in_frame(q, &l.frame)?;
    let ring = qf.ring().clone();
    let f = &ring.field;
    let e = Resolver::new(&qf)?;
    let mu = qf.ideal().mu()?;
    let a = l.a;
    let as_sub =
        |cs: &[[Poly; 2]]| SubmoduleR::new(2, cs.iter().map(|c| Vector::from_polys(c)).collect());
    let n = as_sub(&l.cols[..l.split]);
    let np = as_sub(&l.cols[l.split..]);
    let zero = e.std_basis(2, &[])?;
    let mut n_prime_killed = true;
    for g in &np.gens {
        for v in ring.vars() {
            n_prime_killed &= zero.contains(f, &g.mul_poly(f, &v))?;
        }
    }
    let mu_n = e.mu(&n)?;
    let expected_mu_n = mu + 1 - a;
    let k_summands_n = e.count_k_summands(&n)?;
    let (iso_sum, iso_eq5) = if qf.classify()?.kind == RingKind::ArtinianNonCi
        || qf.classify()?.kind == RingKind::ZeroDimCi
    {
        let alg = algebra_of(&qf)?;
        let syz2 = e
            .resolve(ModuleKind::K, 2)?
            .syzygy(2)
            .expect("length 2")
            .clone();
        let lhs = to_fl_module(&alg, &syz2);
        let nm = to_fl_module(&alg, &n);
        let rhs = FlModule::direct_sum(&[&nm, &FlModule::residue_field(&alg).power(a)?])?;
        let sum = iso_test(&alg, &lhs, &rhs, seed)?.label().to_string();
        let mut prods = Vec::new();
        for g in &n.gens {
            for v in ring.vars() {
                prods.push(g.mul_poly(f, &v));
            }
        }
        let mn = to_fl_module(&alg, &SubmoduleR::new(2, prods));
        let m = to_fl_module(&alg, &e.maximal_ideal());
        let m_mod_soc = m.quotient(&m.socle());
        let eq5 = iso_test(&alg, &mn, &m_mod_soc, seed)?.label().to_string();
        (Some(sum), Some(eq5))
    } else {
        (None, None)
    };
    let pass = l.certified()
        && n_prime_killed
        && mu_n == expected_mu_n
        && k_summands_n == 0
        && iso_sum.as_deref().is_none_or(|v| v == "YES")
        && iso_eq5.as_deref().is_none_or(|v| v == "YES");
    Ok(SplitSyz2 {
        l,
        a,
        mu_n,
        expected_mu_n,
        k_summands_n,
        n_prime_killed,
        iso_sum,
        iso_eq5,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{mono, q};
    use super::*;

    #[test]
    fn l_for_cubic_monomials() {
        let l = build_l(&mono(&[[3, 0], [1, 2], [0, 3]])).unwrap();
        assert!(l.certified(), "{l:?}");
        assert_eq!((l.a, l.split, l.columns.len()), (2, 2, 4));
        assert_eq!(l.frame, LinearFrame::identity());
    }

    #[test]
    fn l_for_cusp_uses_the_square() {
        let l = build_l(&q(&[&[(1, [2, 0]), (-1, [0, 3])]])).unwrap();
        assert!(l.certified());
        assert_eq!(l.columns[1], ["x".to_string(), "-y^2".to_string()]);
        // (x + y)^2 + y^3: the new first coordinate is x + y
        let l = build_l(&q(&[&[(1, [2, 0]), (2, [1, 1]), (1, [0, 2]), (1, [0, 3])]])).unwrap();
        assert_eq!(l.frame.m[0], [Fp::ONE, Fp::ONE]);
        assert!(l.certified());
    }

    #[test]
    fn split_examples() {
        let s = split_syz2(&mono(&[[3, 0], [1, 2], [0, 3]]), 5).unwrap();
        assert!(s.pass, "{s:?}");
        assert_eq!((s.a, s.mu_n), (2, 2));
        let s = split_syz2(&q(&[&[(1, [2, 0]), (-1, [0, 3])]]), 5).unwrap();
        assert!(s.pass, "{s:?}");
        assert_eq!((s.a, s.mu_n), (0, 2));
        let s = split_syz2(&mono(&[[3, 0], [2, 1], [1, 2], [0, 3]]), 5).unwrap();
        assert!(s.pass, "{s:?}");
        assert_eq!((s.a, s.mu_n), (4, 1));
        for ci in [&[[2, 0], [0, 2]][..], &[[3, 0], [0, 2]][..]] {
            let s = split_syz2(&mono(ci), 5).unwrap();
            assert!(s.pass, "{ci:?}: {s:?}");
        }
        assert!(split_syz2(&mono(&[[1, 1]]), 5).is_err());
    }
}
