//! The quotient ring `R = S/I` of the local ring `S`.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Order, Poly, PolyRing};
use crate::stdbasis::ideal::scalar;
use crate::stdbasis::Ideal;

/// Coarse shape of `R` used to gate the structure results.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingKind {
    Regular,
    ZeroDimCi,
    ArtinianNonCi,
    CmDimOne,
    Depth0DimOne,
    Other,
}

impl RingKind {
    pub fn label(self) -> &'static str {
        match self {
            RingKind::Regular => "regular",
            RingKind::ZeroDimCi => "zero-dim CI",
            RingKind::ArtinianNonCi => "artinian-non-CI",
            RingKind::CmDimOne => "CM-dim-1",
            RingKind::Depth0DimOne => "depth0-dim1",
            RingKind::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: RingKind,
    pub embedding_dim: usize,
    pub dim: usize,
    /// `None` when it is not determined by the socle test alone.
    pub depth: Option<usize>,
    pub mu: usize,
    pub complete_intersection: bool,
    /// Known Golod for `e <= 2`; `None` when undecided.
    pub golod: Option<bool>,
    pub socle_dim: usize,
}

/// k-basis of `(0 :_R m)`, given by polynomial lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleSpace {
    pub generators: Vec<Poly>,
}

impl SocleSpace {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }
}

#[derive(Debug)]
pub struct QuotientRing {
    ideal: Ideal,
    socle: OnceLock<SocleSpace>,
    class: OnceLock<Classification>,
}

impl Clone for QuotientRing {
    fn clone(&self) -> Self {
        QuotientRing {
            ideal: self.ideal.clone(),
            socle: self.socle.clone(),
            class: self.class.clone(),
        }
    }
}

impl QuotientRing {
    /// Rejects ideals not contained in `n^2`.
    pub fn new(ideal: Ideal) -> Result<Self> {
        for g in ideal.generators() {
            if g.order() < Order::Finite(2) {
                return Err(Error::invalid(format!(
                    "generator {} is not in n^2; the embedding dimension would drop",
                    ideal.ring().show(g)
                )));
            }
        }
        Ok(QuotientRing {
            ideal,
            socle: OnceLock::new(),
            class: OnceLock::new(),
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        if self.ideal.is_zero() {
            return Ok(f.clone());
        }
        self.ideal.normal_form(f)
    }

    pub fn is_zero(&self, f: &Poly) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn dim(&self) -> Result<usize> {
        self.ideal.krull_dim()
    }

    pub fn hilbert_function(&self, up_to: u32) -> Result<Vec<usize>> {
        self.ideal.hilbert_function(up_to)
    }

    /// Least `s` with `m^s = 0`, for Artinian `R`.
    pub fn nilpotency_degree(&self) -> Result<Option<u32>> {
        if self.ideal.is_zero() {
            return Ok(None);
        }
        self.ideal.nilpotency_degree()
    }

    pub fn artinian_basis(&self) -> Result<Vec<Monomial>> {
        self.ideal.standard_monomials()
    }

    pub fn socle(&self) -> Result<&SocleSpace> {
        if let Some(s) = self.socle.get() {
            return Ok(s);
        }
        let s = if self.ideal.is_zero() {
            SocleSpace {
                generators: Vec::new(),
            }
        } else {
            let f = &self.ring().field;
            let colon = self.ideal.colon(&Ideal::maximal(self.ring().clone()))?;
            let mut sb = self.ideal.std_basis()?.clone();
            let mut gens = Vec::new();
            for c in colon.generators() {
                // n * c lies in I, so each pushed remainder keeps the basis standard
                let w = sb.normal_form(f, &scalar(c))?;
                if !w.is_zero() {
                    gens.push(w.component(0));
                    sb.push_unchecked(f, w);
                }
            }
            SocleSpace { generators: gens }
        };
        Ok(self.socle.get_or_init(|| s))
    }

    pub fn classify(&self) -> Result<&Classification> {
        if let Some(c) = self.class.get() {
            return Ok(c);
        }
        let e = self.nvars();
        let dim = self.dim()?;
        let mu = self.ideal.mu()?;
        let socle_dim = self.socle()?.dim();
        let complete_intersection = mu == e - dim;
        let depth = if self.ideal.is_zero() {
            Some(e)
        } else if socle_dim > 0 {
            Some(0)
        } else if e == 2 {
            Some(1)
        } else {
            None
        };
        let kind = if self.ideal.is_zero() {
            RingKind::Regular
        } else if dim == 0 && complete_intersection {
            RingKind::ZeroDimCi
        } else if dim == 0 {
            RingKind::ArtinianNonCi
        } else if e == 2 && depth == Some(1) {
            RingKind::CmDimOne
        } else if e == 2 {
            RingKind::Depth0DimOne
        } else {
            RingKind::Other
        };
        let golod = if e <= 2 {
            Some(kind != RingKind::ZeroDimCi)
        } else {
            None
        };
        let c = Classification {
            kind,
            embedding_dim: e,
            dim,
            depth,
            mu,
            complete_intersection,
            golod,
            socle_dim,
        };
        Ok(self.class.get_or_init(|| c))
    }

    pub fn is_zero_dim_ci(&self) -> Result<bool> {
        Ok(self.classify()?.kind == RingKind::ZeroDimCi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<PolyRing> {
        Arc::new(PolyRing::with_vars(101, 2).unwrap())
    }

    fn q(r: &Arc<PolyRing>, gens: &[&[(i64, &[u32])]]) -> QuotientRing {
        QuotientRing::new(Ideal::new(
            r.clone(),
            gens.iter().map(|g| r.poly(g)).collect(),
        ))
        .unwrap()
    }

    #[test]
    fn rejects_linear_generators() {
        let r = ring();
        assert!(QuotientRing::new(Ideal::new(r.clone(), vec![r.var(0)])).is_err());
        let f = r.poly(&[(1, &[1, 0]), (1, &[2, 0])]);
        assert!(QuotientRing::new(Ideal::new(r, vec![f])).is_err());
    }

    #[test]
    fn reduction() {
        let r = ring();
        let a = q(&r, &[&[(1, &[2, 0])], &[(1, &[1, 1])], &[(1, &[0, 2])]]);
        assert!(a.is_zero(&r.poly(&[(1, &[2, 0])])).unwrap());
        assert_eq!(a.reduce(&r.var(0)).unwrap(), r.var(0));
        let cusp = q(&r, &[&[(1, &[2, 0]), (-1, &[0, 3])]]);
        assert_eq!(
            cusp.reduce(&r.poly(&[(1, &[3, 0])])).unwrap(),
            r.poly(&[(1, &[1, 3])])
        );
    }

    #[test]
    fn socles() {
        let r = ring();
        let a = q(&r, &[&[(1, &[2, 0])], &[(1, &[1, 1])], &[(1, &[0, 2])]]);
        assert_eq!(a.socle().unwrap().dim(), 2);
        let node = q(&r, &[&[(1, &[1, 1])]]);
        assert_eq!(node.socle().unwrap().dim(), 0);
        let b = q(&r, &[&[(1, &[1, 1])], &[(1, &[2, 0])]]);
        let s = b.socle().unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.generators[0], r.var(0));
    }

    #[test]
    fn classifications() {
        let r = ring();
        let ci = q(&r, &[&[(1, &[2, 0])], &[(1, &[0, 2])]]);
        let c = ci.classify().unwrap();
        assert_eq!(c.kind, RingKind::ZeroDimCi);
        assert_eq!(c.golod, Some(false));
        let node = q(&r, &[&[(1, &[1, 1])]]);
        assert_eq!(node.classify().unwrap().kind, RingKind::CmDimOne);
        assert_eq!(node.classify().unwrap().golod, Some(true));
        let b = q(&r, &[&[(1, &[1, 1])], &[(1, &[2, 0])]]);
        assert_eq!(b.classify().unwrap().kind, RingKind::Depth0DimOne);
        let n2 = q(&r, &[&[(1, &[2, 0])], &[(1, &[1, 1])], &[(1, &[0, 2])]]);
        let c = n2.classify().unwrap();
        assert_eq!(
            (c.kind, c.mu, c.complete_intersection),
            (RingKind::ArtinianNonCi, 3, false)
        );
        assert_eq!(
            QuotientRing::new(Ideal::zero(r))
                .unwrap()
                .classify()
                .unwrap()
                .kind,
            RingKind::Regular
        );
    }

    #[test]
    fn artinian_basis_matches_hilbert_function() {
        let r = ring();
        let a = q(&r, &[&[(1, &[3, 0])], &[(1, &[1, 2])], &[(1, &[0, 3])]]);
        let h: usize = a.hilbert_function(6).unwrap().iter().sum();
        assert_eq!(a.artinian_basis().unwrap().len(), h);
        assert_eq!(a.nilpotency_degree().unwrap(), Some(4));
    }
}
