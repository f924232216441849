//! Resolutions computed purely by linear algebra over `F_p` on the monomial
//! basis of an Artinian `R`.

use std::sync::Arc;

use crate::artinian::{ArtinianAlgebra, FlModule};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::{MatrixFp, Subspace};
use crate::poly::{Poly, PolyRing};

use super::ModuleKind;

/// `differentials[i]` holds the columns of `d_{i+1}` as flattened vectors in
/// `A^{b_i}`; `syzygies[i]` is its image, i.e. `syz_{i+1}(k)`.
#[derive(Clone, Debug)]
pub struct LaResolution {
    pub alg: Arc<ArtinianAlgebra>,
    pub module: ModuleKind,
    pub betti: Vec<usize>,
    pub differentials: Vec<Vec<Vec<Fp>>>,
    pub syzygies: Vec<Subspace>,
}

impl LaResolution {
    /// Resolve `k` (or `m`) over the algebra up to homological degree `length`.
    pub fn compute(alg: &Arc<ArtinianAlgebra>, module: ModuleKind, length: usize) -> Self {
        let f = *alg.field();
        let n = alg.dim();
        let shift = usize::from(module == ModuleKind::M);
        let vars: Vec<Vec<Fp>> = (0..alg.nvars()).map(|i| alg.var_elem(i)).collect();
        let mut z = alg.closure(1, &vars);
        let mut gens = alg.minimal_generators(1, &z);
        let mut rank = 1;
        let mut betti = vec![1];
        let mut diffs = Vec::new();
        let mut syz = Vec::new();
        for _ in 0..length + shift {
            betti.push(gens.len());
            diffs.push(gens.clone());
            syz.push(z.clone());
            if gens.is_empty() {
                z = Subspace::zero(0);
                rank = 0;
                continue;
            }
            let b = gens.len();
            let mut cols = Vec::with_capacity(b * n);
            for g in &gens {
                for t in 0..n {
                    cols.push(alg.mono_act_free(t, g));
                }
            }
            let m = MatrixFp::from_columns(&cols, rank * n);
            z = Subspace::span(&f, b * n, &m.kernel(&f));
            rank = b;
            gens = alg.minimal_generators(rank, &z);
        }
        LaResolution {
            alg: alg.clone(),
            module,
            betti: betti.into_iter().skip(shift).collect(),
            differentials: diffs.into_iter().skip(shift).collect(),
            syzygies: syz.into_iter().skip(shift).collect(),
        }
    }

    /// `syz_i(k)` as a finite-length module, for `1 <= i <= length`.
    pub fn syzygy_module(&self, i: usize) -> FlModule {
        let rank = self.betti[i - 1];
        FlModule::submodule_of_free(&self.alg, rank, &self.differentials[i - 1]).0
    }
}

/// Betti numbers of `k` (or `m`) over an Artinian `S/I` by linear algebra.
pub fn truncation_oracle(
    ring: &PolyRing,
    gens: &[Poly],
    module: ModuleKind,
    length: usize,
) -> Result<Vec<usize>> {
    let alg = ArtinianAlgebra::from_ideal(ring, gens, crate::stdbasis::DEFAULT_DEGREE_CAP)
        .map_err(|_| Error::unsupported("the truncation oracle needs an Artinian quotient"))?;
    Ok(LaResolution::compute(&Arc::new(alg), module, length).betti)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::with_vars(101, 2).unwrap()
    }

    fn mono(r: &PolyRing, ms: &[(u32, u32)]) -> Vec<Poly> {
        ms.iter().map(|&(a, b)| r.poly(&[(1, &[a, b])])).collect()
    }

    #[test]
    fn oracle_examples() {
        let r = ring();
        let b =
            truncation_oracle(&r, &mono(&r, &[(2, 0), (1, 1), (0, 2)]), ModuleKind::K, 4).unwrap();
        assert_eq!(b, vec![1, 2, 4, 8, 16]);
        let b =
            truncation_oracle(&r, &mono(&r, &[(3, 0), (1, 2), (0, 3)]), ModuleKind::K, 2).unwrap();
        assert_eq!(b, vec![1, 2, 4]);
        let b = truncation_oracle(&r, &[r.var(0), r.var(1)], ModuleKind::K, 3).unwrap();
        assert_eq!(b, vec![1, 0, 0, 0]);
        assert!(truncation_oracle(&r, &mono(&r, &[(1, 1)]), ModuleKind::K, 2).is_err());
    }

    #[test]
    fn syzygy_modules_have_betti_many_generators() {
        let r = ring();
        let alg = Arc::new(
            ArtinianAlgebra::from_ideal(&r, &mono(&r, &[(3, 0), (1, 2), (0, 3)]), 24).unwrap(),
        );
        let res = LaResolution::compute(&alg, ModuleKind::K, 4);
        for i in 1..=4 {
            assert_eq!(res.syzygy_module(i).mu(), res.betti[i]);
        }
    }
}
