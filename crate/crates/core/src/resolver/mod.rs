//! Minimal free resolutions over `R = S/I` through module standard bases, the
//! exact k-summand count, and finite-length Hom and isomorphism helpers.

pub mod oracle;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::artinian::{ArtinianAlgebra, FlModule, IsoVerdict};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::quotient::QuotientRing;
use crate::stdbasis::{kernel, EngineConfig, KernelProblem, StandardBasis};
use crate::vector::Vector;

pub use oracle::{truncation_oracle, LaResolution};

/// Which module to resolve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    K,
    M,
}

/// A submodule of `R^rank` given by lifts of its generators to `S^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleR {
    pub rank: usize,
    pub gens: Vec<Vector>,
}

impl SubmoduleR {
    pub fn new(rank: usize, gens: Vec<Vector>) -> Self {
        SubmoduleR {
            rank,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn from_columns(rank: usize, cols: &[Vec<Poly>]) -> Self {
        SubmoduleR::new(rank, cols.iter().map(|c| Vector::from_polys(c)).collect())
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        self.gens.iter().map(|g| g.to_polys(self.rank)).collect()
    }
}

/// A minimal free resolution: `differentials[i]` holds the columns of
/// `d_{i+1}: F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: ModuleKind,
    pub betti: Vec<usize>,
    pub differentials: Vec<SubmoduleR>,
}

impl Resolution {
    /// `syz_i` as a submodule of `F_{i-1}`, for `i >= 1`.
    pub fn syzygy(&self, i: usize) -> Option<&SubmoduleR> {
        if i == 0 {
            return None;
        }
        self.differentials.get(i - 1)
    }
}

/// Standard-basis engine for modules over a fixed `R`.
#[derive(Debug)]
pub struct Resolver<'a> {
    q: &'a QuotientRing,
    config: EngineConfig,
    i_std: Vec<Poly>,
}

impl<'a> Resolver<'a> {
    pub fn new(q: &'a QuotientRing) -> Result<Self> {
        let base = q.ideal().config();
        // terms of degree >= s vanish in an Artinian R, so dropping them is exact
        let config = base.truncated(q.nilpotency_degree()?, q.nvars());
        let i_std = if q.ideal().is_zero() {
            Vec::new()
        } else {
            q.ideal().std_polys()?
        };
        Ok(Resolver { q, config, i_std })
    }

    pub fn ring(&self) -> &QuotientRing {
        self.q
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        self.q.ring()
    }

    pub fn config(&self) -> EngineConfig {
        self.config
    }

    fn field(&self) -> &crate::field::PrimeField {
        &self.q.ring().field
    }

    /// `I e_k` for every component, a standard basis of `I S^rank`.
    pub fn blocks(&self, rank: usize) -> Vec<Vector> {
        let mut out = Vec::with_capacity(rank * self.i_std.len());
        for k in 0..rank {
            for g in &self.i_std {
                out.push(Vector::unit(k as u32, g));
            }
        }
        out
    }

    /// Standard basis of `U + I S^rank`.
    pub fn std_basis(&self, rank: usize, gens: &[Vector]) -> Result<StandardBasis> {
        StandardBasis::compute(self.field(), &self.blocks(rank), gens, self.config)
    }

    /// Standard basis of `n U + I S^rank`.
    pub fn m_times_std_basis(&self, rank: usize, gens: &[Vector]) -> Result<StandardBasis> {
        let f = self.field();
        let n = self.q.nvars();
        let mut prods = Vec::with_capacity(gens.len() * n);
        for g in gens {
            for v in 0..n {
                prods.push(g.mul_poly(f, &Poly::var(v)));
            }
        }
        self.std_basis(rank, &prods)
    }

    /// Whether `v` lies in `U + I S^rank`.
    pub fn contains(&self, m: &SubmoduleR, v: &Vector) -> Result<bool> {
        self.std_basis(m.rank, &m.gens)?.contains(self.field(), v)
    }

    /// Equality of submodules of `R^rank`.
    pub fn same_submodule(&self, a: &SubmoduleR, b: &SubmoduleR) -> Result<bool> {
        if a.rank != b.rank {
            return Ok(false);
        }
        let f = self.field();
        let sa = self.std_basis(a.rank, &a.gens)?;
        let sb = self.std_basis(b.rank, &b.gens)?;
        for g in &b.gens {
            if !sa.contains(f, g)? {
                return Ok(false);
            }
        }
        for g in &a.gens {
            if !sb.contains(f, g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Kernel of `R^t -> R^rank`, `e_j -> columns[j]`, as elements of `S^t`.
    pub fn syzygies(&self, columns: &[Vector], rank: usize) -> Result<Vec<Vector>> {
        let known = self.blocks(rank);
        let tail = self.blocks(columns.len());
        kernel(
            self.field(),
            &KernelProblem {
                rank,
                columns,
                known_relations: &known,
                relations: &[],
                tail_relations: &tail,
            },
            self.config,
        )
    }

    /// A subset of `cands` minimally generating their span in `R^rank`.
    pub fn minimal_generators(&self, rank: usize, cands: &[Vector]) -> Result<Vec<Vector>> {
        let f = self.field();
        let mut sb = self.m_times_std_basis(rank, cands)?;
        let mut sorted: Vec<&Vector> = cands.iter().collect();
        sorted.sort_by_key(|v| (v.leading().map(|t| t.mono.degree()), v.len()));
        let mut out = Vec::new();
        for c in sorted {
            // n c lies in the current module, so pushing the remainder keeps it standard
            let w = sb.normal_form(f, c)?;
            if !w.is_zero() {
                out.push(c.clone());
                sb.push_unchecked(f, w);
            }
        }
        Ok(out)
    }

    pub fn mu(&self, m: &SubmoduleR) -> Result<usize> {
        Ok(self.minimal_generators(m.rank, &m.gens)?.len())
    }

    pub fn minimize(&self, m: &SubmoduleR) -> Result<SubmoduleR> {
        Ok(SubmoduleR::new(
            m.rank,
            self.minimal_generators(m.rank, &m.gens)?,
        ))
    }

    /// `syz_1` of `M` with a minimal generating set.
    pub fn syzygy_step(&self, m: &SubmoduleR) -> Result<SubmoduleR> {
        let gens = self.minimal_generators(m.rank, &m.gens)?;
        let ker = self.syzygies(&gens, m.rank)?;
        Ok(SubmoduleR::new(
            gens.len(),
            self.minimal_generators(gens.len(), &ker)?,
        ))
    }

    /// `m` as a submodule of `R^1`.
    pub fn maximal_ideal(&self) -> SubmoduleR {
        let e = self.q.nvars();
        SubmoduleR::new(1, (0..e).map(|i| Vector::unit(0, &Poly::var(i))).collect())
    }

    /// Minimal resolution of `k` or `m` up to homological degree `length`.
    pub fn resolve(&self, module: ModuleKind, length: usize) -> Result<Resolution> {
        let shift = usize::from(module == ModuleKind::M);
        let mut betti = vec![1];
        let mut diffs = Vec::new();
        let mut z = self.maximal_ideal();
        for _ in 0..length + shift {
            if z.gens.is_empty() {
                betti.push(0);
                diffs.push(z.clone());
                continue;
            }
            betti.push(z.gens.len());
            diffs.push(z.clone());
            z = self.syzygy_step(&z)?;
        }
        let differentials = diffs.into_iter().skip(shift).collect();
        Ok(Resolution {
            module,
            betti: betti.into_iter().skip(shift).collect(),
            differentials,
        })
    }

    /// Number of direct summands isomorphic to `k`:
    /// `dim Soc(M) / (mM ∩ Soc(M))`, counted exactly as
    /// `g(nM + I F) - g(M + I F)` where `g(U)` is the dimension of
    /// `(Soc F + U) / U` for `F = R^rank`.
    pub fn count_k_summands(&self, m: &SubmoduleR) -> Result<usize> {
        let soc = self.q.socle()?;
        if soc.dim() == 0 {
            return Ok(0);
        }
        let mut v = Vec::new();
        for k in 0..m.rank {
            for s in &soc.generators {
                v.push(Vector::unit(k as u32, s));
            }
        }
        let count = |mut sb: StandardBasis| -> Result<usize> {
            let f = self.field();
            let mut c = 0;
            for w in &v {
                let r = sb.normal_form(f, w)?;
                if !r.is_zero() {
                    c += 1;
                    sb.push_unchecked(f, r);
                }
            }
            Ok(c)
        };
        let low = count(self.m_times_std_basis(m.rank, &m.gens)?)?;
        let high = count(self.std_basis(m.rank, &m.gens)?)?;
        Ok(low - high)
    }

    /// Every entry of every differential lies in `m`.
    pub fn is_minimal(&self, res: &Resolution) -> bool {
        res.differentials.iter().all(|d| {
            d.gens
                .iter()
                .all(|g| g.terms().iter().all(|t| t.mono.degree() > 0))
        })
    }

    /// `d_i d_{i+1} = 0` over `R` for every consecutive pair.
    pub fn is_complex(&self, res: &Resolution) -> Result<bool> {
        let f = self.field();
        for pair in res.differentials.windows(2) {
            let (d, next) = (&pair[0], &pair[1]);
            let zero = self.std_basis(d.rank, &[])?;
            for col in &next.gens {
                let mut acc = Vector::zero();
                for (j, c) in col.to_polys(d.gens.len()).iter().enumerate() {
                    acc = acc.add(f, &d.gens[j].mul_poly(f, c));
                }
                if !zero.contains(f, &acc)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Linear-algebra model of `R` (exact when `R` is Artinian, otherwise
    /// `R / m^d`).
    pub fn algebra(&self, truncate: u32) -> Result<Arc<ArtinianAlgebra>> {
        let ring = self.q.ring();
        let gens = self.q.ideal().generators();
        Ok(Arc::new(if self.q.dim()? == 0 {
            ArtinianAlgebra::from_ideal(ring, gens, self.config.degree_cap)?
        } else {
            ArtinianAlgebra::truncated(ring, gens, truncate)?
        }))
    }
}

/// The finite-length module generated by `m` inside `A^rank`.
pub fn to_fl_module(alg: &Arc<ArtinianAlgebra>, m: &SubmoduleR) -> FlModule {
    let vecs: Vec<Vec<crate::field::Fp>> = m
        .gens
        .iter()
        .map(|g| alg.reduce_vec(&g.to_polys(m.rank)))
        .collect();
    FlModule::submodule_of_free(alg, m.rank, &vecs).0
}

/// `dim_k Hom_R(M, N)` for finite-length modules.
pub fn hom_dimension(mm: &FlModule, nn: &FlModule) -> usize {
    mm.hom_basis(nn).len()
}

/// Isomorphism test requiring finite length.
pub fn iso_test(
    alg: &ArtinianAlgebra,
    a: &FlModule,
    b: &FlModule,
    seed: u64,
) -> Result<IsoVerdict> {
    if !alg.is_exact() {
        return Err(Error::unsupported(
            "isomorphism tests need finite-length modules",
        ));
    }
    Ok(a.iso_test(b, seed, crate::artinian::DEFAULT_SAMPLES))
}

/// Render a vector as a tuple of polynomials.
pub fn show_vector(ring: &PolyRing, v: &Vector, rank: usize) -> String {
    let parts: Vec<String> = v.to_polys(rank).iter().map(|p| ring.show(p)).collect();
    format!("({})", parts.join(", "))
}
