//! Linear-algebra model of an Artinian quotient `A = S/(I + n^D)` and of
//! finite-length `A`-modules as vector spaces with commuting action matrices.
//!
//! Nothing here touches standard bases: the relations of `A` come from row
//! reducing truncated monomial multiples of the generators, which makes this
//! an independent path for cross-checking the Mora engine.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::matrix::{EchelonBasis, MatrixFp, Preimage, Subspace};
use crate::monomial::Monomial;
use crate::poly::{Order, Poly, PolyRing};

#[derive(Clone, Debug)]
pub struct ArtinianAlgebra {
    field: PrimeField,
    nvars: usize,
    top: u32,
    exact: bool,
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: EchelonBasis,
    basis: Vec<Monomial>,
    basis_cols: Vec<usize>,
    mult: Vec<MatrixFp>,
    mono_act: Vec<MatrixFp>,
}

impl ArtinianAlgebra {
    /// `S/I` for Artinian `S/I`; fails if `n^D` is not inside `I` for some
    /// `D <= cap`.
    pub fn from_ideal(ring: &PolyRing, gens: &[Poly], cap: u32) -> Result<Self> {
        let start = gens
            .iter()
            .filter_map(|g| g.order().finite())
            .max()
            .unwrap_or(0)
            + 2;
        let mut d = start.min(cap).max(2);
        loop {
            let (_, pivots, monos) = Self::relations_at(&ring.field, ring.nvars(), gens, d);
            let mut per_degree = vec![0usize; d as usize];
            for (c, m) in monos.iter().enumerate() {
                if !pivots[c] {
                    per_degree[m.degree() as usize] += 1;
                }
            }
            if let Some(s) = per_degree.iter().position(|&k| k == 0) {
                // n^s lies in I + n^d, hence in I by Nakayama
                let mut alg = Self::build(ring, gens, s as u32)?;
                alg.exact = true;
                return Ok(alg);
            }
            if d >= cap {
                return Err(Error::unsupported(format!(
                    "quotient is not Artinian below degree {cap}"
                )));
            }
            d = (d + 4).min(cap);
        }
    }

    /// `S/(I + n^d)`.
    pub fn truncated(ring: &PolyRing, gens: &[Poly], d: u32) -> Result<Self> {
        Self::build(ring, gens, d)
    }

    fn relations_at(
        field: &PrimeField,
        nvars: usize,
        gens: &[Poly],
        d: u32,
    ) -> (EchelonBasis, Vec<bool>, Vec<Monomial>) {
        let monos = Monomial::all_below_degree(nvars, d);
        let index: HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut ech = EchelonBasis::new(monos.len());
        for g in gens {
            let Order::Finite(o) = g.order() else {
                continue;
            };
            if o >= d {
                continue;
            }
            for m in Monomial::all_below_degree(nvars, d - o) {
                let mut v = vec![Fp::ZERO; monos.len()];
                for &(t, c) in g.terms() {
                    let tm = t.mul(m);
                    if let Some(&i) = index.get(&tm) {
                        v[i] = field.add(v[i], c);
                    }
                }
                ech.insert(field, &v);
            }
        }
        let mut pivots = vec![false; monos.len()];
        for row in ech.basis() {
            if let Some(p) = row.iter().position(|c| !c.is_zero()) {
                pivots[p] = true;
            }
        }
        (ech, pivots, monos)
    }

    fn build(ring: &PolyRing, gens: &[Poly], d: u32) -> Result<Self> {
        let field = ring.field;
        let nvars = ring.nvars();
        let (relations, pivots, monos) = Self::relations_at(&field, nvars, gens, d);
        let index: HashMap<Monomial, usize> =
            monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let basis_cols: Vec<usize> = (0..monos.len()).filter(|&c| !pivots[c]).collect();
        if basis_cols.is_empty() {
            return Err(Error::invalid("the quotient ring is zero"));
        }
        let basis: Vec<Monomial> = basis_cols.iter().map(|&c| monos[c]).collect();
        let mut alg = ArtinianAlgebra {
            field,
            nvars,
            top: d,
            exact: false,
            monos,
            index,
            relations,
            basis,
            basis_cols,
            mult: Vec::new(),
            mono_act: Vec::new(),
        };
        let n = alg.basis.len();
        alg.mult = (0..nvars)
            .map(|i| {
                let cols: Vec<Vec<Fp>> = alg
                    .basis
                    .iter()
                    .map(|&b| alg.reduce_monomial(b.mul(Monomial::var(i))))
                    .collect();
                MatrixFp::from_columns(&cols, n)
            })
            .collect();
        alg.mono_act = alg
            .basis
            .iter()
            .map(|&b| {
                let mut m = MatrixFp::identity(n);
                for i in 0..nvars {
                    for _ in 0..b.exponent(i) {
                        m = alg.mult[i].mul(&field, &m);
                    }
                }
                m
            })
            .collect();
        Ok(alg)
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Monomials of degree at least `top` vanish.
    pub fn top(&self) -> u32 {
        self.top
    }

    /// Whether this is `S/I` itself rather than a truncation.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn mult(&self, var: usize) -> &MatrixFp {
        &self.mult[var]
    }

    /// Action of the `j`-th basis monomial.
    pub fn mono_action(&self, j: usize) -> &MatrixFp {
        &self.mono_act[j]
    }

    fn reduce_monomial(&self, m: Monomial) -> Vec<Fp> {
        let mut v = vec![Fp::ZERO; self.monos.len()];
        if let Some(&i) = self.index.get(&m) {
            v[i] = Fp::ONE;
        }
        self.project(&v)
    }

    fn project(&self, v: &[Fp]) -> Vec<Fp> {
        let w = self.relations.reduce(&self.field, v);
        self.basis_cols.iter().map(|&c| w[c]).collect()
    }

    pub fn reduce(&self, f: &Poly) -> Vec<Fp> {
        let mut v = vec![Fp::ZERO; self.monos.len()];
        for &(m, c) in f.terms() {
            if let Some(&i) = self.index.get(&m) {
                v[i] = c;
            }
        }
        self.project(&v)
    }

    /// Flattened element of `A^r`.
    pub fn reduce_vec(&self, polys: &[Poly]) -> Vec<Fp> {
        polys.iter().flat_map(|p| self.reduce(p)).collect()
    }

    pub fn to_poly(&self, a: &[Fp]) -> Poly {
        let terms = self
            .basis
            .iter()
            .zip(a)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&m, &c)| (m, c))
            .collect();
        Poly::from_terms(&self.field, terms)
    }

    pub fn to_polys(&self, v: &[Fp]) -> Vec<Poly> {
        v.chunks(self.dim()).map(|c| self.to_poly(c)).collect()
    }

    pub fn one(&self) -> Vec<Fp> {
        let mut v = vec![Fp::ZERO; self.dim()];
        v[0] = Fp::ONE;
        v
    }

    pub fn var_elem(&self, i: usize) -> Vec<Fp> {
        self.mult[i].column(0)
    }

    /// Coefficient of the constant monomial (`basis[0] = 1`).
    pub fn constant_coeff(&self, a: &[Fp]) -> Fp {
        a[0]
    }

    pub fn mul(&self, a: &[Fp], b: &[Fp]) -> Vec<Fp> {
        let mut out = vec![Fp::ZERO; self.dim()];
        for (j, &c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let tb = self.mono_act[j].mul_vec(&self.field, b);
            for (o, t) in out.iter_mut().zip(tb) {
                *o = self.field.add(*o, self.field.mul(c, t));
            }
        }
        out
    }

    /// Multiply every component of a flattened `A^r` vector by `a`.
    pub fn scale_free(&self, a: &[Fp], v: &[Fp]) -> Vec<Fp> {
        v.chunks(self.dim()).flat_map(|c| self.mul(a, c)).collect()
    }

    pub fn mono_act_free(&self, j: usize, v: &[Fp]) -> Vec<Fp> {
        v.chunks(self.dim())
            .flat_map(|c| self.mono_act[j].mul_vec(&self.field, c))
            .collect()
    }

    pub fn var_act_free(&self, i: usize, v: &[Fp]) -> Vec<Fp> {
        v.chunks(self.dim())
            .flat_map(|c| self.mult[i].mul_vec(&self.field, c))
            .collect()
    }

    /// Dimensions of the graded pieces of the associated graded ring.
    pub fn hilbert_function(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.top as usize];
        for b in &self.basis {
            h[b.degree() as usize] += 1;
        }
        while h.len() > 1 && h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    /// `0 :_A m` as a subspace of `A`.
    pub fn socle(&self) -> Subspace {
        let stacked = self
            .mult
            .iter()
            .skip(1)
            .fold(self.mult[0].clone(), |acc, m| acc.vstack(m));
        Subspace::span(&self.field, self.dim(), &stacked.kernel(&self.field))
    }

    /// The A-submodule of `A^rank` generated by `vecs`, as a subspace.
    pub fn closure(&self, rank: usize, vecs: &[Vec<Fp>]) -> Subspace {
        let mut all = Vec::with_capacity(vecs.len() * self.dim());
        for v in vecs {
            for j in 0..self.dim() {
                all.push(self.mono_act_free(j, v));
            }
        }
        Subspace::span(&self.field, rank * self.dim(), &all)
    }

    /// `m * Z` for a submodule `Z` of `A^rank`.
    pub fn m_times(&self, rank: usize, z: &Subspace) -> Subspace {
        let mut all = Vec::new();
        for v in z.basis() {
            for i in 0..self.nvars {
                all.push(self.var_act_free(i, v));
            }
        }
        Subspace::span(&self.field, rank * self.dim(), &all)
    }

    /// Basis vectors of `Z` completing a basis of `mZ` to one of `Z`; these
    /// minimally generate `Z`.
    pub fn minimal_generators(&self, rank: usize, z: &Subspace) -> Vec<Vec<Fp>> {
        let mz = self.m_times(rank, z);
        let mut ech = EchelonBasis::new(rank * self.dim());
        for v in mz.basis() {
            ech.insert(&self.field, v);
        }
        z.basis()
            .iter()
            .filter(|v| ech.insert(&self.field, v))
            .cloned()
            .collect()
    }
}

/// A finite-length module over an [`ArtinianAlgebra`]: a k-space with one
/// action matrix per variable and a list of generators.
#[derive(Clone, Debug)]
pub struct FlModule {
    alg: Arc<ArtinianAlgebra>,
    dim: usize,
    act: Vec<MatrixFp>,
    gens: Vec<Vec<Fp>>,
    mono: OnceLock<Vec<MatrixFp>>,
}

/// Outcome of [`FlModule::iso_test`].
#[derive(Clone, Debug)]
pub enum IsoVerdict {
    Yes(IsoWitness),
    No {
        invariant: String,
        left: String,
        right: String,
    },
    Undecided {
        samples: usize,
    },
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoVerdict::Yes(_) => "YES",
            IsoVerdict::No { .. } => "NO",
            IsoVerdict::Undecided { .. } => "UNDECIDED",
        }
    }
}

/// Mutually inverse k-linear matrices that commute with the actions.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub phi: MatrixFp,
    pub psi: MatrixFp,
    /// Images of the source generators.
    pub images: Vec<Vec<Fp>>,
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleInvariants {
    pub dim: usize,
    pub mu: usize,
    pub socle_dim: usize,
    pub k_summands: usize,
    pub loewy_layers: Vec<usize>,
}

pub const DEFAULT_SAMPLES: usize = 64;

impl FlModule {
    pub fn new(alg: Arc<ArtinianAlgebra>, act: Vec<MatrixFp>, gens: Vec<Vec<Fp>>) -> Result<Self> {
        let dim = act.first().map_or(0, |m| m.rows());
        if act.len() != alg.nvars() || act.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::invalid("action matrices do not match the module"));
        }
        let field = *alg.field();
        for i in 0..act.len() {
            for j in 0..i {
                if act[i].mul(&field, &act[j]) != act[j].mul(&field, &act[i]) {
                    return Err(Error::invalid("action matrices do not commute"));
                }
            }
        }
        let mut m = FlModule {
            alg,
            dim,
            act,
            gens,
            mono: OnceLock::new(),
        };
        m.gens = m.minimize(&m.gens);
        Ok(m)
    }

    pub fn free(alg: &Arc<ArtinianAlgebra>, rank: usize) -> Self {
        let n = alg.dim();
        let act = (0..alg.nvars())
            .map(|i| {
                let mut m = MatrixFp::zeros(rank * n, rank * n);
                for b in 0..rank {
                    for r in 0..n {
                        for c in 0..n {
                            m.set(b * n + r, b * n + c, alg.mult(i).get(r, c));
                        }
                    }
                }
                m
            })
            .collect();
        let gens = (0..rank)
            .map(|b| {
                let mut v = vec![Fp::ZERO; rank * n];
                v[b * n] = Fp::ONE;
                v
            })
            .collect();
        FlModule {
            alg: alg.clone(),
            dim: rank * n,
            act,
            gens,
            mono: OnceLock::new(),
        }
    }

    pub fn residue_field(alg: &Arc<ArtinianAlgebra>) -> Self {
        let act = (0..alg.nvars()).map(|_| MatrixFp::zeros(1, 1)).collect();
        FlModule {
            alg: alg.clone(),
            dim: 1,
            act,
            gens: vec![vec![Fp::ONE]],
            mono: OnceLock::new(),
        }
    }

    /// The A-submodule of `A^rank` generated by `vecs`, with its k-basis.
    pub fn submodule_of_free(
        alg: &Arc<ArtinianAlgebra>,
        rank: usize,
        vecs: &[Vec<Fp>],
    ) -> (Self, Subspace) {
        FlModule::free(alg, rank).submodule(vecs)
    }

    pub fn algebra(&self) -> &Arc<ArtinianAlgebra> {
        &self.alg
    }

    fn field(&self) -> PrimeField {
        *self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, var: usize) -> &MatrixFp {
        &self.act[var]
    }

    pub fn generators(&self) -> &[Vec<Fp>] {
        &self.gens
    }

    /// Action of each basis monomial of the algebra.
    pub fn mono_actions(&self) -> &[MatrixFp] {
        self.mono.get_or_init(|| {
            let f = self.field();
            self.alg
                .basis()
                .iter()
                .map(|&b| {
                    let mut m = MatrixFp::identity(self.dim);
                    for i in 0..self.alg.nvars() {
                        for _ in 0..b.exponent(i) {
                            m = self.act[i].mul(&f, &m);
                        }
                    }
                    m
                })
                .collect()
        })
    }

    /// Closure of `vecs` under the action, as a module with its embedding.
    pub fn submodule(&self, vecs: &[Vec<Fp>]) -> (FlModule, Subspace) {
        let f = self.field();
        let mut all = Vec::new();
        for v in vecs {
            for t in self.mono_actions() {
                all.push(t.mul_vec(&f, v));
            }
        }
        let space = Subspace::span(&f, self.dim, &all);
        let d = space.dim();
        let act = self
            .act
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Fp>> = space
                    .basis()
                    .iter()
                    .map(|b| {
                        space
                            .coords(&f, &a.mul_vec(&f, b))
                            .expect("closed under the action")
                    })
                    .collect();
                MatrixFp::from_columns(&cols, d)
            })
            .collect();
        let gens: Vec<Vec<Fp>> = vecs
            .iter()
            .map(|v| space.coords(&f, v).expect("member"))
            .collect();
        let mut m = FlModule {
            alg: self.alg.clone(),
            dim: d,
            act,
            gens,
            mono: OnceLock::new(),
        };
        m.gens = m.minimize(&m.gens);
        (m, space)
    }

    /// `self / sub` for an invariant subspace.
    pub fn quotient(&self, sub: &Subspace) -> FlModule {
        let f = self.field();
        let free = sub.free_columns();
        let d = free.len();
        let project = |v: &[Fp]| -> Vec<Fp> {
            let w = sub.reduce(&f, v);
            free.iter().map(|&c| w[c]).collect()
        };
        let act = self
            .act
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Fp>> = free
                    .iter()
                    .map(|&c| {
                        let mut e = vec![Fp::ZERO; self.dim];
                        e[c] = Fp::ONE;
                        project(&a.mul_vec(&f, &e))
                    })
                    .collect();
                MatrixFp::from_columns(&cols, d)
            })
            .collect();
        let gens: Vec<Vec<Fp>> = self.gens.iter().map(|g| project(g)).collect();
        let mut m = FlModule {
            alg: self.alg.clone(),
            dim: d,
            act,
            gens,
            mono: OnceLock::new(),
        };
        m.gens = m.minimize(&m.gens);
        m
    }

    pub fn direct_sum(parts: &[&FlModule]) -> Result<FlModule> {
        let first = parts
            .first()
            .ok_or_else(|| Error::invalid("empty direct sum"))?;
        let alg = first.alg.clone();
        let d: usize = parts.iter().map(|m| m.dim).sum();
        let mut act = vec![MatrixFp::zeros(d, d); alg.nvars()];
        let mut gens = Vec::new();
        let mut off = 0;
        for m in parts {
            for (i, a) in act.iter_mut().enumerate() {
                for r in 0..m.dim {
                    for c in 0..m.dim {
                        a.set(off + r, off + c, m.act[i].get(r, c));
                    }
                }
            }
            for g in &m.gens {
                let mut v = vec![Fp::ZERO; d];
                v[off..off + m.dim].copy_from_slice(g);
                gens.push(v);
            }
            off += m.dim;
        }
        Ok(FlModule {
            alg,
            dim: d,
            act,
            gens,
            mono: OnceLock::new(),
        })
    }

    pub fn power(&self, k: usize) -> Result<FlModule> {
        let parts: Vec<&FlModule> = std::iter::repeat_n(self, k).collect();
        if parts.is_empty() {
            return Ok(FlModule::zero(&self.alg));
        }
        FlModule::direct_sum(&parts)
    }

    pub fn zero(alg: &Arc<ArtinianAlgebra>) -> FlModule {
        let act = (0..alg.nvars()).map(|_| MatrixFp::zeros(0, 0)).collect();
        FlModule {
            alg: alg.clone(),
            dim: 0,
            act,
            gens: Vec::new(),
            mono: OnceLock::new(),
        }
    }

    /// `mM` as a subspace.
    pub fn m_times(&self) -> Subspace {
        let f = self.field();
        let mut all = Vec::new();
        for a in &self.act {
            for c in 0..self.dim {
                all.push(a.column(c));
            }
        }
        Subspace::span(&f, self.dim, &all)
    }

    pub fn socle(&self) -> Subspace {
        let f = self.field();
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        let stacked = self
            .act
            .iter()
            .skip(1)
            .fold(self.act[0].clone(), |acc, m| acc.vstack(m));
        Subspace::span(&f, self.dim, &stacked.kernel(&f))
    }

    fn minimize(&self, gens: &[Vec<Fp>]) -> Vec<Vec<Fp>> {
        let f = self.field();
        let mut ech = EchelonBasis::new(self.dim);
        for v in self.m_times().basis() {
            ech.insert(&f, v);
        }
        gens.iter().filter(|g| ech.insert(&f, g)).cloned().collect()
    }

    pub fn mu(&self) -> usize {
        self.dim - self.m_times().dim()
    }

    /// `dim Soc(M) / (mM ∩ Soc(M))`.
    pub fn count_k_summands(&self) -> usize {
        let f = self.field();
        let soc = self.socle();
        let mm = self.m_times();
        soc.dim() - soc.intersection_dim(&f, &mm)
    }

    /// Dimensions of `m^j M / m^{j+1} M`.
    pub fn loewy_layers(&self) -> Vec<usize> {
        let f = self.field();
        let mut layers = Vec::new();
        let mut cur = Subspace::full(self.dim);
        while cur.dim() > 0 {
            let mut all = Vec::new();
            for a in &self.act {
                for v in cur.basis() {
                    all.push(a.mul_vec(&f, v));
                }
            }
            let next = Subspace::span(&f, self.dim, &all);
            layers.push(cur.dim() - next.dim());
            cur = next;
        }
        layers
    }

    pub fn invariants(&self) -> ModuleInvariants {
        ModuleInvariants {
            dim: self.dim,
            mu: self.mu(),
            socle_dim: self.socle().dim(),
            k_summands: self.count_k_summands(),
            loewy_layers: self.loewy_layers(),
        }
    }

    /// Cover `A^mu -> M` as a k-linear matrix, columns indexed by
    /// (generator, basis monomial).
    fn cover(&self) -> MatrixFp {
        let f = self.field();
        let mut cols = Vec::new();
        for g in &self.gens {
            for t in self.mono_actions() {
                cols.push(t.mul_vec(&f, g));
            }
        }
        MatrixFp::from_columns(&cols, self.dim)
    }

    /// Minimal generators of the relation module `ker(A^mu -> M)`.
    pub fn relation_generators(&self) -> Vec<Vec<Fp>> {
        let f = self.field();
        let cover = self.cover();
        let ker = cover.kernel(&f);
        let rank = self.gens.len();
        let space = Subspace::span(&f, rank * self.alg.dim(), &ker);
        self.alg.minimal_generators(rank, &space)
    }

    /// k-basis of `Hom_A(self, other)`, each element given by the images of
    /// the generators of `self`.
    pub fn hom_basis(&self, other: &FlModule) -> Vec<Vec<Vec<Fp>>> {
        let f = self.field();
        let mu = self.gens.len();
        let dn = other.dim;
        let na = self.alg.dim();
        let n_mono = other.mono_actions();
        let mut rows: Vec<Vec<Fp>> = Vec::new();
        for r in self.relation_generators() {
            // sum_j r_j phi_j = 0, with r_j = sum_t r[j, t] t
            let mut block = vec![vec![Fp::ZERO; mu * dn]; dn];
            for j in 0..mu {
                for t in 0..na {
                    let c = r[j * na + t];
                    if c.is_zero() {
                        continue;
                    }
                    let m = &n_mono[t];
                    for (o, row) in block.iter_mut().enumerate() {
                        for l in 0..dn {
                            let v = m.get(o, l);
                            if !v.is_zero() {
                                row[j * dn + l] = f.add(row[j * dn + l], f.mul(c, v));
                            }
                        }
                    }
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())));
        }
        let ker = if rows.is_empty() {
            Subspace::full(mu * dn).basis().to_vec()
        } else {
            MatrixFp::from_rows(&rows, mu * dn).kernel(&f)
        };
        ker.into_iter()
            .map(|u| u.chunks(dn.max(1)).take(mu).map(|c| c.to_vec()).collect())
            .collect()
    }

    /// k-linear matrix (`other.dim x self.dim`) of the homomorphism sending
    /// the generators of `self` to `images`.
    pub fn map_matrix(&self, other: &FlModule, images: &[Vec<Fp>]) -> MatrixFp {
        let f = self.field();
        let pre = Preimage::new(&f, &self.cover());
        let n_mono = other.mono_actions();
        let na = self.alg.dim();
        let mut cols = Vec::with_capacity(self.dim);
        for c in 0..self.dim {
            let mut e = vec![Fp::ZERO; self.dim];
            e[c] = Fp::ONE;
            let w = pre.solve(&f, &e).expect("generators span the module");
            let mut out = vec![Fp::ZERO; other.dim];
            for (j, img) in images.iter().enumerate() {
                for t in 0..na {
                    let k = w[j * na + t];
                    if k.is_zero() {
                        continue;
                    }
                    let ti = n_mono[t].mul_vec(&f, img);
                    for (o, v) in out.iter_mut().zip(ti) {
                        *o = f.add(*o, f.mul(k, v));
                    }
                }
            }
            cols.push(out);
        }
        MatrixFp::from_columns(&cols, other.dim)
    }

    pub fn is_homomorphism(&self, other: &FlModule, phi: &MatrixFp) -> bool {
        let f = self.field();
        self.act
            .iter()
            .zip(&other.act)
            .all(|(am, an)| an.mul(&f, phi) == phi.mul(&f, am))
    }

    fn certify(
        &self,
        other: &FlModule,
        images: Vec<Vec<Fp>>,
        attempts: usize,
    ) -> Option<IsoWitness> {
        let f = self.field();
        let phi = self.map_matrix(other, &images);
        let psi = phi.inverse(&f)?;
        let ok = self.is_homomorphism(other, &phi)
            && other.is_homomorphism(self, &psi)
            && phi.mul(&f, &psi) == MatrixFp::identity(other.dim)
            && psi.mul(&f, &phi) == MatrixFp::identity(self.dim);
        ok.then_some(IsoWitness {
            phi,
            psi,
            images,
            attempts,
        })
    }

    /// Invariant comparison, then random sampling of `Hom(self, other)`, then
    /// a deterministic rank-greedy sweep.
    pub fn iso_test(&self, other: &FlModule, seed: u64, samples: usize) -> IsoVerdict {
        let (a, b) = (self.invariants(), other.invariants());
        let checks: [(&str, String, String); 5] = [
            ("dim_k", a.dim.to_string(), b.dim.to_string()),
            ("mu", a.mu.to_string(), b.mu.to_string()),
            (
                "socle dim",
                a.socle_dim.to_string(),
                b.socle_dim.to_string(),
            ),
            (
                "k-summands",
                a.k_summands.to_string(),
                b.k_summands.to_string(),
            ),
            (
                "Loewy layers",
                format!("{:?}", a.loewy_layers),
                format!("{:?}", b.loewy_layers),
            ),
        ];
        for (name, l, r) in checks {
            if l != r {
                return IsoVerdict::No {
                    invariant: name.into(),
                    left: l,
                    right: r,
                };
            }
        }
        if self.dim == 0 {
            return IsoVerdict::Yes(IsoWitness {
                phi: MatrixFp::zeros(0, 0),
                psi: MatrixFp::zeros(0, 0),
                images: Vec::new(),
                attempts: 0,
            });
        }
        let f = self.field();
        let basis = self.hom_basis(other);
        if basis.is_empty() {
            return IsoVerdict::Undecided { samples: 0 };
        }
        let p = f.modulus();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let combine = |coeffs: &[Fp]| -> Vec<Vec<Fp>> {
            let mu = self.gens.len();
            let mut imgs = vec![vec![Fp::ZERO; other.dim]; mu];
            for (h, &c) in basis.iter().zip(coeffs) {
                if c.is_zero() {
                    continue;
                }
                for (img, hv) in imgs.iter_mut().zip(h) {
                    for (o, &v) in img.iter_mut().zip(hv) {
                        *o = f.add(*o, f.mul(c, v));
                    }
                }
            }
            imgs
        };
        for attempt in 1..=samples {
            let coeffs: Vec<Fp> = (0..basis.len()).map(|_| Fp(rng.gen_range(0..p))).collect();
            if let Some(w) = self.certify(other, combine(&coeffs), attempt) {
                return IsoVerdict::Yes(w);
            }
        }
        let mut coeffs = vec![Fp::ZERO; basis.len()];
        let mut best = 0;
        for k in 0..basis.len() {
            for c in 1..=3u32 {
                let mut trial = coeffs.clone();
                trial[k] = Fp(c % p);
                let rank = self.map_matrix(other, &combine(&trial)).rank(&f);
                if rank > best {
                    best = rank;
                    coeffs = trial;
                    break;
                }
            }
        }
        match self.certify(other, combine(&coeffs), samples + 1) {
            Some(w) => IsoVerdict::Yes(w),
            None => IsoVerdict::Undecided {
                samples: samples + 1,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdbasis::Ideal;

    fn ring() -> PolyRing {
        PolyRing::with_vars(101, 2).unwrap()
    }

    fn alg(r: &PolyRing, ms: &[(u32, u32)]) -> Arc<ArtinianAlgebra> {
        let gens: Vec<Poly> = ms.iter().map(|&(a, b)| r.poly(&[(1, &[a, b])])).collect();
        Arc::new(ArtinianAlgebra::from_ideal(r, &gens, 24).unwrap())
    }

    #[test]
    fn algebra_dimensions() {
        let r = ring();
        let a = alg(&r, &[(2, 0), (1, 1), (0, 2)]);
        assert_eq!(a.dim(), 3);
        assert_eq!(a.top(), 2);
        assert!(a.is_exact());
        let b = alg(&r, &[(3, 0), (1, 2), (0, 3)]);
        assert_eq!(b.hilbert_function(), vec![1, 2, 3, 1]);
        assert_eq!(b.socle().dim(), 2);
        assert!(ArtinianAlgebra::from_ideal(&r, &[r.poly(&[(1, &[1, 1])])], 10).is_err());
    }

    #[test]
    fn standard_monomials_agree_with_mora() {
        let r = ring();
        let gens = vec![
            r.poly(&[(1, &[2, 0]), (-1, &[0, 3])]),
            r.poly(&[(1, &[1, 1])]),
        ];
        let a = ArtinianAlgebra::from_ideal(&r, &gens, 24).unwrap();
        let i = Ideal::new(Arc::new(r.clone()), gens);
        let mut sm = i.standard_monomials().unwrap();
        sm.sort();
        let mut la = a.basis().to_vec();
        la.sort();
        assert_eq!(sm, la);
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let r = ring();
        let gens = vec![
            r.poly(&[(1, &[2, 0]), (-1, &[0, 3])]),
            r.poly(&[(1, &[1, 1])]),
        ];
        let a = ArtinianAlgebra::from_ideal(&r, &gens, 24).unwrap();
        let f = r.poly(&[(3, &[1, 0]), (1, &[0, 2]), (-2, &[0, 0])]);
        let g = r.poly(&[(1, &[0, 1]), (5, &[1, 0])]);
        assert_eq!(
            a.reduce(&r.mul(&f, &g)),
            a.mul(&a.reduce(&f), &a.reduce(&g))
        );
        assert!(a.reduce(&gens[0]).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn module_invariants() {
        let r = ring();
        let a = alg(&r, &[(3, 0), (1, 2), (0, 3)]);
        let k = FlModule::residue_field(&a);
        let k3 = k.power(3).unwrap();
        assert_eq!(k3.count_k_summands(), 3);
        let ra = FlModule::free(&a, 1);
        assert_eq!(ra.count_k_summands(), 0);
        assert_eq!(ra.mu(), 1);
        let sum = FlModule::direct_sum(&[&ra, &k]).unwrap();
        assert_eq!(sum.count_k_summands(), 1);
        let m = ra.submodule(&[a.var_elem(0), a.var_elem(1)]).0;
        assert_eq!(m.mu(), 2);
        assert_eq!(m.dim(), a.dim() - 1);
    }

    #[test]
    fn hom_dimensions() {
        let r = ring();
        let a = alg(&r, &[(2, 0), (1, 1), (0, 2)]);
        let k = FlModule::residue_field(&a);
        let ra = FlModule::free(&a, 1);
        assert_eq!(k.hom_basis(&ra).len(), 2);
        assert_eq!(ra.hom_basis(&ra).len(), a.dim());
    }

    #[test]
    fn iso_examples() {
        let r = ring();
        let a = alg(&r, &[(2, 0), (1, 1), (0, 2)]);
        let k = FlModule::residue_field(&a);
        let ra = FlModule::free(&a, 1);
        let m = ra.submodule(&[a.var_elem(0), a.var_elem(1)]).0;
        let v = m.iso_test(&k.power(2).unwrap(), 7, DEFAULT_SAMPLES);
        assert!(v.is_yes());
        match k.iso_test(&ra, 7, DEFAULT_SAMPLES) {
            IsoVerdict::No { invariant, .. } => assert_eq!(invariant, "dim_k"),
            other => panic!("unexpected {other:?}"),
        }
        let b = alg(&r, &[(3, 0), (1, 2), (0, 3)]);
        let mb = FlModule::free(&b, 1)
            .submodule(&[b.var_elem(0), b.var_elem(1)])
            .0;
        match mb.iso_test(&mb, 1, DEFAULT_SAMPLES) {
            IsoVerdict::Yes(w) => {
                assert!(mb.is_homomorphism(&mb, &w.phi));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
