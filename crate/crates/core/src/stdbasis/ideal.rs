//! Ideals of the local ring `S = F_p[x_1..x_e]` localized at the origin.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Poly, PolyRing};
use crate::stdbasis::mora::{kernel, EngineConfig, KernelProblem, StandardBasis};
use crate::vector::Vector;

#[derive(Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    config: EngineConfig,
    std: OnceLock<StandardBasis>,
    mingens: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            config: self.config,
            std: self.std.clone(),
            mingens: self.mingens.clone(),
        }
    }
}

pub(crate) fn scalar(p: &Poly) -> Vector {
    Vector::from_polys(std::slice::from_ref(p))
}

impl Ideal {
    pub fn new(ring: Arc<PolyRing>, gens: Vec<Poly>) -> Self {
        Ideal::with_config(ring, gens, EngineConfig::default())
    }

    pub fn with_config(ring: Arc<PolyRing>, gens: Vec<Poly>, config: EngineConfig) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring,
            gens,
            config,
            std: OnceLock::new(),
            mingens: OnceLock::new(),
        }
    }

    pub fn zero(ring: Arc<PolyRing>) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: Arc<PolyRing>) -> Self {
        Ideal::new(ring, vec![Poly::one()])
    }

    /// The maximal ideal `n = (x_1, ..., x_e)`.
    pub fn maximal(ring: Arc<PolyRing>) -> Self {
        let vars = ring.vars();
        Ideal::new(ring, vars)
    }

    /// `n^k`.
    pub fn maximal_power(ring: Arc<PolyRing>, k: u32) -> Self {
        let gens = Monomial::all_of_degree(ring.nvars(), k)
            .into_iter()
            .map(|m| Poly::monomial(m, crate::field::Fp::ONE))
            .collect();
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn config(&self) -> EngineConfig {
        self.config
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn derive(&self, gens: Vec<Poly>) -> Ideal {
        Ideal::with_config(self.ring.clone(), gens, self.config)
    }

    pub fn std_basis(&self) -> Result<&StandardBasis> {
        if let Some(sb) = self.std.get() {
            return Ok(sb);
        }
        let vs: Vec<Vector> = self.gens.iter().map(scalar).collect();
        let sb = StandardBasis::compute(&self.ring.field, &[], &vs, self.config)?;
        Ok(self.std.get_or_init(|| sb))
    }

    /// Standard basis elements as polynomials.
    pub fn std_polys(&self) -> Result<Vec<Poly>> {
        Ok(self
            .std_basis()?
            .elements()
            .iter()
            .map(|v| v.component(0))
            .collect())
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self
            .std_basis()?
            .leading_terms()
            .into_iter()
            .map(|t| t.1)
            .collect())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        Ok(self
            .std_basis()?
            .normal_form(&self.ring.field, &scalar(f))?
            .component(0))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by membership in both directions.
    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        self.contains(&Poly::one())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        self.derive(g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let f = &self.ring.field;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(f, b));
            }
        }
        self.derive(g)
    }

    pub fn add_generators(&self, extra: &[Poly]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        self.derive(g)
    }

    /// `n * I`.
    pub fn times_maximal(&self) -> Ideal {
        let f = &self.ring.field;
        let mut g = Vec::new();
        for v in self.ring.vars() {
            for a in &self.gens {
                g.push(a.mul(f, &v));
            }
        }
        self.derive(g)
    }

    /// Syzygies of the generator list (over the local ring `S`).
    pub fn generator_syzygies(&self) -> Result<Vec<Vec<Poly>>> {
        syzygies_of(&self.ring, &self.gens, self.config)
    }

    /// Intersection, from the syzygies of the concatenated generator lists.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        if self.is_zero() || other.is_zero() {
            return Ok(self.derive(Vec::new()));
        }
        let f = &self.ring.field;
        let mut all = self.gens.clone();
        all.extend(other.gens.iter().cloned());
        let s = self.gens.len();
        let syz = syzygies_of(&self.ring, &all, self.config)?;
        let mut out = Vec::new();
        for rel in syz {
            let mut acc = Poly::zero();
            for (c, g) in rel[..s].iter().zip(&self.gens) {
                acc = acc.add(f, &c.mul(f, g));
            }
            if !acc.is_zero() {
                out.push(acc);
            }
        }
        Ok(self.derive(out))
    }

    /// `I : (h)`.
    pub fn colon_poly(&self, h: &Poly) -> Result<Ideal> {
        if h.is_zero() {
            return Err(Error::invalid("colon by the zero ideal"));
        }
        let mut all = vec![h.clone()];
        all.extend(self.gens.iter().cloned());
        let syz = syzygies_of(&self.ring, &all, self.config)?;
        let gens = syz
            .into_iter()
            .map(|rel| rel[0].clone())
            .filter(|c| !c.is_zero())
            .collect();
        Ok(self.derive(gens))
    }

    /// `I : J = { f : f J in I }`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        if other.is_zero() {
            return Err(Error::invalid("colon by the zero ideal"));
        }
        let mut acc: Option<Ideal> = None;
        for h in &other.gens {
            let q = self.colon_poly(h)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersection(&q)?,
            });
        }
        Ok(acc.expect("nonempty"))
    }

    /// A minimal generating set: its image in `I / nI` is a basis.
    pub fn minimal_generators(&self) -> Result<&[Poly]> {
        if let Some(m) = self.mingens.get() {
            return Ok(m);
        }
        if self.is_unit_ideal()? {
            return Err(Error::invalid(
                "minimal generators requested for the unit ideal",
            ));
        }
        let f = &self.ring.field;
        let n_i = self.times_maximal();
        let mut sb = n_i.std_basis()?.clone();
        let mut cands: Vec<&Poly> = self.gens.iter().collect();
        cands.sort_by_key(|g| g.order());
        let mut out = Vec::new();
        for g in cands {
            // n g lies in n I, so the basis stays standard after each push
            let w = sb.normal_form(f, &scalar(g))?;
            if !w.is_zero() {
                out.push(g.clone());
                sb.push_unchecked(f, w);
            }
        }
        Ok(self.mingens.get_or_init(|| out))
    }

    /// `mu(I) = dim_k I / nI`.
    pub fn mu(&self) -> Result<usize> {
        if self.is_zero() {
            return Ok(0);
        }
        Ok(self.minimal_generators()?.len())
    }

    /// Krull dimension of `S/I` from the leading monomials: the largest set of
    /// variables supporting no leading monomial.
    pub fn krull_dim(&self) -> Result<usize> {
        let n = self.ring.nvars();
        if self.is_zero() {
            return Ok(n);
        }
        let lms = self.leading_monomials()?;
        if lms.iter().any(|m| m.is_one()) {
            return Ok(0);
        }
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let size = mask.count_ones() as usize;
            if size > best && !lms.iter().any(|m| m.supported_in(mask)) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Hilbert–Samuel function of `S/I` (dimensions of the graded pieces of
    /// the associated graded ring), degrees `0..=up_to`.
    pub fn hilbert_function(&self, up_to: u32) -> Result<Vec<usize>> {
        let lms = if self.is_zero() {
            Vec::new()
        } else {
            self.leading_monomials()?
        };
        Ok((0..=up_to)
            .map(|d| {
                Monomial::all_of_degree(self.ring.nvars(), d)
                    .into_iter()
                    .filter(|m| !lms.iter().any(|l| l.divides(*m)))
                    .count()
            })
            .collect())
    }

    /// Least `s` with `n^s` contained in `I`, when `S/I` is Artinian.
    pub fn nilpotency_degree(&self) -> Result<Option<u32>> {
        if self.krull_dim()? != 0 {
            return Ok(None);
        }
        let mut d = 0;
        loop {
            if self.hilbert_function(d)?[d as usize] == 0 {
                return Ok(Some(d));
            }
            d += 1;
        }
    }

    /// Standard monomials (a k-basis of `S/I`) when `S/I` is Artinian.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        let s = self
            .nilpotency_degree()?
            .ok_or_else(|| Error::unsupported("standard monomials of a non-Artinian quotient"))?;
        let lms = self.leading_monomials()?;
        Ok(Monomial::all_below_degree(self.ring.nvars(), s)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(*m)))
            .collect())
    }

    /// `Fitt_j` of `I` viewed as the module generated by the stored generator
    /// list: the ideal of `(n - j)`-minors of its presentation matrix.
    /// `j >= n` gives the unit ideal; minors larger than the matrix give zero.
    pub fn fitting_ideal(&self, j: usize) -> Result<Ideal> {
        let n = self.gens.len();
        if j >= n {
            return Ok(self.derive(vec![Poly::one()]));
        }
        let size = n - j;
        let syz = self.generator_syzygies()?;
        if syz.len() < size {
            return Ok(self.derive(Vec::new()));
        }
        let f = &self.ring.field;
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (0..syz.len()).collect();
        let mut minors = Vec::new();
        for rs in combinations(&rows, size) {
            for cs in combinations(&cols, size) {
                let m: Vec<Vec<Poly>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| syz[c][r].clone()).collect())
                    .collect();
                let d = determinant(f, &m);
                if !d.is_zero() {
                    minors.push(d);
                }
            }
        }
        Ok(self.derive(minors))
    }

    /// Render the generators.
    pub fn show(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.show(g)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Syzygies of a list of polynomials over the local ring `S`.
pub fn syzygies_of(ring: &PolyRing, gens: &[Poly], config: EngineConfig) -> Result<Vec<Vec<Poly>>> {
    let cols: Vec<Vector> = gens.iter().map(scalar).collect();
    let ker = kernel(
        &ring.field,
        &KernelProblem {
            rank: 1,
            columns: &cols,
            known_relations: &[],
            relations: &[],
            tail_relations: &[],
        },
        config,
    )?;
    Ok(ker.into_iter().map(|v| v.to_polys(gens.len())).collect())
}

pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Determinant by cofactor expansion (small matrices only).
pub fn determinant(field: &crate::field::PrimeField, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    match n {
        0 => Poly::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Poly::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let t = m[0][c].mul(field, &determinant(field, &minor));
                acc = if c % 2 == 0 {
                    acc.add(field, &t)
                } else {
                    acc.sub(field, &t)
                };
            }
            acc
        }
    }
}
