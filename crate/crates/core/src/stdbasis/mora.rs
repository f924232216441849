//! Mora's tangent cone algorithm for submodules of `S^r` under the local
//! position-over-term order.
//!
//! Normal forms are weak normal forms: the remainder `h` of `f` satisfies
//! `u f - h in <G>` for some unit `u`, and `h = 0` iff `f` lies in the
//! submodule generated by `G` in the localization at the origin.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::vector::Vector;

pub const DEFAULT_DEGREE_CAP: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Abort when an intermediate exceeds this total degree.
    pub degree_cap: u32,
    /// Drop every term of degree `>= d`. Only sound when the submodule being
    /// computed contains `n^d` in every component.
    pub truncate_at: Option<u32>,
    /// Number of variables, needed to form the pairs with `n^d` when truncating.
    pub nvars: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            degree_cap: DEFAULT_DEGREE_CAP,
            truncate_at: None,
            nvars: 0,
        }
    }
}

impl EngineConfig {
    pub fn with_cap(degree_cap: u32) -> Self {
        EngineConfig {
            degree_cap,
            truncate_at: None,
            nvars: 0,
        }
    }

    pub fn truncated(self, d: Option<u32>, nvars: usize) -> Self {
        EngineConfig {
            truncate_at: d,
            nvars,
            ..self
        }
    }

    /// S-polynomials of `h` against the implicit generators `n^d e_c`: the
    /// multiples `u h` with `deg u = d - deg lt(h)`. Only terms in later
    /// components can survive truncation.
    fn truncation_pairs(&self, field: &PrimeField, h: &Vector) -> Vec<Vector> {
        let (Some(d), Some(lt)) = (self.truncate_at, h.leading()) else {
            return Vec::new();
        };
        let e = lt.mono.degree();
        if e >= d || h.terms().iter().all(|t| t.comp == lt.comp) {
            return Vec::new();
        }
        Monomial::all_of_degree(self.nvars, d - e)
            .into_iter()
            .filter_map(|u| {
                let mut v = h.mul_term(field, crate::field::Fp::ONE, u);
                v.truncate_degree(d);
                (!v.is_zero()).then_some(v)
            })
            .collect()
    }

    fn tidy(&self, v: &mut Vector) -> Result<()> {
        if let Some(d) = self.truncate_at {
            v.truncate_degree(d);
            return Ok(());
        }
        let deg = v.max_degree();
        if deg > self.degree_cap {
            return Err(Error::DegreeCapExceeded {
                cap: self.degree_cap,
                degree: deg,
            });
        }
        Ok(())
    }
}

/// A standard basis together with a per-component index of leading terms.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    elems: Vec<Vector>,
    ecarts: Vec<u32>,
    by_comp: HashMap<u32, Vec<usize>>,
    config: EngineConfig,
}

#[derive(Default)]
struct PairQueue {
    heap: BinaryHeap<Reverse<(u32, u64, usize, usize)>>,
    alive: HashMap<(usize, usize), Monomial>,
    by_comp: HashMap<u32, HashSet<(usize, usize)>>,
    seq: u64,
}

impl PairQueue {
    fn push(&mut self, comp: u32, i: usize, j: usize, lcm: Monomial) {
        self.seq += 1;
        self.heap.push(Reverse((lcm.degree(), self.seq, i, j)));
        self.alive.insert((i, j), lcm);
        self.by_comp.entry(comp).or_default().insert((i, j));
    }

    fn remove(&mut self, comp: u32, key: (usize, usize)) {
        self.alive.remove(&key);
        if let Some(s) = self.by_comp.get_mut(&comp) {
            s.remove(&key);
        }
    }

    fn pop(&mut self, comp_of: impl Fn(usize) -> u32) -> Option<(usize, usize)> {
        while let Some(Reverse((_, _, i, j))) = self.heap.pop() {
            if self.alive.remove(&(i, j)).is_some() {
                if let Some(s) = self.by_comp.get_mut(&comp_of(i)) {
                    s.remove(&(i, j));
                }
                return Some((i, j));
            }
        }
        None
    }
}

impl StandardBasis {
    pub fn empty(config: EngineConfig) -> Self {
        StandardBasis {
            elems: Vec::new(),
            ecarts: Vec::new(),
            by_comp: HashMap::new(),
            config,
        }
    }

    pub fn config(&self) -> EngineConfig {
        self.config
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elems
    }

    pub fn into_elements(self) -> Vec<Vector> {
        self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Complete `gens` to a standard basis. `known` must already be a
    /// standard basis of the submodule it generates; pairs inside it are
    /// skipped.
    pub fn compute(
        field: &PrimeField,
        known: &[Vector],
        gens: &[Vector],
        config: EngineConfig,
    ) -> Result<Self> {
        let mut sb = StandardBasis::empty(config);
        let mut queue = PairQueue::default();
        for k in known {
            let mut k = k.clone();
            config.tidy(&mut k)?;
            if !k.is_zero() {
                sb.insert_raw(k.monic(field));
            }
        }
        let known_count = sb.elems.len();
        let mut pending: Vec<Vector> = sb
            .elems
            .iter()
            .flat_map(|k| config.truncation_pairs(field, k))
            .collect();
        pending.extend(gens.iter().rev().cloned());
        loop {
            let s = if let Some(v) = pending.pop() {
                v
            } else if let Some((i, j)) = queue.pop(|i| sb.elems[i].leading().map_or(0, |t| t.comp))
            {
                if i < known_count && j < known_count {
                    continue;
                }
                sb.spoly(field, i, j)
            } else {
                break;
            };
            let h = sb.normal_form(field, &s)?;
            if !h.is_zero() {
                let h = h.monic(field);
                pending.extend(config.truncation_pairs(field, &h));
                sb.add_with_pairs(field, h, &mut queue);
            }
        }
        sb.minimize();
        Ok(sb)
    }

    fn insert_raw(&mut self, v: Vector) -> usize {
        let idx = self.elems.len();
        let comp = v.leading().expect("nonzero").comp;
        self.ecarts.push(v.ecart());
        self.elems.push(v);
        self.by_comp.entry(comp).or_default().push(idx);
        idx
    }

    /// Append an element whose leading term is not in the current leading
    /// submodule and such that the result is again a standard basis. Used by
    /// the incremental quotient-dimension counts, where the caller knows that
    /// the new element times the maximal ideal already lies in the module.
    pub fn push_unchecked(&mut self, field: &PrimeField, v: Vector) {
        if !v.is_zero() {
            self.insert_raw(v.monic(field));
        }
    }

    fn add_with_pairs(&mut self, field: &PrimeField, h: Vector, queue: &mut PairQueue) {
        let h = h.monic(field);
        let lt = h.leading().expect("nonzero");
        let n = self.elems.len();
        let same: Vec<usize> = self.by_comp.get(&lt.comp).cloned().unwrap_or_default();
        // chain criterion on existing pairs
        if let Some(existing) = queue.by_comp.get(&lt.comp) {
            let doomed: Vec<(usize, usize)> = existing
                .iter()
                .copied()
                .filter(|&(i, j)| {
                    let l = queue.alive[&(i, j)];
                    if !lt.mono.divides(l) {
                        return false;
                    }
                    let li = self.elems[i].leading().unwrap().mono.lcm(lt.mono);
                    let lj = self.elems[j].leading().unwrap().mono.lcm(lt.mono);
                    li != l && lj != l
                })
                .collect();
            for key in doomed {
                queue.remove(lt.comp, key);
            }
        }
        let mut candidates: Vec<(usize, Monomial)> = same
            .iter()
            .map(|&i| (i, self.elems[i].leading().unwrap().mono.lcm(lt.mono)))
            .collect();
        // drop pairs whose lcm is a proper multiple of another new lcm; keep one per lcm
        let lcms: Vec<Monomial> = candidates.iter().map(|c| c.1).collect();
        candidates.retain(|&(_, l)| !lcms.iter().any(|&o| o != l && o.divides(l)));
        let mut seen = HashSet::new();
        candidates.retain(|&(_, l)| seen.insert(l));
        self.insert_raw(h);
        for (i, l) in candidates {
            queue.push(lt.comp, i, n, l);
        }
    }

    fn spoly(&self, field: &PrimeField, i: usize, j: usize) -> Vector {
        let a = &self.elems[i];
        let b = &self.elems[j];
        let la = a.leading().unwrap();
        let lb = b.leading().unwrap();
        let l = la.mono.lcm(lb.mono);
        let ma = la.mono.quotient_of(l).unwrap();
        let mb = lb.mono.quotient_of(l).unwrap();
        let left = a.mul_term(field, field.inv(la.coeff).unwrap(), ma);
        left.axpy(field, field.neg(field.inv(lb.coeff).unwrap()), mb, b)
    }

    /// Drop elements whose leading term is divisible by another's.
    fn minimize(&mut self) {
        let n = self.elems.len();
        let mut keep = vec![true; n];
        for i in 0..n {
            let li = self.elems[i].leading().unwrap();
            for j in 0..n {
                if i == j || !keep[j] {
                    continue;
                }
                let lj = self.elems[j].leading().unwrap();
                if lj.comp == li.comp && lj.mono.divides(li.mono) && (lj.mono != li.mono || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let elems: Vec<Vector> = std::mem::take(&mut self.elems)
            .into_iter()
            .zip(keep)
            .filter_map(|(v, k)| k.then_some(v))
            .collect();
        self.ecarts.clear();
        self.by_comp.clear();
        for v in elems {
            self.insert_raw(v);
        }
    }

    /// Mora's weak normal form of `f` with respect to this basis.
    pub fn normal_form(&self, field: &PrimeField, f: &Vector) -> Result<Vector> {
        let mut h = f.clone();
        self.config.tidy(&mut h)?;
        let mut extra: Vec<(Vector, u32)> = Vec::new();
        loop {
            let Some(lt) = h.leading() else {
                return Ok(h);
            };
            let mut best: Option<(u32, Option<usize>, usize)> = None; // (ecart, extra idx, basis idx)
            if let Some(idxs) = self.by_comp.get(&lt.comp) {
                for &i in idxs {
                    let e = self.ecarts[i];
                    if best.is_some_and(|b| b.0 <= e) {
                        continue;
                    }
                    if self.elems[i].leading().unwrap().mono.divides(lt.mono) {
                        best = Some((e, None, i));
                        if e == 0 {
                            break;
                        }
                    }
                }
            }
            if best.is_none_or(|b| b.0 > 0) {
                for (k, (t, e)) in extra.iter().enumerate() {
                    if best.is_some_and(|b| b.0 <= *e) {
                        continue;
                    }
                    let tl = t.leading().unwrap();
                    if tl.comp == lt.comp && tl.mono.divides(lt.mono) {
                        best = Some((*e, Some(k), 0));
                    }
                }
            }
            let Some((e, ex, bi)) = best else {
                return Ok(h);
            };
            let g = match ex {
                Some(k) => extra[k].0.clone(),
                None => self.elems[bi].clone(),
            };
            let he = h.ecart();
            if e > he {
                extra.push((h.clone(), he));
            }
            let gl = g.leading().unwrap();
            let m = gl.mono.quotient_of(lt.mono).unwrap();
            let c = field.neg(field.div(lt.coeff, gl.coeff).unwrap());
            h = h.axpy(field, c, m, &g);
            self.config.tidy(&mut h)?;
        }
    }

    pub fn contains(&self, field: &PrimeField, f: &Vector) -> Result<bool> {
        Ok(self.normal_form(field, f)?.is_zero())
    }

    /// Leading terms of the basis, `(component, monomial)`.
    pub fn leading_terms(&self) -> Vec<(u32, Monomial)> {
        self.elems
            .iter()
            .map(|v| v.leading().map(|t| (t.comp, t.mono)).unwrap())
            .collect()
    }
}

/// Kernel of `S^t -> S^r / U` sending `e_j` to `columns[j]`.
///
/// `relations` generate `U` (with `known_relations` a prefix already forming a
/// standard basis); `tail_relations` are extra elements of `S^t` that are
/// added to the kernel (for instance `I e_j` when working over `S/I`).
pub struct KernelProblem<'a> {
    pub rank: usize,
    pub columns: &'a [Vector],
    pub known_relations: &'a [Vector],
    pub relations: &'a [Vector],
    pub tail_relations: &'a [Vector],
}

pub fn kernel(
    field: &PrimeField,
    problem: &KernelProblem<'_>,
    config: EngineConfig,
) -> Result<Vec<Vector>> {
    let r = problem.rank as u32;
    let t = problem.columns.len();
    let mut known: Vec<Vector> = problem.known_relations.to_vec();
    known.extend(problem.tail_relations.iter().map(|w| w.shift(r)));
    let mut gens: Vec<Vector> = Vec::with_capacity(t + problem.relations.len());
    for (j, c) in problem.columns.iter().enumerate() {
        gens.push(c.concat(&Vector::unit(r + j as u32, &crate::poly::Poly::one())));
    }
    gens.extend(problem.relations.iter().cloned());
    // tail relations are only a standard basis in isolation when they were
    // passed that way; the ambient known block is always complete
    let sb = StandardBasis::compute(field, &known, &gens, config)?;
    Ok(sb
        .into_elements()
        .into_iter()
        .filter(|v| v.leading().is_some_and(|l| l.comp >= r))
        .map(|v| v.slice(r, r + t as u32))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, PolyRing};

    fn ring() -> PolyRing {
        PolyRing::with_vars(101, 2).unwrap()
    }

    fn ideal_sb(r: &PolyRing, gens: &[Poly]) -> StandardBasis {
        let vs: Vec<Vector> = gens
            .iter()
            .map(|g| Vector::from_polys(std::slice::from_ref(g)))
            .collect();
        StandardBasis::compute(&r.field, &[], &vs, EngineConfig::default()).unwrap()
    }

    #[test]
    fn normal_form_one_step() {
        let r = ring();
        let f = r.poly(&[(1, &[2, 0]), (-1, &[0, 3])]);
        let sb = ideal_sb(&r, &[f]);
        let x3 = Vector::from_polys(&[r.poly(&[(1, &[3, 0])])]);
        let nf = sb.normal_form(&r.field, &x3).unwrap();
        assert_eq!(nf.component(0), r.poly(&[(1, &[1, 3])]));
    }

    #[test]
    fn no_division_no_reduction() {
        let r = ring();
        let sb = ideal_sb(&r, &[Poly::var(0)]);
        let y = Vector::from_polys(&[Poly::var(1)]);
        assert_eq!(sb.normal_form(&r.field, &y).unwrap(), y);
        let x = Vector::from_polys(&[Poly::var(0)]);
        assert!(sb.contains(&r.field, &x).unwrap());
    }

    #[test]
    fn local_units_are_invertible() {
        // x - x^2 = x (1 - x) generates the same local ideal as x
        let r = ring();
        let sb = ideal_sb(&r, &[r.poly(&[(1, &[1, 0]), (-1, &[2, 0])])]);
        assert!(sb
            .contains(&r.field, &Vector::from_polys(&[Poly::var(0)]))
            .unwrap());
        // but 1 - x is a unit: the ideal it generates is everything
        let sb = ideal_sb(&r, &[r.poly(&[(1, &[0, 0]), (-1, &[1, 0])])]);
        assert!(sb
            .contains(&r.field, &Vector::from_polys(&[Poly::one()]))
            .unwrap());
    }

    #[test]
    fn s_pair_adds_y_cubed() {
        let r = ring();
        let sb = ideal_sb(
            &r,
            &[
                r.poly(&[(1, &[2, 0]), (-1, &[0, 3])]),
                r.poly(&[(1, &[2, 0])]),
            ],
        );
        let y3 = Vector::from_polys(&[r.poly(&[(1, &[0, 3])])]);
        assert!(sb.contains(&r.field, &y3).unwrap());
        let lts: Vec<Monomial> = sb.leading_terms().into_iter().map(|t| t.1).collect();
        assert!(lts.contains(&Monomial::from_exponents(&[0, 3]).unwrap()));
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring();
        let cols = vec![
            Vector::from_polys(&[Poly::var(0)]),
            Vector::from_polys(&[Poly::var(1)]),
        ];
        let k = kernel(
            &r.field,
            &KernelProblem {
                rank: 1,
                columns: &cols,
                known_relations: &[],
                relations: &[],
                tail_relations: &[],
            },
            EngineConfig::default(),
        )
        .unwrap();
        assert_eq!(k.len(), 1);
        let v = k[0].to_polys(2);
        // (y, -x) up to scale
        let check = r.add(&r.mul(&v[0], &Poly::var(0)), &r.mul(&v[1], &Poly::var(1)));
        assert!(check.is_zero());
        assert_eq!(v[0].order(), crate::poly::Order::Finite(1));
    }
}
