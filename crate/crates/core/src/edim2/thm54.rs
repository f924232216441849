//! Which `syz_i(k)` are indecomposable, and the summand inventory built from
//! the atoms `k`, `m`, `N`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quotient::{QuotientRing, RingKind};
use crate::resolver::{ModuleKind, Resolver};
use crate::stdbasis::Ideal;

use super::{decompose_m, require_edim2, socle_count_a, split_syz2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Indecomposable,
    Decomposable,
    Undetermined,
}

impl Verdict {
    fn of(indecomposable: Option<bool>) -> Self {
        match indecomposable {
            Some(true) => Verdict::Indecomposable,
            Some(false) => Verdict::Decomposable,
            None => Verdict::Undetermined,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Verdict::Indecomposable => "I",
            Verdict::Decomposable => "D",
            Verdict::Undetermined => "?",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thm54 {
    pub kind: RingKind,
    pub m_decomposable: Option<bool>,
    /// `(I:n) n = I n`.
    pub colon_equality: bool,
    pub principal: bool,
    /// Verdicts for `syz_1`, `syz_2`, `syz_3`.
    pub verdicts: [Verdict; 3],
    /// Verdict for every `syz_i`, `i >= 3`.
    pub all_i: Verdict,
    pub k_syz2: usize,
    pub k_syz3: usize,
    /// Verdicts agree with the k-summand counts and the `N ⊕ N'` splitting.
    pub cross_check: bool,
}

impl Thm54 {
    pub fn table_row(&self) -> String {
        self.verdicts
            .iter()
            .map(|v| v.short())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub fn thm54_classify(q: &QuotientRing, seed: u64) -> Result<Thm54> {
    require_edim2(q)?;
    let i = q.ideal();
    if i.is_zero() {
        return Err(Error::unsupported("R is regular"));
    }
    let d = decompose_m(q, seed)?;
    let kind = d.kind;
    let m_indec = d.decomposable.map(|b| !b);
    let n = Ideal::maximal(q.ring().clone());
    let colon_n = i.colon(&n)?.times_maximal();
    let colon_equality = i.times_maximal().contains_ideal(&colon_n)?
        && colon_n.contains_ideal(&i.times_maximal())?;
    let principal = i.mu()? == 1;
    let ci0 = kind == RingKind::ZeroDimCi;
    let v1 = m_indec;
    let v2 = m_indec.map(|b| b && colon_equality);
    let v3 = if ci0 {
        Some(true)
    } else {
        m_indec.map(|b| b && principal)
    };
    let verdicts = [Verdict::of(v1), Verdict::of(v2), Verdict::of(v3)];

    let e = Resolver::new(q)?;
    let res = e.resolve(ModuleKind::K, 3)?;
    let k_syz2 = e.count_k_summands(res.syzygy(2).expect("length 3"))?;
    let k_syz3 = e.count_k_summands(res.syzygy(3).expect("length 3"))?;
    let mut cross_check = true;
    if m_indec == Some(true) {
        // syz_2 = N ⊕ k^a with N indecomposable
        cross_check &= (v2 == Some(true)) == (k_syz2 == 0);
        cross_check &= socle_count_a(i)? == k_syz2;
        let s = split_syz2(q, seed)?;
        cross_check &= s.pass;
        // syz_3 = k^{mu-1} ⊕ m^mu
        if !ci0 {
            cross_check &= (v3 == Some(true)) == (k_syz3 == 0 && principal);
        }
    }
    Ok(Thm54 {
        kind,
        m_decomposable: d.decomposable,
        colon_equality,
        principal,
        verdicts,
        all_i: verdicts[2],
        k_syz2,
        k_syz3,
        cross_check,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InventoryLevel {
    pub index: usize,
    /// Multiplicities of the atoms, in the order of `Inventory::atoms`.
    pub counts: Vec<usize>,
    pub predicted_mu: usize,
    pub observed_mu: usize,
    pub predicted_k: usize,
    pub observed_k: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inventory {
    pub atoms: Vec<String>,
    pub levels: Vec<InventoryLevel>,
    pub pass: bool,
}

/// `syz_0 = k`, `syz_1 = m`, `syz_2 = m ⊕ k^a` or `N ⊕ k^a`, then
/// `syz_i = syz_{i-2}^{mu} ⊕ syz_{i-3}^{mu-1}`.
pub fn thm53_inventory(q: &QuotientRing, upto: usize, seed: u64) -> Result<Inventory> {
    require_edim2(q)?;
    let class = q.classify()?.clone();
    if matches!(class.kind, RingKind::Regular | RingKind::ZeroDimCi) {
        return Err(Error::unsupported(format!(
            "not applicable to a {} ring",
            class.kind.label()
        )));
    }
    let mu = class.mu;
    let d = decompose_m(q, seed)?;
    let m_dec = d
        .decomposable
        .ok_or_else(|| Error::unsupported("decomposability of m undetermined"))?;
    let e = Resolver::new(q)?;
    let res = e.resolve(ModuleKind::K, upto.max(2))?;
    let m_k = e.count_k_summands(&e.maximal_ideal())?;
    let a = if m_dec {
        e.count_k_summands(res.syzygy(2).expect("length"))? - m_k
    } else {
        socle_count_a(q.ideal())?
    };
    // atom data: (name, mu, k-count)
    let mut atoms: Vec<(String, usize, usize)> = vec![("k".into(), 1, 1)];
    let m_is_k2 = m_dec && m_k == 2;
    if !m_is_k2 {
        atoms.push(("m".into(), 2, m_k));
    }
    if !m_dec {
        atoms.push(("N".into(), mu + 1 - a, 0));
    }
    let idx = |name: &str| atoms.iter().position(|t| t.0 == name);
    let na = atoms.len();
    let mut syz: Vec<Vec<usize>> = Vec::new();
    let unit = |i: usize| {
        let mut v = vec![0; na];
        v[i] = 1;
        v
    };
    let m_vec = if m_is_k2 {
        unit(0).iter().map(|c| c * 2).collect()
    } else {
        unit(idx("m").expect("atom"))
    };
    syz.push(unit(0));
    syz.push(m_vec.clone());
    let mut s2 = if m_dec {
        m_vec
    } else {
        unit(idx("N").expect("atom"))
    };
    s2[0] += a;
    syz.push(s2);
    for i in 3..=upto {
        let v = (0..na)
            .map(|t| mu * syz[i - 2][t] + (mu - 1) * syz[i - 3][t])
            .collect();
        syz.push(v);
    }
    let mut levels = Vec::new();
    for (i, counts) in syz.into_iter().enumerate().skip(1) {
        let predicted_mu = counts.iter().zip(&atoms).map(|(c, t)| c * t.1).sum();
        let predicted_k = counts.iter().zip(&atoms).map(|(c, t)| c * t.2).sum();
        let s = res.syzygy(i).expect("length");
        let observed_mu = res.betti[i];
        let observed_k = e.count_k_summands(s)?;
        let pass = predicted_mu == observed_mu && predicted_k == observed_k;
        levels.push(InventoryLevel {
            index: i,
            counts,
            predicted_mu,
            observed_mu,
            predicted_k,
            observed_k,
            pass,
        });
    }
    let pass = levels.iter().all(|l| l.pass) && atoms.len() <= 3;
    Ok(Inventory {
        atoms: atoms.into_iter().map(|t| t.0).collect(),
        levels,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{mono, q};
    use super::*;

    #[test]
    fn table() {
        let rows: &[(&[[u32; 2]], &str)] = &[
            (&[[2, 0], [1, 1], [0, 2]], "D,D,D"),
            (&[[3, 0], [1, 2], [0, 3]], "I,D,D"),
            (&[[1, 1]], "D,D,D"),
            (&[[1, 1], [2, 0]], "D,D,D"),
            (&[[1, 1], [3, 0]], "D,D,D"),
            (&[[1, 1], [2, 0], [0, 3]], "D,D,D"),
            (&[[3, 0], [2, 1], [1, 2], [0, 3]], "I,D,D"),
            (&[[4, 0], [1, 1], [0, 4]], "D,D,D"),
            (&[[2, 0], [0, 2]], "I,I,I"),
            (&[[3, 0], [0, 2]], "I,I,I"),
        ];
        for (ms, row) in rows {
            let t = thm54_classify(&mono(ms), 11).unwrap();
            assert_eq!(t.table_row(), *row, "{ms:?}");
            assert!(t.cross_check, "{ms:?}: {t:?}");
        }
        let t = thm54_classify(&q(&[&[(1, [2, 0]), (-1, [0, 3])]]), 11).unwrap();
        assert_eq!(t.table_row(), "I,I,I");
        assert!(t.cross_check);
        let t = thm54_classify(&q(&[&[(1, [2, 0]), (1, [1, 1])]]), 11).unwrap();
        assert_eq!(t.table_row(), "D,D,D");
    }

    #[test]
    fn inventories() {
        let inv = thm53_inventory(&mono(&[[2, 0], [1, 1], [0, 2]]), 4, 1).unwrap();
        assert_eq!(inv.atoms, vec!["k"]);
        assert!(inv.pass, "{inv:?}");
        for ms in [
            &[[3, 0], [1, 2], [0, 3]][..],
            &[[1, 1], [2, 0]][..],
            &[[1, 1]][..],
            &[[3, 0], [2, 1], [1, 2], [0, 3]][..],
        ] {
            let inv = thm53_inventory(&mono(ms), 5, 1).unwrap();
            assert!(inv.pass, "{ms:?}: {inv:?}");
        }
        assert!(thm53_inventory(&mono(&[[2, 0], [0, 2]]), 4, 1).is_err());
    }
}
