//! One line per acceptance criterion; the test fails if any line does.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use golodsyz::corpus::{CorpusEntry, ENTRIES};
use golodsyz::edim2::{
    compute_a, decompose_m, dual_iso_check, fitting_criterion_check, prop41_case, split_syz2,
    thm53_inventory, thm54_classify, ParameterIdeal, Verdict,
};
use golodsyz::koszul::{koszul_homology, verify_cor52, verify_recurrence};
use golodsyz::resolver::truncation_oracle;
use golodsyz::{EngineConfig, ModuleKind, QuotientRing, Resolver, RingKind};

const SEED: u64 = 7;

/// Known decomposition data for the two-variable corpus:
/// (stem, m decomposable, a from the socle count or the case rule, verdicts for syz_1..syz_3).
const TRUTH: &[(&str, bool, usize, &str)] = &[
    ("01_square_of_max", true, 2, "D,D,D"),
    ("02_cubic_monomials", false, 2, "I,D,D"),
    ("03_node", true, 0, "D,D,D"),
    ("04_xy_x2", true, 1, "D,D,D"),
    ("05_xy_x3", true, 1, "D,D,D"),
    ("06_xy_x2_y3", true, 2, "D,D,D"),
    ("07_cusp", false, 0, "I,I,I"),
    ("08_x2_plus_xy", true, 0, "D,D,D"),
    ("09_cube_of_max", false, 4, "I,D,D"),
    ("10_x4_xy_y4", true, 2, "D,D,D"),
    ("11_ci_x2_y2", false, 0, "I,I,I"),
    ("12_ci_x3_y2", false, 0, "I,I,I"),
];

fn ring_of(e: &CorpusEntry) -> QuotientRing {
    e.session()
        .unwrap()
        .quotient("I", EngineConfig::default())
        .unwrap()
}

fn entries() -> Vec<(&'static str, QuotientRing)> {
    ENTRIES.iter().map(|e| (e.stem(), ring_of(e))).collect()
}

fn kind(q: &QuotientRing) -> RingKind {
    q.classify().unwrap().kind
}

fn edim2<'a>(
    all: &'a [(&'static str, QuotientRing)],
) -> impl Iterator<Item = &'a (&'static str, QuotientRing)> {
    all.iter().filter(|(_, q)| q.nvars() == 2)
}

struct Line {
    pass: bool,
    detail: String,
}

fn line(pass: bool, detail: impl Into<String>) -> Line {
    Line {
        pass,
        detail: detail.into(),
    }
}

fn c1(all: &[(&'static str, QuotientRing)]) -> Line {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut n = 0;
    for (stem, q) in edim2(all).filter(|(_, q)| kind(q) != RingKind::ZeroDimCi) {
        n += 1;
        match verify_recurrence(q, 8, 0, SEED) {
            Ok(g) if g.pass && g.series_agree => {}
            other => bad.push(format!("{stem}: {:?}", other.map(|g| g.observed))),
        }
    }
    let el = t.elapsed();
    let pass = bad.is_empty() && el < Duration::from_secs(60);
    line(
        pass,
        format!(
            "Golod Betti numbers to length 8 on {n} entries in {:.1}s {}",
            el.as_secs_f64(),
            bad.join("; ")
        ),
    )
}

fn c2(all: &[(&'static str, QuotientRing)]) -> Line {
    let mut bad = Vec::new();
    let mut n = 0;
    for (stem, q) in all.iter().filter(|(_, q)| q.dim().unwrap() == 0) {
        n += 1;
        let oracle = truncation_oracle(q.ring(), q.ideal().generators(), ModuleKind::K, 6).unwrap();
        let res = Resolver::new(q).unwrap().resolve(ModuleKind::K, 6).unwrap();
        if oracle != res.betti {
            bad.push(format!("{stem}: oracle {oracle:?} vs {:?}", res.betti));
        }
    }
    line(
        bad.is_empty(),
        format!(
            "linear algebra oracle equals resolver to length 6 on {n} Artinian entries {}",
            bad.join("; ")
        ),
    )
}

fn c3(all: &[(&'static str, QuotientRing)]) -> Line {
    let mut bad = Vec::new();
    let mut n = 0;
    for (stem, q) in all
        .iter()
        .filter(|(_, q)| kind(q) == RingKind::ArtinianNonCi)
    {
        let g = verify_recurrence(q, 5, 5, SEED).unwrap();
        // the decomposition is only defined past the embedding dimension
        for i in (q.nvars() + 1).max(3)..=5 {
            n += 1;
            let ix = g.indices.iter().find(|x| x.index == i);
            match ix.and_then(|x| x.iso.as_ref()) {
                Some(c) if c.verdict == "YES" => {}
                Some(c) => bad.push(format!("{stem} i={i}: {}", c.verdict)),
                None => bad.push(format!("{stem} i={i}: no witness")),
            }
        }
    }
    line(
        bad.is_empty(),
        format!(
            "{n} isomorphism witnesses for e < i, 3 <= i <= 5, none undecided {}",
            bad.join("; ")
        ),
    )
}

fn c4(all: &[(&'static str, QuotientRing)]) -> Line {
    let mut bad = Vec::new();
    let mut n = 0;
    for (stem, q) in edim2(all).filter(|(_, q)| kind(q) != RingKind::ZeroDimCi) {
        n += 1;
        match dual_iso_check(q) {
            Ok(d) if d.pass => {}
            other => bad.push(format!("{stem}: {other:?}")),
        }
    }
    line(
        bad.is_empty(),
        format!("m* maps onto syz1(m) on {n} entries {}", bad.join("; ")),
    )
}

fn holds(stem: &str, j: ParameterIdeal, all: &[(&'static str, QuotientRing)]) -> Option<bool> {
    let q = &all.iter().find(|(s, _)| *s == stem).unwrap().1;
    fitting_criterion_check(q, j)
        .ok()
        .filter(|c| c.pass)
        .map(|c| c.holds())
}

fn c5(all: &[(&'static str, QuotientRing)]) -> Line {
    let n = ParameterIdeal::maximal();
    let cubic = holds("02_cubic_monomials", n, all);
    let ci = holds("11_ci_x2_y2", n, all);
    let chain = [
        ParameterIdeal::new(2, 2).unwrap(),
        ParameterIdeal::new(1, 2).unwrap(),
        n,
    ];
    let mut pairs = 0;
    let mut monotone = true;
    for stem in ["02_cubic_monomials", "09_cube_of_max"] {
        let hs: Vec<Option<bool>> = chain.iter().map(|&j| holds(stem, j, all)).collect();
        for w in hs.windows(2) {
            if let (Some(a), Some(b)) = (w[0], w[1]) {
                pairs += 1;
                monotone &= !a || b;
            }
        }
    }
    let pass = cubic == Some(true) && ci == Some(false) && pairs >= 2 && monotone;
    line(pass, format!("(x^3,xy^2,y^3) with J=n: {cubic:?}; (x^2,y^2) with J=n: {ci:?}; {pairs} nested pairs monotone: {monotone}"))
}

fn truth(stem: &str) -> (bool, usize, &'static str) {
    let t = TRUTH.iter().find(|t| t.0 == stem).unwrap();
    (t.1, t.2, t.3)
}

fn c6(all: &[(&'static str, QuotientRing)]) -> Line {
    let mut bad = Vec::new();
    for (stem, q) in edim2(all) {
        let (dec, a, _) = truth(stem);
        let d = decompose_m(q, SEED).unwrap();
        if d.decomposable != Some(dec) {
            bad.push(format!("{stem}: label {:?}", d.decomposable));
            continue;
        }
        if dec {
            let p = prop41_case(q, SEED).unwrap();
            let iso_ok = p.iso.as_deref().is_none_or(|v| v == "YES")
                && (q.dim().unwrap() != 0 || p.iso.is_some());
            if p.a != a || !p.pass || !iso_ok || d.iso.as_deref().is_some_and(|v| v != "YES") {
                bad.push(format!(
                    "{stem}: a = {}, pass {}, iso {:?}",
                    p.a, p.pass, p.iso
                ));
            }
        }
    }
    line(
        bad.is_empty(),
        format!(
            "decomposability of m and syz2(k) = m + k^a on {} entries {}",
            TRUTH.len(),
            bad.join("; ")
        ),
    )
}

fn c7(all: &[(&'static str, QuotientRing)]) -> Line {
    let mut bad = Vec::new();
    let mut n = 0;
    for (stem, q) in edim2(all).filter(|(s, _)| !truth(s).0) {
        n += 1;
        let a = compute_a(q).unwrap();
        let s = split_syz2(q, SEED).unwrap();
        let artinian = q.dim().unwrap() == 0;
        let eq5 = !artinian || s.iso_eq5.as_deref() == Some("YES");
        let ok = a.agree
            && a.a == truth(stem).1
            && s.mu_n == s.expected_mu_n
            && s.k_summands_n == 0
            && s.n_prime_killed
            && eq5
            && s.pass;
        if !ok {
            bad.push(format!("{stem}: {a:?} {s:?}"));
        }
    }
    line(
        bad.is_empty(),
        format!(
            "a, mu(N) = mu + 1 - a, N without k-summands, m N = m/soc on {n} entries {}",
            bad.join("; ")
        ),
    )
}

fn c8(all: &[(&'static str, QuotientRing)]) -> Line {
    let mut bad = Vec::new();
    let mut n = 0;
    for (stem, q) in edim2(all).filter(|(_, q)| kind(q) != RingKind::ZeroDimCi) {
        n += 1;
        let mu = q.classify().unwrap().mu;
        let c = verify_cor52(q, SEED).unwrap();
        if !c.pass || c.observed_mu != 3 * mu - 1 || c.iso.as_deref().is_some_and(|v| v != "YES") {
            bad.push(format!("{stem}: {c:?}"));
        }
    }
    line(
        bad.is_empty(),
        format!(
            "mu(syz3) = 3 mu - 1 and its k-summands on {n} entries {}",
            bad.join("; ")
        ),
    )
}

fn c9(all: &[(&'static str, QuotientRing)]) -> Line {
    let mut bad = Vec::new();
    for (stem, q) in edim2(all) {
        let t = thm54_classify(q, SEED).unwrap();
        let (m_dec, _, row) = truth(stem);
        let mut ok = t.table_row() == row && t.cross_check && t.all_i == t.verdicts[2];
        if let Ok(inv) = thm53_inventory(q, 6, SEED) {
            let weight: Vec<usize> = inv
                .atoms
                .iter()
                .map(|a| if a == "m" && m_dec { 2 } else { 1 })
                .collect();
            for l in inv.levels.iter().filter(|l| l.index >= 3) {
                let summands: usize = l.counts.iter().zip(&weight).map(|(c, w)| c * w).sum();
                let observed = if summands > 1 {
                    Verdict::Decomposable
                } else {
                    Verdict::Indecomposable
                };
                ok &= l.pass
                    && (t.all_i == Verdict::Decomposable) == (observed == Verdict::Decomposable);
            }
        }
        if !ok {
            bad.push(format!("{stem}: {} vs {row}", t.table_row()));
        }
    }
    line(
        bad.is_empty(),
        format!(
            "indecomposability table for syz1..syz3 and every syz_d, d >= 3 {}",
            bad.join("; ")
        ),
    )
}

fn c10(all: &[(&'static str, QuotientRing)]) -> Line {
    let mut bad = Vec::new();
    for (stem, q) in all {
        let k = koszul_homology(q).unwrap();
        let c = q.classify().unwrap();
        let shape = q.nvars() != 2 || c.kind == RingKind::ZeroDimCi || k.h == vec![c.mu, c.mu - 1];
        if !k.agree || !shape {
            bad.push(format!("{stem}: h {:?}, S-Betti {:?}", k.h, k.s_betti));
        }
    }
    line(
        bad.is_empty(),
        format!(
            "Koszul homology equals S-Betti numbers on {} entries {}",
            all.len(),
            bad.join("; ")
        ),
    )
}

fn c11() -> Line {
    let bin = env!("CARGO_BIN_EXE_golodsyz");
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let corpus: Vec<String> = ENTRIES
        .iter()
        .map(|e| {
            dir.join("../core/corpus")
                .join(e.file)
                .to_string_lossy()
                .into_owned()
        })
        .collect();
    let mut bad = Vec::new();
    for (e, path) in ENTRIES.iter().zip(&corpus) {
        let o = Command::new(bin).args(["print", path]).output().unwrap();
        let back = golodsyz::parse_session(&String::from_utf8_lossy(&o.stdout));
        if back.ok() != e.session().ok() {
            bad.push(format!("{} does not round-trip", e.file));
        }
    }
    let golden = dir.join("tests/golden/verify_all_cubic.json");
    let o = Command::new(bin)
        .args(["--json", "verify", "--check", "all", &corpus[1]])
        .output()
        .unwrap();
    if std::fs::read(&golden).ok() != Some(o.stdout) {
        bad.push("JSON differs from the golden file".into());
    }
    let t = Instant::now();
    let o = Command::new(bin)
        .arg("verify")
        .arg("--check")
        .arg("all")
        .args(&corpus)
        .output()
        .unwrap();
    let el = t.elapsed();
    if o.status.code() != Some(0) {
        bad.push(format!(
            "verify --check all exited with {:?}",
            o.status.code()
        ));
    }
    let pass = bad.is_empty() && el < Duration::from_secs(300);
    line(
        pass,
        format!(
            "print round-trip, golden JSON, verify --check all on the corpus in {:.1}s {}",
            el.as_secs_f64(),
            bad.join("; ")
        ),
    )
}

#[test]
fn acceptance() {
    let all = entries();
    let lines = [
        c1(&all),
        c2(&all),
        c3(&all),
        c4(&all),
        c5(&all),
        c6(&all),
        c7(&all),
        c8(&all),
        c9(&all),
        c10(&all),
        c11(),
    ];
    println!();
    for (i, l) in lines.iter().enumerate() {
        println!(
            "criterion {:>2}: {}  {}",
            i + 1,
            if l.pass { "PASS" } else { "FAIL" },
            l.detail.trim_end()
        );
    }
    let failed: Vec<usize> = lines
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.pass)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
