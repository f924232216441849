//! Command dispatch over one ideal of a session.

use serde_json::json;

use golodsyz::edim2::{
    build_l, compute_a, decompose_m, dual_iso_check, fitting_criterion_check, prop41_case,
    split_syz2, thm53_inventory, thm54_classify, FrameSearch, ParameterIdeal,
};
use golodsyz::koszul::{koszul_homology, verify_cor52, verify_recurrence};
use golodsyz::{
    EngineConfig, Error, ModuleKind, NamedIdeal, QuotientRing, Resolver, Result, RingKind,
    SessionSpec,
};

use crate::report::{CheckResult, Report, Status};

/// Iso witnesses for the Golod decomposition are built up to this index.
pub const ISO_UPTO: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Golod,
    Dual,
    Fitting,
    SocleCount,
    Thm54,
    All,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Golod => "golod",
            Check::Dual => "dual",
            Check::Fitting => "fitting",
            Check::SocleCount => "socle-count",
            Check::Thm54 => "thm54",
            Check::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Resolve { module: ModuleKind, length: usize },
    Betti { upto: usize },
    Decompose { syzygy: usize },
    Verify { check: Check, upto: usize },
    Classify,
    Inventory { upto: usize },
    Print,
}

impl Command {
    pub fn label(&self) -> String {
        match self {
            Command::Resolve { module, length } => {
                let m = if *module == ModuleKind::K { "k" } else { "m" };
                format!("resolve --module {m} --length {length}")
            }
            Command::Betti { upto } => format!("betti --upto {upto}"),
            Command::Decompose { syzygy } => format!("decompose --syzygy {syzygy}"),
            Command::Verify { check, upto } => {
                format!("verify --check {} --upto {upto}", check.name())
            }
            Command::Classify => "classify".into(),
            Command::Inventory { upto } => format!("inventory --upto {upto}"),
            Command::Print => "print".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub degree_cap: Option<u32>,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            degree_cap: None,
            seed: 1,
        }
    }
}

impl Options {
    fn config(&self) -> EngineConfig {
        self.degree_cap
            .map(EngineConfig::with_cap)
            .unwrap_or_default()
    }
}

/// Errors from preconditions become "not applicable"; anything else is an
/// engine error and fails the run.
fn guarded(check: &str, r: Result<Vec<CheckResult>>) -> Vec<CheckResult> {
    match r {
        Ok(v) => v,
        Err(Error::Unsupported(why)) => vec![CheckResult::new(check, Status::NotApplicable, why)],
        Err(e) => vec![CheckResult::new(check, Status::Error, e.to_string())],
    }
}

fn yes_or_none(v: &Option<String>) -> bool {
    v.as_deref().is_none_or(|s| s == "YES")
}

fn k_power(a: usize) -> String {
    match a {
        0 => String::new(),
        1 => " + k".into(),
        _ => format!(" + k^{a}"),
    }
}

fn golod_checks(q: &QuotientRing, upto: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = guarded(
        "koszul",
        (|| {
            let kd = koszul_homology(q)?;
            let class = q.classify()?;
            let golod_e2 =
                q.nvars() == 2 && !matches!(class.kind, RingKind::ZeroDimCi | RingKind::Regular);
            let shape_ok = !golod_e2 || kd.h == vec![class.mu, class.mu - 1];
            let w = format!("h = {:?}, S-Betti = {:?}", kd.h, kd.s_betti);
            Ok(vec![CheckResult::verdict(
                "koszul",
                kd.agree && shape_ok,
                w,
            )
            .with_numbers(json!({"h": kd.h, "s_betti": kd.s_betti}))])
        })(),
    );
    out.extend(guarded(
        "golod",
        (|| {
            let g = verify_recurrence(q, upto, ISO_UPTO.min(upto), seed)?;
            let isos: Vec<String> = g
                .indices
                .iter()
                .filter_map(|ix| ix.iso.as_ref().map(|c| format!("i={} {} ({})", c.index, c.verdict, c.method)))
                .collect();
            let mut w = format!("observed {:?} = predicted", g.observed);
            if !g.pass {
                w = format!("observed {:?}, predicted {:?}", g.observed, g.predicted);
            }
            if !isos.is_empty() {
                w.push_str(&format!("; isomorphisms {}", isos.join(", ")));
            }
            if g.conditional {
                w.push_str("; conditional on the Golod hypothesis");
            }
            let n = json!({"h": g.h, "observed": g.observed, "predicted": g.predicted, "series_agree": g.series_agree,
                "isomorphisms": g.indices.iter().filter_map(|ix| ix.iso.as_ref().map(|c| json!({"index": c.index, "verdict": c.verdict, "method": c.method}))).collect::<Vec<_>>()});
            Ok(vec![CheckResult::verdict("golod", g.pass, w).with_numbers(n)])
        })(),
    ));
    out
}

fn dual_check(q: &QuotientRing) -> Vec<CheckResult> {
    guarded(
        "dual",
        (|| {
            let d = dual_iso_check(q)?;
            let gens: Vec<String> = d
                .dual_gens
                .iter()
                .map(|g| format!("({}, {})", g[0], g[1]))
                .collect();
            let w = format!(
                "f -> (f(y), -f(x)) maps m* = <{}> onto syz1(m); dim {} = {}{}",
                gens.join(", "),
                d.dims.0,
                d.dims.1,
                if d.truncated { " mod n^12" } else { "" }
            );
            Ok(vec![CheckResult::verdict("dual", d.pass, w).with_numbers(
                json!({"dims": [d.dims.0, d.dims.1], "truncated": d.truncated}),
            )])
        })(),
    )
}

fn fitting_checks(q: &QuotientRing) -> Vec<CheckResult> {
    let chain = [
        ParameterIdeal { i: 2, j: 2 },
        ParameterIdeal { i: 1, j: 2 },
        ParameterIdeal::maximal(),
    ];
    let mut out = Vec::new();
    let mut held: Vec<Option<bool>> = Vec::new();
    for j in chain {
        let name = format!("fitting J={}", j.label());
        match fitting_criterion_check(q, j) {
            Ok(c) => {
                held.push(Some(c.holds()));
                let w = format!(
                    "restriction J*->I* zero: {}; a*Fitt2(I) in J: {} (a = {}, Fitt2 = ({}))",
                    c.restriction_zero,
                    c.fitting_contained,
                    c.gcd_factor,
                    c.fitt2.join(", ")
                );
                out.push(CheckResult::verdict(name, c.pass, w).with_numbers(json!({
                    "restriction_zero": c.restriction_zero, "fitting_contained": c.fitting_contained, "dual_swap": c.dual_swap})));
            }
            Err(e) => {
                held.push(None);
                out.extend(guarded(&name, Err(e)));
            }
        }
    }
    let pairs: Vec<(bool, bool)> = held
        .windows(2)
        .filter_map(|w| Some((w[0]?, w[1]?)))
        .collect();
    if pairs.is_empty() {
        out.push(CheckResult::new(
            "fitting-monotone",
            Status::NotApplicable,
            "no nested pair applies",
        ));
    } else {
        let ok = pairs.iter().all(|&(a, b)| !a || b);
        out.push(CheckResult::verdict(
            "fitting-monotone",
            ok,
            format!("{} nested pairs, holds(J) => holds(J')", pairs.len()),
        ));
    }
    out
}

fn socle_checks(q: &QuotientRing, seed: u64) -> Vec<CheckResult> {
    let mut out = guarded(
        "socle-count",
        (|| {
            let d = decompose_m(q, seed)?;
            match d.decomposable {
                Some(true) => {
                    let p = prop41_case(q, seed)?;
                    let w = format!(
                        "syz2(k) = m{} ({}); mu {} / {}, k-summands {} / {}",
                        k_power(p.a),
                        p.case,
                        p.mu_syz2,
                        p.expected_mu,
                        p.k_syz2,
                        p.expected_k
                    );
                    Ok(vec![CheckResult::verdict("prop41", p.pass, w)
                        .with_numbers(json!({"a": p.a, "iso": p.iso}))])
                }
                Some(false) => {
                    let a = compute_a(q)?;
                    let ok = a.agree && a.ci_certificate.unwrap_or(true);
                    let mut w = format!("a = dim n(I:n)/nI = {} = k-summands of syz2(k)", a.a);
                    if !a.agree {
                        w = format!(
                            "a = {} but syz2(k) has {} k-summands",
                            a.a, a.k_summands_syz2
                        );
                    }
                    if a.ci_certificate == Some(true) {
                        w.push_str("; I:n = I + (det)");
                    }
                    let mut v = vec![CheckResult::verdict("socle-count", ok, w)
                        .with_numbers(json!({"a": a.a, "k_summands_syz2": a.k_summands_syz2, "ci_certificate": a.ci_certificate}))];
                    let s = split_syz2(q, seed)?;
                    let w = format!(
                        "N{}; mu(N) = {} (expected {}), k-summands(N) = {}, mN' = 0: {}, iso {}, eq5 {}",
                        k_power(s.a),
                        s.mu_n,
                        s.expected_mu_n,
                        s.k_summands_n,
                        s.n_prime_killed,
                        s.iso_sum.as_deref().unwrap_or("-"),
                        s.iso_eq5.as_deref().unwrap_or("-")
                    );
                    v.push(CheckResult::verdict("split-syz2", s.pass, w).with_numbers(json!({
                        "a": s.a, "mu_n": s.mu_n, "k_summands_n": s.k_summands_n, "columns": s.l.columns, "split": s.l.split})));
                    Ok(v)
                }
                None => Ok(vec![CheckResult::new(
                    "socle-count",
                    Status::Info,
                    format!("m undetermined: {}", d.reason),
                )]),
            }
        })(),
    );
    out.extend(guarded(
        "cor52",
        (|| {
            let c = verify_cor52(q, seed)?;
            let w = format!(
                "syz3(k) = m^{}{}: mu {} / {}, k-summands {} / {}",
                c.mu_i,
                k_power(c.mu_i - 1),
                c.observed_mu,
                c.expected_mu,
                c.observed_k,
                c.expected_k
            );
            Ok(vec![CheckResult::verdict(
                "cor52",
                c.pass && yes_or_none(&c.iso),
                w,
            )
            .with_numbers(
                json!({"mu": c.observed_mu, "k_summands": c.observed_k, "iso": c.iso}),
            )])
        })(),
    ));
    out
}

fn thm54_check(q: &QuotientRing, seed: u64) -> Vec<CheckResult> {
    guarded(
        "thm54",
        (|| {
            let t = thm54_classify(q, seed)?;
            let w = format!(
                "syz1..syz3: {} (I = indecomposable, D = decomposable); every i >= 3: {}",
                t.table_row(),
                t.all_i.short()
            );
            Ok(vec![CheckResult::verdict("thm54", t.cross_check, w).with_numbers(json!({
                "verdicts": t.verdicts, "all_i": t.all_i, "colon_equality": t.colon_equality, "k_syz2": t.k_syz2, "k_syz3": t.k_syz3}))])
        })(),
    )
}

fn inventory_check(q: &QuotientRing, upto: usize, seed: u64) -> Vec<CheckResult> {
    guarded(
        "inventory",
        (|| {
            let inv = thm53_inventory(q, upto, seed)?;
            let lines: Vec<String> = inv
                .levels
                .iter()
                .map(|l| {
                    let parts: Vec<String> = l
                        .counts
                        .iter()
                        .zip(&inv.atoms)
                        .filter(|(c, _)| **c > 0)
                        .map(|(c, a)| {
                            if *c == 1 {
                                a.clone()
                            } else {
                                format!("{a}^{c}")
                            }
                        })
                        .collect();
                    format!("syz{} = {}", l.index, parts.join(" + "))
                })
                .collect();
            Ok(vec![CheckResult::verdict("inventory", inv.pass, lines.join("; ")).with_numbers(json!({
                "atoms": inv.atoms,
                "levels": inv.levels.iter().map(|l| json!({"index": l.index, "counts": l.counts, "mu": l.observed_mu, "k_summands": l.observed_k})).collect::<Vec<_>>()}))])
        })(),
    )
}

fn decompose_checks(q: &QuotientRing, i: usize, seed: u64) -> Vec<CheckResult> {
    let check = format!("decompose syz{i}");
    match i {
        0 => vec![CheckResult::new(
            check,
            Status::Info,
            "syz0(k) = k is indecomposable",
        )],
        1 => guarded(
            &check,
            (|| {
                let d = decompose_m(q, seed)?;
                let r = match (d.decomposable, &d.search) {
                    (Some(true), FrameSearch::Found { frame }) => {
                        let ring = q.ring();
                        let shape = d.shape.as_ref().expect("decomposable");
                        let w = format!(
                            "m = R/({}) + R/({}) with x' = {}, y' = {}; I = {} in these coordinates",
                            d.ann_x.join(", "),
                            d.ann_y.join(", "),
                            ring.show(&frame.x),
                            ring.show(&frame.y),
                            shape.label()
                        );
                        CheckResult::verdict(
                            check.clone(),
                            shape.verified && yes_or_none(&d.iso),
                            w,
                        )
                    }
                    (Some(_), _) => CheckResult::new(
                        check.clone(),
                        Status::Pass,
                        format!("m indecomposable: {}", d.reason),
                    ),
                    (None, _) => CheckResult::new(
                        check.clone(),
                        Status::Info,
                        format!("undetermined: {}", d.reason),
                    ),
                };
                Ok(vec![r.with_numbers(
                    json!({"decomposable": d.decomposable, "iso": d.iso}),
                )])
            })(),
        ),
        2 => {
            let mut v = socle_checks(q, seed);
            v.retain(|r| r.check != "cor52");
            v
        }
        _ => {
            let mut v = thm54_check(q, seed);
            v.extend(inventory_check(q, i, seed));
            v
        }
    }
}

fn classify_checks(q: &QuotientRing, seed: u64) -> Vec<CheckResult> {
    let mut out = guarded(
        "classify",
        (|| {
            let c = q.classify()?;
            let depth = c.depth.map_or("?".to_string(), |d| d.to_string());
            let w = format!(
                "{}: e = {}, dim = {}, depth = {}, mu(I) = {}, socle dim = {}, golod = {}",
                c.kind.label(),
                c.embedding_dim,
                c.dim,
                depth,
                c.mu,
                c.socle_dim,
                c.golod.map_or("undecided".to_string(), |g| g.to_string())
            );
            Ok(vec![CheckResult::new("classify", Status::Info, w)
                .with_numbers(
                    serde_json::to_value(c).expect("serializable"),
                )])
        })(),
    );
    if q.nvars() == 2 {
        out.extend(guarded(
            "m",
            (|| {
                let d = decompose_m(q, seed)?;
                let w = match d.decomposable {
                    Some(true) => format!(
                        "decomposable, shape {}",
                        d.shape.as_ref().map(|s| s.label()).unwrap_or_default()
                    ),
                    Some(false) => format!("indecomposable ({})", d.reason),
                    None => format!("undetermined ({})", d.reason),
                };
                Ok(vec![CheckResult::new("m", Status::Info, w)])
            })(),
        ));
        out.extend(guarded(
            "L",
            (|| {
                let d = decompose_m(q, seed)?;
                if d.decomposable != Some(false) {
                    return Err(Error::unsupported("m is not indecomposable"));
                }
                let l = build_l(q)?;
                let cols: Vec<String> = l
                    .columns
                    .iter()
                    .map(|c| format!("({}, {})", c[0], c[1]))
                    .collect();
                let w = format!("columns {} split after {}", cols.join(" "), l.split);
                Ok(vec![CheckResult::verdict("L", l.certified(), w)])
            })(),
        ));
        out.extend(thm54_check(q, seed));
    }
    out
}

fn resolve_checks(q: &QuotientRing, module: ModuleKind, length: usize) -> Vec<CheckResult> {
    guarded(
        "resolve",
        (|| {
            let e = Resolver::new(q)?;
            let res = e.resolve(module, length)?;
            let minimal = e.is_minimal(&res);
            let complex = e.is_complex(&res)?;
            let w = format!("minimal: {minimal}, d*d = 0: {complex}");
            Ok(vec![CheckResult::verdict("resolve", minimal && complex, w)
                .with_numbers(json!({"betti": res.betti}))])
        })(),
    )
}

fn betti_checks(q: &QuotientRing, upto: usize) -> Vec<CheckResult> {
    guarded(
        "betti",
        (|| match verify_recurrence(q, upto, 0, 0) {
            Ok(g) => {
                let w = if g.pass {
                    "equal to the Golod prediction".to_string()
                } else {
                    format!("Golod prediction {:?}", g.predicted)
                };
                Ok(vec![CheckResult::verdict("betti", g.pass, w).with_numbers(
                    json!({"betti": g.observed, "predicted": g.predicted}),
                )])
            }
            Err(Error::Unsupported(why)) => {
                let res = Resolver::new(q)?.resolve(ModuleKind::K, upto)?;
                Ok(vec![CheckResult::new(
                    "betti",
                    Status::Info,
                    format!("no Golod prediction: {why}"),
                )
                .with_numbers(json!({"betti": res.betti}))])
            }
            Err(e) => Err(e),
        })(),
    )
}

pub fn verify_checks(q: &QuotientRing, check: Check, upto: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let all = check == Check::All;
    if all || check == Check::Golod {
        out.extend(golod_checks(q, upto, seed));
    }
    if all || check == Check::Dual {
        out.extend(dual_check(q));
    }
    if all || check == Check::Fitting {
        out.extend(fitting_checks(q));
    }
    if all || check == Check::SocleCount {
        out.extend(socle_checks(q, seed));
    }
    if all || check == Check::Thm54 {
        out.extend(thm54_check(q, seed));
        out.extend(inventory_check(q, upto, seed));
    }
    out
}

pub fn ring_label(spec: &SessionSpec) -> String {
    format!("F_{}[{}]", spec.p, spec.vars.join(","))
}

/// Run one command on one ideal of the session.
pub fn run(spec: &SessionSpec, ideal: &NamedIdeal, cmd: &Command, opts: &Options) -> Report {
    let header = |results| Report {
        ring: ring_label(spec),
        ideal: format!("{} = {}", ideal.name, spec.show_ideal(ideal)),
        command: cmd.label(),
        results,
    };
    if *cmd == Command::Print {
        return header(vec![CheckResult::new(
            "print",
            Status::Info,
            spec.print().trim_end(),
        )]);
    }
    let q = match spec.quotient(&ideal.name, opts.config()) {
        Ok(q) => q,
        Err(e) => return header(vec![CheckResult::new("ring", Status::Error, e.to_string())]),
    };
    let seed = opts.seed;
    let results = match *cmd {
        Command::Resolve { module, length } => resolve_checks(&q, module, length),
        Command::Betti { upto } => betti_checks(&q, upto),
        Command::Decompose { syzygy } => decompose_checks(&q, syzygy, seed),
        Command::Verify { check, upto } => verify_checks(&q, check, upto, seed),
        Command::Classify => classify_checks(&q, seed),
        Command::Inventory { upto } => inventory_check(&q, upto, seed),
        Command::Print => unreachable!(),
    };
    header(results)
}

/// Every ideal of the session, or only `only` when given.
pub fn run_session(
    spec: &SessionSpec,
    only: Option<&str>,
    cmd: &Command,
    opts: &Options,
) -> Result<Vec<Report>> {
    let ideals: Vec<&NamedIdeal> = match only {
        Some(name) => vec![spec
            .find(name)
            .ok_or_else(|| Error::invalid(format!("no ideal named {name}")))?],
        None => spec.ideals.iter().collect(),
    };
    if *cmd == Command::Print {
        let sub = SessionSpec {
            ideals: ideals.into_iter().cloned().collect(),
            ..spec.clone()
        };
        return Ok(vec![run(&sub, &sub.ideals[0], cmd, opts)]);
    }
    Ok(ideals
        .into_iter()
        .map(|i| run(spec, i, cmd, opts))
        .collect())
}
