use golodsyz::koszul::golod_series;
use golodsyz::resolver::truncation_oracle;
use golodsyz::{corpus, EngineConfig, ModuleKind, PolyRing, QuotientRing, Resolver};
use proptest::prelude::*;

fn corpus_ring(stem: &str) -> QuotientRing {
    corpus::find(stem).unwrap().session().unwrap().quotient("I", EngineConfig::default()).unwrap()
}

#[test]
fn square_of_maximal_ideal() {
    let q = corpus_ring("01_square_of_max");
    let res = Resolver::new(&q).unwrap().resolve(ModuleKind::K, 8).unwrap();
    assert_eq!(res.betti, vec![1, 2, 4, 8, 16, 32, 64, 128, 256]);
}

#[test]
fn every_corpus_entry_resolves_minimally() {
    for e in corpus::ENTRIES {
        let q = e.session().unwrap().quotient("I", EngineConfig::default()).unwrap();
        let r = Resolver::new(&q).unwrap();
        let res = r.resolve(ModuleKind::K, 4).unwrap();
        assert!(r.is_minimal(&res), "{}", e.file);
        assert!(r.is_complex(&res).unwrap(), "{}", e.file);
    }
}

#[test]
fn golod_series_for_cube() {
    let q = corpus_ring("09_cube_of_max");
    let res = Resolver::new(&q).unwrap().resolve(ModuleKind::K, 6).unwrap();
    let series: Vec<usize> = golod_series(&[4, 3], 2, 6).into_iter().map(|c| c as usize).collect();
    assert_eq!(series, res.betti);
}

/// Monomial ideals containing `x^d` and `y^d`, plus a few mixed monomials.
fn artinian_monomial() -> impl Strategy<Value = Vec<[u32; 2]>> {
    (2u32..4, proptest::collection::vec((1u32..3, 1u32..3), 0..3)).prop_map(|(d, mixed)| {
        let mut ms = vec![[d, 0], [0, d]];
        ms.extend(mixed.into_iter().map(|(a, b)| [a, b]));
        ms
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resolver_matches_linear_algebra(ms in artinian_monomial()) {
        let ring = PolyRing::with_vars(101, 2).unwrap();
        let gens: Vec<_> = ms.iter().map(|m| ring.poly(&[(1, &m[..])])).collect();
        let q = QuotientRing::new(golodsyz::Ideal::new(std::sync::Arc::new(ring.clone()), gens.clone())).unwrap();
        let res = Resolver::new(&q).unwrap().resolve(ModuleKind::K, 4).unwrap();
        let oracle = truncation_oracle(&ring, &gens, ModuleKind::K, 4).unwrap();
        prop_assert_eq!(res.betti, oracle);
    }
}
