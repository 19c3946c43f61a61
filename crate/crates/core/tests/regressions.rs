use anticomplete::brute::{brute_force_pair, BruteMode};
use anticomplete::generate::gnp;
use anticomplete::graph::Caps;
use anticomplete::pipeline::{find_pair, PairMode, PipelineConfig};
use anticomplete::tournament::{
    search_complete_pair, search_cyclic_triangle_pair, verify_tournament_pair, Tournament,
};

#[test]
fn random_tournament_certificates_verify() {
    let caps = Caps::default();
    let mut found = 0;
    for seed in 0..30 {
        let t = Tournament::random(12, seed);
        for c in 1..=2 {
            if let Some(cert) = search_complete_pair(&t, c, &caps).unwrap() {
                assert!(
                    verify_tournament_pair(&t, &cert, &caps).passed,
                    "seed {seed} c {c}"
                );
                found += 1;
            }
        }
        let t = Tournament::random(13, 100 + seed);
        if let Some(cert) = search_cyclic_triangle_pair(&t, 1, &caps).unwrap() {
            assert!(
                verify_tournament_pair(&t, &cert, &caps).passed,
                "seed {seed}"
            );
            assert_eq!(cert.chi_a, 2);
            found += 1;
        }
    }
    assert!(found > 0);
}

#[test]
fn pipeline_never_beats_the_oracle() {
    let caps = Caps::default();
    for seed in 0..200u64 {
        let n = 5 + (seed % 8) as usize;
        let g = gnp(n, 0.2 + 0.1 * (seed % 5) as f64, 9000 + seed);
        for (mode, brute) in [
            (PairMode::Chi, BruteMode::Chi),
            (PairMode::Mindeg, BruteMode::Mindeg),
        ] {
            let config = PipelineConfig {
                s: 8,
                ..PipelineConfig::new(1, 2, 1)
            };
            let Ok(outcome) = find_pair(&g, mode, &config, &caps) else {
                continue;
            };
            if outcome.certificate().is_some() {
                assert!(
                    brute_force_pair(&g, 1, brute, &caps).unwrap().is_some(),
                    "seed {seed}"
                );
            }
        }
    }
}
