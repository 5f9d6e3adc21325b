use std::f64::consts::PI;

use orthoqkd::harness::{simulate, SimulationConfig};
use orthoqkd::EnsembleKind;

fn config(attack: &str, ensemble: EnsembleKind, rounds: u64, seed: u64) -> SimulationConfig {
    SimulationConfig {
        rounds,
        seed,
        attack_name: attack.into(),
        ensemble,
        ..SimulationConfig::default()
    }
}

#[test]
fn empirical_information_tracks_analytic() {
    let nonmax = EnsembleKind::NonMax {
        alpha: PI / 6.0,
        beta: PI / 3.0,
    };
    let cases = [
        ("none", EnsembleKind::Cabello, 0.0),
        ("double-cnot", EnsembleKind::Cabello, 1.5),
        ("intercept-resend", EnsembleKind::Cabello, 1.5),
        ("double-cnot", nonmax, 1.0),
    ];
    for (attack, ensemble, analytic) in cases {
        let r = simulate(&config(attack, ensemble, 100_000, 9)).unwrap();
        assert!(
            (r.analytic_mutual_information_bits - analytic).abs() < 1e-12,
            "{attack}"
        );
        let gap = (r.empirical_mutual_information_bits - r.analytic_mutual_information_bits).abs();
        assert!(gap <= 0.05, "{attack} on {ensemble}: gap {gap}");
        let violations = r.knowledge_soundness_violations as f64 / 100_000.0;
        if attack == "intercept-resend" {
            // wrong half of the uniform guess on symbols 1 and 2
            assert!((violations - 0.25).abs() <= 0.0042, "{violations}");
        } else {
            assert_eq!(violations, 0.0, "{attack}");
        }
    }
}

#[test]
fn result_does_not_depend_on_thread_count() {
    let cfg = config("intercept-resend", EnsembleKind::Cabello, 20_000, 77);
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let mut r = pool.install(|| simulate(&cfg)).unwrap();
        r.elapsed_ms = 0.0;
        r
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one.to_json().unwrap(), run(3).to_json().unwrap());
}

#[test]
fn nonmax_run_is_undetected_and_fully_read() {
    let r = simulate(&config(
        "double-cnot",
        EnsembleKind::NonMax {
            alpha: 0.3,
            beta: 1.1,
        },
        5_000,
        1,
    ))
    .unwrap();
    assert_eq!(r.per_symbol_counts.len(), 2);
    assert_eq!(r.bob_error_rate, 0.0);
    assert_eq!(r.eve_exact_fraction, 1.0);
    assert!((r.mean_bob_fidelity - 1.0).abs() < 1e-12);
    assert_eq!(r.efficiency, 0.5);
}

#[test]
fn no_attack_leaves_eve_blind() {
    let r = simulate(&config("none", EnsembleKind::Cabello, 4_000, 2)).unwrap();
    assert_eq!(r.eve_exact_fraction, 0.0);
    assert_eq!(r.eve_partition_fraction, 0.0);
    assert_eq!(r.bob_error_rate, 0.0);
    assert_eq!(r.per_symbol_counts.iter().sum::<u64>(), 4_000);
}
