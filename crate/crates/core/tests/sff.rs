use gdual_core::linalg::rank_exact;
use gdual_core::sff::*;
use gdual_core::MatrixQ;

const SEED_Q_JSON: &str = include_str!("../data/seed_q.json");

#[derive(serde::Deserialize)]
struct Fixture {
    version: u32,
    seed: u64,
    max_tries: u64,
    q: Vec<Vec<String>>,
}

#[test]
fn seed_q_is_frozen() {
    let f: Fixture = serde_json::from_str(SEED_Q_JSON).unwrap();
    assert_eq!(f.version, 1);
    let q = seed_q_search(f.seed, f.max_tries).unwrap();
    assert_eq!(q, MatrixQ::from_strings(&f.q).unwrap());
    assert_eq!(rank_exact(&q), 9);
    assert!(q.is_symmetric());
}

#[test]
fn lemma_ranks() {
    for n in 9..=21 {
        let cert = certify_lemma(n, 0).unwrap();
        assert_eq!(cert.rank, 3 * (n - 3), "n={n}");
        assert!(cert.verified);
        assert!(check_star_star(&cert.blocks).unwrap());
    }
}

#[test]
fn stored_witness_ranks() {
    for (n, r) in [(9, 18), (10, 21), (11, 24)] {
        let w = paper_witness(n).unwrap();
        assert_eq!(rank_exact(&assemble_star(&w)), r);
        assert!(check_star_star(&w).unwrap());
    }
}

#[test]
fn certificate_round_trip() {
    let cert = certify_lemma(13, 0).unwrap();
    let text = serde_json::to_string(&cert.to_json()).unwrap();
    let back: CertificateJson = serde_json::from_str(&text).unwrap();
    assert_eq!(Certificate::from_json(&back).unwrap(), cert);
}

#[test]
fn segre_formats() {
    for (k, expect_witness) in [
        ((1, 1, 1), false),
        ((1, 1, 3), false),
        ((1, 2, 2), false),
        ((2, 2, 2), true),
        ((2, 2, 3), true),
    ] {
        let out = segre_witness(k.0, k.1, k.2, 0, DEFAULT_Q_TRIES).unwrap();
        match out {
            SegreOutcome::Witness { rank, blocks, .. } => {
                assert!(expect_witness, "{k:?}");
                assert_eq!(rank, blocks.format().iter().sum::<usize>());
            }
            SegreOutcome::Impossible { max_rank, size } => {
                assert!(!expect_witness, "{k:?}");
                assert!(max_rank < size);
            }
            SegreOutcome::Indeterminate { .. } => panic!("{k:?} indeterminate"),
        }
    }
}
