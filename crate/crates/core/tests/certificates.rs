use brauer_core::certify::input::{GoodredInput, TateInput};
use brauer_core::certify::{audit, derive_conclusion, goodred, noncyclic, run, tate, Pipeline, RunOptions};
use proptest::prelude::*;

#[test]
fn tampering_is_detected() {
    let c = noncyclic::certify(&noncyclic::example_input(31), &RunOptions::default());
    let v = c.to_json();
    audit(&v).unwrap();

    let mut flipped = v.clone();
    let checks = flipped["checks"].as_array_mut().unwrap();
    let i = checks.iter().position(|ch| ch["required"] == true).unwrap();
    checks[i]["status"] = "FAIL".into();
    assert_eq!(derive_conclusion(&flipped), None);
    assert!(audit(&flipped).is_err());

    let mut uncited = v.clone();
    uncited["theorem_citations"] = serde_json::json!([]);
    assert!(audit(&uncited).is_err());

    let mut restamped = v;
    restamped["residue_convention"] = "other".into();
    assert!(audit(&restamped).is_err());
}

#[test]
fn fingerprint_tracks_input() {
    let a = noncyclic::certify(&noncyclic::example_input(43), &RunOptions::default());
    let b = noncyclic::certify(&noncyclic::example_input(61), &RunOptions::default());
    assert_ne!(a.input_fingerprint, b.input_fingerprint);
    // field order in the TOML does not matter
    let x = run(Pipeline::Tate, "p = 5\na = 1\nm = 3\n", &RunOptions::default()).unwrap();
    let y = run(Pipeline::Tate, "m = 3\na = 1\np = 5\n", &RunOptions::default()).unwrap();
    assert_eq!(x.canonical(), y.canonical());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn goodred_certificates_audit(seed in any::<u64>(), pi in 0usize..3, n in 1u64..7) {
        let p = [5u64, 7, 11][pi];
        prop_assume!(n % p != 0);
        let opts = RunOptions { seed, ..Default::default() };
        let c = goodred::certify(&GoodredInput { p, n, cubic: None, origin: None }, &opts);
        prop_assert_eq!(c.exit_code(), 0);
        prop_assert!(audit(&c.to_json()).is_ok());
        let again = goodred::certify(&GoodredInput { p, n, cubic: None, origin: None }, &opts);
        prop_assert_eq!(c.canonical(), again.canonical());
    }

    #[test]
    fn tate_conclusions_rederive(p in prop::sample::select(vec![3u64, 5, 7, 11]), a in 1u64..4, m in 1u64..40) {
        let c = tate::certify(&TateInput { p, a, m, precision: 8 }, &RunOptions::default());
        prop_assert!(c.conclusion.is_some() || c.failure.is_some());
        prop_assert!(audit(&c.to_json()).is_ok());
    }
}
