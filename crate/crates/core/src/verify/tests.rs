use std::sync::OnceLock;

use super::*;
use crate::linrep::{rat, ratio, LearnConfig, LinearRepresentation};
use crate::reference::a0_reference_representation;

fn cert() -> &'static Certified {
    static CERT: OnceLock<Certified> = OnceLock::new();
    CERT.get_or_init(|| {
        Certified::learn(
            &BruteForce::new(1),
            LearnConfig::default(),
            DEFAULT_CERTIFY_THROUGH,
        )
        .expect("learn and certify c")
    })
}

fn assert_passes(r: &VerificationReport) {
    assert!(r.passed(), "{}", r.summary());
}

#[test]
fn derived_sequences() {
    let c = cert();
    assert_eq!(c.c.rank(), 10);
    assert_eq!(c.a0.rep.rank(), 7);
    assert!(c.a0.rep.equivalent(&a0_reference_representation()));
    assert_eq!(c.a0.dfao.state_count(), 8);
    // a3 takes half-integer values
    assert!(c.a3.dfao.reachable_outputs().contains(&ratio(-1, 2)));
}

#[test]
fn certification_rejects_a_wrong_representation() {
    let wrong = cert().c.scaled(&rat(2));
    let e = Certified::from_rep(wrong, &BruteForce::new(1), 30).unwrap_err();
    assert!(matches!(e, crate::Error::Uncertified { n: 0, .. }));
}

#[test]
fn proposition1_with_threshold_note() {
    let r = check_proposition1(&cert().evaluator(), 40).unwrap();
    assert_passes(&r);
    let minus7 = r.claim("prop1.2^k-7").unwrap();
    assert_eq!(minus7.detected_threshold.as_deref(), Some("k >= 5"));
    assert!(minus7.notes[0].contains("k = 3 (c(1) = 2, formula 4)"));
    assert!(minus7.notes[0].contains("k = 4 (c(9) = 8, formula 14)"));
    for id in ["prop1.2^k", "prop1.12*2^k-3"] {
        assert_eq!(
            r.claim(id).unwrap().checked,
            if id == "prop1.2^k" { 39 } else { 41 }
        );
    }
}

#[test]
fn proposition1_by_brute_force_on_small_k() {
    let r = check_proposition1(&Evaluator::brute(1), 8).unwrap();
    assert_passes(&r);
}

#[test]
fn recurrences_and_automata() {
    let c = cert();
    let r = check_recurrences(&c.evaluator(), c, 4000).unwrap();
    assert_passes(&r);
    assert!(r.claim("rec.a0-bound").unwrap().notes[0].contains("holds for all i >= 3"));
    let a = check_automata(c, 1 << 14);
    assert_passes(&a);
    let brute = check_recurrences(&Evaluator::brute(1), c, 60).unwrap();
    assert_passes(&brute);
}

#[test]
fn bounds_and_characterization() {
    let ev = cert().evaluator();
    let up = check_upper_bound(&ev, 5000, 40).unwrap();
    assert_passes(&up);
    assert!(up.claim("upper.limsup-witness").unwrap().notes[0].contains("n = [4096]"));
    assert_passes(&check_lower_bound(&ev, 5000).unwrap());
    let j = check_j_characterization(&ev, 5000).unwrap();
    assert_passes(&j);
    assert!(j.claim("jchar.liminf-witness").unwrap().notes[0].contains("n = [1026]"));
}

#[test]
fn lemma6_closed_forms() {
    let c = cert();
    let r = check_lemma6(&c.evaluator(), &c.c, 6).unwrap();
    assert_passes(&r);
    let iv = family_forms()
        .into_iter()
        .next()
        .unwrap()
        .fit(&c.c, 6)
        .unwrap();
    assert_eq!(iv.coefficients, vec![ratio(8, 3), ratio(4, 3), rat(-4)]);
}

#[test]
fn powers_of_two_word() {
    assert_passes(&check_powers2_word(8).unwrap());
}

#[test]
fn wrong_claims_fail_with_counterexamples() {
    // a representation of 2n - 4 violates the strengthened upper bound
    let id = LinearRepresentation::identity_sequence();
    let bad = LinearRepresentation::linear_combine(&[
        (rat(2), &id),
        (rat(-4), &LinearRepresentation::constant(rat(1))),
    ])
    .unwrap();
    let r = check_upper_bound(&Evaluator::Rep(bad), 100, 5).unwrap();
    let strict = r.claim("upper.strict").unwrap();
    assert!(!strict.passed());
    assert_eq!(strict.counterexamples[0].at, "n = 12");
    assert!(r.claim("upper.bound").unwrap().passed());
    let p = check_proposition1(&Evaluator::Rep(LinearRepresentation::zero()), 10).unwrap();
    assert!(p
        .claims
        .iter()
        .all(|c| !c.passed() && !c.counterexamples.is_empty()));
}

#[test]
fn suites_by_name() {
    assert_eq!("jchar".parse::<Suite>().unwrap(), Suite::Jchar);
    assert_eq!(Suite::Lemma6.to_string(), "lemma6");
    assert!("bogus".parse::<Suite>().is_err());
    let cfg = SuiteConfig {
        n_max: 400,
        k_max: 12,
        param_max: 5,
        automata_max: 1000,
        powers2_exp: 6,
    };
    let c = cert();
    let all = run_suite(Suite::All, &c.evaluator(), c, &cfg).unwrap();
    assert_passes(&all);
    assert_eq!(all.suite, "all");
    let ids: Vec<&str> = all.claims.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids[0], "prop1.2^k");
    assert_eq!(*ids.last().unwrap(), "powers2.growth");
}
