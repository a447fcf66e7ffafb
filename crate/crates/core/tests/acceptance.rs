//! Acceptance suite: the release gate, one test per criterion, each
//! printing a PASS line on success (run with --nocapture to see them).
//! All checks are exact; sampled checks use the fixed default seed.

use ringlab_core::battery::built_in_corpus;
use ringlab_core::classify::{is_bezout, theorem1_equivalence, Flag, SuiteVerdict};
use ringlab_core::ec;
use ringlab_core::endo::{is_indecomposable, Indecomposability};
use ringlab_core::error::RingError;
use ringlab_core::matrix::{smith_normal_form, RingMatrix};
use ringlab_core::modules::{is_cyclic, lemma33_module, module_length};
use ringlab_core::ring::{Element, Ring, RingKind};
use ringlab_core::rng::SplitMix64;
use ringlab_core::spectrum::{
    ideal_closure, localization_kernel, max_spectrum, IdempotentGens, KernelRepr,
    SpectrumPoints,
};
use ringlab_core::suites::{verify_suite, SuiteId, ALL_SUITES, LG_ORDER_BOUND};

const SEED: u64 = 0;

fn corpus() -> Vec<Ring> {
    built_in_corpus()
}

fn require_all_pass(suite: &ringlab_core::suites::VerificationSuite, allow_skip: bool) {
    for outcome in &suite.outcomes {
        match outcome.verdict {
            SuiteVerdict::Pass => {}
            SuiteVerdict::Inconclusive if allow_skip => {}
            _ => panic!(
                "{} on {}: {} ({})",
                suite.id.name(),
                outcome.ring_spec,
                outcome.verdict,
                outcome.detail
            ),
        }
    }
}

/// T1: the equivalence holds on the entire corpus, with all-true
/// instances on every finite ring and EC(2) and the all-false instance Z.
#[test]
fn acceptance_t1_equivalence_suite() {
    let rings = corpus();
    let suite = verify_suite(SuiteId::T1, &rings, SEED);
    require_all_pass(&suite, false);
    for ring in &rings {
        let report = theorem1_equivalence(ring, SEED);
        let expected = match ring.kind() {
            RingKind::Integers => Flag::False,
            _ => Flag::True,
        };
        assert_eq!(report.clean, expected, "{ring}");
        assert_eq!(report.gelfand_disconnected, expected, "{ring}");
        assert_eq!(report.kernels_idempotent_generated, expected, "{ring}");
    }
    println!("PASS: T1 equivalence on all {} corpus rings", rings.len());
}

/// Clean decomposition: valid on every element of every finite corpus
/// ring; NotClean for 3 over Z; 1000 seeded EC(2) elements decompose.
#[test]
fn acceptance_clean_decomposition() {
    let mut elements = 0u64;
    for ring in corpus().iter().filter(|r| r.is_finite()) {
        for a in ring.elements().unwrap() {
            let d = ring.clean_decompose(&a).unwrap_or_else(|e| {
                panic!("{ring}: element {a} failed to decompose: {e}")
            });
            assert_eq!(ring.add(&d.unit, &d.idempotent), a, "{ring}: {a}");
            assert!(ring.is_idempotent(&d.idempotent), "{ring}: {a}");
            assert!(ring.is_unit(&d.unit).is_some(), "{ring}: {a}");
            elements += 1;
        }
    }
    let z = Ring::integers();
    assert!(matches!(
        z.clean_decompose(&Element::Int(3.into())),
        Err(RingError::NotClean { .. })
    ));
    let ecr = Ring::eventually_constant(2).unwrap();
    let mut rng = SplitMix64::derive(SEED, "acceptance_clean");
    for _ in 0..1000 {
        let a = ec::random_element(2, &mut rng);
        let d = ecr.clean_decompose(&a).unwrap();
        assert_eq!(ecr.add(&d.unit, &d.idempotent), a);
        assert!(ecr.is_idempotent(&d.idempotent));
        assert!(ecr.is_unit(&d.unit).is_some());
    }
    println!(
        "PASS: clean decomposition on {elements} finite elements, NotClean(3) over Z, \
         1000 EC(2) samples"
    );
}

/// 0_P idempotent generation: idempotent generators reported for every
/// maximal ideal of every finite corpus ring, re-closure exact; 100
/// sampled kernel members per EC(2) point family.
#[test]
fn acceptance_localization_kernels() {
    let mut kernels = 0u64;
    for ring in corpus().iter().filter(|r| r.is_finite()) {
        let points = match max_spectrum(ring).unwrap().points {
            SpectrumPoints::Finite(points) => points,
            _ => unreachable!(),
        };
        for point in points {
            let kernel = localization_kernel(ring, &point).unwrap();
            let elems = match &kernel.kernel {
                KernelRepr::Finite(ideal) => ideal.elements.clone(),
                _ => unreachable!(),
            };
            let gens = match kernel.idempotent_generators {
                Some(IdempotentGens::List(gens)) => gens,
                other => panic!("{ring}: no idempotent generators: {other:?}"),
            };
            for g in &gens {
                assert!(ring.is_idempotent(g), "{ring}: generator {g} not idempotent");
            }
            let closed = ideal_closure(ring, &gens).unwrap().elements;
            assert_eq!(closed, elems, "{ring}: re-closure does not reproduce 0_P");
            kernels += 1;
        }
    }
    // EC(2): P_k families and P_inf, 100 sampled members each.
    let ecr = Ring::eventually_constant(2).unwrap();
    let mut rng = SplitMix64::derive(SEED, "acceptance_kernels");
    for k in 0..5usize {
        let gen = ringlab_core::spectrum::one_minus_basis_idempotent(k);
        assert!(ecr.is_idempotent(&gen));
        for _ in 0..100 {
            let sample = ec::random_element(2, &mut rng);
            let member = match &sample {
                Element::Seq { prefix, tail } => {
                    let mut prefix = prefix.clone();
                    while prefix.len() <= k {
                        prefix.push(tail.clone());
                    }
                    prefix[k] = num_traits::Zero::zero();
                    ec::make_seq(prefix, tail.clone())
                }
                _ => unreachable!(),
            };
            assert_eq!(ecr.mul(&member, &gen), member);
        }
    }
    for _ in 0..100 {
        let sample = ec::random_element(2, &mut rng);
        let member = match &sample {
            Element::Seq { prefix, .. } => {
                ec::make_seq(prefix.clone(), num_traits::Zero::zero())
            }
            _ => unreachable!(),
        };
        let len = ec::prefix_len(&member);
        let mut cover = ecr.zero();
        for k in 0..len {
            cover = ecr.add(&cover, &ec::basis_idempotent(k));
        }
        assert!(ecr.is_idempotent(&cover));
        assert_eq!(ecr.mul(&member, &cover), member);
    }
    println!(
        "PASS: 0_P idempotent-generated and re-closed on {kernels} finite kernels, \
         EC(2) sampled"
    );
}

/// T21/SNF: witnesses valid exhaustively on finite arithmetic rings up to
/// order 64 and on 1000 seeded EC(2) pairs; 500 seeded reductions per
/// supported ring round-trip; the minor-gcd oracle agrees over Z
/// including the pinned diag(2,4) case.
#[test]
fn acceptance_t21_and_snf_suites() {
    let rings = corpus();
    let t21 = verify_suite(SuiteId::T21, &rings, SEED);
    require_all_pass(&t21, true);
    let passed = t21
        .outcomes
        .iter()
        .filter(|o| o.verdict == SuiteVerdict::Pass)
        .count();
    // every finite arithmetic ring of order <= 64 plus EC(2) must have
    // actually run, not been skipped
    let must_run = rings
        .iter()
        .filter(|r| match r.kind() {
            RingKind::Integers => false,
            RingKind::EventuallyConstant(_) => true,
            _ => {
                r.order().unwrap() <= 64
                    && ringlab_core::classify::is_arithmetic(r).unwrap().arithmetic
            }
        })
        .count();
    assert_eq!(passed, must_run, "T21 skipped a ring it must cover");

    let snf = verify_suite(SuiteId::Snf, &rings, SEED);
    require_all_pass(&snf, true);
    let z_outcome = snf
        .outcomes
        .iter()
        .find(|o| o.ring_spec == "Z")
        .expect("Z is in the corpus");
    assert_eq!(z_outcome.verdict, SuiteVerdict::Pass);
    assert!(
        z_outcome.detail.contains("oracle agrees"),
        "oracle agreement missing from: {}",
        z_outcome.detail
    );
    // The pinned classic case, asserted directly.
    let z = Ring::integers();
    let a = RingMatrix::new(
        2,
        2,
        [2i64, 4, 6, 8]
            .iter()
            .map(|&v| Element::Int(v.into()))
            .collect(),
    );
    let cert = smith_normal_form(&z, &a).unwrap();
    assert_eq!(
        cert.divisibility_chain,
        vec![Element::Int(2.into()), Element::Int(4.into())]
    );
    println!("PASS: T21 on {passed} rings, SNF round-trips and the oracle corpus over Z");
}

/// Non-EDR detection: the reduction refuses [[x, y]] over the local
/// non-chain ring, and the Bezout decider reports the same witness pair.
#[test]
fn acceptance_non_edr_detection() {
    let lnc = Ring::local_non_chain2();
    let x = Element::Poly(vec![0, 1, 0]);
    let y = Element::Poly(vec![0, 0, 1]);
    let a = RingMatrix::new(1, 2, vec![x.clone(), y.clone()]);
    match smith_normal_form(&lnc, &a) {
        Err(RingError::DiagonalizationFailed { .. }) => {}
        other => panic!("expected DiagonalizationFailed, got {other:?}"),
    }
    let verdict = is_bezout(&lnc, SEED).unwrap();
    assert!(!verdict.bezout);
    let (wa, wb) = verdict.counterwitness.expect("counterwitness present");
    assert!(
        (wa == x && wb == y) || (wa == y && wb == x),
        "witness pair must be {{x, y}}, got ({wa}, {wb})"
    );
    // the witness replays: the pair really is non-principal
    assert!(matches!(
        ringlab_core::bezout::gcd_bezout(&lnc, &wa, &wb),
        Err(RingError::NotPrincipal { .. })
    ));
    println!("PASS: non-EDR detection over the local non-chain ring");
}

/// P32: every indecomposable battery summand over every finite corpus
/// ring has singleton support and equals its localization.
#[test]
fn acceptance_p32_suite() {
    let rings = corpus();
    let suite = verify_suite(SuiteId::P32, &rings, SEED);
    require_all_pass(&suite, true);
    let ran = suite
        .outcomes
        .iter()
        .filter(|o| o.verdict == SuiteVerdict::Pass)
        .count();
    let finite = rings.iter().filter(|r| r.is_finite()).count();
    assert_eq!(ran, finite, "P32 must cover every finite corpus ring");
    println!("PASS: P32 supports singleton on {ran} rings");
}

/// T34: chain-factor rings have cyclic, cocyclic, length-bounded battery
/// summands; the non-chain ring exhibits the staircase counterexample
/// with its pinned size, length and exhaustive indecomposability.
#[test]
fn acceptance_t34_suite() {
    let rings = corpus();
    let suite = verify_suite(SuiteId::T34, &rings, SEED);
    require_all_pass(&suite, true);
    let ran = suite
        .outcomes
        .iter()
        .filter(|o| o.verdict == SuiteVerdict::Pass)
        .count();
    let finite = rings.iter().filter(|r| r.is_finite()).count();
    assert_eq!(ran, finite, "T34 must cover every finite corpus ring");

    let lnc = Ring::local_non_chain2();
    let x = Element::Poly(vec![0, 1, 0]);
    let y = Element::Poly(vec![0, 0, 1]);
    let m3 = lemma33_module(&lnc, &x, &y, 3).unwrap();
    assert_eq!(m3.size(), 128);
    assert_eq!(module_length(&lnc, &m3).unwrap(), 7);
    assert!(is_cyclic(&lnc, &m3).unwrap().is_none());
    match is_indecomposable(&lnc, &m3, SEED).unwrap() {
        Indecomposability::Indecomposable { .. } => {}
        other => panic!("staircase must be exhaustively indecomposable, got {other:?}"),
    }
    println!("PASS: T34 on {ran} rings with the staircase counterexample pinned");
}

/// CVNR: regularity agrees with (index 1 and arithmetic) everywhere; all
/// summands over Zn(6) are simple; Z/4 is the non-simple indecomposable.
#[test]
fn acceptance_cvnr_suite() {
    let rings = corpus();
    let suite = verify_suite(SuiteId::Cvnr, &rings, SEED);
    require_all_pass(&suite, true);
    for spec in ["Zn(6)", "Zn(4)"] {
        let outcome = suite
            .outcomes
            .iter()
            .find(|o| o.ring_spec == spec)
            .unwrap_or_else(|| panic!("{spec} missing from the suite"));
        assert_eq!(outcome.verdict, SuiteVerdict::Pass, "{spec}: {}", outcome.detail);
    }
    let zn6 = suite.outcomes.iter().find(|o| o.ring_spec == "Zn(6)").unwrap();
    assert!(zn6.detail.contains("all battery summands simple"));
    let zn4 = suite.outcomes.iter().find(|o| o.ring_spec == "Zn(4)").unwrap();
    assert!(zn4.detail.contains("non-simple indecomposable"));
    println!("PASS: CVNR cross-check with pinned Zn(6)/Zn(4) instances");
}

/// LG: the polynomial battery never produces a local-global failure on
/// any finite corpus ring of order at most sixteen.
#[test]
fn acceptance_lg_suite() {
    let rings = corpus();
    let suite = verify_suite(SuiteId::Lg, &rings, SEED);
    require_all_pass(&suite, true);
    let ran = suite
        .outcomes
        .iter()
        .filter(|o| o.verdict == SuiteVerdict::Pass)
        .count();
    let in_range = rings
        .iter()
        .filter(|r| matches!(r.order(), Some(o) if o <= LG_ORDER_BOUND))
        .count();
    assert_eq!(ran, in_range, "LG must cover every ring within the bound");
    println!("PASS: LG battery holds-or-vacuous on {ran} rings");
}

/// CLEN: battery summand lengths bounded by the nilpotency index on
/// arithmetic rings; an indecomposable exceeding the bound on the
/// non-chain ring.
#[test]
fn acceptance_clen_suite() {
    let rings = corpus();
    let suite = verify_suite(SuiteId::Clen, &rings, SEED);
    require_all_pass(&suite, true);
    let lnc = suite
        .outcomes
        .iter()
        .find(|o| o.ring_spec == "LocalNonChain2")
        .expect("LocalNonChain2 in corpus");
    assert_eq!(lnc.verdict, SuiteVerdict::Pass, "{}", lnc.detail);
    assert!(lnc.detail.contains("exceeds index"));
    println!("PASS: CLEN length bounds with the non-chain counterexample");
}

/// Determinism: two consecutive full-suite runs produce byte-identical
/// structured output.
#[test]
fn acceptance_determinism_of_full_runs() {
    let rings = corpus();
    let render = || -> String {
        ALL_SUITES
            .iter()
            .map(|&id| verify_suite(id, &rings, SEED).report().json())
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = render();
    let second = render();
    assert_eq!(first, second, "structured output differs between runs");
    println!("PASS: determinism across {} bytes of structured output", first.len());
}
