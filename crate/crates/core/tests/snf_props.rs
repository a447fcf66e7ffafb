//! Diagonal reduction invariants: oracle agreement over the integers,
//! round trips over every supported corpus ring, cokernel invariance and
//! certificate tamper detection.

use num_bigint::BigInt;

use ringlab_core::battery::built_in_corpus;
use ringlab_core::classify::is_arithmetic;
use ringlab_core::matrix::{
    smith_normal_form, verify_snf_certificate, RingMatrix, SnfIssue,
};
use ringlab_core::modules::present_module;
use ringlab_core::ring::{Element, Ring, RingKind};
use ringlab_core::rng::SplitMix64;
use ringlab_core::suites::minor_gcd_diagonal;

fn int_matrix(rows: usize, cols: usize, vals: &[i64]) -> RingMatrix {
    RingMatrix::new(
        rows,
        cols,
        vals.iter().map(|&v| Element::Int(BigInt::from(v))).collect(),
    )
}

/// The independent determinant-divisor oracle agrees with the reduction
/// on a fixed seeded corpus of a hundred integer matrices up to 3x3.
#[test]
fn integer_snf_agrees_with_minor_gcd_oracle() {
    let z = Ring::integers();
    let mut cases = vec![int_matrix(2, 2, &[2, 4, 6, 8])];
    let mut rng = SplitMix64::derive(0, "snf_oracle_corpus_test");
    while cases.len() < 100 {
        let rows = rng.below(3) as usize + 1;
        let cols = rng.below(3) as usize + 1;
        let entries: Vec<Element> = (0..rows * cols)
            .map(|_| Element::Int(BigInt::from(rng.signed(9))))
            .collect();
        cases.push(RingMatrix::new(rows, cols, entries));
    }
    for (i, a) in cases.iter().enumerate() {
        let cert = smith_normal_form(&z, a).unwrap();
        assert_eq!(verify_snf_certificate(&z, a, &cert), Ok(()), "case {i}");
        let got: Vec<BigInt> = cert
            .divisibility_chain
            .iter()
            .map(|e| match e {
                Element::Int(v) => v.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(got, minor_gcd_diagonal(a), "case {i}: diagonal disagrees");
    }
    // the classic pinned case
    let cert = smith_normal_form(&z, &cases[0]).unwrap();
    assert_eq!(
        cert.divisibility_chain,
        vec![Element::Int(BigInt::from(2)), Element::Int(BigInt::from(4))]
    );
}

/// Round trips on every ring the reduction supports, beyond the suite's
/// own sample: a smaller seeded set here guards the test boundary.
#[test]
fn snf_round_trips_across_the_corpus() {
    for ring in built_in_corpus() {
        let supported = match ring.kind() {
            RingKind::Integers | RingKind::EventuallyConstant(_) => true,
            _ => is_arithmetic(&ring).map(|v| v.arithmetic).unwrap_or(false),
        };
        if !supported {
            continue;
        }
        let mut rng = SplitMix64::derive(1, &format!("snf_test:{ring}"));
        for _ in 0..25 {
            let rows = rng.below(4) as usize + 1;
            let cols = rng.below(4) as usize + 1;
            let a = random_matrix(&ring, rows, cols, &mut rng);
            let cert = smith_normal_form(&ring, &a).unwrap();
            assert_eq!(
                verify_snf_certificate(&ring, &a, &cert),
                Ok(()),
                "{ring}:\n{}",
                a.render()
            );
        }
    }
}

fn random_matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut SplitMix64) -> RingMatrix {
    let mut entries = Vec::with_capacity(rows * cols);
    match ring.kind() {
        RingKind::Integers => {
            for _ in 0..rows * cols {
                entries.push(Element::Int(BigInt::from(rng.signed(9))));
            }
        }
        RingKind::EventuallyConstant(p) => {
            for _ in 0..rows * cols {
                entries.push(ringlab_core::ec::random_element(*p, rng));
            }
        }
        _ => {
            let all = ring.elements().unwrap();
            for _ in 0..rows * cols {
                entries.push(all[rng.below(all.len() as u64) as usize].clone());
            }
        }
    }
    RingMatrix::new(rows, cols, entries)
}

/// Cokernel invariance: the module presented by the rows of A has the
/// same cardinality as the one presented by the rows of D.
#[test]
fn cokernel_cardinality_is_invariant() {
    for spec in ["Zn(6)", "Zn(8)", "Zn(12)", "Prod(Zn(2),Zn(2))", "Quot(Zn(3),[1,0,1])"] {
        let ring = ringlab_core::parse::parse_ring_spec(spec).unwrap();
        let mut rng = SplitMix64::derive(2, &format!("coker:{ring}"));
        let all = ring.elements().unwrap();
        for _ in 0..20 {
            let rows = rng.below(3) as usize + 1;
            let cols = rng.below(2) as usize + 1;
            let entries: Vec<Element> = (0..rows * cols)
                .map(|_| all[rng.below(all.len() as u64) as usize].clone())
                .collect();
            let a = RingMatrix::new(rows, cols, entries);
            let cert = smith_normal_form(&ring, &a).unwrap();
            let rows_of = |m: &RingMatrix| -> Vec<Vec<Element>> {
                (0..m.rows)
                    .map(|i| (0..m.cols).map(|j| m.at(i, j).clone()).collect())
                    .collect()
            };
            let coker_a = present_module(&ring, cols, &rows_of(&a)).unwrap();
            let coker_d = present_module(&ring, cols, &rows_of(&cert.d)).unwrap();
            assert_eq!(
                coker_a.size(),
                coker_d.size(),
                "{ring}: cokernel size changed under reduction of\n{}",
                a.render()
            );
        }
    }
}

#[test]
fn tampered_chain_is_reported() {
    let z = Ring::integers();
    let a = int_matrix(2, 2, &[2, 0, 0, 4]);
    let cert = smith_normal_form(&z, &a).unwrap();
    let mut bad = cert.clone();
    bad.divisibility_chain.swap(0, 1);
    assert_eq!(verify_snf_certificate(&z, &a, &bad), Err(SnfIssue::ChainMismatch));
}

/// Entries over EC(p) with prefixes past the padded bound are refused.
#[test]
fn ec_prefix_cap_is_enforced() {
    let ring = Ring::eventually_constant(2).unwrap();
    let long = ringlab_core::ec::make_seq(
        (0..40).map(|k| ringlab_core::ec::rat_from(k, 1)).collect(),
        ringlab_core::ec::rat_from(1, 1),
    );
    let a = RingMatrix::new(1, 1, vec![long]);
    assert!(smith_normal_form(&ring, &a).is_err());
}
