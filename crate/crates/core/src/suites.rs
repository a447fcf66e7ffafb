//! Verification suites: reproducible theorem instantiations over ring
//! corpora, with per-ring PASS/FAIL/INCONCLUSIVE outcomes and replayable
//! witness payloads.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::battery::{bivariate_battery, module_battery, univariate_battery};
use crate::bezout::edr_witness;
use crate::classify::{
    is_arithmetic, is_von_neumann_regular, jacobson_nilpotency_index,
    local_global_check, theorem1_equivalence, LocalGlobalOutcome, SuiteVerdict,
};
use crate::ec;
use crate::endo::{decompose, is_indecomposable, Indecomposability};
use crate::error::{Result, RingError};
use crate::matrix::{smith_normal_form, verify_snf_certificate, RingMatrix};
use crate::modules::{is_cocyclic, is_cyclic, lemma33_module, module_length};
use crate::report::{Report, Value};
use crate::ring::{Element, Ring, RingKind};
use crate::rng::SplitMix64;

pub const LG_ORDER_BOUND: u64 = 16;
pub const LG_BIVARIATE_BOUND: u64 = 8;
pub const T21_ORDER_BOUND: u64 = 64;
pub const T21_EC_SAMPLES: usize = 1000;
pub const SNF_MATRICES_PER_RING: usize = 500;
pub const SNF_ORACLE_CASES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteId {
    T1,
    Lg,
    T21,
    Snf,
    P32,
    T34,
    Cvnr,
    Clen,
}

pub const ALL_SUITES: [SuiteId; 8] = [
    SuiteId::T1,
    SuiteId::Lg,
    SuiteId::T21,
    SuiteId::Snf,
    SuiteId::P32,
    SuiteId::T34,
    SuiteId::Cvnr,
    SuiteId::Clen,
];

impl SuiteId {
    pub fn parse(text: &str) -> Result<SuiteId> {
        match text {
            "T1" => Ok(SuiteId::T1),
            "LG" => Ok(SuiteId::Lg),
            "T21" => Ok(SuiteId::T21),
            "SNF" => Ok(SuiteId::Snf),
            "P32" => Ok(SuiteId::P32),
            "T34" => Ok(SuiteId::T34),
            "CVNR" => Ok(SuiteId::Cvnr),
            "CLEN" => Ok(SuiteId::Clen),
            other => Err(RingError::UnknownSuite(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::T1 => "T1",
            SuiteId::Lg => "LG",
            SuiteId::T21 => "T21",
            SuiteId::Snf => "SNF",
            SuiteId::P32 => "P32",
            SuiteId::T34 => "T34",
            SuiteId::Cvnr => "CVNR",
            SuiteId::Clen => "CLEN",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub ring_spec: String,
    pub verdict: SuiteVerdict,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerificationSuite {
    pub id: SuiteId,
    pub outcomes: Vec<SuiteOutcome>,
}

impl VerificationSuite {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.verdict != SuiteVerdict::Fail)
    }

    pub fn report(&self) -> Report {
        let mut report = Report::new();
        report.push("suite", self.id.name());
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        report.push("overall", overall);
        let mut rings = Vec::with_capacity(self.outcomes.len());
        for outcome in &self.outcomes {
            let mut entry = Value::map();
            entry.push("ring", Value::from(outcome.ring_spec.as_str()));
            entry.push("verdict", Value::from(outcome.verdict.to_string()));
            if !outcome.detail.is_empty() {
                entry.push("detail", Value::from(outcome.detail.as_str()));
            }
            rings.push(entry);
        }
        report.fields.push(("rings".into(), Value::List(rings)));
        report
    }
}

/// Runs one suite over the given rings.
pub fn verify_suite(id: SuiteId, rings: &[Ring], seed: u64) -> VerificationSuite {
    let outcomes = rings
        .iter()
        .map(|ring| {
            let spec = ring.to_string();
            let (verdict, detail) = match run_one(id, ring, seed) {
                Ok((verdict, detail)) => (verdict, detail),
                Err(e) => (SuiteVerdict::Inconclusive, e.to_string()),
            };
            SuiteOutcome { ring_spec: spec, verdict, detail }
        })
        .collect();
    VerificationSuite { id, outcomes }
}

fn run_one(id: SuiteId, ring: &Ring, seed: u64) -> Result<(SuiteVerdict, String)> {
    match id {
        SuiteId::T1 => suite_t1(ring, seed),
        SuiteId::Lg => suite_lg(ring, seed),
        SuiteId::T21 => suite_t21(ring, seed),
        SuiteId::Snf => suite_snf(ring, seed),
        SuiteId::P32 => suite_p32(ring, seed),
        SuiteId::T34 => suite_t34(ring, seed),
        SuiteId::Cvnr => suite_cvnr(ring, seed),
        SuiteId::Clen => suite_clen(ring, seed),
    }
}

fn suite_t1(ring: &Ring, seed: u64) -> Result<(SuiteVerdict, String)> {
    let report = theorem1_equivalence(ring, seed);
    let detail = format!(
        "gelfand_disconnected={} clean={} kernels_idempotent_generated={}{}",
        report.gelfand_disconnected,
        report.clean,
        report.kernels_idempotent_generated,
        if report.detail.is_empty() {
            String::new()
        } else {
            format!(" ({})", report.detail)
        }
    );
    Ok((report.verdict, detail))
}

fn suite_lg(ring: &Ring, seed: u64) -> Result<(SuiteVerdict, String)> {
    let order = match ring.order() {
        Some(order) if order <= LG_ORDER_BOUND => order,
        Some(order) => {
            return Ok((
                SuiteVerdict::Inconclusive,
                format!("order {order} outside the battery bound {LG_ORDER_BOUND}"),
            ))
        }
        None => {
            return Ok((
                SuiteVerdict::Inconclusive,
                "infinite rings are outside the polynomial battery".into(),
            ))
        }
    };
    let mut holds = 0u64;
    let mut vacuous = 0u64;
    let mut run = |poly: &crate::classify::Polynomial| -> Result<Option<String>> {
        match local_global_check(ring, poly)? {
            LocalGlobalOutcome::Holds { .. } => {
                holds += 1;
                Ok(None)
            }
            LocalGlobalOutcome::Vacuous { .. } => {
                vacuous += 1;
                Ok(None)
            }
            LocalGlobalOutcome::Fails => Ok(Some(poly.render())),
        }
    };
    for poly in univariate_battery(ring)? {
        if let Some(witness) = run(&poly)? {
            return Ok((
                SuiteVerdict::Fail,
                format!("local-global failure on {witness}"),
            ));
        }
    }
    if order <= LG_BIVARIATE_BOUND {
        for poly in bivariate_battery(ring, seed)? {
            if let Some(witness) = run(&poly)? {
                return Ok((
                    SuiteVerdict::Fail,
                    format!("local-global failure on {witness}"),
                ));
            }
        }
    }
    Ok((SuiteVerdict::Pass, format!("holds={holds} vacuous={vacuous}")))
}

fn suite_t21(ring: &Ring, seed: u64) -> Result<(SuiteVerdict, String)> {
    match ring.kind() {
        RingKind::Integers => Ok((
            SuiteVerdict::Inconclusive,
            "the witness form needs a local-global ring; Z is not one".into(),
        )),
        RingKind::EventuallyConstant(p) => {
            let mut rng = SplitMix64::derive(seed, "t21_ec");
            for _ in 0..T21_EC_SAMPLES {
                let a = ec::random_element(*p, &mut rng);
                let b = ec::random_element(*p, &mut rng);
                let w = edr_witness(ring, &a, &b)?;
                let combo = ring.add(&w.a_prime, &ring.mul(&w.c, &w.b_prime));
                let valid = ring.mul(&w.a_prime, &w.d) == a
                    && ring.mul(&w.b_prime, &w.d) == b
                    && ring.is_unit(&combo).is_some();
                if !valid {
                    return Ok((
                        SuiteVerdict::Fail,
                        format!("invalid witness for ({a}, {b})"),
                    ));
                }
            }
            Ok((SuiteVerdict::Pass, format!("{T21_EC_SAMPLES} sampled pairs valid")))
        }
        _ => {
            let order = ring.order().expect("finite kind");
            if order > T21_ORDER_BOUND {
                return Ok((
                    SuiteVerdict::Inconclusive,
                    format!("order {order} above the exhaustive bound {T21_ORDER_BOUND}"),
                ));
            }
            if !is_arithmetic(ring)?.arithmetic {
                return Ok((
                    SuiteVerdict::Inconclusive,
                    "not arithmetic: the witness is not guaranteed".into(),
                ));
            }
            let all = ring.elements()?;
            let mut pairs = 0u64;
            for a in &all {
                for b in &all {
                    pairs += 1;
                    let w = edr_witness(ring, a, b)?;
                    let combo = ring.add(&w.a_prime, &ring.mul(&w.c, &w.b_prime));
                    let valid = ring.mul(&w.a_prime, &w.d) == *a
                        && ring.mul(&w.b_prime, &w.d) == *b
                        && ring.is_unit(&combo).is_some();
                    if !valid {
                        return Ok((
                            SuiteVerdict::Fail,
                            format!("invalid witness for ({a}, {b})"),
                        ));
                    }
                }
            }
            Ok((SuiteVerdict::Pass, format!("{pairs} pairs exhausted")))
        }
    }
}

fn suite_snf(ring: &Ring, seed: u64) -> Result<(SuiteVerdict, String)> {
    let supported = match ring.kind() {
        RingKind::Integers | RingKind::EventuallyConstant(_) => true,
        _ => {
            let order = ring.order().expect("finite kind");
            order <= T21_ORDER_BOUND && is_arithmetic(ring)?.arithmetic
        }
    };
    if !supported {
        return Ok((
            SuiteVerdict::Inconclusive,
            "diagonal reduction is only guaranteed on arithmetic rings".into(),
        ));
    }
    let mut rng = SplitMix64::derive(seed, &format!("snf:{ring}"));
    for case in 0..SNF_MATRICES_PER_RING {
        let rows = rng.below(4) as usize + 1;
        let cols = rng.below(4) as usize + 1;
        let a = random_matrix(ring, rows, cols, &mut rng)?;
        let cert = smith_normal_form(ring, &a)?;
        if let Err(issue) = verify_snf_certificate(ring, &a, &cert) {
            return Ok((
                SuiteVerdict::Fail,
                format!("round-trip case {case} failed: {issue}\n{}", a.render()),
            ));
        }
    }
    let mut detail = format!("{SNF_MATRICES_PER_RING} random matrices round-trip");
    if matches!(ring.kind(), RingKind::Integers) {
        let checked = snf_oracle_agreement(ring)?;
        detail.push_str(&format!("; minor-gcd oracle agrees on {checked} matrices"));
    }
    Ok((SuiteVerdict::Pass, detail))
}

fn random_matrix(
    ring: &Ring,
    rows: usize,
    cols: usize,
    rng: &mut SplitMix64,
) -> Result<RingMatrix> {
    let mut entries = Vec::with_capacity(rows * cols);
    match ring.kind() {
        RingKind::Integers => {
            for _ in 0..rows * cols {
                entries.push(Element::Int(BigInt::from(rng.signed(9))));
            }
        }
        RingKind::EventuallyConstant(p) => {
            for _ in 0..rows * cols {
                entries.push(ec::random_element(*p, rng));
            }
        }
        _ => {
            let all = ring.elements()?;
            for _ in 0..rows * cols {
                entries.push(all[rng.below(all.len() as u64) as usize].clone());
            }
        }
    }
    Ok(RingMatrix::new(rows, cols, entries))
}

/// The fixed oracle corpus over Z: the classic 2x2 example plus seeded
/// matrices up to 3x3 with entries in [-9, 9]. Returns the case count.
fn snf_oracle_agreement(ring: &Ring) -> Result<u64> {
    let mut cases: Vec<RingMatrix> = vec![RingMatrix::new(
        2,
        2,
        [2i64, 4, 6, 8]
            .iter()
            .map(|&v| Element::Int(BigInt::from(v)))
            .collect(),
    )];
    let mut rng = SplitMix64::derive(0, "snf_oracle_corpus");
    while cases.len() < SNF_ORACLE_CASES {
        let rows = rng.below(3) as usize + 1;
        let cols = rng.below(3) as usize + 1;
        let entries: Vec<Element> = (0..rows * cols)
            .map(|_| Element::Int(BigInt::from(rng.signed(9))))
            .collect();
        cases.push(RingMatrix::new(rows, cols, entries));
    }
    for (i, a) in cases.iter().enumerate() {
        let cert = smith_normal_form(ring, a)?;
        let got: Vec<BigInt> = cert
            .divisibility_chain
            .iter()
            .map(|e| match e {
                Element::Int(v) => v.clone(),
                _ => unreachable!(),
            })
            .collect();
        let expected = minor_gcd_diagonal(a);
        if got != expected {
            return Err(RingError::WitnessNotFound(format!(
                "oracle disagreement on case {i}: reduction {got:?}, oracle {expected:?}"
            )));
        }
        if i == 0 {
            // the pinned classic case must come out exactly diag(2, 4)
            if got != vec![BigInt::from(2), BigInt::from(4)] {
                return Err(RingError::WitnessNotFound(format!(
                    "classic case produced {got:?}"
                )));
            }
        }
    }
    Ok(cases.len() as u64)
}

/// Independent determinant-divisor oracle: d_k = gcd(k-minors)/gcd((k-1)-minors).
pub fn minor_gcd_diagonal(a: &RingMatrix) -> Vec<BigInt> {
    let (m, n) = (a.rows, a.cols);
    let entry = |i: usize, j: usize| -> BigInt {
        match a.at(i, j) {
            Element::Int(v) => v.clone(),
            _ => panic!("minor oracle is defined over the integers"),
        }
    };
    let r = m.min(n);
    let mut gcds: Vec<BigInt> = Vec::with_capacity(r);
    for k in 1..=r {
        let mut g = BigInt::zero();
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let det = minor_det(&entry, &rows, &cols);
                g = g.gcd(&det);
            }
        }
        gcds.push(g.abs());
    }
    let mut out = Vec::with_capacity(r);
    let mut prev = BigInt::from(1);
    for g in gcds {
        if g.is_zero() {
            out.push(BigInt::zero());
        } else {
            out.push(&g / &prev);
            prev = g;
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            go(i + 1, n, k, current, out);
            current.pop();
        }
    }
    go(0, n, k, &mut current, &mut out);
    out
}

fn minor_det(entry: &impl Fn(usize, usize) -> BigInt, rows: &[usize], cols: &[usize]) -> BigInt {
    if rows.len() == 1 {
        return entry(rows[0], cols[0]);
    }
    let mut acc = BigInt::zero();
    let sub_rows = &rows[1..];
    for (j, &c) in cols.iter().enumerate() {
        let v = entry(rows[0], c);
        if v.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> =
            cols.iter().copied().filter(|&x| x != c).collect();
        let term = v * minor_det(entry, sub_rows, &sub_cols);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn suite_p32(ring: &Ring, seed: u64) -> Result<(SuiteVerdict, String)> {
    if !ring.is_finite() {
        return Ok((
            SuiteVerdict::Inconclusive,
            "module batteries run over finite rings".into(),
        ));
    }
    let battery = module_battery(ring, seed)?;
    let mut summands = 0u64;
    for item in &battery {
        let dec = decompose(ring, &item.module, seed)?;
        for (i, summand) in dec.summands.iter().enumerate() {
            if !dec.certified[i] {
                return Ok((
                    SuiteVerdict::Inconclusive,
                    format!(
                        "summand of {} not certified indecomposable by exhaustive scan",
                        item.label
                    ),
                ));
            }
            summands += 1;
            let supp = &dec.supports[i];
            if supp.len() != 1 {
                return Ok((
                    SuiteVerdict::Fail,
                    format!(
                        "summand {i} of {} has support of size {}",
                        item.label,
                        supp.len()
                    ),
                ));
            }
            // M equals its localization: the supporting idempotent acts as
            // the identity on the summand.
            let e = match &supp[0] {
                crate::spectrum::MaximalIdeal::Finite { primitive_idempotent, .. } => {
                    primitive_idempotent
                }
                _ => unreachable!(),
            };
            let identity_action =
                (0..summand.size()).all(|m| summand.act(e, m) == m);
            if !identity_action {
                return Ok((
                    SuiteVerdict::Fail,
                    format!(
                        "summand {i} of {} differs from its localization",
                        item.label
                    ),
                ));
            }
        }
    }
    Ok((SuiteVerdict::Pass, format!("{summands} indecomposable summands checked")))
}

fn suite_t34(ring: &Ring, seed: u64) -> Result<(SuiteVerdict, String)> {
    if !ring.is_finite() {
        return Ok((
            SuiteVerdict::Inconclusive,
            "module batteries run over finite rings".into(),
        ));
    }
    let verdict = crate::classify::theorem34_classify(ring)?;
    if verdict.satisfied {
        let index = jacobson_nilpotency_index(ring)?;
        let battery = module_battery(ring, seed)?;
        let mut summands = 0u64;
        for item in &battery {
            let dec = decompose(ring, &item.module, seed)?;
            for (i, summand) in dec.summands.iter().enumerate() {
                summands += 1;
                if is_cyclic(ring, summand)?.is_none() {
                    return Ok((
                        SuiteVerdict::Fail,
                        format!("summand {i} of {} is not cyclic", item.label),
                    ));
                }
                if !is_cocyclic(ring, summand)? {
                    return Ok((
                        SuiteVerdict::Fail,
                        format!("summand {i} of {} is not cocyclic", item.label),
                    ));
                }
                if dec.lengths[i] > index {
                    return Ok((
                        SuiteVerdict::Fail,
                        format!(
                            "summand {i} of {} has length {} > index {index}",
                            item.label, dec.lengths[i]
                        ),
                    ));
                }
            }
        }
        Ok((
            SuiteVerdict::Pass,
            format!("{summands} summands cyclic, cocyclic, length <= {index}"),
        ))
    } else {
        // Violated branch: the staircase truncation is a non-cyclic
        // exhaustively-indecomposable module.
        let (a, b) = verdict
            .counterwitness
            .expect("violation carries a witness pair");
        let m3 = lemma33_module(ring, &a, &b, 3)?;
        let size = m3.size();
        let length = module_length(ring, &m3)?;
        let indec = match is_indecomposable(ring, &m3, seed)? {
            Indecomposability::Indecomposable { scanned } => scanned,
            Indecomposability::Decomposable(_) => {
                return Ok((
                    SuiteVerdict::Fail,
                    "staircase truncation decomposed unexpectedly".into(),
                ))
            }
            Indecomposability::ProbablyIndecomposable { .. } => {
                return Ok((
                    SuiteVerdict::Inconclusive,
                    "staircase indecomposability not certified exhaustively".into(),
                ))
            }
        };
        let cyclic = is_cyclic(ring, &m3)?.is_some();
        if cyclic {
            return Ok((
                SuiteVerdict::Fail,
                "staircase truncation is cyclic, contradicting the violation".into(),
            ));
        }
        Ok((
            SuiteVerdict::Pass,
            format!(
                "violated with witness ({a}, {b}): truncation has {size} elements, \
                 length {length}, indecomposable ({indec} endomorphisms scanned), not cyclic"
            ),
        ))
    }
}

fn suite_cvnr(ring: &Ring, seed: u64) -> Result<(SuiteVerdict, String)> {
    if !ring.is_finite() {
        return Ok((
            SuiteVerdict::Inconclusive,
            "von Neumann regularity is decided for finite rings".into(),
        ));
    }
    let vnr = is_von_neumann_regular(ring)?.regular;
    let alt = jacobson_nilpotency_index(ring)? == 1 && is_arithmetic(ring)?.arithmetic;
    if vnr != alt {
        return Ok((
            SuiteVerdict::Fail,
            format!("deciders disagree: vnr={vnr}, index-1-and-arithmetic={alt}"),
        ));
    }
    let mut detail = format!("vnr={vnr} agrees with (index=1 and arithmetic)");
    if vnr {
        // Every battery summand must be simple.
        let battery = module_battery(ring, seed)?;
        for item in &battery {
            let dec = decompose(ring, &item.module, seed)?;
            for (i, _) in dec.summands.iter().enumerate() {
                if dec.lengths[i] != 1 {
                    return Ok((
                        SuiteVerdict::Fail,
                        format!(
                            "summand {i} of {} has length {} over a regular ring",
                            item.label, dec.lengths[i]
                        ),
                    ));
                }
            }
        }
        detail.push_str("; all battery summands simple");
    } else if ring.to_string() == "Zn(4)" {
        // The counterexample direction pinned by the corpus: Z/4 itself is
        // an indecomposable of length 2.
        let free = crate::modules::present_module(ring, 1, &[])?;
        let indec = matches!(
            is_indecomposable(ring, &free, seed)?,
            Indecomposability::Indecomposable { .. }
        );
        let length = module_length(ring, &free)?;
        if !indec || length != 2 {
            return Ok((
                SuiteVerdict::Fail,
                format!("expected an indecomposable of length 2, got length {length}"),
            ));
        }
        detail.push_str("; Z/4 is a non-simple indecomposable");
    }
    Ok((SuiteVerdict::Pass, detail))
}

fn suite_clen(ring: &Ring, seed: u64) -> Result<(SuiteVerdict, String)> {
    if !ring.is_finite() {
        return Ok((
            SuiteVerdict::Inconclusive,
            "length bounds are checked over finite rings".into(),
        ));
    }
    let arithmetic = is_arithmetic(ring)?.arithmetic;
    let index = jacobson_nilpotency_index(ring)?;
    if arithmetic {
        let battery = module_battery(ring, seed)?;
        let mut max_len = 0u64;
        for item in &battery {
            let dec = decompose(ring, &item.module, seed)?;
            for (i, _) in dec.summands.iter().enumerate() {
                max_len = max_len.max(dec.lengths[i]);
                if dec.lengths[i] > index {
                    return Ok((
                        SuiteVerdict::Fail,
                        format!(
                            "summand of {} has length {} > index {index}",
                            item.label, dec.lengths[i]
                        ),
                    ));
                }
            }
        }
        Ok((
            SuiteVerdict::Pass,
            format!("battery summand lengths bounded by {index} (max seen {max_len})"),
        ))
    } else {
        // Non-arithmetic: exhibit an indecomposable of length > index.
        let verdict = crate::classify::theorem34_classify(ring)?;
        let (a, b) = verdict
            .counterwitness
            .expect("non-arithmetic ring carries a witness pair");
        let m3 = lemma33_module(ring, &a, &b, 3)?;
        let length = module_length(ring, &m3)?;
        let indec = matches!(
            is_indecomposable(ring, &m3, seed)?,
            Indecomposability::Indecomposable { .. }
        );
        if !indec || length <= index {
            return Ok((
                SuiteVerdict::Fail,
                format!(
                    "expected an indecomposable longer than {index}, got length {length}"
                ),
            ));
        }
        Ok((
            SuiteVerdict::Pass,
            format!("indecomposable of length {length} exceeds index {index}"),
        ))
    }
}
