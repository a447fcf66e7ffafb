//! Ring-level property deciders and theorem-equivalence verifiers.
//!
//! Each decider returns a typed verdict whose counterwitness can be
//! replayed against the definition. Unsupported (ring kind, cap) cases
//! surface as NotEvaluated flags rather than errors so a classification
//! report can always be assembled.

use std::collections::HashSet;

use num_traits::Zero;

use crate::bezout::gcd_bezout;
use crate::ec;
use crate::error::{Result, RingError};
use crate::ring::{Element, Ring, RingKind};
use crate::rng::SplitMix64;
use crate::spectrum::{
    closure_elements, is_gelfand, localization_kernel, max_spectrum,
    max_totally_disconnected, primitive_idempotents, IdempotentGens,
    SpectrumPoints,
};

pub const EC_SAMPLE_DEFAULT: usize = 1000;
pub const EC_KERNEL_SAMPLES: usize = 100;
pub const EC_POINT_FAMILY_PROBE: u64 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    True,
    False,
    NotEvaluated,
}

impl Flag {
    fn from_bool(b: bool) -> Flag {
        if b {
            Flag::True
        } else {
            Flag::False
        }
    }
}

impl std::fmt::Display for Flag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Flag::True => write!(f, "true"),
            Flag::False => write!(f, "false"),
            Flag::NotEvaluated => write!(f, "not-evaluated"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CleanVerdict {
    pub clean: bool,
    pub counterwitness: Option<Element>,
    pub scanned: u64,
    pub sampled: bool,
}

/// Is every element a unit plus an idempotent?
pub fn is_clean(ring: &Ring, seed: u64) -> Result<CleanVerdict> {
    match ring.kind() {
        RingKind::Integers => Ok(CleanVerdict {
            clean: false,
            counterwitness: Some(ring.from_int(3)),
            scanned: 0,
            sampled: false,
        }),
        RingKind::EventuallyConstant(p) => {
            let mut rng = SplitMix64::derive(seed, "is_clean");
            for _ in 0..EC_SAMPLE_DEFAULT {
                let a = ec::random_element(*p, &mut rng);
                let d = ring.clean_decompose(&a)?;
                let ok = ring.add(&d.unit, &d.idempotent) == a
                    && ring.is_idempotent(&d.idempotent)
                    && ring.is_unit(&d.unit).is_some();
                if !ok {
                    return Ok(CleanVerdict {
                        clean: false,
                        counterwitness: Some(a),
                        scanned: EC_SAMPLE_DEFAULT as u64,
                        sampled: true,
                    });
                }
            }
            Ok(CleanVerdict {
                clean: true,
                counterwitness: None,
                scanned: EC_SAMPLE_DEFAULT as u64,
                sampled: true,
            })
        }
        _ => {
            let elems = ring.elements()?;
            let scanned = elems.len() as u64;
            for a in elems {
                match ring.clean_decompose(&a) {
                    Ok(_) => {}
                    Err(RingError::NotClean { .. }) => {
                        return Ok(CleanVerdict {
                            clean: false,
                            counterwitness: Some(a),
                            scanned,
                            sampled: false,
                        })
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(CleanVerdict { clean: true, counterwitness: None, scanned, sampled: false })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteVerdict {
    Pass,
    Fail,
    Inconclusive,
}

impl std::fmt::Display for SuiteVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SuiteVerdict::Pass => write!(f, "PASS"),
            SuiteVerdict::Fail => write!(f, "FAIL"),
            SuiteVerdict::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

/// Instantiation of the clean/Gelfand/disconnected/idempotent-kernel
/// equivalence on one ring.
#[derive(Debug, Clone)]
pub struct Theorem1Report {
    pub ring: Ring,
    /// Gelfand with totally disconnected maximal spectrum.
    pub gelfand_disconnected: Flag,
    /// Clean.
    pub clean: Flag,
    /// Gelfand and every localization kernel idempotent-generated.
    pub kernels_idempotent_generated: Flag,
    pub verdict: SuiteVerdict,
    pub detail: String,
}

pub fn theorem1_equivalence(ring: &Ring, seed: u64) -> Theorem1Report {
    let mut detail = String::new();
    let flag1 = match is_gelfand(ring) {
        Ok(g) => Flag::from_bool(g.gelfand && max_totally_disconnected(ring)),
        Err(e) => {
            detail = e.to_string();
            Flag::NotEvaluated
        }
    };
    let flag3 = match is_clean(ring, seed) {
        Ok(v) => {
            if let Some(w) = &v.counterwitness {
                detail = format!("clean counterwitness {w}");
            }
            Flag::from_bool(v.clean)
        }
        Err(e) => {
            detail = e.to_string();
            Flag::NotEvaluated
        }
    };
    let flag4 = match kernels_idempotent_generated(ring, seed) {
        Ok(b) => Flag::from_bool(b),
        Err(e) => {
            detail = e.to_string();
            Flag::NotEvaluated
        }
    };
    let verdict = if flag1 == Flag::NotEvaluated
        || flag3 == Flag::NotEvaluated
        || flag4 == Flag::NotEvaluated
    {
        SuiteVerdict::Inconclusive
    } else if flag1 == flag3 && flag3 == flag4 {
        SuiteVerdict::Pass
    } else {
        detail = format!(
            "disagreement: (1)={flag1} (3)={flag3} (4)={flag4} on {ring}"
        );
        SuiteVerdict::Fail
    };
    Theorem1Report {
        ring: ring.clone(),
        gelfand_disconnected: flag1,
        clean: flag3,
        kernels_idempotent_generated: flag4,
        verdict,
        detail,
    }
}

/// Condition (4): Gelfand and every 0_P generated by idempotents.
/// Finite rings re-close the generator set; EC(p) spot-checks sampled
/// kernel members against the classified generators.
fn kernels_idempotent_generated(ring: &Ring, seed: u64) -> Result<bool> {
    match ring.kind() {
        RingKind::Integers => Ok(false), // not Gelfand
        RingKind::EventuallyConstant(p) => {
            let mut rng = SplitMix64::derive(seed, "kernel_samples");
            // P_k families: kernel = (1 - e_k); x in kernel iff x_k = 0
            // iff x·(1 - e_k) = x.
            for k in 0..EC_POINT_FAMILY_PROBE {
                let gen = crate::spectrum::one_minus_basis_idempotent(k as usize);
                if !ring.is_idempotent(&gen) {
                    return Ok(false);
                }
                for _ in 0..EC_KERNEL_SAMPLES {
                    let mut x = ec::random_element(*p, &mut rng);
                    x = set_component_zero(&x, k as usize);
                    if ring.mul(&x, &gen) != x {
                        return Ok(false);
                    }
                }
            }
            // P_inf: kernel = sequences with tail 0; x = x·(e_0+...+e_{L-1}).
            for _ in 0..EC_KERNEL_SAMPLES {
                let x = ec::random_element(*p, &mut rng);
                let x = zero_tail(&x);
                let l = ec::prefix_len(&x);
                let mut cover = ring.zero();
                for k in 0..l {
                    cover = ring.add(&cover, &ec::basis_idempotent(k));
                }
                if !ring.is_idempotent(&cover) || ring.mul(&x, &cover) != x {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => {
            let spectrum = max_spectrum(ring)?;
            let points = match spectrum.points {
                SpectrumPoints::Finite(points) => points,
                _ => unreachable!(),
            };
            for point in points {
                let kernel = localization_kernel(ring, &point)?;
                let gens = match kernel.idempotent_generators {
                    Some(IdempotentGens::List(gens)) => gens,
                    _ => return Ok(false),
                };
                let closed = closure_elements(ring, &gens)?;
                let kernel_elems = match kernel.kernel {
                    crate::spectrum::KernelRepr::Finite(ideal) => ideal.elements,
                    _ => unreachable!(),
                };
                if closed != kernel_elems {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn set_component_zero(x: &Element, k: usize) -> Element {
    match x {
        Element::Seq { prefix, tail } => {
            let mut prefix = prefix.clone();
            while prefix.len() <= k {
                prefix.push(tail.clone());
            }
            prefix[k] = ec::Rat::zero();
            ec::make_seq(prefix, tail.clone())
        }
        _ => panic!("set_component_zero: not a sequence element"),
    }
}

fn zero_tail(x: &Element) -> Element {
    match x {
        Element::Seq { prefix, .. } => ec::make_seq(prefix.clone(), ec::Rat::zero()),
        _ => panic!("zero_tail: not a sequence element"),
    }
}

/// Multivariate polynomial given by exponent vectors and coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, Element)>,
}

impl Polynomial {
    pub fn univariate(ring: &Ring, coeffs: &[Element]) -> Polynomial {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !ring.is_zero(c))
            .map(|(k, c)| (vec![k as u32], c.clone()))
            .collect();
        Polynomial { nvars: 1, terms }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = ["X", "Y"];
        let mut parts = Vec::new();
        for (exps, c) in &self.terms {
            let mut term = format!("{c}");
            for (v, &e) in exps.iter().enumerate() {
                if e == 1 {
                    term.push_str(&format!("*{}", names[v.min(1)]));
                } else if e > 1 {
                    term.push_str(&format!("*{}^{}", names[v.min(1)], e));
                }
            }
            parts.push(term);
        }
        parts.join(" + ")
    }

    fn eval(&self, ring: &Ring, point: &[Element]) -> Element {
        let mut acc = ring.zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = ring.mul(&term, &ring.pow(&point[v], e as u64));
                }
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub enum LocalGlobalOutcome {
    /// Unit value attained globally; least witness tuple.
    Holds { witness: Vec<Element> },
    /// Some local factor admits no unit value, so the hypothesis is empty.
    Vacuous { factor_idempotent: Element },
    /// Unit values exist locally everywhere but not globally. Never
    /// expected on this corpus; reporting one falsifies local-globalness.
    Fails,
}

/// Checks one polynomial against the local-global property: if f attains a
/// unit value in every localization, it must attain one globally.
pub fn local_global_check(ring: &Ring, poly: &Polynomial) -> Result<LocalGlobalOutcome> {
    if poly.nvars > 2 {
        return Err(RingError::Unsupported(
            "local-global check supports at most 2 variables".into(),
        ));
    }
    let all = ring.elements()?;
    let prims = primitive_idempotents(ring)?;
    // Local step: factor R·e has identity e; v is a unit there when some
    // y·e solves v·y = e.
    for e in &prims {
        let factor: Vec<Element> = {
            let set: HashSet<Element> = all.iter().map(|x| ring.mul(x, e)).collect();
            let mut v: Vec<Element> = set.into_iter().collect();
            v.sort();
            v
        };
        let unit_in_factor = |v: &Element| factor.iter().any(|y| ring.mul(v, y) == *e);
        let mut found = false;
        'outer: for point in tuples(&factor, poly.nvars) {
            let coeff_projected: Polynomial = Polynomial {
                nvars: poly.nvars,
                terms: poly
                    .terms
                    .iter()
                    .map(|(k, c)| (k.clone(), ring.mul(c, e)))
                    .collect(),
            };
            let v = coeff_projected.eval(ring, &point);
            if unit_in_factor(&v) {
                found = true;
                break 'outer;
            }
        }
        if !found {
            return Ok(LocalGlobalOutcome::Vacuous { factor_idempotent: e.clone() });
        }
    }
    // Global step.
    for point in tuples(&all, poly.nvars) {
        let v = poly.eval(ring, &point);
        if ring.is_unit(&v).is_some() {
            return Ok(LocalGlobalOutcome::Holds { witness: point });
        }
    }
    Ok(LocalGlobalOutcome::Fails)
}

/// All n-tuples over `base` in lexicographic canonical order.
fn tuples(base: &[Element], n: usize) -> Vec<Vec<Element>> {
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    if base.is_empty() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| base[i].clone()).collect());
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < base.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValuationVerdict {
    pub chain: bool,
    pub counterwitness: Option<(Element, Element)>,
}

/// Is the (finite local) ring a valuation ring: do its elements divide
/// one another linearly?
pub fn is_valuation_local(ring: &Ring) -> Result<ValuationVerdict> {
    let prims = primitive_idempotents(ring)?;
    if prims.len() != 1 {
        return Err(RingError::NotLocal {
            primitive_idempotents: prims.len() as u64,
        });
    }
    let all = ring.elements()?;
    for a in &all {
        for b in &all {
            if ring.divide(a, b).is_none() && ring.divide(b, a).is_none() {
                return Ok(ValuationVerdict {
                    chain: false,
                    counterwitness: Some((a.clone(), b.clone())),
                });
            }
        }
    }
    Ok(ValuationVerdict { chain: true, counterwitness: None })
}

#[derive(Debug, Clone)]
pub struct ArithmeticVerdict {
    pub arithmetic: bool,
    pub classified: bool,
    /// On failure: the primitive idempotent of the offending local factor
    /// and the divisibility counterwitness inside it.
    pub factor_idempotent: Option<Element>,
    pub counterwitness: Option<(Element, Element)>,
}

/// Is every localization at a maximal ideal a chain ring? Finite rings
/// decompose into local factors; EC(p) is classified (localizations are
/// the field Q and the valuation ring D).
pub fn is_arithmetic(ring: &Ring) -> Result<ArithmeticVerdict> {
    match ring.kind() {
        RingKind::EventuallyConstant(_) => Ok(ArithmeticVerdict {
            arithmetic: true,
            classified: true,
            factor_idempotent: None,
            counterwitness: None,
        }),
        RingKind::Integers => Err(RingError::Unsupported(
            "is_arithmetic is decided for finite rings and EC(p)".into(),
        )),
        _ => {
            let all = ring.elements()?;
            let prims = primitive_idempotents(ring)?;
            for e in &prims {
                let factor: Vec<Element> = {
                    let set: HashSet<Element> =
                        all.iter().map(|x| ring.mul(x, e)).collect();
                    let mut v: Vec<Element> = set.into_iter().collect();
                    v.sort();
                    v
                };
                for a in &factor {
                    for b in &factor {
                        let ab = factor.iter().any(|t| ring.mul(t, b) == *a);
                        let ba = factor.iter().any(|t| ring.mul(t, a) == *b);
                        if !ab && !ba {
                            return Ok(ArithmeticVerdict {
                                arithmetic: false,
                                classified: false,
                                factor_idempotent: Some(e.clone()),
                                counterwitness: Some((a.clone(), b.clone())),
                            });
                        }
                    }
                }
            }
            Ok(ArithmeticVerdict {
                arithmetic: true,
                classified: false,
                factor_idempotent: None,
                counterwitness: None,
            })
        }
    }
}

#[derive(Debug, Clone)]
pub struct BezoutVerdict {
    pub bezout: bool,
    pub counterwitness: Option<(Element, Element)>,
    pub pairs_checked: u64,
    pub sampled: bool,
}

/// Every 2-generated ideal principal? Two generators suffice on this
/// corpus; n-generator reduction follows by induction.
pub fn is_bezout(ring: &Ring, seed: u64) -> Result<BezoutVerdict> {
    match ring.kind() {
        RingKind::Integers => Ok(BezoutVerdict {
            bezout: true,
            counterwitness: None,
            pairs_checked: 0,
            sampled: false,
        }),
        RingKind::EventuallyConstant(p) => {
            let mut rng = SplitMix64::derive(seed, "is_bezout");
            let n = EC_SAMPLE_DEFAULT as u64;
            for _ in 0..n {
                let a = ec::random_element(*p, &mut rng);
                let b = ec::random_element(*p, &mut rng);
                let cert = gcd_bezout(ring, &a, &b)?;
                let combo = ring.add(&ring.mul(&cert.s, &a), &ring.mul(&cert.t, &b));
                let ok = combo == cert.d
                    && ring.divide(&a, &cert.d).is_some()
                    && ring.divide(&b, &cert.d).is_some();
                if !ok {
                    return Ok(BezoutVerdict {
                        bezout: false,
                        counterwitness: Some((a, b)),
                        pairs_checked: n,
                        sampled: true,
                    });
                }
            }
            Ok(BezoutVerdict {
                bezout: true,
                counterwitness: None,
                pairs_checked: n,
                sampled: true,
            })
        }
        _ => {
            let all = ring.elements()?;
            let mut pairs = 0u64;
            for a in &all {
                for b in &all {
                    pairs += 1;
                    let ideal = closure_elements(ring, &[a.clone(), b.clone()])?;
                    let principal = ideal.iter().any(|d| {
                        let multiples: HashSet<Element> =
                            all.iter().map(|r| ring.mul(r, d)).collect();
                        multiples.len() == ideal.len()
                    });
                    if !principal {
                        return Ok(BezoutVerdict {
                            bezout: false,
                            counterwitness: Some((a.clone(), b.clone())),
                            pairs_checked: pairs,
                            sampled: false,
                        });
                    }
                }
            }
            Ok(BezoutVerdict {
                bezout: true,
                counterwitness: None,
                pairs_checked: pairs,
                sampled: false,
            })
        }
    }
}

#[derive(Debug, Clone)]
pub struct VnrVerdict {
    pub regular: bool,
    pub counterwitness: Option<Element>,
}

/// Von Neumann regularity: for each a some x has a = a²x.
pub fn is_von_neumann_regular(ring: &Ring) -> Result<VnrVerdict> {
    let all = ring.elements()?;
    for a in &all {
        let a2 = ring.mul(a, a);
        if !all.iter().any(|x| ring.mul(&a2, x) == *a) {
            return Ok(VnrVerdict { regular: false, counterwitness: Some(a.clone()) });
        }
    }
    Ok(VnrVerdict { regular: true, counterwitness: None })
}

/// Least n with J^n = 0.
pub fn jacobson_nilpotency_index(ring: &Ring) -> Result<u64> {
    let jac = ring.jacobson_radical()?;
    let zero = ring.zero();
    let mut current: Vec<Element> = jac.elements.clone();
    let mut n = 1u64;
    while !(current.len() == 1 && current[0] == zero) {
        // product ideal J^{n+1} = additive closure of {a·b}
        let mut products: Vec<Element> = Vec::new();
        let mut seen: HashSet<Element> = HashSet::new();
        for a in &current {
            for b in &jac.elements {
                let m = ring.mul(a, b);
                if seen.insert(m.clone()) {
                    products.push(m);
                }
            }
        }
        let mut set: HashSet<Element> = HashSet::new();
        set.insert(zero.clone());
        let mut queue = vec![zero.clone()];
        while let Some(x) = queue.pop() {
            for m in &products {
                let s = ring.add(&x, m);
                if set.insert(s.clone()) {
                    queue.push(s);
                }
            }
        }
        let mut next: Vec<Element> = set.into_iter().collect();
        next.sort();
        if next.len() == current.len() && next == current {
            return Err(RingError::WitnessNotFound(format!(
                "Jacobson radical of {ring} is not nilpotent"
            )));
        }
        current = next;
        n += 1;
    }
    Ok(n)
}

#[derive(Debug, Clone)]
pub struct Theorem34Verdict {
    pub satisfied: bool,
    pub factor_idempotent: Option<Element>,
    pub counterwitness: Option<(Element, Element)>,
}

/// Condition (8): every local factor is an artinian valuation ring.
/// Finite local rings are artinian, so this reduces to the chain check.
pub fn theorem34_classify(ring: &Ring) -> Result<Theorem34Verdict> {
    let v = is_arithmetic(ring)?;
    Ok(Theorem34Verdict {
        satisfied: v.arithmetic,
        factor_idempotent: v.factor_idempotent,
        counterwitness: v.counterwitness,
    })
}

/// Full classification of one ring, with flags never evaluated on
/// unsupported kinds reported as such.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub ring: Ring,
    pub clean: Flag,
    pub gelfand: Flag,
    pub max_totally_disconnected: Flag,
    pub zero_p_idempotent_generated: Flag,
    pub arithmetic: Flag,
    pub bezout: Flag,
    pub von_neumann_regular: Flag,
    pub theorem34: Flag,
    pub jacobson_nilpotency_index: Option<u64>,
    /// Flag name -> rendered witness or counterwitness.
    pub witnesses: Vec<(String, String)>,
}

pub fn classification_report(ring: &Ring, seed: u64) -> ClassificationReport {
    let mut witnesses: Vec<(String, String)> = Vec::new();
    let mut push_witness = |name: &str, value: String| {
        witnesses.push((name.to_string(), value));
    };

    let clean = match is_clean(ring, seed) {
        Ok(v) => {
            if let Some(w) = &v.counterwitness {
                push_witness("clean", format!("counterwitness {w}"));
            } else {
                push_witness(
                    "clean",
                    format!(
                        "{} elements {}",
                        v.scanned,
                        if v.sampled { "sampled" } else { "scanned" }
                    ),
                );
            }
            Flag::from_bool(v.clean)
        }
        Err(e) => {
            push_witness("clean", e.to_string());
            Flag::NotEvaluated
        }
    };
    let gelfand = match is_gelfand(ring) {
        Ok(g) => {
            if !g.gelfand {
                push_witness("gelfand", "(0) lies under (2) and (3)".to_string());
            }
            Flag::from_bool(g.gelfand)
        }
        Err(e) => {
            push_witness("gelfand", e.to_string());
            Flag::NotEvaluated
        }
    };
    let maxtd = Flag::from_bool(max_totally_disconnected(ring));
    let zero_p = match kernels_idempotent_generated(ring, seed) {
        Ok(b) => Flag::from_bool(b),
        Err(e) => {
            push_witness("zero_p_idempotent_generated", e.to_string());
            Flag::NotEvaluated
        }
    };
    let arithmetic = match is_arithmetic(ring) {
        Ok(v) => {
            if let Some((a, b)) = &v.counterwitness {
                push_witness("arithmetic", format!("counterwitness ({a}, {b})"));
            }
            Flag::from_bool(v.arithmetic)
        }
        Err(e) => {
            push_witness("arithmetic", e.to_string());
            Flag::NotEvaluated
        }
    };
    let bezout = match is_bezout(ring, seed) {
        Ok(v) => {
            if let Some((a, b)) = &v.counterwitness {
                push_witness("bezout", format!("counterwitness ({a}, {b})"));
            } else {
                push_witness(
                    "bezout",
                    format!(
                        "{} pairs {}",
                        v.pairs_checked,
                        if v.sampled { "sampled" } else { "checked" }
                    ),
                );
            }
            Flag::from_bool(v.bezout)
        }
        Err(e) => {
            push_witness("bezout", e.to_string());
            Flag::NotEvaluated
        }
    };
    let vnr = if ring.is_finite() {
        match is_von_neumann_regular(ring) {
            Ok(v) => {
                if let Some(w) = &v.counterwitness {
                    push_witness("von_neumann_regular", format!("counterwitness {w}"));
                }
                Flag::from_bool(v.regular)
            }
            Err(e) => {
                push_witness("von_neumann_regular", e.to_string());
                Flag::NotEvaluated
            }
        }
    } else {
        Flag::NotEvaluated
    };
    let theorem34 = if ring.is_finite() {
        match theorem34_classify(ring) {
            Ok(v) => {
                if let Some((a, b)) = &v.counterwitness {
                    push_witness("theorem34", format!("violating factor pair ({a}, {b})"));
                }
                Flag::from_bool(v.satisfied)
            }
            Err(e) => {
                push_witness("theorem34", e.to_string());
                Flag::NotEvaluated
            }
        }
    } else {
        Flag::NotEvaluated
    };
    let index = if ring.is_finite() {
        jacobson_nilpotency_index(ring).ok()
    } else {
        None
    };
    ClassificationReport {
        ring: ring.clone(),
        clean,
        gelfand,
        max_totally_disconnected: maxtd,
        zero_p_idempotent_generated: zero_p,
        arithmetic,
        bezout,
        von_neumann_regular: vnr,
        theorem34,
        jacobson_nilpotency_index: index,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: u64) -> Ring {
        Ring::zmod(n).unwrap()
    }

    fn res(x: u64) -> Element {
        Element::Residue(x)
    }

    #[test]
    fn clean_verdicts() {
        assert!(is_clean(&zn(12), 0).unwrap().clean);
        let z = is_clean(&Ring::integers(), 0).unwrap();
        assert!(!z.clean);
        assert_eq!(z.counterwitness, Some(Element::Int(3.into())));
        assert!(is_clean(&Ring::eventually_constant(2).unwrap(), 0).unwrap().clean);
    }

    #[test]
    fn theorem1_passes_on_representatives() {
        for spec in ["Zn(12)", "Z", "EC(2)", "LocalNonChain2", "Prod(Zn(4),Zn(3))"] {
            let ring = crate::parse::parse_ring_spec(spec).unwrap();
            let report = theorem1_equivalence(&ring, 0);
            assert_eq!(report.verdict, SuiteVerdict::Pass, "{spec}: {}", report.detail);
        }
        // all-false instance: Z
        let report = theorem1_equivalence(&Ring::integers(), 0);
        assert_eq!(report.clean, Flag::False);
        assert_eq!(report.gelfand_disconnected, Flag::False);
        assert_eq!(report.kernels_idempotent_generated, Flag::False);
    }

    #[test]
    fn local_global_examples() {
        let r6 = zn(6);
        // 2X + 3: witness X = 1 gives 5, a unit
        let f = Polynomial::univariate(&r6, &[res(3), res(2)]);
        match local_global_check(&r6, &f).unwrap() {
            LocalGlobalOutcome::Holds { witness } => assert_eq!(witness, vec![res(1)]),
            other => panic!("expected Holds, got {other:?}"),
        }
        // 2X: the Z/2 factor has no unit value
        let f = Polynomial::univariate(&r6, &[res(0), res(2)]);
        match local_global_check(&r6, &f).unwrap() {
            LocalGlobalOutcome::Vacuous { .. } => {}
            other => panic!("expected Vacuous, got {other:?}"),
        }
        // X over Zn(4): witness X = 1
        let r4 = zn(4);
        let f = Polynomial::univariate(&r4, &[res(0), res(1)]);
        match local_global_check(&r4, &f).unwrap() {
            LocalGlobalOutcome::Holds { witness } => assert_eq!(witness, vec![res(1)]),
            other => panic!("expected Holds, got {other:?}"),
        }
    }

    #[test]
    fn valuation_ring_checks() {
        assert!(is_valuation_local(&zn(8)).unwrap().chain);
        let f9 = Ring::poly_quot(3, &[1, 0, 1]).unwrap();
        assert!(is_valuation_local(&f9).unwrap().chain);
        let lnc = Ring::local_non_chain2();
        let v = is_valuation_local(&lnc).unwrap();
        assert!(!v.chain);
        let (a, b) = v.counterwitness.unwrap();
        // neither x | y nor y | x; witness is the least such pair
        assert!(lnc.divide(&a, &b).is_none() && lnc.divide(&b, &a).is_none());
        // non-local ring is rejected
        match is_valuation_local(&zn(12)) {
            Err(RingError::NotLocal { primitive_idempotents: 2 }) => {}
            other => panic!("expected NotLocal, got {other:?}"),
        }
    }

    #[test]
    fn arithmetic_checks() {
        assert!(is_arithmetic(&zn(12)).unwrap().arithmetic);
        assert!(is_arithmetic(&Ring::eventually_constant(2).unwrap())
            .unwrap()
            .arithmetic);
        let v = is_arithmetic(&Ring::local_non_chain2()).unwrap();
        assert!(!v.arithmetic);
        assert!(v.counterwitness.is_some());
    }

    #[test]
    fn bezout_checks() {
        assert!(is_bezout(&zn(12), 0).unwrap().bezout);
        let v = is_bezout(&Ring::local_non_chain2(), 0).unwrap();
        assert!(!v.bezout);
        // the least counterwitness pair is {x, y} (y precedes x in the
        // canonical coefficient-list order)
        let (a, b) = v.counterwitness.unwrap();
        let x = Element::Poly(vec![0, 1, 0]);
        let y = Element::Poly(vec![0, 0, 1]);
        assert!((a == x && b == y) || (a == y && b == x), "got ({a}, {b})");
        assert!(is_bezout(&Ring::eventually_constant(2).unwrap(), 0).unwrap().bezout);
    }

    #[test]
    fn vnr_checks() {
        assert!(is_von_neumann_regular(&zn(6)).unwrap().regular);
        let v = is_von_neumann_regular(&zn(4)).unwrap();
        assert!(!v.regular);
        assert_eq!(v.counterwitness, Some(res(2)));
        let f4 = Ring::poly_quot(2, &[1, 1, 1]).unwrap();
        assert!(is_von_neumann_regular(&f4).unwrap().regular);
    }

    #[test]
    fn jacobson_indices() {
        assert_eq!(jacobson_nilpotency_index(&zn(12)).unwrap(), 2);
        assert_eq!(jacobson_nilpotency_index(&zn(8)).unwrap(), 3);
        assert_eq!(jacobson_nilpotency_index(&zn(6)).unwrap(), 1);
    }

    #[test]
    fn theorem34_checks() {
        assert!(theorem34_classify(&zn(12)).unwrap().satisfied);
        let v = theorem34_classify(&Ring::local_non_chain2()).unwrap();
        assert!(!v.satisfied);
        let prod = Ring::product(vec![zn(9), Ring::local_non_chain2()]).unwrap();
        let v = theorem34_classify(&prod).unwrap();
        assert!(!v.satisfied);
        assert!(v.factor_idempotent.is_some());
    }

    #[test]
    fn classification_report_zn12() {
        let report = classification_report(&zn(12), 0);
        assert_eq!(report.clean, Flag::True);
        assert_eq!(report.arithmetic, Flag::True);
        assert_eq!(report.jacobson_nilpotency_index, Some(2));
    }

    #[test]
    fn vnr_agrees_with_index_and_arithmetic() {
        for n in 2..=30 {
            let r = zn(n);
            let vnr = is_von_neumann_regular(&r).unwrap().regular;
            let alt = jacobson_nilpotency_index(&r).unwrap() == 1
                && is_arithmetic(&r).unwrap().arithmetic;
            assert_eq!(vnr, alt, "disagreement on Zn({n})");
        }
    }
}
