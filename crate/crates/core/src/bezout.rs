//! Constructive Bezout certificates, elementary-divisor witnesses and the
//! Gillman–Henriksen condition.
//!
//! Over the integers these are extended Euclid; over finite rings they are
//! least-witness exhaustive constructions routed through the local factors;
//! over EC(p) they are componentwise, with gcd tails normalized to powers
//! of p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ec::{self, Rat};
use crate::error::{Result, RingError};
use crate::ring::{Element, Ring, RingKind};
use crate::spectrum::{closure_elements, primitive_idempotents};

/// d = s·a + t·b with a, b ∈ (d).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate {
    pub d: Element,
    pub s: Element,
    pub t: Element,
}

/// Witness shape: a = a'·d, b = b'·d and a' + c·b' is a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EDRWitness {
    pub d: Element,
    pub a_prime: Element,
    pub b_prime: Element,
    pub c: Element,
}

/// For (a,b,c) generating R: (p·a, p·b + q·c) = R.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GHWitness {
    pub p: Element,
    pub q: Element,
}

/// Internal pivot certificate for diagonal reduction: everything in the
/// Bezout certificate plus quotients chosen so that s·a' + t·b' is a unit,
/// making [[s, t], [-b', a']] unimodular.
#[derive(Debug, Clone)]
pub(crate) struct PivotData {
    pub d: Element,
    pub s: Element,
    pub t: Element,
    pub a_quot: Element,
    pub b_quot: Element,
}

fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let tmp = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, tmp);
        let tmp = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, tmp);
        let tmp = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, tmp);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Least-d Bezout certificate: d is the least canonical generator of
/// (a, b) and (s, t) is the lexicographically least coefficient pair.
pub fn gcd_bezout(ring: &Ring, a: &Element, b: &Element) -> Result<BezoutCertificate> {
    match ring.kind() {
        RingKind::Integers => {
            let (x, y) = int_pair(a, b);
            let (d, s, t) = egcd(x, y);
            Ok(BezoutCertificate {
                d: Element::Int(d),
                s: Element::Int(s),
                t: Element::Int(t),
            })
        }
        RingKind::EventuallyConstant(p) => {
            let pd = ec_pivot(*p, a, b);
            Ok(BezoutCertificate { d: pd.d, s: pd.s, t: pd.t })
        }
        _ => {
            let ideal = closure_elements(ring, &[a.clone(), b.clone()])?;
            let all = ring.elements()?;
            let d = least_principal_generator(ring, &all, &ideal).ok_or_else(|| {
                RingError::NotPrincipal { a: a.to_string(), b: b.to_string() }
            })?;
            // Every ideal element is s·a + t·b directly; scan in lex order.
            for s in &all {
                let sa = ring.mul(s, a);
                for t in &all {
                    if ring.add(&sa, &ring.mul(t, b)) == d {
                        return Ok(BezoutCertificate {
                            d,
                            s: s.clone(),
                            t: t.clone(),
                        });
                    }
                }
            }
            unreachable!("a generator of (a, b) is always a combination of a and b")
        }
    }
}

/// Least element of `ideal` whose multiples exhaust it, if any.
fn least_principal_generator(
    ring: &Ring,
    all: &[Element],
    ideal: &[Element],
) -> Option<Element> {
    ideal
        .iter()
        .find(|d| {
            let multiples: std::collections::HashSet<Element> =
                all.iter().map(|r| ring.mul(r, d)).collect();
            multiples.len() == ideal.len()
        })
        .cloned()
}

fn int_pair<'a>(a: &'a Element, b: &'a Element) -> (&'a BigInt, &'a BigInt) {
    match (a, b) {
        (Element::Int(x), Element::Int(y)) => (x, y),
        _ => panic!("integer operation on non-integer elements"),
    }
}

/// Elementary divisor witness of Theorem-2.1 shape. Deterministic:
/// quotients and c are scanned in lexicographic canonical order.
pub fn edr_witness(ring: &Ring, a: &Element, b: &Element) -> Result<EDRWitness> {
    let zero = ring.zero();
    if *a == zero && *b == zero {
        return Ok(EDRWitness {
            d: zero,
            a_prime: ring.one(),
            b_prime: ring.zero(),
            c: ring.zero(),
        });
    }
    match ring.kind() {
        RingKind::Integers => {
            let (x, y) = int_pair(a, b);
            let (d, _, _) = egcd(x, y);
            let aq = x / &d;
            let bq = y / &d;
            // a' + c·b' ∈ {1, -1}
            for target in [BigInt::one(), -BigInt::one()] {
                if bq.is_zero() {
                    if aq.abs().is_one() {
                        return Ok(EDRWitness {
                            d: Element::Int(d),
                            a_prime: Element::Int(aq),
                            b_prime: Element::Int(bq),
                            c: Element::Int(BigInt::zero()),
                        });
                    }
                    break;
                }
                let num = &target - &aq;
                let (q, r) = num.div_rem(&bq);
                if r.is_zero() {
                    return Ok(EDRWitness {
                        d: Element::Int(d),
                        a_prime: Element::Int(aq),
                        b_prime: Element::Int(bq),
                        c: Element::Int(q),
                    });
                }
            }
            Err(RingError::WitnessNotFound(format!(
                "no c with a' + c·b' a unit for ({a}, {b}) over Z; \
                 Z is not local-global"
            )))
        }
        RingKind::EventuallyConstant(p) => {
            let pd = ec_pivot(*p, a, b);
            let c = ec_witness_c(*p, &pd.a_quot);
            let w = EDRWitness { d: pd.d, a_prime: pd.a_quot, b_prime: pd.b_quot, c };
            debug_assert!(ring
                .is_unit(&ring.add(&w.a_prime, &ring.mul(&w.c, &w.b_prime)))
                .is_some());
            Ok(w)
        }
        _ => {
            // Only the least principal generator is needed here, not the
            // full coefficient certificate.
            let ideal = closure_elements(ring, &[a.clone(), b.clone()])?;
            let all = ring.elements()?;
            let d = least_principal_generator(ring, &all, &ideal).ok_or_else(|| {
                RingError::NotPrincipal { a: a.to_string(), b: b.to_string() }
            })?;
            let divs_a: Vec<Element> =
                all.iter().filter(|t| ring.mul(t, &d) == *a).cloned().collect();
            let divs_b: Vec<Element> =
                all.iter().filter(|t| ring.mul(t, &d) == *b).cloned().collect();
            for aq in &divs_a {
                for bq in &divs_b {
                    for c in &all {
                        let combo = ring.add(aq, &ring.mul(c, bq));
                        if ring.is_unit(&combo).is_some() {
                            return Ok(EDRWitness {
                                d,
                                a_prime: aq.clone(),
                                b_prime: bq.clone(),
                                c: c.clone(),
                            });
                        }
                    }
                }
            }
            Err(RingError::WitnessNotFound(format!(
                "exhaustive search found no (a', b', c) for ({a}, {b}) over {ring}; \
                 this falsifies the elementary divisor property if {ring} is a \
                 clean arithmetic ring"
            )))
        }
    }
}

/// c per the componentwise rule: 0 where the a'-component is already a
/// unit, 1 elsewhere.
fn ec_witness_c(p: u64, a_quot: &Element) -> Element {
    let n = ec::prefix_len(a_quot);
    let mut prefix = Vec::with_capacity(n);
    for k in 0..n {
        let v = ec::component(a_quot, k);
        prefix.push(if v.is_zero() { Rat::one() } else { Rat::zero() });
    }
    let tail = ec::component(a_quot, n);
    let tail_c = if ec::is_d_unit(&tail, p) { Rat::zero() } else { Rat::one() };
    ec::make_seq(prefix, tail_c)
}

/// Gillman–Henriksen witness: with q taken from the elementary divisor
/// data on (b, c) and p = 1, the pair (a, b + q·c) generates R.
pub fn gh_condition(
    ring: &Ring,
    a: &Element,
    b: &Element,
    c: &Element,
) -> Result<GHWitness> {
    match ring.kind() {
        RingKind::Integers => gh_integers(a, b, c),
        RingKind::EventuallyConstant(p) => {
            if !ec_unimodular(*p, &[a, b, c]) {
                return Err(RingError::NotUnimodular(format!(
                    "({a}, {b}, {c}) does not generate EC({p})"
                )));
            }
            let w = edr_witness(ring, b, c)?;
            let q = w.c;
            if !ec_unimodular(*p, &[a, &ring.add(b, &ring.mul(&q, c))]) {
                return Err(RingError::WitnessNotFound(
                    "constructed q does not make (a, b + qc) unimodular".into(),
                ));
            }
            Ok(GHWitness { p: ring.one(), q })
        }
        _ => {
            let all = ring.elements()?;
            let triple = closure_elements(ring, &[a.clone(), b.clone(), c.clone()])?;
            if triple.len() != all.len() {
                return Err(RingError::NotUnimodular(format!(
                    "({a}, {b}, {c}) does not generate {ring}"
                )));
            }
            let w = edr_witness(ring, b, c)?;
            let q = w.c;
            // s with a + s·d a unit exists on clean rings; pick the least.
            let found = all
                .iter()
                .any(|s| ring.is_unit(&ring.add(a, &ring.mul(s, &w.d))).is_some());
            if !found {
                return Err(RingError::WitnessNotFound(format!(
                    "no s with a + s·d a unit for ({a}, {b}, {c}) over {ring}"
                )));
            }
            let pair = closure_elements(
                ring,
                &[a.clone(), ring.add(b, &ring.mul(&q, c))],
            )?;
            if pair.len() != all.len() {
                return Err(RingError::WitnessNotFound(
                    "constructed q does not make (a, b + qc) generate R".into(),
                ));
            }
            Ok(GHWitness { p: ring.one(), q })
        }
    }
}

fn gh_integers(a: &Element, b: &Element, c: &Element) -> Result<GHWitness> {
    let (x, y) = int_pair(a, b);
    let z = match c {
        Element::Int(z) => z,
        _ => panic!("integer operation on non-integer element"),
    };
    let g = x.gcd(&y.gcd(z));
    if !g.is_one() {
        return Err(RingError::NotUnimodular(format!(
            "gcd({a}, {b}, {c}) = {g} is not 1"
        )));
    }
    if x.is_zero() {
        // (0, sb + tc) with sb + tc = gcd(b, c) = 1.
        let (_, s, t) = egcd(y, z);
        return Ok(GHWitness { p: Element::Int(s), q: Element::Int(t) });
    }
    // p = 1; scan q in canonical order. A residue class of valid q exists
    // modulo the radical of a, so the bound |a| + 2 suffices.
    use num_traits::ToPrimitive;
    let bound = x.abs().to_u64().unwrap_or(1 << 20).min(1 << 20) + 2;
    let mut candidates = vec![0i64];
    for k in 1..=bound as i64 {
        candidates.push(k);
        candidates.push(-k);
    }
    for q in candidates {
        let q = BigInt::from(q);
        let combo = y + &q * z;
        if x.gcd(&combo).is_one() {
            return Ok(GHWitness {
                p: Element::Int(BigInt::one()),
                q: Element::Int(q),
            });
        }
    }
    Err(RingError::WitnessNotFound(format!(
        "no q with gcd({a}, {b} + q·{c}) = 1 within the scan bound"
    )))
}

/// Componentwise unimodularity over EC(p): every index has a nonzero
/// entry and the tails reach valuation zero.
fn ec_unimodular(p: u64, elems: &[&Element]) -> bool {
    let n = elems.iter().map(|e| ec::prefix_len(e)).max().unwrap_or(0);
    for k in 0..n {
        if elems.iter().all(|e| ec::component(e, k).is_zero()) {
            return false;
        }
    }
    elems
        .iter()
        .any(|e| ec::vp(&ec::component(e, n), p) == Some(0))
}

/// Unimodular 2x2 pivot data for diagonal reduction. For finite rings the
/// construction runs through the local factors, which guarantees that
/// s·a' + t·b' is a unit; a slower generic search backs the rare
/// principal-but-not-chain case.
pub(crate) fn bezout_pivot(ring: &Ring, a: &Element, b: &Element) -> Result<PivotData> {
    match ring.kind() {
        RingKind::Integers => {
            let (x, y) = int_pair(a, b);
            if x.is_zero() && y.is_zero() {
                return Ok(PivotData {
                    d: ring.zero(),
                    s: ring.one(),
                    t: ring.zero(),
                    a_quot: ring.one(),
                    b_quot: ring.zero(),
                });
            }
            let (d, s, t) = egcd(x, y);
            Ok(PivotData {
                a_quot: Element::Int(x / &d),
                b_quot: Element::Int(y / &d),
                d: Element::Int(d),
                s: Element::Int(s),
                t: Element::Int(t),
            })
        }
        RingKind::EventuallyConstant(p) => Ok(ec_pivot(*p, a, b)),
        _ => finite_pivot(ring, a, b),
    }
}

fn finite_pivot(ring: &Ring, a: &Element, b: &Element) -> Result<PivotData> {
    let prims = primitive_idempotents(ring)?;
    let all = ring.elements()?;
    let zero = ring.zero();
    let mut d = zero.clone();
    let mut s = zero.clone();
    let mut t = zero.clone();
    let mut aq = zero.clone();
    let mut bq = zero.clone();
    for e in &prims {
        let ae = ring.mul(a, e);
        let be = ring.mul(b, e);
        let factor: Vec<Element> = {
            let mut v: Vec<Element> = all
                .iter()
                .map(|x| ring.mul(x, e))
                .collect::<std::collections::HashSet<_>>()
                .into_iter()
                .collect();
            v.sort();
            v
        };
        // In a chain factor one of the two divides the other.
        if let Some(q) = factor.iter().find(|t| ring.mul(t, &ae) == be) {
            // b = q·a on this factor: pivot on a.
            d = ring.add(&d, &ae);
            s = ring.add(&s, e);
            aq = ring.add(&aq, e);
            bq = ring.add(&bq, &q.clone());
        } else if let Some(q) = factor.iter().find(|t| ring.mul(t, &be) == ae) {
            d = ring.add(&d, &be);
            t = ring.add(&t, e);
            bq = ring.add(&bq, e);
            aq = ring.add(&aq, &q.clone());
        } else {
            // Non-chain factor: fall back to an exhaustive search over the
            // whole ring for a unimodular pivot certificate.
            return finite_pivot_generic(ring, a, b);
        }
    }
    debug_assert_eq!(ring.add(&ring.mul(&s, a), &ring.mul(&t, b)), d);
    debug_assert_eq!(ring.mul(&aq, &d), *a);
    debug_assert_eq!(ring.mul(&bq, &d), *b);
    let combo = ring.add(&ring.mul(&s, &aq), &ring.mul(&t, &bq));
    debug_assert!(ring.is_unit(&combo).is_some());
    Ok(PivotData { d, s, t, a_quot: aq, b_quot: bq })
}

/// Exhaustive unimodular pivot search for finite rings whose factors are
/// not chain rings. Returns NotPrincipal when the ideal (a, b) has no
/// single generator.
fn finite_pivot_generic(ring: &Ring, a: &Element, b: &Element) -> Result<PivotData> {
    let ideal = closure_elements(ring, &[a.clone(), b.clone()])?;
    let all = ring.elements()?;
    let d = least_principal_generator(ring, &all, &ideal).ok_or_else(|| {
        RingError::NotPrincipal { a: a.to_string(), b: b.to_string() }
    })?;
    let divs_a: Vec<Element> =
        all.iter().filter(|t| ring.mul(t, &d) == *a).cloned().collect();
    let divs_b: Vec<Element> =
        all.iter().filter(|t| ring.mul(t, &d) == *b).cloned().collect();
    for s in &all {
        let sa = ring.mul(s, a);
        for t in &all {
            if ring.add(&sa, &ring.mul(t, b)) != d {
                continue;
            }
            for aq in &divs_a {
                for bq in &divs_b {
                    let combo = ring.add(&ring.mul(s, aq), &ring.mul(t, bq));
                    if ring.is_unit(&combo).is_some() {
                        return Ok(PivotData {
                            d,
                            s: s.clone(),
                            t: t.clone(),
                            a_quot: aq.clone(),
                            b_quot: bq.clone(),
                        });
                    }
                }
            }
        }
    }
    Err(RingError::NotPrincipal { a: a.to_string(), b: b.to_string() })
}

/// Componentwise pivot data over EC(p). Gcd components are normalized to
/// {0, 1} on the prefix and a power of p on the tail.
fn ec_pivot(p: u64, a: &Element, b: &Element) -> PivotData {
    let n = ec::prefix_len(a).max(ec::prefix_len(b));
    let mut dp = Vec::with_capacity(n);
    let mut sp = Vec::with_capacity(n);
    let mut tp = Vec::with_capacity(n);
    let mut aqp = Vec::with_capacity(n);
    let mut bqp = Vec::with_capacity(n);
    let pr = Rat::from(BigInt::from(p));
    let mut push =
        |k: usize, dv: Rat, sv: Rat, tv: Rat, aqv: Rat, bqv: Rat| {
            let _ = k;
            dp.push(dv);
            sp.push(sv);
            tp.push(tv);
            aqp.push(aqv);
            bqp.push(bqv);
        };
    for k in 0..n {
        let av = ec::component(a, k);
        let bv = ec::component(b, k);
        if !av.is_zero() {
            push(k, Rat::one(), av.recip(), Rat::zero(), av.clone(), bv.clone());
        } else if !bv.is_zero() {
            push(k, Rat::one(), Rat::zero(), bv.recip(), Rat::zero(), bv.clone());
        } else {
            push(k, Rat::zero(), Rat::one(), Rat::zero(), Rat::one(), Rat::zero());
        }
    }
    let at = ec::component(a, n);
    let bt = ec::component(b, n);
    let pivot_on_a = match (ec::vp(&at, p), ec::vp(&bt, p)) {
        (None, None) => None,
        (Some(_), None) => Some(true),
        (None, Some(_)) => Some(false),
        (Some(va), Some(vb)) => Some(va <= vb),
    };
    let (dt, st, tt, aqt, bqt) = match pivot_on_a {
        None => (Rat::zero(), Rat::one(), Rat::zero(), Rat::one(), Rat::zero()),
        Some(true) => {
            let pv = pow_rat(&pr, ec::vp(&at, p).unwrap());
            (pv.clone(), &pv / &at, Rat::zero(), &at / &pv, &bt / &pv)
        }
        Some(false) => {
            let pv = pow_rat(&pr, ec::vp(&bt, p).unwrap());
            (pv.clone(), Rat::zero(), &pv / &bt, &at / &pv, &bt / &pv)
        }
    };
    PivotData {
        d: ec::make_seq(dp, dt),
        s: ec::make_seq(sp, st),
        t: ec::make_seq(tp, tt),
        a_quot: ec::make_seq(aqp, aqt),
        b_quot: ec::make_seq(bqp, bqt),
    }
}

fn pow_rat(base: &Rat, exp: i64) -> Rat {
    // Tails lie in Z_(p), so valuations here are nonnegative.
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
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

    fn int(x: i64) -> Element {
        Element::Int(BigInt::from(x))
    }

    #[test]
    fn bezout_over_integers_matches_euclid() {
        let z = Ring::integers();
        let cert = gcd_bezout(&z, &int(4), &int(6)).unwrap();
        assert_eq!(cert.d, int(2));
        assert_eq!(cert.s, int(-1));
        assert_eq!(cert.t, int(1));
    }

    #[test]
    fn bezout_over_zn12_least_witnesses() {
        let r = zn(12);
        let cert = gcd_bezout(&r, &res(4), &res(6)).unwrap();
        assert_eq!(cert.d, res(2));
        assert_eq!(cert.s, res(2));
        assert_eq!(cert.t, res(1));
        // invariants: d = s·a + t·b, and a, b ∈ (d)
        let combo = r.add(&r.mul(&cert.s, &res(4)), &r.mul(&cert.t, &res(6)));
        assert_eq!(combo, cert.d);
        assert!(r.divide(&res(4), &cert.d).is_some());
        assert!(r.divide(&res(6), &cert.d).is_some());
    }

    #[test]
    fn bezout_over_ec2_componentwise() {
        let ring = Ring::eventually_constant(2).unwrap();
        let a = crate::parse::parse_element(&ring, "[0;2]").unwrap();
        let b = crate::parse::parse_element(&ring, "[3;4]").unwrap();
        let cert = gcd_bezout(&ring, &a, &b).unwrap();
        assert_eq!(cert.d, crate::parse::parse_element(&ring, "[1;2]").unwrap());
        assert_eq!(cert.s, crate::parse::parse_element(&ring, "[0;1]").unwrap());
        assert_eq!(cert.t, crate::parse::parse_element(&ring, "[1/3;0]").unwrap());
        let combo = ring.add(&ring.mul(&cert.s, &a), &ring.mul(&cert.t, &b));
        assert_eq!(combo, cert.d);
    }

    #[test]
    fn non_principal_pair_is_rejected() {
        let r = Ring::local_non_chain2();
        let x = Element::Poly(vec![0, 1, 0]);
        let y = Element::Poly(vec![0, 0, 1]);
        match gcd_bezout(&r, &x, &y) {
            Err(RingError::NotPrincipal { .. }) => {}
            other => panic!("expected NotPrincipal, got {other:?}"),
        }
    }

    #[test]
    fn edr_witness_zn12() {
        let r = zn(12);
        let w = edr_witness(&r, &res(4), &res(6)).unwrap();
        assert_eq!(w.d, res(2));
        assert_eq!(w.a_prime, res(2));
        assert_eq!(w.b_prime, res(3));
        assert_eq!(w.c, res(1));
        let combo = r.add(&w.a_prime, &r.mul(&w.c, &w.b_prime));
        assert_eq!(combo, res(5));
        assert!(r.is_unit(&combo).is_some());
    }

    #[test]
    fn edr_witness_zero_pair() {
        let r = zn(8);
        let w = edr_witness(&r, &res(0), &res(0)).unwrap();
        assert_eq!(w.d, res(0));
        assert_eq!(w.a_prime, res(1));
        assert_eq!(w.b_prime, res(0));
        assert_eq!(w.c, res(0));
    }

    #[test]
    fn edr_witness_ec2() {
        let ring = Ring::eventually_constant(2).unwrap();
        let a = crate::parse::parse_element(&ring, "[0;2]").unwrap();
        let b = crate::parse::parse_element(&ring, "[3;4]").unwrap();
        let w = edr_witness(&ring, &a, &b).unwrap();
        assert_eq!(w.d, crate::parse::parse_element(&ring, "[1;2]").unwrap());
        assert_eq!(w.a_prime, crate::parse::parse_element(&ring, "[0;1]").unwrap());
        assert_eq!(w.b_prime, crate::parse::parse_element(&ring, "[3;2]").unwrap());
        assert_eq!(w.c, crate::parse::parse_element(&ring, "[1;0]").unwrap());
        assert_eq!(ring.mul(&w.a_prime, &w.d), a);
        assert_eq!(ring.mul(&w.b_prime, &w.d), b);
        let combo = ring.add(&w.a_prime, &ring.mul(&w.c, &w.b_prime));
        assert_eq!(combo, crate::parse::parse_element(&ring, "[3;1]").unwrap());
        assert!(ring.is_unit(&combo).is_some());
    }

    #[test]
    fn gh_condition_examples() {
        let z = Ring::integers();
        let w = gh_condition(&z, &int(2), &int(3), &int(5)).unwrap();
        assert_eq!((w.p, w.q), (int(1), int(0)));

        let r6 = zn(6);
        let w = gh_condition(&r6, &res(2), &res(3), &res(0)).unwrap();
        assert_eq!((w.p, w.q), (res(1), res(0)));

        let r4 = zn(4);
        let w = gh_condition(&r4, &res(1), &res(0), &res(0)).unwrap();
        assert_eq!((w.p, w.q), (res(1), res(0)));
    }

    #[test]
    fn gh_condition_rejects_non_unimodular() {
        let r = zn(4);
        match gh_condition(&r, &res(2), &res(2), &res(0)) {
            Err(RingError::NotUnimodular(_)) => {}
            other => panic!("expected NotUnimodular, got {other:?}"),
        }
    }

    #[test]
    fn pivot_data_has_unit_combination() {
        let r = zn(12);
        for a in 0..12 {
            for b in 0..12 {
                let pd = bezout_pivot(&r, &res(a), &res(b)).unwrap();
                let lhs = r.add(&r.mul(&pd.s, &res(a)), &r.mul(&pd.t, &res(b)));
                assert_eq!(lhs, pd.d);
                assert_eq!(r.mul(&pd.a_quot, &pd.d), res(a));
                assert_eq!(r.mul(&pd.b_quot, &pd.d), res(b));
                let combo =
                    r.add(&r.mul(&pd.s, &pd.a_quot), &r.mul(&pd.t, &pd.b_quot));
                assert!(r.is_unit(&combo).is_some(), "({a},{b}): {combo} not a unit");
            }
        }
    }
}
