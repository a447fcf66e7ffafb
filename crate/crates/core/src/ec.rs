//! Arithmetic helpers for the eventually constant sequence ring EC(p).
//!
//! Elements are sequences of exact rationals that are constant from some
//! index on, with the constant value lying in Z localized at p (denominator
//! coprime to p). The canonical form stores the finite prefix plus the tail
//! value, with the prefix trimmed so its last entry differs from the tail.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::Element;

pub type Rat = BigRational;

/// p-adic valuation of a nonzero rational; `None` for zero (valuation +inf).
pub fn vp(r: &Rat, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |mut x: BigInt| -> i64 {
        let mut c = 0;
        x = x.abs();
        loop {
            let (q, rem) = x.div_rem(&p);
            if rem.is_zero() {
                c += 1;
                x = q;
            } else {
                return c;
            }
        }
    };
    Some(count(r.numer().clone()) - count(r.denom().clone()))
}

/// Membership in D = Z localized at p: denominator coprime to p.
pub fn in_d(r: &Rat, p: u64) -> bool {
    match vp(r, p) {
        None => true,
        Some(v) => v >= 0,
    }
}

/// Unit of D: valuation exactly zero.
pub fn is_d_unit(r: &Rat, p: u64) -> bool {
    vp(r, p) == Some(0)
}

/// Canonical ordering on rationals: zero first, then by (|num|, sign, den).
/// Keeps "least witness" choices small and nonnegative where possible.
pub fn cmp_rat(a: &Rat, b: &Rat) -> std::cmp::Ordering {
    let key = |r: &Rat| {
        (
            r.numer().abs(),
            if r.numer().is_negative() { 1u8 } else { 0u8 },
            r.denom().clone(),
        )
    };
    key(a).cmp(&key(b))
}

/// Builds the canonical form: trims prefix entries equal to the tail.
pub fn make_seq(mut prefix: Vec<Rat>, tail: Rat) -> Element {
    while let Some(last) = prefix.last() {
        if *last == tail {
            prefix.pop();
        } else {
            break;
        }
    }
    Element::Seq { prefix, tail }
}

/// Value of the sequence at index k.
pub fn component(e: &Element, k: usize) -> Rat {
    match e {
        Element::Seq { prefix, tail } => {
            if k < prefix.len() {
                prefix[k].clone()
            } else {
                tail.clone()
            }
        }
        _ => panic!("component: not a sequence element"),
    }
}

pub fn prefix_len(e: &Element) -> usize {
    match e {
        Element::Seq { prefix, .. } => prefix.len(),
        _ => panic!("prefix_len: not a sequence element"),
    }
}

/// Pads both operands to a common prefix length, applies `f` componentwise
/// (including tails), and re-trims.
pub fn zip_op(a: &Element, b: &Element, f: impl Fn(&Rat, &Rat) -> Rat) -> Element {
    let (ap, at) = parts(a);
    let (bp, bt) = parts(b);
    let n = ap.len().max(bp.len());
    let mut prefix = Vec::with_capacity(n);
    for k in 0..n {
        let av = if k < ap.len() { &ap[k] } else { at };
        let bv = if k < bp.len() { &bp[k] } else { bt };
        prefix.push(f(av, bv));
    }
    make_seq(prefix, f(at, bt))
}

pub fn map_op(a: &Element, f: impl Fn(&Rat) -> Rat) -> Element {
    let (ap, at) = parts(a);
    make_seq(ap.iter().map(&f).collect(), f(at))
}

fn parts(e: &Element) -> (&[Rat], &Rat) {
    match e {
        Element::Seq { prefix, tail } => (prefix, tail),
        _ => panic!("parts: not a sequence element"),
    }
}

/// The idempotent e_k (1 at index k, 0 elsewhere).
pub fn basis_idempotent(k: usize) -> Element {
    let mut prefix = vec![Rat::zero(); k + 1];
    prefix[k] = Rat::one();
    make_seq(prefix, Rat::zero())
}

pub fn rat_from(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Seeded random element: prefix of length 0..=4 with small rationals,
/// tail a small rational with denominator coprime to p.
pub fn random_element(p: u64, rng: &mut crate::rng::SplitMix64) -> Element {
    let len = rng.below(5) as usize;
    let mut prefix = Vec::with_capacity(len);
    for _ in 0..len {
        let num = rng.signed(9);
        let den = rng.below(9) as i64 + 1;
        prefix.push(rat_from(num, den));
    }
    let tail = loop {
        let num = rng.signed(9);
        let den = rng.below(9) as i64 + 1;
        if !(den as u64).is_multiple_of(p) {
            break rat_from(num, den);
        }
    };
    make_seq(prefix, tail)
}

/// Seeded random unit: all components nonzero, tail of valuation zero.
pub fn random_unit(p: u64, rng: &mut crate::rng::SplitMix64) -> Element {
    loop {
        let e = random_element(p, rng);
        if let Element::Seq { prefix, tail } = &e {
            if prefix.iter().all(|r| !r.is_zero()) && is_d_unit(tail, p) {
                return e;
            }
        }
    }
}
