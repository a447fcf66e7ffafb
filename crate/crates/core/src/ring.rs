//! Ring representations with exact canonical-form element arithmetic.
//!
//! The corpus covers residue rings Z/n, quotient fields F_p[x]/(m), finite
//! products, the integers, the eventually constant sequence ring EC(p) and
//! the hard-coded local non-chain ring F2[x,y]/(x,y)^2.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::ec::{self, Rat};
use crate::error::{Result, RingError};

/// Default bound on the order of rings that enumeration operations accept.
pub const DEFAULT_ENUM_CAP: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// Z/n for n >= 2.
    ZmodN(u64),
    /// F_p[x]/(modulus); modulus is monic, constant term first, degree >= 1.
    PolyQuot { p: u64, modulus: Vec<u64> },
    /// Finite direct product.
    Product(Vec<Ring>),
    /// The ring of integers.
    Integers,
    /// Eventually constant sequences of rationals with tail in Z_(p).
    EventuallyConstant(u64),
    /// F2[x,y]/(x^2, xy, y^2), order 8, basis {1, x, y}.
    LocalNonChain2,
}

#[derive(Debug, Clone)]
pub struct Ring {
    kind: RingKind,
    cap: u64,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
    }
}

/// A ring element in canonical form. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// Residue in [0, n).
    Residue(u64),
    /// Coefficient list of fixed length deg(modulus), entries in [0, p).
    /// Also used for LocalNonChain2 with coordinates (1, x, y) over F2.
    Poly(Vec<u64>),
    /// One entry per product factor.
    Tuple(Vec<Element>),
    /// Arbitrary-precision integer.
    Int(BigInt),
    /// Eventually constant sequence: finite prefix plus tail value.
    Seq { prefix: Vec<Rat>, tail: Rat },
}

/// Canonical total order used for every deterministic "least witness"
/// choice: residues by value, coefficient lists and tuples lexicographic,
/// integers by (|a|, sign), sequences by (prefix length, prefix, tail).
pub fn canonical_cmp(a: &Element, b: &Element) -> Ordering {
    fn rank(e: &Element) -> u8 {
        match e {
            Element::Residue(_) => 0,
            Element::Poly(_) => 1,
            Element::Tuple(_) => 2,
            Element::Int(_) => 3,
            Element::Seq { .. } => 4,
        }
    }
    match (a, b) {
        (Element::Residue(x), Element::Residue(y)) => x.cmp(y),
        (Element::Poly(x), Element::Poly(y)) => x.cmp(y),
        (Element::Tuple(x), Element::Tuple(y)) => {
            for (u, v) in x.iter().zip(y.iter()) {
                let c = canonical_cmp(u, v);
                if c != Ordering::Equal {
                    return c;
                }
            }
            x.len().cmp(&y.len())
        }
        (Element::Int(x), Element::Int(y)) => {
            let key = |v: &BigInt| (v.abs(), u8::from(v.is_negative()));
            key(x).cmp(&key(y))
        }
        (Element::Seq { prefix: xp, tail: xt }, Element::Seq { prefix: yp, tail: yt }) => {
            match xp.len().cmp(&yp.len()) {
                Ordering::Equal => {}
                c => return c,
            }
            for (u, v) in xp.iter().zip(yp.iter()) {
                let c = ec::cmp_rat(u, v);
                if c != Ordering::Equal {
                    return c;
                }
            }
            ec::cmp_rat(xt, yt)
        }
        _ => rank(a).cmp(&rank(b)),
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_cmp(self, other)
    }
}

/// Decomposition of an element as unit + idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanDecomposition {
    pub unit: Element,
    pub idempotent: Element,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalKind {
    Nilradical,
    Jacobson,
}

/// Explicit radical of a finite ring with a minimal generating subset.
#[derive(Debug, Clone)]
pub struct RadicalSet {
    pub which: RadicalKind,
    pub elements: Vec<Element>,
    pub generators: Vec<Element>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn zmod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(RingError::InvalidSpec(format!("Zn({n}): modulus must be >= 2")));
        }
        Ok(Ring { kind: RingKind::ZmodN(n), cap: DEFAULT_ENUM_CAP })
    }

    pub fn poly_quot(p: u64, raw_modulus: &[i64]) -> Result<Ring> {
        if !is_prime(p) {
            return Err(RingError::InvalidSpec(format!(
                "Quot base Zn({p}) must have prime modulus"
            )));
        }
        if p >= 1 << 31 {
            return Err(RingError::InvalidSpec(
                "Quot base characteristic must fit in 31 bits".into(),
            ));
        }
        if raw_modulus.len() < 2 {
            return Err(RingError::InvalidSpec(
                "Quot modulus must have degree >= 1".into(),
            ));
        }
        let modulus: Vec<u64> =
            raw_modulus.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
        if *modulus.last().unwrap() != 1 {
            return Err(RingError::InvalidSpec(
                "Quot modulus must be monic (leading coefficient 1)".into(),
            ));
        }
        Ok(Ring { kind: RingKind::PolyQuot { p, modulus }, cap: DEFAULT_ENUM_CAP })
    }

    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        if factors.is_empty() {
            return Err(RingError::InvalidSpec("Prod requires at least one factor".into()));
        }
        let cap = factors.iter().map(|f| f.cap).max().unwrap();
        Ok(Ring { kind: RingKind::Product(factors), cap })
    }

    pub fn integers() -> Ring {
        Ring { kind: RingKind::Integers, cap: DEFAULT_ENUM_CAP }
    }

    pub fn eventually_constant(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(RingError::InvalidSpec(format!("EC({p}): p must be prime")));
        }
        Ok(Ring { kind: RingKind::EventuallyConstant(p), cap: DEFAULT_ENUM_CAP })
    }

    pub fn local_non_chain2() -> Ring {
        Ring { kind: RingKind::LocalNonChain2, cap: DEFAULT_ENUM_CAP }
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn with_cap(mut self, cap: u64) -> Ring {
        self.cap = cap;
        if let RingKind::Product(factors) = &mut self.kind {
            *factors = factors.iter().map(|f| f.clone().with_cap(cap)).collect();
        }
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// `None` means infinite (or beyond u64, which every cap rejects anyway).
    pub fn order(&self) -> Option<u64> {
        match &self.kind {
            RingKind::ZmodN(n) => Some(*n),
            RingKind::PolyQuot { p, modulus } => {
                let deg = (modulus.len() - 1) as u32;
                p.checked_pow(deg).or(Some(u64::MAX))
            }
            RingKind::Product(factors) => {
                let mut acc: u64 = 1;
                for f in factors {
                    acc = acc.checked_mul(f.order()?)?;
                }
                Some(acc)
            }
            RingKind::Integers | RingKind::EventuallyConstant(_) => None,
            RingKind::LocalNonChain2 => Some(8),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    fn check_enumerable(&self) -> Result<u64> {
        match self.order() {
            None => Err(RingError::InfiniteEnumeration(format!(
                "{self} has infinitely many elements"
            ))),
            Some(n) if n > self.cap => {
                Err(RingError::EnumerationCapExceeded { order: n, cap: self.cap })
            }
            Some(n) => Ok(n),
        }
    }

    pub fn zero(&self) -> Element {
        match &self.kind {
            RingKind::ZmodN(_) => Element::Residue(0),
            RingKind::PolyQuot { modulus, .. } => Element::Poly(vec![0; modulus.len() - 1]),
            RingKind::Product(factors) => {
                Element::Tuple(factors.iter().map(|f| f.zero()).collect())
            }
            RingKind::Integers => Element::Int(BigInt::zero()),
            RingKind::EventuallyConstant(_) => ec::make_seq(vec![], Rat::zero()),
            RingKind::LocalNonChain2 => Element::Poly(vec![0, 0, 0]),
        }
    }

    pub fn one(&self) -> Element {
        match &self.kind {
            RingKind::ZmodN(_) => Element::Residue(1),
            RingKind::PolyQuot { modulus, .. } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = 1;
                Element::Poly(c)
            }
            RingKind::Product(factors) => {
                Element::Tuple(factors.iter().map(|f| f.one()).collect())
            }
            RingKind::Integers => Element::Int(BigInt::one()),
            RingKind::EventuallyConstant(_) => ec::make_seq(vec![], Rat::one()),
            RingKind::LocalNonChain2 => Element::Poly(vec![1, 0, 0]),
        }
    }

    /// Image of a small integer under the unique map Z -> R.
    pub fn from_int(&self, k: i64) -> Element {
        match &self.kind {
            RingKind::ZmodN(n) => Element::Residue(k.rem_euclid(*n as i64) as u64),
            RingKind::PolyQuot { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = k.rem_euclid(*p as i64) as u64;
                Element::Poly(c)
            }
            RingKind::Product(factors) => {
                Element::Tuple(factors.iter().map(|f| f.from_int(k)).collect())
            }
            RingKind::Integers => Element::Int(BigInt::from(k)),
            RingKind::EventuallyConstant(_) => {
                ec::make_seq(vec![], Rat::from(BigInt::from(k)))
            }
            RingKind::LocalNonChain2 => Element::Poly(vec![k.rem_euclid(2) as u64, 0, 0]),
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        match (&self.kind, a, b) {
            (RingKind::ZmodN(n), Element::Residue(x), Element::Residue(y)) => {
                Element::Residue((x + y) % n)
            }
            (RingKind::PolyQuot { p, .. }, Element::Poly(x), Element::Poly(y)) => {
                Element::Poly(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            (RingKind::Product(factors), Element::Tuple(x), Element::Tuple(y)) => {
                Element::Tuple(
                    factors
                        .iter()
                        .zip(x.iter().zip(y))
                        .map(|(f, (u, v))| f.add(u, v))
                        .collect(),
                )
            }
            (RingKind::Integers, Element::Int(x), Element::Int(y)) => Element::Int(x + y),
            (RingKind::EventuallyConstant(_), _, _) => ec::zip_op(a, b, |x, y| x + y),
            (RingKind::LocalNonChain2, Element::Poly(x), Element::Poly(y)) => {
                Element::Poly(x.iter().zip(y).map(|(u, v)| (u + v) % 2).collect())
            }
            _ => panic!("add: element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Element) -> Element {
        match (&self.kind, a) {
            (RingKind::ZmodN(n), Element::Residue(x)) => Element::Residue((n - x) % n),
            (RingKind::PolyQuot { p, .. }, Element::Poly(x)) => {
                Element::Poly(x.iter().map(|u| (p - u) % p).collect())
            }
            (RingKind::Product(factors), Element::Tuple(x)) => Element::Tuple(
                factors.iter().zip(x).map(|(f, u)| f.neg(u)).collect(),
            ),
            (RingKind::Integers, Element::Int(x)) => Element::Int(-x),
            (RingKind::EventuallyConstant(_), _) => ec::map_op(a, |x| -x),
            (RingKind::LocalNonChain2, Element::Poly(x)) => Element::Poly(x.clone()),
            _ => panic!("neg: element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.kind, a, b) {
            (RingKind::ZmodN(n), Element::Residue(x), Element::Residue(y)) => {
                Element::Residue(((*x as u128 * *y as u128) % (*n as u128)) as u64)
            }
            (RingKind::PolyQuot { p, modulus }, Element::Poly(x), Element::Poly(y)) => {
                Element::Poly(poly_mul_mod(x, y, *p, modulus))
            }
            (RingKind::Product(factors), Element::Tuple(x), Element::Tuple(y)) => {
                Element::Tuple(
                    factors
                        .iter()
                        .zip(x.iter().zip(y))
                        .map(|(f, (u, v))| f.mul(u, v))
                        .collect(),
                )
            }
            (RingKind::Integers, Element::Int(x), Element::Int(y)) => Element::Int(x * y),
            (RingKind::EventuallyConstant(_), _, _) => ec::zip_op(a, b, |x, y| x * y),
            (RingKind::LocalNonChain2, Element::Poly(x), Element::Poly(y)) => {
                // (a0 + a1 x + a2 y)(b0 + b1 x + b2 y) with x^2 = xy = y^2 = 0.
                Element::Poly(vec![
                    (x[0] * y[0]) % 2,
                    (x[0] * y[1] + x[1] * y[0]) % 2,
                    (x[0] * y[2] + x[2] * y[0]) % 2,
                ])
            }
            _ => panic!("mul: element does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &Element, mut k: u64) -> Element {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        *a == self.zero()
    }

    /// All elements of a finite ring in canonical ascending order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        let n = self.check_enumerable()?;
        let mut out = Vec::with_capacity(n as usize);
        match &self.kind {
            RingKind::ZmodN(n) => {
                for x in 0..*n {
                    out.push(Element::Residue(x));
                }
            }
            RingKind::PolyQuot { p, modulus } => {
                let deg = modulus.len() - 1;
                coeff_odometer(*p, deg, &mut |c| out.push(Element::Poly(c.to_vec())));
            }
            RingKind::Product(factors) => {
                let parts: Vec<Vec<Element>> =
                    factors.iter().map(|f| f.elements()).collect::<Result<_>>()?;
                let mut idx = vec![0usize; parts.len()];
                loop {
                    out.push(Element::Tuple(
                        idx.iter().zip(&parts).map(|(&i, p)| p[i].clone()).collect(),
                    ));
                    // lexicographic odometer, last factor fastest
                    let mut pos = parts.len();
                    loop {
                        if pos == 0 {
                            return Ok(out);
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < parts[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
            RingKind::LocalNonChain2 => {
                coeff_odometer(2, 3, &mut |c| out.push(Element::Poly(c.to_vec())));
            }
            RingKind::Integers | RingKind::EventuallyConstant(_) => unreachable!(),
        }
        Ok(out)
    }

    /// Structural canonical-form validity of `a` as an element of this ring.
    pub fn is_canonical(&self, a: &Element) -> bool {
        match (&self.kind, a) {
            (RingKind::ZmodN(n), Element::Residue(x)) => x < n,
            (RingKind::PolyQuot { p, modulus }, Element::Poly(c)) => {
                c.len() == modulus.len() - 1 && c.iter().all(|u| u < p)
            }
            (RingKind::Product(factors), Element::Tuple(x)) => {
                x.len() == factors.len()
                    && factors.iter().zip(x).all(|(f, u)| f.is_canonical(u))
            }
            (RingKind::Integers, Element::Int(_)) => true,
            (RingKind::EventuallyConstant(p), Element::Seq { prefix, tail }) => {
                ec::in_d(tail, *p) && prefix.last() != Some(tail)
            }
            (RingKind::LocalNonChain2, Element::Poly(c)) => {
                c.len() == 3 && c.iter().all(|&u| u < 2)
            }
            _ => false,
        }
    }

    /// Inverse of `a` if it is a unit.
    pub fn is_unit(&self, a: &Element) -> Option<Element> {
        match &self.kind {
            RingKind::ZmodN(n) => match a {
                Element::Residue(x) => {
                    let (g, inv) = mod_inverse(*x, *n);
                    (g == 1).then_some(Element::Residue(inv))
                }
                _ => panic!("is_unit: element does not belong to {self}"),
            },
            RingKind::LocalNonChain2 => match a {
                // (1 + n)^{-1} = 1 + n for nilpotent n in characteristic 2.
                Element::Poly(c) if c[0] == 1 => Some(a.clone()),
                Element::Poly(_) => None,
                _ => panic!("is_unit: element does not belong to {self}"),
            },
            RingKind::Integers => match a {
                Element::Int(x) if x.abs().is_one() => Some(a.clone()),
                _ => None,
            },
            RingKind::EventuallyConstant(p) => match a {
                Element::Seq { prefix, tail } => {
                    if prefix.iter().any(|r| r.is_zero()) || !ec::is_d_unit(tail, *p) {
                        return None;
                    }
                    Some(ec::make_seq(
                        prefix.iter().map(|r| r.recip()).collect(),
                        tail.recip(),
                    ))
                }
                _ => panic!("is_unit: element does not belong to {self}"),
            },
            RingKind::Product(factors) => match a {
                Element::Tuple(parts) => {
                    let mut inv = Vec::with_capacity(parts.len());
                    for (f, u) in factors.iter().zip(parts) {
                        inv.push(f.is_unit(u)?);
                    }
                    Some(Element::Tuple(inv))
                }
                _ => panic!("is_unit: element does not belong to {self}"),
            },
            RingKind::PolyQuot { p, modulus } => match a {
                Element::Poly(c) => poly_inverse(c, *p, modulus).map(Element::Poly),
                _ => panic!("is_unit: element does not belong to {self}"),
            },
        }
    }

    /// The set {e : e^2 = e} in canonical order.
    pub fn idempotents(&self) -> Result<Vec<Element>> {
        match &self.kind {
            RingKind::Integers => Ok(vec![self.zero(), self.one()]),
            RingKind::EventuallyConstant(_) => Err(RingError::InfiniteEnumeration(
                "EC(p) has infinitely many idempotents; use is_idempotent".into(),
            )),
            _ => Ok(self
                .elements()?
                .into_iter()
                .filter(|e| self.mul(e, e) == *e)
                .collect()),
        }
    }

    pub fn is_idempotent(&self, e: &Element) -> bool {
        self.mul(e, e) == *e
    }

    /// Deterministic clean decomposition a = unit + idempotent, choosing the
    /// least idempotent in canonical order that leaves a unit.
    pub fn clean_decompose(&self, a: &Element) -> Result<CleanDecomposition> {
        match &self.kind {
            RingKind::Integers => {
                // Units {1,-1} and idempotents {0,1}; the least workable e.
                for e in [BigInt::zero(), BigInt::one()] {
                    let e = Element::Int(e);
                    let u = self.sub(a, &e);
                    if self.is_unit(&u).is_some() {
                        return Ok(CleanDecomposition { unit: u, idempotent: e });
                    }
                }
                Err(RingError::NotClean {
                    element: format!("{a}"),
                    idempotents_tried: 2,
                })
            }
            RingKind::EventuallyConstant(p) => {
                let (prefix, tail) = match a {
                    Element::Seq { prefix, tail } => (prefix, tail),
                    _ => panic!("clean_decompose: element does not belong to {self}"),
                };
                // Tail idempotent: 1 exactly when the tail is not a unit of D.
                let tail_e = if ec::is_d_unit(tail, *p) { Rat::zero() } else { Rat::one() };
                let mut prefix_e = Vec::with_capacity(prefix.len());
                for v in prefix {
                    // Prefer the tail idempotent so the prefix trims away.
                    if *v != tail_e {
                        prefix_e.push(tail_e.clone());
                    } else {
                        prefix_e.push(Rat::one() - &tail_e);
                    }
                }
                let e = ec::make_seq(prefix_e, tail_e);
                let u = self.sub(a, &e);
                debug_assert!(self.is_unit(&u).is_some());
                Ok(CleanDecomposition { unit: u, idempotent: e })
            }
            _ => {
                let idems = self.idempotents()?;
                let tried = idems.len() as u64;
                for e in idems {
                    let u = self.sub(a, &e);
                    if self.is_unit(&u).is_some() {
                        return Ok(CleanDecomposition { unit: u, idempotent: e });
                    }
                }
                Err(RingError::NotClean {
                    element: format!("{a}"),
                    idempotents_tried: tried,
                })
            }
        }
    }

    /// Least t with a = t*b, if any.
    pub fn divide(&self, a: &Element, b: &Element) -> Option<Element> {
        match &self.kind {
            RingKind::Integers => {
                let (x, y) = match (a, b) {
                    (Element::Int(x), Element::Int(y)) => (x, y),
                    _ => panic!("divide: element does not belong to {self}"),
                };
                if y.is_zero() {
                    return x.is_zero().then(|| Element::Int(BigInt::zero()));
                }
                let (q, r) = num_integer::Integer::div_rem(x, y);
                r.is_zero().then_some(Element::Int(q))
            }
            RingKind::EventuallyConstant(p) => self.divide_seq(a, b, *p),
            _ => {
                let elems = self.elements().ok()?;
                elems.into_iter().find(|t| self.mul(t, b) == *a)
            }
        }
    }

    fn divide_seq(&self, a: &Element, b: &Element, p: u64) -> Option<Element> {
        let n = ec::prefix_len(a).max(ec::prefix_len(b));
        let (at, bt) = (ec::component(a, n), ec::component(b, n));
        // Forced tail quotient, or 0 when both tails vanish.
        let tail = if bt.is_zero() {
            if at.is_zero() { Rat::zero() } else { return None }
        } else {
            let q = &at / &bt;
            if !ec::in_d(&q, p) {
                return None;
            }
            q
        };
        let mut prefix = Vec::with_capacity(n);
        for k in 0..n {
            let (av, bv) = (ec::component(a, k), ec::component(b, k));
            if bv.is_zero() {
                if !av.is_zero() {
                    return None;
                }
                // Free component: taking the tail value trims maximally,
                // which is the least sequence in canonical order.
                prefix.push(tail.clone());
            } else {
                prefix.push(av / bv);
            }
        }
        Some(ec::make_seq(prefix, tail))
    }

    /// Elements with some power zero. Finite rings only.
    pub fn nilradical(&self) -> Result<RadicalSet> {
        let order = self.check_enumerable()?;
        let steps = 64 - order.leading_zeros() as u64; // 2^steps >= order
        let zero = self.zero();
        let elements: Vec<Element> = self
            .elements()?
            .into_iter()
            .filter(|x| {
                let mut z = x.clone();
                for _ in 0..=steps {
                    if z == zero {
                        return true;
                    }
                    z = self.mul(&z, &z);
                }
                z == zero
            })
            .collect();
        let generators = self.minimal_generators(&elements)?;
        Ok(RadicalSet { which: RadicalKind::Nilradical, elements, generators })
    }

    /// Intersection of the maximal ideals: {x : 1 - rx is a unit for all r}.
    pub fn jacobson_radical(&self) -> Result<RadicalSet> {
        self.check_enumerable()?;
        let all = self.elements()?;
        let one = self.one();
        let elements: Vec<Element> = all
            .iter()
            .filter(|x| {
                all.iter().all(|r| {
                    let t = self.sub(&one, &self.mul(r, x));
                    self.is_unit(&t).is_some()
                })
            })
            .cloned()
            .collect();
        let generators = self.minimal_generators(&elements)?;
        Ok(RadicalSet { which: RadicalKind::Jacobson, elements, generators })
    }

    /// Minimal (by inclusion) subset of `set` that regenerates it as an ideal.
    fn minimal_generators(&self, set: &[Element]) -> Result<Vec<Element>> {
        let target: HashSet<&Element> = set.iter().collect();
        let mut gens: Vec<Element> = Vec::new();
        let mut span = crate::spectrum::closure_elements(self, &gens)?;
        for x in set {
            if span.len() == target.len() {
                break;
            }
            if !span.contains(x) {
                gens.push(x.clone());
                span = crate::spectrum::closure_elements(self, &gens)?;
            }
        }
        // Drop generators made redundant by later ones.
        let mut i = 0;
        while i < gens.len() {
            let mut reduced = gens.clone();
            reduced.remove(i);
            let span = crate::spectrum::closure_elements(self, &reduced)?;
            if span.len() == target.len() {
                gens = reduced;
            } else {
                i += 1;
            }
        }
        Ok(gens)
    }

    /// Additive generators of (R, +) with their orders; coordinates are
    /// unique. Finite kinds only — the endomorphism solver depends on this.
    pub fn additive_basis(&self) -> Vec<(Element, u64)> {
        match &self.kind {
            RingKind::ZmodN(n) => vec![(self.one(), *n)],
            RingKind::PolyQuot { p, modulus } => {
                let deg = modulus.len() - 1;
                (0..deg)
                    .map(|i| {
                        let mut c = vec![0; deg];
                        c[i] = 1;
                        (Element::Poly(c), *p)
                    })
                    .collect()
            }
            RingKind::Product(factors) => {
                let mut out = Vec::new();
                for (i, f) in factors.iter().enumerate() {
                    for (g, o) in f.additive_basis() {
                        let mut tuple: Vec<Element> =
                            factors.iter().map(|h| h.zero()).collect();
                        tuple[i] = g;
                        out.push((Element::Tuple(tuple), o));
                    }
                }
                out
            }
            RingKind::LocalNonChain2 => (0..3)
                .map(|i| {
                    let mut c = vec![0, 0, 0];
                    c[i] = 1;
                    (Element::Poly(c), 2)
                })
                .collect(),
            RingKind::Integers | RingKind::EventuallyConstant(_) => {
                panic!("additive_basis: infinite ring")
            }
        }
    }

    /// Coordinates of `a` in the additive basis, each in [0, order).
    pub fn additive_coords(&self, a: &Element) -> Vec<u64> {
        match (&self.kind, a) {
            (RingKind::ZmodN(_), Element::Residue(x)) => vec![*x],
            (RingKind::PolyQuot { .. }, Element::Poly(c)) => c.clone(),
            (RingKind::Product(factors), Element::Tuple(parts)) => factors
                .iter()
                .zip(parts)
                .flat_map(|(f, u)| f.additive_coords(u))
                .collect(),
            (RingKind::LocalNonChain2, Element::Poly(c)) => c.clone(),
            _ => panic!("additive_coords: element does not belong to {self}"),
        }
    }
}

/// (gcd(a, n), a^{-1} mod n when the gcd is 1, else 0).
fn mod_inverse(a: u64, n: u64) -> (u64, u64) {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let tmp = old_r - q * r;
        old_r = std::mem::replace(&mut r, tmp);
        let tmp = old_s - q * s;
        old_s = std::mem::replace(&mut s, tmp);
    }
    if old_r.abs() != 1 {
        return (old_r.unsigned_abs() as u64, 0);
    }
    if old_r < 0 {
        old_s = -old_s;
    }
    let n = n as i128;
    (1, (((old_s % n) + n) % n) as u64)
}

/// Inverse of c modulo the (monic) modulus over F_p: extended Euclid in
/// F_p[x]. Works for reducible moduli too — the inverse exists exactly
/// when gcd(c, modulus) is constant.
fn poly_inverse(c: &[u64], p: u64, modulus: &[u64]) -> Option<Vec<u64>> {
    let deg = modulus.len() - 1;
    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }
    // quotient and remainder of a by nonzero b in F_p[x]
    let divmod = |a: &[u64], b: &[u64]| -> (Vec<u64>, Vec<u64>) {
        let db = b.len() - 1;
        let (_, lead_inv) = mod_inverse(b[db], p);
        let mut r = trim(a.to_vec());
        let qlen = if r.len() > db { r.len() - db } else { 1 };
        let mut q = vec![0u64; qlen];
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let factor = (r[r.len() - 1] * lead_inv) % p;
            q[shift] = (q[shift] + factor) % p;
            for (i, &bc) in b.iter().enumerate() {
                let sub = (factor * bc) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    };
    let poly_mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    };
    let poly_sub = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; a.len().max(b.len())];
        for (i, slot) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *slot = (x + p - y) % p;
        }
        trim(out)
    };
    // Invariant: old_s·c ≡ old_r  and  s·c ≡ r  (mod modulus).
    let mut old_r = trim(modulus.to_vec());
    let mut r = trim(c.to_vec());
    let mut old_s: Vec<u64> = vec![];
    let mut s: Vec<u64> = vec![1];
    while !r.is_empty() {
        let (q, rem) = divmod(&old_r, &r);
        old_r = std::mem::replace(&mut r, rem);
        let qs = poly_mul(&q, &s);
        let new_s = poly_sub(&old_s, &qs);
        old_s = std::mem::replace(&mut s, new_s);
    }
    // gcd must be a nonzero constant (trim guarantees nonzero).
    if old_r.len() != 1 {
        return None;
    }
    let (_, ginv) = mod_inverse(old_r[0], p);
    let scaled = poly_mul(&old_s, &[ginv]);
    let (_, reduced) = divmod(&scaled, &trim(modulus.to_vec()));
    let mut out = vec![0u64; deg];
    for (i, &v) in reduced.iter().enumerate() {
        out[i] = v;
    }
    Some(out)
}

/// Polynomial product reduced by a monic modulus over F_p.
fn poly_mul_mod(x: &[u64], y: &[u64], p: u64, modulus: &[u64]) -> Vec<u64> {
    let deg = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * deg - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % p;
        }
    }
    // x^deg = -(m0 + ... + m_{deg-1} x^{deg-1})
    for i in (deg..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..deg {
            let sub = (modulus[j] * c) % p;
            prod[i - deg + j] = (prod[i - deg + j] + p * p - sub) % p;
        }
    }
    prod.truncate(deg);
    prod
}

/// Visits all coefficient vectors of the given length over [0, p) in
/// lexicographic order.
fn coeff_odometer(p: u64, len: usize, visit: &mut impl FnMut(&[u64])) {
    let mut c = vec![0u64; len];
    loop {
        visit(&c);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            c[pos] += 1;
            if c[pos] < p {
                break;
            }
            c[pos] = 0;
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::ZmodN(n) => write!(f, "Zn({n})"),
            RingKind::PolyQuot { p, modulus } => {
                let coeffs: Vec<String> = modulus.iter().map(|c| c.to_string()).collect();
                write!(f, "Quot(Zn({p}),[{}])", coeffs.join(","))
            }
            RingKind::Product(factors) => {
                let parts: Vec<String> = factors.iter().map(|r| r.to_string()).collect();
                write!(f, "Prod({})", parts.join(","))
            }
            RingKind::Integers => write!(f, "Z"),
            RingKind::EventuallyConstant(p) => write!(f, "EC({p})"),
            RingKind::LocalNonChain2 => write!(f, "LocalNonChain2"),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Residue(x) => write!(f, "{x}"),
            Element::Poly(c) => {
                let parts: Vec<String> = c.iter().map(|u| u.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Element::Tuple(parts) => {
                let inner: Vec<String> = parts.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", inner.join(","))
            }
            Element::Int(x) => write!(f, "{x}"),
            Element::Seq { prefix, tail } => {
                let fmt_rat = |r: &Rat| {
                    if r.denom().is_one() {
                        r.numer().to_string()
                    } else {
                        format!("{}/{}", r.numer(), r.denom())
                    }
                };
                let parts: Vec<String> = prefix.iter().map(fmt_rat).collect();
                write!(f, "[{};{}]", parts.join(","), fmt_rat(tail))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ec::rat_from;

    fn zn(n: u64) -> Ring {
        Ring::zmod(n).unwrap()
    }

    #[test]
    fn zn_units_match_gcd() {
        let r = zn(12);
        // 5*5 = 25 = 1 mod 12
        assert_eq!(r.is_unit(&Element::Residue(5)), Some(Element::Residue(5)));
        assert_eq!(r.is_unit(&Element::Residue(4)), None);
    }

    #[test]
    fn integers_units_are_pm_one() {
        let z = Ring::integers();
        assert!(z.is_unit(&Element::Int(BigInt::from(2))).is_none());
        assert!(z.is_unit(&Element::Int(BigInt::from(-1))).is_some());
    }

    #[test]
    fn ec_unit_inverts_componentwise() {
        let r = Ring::eventually_constant(2).unwrap();
        let a = ec::make_seq(vec![rat_from(1, 2)], rat_from(3, 1));
        let inv = r.is_unit(&a).expect("unit");
        assert_eq!(inv, ec::make_seq(vec![rat_from(2, 1)], rat_from(1, 3)));
        assert_eq!(r.mul(&a, &inv), r.one());
        // v2(6) = 1, not a unit
        let b = ec::make_seq(vec![], rat_from(6, 1));
        assert!(r.is_unit(&b).is_none());
    }

    #[test]
    fn idempotents_of_zn6_and_zn12() {
        let e6: Vec<u64> = zn(6)
            .idempotents()
            .unwrap()
            .into_iter()
            .map(|e| match e {
                Element::Residue(x) => x,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(e6, vec![0, 1, 3, 4]);
        let e12: Vec<u64> = zn(12)
            .idempotents()
            .unwrap()
            .into_iter()
            .map(|e| match e {
                Element::Residue(x) => x,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(e12, vec![0, 1, 4, 9]);
    }

    #[test]
    fn integers_idempotents() {
        let z = Ring::integers();
        assert_eq!(
            z.idempotents().unwrap(),
            vec![Element::Int(BigInt::zero()), Element::Int(BigInt::one())]
        );
    }

    #[test]
    fn clean_decompose_zn6() {
        let r = zn(6);
        let d = r.clean_decompose(&Element::Residue(3)).unwrap();
        assert_eq!(d.unit, Element::Residue(5));
        assert_eq!(d.idempotent, Element::Residue(4));
    }

    #[test]
    fn clean_decompose_integers_3_fails() {
        let z = Ring::integers();
        match z.clean_decompose(&Element::Int(BigInt::from(3))) {
            Err(RingError::NotClean { .. }) => {}
            other => panic!("expected NotClean, got {other:?}"),
        }
    }

    #[test]
    fn clean_decompose_ec_constructive_rule() {
        let r = Ring::eventually_constant(2).unwrap();
        let a = ec::make_seq(vec![rat_from(0, 1), rat_from(1, 1)], rat_from(6, 1));
        let d = r.clean_decompose(&a).unwrap();
        assert_eq!(d.unit, ec::make_seq(vec![rat_from(-1, 1), rat_from(1, 1)], rat_from(5, 1)));
        assert_eq!(
            d.idempotent,
            ec::make_seq(vec![rat_from(1, 1), rat_from(0, 1)], rat_from(1, 1))
        );
        assert_eq!(r.add(&d.unit, &d.idempotent), a);
        assert!(r.is_idempotent(&d.idempotent));
        assert!(r.is_unit(&d.unit).is_some());
    }

    #[test]
    fn nilradical_and_jacobson_zn12() {
        let r = zn(12);
        let nil = r.nilradical().unwrap();
        assert_eq!(nil.elements, vec![Element::Residue(0), Element::Residue(6)]);
        let jac = r.jacobson_radical().unwrap();
        assert_eq!(jac.elements, vec![Element::Residue(0), Element::Residue(6)]);
        assert_eq!(jac.generators, vec![Element::Residue(6)]);
    }

    #[test]
    fn nilradical_of_squarefree_is_zero() {
        let r = zn(6);
        assert_eq!(r.nilradical().unwrap().elements, vec![Element::Residue(0)]);
    }

    #[test]
    fn divide_examples() {
        let r = zn(12);
        assert_eq!(
            r.divide(&Element::Residue(4), &Element::Residue(2)),
            Some(Element::Residue(2))
        );
        assert_eq!(r.divide(&Element::Residue(2), &Element::Residue(4)), None);
        let z = Ring::integers();
        assert_eq!(
            z.divide(&Element::Int(BigInt::from(6)), &Element::Int(BigInt::from(3))),
            Some(Element::Int(BigInt::from(2)))
        );
    }

    #[test]
    fn poly_quot_field_f4() {
        // F4 = F2[x]/(x^2+x+1): the nonzero elements form a cyclic group.
        let r = Ring::poly_quot(2, &[1, 1, 1]).unwrap();
        assert_eq!(r.order(), Some(4));
        let x = Element::Poly(vec![0, 1]);
        let x2 = r.mul(&x, &x);
        assert_eq!(x2, Element::Poly(vec![1, 1])); // x^2 = x + 1
        assert_eq!(r.mul(&x, &x2), r.one()); // x^3 = 1
        for e in r.elements().unwrap() {
            if e != r.zero() {
                assert!(r.is_unit(&e).is_some(), "{e} must be a unit in F4");
            }
        }
    }

    #[test]
    fn poly_quot_units_match_brute_force_even_for_reducible_moduli() {
        // F2[x]/(x^2+1) = F2[x]/(x+1)^2 is a chain ring, not a field;
        // F3[x]/(x^2+2x) has idempotents. Units must agree with the
        // brute-force product scan in both.
        for (p, modulus) in [(2u64, vec![1i64, 0, 1]), (3, vec![0, 2, 1]), (2, vec![1, 1, 1])] {
            let r = Ring::poly_quot(p, &modulus).unwrap();
            let all = r.elements().unwrap();
            let one = r.one();
            for a in &all {
                let scan = all.iter().find(|b| r.mul(a, b) == one).cloned();
                assert_eq!(
                    r.is_unit(a),
                    scan,
                    "inverse disagreement at {a} in {r}"
                );
            }
        }
    }

    #[test]
    fn local_non_chain2_squares_vanish() {
        let r = Ring::local_non_chain2();
        let x = Element::Poly(vec![0, 1, 0]);
        let y = Element::Poly(vec![0, 0, 1]);
        assert_eq!(r.mul(&x, &x), r.zero());
        assert_eq!(r.mul(&x, &y), r.zero());
        assert_eq!(r.mul(&y, &y), r.zero());
        assert_eq!(r.order(), Some(8));
        // units are exactly the elements with constant term 1
        let units = r
            .elements()
            .unwrap()
            .into_iter()
            .filter(|e| r.is_unit(e).is_some())
            .count();
        assert_eq!(units, 4);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let r = Ring::zmod(5000).unwrap();
        match r.elements() {
            Err(RingError::EnumerationCapExceeded { order: 5000, cap: 4096 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
        assert!(r.clone().with_cap(8192).elements().is_ok());
    }

    #[test]
    fn product_enumeration_is_lexicographic() {
        let r = Ring::product(vec![zn(2), zn(3)]).unwrap();
        let elems = r.elements().unwrap();
        assert_eq!(elems.len(), 6);
        assert_eq!(
            elems[0],
            Element::Tuple(vec![Element::Residue(0), Element::Residue(0)])
        );
        assert_eq!(
            elems[1],
            Element::Tuple(vec![Element::Residue(0), Element::Residue(1)])
        );
        assert_eq!(
            elems[3],
            Element::Tuple(vec![Element::Residue(1), Element::Residue(0)])
        );
    }

    #[test]
    fn ec_divide_respects_valuation() {
        let r = Ring::eventually_constant(2).unwrap();
        let a = ec::make_seq(vec![], rat_from(2, 1));
        let b = ec::make_seq(vec![], rat_from(4, 1));
        // 2/4 = 1/2 has valuation -1: no quotient in the ring
        assert_eq!(r.divide(&a, &b), None);
        assert_eq!(r.divide(&b, &a), Some(ec::make_seq(vec![], rat_from(2, 1))));
    }
}
