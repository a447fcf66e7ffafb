//! Ideals, maximal spectra, the Gelfand retraction and localization kernels.
//!
//! Finite rings get fully materialized ideals. EC(p) gets the classified
//! point family {P_k} ∪ {P_inf} with decidable membership; the integers get
//! a hard-coded counterexample classification.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::ec::{self, Rat};
use crate::error::{Result, RingError};
use crate::ring::{Element, Ring, RingKind};

/// Finitely generated ideal of a finite ring, materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub ring: Ring,
    pub generators: Vec<Element>,
    /// Closure of the generators, sorted in canonical order. Always
    /// contains zero.
    pub elements: Vec<Element>,
}

impl Ideal {
    pub fn contains(&self, x: &Element) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_whole_ring(&self) -> bool {
        self.ring.order() == Some(self.elements.len() as u64)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Elements of the ideal generated by `gens`: the additive closure of all
/// ring multiples of the generators.
pub(crate) fn closure_elements(ring: &Ring, gens: &[Element]) -> Result<Vec<Element>> {
    let all = ring.elements()?;
    let zero = ring.zero();
    let mut multiples: Vec<Element> = Vec::new();
    let mut seen: HashSet<Element> = HashSet::new();
    for g in gens {
        for r in &all {
            let m = ring.mul(r, g);
            if seen.insert(m.clone()) {
                multiples.push(m);
            }
        }
    }
    let mut set: HashSet<Element> = HashSet::new();
    set.insert(zero.clone());
    let mut queue = vec![zero];
    while let Some(x) = queue.pop() {
        for m in &multiples {
            let s = ring.add(&x, m);
            if set.insert(s.clone()) {
                queue.push(s);
            }
        }
    }
    let mut out: Vec<Element> = set.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Ideal generated by `gens` in a finite ring.
pub fn ideal_closure(ring: &Ring, gens: &[Element]) -> Result<Ideal> {
    let elements = closure_elements(ring, gens)?;
    Ok(Ideal { ring: ring.clone(), generators: gens.to_vec(), elements })
}

/// The unique complete set of pairwise orthogonal primitive idempotents,
/// in canonical order: minimal nonzero idempotents under e <= f iff ef = e.
pub fn primitive_idempotents(ring: &Ring) -> Result<Vec<Element>> {
    let zero = ring.zero();
    let idems: Vec<Element> = ring
        .idempotents()?
        .into_iter()
        .filter(|e| *e != zero)
        .collect();
    Ok(idems
        .iter()
        .filter(|e| idems.iter().all(|f| f == *e || ring.mul(f, e) != *f))
        .cloned()
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EcLabel {
    Index(u64),
    Infinity,
}

impl std::fmt::Display for EcLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EcLabel::Index(k) => write!(f, "P@{k}"),
            EcLabel::Infinity => write!(f, "P@inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaximalIdeal {
    /// Maximal ideal of a finite ring, living on one local factor.
    Finite { ideal: Ideal, primitive_idempotent: Element },
    /// Classified point of Max EC(p).
    EcPoint { p: u64, label: EcLabel },
}

impl MaximalIdeal {
    pub fn contains(&self, x: &Element) -> bool {
        match self {
            MaximalIdeal::Finite { ideal, .. } => ideal.contains(x),
            MaximalIdeal::EcPoint { p, label } => ec_point_contains(*p, label, x),
        }
    }

    pub fn render(&self) -> String {
        match self {
            MaximalIdeal::Finite { ideal, .. } => ideal.render(),
            MaximalIdeal::EcPoint { label, .. } => label.to_string(),
        }
    }
}

/// Membership in the classified maximal ideals of EC(p):
/// x ∈ P_k iff x_k = 0; x ∈ P_inf iff v_p(tail) >= 1.
pub fn ec_point_contains(p: u64, label: &EcLabel, x: &Element) -> bool {
    match label {
        EcLabel::Index(k) => ec::component(x, *k as usize).is_zero(),
        EcLabel::Infinity => match x {
            Element::Seq { tail, .. } => match ec::vp(tail, p) {
                None => true,
                Some(v) => v >= 1,
            },
            _ => panic!("ec_point_contains: not a sequence element"),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    FiniteDiscrete,
    OnePointCompactificationOfDiscrete,
    NotTotallyDisconnected,
}

impl std::fmt::Display for Topology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Topology::FiniteDiscrete => "finite-discrete",
            Topology::OnePointCompactificationOfDiscrete => {
                "one-point-compactification-of-discrete"
            }
            Topology::NotTotallyDisconnected => "not-totally-disconnected",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub enum SpectrumPoints {
    Finite(Vec<MaximalIdeal>),
    /// {P_k}_{k in N} ∪ {P_inf}; localizations are Q at each P_k and the
    /// valuation ring D at P_inf.
    EcFamily { p: u64 },
    /// All (q) for prime q.
    IntegerPrimes,
}

#[derive(Debug, Clone)]
pub struct MaxSpectrum {
    pub ring: Ring,
    pub points: SpectrumPoints,
    pub topology: Topology,
}

/// Maximal spectrum with topology classification.
pub fn max_spectrum(ring: &Ring) -> Result<MaxSpectrum> {
    match ring.kind() {
        RingKind::Integers => Ok(MaxSpectrum {
            ring: ring.clone(),
            points: SpectrumPoints::IntegerPrimes,
            topology: Topology::NotTotallyDisconnected,
        }),
        RingKind::EventuallyConstant(p) => Ok(MaxSpectrum {
            ring: ring.clone(),
            points: SpectrumPoints::EcFamily { p: *p },
            topology: Topology::OnePointCompactificationOfDiscrete,
        }),
        _ => {
            let mut points = finite_maximal_ideals(ring)?;
            points.sort_by(|a, b| match (a, b) {
                (
                    MaximalIdeal::Finite { ideal: ia, .. },
                    MaximalIdeal::Finite { ideal: ib, .. },
                ) => ia.elements.cmp(&ib.elements),
                _ => unreachable!(),
            });
            Ok(MaxSpectrum {
                ring: ring.clone(),
                points: SpectrumPoints::Finite(points),
                topology: Topology::FiniteDiscrete,
            })
        }
    }
}

/// One maximal ideal per primitive idempotent e: P_e = {x : x·e ∈ J·e}.
fn finite_maximal_ideals(ring: &Ring) -> Result<Vec<MaximalIdeal>> {
    let all = ring.elements()?;
    let jac = ring.jacobson_radical()?;
    let prims = primitive_idempotents(ring)?;
    let mut out = Vec::with_capacity(prims.len());
    for e in prims {
        let je: HashSet<Element> = jac.elements.iter().map(|j| ring.mul(j, &e)).collect();
        let mut elements: Vec<Element> = all
            .iter()
            .filter(|x| je.contains(&ring.mul(x, &e)))
            .cloned()
            .collect();
        elements.sort();
        let generators = minimal_ideal_generators(ring, &elements)?;
        out.push(MaximalIdeal::Finite {
            ideal: Ideal { ring: ring.clone(), generators, elements },
            primitive_idempotent: e,
        });
    }
    Ok(out)
}

/// Minimal (by inclusion) generating subset for a known ideal element set.
fn minimal_ideal_generators(ring: &Ring, elements: &[Element]) -> Result<Vec<Element>> {
    let mut gens: Vec<Element> = Vec::new();
    let mut span = closure_elements(ring, &gens)?;
    for x in elements {
        if span.len() == elements.len() {
            break;
        }
        if span.binary_search(x).is_err() {
            gens.push(x.clone());
            span = closure_elements(ring, &gens)?;
        }
    }
    let mut i = 0;
    while i < gens.len() {
        let mut reduced = gens.clone();
        reduced.remove(i);
        if closure_elements(ring, &reduced)?.len() == elements.len() {
            gens = reduced;
        } else {
            i += 1;
        }
    }
    Ok(gens)
}

#[derive(Debug, Clone)]
pub enum KernelRepr {
    Finite(Ideal),
    /// Kernel at P_k: the principal ideal (1 - e_k) = {x : x_k = 0}.
    EcComplementOf(u64),
    /// Kernel at P_inf: sequences with tail zero.
    EcFiniteSupport,
}

impl KernelRepr {
    pub fn contains(&self, x: &Element) -> bool {
        match self {
            KernelRepr::Finite(ideal) => ideal.contains(x),
            KernelRepr::EcComplementOf(k) => ec::component(x, *k as usize).is_zero(),
            KernelRepr::EcFiniteSupport => match x {
                Element::Seq { tail, .. } => tail.is_zero(),
                _ => panic!("kernel membership: not a sequence element"),
            },
        }
    }
}

#[derive(Debug, Clone)]
pub enum IdempotentGens {
    List(Vec<Element>),
    /// {e_0, e_1, ...}: every kernel element is a finite combination of
    /// the standard basis idempotents.
    EcStandardBasis,
}

/// Kernel 0_P of the localization map R -> R_P.
#[derive(Debug, Clone)]
pub struct LocalizationKernel {
    pub point: MaximalIdeal,
    pub kernel: KernelRepr,
    pub idempotent_generators: Option<IdempotentGens>,
}

pub fn localization_kernel(ring: &Ring, point: &MaximalIdeal) -> Result<LocalizationKernel> {
    match point {
        MaximalIdeal::Finite { ideal, .. } => {
            let all = ring.elements()?;
            let zero = ring.zero();
            let outside: Vec<&Element> =
                all.iter().filter(|s| !ideal.contains(s)).collect();
            let mut kernel_elems: Vec<Element> = all
                .iter()
                .filter(|a| outside.iter().any(|s| ring.mul(s, a) == zero))
                .cloned()
                .collect();
            kernel_elems.sort();
            let idem_gens = idempotent_generators_for(ring, &kernel_elems)?;
            let generators = minimal_ideal_generators(ring, &kernel_elems)?;
            Ok(LocalizationKernel {
                point: point.clone(),
                kernel: KernelRepr::Finite(Ideal {
                    ring: ring.clone(),
                    generators,
                    elements: kernel_elems,
                }),
                idempotent_generators: idem_gens.map(IdempotentGens::List),
            })
        }
        MaximalIdeal::EcPoint { label, .. } => match label {
            EcLabel::Index(k) => {
                let one_minus_ek = one_minus_basis_idempotent(*k as usize);
                Ok(LocalizationKernel {
                    point: point.clone(),
                    kernel: KernelRepr::EcComplementOf(*k),
                    idempotent_generators: Some(IdempotentGens::List(vec![one_minus_ek])),
                })
            }
            EcLabel::Infinity => Ok(LocalizationKernel {
                point: point.clone(),
                kernel: KernelRepr::EcFiniteSupport,
                idempotent_generators: Some(IdempotentGens::EcStandardBasis),
            }),
        },
    }
}

/// 1 - e_k as a canonical sequence element.
pub fn one_minus_basis_idempotent(k: usize) -> Element {
    let mut prefix = vec![Rat::one(); k + 1];
    prefix[k] = Rat::zero();
    ec::make_seq(prefix, Rat::one())
}

/// Minimal set of idempotents generating the kernel, when one exists.
fn idempotent_generators_for(
    ring: &Ring,
    kernel_elems: &[Element],
) -> Result<Option<Vec<Element>>> {
    let idems: Vec<Element> = ring
        .idempotents()?
        .into_iter()
        .filter(|e| kernel_elems.binary_search(e).is_ok())
        .collect();
    let span = closure_elements(ring, &idems)?;
    if span.len() != kernel_elems.len() {
        return Ok(None);
    }
    // Prune to a minimal generating subset of the idempotents.
    let mut gens = idems;
    let mut i = 0;
    while i < gens.len() {
        let mut reduced = gens.clone();
        reduced.remove(i);
        if closure_elements(ring, &reduced)?.len() == kernel_elems.len() {
            gens = reduced;
        } else {
            i += 1;
        }
    }
    Ok(Some(gens))
}

/// Handle naming a prime ideal for the Gelfand retraction.
#[derive(Debug, Clone)]
pub enum PrimeHandle {
    /// Finite rings: primes are maximal; the handle is the ideal itself.
    Ideal(Ideal),
    /// EC(p) point label.
    Ec(EcLabel),
    /// (0) or (q) in the integers — supported only as counterexamples.
    IntegerZero,
    IntegerPrime(u64),
}

/// The unique maximal ideal containing the prime handle.
pub fn mu(ring: &Ring, handle: &PrimeHandle) -> Result<MaximalIdeal> {
    match (ring.kind(), handle) {
        (RingKind::Integers, _) => Err(RingError::NotGelfand(
            "(0) is contained in (2) and (3): Z is not Gelfand".into(),
        )),
        (RingKind::EventuallyConstant(p), PrimeHandle::Ec(label)) => {
            Ok(MaximalIdeal::EcPoint { p: *p, label: label.clone() })
        }
        (_, PrimeHandle::Ideal(ideal)) => {
            let spectrum = max_spectrum(ring)?;
            let points = match spectrum.points {
                SpectrumPoints::Finite(points) => points,
                _ => unreachable!("finite kinds yield finite spectra"),
            };
            let over: Vec<MaximalIdeal> = points
                .into_iter()
                .filter(|m| match m {
                    MaximalIdeal::Finite { ideal: mi, .. } => {
                        ideal.elements.iter().all(|x| mi.contains(x))
                    }
                    _ => false,
                })
                .collect();
            match over.len() {
                1 => Ok(over.into_iter().next().unwrap()),
                0 => Err(RingError::NotPrime(
                    "handle is contained in no maximal ideal (not proper)".into(),
                )),
                n => Err(RingError::NotPrime(format!(
                    "handle is contained in {n} maximal ideals, so it is not prime \
                     in a zero-dimensional ring"
                ))),
            }
        }
        _ => Err(RingError::Unsupported(format!(
            "mu: handle does not match ring {ring}"
        ))),
    }
}

#[derive(Debug, Clone)]
pub enum GelfandWitness {
    /// Finite rings are zero-dimensional, hence Gelfand.
    ZeroDimensional { maximal_ideals: usize },
    /// EC(p): classified retraction mu(P_k) = P_k, mu(P_inf) = P_inf.
    EcClassified,
    /// (0) sits under both (2) and (3).
    IntegersNested,
}

#[derive(Debug, Clone)]
pub struct GelfandReport {
    pub gelfand: bool,
    pub witness: GelfandWitness,
}

pub fn is_gelfand(ring: &Ring) -> Result<GelfandReport> {
    match ring.kind() {
        RingKind::Integers => Ok(GelfandReport {
            gelfand: false,
            witness: GelfandWitness::IntegersNested,
        }),
        RingKind::EventuallyConstant(_) => Ok(GelfandReport {
            gelfand: true,
            witness: GelfandWitness::EcClassified,
        }),
        _ => {
            let spectrum = max_spectrum(ring)?;
            let count = match &spectrum.points {
                SpectrumPoints::Finite(points) => points.len(),
                _ => unreachable!(),
            };
            Ok(GelfandReport {
                gelfand: true,
                witness: GelfandWitness::ZeroDimensional { maximal_ideals: count },
            })
        }
    }
}

/// Classified total-disconnectedness of Max R.
pub fn max_totally_disconnected(ring: &Ring) -> bool {
    !matches!(ring.kind(), RingKind::Integers)
}

/// Connected component of a finite maximal spectrum, with the idempotent
/// indicator of its clopen neighbourhood.
#[derive(Debug, Clone)]
pub struct ComponentBlock {
    pub point: MaximalIdeal,
    pub indicator: Element,
}

pub fn connected_components_max(ring: &Ring) -> Result<Vec<ComponentBlock>> {
    if !ring.is_finite() {
        return Err(RingError::InfiniteEnumeration(format!(
            "connected components are materialized for finite rings only, not {ring}"
        )));
    }
    let spectrum = max_spectrum(ring)?;
    let points = match spectrum.points {
        SpectrumPoints::Finite(points) => points,
        _ => unreachable!(),
    };
    Ok(points
        .into_iter()
        .map(|point| {
            let indicator = match &point {
                MaximalIdeal::Finite { primitive_idempotent, .. } => {
                    primitive_idempotent.clone()
                }
                _ => unreachable!(),
            };
            ComponentBlock { point, indicator }
        })
        .collect())
}
