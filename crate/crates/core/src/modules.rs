//! Finitely presented modules over finite rings, fully materialized.
//!
//! A module is the quotient of R^g by the submodule spanned by relation
//! rows. Elements are enumerated coset representatives (the least tuple of
//! each coset); the ring action is a precomputed table.

use std::collections::{HashMap, HashSet};

use crate::error::{Result, RingError};
use crate::ring::{Element, Ring};
use crate::spectrum::{max_spectrum, MaximalIdeal, SpectrumPoints};

pub const MAX_GENERATORS: usize = 6;
pub const MAX_RELATIONS: usize = 8;
pub const MAX_TUPLES: u64 = 1 << 16;

#[derive(Debug, Clone)]
pub struct Presentation {
    pub ring: Ring,
    pub generators: usize,
    pub relations: Vec<Vec<Element>>,
}

/// A finite module with explicit elements and action table.
#[derive(Debug, Clone)]
pub struct FiniteModule {
    pub pres: Presentation,
    /// Coset representatives in canonical order; index 0 is zero.
    pub elems: Vec<Vec<Element>>,
    index: HashMap<Vec<Element>, usize>,
    pub ring_elems: Vec<Element>,
    ring_index: HashMap<Element, usize>,
    /// action[ring element index][module element index]
    pub action: Vec<Vec<usize>>,
}

impl FiniteModule {
    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn zero_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, tuple: &[Element]) -> usize {
        self.index[tuple]
    }

    pub fn add(&self, i: usize, j: usize) -> usize {
        let ring = &self.pres.ring;
        let sum: Vec<Element> = self.elems[i]
            .iter()
            .zip(&self.elems[j])
            .map(|(a, b)| ring.add(a, b))
            .collect();
        self.index[&sum]
    }

    pub fn neg(&self, i: usize) -> usize {
        let ring = &self.pres.ring;
        let neg: Vec<Element> = self.elems[i].iter().map(|a| ring.neg(a)).collect();
        self.index[&neg]
    }

    pub fn act(&self, r: &Element, i: usize) -> usize {
        self.action[self.ring_index[r]][i]
    }

    pub fn act_by_ring_index(&self, ri: usize, i: usize) -> usize {
        self.action[ri][i]
    }

    /// The value of a generator tuple applied to images: Σ r_j · images_j.
    pub fn combine(&self, coeffs: &[Element], images: &[usize]) -> usize {
        let mut acc = self.zero_index();
        for (r, &m) in coeffs.iter().zip(images) {
            acc = self.add(acc, self.act(r, m));
        }
        acc
    }

    /// Orbit R·m as a sorted set of element indices.
    pub fn cyclic_span(&self, m: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            (0..self.ring_elems.len()).map(|ri| self.action[ri][m]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Materializes R^g modulo the span of the relation rows.
pub fn present_module(
    ring: &Ring,
    generators: usize,
    relations: &[Vec<Element>],
) -> Result<FiniteModule> {
    if generators == 0 || generators > MAX_GENERATORS {
        return Err(RingError::Unsupported(format!(
            "generator count {generators} outside 1..={MAX_GENERATORS}"
        )));
    }
    if relations.len() > MAX_RELATIONS {
        return Err(RingError::Unsupported(format!(
            "relation count {} exceeds {MAX_RELATIONS}",
            relations.len()
        )));
    }
    let order = ring.order().ok_or_else(|| {
        RingError::InfiniteEnumeration("modules require a finite ring".into())
    })?;
    let tuples = order.checked_pow(generators as u32).unwrap_or(u64::MAX);
    if tuples > MAX_TUPLES {
        return Err(RingError::EnumerationCapExceeded { order: tuples, cap: MAX_TUPLES });
    }
    for row in relations {
        if row.len() != generators {
            return Err(RingError::Unsupported(format!(
                "relation row arity {} does not match {generators} generators",
                row.len()
            )));
        }
    }
    let ring_elems = ring.elements()?;
    let ring_index: HashMap<Element, usize> = ring_elems
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();

    // K = additive closure of all ring multiples of the relation rows.
    let zero_tuple: Vec<Element> = vec![ring.zero(); generators];
    let mut multiples: Vec<Vec<Element>> = Vec::new();
    {
        let mut seen: HashSet<Vec<Element>> = HashSet::new();
        for row in relations {
            for r in &ring_elems {
                let m: Vec<Element> = row.iter().map(|w| ring.mul(r, w)).collect();
                if seen.insert(m.clone()) {
                    multiples.push(m);
                }
            }
        }
    }
    let mut span: HashSet<Vec<Element>> = HashSet::new();
    span.insert(zero_tuple.clone());
    let mut queue = vec![zero_tuple];
    while let Some(x) = queue.pop() {
        for m in &multiples {
            let s: Vec<Element> =
                x.iter().zip(m).map(|(a, b)| ring.add(a, b)).collect();
            if span.insert(s.clone()) {
                queue.push(s);
            }
        }
    }
    let submodule: Vec<Vec<Element>> = span.into_iter().collect();

    // Enumerate cosets: tuples in canonical order; the first unassigned
    // tuple is the least representative of its coset.
    let mut index: HashMap<Vec<Element>, usize> = HashMap::with_capacity(tuples as usize);
    let mut elems: Vec<Vec<Element>> = Vec::new();
    let mut idx = vec![0usize; generators];
    loop {
        let tuple: Vec<Element> =
            idx.iter().map(|&i| ring_elems[i].clone()).collect();
        if !index.contains_key(&tuple) {
            let rep_index = elems.len();
            for k in &submodule {
                let member: Vec<Element> =
                    tuple.iter().zip(k).map(|(a, b)| ring.add(a, b)).collect();
                index.insert(member, rep_index);
            }
            elems.push(tuple);
        }
        let mut pos = generators;
        loop {
            if pos == 0 {
                let action: Vec<Vec<usize>> = ring_elems
                    .iter()
                    .map(|r| {
                        elems
                            .iter()
                            .map(|m| {
                                let scaled: Vec<Element> =
                                    m.iter().map(|a| ring.mul(r, a)).collect();
                                index[&scaled]
                            })
                            .collect()
                    })
                    .collect();
                return Ok(FiniteModule {
                    pres: Presentation {
                        ring: ring.clone(),
                        generators,
                        relations: relations.to_vec(),
                    },
                    elems,
                    index,
                    ring_elems,
                    ring_index,
                    action,
                });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < ring_elems.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Composition length: the sum over local factors of log_q |M·e|, where q
/// is the residue field order of the factor.
pub fn module_length(ring: &Ring, module: &FiniteModule) -> Result<u64> {
    length_of_subset(ring, module, &(0..module.size()).collect::<Vec<_>>())
}

/// Length of a submodule given by element indices (must be closed under
/// the action and addition; callers pass radicals, socles, images).
pub fn length_of_subset(
    ring: &Ring,
    module: &FiniteModule,
    subset: &[usize],
) -> Result<u64> {
    let jac = ring.jacobson_radical()?;
    let prims = crate::spectrum::primitive_idempotents(ring)?;
    let mut total = 0u64;
    for e in &prims {
        let re: HashSet<Element> =
            module.ring_elems.iter().map(|x| ring.mul(x, e)).collect();
        let je: HashSet<Element> =
            jac.elements.iter().map(|j| ring.mul(j, e)).collect();
        let q = (re.len() / je.len()) as u64;
        let part: HashSet<usize> = subset.iter().map(|&m| module.act(e, m)).collect();
        let size = part.len() as u64;
        // |M·e| is a power of the residue field order.
        let mut k = 0u64;
        let mut acc = 1u64;
        while acc < size {
            acc *= q;
            k += 1;
        }
        if acc != size {
            return Err(RingError::WitnessNotFound(format!(
                "|M·e| = {size} is not a power of the residue field order {q}"
            )));
        }
        total += k;
    }
    Ok(total)
}

/// Maximal ideals in the support: the points whose primitive idempotent
/// acts nontrivially.
pub fn support(ring: &Ring, module: &FiniteModule) -> Result<Vec<MaximalIdeal>> {
    let spectrum = max_spectrum(ring)?;
    let points = match spectrum.points {
        SpectrumPoints::Finite(points) => points,
        _ => unreachable!("modules are materialized over finite rings"),
    };
    let mut out = Vec::new();
    for point in points {
        let e = match &point {
            MaximalIdeal::Finite { primitive_idempotent, .. } => primitive_idempotent,
            _ => unreachable!(),
        };
        let image: HashSet<usize> =
            (0..module.size()).map(|m| module.act(e, m)).collect();
        if image.len() > 1 {
            out.push(point);
        }
    }
    Ok(out)
}

/// Exhaustive generator search: the least m with R·m = M, if any.
pub fn is_cyclic(ring: &Ring, module: &FiniteModule) -> Result<Option<usize>> {
    let _ = ring;
    for m in 0..module.size() {
        if module.cyclic_span(m).len() == module.size() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// The socle {m : J·m = 0} as sorted element indices.
pub fn socle(ring: &Ring, module: &FiniteModule) -> Result<Vec<usize>> {
    let jac = ring.jacobson_radical()?;
    let zero = module.zero_index();
    Ok((0..module.size())
        .filter(|&m| jac.elements.iter().all(|j| module.act(j, m) == zero))
        .collect())
}

/// Cocyclic: the socle is a simple module (length one). For finite
/// modules the socle is automatically essential.
pub fn is_cocyclic(ring: &Ring, module: &FiniteModule) -> Result<bool> {
    let soc = socle(ring, module)?;
    Ok(length_of_subset(ring, module, &soc)? == 1)
}

/// The truncated staircase module R^n / (a·e_i - b·e_{i+1}).
/// Hypotheses: R finite local, Ra ∩ Rb = 0 and Pa = Pb = 0.
pub fn lemma33_module(
    ring: &Ring,
    a: &Element,
    b: &Element,
    n: usize,
) -> Result<FiniteModule> {
    if !(2..=5).contains(&n) {
        return Err(RingError::HypothesisViolated(format!(
            "truncation length {n} outside 2..=5"
        )));
    }
    let prims = crate::spectrum::primitive_idempotents(ring)?;
    if prims.len() != 1 {
        return Err(RingError::NotLocal {
            primitive_idempotents: prims.len() as u64,
        });
    }
    let all = ring.elements()?;
    let zero = ring.zero();
    let ra: HashSet<Element> = all.iter().map(|r| ring.mul(r, a)).collect();
    let rb: HashSet<Element> = all.iter().map(|r| ring.mul(r, b)).collect();
    if ra.intersection(&rb).any(|x| *x != zero) {
        return Err(RingError::HypothesisViolated(format!(
            "Ra ∩ Rb contains a nonzero element for a = {a}, b = {b}"
        )));
    }
    // P = the unique maximal ideal.
    let spectrum = max_spectrum(ring)?;
    let points = match spectrum.points {
        SpectrumPoints::Finite(points) => points,
        _ => unreachable!(),
    };
    let p_elems = match &points[0] {
        MaximalIdeal::Finite { ideal, .. } => &ideal.elements,
        _ => unreachable!(),
    };
    for p in p_elems {
        if ring.mul(p, a) != zero || ring.mul(p, b) != zero {
            return Err(RingError::HypothesisViolated(format!(
                "P·a = P·b = 0 fails at p = {p}"
            )));
        }
    }
    let mut relations = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut row = vec![ring.zero(); n];
        row[i] = a.clone();
        row[i + 1] = ring.neg(b);
        relations.push(row);
    }
    present_module(ring, n, &relations)
}

/// Extracts the submodule spanned by `subset` (which must be closed) as a
/// standalone module, returning the embedding of its elements back into
/// the parent and the generator images used.
pub struct SubmoduleExtraction {
    pub module: FiniteModule,
    /// standalone element index -> parent element index
    pub embed: Vec<usize>,
    /// parent element index -> standalone element index (for members)
    pub restrict: HashMap<usize, usize>,
    /// parent indices of the chosen generators
    pub generator_images: Vec<usize>,
}

pub fn extract_submodule(
    ring: &Ring,
    module: &FiniteModule,
    subset: &[usize],
) -> Result<SubmoduleExtraction> {
    let members: HashSet<usize> = subset.iter().copied().collect();
    // Greedy generator selection in canonical order.
    let mut gens: Vec<usize> = Vec::new();
    let mut spanned: HashSet<usize> = HashSet::new();
    spanned.insert(module.zero_index());
    for &m in subset {
        if spanned.len() == members.len() {
            break;
        }
        if spanned.contains(&m) {
            continue;
        }
        gens.push(m);
        // Re-span from scratch: additive closure of the cyclic spans.
        let mut multiples: Vec<usize> = Vec::new();
        {
            let mut seen = HashSet::new();
            for &g in &gens {
                for ri in 0..module.ring_elems.len() {
                    let v = module.act_by_ring_index(ri, g);
                    if seen.insert(v) {
                        multiples.push(v);
                    }
                }
            }
        }
        spanned.clear();
        spanned.insert(module.zero_index());
        let mut queue = vec![module.zero_index()];
        while let Some(x) = queue.pop() {
            for &m in &multiples {
                let s = module.add(x, m);
                if spanned.insert(s) {
                    queue.push(s);
                }
            }
        }
    }
    if spanned.len() != members.len() || !spanned.is_subset(&members) {
        return Err(RingError::WitnessNotFound(
            "subset is not a submodule closed under action and addition".into(),
        ));
    }
    if gens.is_empty() {
        // Zero submodule: present as one generator with the unit relation.
        gens.push(module.zero_index());
    }
    if gens.len() > MAX_GENERATORS {
        return Err(RingError::Unsupported(format!(
            "submodule needs {} generators, cap is {MAX_GENERATORS}",
            gens.len()
        )));
    }

    // Relation lattice: all coefficient tuples combining the generators
    // to zero, found by exhaustive scan over R^{g'}.
    let g = gens.len();
    let mut kernel_tuples: Vec<Vec<Element>> = Vec::new();
    let mut idx = vec![0usize; g];
    'scan: loop {
        let coeffs: Vec<Element> =
            idx.iter().map(|&i| module.ring_elems[i].clone()).collect();
        let mut acc = module.zero_index();
        for (c, &gm) in coeffs.iter().zip(&gens) {
            acc = module.add(acc, module.act(c, gm));
        }
        if acc == module.zero_index() {
            kernel_tuples.push(coeffs);
        }
        let mut pos = g;
        loop {
            if pos == 0 {
                break 'scan;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < module.ring_elems.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
    // Minimal generating rows for the kernel submodule of R^g.
    let rows = minimal_submodule_generators(ring, module, g, &kernel_tuples)?;
    let standalone = present_module(ring, g, &rows)?;
    if standalone.size() != members.len() {
        return Err(RingError::WitnessNotFound(format!(
            "extracted presentation has {} elements, submodule has {}",
            standalone.size(),
            members.len()
        )));
    }
    let mut embed = Vec::with_capacity(standalone.size());
    let mut restrict = HashMap::with_capacity(standalone.size());
    for (si, tuple) in standalone.elems.iter().enumerate() {
        let mut acc = module.zero_index();
        for (c, &gm) in tuple.iter().zip(&gens) {
            acc = module.add(acc, module.act(c, gm));
        }
        embed.push(acc);
        restrict.insert(acc, si);
    }
    if restrict.len() != standalone.size() {
        return Err(RingError::WitnessNotFound(
            "extracted presentation does not map bijectively onto the submodule".into(),
        ));
    }
    Ok(SubmoduleExtraction {
        module: standalone,
        embed,
        restrict,
        generator_images: gens,
    })
}

/// Greedy minimal generating rows (as a submodule of R^g) for a set of
/// coefficient tuples.
fn minimal_submodule_generators(
    ring: &Ring,
    module: &FiniteModule,
    g: usize,
    tuples: &[Vec<Element>],
) -> Result<Vec<Vec<Element>>> {
    let mut sorted: Vec<Vec<Element>> = tuples.to_vec();
    sorted.sort();
    let target: HashSet<&Vec<Element>> = sorted.iter().collect();
    let zero_tuple: Vec<Element> = vec![ring.zero(); g];
    let span_of = |rows: &[Vec<Element>]| -> HashSet<Vec<Element>> {
        let mut multiples: Vec<Vec<Element>> = Vec::new();
        let mut seen: HashSet<Vec<Element>> = HashSet::new();
        for row in rows {
            for r in &module.ring_elems {
                let m: Vec<Element> = row.iter().map(|w| ring.mul(r, w)).collect();
                if seen.insert(m.clone()) {
                    multiples.push(m);
                }
            }
        }
        let mut span: HashSet<Vec<Element>> = HashSet::new();
        span.insert(zero_tuple.clone());
        let mut queue = vec![zero_tuple.clone()];
        while let Some(x) = queue.pop() {
            for m in &multiples {
                let s: Vec<Element> =
                    x.iter().zip(m).map(|(a, b)| ring.add(a, b)).collect();
                if span.insert(s.clone()) {
                    queue.push(s);
                }
            }
        }
        span
    };
    let mut rows: Vec<Vec<Element>> = Vec::new();
    let mut span = span_of(&rows);
    for t in &sorted {
        if span.len() == target.len() {
            break;
        }
        if !span.contains(t) {
            rows.push(t.clone());
            span = span_of(&rows);
        }
    }
    if rows.len() > MAX_RELATIONS {
        return Err(RingError::Unsupported(format!(
            "kernel needs {} relation rows, cap is {MAX_RELATIONS}",
            rows.len()
        )));
    }
    Ok(rows)
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
    fn cyclic_module_sizes() {
        let r4 = zn(4);
        let m = present_module(&r4, 1, &[vec![res(2)]]).unwrap();
        assert_eq!(m.size(), 2);

        let r12 = zn(12);
        let m = present_module(&r12, 1, &[vec![res(4)]]).unwrap();
        assert_eq!(m.size(), 4);
        assert_eq!(module_length(&r12, &m).unwrap(), 2);
    }

    #[test]
    fn free_module_and_whole_ring() {
        let r6 = zn(6);
        let m = present_module(&r6, 1, &[]).unwrap();
        assert_eq!(m.size(), 6);
        assert_eq!(module_length(&r6, &m).unwrap(), 2);
        assert_eq!(is_cyclic(&r6, &m).unwrap(), Some(1)); // generator 1
    }

    #[test]
    fn zero_module() {
        let r4 = zn(4);
        let m = present_module(&r4, 1, &[vec![res(1)]]).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(module_length(&r4, &m).unwrap(), 0);
        assert!(support(&r4, &m).unwrap().is_empty());
        assert!(!is_cocyclic(&r4, &m).unwrap());
    }

    #[test]
    fn support_of_z4_over_zn12() {
        let r12 = zn(12);
        let m = present_module(&r12, 1, &[vec![res(4)]]).unwrap();
        let supp = support(&r12, &m).unwrap();
        assert_eq!(supp.len(), 1);
        match &supp[0] {
            MaximalIdeal::Finite { ideal, .. } => {
                let evens: Vec<Element> = (0..6).map(|k| res(2 * k)).collect();
                assert_eq!(ideal.elements, evens);
            }
            _ => unreachable!(),
        }
        let free = present_module(&r12, 1, &[]).unwrap();
        assert_eq!(support(&r12, &free).unwrap().len(), 2);
    }

    #[test]
    fn socle_and_cocyclic_z4() {
        let r4 = zn(4);
        let m = present_module(&r4, 1, &[]).unwrap(); // Z/4
        let soc = socle(&r4, &m).unwrap();
        // socle = {0, 2}
        assert_eq!(soc.len(), 2);
        assert!(is_cocyclic(&r4, &m).unwrap());
        // Z/2 ⊕ Z/2 over Zn(2): socle is everything, length 2, not cocyclic
        let r2 = zn(2);
        let m2 = present_module(&r2, 2, &[]).unwrap();
        assert!(!is_cocyclic(&r2, &m2).unwrap());
    }

    #[test]
    fn cyclic_over_crt_ring() {
        let r6 = zn(6);
        // Z/2 ⊕ Z/3 with generators (1,0)-ish: relations (3, 0), (0, 2)
        // presented on 2 generators: 3·g1 = 0, 2·g2 = 0.
        let m = present_module(
            &r6,
            2,
            &[vec![res(3), res(0)], vec![res(0), res(2)]],
        )
        .unwrap();
        assert_eq!(m.size(), 6);
        assert!(is_cyclic(&r6, &m).unwrap().is_some());
    }

    #[test]
    fn lemma33_truncations_over_lnc2() {
        let r = Ring::local_non_chain2();
        let x = Element::Poly(vec![0, 1, 0]);
        let y = Element::Poly(vec![0, 0, 1]);
        let m2 = lemma33_module(&r, &x, &y, 2).unwrap();
        assert_eq!(m2.size(), 32);
        assert_eq!(module_length(&r, &m2).unwrap(), 5);
        let m3 = lemma33_module(&r, &x, &y, 3).unwrap();
        assert_eq!(m3.size(), 128);
        assert_eq!(module_length(&r, &m3).unwrap(), 7);
        assert!(is_cyclic(&r, &m3).unwrap().is_none());
    }

    #[test]
    fn lemma33_rejects_violated_hypotheses() {
        let r4 = zn(4);
        match lemma33_module(&r4, &res(2), &res(2), 2) {
            Err(RingError::HypothesisViolated(_)) => {}
            other => panic!("expected HypothesisViolated, got {other:?}"),
        }
        let r12 = zn(12);
        match lemma33_module(&r12, &res(6), &res(6), 2) {
            Err(RingError::NotLocal { .. }) => {}
            other => panic!("expected NotLocal, got {other:?}"),
        }
    }

    #[test]
    fn lemma33_lengths_regression() {
        // length(M_N) = 2N + 1 for the staircase truncations over the
        // local non-chain ring.
        let r = Ring::local_non_chain2();
        let x = Element::Poly(vec![0, 1, 0]);
        let y = Element::Poly(vec![0, 0, 1]);
        for n in 2..=5 {
            let m = lemma33_module(&r, &x, &y, n).unwrap();
            assert_eq!(
                module_length(&r, &m).unwrap(),
                2 * n as u64 + 1,
                "length of M_{n}"
            );
        }
    }

    #[test]
    fn extract_submodule_round_trip() {
        let r12 = zn(12);
        let m = present_module(&r12, 1, &[]).unwrap(); // R as module
        // submodule (4) = {0, 4, 8}
        let subset: Vec<usize> = [0u64, 4, 8]
            .iter()
            .map(|&v| m.index_of(&[res(v)]))
            .collect();
        let ex = extract_submodule(&r12, &m, &subset).unwrap();
        assert_eq!(ex.module.size(), 3);
        assert_eq!(module_length(&r12, &ex.module).unwrap(), 1);
        // embedding is a bijection onto the subset
        let embedded: HashSet<usize> = ex.embed.iter().copied().collect();
        let expected: HashSet<usize> = subset.into_iter().collect();
        assert_eq!(embedded, expected);
    }
}
