//! Reproducible test batteries: the built-in ring corpus, per-ring module
//! batteries and the polynomial battery for the local-global check.

use crate::classify::Polynomial;
use crate::error::Result;
use crate::modules::{lemma33_module, present_module, FiniteModule};
use crate::ring::{Element, Ring};
use crate::rng::SplitMix64;

/// The fixed, versioned ring corpus: Zn(2..=64), the fields F4, F8, F9,
/// the local non-chain ring, two products, Z and EC(2).
pub fn built_in_corpus() -> Vec<Ring> {
    let mut out: Vec<Ring> = (2..=64).map(|n| Ring::zmod(n).unwrap()).collect();
    out.push(Ring::poly_quot(2, &[1, 1, 1]).unwrap()); // F4
    out.push(Ring::poly_quot(2, &[1, 1, 0, 1]).unwrap()); // F8
    out.push(Ring::poly_quot(3, &[1, 0, 1]).unwrap()); // F9
    out.push(Ring::local_non_chain2());
    out.push(Ring::product(vec![Ring::zmod(4).unwrap(), Ring::zmod(3).unwrap()]).unwrap());
    out.push(Ring::product(vec![Ring::zmod(2).unwrap(), Ring::zmod(2).unwrap()]).unwrap());
    out.push(Ring::integers());
    out.push(Ring::eventually_constant(2).unwrap());
    out
}

pub const RANDOM_TWO_GEN_MODULES: usize = 20;

#[derive(Debug)]
pub struct BatteryModule {
    pub label: String,
    pub module: FiniteModule,
}

/// The per-ring module battery: every cyclic module R/(a) up to ideal
/// equality, twenty seeded two-generator modules with one nonzero random
/// relation, and staircase truncations where the hypotheses hold.
pub fn module_battery(ring: &Ring, seed: u64) -> Result<Vec<BatteryModule>> {
    let mut out = Vec::new();
    let all = ring.elements()?;

    // Cyclic modules, one per distinct principal ideal.
    let mut seen_ideals: Vec<Vec<Element>> = Vec::new();
    for a in &all {
        let mut multiples: Vec<Element> = all.iter().map(|r| ring.mul(r, a)).collect();
        multiples.sort();
        multiples.dedup();
        if seen_ideals.contains(&multiples) {
            continue;
        }
        seen_ideals.push(multiples);
        let module = present_module(ring, 1, &[vec![a.clone()]])?;
        out.push(BatteryModule { label: format!("cyclic({a})"), module });
    }

    // Two-generator modules with a single random nonzero relation.
    let mut rng = SplitMix64::derive(seed, &format!("battery:{ring}"));
    let zero = ring.zero();
    for k in 0..RANDOM_TWO_GEN_MODULES {
        let row = loop {
            let w1 = all[rng.below(all.len() as u64) as usize].clone();
            let w2 = all[rng.below(all.len() as u64) as usize].clone();
            if w1 != zero || w2 != zero {
                break vec![w1, w2];
            }
        };
        let module = present_module(ring, 2, std::slice::from_ref(&row))?;
        out.push(BatteryModule {
            label: format!("rand2#{k}({},{})", row[0], row[1]),
            module,
        });
    }

    // Staircase truncations on the least hypothesis pair, when one exists:
    // a, b nonzero, mutually non-dividing, Ra ∩ Rb = 0 and Pa = Pb = 0.
    // Only local rings can host one.
    if crate::spectrum::primitive_idempotents(ring)?.len() == 1 {
        'host: for a in &all {
            for b in &all {
                if *a == zero || *b == zero {
                    continue;
                }
                if ring.divide(a, b).is_some() || ring.divide(b, a).is_some() {
                    continue;
                }
                let m2 = match lemma33_module(ring, a, b, 2) {
                    Ok(m) => m,
                    Err(_) => continue,
                };
                let m3 = match lemma33_module(ring, a, b, 3) {
                    Ok(m) => m,
                    Err(_) => continue,
                };
                out.push(BatteryModule {
                    label: format!("staircase2({a},{b})"),
                    module: m2,
                });
                out.push(BatteryModule {
                    label: format!("staircase3({a},{b})"),
                    module: m3,
                });
                break 'host;
            }
        }
    }
    Ok(out)
}

/// All univariate polynomials of degree at most two over the ring.
pub fn univariate_battery(ring: &Ring) -> Result<Vec<Polynomial>> {
    let all = ring.elements()?;
    let mut out = Vec::new();
    for c0 in &all {
        for c1 in &all {
            for c2 in &all {
                out.push(Polynomial::univariate(
                    ring,
                    &[c0.clone(), c1.clone(), c2.clone()],
                ));
            }
        }
    }
    Ok(out)
}

pub const BIVARIATE_SAMPLES: usize = 50;

/// Seeded random bivariate quadratics: coefficients on 1, X, Y, X^2, XY, Y^2.
pub fn bivariate_battery(ring: &Ring, seed: u64) -> Result<Vec<Polynomial>> {
    let all = ring.elements()?;
    let mut rng = SplitMix64::derive(seed, &format!("bivariate:{ring}"));
    let exps: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    let mut out = Vec::with_capacity(BIVARIATE_SAMPLES);
    for _ in 0..BIVARIATE_SAMPLES {
        let terms: Vec<(Vec<u32>, Element)> = exps
            .iter()
            .map(|&(i, j)| {
                let c = all[rng.below(all.len() as u64) as usize].clone();
                (vec![i, j], c)
            })
            .filter(|(_, c)| !ring.is_zero(c))
            .collect();
        out.push(Polynomial { nvars: 2, terms });
    }
    Ok(out)
}
