//! Exact-arithmetic laboratory for commutative ring theory.
//!
//! Decision procedures and certified algorithms over a corpus of concretely
//! representable commutative rings: residue rings, finite fields, products,
//! the integers, eventually constant rational sequences and the local
//! non-chain ring F2[x,y]/(x,y)^2. Covers clean decompositions, maximal
//! spectra and localization kernels, ring classification, constructive
//! Bezout/elementary-divisor certificates with diagonal reduction, and
//! finitely presented module decomposition.
//!
//! ```
//! use ringlab_core::parse::{parse_element, parse_ring_spec};
//! use ringlab_core::matrix::{smith_normal_form, verify_snf_certificate, RingMatrix};
//!
//! let ring = parse_ring_spec("Zn(12)").unwrap();
//!
//! // every element of a finite commutative ring is a unit plus an idempotent
//! let a = parse_element(&ring, "6").unwrap();
//! let d = ring.clean_decompose(&a).unwrap();
//! assert_eq!(ring.add(&d.unit, &d.idempotent), a);
//!
//! // diagonal reduction produces a certificate that an independent
//! // checker re-validates
//! let m = RingMatrix::new(2, 2, vec![
//!     parse_element(&ring, "4").unwrap(),
//!     parse_element(&ring, "6").unwrap(),
//!     parse_element(&ring, "0").unwrap(),
//!     parse_element(&ring, "3").unwrap(),
//! ]);
//! let cert = smith_normal_form(&ring, &m).unwrap();
//! assert!(verify_snf_certificate(&ring, &m, &cert).is_ok());
//! ```

pub mod battery;
pub mod bezout;
pub mod classify;
pub mod matrix;
pub mod endo;
pub mod modules;
pub mod ec;
pub mod error;
pub mod parse;
pub mod report;
pub mod ring;
pub mod rng;
pub mod spectrum;
pub mod suites;
pub mod zsnf;

pub use error::{Result, RingError};
pub use ring::{CleanDecomposition, Element, RadicalKind, RadicalSet, Ring, RingKind};
