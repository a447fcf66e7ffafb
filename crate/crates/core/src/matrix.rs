//! Matrices over corpus rings and certified diagonal reduction.
//!
//! `smith_normal_form` produces a certificate (P, D, Q) with P·A·Q = D,
//! unit determinants, and a divisibility chain down the diagonal.
//! `verify_snf_certificate` is a pure checker that re-multiplies exactly
//! and never trusts the producer.

use num_traits::{One, Zero};

use crate::bezout::bezout_pivot;
use crate::ec;
use crate::error::{Result, RingError};
use crate::ring::{Element, Ring, RingKind};

/// Row-major matrix with entries in a fixed ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Element>,
}

impl RingMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Element>) -> RingMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count must match shape");
        RingMatrix { rows, cols, entries }
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> RingMatrix {
        RingMatrix::new(rows, cols, vec![ring.zero(); rows * cols])
    }

    pub fn identity(ring: &Ring, n: usize) -> RingMatrix {
        let mut m = RingMatrix::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Element {
        &mut self.entries[i * self.cols + j]
    }

    pub fn mul(ring: &Ring, a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
        assert_eq!(a.cols, b.rows, "shape mismatch in matrix product");
        let mut out = RingMatrix::zero(ring, a.rows, b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = ring.zero();
                for k in 0..a.cols {
                    acc = ring.add(&acc, &ring.mul(a.at(i, k), b.at(k, j)));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    /// Exact determinant by cofactor expansion along the first row.
    pub fn determinant(ring: &Ring, m: &RingMatrix) -> Element {
        assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
        match m.rows {
            0 => ring.one(),
            1 => m.at(0, 0).clone(),
            n => {
                let mut acc = ring.zero();
                for j in 0..n {
                    let entry = m.at(0, j);
                    if ring.is_zero(entry) {
                        continue;
                    }
                    let minor = m.minor(0, j);
                    let term = ring.mul(entry, &Self::determinant(ring, &minor));
                    if j % 2 == 0 {
                        acc = ring.add(&acc, &term);
                    } else {
                        acc = ring.sub(&acc, &term);
                    }
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> RingMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                entries.push(self.at(i, j).clone());
            }
        }
        RingMatrix::new(self.rows - 1, self.cols - 1, entries)
    }

    /// File format: header "m n", then rows of element literals.
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Certificate of a diagonal reduction: P·A·Q = D exactly.
#[derive(Debug, Clone)]
pub struct SNFCertificate {
    pub p: RingMatrix,
    pub d: RingMatrix,
    pub q: RingMatrix,
    /// The full diagonal of D, zeros trailing.
    pub divisibility_chain: Vec<Element>,
}

pub const MATRIX_DIM_CAP: usize = 8;
const EC_PREFIX_CAP: usize = 32;

pub fn smith_normal_form(ring: &Ring, a: &RingMatrix) -> Result<SNFCertificate> {
    smith_normal_form_with_cap(ring, a, MATRIX_DIM_CAP)
}

pub fn smith_normal_form_with_cap(
    ring: &Ring,
    a: &RingMatrix,
    dim_cap: usize,
) -> Result<SNFCertificate> {
    if a.rows > dim_cap || a.cols > dim_cap {
        return Err(RingError::MatrixTooLarge {
            rows: a.rows,
            cols: a.cols,
            cap: dim_cap,
        });
    }
    if let RingKind::EventuallyConstant(_) = ring.kind() {
        let widest = a.entries.iter().map(ec::prefix_len).max().unwrap_or(0);
        if widest > EC_PREFIX_CAP {
            return Err(RingError::Unsupported(format!(
                "EC matrix entries must have prefix length <= {EC_PREFIX_CAP}, found {widest}"
            )));
        }
    }
    let mut engine = Reduction {
        ring,
        work: a.clone(),
        p: RingMatrix::identity(ring, a.rows),
        q: RingMatrix::identity(ring, a.cols),
    };
    engine.diagonalize()?;
    // Chain repair can introduce interior zeros (the fold of two
    // comaximal zero divisors has a zero lcm), so alternate the phases
    // until both stabilize.
    let rank_bound = a.rows.min(a.cols);
    let mut budget = 64 * rank_bound * rank_bound + 8;
    loop {
        engine.order_zeros();
        if !engine.repair_chain_pass()? {
            break;
        }
        budget -= 1;
        if budget == 0 {
            return Err(RingError::DiagonalizationFailed {
                submatrix: engine.submatrix_render(0),
            });
        }
    }
    engine.normalize_diagonal();
    let rank = a.rows.min(a.cols);
    let chain: Vec<Element> = (0..rank).map(|i| engine.work.at(i, i).clone()).collect();
    Ok(SNFCertificate {
        p: engine.p,
        d: engine.work,
        q: engine.q,
        divisibility_chain: chain,
    })
}

struct Reduction<'a> {
    ring: &'a Ring,
    work: RingMatrix,
    p: RingMatrix,
    q: RingMatrix,
}

impl<'a> Reduction<'a> {
    fn diagonalize(&mut self) -> Result<()> {
        let r = self.work.rows.min(self.work.cols);
        for k in 0..r {
            if !self.select_pivot(k) {
                break; // submatrix is zero
            }
            self.clear_position(k)?;
        }
        Ok(())
    }

    /// Moves the pivot for step k into place: leftmost nonzero column of
    /// the submatrix, then the least canonical entry in it (topmost on
    /// ties). Returns false when the submatrix is zero.
    fn select_pivot(&mut self, k: usize) -> bool {
        let zero = self.ring.zero();
        for j in k..self.work.cols {
            let mut best: Option<(usize, Element)> = None;
            for i in k..self.work.rows {
                let v = self.work.at(i, j);
                if *v == zero {
                    continue;
                }
                match &best {
                    Some((_, b)) if b <= v => {}
                    _ => best = Some((i, v.clone())),
                }
            }
            if let Some((i, _)) = best {
                if i != k {
                    self.swap_rows(k, i);
                }
                if j != k {
                    self.swap_cols(k, j);
                }
                return true;
            }
        }
        false
    }

    /// Clears row k and column k outside the pivot. Each Bezout step
    /// strictly enlarges the pivot ideal, so the loop terminates well
    /// inside the pass bound.
    fn clear_position(&mut self, k: usize) -> Result<()> {
        let zero = self.ring.zero();
        let max_passes = 64 * (self.work.rows + self.work.cols) + 4;
        for _ in 0..max_passes {
            for i in k + 1..self.work.rows {
                if *self.work.at(i, k) == zero {
                    continue;
                }
                let pivot = self.work.at(k, k).clone();
                let entry = self.work.at(i, k).clone();
                if let Some(t) = self.ring.divide(&entry, &pivot) {
                    self.row_sub(i, &t, k);
                } else {
                    let pd = self.pivot_data(&pivot, &entry, k)?;
                    self.row_combine(k, i, &pd);
                }
            }
            for j in k + 1..self.work.cols {
                if *self.work.at(k, j) == zero {
                    continue;
                }
                let pivot = self.work.at(k, k).clone();
                let entry = self.work.at(k, j).clone();
                if let Some(t) = self.ring.divide(&entry, &pivot) {
                    self.col_sub(j, &t, k);
                } else {
                    let pd = self.pivot_data(&pivot, &entry, k)?;
                    self.col_combine(k, j, &pd);
                }
            }
            let col_clear =
                (k + 1..self.work.rows).all(|i| *self.work.at(i, k) == zero);
            let row_clear =
                (k + 1..self.work.cols).all(|j| *self.work.at(k, j) == zero);
            if col_clear && row_clear {
                return Ok(());
            }
        }
        Err(RingError::DiagonalizationFailed {
            submatrix: self.submatrix_render(k),
        })
    }

    fn pivot_data(
        &self,
        a: &Element,
        b: &Element,
        k: usize,
    ) -> Result<crate::bezout::PivotData> {
        bezout_pivot(self.ring, a, b).map_err(|e| match e {
            RingError::NotPrincipal { .. } => RingError::DiagonalizationFailed {
                submatrix: self.submatrix_render(k),
            },
            other => other,
        })
    }

    fn submatrix_render(&self, k: usize) -> String {
        let mut rows = Vec::new();
        for i in k..self.work.rows {
            let row: Vec<String> =
                (k..self.work.cols).map(|j| self.work.at(i, j).to_string()).collect();
            rows.push(format!("[{}]", row.join(" ")));
        }
        format!("[{}]", rows.join(" "))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.work.cols {
            let a = self.work.at(i, c).clone();
            let b = self.work.at(j, c).clone();
            *self.work.at_mut(i, c) = b;
            *self.work.at_mut(j, c) = a;
        }
        for c in 0..self.p.cols {
            let a = self.p.at(i, c).clone();
            let b = self.p.at(j, c).clone();
            *self.p.at_mut(i, c) = b;
            *self.p.at_mut(j, c) = a;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in 0..self.work.rows {
            let a = self.work.at(r, i).clone();
            let b = self.work.at(r, j).clone();
            *self.work.at_mut(r, i) = b;
            *self.work.at_mut(r, j) = a;
        }
        for r in 0..self.q.rows {
            let a = self.q.at(r, i).clone();
            let b = self.q.at(r, j).clone();
            *self.q.at_mut(r, i) = b;
            *self.q.at_mut(r, j) = a;
        }
    }

    /// row_i -= t * row_k
    fn row_sub(&mut self, i: usize, t: &Element, k: usize) {
        for c in 0..self.work.cols {
            let v = self.ring.sub(
                self.work.at(i, c),
                &self.ring.mul(t, self.work.at(k, c)),
            );
            *self.work.at_mut(i, c) = v;
        }
        for c in 0..self.p.cols {
            let v =
                self.ring.sub(self.p.at(i, c), &self.ring.mul(t, self.p.at(k, c)));
            *self.p.at_mut(i, c) = v;
        }
    }

    /// col_j -= t * col_k
    fn col_sub(&mut self, j: usize, t: &Element, k: usize) {
        for r in 0..self.work.rows {
            let v = self.ring.sub(
                self.work.at(r, j),
                &self.ring.mul(t, self.work.at(r, k)),
            );
            *self.work.at_mut(r, j) = v;
        }
        for r in 0..self.q.rows {
            let v =
                self.ring.sub(self.q.at(r, j), &self.ring.mul(t, self.q.at(r, k)));
            *self.q.at_mut(r, j) = v;
        }
    }

    /// rows (k, i) <- [[s, t], [-b', a']] * rows (k, i); the determinant
    /// s·a' + t·b' is a unit by construction of the pivot data.
    fn row_combine(&mut self, k: usize, i: usize, pd: &crate::bezout::PivotData) {
        let neg_bq = self.ring.neg(&pd.b_quot);
        for c in 0..self.work.cols {
            let top = self.work.at(k, c).clone();
            let bot = self.work.at(i, c).clone();
            *self.work.at_mut(k, c) = self
                .ring
                .add(&self.ring.mul(&pd.s, &top), &self.ring.mul(&pd.t, &bot));
            *self.work.at_mut(i, c) = self
                .ring
                .add(&self.ring.mul(&neg_bq, &top), &self.ring.mul(&pd.a_quot, &bot));
        }
        for c in 0..self.p.cols {
            let top = self.p.at(k, c).clone();
            let bot = self.p.at(i, c).clone();
            *self.p.at_mut(k, c) = self
                .ring
                .add(&self.ring.mul(&pd.s, &top), &self.ring.mul(&pd.t, &bot));
            *self.p.at_mut(i, c) = self
                .ring
                .add(&self.ring.mul(&neg_bq, &top), &self.ring.mul(&pd.a_quot, &bot));
        }
    }

    /// cols (k, j) <- cols (k, j) * [[s, -b'], [t, a']]
    fn col_combine(&mut self, k: usize, j: usize, pd: &crate::bezout::PivotData) {
        let neg_bq = self.ring.neg(&pd.b_quot);
        for r in 0..self.work.rows {
            let left = self.work.at(r, k).clone();
            let right = self.work.at(r, j).clone();
            *self.work.at_mut(r, k) = self
                .ring
                .add(&self.ring.mul(&left, &pd.s), &self.ring.mul(&right, &pd.t));
            *self.work.at_mut(r, j) = self
                .ring
                .add(&self.ring.mul(&left, &neg_bq), &self.ring.mul(&right, &pd.a_quot));
        }
        for r in 0..self.q.rows {
            let left = self.q.at(r, k).clone();
            let right = self.q.at(r, j).clone();
            *self.q.at_mut(r, k) = self
                .ring
                .add(&self.ring.mul(&left, &pd.s), &self.ring.mul(&right, &pd.t));
            *self.q.at_mut(r, j) = self
                .ring
                .add(&self.ring.mul(&left, &neg_bq), &self.ring.mul(&right, &pd.a_quot));
        }
    }

    /// Moves zero diagonal entries behind the nonzero ones.
    fn order_zeros(&mut self) {
        let r = self.work.rows.min(self.work.cols);
        let zero = self.ring.zero();
        loop {
            let mut moved = false;
            for i in 0..r.saturating_sub(1) {
                if *self.work.at(i, i) == zero && *self.work.at(i + 1, i + 1) != zero {
                    self.swap_rows(i, i + 1);
                    self.swap_cols(i, i + 1);
                    moved = true;
                }
            }
            if !moved {
                return;
            }
        }
    }

    /// One repair pass: folds d_{i+1} into the pivot at the first place
    /// where d_i does not divide it and re-reduces the 2x2 block.
    /// Returns whether a fix was applied.
    fn repair_chain_pass(&mut self) -> Result<bool> {
        let r = self.work.rows.min(self.work.cols);
        if r < 2 {
            return Ok(false);
        }
        let zero = self.ring.zero();
        let mut violation = None;
        for i in 0..r - 1 {
            let a = self.work.at(i, i).clone();
            let b = self.work.at(i + 1, i + 1).clone();
            if a != zero && b != zero && self.ring.divide(&b, &a).is_none() {
                violation = Some((i, a, b));
                break;
            }
        }
        let Some((i, a, b)) = violation else {
            return Ok(false);
        };
        // col_i += col_{i+1}: puts b at (i+1, i) next to the pivot a.
        let minus_one = self.ring.neg(&self.ring.one());
        self.col_sub(i, &minus_one, i + 1);
        let pd = self.pivot_data(&a, &b, i)?;
        self.row_combine(i, i + 1, &pd);
        // Row i now carries t·b at column i+1; d divides it exactly.
        let residue = self.work.at(i, i + 1).clone();
        if residue != zero {
            let d = self.work.at(i, i).clone();
            let t = self.ring.divide(&residue, &d).ok_or_else(|| {
                RingError::DiagonalizationFailed {
                    submatrix: self.submatrix_render(i),
                }
            })?;
            self.col_sub(i + 1, &t, i);
        }
        Ok(true)
    }

    /// Scales each nonzero diagonal entry to its canonical generator.
    fn normalize_diagonal(&mut self) {
        let r = self.work.rows.min(self.work.cols);
        let zero = self.ring.zero();
        for i in 0..r {
            let d = self.work.at(i, i).clone();
            if d == zero {
                continue;
            }
            let u = canonical_unit_scale(self.ring, &d);
            if u != self.ring.one() {
                for c in 0..self.work.cols {
                    let v = self.ring.mul(&u, self.work.at(i, c));
                    *self.work.at_mut(i, c) = v;
                }
                for c in 0..self.p.cols {
                    let v = self.ring.mul(&u, self.p.at(i, c));
                    *self.p.at_mut(i, c) = v;
                }
            }
        }
    }
}

/// The unit u such that u·d is the canonical generator of (d): the least
/// associate for finite rings, |d| over Z, prefix in {0,1} with a
/// p-power tail over EC(p).
fn canonical_unit_scale(ring: &Ring, d: &Element) -> Element {
    match ring.kind() {
        RingKind::Integers => match d {
            Element::Int(x) if x < &num_bigint::BigInt::from(0) => {
                ring.neg(&ring.one())
            }
            _ => ring.one(),
        },
        RingKind::EventuallyConstant(p) => {
            let n = ec::prefix_len(d);
            let mut prefix = Vec::with_capacity(n);
            for k in 0..n {
                let v = ec::component(d, k);
                prefix.push(if v.is_zero() { ec::Rat::one() } else { v.recip() });
            }
            let tail = ec::component(d, n);
            let tail_u = match ec::vp(&tail, *p) {
                None => ec::Rat::one(),
                Some(v) => {
                    let mut pv = ec::Rat::one();
                    for _ in 0..v {
                        pv *= ec::Rat::from(num_bigint::BigInt::from(*p));
                    }
                    pv / tail
                }
            };
            ec::make_seq(prefix, tail_u)
        }
        _ => {
            let mut best: Option<(Element, Element)> = None;
            for u in ring.elements().expect("finite ring scales by unit scan") {
                if ring.is_unit(&u).is_none() {
                    continue;
                }
                let prod = ring.mul(&u, d);
                match &best {
                    Some((_, p)) if *p <= prod => {}
                    _ => best = Some((u, prod)),
                }
            }
            best.expect("every ring has units").0
        }
    }
}


/// First violated clause when a certificate fails to check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnfIssue {
    Shape,
    ProductMismatch { row: usize, col: usize },
    PNotUnimodular,
    QNotUnimodular,
    OffDiagonal { row: usize, col: usize },
    ChainMismatch,
    ChainViolated { index: usize },
    ZeroNotTrailing { index: usize },
}

impl std::fmt::Display for SnfIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SnfIssue::Shape => write!(f, "shape mismatch"),
            SnfIssue::ProductMismatch { row, col } => {
                write!(f, "P·A·Q differs from D at ({row}, {col})")
            }
            SnfIssue::PNotUnimodular => write!(f, "det P is not a unit"),
            SnfIssue::QNotUnimodular => write!(f, "det Q is not a unit"),
            SnfIssue::OffDiagonal { row, col } => {
                write!(f, "D has a nonzero off-diagonal entry at ({row}, {col})")
            }
            SnfIssue::ChainMismatch => {
                write!(f, "certificate chain differs from the diagonal of D")
            }
            SnfIssue::ChainViolated { index } => {
                write!(f, "d_{index} does not divide d_{}", index + 1)
            }
            SnfIssue::ZeroNotTrailing { index } => {
                write!(f, "zero diagonal entry at {index} precedes a nonzero one")
            }
        }
    }
}

/// Re-multiplies exactly, checks unit determinants by cofactor expansion
/// and validates the divisibility chain. Independent of the producer.
pub fn verify_snf_certificate(
    ring: &Ring,
    a: &RingMatrix,
    cert: &SNFCertificate,
) -> std::result::Result<(), SnfIssue> {
    let (m, n) = (a.rows, a.cols);
    if cert.p.rows != m
        || cert.p.cols != m
        || cert.q.rows != n
        || cert.q.cols != n
        || cert.d.rows != m
        || cert.d.cols != n
        || cert.divisibility_chain.len() != m.min(n)
    {
        return Err(SnfIssue::Shape);
    }
    let product = RingMatrix::mul(ring, &RingMatrix::mul(ring, &cert.p, a), &cert.q);
    for i in 0..m {
        for j in 0..n {
            if product.at(i, j) != cert.d.at(i, j) {
                return Err(SnfIssue::ProductMismatch { row: i, col: j });
            }
        }
    }
    if ring.is_unit(&RingMatrix::determinant(ring, &cert.p)).is_none() {
        return Err(SnfIssue::PNotUnimodular);
    }
    if ring.is_unit(&RingMatrix::determinant(ring, &cert.q)).is_none() {
        return Err(SnfIssue::QNotUnimodular);
    }
    let zero = ring.zero();
    for i in 0..m {
        for j in 0..n {
            if i != j && *cert.d.at(i, j) != zero {
                return Err(SnfIssue::OffDiagonal { row: i, col: j });
            }
        }
    }
    let diag: Vec<Element> = (0..m.min(n)).map(|i| cert.d.at(i, i).clone()).collect();
    if diag != cert.divisibility_chain {
        return Err(SnfIssue::ChainMismatch);
    }
    let mut seen_zero = false;
    for (i, v) in diag.iter().enumerate() {
        if *v == zero {
            seen_zero = true;
        } else if seen_zero {
            return Err(SnfIssue::ZeroNotTrailing { index: i });
        }
    }
    for i in 0..diag.len().saturating_sub(1) {
        if diag[i] != zero
            && diag[i + 1] != zero
            && ring.divide(&diag[i + 1], &diag[i]).is_none()
        {
            return Err(SnfIssue::ChainViolated { index: i });
        }
    }
    Ok(())
}
