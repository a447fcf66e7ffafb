//! Integer matrix diagonalization with full transform tracking.
//!
//! Backs the endomorphism solver: kernels of integer matrices, lattice
//! bases, exact linear solves and quotient-lattice invariant factors. This
//! is internal plumbing, separate from the certified ring-level reduction
//! in `matrix`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZMat {
    pub rows: usize,
    pub cols: usize,
    pub e: Vec<BigInt>,
}

impl ZMat {
    pub fn zero(rows: usize, cols: usize) -> ZMat {
        ZMat { rows, cols, e: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> ZMat {
        let mut m = ZMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> ZMat {
        let mut m = ZMat::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.e[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.e[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn mul(a: &ZMat, b: &ZMat) -> ZMat {
        assert_eq!(a.cols, b.rows);
        let mut out = ZMat::zero(a.rows, b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = BigInt::zero();
                for k in 0..a.cols {
                    acc += a.at(i, k) * b.at(k, j);
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }
}

/// P·A·Q = D with all four transforms tracked.
#[derive(Debug, Clone)]
pub struct ZSnf {
    pub d: ZMat,
    pub p: ZMat,
    pub pinv: ZMat,
    pub q: ZMat,
    pub qinv: ZMat,
    pub rank: usize,
}

impl ZSnf {
    pub fn diag(&self, i: usize) -> &BigInt {
        self.d.at(i, i)
    }
}

struct State {
    a: ZMat,
    p: ZMat,
    pinv: ZMat,
    q: ZMat,
    qinv: ZMat,
}

impl State {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for c in 0..self.a.cols {
            self.a.e.swap(i * self.a.cols + c, k * self.a.cols + c);
        }
        for c in 0..self.p.cols {
            self.p.e.swap(i * self.p.cols + c, k * self.p.cols + c);
        }
        for r in 0..self.pinv.rows {
            self.pinv.e.swap(r * self.pinv.cols + i, r * self.pinv.cols + k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for r in 0..self.a.rows {
            self.a.e.swap(r * self.a.cols + j, r * self.a.cols + k);
        }
        for r in 0..self.q.rows {
            self.q.e.swap(r * self.q.cols + j, r * self.q.cols + k);
        }
        for c in 0..self.qinv.cols {
            self.qinv.e.swap(j * self.qinv.cols + c, k * self.qinv.cols + c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.a.cols {
            let v = -self.a.at(i, c).clone();
            *self.a.at_mut(i, c) = v;
        }
        for c in 0..self.p.cols {
            let v = -self.p.at(i, c).clone();
            *self.p.at_mut(i, c) = v;
        }
        for r in 0..self.pinv.rows {
            let v = -self.pinv.at(r, i).clone();
            *self.pinv.at_mut(r, i) = v;
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, qv: &BigInt, k: usize) {
        if qv.is_zero() {
            return;
        }
        for c in 0..self.a.cols {
            let v = self.a.at(i, c) - qv * self.a.at(k, c);
            *self.a.at_mut(i, c) = v;
        }
        for c in 0..self.p.cols {
            let v = self.p.at(i, c) - qv * self.p.at(k, c);
            *self.p.at_mut(i, c) = v;
        }
        // pinv := pinv * (I + q·e_{ik}): col_k += q * col_i
        for r in 0..self.pinv.rows {
            let v = self.pinv.at(r, k) + qv * self.pinv.at(r, i);
            *self.pinv.at_mut(r, k) = v;
        }
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, qv: &BigInt, k: usize) {
        if qv.is_zero() {
            return;
        }
        for r in 0..self.a.rows {
            let v = self.a.at(r, j) - qv * self.a.at(r, k);
            *self.a.at_mut(r, j) = v;
        }
        for r in 0..self.q.rows {
            let v = self.q.at(r, j) - qv * self.q.at(r, k);
            *self.q.at_mut(r, j) = v;
        }
        // qinv := (I + q·e_{kj}) * qinv: row_k += q * row_j
        for c in 0..self.qinv.cols {
            let v = self.qinv.at(k, c) + qv * self.qinv.at(j, c);
            *self.qinv.at_mut(k, c) = v;
        }
    }
}

pub fn z_snf(input: &ZMat) -> ZSnf {
    let (m, n) = (input.rows, input.cols);
    let mut s = State {
        a: input.clone(),
        p: ZMat::identity(m),
        pinv: ZMat::identity(m),
        q: ZMat::identity(n),
        qinv: ZMat::identity(n),
    };
    let r = m.min(n);
    for k in 0..r {
        loop {
            // Pivot: least |entry| in the submatrix.
            let mut best: Option<(usize, usize, BigInt)> = None;
            for i in k..m {
                for j in k..n {
                    let v = s.a.at(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    let mag = v.abs();
                    match &best {
                        Some((_, _, b)) if *b <= mag => {}
                        _ => best = Some((i, j, mag)),
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            s.swap_rows(k, pi);
            s.swap_cols(k, pj);
            if s.a.at(k, k).is_negative() {
                s.negate_row(k);
            }
            let pivot = s.a.at(k, k).clone();
            let mut dirty = false;
            for i in k + 1..m {
                if !s.a.at(i, k).is_zero() {
                    let qv = s.a.at(i, k).div_floor(&pivot);
                    s.row_sub(i, &qv, k);
                    if !s.a.at(i, k).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in k + 1..n {
                if !s.a.at(k, j).is_zero() {
                    let qv = s.a.at(k, j).div_floor(&pivot);
                    s.col_sub(j, &qv, k);
                    if !s.a.at(k, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                let col_clear = (k + 1..m).all(|i| s.a.at(i, k).is_zero());
                let row_clear = (k + 1..n).all(|j| s.a.at(k, j).is_zero());
                if col_clear && row_clear {
                    break;
                }
            }
            // Remainders are strictly smaller than the pivot; repeat.
        }
    }
    // Order zeros behind nonzeros.
    loop {
        let mut moved = false;
        for i in 0..r.saturating_sub(1) {
            if s.a.at(i, i).is_zero() && !s.a.at(i + 1, i + 1).is_zero() {
                s.swap_rows(i, i + 1);
                s.swap_cols(i, i + 1);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    // Divisibility chain by folding.
    loop {
        let mut fixed_any = false;
        for i in 0..r.saturating_sub(1) {
            let a = s.a.at(i, i).clone();
            let b = s.a.at(i + 1, i + 1).clone();
            if a.is_zero() || b.is_zero() || b.mod_floor(&a).is_zero() {
                continue;
            }
            // col_i += col_{i+1}, then clear the 2x2 block with Euclid.
            let minus_one = -BigInt::one();
            s.col_sub(i, &minus_one, i + 1);
            loop {
                let x = s.a.at(i, i).clone();
                let y = s.a.at(i + 1, i).clone();
                if y.is_zero() {
                    break;
                }
                if x.is_zero() {
                    s.swap_rows(i, i + 1);
                    continue;
                }
                let qv = y.div_floor(&x);
                s.row_sub(i + 1, &qv, i);
                if !s.a.at(i + 1, i).is_zero() {
                    s.swap_rows(i, i + 1);
                }
            }
            if s.a.at(i, i).is_negative() {
                s.negate_row(i);
            }
            // Clear the residue in row i at column i+1.
            let d = s.a.at(i, i).clone();
            let resid = s.a.at(i, i + 1).clone();
            if !resid.is_zero() {
                let qv = resid.div_floor(&d);
                s.col_sub(i + 1, &qv, i);
            }
            if s.a.at(i + 1, i + 1).is_negative() {
                let ip1 = i + 1;
                s.negate_row(ip1);
            }
            fixed_any = true;
        }
        if !fixed_any {
            break;
        }
    }
    for i in 0..r {
        if s.a.at(i, i).is_negative() {
            s.negate_row(i);
        }
    }
    let rank = (0..r).take_while(|&i| !s.a.at(i, i).is_zero()).count();
    ZSnf { d: s.a, p: s.p, pinv: s.pinv, q: s.q, qinv: s.qinv, rank }
}

/// Basis of the kernel lattice {x : A·x = 0}: one column per free
/// coordinate of the diagonal form.
pub fn kernel_basis(a: &ZMat) -> Vec<Vec<BigInt>> {
    let snf = z_snf(a);
    let mut out = Vec::new();
    for j in 0..a.cols {
        let diag_zero = j >= a.rows.min(a.cols) || snf.d.at(j, j).is_zero();
        if diag_zero {
            out.push(snf.q.column(j));
        }
    }
    out
}

/// Basis (as columns of a square full-rank matrix) of the lattice spanned
/// by the given generator columns. None if the span is not full rank.
pub fn lattice_basis(rows: usize, gens: &[Vec<BigInt>]) -> Option<ZMat> {
    let g = ZMat::from_columns(rows, gens);
    let snf = z_snf(&g);
    if snf.rank < rows {
        return None;
    }
    let mut cols = Vec::with_capacity(rows);
    for i in 0..rows {
        let di = snf.diag(i);
        let col: Vec<BigInt> =
            (0..rows).map(|r| snf.pinv.at(r, i) * di).collect();
        cols.push(col);
    }
    Some(ZMat::from_columns(rows, &cols))
}

/// Exact solution of A·x = b, if one exists.
pub fn solve_exact(a: &ZMat, snf: &ZSnf, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let pb = snf.p.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for i in 0..a.rows {
        if i < a.rows.min(a.cols) && !snf.d.at(i, i).is_zero() {
            let (q, r) = pb[i].div_rem(snf.d.at(i, i));
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !pb[i].is_zero() {
            return None;
        }
    }
    Some(snf.q.mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, vals: &[i64]) -> ZMat {
        ZMat {
            rows,
            cols,
            e: vals.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    fn check_transforms(a: &ZMat) {
        let snf = z_snf(a);
        assert_eq!(ZMat::mul(&snf.p, &snf.pinv), ZMat::identity(a.rows));
        assert_eq!(ZMat::mul(&snf.q, &snf.qinv), ZMat::identity(a.cols));
        let paq = ZMat::mul(&ZMat::mul(&snf.p, a), &snf.q);
        assert_eq!(paq, snf.d);
        // diagonal, chain, zeros trailing
        for i in 0..snf.d.rows {
            for j in 0..snf.d.cols {
                if i != j {
                    assert!(snf.d.at(i, j).is_zero());
                }
            }
        }
        let r = a.rows.min(a.cols);
        for i in 0..r.saturating_sub(1) {
            let x = snf.d.at(i, i);
            let y = snf.d.at(i + 1, i + 1);
            if !x.is_zero() && !y.is_zero() {
                assert!(y.mod_floor(x).is_zero(), "chain broken at {i}");
            }
            if x.is_zero() {
                assert!(y.is_zero(), "zero not trailing at {i}");
            }
        }
    }

    #[test]
    fn snf_examples() {
        check_transforms(&mat(2, 2, &[2, 4, 6, 8]));
        let snf = z_snf(&mat(2, 2, &[2, 4, 6, 8]));
        assert_eq!(*snf.diag(0), BigInt::from(2));
        assert_eq!(*snf.diag(1), BigInt::from(4));

        check_transforms(&mat(2, 2, &[6, 0, 0, 4]));
        let snf = z_snf(&mat(2, 2, &[6, 0, 0, 4]));
        assert_eq!(*snf.diag(0), BigInt::from(2));
        assert_eq!(*snf.diag(1), BigInt::from(12));

        check_transforms(&mat(3, 2, &[1, 0, 0, 0, 0, 0]));
        check_transforms(&mat(2, 3, &[0, 0, 0, 0, 0, 0]));
        check_transforms(&mat(3, 3, &[2, 3, 5, 7, 11, 13, 17, 19, 23]));
    }

    #[test]
    fn kernel_of_projection() {
        // A = [1 0 0; 0 2 0]: kernel over Z is spanned by e3.
        let a = mat(2, 3, &[1, 0, 0, 0, 2, 0]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(a.mul_vec(&k[0]), vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn lattice_and_solve() {
        // Lattice spanned by (2,0), (0,3), (1,1) is all of Z^2? gcd dets:
        // det[(2,0),(1,1)] = 2, det[(0,3),(1,1)] = -3 → full lattice Z^2.
        let gens = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(3)],
            vec![BigInt::from(1), BigInt::from(1)],
        ];
        let basis = lattice_basis(2, &gens).unwrap();
        // (1, 0) must be expressible
        let snf = z_snf(&basis);
        let x = solve_exact(&basis, &snf, &[BigInt::from(1), BigInt::from(0)]);
        assert!(x.is_some());

        let a = mat(2, 2, &[2, 0, 0, 3]);
        let snf = z_snf(&a);
        assert_eq!(
            solve_exact(&a, &snf, &[BigInt::from(4), BigInt::from(9)]),
            Some(vec![BigInt::from(2), BigInt::from(3)])
        );
        assert_eq!(solve_exact(&a, &snf, &[BigInt::from(1), BigInt::from(0)]), None);
    }
}
