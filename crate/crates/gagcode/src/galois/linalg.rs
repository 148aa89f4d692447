//! Dense linear algebra over a prime field GF(p).

pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod a prime `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod_u64(a, p - 2, p)
}

/// Row-major dense matrix with entries in GF(p).
#[derive(Debug, Clone)]
pub(crate) struct GfpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    d: Vec<u64>,
}

impl GfpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        GfpMat { p, rows, cols, d: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(p: u64, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.d[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.d[r * self.cols + c] = v % self.p;
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(v.len(), self.cols);
        let mut out = vec![0u64; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u128;
            let row = &self.d[r * self.cols..(r + 1) * self.cols];
            for (a, b) in row.iter().zip(v) {
                acc += (*a as u128) * (*b as u128);
            }
            out[r] = (acc % self.p as u128) as u64;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.d.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u64) {
        for c in 0..self.cols {
            let v = self.get(r, c) * s % self.p;
            self.d[r * self.cols + c] = v;
        }
    }

    /// `row[dst] -= s * row[src]`
    fn add_scaled_row(&mut self, dst: usize, src: usize, s: u64) {
        if s == 0 {
            return;
        }
        for c in 0..self.cols {
            let v = (self.get(dst, c) + (self.p - s % self.p) * self.get(src, c)) % self.p;
            self.d[dst * self.cols + c] = v;
        }
    }
}

/// Reduced row echelon form of a matrix `A`, kept together with the
/// transformation `E` such that `rref = E * A`, for repeated exact solves of
/// `A x = b` and kernel extraction.
#[derive(Debug, Clone)]
pub(crate) struct RrefSolver {
    rref: GfpMat,
    trans: GfpMat,
    pivots: Vec<usize>,
    pub rank: usize,
}

impl RrefSolver {
    pub fn new(mut a: GfpMat) -> Self {
        let p = a.p;
        let mut e = GfpMat::identity(p, a.rows);
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..a.cols {
            let Some(pivot) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
                continue;
            };
            a.swap_rows(row, pivot);
            e.swap_rows(row, pivot);
            let s = inv_mod(a.get(row, col), p);
            a.scale_row(row, s);
            e.scale_row(row, s);
            for r in 0..a.rows {
                if r != row {
                    let f = a.get(r, col);
                    a.add_scaled_row(r, row, f);
                    e.add_scaled_row(r, row, f);
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.rows {
                break;
            }
        }
        RrefSolver { rref: a, trans: e, rank: pivots.len(), pivots }
    }

    /// One solution of `A x = rhs` (free coordinates set to zero), or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, rhs: &[u64]) -> Option<Vec<u64>> {
        let y = self.trans.mul_vec(rhs);
        if y[self.rank..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0u64; self.rref.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = y[r];
        }
        Some(x)
    }

    /// A basis of the kernel of `A`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.rref.p;
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.rref.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        for free in 0..self.rref.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; self.rref.cols];
            v[free] = 1;
            for (r, &c) in self.pivots.iter().enumerate() {
                let coeff = self.rref.get(r, free);
                v[c] = (p - coeff) % p;
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_kernel_gf7() {
        // x + 2y + 3z = 1 ; 2x + 4y + z = 2  over GF(7)
        let mut a = GfpMat::zeros(7, 2, 3);
        a.set(0, 0, 1);
        a.set(0, 1, 2);
        a.set(0, 2, 3);
        a.set(1, 0, 2);
        a.set(1, 1, 4);
        a.set(1, 2, 1);
        let orig = a.clone();
        let s = RrefSolver::new(a);
        assert_eq!(s.rank, 2);
        let x = s.solve(&[1, 2]).unwrap();
        assert_eq!(orig.mul_vec(&x), vec![1, 2]);
        let k = s.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(orig.mul_vec(&k[0]), vec![0, 0]);
        assert!(k[0].iter().any(|&v| v != 0));
    }

    #[test]
    fn inconsistent_system() {
        let mut a = GfpMat::zeros(5, 2, 2);
        a.set(0, 0, 1);
        a.set(0, 1, 1);
        a.set(1, 0, 2);
        a.set(1, 1, 2);
        let s = RrefSolver::new(a);
        assert_eq!(s.rank, 1);
        assert!(s.solve(&[1, 3]).is_none());
        assert!(s.solve(&[1, 2]).is_some());
    }
}
