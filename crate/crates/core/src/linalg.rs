//! Dense exact linear algebra over F_q.
//!
//! Matrices are row-major; columns act on coordinate vectors on the left
//! (`M.apply(v)` is M·v). Subspaces are kept in reduced row echelon form with
//! first-nonzero pivoting, so every operation is deterministic.

use crate::arith::Fq;
use crate::rng::SplitMix64;
use std::fmt;
use std::ops::{Add, Mul, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<const P: u64> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fq<P>>,
}

impl<const P: u64> Matrix<P> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Fq::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Fq::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fq<P>>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fq<P>) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn scalar(n: usize, c: Fq<P>) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Fq<P>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: Fq<P>) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn apply(&self, v: &[Fq<P>]) -> Vec<Fq<P>> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Fq::ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = Fq::ZERO;
            for j in 0..self.cols {
                acc = acc + self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut sel = None;
            for i in r..m.rows {
                if !m[(i, c)].is_zero() {
                    sel = Some(i);
                    break;
                }
            }
            let Some(i) = sel else { continue };
            m.swap_rows(r, i);
            let inv = m[(r, c)].inv().unwrap();
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)] * inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)];
                    for j in c..m.cols {
                        let s = m[(r, j)] * f;
                        m[(i, j)] = m[(i, j)] - s;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : Mv = 0}.
    pub fn kernel(&self) -> Vec<Vec<Fq<P>>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Fq::ZERO; self.cols];
            v[free] = Fq::ONE;
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(pi, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, n + i)] = Fq::ONE;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, n + j)]))
    }

    /// Solve Mx = b; None if inconsistent. Returns the particular solution
    /// with free coordinates zero.
    pub fn solve(&self, b: &[Fq<P>]) -> Option<Vec<Fq<P>>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fq::ZERO; self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(pi, self.cols)];
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)]
            } else {
                other[(i - self.rows, j)]
            }
        })
    }

    /// Block-diagonal of two square matrices.
    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self[(i, j)]
                } else if i >= self.rows && j >= self.cols {
                    other[(i - self.rows, j - self.cols)]
                } else {
                    Fq::ZERO
                }
            },
        )
    }

    pub fn random(rows: usize, cols: usize, rng: &mut SplitMix64) -> Self {
        Self::from_fn(rows, cols, |_, _| Fq::random(rng))
    }
}

impl<const P: u64> std::ops::Index<(usize, usize)> for Matrix<P> {
    type Output = Fq<P>;
    fn index(&self, (i, j): (usize, usize)) -> &Fq<P> {
        &self.data[i * self.cols + j]
    }
}

impl<const P: u64> std::ops::IndexMut<(usize, usize)> for Matrix<P> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fq<P> {
        &mut self.data[i * self.cols + j]
    }
}

impl<const P: u64> Mul for &Matrix<P> {
    type Output = Matrix<P>;
    fn mul(self, o: &Matrix<P>) -> Matrix<P> {
        assert_eq!(self.cols, o.rows);
        let mut out = Matrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let s = a * o[(k, j)];
                    out[(i, j)] = out[(i, j)] + s;
                }
            }
        }
        out
    }
}

impl<const P: u64> Add for &Matrix<P> {
    type Output = Matrix<P>;
    fn add(self, o: &Matrix<P>) -> Matrix<P> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl<const P: u64> Sub for &Matrix<P> {
    type Output = Matrix<P>;
    fn sub(self, o: &Matrix<P>) -> Matrix<P> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl<const P: u64> fmt::Debug for Matrix<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{:>5} ", format!("{:?}", self[(i, j)]))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A subspace of F_q^n held as reduced row echelon basis rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<const P: u64> {
    pub ambient: usize,
    rows: Vec<Vec<Fq<P>>>,
    pivots: Vec<usize>,
}

impl<const P: u64> Subspace<P> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..ambient {
            let mut v = vec![Fq::ZERO; ambient];
            v[i] = Fq::ONE;
            s.insert(v);
        }
        s
    }

    pub fn from_vectors(ambient: usize, vs: impl IntoIterator<Item = Vec<Fq<P>>>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Fq<P>>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce v against the basis; nonzero remainder means v is new.
    pub fn reduce(&self, mut v: Vec<Fq<P>>) -> Vec<Fq<P>> {
        assert_eq!(v.len(), self.ambient);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if !c.is_zero() {
                for j in 0..self.ambient {
                    let s = row[j] * c;
                    v[j] = v[j] - s;
                }
            }
        }
        v
    }

    /// Insert v; returns true if the dimension grew.
    pub fn insert(&mut self, v: Vec<Fq<P>>) -> bool {
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inv().unwrap();
        for x in v.iter_mut() {
            *x = *x * inv;
        }
        // back-substitute into existing rows
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if !c.is_zero() {
                for j in 0..v.len() {
                    let s = v[j] * c;
                    row[j] = row[j] - s;
                }
            }
        }
        let pos = self.pivots.partition_point(|&x| x < pc);
        self.pivots.insert(pos, pc);
        self.rows.insert(pos, v);
        true
    }

    pub fn contains(&self, v: &[Fq<P>]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    pub fn contains_space(&self, other: &Subspace<P>) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<P>) -> Subspace<P> {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn intersect(&self, other: &Subspace<P>) -> Subspace<P> {
        // Kernel of the stacked quotient maps: v in both iff v reduces to 0
        // against each basis. Solve via kernel of [A; B]-complement trick:
        // v = Σ x_i a_i with v ∈ other ⇔ coefficient solve.
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let a = Matrix::from_rows(self.rows.clone()).transpose(); // ambient × dimA
        let b = Matrix::from_rows(other.rows.clone()).transpose();
        let stacked = a.hstack(&b); // v = A x = B y → A x − B y = 0
        let neg_b = b.scale(-Fq::ONE);
        let sys = a.hstack(&neg_b);
        let _ = stacked;
        let mut out = Subspace::zero(self.ambient);
        for k in sys.kernel() {
            let x = &k[..self.dim()];
            let mut v = vec![Fq::ZERO; self.ambient];
            for (i, &c) in x.iter().enumerate() {
                for j in 0..self.ambient {
                    let s = self.rows[i][j] * c;
                    v[j] = v[j] + s;
                }
            }
            out.insert(v);
        }
        out
    }

    /// Image of this subspace under M.
    pub fn image(&self, m: &Matrix<P>) -> Subspace<P> {
        let mut out = Subspace::zero(m.rows);
        for v in &self.rows {
            out.insert(m.apply(v));
        }
        out
    }

    /// {v : Mv ∈ target}, where M maps ambient(self-compatible) spaces.
    pub fn preimage(m: &Matrix<P>, target: &Subspace<P>) -> Subspace<P> {
        assert_eq!(m.rows, target.ambient);
        // v ↦ (Mv reduced against target) must vanish: rows of the quotient map.
        let mut constraint_rows = Vec::new();
        // Build quotient projection: coordinates on non-pivot positions after
        // reduction. Reduction is linear, so apply to each basis vector of the
        // domain.
        let n = m.cols;
        let mut reduced_cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Fq::ZERO; n];
            e[j] = Fq::ONE;
            reduced_cols.push(target.reduce(m.apply(&e)));
        }
        for i in 0..m.rows {
            let row: Vec<Fq<P>> = (0..n).map(|j| reduced_cols[j][i]).collect();
            if row.iter().any(|x| !x.is_zero()) {
                constraint_rows.push(row);
            }
        }
        if constraint_rows.is_empty() {
            return Subspace::full(n);
        }
        let sys = Matrix::from_rows(constraint_rows);
        Subspace::from_vectors(n, sys.kernel())
    }

    /// Kernel of M as a subspace of its column space.
    pub fn kernel_of(m: &Matrix<P>) -> Subspace<P> {
        Subspace::from_vectors(m.cols, m.kernel())
    }

    /// Coordinates of v in this basis; None if v is outside.
    pub fn coordinates(&self, v: &[Fq<P>]) -> Option<Vec<Fq<P>>> {
        let mut v = v.to_vec();
        let mut coords = vec![Fq::ZERO; self.dim()];
        for (i, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[pc];
            if !c.is_zero() {
                coords[i] = c;
                for j in 0..self.ambient {
                    let s = row[j] * c;
                    v[j] = v[j] - s;
                }
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(coords)
        } else {
            None
        }
    }

    /// Restrict an ambient endomorphism to this (M-stable) subspace: the
    /// matrix of M in the subspace basis. None if not stable.
    pub fn restrict(&self, m: &Matrix<P>) -> Option<Matrix<P>> {
        let d = self.dim();
        let mut out = Matrix::zero(d, d);
        for (j, b) in self.rows.iter().enumerate() {
            let coords = self.coordinates(&m.apply(b))?;
            for i in 0..d {
                out[(i, j)] = coords[i];
            }
        }
        Some(out)
    }

    /// Standard-basis complement positions (non-pivot coordinates), giving a
    /// section of the quotient ambient/self.
    pub fn complement_positions(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Matrix of the induced endomorphism on ambient/self. Requires M·self ⊆ self.
    pub fn quotient_action(&self, m: &Matrix<P>) -> Matrix<P> {
        let comp = self.complement_positions();
        let k = comp.len();
        let mut out = Matrix::zero(k, k);
        for (j, &cj) in comp.iter().enumerate() {
            let mut e = vec![Fq::ZERO; self.ambient];
            e[cj] = Fq::ONE;
            let red = self.reduce(m.apply(&e));
            for (i, &ci) in comp.iter().enumerate() {
                out[(i, j)] = red[ci];
            }
        }
        out
    }

    /// Coordinates of (v mod self) on the complement positions.
    pub fn quotient_coords(&self, v: &[Fq<P>]) -> Vec<Fq<P>> {
        let red = self.reduce(v.to_vec());
        self.complement_positions()
            .iter()
            .map(|&i| red[i])
            .collect()
    }
}

impl<const P: u64> fmt::Debug for Subspace<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Subspace dim {} of F_q^{}", self.dim(), self.ambient)?;
        for r in &self.rows {
            writeln!(f, "  {:?}", r)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Matrix<5>;

    fn f(a: u64) -> Fq<5> {
        Fq::from_base(a)
    }

    #[test]
    fn rref_and_rank() {
        let m = M::from_rows(vec![
            vec![f(1), f(2), f(3)],
            vec![f(2), f(4), f(2)],
            vec![f(0), f(0), f(0)],
        ]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let mut rng = SplitMix64::new(8);
        for _ in 0..20 {
            let m = M::random(4, 4, &mut rng);
            if let Some(inv) = m.inverse() {
                assert_eq!(&m * &inv, M::identity(4));
                assert_eq!(&inv * &m, M::identity(4));
            }
        }
    }

    #[test]
    fn solve_consistent() {
        let m = M::from_rows(vec![vec![f(1), f(1)], vec![f(0), f(2)]]);
        let b = vec![f(3), f(4)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::from_vectors(3, vec![vec![f(1), f(0), f(1)]]);
        let b = Subspace::from_vectors(3, vec![vec![f(1), f(0), f(1)], vec![f(0), f(1), f(0)]]);
        assert!(b.contains_space(&a));
        assert_eq!(a.sum(&b).dim(), 2);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[f(2), f(0), f(2)]));
    }

    #[test]
    fn preimage_and_quotient() {
        // M = projection onto first coordinate in F^2
        let m = M::from_rows(vec![vec![f(1), f(0)], vec![f(0), f(0)]]);
        let target = Subspace::zero(2);
        let pre = Subspace::preimage(&m, &target);
        assert_eq!(pre.dim(), 1);
        assert!(pre.contains(&[f(0), f(1)]));

        let stable = Subspace::from_vectors(2, vec![vec![f(1), f(0)]]);
        let q = stable.quotient_action(&m);
        assert_eq!(q.rows, 1);
        assert!(q[(0, 0)].is_zero());
    }

    #[test]
    fn restrict_stable() {
        let m = M::from_rows(vec![vec![f(2), f(0)], vec![f(0), f(3)]]);
        let s = Subspace::from_vectors(2, vec![vec![f(0), f(1)]]);
        let r = s.restrict(&m).unwrap();
        assert_eq!(r[(0, 0)], f(3));
    }
}
