//! Dense linear algebra over a prime field `F_p`.

use std::fmt;

/// Trial division; the characteristics used here are tiny.
pub fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

#[inline]
fn add(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

#[inline]
fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn inv(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "zero has no inverse");
    // Fermat: a^(p-2)
    let mut result = 1u32;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(result, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    result
}

/// `y += c * x` in place.
pub fn axpy(y: &mut [u32], c: u32, x: &[u32], p: u32) {
    if c == 0 {
        return;
    }
    for (a, &b) in y.iter_mut().zip(x) {
        if b != 0 {
            *a = add(*a, mul(c, b, p), p);
        }
    }
}

pub fn scale(x: &mut [u32], c: u32, p: u32) {
    for a in x.iter_mut() {
        *a = mul(*a, c, p);
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Self {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, p: u32, entries: &[u32]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            p,
            data: entries.iter().map(|&x| x % p).collect(),
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, p: u32, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, columns.len(), p);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Row-major entries.
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let p = self.p;
        let mut out = Self::zeros(self.rows, rhs.cols, p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let (start, end) = (i * rhs.cols, (i + 1) * rhs.cols);
                axpy(&mut out.data[start..end], a, rhs.row(k), p);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![0; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (j, &x) in v.iter().enumerate() {
                acc += self.get(i, j) as u64 * x as u64;
            }
            *o = (acc % self.p as u64) as u32;
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        axpy(&mut out.data, 1, &rhs.data, self.p);
        out
    }

    /// `self + c * rhs`.
    pub fn add_scaled(&self, c: u32, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        axpy(&mut out.data, c % self.p, &rhs.data, self.p);
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.rows, self.p);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n, self.p);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let mut out = Self::zeros(n, n, self.p);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let s = inv(m.get(r, c), p);
            scale(&mut m.data[r * m.cols..(r + 1) * m.cols], s, p);
            let pivot_row = m.row(r).to_vec();
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if f != 0 {
                        let cols = m.cols;
                        axpy(
                            &mut m.data[i * cols..(i + 1) * cols],
                            neg(f, p),
                            &pivot_row,
                            p,
                        );
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

    /// Basis of `{ x : self * x = 0 }`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = neg(r.get(row, f), p);
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1, self.p);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.rows).map(|i| self.row(i)).collect();
        write!(f, "F{}{:?}", self.p, rows)
    }
}

/// A subspace of `F_p^d` kept as a reduced row echelon basis, so equal
/// subspaces have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    p: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize, p: u32) -> Self {
        Self {
            ambient,
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize, p: u32) -> Self {
        let mut s = Self::zero(ambient, p);
        for i in 0..ambient {
            let mut e = vec![0; ambient];
            e[i] = 1;
            s.insert(e);
        }
        s
    }

    pub fn span<I: IntoIterator<Item = Vec<u32>>>(ambient: usize, p: u32, vectors: I) -> Self {
        let mut s = Self::zero(ambient, p);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the echelon basis; zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                axpy(&mut r, neg(c, self.p), row, self.p);
            }
        }
        r
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let mut r = self.reduce(&v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(r[pc], p);
        scale(&mut r, s, p);
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                axpy(row, neg(c, p), &r, p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, r);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve sum a_i u_i = sum b_j v_j.
        let p = self.p;
        let mut cols: Vec<Vec<u32>> = self.rows.clone();
        cols.extend(
            other
                .rows
                .iter()
                .map(|v| v.iter().map(|&x| neg(x, p)).collect()),
        );
        let m = FpMatrix::from_columns(self.ambient, p, &cols);
        let k = self.rows.len();
        Subspace::span(
            self.ambient,
            p,
            m.nullspace().into_iter().map(|coeffs| {
                let mut v = vec![0; self.ambient];
                for (c, u) in coeffs[..k].iter().zip(&self.rows) {
                    axpy(&mut v, *c, u, p);
                }
                v
            }),
        )
    }

    /// Coordinates of a member of the subspace in the echelon basis.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of {}; {:?})",
            self.dim(),
            self.ambient,
            self.rows
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..20).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7] {
            for a in 1..p {
                assert_eq!(mul(a, inv(a, p), p), 1);
            }
        }
    }

    #[test]
    fn nullspace_and_solve() {
        let m = FpMatrix::from_rows(2, 3, 5, &[1, 2, 3, 2, 4, 2]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|&x| x == 0));
        let x = m.solve(&[1, 0]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 0]);
        let singular = FpMatrix::from_rows(2, 2, 5, &[1, 1, 1, 1]);
        assert!(singular.solve(&[1, 0]).is_none());
        assert!(singular.inverse().is_none());
        let g = FpMatrix::from_rows(2, 2, 5, &[2, 1, 1, 1]);
        assert!(g.mul(&g.inverse().unwrap()).eq(&FpMatrix::identity(2, 5)));
    }

    #[test]
    fn subspace_ops() {
        let a = Subspace::span(3, 5, [vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::span(3, 5, [vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(a.intersection(&b), Subspace::span(3, 5, [vec![0, 2, 0]]));
        assert_eq!(a.sum(&b), Subspace::full(3, 5));
        assert!(a.sum(&b).contains_subspace(&a));
        assert!(!a.contains_subspace(&b));
        assert_eq!(a.coordinates(&[3, 4, 0]), Some(vec![3, 4]));
        assert_eq!(a.coordinates(&[0, 0, 1]), None);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(0u32..5, 12)) {
            let m = FpMatrix::from_rows(3, 4, 5, &entries);
            prop_assert_eq!(m.rank() + m.nullspace().len(), 4);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn span_is_order_independent(vs in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..6)) {
            let a = Subspace::span(4, 3, vs.clone());
            let b = Subspace::span(4, 3, vs.into_iter().rev());
            prop_assert_eq!(a, b);
        }
    }
}
