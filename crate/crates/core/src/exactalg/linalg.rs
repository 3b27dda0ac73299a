use super::field::Field;

/// A dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    /// Rows must have equal length; an empty list gives a 0×0 matrix.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn apply_row<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![f.zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(o, &f.mul(a, self.get(i, j)));
            }
        }
        out
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|a| f.is_zero(a))
    }
}

/// Reduced row echelon form in place; returns the pivot columns among the
/// first `limit` columns.
fn rref_limited<F: Field>(f: &F, m: &mut Matrix<F::Elem>, limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit.min(m.cols) {
        if r == m.rows {
            break;
        }
        let Some(piv) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if piv != r {
            for j in 0..m.cols {
                m.data.swap(piv * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).unwrap();
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let u = m.get(i, c).clone();
            if f.is_zero(&u) {
                continue;
            }
            for j in c..m.cols {
                let v = f.sub(m.get(i, j), &f.mul(&u, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let limit = m.cols;
    rref_limited(f, m, limit)
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, &mut m.clone()).len()
}

fn kernel_from_rref<F: Field>(f: &F, m: &Matrix<F::Elem>, pivots: &[usize], n: usize) -> Vec<Vec<F::Elem>> {
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); n];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, fc));
            }
            v
        })
        .collect()
}

/// Basis of {x : A x = 0}.
pub fn kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    kernel_from_rref(f, &m, &pivots, a.cols)
}

/// Basis of {x : x A = 0}.
pub fn left_kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    kernel(f, &a.transpose())
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = a.rows;
    if n != a.cols {
        return None;
    }
    let mut aug = Matrix::zeros(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n + i, f.one());
    }
    if rref_limited(f, &mut aug, n).len() < n {
        return None;
    }
    let mut out = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug.get(i, n + j).clone());
        }
    }
    Some(out)
}

pub fn determinant<F: Field>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    let n = a.rows;
    assert_eq!(n, a.cols);
    let mut m = a.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
            return f.zero();
        };
        if piv != c {
            for j in 0..n {
                m.data.swap(piv * n + j, c * n + j);
            }
            det = f.neg(&det);
        }
        let d = m.get(c, c).clone();
        det = f.mul(&det, &d);
        let inv = f.inv(&d).unwrap();
        for i in c + 1..n {
            let u = f.mul(m.get(i, c), &inv);
            if f.is_zero(&u) {
                continue;
            }
            for j in c..n {
                let v = f.sub(m.get(i, j), &f.mul(&u, m.get(c, j)));
                m.set(i, j, v);
            }
        }
    }
    det
}

/// Result of solving A x = b for several right-hand sides.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution<E> {
    pub rank: usize,
    /// One particular solution per right-hand side, `None` when inconsistent.
    pub solutions: Vec<Option<Vec<E>>>,
    pub kernel: Vec<Vec<E>>,
}

impl<E> LinearSolution<E> {
    pub fn is_consistent(&self) -> bool {
        self.solutions.iter().all(Option::is_some)
    }
}

/// Gaussian elimination on A x = b for each b in `bs`.
pub fn linear_solve<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    bs: &[Vec<F::Elem>],
) -> LinearSolution<F::Elem> {
    let (r, c) = (a.rows, a.cols);
    let mut aug = Matrix::zeros(f, r, c + bs.len());
    for i in 0..r {
        for j in 0..c {
            aug.set(i, j, a.get(i, j).clone());
        }
        for (k, b) in bs.iter().enumerate() {
            assert_eq!(b.len(), r, "right-hand side has the wrong length");
            aug.set(i, c + k, b[i].clone());
        }
    }
    let pivots = rref_limited(f, &mut aug, c);
    let rank = pivots.len();
    let solutions = (0..bs.len())
        .map(|k| {
            if (rank..r).any(|i| !f.is_zero(aug.get(i, c + k))) {
                return None;
            }
            let mut x = vec![f.zero(); c];
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = aug.get(row, c + k).clone();
            }
            Some(x)
        })
        .collect();
    let kernel = kernel_from_rref(f, &aug, &pivots, c);
    LinearSolution {
        rank,
        solutions,
        kernel,
    }
}

/// A subspace of row vectors held in semi-echelon form: each basis vector has
/// a leading 1 in a column where all earlier basis vectors vanish.
#[derive(Clone, Debug)]
pub struct Subspace<E> {
    dim: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            dim: ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after clearing every pivot column, with the
    /// coefficients used for each basis vector.
    pub fn reduce_with_coords<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> (Vec<E>, Vec<E>) {
        let mut v = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = v[pc].clone();
            if !f.is_zero(&c) {
                for (x, y) in v.iter_mut().zip(b).skip(pc) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
            coords.push(c);
        }
        (v, coords)
    }

    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        self.reduce_with_coords(f, v).0
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    /// Adds `v` if it is outside the span; returns whether it was added.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[E]) -> bool {
        assert_eq!(v.len(), self.dim, "vector has the wrong length");
        let mut r = self.reduce(f, v);
        let Some(pc) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[pc]).unwrap();
        for x in r.iter_mut().skip(pc) {
            *x = f.mul(x, &inv);
        }
        self.basis.push(r);
        self.pivots.push(pc);
        true
    }

    /// Coordinates of `v` in the basis, if it lies in the span.
    pub fn coordinates<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let (r, c) = self.reduce_with_coords(f, v);
        r.iter().all(|x| f.is_zero(x)).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::super::galois::{Fq, GaloisField};
    use super::super::Rationals;
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_mod_three() {
        let f3 = GaloisField::new(3, 1).unwrap();
        let a = Matrix::from_rows(vec![vec![Fq(2), Fq(1)], vec![Fq(1), Fq(2)]]);
        assert_eq!(rank(&f3, &a), 1);
        assert_eq!(determinant(&f3, &a), Fq(0));
        let k = kernel(&f3, &a);
        assert_eq!(k.len(), 1);
        assert_eq!(a.apply_row(&f3, &k[0]), vec![Fq(0), Fq(0)]);
    }

    #[test]
    fn identity_solves_to_rhs() {
        let i = Matrix::identity(&Rationals, 3);
        let b = vec![q(1), q(-2), q(5)];
        let s = linear_solve(&Rationals, &i, std::slice::from_ref(&b));
        assert_eq!(s.rank, 3);
        assert_eq!(s.solutions, vec![Some(b)]);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn inconsistent_is_flagged() {
        let a = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(2), q(2)]]);
        let s = linear_solve(&Rationals, &a, &[vec![q(1), q(3)], vec![q(1), q(2)]]);
        assert_eq!(s.rank, 1);
        assert!(s.solutions[0].is_none());
        assert_eq!(s.solutions[1], Some(vec![q(1), q(0)]));
        assert_eq!(s.kernel, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn inverse_and_determinant() {
        let a = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(2)]]);
        assert_eq!(determinant(&Rationals, &a), q(3));
        let inv = inverse(&Rationals, &a).unwrap();
        assert_eq!(a.mul(&Rationals, &inv), Matrix::identity(&Rationals, 2));
        let sing = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(inverse(&Rationals, &sing).is_none());
    }

    #[test]
    fn subspace_membership_and_coordinates() {
        let f5 = GaloisField::new(5, 1).unwrap();
        let mut s = Subspace::new(3);
        assert!(s.insert(&f5, &[Fq(0), Fq(2), Fq(1)]));
        assert!(s.insert(&f5, &[Fq(1), Fq(1), Fq(0)]));
        assert!(!s.insert(&f5, &[Fq(1), Fq(3), Fq(1)]));
        assert_eq!(s.dim(), 2);
        let v = [Fq(2), Fq(1), Fq(2)];
        let c = s.coordinates(&f5, &v).unwrap();
        let mut back = vec![Fq(0); 3];
        for (ci, b) in c.iter().zip(s.basis()) {
            for (x, y) in back.iter_mut().zip(b) {
                *x = f5.add(x, &f5.mul(ci, y));
            }
        }
        assert_eq!(back, v);
        assert!(s.coordinates(&f5, &[Fq(0), Fq(0), Fq(1)]).is_none());
    }
}
