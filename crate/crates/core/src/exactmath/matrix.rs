use super::field::{Field, Rational};
use super::poly::{MultiPoly, Vars};
use crate::error::{domain, Result};

/// Dense matrix of polynomials sharing one variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F: Field = Rational> {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly<F>>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return domain(format!("bad matrix shape {rows}x{cols} with {} entries", entries.len()));
        }
        let mut vars = entries[0].vars().clone();
        for e in &entries[1..] {
            for v in e.vars().iter() {
                if !vars.contains(v) {
                    let mut vv = vars.to_vec();
                    vv.push(v.clone());
                    vars = vv.into();
                }
            }
        }
        let entries = entries.iter().map(|e| e.with_vars(&vars).unwrap()).collect();
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPoly<F>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries).expect("from_fn shape")
    }

    /// Symmetric matrix from its upper triangle, listed row by row.
    pub fn symmetric_from_upper(n: usize, upper: Vec<MultiPoly<F>>) -> Result<Self> {
        if upper.len() != n * (n + 1) / 2 {
            return domain("wrong number of upper-triangular entries");
        }
        let mut idx = vec![vec![0; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                idx[i][j] = k;
                idx[j][i] = k;
                k += 1;
            }
        }
        Ok(Self::from_fn(n, n, |i, j| upper[idx[i][j]].clone()))
    }

    pub fn identity(n: usize, vars: Vars) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                MultiPoly::one_in(vars.clone())
            } else {
                MultiPoly::zero_in(vars.clone())
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &Vars {
        self.entries[0].vars()
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[MultiPoly<F>] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map(&self, f: impl Fn(&MultiPoly<F>) -> MultiPoly<F>) -> Self {
        Self::new(self.rows, self.cols, self.entries.iter().map(f).collect()).unwrap()
    }

    pub fn with_vars(&self, vars: &Vars) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.with_vars(vars)).collect::<Result<_>>()?;
        Ok(PolyMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::new(
            self.rows,
            self.cols,
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        )
        .unwrap()
    }

    pub fn scale(&self, c: &MultiPoly<F>) -> Self {
        self.map(|e| e * c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = MultiPoly::zero_in(self.vars().clone());
            for k in 0..self.cols {
                acc = acc + self.get(i, k) * other.get(k, j);
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Leading principal submatrix of size k.
    pub fn principal(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self.get(i, j).clone())
    }

    pub fn eval(&self, point: &[F]) -> Vec<Vec<F>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<MultiPoly<F>> {
        if !self.is_square() {
            return domain("determinant of a non-square matrix");
        }
        let n = self.rows;
        let vars = self.vars().clone();
        if n == 1 {
            return Ok(self.entries[0].clone());
        }
        if n == 2 {
            return Ok(self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0));
        }
        if n == 3 {
            let g = |i, j| self.get(i, j);
            let m0 = g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1);
            let m1 = g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0);
            let m2 = g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0);
            return Ok(g(0, 0) * &m0 - g(0, 1) * &m1 + g(0, 2) * &m2);
        }
        let mut m: Vec<Vec<MultiPoly<F>>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut prev = MultiPoly::one_in(vars.clone());
        let mut sign = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = !sign;
                    }
                    None => return Ok(MultiPoly::zero_in(vars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num.div_exact(&prev).expect("Bareiss step is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign { -d } else { d })
    }
}

/// Determinant of a matrix of field elements by Gaussian elimination.
pub fn det_scalar<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut det = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return F::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        let inv = a[k][k].inv().unwrap();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone() * &inv;
            for j in k..n {
                let t = f.clone() * &a[k][j];
                a[i][j] -= &t;
            }
        }
    }
    det
}
