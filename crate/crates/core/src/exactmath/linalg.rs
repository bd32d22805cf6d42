use super::field::Field;

/// Sparse row: (column, value) pairs.
pub type SparseRow<F> = Vec<(usize, F)>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    let t = f.clone() * p;
                    *x -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

fn densify<F: Field>(rows: &[SparseRow<F>], ncols: usize) -> Vec<Vec<F>> {
    rows.iter()
        .map(|row| {
            let mut d = vec![F::zero(); ncols];
            for (c, v) in row {
                d[*c] += v;
            }
            d
        })
        .filter(|d| d.iter().any(|x| !x.is_zero()))
        .collect()
}

pub fn rank<F: Field>(rows: &[SparseRow<F>], ncols: usize) -> usize {
    let mut m = densify(rows, ncols);
    rref(&mut m, ncols).len()
}

/// Canonical basis of the solution space of the homogeneous system: the rows of
/// the reduced echelon form of any basis, so each vector's first nonzero entry is 1.
pub fn nullspace<F: Field>(rows: &[SparseRow<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = densify(rows, ncols);
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<F>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    rref(&mut basis, ncols);
    basis
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<F: Field>(basis: &[Vec<F>], v: &[F]) -> bool {
    let n = v.len();
    let mut m: Vec<Vec<F>> = basis.to_vec();
    let r0 = rref(&mut m.clone(), n).len();
    m.push(v.to_vec());
    rref(&mut m, n).len() == r0
}

/// Inverse of a square matrix of field elements, if it exists.
pub fn inverse<F: Field>(a: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::field::{rat, Rational};

    #[test]
    fn empty_system_gives_standard_basis() {
        let ns = nullspace::<Rational>(&[], 3);
        assert_eq!(ns.len(), 3);
        for (i, v) in ns.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn one_row() {
        let ns = nullspace(&[vec![(0, rat(1)), (1, rat(1))]], 3);
        assert_eq!(ns.len(), 2);
        assert_eq!(ns[0], vec![rat(1), rat(-1), rat(0)]);
        assert_eq!(ns[1], vec![rat(0), rat(0), rat(1)]);
        assert!(in_span(&ns, &[rat(2), rat(-2), rat(5)]));
        assert!(!in_span(&ns, &[rat(1), rat(1), rat(0)]));
    }

    #[test]
    fn matrix_inverse() {
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(2)]]);
        assert!(inverse(&[vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).is_none());
    }
}
