use crate::exactmath::{Field, MultiPoly, PolyMatrix, Rational, Vars};

/// Second-order operator L f = Σ G^{ij}∂_{ij}f + Σ B^i∂_i f in named coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator<F: Field = Rational> {
    pub coords: Vars,
    pub g: PolyMatrix<F>,
    pub b: Vec<MultiPoly<F>>,
}

impl<F: Field> Operator<F> {
    pub fn new(coords: Vars, g: PolyMatrix<F>, b: Vec<MultiPoly<F>>) -> Self {
        assert_eq!(g.rows(), coords.len());
        assert_eq!(b.len(), coords.len());
        Operator { coords, g, b }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    fn index(&self, f: &MultiPoly<F>, i: usize) -> Option<usize> {
        f.var_index(&self.coords[i]).ok()
    }

    fn d(&self, f: &MultiPoly<F>, i: usize) -> MultiPoly<F> {
        match self.index(f, i) {
            Some(k) => f.deriv(k),
            None => MultiPoly::zero_in(f.vars().clone()),
        }
    }

    /// Carré du champ Γ(f, h) = Σ G^{ij} ∂_i f ∂_j h.
    pub fn carre_du_champ(&self, f: &MultiPoly<F>, h: &MultiPoly<F>) -> MultiPoly<F> {
        let n = self.dim();
        let df: Vec<MultiPoly<F>> = (0..n).map(|i| self.d(f, i)).collect();
        let dh: Vec<MultiPoly<F>> = (0..n).map(|i| self.d(h, i)).collect();
        let mut acc = MultiPoly::zero_in(self.g.vars().clone());
        for i in 0..n {
            if df[i].is_zero() {
                continue;
            }
            let mut row = MultiPoly::zero_in(self.g.vars().clone());
            for j in 0..n {
                if dh[j].is_zero() || self.g.get(i, j).is_zero() {
                    continue;
                }
                row = row + self.g.get(i, j) * &dh[j];
            }
            acc = acc + &df[i] * &row;
        }
        acc
    }

    /// Apply a first-order derivation Σ v_i ∂_i.
    pub fn derivation(v: &[MultiPoly<F>], coords: &Vars, f: &MultiPoly<F>) -> MultiPoly<F> {
        let mut acc = MultiPoly::zero_in(f.vars().clone());
        for (i, c) in coords.iter().enumerate() {
            if let Ok(k) = f.var_index(c) {
                let d = f.deriv(k);
                if !d.is_zero() {
                    acc = acc + &v[i] * &d;
                }
            }
        }
        acc
    }

    pub fn apply(&self, f: &MultiPoly<F>) -> MultiPoly<F> {
        let n = self.dim();
        let mut acc = MultiPoly::zero_in(self.g.vars().clone());
        for i in 0..n {
            let di = self.d(f, i);
            if di.is_zero() {
                continue;
            }
            acc = acc + &self.b[i] * &di;
            for j in 0..n {
                let g = self.g.get(i, j);
                if g.is_zero() {
                    continue;
                }
                let dij = self.d(&di, j);
                if !dij.is_zero() {
                    acc = acc + g * &dij;
                }
            }
        }
        acc
    }
}

/// Exact polynomial Σ G^{ij}∂_{ij}f + Σ B^i∂_i f.
pub fn apply_operator<F: Field>(op: &Operator<F>, f: &MultiPoly<F>) -> MultiPoly<F> {
    op.apply(f)
}
