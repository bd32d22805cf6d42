//! Printed closed forms for Γ(s_a, s_b) and Δ(s_a), written against a slot table
//! that supplies the value substituted for each s_k.

use crate::exactmath::{frac, rat, MultiPoly, Rational, Vars};

/// Values substituted for s_0..s_n; indices outside [0, n] read as zero.
#[derive(Clone, Debug)]
pub(crate) struct Slots {
    zero: MultiPoly,
    vals: Vec<MultiPoly>,
}

impl Slots {
    pub fn new(vars: &Vars, vals: Vec<MultiPoly>) -> Self {
        let vals = vals.into_iter().map(|v| v.with_vars(vars).expect("slot uses target coordinates")).collect();
        Slots { zero: MultiPoly::zero_in(vars.clone()), vals }
    }

    pub fn n(&self) -> i64 {
        self.vals.len() as i64 - 1
    }

    pub fn s(&self, k: i64) -> &MultiPoly {
        if k < 0 || k > self.n() {
            &self.zero
        } else {
            &self.vals[k as usize]
        }
    }

    pub fn ss(&self, i: i64, j: i64) -> MultiPoly {
        let (a, b) = (self.s(i), self.s(j));
        if a.is_zero() || b.is_zero() {
            return self.zero.clone();
        }
        a * b
    }

    pub fn zero(&self) -> MultiPoly {
        self.zero.clone()
    }
}

fn lsum(s: &Slots, mut term: impl FnMut(i64) -> (Rational, i64, i64)) -> MultiPoly {
    let mut acc = s.zero();
    for l in 1..=2 * s.n() + 2 {
        let (c, i, j) = term(l);
        if c == rat(0) {
            continue;
        }
        let p = s.ss(i, j);
        if !p.is_zero() {
            acc = acc + p.scale(&c);
        }
    }
    acc
}

fn ordered(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A_{n−1} on the unit sphere of the hyperplane Σx_i = 0.
pub(crate) fn sphere_a(n: i64, a: i64, b: i64, s: &Slots) -> MultiPoly {
    let (a, b) = ordered(a, b);
    s.ss(a - 1, b - 1).scale(&frac((a - 1) * (n - b + 1), n)) - s.ss(a, b).scale(&rat(a * b))
        + lsum(s, |l| (rat(a - b - 2 * l), a - l - 1, b + l - 1))
}

pub(crate) fn delta_sphere_a(n: i64, a: i64, s: &Slots) -> MultiPoly {
    s.s(a - 2).scale(&frac(-(n - a + 1) * (n - a + 2), n)) - s.s(a).scale(&rat(a * (n + a - 3)))
}

/// The same carré du champ on the hyperplane itself (no sphere term).
pub(crate) fn hyper_a(n: i64, a: i64, b: i64, s: &Slots) -> MultiPoly {
    sphere_a(n, a, b, s) + s.ss(a, b).scale(&rat(a * b))
}

pub(crate) fn delta_hyper_a(n: i64, a: i64, s: &Slots) -> MultiPoly {
    s.s(a - 2).scale(&frac(-(n - a + 1) * (n - a + 2), n))
}

/// B_n on ℝ^n, invariants in t_i = x_i².
pub(crate) fn euclid_b(_n: i64, a: i64, b: i64, s: &Slots) -> MultiPoly {
    let (a, b) = ordered(a, b);
    lsum(s, |l| (rat(4 * (b - a + 2 * l - 1)), a - l, b + l - 1))
}

pub(crate) fn delta_euclid_b(n: i64, a: i64, s: &Slots) -> MultiPoly {
    s.s(a - 1).scale(&rat(2 * (n - a + 1)))
}

pub(crate) fn sphere_b(n: i64, a: i64, b: i64, s: &Slots) -> MultiPoly {
    euclid_b(n, a, b, s) - s.ss(a, b).scale(&rat(4 * a * b))
}

pub(crate) fn delta_sphere_b(n: i64, a: i64, s: &Slots) -> MultiPoly {
    delta_euclid_b(n, a, s) - s.s(a).scale(&rat(2 * a * (n + 2 * a - 2)))
}

/// B_n on the sphere, invariants in t_i = n·x_i² − 1.
pub(crate) fn proj2_b(n: i64, a: i64, b: i64, s: &Slots) -> MultiPoly {
    let (a, b) = ordered(a, b);
    let inner = s.ss(a - 1, b - 1).scale(&rat(n - b + 1))
        + lsum(s, |l| (rat(a - b - 2 * l), a - l - 1, b + l - 1))
        + lsum(s, |l| (rat(b - a + 2 * l - 1), a - l, b + l - 1));
    let fa = s.s(a).scale(&rat(a)) + s.s(a - 1).scale(&rat(n - a + 1));
    let fb = s.s(b).scale(&rat(b)) + s.s(b - 1).scale(&rat(n - b + 1));
    inner.scale(&rat(4 * n)) - (&fa * &fb).scale(&rat(4))
}

pub(crate) fn delta_proj2_b(n: i64, a: i64, s: &Slots) -> MultiPoly {
    s.s(a).scale(&rat(2 * a * (2 - 2 * a - n))) + s.s(a - 1).scale(&rat(8 * (n - a + 1) * (1 - a)))
        - s.s(a - 2).scale(&rat(4 * (n - a + 1) * (n - a + 2)))
}

/// A_{n−1} acting on the full ℝ^n inside ℝ ⊕ ℝ^n, sphere Sⁿ.
pub(crate) fn direct_a(n: i64, a: i64, b: i64, s: &Slots) -> MultiPoly {
    let (a, b) = ordered(a, b);
    s.ss(a - 1, b - 1).scale(&rat(n - b + 1)) - s.ss(a, b).scale(&rat(a * b))
        + lsum(s, |l| (rat(a - b - 2 * l), a - l - 1, b + l - 1))
}

pub(crate) fn delta_direct_a(n: i64, a: i64, s: &Slots) -> MultiPoly {
    s.s(a).scale(&rat(-a * (n + a - 1)))
}

/// C̃_n in t_i = cos θ_i.
pub(crate) fn torus_c(n: i64, a: i64, b: i64, s: &Slots) -> MultiPoly {
    let (a, b) = ordered(a, b);
    s.ss(a - 1, b - 1).scale(&rat(n - b + 1)) - s.ss(a, b).scale(&rat(a))
        + lsum(s, |l| (rat(b - a + 2 * l), a - l, b + l))
        - lsum(s, |l| (rat(b - a + 2 * l), a - l - 1, b + l - 1))
}

pub(crate) fn delta_torus_c(a: i64, s: &Slots) -> MultiPoly {
    s.s(a).scale(&rat(-a))
}

/// Ã_{n−1} in t_i = exp(iθ_i), complex form before splitting into real parts.
#[cfg(test)]
pub(crate) fn torus_a(n: i64, a: i64, b: i64, s: &Slots) -> MultiPoly {
    let (a, b) = ordered(a, b);
    s.ss(a, b).scale(&frac(a * (b - n), n)) + lsum(s, |l| (rat(b - a + 2 * l), a - l, b + l))
}

/// Real and imaginary parts of s_k on the torus, with s̄_k = s_{n−k}.
pub(crate) struct ReIm {
    pub re: Slots,
    pub im: Slots,
}

impl ReIm {
    fn xx(&self, i: i64, j: i64) -> MultiPoly {
        self.re.ss(i, j)
    }
    fn yy(&self, i: i64, j: i64) -> MultiPoly {
        self.im.ss(i, j)
    }
    fn xy(&self, i: i64, j: i64) -> MultiPoly {
        let (a, b) = (self.re.s(i), self.im.s(j));
        if a.is_zero() || b.is_zero() {
            return self.re.zero();
        }
        a * b
    }

    /// The four real blocks A, B, C, D for a ≤ b.
    pub fn abcd(&self, n: i64, a: i64, b: i64) -> [MultiPoly; 4] {
        let s = &self.re;
        let mut sa = s.zero();
        let mut sb = s.zero();
        let mut sc = s.zero();
        let mut sd = s.zero();
        for l in 1..=2 * n + 2 {
            let k1 = rat(b - a + 2 * l);
            sa = sa + (self.xx(a - l, b + l) - self.yy(a - l, b + l)).scale(&k1);
            sb = sb + (self.xy(a - l, b + l) + self.xy(b + l, a - l)).scale(&k1);
            let k2 = rat(n - a - b + 2 * l);
            sc = sc + (self.xx(a - l, b - l) + self.yy(a - l, b - l)).scale(&k2);
            sd = sd + (self.xy(a - l, b - l) - self.xy(b - l, a - l)).scale(&k2);
        }
        let c1 = frac(a * (b - n), n);
        let c2 = frac(a * b, n);
        let big_a = (self.xx(a, b) - self.yy(a, b)).scale(&c1) + sa;
        let big_b = (self.xy(a, b) + self.xy(b, a)).scale(&c1) + sb;
        let big_c = (self.xx(a, b) + self.yy(a, b)).scale(&-c2.clone()) + sc;
        let big_d = (self.xy(a, b) - self.xy(b, a)).scale(&c2) - sd;
        [big_a, big_b, big_c, big_d]
    }
}
