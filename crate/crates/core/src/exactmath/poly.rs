use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use super::field::{Field, Rational};
use crate::error::{domain, Error, Result};

/// Exponent type: `u32` for ordinary polynomials, `i32` for Laurent polynomials.
pub trait Exponent: Copy + Ord + Hash + Debug + Default + Send + Sync + 'static {
    const LAURENT: bool;
    fn to_i64(self) -> i64;
    fn from_i64(v: i64) -> Option<Self>;
}

impl Exponent for u32 {
    const LAURENT: bool = false;
    fn to_i64(self) -> i64 {
        self as i64
    }
    fn from_i64(v: i64) -> Option<Self> {
        u32::try_from(v).ok()
    }
}

impl Exponent for i32 {
    const LAURENT: bool = true;
    fn to_i64(self) -> i64 {
        self as i64
    }
    fn from_i64(v: i64) -> Option<Self> {
        i32::try_from(v).ok()
    }
}

pub type Exps<E> = SmallVec<[E; 8]>;

/// Exponent vector ordered graded-lexicographically (variable list order).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono<E>(pub Exps<E>);

impl<E: Exponent> Mono<E> {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|e| e.to_i64()).sum()
    }
}

impl<E: Exponent> Ord for Mono<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl<E: Exponent> PartialOrd for Mono<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type Vars = Arc<[String]>;

pub fn vars_of(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Sparse polynomial over `F` with exponents of type `E`.
#[derive(Clone)]
pub struct Poly<F, E> {
    vars: Vars,
    terms: BTreeMap<Mono<E>, F>,
}

/// Polynomial with non-negative exponents.
pub type MultiPoly<F = Rational> = Poly<F, u32>;
/// Polynomial with integer exponents.
pub type LaurentPoly<F = Rational> = Poly<F, i32>;

fn merge_vars(a: &Vars, b: &Vars) -> Vars {
    if Arc::ptr_eq(a, b) || a[..] == b[..] {
        return a.clone();
    }
    let mut out: Vec<String> = a.to_vec();
    for v in b.iter() {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out.into()
}

impl<F: Field, E: Exponent> Poly<F, E> {
    pub fn zero_in(vars: Vars) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant_in(vars: Vars, c: F) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(Mono(smallvec::smallvec![E::default(); n]), c);
        }
        p
    }

    pub fn one_in(vars: Vars) -> Self {
        Self::constant_in(vars, F::one())
    }

    pub fn var_in(vars: Vars, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut e: Exps<E> = smallvec::smallvec![E::default(); vars.len()];
        e[idx] = E::from_i64(1).unwrap();
        Ok(Self::monomial(vars, e, F::one()))
    }

    /// One polynomial per variable name, all sharing the same variable list.
    pub fn gens(names: &[&str]) -> Vec<Self> {
        let vars = vars_of(names);
        names.iter().map(|n| Self::var_in(vars.clone(), n).unwrap()).collect()
    }

    pub fn monomial(vars: Vars, exps: Exps<E>, c: F) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length mismatch");
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(Mono(exps), c);
        }
        p
    }

    pub fn from_terms<I>(vars: Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exps<E>, F)>,
    {
        let mut acc: HashMap<Mono<E>, F> = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            match acc.entry(Mono(e)) {
                std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &c,
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
            }
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: Vars, acc: HashMap<Mono<E>, F>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Poly { vars, terms }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[E], &F)> + '_ {
        self.terms.iter().map(|(m, c)| (&m.0[..], c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.0.iter().all(|e| e.to_i64() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn coeff(&self, exps: &[E]) -> F {
        self.terms
            .get(&Mono(exps.iter().copied().collect()))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// Leading term in graded-lex order.
    pub fn lead(&self) -> Option<(&[E], &F)> {
        self.terms.iter().next_back().map(|(m, c)| (&m.0[..], c))
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_in(&self, idx: usize) -> Option<i64> {
        self.terms.keys().map(|m| m.0[idx].to_i64()).max()
    }

    pub fn min_degree_in(&self, idx: usize) -> Option<i64> {
        self.terms.keys().map(|m| m.0[idx].to_i64()).min()
    }

    /// Re-embed into a variable list that contains every variable actually used.
    pub fn with_vars(&self, vars: &Vars) -> Result<Self> {
        if Arc::ptr_eq(&self.vars, vars) || self.vars[..] == vars[..] {
            return Ok(Poly { vars: vars.clone(), terms: self.terms.clone() });
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e: Exps<E> = smallvec::smallvec![E::default(); vars.len()];
            for (i, x) in m.0.iter().enumerate() {
                if x.to_i64() == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = *x,
                    None => return Err(Error::UnknownVariable(self.vars[i].clone())),
                }
            }
            terms.insert(Mono(e), c.clone());
        }
        Ok(Poly { vars: vars.clone(), terms })
    }

    /// Rename the variables positionally.
    pub fn renamed(&self, vars: Vars) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        Poly { vars, terms: self.terms.clone() }
    }

    /// Drop variables that occur in no term.
    pub fn trimmed(&self) -> Self {
        let used: Vec<usize> = (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i].to_i64() != 0))
            .collect();
        let vars: Vars = used.iter().map(|&i| self.vars[i].clone()).collect::<Vec<_>>().into();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Mono(used.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        Poly { vars, terms }
    }

    fn aligned<'a>(&'a self, other: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        let vars = merge_vars(&self.vars, &other.vars);
        let a = if self.vars[..] == vars[..] {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.with_vars(&vars).unwrap())
        };
        let b = if other.vars[..] == vars[..] {
            Cow::Borrowed(other)
        } else {
            Cow::Owned(other.with_vars(&vars).unwrap())
        };
        (a, b)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.vars.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x.clone() * c))
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn add_ref(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c.clone());
                }
            }
        }
        Poly { vars: a.vars.clone(), terms }
    }

    pub fn sub_ref(&self, other: &Self) -> Self {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        if let Some(c) = other.constant_value() {
            return self.scale(&c).with_vars(&merge_vars(&self.vars, &other.vars)).unwrap();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c).with_vars(&merge_vars(&self.vars, &other.vars)).unwrap();
        }
        let (a, b) = self.aligned(other);
        let mut acc: HashMap<Mono<E>, F> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e: Exps<E> = ma
                    .0
                    .iter()
                    .zip(mb.0.iter())
                    .map(|(x, y)| E::from_i64(x.to_i64() + y.to_i64()).expect("exponent overflow"))
                    .collect();
                let prod = ca.clone() * cb;
                match acc.entry(Mono(e)) {
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &prod,
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                }
            }
        }
        Self::from_map(a.vars.clone(), acc)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one_in(self.vars.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    pub fn add_const(&self, c: &F) -> Self {
        self.add_ref(&Self::constant_in(self.vars.clone(), c.clone()))
    }

    pub fn deriv(&self, idx: usize) -> Self {
        let mut acc = HashMap::new();
        for (m, c) in &self.terms {
            let k = m.0[idx].to_i64();
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[idx] = E::from_i64(k - 1).unwrap();
            acc.insert(Mono(e), c.clone() * &F::from_i64(k));
        }
        Self::from_map(self.vars.clone(), acc)
    }

    pub fn deriv_by(&self, name: &str) -> Result<Self> {
        Ok(self.deriv(self.var_index(name)?))
    }

    /// Coefficients with respect to one variable, keyed by its exponent.
    pub fn coeffs_in(&self, idx: usize) -> BTreeMap<i64, Self> {
        let mut parts: BTreeMap<i64, BTreeMap<Mono<E>, F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.0[idx].to_i64();
            let mut e = m.0.clone();
            e[idx] = E::default();
            parts.entry(k).or_default().insert(Mono(e), c.clone());
        }
        parts
            .into_iter()
            .map(|(k, terms)| (k, Poly { vars: self.vars.clone(), terms }))
            .collect()
    }

    pub fn leading_coeff_in(&self, idx: usize) -> Self {
        self.coeffs_in(idx)
            .into_iter()
            .next_back()
            .map(|(_, p)| p)
            .unwrap_or_else(|| Self::zero_in(self.vars.clone()))
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G, E> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn try_map_coeffs<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Poly<G, E>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let g = f(c)?;
            if !g.is_zero() {
                terms.insert(m.clone(), g);
            }
        }
        Some(Poly { vars: self.vars.clone(), terms })
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }

    pub fn to_laurent(&self) -> LaurentPoly<F> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.0.iter().map(|x| i32::from_i64(x.to_i64()).unwrap()).collect();
                (Mono(e), c.clone())
            })
            .collect();
        Poly { vars: self.vars.clone(), terms }
    }

    /// Lossless conversion when all exponents are non-negative.
    pub fn to_multi(&self) -> Result<MultiPoly<F>> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e: Option<Exps<u32>> = m.0.iter().map(|x| u32::from_i64(x.to_i64())).collect();
            match e {
                Some(e) => {
                    terms.insert(Mono(e), c.clone());
                }
                None => return domain("negative exponent in conversion to MultiPoly"),
            }
        }
        Ok(Poly { vars: self.vars.clone(), terms })
    }

    /// Compose with Laurent images; unbound variables are retained.
    pub fn substitute(&self, bindings: &[(&str, LaurentPoly<F>)]) -> Result<LaurentPoly<F>> {
        let mut out_vars: Vars = vars_of(&[]);
        for (_, b) in bindings {
            out_vars = merge_vars(&out_vars, b.vars());
        }
        let mut images: Vec<LaurentPoly<F>> = Vec::with_capacity(self.nvars());
        for v in self.vars.iter() {
            match bindings.iter().find(|(n, _)| n == v) {
                Some((_, b)) => images.push(b.clone()),
                None => {
                    out_vars = merge_vars(&out_vars, &vars_of(&[v.as_str()]));
                    images.push(LaurentPoly::var_in(vars_of(&[v.as_str()]), v).unwrap());
                }
            }
        }
        let images: Vec<LaurentPoly<F>> =
            images.iter().map(|p| p.with_vars(&out_vars).unwrap()).collect();
        let mut cache: HashMap<(usize, i64), LaurentPoly<F>> = HashMap::new();
        let mut result = LaurentPoly::zero_in(out_vars.clone());
        for (m, c) in &self.terms {
            let mut term = LaurentPoly::constant_in(out_vars.clone(), c.clone());
            for (i, x) in m.0.iter().enumerate() {
                let k = x.to_i64();
                if k == 0 {
                    continue;
                }
                let p = match cache.get(&(i, k)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = laurent_power(&images[i], k)?;
                        cache.insert((i, k), p.clone());
                        p
                    }
                };
                term = term.mul_ref(&p);
            }
            result = result.add_ref(&term);
        }
        Ok(result)
    }
}

fn laurent_power<F: Field>(p: &LaurentPoly<F>, k: i64) -> Result<LaurentPoly<F>> {
    if k >= 0 {
        return Ok(p.pow(k as u32));
    }
    if p.num_terms() != 1 {
        return domain("negative power of a non-monomial binding");
    }
    let (e, c) = p.lead().unwrap();
    let inv = c.inv()?;
    let e: Exps<i32> = e.iter().map(|x| -*x).collect();
    Ok(LaurentPoly::monomial(p.vars().clone(), e, inv).pow((-k) as u32))
}

impl<F: Field> MultiPoly<F> {
    /// Evaluate at a point given in variable order.
    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars());
        let mut total = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(m.0.iter()) {
                for _ in 0..*e {
                    t *= x;
                }
            }
            total += &t;
        }
        total
    }

    /// Compose with polynomial images, one per variable (in order).
    pub fn compose(&self, images: &[MultiPoly<F>]) -> MultiPoly<F> {
        assert_eq!(images.len(), self.nvars(), "compose: wrong number of images");
        let mut out_vars: Vars = vars_of(&[]);
        for p in images {
            out_vars = merge_vars(&out_vars, p.vars());
        }
        let images: Vec<MultiPoly<F>> =
            images.iter().map(|p| p.with_vars(&out_vars).unwrap()).collect();
        let mut powers: Vec<Vec<MultiPoly<F>>> = vec![Vec::new(); images.len()];
        let mut acc: HashMap<Mono<u32>, F> = HashMap::new();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant_in(out_vars.clone(), c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() < k as usize {
                    let next = match powers[i].last() {
                        Some(p) => p.mul_ref(&images[i]),
                        None => images[i].clone(),
                    };
                    powers[i].push(next);
                }
                term = term.mul_ref(&powers[i][k as usize - 1]);
            }
            for (tm, tc) in term.terms {
                match acc.entry(tm) {
                    std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += &tc,
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(tc);
                    }
                }
            }
        }
        Self::from_map(out_vars, acc)
    }

    /// Substitute polynomials for selected variables by name; others are kept.
    pub fn subs(&self, bindings: &[(&str, MultiPoly<F>)]) -> MultiPoly<F> {
        let images: Vec<MultiPoly<F>> = self
            .vars
            .iter()
            .map(|v| match bindings.iter().find(|(n, _)| n == v) {
                Some((_, p)) => p.clone(),
                None => MultiPoly::var_in(vars_of(&[v.as_str()]), v).unwrap(),
            })
            .collect();
        self.compose(&images)
    }

    /// Substitute constants for selected variables by name.
    pub fn subs_const(&self, bindings: &[(&str, F)]) -> MultiPoly<F> {
        let b: Vec<(&str, MultiPoly<F>)> = bindings
            .iter()
            .map(|(n, c)| (*n, MultiPoly::constant_in(vars_of(&[]), c.clone())))
            .collect();
        self.subs(&b).with_vars(&self.vars).unwrap()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly<F>) -> Option<MultiPoly<F>> {
        if d.is_zero() {
            return self.is_zero().then(|| self.clone());
        }
        let (f, d) = self.aligned(d);
        let (f, d) = (f.into_owned(), d.into_owned());
        if let Some(c) = d.constant_value() {
            return Some(f.scale(&c.inv().unwrap()));
        }
        let (dl, dc) = {
            let (e, c) = d.lead().unwrap();
            (Exps::<u32>::from_slice(e), c.clone())
        };
        let dc_inv = dc.inv().unwrap();
        let mut r = f;
        let mut q = MultiPoly::zero_in(r.vars.clone());
        while let Some((e, c)) = r.lead() {
            let mut qe: Exps<u32> = Exps::with_capacity(e.len());
            for (a, b) in e.iter().zip(dl.iter()) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let t = MultiPoly::monomial(r.vars.clone(), qe, c.clone() * &dc_inv);
            r = r.sub_ref(&t.mul_ref(&d));
            q = q.add_ref(&t);
        }
        Some(q)
    }

    pub fn divides(d: &MultiPoly<F>, f: &MultiPoly<F>) -> bool {
        f.div_exact(d).is_some()
    }
}

/// Result of univariate (pseudo-)division in one variable: `multiplier·f = quotient·d + remainder`.
#[derive(Clone, Debug)]
pub struct DivRem<F: Field> {
    pub quotient: MultiPoly<F>,
    pub remainder: MultiPoly<F>,
    pub multiplier: MultiPoly<F>,
    pub exact: bool,
}

/// Division of `f` by `d` viewed as polynomials in `var`.
pub fn poly_divrem<F: Field>(f: &MultiPoly<F>, d: &MultiPoly<F>, var: &str) -> Result<DivRem<F>> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (f, d) = f.aligned(d);
    let (f, d) = (f.into_owned(), d.into_owned());
    let idx = match f.var_index(var) {
        Ok(i) => i,
        Err(_) => return domain(format!("{var} does not occur in the divisor")),
    };
    let m = d.degree_in(idx).unwrap();
    if m < 1 {
        return domain(format!("divisor has degree 0 in {var}"));
    }
    let lc = d.leading_coeff_in(idx);
    let vars = f.vars.clone();
    let xpow = |k: i64| {
        let mut e: Exps<u32> = smallvec::smallvec![0; vars.len()];
        e[idx] = k as u32;
        MultiPoly::monomial(vars.clone(), e, F::one())
    };
    let mut q = MultiPoly::zero_in(vars.clone());
    let mut r = f;
    let mut multiplier = MultiPoly::one_in(vars.clone());
    let lc_const = lc.constant_value();
    while let Some(k) = r.degree_in(idx) {
        if k < m {
            break;
        }
        let lr = r.leading_coeff_in(idx);
        let s = lr.mul_ref(&xpow(k - m));
        match &lc_const {
            Some(c) => {
                let s = s.scale(&c.inv()?);
                r = r.sub_ref(&s.mul_ref(&d));
                q = q.add_ref(&s);
            }
            None => {
                q = q.mul_ref(&lc).add_ref(&s);
                r = r.mul_ref(&lc).sub_ref(&s.mul_ref(&d));
                multiplier = multiplier.mul_ref(&lc);
            }
        }
    }
    let exact = multiplier.constant_value().map_or(false, |c| c.is_one());
    Ok(DivRem { quotient: q, remainder: r, multiplier, exact })
}

/// True iff `f = q·d` for some polynomial `q`.
pub fn exact_divides<F: Field>(d: &MultiPoly<F>, f: &MultiPoly<F>) -> bool {
    MultiPoly::divides(d, f)
}

/// `Some(c)` with `f = c·h`; `(0,0)` gives `c = 1`.
pub fn proportional<F: Field>(f: &Poly<F, u32>, h: &Poly<F, u32>) -> Option<F> {
    match (f.is_zero(), h.is_zero()) {
        (true, true) => return Some(F::one()),
        (true, false) | (false, true) => return None,
        _ => {}
    }
    let (fa, ha) = f.aligned(h);
    let c = fa.lead().unwrap().1.clone() / ha.lead().unwrap().1;
    (fa.sub_ref(&ha.scale(&c))).is_zero().then_some(c)
}

impl<F: Field, E: Exponent> PartialEq for Poly<F, E> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl<F: Field, E: Exponent> Eq for Poly<F, E> {}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a, 'b, F: Field, E: Exponent> $tr<&'b Poly<F, E>> for &'a Poly<F, E> {
            type Output = Poly<F, E>;
            fn $m(self, o: &'b Poly<F, E>) -> Poly<F, E> {
                self.$imp(o)
            }
        }
        impl<'b, F: Field, E: Exponent> $tr<&'b Poly<F, E>> for Poly<F, E> {
            type Output = Poly<F, E>;
            fn $m(self, o: &'b Poly<F, E>) -> Poly<F, E> {
                self.$imp(o)
            }
        }
        impl<'a, F: Field, E: Exponent> $tr<Poly<F, E>> for &'a Poly<F, E> {
            type Output = Poly<F, E>;
            fn $m(self, o: Poly<F, E>) -> Poly<F, E> {
                self.$imp(&o)
            }
        }
        impl<F: Field, E: Exponent> $tr<Poly<F, E>> for Poly<F, E> {
            type Output = Poly<F, E>;
            fn $m(self, o: Poly<F, E>) -> Poly<F, E> {
                self.$imp(&o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl<F: Field, E: Exponent> Neg for Poly<F, E> {
    type Output = Poly<F, E>;
    fn neg(self) -> Poly<F, E> {
        self.neg_ref()
    }
}

impl<'a, F: Field, E: Exponent> Neg for &'a Poly<F, E> {
    type Output = Poly<F, E>;
    fn neg(self) -> Poly<F, E> {
        self.neg_ref()
    }
}

impl<F: Field, E: Exponent> Display for Poly<F, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mut s = c.to_string();
            let neg = s.starts_with('-');
            if neg {
                s.remove(0);
            }
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(self.vars.iter())
                .filter(|(e, _)| e.to_i64() != 0)
                .map(|(e, v)| match e.to_i64() {
                    1 => v.clone(),
                    k => format!("{v}^{k}"),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{s}")?;
            } else if s == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{s}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field, E: Exponent> Debug for Poly<F, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}
