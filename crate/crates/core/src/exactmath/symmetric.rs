use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::field::Field;
use super::poly::{vars_of, Exps, MultiPoly, Vars};
use crate::error::{Error, Result};

/// Elementary symmetric polynomial e_k in the given variables (e_0 = 1).
pub fn elementary<F: Field>(vars: &Vars, tvars: &[usize], k: usize) -> MultiPoly<F> {
    let mut terms = Vec::new();
    let n = tvars.len();
    if k <= n {
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            let mut e: Exps<u32> = smallvec::smallvec![0; vars.len()];
            for &p in &pick {
                e[tvars[p]] = 1;
            }
            terms.push((e, F::one()));
            // next k-subset in lexicographic order
            let mut i = k;
            loop {
                if i == 0 {
                    return MultiPoly::from_terms(vars.clone(), terms);
                }
                i -= 1;
                if pick[i] < n - k + i {
                    pick[i] += 1;
                    for j in i + 1..k {
                        pick[j] = pick[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    MultiPoly::from_terms(vars.clone(), terms)
}

/// Integer expansions of products of elementary symmetric polynomials in n variables.
struct ElementaryProducts {
    e: Vec<Vec<(Vec<u32>, i128)>>,
    cache: HashMap<Vec<u32>, Arc<HashMap<Vec<u32>, i128>>>,
}

impl ElementaryProducts {
    fn new(n: usize) -> Self {
        let mut e = vec![Vec::new()];
        for k in 1..=n {
            let mut terms = Vec::new();
            let mut pick: Vec<usize> = (0..k).collect();
            loop {
                let mut x = vec![0u32; n];
                for &p in &pick {
                    x[p] = 1;
                }
                terms.push((x, 1i128));
                let mut i = k;
                let mut done = true;
                while i > 0 {
                    i -= 1;
                    if pick[i] < n - k + i {
                        pick[i] += 1;
                        for j in i + 1..k {
                            pick[j] = pick[j - 1] + 1;
                        }
                        done = false;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
            e.push(terms);
        }
        let mut cache = HashMap::new();
        let mut one = HashMap::new();
        one.insert(vec![0u32; n], 1i128);
        cache.insert(vec![0u32; n], Arc::new(one));
        ElementaryProducts { e, cache }
    }

    /// Expansion of e_1^{k_1}⋯e_n^{k_n}.
    fn product(&mut self, k: &[u32]) -> Arc<HashMap<Vec<u32>, i128>> {
        if let Some(p) = self.cache.get(k) {
            return p.clone();
        }
        let j = k.iter().rposition(|&x| x > 0).unwrap();
        let mut parent = k.to_vec();
        parent[j] -= 1;
        let base = self.product(&parent);
        let mut out: HashMap<Vec<u32>, i128> = HashMap::with_capacity(base.len() * 2);
        for (m, c) in base.iter() {
            for (em, _) in &self.e[j + 1] {
                let x: Vec<u32> = m.iter().zip(em).map(|(a, b)| a + b).collect();
                let slot = out.entry(x).or_insert(0);
                *slot = slot.checked_add(*c).expect("elementary product overflow");
            }
        }
        let out = Arc::new(out);
        self.cache.insert(k.to_vec(), out.clone());
        out
    }
}

/// Decompose a polynomial symmetric in `tvars` into elementary symmetric polynomials.
///
/// The result uses the variables `enames` (one per elementary polynomial e_1..e_n)
/// followed by the remaining (passive) variables of `f`.
pub fn sym_decompose_in<F: Field>(
    f: &MultiPoly<F>,
    tvars: &[&str],
    enames: &[&str],
) -> Result<MultiPoly<F>> {
    let n = tvars.len();
    assert_eq!(enames.len(), n);
    let tidx: Vec<usize> = tvars.iter().map(|v| f.var_index(v)).collect::<Result<_>>()?;
    let passive: Vec<usize> = (0..f.nvars()).filter(|i| !tidx.contains(i)).collect();
    let mut out_names: Vec<&str> = enames.to_vec();
    for &p in &passive {
        out_names.push(f.vars()[p].as_str());
    }
    let out_vars = vars_of(&out_names);

    // dominant parts grouped by passive exponent
    let mut groups: BTreeMap<Vec<u32>, BTreeMap<Vec<u32>, F>> = BTreeMap::new();
    let mut full: HashMap<(Vec<u32>, Vec<u32>), F> = HashMap::new();
    for (e, c) in f.terms() {
        let t: Vec<u32> = tidx.iter().map(|&i| e[i]).collect();
        let w: Vec<u32> = passive.iter().map(|&i| e[i]).collect();
        full.insert((w.clone(), t.clone()), c.clone());
        if t.windows(2).all(|p| p[0] >= p[1]) {
            groups.entry(w).or_default().insert(t, c.clone());
        }
    }
    // symmetry under adjacent transpositions
    for i in 0..n.saturating_sub(1) {
        for ((w, t), c) in &full {
            let mut s = t.clone();
            s.swap(i, i + 1);
            if full.get(&(w.clone(), s)) != Some(c) {
                return Err(Error::SymmetryViolation(tvars[i].to_string(), tvars[i + 1].to_string()));
            }
        }
    }

    let mut ep = ElementaryProducts::new(n);
    let mut terms: Vec<(Exps<u32>, F)> = Vec::new();
    for (w, mut dom) in groups {
        while let Some((alpha, c)) = dom.pop_last() {
            let k: Vec<u32> = (0..n)
                .map(|j| alpha[j] - if j + 1 < n { alpha[j + 1] } else { 0 })
                .collect();
            let prod = ep.product(&k);
            for (m, coef) in prod.iter() {
                if m == &alpha || !m.windows(2).all(|p| p[0] >= p[1]) {
                    continue;
                }
                let delta = c.clone() * &F::from_i64(i64::try_from(*coef).expect("coefficient fits i64"));
                let slot = dom.entry(m.clone()).or_insert_with(F::zero);
                *slot -= &delta;
                if slot.is_zero() {
                    dom.remove(m);
                }
            }
            let mut e: Exps<u32> = k.iter().copied().collect();
            e.extend(w.iter().copied());
            terms.push((e, c));
        }
    }
    Ok(MultiPoly::from_terms(out_vars, terms))
}

/// Decompose a polynomial in exactly the symmetric variables `tvars`.
pub fn sym_decompose<F: Field>(f: &MultiPoly<F>, tvars: &[&str], enames: &[&str]) -> Result<MultiPoly<F>> {
    let g = sym_decompose_in(f, tvars, enames)?;
    Ok(g)
}
