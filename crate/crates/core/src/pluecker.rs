//! Plücker–Cayley numerics for space curves and the plane-curve count behind the
//! conical-surface exclusion.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Genus, k_j and degrees r_j of a space curve C (r_0 = deg C, r_1 = deg Σ, r_2 = deg Č).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveNumerics {
    pub g: i64,
    pub k0: i64,
    pub k1: i64,
    pub k2: i64,
    pub r0: i64,
    pub r1: i64,
    pub r2: i64,
}

impl CurveNumerics {
    pub fn new(g: i64, k0: i64, k1: i64, k2: i64, r0: i64, r1: i64, r2: i64) -> Self {
        CurveNumerics { g, k0, k1, k2, r0, r1, r2 }
    }

    pub fn as_array(&self) -> [i64; 7] {
        [self.g, self.k0, self.k1, self.k2, self.r0, self.r1, self.r2]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.as_array().iter().all(|&v| v >= 0)
    }

    pub fn to_json(&self) -> Value {
        json!({"g": self.g, "k0": self.k0, "k1": self.k1, "k2": self.k2, "r0": self.r0, "r1": self.r1, "r2": self.r2})
    }
}

impl fmt::Display for CurveNumerics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [g, k0, k1, k2, r0, r1, r2] = self.as_array();
        write!(f, "({g},{k0},{k1},{k2},{r0},{r1},{r2})")
    }
}

/// Left-hand side minus right-hand side of the six equations, in the order
/// r1(C), r1(Č), r2, r0, k2, k0.
pub fn pluecker_residuals(c: &CurveNumerics) -> [i64; 6] {
    let CurveNumerics { g, k0, k1, k2, r0, r1, r2 } = *c;
    [
        r1 - (2 * r0 + 2 * g - 2 - k0),
        r1 - (2 * r2 + 2 * g - 2 - k2),
        r2 - (3 * (r0 + 2 * g - 2) - 2 * k0 - k1),
        r0 - (3 * (r2 + 2 * g - 2) - 2 * k2 - k1),
        k2 - (4 * (r0 + 3 * g - 3) - 3 * k0 - 2 * k1),
        k0 - (4 * (r2 + 3 * g - 3) - 3 * k2 - 2 * k1),
    ]
}

pub fn check_pluecker(c: &CurveNumerics) -> bool {
    pluecker_residuals(c).iter().all(|&r| r == 0)
}

/// Numerics of the dual curve: k_j ↔ k_{2−j}, r_j ↔ r_{2−j}.
pub fn dualize(c: &CurveNumerics) -> CurveNumerics {
    CurveNumerics { g: c.g, k0: c.k2, k1: c.k1, k2: c.k0, r0: c.r2, r1: c.r1, r2: c.r0 }
}

/// Cusp-edge genus bound: r0 + k1 ≤ (r1−1)(r1−2)/2.
pub fn cusp_edge_bound(c: &CurveNumerics) -> bool {
    c.r0 + c.k1 <= (c.r1 - 1) * (c.r1 - 2) / 2
}

/// Projection from a cusp: k2 > 0 ⇒ g + k0 − 1 ≤ (r0−3)(r0−4)/2.
pub fn cusp_projection_bound(c: &CurveNumerics) -> bool {
    c.k2 == 0 || c.g + c.k0 - 1 <= (c.r0 - 3) * (c.r0 - 4) / 2
}

/// Which curves the two genus inequalities are imposed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inequalities {
    /// On C only.
    CurveOnly,
    /// On C and on Č.
    CurveAndDual,
}

fn admissible(c: &CurveNumerics, ineq: Inequalities) -> bool {
    let own = cusp_edge_bound(c) && cusp_projection_bound(c);
    match ineq {
        Inequalities::CurveOnly => own,
        Inequalities::CurveAndDual => {
            let d = dualize(c);
            own && cusp_edge_bound(&d) && cusp_projection_bound(&d)
        }
    }
}

/// All non-negative solutions of the six equations with r0, r2 ≥ 4, 3 ≤ r1 ≤ r1_max and
/// the genus inequalities.
///
/// Eliminating with the first three equations leaves (g, r0, r1, r2) free:
/// k0 = 2r0+2g−2−r1, k2 = 2r2+2g−2−r1, k1 = 2r1+2g−2−r0−r2.
/// Bounds: k1 ≥ 0 in the cusp-edge bound gives r0 ≤ (r1−1)(r1−2)/2; k1 ≥ 0 gives
/// r2 ≤ 2r1+2g−2−r0; if k2 = 0 then 2g = r1+2−2r2 ≤ r1, otherwise the cusp-projection
/// bound gives g ≤ (r0−3)(r0−4)/2 + 1. The loops below cover all of these.
pub fn enumerate(r1_max: i64, ineq: Inequalities) -> Vec<CurveNumerics> {
    let mut out = Vec::new();
    for r1 in 3..=r1_max {
        let r0_max = (r1 - 1) * (r1 - 2) / 2;
        for r0 in 4..=r0_max {
            let g_max = r1.max((r0 - 3) * (r0 - 4) / 2 + 1);
            for g in 0..=g_max {
                for r2 in 4..=(2 * r1 + 2 * g - 2 - r0) {
                    let c = CurveNumerics {
                        g,
                        k0: 2 * r0 + 2 * g - 2 - r1,
                        k1: 2 * r1 + 2 * g - 2 - r0 - r2,
                        k2: 2 * r2 + 2 * g - 2 - r1,
                        r0,
                        r1,
                        r2,
                    };
                    if c.is_nonnegative() && check_pluecker(&c) && admissible(&c, ineq) {
                        out.push(c);
                    }
                }
            }
        }
    }
    sort_rows(&mut out);
    out
}

/// Row order of the table: by r1, inflected (k1 > 0) before non-inflected, then r0 up, r2 down.
fn sort_rows(rows: &mut [CurveNumerics]) {
    rows.sort_by_key(|c| (c.r1, c.k1 == 0, c.r0, std::cmp::Reverse(c.r2)));
}

/// The rational twisted cubic t ↦ (1 : t : t² : t³), the only non-planar curve with r0 ≤ 3.
pub fn twisted_cubic() -> CurveNumerics {
    CurveNumerics::new(0, 0, 0, 0, 3, 4, 3)
}

/// A numbered row of the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub numerics: CurveNumerics,
}

/// Curves whose tangent developable has degree ≤ r1_max: the cubic (when r1_max ≥ 4) followed
/// by the search with the genus inequalities imposed on C and Č.
pub fn enumerate_table1(r1_max: i64) -> Vec<TableRow> {
    let mut rows = Vec::new();
    let cubic = twisted_cubic();
    if cubic.r1 <= r1_max {
        rows.push(cubic);
    }
    rows.extend(enumerate(r1_max, Inequalities::CurveAndDual));
    sort_rows(&mut rows);
    rows.into_iter()
        .enumerate()
        .map(|(i, numerics)| TableRow { label: format!("{}°", i + 1), numerics })
        .collect()
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from("no,g,k0,k1,k2,r0,r1,r2\n");
    for r in rows {
        let v = r.numerics.as_array().map(|x| x.to_string());
        s.push_str(&format!("{},{}\n", r.label, v.join(",")));
    }
    s
}

/// Branch data of an irreducible plane curve of degree d whose branches are smooth or of
/// type (2,4): a[k] = number of A_{2k} branches (k ≥ 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicBranchCount {
    pub d: i64,
    pub dual_d: i64,
    pub genus: i64,
    pub nodal_n: i64,
    pub a: BTreeMap<i64, i64>,
}

impl ConicBranchCount {
    fn weighted(&self, f: impl Fn(i64) -> i64) -> i64 {
        self.a.iter().map(|(&k, &c)| f(k) * c).sum()
    }

    /// The three equations: genus, class and Riemann–Hurwitz for Č.
    pub fn satisfies(&self) -> bool {
        let d = self.d;
        self.genus + self.nodal_n + self.weighted(|k| k) == (d - 1) * (d - 2) / 2
            && self.dual_d == d * (d - 1) - 2 * self.nodal_n - self.weighted(|k| 2 * k + 1)
            && 2 - 2 * self.genus == 2 * self.dual_d - d - self.weighted(|_| 1)
    }

    pub fn to_json(&self) -> Value {
        let a: serde_json::Map<String, Value> =
            self.a.iter().filter(|(_, &c)| c > 0).map(|(k, c)| (format!("a{}", 2 * k), json!(c))).collect();
        json!({"d": self.d, "dualD": self.dual_d, "genus": self.genus, "n": self.nodal_n, "a": a})
    }
}

/// Solutions found for one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicDegree {
    pub d: i64,
    pub solutions: Vec<ConicBranchCount>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicReport {
    pub degrees: Vec<ConicDegree>,
}

impl ConicReport {
    /// True when no degree in range admits a solution.
    pub fn infeasible(&self) -> bool {
        self.degrees.iter().all(|d| d.solutions.is_empty())
    }

    pub fn to_json(&self) -> Value {
        let degrees: Vec<Value> = self
            .degrees
            .iter()
            .map(|d| {
                let mut v = json!({
                    "d": d.d,
                    "count": d.solutions.len(),
                    "solutions": d.solutions.iter().map(ConicBranchCount::to_json).collect::<Vec<_>>(),
                });
                if let Some(n) = &d.note {
                    v["note"] = json!(n);
                }
                v
            })
            .collect();
        json!({"degrees": degrees, "infeasible": self.infeasible()})
    }
}

/// All non-negative integer (g, n, ď, a_4, a_6, …) solving the three equations for one d.
/// Since g, n ≥ 0 the first equation bounds Σ k·a_{2k} by (d−1)(d−2)/2, so k ≤ that bound / 2;
/// g then fixes n, and ď is determined by the second equation.
pub fn conic_solutions(d: i64) -> Vec<ConicBranchCount> {
    let total = (d - 1) * (d - 2) / 2;
    if total < 0 {
        return Vec::new();
    }
    let ks: Vec<i64> = (2..=total / 2).collect();
    let mut out = Vec::new();
    let mut counts = vec![0i64; ks.len()];
    fn rec(i: usize, used: i64, total: i64, ks: &[i64], counts: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64], i64)) {
        if i == ks.len() {
            visit(counts, used);
            return;
        }
        let mut c = 0;
        while used + ks[i] * c <= total {
            counts[i] = c;
            rec(i + 1, used + ks[i] * c, total, ks, counts, visit);
            c += 1;
        }
        counts[i] = 0;
    }
    rec(0, 0, total, &ks, &mut counts, &mut |counts, used| {
        let a: BTreeMap<i64, i64> = ks.iter().copied().zip(counts.iter().copied()).collect();
        for genus in 0..=total - used {
            let nodal_n = total - used - genus;
            let mut cand = ConicBranchCount { d, dual_d: 0, genus, nodal_n, a: a.clone() };
            cand.dual_d = d * (d - 1) - 2 * nodal_n - cand.weighted(|k| 2 * k + 1);
            if cand.dual_d >= 0 && cand.satisfies() {
                out.push(cand);
            }
        }
    });
    out
}

/// Search every d in [dmin, dmax].
pub fn conic_infeasible(dmin: i64, dmax: i64) -> Result<ConicReport> {
    if dmin > dmax || dmin < 1 {
        return Err(Error::Parameter(format!("degree range [{dmin}, {dmax}] is empty or below 1")));
    }
    let degrees = (dmin..=dmax)
        .map(|d| ConicDegree {
            d,
            solutions: conic_solutions(d),
            note: (d < 3).then(|| "degree below 3 is outside the claim (such curves are conics or lines)".to_string()),
        })
        .collect();
    Ok(ConicReport { degrees })
}
