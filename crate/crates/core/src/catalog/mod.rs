//! Explicit curves, cometric families, boundary polynomials and closed-form
//! solutions bounded by tangent developables.

pub mod families;
pub mod polys;
pub mod solutions;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

pub use families::{
    cometric_family, curve, eps_family, family_curve, lemma43, lemma43_params, lemma45_params, lemma43_basis, lemma43_symbolic, lemma44_basis,
    lemma45_basis, sextic_branch, sextic_cometric,
};
pub use polys::{
    cubic_p, gamma1_lemma45, gamma2_lemma43, gamma2_symbolic, gamma4, gamma5, lemma44_quartic, quartic_p, xyz,
};
pub use solutions::{
    detg_identity, domain_description, phi_mu, phi_mu_params, phi_mu_pushforward, solution, solution_unchecked, witness_point,
    DetgReport,
};

pub type Params = BTreeMap<String, Rational>;

/// Build a parameter map from name/value pairs.
pub fn params<'a>(pairs: impl IntoIterator<Item = (&'a str, Rational)>) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

macro_rules! cases {
    ($($v:ident => $id:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum CatalogCase { $($v),* }

        impl CatalogCase {
            pub const ALL: &'static [CatalogCase] = &[$(CatalogCase::$v),*];

            pub fn id(&self) -> &'static str {
                match self { $(CatalogCase::$v => $id),* }
            }
        }
    };
}

cases! {
    I1 => "i1", I2 => "i2", I3 => "i3", I4 => "i4", I5 => "i5", I6 => "i6", I7 => "i7",
    Ii => "ii",
    Iii1 => "iii1", Iii2 => "iii2", Iii3 => "iii3",
    Iv => "iv", IvP => "iv'", V => "v", VP => "v'", Vi => "vi", ViP => "vi'", ViPP => "vi''",
    Thm51I4 => "thm51_i4", Thm51I5 => "thm51_i5", Thm51I6 => "thm51_i6", Thm51Iii2 => "thm51_iii2",
    Thm51Iii3 => "thm51_iii3", Thm51V => "thm51_v", Thm51Vi => "thm51_vi",
    Thm52I1 => "thm52_i1", Thm52I3 => "thm52_i3", Thm52Iii1 => "thm52_iii1",
}

impl fmt::Display for CatalogCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CatalogCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CatalogCase::ALL
            .iter()
            .copied()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown catalog case {s:?}")))
    }
}

impl CatalogCase {
    /// The curve whose tangent developable bounds the case (as a curve case).
    pub fn curve_family(&self) -> Option<CatalogCase> {
        use CatalogCase::*;
        Some(match self {
            I1 | I2 | I3 | I4 | I5 | I6 | I7 | Thm51I4 | Thm51I5 | Thm51I6 | Thm52I1 | Thm52I3 => I1,
            Iii1 | Iii2 | Iii3 | Thm51Iii2 | Thm51Iii3 | Thm52Iii1 => Iii1,
            Thm51V => V,
            Thm51Vi => Vi,
            Ii | Iv | IvP | V | VP | Vi | ViP | ViPP => *self,
        })
    }

    /// The family case a solution is drawn from.
    pub fn family_case(&self) -> CatalogCase {
        use CatalogCase::*;
        match self {
            Thm51I4 => I4,
            Thm51I5 => I5,
            Thm51I6 => I6,
            Thm51Iii2 => Iii2,
            Thm51Iii3 => Iii3,
            Thm51V => V,
            Thm51Vi => Vi,
            Thm52I1 | Thm52I3 => I1,
            Thm52Iii1 => Iii1,
            c => *c,
        }
    }

    pub fn is_solution(&self) -> bool {
        self.id().starts_with("thm")
    }

    /// Whether coefficients live in ℚ(i) for the curve (only the trigonometric sextic).
    pub fn needs_gaussian(&self) -> bool {
        self.curve_family() == Some(CatalogCase::Vi)
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        use CatalogCase::*;
        match self {
            I1 => &["a", "b", "c", "d", "e", "f"],
            I2 => &["a", "c", "e"],
            I3 => &["d", "e", "f"],
            I6 => &["alpha", "e"],
            Ii => &["a", "b"],
            Iii1 => &["a", "b", "c"],
            Iii3 => &["c"],
            Thm51I4 | Thm51I5 => &["p", "q", "r"],
            Thm51I6 => &["alpha", "e", "p", "q"],
            Thm51Iii2 | Thm51Iii3 => &["p", "q"],
            Thm51V | Thm51Vi => &["p"],
            Thm52I1 => &["alpha", "lambda", "p"],
            Thm52I3 => &["lambda", "p", "q"],
            Thm52Iii1 => &["lambda", "p"],
            I4 | I5 | I7 | Iii2 | Iv | IvP | V | VP | Vi | ViP | ViPP => &[],
        }
    }

    /// Constraints on the parameters, as printed.
    pub fn constraints(&self) -> &'static [&'static str] {
        use CatalogCase::*;
        match self {
            I1 => &["(a,c-d,f)≠(0,0,0)", "(b,c+d,e,af-d^2)≠(0,0,0,0)"],
            I2 => &["(c,ae)≠(0,0)"],
            I3 => &["(d,ef)≠(0,0)"],
            I6 => &["α≠0", "e=±1"],
            Ii => &["ab≠0"],
            Iii1 => &["(a,b)≠(0,0)"],
            Iii3 => &["c=±1"],
            Thm51I4 => &["6p>1", "q>0", "r>0", "2p+q>1"],
            Thm51I5 => &["6p>1", "q>0", "r>0", "2p+q>1", "2p+r>1"],
            Thm51I6 => &["α>0", "e=-1", "6p>1", "q>0"],
            Thm51Iii2 => &["4p>1", "q>0", "2p+q>1"],
            Thm51Iii3 => &["4p>1", "q>0"],
            Thm51V | Thm51Vi => &["4p>1"],
            Thm52I1 => &["α>0", "p>1/6", "λ>0"],
            Thm52I3 => &["p>1/6", "q>0", "2p+q>1", "λ>0"],
            Thm52Iii1 => &["p>1/4", "λ>0"],
            _ => &[],
        }
    }

    /// Parameters that may be omitted, with their defaults.
    pub fn defaults(&self) -> Params {
        match self {
            CatalogCase::Thm51I6 => params([("e", crate::exactmath::rat(-1))]),
            _ => Params::new(),
        }
    }

    /// Human-readable description of where the case sits in the classification.
    pub fn locus(&self) -> &'static str {
        use CatalogCase::*;
        match self {
            I1 => "twisted cubic, generic family with boundary the developable alone",
            I2 => "twisted cubic, extra boundary plane x=0",
            I3 => "twisted cubic, extra boundary plane z=0",
            I4 => "twisted cubic, extra planes x=1 and z=0",
            I5 => "twisted cubic, two osculating planes P(1), P(-1)",
            I6 => "twisted cubic, extra parabolic cylinder (α+1)x²-y±α",
            I7 => "twisted cubic, extra quadric x-x²+y",
            Ii => "developable of (t⁻¹,t,t²)",
            Iii1 => "cuspidal quartic, developable alone",
            Iii2 => "cuspidal quartic, osculating plane at t=3",
            Iii3 => "cuspidal quartic, extra plane x=±1",
            Iv => "curve (t⁻¹+t, 3t-t³, 2t²-t⁴)",
            IvP => "curve (t⁻¹-t, 3t+t³, 2t²+t⁴)",
            V => "quintic (3t-t³, 4t²-2t⁴, 5t³-3t⁵)",
            VP => "quintic (3t+t³, 4t²+2t⁴, 5t³+3t⁵)",
            Vi => "four-cusped sextic (3cosθ+cos3θ, 3sinθ-sin3θ, 6cos2θ)",
            ViP => "sextic (3t⁻¹+t³, 3t⁻²+3t², t⁻³+3t)",
            ViPP => "sextic (3t⁻¹-t³, 3t⁻²-3t², t⁻³-3t)",
            Thm51I4 => "bounded solution on the twisted-cubic family with planes x=1, z=0",
            Thm51I5 => "bounded solution on the twisted-cubic family with two osculating planes",
            Thm51I6 => "bounded solution on the twisted-cubic family with a parabolic cylinder",
            Thm51Iii2 => "bounded solution on the cuspidal-quartic family with an osculating plane",
            Thm51Iii3 => "bounded solution on the cuspidal-quartic family with plane x=1",
            Thm51V => "bounded solution on the quintic (det g)",
            Thm51Vi => "bounded solution on the four-cusped sextic (det g)",
            Thm52I1 => "unbounded solution on the twisted cubic with Gaussian weight",
            Thm52I3 => "unbounded solution on the twisted cubic with plane z=0 and exponential weight",
            Thm52Iii1 => "unbounded solution on the cuspidal quartic with exponential weight",
        }
    }

    /// A fixed valid parameter set, used by `catalog emit` without explicit parameters.
    pub fn example_params(&self) -> Params {
        use crate::exactmath::{frac, rat};
        use CatalogCase::*;
        match self {
            I1 => params(["a", "b", "c", "d", "e", "f"].into_iter().zip([1, 1, 0, 0, 0, 0].map(rat))),
            I2 => params([("a", rat(1)), ("c", rat(1)), ("e", rat(1))]),
            I3 => params([("d", rat(1)), ("e", rat(1)), ("f", rat(1))]),
            I6 => params([("alpha", rat(1)), ("e", rat(-1))]),
            Ii => params([("a", rat(1)), ("b", rat(1))]),
            Iii1 => params([("a", rat(1)), ("b", rat(0)), ("c", rat(0))]),
            Iii3 => params([("c", rat(-1))]),
            Thm51I4 | Thm51I5 => params([("p", frac(1, 3)), ("q", rat(1)), ("r", rat(1))]),
            Thm51I6 => params([("alpha", rat(1)), ("e", rat(-1)), ("p", frac(1, 3)), ("q", rat(1))]),
            Thm51Iii2 | Thm51Iii3 => params([("p", frac(1, 2)), ("q", rat(1))]),
            Thm51V | Thm51Vi => params([("p", frac(1, 2))]),
            Thm52I1 => params([("alpha", rat(1)), ("lambda", rat(1)), ("p", frac(1, 2))]),
            Thm52I3 => params([("lambda", rat(1)), ("p", frac(1, 2)), ("q", rat(1))]),
            Thm52Iii1 => params([("lambda", rat(1)), ("p", frac(1, 2))]),
            _ => Params::new(),
        }
    }

    /// Complete `given` with defaults and reject missing or unknown names.
    pub fn bind(&self, given: &Params) -> Result<Params> {
        let mut out = self.defaults();
        for (k, v) in given {
            if !self.param_names().contains(&k.as_str()) {
                return Err(Error::Parameter(format!("case {} has no parameter {k:?}", self.id())));
            }
            out.insert(k.clone(), v.clone());
        }
        for name in self.param_names() {
            if !out.contains_key(*name) {
                return Err(Error::Parameter(format!("case {} needs parameter {name:?}", self.id())));
            }
        }
        Ok(out)
    }

    pub fn index_entry(&self) -> Value {
        json!({
            "id": self.id(),
            "params": self.param_names(),
            "constraints": self.constraints(),
            "locus": self.locus(),
            "kind": if self.is_solution() { "solution" } else { "family" },
        })
    }
}

/// The `catalog list` index: case id → parameter names, constraints and locus.
pub fn catalog_index() -> Value {
    Value::Object(CatalogCase::ALL.iter().map(|c| (c.id().to_string(), c.index_entry())).collect())
}
