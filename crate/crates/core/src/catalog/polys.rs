use crate::exactmath::{parse_poly, vars_of, MultiPoly, Rational, Vars};

pub fn xyz() -> Vars {
    vars_of(&["x", "y", "z"])
}

pub(crate) fn p(src: &str) -> MultiPoly {
    parse_poly(src, &["x", "y", "z"]).expect("well-formed catalog polynomial")
}

/// Discriminant surface of u³+3xu²+3yu+z, the twisted-cubic developable.
pub fn gamma4() -> MultiPoly {
    p("3x^2y^2 - 4y^3 - 4x^3z + 6xyz - z^2")
}

/// Discriminant surface of u⁴−6xu²−4yu−z, the cuspidal-quartic developable.
pub fn gamma5() -> MultiPoly {
    p("-54x^3y^2 + 27y^4 + 81x^4z - 54xy^2z + 18x^2z^2 + z^3")
}

/// P(u) = u³ + 3xu² + 3yu + z at a rational u.
pub fn cubic_p(u: &Rational) -> MultiPoly {
    let c = |k: u32| MultiPoly::constant_in(xyz(), num_traits::pow(u.clone(), k as usize));
    c(3) + p("3x") * c(2) + p("3y") * c(1) + p("z")
}

/// P(u) = u⁴ − 6xu² − 4yu − z at a rational u.
pub fn quartic_p(u: &Rational) -> MultiPoly {
    let c = |k: u32| MultiPoly::constant_in(xyz(), num_traits::pow(u.clone(), k as usize));
    c(4) - p("6x") * c(2) - p("4y") * c(1) - p("z")
}

const GAMMA2: &str = "a^2b + a^2cx - 2abcx + a^2dx + 2abdx - 2ac^2x^2 + a^2ex^2 + 2abex^2 + 2a^2fx^2 \
    + 4abfx^2 + bc^2y - 2bcdy + 2ad^2y + bd^2y - 2abey - 2a^2fy - 2abfy + c^3xy - c^2dxy \
    - 2acexy - bcexy + 2adexy + bdexy + 2acfxy - 2bcfxy + 4adfxy + 2bdfxy - 2c^2fy^2 \
    + 4aefy^2 + 2befy^2 + 2af^2y^2 + bf^2y^2 - cd^2z + d^3z + bcez - bdez - 2adfz + c^2exz \
    - 2cdexz + d^2exz + 2d^2fxz - 2aefxz - 2befxz - 2af^2xz - 2cefyz + 2defyz + cf^2yz \
    + df^2yz + ef^2z^2";

pub const LEMMA43_PARAMS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// The cofactor Γ₂ with a…f kept as variables (order x, y, z, a, …, f).
pub fn gamma2_symbolic() -> MultiPoly {
    parse_poly(GAMMA2, &["x", "y", "z", "a", "b", "c", "d", "e", "f"]).expect("well-formed")
}

/// The cofactor Γ₂ at rational (a, …, f).
pub fn gamma2_lemma43(params: &[Rational; 6]) -> MultiPoly {
    let bind: Vec<(&str, Rational)> = LEMMA43_PARAMS.iter().copied().zip(params.iter().cloned()).collect();
    gamma2_symbolic().subs_const(&bind).with_vars(&xyz()).expect("only x, y, z remain")
}

/// Γ₁ of the cuspidal-quartic family at rational (a, b, c).
pub fn gamma1_lemma45(a: &Rational, b: &Rational, c: &Rational) -> MultiPoly {
    let k = |v: Rational| MultiPoly::constant_in(xyz(), v);
    let three = Rational::from_integer(3.into());
    k(three.clone() * a * a * a)
        + p("x") * k(three.clone() * (a.clone() * a * c - three.clone() * a * b * b))
        + p("y") * k(three * (b.clone() * b * b - a.clone() * b * c))
        + p("z") * k(b.clone() * b * c)
}

/// The quartic factor of det g for the (t⁻¹, t, t²) family.
pub fn lemma44_quartic() -> MultiPoly {
    p("3y^2 - 4xy^3 - 4z + 6xyz - x^2z^2")
}
