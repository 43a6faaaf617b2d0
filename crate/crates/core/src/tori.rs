//! Anisotropic tori `T_{γ1,γ2}` of `SL2(k)`, their building points and
//! filtration subgroups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{int, rat, ExtReal, FieldParams, KElem, Rational, SquareClass, UnitClass};
use crate::error::{Error, Result};

/// Splitting field `k(√(γ1 γ2))` of an anisotropic torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplitType {
    Unramified,
    /// `k(√ϖ)`
    RamPi,
    /// `k(√(εϖ))`
    RamEpsPi,
}

impl SplitType {
    pub fn is_ramified(self) -> bool {
        self != SplitType::Unramified
    }

    /// The square class `D` with splitting field `k(√D)`.
    pub fn discriminant(self) -> SquareClass {
        match self {
            SplitType::Unramified => SquareClass::Eps,
            SplitType::RamPi => SquareClass::Pi,
            SplitType::RamEpsPi => SquareClass::EpsPi,
        }
    }

    /// Whether the field is `k(√(-ϖ))`.
    pub fn is_minus_pi(self, fp: &FieldParams) -> bool {
        let minus_pi = SquareClass::from_parts(true, fp.minus_one_class());
        self.is_ramified() && self.discriminant() == minus_pi
    }
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitType::Unramified => "unramified",
            SplitType::RamPi => "ram_pi",
            SplitType::RamEpsPi => "ram_eps_pi",
        })
    }
}

/// The representatives of conjugacy classes of anisotropic tori.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StandardTorus {
    /// `T_{1,ε}`, `y = 0`
    Unramified0,
    /// `T_{ϖ^-1,εϖ}`, `y = 1`
    Unramified1,
    /// `T_{1,ϖ}`
    Pi,
    /// `T_{ε,ε^-1 ϖ}`, only when `-1` is a square
    PiAlt,
    /// `T_{1,εϖ}`
    EpsPi,
    /// `T_{ε,ϖ}`, only when `-1` is a square
    EpsPiAlt,
}

impl StandardTorus {
    pub const ALL: [StandardTorus; 6] = [
        StandardTorus::Unramified0,
        StandardTorus::Unramified1,
        StandardTorus::Pi,
        StandardTorus::PiAlt,
        StandardTorus::EpsPi,
        StandardTorus::EpsPiAlt,
    ];

    pub fn gammas(self) -> (KElem, KElem) {
        match self {
            StandardTorus::Unramified0 => (KElem::one(), KElem::eps()),
            StandardTorus::Unramified1 => (KElem::pi_pow(-1), KElem::new(1, UnitClass::Eps)),
            StandardTorus::Pi => (KElem::one(), KElem::pi_pow(1)),
            StandardTorus::PiAlt => (KElem::eps(), KElem::new(1, UnitClass::Eps)),
            StandardTorus::EpsPi => (KElem::one(), KElem::new(1, UnitClass::Eps)),
            StandardTorus::EpsPiAlt => (KElem::eps(), KElem::pi_pow(1)),
        }
    }

    pub fn y(self) -> Rational {
        match self {
            StandardTorus::Unramified0 => int(0),
            StandardTorus::Unramified1 => int(1),
            _ => rat(1, 2),
        }
    }

    pub fn split_type(self) -> SplitType {
        match self {
            StandardTorus::Unramified0 | StandardTorus::Unramified1 => SplitType::Unramified,
            StandardTorus::Pi | StandardTorus::PiAlt => SplitType::RamPi,
            StandardTorus::EpsPi | StandardTorus::EpsPiAlt => SplitType::RamEpsPi,
        }
    }

    /// Row of the classification table, counted from zero.
    pub fn table_index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for StandardTorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g1, g2) = self.gammas();
        write!(f, "T({g1},{g2})")
    }
}

/// A classified anisotropic torus.
///
/// `gamma1`/`gamma2` are the pair as supplied; every formula downstream uses
/// the standard representative of the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusDesc {
    pub gamma1: KElem,
    pub gamma2: KElem,
    pub y: Rational,
    pub split_type: SplitType,
    pub standard: StandardTorus,
}

impl TorusDesc {
    pub fn standard(t: StandardTorus) -> Self {
        let (gamma1, gamma2) = t.gammas();
        Self { gamma1, gamma2, y: t.y(), split_type: t.split_type(), standard: t }
    }

    /// `γ1` of the standard representative.
    pub fn std_gamma1(&self) -> KElem {
        self.standard.gammas().0
    }

    pub fn std_gamma2(&self) -> KElem {
        self.standard.gammas().1
    }

    pub fn is_ramified(&self) -> bool {
        self.split_type.is_ramified()
    }
}

impl fmt::Display for TorusDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}, y={}]", self.standard, self.split_type, self.y)
    }
}

/// Classifies `T_{γ1,γ2}` up to conjugacy at square-class resolution.
///
/// The torus depends on `(γ1, γ2)` up to common scaling by `ϖ`, conjugation by
/// `diag(ϖ^k, ϖ^-k)` (shifting the point `y = (val γ2 - val γ1)/2` by `2k`)
/// and by `w` (sending the pair to `(-γ2, -γ1)` and `y` to `-y`).
pub fn classify_torus(gamma1: &KElem, gamma2: &KElem, fp: &FieldParams) -> Result<TorusDesc> {
    let (v1, v2) = match (gamma1.valuation(), gamma2.valuation()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::ZeroElement),
    };
    let product = (*gamma1 * *gamma2).square_class()?;
    if product == SquareClass::One {
        return Err(Error::IsotropicPair(format!("{}", *gamma1 * *gamma2)));
    }
    let standard = match product {
        SquareClass::Eps => {
            if (v2 - v1).rem_euclid(4) == 0 {
                StandardTorus::Unramified0
            } else {
                StandardTorus::Unramified1
            }
        }
        SquareClass::Pi | SquareClass::EpsPi => {
            // twice y is odd; y = 1/2 mod 2 keeps γ1, y = 3/2 mod 2 flips by w
            let lead = if (v2 - v1).rem_euclid(4) == 1 {
                gamma1.unit_class().expect("nonzero")
            } else {
                gamma2.neg(fp).unit_class().expect("nonzero")
            };
            let alt = fp.minus_one_square() && lead == UnitClass::Eps;
            match (product, alt) {
                (SquareClass::Pi, false) => StandardTorus::Pi,
                (SquareClass::Pi, true) => StandardTorus::PiAlt,
                (_, false) => StandardTorus::EpsPi,
                (_, true) => StandardTorus::EpsPiAlt,
            }
        }
        SquareClass::One => unreachable!(),
    };
    Ok(TorusDesc {
        gamma1: *gamma1,
        gamma2: *gamma2,
        y: standard.y(),
        split_type: standard.split_type(),
        standard,
    })
}

/// Congruence data of `T_u = { t(a,b) : a ∈ 1 + P^a_exp, bγ1 ∈ P^b_exp }`
/// (group) or `t_u = { cX_T : cγ1 ∈ P^b_exp }` (Lie algebra, no `a`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusFiltrationIndex {
    pub a_exponent: Option<i64>,
    pub b_exponent: i64,
}

pub fn torus_filtration(t: &TorusDesc, u: ExtReal, lie_algebra: bool) -> Result<TorusFiltrationIndex> {
    let b_exponent = u.shifted(-t.y).ceil_index()?;
    if lie_algebra {
        return Ok(TorusFiltrationIndex { a_exponent: None, b_exponent });
    }
    match u.value() {
        Some(v) if v > int(0) => {}
        _ => return Err(Error::NonPositiveIndex(u.to_string())),
    }
    Ok(TorusFiltrationIndex { a_exponent: Some(u.ceil_index()?), b_exponent })
}
