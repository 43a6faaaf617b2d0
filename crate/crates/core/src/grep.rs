//! Irreducible admissible representations of `G = SL2(k)`: principal series,
//! constituents of reducible principal series, depth-zero supercuspidals and
//! positive-depth supercuspidals built from generic characters of tori.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{hilbert_sgn, int, FieldParams, KElem, Rational, Sign, SquareClass, UnitClass};
use crate::error::{Error, Result};
use crate::tori::{StandardTorus, TorusDesc};

/// Restriction of a character of `k^x` to `R^x`, modulo `1 + P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnitRestriction {
    Trivial,
    Sgn,
    Other(String),
}

/// A character `χ` of `k^x ≅ S`, described by the data the branching
/// formulas consume.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharKx {
    pub depth: u32,
    pub unit_restriction: UnitRestriction,
    /// Square class of `λ_χ ∈ R^x`; only meaningful in positive depth.
    pub lambda: UnitClass,
    /// `χ(-1)`
    pub central: Sign,
    /// Set when `χ = sgn_τ`.
    pub sgn_tau: Option<SquareClass>,
    pub label: String,
}

impl CharKx {
    pub fn new(
        depth: u32,
        unit_restriction: UnitRestriction,
        lambda: UnitClass,
        central: Sign,
        label: impl Into<String>,
        fp: &FieldParams,
    ) -> Result<Self> {
        if depth == 0 {
            let forced = match unit_restriction {
                UnitRestriction::Trivial => Some(Sign::Plus),
                UnitRestriction::Sgn => Some(fp.minus_one_class().legendre()),
                UnitRestriction::Other(_) => None,
            };
            if let Some(s) = forced {
                if s != central {
                    return Err(Error::InvalidCharacter(format!(
                        "depth-zero character with {unit_restriction:?} restriction has chi(-1) = {s}"
                    )));
                }
            }
        }
        Ok(Self { depth, unit_restriction, lambda, central, sgn_tau: None, label: label.into() })
    }

    /// The quadratic character `sgn_τ = (·, τ)`.
    pub fn sgn(tau: SquareClass, fp: &FieldParams) -> Result<Self> {
        let central = hilbert_sgn(tau, &KElem::minus_one(fp), fp)?;
        let unit_restriction =
            if tau.odd_valuation() { UnitRestriction::Sgn } else { UnitRestriction::Trivial };
        Ok(Self {
            depth: 0,
            unit_restriction,
            lambda: UnitClass::One,
            central,
            sgn_tau: Some(tau),
            label: format!("sgn_{tau}"),
        })
    }
}

/// An irreducible cuspidal representation of `SL2(F_q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CuspidalKind {
    /// `σ(ω)` for a character `ω` of the norm-one group (cyclic of order
    /// `q+1`), given by its exponent; `ω` and `ω^-1` give the same `σ`.
    Generic { omega: u64 },
    SpecialPlus,
    SpecialMinus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteCuspidal {
    pub kind: CuspidalKind,
    pub central: Sign,
}

impl FiniteCuspidal {
    pub fn generic(omega: u64, fp: &FieldParams) -> Result<Self> {
        let order = fp.q() + 1;
        let omega = omega % order;
        if (2 * omega) % order == 0 {
            return Err(Error::InvalidCuspidal(format!(
                "omega^{omega} has order dividing two; generic cuspidals need omega^2 != 1"
            )));
        }
        let omega = omega.min(order - omega);
        // -1 is the element of order two in the norm-one group
        let central = Sign::Minus.pow(omega as i64);
        Ok(Self { kind: CuspidalKind::Generic { omega }, central })
    }

    pub fn special(sign: Sign, fp: &FieldParams) -> Self {
        let kind = match sign {
            Sign::Plus => CuspidalKind::SpecialPlus,
            Sign::Minus => CuspidalKind::SpecialMinus,
        };
        let central = Sign::Minus.pow(((fp.q() + 1) / 2) as i64);
        Self { kind, central }
    }

    pub fn is_special(&self) -> bool {
        !matches!(self.kind, CuspidalKind::Generic { .. })
    }

    pub fn special_sign(&self) -> Option<Sign> {
        match self.kind {
            CuspidalKind::SpecialPlus => Some(Sign::Plus),
            CuspidalKind::SpecialMinus => Some(Sign::Minus),
            CuspidalKind::Generic { .. } => None,
        }
    }
}

impl fmt::Display for FiniteCuspidal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CuspidalKind::Generic { omega } => write!(f, "sigma(omega^{omega})"),
            CuspidalKind::SpecialPlus => f.write_str("sigma0+"),
            CuspidalKind::SpecialMinus => f.write_str("sigma0-"),
        }
    }
}

/// A generic character `φ` of an anisotropic torus, of depth `r`, whose
/// restriction to `T_{s+}` is `Ψ(Tr(a X_T (t - I)))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharT {
    pub torus: TorusDesc,
    pub depth: Rational,
    /// The scalar `a` with `Γ = a X_T`, where `X_T` is built from the
    /// standard representative of the torus.
    pub a_coeff: KElem,
    /// `φ(-I)`
    pub central: Sign,
    pub label: String,
}

impl CharT {
    /// The unit `a ϖ^{⌈r+y⌉} γ1` modulo squares: the scalar multiplying the
    /// Shalika parameters of the branching rules.
    pub fn unit_scalar(&self) -> UnitClass {
        (self.a_coeff * self.torus.std_gamma1())
            .unit_class()
            .expect("a and γ1 are nonzero")
    }

    /// Square class of `a γ1` among units, with `a` normalised as above.
    pub fn z_class(&self) -> UnitClass {
        self.unit_scalar() * self.torus.std_gamma1().unit_class().expect("nonzero")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Vertex {
    Zero,
    One,
}

impl Vertex {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(Vertex::Zero),
            1 => Some(Vertex::One),
            _ => None,
        }
    }

    pub fn index(self) -> u32 {
        self as u32
    }
}

/// An irreducible admissible representation of `SL2(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GRep {
    PrincipalSeries(CharKx),
    /// `π_τ^±`, the constituents of `Ind sgn_τ`.
    ReducibleConstituent { tau: SquareClass, sign: Sign, central: Sign },
    /// `c-Ind_K σ` (vertex 0) or `c-Ind_{K^η} σ^η` (vertex 1).
    DepthZeroSC { vertex: Vertex, sigma: FiniteCuspidal },
    PositiveSC(CharT),
}

/// The coarse class used by profiles and tail comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepClass {
    PrincipalSeries,
    ReduciblePrincipalSeries,
    DepthZeroSupercuspidal,
    UnramifiedSupercuspidal,
    RamifiedSupercuspidal,
}

impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepClass::PrincipalSeries => "principal_series",
            RepClass::ReduciblePrincipalSeries => "reducible_principal_series",
            RepClass::DepthZeroSupercuspidal => "depth_zero_sc",
            RepClass::UnramifiedSupercuspidal => "unramified_sc",
            RepClass::RamifiedSupercuspidal => "ramified_sc",
        })
    }
}

impl GRep {
    pub fn depth(&self) -> Rational {
        match self {
            GRep::PrincipalSeries(chi) => int(chi.depth as i64),
            GRep::PositiveSC(phi) => phi.depth,
            _ => int(0),
        }
    }

    pub fn central_character(&self) -> Sign {
        match self {
            GRep::PrincipalSeries(chi) => chi.central,
            GRep::ReducibleConstituent { central, .. } => *central,
            GRep::DepthZeroSC { sigma, .. } => sigma.central,
            GRep::PositiveSC(phi) => phi.central,
        }
    }

    pub fn class(&self) -> RepClass {
        match self {
            GRep::PrincipalSeries(_) => RepClass::PrincipalSeries,
            GRep::ReducibleConstituent { .. } => RepClass::ReduciblePrincipalSeries,
            GRep::DepthZeroSC { .. } => RepClass::DepthZeroSupercuspidal,
            GRep::PositiveSC(phi) if phi.torus.is_ramified() => RepClass::RamifiedSupercuspidal,
            GRep::PositiveSC(_) => RepClass::UnramifiedSupercuspidal,
        }
    }

    /// Degree of `ρ` for positive-depth supercuspidals: `q` in the Weil-lift
    /// case (unramified torus, even depth), `1` otherwise.
    pub fn rho_degree(&self, fp: &FieldParams) -> Option<u64> {
        match self {
            GRep::PositiveSC(phi) => {
                let even = phi.depth.is_integer() && phi.depth.to_integer() % 2 == 0;
                Some(if !phi.torus.is_ramified() && even { fp.q() } else { 1 })
            }
            _ => None,
        }
    }
}

impl fmt::Display for GRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GRep::PrincipalSeries(chi) => write!(f, "Ind_P^G {} (depth {})", chi.label, chi.depth),
            GRep::ReducibleConstituent { tau, sign, .. } => write!(f, "pi_{tau}^{sign}"),
            GRep::DepthZeroSC { vertex: Vertex::Zero, sigma } => write!(f, "c-Ind_K^G {sigma}"),
            GRep::DepthZeroSC { vertex: Vertex::One, sigma } => {
                write!(f, "c-Ind_(K^eta)^G {sigma}^eta")
            }
            GRep::PositiveSC(phi) => write!(
                f,
                "c-Ind rho[{}] on {} (depth {}, a = {})",
                phi.label, phi.torus.standard, phi.depth, phi.a_coeff
            ),
        }
    }
}

/// Outcome of parabolic induction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrincipalSeries {
    Irreducible(GRep),
    /// `(π_τ^+, π_τ^-)`
    Reducible(GRep, GRep),
}

pub fn make_principal_series(chi: CharKx, fp: &FieldParams) -> Result<PrincipalSeries> {
    match chi.sgn_tau {
        Some(tau) => {
            let central = hilbert_sgn(tau, &KElem::minus_one(fp), fp)?;
            Ok(PrincipalSeries::Reducible(
                GRep::ReducibleConstituent { tau, sign: Sign::Plus, central },
                GRep::ReducibleConstituent { tau, sign: Sign::Minus, central },
            ))
        }
        None => Ok(PrincipalSeries::Irreducible(GRep::PrincipalSeries(chi))),
    }
}

/// `π_τ^±` directly.
pub fn make_reducible_constituent(tau: SquareClass, sign: Sign, fp: &FieldParams) -> Result<GRep> {
    let central = hilbert_sgn(tau, &KElem::minus_one(fp), fp)?;
    Ok(GRep::ReducibleConstituent { tau, sign, central })
}

pub fn make_depth_zero_sc(vertex: Vertex, sigma: FiniteCuspidal) -> GRep {
    GRep::DepthZeroSC { vertex, sigma }
}

pub fn make_positive_sc(torus: &TorusDesc, phi: CharT) -> Result<GRep> {
    if phi.torus.standard != torus.standard {
        return Err(Error::TorusMismatch);
    }
    let r = phi.depth;
    if r <= int(0) {
        return Err(Error::DepthParity(format!("depth {r} is not positive")));
    }
    let parity_ok = if torus.is_ramified() {
        (r * int(2)).is_integer() && !r.is_integer()
    } else {
        r.is_integer()
    };
    if !parity_ok {
        return Err(Error::DepthParity(format!(
            "depth {r} on a {} torus",
            torus.split_type
        )));
    }
    let target = -(r + torus.y);
    let val = (phi.a_coeff * torus.std_gamma1()).valuation();
    if val.map(int) != Some(target) {
        return Err(Error::NonGeneric(format!(
            "val(a gamma1) = {} but genericity needs {}",
            val.map_or("inf".to_string(), |v| v.to_string()),
            target
        )));
    }
    Ok(GRep::PositiveSC(CharT { torus: *torus, ..phi }))
}

pub fn central_character(rep: &GRep) -> Sign {
    rep.central_character()
}

fn partner_torus(t: StandardTorus) -> StandardTorus {
    match t {
        StandardTorus::Unramified0 => StandardTorus::Unramified1,
        StandardTorus::Unramified1 => StandardTorus::Unramified0,
        StandardTorus::Pi => StandardTorus::PiAlt,
        StandardTorus::PiAlt => StandardTorus::Pi,
        StandardTorus::EpsPi => StandardTorus::EpsPiAlt,
        StandardTorus::EpsPiAlt => StandardTorus::EpsPi,
    }
}

/// The other member of a positive-depth supercuspidal packet: the `η`-conjugate
/// for unramified tori, the `β = diag(1, ε)`-conjugate for ramified ones.
fn packet_partner(phi: &CharT, fp: &FieldParams) -> CharT {
    let mut out = phi.clone();
    if phi.torus.is_ramified() && !fp.minus_one_square() {
        // T^β = T, and Γ^β = a X_{-γ1,-γ2} = (εa) X_T
        out.a_coeff = phi.a_coeff * KElem::eps();
    } else {
        out.torus = TorusDesc::standard(partner_torus(phi.torus.standard));
    }
    out
}

/// The L-packet containing `rep`, in a canonical order.
pub fn l_packet(rep: &GRep, fp: &FieldParams) -> Vec<GRep> {
    let mut set = BTreeSet::new();
    match rep {
        GRep::PrincipalSeries(chi) => match chi.sgn_tau {
            Some(tau) => {
                for sign in [Sign::Plus, Sign::Minus] {
                    set.insert(make_reducible_constituent(tau, sign, fp).expect("tau nontrivial"));
                }
            }
            None => {
                set.insert(rep.clone());
            }
        },
        GRep::ReducibleConstituent { tau, central, .. } => {
            for sign in [Sign::Plus, Sign::Minus] {
                set.insert(GRep::ReducibleConstituent { tau: *tau, sign, central: *central });
            }
        }
        GRep::DepthZeroSC { sigma, .. } => {
            let sigmas = if sigma.is_special() {
                vec![FiniteCuspidal::special(Sign::Plus, fp), FiniteCuspidal::special(Sign::Minus, fp)]
            } else {
                vec![sigma.clone()]
            };
            for s in sigmas {
                for vertex in [Vertex::Zero, Vertex::One] {
                    set.insert(GRep::DepthZeroSC { vertex, sigma: s.clone() });
                }
            }
        }
        GRep::PositiveSC(phi) => {
            set.insert(rep.clone());
            set.insert(GRep::PositiveSC(packet_partner(phi, fp)));
        }
    }
    set.into_iter().collect()
}
