//! Irreducible representations of `K = SL2(R)` that occur in branching rules:
//! inflations from `SL2(F_q)`, Shalika's ramified representations
//! `S_d(φ, X_{u,v})` and opaque leading terms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{FieldParams, KElem, Sign, UnitClass};
use crate::error::{Error, Result};
use crate::grep::FiniteCuspidal;

/// The antidiagonal element `X_{u,v} = [[0, u], [v, 0]]` with
/// `val(v) > val(u) = 0`; `v` may be zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XParam {
    pub u: KElem,
    pub v: KElem,
}

impl XParam {
    pub fn new(u: KElem, v: KElem) -> Result<Self> {
        if u.valuation() != Some(0) {
            return Err(Error::InvalidShalika(format!("val(u) must be 0, got u = {u}")));
        }
        if let Some(val) = v.valuation() {
            if val <= 0 {
                return Err(Error::InvalidShalika(format!("val(v) must be positive, got v = {v}")));
            }
        }
        Ok(Self { u, v })
    }

    /// `X_{u,0}` with `u` in `{1, ε}`.
    pub fn split(class: UnitClass) -> Self {
        Self { u: KElem::unit(class), v: KElem::zero() }
    }

    pub fn u_class(&self) -> UnitClass {
        self.u.unit_class().expect("u is a unit")
    }

    /// Least `val(v)` for which `X_{u,v} ≡ X_{u,0}` modulo the lattice
    /// `g_{[0,1/2],d/2}` (upper `P^⌈d/2⌉`, lower `P^{⌊d/2⌋+1}`).
    pub fn reduction_threshold(depth: u32) -> i64 {
        (depth / 2) as i64 + 1
    }

    /// Drops `v` when it lies in the lattice at this depth.
    pub fn reduce(&self, depth: u32) -> Self {
        match self.v.valuation() {
            Some(val) if val >= Self::reduction_threshold(depth) => {
                Self { u: self.u, v: KElem::zero() }
            }
            _ => *self,
        }
    }

    /// The class `u mod (R^x)^2` when `X` reduces to a split `X_{u,0}`.
    pub fn tail_class(&self, depth: u32) -> Option<UnitClass> {
        let r = self.reduce(depth);
        r.v.is_zero().then(|| r.u_class())
    }
}

impl fmt::Display for XParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({},{})", self.u, self.v)
    }
}

/// The character `φ` of `C(X)`: either given by the central character alone
/// or an opaque label (e.g. `φ^{α^t E}`) together with `φ(-I)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhiLabel {
    Central(Sign),
    Named { name: String, central: Sign },
}

impl PhiLabel {
    pub fn central(&self) -> Sign {
        match self {
            PhiLabel::Central(s) => *s,
            PhiLabel::Named { central, .. } => *central,
        }
    }
}

impl fmt::Display for PhiLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiLabel::Central(s) => write!(f, "theta{s}"),
            PhiLabel::Named { name, .. } => f.write_str(name),
        }
    }
}

/// What an opaque leading term comes from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LeadingKind {
    /// `(Ind_P^G χ)^{G_{0,r+}}`
    PrincipalSeries { label: String },
    /// `Ind_{T G_{0,s}}^K ρ`
    UnramifiedSupercuspidal { label: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KType {
    Trivial,
    Steinberg,
    /// `Ξ_sgn^±`, the halves of the finite principal series of `sgn`.
    XiSgn(Sign),
    /// Irreducible `(q+1)`-dimensional principal series of `SL2(F_q)`.
    FinitePS { label: String, central: Sign },
    FiniteCuspidal(FiniteCuspidal),
    Shalika { depth: u32, phi: PhiLabel, x: XParam },
    Leading { kind: LeadingKind, depth: u32, degree: u128, central: Sign },
}

impl KType {
    pub fn depth(&self) -> u32 {
        match self {
            KType::Shalika { depth, .. } | KType::Leading { depth, .. } => *depth,
            _ => 0,
        }
    }

    pub fn degree(&self, fp: &FieldParams) -> u128 {
        let q = fp.q() as u128;
        match self {
            KType::Trivial => 1,
            KType::Steinberg => q,
            KType::XiSgn(_) => (q + 1) / 2,
            KType::FinitePS { .. } => q + 1,
            KType::FiniteCuspidal(c) if c.is_special() => (q - 1) / 2,
            KType::FiniteCuspidal(_) => q - 1,
            KType::Shalika { depth, .. } => shalika_degree(*depth, fp),
            KType::Leading { degree, .. } => *degree,
        }
    }

    pub fn central(&self, fp: &FieldParams) -> Sign {
        match self {
            KType::Trivial | KType::Steinberg => Sign::Plus,
            KType::XiSgn(_) => fp.minus_one_class().legendre(),
            KType::FinitePS { central, .. } | KType::Leading { central, .. } => *central,
            KType::FiniteCuspidal(c) => c.central,
            KType::Shalika { phi, .. } => phi.central(),
        }
    }

    pub fn is_shalika(&self) -> bool {
        matches!(self, KType::Shalika { .. })
    }

    /// `(φ, X)` for Shalika types.
    pub fn shalika_data(&self) -> Option<(&PhiLabel, &XParam)> {
        match self {
            KType::Shalika { phi, x, .. } => Some((phi, x)),
            _ => None,
        }
    }
}

impl fmt::Display for KType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KType::Trivial => f.write_str("1"),
            KType::Steinberg => f.write_str("St"),
            KType::XiSgn(s) => write!(f, "Xi_sgn{s}"),
            KType::FinitePS { label, .. } => write!(f, "PS({label})"),
            KType::FiniteCuspidal(c) => write!(f, "{c}"),
            KType::Shalika { depth, phi, x } => write!(f, "S_{depth}({phi}, {x})"),
            KType::Leading { kind: LeadingKind::PrincipalSeries { label }, depth, .. } => {
                write!(f, "Ind^(K_{})({label})", depth + 1)
            }
            KType::Leading { kind: LeadingKind::UnramifiedSupercuspidal { label }, .. } => {
                write!(f, "Ind_TG^K rho[{label}]")
            }
        }
    }
}

/// `½ q^{d-1} (q² - 1)`.
pub fn shalika_degree(depth: u32, fp: &FieldParams) -> u128 {
    let q = fp.q() as u128;
    q.pow(depth.saturating_sub(1)) * (q * q - 1) / 2
}

pub fn make_shalika(depth: u32, phi: PhiLabel, x: XParam, _fp: &FieldParams) -> Result<KType> {
    if depth == 0 {
        return Err(Error::InvalidShalika("depth must be at least 1".into()));
    }
    let x = XParam::new(x.u, x.v)?;
    Ok(KType::Shalika { depth, phi, x })
}

pub fn degree(t: &KType, fp: &FieldParams) -> u128 {
    t.degree(fp)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassVerdict {
    Equivalent,
    Inequivalent,
    Unknown,
}

/// Decides equivalence of two `K`-types as far as the symbolic data allows.
pub fn same_class(a: &KType, b: &KType, fp: &FieldParams) -> ClassVerdict {
    if a.depth() != b.depth() || a.degree(fp) != b.degree(fp) || a.central(fp) != b.central(fp) {
        return ClassVerdict::Inequivalent;
    }
    match (a, b) {
        (
            KType::Shalika { depth, phi: pa, x: xa },
            KType::Shalika { phi: pb, x: xb, .. },
        ) => match (xa.tail_class(*depth), xb.tail_class(*depth)) {
            (Some(ca), Some(cb)) if ca != cb => ClassVerdict::Inequivalent,
            (Some(_), Some(_)) if pa == pb => ClassVerdict::Equivalent,
            // same split X, different characters of C(X)
            (Some(_), Some(_)) => ClassVerdict::Inequivalent,
            _ if xa == xb && pa == pb => ClassVerdict::Equivalent,
            _ => ClassVerdict::Unknown,
        },
        (KType::Leading { .. }, _) | (_, KType::Leading { .. }) => {
            if a == b {
                ClassVerdict::Equivalent
            } else {
                ClassVerdict::Unknown
            }
        }
        (KType::Shalika { .. }, _) | (_, KType::Shalika { .. }) => ClassVerdict::Inequivalent,
        _ if a == b => ClassVerdict::Equivalent,
        _ => ClassVerdict::Inequivalent,
    }
}
