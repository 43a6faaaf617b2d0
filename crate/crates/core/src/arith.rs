//! Residue-field parameters, square classes of `k^x`, tame Hilbert symbols,
//! extended-real filtration indices and Moy-Prasad exponent matrices.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rational numbers used for depths, points of the apartment and indices.
pub type Rational = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"3"`, `"-1/2"` or `"0.5"` style rationals.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().ok()?;
        let d: i64 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(rat(n, d));
    }
    if let Some((w, frac)) = s.split_once('.') {
        let neg = w.trim_start().starts_with('-');
        let whole: i64 = if w.is_empty() || w == "-" { 0 } else { w.parse().ok()? };
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let num: i64 = frac.parse().ok()?;
        let f = rat(num, den);
        return Some(if neg { int(whole) - f } else { int(whole) + f });
    }
    s.parse::<i64>().ok().map(int)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Residue field data of the local field `k`.
///
/// Only odd residue characteristic is supported. The nonsquare unit `eps` is
/// an abstract label; when `-1` is not a square it is `-1` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    p: u64,
    f: u32,
    q: u64,
}

impl FieldParams {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::InvalidField("residue characteristic must be odd".into()));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidField("residue degree must be positive".into()));
        }
        let q = p
            .checked_pow(f)
            .ok_or_else(|| Error::InvalidField(format!("{p}^{f} overflows")))?;
        Ok(Self { p, f, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `true` iff `-1` is a square in `k`, i.e. `q = 1 mod 4`.
    pub fn minus_one_square(&self) -> bool {
        self.q % 4 == 1
    }

    /// When `-1` is a nonsquare the chosen nonsquare unit is `eps = -1`.
    pub fn eps_is_minus_one(&self) -> bool {
        !self.minus_one_square()
    }

    /// Square class of `-1` among the units.
    pub fn minus_one_class(&self) -> UnitClass {
        if self.minus_one_square() {
            UnitClass::One
        } else {
            UnitClass::Eps
        }
    }
}

/// A sign `+1` / `-1`, used for central values, symbols and constituents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn pow(self, e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            self
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Unit square classes `R^x / (R^x)^2 = {1, eps}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UnitClass {
    One,
    Eps,
}

impl UnitClass {
    /// Quadratic residue symbol of the residue of the unit.
    pub fn legendre(self) -> Sign {
        match self {
            UnitClass::One => Sign::Plus,
            UnitClass::Eps => Sign::Minus,
        }
    }

    pub fn other(self) -> Self {
        self * UnitClass::Eps
    }
}

impl Mul for UnitClass {
    type Output = UnitClass;
    fn mul(self, rhs: UnitClass) -> UnitClass {
        if self == rhs {
            UnitClass::One
        } else {
            UnitClass::Eps
        }
    }
}

impl fmt::Display for UnitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitClass::One => "1",
            UnitClass::Eps => "eps",
        })
    }
}

/// The four classes of `k^x / (k^x)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SquareClass {
    One,
    Eps,
    Pi,
    EpsPi,
}

impl SquareClass {
    pub const ALL: [SquareClass; 4] =
        [SquareClass::One, SquareClass::Eps, SquareClass::Pi, SquareClass::EpsPi];

    pub fn from_parts(odd_valuation: bool, unit: UnitClass) -> Self {
        match (odd_valuation, unit) {
            (false, UnitClass::One) => SquareClass::One,
            (false, UnitClass::Eps) => SquareClass::Eps,
            (true, UnitClass::One) => SquareClass::Pi,
            (true, UnitClass::Eps) => SquareClass::EpsPi,
        }
    }

    pub fn odd_valuation(self) -> bool {
        matches!(self, SquareClass::Pi | SquareClass::EpsPi)
    }

    pub fn unit(self) -> UnitClass {
        match self {
            SquareClass::One | SquareClass::Pi => UnitClass::One,
            SquareClass::Eps | SquareClass::EpsPi => UnitClass::Eps,
        }
    }

    /// Canonical representative `eps^a * pi^b` with `a, b` in `{0, 1}`.
    pub fn representative(self) -> KElem {
        KElem::new(self.odd_valuation() as i64, self.unit())
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;
    fn mul(self, rhs: SquareClass) -> SquareClass {
        SquareClass::from_parts(self.odd_valuation() ^ rhs.odd_valuation(), self.unit() * rhs.unit())
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SquareClass::One => "1",
            SquareClass::Eps => "eps",
            SquareClass::Pi => "pi",
            SquareClass::EpsPi => "eps*pi",
        })
    }
}

impl FromStr for SquareClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let e: KElem = s.parse()?;
        e.square_class()
    }
}

/// An element of `k` at square-class resolution: `unit * pi^valuation` with the
/// unit known modulo squares. Zero has no valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KElem {
    valuation: Option<i64>,
    unit: UnitClass,
}

impl KElem {
    pub fn new(valuation: i64, unit: UnitClass) -> Self {
        Self { valuation: Some(valuation), unit }
    }

    pub fn zero() -> Self {
        Self { valuation: None, unit: UnitClass::One }
    }

    pub fn one() -> Self {
        Self::new(0, UnitClass::One)
    }

    pub fn eps() -> Self {
        Self::new(0, UnitClass::Eps)
    }

    pub fn pi_pow(n: i64) -> Self {
        Self::new(n, UnitClass::One)
    }

    pub fn unit(class: UnitClass) -> Self {
        Self::new(0, class)
    }

    /// `-1`, whose class depends on the field.
    pub fn minus_one(fp: &FieldParams) -> Self {
        Self::unit(fp.minus_one_class())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn unit_class(&self) -> Option<UnitClass> {
        self.valuation.map(|_| self.unit)
    }

    pub fn square_class(&self) -> Result<SquareClass> {
        let v = self.valuation.ok_or(Error::ZeroElement)?;
        Ok(SquareClass::from_parts(v.is_odd(), self.unit))
    }

    pub fn is_square(&self) -> bool {
        matches!(self.square_class(), Ok(SquareClass::One))
    }

    pub fn neg(&self, fp: &FieldParams) -> Self {
        *self * KElem::minus_one(fp)
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation.ok_or(Error::ZeroElement)?;
        Ok(Self::new(-v, self.unit))
    }

    /// Multiplies by `pi^n`.
    pub fn shift(&self, n: i64) -> Self {
        match self.valuation {
            Some(v) => Self::new(v + n, self.unit),
            None => *self,
        }
    }

    /// The unit part `x * pi^{-val(x)}`.
    pub fn unit_part(&self) -> Result<Self> {
        let v = self.valuation.ok_or(Error::ZeroElement)?;
        Ok(self.shift(-v))
    }
}

impl Mul for KElem {
    type Output = KElem;
    fn mul(self, rhs: KElem) -> KElem {
        match (self.valuation, rhs.valuation) {
            (Some(a), Some(b)) => KElem::new(a + b, self.unit * rhs.unit),
            _ => KElem::zero(),
        }
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => f.write_str("0"),
            Some(0) => write!(f, "{}", self.unit),
            Some(v) => {
                if self.unit == UnitClass::Eps {
                    f.write_str("eps*")?;
                }
                if v == 1 {
                    f.write_str("pi")
                } else {
                    write!(f, "pi^{v}")
                }
            }
        }
    }
}

impl FromStr for KElem {
    type Err = Error;

    /// Accepts products of `1`, `eps`, `pi` and `pi^n`, e.g. `eps*pi^-1`.
    /// A leading `-` is rejected here because its class depends on the field;
    /// use [`KElem::parse_with`] for that.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('-') {
            return Err(Error::InvalidField(format!(
                "cannot resolve the sign of {s:?} without field parameters"
            )));
        }
        parse_kelem(s, None)
    }
}

impl KElem {
    /// Parses a k-element string, resolving a leading `-` through `fp`.
    pub fn parse_with(s: &str, fp: &FieldParams) -> Result<Self> {
        parse_kelem(s.trim(), Some(fp))
    }
}

fn parse_kelem(s: &str, fp: Option<&FieldParams>) -> Result<KElem> {
    let bad = || Error::InvalidField(format!("malformed k-element {s:?}"));
    if s == "0" {
        return Ok(KElem::zero());
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim()),
        None => (false, s),
    };
    let mut acc = KElem::one();
    for token in body.split('*').map(str::trim) {
        let factor = match token {
            "1" => KElem::one(),
            "eps" | "ε" => KElem::eps(),
            "pi" | "ϖ" => KElem::pi_pow(1),
            _ => {
                let exp = token
                    .strip_prefix("pi^")
                    .or_else(|| token.strip_prefix("ϖ^"))
                    .ok_or_else(bad)?;
                let exp = exp.trim_matches(|c| c == '(' || c == ')' || c == '{' || c == '}');
                KElem::pi_pow(exp.parse::<i64>().map_err(|_| bad())?)
            }
        };
        acc = acc * factor;
    }
    if negative {
        let fp = fp.ok_or_else(bad)?;
        acc = acc.neg(fp);
    }
    Ok(acc)
}

/// The 2-Hilbert symbol `(a, b)` on `k^x` by the tame formula for odd residue
/// characteristic:
/// `(a, b) = (-1)^{val a val b (q-1)/2} (u/p)^{val b} (v/p)^{val a}`.
pub fn hilbert_symbol(a: &KElem, b: &KElem, fp: &FieldParams) -> Result<Sign> {
    let (ca, cb) = (a.square_class()?, b.square_class()?);
    let (alpha, beta) = (ca.odd_valuation() as i64, cb.odd_valuation() as i64);
    let minus_one = fp.minus_one_class().legendre();
    Ok(minus_one.pow(alpha * beta) * ca.unit().legendre().pow(beta) * cb.unit().legendre().pow(alpha))
}

/// `sgn_tau(x) = (x, tau)` for a nontrivial square class `tau`.
pub fn hilbert_sgn(tau: SquareClass, x: &KElem, fp: &FieldParams) -> Result<Sign> {
    if tau == SquareClass::One {
        return Err(Error::TrivialTau);
    }
    hilbert_symbol(x, &tau.representative(), fp)
}

/// Extended reals `R ∪ (R+) ∪ {∞}` used as filtration indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtReal {
    Finite { value: Rational, plus: bool },
    Infinity,
}

impl ExtReal {
    pub fn new(value: Rational) -> Self {
        ExtReal::Finite { value, plus: false }
    }

    pub fn plus(value: Rational) -> Self {
        ExtReal::Finite { value, plus: true }
    }

    pub fn int(n: i64) -> Self {
        Self::new(int(n))
    }

    pub fn value(&self) -> Option<Rational> {
        match self {
            ExtReal::Finite { value, .. } => Some(*value),
            ExtReal::Infinity => None,
        }
    }

    pub fn is_plus(&self) -> bool {
        matches!(self, ExtReal::Finite { plus: true, .. })
    }

    /// `r + x` for a real shift `x`; the plus tag is carried along.
    pub fn shifted(&self, x: Rational) -> Self {
        match *self {
            ExtReal::Finite { value, plus } => ExtReal::Finite { value: value + x, plus },
            ExtReal::Infinity => ExtReal::Infinity,
        }
    }

    /// `⌈r⌉` for plain values and `⌈r+⌉` (least integer strictly above) for
    /// plus-tagged values.
    pub fn ceil_index(&self) -> Result<i64> {
        match *self {
            ExtReal::Infinity => Err(Error::UnboundedIndex),
            ExtReal::Finite { value, plus: false } => Ok(value.ceil().to_integer()),
            ExtReal::Finite { value, plus: true } => Ok(value.floor().to_integer() + 1),
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Infinity, ExtReal::Infinity) => Ordering::Equal,
            (ExtReal::Infinity, _) => Ordering::Greater,
            (_, ExtReal::Infinity) => Ordering::Less,
            (
                ExtReal::Finite { value: a, plus: pa },
                ExtReal::Finite { value: b, plus: pb },
            ) => a.cmp(b).then(pa.cmp(pb)),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Infinity => f.write_str("inf"),
            ExtReal::Finite { value, plus } => {
                write!(f, "{value}")?;
                if *plus {
                    f.write_str("+")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(ExtReal::Infinity);
        }
        let (body, plus) = match s.strip_suffix('+') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let value = parse_rational(body)
            .ok_or_else(|| Error::InvalidField(format!("malformed index {s:?}")))?;
        Ok(ExtReal::Finite { value, plus })
    }
}

/// A point of the standard apartment at which Moy-Prasad groups are taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BuildingPoint {
    /// A point `x` of the closed chamber `[0, 1]`.
    At(Rational),
    /// The open facet `(0, 1/2)`, whose group is the intersection of the
    /// groups at its points.
    HalfFacet,
}

/// Congruence exponents of a Moy-Prasad group
/// `[[1 + P^diag, P^upper], [P^lower, 1 + P^diag]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentMatrix {
    pub diag: i64,
    pub upper: i64,
    pub lower: i64,
}

impl ExponentMatrix {
    /// `(d1, u, l, d2)` with `d1 = d2`.
    pub fn as_tuple(&self) -> (i64, i64, i64, i64) {
        (self.diag, self.upper, self.lower, self.diag)
    }

    /// Entrywise `>=`, i.e. the group of `self` is contained in that of `other`.
    pub fn dominates(&self, other: &ExponentMatrix) -> bool {
        self.diag >= other.diag && self.upper >= other.upper && self.lower >= other.lower
    }

    fn max(self, other: ExponentMatrix) -> ExponentMatrix {
        ExponentMatrix {
            diag: self.diag.max(other.diag),
            upper: self.upper.max(other.upper),
            lower: self.lower.max(other.lower),
        }
    }
}

fn exponents_at(x: Rational, r: ExtReal) -> Result<ExponentMatrix> {
    Ok(ExponentMatrix {
        diag: r.ceil_index()?,
        upper: r.shifted(-x).ceil_index()?,
        lower: r.shifted(x).ceil_index()?,
    })
}

/// Exponents of `G_{x,r}` for `r > 0`.
pub fn filtration_exponents(point: BuildingPoint, r: ExtReal) -> Result<ExponentMatrix> {
    let value = r.value().ok_or(Error::UnboundedIndex)?;
    if value <= int(0) {
        return Err(Error::NonPositiveIndex(r.to_string()));
    }
    match point {
        BuildingPoint::At(x) => {
            if x < int(0) || x > int(1) {
                return Err(Error::PointOutOfRange(x.to_string()));
            }
            exponents_at(x, r)
        }
        BuildingPoint::HalfFacet => {
            // exponents are constant between consecutive breakpoints r ± x ∈ Z,
            // so sampling one point per open subinterval covers the facet
            let half = rat(1, 2);
            let mut cuts = vec![int(0), half];
            for k in (value - half).floor().to_integer()..=(value + half).ceil().to_integer() {
                for x in [value - int(k), int(k) - value] {
                    if x > int(0) && x < half {
                        cuts.push(x);
                    }
                }
            }
            cuts.sort();
            cuts.dedup();
            let mut acc: Option<ExponentMatrix> = None;
            for w in cuts.windows(2) {
                let e = exponents_at((w[0] + w[1]) / int(2), r)?;
                acc = Some(acc.map_or(e, |a| a.max(e)));
            }
            Ok(acc.expect("facet has at least one subinterval"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u64) -> FieldParams {
        FieldParams::new(p, 1).unwrap()
    }

    #[test]
    fn field_params_reject_even_and_composite() {
        assert!(FieldParams::new(2, 1).is_err());
        assert!(FieldParams::new(9, 1).is_err());
        assert!(FieldParams::new(3, 0).is_err());
        let f = FieldParams::new(3, 2).unwrap();
        assert_eq!(f.q(), 9);
        assert!(f.minus_one_square());
        assert!(!fp(7).minus_one_square());
        assert!(fp(7).eps_is_minus_one());
    }

    #[test]
    fn ceil_index_examples() {
        assert_eq!(ExtReal::new(rat(1, 2)).ceil_index().unwrap(), 1);
        assert_eq!(ExtReal::plus(int(1)).ceil_index().unwrap(), 2);
        assert_eq!(ExtReal::new(rat(-3, 2)).ceil_index().unwrap(), -1);
        assert_eq!(ExtReal::Infinity.ceil_index(), Err(Error::UnboundedIndex));
    }

    #[test]
    fn extreal_order() {
        let r = ExtReal::new(int(1));
        let rp = ExtReal::plus(int(1));
        let s = ExtReal::new(rat(101, 100));
        assert!(r < rp && rp < s && s < ExtReal::Infinity);
        assert_eq!("1/2+".parse::<ExtReal>().unwrap(), ExtReal::plus(rat(1, 2)));
    }

    #[test]
    fn hilbert_examples() {
        for p in [3, 5, 7] {
            let f = fp(p);
            assert_eq!(hilbert_sgn(SquareClass::Eps, &KElem::eps(), &f).unwrap(), Sign::Plus);
            assert_eq!(hilbert_sgn(SquareClass::Pi, &KElem::eps(), &f).unwrap(), Sign::Minus);
            for tau in [SquareClass::Eps, SquareClass::Pi, SquareClass::EpsPi] {
                for x in [KElem::eps(), KElem::pi_pow(3), KElem::new(-1, UnitClass::Eps)] {
                    let sq = x * x;
                    assert_eq!(hilbert_sgn(tau, &sq, &f).unwrap(), Sign::Plus);
                }
            }
        }
        assert_eq!(hilbert_sgn(SquareClass::One, &KElem::eps(), &fp(3)), Err(Error::TrivialTau));
        assert!(hilbert_sgn(SquareClass::Pi, &KElem::zero(), &fp(3)).is_err());
    }

    #[test]
    fn filtration_examples() {
        let e = filtration_exponents(BuildingPoint::At(int(0)), ExtReal::plus(int(1))).unwrap();
        assert_eq!(e.as_tuple(), (2, 2, 2, 2));
        let e = filtration_exponents(BuildingPoint::At(rat(1, 2)), ExtReal::new(rat(3, 4))).unwrap();
        assert_eq!(e.as_tuple(), (1, 1, 2, 1));
        let e = filtration_exponents(BuildingPoint::HalfFacet, ExtReal::new(rat(1, 2))).unwrap();
        assert_eq!(e.as_tuple(), (1, 1, 1, 1));
        assert!(filtration_exponents(BuildingPoint::At(int(0)), ExtReal::int(0)).is_err());
        assert!(filtration_exponents(BuildingPoint::At(int(2)), ExtReal::int(1)).is_err());
    }

    #[test]
    fn facet_exponents_closed_form() {
        for l2 in 1..12i64 {
            let ell = rat(l2, 2);
            let e = filtration_exponents(BuildingPoint::HalfFacet, ExtReal::new(ell)).unwrap();
            if l2 % 2 == 0 {
                let l = l2 / 2;
                assert_eq!(e.as_tuple(), (l, l, l + 1, l));
            } else {
                let l = (l2 + 1) / 2;
                assert_eq!(e.as_tuple(), (l, l, l, l));
            }
        }
    }

    #[test]
    fn kelem_parse_and_display() {
        let f = fp(3);
        let x: KElem = "eps*pi^-1".parse().unwrap();
        assert_eq!(x, KElem::new(-1, UnitClass::Eps));
        assert_eq!(x.to_string(), "eps*pi^-1");
        assert_eq!(KElem::parse_with("-pi", &f).unwrap(), KElem::new(1, UnitClass::Eps));
        assert_eq!(KElem::parse_with("-1", &fp(5)).unwrap(), KElem::one());
        assert!("-1".parse::<KElem>().is_err());
        assert!("pie".parse::<KElem>().is_err());
        assert!("0".parse::<KElem>().unwrap().is_zero());
    }

    fn arb_elem() -> impl Strategy<Value = KElem> {
        (-6i64..6, any::<bool>())
            .prop_map(|(v, e)| KElem::new(v, if e { UnitClass::Eps } else { UnitClass::One }))
    }

    fn arb_ext() -> impl Strategy<Value = ExtReal> {
        (-20i64..20, 1i64..5, any::<bool>()).prop_map(|(n, d, plus)| ExtReal::Finite {
            value: rat(n, d),
            plus,
        })
    }

    proptest! {
        #[test]
        fn hilbert_symmetric_and_bimultiplicative(
            a in arb_elem(), b in arb_elem(), c in arb_elem(), p in prop::sample::select(vec![3u64, 5, 7, 13])
        ) {
            let f = fp(p);
            let h = |x: &KElem, y: &KElem| hilbert_symbol(x, y, &f).unwrap();
            prop_assert_eq!(h(&a, &b), h(&b, &a));
            prop_assert_eq!(h(&(a * c), &b), h(&a, &b) * h(&c, &b));
        }

        #[test]
        fn ceil_index_monotone(a in arb_ext(), b in arb_ext()) {
            if a <= b {
                prop_assert!(a.ceil_index().unwrap() <= b.ceil_index().unwrap());
            }
        }

        #[test]
        fn plus_bumps_exactly_at_integers(n in -20i64..20, d in 1i64..5) {
            let v = rat(n, d);
            let plain = ExtReal::new(v).ceil_index().unwrap();
            let plus = ExtReal::plus(v).ceil_index().unwrap();
            prop_assert_eq!(plus == plain + 1, v.is_integer());
            prop_assert!(plus == plain || plus == plain + 1);
        }

        #[test]
        fn filtration_antitone(
            x in prop::sample::select(vec![rat(0, 1), rat(1, 2), rat(1, 1)]),
            a in 1i64..24, b in 1i64..24, pa in any::<bool>(), pb in any::<bool>()
        ) {
            let ra = ExtReal::Finite { value: rat(a, 4), plus: pa };
            let rb = ExtReal::Finite { value: rat(b, 4), plus: pb };
            let (hi, lo) = if ra >= rb { (ra, rb) } else { (rb, ra) };
            for point in [BuildingPoint::At(x), BuildingPoint::HalfFacet] {
                let eh = filtration_exponents(point, hi).unwrap();
                let el = filtration_exponents(point, lo).unwrap();
                prop_assert!(eh.dominates(&el));
                prop_assert!(eh.diag >= 0 && eh.upper >= 0 && eh.lower >= 0);
            }
        }
    }
}
