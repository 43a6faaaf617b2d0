//! Truncated branching series `Res_K π` and the generator for every class of
//! irreducible representation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{int, FieldParams, KElem, Rational, Sign, SquareClass, UnitClass};
use crate::error::{Error, Result};
use crate::grep::{CharKx, CharT, GRep, UnitRestriction, Vertex};
use crate::ktype::{KType, LeadingKind, PhiLabel, XParam};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub ktype: KType,
    pub multiplicity: u32,
}

/// `Res_K π` truncated to components of depth at most `max_depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingSeries {
    pub source: GRep,
    pub field: FieldParams,
    pub max_depth: Rational,
    pub entries: Vec<Entry>,
}

impl BranchingSeries {
    pub fn per_depth(&self) -> BTreeMap<u32, Vec<&Entry>> {
        let mut map: BTreeMap<u32, Vec<&Entry>> = BTreeMap::new();
        for e in &self.entries {
            map.entry(e.ktype.depth()).or_default().push(e);
        }
        map
    }

    pub fn at_depth(&self, d: u32) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(move |e| e.ktype.depth() == d)
    }

    /// Number of irreducible components (with multiplicity) at depth `d`.
    pub fn count_at(&self, d: u32) -> u32 {
        self.at_depth(d).map(|e| e.multiplicity).sum()
    }

    pub fn min_depth(&self) -> Option<u32> {
        self.entries.iter().map(|e| e.ktype.depth()).min()
    }

    /// Sum of `multiplicity * degree` over entries of depth `< n`.
    pub fn degree_below(&self, n: u32) -> Result<u128> {
        self.entries
            .iter()
            .filter(|e| e.ktype.depth() < n)
            .try_fold(0u128, |acc, e| {
                e.ktype
                    .degree(&self.field)
                    .checked_mul(e.multiplicity as u128)
                    .and_then(|d| acc.checked_add(d))
                    .ok_or(Error::DegreeOverflow)
            })
    }

    pub fn total_degree(&self) -> Result<u128> {
        self.degree_below(u32::MAX)
    }

    /// The sub-series of entries with depth at most `d`.
    pub fn truncate(&self, d: Rational) -> BranchingSeries {
        BranchingSeries {
            source: self.source.clone(),
            field: self.field,
            max_depth: d.min(self.max_depth),
            entries: self
                .entries
                .iter()
                .filter(|e| int(e.ktype.depth() as i64) <= d)
                .cloned()
                .collect(),
        }
    }
}

/// The components of least depth.
pub fn leading_term(s: &BranchingSeries) -> Result<Vec<KType>> {
    let d = s.min_depth().ok_or(Error::EmptySeries)?;
    Ok(s.at_depth(d).map(|e| e.ktype.clone()).collect())
}

/// Builds the series, dropping entries deeper than `max_depth` and replacing
/// Shalika data of depth `> 2r` by its tail normal form.
struct Builder<'a> {
    fp: &'a FieldParams,
    max: Rational,
    tail_above: Rational,
    central: Sign,
    entries: Vec<Entry>,
}

impl<'a> Builder<'a> {
    fn fits(&self, d: u32) -> bool {
        int(d as i64) <= self.max
    }

    fn push(&mut self, ktype: KType) {
        if self.fits(ktype.depth()) {
            self.entries.push(Entry { ktype, multiplicity: 1 });
        }
    }

    fn shalika(&mut self, depth: u32, phi: PhiLabel, x: XParam) {
        let (phi, x) = if int(depth as i64) > self.tail_above {
            let x = match x.tail_class(depth) {
                Some(c) => XParam::split(c),
                None => x,
            };
            (PhiLabel::Central(self.central), x)
        } else {
            (phi, x)
        };
        self.push(KType::Shalika { depth, phi, x });
    }

    /// Highest integer depth that can still be emitted.
    fn top(&self) -> u32 {
        self.max.floor().to_integer().max(0) as u32
    }
}

fn ensure_degree_range(max: Rational, fp: &FieldParams) -> Result<()> {
    let top = max.floor().to_integer().max(0);
    let top = u32::try_from(top).map_err(|_| Error::DegreeOverflow)?;
    (fp.q() as u128).checked_pow(top + 2).map(|_| ()).ok_or(Error::DegreeOverflow)
}

/// `Res_K rep` truncated at depth `max_depth`.
pub fn branch(rep: &GRep, max_depth: Rational, fp: &FieldParams) -> Result<BranchingSeries> {
    let depth = rep.depth();
    if max_depth < depth {
        return Err(Error::TruncationBelowDepth {
            max_depth: max_depth.to_string(),
            depth: depth.to_string(),
        });
    }
    ensure_degree_range(max_depth, fp)?;
    let mut b = Builder {
        fp,
        max: max_depth,
        tail_above: depth * int(2),
        central: rep.central_character(),
        entries: Vec::new(),
    };
    match rep {
        GRep::PrincipalSeries(chi) if chi.sgn_tau.is_some() => {
            // the full reducible series, both constituents
            let tau = chi.sgn_tau.expect("checked");
            reducible(&mut b, tau, Sign::Plus);
            reducible(&mut b, tau, Sign::Minus);
        }
        GRep::PrincipalSeries(chi) if chi.depth == 0 => depth_zero_ps(&mut b, chi),
        GRep::PrincipalSeries(chi) => positive_ps(&mut b, chi),
        GRep::ReducibleConstituent { tau, sign, .. } => reducible(&mut b, *tau, *sign),
        GRep::DepthZeroSC { vertex, sigma } => {
            if *vertex == Vertex::Zero {
                b.push(KType::FiniteCuspidal(sigma.clone()));
            }
            let theta = PhiLabel::Central(sigma.central);
            let classes = match sigma.special_sign() {
                Some(Sign::Plus) => vec![fp.minus_one_class()],
                Some(Sign::Minus) => vec![fp.minus_one_class() * UnitClass::Eps],
                None => vec![UnitClass::One, UnitClass::Eps],
            };
            let mut d = if *vertex == Vertex::Zero { 2 } else { 1 };
            while b.fits(d) {
                for &c in &classes {
                    b.shalika(d, theta.clone(), XParam::split(c));
                }
                d += 2;
            }
        }
        GRep::PositiveSC(phi) if phi.torus.is_ramified() => ramified_sc(&mut b, phi)?,
        GRep::PositiveSC(phi) => unramified_sc(&mut b, phi)?,
    }
    Ok(BranchingSeries { source: rep.clone(), field: *fp, max_depth, entries: b.entries })
}

fn depth_zero_ps(b: &mut Builder, chi: &CharKx) {
    match &chi.unit_restriction {
        UnitRestriction::Trivial => {
            b.push(KType::Trivial);
            b.push(KType::Steinberg);
        }
        UnitRestriction::Sgn => {
            b.push(KType::XiSgn(Sign::Plus));
            b.push(KType::XiSgn(Sign::Minus));
        }
        UnitRestriction::Other(_) => {
            b.push(KType::FinitePS { label: chi.label.clone(), central: chi.central })
        }
    }
    let phi = PhiLabel::Named { name: chi.label.clone(), central: chi.central };
    for t in 1..=b.top() {
        for c in [UnitClass::One, UnitClass::Eps] {
            b.shalika(t, phi.clone(), XParam::split(c));
        }
    }
}

/// Which row of the reducible display applies to `τ`.
enum ReducibleCase {
    Eps,
    MinusPi,
    MinusEpsPi,
}

fn reducible_case(tau: SquareClass, fp: &FieldParams) -> ReducibleCase {
    match tau {
        SquareClass::Eps | SquareClass::One => ReducibleCase::Eps,
        // -ϖ ≡ ϖ iff -1 is a square; otherwise -ϖ ≡ εϖ
        SquareClass::Pi if fp.minus_one_square() => ReducibleCase::MinusPi,
        SquareClass::Pi => ReducibleCase::MinusEpsPi,
        SquareClass::EpsPi if fp.minus_one_square() => ReducibleCase::MinusEpsPi,
        SquareClass::EpsPi => ReducibleCase::MinusPi,
    }
}

fn reducible(b: &mut Builder, tau: SquareClass, sign: Sign) {
    let diamond = if b.fp.minus_one_square() { Sign::Minus } else { Sign::Plus };
    let plus = sign == Sign::Plus;
    let theta = PhiLabel::Central(b.central);
    let top = b.top();
    match reducible_case(tau, b.fp) {
        ReducibleCase::Eps => {
            b.push(if plus { KType::Trivial } else { KType::Steinberg });
            let parity = if plus { 0 } else { 1 };
            for d in (1..=top).filter(|d| d % 2 == parity) {
                for c in [UnitClass::One, UnitClass::Eps] {
                    b.shalika(d, theta.clone(), XParam::split(c));
                }
            }
        }
        ReducibleCase::MinusPi => {
            b.push(KType::XiSgn(if plus { diamond } else { -diamond }));
            let c = if plus { UnitClass::One } else { UnitClass::Eps };
            for d in 1..=top {
                b.shalika(d, theta.clone(), XParam::split(c));
            }
        }
        ReducibleCase::MinusEpsPi => {
            b.push(KType::XiSgn(if plus { diamond } else { -diamond }));
            for d in 1..=top {
                let odd_class = if d % 2 == 1 { UnitClass::Eps } else { UnitClass::One };
                let c = if plus { odd_class } else { odd_class.other() };
                b.shalika(d, theta.clone(), XParam::split(c));
            }
        }
    }
}

fn positive_ps(b: &mut Builder, chi: &CharKx) {
    let r = chi.depth;
    let q = b.fp.q() as u128;
    b.push(KType::Leading {
        kind: LeadingKind::PrincipalSeries { label: chi.label.clone() },
        depth: r,
        degree: (q + 1) * q.pow(r),
        central: chi.central,
    });
    let top = b.top();
    for d in (r + 1)..=top {
        let t = (d - r) as i64;
        // u0 = λϖ^t, u1 = ε^-1 u0; u0² ≡ ϖ^{2t}, εu1² ≡ εϖ^{2t}
        let x0 = XParam::new(KElem::one(), KElem::pi_pow(2 * t)).expect("valid");
        let x1 = XParam::new(KElem::eps(), KElem::new(2 * t, UnitClass::Eps)).expect("valid");
        let lam = chi.lambda;
        let name0 = format!("{}_({}*pi^{t})", chi.label, lam);
        let name1 = format!("{}_({}*pi^{t})", chi.label, lam * UnitClass::Eps);
        b.shalika(d, PhiLabel::Named { name: name0, central: chi.central }, x0);
        b.shalika(d, PhiLabel::Named { name: name1, central: chi.central }, x1);
    }
}

fn integer_depth(r: Rational) -> Result<u32> {
    if !r.is_integer() || r < int(0) {
        return Err(Error::DepthParity(format!("expected a non-negative integer depth, got {r}")));
    }
    u32::try_from(r.to_integer()).map_err(|_| Error::DegreeOverflow)
}

fn unramified_sc(b: &mut Builder, phi: &CharT) -> Result<()> {
    let r = integer_depth(phi.depth)?;
    let y = integer_depth(phi.torus.y)?;
    let s = KElem::unit(phi.unit_scalar());
    let q = b.fp.q() as u128;
    let central = phi.central;
    let named = |suffix: String| PhiLabel::Named { name: format!("{}^({suffix})", phi.label), central };
    if y == 0 {
        b.push(KType::Leading {
            kind: LeadingKind::UnramifiedSupercuspidal { label: phi.label.clone() },
            depth: r,
            degree: (q - 1) * q.pow(r),
            central,
        });
    }
    let e_suffix = if y == 0 { "E" } else { "E^eta" };
    let first_t = if y == 0 { 1 } else { 0 };
    let mut t = first_t;
    loop {
        let d = r + 2 * t + y;
        if !b.fits(d) {
            break;
        }
        let n = 4 * t as i64 + 2 * y as i64;
        let x1 = XParam::new(s, s * KElem::new(n, UnitClass::Eps))?;
        let xe = XParam::new(s * KElem::eps(), s * KElem::pi_pow(n))?;
        b.shalika(d, named(format!("alpha^{t}")), x1);
        b.shalika(d, named(format!("alpha^{t}{e_suffix}")), xe);
        t += 1;
    }
    Ok(())
}

fn ramified_sc(b: &mut Builder, phi: &CharT) -> Result<()> {
    let lowest = phi.depth + crate::arith::rat(1, 2);
    let lowest = integer_depth(lowest)?;
    let s = KElem::unit(phi.unit_scalar());
    let (g1, g2) = (phi.torus.std_gamma1(), phi.torus.std_gamma2());
    let central = phi.central;
    let mut d = lowest;
    while b.fits(d) {
        let m = (d - lowest) as i64;
        let (label, x) = if m % 2 == 0 {
            let t = m / 2;
            let label = if t == 0 { phi.label.clone() } else { format!("{}^(alpha^{t})", phi.label) };
            (label, XParam::new(s * g1, s * g2 * KElem::pi_pow(2 * m))?)
        } else {
            let t = (m + 1) / 2;
            let u = (s * g2 * KElem::pi_pow(-1)).neg(b.fp);
            let v = (s * g1 * KElem::pi_pow(4 * t - 1)).neg(b.fp);
            (format!("{}^(alpha^{t}w)", phi.label), XParam::new(u, v)?)
        };
        b.shalika(d, PhiLabel::Named { name: label, central }, x);
        d += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::grep::{make_positive_sc, make_reducible_constituent, FiniteCuspidal};
    use crate::ktype::shalika_degree;
    use crate::tori::{StandardTorus, TorusDesc};

    fn fp(p: u64) -> FieldParams {
        FieldParams::new(p, 1).unwrap()
    }

    fn split(c: UnitClass) -> XParam {
        XParam::split(c)
    }

    fn sc(std: StandardTorus, r: Rational, a: KElem) -> GRep {
        let t = TorusDesc::standard(std);
        make_positive_sc(&t, CharT { torus: t, depth: r, a_coeff: a, central: Sign::Plus, label: "phi".into() })
            .unwrap()
    }

    #[test]
    fn special_vertex_zero_example() {
        let f = fp(3);
        let rep = GRep::DepthZeroSC { vertex: Vertex::Zero, sigma: FiniteCuspidal::special(Sign::Plus, &f) };
        let s = branch(&rep, int(4), &f).unwrap();
        let theta = PhiLabel::Central(Sign::Plus);
        // -1 is a nonsquare mod 3, so u+ = ε
        let expect = vec![
            KType::FiniteCuspidal(FiniteCuspidal::special(Sign::Plus, &f)),
            KType::Shalika { depth: 2, phi: theta.clone(), x: split(UnitClass::Eps) },
            KType::Shalika { depth: 4, phi: theta, x: split(UnitClass::Eps) },
        ];
        let got: Vec<_> = s.entries.iter().map(|e| e.ktype.clone()).collect();
        assert_eq!(got, expect);
        let degrees: Vec<_> = got.iter().map(|k| k.degree(&f)).collect();
        assert_eq!(degrees, vec![1, 12, 108]);
    }

    #[test]
    fn depth_zero_ps_example() {
        let f = fp(3);
        let chi = CharKx::new(0, UnitRestriction::Other("w".into()), UnitClass::One, Sign::Plus, "chi", &f).unwrap();
        let s = branch(&GRep::PrincipalSeries(chi), int(2), &f).unwrap();
        assert_eq!(s.entries.len(), 5);
        assert_eq!(s.total_degree().unwrap(), 36);
        assert_eq!(s.degree_below(2).unwrap(), 12);
    }

    #[test]
    fn ramified_example() {
        let f = fp(3);
        let rep = sc(StandardTorus::Pi, rat(1, 2), KElem::pi_pow(-1));
        let s = branch(&rep, int(3), &f).unwrap();
        let got: Vec<_> = s.entries.iter().map(|e| e.ktype.clone()).collect();
        assert_eq!(got.len(), 3);
        // depth 1 = 2r: untouched by tail normalisation
        assert_eq!(
            got[0],
            KType::Shalika {
                depth: 1,
                phi: PhiLabel::Named { name: "phi".into(), central: Sign::Plus },
                x: XParam::new(KElem::one(), KElem::pi_pow(1)).unwrap(),
            }
        );
        // X_{-1,-ϖ³} with -1 ≡ ε, reduced at depth 2
        assert_eq!(got[1], KType::Shalika { depth: 2, phi: PhiLabel::Central(Sign::Plus), x: split(UnitClass::Eps) });
        assert_eq!(got[2], KType::Shalika { depth: 3, phi: PhiLabel::Central(Sign::Plus), x: split(UnitClass::One) });
    }

    #[test]
    fn unramified_example() {
        let f = fp(3);
        let rep = sc(StandardTorus::Unramified0, int(1), KElem::pi_pow(-1));
        let s = branch(&rep, int(5), &f).unwrap();
        let depths: Vec<_> = s.entries.iter().map(|e| e.ktype.depth()).collect();
        assert_eq!(depths, vec![1, 3, 3, 5, 5]);
        assert_eq!(s.entries[0].ktype.degree(&f), 6);
        let y1 = sc(StandardTorus::Unramified1, int(1), KElem::pi_pow(-1));
        let s1 = branch(&y1, int(5), &f).unwrap();
        let depths: Vec<_> = s1.entries.iter().map(|e| e.ktype.depth()).collect();
        assert_eq!(depths, vec![2, 2, 4, 4]);
    }

    #[test]
    fn unramified_leading_before_tail() {
        let f = fp(5);
        let rep = sc(StandardTorus::Unramified0, int(4), KElem::pi_pow(-4));
        let s = branch(&rep, int(8), &f).unwrap();
        // depth 6 ≤ 2r keeps full Shalika data
        let six: Vec<_> = s.at_depth(6).collect();
        assert!(six.iter().all(|e| matches!(
            &e.ktype,
            KType::Shalika { phi: PhiLabel::Named { .. }, x, .. } if !x.v.is_zero()
        )));
        let eight: Vec<_> = s.at_depth(8).collect();
        assert_eq!(eight.len(), 2);
        assert_eq!(s.entries[0].ktype.degree(&f), 4 * 625);
    }

    #[test]
    fn reducible_constituents_complement() {
        for p in [3, 5, 7, 13] {
            let f = fp(p);
            for tau in [SquareClass::Eps, SquareClass::Pi, SquareClass::EpsPi] {
                let plus = make_reducible_constituent(tau, Sign::Plus, &f).unwrap();
                let minus = make_reducible_constituent(tau, Sign::Minus, &f).unwrap();
                let a = branch(&plus, int(5), &f).unwrap();
                let b = branch(&minus, int(5), &f).unwrap();
                for d in 0..=5 {
                    assert_eq!(a.count_at(d) + b.count_at(d), 2, "p={p} tau={tau} d={d}");
                }
                let full = a.total_degree().unwrap() + b.total_degree().unwrap();
                let q = p as u128;
                assert_eq!(full, q.pow(5) * (q + 1));
            }
        }
    }

    #[test]
    fn truncation_errors_and_coherence() {
        let f = fp(3);
        let rep = sc(StandardTorus::EpsPi, rat(3, 2), KElem::pi_pow(-2));
        assert!(matches!(branch(&rep, int(1), &f), Err(Error::TruncationBelowDepth { .. })));
        let long = branch(&rep, int(7), &f).unwrap();
        let short = branch(&rep, int(4), &f).unwrap();
        assert_eq!(long.truncate(int(4)), short);
        assert_eq!(leading_term(&short).unwrap().len(), 1);
        let s = shalika_degree(2, &f);
        assert_eq!(leading_term(&short).unwrap()[0].degree(&f), s);
    }

    #[test]
    fn overflow_guard() {
        let f = fp(7);
        let chi = CharKx::new(1, UnitRestriction::Trivial, UnitClass::One, Sign::Plus, "chi", &f).unwrap();
        assert!(matches!(branch(&GRep::PrincipalSeries(chi), int(60), &f), Err(Error::DegreeOverflow)));
    }
}
