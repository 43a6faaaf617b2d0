//! Tail ends: the components of depth `> 2r`, which only see the central
//! character and a square class, and the comparisons built on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{int, FieldParams, Rational, Sign, SquareClass, UnitClass};
use crate::error::{Error, Result};
use crate::grep::{GRep, RepClass};
use crate::ktype::{KType, PhiLabel, XParam};

use super::series::{branch, BranchingSeries};

/// Which split parameters `X_{z,0}` occur at each depth of the tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TailPattern {
    /// `X_{1,0}` and `X_{ε,0}` at every depth.
    BothClassesEveryDepth,
    /// `X_{1,0}` and `X_{ε,0}` at depths `≡ parity (mod 2)` only.
    BothClassesAlternateDepth { parity: u32 },
    /// `X_{z,0}` at every depth.
    SingleClass { z: UnitClass },
    /// `X_{z(d),0}` at every depth, `z` depending on the parity of `d`.
    ParityFunction { z_even: UnitClass, z_odd: UnitClass },
    /// `X_{z,0}` at depths `≡ parity (mod 2)` only.
    SingleClassAlternateDepth { z: UnitClass, parity: u32 },
}

impl TailPattern {
    /// The classes `z` with `S_d(ϑ, X_{z,0})` in the tail at depth `d`.
    pub fn classes_at(&self, d: u32) -> Vec<UnitClass> {
        let both = vec![UnitClass::One, UnitClass::Eps];
        match *self {
            TailPattern::BothClassesEveryDepth => both,
            TailPattern::BothClassesAlternateDepth { parity } if d % 2 == parity => both,
            TailPattern::SingleClass { z } => vec![z],
            TailPattern::ParityFunction { z_even, z_odd } => {
                vec![if d % 2 == 0 { z_even } else { z_odd }]
            }
            TailPattern::SingleClassAlternateDepth { z, parity } if d % 2 == parity => vec![z],
            _ => vec![],
        }
    }
}

impl fmt::Display for TailPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailPattern::BothClassesEveryDepth => f.write_str("both classes at every depth"),
            TailPattern::BothClassesAlternateDepth { parity } => {
                write!(f, "both classes at depths = {parity} mod 2")
            }
            TailPattern::SingleClass { z } => write!(f, "single class {z} at every depth"),
            TailPattern::ParityFunction { z_even, z_odd } => {
                write!(f, "class {z_even} at even depths, {z_odd} at odd depths")
            }
            TailPattern::SingleClassAlternateDepth { z, parity } => {
                write!(f, "single class {z} at depths = {parity} mod 2")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailDescriptor {
    pub central: Sign,
    pub pattern: TailPattern,
    /// First depth `> 2r` carrying a tail component.
    pub start_depth: Rational,
}

/// The tail pattern of `rep`, read off from its defining data.
pub fn tail_pattern(rep: &GRep, fp: &FieldParams) -> TailPattern {
    match rep {
        GRep::PrincipalSeries(chi) => match chi.sgn_tau {
            None => TailPattern::BothClassesEveryDepth,
            // the whole reducible series: both constituents together
            Some(_) => TailPattern::BothClassesEveryDepth,
        },
        GRep::ReducibleConstituent { tau, sign, .. } => {
            let plus = *sign == Sign::Plus;
            let minus_pi = match tau {
                SquareClass::Pi => Some(fp.minus_one_square()),
                SquareClass::EpsPi => Some(!fp.minus_one_square()),
                _ => None,
            };
            match minus_pi {
                None => TailPattern::BothClassesAlternateDepth { parity: if plus { 0 } else { 1 } },
                Some(true) => TailPattern::SingleClass { z: if plus { UnitClass::One } else { UnitClass::Eps } },
                Some(false) => {
                    let (z_even, z_odd) = (UnitClass::One, UnitClass::Eps);
                    if plus {
                        TailPattern::ParityFunction { z_even, z_odd }
                    } else {
                        TailPattern::ParityFunction { z_even: z_odd, z_odd: z_even }
                    }
                }
            }
        }
        GRep::DepthZeroSC { vertex, sigma } => {
            let parity = vertex.index();
            match sigma.special_sign() {
                Some(Sign::Plus) => TailPattern::SingleClassAlternateDepth { z: fp.minus_one_class(), parity },
                Some(Sign::Minus) => TailPattern::SingleClassAlternateDepth {
                    z: fp.minus_one_class() * UnitClass::Eps,
                    parity,
                },
                None => TailPattern::BothClassesAlternateDepth { parity },
            }
        }
        GRep::PositiveSC(phi) if phi.torus.is_ramified() => {
            let z = phi.z_class();
            if phi.torus.split_type.is_minus_pi(fp) {
                TailPattern::SingleClass { z }
            } else {
                let lowest = (phi.depth + crate::arith::rat(1, 2)).to_integer();
                let other = z * UnitClass::Eps;
                if lowest % 2 == 0 {
                    TailPattern::ParityFunction { z_even: z, z_odd: other }
                } else {
                    TailPattern::ParityFunction { z_even: other, z_odd: z }
                }
            }
        }
        GRep::PositiveSC(phi) => {
            let parity = ((phi.depth + phi.torus.y).to_integer() % 2) as u32;
            TailPattern::BothClassesAlternateDepth { parity }
        }
    }
}

pub fn tail_descriptor(rep: &GRep, fp: &FieldParams) -> TailDescriptor {
    let pattern = tail_pattern(rep, fp);
    let above = (rep.depth() * int(2)).floor().to_integer() as u32 + 1;
    let start = (above..above + 2).find(|&d| !pattern.classes_at(d).is_empty()).unwrap_or(above);
    TailDescriptor { central: rep.central_character(), pattern, start_depth: int(start as i64) }
}

/// The descriptor and the components of depth `> 2r` of `Res_K rep`.
pub fn tail_end(rep: &GRep, max_depth: Rational, fp: &FieldParams) -> Result<(TailDescriptor, BranchingSeries)> {
    let two_r = rep.depth() * int(2);
    if max_depth <= two_r {
        return Err(Error::TruncationBelowDepth {
            max_depth: max_depth.to_string(),
            depth: format!("{two_r} (tail starts above 2r)"),
        });
    }
    let mut s = branch(rep, max_depth, fp)?;
    s.entries.retain(|e| int(e.ktype.depth() as i64) > two_r);
    Ok((tail_descriptor(rep, fp), s))
}

/// Checks that `tail` consists exactly of `S_d(ϑ, X_{z,0})` for the classes
/// the descriptor predicts, depth by depth.
pub fn tail_conforms(desc: &TailDescriptor, tail: &BranchingSeries) -> bool {
    let lo = desc.start_depth.to_integer() as u32;
    let hi = tail.max_depth.floor().to_integer().max(0) as u32;
    if tail.entries.iter().any(|e| e.ktype.depth() < lo) {
        return false;
    }
    (lo..=hi).all(|d| {
        let mut got: Vec<UnitClass> = Vec::new();
        for e in tail.at_depth(d) {
            match &e.ktype {
                KType::Shalika { phi: PhiLabel::Central(c), x, .. }
                    if *c == desc.central && x.v.is_zero() && e.multiplicity == 1 =>
                {
                    got.push(x.u_class())
                }
                _ => return false,
            }
        }
        let mut want = desc.pattern.classes_at(d);
        got.sort();
        want.sort();
        got == want
    })
}

/// Outcome of the Scholium comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailMatch {
    pub matches: bool,
    pub same_central_character: bool,
    /// Same class for principal series and unramified supercuspidals, same
    /// splitting field for ramified ones.
    pub same_class_or_splitting_field: bool,
    pub left: TailDescriptor,
    pub right: TailDescriptor,
}

fn class_or_field(rep: &GRep) -> (RepClass, Option<crate::tori::SplitType>) {
    match rep {
        GRep::PositiveSC(phi) if phi.torus.is_ramified() => (rep.class(), Some(phi.torus.split_type)),
        _ => (rep.class(), None),
    }
}

/// Whether two positive-depth representations have equal tail ends.
pub fn tails_match(a: &GRep, b: &GRep, fp: &FieldParams) -> Result<TailMatch> {
    for rep in [a, b] {
        if rep.depth() <= int(0) {
            return Err(Error::ScholiumInapplicable(format!("{rep} has depth zero")));
        }
    }
    let (left, right) = (tail_descriptor(a, fp), tail_descriptor(b, fp));
    let matches = left.central == right.central && left.pattern == right.pattern;
    Ok(TailMatch {
        matches,
        same_central_character: left.central == right.central,
        same_class_or_splitting_field: class_or_field(a) == class_or_field(b),
        left,
        right,
    })
}

/// Which sufficient condition shows that `Res_K a` and `Res_K b` share a
/// constituent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntertwiningRule {
    /// (a) two irreducible positive-depth principal series
    PrincipalSeries,
    /// (b) unramified torus, depths of equal parity
    UnramifiedParity,
    /// (c) the `-ϖ` ramified torus, equal unit scalars
    MinusPiScalar,
    /// (d) ramified torus, equal tail patterns
    EqualPattern,
    /// No rule applies but the tail ends coincide.
    TailsMatch,
}

impl fmt::Display for IntertwiningRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntertwiningRule::PrincipalSeries => "rule (a): principal series",
            IntertwiningRule::UnramifiedParity => "rule (b): unramified, depths of equal parity",
            IntertwiningRule::MinusPiScalar => "rule (c): -pi torus, equal unit scalar",
            IntertwiningRule::EqualPattern => "rule (d): equal tail pattern",
            IntertwiningRule::TailsMatch => "tails match",
        })
    }
}

/// The first applicable rule, or `None` when no sufficient condition holds.
pub fn intertwining_rule(a: &GRep, b: &GRep, fp: &FieldParams) -> Option<IntertwiningRule> {
    let positive = a.depth() > int(0) && b.depth() > int(0);
    if positive && a.central_character() == b.central_character() {
        match (a, b) {
            (GRep::PrincipalSeries(x), GRep::PrincipalSeries(y))
                if x.sgn_tau.is_none() && y.sgn_tau.is_none() =>
            {
                return Some(IntertwiningRule::PrincipalSeries);
            }
            (GRep::PositiveSC(x), GRep::PositiveSC(y)) if x.torus.standard == y.torus.standard => {
                let t = &x.torus;
                if !t.is_ramified() {
                    if ((x.depth - y.depth).to_integer() % 2) == 0 {
                        return Some(IntertwiningRule::UnramifiedParity);
                    }
                } else if t.split_type.is_minus_pi(fp) {
                    if x.unit_scalar() == y.unit_scalar() {
                        return Some(IntertwiningRule::MinusPiScalar);
                    }
                } else if tail_pattern(a, fp) == tail_pattern(b, fp) {
                    return Some(IntertwiningRule::EqualPattern);
                }
            }
            _ => {}
        }
    }
    match tails_match(a, b, fp) {
        Ok(m) if m.matches => Some(IntertwiningRule::TailsMatch),
        _ => None,
    }
}

/// One-sided test for `Res_K a` and `Res_K b` sharing a constituent, using the
/// sufficient conditions for representations attached to a common torus.
pub fn k_intertwines(a: &GRep, b: &GRep, fp: &FieldParams) -> bool {
    intertwining_rule(a, b, fp).is_some()
}

/// Whether a Shalika parameter is already in tail normal form.
pub fn is_tail_normal(x: &XParam, phi: &PhiLabel) -> bool {
    x.v.is_zero() && matches!(phi, PhiLabel::Central(_))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, KElem};
    use crate::grep::{make_reducible_constituent, CharKx, CharT, FiniteCuspidal, UnitRestriction, Vertex};
    use crate::tori::{StandardTorus, TorusDesc};

    fn fp(p: u64) -> FieldParams {
        FieldParams::new(p, 1).unwrap()
    }

    fn ps(depth: u32, central: Sign, f: &FieldParams) -> GRep {
        GRep::PrincipalSeries(
            CharKx::new(depth, UnitRestriction::Other("w".into()), UnitClass::One, central, "chi", f).unwrap(),
        )
    }

    fn sc(std: StandardTorus, r: Rational, a: KElem, central: Sign) -> GRep {
        let t = TorusDesc::standard(std);
        GRep::PositiveSC(CharT { torus: t, depth: r, a_coeff: a, central, label: "phi".into() })
    }

    #[test]
    fn descriptor_examples() {
        let f = fp(3);
        let generic = GRep::DepthZeroSC { vertex: Vertex::Zero, sigma: FiniteCuspidal::generic(1, &f).unwrap() };
        let d = tail_descriptor(&generic, &f);
        assert_eq!(d.pattern, TailPattern::BothClassesAlternateDepth { parity: 0 });
        assert_eq!(d.central, Sign::Minus);
        assert_eq!(d.start_depth, int(2));
        assert_eq!(tail_pattern(&ps(2, Sign::Plus, &f), &f), TailPattern::BothClassesEveryDepth);
        // p = 5: -1 square, T_{1,ϖ} splits over k(√-ϖ)
        let f5 = fp(5);
        let ram = sc(StandardTorus::Pi, rat(1, 2), KElem::new(-1, UnitClass::Eps), Sign::Plus);
        assert_eq!(tail_pattern(&ram, &f5), TailPattern::SingleClass { z: UnitClass::Eps });
        let ram2 = sc(StandardTorus::EpsPi, rat(1, 2), KElem::pi_pow(-1), Sign::Plus);
        assert_eq!(
            tail_pattern(&ram2, &f5),
            TailPattern::ParityFunction { z_even: UnitClass::Eps, z_odd: UnitClass::One }
        );
    }

    #[test]
    fn tails_conform_for_samples() {
        for p in [3, 5, 7] {
            let f = fp(p);
            let mut reps = vec![
                ps(0, Sign::Plus, &f),
                ps(2, Sign::Minus, &f),
                GRep::DepthZeroSC { vertex: Vertex::One, sigma: FiniteCuspidal::special(Sign::Minus, &f) },
                sc(StandardTorus::Unramified0, int(2), KElem::pi_pow(-2), Sign::Plus),
                sc(StandardTorus::Unramified1, int(1), KElem::new(-1, UnitClass::Eps), Sign::Minus),
                sc(StandardTorus::Pi, rat(3, 2), KElem::pi_pow(-2), Sign::Plus),
                sc(StandardTorus::EpsPi, rat(1, 2), KElem::new(-1, UnitClass::Eps), Sign::Minus),
            ];
            for tau in [SquareClass::Eps, SquareClass::Pi, SquareClass::EpsPi] {
                for sign in [Sign::Plus, Sign::Minus] {
                    reps.push(make_reducible_constituent(tau, sign, &f).unwrap());
                }
            }
            for rep in reps {
                let top = rep.depth() * int(2) + int(5);
                let (desc, tail) = tail_end(&rep, top.floor(), &f).unwrap();
                assert!(tail_conforms(&desc, &tail), "p={p} {rep}: {desc:?} vs {:?}", tail.entries);
            }
        }
    }

    #[test]
    fn scholium_examples() {
        let f = fp(3);
        let m = tails_match(&ps(1, Sign::Plus, &f), &ps(2, Sign::Plus, &f), &f).unwrap();
        assert!(m.matches && m.same_central_character && m.same_class_or_splitting_field);
        let unram = sc(StandardTorus::Unramified0, int(1), KElem::pi_pow(-1), Sign::Plus);
        let ram = sc(StandardTorus::Pi, rat(1, 2), KElem::pi_pow(-1), Sign::Plus);
        assert!(!tails_match(&unram, &ram, &f).unwrap().matches);
        let red = make_reducible_constituent(SquareClass::Pi, Sign::Plus, &f).unwrap();
        assert!(matches!(tails_match(&ps(1, Sign::Plus, &f), &red, &f), Err(Error::ScholiumInapplicable(_))));
    }

    #[test]
    fn intertwining_examples() {
        let f = fp(3);
        assert!(k_intertwines(&ps(1, Sign::Plus, &f), &ps(3, Sign::Plus, &f), &f));
        let u1 = sc(StandardTorus::Unramified0, int(1), KElem::pi_pow(-1), Sign::Plus);
        let u3 = sc(StandardTorus::Unramified0, int(3), KElem::new(-3, UnitClass::Eps), Sign::Plus);
        assert!(k_intertwines(&u1, &u3, &f));
        let u2 = sc(StandardTorus::Unramified0, int(2), KElem::pi_pow(-2), Sign::Plus);
        assert!(!k_intertwines(&u1, &u2, &f));
        // p = 3: -1 nonsquare, so T_{1,εϖ} splits over k(√-ϖ)
        let a = sc(StandardTorus::EpsPi, rat(1, 2), KElem::pi_pow(-1), Sign::Plus);
        let b = sc(StandardTorus::EpsPi, rat(3, 2), KElem::new(-2, UnitClass::Eps), Sign::Plus);
        assert!(!k_intertwines(&a, &b, &f));
        let c = sc(StandardTorus::EpsPi, rat(3, 2), KElem::pi_pow(-2), Sign::Plus);
        assert!(k_intertwines(&a, &c, &f));
    }
}
