//! Depth profiles: class recognition from component counts, the degree
//! identity for principal series, and two-per-depth for L-packets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{int, FieldParams, Rational, Sign};
use crate::error::{Error, Result};
use crate::grep::{make_reducible_constituent, GRep, RepClass};
use crate::ktype::KType;

use super::series::{branch, BranchingSeries};

/// Recognises the class of a positive-depth source from the number of
/// components at each integral depth above `r`.
pub fn classify_from_profile(s: &BranchingSeries) -> Result<RepClass> {
    let r = s.source.depth();
    if r <= int(0) {
        return Err(Error::ProfileUndecidable("source has depth zero".into()));
    }
    if s.max_depth < r + int(4) {
        return Err(Error::ProfileUndecidable(format!(
            "window (r, D] = ({r}, {}] is shorter than 4",
            s.max_depth
        )));
    }
    let lo = r.floor().to_integer() as u32 + 1;
    let hi = s.max_depth.floor().to_integer() as u32;
    let counts: Vec<u32> = (lo..=hi).map(|d| s.count_at(d)).collect();
    let observed = if counts.iter().all(|&c| c == 2) {
        RepClass::PrincipalSeries
    } else if counts.iter().all(|&c| c == 1) {
        RepClass::RamifiedSupercuspidal
    } else if counts.iter().all(|&c| c == 0 || c == 2)
        && counts.windows(2).all(|w| w[0] != w[1])
    {
        RepClass::UnramifiedSupercuspidal
    } else {
        return Err(Error::ProfileUndecidable(format!("counts {counts:?} fit no pattern")));
    };
    let expected = s.source.class();
    if expected != observed {
        return Err(Error::ProfileMismatch { expected: expected.to_string(), observed: observed.to_string() });
    }
    Ok(observed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub n: u32,
    /// Sum of degrees of components of depth `< n`.
    pub lhs: u128,
    /// `q^{n-1}(q+1)`
    pub rhs: u128,
    /// `(q+1) q^r` for positive-depth principal series.
    pub leading_expected: Option<u128>,
    pub leading_observed: Option<u128>,
    pub passed: bool,
}

/// Checks `Σ_{depth < n} deg = q^{n-1}(q+1)`, the number of cosets of the
/// level-`n` Borel subgroup in `K`.
pub fn dimension_identity(s: &BranchingSeries, n: u32, fp: &FieldParams) -> Result<DimensionReport> {
    let r = s.source.depth();
    if n == 0 || int(n as i64) <= r {
        return Err(Error::DimensionPrecondition(format!("need depth {r} < n = {n}")));
    }
    if s.max_depth < int(n as i64 - 1) {
        return Err(Error::DimensionPrecondition(format!(
            "series truncated at {} but n - 1 = {}",
            s.max_depth,
            n - 1
        )));
    }
    let lhs = match &s.source {
        GRep::PrincipalSeries(_) => s.degree_below(n)?,
        GRep::ReducibleConstituent { tau, sign, .. } => {
            let other = make_reducible_constituent(*tau, -*sign, fp)?;
            let t = branch(&other, s.max_depth, fp)?;
            s.degree_below(n)? + t.degree_below(n)?
        }
        other => {
            return Err(Error::DimensionPrecondition(format!("{other} is not a principal series")))
        }
    };
    let q = fp.q() as u128;
    let rhs = q.checked_pow(n - 1).and_then(|x| x.checked_mul(q + 1)).ok_or(Error::DegreeOverflow)?;
    let (leading_expected, leading_observed) = match &s.source {
        GRep::PrincipalSeries(chi) if chi.depth > 0 => {
            let obs = s.entries.iter().find_map(|e| match e.ktype {
                KType::Leading { degree, depth, .. } if depth == chi.depth => Some(degree),
                _ => None,
            });
            (Some((q + 1) * q.pow(chi.depth)), obs)
        }
        _ => (None, None),
    };
    let passed = lhs == rhs && leading_expected == leading_observed;
    Ok(DimensionReport { n, lhs, rhs, leading_expected, leading_observed, passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PacketProfile {
    pub depth: Rational,
    /// Components at each integral depth in `(depth, D]`, summed over members.
    pub counts: BTreeMap<u32, u32>,
    /// Components at depth `≤ depth` (the leading terms), kept separately.
    pub leading_counts: BTreeMap<u32, u32>,
    /// Depths above the packet depth where the count is not 2.
    pub violations: Vec<u32>,
    pub central: Sign,
}

impl PacketProfile {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sums the series of the members and checks for exactly two components at
/// every depth above the packet depth.
pub fn packet_profile(packet: &[GRep], max_depth: Rational, fp: &FieldParams) -> Result<PacketProfile> {
    let first = packet.first().ok_or(Error::EmptySeries)?;
    let depth = first.depth();
    let mut counts = BTreeMap::new();
    let mut leading_counts = BTreeMap::new();
    for rep in packet {
        for e in branch(rep, max_depth, fp)?.entries {
            let d = e.ktype.depth();
            let target = if int(d as i64) > depth { &mut counts } else { &mut leading_counts };
            *target.entry(d).or_insert(0) += e.multiplicity;
        }
    }
    let lo = depth.floor().to_integer() as u32 + 1;
    let hi = max_depth.floor().to_integer() as u32;
    let violations = (lo..=hi).filter(|d| counts.get(d).copied().unwrap_or(0) != 2).collect();
    for d in lo..=hi {
        counts.entry(d).or_insert(0);
    }
    Ok(PacketProfile { depth, counts, leading_counts, violations, central: first.central_character() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, KElem, SquareClass, UnitClass};
    use crate::grep::{l_packet, CharKx, CharT, FiniteCuspidal, UnitRestriction, Vertex};
    use crate::tori::{StandardTorus, TorusDesc};

    fn fp(p: u64) -> FieldParams {
        FieldParams::new(p, 1).unwrap()
    }

    fn sc(std: StandardTorus, r: Rational, a: KElem) -> GRep {
        let t = TorusDesc::standard(std);
        GRep::PositiveSC(CharT { torus: t, depth: r, a_coeff: a, central: Sign::Plus, label: "phi".into() })
    }

    fn ps(depth: u32, f: &FieldParams) -> GRep {
        GRep::PrincipalSeries(
            CharKx::new(depth, UnitRestriction::Other("w".into()), UnitClass::One, Sign::Plus, "chi", f).unwrap(),
        )
    }

    #[test]
    fn classification_examples() {
        let f = fp(3);
        let s = branch(&ps(1, &f), int(5), &f).unwrap();
        assert_eq!(classify_from_profile(&s).unwrap(), RepClass::PrincipalSeries);
        let ram = branch(&sc(StandardTorus::Pi, rat(1, 2), KElem::pi_pow(-1)), rat(9, 2), &f).unwrap();
        assert_eq!(classify_from_profile(&ram).unwrap(), RepClass::RamifiedSupercuspidal);
        let unram = branch(&sc(StandardTorus::Unramified0, int(1), KElem::pi_pow(-1)), int(5), &f).unwrap();
        assert_eq!(classify_from_profile(&unram).unwrap(), RepClass::UnramifiedSupercuspidal);
        let short = branch(&ps(1, &f), int(4), &f).unwrap();
        assert!(matches!(classify_from_profile(&short), Err(Error::ProfileUndecidable(_))));
    }

    #[test]
    fn dimension_examples() {
        let f3 = fp(3);
        let s = branch(&ps(0, &f3), int(1), &f3).unwrap();
        let rep = dimension_identity(&s, 2, &f3).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.passed), (12, 12, true));
        let f5 = fp(5);
        let s = branch(&ps(0, &f5), int(2), &f5).unwrap();
        assert_eq!(dimension_identity(&s, 3, &f5).unwrap().lhs, 150);
        let s = branch(&ps(1, &f3), int(2), &f3).unwrap();
        let rep = dimension_identity(&s, 3, &f3).unwrap();
        assert_eq!((rep.lhs, rep.leading_observed), (36, Some(12)));
        assert!(rep.passed);
        let red = make_reducible_constituent(SquareClass::Eps, Sign::Minus, &f3).unwrap();
        let s = branch(&red, int(4), &f3).unwrap();
        assert!(dimension_identity(&s, 5, &f3).unwrap().passed);
        assert!(dimension_identity(&s, 6, &f3).is_err());
    }

    #[test]
    fn packet_examples() {
        let f = fp(3);
        let pi = make_reducible_constituent(SquareClass::Eps, Sign::Plus, &f).unwrap();
        let prof = packet_profile(&l_packet(&pi, &f), int(3), &f).unwrap();
        assert!(prof.passed());
        assert_eq!(prof.counts.values().copied().collect::<Vec<_>>(), vec![2, 2, 2]);
        let special = GRep::DepthZeroSC { vertex: Vertex::Zero, sigma: FiniteCuspidal::special(Sign::Plus, &f) };
        let prof = packet_profile(&l_packet(&special, &f), int(4), &f).unwrap();
        assert!(prof.passed());
        assert_eq!(prof.leading_counts.get(&0), Some(&2));
        let unram = sc(StandardTorus::Unramified0, int(2), KElem::pi_pow(-2));
        let prof = packet_profile(&l_packet(&unram, &f), int(5), &f).unwrap();
        assert!(prof.passed(), "{prof:?}");
    }
}
