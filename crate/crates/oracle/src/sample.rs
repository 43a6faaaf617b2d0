//! Seeded random representations for property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2_branching::arith::{int, rat, FieldParams, KElem, Rational, Sign, SquareClass, UnitClass};
use sl2_branching::grep::{
    make_depth_zero_sc, make_positive_sc, make_reducible_constituent, CharKx, CharT, FiniteCuspidal, GRep, RepClass,
    UnitRestriction, Vertex,
};
use sl2_branching::tori::{StandardTorus, TorusDesc};

pub const CLASSES: [RepClass; 5] = [
    RepClass::PrincipalSeries,
    RepClass::ReduciblePrincipalSeries,
    RepClass::DepthZeroSupercuspidal,
    RepClass::UnramifiedSupercuspidal,
    RepClass::RamifiedSupercuspidal,
];

fn sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn unit_class(rng: &mut ChaCha8Rng) -> UnitClass {
    if rng.random_bool(0.5) {
        UnitClass::One
    } else {
        UnitClass::Eps
    }
}

/// A generic character of `torus` at depth `r`: `a` is forced to the
/// valuation genericity requires, its unit class is random.
pub fn random_char_t(rng: &mut ChaCha8Rng, torus: StandardTorus, r: Rational) -> GRep {
    let t = TorusDesc::standard(torus);
    let target = -(r + t.y);
    let v = target.to_integer() - t.std_gamma1().valuation().expect("nonzero");
    let phi = CharT {
        torus: t,
        depth: r,
        a_coeff: KElem::new(v, unit_class(rng)),
        central: sign(rng),
        label: "phi".into(),
    };
    make_positive_sc(&t, phi).expect("generic by construction")
}

/// A random valid representation of the given class over `fp`, of depth at
/// most 3.
pub fn random_rep(rng: &mut ChaCha8Rng, class: RepClass, fp: &FieldParams) -> GRep {
    match class {
        RepClass::PrincipalSeries => {
            let depth = rng.random_range(0..=3u32);
            let restriction = if depth == 0 {
                match rng.random_range(0..3) {
                    0 => UnitRestriction::Trivial,
                    1 => UnitRestriction::Sgn,
                    _ if fp.q() > 3 => UnitRestriction::Other("chi".into()),
                    _ => UnitRestriction::Trivial,
                }
            } else {
                UnitRestriction::Other("chi".into())
            };
            let central = match restriction {
                UnitRestriction::Trivial => Sign::Plus,
                UnitRestriction::Sgn if depth == 0 => fp.minus_one_class().legendre(),
                _ => sign(rng),
            };
            let chi = CharKx::new(depth, restriction, unit_class(rng), central, "chi", fp).expect("consistent");
            GRep::PrincipalSeries(chi)
        }
        RepClass::ReduciblePrincipalSeries => {
            let tau = [SquareClass::Eps, SquareClass::Pi, SquareClass::EpsPi][rng.random_range(0..3)];
            make_reducible_constituent(tau, sign(rng), fp).expect("tau nontrivial")
        }
        RepClass::DepthZeroSupercuspidal => {
            let vertex = if rng.random_bool(0.5) { Vertex::Zero } else { Vertex::One };
            let sigma = if rng.random_bool(0.4) {
                FiniteCuspidal::special(sign(rng), fp)
            } else {
                // ω with ω² ≠ 1 in the cyclic group of order q+1
                let order = fp.q() + 1;
                let omega = loop {
                    let w = rng.random_range(1..order);
                    if (2 * w) % order != 0 {
                        break w;
                    }
                };
                FiniteCuspidal::generic(omega, fp).expect("omega^2 != 1")
            };
            make_depth_zero_sc(vertex, sigma)
        }
        RepClass::UnramifiedSupercuspidal => {
            let torus = if rng.random_bool(0.5) { StandardTorus::Unramified0 } else { StandardTorus::Unramified1 };
            let r = int(rng.random_range(1..=3));
            random_char_t(rng, torus, r)
        }
        RepClass::RamifiedSupercuspidal => {
            let mut tori = vec![StandardTorus::Pi, StandardTorus::EpsPi];
            if fp.minus_one_square() {
                tori.extend([StandardTorus::PiAlt, StandardTorus::EpsPiAlt]);
            }
            let torus = tori[rng.random_range(0..tori.len())];
            let r = rat(2 * rng.random_range(0..3) + 1, 2);
            random_char_t(rng, torus, r)
        }
    }
}

/// `count` representations cycling through the five classes and `q ∈ {3,5,7}`.
pub fn random_suite(seed: u64, count: usize) -> Vec<(FieldParams, GRep)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields: Vec<FieldParams> = [3, 5, 7].iter().map(|&p| FieldParams::new(p, 1).expect("odd prime")).collect();
    (0..count)
        .map(|i| {
            let fp = fields[rng.random_range(0..fields.len())];
            (fp, random_rep(&mut rng, CLASSES[i % CLASSES.len()], &fp))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_and_depths() {
        let suite = random_suite(7, 50);
        for (i, (_, rep)) in suite.iter().enumerate() {
            assert_eq!(rep.class(), CLASSES[i % 5]);
            assert!(rep.depth() <= int(3));
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(random_suite(1, 20), random_suite(1, 20));
    }
}
