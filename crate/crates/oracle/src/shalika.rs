//! Finite-level realisation of `S_d(φ, X_{u,v}) = Ind_{C(X) G_{[0,½],d/2}}^K φΨ_X`
//! in `SL2(Z/p^{d+1})`.
//!
//! `Ψ` is trivial on `P` and nontrivial on `R`; at level `p^{d+1}` it is
//! realised as `Ψ(ϖ^{-d} y) = exp(2πi y / p^{d+1})` for `y ∈ R` (scale 1).

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2_branching::arith::{filtration_exponents, rat, BuildingPoint, ExtReal, KElem, Sign, UnitClass};
use sl2_branching::ktype::XParam;

use crate::classfn::{induce, ClassFunction, Linear};
use crate::error::{OracleError, Result};
use crate::exec::Execution;
use crate::group::{least_nonresidue, pack, FiniteGroup, Mat};
use crate::subgroup::Subgroup;

/// The multiplier in `Ψ(ϖ^{-d} y) = exp(2πi · scale · y / p^{d+1})`.
pub const PSI_SCALE: u64 = 1;

/// `X_{u,v}` with concrete residues, together with the central value `ϑ`
/// that determines `φ` on `C(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShalikaSpec {
    pub depth: u32,
    pub u: u64,
    pub v: u64,
    pub central: Sign,
}

impl ShalikaSpec {
    /// `X_{z,0}` with `z ∈ {1, ε}`, `ε` the least non-residue.
    pub fn split(p: u64, depth: u32, z: UnitClass, central: Sign) -> Self {
        let u = match z {
            UnitClass::One => 1,
            UnitClass::Eps => least_nonresidue(p),
        };
        ShalikaSpec { depth, u, v: 0, central }
    }

    /// Concrete residues for an engine parameter.
    pub fn from_xparam(p: u64, depth: u32, x: &XParam, central: Sign) -> Result<Self> {
        let modulus = p.pow(depth + 1);
        let residue = |e: &KElem| -> Result<u64> {
            match e.valuation() {
                None => Ok(0),
                Some(v) if v < 0 => Err(OracleError::Unsupported(format!("{e} is not integral"))),
                Some(v) if v as u32 > depth => Ok(0),
                Some(v) => {
                    let unit = match e.unit_class().expect("nonzero") {
                        UnitClass::One => 1,
                        UnitClass::Eps => least_nonresidue(p),
                    };
                    Ok(unit * p.pow(v as u32) % modulus)
                }
            }
        };
        Ok(ShalikaSpec { depth, u: residue(&x.u)?, v: residue(&x.v)?, central })
    }

    pub fn level(&self) -> u32 {
        self.depth + 1
    }
}

/// The subgroup `H = C(X) G_{[0,½],d/2}` with the character `φΨ_X` on it,
/// values `exp(2πi k / M)` stored as exponents `k`.
#[derive(Clone, Debug)]
pub struct ShalikaSubgroup {
    pub spec: ShalikaSpec,
    pub root_order: u64,
    pub subgroup: Subgroup,
    pub exponents: Vec<u64>,
    pub centralizer_order: usize,
    pub facet_order: usize,
}

impl ShalikaSubgroup {
    pub fn value_exponent(&self, g: &FiniteGroup, x: &Mat) -> Option<u64> {
        let key = pack(*x, g.modulus());
        self.subgroup.keys.binary_search(&key).ok().map(|i| self.exponents[i])
    }
}

/// Facet group `G_{[0,½],d/2}` modulo `p^{d+1}`.
pub fn facet_group(g: &FiniteGroup, depth: u32, exec: Execution) -> Result<Subgroup> {
    let e = filtration_exponents(BuildingPoint::HalfFacet, ExtReal::new(rat(depth as i64, 2)))
        .map_err(OracleError::Engine)?;
    let p = g.p();
    let m = g.modulus();
    let cap = |k: i64| p.pow((k.max(0) as u32).min(g.level()));
    let (md, mu, ml) = (cap(e.diag), cap(e.upper), cap(e.lower));
    Ok(Subgroup::filter(
        g,
        format!("G[0,1/2],{depth}/2"),
        move |x| (x[0] + m - 1) % md == 0 && (x[3] + m - 1) % md == 0 && x[1] % mu == 0 && x[2] % ml == 0,
        exec,
    ))
}

/// `φΨ_X` on `C(X) G_{[0,½],d/2}` in `SL2(Z/p^{d+1})`, with `φ(c) = ϑ` exactly
/// when the diagonal entry of `c` is `≡ -1 mod p`.
pub fn psi_x_character(g: &FiniteGroup, spec: &ShalikaSpec, exec: Execution) -> Result<ShalikaSubgroup> {
    let p = g.p();
    if g.level() != spec.level() {
        return Err(OracleError::Unsupported(format!(
            "S_{} lives at level p^{}, group has level p^{}",
            spec.depth,
            spec.level(),
            g.level()
        )));
    }
    if spec.depth == 0 || spec.u % p == 0 || spec.v % p != 0 {
        return Err(OracleError::Unsupported("need d >= 1, u a unit, v in P".into()));
    }
    let m = g.modulus();
    let root_order = 2 * m;
    let facet = facet_group(g, spec.depth, exec)?;
    let (u, v) = (spec.u % m, spec.v % m);
    // Ψ_X(z) = Ψ(ϖ^{-d} Tr(X(z - I))) = exp(2πi (u z21 + v z12) / p^{d+1})
    let psi = |f: &Mat| 2 * PSI_SCALE * ((u * f[2] + v * f[1]) % m) % root_order;
    let phi = |c: &Mat| if c[0] % p == p - 1 { if spec.central == Sign::Minus { m } else { 0 } } else { 0 };
    let centralizer: Vec<Mat> = (0..m)
        .flat_map(|a| (0..m).map(move |b| [a, b * u % m, b * v % m, a]))
        .filter(|c| (c[0] * c[0] % m + m - c[1] * c[2] % m) % m == 1)
        .collect();
    let mut values: HashMap<u64, u64> = HashMap::with_capacity(centralizer.len() * facet.order() / 2);
    for c in &centralizer {
        let pc = phi(c);
        for fk in &facet.keys {
            let f = g.unpack(*fk);
            let h = g.mul(c, &f);
            let val = (pc + psi(&f)) % root_order;
            match values.insert(pack(h, m), val) {
                Some(prev) if prev != val => {
                    return Err(OracleError::IncompatiblePair(format!(
                        "X = ({u},{v}), theta = {}: two values at {h:?}",
                        spec.central
                    )))
                }
                _ => {}
            }
        }
    }
    let mut pairs: Vec<(u64, u64)> = values.into_iter().collect();
    pairs.sort_unstable();
    let (keys, exponents): (Vec<u64>, Vec<u64>) = pairs.into_iter().unzip();
    let out = ShalikaSubgroup {
        spec: *spec,
        root_order,
        subgroup: Subgroup { name: format!("C(X)G[0,1/2],{}/2", spec.depth), keys },
        exponents,
        centralizer_order: centralizer.len(),
        facet_order: facet.order(),
    };
    check_homomorphism(g, &out, 100, 0xC0FFEE ^ spec.u ^ (spec.depth as u64) << 8)?;
    Ok(out)
}

/// Samples pairs and checks closure and multiplicativity.
pub fn check_homomorphism(g: &FiniteGroup, s: &ShalikaSubgroup, samples: usize, seed: u64) -> Result<()> {
    s.subgroup.check(g, samples, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = s.subgroup.order();
    for _ in 0..samples {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        let (x, y) = (g.unpack(s.subgroup.keys[i]), g.unpack(s.subgroup.keys[j]));
        let xy = s.value_exponent(g, &g.mul(&x, &y)).expect("closed");
        if xy != (s.exponents[i] + s.exponents[j]) % s.root_order {
            return Err(OracleError::IncompatiblePair(format!("not multiplicative at {x:?}, {y:?}")));
        }
    }
    Ok(())
}

/// `Ind_H^K φΨ_X` as a class function on `SL2(Z/p^{d+1})`.
pub fn shalika_character(g: &FiniteGroup, spec: &ShalikaSpec, exec: Execution) -> Result<(ShalikaSubgroup, ClassFunction)> {
    let h = psi_x_character(g, spec, exec)?;
    let chi = Linear { m: h.root_order as usize, exponent: |x: &Mat| h.value_exponent(g, x).expect("element of H") };
    let ind = induce(g, &h.subgroup.keys, &chi, exec);
    Ok((h, ind))
}

/// Whether a class function is nontrivial on `K_d` (it is trivial on
/// `K_{d+1}` by construction at level `d+1`).
pub fn nontrivial_on_kernel(g: &FiniteGroup, chi: &ClassFunction, d: u32, exec: Execution) -> bool {
    let k = Subgroup::kernel(g, d, exec);
    let one = chi.at(g, &[1, 0, 0, 1]);
    k.keys.iter().any(|key| (g.unpack(*key) != [1, 0, 0, 1]) && (chi.at(g, &g.unpack(*key)) - one).norm() > 1e-6)
}
