//! Subgroups of `SL2(Z/p^n)` cut out by congruence conditions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{OracleError, Result};
use crate::exec::Execution;
use crate::group::{FiniteGroup, Mat};

/// A subgroup stored as the sorted packed keys of its elements.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub name: String,
    pub keys: Vec<u64>,
}

impl Subgroup {
    pub fn filter<F>(g: &FiniteGroup, name: impl Into<String>, keep: F, exec: Execution) -> Self
    where
        F: Fn(&Mat) -> bool + Sync + Send,
    {
        let keys = exec.filter(g.keys(), |k| keep(&g.unpack(k)));
        Subgroup { name: name.into(), keys }
    }

    /// Lower-left entry `≡ 0 mod p^level`: the Borel subgroup for
    /// `level = n`, the Iwahori subgroup for `level = 1`, and the Mackey group
    /// `K ∩ K^{α^t}` for `level = 2t`.
    pub fn borel(g: &FiniteGroup, level: u32, exec: Execution) -> Self {
        let m = g.p().pow(level);
        Self::filter(g, format!("B(p^{level})"), move |x| x[2] % m == 0, exec)
    }

    /// The principal congruence subgroup `K_m`.
    pub fn kernel(g: &FiniteGroup, level: u32, exec: Execution) -> Self {
        let m = g.p().pow(level);
        Self::filter(
            g,
            format!("K_{level}"),
            move |x| (x[0] + m - 1) % m == 0 && x[1] % m == 0 && x[2] % m == 0 && (x[3] + m - 1) % m == 0,
            exec,
        )
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn contains(&self, g: &FiniteGroup, x: &Mat) -> bool {
        self.keys.binary_search(&crate::group::pack(*x, g.modulus())).is_ok()
    }

    /// Checks identity, inverses and closure on `samples` seeded random pairs,
    /// and that the order divides `|G|`.
    pub fn check(&self, g: &FiniteGroup, samples: usize, seed: u64) -> Result<()> {
        let fail = |why: String| Err(OracleError::NotASubgroup(format!("{}: {why}", self.name)));
        if self.keys.is_empty() || !self.contains(g, &[1, 0, 0, 1]) {
            return fail("identity missing".into());
        }
        if g.order() % self.order() != 0 {
            return fail(format!("order {} does not divide {}", self.order(), g.order()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = g.unpack(self.keys[rng.random_range(0..self.keys.len())]);
            let y = g.unpack(self.keys[rng.random_range(0..self.keys.len())]);
            if !self.contains(g, &g.mul(&x, &y)) || !self.contains(g, &g.inv(&x)) {
                return fail(format!("not closed at {x:?}, {y:?}"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_BUDGET;

    #[test]
    fn congruence_subgroup_orders() {
        let g = FiniteGroup::new(3, 2, DEFAULT_BUDGET, Execution::Parallel).unwrap();
        let b = Subgroup::borel(&g, 2, Execution::Parallel);
        assert_eq!(g.order() / b.order(), 12);
        let iw = Subgroup::borel(&g, 1, Execution::Parallel);
        assert_eq!(g.order() / iw.order(), 4);
        let k1 = Subgroup::kernel(&g, 1, Execution::Parallel);
        assert_eq!(k1.order(), 27);
        for s in [&b, &iw, &k1] {
            s.check(&g, 200, 7).unwrap();
        }
    }

    #[test]
    fn non_subgroup_detected() {
        let g = FiniteGroup::new(3, 1, DEFAULT_BUDGET, Execution::Parallel).unwrap();
        let s = Subgroup::filter(&g, "upper entry 1", |x| x[1] == 1 || *x == [1, 0, 0, 1], Execution::Sequential);
        assert!(s.check(&g, 100, 1).is_err());
    }
}
