//! `SL2(Z/p^n)`: element enumeration and conjugacy classes.

use crate::error::{OracleError, Result};
use crate::exec::Execution;

/// Default cap on `p^{3n}`.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// A 2x2 matrix `[a, b, c, d]` (row-major) with entries reduced mod `p^n`.
pub type Mat = [u64; 4];

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Inverse of a unit modulo `m`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u64)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Least positive quadratic non-residue mod `p`: the oracle's `ε`.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1).expect("odd prime")
}

/// Least primitive root mod `p`.
pub fn primitive_root(p: u64) -> u64 {
    let n = p - 1;
    let factors: Vec<u64> = (2..=n).filter(|&d| n % d == 0 && is_prime(d)).collect();
    (2..p).find(|&g| factors.iter().all(|&f| pow_mod(g, n / f, p) != 1)).unwrap_or(1)
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: Mat,
    pub size: u64,
}

/// `SL2(Z/p^n)` with its elements sorted by packed key and its conjugacy
/// classes.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    p: u64,
    n: u32,
    modulus: u64,
    keys: Vec<u64>,
    class_of: Vec<u32>,
    classes: Vec<ConjClass>,
}

impl FiniteGroup {
    pub fn new(p: u64, n: u32, budget: u128, exec: Execution) -> Result<Self> {
        if p == 2 || !is_prime(p) || n == 0 {
            return Err(OracleError::Unsupported(format!("SL2(Z/{p}^{n}) needs an odd prime and n >= 1")));
        }
        let cost = (p as u128).pow(3 * n);
        if cost > budget {
            return Err(OracleError::BudgetExceeded { p, n, cost, budget });
        }
        let modulus = p.pow(n);
        let m = modulus;
        let rows = exec.map_range(m as usize, |a| {
            let a = a as u64;
            let mut out = Vec::new();
            if a % p != 0 {
                let ai = inv_mod(a, m).expect("unit");
                for b in 0..m {
                    for c in 0..m {
                        let d = (1 + b * c) % m * ai % m;
                        out.push(pack([a, b, c, d], m));
                    }
                }
            } else {
                for b in (0..m).filter(|b| b % p != 0) {
                    let bi = inv_mod(b, m).expect("unit");
                    for d in 0..m {
                        let c = (a * d + m - 1) % m * bi % m;
                        out.push(pack([a, b, c, d], m));
                    }
                }
            }
            out
        });
        let mut keys: Vec<u64> = rows.into_iter().flatten().collect();
        keys.sort_unstable();
        let mut g = FiniteGroup { p, n, modulus, keys, class_of: Vec::new(), classes: Vec::new() };
        g.compute_classes();
        Ok(g)
    }

    fn compute_classes(&mut self) {
        let m = self.modulus;
        let gens: [(Mat, Mat); 2] = [
            ([1, 1, 0, 1], [1, m - 1, 0, 1]),
            ([1, 0, 1, 1], [1, 0, m - 1, 1]),
        ];
        let mut class_of = vec![u32::MAX; self.keys.len()];
        let mut classes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.keys.len() {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start] = id;
            stack.push(start);
            let mut size = 0u64;
            while let Some(i) = stack.pop() {
                size += 1;
                let x = self.element(i);
                for (s, si) in &gens {
                    let y = self.mul(&self.mul(s, &x), si);
                    let j = self.index_of(&y).expect("closed under conjugation");
                    if class_of[j] == u32::MAX {
                        class_of[j] = id;
                        stack.push(j);
                    }
                }
            }
            classes.push(ConjClass { rep: self.element(start), size });
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn element(&self, i: usize) -> Mat {
        unpack(self.keys[i], self.modulus)
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    pub fn unpack(&self, key: u64) -> Mat {
        unpack(key, self.modulus)
    }

    pub fn index_of(&self, x: &Mat) -> Option<usize> {
        self.keys.binary_search(&pack(*x, self.modulus)).ok()
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    pub fn class_of(&self, x: &Mat) -> usize {
        self.class_of_index(self.index_of(x).expect("element of the group"))
    }

    pub fn class_of_key(&self, key: u64) -> usize {
        self.class_of_index(self.keys.binary_search(&key).expect("element of the group"))
    }

    pub fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        let m = self.modulus;
        [
            (x[0] * y[0] + x[1] * y[2]) % m,
            (x[0] * y[1] + x[1] * y[3]) % m,
            (x[2] * y[0] + x[3] * y[2]) % m,
            (x[2] * y[1] + x[3] * y[3]) % m,
        ]
    }

    pub fn inv(&self, x: &Mat) -> Mat {
        let m = self.modulus;
        [x[3], (m - x[1]) % m, (m - x[2]) % m, x[0]]
    }

    pub fn pow(&self, x: &Mat, mut e: u64) -> Mat {
        let mut acc = [1, 0, 0, 1];
        let mut b = *x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    /// Image of `x` in `SL2(Z/p^level)`.
    pub fn reduce(&self, x: &Mat, level: u32) -> Mat {
        let m = self.p.pow(level);
        [x[0] % m, x[1] % m, x[2] % m, x[3] % m]
    }

    /// `-I`
    pub fn minus_identity(&self) -> Mat {
        [self.modulus - 1, 0, 0, self.modulus - 1]
    }

    /// Exponent of the group: lcm of element orders.
    pub fn exponent(&self) -> u64 {
        let id = [1, 0, 0, 1];
        self.classes.iter().fold(1u64, |acc, c| {
            let mut k = 1u64;
            let mut x = c.rep;
            while x != id {
                x = self.mul(&x, &c.rep);
                k += 1;
            }
            lcm(acc, k)
        })
    }
}

pub fn pack(x: Mat, m: u64) -> u64 {
    ((x[0] * m + x[1]) * m + x[2]) * m + x[3]
}

pub fn unpack(mut key: u64, m: u64) -> Mat {
    let d = key % m;
    key /= m;
    let c = key % m;
    key /= m;
    let b = key % m;
    [key / m, b, c, d]
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `|SL2(Z/p^n)| = p^{3n} (1 - p^{-2})`.
pub fn expected_order(p: u64, n: u32) -> u64 {
    p.pow(3 * n - 2) * (p * p - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (p, n, order) in [(3, 1, 24), (3, 2, 648), (5, 1, 120), (7, 1, 336)] {
            let g = FiniteGroup::new(p, n, DEFAULT_BUDGET, Execution::Parallel).unwrap();
            assert_eq!(g.order(), order);
            assert_eq!(expected_order(p, n), order as u64);
            let total: u64 = g.classes().iter().map(|c| c.size).sum();
            assert_eq!(total, order as u64);
        }
    }

    #[test]
    fn class_counts_of_sl2_fp() {
        for p in [3, 5, 7, 11] {
            let g = FiniteGroup::new(p, 1, DEFAULT_BUDGET, Execution::Sequential).unwrap();
            assert_eq!(g.num_classes() as u64, p + 4);
        }
    }

    #[test]
    fn classes_are_conjugation_invariant() {
        let g = FiniteGroup::new(3, 2, DEFAULT_BUDGET, Execution::Parallel).unwrap();
        for i in (0..g.order()).step_by(17) {
            let x = g.element(i);
            for j in (0..g.order()).step_by(29) {
                let y = g.element(j);
                let c = g.mul(&g.mul(&y, &x), &g.inv(&y));
                assert_eq!(g.class_of(&c), g.class_of_index(i));
            }
        }
    }

    #[test]
    fn execution_modes_agree() {
        let a = FiniteGroup::new(5, 1, DEFAULT_BUDGET, Execution::Parallel).unwrap();
        let b = FiniteGroup::new(5, 1, DEFAULT_BUDGET, Execution::Sequential).unwrap();
        assert_eq!(a.keys(), b.keys());
        assert_eq!(a.class_of, b.class_of);
    }

    #[test]
    fn budget_and_input_errors() {
        assert!(matches!(FiniteGroup::new(3, 3, 1000, Execution::Parallel), Err(OracleError::BudgetExceeded { .. })));
        assert!(FiniteGroup::new(9, 1, DEFAULT_BUDGET, Execution::Parallel).is_err());
        assert!(FiniteGroup::new(2, 1, DEFAULT_BUDGET, Execution::Parallel).is_err());
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(least_nonresidue(3), 2);
        assert_eq!(least_nonresidue(7), 3);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(inv_mod(2, 9), Some(5));
        assert_eq!(inv_mod(3, 9), None);
        assert_eq!(unpack(pack([1, 2, 3, 4], 9), 9), [1, 2, 3, 4]);
    }
}
