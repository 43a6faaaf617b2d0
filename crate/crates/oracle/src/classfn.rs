//! Class functions, induction and inner products.
//!
//! Induced characters are accumulated exactly: every value of a subgroup
//! character is a sum of `M`-th roots of unity, and the induction formula only
//! counts how often each root occurs per conjugacy class. The conversion to
//! complex numbers happens once per class, after the integer reduction.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{OracleError, Result};
use crate::exec::Execution;
use crate::group::{FiniteGroup, Mat};

/// Residual allowed when rounding inner products.
pub const TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<Complex64>,
}

impl ClassFunction {
    pub fn zero(g: &FiniteGroup) -> Self {
        Self { values: vec![Complex64::new(0.0, 0.0); g.num_classes()] }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self { values: vec![Complex64::new(1.0, 0.0); g.num_classes()] }
    }

    /// `χ(1)`, rounded.
    pub fn degree(&self, g: &FiniteGroup) -> i64 {
        self.values[g.class_of(&[1, 0, 0, 1])].re.round() as i64
    }

    pub fn at(&self, g: &FiniteGroup, x: &Mat) -> Complex64 {
        self.values[g.class_of(x)]
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        ClassFunction { values }
    }

    pub fn sum<'a>(g: &FiniteGroup, items: impl IntoIterator<Item = &'a ClassFunction>) -> ClassFunction {
        items.into_iter().fold(ClassFunction::zero(g), |acc, x| acc.add(x))
    }

    /// Largest pointwise distance to `other`.
    pub fn max_distance(&self, other: &ClassFunction) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Pulls back a class function of `SL2(Z/p^m)` to `g` along reduction.
    pub fn inflate(&self, from: &FiniteGroup, to: &FiniteGroup) -> ClassFunction {
        let level = from.level();
        let values = to.classes().iter().map(|c| self.values[from.class_of(&to.reduce(&c.rep, level))]).collect();
        ClassFunction { values }
    }
}

/// Exact inner product `⟨a, b⟩ = |G|^-1 Σ |C| a(C) conj(b(C))`, rounded to an
/// integer; fails if the imaginary part or the rounding residual exceeds
/// the tolerance.
pub fn inner_product(g: &FiniteGroup, a: &ClassFunction, b: &ClassFunction) -> Result<i64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, (x, y)) in g.classes().iter().zip(a.values.iter().zip(&b.values)) {
        acc += x * y.conj() * c.size as f64;
    }
    acc /= g.order() as f64;
    let rounded = acc.re.round();
    let residual = (acc - Complex64::new(rounded, 0.0)).norm();
    if residual > TOLERANCE {
        return Err(OracleError::NonCharacter(residual));
    }
    Ok(rounded as i64)
}

/// `Σ_k counts[k] ζ_M^k`
pub fn cyclotomic_value(counts: &[i64]) -> Complex64 {
    let m = counts.len() as f64;
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| Complex64::from_polar(c as f64, TAU * k as f64 / m))
        .sum()
}

/// A character of a subgroup `H` whose values are sums of `M`-th roots of
/// unity: `add(h, acc)` adds the multiplicity of `ζ_M^k` in `χ(h)` to
/// `acc[k]`.
pub trait SubgroupCharacter: Sync {
    fn root_order(&self) -> usize;
    fn add_value(&self, h: &Mat, acc: &mut [i64]);
}

/// A linear character given by an exponent function: `χ(h) = ζ_M^{e(h)}`.
pub struct Linear<F: Fn(&Mat) -> u64 + Sync> {
    pub m: usize,
    pub exponent: F,
}

impl<F: Fn(&Mat) -> u64 + Sync> SubgroupCharacter for Linear<F> {
    fn root_order(&self) -> usize {
        self.m
    }

    fn add_value(&self, h: &Mat, acc: &mut [i64]) {
        acc[(self.exponent)(h) as usize % self.m] += 1;
    }
}

/// `Ind_H^G χ` via `Ind χ(C) = |G| / (|C| |H|) Σ_{h ∈ H ∩ C} χ(h)`.
pub fn induce(g: &FiniteGroup, h: &[u64], chi: &dyn SubgroupCharacter, exec: Execution) -> ClassFunction {
    let m = chi.root_order();
    let counts = exec.accumulate(h, g.num_classes() * m, |key, acc| {
        let x = g.unpack(*key);
        let c = g.class_of_key(*key);
        chi.add_value(&x, &mut acc[c * m..(c + 1) * m]);
    });
    let values = g
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let factor = g.order() as f64 / (c.size as f64 * h.len() as f64);
            cyclotomic_value(&counts[i * m..(i + 1) * m]) * factor
        })
        .collect();
    ClassFunction { values }
}
