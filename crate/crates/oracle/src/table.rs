//! Character table of `SL2(F_p)` by the Burnside–Dixon method: common
//! eigenvectors of the class-multiplication matrices over a prime field
//! `F_ℓ`, lifted to complex values through power maps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2_branching::arith::Sign;

use crate::classfn::{cyclotomic_value, induce, inner_product, ClassFunction, Linear};
use crate::error::{OracleError, Result};
use crate::exec::Execution;
use crate::group::{inv_mod, is_prime, pow_mod, primitive_root, FiniteGroup, Mat, DEFAULT_BUDGET};
use crate::subgroup::Subgroup;

/// What an irreducible character of `SL2(F_q)` is, read off from its
/// relation to the Borel-induced characters and its restriction to the
/// upper unipotent group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Trivial,
    Steinberg,
    /// `Ξ^±`, the halves of `Ind_B sgn`; `+` contains `Ψ` on `U`.
    Xi(Sign),
    PrincipalSeries,
    /// `σ0^±`, the cuspidals of degree `(q-1)/2`; `+` contains `Ψ` on `U`.
    SpecialCuspidal(Sign),
    Cuspidal,
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub degree: u64,
    pub kind: RowKind,
    /// `χ(-I) / χ(1)`
    pub central: Sign,
    /// Multiplicity of `ζ_e^k` as an eigenvalue of `ρ(g)`, per class.
    pub multiplicities: Vec<Vec<u32>>,
    pub values: ClassFunction,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: FiniteGroup,
    /// Exponent of the group; every value lies in `Z[ζ_e]`.
    pub exponent: u64,
    /// The auxiliary prime `ℓ ≡ 1 mod e`, `ℓ > 2|G|`.
    pub prime: u64,
    pub rows: Vec<TableRow>,
}

impl CharacterTable {
    pub fn find(&self, kind: RowKind) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.kind == kind)
    }

    /// The value of row `r` at `x`, as multiplicities of `ζ_e^k`.
    pub fn multiplicities_at<'a>(&self, r: &'a TableRow, x: &Mat) -> &'a [u32] {
        &r.multiplicities[self.group.class_of(x)]
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut d: Vec<u64> = self.rows.iter().map(|r| r.degree).collect();
        d.sort_unstable();
        d
    }
}

/// Character table of `SL2(F_p)`.
pub fn character_table_sl2fp(p: u64, exec: Execution) -> Result<CharacterTable> {
    if !matches!(p, 3 | 5 | 7 | 11) {
        return Err(OracleError::Unsupported(format!("character tables are built for p in {{3,5,7,11}}, not {p}")));
    }
    let g = FiniteGroup::new(p, 1, DEFAULT_BUDGET, exec)?;
    let k = g.num_classes();
    let order = g.order() as u64;
    let e = g.exponent();
    let ell = (1..).map(|i| i * e + 1).find(|&l| l > 2 * order && is_prime(l)).expect("Dirichlet");
    let id_class = g.class_of(&[1, 0, 0, 1]);
    let sizes: Vec<u64> = g.classes().iter().map(|c| c.size).collect();
    let inverse_class: Vec<usize> = g.classes().iter().map(|c| g.class_of(&g.inv(&c.rep))).collect();

    // a[i][j][t] = #{x ∈ C_i : x^-1 z_t ∈ C_j}, z_t the representative of C_t
    let columns = exec.map_range(k, |t| {
        let z = g.classes()[t].rep;
        let mut col = vec![0u64; k * k];
        for idx in 0..g.order() {
            let x = g.element(idx);
            let i = g.class_of_index(idx);
            let j = g.class_of(&g.mul(&g.inv(&x), &z));
            col[i * k + j] += 1;
        }
        col
    });
    let a = |i: usize, j: usize, t: usize| columns[t][i * k + j] % ell;

    // a random combination Σ c_i A_i with A_i[j][t] = a(i, j, t) and k distinct eigenvalues
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut found = None;
    for _ in 0..64 {
        let coeffs: Vec<u64> = (0..k).map(|_| rng.random_range(0..ell)).collect();
        let mat: Vec<Vec<u64>> = (0..k)
            .map(|j| (0..k).map(|t| (0..k).map(|i| coeffs[i] * a(i, j, t) % ell).sum::<u64>() % ell).collect())
            .collect();
        let eig: Vec<u64> = (0..ell).filter(|&lam| det_shifted(&mat, lam, ell) == 0).collect();
        if eig.len() == k {
            found = Some((mat, eig));
            break;
        }
    }
    let (mat, eigenvalues) = found.ok_or_else(|| OracleError::Table("no separating class combination".into()))?;

    let z_hat = pow_mod(primitive_root(ell), (ell - 1) / e, ell);
    let e_inv = inv_mod(e % ell, ell).expect("ℓ ∤ e");
    let power_classes: Vec<Vec<usize>> =
        g.classes().iter().map(|c| (0..e).map(|s| g.class_of(&g.pow(&c.rep, s))).collect()).collect();

    let mut rows = Vec::with_capacity(k);
    for lam in eigenvalues {
        let mut omega = null_vector(&mat, lam, ell).ok_or_else(|| OracleError::Table("eigenspace not one-dimensional".into()))?;
        let norm = inv_mod(omega[id_class], ell).ok_or_else(|| OracleError::Table("ω(1) = 0".into()))?;
        omega.iter_mut().for_each(|w| *w = *w * norm % ell);
        let s = (0..k).fold(0u64, |acc, j| {
            (acc + omega[j] * omega[inverse_class[j]] % ell * inv_mod(sizes[j] % ell, ell).expect("unit") % ell) % ell
        });
        let d2 = order % ell * inv_mod(s, ell).ok_or_else(|| OracleError::Table("zero norm".into()))? % ell;
        let degree = (1..=order).take_while(|d| d * d <= order).find(|d| d * d % ell == d2).ok_or_else(|| {
            OracleError::Table(format!("χ(1)^2 ≡ {d2} has no small root"))
        })?;
        let chi_hat: Vec<u64> =
            (0..k).map(|j| omega[j] * degree % ell * inv_mod(sizes[j] % ell, ell).expect("unit") % ell).collect();
        let mut multiplicities = Vec::with_capacity(k);
        for pcs in &power_classes {
            let mut mults = Vec::with_capacity(e as usize);
            for kk in 0..e {
                let mut acc = 0u64;
                for (s, &cls) in pcs.iter().enumerate() {
                    let root = pow_mod(z_hat, (e - (s as u64 * kk) % e) % e, ell);
                    acc = (acc + chi_hat[cls] * root) % ell;
                }
                let m = acc * e_inv % ell;
                if m > degree {
                    return Err(OracleError::Table(format!("eigenvalue multiplicity {m} exceeds degree {degree}")));
                }
                mults.push(m as u32);
            }
            if mults.iter().map(|&m| m as u64).sum::<u64>() != degree {
                return Err(OracleError::Table("multiplicities do not sum to the degree".into()));
            }
            multiplicities.push(mults);
        }
        let values = ClassFunction {
            values: multiplicities
                .iter()
                .map(|ms| cyclotomic_value(&ms.iter().map(|&m| m as i64).collect::<Vec<_>>()))
                .collect(),
        };
        let minus = values.at(&g, &g.minus_identity()).re;
        let central = if minus > 0.0 { Sign::Plus } else { Sign::Minus };
        rows.push(TableRow { degree, kind: RowKind::Cuspidal, central, multiplicities, values });
    }
    classify_rows(&g, &mut rows, exec)?;
    rows.sort_by_key(|r| (r.degree, kind_order(r.kind)));
    Ok(CharacterTable { group: g, exponent: e, prime: ell, rows })
}

fn kind_order(k: RowKind) -> u8 {
    match k {
        RowKind::Trivial => 0,
        RowKind::SpecialCuspidal(Sign::Plus) => 1,
        RowKind::SpecialCuspidal(Sign::Minus) => 2,
        RowKind::Xi(Sign::Plus) => 3,
        RowKind::Xi(Sign::Minus) => 4,
        RowKind::Cuspidal => 5,
        RowKind::Steinberg => 6,
        RowKind::PrincipalSeries => 7,
    }
}

/// Characters `λ_j(a) = ζ_{p-1}^{j log a}` of the diagonal torus, induced from
/// the Borel subgroup.
pub fn borel_induced(g: &FiniteGroup, j: u64, exec: Execution) -> ClassFunction {
    let p = g.p();
    let log = discrete_logs(p);
    let b = Subgroup::borel(g, 1, exec);
    let chi = Linear { m: (p - 1) as usize, exponent: move |x: &Mat| j * log[(x[0] % p) as usize] };
    induce(g, &b.keys, &chi, exec)
}

/// `log[a]` to the base of the least primitive root, for `a` a unit mod `p`.
pub fn discrete_logs(p: u64) -> Vec<u64> {
    let root = primitive_root(p);
    let mut log = vec![0u64; p as usize];
    let mut x = 1u64;
    for i in 0..p - 1 {
        log[x as usize] = i;
        x = x * root % p;
    }
    log
}

/// `⟨Res_U χ, Ψ⟩ > 0` with `Ψ(x) = exp(2πi x / p)` on `U = {[[1,x],[0,1]]}`.
fn contains_psi(g: &FiniteGroup, chi: &ClassFunction) -> bool {
    let p = g.p();
    let s: Complex64 = (0..p)
        .map(|x| chi.at(g, &[1, x, 0, 1]) * Complex64::from_polar(1.0, -std::f64::consts::TAU * x as f64 / p as f64))
        .sum();
    s.re / p as f64 > 0.5
}

fn classify_rows(g: &FiniteGroup, rows: &mut [TableRow], exec: Execution) -> Result<()> {
    let q = g.p();
    let induced: Vec<ClassFunction> = (0..q - 1).map(|j| borel_induced(g, j, exec)).collect();
    let sgn = (q - 1) / 2;
    for row in rows.iter_mut() {
        let mut hits = Vec::new();
        for (j, ind) in induced.iter().enumerate() {
            if inner_product(g, ind, &row.values)? != 0 {
                hits.push(j as u64);
            }
        }
        let plus_minus = |b: bool| if b { Sign::Plus } else { Sign::Minus };
        row.kind = match (hits.as_slice(), row.degree) {
            ([], d) if 2 * d == q - 1 => RowKind::SpecialCuspidal(plus_minus(contains_psi(g, &row.values))),
            ([], d) if d == q - 1 => RowKind::Cuspidal,
            ([0], 1) => RowKind::Trivial,
            ([0], d) if d == q => RowKind::Steinberg,
            ([j], d) if *j == sgn && 2 * d == q + 1 => RowKind::Xi(plus_minus(contains_psi(g, &row.values))),
            (_, d) if d == q + 1 => RowKind::PrincipalSeries,
            (h, d) => return Err(OracleError::Table(format!("unrecognised row of degree {d} meeting {h:?}"))),
        };
    }
    Ok(())
}

/// `det(M - λI)` over `F_ℓ`.
fn det_shifted(m: &[Vec<u64>], lam: u64, ell: u64) -> u64 {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = (row[i] + ell - lam) % ell;
    }
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else { return 0 };
        if piv != col {
            a.swap(piv, col);
            det = (ell - det) % ell;
        }
        det = det * a[col][col] % ell;
        let inv = inv_mod(a[col][col], ell).expect("nonzero pivot");
        for r in col + 1..n {
            let f = a[r][col] * inv % ell;
            if f != 0 {
                for c in col..n {
                    a[r][c] = (a[r][c] + ell - f * a[col][c] % ell) % ell;
                }
            }
        }
    }
    det
}

/// A nonzero vector spanning the kernel of `M - λI`, if it is a line.
fn null_vector(m: &[Vec<u64>], lam: u64, ell: u64) -> Option<Vec<u64>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.to_vec();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = (row[i] + ell - lam) % ell;
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..n).find(|&i| a[i][col] != 0) else { continue };
        a.swap(piv, r);
        let inv = inv_mod(a[r][col], ell).expect("nonzero");
        for c in 0..n {
            a[r][c] = a[r][c] * inv % ell;
        }
        for i in 0..n {
            if i != r && a[i][col] != 0 {
                let f = a[i][col];
                for c in 0..n {
                    a[i][c] = (a[i][c] + ell - f * a[r][c] % ell) % ell;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if pivots.len() + 1 != n {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut v = vec![0u64; n];
    v[free] = 1;
    for (row, &col) in pivots.iter().enumerate() {
        v[col] = (ell - a[row][free]) % ell;
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_f3_table() {
        let t = character_table_sl2fp(3, Execution::Parallel).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1, 2, 2, 2, 3]);
        assert!(t.find(RowKind::SpecialCuspidal(Sign::Plus)).is_some());
        assert!(t.find(RowKind::SpecialCuspidal(Sign::Minus)).is_some());
        assert!(t.find(RowKind::Xi(Sign::Plus)).is_some());
        assert_eq!(t.find(RowKind::Cuspidal).unwrap().central, Sign::Minus);
    }

    #[test]
    fn tables_are_orthonormal() {
        for p in [3, 5, 7, 11] {
            let t = character_table_sl2fp(p, Execution::Parallel).unwrap();
            let g = &t.group;
            assert_eq!(t.rows.len() as u64, p + 4);
            let sum_sq: u64 = t.rows.iter().map(|r| r.degree * r.degree).sum();
            assert_eq!(sum_sq, g.order() as u64);
            for (i, a) in t.rows.iter().enumerate() {
                assert_eq!(g.order() as u64 % a.degree, 0);
                for (j, b) in t.rows.iter().enumerate() {
                    let ip = inner_product(g, &a.values, &b.values).unwrap();
                    assert_eq!(ip, (i == j) as i64, "p={p} rows {i},{j}");
                }
            }
        }
    }

    #[test]
    fn kinds_for_p5() {
        let t = character_table_sl2fp(5, Execution::Sequential).unwrap();
        assert!(t.degrees().contains(&4));
        let specials: Vec<_> = t.rows.iter().filter(|r| matches!(r.kind, RowKind::SpecialCuspidal(_))).collect();
        assert_eq!(specials.len(), 2);
        assert!(specials.iter().all(|r| r.degree == 2 && r.central == Sign::Minus));
        assert_eq!(t.rows.iter().filter(|r| r.kind == RowKind::PrincipalSeries).count(), 1);
    }

    #[test]
    fn unsupported_prime() {
        assert!(character_table_sl2fp(13, Execution::Sequential).is_err());
    }
}
