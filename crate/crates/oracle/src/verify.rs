//! Finite-level checks of the branching rules: Shalika characters, the
//! principal-series identity and the depth-zero Mackey components.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use sl2_branching::arith::{int, FieldParams, Sign, SquareClass, UnitClass};
use sl2_branching::engine::{branch, BranchingSeries};
use sl2_branching::grep::{
    make_depth_zero_sc, make_principal_series, CharKx, CuspidalKind, FiniteCuspidal, GRep, PrincipalSeries,
    UnitRestriction, Vertex,
};
use sl2_branching::ktype::{shalika_degree, KType};

use crate::classfn::{induce, inner_product, ClassFunction, Linear, SubgroupCharacter, TOLERANCE};
use crate::error::{OracleError, Result};
use crate::exec::Execution;
use crate::group::{FiniteGroup, Mat};
use crate::report::{Report, Verdict};
use crate::shalika::{nontrivial_on_kernel, shalika_character, ShalikaSpec, PSI_SCALE};
use crate::subgroup::Subgroup;
use crate::table::{borel_induced, character_table_sl2fp, discrete_logs, CharacterTable, RowKind};

/// Lazily built groups `SL2(Z/p^n)`, the table of `SL2(F_p)` and the
/// Shalika characters already induced, shared between checks.
pub struct Groups {
    p: u64,
    budget: u128,
    exec: Execution,
    levels: BTreeMap<u32, Arc<FiniteGroup>>,
    table: Option<Arc<CharacterTable>>,
    shalika: HashMap<ShalikaSpec, Arc<ShalikaData>>,
}

/// An induced Shalika character together with the orders that went into it.
#[derive(Clone, Debug)]
pub struct ShalikaData {
    pub character: ClassFunction,
    pub subgroup_order: usize,
    pub centralizer_order: usize,
    pub facet_order: usize,
}

impl Groups {
    pub fn new(p: u64, budget: u128, exec: Execution) -> Self {
        Groups { p, budget, exec, levels: BTreeMap::new(), table: None, shalika: HashMap::new() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exec(&self) -> Execution {
        self.exec
    }

    pub fn field(&self) -> FieldParams {
        FieldParams::new(self.p, 1).expect("odd prime")
    }

    pub fn group(&mut self, n: u32) -> Result<Arc<FiniteGroup>> {
        if let Some(g) = self.levels.get(&n) {
            return Ok(g.clone());
        }
        let g = Arc::new(FiniteGroup::new(self.p, n, self.budget, self.exec)?);
        self.levels.insert(n, g.clone());
        Ok(g)
    }

    pub fn table(&mut self) -> Result<Arc<CharacterTable>> {
        if let Some(t) = &self.table {
            return Ok(t.clone());
        }
        let t = Arc::new(character_table_sl2fp(self.p, self.exec)?);
        self.table = Some(t.clone());
        Ok(t)
    }

    /// `S_d(ϑ, X)` at its own level `d + 1`.
    pub fn shalika(&mut self, spec: &ShalikaSpec) -> Result<Arc<ShalikaData>> {
        if let Some(s) = self.shalika.get(spec) {
            return Ok(s.clone());
        }
        let g = self.group(spec.level())?;
        let (h, character) = shalika_character(&g, spec, self.exec)?;
        let data = Arc::new(ShalikaData {
            character,
            subgroup_order: h.subgroup.order(),
            centralizer_order: h.centralizer_order,
            facet_order: h.facet_order,
        });
        self.shalika.insert(*spec, data.clone());
        Ok(data)
    }

    fn table_row(&mut self, kind: RowKind, central: Option<Sign>) -> Result<ClassFunction> {
        let t = self.table()?;
        let rows: Vec<_> =
            t.rows.iter().filter(|r| r.kind == kind && central.is_none_or(|c| r.central == c)).collect();
        match rows.as_slice() {
            [row] => Ok(row.values.clone()),
            [] => Err(OracleError::Unsupported(format!("no row {kind:?} in the table of SL2(F_{})", self.p))),
            _ => Err(OracleError::Unsupported(format!(
                "{} rows of kind {kind:?}; cuspidal labels are not matched to characters of the torus",
                rows.len()
            ))),
        }
    }

    /// The character of an engine K-type as a class function on level `n`.
    pub fn realize(&mut self, k: &KType, n: u32) -> Result<ClassFunction> {
        let g = self.group(n)?;
        if k.depth() >= n {
            return Err(OracleError::Unsupported(format!("depth {} does not factor through level {n}", k.depth())));
        }
        let level_one = |this: &mut Self, kind: RowKind, central: Option<Sign>| -> Result<ClassFunction> {
            let t = this.table()?;
            Ok(this.table_row(kind, central)?.inflate(&t.group, &g))
        };
        match k {
            KType::Trivial => Ok(ClassFunction::trivial(&g)),
            KType::Steinberg => level_one(self, RowKind::Steinberg, None),
            KType::XiSgn(s) => level_one(self, RowKind::Xi(*s), None),
            KType::FiniteCuspidal(c) => match c.kind {
                CuspidalKind::SpecialPlus => level_one(self, RowKind::SpecialCuspidal(Sign::Plus), None),
                CuspidalKind::SpecialMinus => level_one(self, RowKind::SpecialCuspidal(Sign::Minus), None),
                CuspidalKind::Generic { .. } => level_one(self, RowKind::Cuspidal, Some(c.central)),
            },
            KType::FinitePS { label, .. } => {
                let j = parse_chi_label(label)?;
                let t = self.table()?;
                Ok(borel_induced(&t.group, j, self.exec).inflate(&t.group, &g))
            }
            KType::Shalika { depth, phi, x } => {
                let spec = ShalikaSpec::from_xparam(self.p, *depth, x, phi.central())?;
                let s = self.shalika(&spec)?;
                let from = self.group(spec.level())?;
                Ok(s.character.inflate(&from, &g))
            }
            KType::Leading { .. } => {
                Err(OracleError::Unsupported("positive-depth leading terms have no finite realisation here".into()))
            }
        }
    }

    /// `Σ m·χ_k` over the entries of a series, at level `n`.
    pub fn realize_series(&mut self, s: &BranchingSeries, n: u32) -> Result<ClassFunction> {
        let g = self.group(n)?;
        let mut acc = ClassFunction::zero(&g);
        for e in &s.entries {
            let chi = self.realize(&e.ktype, n)?;
            for _ in 0..e.multiplicity {
                acc = acc.add(&chi);
            }
        }
        Ok(acc)
    }
}

/// `chi{j}` → `j`
fn parse_chi_label(label: &str) -> Result<u64> {
    label
        .strip_prefix("chi")
        .and_then(|j| j.parse().ok())
        .ok_or_else(|| OracleError::Unsupported(format!("finite principal series {label:?} is not of the form chi<j>")))
}

/// The character of `k^x` whose restriction to `R^x` factors through
/// `F_p^x` as `a ↦ ζ_{p-1}^{j log a}`, in the engine's description.
pub fn depth_zero_character(j: u64, fp: &FieldParams) -> Result<GRep> {
    let p = fp.p();
    let j = j % (p - 1);
    if j == 0 {
        let chi = CharKx::new(0, UnitRestriction::Trivial, UnitClass::One, Sign::Plus, "1", fp)?;
        return Ok(GRep::PrincipalSeries(chi));
    }
    if 2 * j == p - 1 {
        // sgn_ϖ restricts to the Legendre symbol on units; take the full
        // reducible series so both constituents are emitted
        let chi = CharKx::sgn(SquareClass::Pi, fp)?;
        return Ok(GRep::PrincipalSeries(chi));
    }
    let label = format!("chi{j}");
    let chi = CharKx::new(0, UnitRestriction::Other(label.clone()), UnitClass::One, Sign::Minus.pow(j as i64), label, fp)?;
    match make_principal_series(chi, fp)? {
        PrincipalSeries::Irreducible(r) => Ok(r),
        PrincipalSeries::Reducible(..) => unreachable!("no sgn_tau set"),
    }
}

fn group_name(g: &FiniteGroup) -> String {
    format!("SL2(Z/{})", g.modulus())
}

fn budget_or_fail(name: String, e: OracleError) -> Report {
    match e {
        OracleError::BudgetExceeded { .. } => Report::skipped(name, e),
        other => {
            let mut r = Report::new(name).field("error", other);
            r.verdict = Verdict::Fail;
            r
        }
    }
}

/// Irreducibility, degree and exact depth of `S_d(ϑ, X)`.
pub fn verify_shalika_finite(groups: &mut Groups, spec: &ShalikaSpec) -> Report {
    let name = format!("shalika p={} d={} X=({},{}) theta={}", groups.p(), spec.depth, spec.u, spec.v, spec.central);
    let run = |groups: &mut Groups| -> Result<Report> {
        let g = groups.group(spec.level())?;
        let s = groups.shalika(spec)?;
        let chi = &s.character;
        let fp = groups.field();
        let expected = shalika_degree(spec.depth, &fp);
        let norm = inner_product(&g, chi, chi)?;
        let deep = nontrivial_on_kernel(&g, chi, spec.depth, groups.exec());
        let mut r = Report::new(name.clone())
            .field("group", group_name(&g))
            .field("group_order", g.order())
            .field("subgroup_order", s.subgroup_order)
            .field("centralizer_order", s.centralizer_order)
            .field("facet_order", s.facet_order)
            .field("psi_scale", PSI_SCALE)
            .field("degree", chi.degree(&g))
            .field("expected_degree", expected)
            .field("norm", norm);
        r.check("degree_matches", chi.degree(&g) as u128 == expected);
        r.check("irreducible", norm == 1);
        r.check("depth_exact", deep);
        Ok(r)
    };
    run(groups).unwrap_or_else(|e| budget_or_fail(name, e))
}

/// Gram matrix of the four `S_d(±, X_{1,0} / X_{ε,0})` at one depth.
pub fn verify_shalika_orthogonality(groups: &mut Groups, depth: u32) -> Report {
    let p = groups.p();
    let name = format!("shalika-gram p={p} d={depth}");
    let run = |groups: &mut Groups| -> Result<Report> {
        let specs: Vec<ShalikaSpec> = [UnitClass::One, UnitClass::Eps]
            .into_iter()
            .flat_map(|z| [Sign::Plus, Sign::Minus].map(|c| ShalikaSpec::split(p, depth, z, c)))
            .collect();
        let g = groups.group(depth + 1)?;
        let chars = specs.iter().map(|s| groups.shalika(s)).collect::<Result<Vec<_>>>()?;
        let mut gram = Vec::new();
        let mut identity = true;
        for (i, a) in chars.iter().enumerate() {
            let row = chars
                .iter()
                .enumerate()
                .map(|(j, b)| {
                    let ip = inner_product(&g, &a.character, &b.character)?;
                    identity &= ip == (i == j) as i64;
                    Ok(ip.to_string())
                })
                .collect::<Result<Vec<_>>>()?;
            gram.push(format!("[{}]", row.join(",")));
        }
        let mut r = Report::new(name.clone())
            .field("group", group_name(&g))
            .field("parameters", specs.iter().map(|s| format!("({},{};{})", s.u, s.v, s.central)).collect::<Vec<_>>().join(" "))
            .field("inner_products", gram.join(" "));
        r.check("orthonormal", identity);
        Ok(r)
    };
    run(groups).unwrap_or_else(|e| budget_or_fail(name, e))
}

/// `Ind_{B(Z/p^n)}^{SL2(Z/p^n)} χ̄_j` against the engine's series truncated
/// below depth `n`.
pub fn verify_ps_branching_finite(groups: &mut Groups, n: u32, j: u64) -> Report {
    let p = groups.p();
    let name = format!("principal-series p={p} n={n} chi=chi{j}");
    let run = |groups: &mut Groups| -> Result<Report> {
        let fp = groups.field();
        let g = groups.group(n)?;
        let exec = groups.exec();
        let log = discrete_logs(p);
        let b = Subgroup::borel(&g, n, exec);
        let chi = Linear { m: (p - 1) as usize, exponent: |x: &Mat| j * log[(x[0] % p) as usize] };
        let lhs = induce(&g, &b.keys, &chi, exec);
        let rep = depth_zero_character(j, &fp)?;
        let series = branch(&rep, int(n as i64 - 1), &fp)?;
        let rhs = groups.realize_series(&series, n)?;
        let residual = lhs.max_distance(&rhs);
        let components: Vec<String> = series.entries.iter().map(|e| e.ktype.to_string()).collect();
        let mut r = Report::new(name.clone())
            .field("group", group_name(&g))
            .field("borel_order", b.order())
            .field("representation", &rep)
            .field("components", components.join(" + "))
            .field("lhs_degree", lhs.degree(&g))
            .field("rhs_degree", rhs.degree(&g))
            .field("max_residual", format!("{residual:.3e}"));
        r.check("degrees_agree", lhs.degree(&g) == rhs.degree(&g));
        r.check("pointwise_equal", residual < TOLERANCE);
        Ok(r)
    };
    run(groups).unwrap_or_else(|e| budget_or_fail(name, e))
}

/// Which depth-zero cuspidal a Mackey check starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaKind {
    Generic,
    Special(Sign),
}

impl fmt::Display for SigmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaKind::Generic => f.write_str("generic"),
            SigmaKind::Special(s) => write!(f, "sigma0{s}"),
        }
    }
}

/// `σ^{α^t}` on `H_t = {c ≡ 0 mod p^{2t}}`: `x ↦ σ(α^{-t} x α^t mod p)`.
struct Conjugated<'a> {
    table: &'a CharacterTable,
    row: usize,
    shift: u64,
    p: u64,
}

impl SubgroupCharacter for Conjugated<'_> {
    fn root_order(&self) -> usize {
        self.table.exponent as usize
    }

    fn add_value(&self, h: &Mat, acc: &mut [i64]) {
        let p = self.p;
        let y = [h[0] % p, h[1] * self.shift % p, h[2] / self.shift % p, h[3] % p];
        let row = &self.table.rows[self.row];
        for (a, &m) in acc.iter_mut().zip(self.table.multiplicities_at(row, &y)) {
            *a += m as i64;
        }
    }
}

/// `Ind_{H_t}^K σ^{α^t}` at level `2t+1` against the engine's depth-`2t`
/// components of `c-Ind_K^G σ`.
pub fn verify_dzsc_mackey_finite(groups: &mut Groups, kind: SigmaKind, t: u32) -> Report {
    let p = groups.p();
    let name = format!("mackey p={p} sigma={kind} t={t}");
    let run = |groups: &mut Groups| -> Result<Report> {
        let fp = groups.field();
        let table = groups.table()?;
        let n = 2 * t + 1;
        let g = groups.group(n)?;
        let exec = groups.exec();
        let row_kind = match kind {
            SigmaKind::Generic => RowKind::Cuspidal,
            SigmaKind::Special(s) => RowKind::SpecialCuspidal(s),
        };
        let row = table
            .rows
            .iter()
            .position(|r| r.kind == row_kind)
            .ok_or_else(|| OracleError::Unsupported(format!("no {row_kind:?} row")))?;
        let central = table.rows[row].central;
        let sigma = match kind {
            SigmaKind::Generic => FiniteCuspidal::generic(if central == Sign::Minus { 1 } else { 2 }, &fp)?,
            SigmaKind::Special(s) => FiniteCuspidal::special(s, &fp),
        };
        let h = Subgroup::borel(&g, 2 * t, exec);
        let chi = Conjugated { table: &table, row, shift: p.pow(2 * t), p };
        let lhs = induce(&g, &h.keys, &chi, exec);
        let rep = make_depth_zero_sc(Vertex::Zero, sigma.clone());
        let series = branch(&rep, int(2 * t as i64), &fp)?;
        let mut predicted = series.clone();
        predicted.entries.retain(|e| e.ktype.depth() == 2 * t);
        // for a generic row the engine's ω label is not matched; only the
        // central value and the degree are used
        let rhs = if t == 0 {
            table.rows[row].values.inflate(&table.group, &g)
        } else {
            groups.realize_series(&predicted, n)?
        };
        let residual = lhs.max_distance(&rhs);
        let norm = inner_product(&g, &lhs, &lhs)?;
        let components: Vec<String> = predicted.entries.iter().map(|e| e.ktype.to_string()).collect();
        let mut r = Report::new(name.clone())
            .field("group", group_name(&g))
            .field("mackey_subgroup_order", h.order())
            .field("sigma", &sigma)
            .field("sigma_central", central)
            .field("predicted", components.join(" + "))
            .field("induced_degree", lhs.degree(&g))
            .field("predicted_degree", rhs.degree(&g))
            .field("induced_norm", norm)
            .field("max_residual", format!("{residual:.3e}"));
        r.check("components_counted", norm as usize == predicted.entries.len().max(1));
        r.check("pointwise_equal", residual < TOLERANCE);
        Ok(r)
    };
    run(groups).unwrap_or_else(|e| budget_or_fail(name, e))
}

/// `[K : T K_m] = q^{2m-1}(q-1)` for the unramified torus `T_{1,ε}`: the
/// degree of the leading term of an unramified supercuspidal with `y = 0`.
pub fn verify_unramified_leading_index(groups: &mut Groups, m: u32) -> Report {
    let p = groups.p();
    let name = format!("unramified-leading-index p={p} m={m}");
    let run = |groups: &mut Groups| -> Result<Report> {
        let g = groups.group(m)?;
        let md = g.modulus();
        let eps = crate::group::least_nonresidue(p);
        let torus = Subgroup::filter(
            &g,
            "T(1,eps)",
            move |x| x[0] == x[3] && x[2] == eps * x[1] % md,
            groups.exec(),
        );
        torus.check(&g, 50, 3)?;
        let index = (g.order() / torus.order()) as u64;
        let expected = p.pow(2 * m - 1) * (p - 1);
        let mut r = Report::new(name.clone())
            .field("group", group_name(&g))
            .field("torus_order", torus.order())
            .field("index", index)
            .field("expected", expected);
        r.check("index_matches", index == expected);
        Ok(r)
    };
    run(groups).unwrap_or_else(|e| budget_or_fail(name, e))
}

/// Which batch of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Shalika,
    PrincipalSeries,
    Mackey,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "shalika" => Ok(Suite::Shalika),
            "ps" => Ok(Suite::PrincipalSeries),
            "mackey" => Ok(Suite::Mackey),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?}; expected shalika, ps, mackey or all")),
        }
    }
}

/// Runs a suite at levels up to `p^3`; cases over the budget are reported
/// as skipped.
pub fn run_suite(suite: Suite, p: u64, budget: u128, exec: Execution) -> Result<Vec<Report>> {
    if !matches!(p, 3 | 5 | 7 | 11) {
        return Err(OracleError::Unsupported(format!("verification needs p in {{3,5,7,11}}, got {p}")));
    }
    let mut groups = Groups::new(p, budget, exec);
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Shalika {
        for d in [1, 2] {
            for z in [UnitClass::One, UnitClass::Eps] {
                for c in [Sign::Plus, Sign::Minus] {
                    out.push(verify_shalika_finite(&mut groups, &ShalikaSpec::split(p, d, z, c)));
                }
            }
            out.push(verify_shalika_orthogonality(&mut groups, d));
        }
    }
    if all || suite == Suite::PrincipalSeries {
        for n in [2, 3] {
            for j in 0..=(p - 1) / 2 {
                out.push(verify_ps_branching_finite(&mut groups, n, j));
            }
        }
    }
    if all || suite == Suite::Mackey {
        for t in [0, 1] {
            for kind in [SigmaKind::Generic, SigmaKind::Special(Sign::Plus), SigmaKind::Special(Sign::Minus)] {
                out.push(verify_dzsc_mackey_finite(&mut groups, kind, t));
            }
        }
        for m in [1, 2] {
            out.push(verify_unramified_leading_index(&mut groups, m));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_BUDGET;

    #[test]
    fn shalika_level_nine() {
        let mut g = Groups::new(3, DEFAULT_BUDGET, Execution::Parallel);
        let r = verify_shalika_finite(&mut g, &ShalikaSpec::split(3, 1, UnitClass::One, Sign::Plus));
        assert!(r.passed(), "{r}");
        assert_eq!(r.get("degree"), Some("4"));
        let gram = verify_shalika_orthogonality(&mut g, 1);
        assert!(gram.passed(), "{gram}");
    }

    #[test]
    fn principal_series_level_nine() {
        let mut g = Groups::new(3, DEFAULT_BUDGET, Execution::Parallel);
        for j in [0, 1] {
            let r = verify_ps_branching_finite(&mut g, 2, j);
            assert!(r.passed(), "{r}");
            assert_eq!(r.get("lhs_degree"), Some("12"));
        }
    }

    #[test]
    fn mackey_t0_is_sigma() {
        let mut g = Groups::new(3, DEFAULT_BUDGET, Execution::Parallel);
        let r = verify_dzsc_mackey_finite(&mut g, SigmaKind::Special(Sign::Plus), 0);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn budget_skips() {
        let mut g = Groups::new(3, 1_000, Execution::Parallel);
        let r = verify_shalika_finite(&mut g, &ShalikaSpec::split(3, 2, UnitClass::One, Sign::Plus));
        assert_eq!(r.verdict, Verdict::Skipped);
    }

    #[test]
    fn chi_labels() {
        assert_eq!(parse_chi_label("chi3").unwrap(), 3);
        assert!(parse_chi_label("psi").is_err());
    }
}
