//! Aligned text tables.

use sl2_branching::arith::FieldParams;
use sl2_branching::engine::{BranchingSeries, PacketProfile};
use sl2_branching::ktype::KType;

/// Columns padded to their widest cell.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        padded.join(" | ").trim_end().to_string()
    };
    let mut out = vec![line(header.iter().map(|s| s.to_string()).collect())];
    out.push(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
    out.extend(rows.iter().map(|r| line(r.clone())));
    out.join("\n") + "\n"
}

/// `(name, parameters)` for the K-type column pair.
fn split_ktype(k: &KType) -> (String, String) {
    match k {
        KType::Shalika { depth, phi, x } => (format!("S_{depth}"), format!("{phi}, {x}")),
        KType::FinitePS { label, .. } => ("PS".into(), label.clone()),
        KType::FiniteCuspidal(c) => (c.to_string(), "-".into()),
        KType::Leading { .. } => ("leading".into(), k.to_string()),
        other => (other.to_string(), "-".into()),
    }
}

pub fn series_table(s: &BranchingSeries, fp: &FieldParams) -> String {
    let mut rows = Vec::new();
    for (depth, entries) in s.per_depth() {
        let mut total = 0u128;
        for e in entries {
            let (name, params) = split_ktype(&e.ktype);
            let deg = e.ktype.degree(fp) * e.multiplicity as u128;
            total += deg;
            let name = if e.multiplicity > 1 { format!("{}x {name}", e.multiplicity) } else { name };
            rows.push(vec![depth.to_string(), name, params, deg.to_string()]);
        }
        rows.push(vec![String::new(), format!("total at depth {depth}"), String::new(), total.to_string()]);
    }
    let mut out = format!("# {} over q = {}, depth <= {}\n", s.source, fp.q(), s.max_depth);
    out += &table(&["depth", "K-type", "parameters", "degree"], &rows);
    match s.total_degree() {
        Ok(t) => out += &format!("total degree: {t}\n"),
        Err(e) => out += &format!("total degree: {e}\n"),
    }
    out
}

pub fn packet_table(p: &PacketProfile) -> String {
    let mut rows: Vec<Vec<String>> = p
        .leading_counts
        .iter()
        .map(|(d, c)| vec![d.to_string(), c.to_string(), "leading".into()])
        .collect();
    rows.extend(p.counts.iter().map(|(d, c)| {
        vec![d.to_string(), c.to_string(), if *c == 2 { "ok".into() } else { "VIOLATION".into() }]
    }));
    table(&["depth", "components", "status"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alignment() {
        let t = table(&["a", "bb"], &[vec!["long".into(), "x".into()]]);
        assert_eq!(t, "a    | bb\n-----+---\nlong | x\n");
    }
}
