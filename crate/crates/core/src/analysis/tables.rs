//! Plain tables rendered as TSV, aligned text or markdown.

use super::{DimensionReport, SeriesTable};
use crate::relations::Family;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: Vec<String>) -> Self {
        Table {
            title: title.into(),
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.headers.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.headers).chain(&self.rows) {
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }

    fn widths(&self) -> Vec<usize> {
        (0..self.headers.len())
            .map(|c| {
                std::iter::once(&self.headers)
                    .chain(&self.rows)
                    .map(|r| r[c].len())
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Right-aligned columns with a rule under the header.
    pub fn to_aligned(&self) -> String {
        let widths = self.widths();
        let fmt = |row: &[String]| {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            cells.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = format!("{}\n", self.title);
        out.push_str(&fmt(&self.headers));
        let total: usize = widths.iter().sum::<usize>() + 2 * widths.len().saturating_sub(1);
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&fmt(row));
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("**{}**\n\n", self.title);
        out.push_str(&format!("| {} |\n", self.headers.join(" | ")));
        out.push_str(&format!("|{}\n", "---:|".repeat(self.headers.len())));
        for row in &self.rows {
            out.push_str(&format!("| {} |\n", row.join(" | ")));
        }
        out
    }
}

/// Depth columns shown for weights up to `k_max`: `0..=k_max/2`.
fn depth_headers(r_max: usize) -> Vec<String> {
    let mut h = vec!["k/r".to_string()];
    h.extend((0..=r_max).map(|r| r.to_string()));
    h.push("Total".into());
    h
}

/// Computed depth-graded dimensions, one row per weight.
pub fn depth_table(reports: &[DimensionReport]) -> Table {
    let r_max = reports
        .iter()
        .map(|r| r.weight as usize / 2)
        .max()
        .unwrap_or(1);
    let family = reports
        .first()
        .and_then(|r| r.family)
        .map_or("system".to_string(), |f| f.to_string());
    let mut t = Table::new(
        format!("Depth-graded dimensions ({family})"),
        depth_headers(r_max),
    );
    for rep in reports {
        let mut row = vec![rep.weight.to_string()];
        row.extend((0..=r_max).map(|r| rep.depth_dim(r).to_string()));
        row.push(rep.corank.to_string());
        t.push(row);
    }
    t
}

/// Expected depth-graded counts `c(k, r)` for the given weights.
pub fn expected_depth_table(series: &SeriesTable, weights: &[u32]) -> Table {
    let r_max = weights.iter().map(|&k| k as usize / 2).max().unwrap_or(1);
    let mut t = Table::new("Expected depth-graded dimensions", depth_headers(r_max));
    for &k in weights {
        let mut row = vec![k.to_string()];
        row.extend((0..=r_max).map(|r| series.depth(k, r as u32).to_string()));
        row.push(series.total(k).to_string());
        t.push(row);
    }
    t
}

/// Broadhurst–Kreimer dimensions for the given weights.
pub fn bk_table(series: &SeriesTable, weights: &[u32]) -> Table {
    let r_max = weights.iter().map(|&k| k as usize / 2).max().unwrap_or(1);
    let mut t = Table::new("Broadhurst-Kreimer dimensions", depth_headers(r_max));
    for &k in weights {
        let mut row = vec![k.to_string()];
        row.extend((0..=r_max).map(|r| series.bk(k, r as u32).to_string()));
        row.push(series.bk_total(k).to_string());
        t.push(row);
    }
    t
}

/// One column of coranks per family, plus the expected total.
pub fn family_table(
    families: &[Family],
    weights: &[u32],
    coranks: &[Vec<usize>],
    series: &SeriesTable,
) -> Table {
    let mut headers = vec!["k".to_string()];
    headers.extend(families.iter().map(|f| f.to_string()));
    headers.push("d_k".into());
    let mut t = Table::new("Coranks by family", headers);
    for (i, &k) in weights.iter().enumerate() {
        let mut row = vec![k.to_string()];
        row.extend(coranks.iter().map(|col| col[i].to_string()));
        row.push(series.total(k).to_string());
        t.push(row);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderers() {
        let mut t = Table::new("T", vec!["k".into(), "value".into()]);
        t.push(vec!["7".into(), "4".into()]);
        t.push(vec!["12".into(), "30".into()]);
        assert_eq!(t.to_tsv(), "k\tvalue\n7\t4\n12\t30\n");
        assert_eq!(
            t.to_aligned(),
            "T\n k  value\n---------\n 7      4\n12     30\n"
        );
        assert!(t.to_markdown().contains("| 12 | 30 |"));
    }
}
