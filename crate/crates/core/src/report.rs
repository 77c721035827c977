//! One table model, three renderers. Output bytes depend only on the table contents.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
    Tex,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Markdown => "md",
            Format::Tex => "tex",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            "tex" | "latex" => Ok(Format::Tex),
            _ => Err(Error::invalid(format!("unknown output format `{s}`"))),
        }
    }
}

/// A labelled row spanning one or more physical lines (stacked statistics).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Row {
    pub label: String,
    pub lines: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub title: String,
    /// Spanning headers over consecutive columns, as `(name, width)`.
    pub groups: Vec<(String, usize)>,
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: Vec<String>) -> Self {
        Self {
            title: title.into(),
            columns,
            ..Default::default()
        }
    }

    pub fn push_row(&mut self, label: impl Into<String>, lines: Vec<Vec<String>>) {
        self.rows.push(Row {
            label: label.into(),
            lines,
        });
    }

    /// Column names qualified by their spanning group, for flat formats.
    fn flat_columns(&self) -> Vec<String> {
        if self.groups.is_empty() {
            return self.columns.clone();
        }
        let mut out = Vec::with_capacity(self.columns.len());
        let mut groups = self.groups.iter().flat_map(|(g, w)| std::iter::repeat_n(g, *w));
        for c in &self.columns {
            match groups.next() {
                Some(g) if !g.is_empty() => out.push(format!("{g} {c}")),
                _ => out.push(c.clone()),
            }
        }
        out
    }
}

/// Fixed-point formatting without negative zero.
pub fn fmt_num(v: f64, decimals: usize) -> String {
    if !v.is_finite() {
        return "NA".to_string();
    }
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn render_table(table: &Table, format: Format) -> Vec<u8> {
    match format {
        Format::Csv => render_csv(table),
        Format::Markdown => render_markdown(table).into_bytes(),
        Format::Tex => render_tex(table).into_bytes(),
    }
}

fn render_csv(table: &Table) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(table.flat_columns());
    // Writing to a Vec cannot fail.
    let _ = w.write_record(&header);
    for row in &table.rows {
        for (i, line) in row.lines.iter().enumerate() {
            let mut rec = vec![if i == 0 { row.label.clone() } else { String::new() }];
            rec.extend(line.iter().cloned());
            let _ = w.write_record(&rec);
        }
    }
    w.into_inner().unwrap_or_default()
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|")
}

fn render_markdown(table: &Table) -> String {
    let mut out = String::new();
    if !table.title.is_empty() {
        let _ = writeln!(out, "**{}**\n", md_escape(&table.title));
    }
    out.push_str("| |");
    for c in table.flat_columns() {
        let _ = write!(out, " {} |", md_escape(&c));
    }
    out.push_str("\n|---|");
    for _ in &table.columns {
        out.push_str("---:|");
    }
    out.push('\n');
    for row in &table.rows {
        for (i, line) in row.lines.iter().enumerate() {
            let label = if i == 0 { md_escape(&row.label) } else { String::new() };
            let _ = write!(out, "| {label} |");
            for cell in line {
                let _ = write!(out, " {} |", md_escape(cell));
            }
            out.push('\n');
        }
    }
    for n in &table.notes {
        let _ = writeln!(out, "\n{}", md_escape(n));
    }
    out
}

fn tex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' | '%' | '$' | '#' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            '<' => out.push_str("$<$"),
            '>' => out.push_str("$>$"),
            'Δ' => out.push_str("$\\Delta$"),
            '²' => out.push_str("$^2$"),
            _ => out.push(ch),
        }
    }
    out
}

/// Numeric cells may carry significance stars; those become superscripts.
fn tex_cell(s: &str) -> String {
    let stars = s.chars().rev().take_while(|c| *c == '*').count();
    if stars == 0 {
        return tex_escape(s).replace('-', "$-$");
    }
    let body = &s[..s.len() - stars];
    format!("{}$^{{{}}}$", tex_escape(body).replace('-', "$-$"), "*".repeat(stars))
}

fn render_tex(table: &Table) -> String {
    let ncol = table.columns.len();
    let mut out = String::new();
    out.push_str("\\begin{table}[!ht]\n\\centering\n");
    let _ = writeln!(out, "\\caption{{{}}}", tex_escape(&table.title));
    let _ = writeln!(out, "\\begin{{tabular}}{{l{}}}", "c".repeat(ncol));
    out.push_str("\\toprule\n");
    if !table.groups.is_empty() {
        for (g, w) in &table.groups {
            let _ = write!(out, "&\\multicolumn{{{w}}}{{c}}{{{}}}", tex_escape(g));
        }
        out.push_str("\\\\\n");
    }
    for c in &table.columns {
        let _ = write!(out, "&{}", tex_escape(c));
    }
    out.push_str("\\\\\\midrule\n");
    for row in &table.rows {
        for (i, line) in row.lines.iter().enumerate() {
            if i == 0 {
                out.push_str(&tex_escape(&row.label));
            }
            for cell in line {
                let _ = write!(out, "&{}", tex_cell(cell));
            }
            out.push_str("\\\\\n");
        }
    }
    out.push_str("\\bottomrule\n\\end{tabular}\n");
    for n in &table.notes {
        let _ = writeln!(out, "\\par\\footnotesize {}", tex_escape(n));
    }
    out.push_str("\\end{table}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_table() -> Table {
        let mut t = Table::new("Demo & test", vec!["a".into(), "b".into()]);
        t.groups = vec![("G".into(), 2)];
        t.push_row(
            "UK",
            vec![
                vec!["1.00".into(), "-2.50***".into()],
                vec!["(0.42)".into(), "(0.01)".into()],
            ],
        );
        t
    }

    #[test]
    fn negative_zero_is_normalised() {
        assert_eq!(fmt_num(-0.0001, 2), "0.00");
        assert_eq!(fmt_num(-0.02, 2), "-0.02");
        assert_eq!(fmt_num(f64::NAN, 2), "NA");
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new("", vec!["x".into(), "y".into()]);
        assert_eq!(render_table(&t, Format::Csv), b",x,y\n");
        let md = String::from_utf8(render_table(&t, Format::Markdown)).unwrap();
        assert_eq!(md.lines().count(), 2);
    }

    #[test]
    fn deterministic() {
        let t = sample_table();
        for f in [Format::Csv, Format::Markdown, Format::Tex] {
            assert_eq!(render_table(&t, f), render_table(&t, f));
        }
    }

    #[test]
    fn renders_stacked_rows() {
        let t = sample_table();
        let csv = String::from_utf8(render_table(&t, Format::Csv)).unwrap();
        assert_eq!(csv, ",G a,G b\nUK,1.00,-2.50***\n,(0.42),(0.01)\n");
        let tex = String::from_utf8(render_table(&t, Format::Tex)).unwrap();
        assert!(tex.contains("\\caption{Demo \\& test}"));
        assert!(tex.contains("&\\multicolumn{2}{c}{G}\\\\"));
        assert!(tex.contains("UK&1.00&$-$2.50$^{***}$\\\\"));
        let mut g = Table::new("p<0.1", vec!["x".into()]);
        g.groups = vec![("Δ²Deaths".into(), 1)];
        let tex = String::from_utf8(render_table(&g, Format::Tex)).unwrap();
        assert!(tex.contains("{$\\Delta$$^2$Deaths}"), "{tex}");
        assert!(tex.contains("p$<$0.1"));
    }
}
