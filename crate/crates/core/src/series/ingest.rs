//! Readers for the comma-separated input formats.
//!
//! * counts: `Province/State,Country/Region,Lat,Long,<M/D/YY>...`, one row per province,
//!   cumulative non-negative values; provinces are summed per country.
//! * prices: `Date,Open,High,Low,Close,Adj Close,Volume`; `Adj Close` is kept and rows where
//!   it is empty or `null` are skipped.
//! * rates: `date,rate_pct`, annual percent.
//! * factors: `date,Mkt.RF,SMB,HML,MOM,RMW,CMA,RF` in percent, stored as fractions.
//!
//! Every error names the file, the 1-based line and the offending field.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;

use super::Series;
use crate::error::{Error, Result};
use crate::regression::FactorPanel;

pub const COUNTS_HEADER: [&str; 4] = ["Province/State", "Country/Region", "Lat", "Long"];
pub const PRICE_HEADER: [&str; 7] = ["Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"];
pub const RATES_HEADER: [&str; 2] = ["date", "rate_pct"];
pub const FACTOR_COLUMNS: [&str; 7] = ["Mkt.RF", "SMB", "HML", "MOM", "RMW", "CMA", "RF"];

struct Table {
    path: PathBuf,
    header: Vec<String>,
    /// (line number, fields)
    rows: Vec<(u64, Vec<String>)>,
}

impl Table {
    fn err(&self, line: u64, field: &str, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.clone(),
            line,
            field: field.to_string(),
            msg: msg.into(),
        }
    }
}

fn read_table(path: &Path) -> Result<Table> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut header = None;
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: e.position().map(|p| p.line()).unwrap_or(0),
            field: "<record>".into(),
            msg: e.to_string(),
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let fields: Vec<String> = rec.iter().map(str::to_string).collect();
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        if header.is_none() {
            header = Some(fields);
        } else {
            rows.push((line, fields));
        }
    }
    let header = header.ok_or_else(|| Error::Parse {
        path: path.to_path_buf(),
        line: 1,
        field: "<header>".into(),
        msg: "file is empty".into(),
    })?;
    let table = Table {
        path: path.to_path_buf(),
        header,
        rows,
    };
    for (line, fields) in &table.rows {
        if fields.len() != table.header.len() {
            return Err(table.err(
                *line,
                "<record>",
                format!("expected {} fields, found {}", table.header.len(), fields.len()),
            ));
        }
    }
    Ok(table)
}

fn expect_header(t: &Table, expected: &[&str]) -> Result<()> {
    for (i, want) in expected.iter().enumerate() {
        match t.header.get(i) {
            Some(got) if got == want => {}
            Some(got) => {
                return Err(t.err(1, got, format!("expected header column `{want}`")));
            }
            None => return Err(t.err(1, want, "missing header column")),
        }
    }
    Ok(())
}

fn parse_iso_date(t: &Table, line: u64, field: &str, raw: &str) -> Result<NaiveDate> {
    NaiveDate::parse_from_str(raw, "%Y-%m-%d").map_err(|e| t.err(line, field, format!("bad date `{raw}`: {e}")))
}

fn parse_number(t: &Table, line: u64, field: &str, raw: &str) -> Result<f64> {
    let v: f64 = raw
        .parse()
        .map_err(|_| t.err(line, field, format!("bad number `{raw}`")))?;
    if !v.is_finite() {
        return Err(t.err(line, field, format!("non-finite number `{raw}`")));
    }
    Ok(v)
}

fn check_increasing(t: &Table, dates: &[(u64, NaiveDate)], field: &str) -> Result<()> {
    for w in dates.windows(2) {
        if w[1].1 <= w[0].1 {
            return Err(t.err(w[1].0, field, format!("date {} does not follow {}", w[1].1, w[0].1)));
        }
    }
    Ok(())
}

/// Cumulative counts per country, provinces summed. Keys are sorted.
pub fn ingest_counts(path: impl AsRef<Path>) -> Result<BTreeMap<String, Series>> {
    let t = read_table(path.as_ref())?;
    expect_header(&t, &COUNTS_HEADER)?;
    let date_cols = &t.header[COUNTS_HEADER.len()..];
    if date_cols.is_empty() {
        return Err(t.err(1, "<header>", "no date columns"));
    }
    let mut dates = Vec::with_capacity(date_cols.len());
    for raw in date_cols {
        let d =
            NaiveDate::parse_from_str(raw, "%m/%d/%y").map_err(|e| t.err(1, raw, format!("bad M/D/YY date: {e}")))?;
        dates.push((1, d));
    }
    for w in dates.windows(2).zip(date_cols.iter().skip(1)) {
        if w.0[1].1 <= w.0[0].1 {
            return Err(t.err(1, w.1, "date columns out of order"));
        }
    }

    let mut totals: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (line, fields) in &t.rows {
        let country = &fields[1];
        if country.is_empty() {
            return Err(t.err(*line, "Country/Region", "empty country"));
        }
        let acc = totals
            .entry(country.clone())
            .or_insert_with(|| vec![0.0; date_cols.len()]);
        for (j, raw) in fields[COUNTS_HEADER.len()..].iter().enumerate() {
            let v = parse_number(&t, *line, &date_cols[j], raw)?;
            if v < 0.0 {
                return Err(t.err(*line, &date_cols[j], format!("negative count {raw}")));
            }
            acc[j] += v;
        }
    }
    let dates: Vec<NaiveDate> = dates.into_iter().map(|(_, d)| d).collect();
    totals
        .into_iter()
        .map(|(c, v)| Series::new(dates.clone(), v).map(|s| (c, s)))
        .collect()
}

/// Adjusted close prices.
pub fn ingest_prices(path: impl AsRef<Path>) -> Result<Series> {
    let t = read_table(path.as_ref())?;
    expect_header(&t, &PRICE_HEADER)?;
    let mut dates = Vec::new();
    let mut values = Vec::new();
    for (line, fields) in &t.rows {
        let adj = &fields[5];
        if adj.is_empty() || adj.eq_ignore_ascii_case("null") {
            continue;
        }
        dates.push((*line, parse_iso_date(&t, *line, "Date", &fields[0])?));
        values.push(parse_number(&t, *line, "Adj Close", adj)?);
    }
    finish(&t, dates, values, "Date")
}

/// Annual policy rates in percent.
pub fn ingest_rates(path: impl AsRef<Path>) -> Result<Series> {
    let t = read_table(path.as_ref())?;
    expect_header(&t, &RATES_HEADER)?;
    let mut dates = Vec::new();
    let mut values = Vec::new();
    for (line, fields) in &t.rows {
        dates.push((*line, parse_iso_date(&t, *line, "date", &fields[0])?));
        values.push(parse_number(&t, *line, "rate_pct", &fields[1])?);
    }
    finish(&t, dates, values, "date")
}

fn finish(t: &Table, dates: Vec<(u64, NaiveDate)>, values: Vec<f64>, field: &str) -> Result<Series> {
    check_increasing(t, &dates, field)?;
    if dates.is_empty() {
        return Err(t.err(1, "<file>", "no data rows"));
    }
    Series::new(dates.into_iter().map(|(_, d)| d).collect(), values)
}

/// Factor returns panel. Percent values are divided by 100. Any subset of the known factor
/// columns may be present; unknown columns are rejected.
pub fn ingest_factors(path: impl AsRef<Path>) -> Result<FactorPanel> {
    let t = read_table(path.as_ref())?;
    if t.header.first().map(String::as_str) != Some("date") {
        return Err(t.err(
            1,
            t.header.first().map_or("<header>", |s| s),
            "expected `date` as first column",
        ));
    }
    let names: Vec<&String> = t.header[1..].iter().collect();
    for n in &names {
        if !FACTOR_COLUMNS.contains(&n.as_str()) {
            return Err(t.err(1, n, "unknown factor column"));
        }
    }
    let mut dates = Vec::new();
    let mut cols: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for (line, fields) in &t.rows {
        dates.push((*line, parse_iso_date(&t, *line, "date", &fields[0])?));
        for (j, name) in names.iter().enumerate() {
            cols[j].push(parse_number(&t, *line, name, &fields[j + 1])? / 100.0);
        }
    }
    check_increasing(&t, &dates, "date")?;
    if dates.is_empty() {
        return Err(t.err(1, "<file>", "no data rows"));
    }
    FactorPanel::new(
        dates.into_iter().map(|(_, d)| d).collect(),
        names.into_iter().cloned().zip(cols).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn counts_sum_provinces() {
        let f = write(
            "Province/State,Country/Region,Lat,Long,1/22/20,1/23/20\n\
             A,Xland,0,0,1,2\n\
             B,Xland,0,0,3,4\n\
             ,Yland,0,0,5,5\n",
        );
        let m = ingest_counts(f.path()).unwrap();
        assert_eq!(m["Xland"].values(), &[4.0, 6.0]);
        assert_eq!(m["Yland"].values(), &[5.0, 5.0]);
        assert_eq!(m["Xland"].first_date(), NaiveDate::from_ymd_opt(2020, 1, 22).unwrap());
    }

    #[test]
    fn counts_reject_unordered_dates() {
        let f = write("Province/State,Country/Region,Lat,Long,1/23/20,1/22/20\n,X,0,0,1,2\n");
        let e = ingest_counts(f.path()).unwrap_err().to_string();
        assert!(e.contains(":1:") && e.contains("1/22/20"), "{e}");
    }

    #[test]
    fn counts_errors_name_line_and_field() {
        let f = write("Province/State,Country/Region,Lat,Long,1/22/20\n,X,0,0,1\n,Y,0,0,abc\n");
        let e = ingest_counts(f.path()).unwrap_err();
        match e {
            Error::Parse { line, field, .. } => {
                assert_eq!(line, 3);
                assert_eq!(field, "1/22/20");
            }
            other => panic!("{other}"),
        }
        let f = write("Province,Country/Region,Lat,Long,1/22/20\n,X,0,0,1\n");
        assert!(matches!(ingest_counts(f.path()), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn prices_skip_null() {
        let f = write(
            "Date,Open,High,Low,Close,Adj Close,Volume\n\
             2020-01-02,1,1,1,1,100,0\n\
             2020-01-03,null,null,null,null,null,null\n\
             2020-01-06,1,1,1,1,110,0\n",
        );
        let s = ingest_prices(f.path()).unwrap();
        assert_eq!(s.values(), &[100.0, 110.0]);
        let f = write("Date,Open,High,Low,Close,Adj Close,Volume\n2020-01-03,1,1,1,1,1,0\n2020-01-02,1,1,1,1,1,0\n");
        assert!(matches!(ingest_prices(f.path()), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn rates_and_factors() {
        let f = write("date,rate_pct\n2020-01-01,0.75\n2020-03-11,0.25\n");
        assert_eq!(ingest_rates(f.path()).unwrap().values(), &[0.75, 0.25]);

        let f = write("date,Mkt.RF,SMB,RF\n2020-01-02,1.5,-0.5,0.01\n");
        let p = ingest_factors(f.path()).unwrap();
        assert_eq!(p.column("Mkt.RF").unwrap(), &[0.015]);
        assert!(p.column("MOM").is_none());

        let f = write("date,Mkt.RF,XYZ\n2020-01-02,1,2\n");
        assert!(ingest_factors(f.path()).is_err());
    }
}
