//! The shared CSV grid layout: a `Slot,1,2,...` header followed by one row
//! per team, labelled `1..` in order. Timetables, HA-assignments and
//! OCT-maps all use it.

use std::fmt::Display;

use crate::error::{Error, Result};

/// Reads a grid, returning the body cells (row labels stripped).
pub(crate) fn read(text: &str) -> Result<Vec<Vec<String>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());

    let mut records = reader.records();
    let header = match records.next() {
        Some(r) => r?,
        None => return Err(parse_err(1, "empty input")),
    };
    let line_of = |r: &csv::StringRecord| r.position().map_or(0, |p| p.line() as usize);
    if header.get(0).map(|c| c.eq_ignore_ascii_case("slot")) != Some(true) {
        return Err(parse_err(line_of(&header), "header must start with `Slot`"));
    }
    let n_cols = header.len() - 1;
    if n_cols == 0 {
        return Err(parse_err(line_of(&header), "header lists no slots"));
    }
    for (i, cell) in header.iter().skip(1).enumerate() {
        if cell.parse::<usize>().ok() != Some(i + 1) {
            return Err(parse_err(
                line_of(&header),
                &format!("header column {} should be `{}`, found `{cell}`", i + 2, i + 1),
            ));
        }
    }

    let mut rows = Vec::new();
    for record in records {
        let record = record?;
        let line = line_of(&record);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != n_cols + 1 {
            return Err(parse_err(
                line,
                &format!("expected {} cells, found {}", n_cols + 1, record.len()),
            ));
        }
        let label = &record[0];
        if label.parse::<usize>().ok() != Some(rows.len() + 1) {
            return Err(parse_err(
                line,
                &format!("row label should be `{}`, found `{label}`", rows.len() + 1),
            ));
        }
        rows.push(record.iter().skip(1).map(str::to_owned).collect());
    }
    if rows.is_empty() {
        return Err(parse_err(line_of(&header) + 1, "no team rows"));
    }
    Ok(rows)
}

pub(crate) fn write<T: Display>(n_cols: usize, rows: impl IntoIterator<Item = Vec<T>>) -> String {
    let mut out = String::from("Slot");
    for s in 1..=n_cols {
        out.push_str(&format!(",{s}"));
    }
    out.push('\n');
    for (i, row) in rows.into_iter().enumerate() {
        out.push_str(&(i + 1).to_string());
        for cell in row {
            out.push_str(&format!(",{cell}"));
        }
        out.push('\n');
    }
    out
}

pub(crate) fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_owned(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_body_without_labels() {
        let rows = read("Slot,1,2\n1,a,b\n2, c ,d\n").unwrap();
        assert_eq!(rows, vec![vec!["a", "b"], vec!["c", "d"]]);
    }

    #[test]
    fn rejects_bad_header_and_ragged_rows() {
        assert!(matches!(read("Team,1\n1,x\n"), Err(Error::Parse { .. })));
        assert!(matches!(read("Slot,1,3\n1,x,y\n"), Err(Error::Parse { .. })));
        let err = read("Slot,1,2\n1,a\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(matches!(read("Slot,1\n2,x\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn write_then_read() {
        let text = write(2, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(text, "Slot,1,2\n1,1,2\n2,3,4\n");
        assert_eq!(read(&text).unwrap()[1], vec!["3", "4"]);
    }
}
