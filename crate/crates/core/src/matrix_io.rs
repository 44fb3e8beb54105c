//! Matrix Market input, CSR storage and lower-triangular extraction.
//!
//! Only the `coordinate` layout is supported, with `real`, `integer` or
//! `pattern` fields and `general` or `symmetric` symmetry. Indices in the
//! file are 1-based; everything past the parser is 0-based.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// One stored entry of a sparse matrix in coordinate form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CooEntry {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

impl CooEntry {
    pub fn new(row: usize, col: usize, value: f64) -> Self {
        Self { row, col, value }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    General,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Integer,
    Pattern,
}

/// Contents of a parsed Matrix Market file.
///
/// `entries` are already expanded (symmetric files contribute both
/// triangles) and coalesced, sorted by `(row, col)`.
#[derive(Debug, Clone)]
pub struct MatrixMarket {
    pub n: usize,
    pub entries: Vec<CooEntry>,
    pub symmetry: Symmetry,
    pub field: Field,
}

impl MatrixMarket {
    pub fn is_pattern(&self) -> bool {
        self.field == Field::Pattern
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parse a Matrix Market coordinate file from any buffered reader.
pub fn parse_matrix_market<R: BufRead>(reader: R) -> Result<MatrixMarket> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (header_line, header) = match lines.next() {
        Some((no, line)) => (no, line?),
        None => return Err(parse_err(1, "empty input")),
    };
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" {
        return Err(parse_err(
            header_line,
            "expected '%%MatrixMarket matrix coordinate <field> <symmetry>' header",
        ));
    }
    if tokens[1] != "matrix" {
        return Err(Error::Unsupported {
            what: "object",
            value: tokens[1].clone(),
        });
    }
    if tokens[2] != "coordinate" {
        return Err(Error::Unsupported {
            what: "format",
            value: tokens[2].clone(),
        });
    }
    let field = match tokens[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        other => {
            return Err(Error::Unsupported {
                what: "field",
                value: other.to_string(),
            })
        }
    };
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        other => {
            return Err(Error::Unsupported {
                what: "symmetry",
                value: other.to_string(),
            })
        }
    };

    let mut size: Option<(usize, usize)> = None;
    let mut entries = Vec::new();
    let mut seen = 0usize;

    for (no, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let mut next_index = |what: &str| -> Result<usize> {
            fields
                .next()
                .ok_or_else(|| parse_err(no, format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|e| parse_err(no, format!("bad {what}: {e}")))
        };

        let Some((n, expected)) = size else {
            let rows = next_index("row count")?;
            let cols = next_index("column count")?;
            let nnz = next_index("entry count")?;
            if rows != cols {
                return Err(Error::Shape { rows, cols });
            }
            size = Some((rows, nnz));
            entries.reserve(if symmetry == Symmetry::Symmetric {
                2 * nnz
            } else {
                nnz
            });
            continue;
        };

        let row = next_index("row index")?;
        let col = next_index("column index")?;
        if row == 0 || col == 0 || row > n || col > n {
            return Err(parse_err(
                no,
                format!("index ({row}, {col}) outside 1..={n}"),
            ));
        }
        let value = match field {
            Field::Pattern => 1.0,
            Field::Real | Field::Integer => fields
                .next()
                .ok_or_else(|| parse_err(no, "missing value"))?
                .parse::<f64>()
                .map_err(|e| parse_err(no, format!("bad value: {e}")))?,
        };
        seen += 1;
        if seen > expected {
            return Err(parse_err(
                no,
                format!("more entries than the {expected} declared"),
            ));
        }
        let (r, c) = (row - 1, col - 1);
        entries.push(CooEntry::new(r, c, value));
        if symmetry == Symmetry::Symmetric && r != c {
            entries.push(CooEntry::new(c, r, value));
        }
    }

    let Some((n, expected)) = size else {
        return Err(parse_err(header_line, "missing size line"));
    };
    if seen != expected {
        return Err(parse_err(
            header_line,
            format!("declared {expected} entries but found {seen}"),
        ));
    }

    Ok(MatrixMarket {
        n,
        entries: coalesce(entries),
        symmetry,
        field,
    })
}

/// Read and parse a Matrix Market file from disk.
pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<MatrixMarket> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::from(e).in_file(path))?;
    parse_matrix_market(BufReader::new(file)).map_err(|e| e.in_file(path))
}

/// Write a general real coordinate file (1-based).
pub fn write_matrix_market<W: Write>(mut out: W, n: usize, entries: &[CooEntry]) -> Result<()> {
    writeln!(out, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(out, "{n} {n} {}", entries.len())?;
    for e in entries {
        writeln!(out, "{} {} {:?}", e.row + 1, e.col + 1, e.value)?;
    }
    Ok(())
}

/// Sort by (row, col) and sum duplicate coordinates.
fn coalesce(mut entries: Vec<CooEntry>) -> Vec<CooEntry> {
    entries.sort_by_key(|e| (e.row, e.col));
    let mut out: Vec<CooEntry> = Vec::with_capacity(entries.len());
    for e in entries {
        match out.last_mut() {
            Some(last) if last.row == e.row && last.col == e.col => last.value += e.value,
            _ => out.push(e),
        }
    }
    out
}

/// Square sparse matrix in compressed sparse row form.
///
/// Column indices are strictly increasing within a row and no stored value
/// is exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Build CSR from coordinate entries. Duplicates are summed and entries
    /// whose value is (or sums to) exactly zero are dropped.
    pub fn from_coo(n: usize, entries: &[CooEntry]) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.row >= n || e.col >= n) {
            return Err(Error::OutOfBounds {
                row: e.row,
                col: e.col,
                n,
            });
        }
        let merged = coalesce(entries.to_vec());
        let mut row_ptr = vec![0usize; n + 1];
        let mut col_idx = Vec::with_capacity(merged.len());
        let mut values = Vec::with_capacity(merged.len());
        for e in merged.iter().filter(|e| e.value != 0.0) {
            row_ptr[e.row + 1] += 1;
            col_idx.push(e.col);
            values.push(e.value);
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(Self {
            n,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Column indices and values of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[range.clone()], &self.values[range])
    }

    pub fn to_coo(&self) -> Vec<CooEntry> {
        (0..self.n)
            .flat_map(|i| {
                let (cols, vals) = self.row(i);
                cols.iter()
                    .zip(vals)
                    .map(move |(&c, &v)| CooEntry::new(i, c, v))
            })
            .collect()
    }
}

/// The lower-triangular system `L x = b`.
///
/// Every row ends with its (nonzero) diagonal entry, mirrored in `diag`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangularSystem {
    matrix: CsrMatrix,
    diag: Vec<f64>,
}

impl LowerTriangularSystem {
    /// Keep the entries on or below the diagonal.
    ///
    /// With `unit_diagonal` set every diagonal is forced to 1.0 (inserted if
    /// missing); otherwise a missing diagonal is a singular-system error.
    pub fn from_csr(csr: &CsrMatrix, unit_diagonal: bool) -> Result<Self> {
        let n = csr.n();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::with_capacity(csr.nnz());
        let mut values = Vec::with_capacity(csr.nnz());
        let mut diag = Vec::with_capacity(n);
        row_ptr.push(0);
        for i in 0..n {
            let (cols, vals) = csr.row(i);
            let mut d = None;
            for (&c, &v) in cols.iter().zip(vals) {
                if c < i {
                    col_idx.push(c);
                    values.push(v);
                } else if c == i {
                    d = Some(v);
                }
            }
            let d = match (unit_diagonal, d) {
                (true, _) => 1.0,
                (false, Some(v)) => v,
                (false, None) => return Err(Error::Singular { row: i }),
            };
            col_idx.push(i);
            values.push(d);
            diag.push(d);
            row_ptr.push(col_idx.len());
        }
        Ok(Self {
            matrix: CsrMatrix {
                n,
                row_ptr,
                col_idx,
                values,
            },
            diag,
        })
    }

    /// Convenience path: coordinate entries straight to a lower system.
    pub fn from_coo(n: usize, entries: &[CooEntry], unit_diagonal: bool) -> Result<Self> {
        Self::from_csr(&CsrMatrix::from_coo(n, entries)?, unit_diagonal)
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn nnz(&self) -> usize {
        self.matrix.nnz()
    }

    pub fn matrix(&self) -> &CsrMatrix {
        &self.matrix
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Strictly-lower part of row `i`.
    pub fn off_diagonal(&self, i: usize) -> (&[usize], &[f64]) {
        let (cols, vals) = self.matrix.row(i);
        let k = cols.len() - 1;
        (&cols[..k], &vals[..k])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<MatrixMarket> {
        parse_matrix_market(text.as_bytes())
    }

    #[test]
    fn converts_to_zero_based() {
        let mm =
            parse("%%MatrixMarket matrix coordinate real general\n% c\n2 2 1\n2 1 -0.5\n").unwrap();
        assert_eq!(mm.n, 2);
        assert_eq!(mm.entries, vec![CooEntry::new(1, 0, -0.5)]);
    }

    #[test]
    fn symmetric_expands_off_diagonal_only() {
        let mm =
            parse("%%MatrixMarket matrix coordinate real symmetric\n3 3 2\n3 1 4.0\n2 2 1.0\n")
                .unwrap();
        assert_eq!(
            mm.entries,
            vec![
                CooEntry::new(0, 2, 4.0),
                CooEntry::new(1, 1, 1.0),
                CooEntry::new(2, 0, 4.0)
            ]
        );
    }

    #[test]
    fn pattern_and_integer_fields() {
        let mm =
            parse("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 1\n2 1\n").unwrap();
        assert!(mm.is_pattern());
        assert!(mm.entries.iter().all(|e| e.value == 1.0));
        let mm = parse("%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 7\n").unwrap();
        assert_eq!(mm.entries[0].value, 7.0);
    }

    #[test]
    fn duplicates_are_summed() {
        let mm = parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n2 1 1.0\n2 1 2.0\n")
            .unwrap();
        assert_eq!(mm.entries, vec![CooEntry::new(1, 0, 3.0)]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            parse("%%MatrixMarket matrix coordinate real\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n"),
            Err(Error::Unsupported { what: "field", .. })
        ));
        assert!(matches!(
            parse("%%MatrixMarket matrix coordinate real general\n2 3 0\n"),
            Err(Error::Shape { rows: 2, cols: 3 })
        ));
        assert!(matches!(
            parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1.0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse("%%MatrixMarket matrix array real general\n2 2\n"),
            Err(Error::Unsupported { what: "format", .. })
        ));
    }

    #[test]
    fn csr_from_single_entry() {
        let csr = CsrMatrix::from_coo(1, &[CooEntry::new(0, 0, 2.0)]).unwrap();
        assert_eq!(csr.row_ptr(), &[0, 1]);
        assert_eq!(csr.col_idx(), &[0]);
        assert_eq!(csr.values(), &[2.0]);
    }

    #[test]
    fn csr_sums_and_drops_cancellations() {
        let csr = CsrMatrix::from_coo(
            2,
            &[
                CooEntry::new(1, 0, 1.0),
                CooEntry::new(1, 0, 2.0),
                CooEntry::new(0, 0, 1.0),
                CooEntry::new(0, 0, -1.0),
            ],
        )
        .unwrap();
        assert_eq!(csr.row(0).0.len(), 0);
        assert_eq!(csr.row(1), (&[0usize][..], &[3.0][..]));
        assert!(matches!(
            CsrMatrix::from_coo(2, &[CooEntry::new(2, 0, 1.0)]),
            Err(Error::OutOfBounds {
                row: 2,
                col: 0,
                n: 2
            })
        ));
    }

    #[test]
    fn lower_filter_on_dense_2x2() {
        let entries = [
            CooEntry::new(0, 0, 2.0),
            CooEntry::new(0, 1, 5.0),
            CooEntry::new(1, 0, 3.0),
            CooEntry::new(1, 1, 4.0),
        ];
        let l = LowerTriangularSystem::from_coo(2, &entries, false).unwrap();
        assert_eq!(
            l.matrix().to_coo(),
            vec![
                CooEntry::new(0, 0, 2.0),
                CooEntry::new(1, 0, 3.0),
                CooEntry::new(1, 1, 4.0)
            ]
        );
        assert_eq!(l.diag(), &[2.0, 4.0]);
    }

    #[test]
    fn identity_keeps_diagonal() {
        let entries: Vec<_> = (0..3).map(|i| CooEntry::new(i, i, 1.0)).collect();
        let l = LowerTriangularSystem::from_coo(3, &entries, false).unwrap();
        assert_eq!(l.nnz(), 3);
        assert!((0..3).all(|i| l.off_diagonal(i).0.is_empty()));
    }

    #[test]
    fn missing_diagonal() {
        let entries = [CooEntry::new(0, 0, 2.0), CooEntry::new(1, 0, 1.0)];
        assert!(matches!(
            LowerTriangularSystem::from_coo(2, &entries, false),
            Err(Error::Singular { row: 1 })
        ));
        let l = LowerTriangularSystem::from_coo(2, &entries, true).unwrap();
        assert_eq!(l.diag(), &[1.0, 1.0]);
        assert_eq!(l.off_diagonal(1), (&[0usize][..], &[1.0][..]));
    }

    #[test]
    fn writer_round_trips_through_parser() {
        let entries = vec![CooEntry::new(0, 0, 0.1), CooEntry::new(2, 1, -3e-17)];
        let mut buf = Vec::new();
        write_matrix_market(&mut buf, 3, &entries).unwrap();
        let mm = parse_matrix_market(&buf[..]).unwrap();
        assert_eq!(mm.entries, entries);
    }
}
