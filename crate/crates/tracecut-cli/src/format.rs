//! The matrix file format: UTF-8 text, '#' comments, a header line
//! `<kind> <rows> <cols>`, then either dense rows (kind `dense`) or
//! coordinate triples `i j value` (graph kinds, 0-based, unlisted entries
//! zero). Numbers are printed with 17 significant digits so emitted files
//! re-parse bit-exactly.

use std::fmt;
use std::path::Path;

use tracecut::DenseMatrix;

/// Header tag of a matrix file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Unipartite,
    Bipartite,
    Directed,
    Dense,
}

impl FileKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Unipartite => "unipartite",
            Self::Bipartite => "bipartite",
            Self::Directed => "directed",
            Self::Dense => "dense",
        }
    }

    fn from_str(s: &str) -> Option<Self> {
        match s {
            "unipartite" => Some(Self::Unipartite),
            "bipartite" => Some(Self::Bipartite),
            "directed" => Some(Self::Directed),
            "dense" => Some(Self::Dense),
            _ => None,
        }
    }

    /// Graph kinds are stored as coordinate triples; `dense` as full rows.
    pub fn coordinate(&self) -> bool {
        !matches!(self, Self::Dense)
    }
}

/// Parsed file metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub kind: FileKind,
    pub rows: usize,
    pub cols: usize,
}

/// Parse-stage failures; `line` is 1-based.
#[derive(Debug)]
pub enum FormatError {
    Io(std::io::Error),
    Parse { line: usize, message: String },
    SymmetryViolation { deviation: f64 },
    NegativeEntry { line: usize, value: f64 },
    DuplicateCoordinate { line: usize, row: usize, col: usize },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Io(e) => write!(f, "{e}"),
            Self::Parse { line, message } => write!(f, "line {line}: {message}"),
            Self::SymmetryViolation { deviation } => {
                write!(f, "unipartite file is not symmetric (deviation {deviation:.3e})")
            }
            Self::NegativeEntry { line, value } => {
                write!(f, "line {line}: negative affinity {value}")
            }
            Self::DuplicateCoordinate { line, row, col } => {
                write!(f, "line {line}: duplicate coordinate ({row}, {col})")
            }
        }
    }
}

impl std::error::Error for FormatError {}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// Reads and validates a matrix file.
///
/// With `symmetric_completion`, coordinate triples of unipartite files are
/// mirrored into both triangles; listing both halves is then a duplicate.
pub fn parse_matrix(
    path: &Path,
    symmetric_completion: bool,
) -> Result<(MatrixFile, DenseMatrix), FormatError> {
    let text = std::fs::read_to_string(path).map_err(FormatError::Io)?;
    parse_matrix_str(&text, symmetric_completion)
}

/// [`parse_matrix`] over in-memory text.
pub fn parse_matrix_str(
    text: &str,
    symmetric_completion: bool,
) -> Result<(MatrixFile, DenseMatrix), FormatError> {
    // (1-based line number, content with comments stripped)
    let mut lines = text.lines().enumerate().filter_map(|(idx, raw)| {
        let content = raw.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((idx + 1, content))
    });

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty file, expected a header line"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_err(
            header_line,
            format!("header must be '<kind> <rows> <cols>', got '{header}'"),
        ));
    }
    let kind = FileKind::from_str(fields[0]).ok_or_else(|| {
        parse_err(
            header_line,
            format!("unknown kind '{}', expected unipartite|bipartite|directed|dense", fields[0]),
        )
    })?;
    let rows: usize = fields[1]
        .parse()
        .map_err(|_| parse_err(header_line, format!("bad row count '{}'", fields[1])))?;
    let cols: usize = fields[2]
        .parse()
        .map_err(|_| parse_err(header_line, format!("bad column count '{}'", fields[2])))?;
    if rows == 0 || cols == 0 {
        return Err(parse_err(header_line, "matrix dimensions must be positive"));
    }
    if matches!(kind, FileKind::Unipartite | FileKind::Directed) && rows != cols {
        return Err(parse_err(
            header_line,
            format!("{} matrices must be square, got {rows}x{cols}", kind.as_str()),
        ));
    }

    let matrix = if kind.coordinate() {
        parse_coordinates(lines, kind, rows, cols, symmetric_completion)?
    } else {
        parse_dense(lines, rows, cols)?
    };

    if kind == FileKind::Unipartite && !matrix.is_symmetric(1e-12) {
        return Err(FormatError::SymmetryViolation {
            deviation: matrix.symmetry_deviation(),
        });
    }
    Ok((MatrixFile { kind, rows, cols }, matrix))
}

fn parse_value(line: usize, token: &str) -> Result<f64, FormatError> {
    let v: f64 = token
        .parse()
        .map_err(|_| parse_err(line, format!("bad number '{token}'")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("non-finite value '{token}'")));
    }
    Ok(v)
}

fn parse_dense<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    rows: usize,
    cols: usize,
) -> Result<DenseMatrix, FormatError> {
    let mut data = Vec::with_capacity(rows * cols);
    let mut consumed = 0usize;
    let mut last_line = 0usize;
    for (line, content) in lines {
        last_line = line;
        if consumed == rows {
            return Err(parse_err(line, format!("expected {rows} data rows, found more")));
        }
        let values: Vec<&str> = content.split_whitespace().collect();
        if values.len() != cols {
            return Err(parse_err(
                line,
                format!("expected {cols} values in row {consumed}, got {}", values.len()),
            ));
        }
        for token in values {
            data.push(parse_value(line, token)?);
        }
        consumed += 1;
    }
    if consumed != rows {
        return Err(parse_err(
            last_line.max(1),
            format!("expected {rows} data rows, got {consumed}"),
        ));
    }
    DenseMatrix::new(rows, cols, data)
        .map_err(|e| parse_err(last_line.max(1), e.to_string()))
}

fn parse_coordinates<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
    kind: FileKind,
    rows: usize,
    cols: usize,
    symmetric_completion: bool,
) -> Result<DenseMatrix, FormatError> {
    let mirror = symmetric_completion && kind == FileKind::Unipartite;
    let mut m = DenseMatrix::zeros(rows, cols);
    let mut set = vec![false; rows * cols];
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(
                line,
                format!("expected 'i j value' triple, got '{content}'"),
            ));
        }
        let i: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(line, format!("bad row index '{}'", fields[0])))?;
        let j: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(line, format!("bad column index '{}'", fields[1])))?;
        if i >= rows || j >= cols {
            return Err(parse_err(
                line,
                format!("coordinate ({i}, {j}) out of bounds for {rows}x{cols}"),
            ));
        }
        let value = parse_value(line, fields[2])?;
        if value < 0.0 {
            return Err(FormatError::NegativeEntry { line, value });
        }
        let mut put = |r: usize, c: usize| -> Result<(), FormatError> {
            if set[r * cols + c] {
                return Err(FormatError::DuplicateCoordinate { line, row: r, col: c });
            }
            set[r * cols + c] = true;
            m[(r, c)] = value;
            Ok(())
        };
        put(i, j)?;
        if mirror && i != j {
            put(j, i)?;
        }
    }
    Ok(m)
}

/// Renders a matrix in the file format; graph kinds list nonzero entries as
/// coordinate triples, `dense` emits full rows. 17 significant digits.
pub fn emit_matrix(kind: FileKind, m: &DenseMatrix) -> String {
    let mut out = format!("{} {} {}\n", kind.as_str(), m.rows(), m.cols());
    if kind.coordinate() {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m[(i, j)];
                if v != 0.0 {
                    out.push_str(&format!("{i} {j} {v:.16e}\n"));
                }
            }
        }
    } else {
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:.16e}")).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_with_completion() {
        let text = "unipartite 2 2\n0 1 1.0\n";
        let (file, m) = parse_matrix_str(text, true).unwrap();
        assert_eq!(file.kind, FileKind::Unipartite);
        assert_eq!(m.data(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn coordinate_without_completion_needs_both_triangles() {
        let text = "unipartite 2 2\n0 1 1.0\n";
        assert!(matches!(
            parse_matrix_str(text, false),
            Err(FormatError::SymmetryViolation { .. })
        ));
        let text = "unipartite 2 2\n0 1 1.0\n1 0 1.0\n";
        let (_, m) = parse_matrix_str(text, false).unwrap();
        assert_eq!(m.data(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn dense_single_entry() {
        let text = "dense 1 1\n5.0\n";
        let (file, m) = parse_matrix_str(text, false).unwrap();
        assert_eq!(file.kind, FileKind::Dense);
        assert_eq!(m.data(), &[5.0]);
    }

    #[test]
    fn out_of_bounds_carries_line_number() {
        let text = "bipartite 2 3\n# a comment\n0 5 1.0\n";
        match parse_matrix_str(text, false) {
            Err(FormatError::Parse { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("out of bounds"), "{message}");
            }
            other => panic!("expected bounds error, got {other:?}"),
        }
    }

    #[test]
    fn duplicates_rejected() {
        let text = "directed 2 2\n0 1 1.0\n0 1 2.0\n";
        assert!(matches!(
            parse_matrix_str(text, false),
            Err(FormatError::DuplicateCoordinate { line: 3, row: 0, col: 1 })
        ));
        // Completion writes the mirrored entry, so both halves also clash.
        let text = "unipartite 2 2\n0 1 1.0\n1 0 1.0\n";
        assert!(matches!(
            parse_matrix_str(text, true),
            Err(FormatError::DuplicateCoordinate { .. })
        ));
    }

    #[test]
    fn negative_graph_entries_rejected() {
        let text = "bipartite 2 2\n0 1 -3.0\n";
        assert!(matches!(
            parse_matrix_str(text, false),
            Err(FormatError::NegativeEntry { line: 2, .. })
        ));
        // Dense files may hold negative data (kernel inputs).
        let text = "dense 1 2\n-3.0 1.0\n";
        assert!(parse_matrix_str(text, false).is_ok());
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# header comment\n\ndense 2 2 # trailing\n1 2\n# middle\n3 4\n";
        let (_, m) = parse_matrix_str(text, false).unwrap();
        assert_eq!(m.data(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn emitted_files_reparse_bit_exactly() {
        let m = DenseMatrix::new(
            2,
            3,
            vec![0.1, 0.0, 1.0 / 3.0, 2.5e-17, 7.0, f64::MIN_POSITIVE],
        )
        .unwrap();
        let text = emit_matrix(FileKind::Dense, &m);
        let (_, back) = parse_matrix_str(&text, false).unwrap();
        assert_eq!(m.data(), back.data());

        let mut w = DenseMatrix::zeros(3, 3);
        w[(0, 1)] = 0.1 + 0.2; // not exactly representable as 0.3
        w[(1, 0)] = 0.1 + 0.2;
        let text = emit_matrix(FileKind::Unipartite, &w);
        let (_, back) = parse_matrix_str(&text, false).unwrap();
        assert_eq!(w.data(), back.data());
    }

    #[test]
    fn dense_row_count_enforced() {
        let text = "dense 2 2\n1 2\n";
        assert!(matches!(
            parse_matrix_str(text, false),
            Err(FormatError::Parse { .. })
        ));
        let text = "dense 1 2\n1 2\n3 4\n";
        assert!(matches!(
            parse_matrix_str(text, false),
            Err(FormatError::Parse { line: 3, .. })
        ));
    }
}
