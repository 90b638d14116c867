//! Dataset ingestion: comma-delimited numeric text, an optional header row,
//! and integer labels either as a designated column or a sidecar file (one
//! integer per line, aligned with the data rows).

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::Point;

/// An in-memory numeric dataset: rectangular, finite, at least one row.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub points: Vec<Point>,
    /// Column names when the source had a header row.
    pub columns: Option<Vec<String>>,
    /// Where the data came from (a path or a generator description).
    pub source: String,
}

impl Dataset {
    /// Validate and wrap a point list.
    pub fn new(points: Vec<Point>, columns: Option<Vec<String>>, source: String) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::InvalidConfig(
                "points need at least one dimension".into(),
            ));
        }
        for (row, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            for (col, x) in p.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFinite { row, col });
                }
            }
        }
        Ok(Self {
            points,
            columns,
            source,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }
}

/// Load a comma-delimited numeric file. Blank lines are skipped. When
/// `label_column` is set, that 0-based column is split off and parsed as
/// integer labels instead of coordinates.
pub fn load_csv(
    path: &Path,
    has_header: bool,
    label_column: Option<usize>,
) -> Result<(Dataset, Option<Vec<i64>>)> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: display.clone(),
        source,
    })?;

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty());

    let mut columns: Option<Vec<String>> = None;
    if has_header {
        match lines.next() {
            Some((_, header)) => {
                columns = Some(header.split(',').map(|c| c.trim().to_string()).collect());
            }
            None => return Err(Error::EmptyDataset),
        }
    }

    let mut points: Vec<Point> = Vec::new();
    let mut labels: Vec<i64> = Vec::new();
    let mut width: Option<usize> = None;
    for (row, line) in lines {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        match width {
            None => {
                if let Some(lc) = label_column {
                    if lc >= cells.len() {
                        return Err(Error::InvalidConfig(format!(
                            "label column {lc} out of range for {} columns",
                            cells.len()
                        )));
                    }
                    if cells.len() == 1 {
                        return Err(Error::InvalidConfig(
                            "a label column leaves no coordinate columns".into(),
                        ));
                    }
                }
                width = Some(cells.len());
            }
            Some(w) if cells.len() != w => {
                return Err(Error::Csv {
                    path: display,
                    row,
                    col: 0,
                    message: format!("ragged row has {} columns, expected {w}", cells.len()),
                });
            }
            Some(_) => {}
        }

        let mut point = Vec::with_capacity(cells.len());
        for (ci, cell) in cells.iter().enumerate() {
            if Some(ci) == label_column {
                let label: i64 = cell.parse().map_err(|_| Error::Csv {
                    path: display.clone(),
                    row,
                    col: ci + 1,
                    message: format!("cannot parse '{cell}' as an integer label"),
                })?;
                labels.push(label);
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| Error::Csv {
                path: display.clone(),
                row,
                col: ci + 1,
                message: format!("cannot parse '{cell}' as a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Csv {
                    path: display,
                    row,
                    col: ci + 1,
                    message: format!("non-finite value '{cell}'"),
                });
            }
            point.push(value);
        }
        points.push(point);
    }

    if points.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if let (Some(cols), Some(lc)) = (&mut columns, label_column) {
        if lc < cols.len() {
            cols.remove(lc);
        }
    }
    let dataset = Dataset::new(points, columns, display)?;
    Ok((dataset, label_column.map(|_| labels)))
}

/// Load a sidecar label file: one integer per line, blank lines skipped.
pub fn load_labels(path: &Path) -> Result<Vec<i64>> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: display.clone(),
        source,
    })?;
    let mut labels = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let label: i64 = line.parse().map_err(|_| Error::Csv {
            path: display.clone(),
            row: i + 1,
            col: 1,
            message: format!("cannot parse '{line}' as an integer label"),
        })?;
        labels.push(label);
    }
    if labels.is_empty() {
        return Err(Error::InvalidLabels(format!("{display} holds no labels")));
    }
    Ok(labels)
}

/// Render points as comma-delimited text, one row per point.
pub fn csv_text(points: &[Point]) -> String {
    let mut out = String::new();
    for point in points {
        for (i, x) in point.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{x}");
        }
        out.push('\n');
    }
    out
}

/// Write points to a CSV file.
pub fn write_csv(path: &Path, points: &[Point]) -> Result<()> {
    std::fs::write(path, csv_text(points)).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Write labels to a sidecar file, one integer per line.
pub fn write_labels(path: &Path, labels: &[i64]) -> Result<()> {
    let mut text = String::new();
    for label in labels {
        let _ = writeln!(text, "{label}");
    }
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp_file(name: &str, contents: &str) -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("hcvi-dataset-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn plain_rows_become_points() {
        let path = tmp_file("plain.csv", "0,0\n1,0\n2,0\n");
        let (ds, labels) = load_csv(&path, false, None).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.dim(), 2);
        assert!(labels.is_none());
        assert_eq!(ds.points[2], vec![2.0, 0.0]);
    }

    #[test]
    fn header_without_data_is_an_error() {
        let path = tmp_file("header_only.csv", "x,y\n");
        assert!(matches!(
            load_csv(&path, true, None),
            Err(Error::EmptyDataset)
        ));
    }

    #[test]
    fn header_names_are_captured() {
        let path = tmp_file("with_header.csv", "x,y\n1,2\n");
        let (ds, _) = load_csv(&path, true, None).unwrap();
        assert_eq!(ds.columns, Some(vec!["x".into(), "y".into()]));
    }

    #[test]
    fn label_column_is_split_off() {
        let path = tmp_file("labeled.csv", "0,0,1\n5,5,0\n");
        let (ds, labels) = load_csv(&path, false, Some(2)).unwrap();
        assert_eq!(ds.dim(), 2);
        assert_eq!(labels, Some(vec![1, 0]));
    }

    #[test]
    fn non_numeric_cell_reports_row_and_column() {
        let path = tmp_file("bad_cell.csv", "0,0\n1,oops\n");
        match load_csv(&path, false, None) {
            Err(Error::Csv { row, col, .. }) => {
                assert_eq!((row, col), (2, 2));
            }
            other => panic!("expected a csv error, got {other:?}"),
        }
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let path = tmp_file("ragged.csv", "0,0\n1\n");
        assert!(matches!(load_csv(&path, false, None), Err(Error::Csv { .. })));
    }

    #[test]
    fn non_finite_text_is_rejected() {
        let path = tmp_file("nan.csv", "0,nan\n");
        assert!(matches!(load_csv(&path, false, None), Err(Error::Csv { .. })));
    }

    #[test]
    fn blank_lines_are_skipped() {
        let path = tmp_file("blanks.csv", "\n0,0\n\n1,1\n\n");
        let (ds, _) = load_csv(&path, false, None).unwrap();
        assert_eq!(ds.len(), 2);
    }

    #[test]
    fn empty_file_is_an_error() {
        let path = tmp_file("empty.csv", "");
        assert!(matches!(
            load_csv(&path, false, None),
            Err(Error::EmptyDataset)
        ));
    }

    #[test]
    fn sidecar_labels_round_trip() {
        let path = tmp_file("labels.txt", "0\n1\n-1\n2\n");
        assert_eq!(load_labels(&path).unwrap(), vec![0, 1, -1, 2]);
    }

    #[test]
    fn csv_text_round_trips_through_load() {
        let points = vec![vec![0.25, -3.5], vec![1e-9, 42.0]];
        let path = tmp_file("roundtrip.csv", &csv_text(&points));
        let (ds, _) = load_csv(&path, false, None).unwrap();
        assert_eq!(ds.points, points);
    }
}
