//! Square complex matrices as CSV, one row per line, cells `a+bi`.

use super::complex::{format_complex, parse_complex};
use super::IoError;
use crate::linalg::{Complex, ComplexMatrix};

pub fn parse_matrix_csv(text: &str) -> Result<ComplexMatrix, IoError> {
    let mut rows: Vec<Vec<Complex>> = Vec::new();
    let mut last_line = 1;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        last_line = i + 1;
        let row = line
            .split(',')
            .enumerate()
            .map(|(k, cell)| {
                parse_complex(cell).map_err(|e| IoError::syntax(i + 1, format!("cell {}: {e}", k + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(IoError::syntax(
                    i + 1,
                    format!("ragged row: {} cells, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(IoError::syntax(1, "no matrix rows"));
    }
    if rows.len() != rows[0].len() {
        return Err(IoError::syntax(
            last_line,
            format!("{} rows of {} cells is not square", rows.len(), rows[0].len()),
        ));
    }
    Ok(ComplexMatrix::from_rows(&rows)?)
}

pub fn write_matrix_csv(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let cells: Vec<String> = m.row(i).iter().map(|&z| format_complex(z)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn one_by_one_zero() {
        let m = parse_matrix_csv("0\n").unwrap();
        assert_eq!(m, ComplexMatrix::zeros(1, 1));
    }

    #[test]
    fn triangle_laplacian_from_csv() {
        let text = "3+1.5i, -2-0.8i, -1-0.7i\n-2-0.8i, 5+1.8i, -3-i\n-1-0.7i, -3-1i, 4+1.7i\n";
        assert_eq!(parse_matrix_csv(text).unwrap(), fixtures::l1());
    }

    #[test]
    fn ragged_and_bad_cells() {
        assert!(matches!(parse_matrix_csv("1,2\n3\n"), Err(IoError::Syntax { line: 2, .. })));
        assert!(matches!(parse_matrix_csv("1,2\n3,zz\n"), Err(IoError::Syntax { line: 2, .. })));
        assert!(parse_matrix_csv("1,2\n").is_err());
        assert!(parse_matrix_csv("").is_err());
    }

    proptest! {
        #[test]
        fn write_then_parse_is_bit_exact(n in 1usize..5, seed in proptest::collection::vec(-1e6f64..1e6, 32)) {
            let m = ComplexMatrix::from_fn(n, n, |i, j| Complex::new(seed[2 * (i * n + j)] / 7.0, seed[2 * (i * n + j) + 1] * 1e-9));
            let back = parse_matrix_csv(&write_matrix_csv(&m)).unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
