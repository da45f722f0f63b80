//! Trajectory CSV: `t,re_x1,im_x1,...,re_xn,im_xn,disagreement`, one row
//! per time point, every number with 17 significant digits.

use super::IoError;
use crate::flow::FlowResult;
use crate::linalg::Complex;

/// Parsed contents of a trajectory CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryTable {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex>>,
    pub disagreement: Vec<f64>,
}

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_trajectory_csv(result: &FlowResult) -> String {
    let n = result.states.first().map_or(0, Vec::len);
    let mut header = vec!["t".to_string()];
    for k in 1..=n {
        header.push(format!("re_x{k}"));
        header.push(format!("im_x{k}"));
    }
    header.push("disagreement".into());
    let mut out = header.join(",");
    out.push('\n');
    for ((t, state), d) in result.times.iter().zip(&result.states).zip(&result.disagreement) {
        let mut row = vec![sci(*t)];
        for z in state {
            row.push(sci(z.re));
            row.push(sci(z.im));
        }
        row.push(sci(*d));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn parse_trajectory_csv(text: &str) -> Result<TrajectoryTable, IoError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| IoError::syntax(1, "missing header"))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() < 2 || !cols.len().is_multiple_of(2) || cols[0] != "t" || cols[cols.len() - 1] != "disagreement" {
        return Err(IoError::syntax(1, "header must be t,re_x1,im_x1,...,disagreement"));
    }
    let n = (cols.len() - 2) / 2;
    let mut table = TrajectoryTable {
        times: Vec::new(),
        states: Vec::new(),
        disagreement: Vec::new(),
    };
    for (i, line) in lines {
        let values = line
            .split(',')
            .map(|c| c.trim().parse::<f64>().map_err(|_| IoError::syntax(i + 1, format!("bad number {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != cols.len() {
            return Err(IoError::syntax(i + 1, format!("{} columns, expected {}", values.len(), cols.len())));
        }
        table.times.push(values[0]);
        table
            .states
            .push((0..n).map(|k| Complex::new(values[1 + 2 * k], values[2 + 2 * k])).collect());
        table.disagreement.push(values[cols.len() - 1]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::flow::{simulate_exact, uniform_times};

    #[test]
    fn single_point_single_agent() {
        let r = simulate_exact(&crate::linalg::ComplexMatrix::zeros(1, 1), &[Complex::new(1.0, 2.0)], &[0.0]).unwrap();
        let text = write_trajectory_csv(&r);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,re_x1,im_x1,disagreement"));
        let row: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(row, vec![0.0, 1.0, 2.0, 0.0]);
    }

    #[test]
    fn cycle_trajectory_ends_at_the_mean_and_round_trips() {
        let r = simulate_exact(&fixtures::l2(), &fixtures::INITIAL_STATES, &uniform_times(20.0, 200)).unwrap();
        let text = write_trajectory_csv(&r);
        let table = parse_trajectory_csv(&text).unwrap();
        assert_eq!(table.times, r.times);
        assert_eq!(table.states, r.states);
        assert_eq!(table.disagreement, r.disagreement);
        for z in table.states.last().unwrap() {
            assert!((z.re - 4.0).abs() < 1e-6);
            assert!((z.im - 1.7 / 3.0).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_header() {
        assert!(parse_trajectory_csv("time,x\n").is_err());
    }
}
