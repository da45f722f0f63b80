//! Laplacian flow `ẋ = −Lx`: exact and Runge–Kutta trajectories, the
//! predicted consensus value, and the disagreement diagnostics.

use serde::Serialize;
use thiserror::Error;

use crate::certify::ZeroStructure;
use crate::linalg::{eig, expm, Complex, ComplexMatrix, LinalgError};

/// Absolute threshold on the largest pairwise disagreement.
pub const CONSENSUS_TOL: f64 = 1e-4;

/// Classical RK4 real-axis stability bound on `dt * ρ(L)`.
pub const RK4_STABILITY_LIMIT: f64 = 2.7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FlowError {
    #[error("initial state has {got} entries but the Laplacian is {n}x{n}")]
    Dimension { got: usize, n: usize },
    #[error("invalid time grid: {0}")]
    Times(String),
    #[error("step {dt} is unstable for RK4: dt * spectral radius must stay below {limit}, got {product:.4}")]
    UnstableStep { dt: f64, product: f64, limit: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A simulated trajectory and its consensus diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct FlowResult {
    pub times: Vec<f64>,
    pub states: Vec<Vec<Complex>>,
    /// `𝟙zᴴx₀` when the zero eigenvalue of `L` is simple and the rest of the
    /// spectrum lies in the open right half-plane.
    pub predicted_limit: Option<Vec<Complex>>,
    /// `max_ij |x_i(t) − x_j(t)|` per time point.
    pub disagreement: Vec<f64>,
    pub consensus_reached: bool,
    /// First time after which disagreement stays below [`CONSENSUS_TOL`].
    pub consensus_time: Option<f64>,
}

impl FlowResult {
    pub fn final_state(&self) -> &[Complex] {
        self.states.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn final_disagreement(&self) -> f64 {
        self.disagreement.last().copied().unwrap_or(0.0)
    }

    fn assemble(times: Vec<f64>, states: Vec<Vec<Complex>>, predicted_limit: Option<Vec<Complex>>) -> Self {
        let disagreement: Vec<f64> = states.iter().map(|s| disagreement(s)).collect();
        let consensus_time = match disagreement.iter().rposition(|&d| d >= CONSENSUS_TOL) {
            None => times.first().copied(),
            Some(last_bad) => times.get(last_bad + 1).copied(),
        };
        Self {
            times,
            states,
            predicted_limit,
            disagreement,
            consensus_reached: consensus_time.is_some(),
            consensus_time,
        }
    }
}

/// The rank-one limit `lim e^{−Lt} = 𝟙zᴴ`.
#[derive(Clone, Debug)]
pub struct ConsensusProjection {
    /// Left null vector of `L`, scaled so that `zᴴ𝟙 = 1`.
    pub left_null: Vec<Complex>,
    pub projector: ComplexMatrix,
}

impl ConsensusProjection {
    /// `zᴴx₀`, the common value every agent approaches.
    pub fn consensus_value(&self, x0: &[Complex]) -> Complex {
        self.left_null.iter().zip(x0).map(|(z, x)| z.conj() * x).sum()
    }

    pub fn limit(&self, x0: &[Complex]) -> Vec<Complex> {
        self.projector.mul_vec(x0)
    }
}

/// Largest pairwise modulus difference between agents.
pub fn disagreement(state: &[Complex]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in state.iter().enumerate() {
        for b in &state[i + 1..] {
            worst = worst.max((a - b).norm());
        }
    }
    worst
}

/// Returns the consensus projector when `−L` has a simple zero eigenvalue
/// and every other eigenvalue of `L` has positive real part.
pub fn predicted_limit(l: &ComplexMatrix) -> Result<Option<ConsensusProjection>, FlowError> {
    let spectrum = eig(l)?;
    let zero = ZeroStructure::of(&spectrum);
    if !(zero.is_simple() && zero.others_in_open_right_half_plane) {
        return Ok(None);
    }
    let z = spectrum.left_vector(zero.indices[0]);
    let s: Complex = z.iter().map(|v| v.conj()).sum();
    if s.norm() == 0.0 {
        return Ok(None);
    }
    let scale = s.conj().inv();
    let left_null: Vec<Complex> = z.iter().map(|v| v * scale).collect();
    let n = l.rows();
    let projector = ComplexMatrix::from_fn(n, n, |_, j| left_null[j].conj());
    Ok(Some(ConsensusProjection { left_null, projector }))
}

fn check_dims(l: &ComplexMatrix, x0: &[Complex]) -> Result<usize, FlowError> {
    let n = l.ensure_square()?;
    if x0.len() != n {
        return Err(FlowError::Dimension { got: x0.len(), n });
    }
    Ok(n)
}

/// `x(t) = e^{−Lt}x₀` at each requested time.
pub fn simulate_exact(l: &ComplexMatrix, x0: &[Complex], times: &[f64]) -> Result<FlowResult, FlowError> {
    check_dims(l, x0)?;
    match times.first() {
        None => return Err(FlowError::Times("empty".into())),
        Some(&t) if t != 0.0 => return Err(FlowError::Times(format!("must start at 0, starts at {t}"))),
        _ => {}
    }
    if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(FlowError::Times("must be finite and strictly ascending".into()));
    }
    let neg = l.scale_real(-1.0);
    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        if t == 0.0 {
            states.push(x0.to_vec());
        } else {
            states.push(expm(&neg.scale_real(t))?.mul_vec(x0));
        }
    }
    let limit = predicted_limit(l)?.map(|p| p.limit(x0));
    Ok(FlowResult::assemble(times.to_vec(), states, limit))
}

/// Fixed-step classical Runge–Kutta on `ẋ = −Lx`. The final step is
/// shortened to land exactly on `horizon`.
pub fn simulate_rk4(l: &ComplexMatrix, x0: &[Complex], dt: f64, horizon: f64) -> Result<FlowResult, FlowError> {
    check_dims(l, x0)?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(FlowError::Times(format!("step must be positive, got {dt}")));
    }
    if !(horizon >= 0.0 && horizon.is_finite()) {
        return Err(FlowError::Times(format!("horizon must be nonnegative, got {horizon}")));
    }
    if horizon > 0.0 && dt > horizon {
        return Err(FlowError::Times(format!("step {dt} exceeds horizon {horizon}")));
    }
    let spectrum = eig(l)?;
    let rho = spectrum.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if dt * rho >= RK4_STABILITY_LIMIT {
        return Err(FlowError::UnstableStep {
            dt,
            product: dt * rho,
            limit: RK4_STABILITY_LIMIT,
        });
    }

    let neg = l.scale_real(-1.0);
    let rhs = |x: &[Complex]| neg.mul_vec(x);
    let axpy = |x: &[Complex], h: f64, k: &[Complex]| -> Vec<Complex> { x.iter().zip(k).map(|(a, b)| a + b * h).collect() };

    let mut times = vec![0.0];
    let mut states = vec![x0.to_vec()];
    let steps = if horizon == 0.0 { 0 } else { (horizon / dt - 1e-9).ceil() as usize };
    let mut x = x0.to_vec();
    for step in 1..=steps {
        let t_prev = times[step - 1];
        let t_next = if step == steps { horizon } else { step as f64 * dt };
        let h = t_next - t_prev;
        let k1 = rhs(&x);
        let k2 = rhs(&axpy(&x, h / 2.0, &k1));
        let k3 = rhs(&axpy(&x, h / 2.0, &k2));
        let k4 = rhs(&axpy(&x, h, &k3));
        x = x
            .iter()
            .enumerate()
            .map(|(i, xi)| xi + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
            .collect();
        times.push(t_next);
        states.push(x.clone());
    }
    let limit = predicted_limit(l)?.map(|p| p.limit(x0));
    Ok(FlowResult::assemble(times, states, limit))
}

/// `steps + 1` evenly spaced times from 0 to `horizon`; just `[0]` when the
/// horizon is zero.
pub fn uniform_times(horizon: f64, steps: usize) -> Vec<f64> {
    if horizon <= 0.0 || steps == 0 {
        return vec![0.0];
    }
    (0..=steps).map(|k| horizon * k as f64 / steps as f64).collect()
}

/// Slowest relaxation time `1 / min Re λ` over eigenvalues of `L` with
/// positive real part; `None` when there are none.
pub fn relaxation_time(l: &ComplexMatrix) -> Result<Option<f64>, FlowError> {
    let spectrum = eig(l)?;
    let zero = ZeroStructure::of(&spectrum);
    Ok(zero.min_positive_real_part.map(|r| 1.0 / r))
}

/// `0` followed by 400 log-spaced points from `1e-3·τ` to `50·τ`, with `τ`
/// from [`relaxation_time`]. Without a relaxation time: 401 points on
/// `[0, 10]`.
pub fn default_time_grid(l: &ComplexMatrix) -> Result<Vec<f64>, FlowError> {
    Ok(match relaxation_time(l)? {
        Some(tau) => {
            let mut grid = vec![0.0];
            grid.extend(log_space(1e-3 * tau, 50.0 * tau, 400));
            grid
        }
        None => uniform_times(10.0, 400),
    })
}

pub(crate) fn log_space(start: f64, end: f64, count: usize) -> Vec<f64> {
    let (a, b) = (start.ln(), end.ln());
    (0..count)
        .map(|k| (a + (b - a) * k as f64 / (count - 1).max(1) as f64).exp())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn cycle_reaches_average_consensus() {
        let r = simulate_exact(&fixtures::l2(), &fixtures::INITIAL_STATES, &uniform_times(10.0, 100)).unwrap();
        assert!(r.consensus_reached);
        let mean = c(4.0, 1.7 / 3.0);
        for z in r.final_state() {
            assert!((z - mean).norm() < 1e-4);
        }
        for z in r.predicted_limit.as_ref().unwrap() {
            assert!((z - mean).norm() < 1e-12);
        }
    }

    #[test]
    fn counterexample_freezes_two_agents() {
        let x0 = fixtures::INITIAL_STATES;
        let r = simulate_exact(&fixtures::l3(), &x0, &uniform_times(10.0, 100)).unwrap();
        assert!(!r.consensus_reached);
        assert!(r.predicted_limit.is_none());
        let last = r.final_state();
        assert!((last[0] - x0[0]).norm() < 1e-12);
        assert!((last[2] - x0[2]).norm() < 1e-12);
        // the listener settles at the midpoint of its two frozen neighbours
        assert!((last[1] - c(5.0, 1.35)).norm() < 1e-6);
    }

    #[test]
    fn zero_laplacian_keeps_state() {
        let x0 = [c(1.0, -1.0), c(2.0, 0.5)];
        let r = simulate_exact(&ComplexMatrix::zeros(2, 2), &x0, &uniform_times(3.0, 3)).unwrap();
        assert!(r.states.iter().all(|s| s == &x0));
    }

    #[test]
    fn scalar_decay_rk4() {
        let l = ComplexMatrix::identity(1);
        let r = simulate_rk4(&l, &[c(1.0, 0.0)], 0.001, 1.0).unwrap();
        assert_eq!(r.times.len(), 1001);
        assert!((r.final_state()[0].re - (-1.0f64).exp()).abs() < 1e-12);
        assert_eq!(*r.times.last().unwrap(), 1.0);
    }

    #[test]
    fn rk4_tracks_exact_on_cycle() {
        let l = fixtures::l2();
        let rk = simulate_rk4(&l, &fixtures::INITIAL_STATES, 0.001, 10.0).unwrap();
        let ex = simulate_exact(&l, &fixtures::INITIAL_STATES, &rk.times[..1001]).unwrap();
        for (a, b) in rk.states.iter().zip(&ex.states) {
            for (x, y) in a.iter().zip(b) {
                assert!((x - y).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn rk4_rejects_unstable_steps() {
        let l = fixtures::l1();
        assert!(matches!(
            simulate_rk4(&l, &fixtures::INITIAL_STATES, 1.0, 10.0),
            Err(FlowError::UnstableStep { .. })
        ));
    }

    #[test]
    fn dimension_and_grid_errors() {
        let l = fixtures::l2();
        assert!(matches!(simulate_exact(&l, &[c(1.0, 0.0)], &[0.0]), Err(FlowError::Dimension { got: 1, n: 3 })));
        assert!(matches!(simulate_exact(&l, &fixtures::INITIAL_STATES, &[1.0]), Err(FlowError::Times(_))));
        assert!(matches!(simulate_exact(&l, &fixtures::INITIAL_STATES, &[0.0, 2.0, 1.0]), Err(FlowError::Times(_))));
    }

    #[test]
    fn projectors_for_balanced_and_symmetric_fixtures() {
        for l in [fixtures::l1(), fixtures::l2()] {
            let p = predicted_limit(&l).unwrap().unwrap();
            for z in &p.left_null {
                assert!((z - c(1.0 / 3.0, 0.0)).norm() < 1e-10);
            }
        }
        assert!(predicted_limit(&fixtures::l3()).unwrap().is_none());
    }

    #[test]
    fn default_grid_spans_fifty_relaxation_times() {
        let g = default_time_grid(&fixtures::l2()).unwrap();
        assert_eq!(g.len(), 401);
        let tau = 1.0 / fixtures::REPORTED_SPEC_L2[1].re;
        assert!((g[400] / tau - 50.0).abs() < 0.5);
        assert_eq!(default_time_grid(&ComplexMatrix::zeros(2, 2)).unwrap().last(), Some(&10.0));
    }
}
