//! Fourth moments of functions close to a Boolean step function: for
//! `F ∈ {0,1}` with mean `θ` and `E[(h-F)²] ≤ η ≤ Cθ`,
//! `E[h⁴] ≥ θ(1 - √(η/θ))⁴ ≥ θ - 4(1+C)√(ηθ)` (the first form needs `η ≤ θ`).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{ratio, rational_pair, rational_sqrt, Rational};

/// Slack allowed on the floating-point side of the randomized check.
pub const MOMENT_TOLERANCE: f64 = 1e-12;

/// `θ - 4(1+C)√(ηθ)`.
pub fn fourth_moment_lower_bound(theta: f64, eta: f64, c: f64) -> f64 {
    theta - 4.0 * (1.0 + c) * (eta * theta).sqrt()
}

/// The minimum of `E[h⁴]` over `E[(h-F)²] ≤ η`: `θ(1 - √(η/θ))⁴` when
/// `η ≤ θ`, and `0` otherwise (then `h = 0` is feasible).
pub fn fourth_moment_minimum(theta: f64, eta: f64) -> f64 {
    if theta <= 0.0 {
        return 0.0;
    }
    theta * (1.0 - (eta / theta).sqrt()).max(0.0).powi(4)
}

/// Exact evaluation of the two-level minimiser `r = 1 - √(η/θ)` on `A`, `s = 0`
/// on `B`, realised as a step function on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoLevelOptimum {
    pub theta: Rational,
    pub eta: Rational,
    pub r: Rational,
    /// `E[h⁴]` computed cell by cell.
    pub fourth_moment: Rational,
    /// `E[(h-F)²]` computed cell by cell; equals `η`.
    pub distance: Rational,
    /// `θ(1 - √(η/θ))⁴` in closed form.
    pub closed_form: Rational,
}

impl TwoLevelOptimum {
    pub fn attained(&self) -> bool {
        self.fourth_moment == self.closed_form && self.distance == self.eta
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theta": rational_pair(&self.theta),
            "eta": rational_pair(&self.eta),
            "r": rational_pair(&self.r),
            "fourth_moment": rational_pair(&self.fourth_moment),
            "distance": rational_pair(&self.distance),
            "closed_form": rational_pair(&self.closed_form),
            "attained": self.attained(),
        })
    }
}

/// Needs `0 < η ≤ θ ≤ 1` with `η/θ` a rational square.
pub fn two_level_optimum(theta: Rational, eta: Rational) -> Result<TwoLevelOptimum> {
    let zero = ratio(0, 1);
    let one = ratio(1, 1);
    if !(theta > zero && theta <= one && eta >= zero && eta <= theta) {
        return Err(Error::domain(format!("two-level optimum needs 0 ≤ η ≤ θ ≤ 1, θ > 0 (θ = {theta}, η = {eta})")));
    }
    let root = rational_sqrt(&(eta / theta))
        .ok_or_else(|| Error::domain(format!("η/θ = {} is not a rational square", eta / theta)))?;
    let r = one - root;
    // Grid of `den(θ)` cells, the first `num(θ)` forming A.
    let cells = *theta.denom();
    let inside = *theta.numer();
    let h = |i: i128| if i < inside { r } else { zero };
    let f = |i: i128| if i < inside { one } else { zero };
    let weight = ratio(1, cells);
    let mut fourth = zero;
    let mut distance = zero;
    for i in 0..cells {
        let v = h(i);
        fourth += v * v * v * v * weight;
        let d = v - f(i);
        distance += d * d * weight;
    }
    Ok(TwoLevelOptimum {
        theta,
        eta,
        r,
        fourth_moment: fourth,
        distance,
        closed_form: theta * r * r * r * r,
    })
}

/// Outcome of the randomized fourth-moment check.
#[derive(Clone, Debug, PartialEq)]
pub struct FourthMomentVerdict {
    pub trials: usize,
    pub grid_size: usize,
    pub seed: u64,
    /// Trials with `E[h⁴] < θ - 4(1+C)√(ηθ)`, taking `C = η/θ`.
    pub bound_violations: usize,
    /// Trials with `E[h⁴]` below the claimed minimum.
    pub minimum_violations: usize,
    /// Least `E[h⁴] - θ(1 - √(η/θ))₊⁴` seen; near zero when the search probes the optimum.
    pub min_gap_to_minimum: f64,
}

impl FourthMomentVerdict {
    pub fn holds(&self) -> bool {
        self.bound_violations == 0 && self.minimum_violations == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trials": self.trials,
            "grid_size": self.grid_size,
            "seed": self.seed,
            "bound_violations": self.bound_violations,
            "minimum_violations": self.minimum_violations,
            "min_gap_to_minimum": self.min_gap_to_minimum,
            "holds": self.holds(),
        })
    }
}

/// Random step functions on a grid of `grid_size` cells: `F` is the indicator
/// of the first `k` cells with `k/grid_size` in `theta_range`, and `h` is `F`
/// plus noise rescaled so that `E[(h-F)²]` hits a target drawn from
/// `eta_range`. Half of the trials use noise that is constant on each level set
/// of `F` (the shape of the minimiser), the other half independent per-cell noise.
pub fn fourth_moment_bound_check(
    trials: usize,
    theta_range: (f64, f64),
    eta_range: (f64, f64),
    grid_size: usize,
    seed: u64,
) -> Result<FourthMomentVerdict> {
    let (t0, t1) = theta_range;
    let (e0, e1) = eta_range;
    if !(0.0 <= t0 && t0 <= t1 && t1 <= 1.0 && 0.0 <= e0 && e0 <= e1 && e1 <= 1.0) {
        return Err(Error::domain("θ and η ranges must be ordered sub-intervals of [0, 1]"));
    }
    if grid_size == 0 {
        return Err(Error::domain("grid size must be positive"));
    }
    let k_lo = ((t0 * grid_size as f64).ceil() as usize).max(1);
    let k_hi = (t1 * grid_size as f64).floor() as usize;
    if k_lo > k_hi {
        return Err(Error::domain(format!("no grid point of {grid_size} cells has θ in [{t0}, {t1}] with θ > 0")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut verdict = FourthMomentVerdict {
        trials,
        grid_size,
        seed,
        bound_violations: 0,
        minimum_violations: 0,
        min_gap_to_minimum: f64::INFINITY,
    };
    let mut noise = vec![0.0f64; grid_size];
    for trial in 0..trials {
        let k = rng.gen_range(k_lo..=k_hi);
        let theta = k as f64 / grid_size as f64;
        let eta_target = rng.gen_range(e0..=e1);
        if trial % 2 == 0 {
            let a: f64 = rng.gen_range(-1.0..=1.0);
            let b: f64 = rng.gen_range(-1.0..=1.0);
            for (i, x) in noise.iter_mut().enumerate() {
                *x = if i < k { a } else { b };
            }
        } else {
            for x in noise.iter_mut() {
                *x = rng.gen_range(-1.0..=1.0);
            }
        }
        let raw: f64 = noise.iter().map(|x| x * x).sum::<f64>() / grid_size as f64;
        let scale = if raw > 0.0 { (eta_target / raw).sqrt() } else { 0.0 };

        let mut fourth = 0.0;
        let mut distance = 0.0;
        for (i, x) in noise.iter().enumerate() {
            let f = if i < k { 1.0 } else { 0.0 };
            let d = x * scale;
            let h = f + d;
            fourth += h.powi(4);
            distance += d * d;
        }
        fourth /= grid_size as f64;
        let eta = distance / grid_size as f64;

        let c = eta / theta;
        if fourth < fourth_moment_lower_bound(theta, eta, c) - MOMENT_TOLERANCE {
            verdict.bound_violations += 1;
        }
        let gap = fourth - fourth_moment_minimum(theta, eta);
        if gap < -MOMENT_TOLERANCE {
            verdict.minimum_violations += 1;
        }
        verdict.min_gap_to_minimum = verdict.min_gap_to_minimum.min(gap);
    }
    Ok(verdict)
}
