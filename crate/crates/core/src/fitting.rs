//! Ordinary least-squares polynomial fits with 95% confidence intervals.
//!
//! The design is centered and scaled to `[-1, 1]` before forming the normal
//! equations; coefficients and their covariance are then mapped back to the
//! raw powers of `x`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::convolution::{weighted_log_series, Convention, CorollaryConfig};
use crate::error::{Error, Result};
use crate::quotient::log_factorials;
use crate::sieves::SieveTables;

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Highest degree first: `[slope, intercept]` for a line.
    pub coefficients: Vec<f64>,
    /// `(low, high)` per coefficient, same order.
    pub ci95: Vec<(f64, f64)>,
    pub sse: f64,
    pub r_squared: f64,
    pub rmse: f64,
    pub n_points: usize,
    pub degree: usize,
}

impl FitResult {
    pub fn slope(&self) -> f64 {
        self.coefficients[self.degree - 1]
    }

    pub fn intercept(&self) -> f64 {
        self.coefficients[self.degree]
    }

    pub fn dof(&self) -> usize {
        self.n_points - (self.degree + 1)
    }

    pub fn predict(&self, x: f64) -> f64 {
        self.coefficients.iter().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// Two-sided 95% critical value of Student's t with `dof` degrees of freedom.
pub fn t_critical_95(dof: usize) -> f64 {
    StudentsT::new(0.0, 1.0, dof as f64)
        .map(|t| t.inverse_cdf(0.975))
        .unwrap_or(1.959_963_984_540_054)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn polyfit(points: &[(f64, f64)], degree: usize) -> Result<FitResult> {
    if !(1..=2).contains(&degree) {
        return Err(Error::Fit(format!("degree {degree} not supported")));
    }
    let n = points.len();
    let p = degree + 1;
    if n < degree + 2 {
        return Err(Error::Fit(format!(
            "{n} points are too few for a degree-{degree} fit"
        )));
    }
    let mean_x = points.iter().map(|q| q.0).sum::<f64>() / n as f64;
    let scale = points
        .iter()
        .map(|q| (q.0 - mean_x).abs())
        .fold(0.0, f64::max);
    if scale.is_nan() || scale <= 0.0 {
        return Err(Error::Fit("all x values are identical".into()));
    }

    let design = DMatrix::from_fn(n, p, |r, c| ((points[r].0 - mean_x) / scale).powi(c as i32));
    let y = DVector::from_iterator(n, points.iter().map(|q| q.1));
    let gram = design.transpose() * &design;
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::Fit("degenerate design matrix".into()))?;
    let gram_inv = chol.inverse();
    let gamma = &gram_inv * (design.transpose() * &y);

    let fitted = &design * &gamma;
    let sse: f64 = (&y - fitted).iter().map(|r| r * r).sum();
    let mean_y = y.mean();
    let sst: f64 = y.iter().map(|v| (v - mean_y).powi(2)).sum();
    let r_squared = if sst > 0.0 {
        1.0 - sse / sst
    } else if sse == 0.0 {
        1.0
    } else {
        0.0
    };
    let dof = n - p;
    let sigma2 = sse / dof as f64;

    // β_j = Σ_{k≥j} γ_k s^{-k} C(k,j) (-m)^{k-j}
    let to_raw = DMatrix::from_fn(p, p, |j, k| {
        if k < j {
            0.0
        } else {
            binomial(k, j) * (-mean_x).powi((k - j) as i32) / scale.powi(k as i32)
        }
    });
    let beta = &to_raw * &gamma;
    let cov = &to_raw * (gram_inv * sigma2) * to_raw.transpose();
    let t = t_critical_95(dof);

    let mut coefficients = Vec::with_capacity(p);
    let mut ci95 = Vec::with_capacity(p);
    for j in (0..p).rev() {
        let se = cov[(j, j)].max(0.0).sqrt();
        coefficients.push(beta[j]);
        ci95.push((beta[j] - t * se, beta[j] + t * se));
    }
    Ok(FitResult {
        coefficients,
        ci95,
        sse,
        r_squared,
        rmse: sigma2.sqrt(),
        n_points: n,
        degree,
    })
}

/// Linear fit of `values[x]` against `x` for `x` in `from..=to`.
pub fn fit_series(values: &[f64], from: u64, to: u64) -> Result<FitResult> {
    if to as usize >= values.len() {
        return Err(Error::Fit(format!(
            "series has {} entries, fit needs index {to}",
            values.len()
        )));
    }
    let pts: Vec<(f64, f64)> = (from..=to)
        .map(|x| (x as f64, values[x as usize]))
        .collect();
    polyfit(&pts, 1)
}

#[derive(Debug, Clone)]
pub struct SlopeSweep {
    /// `(I, slope of W_I over x = 2..=x_max)`
    pub points: Vec<(u64, f64)>,
    /// Degree-2 fit of slope against `I`, when there are at least 4 points.
    pub quadratic: Option<FitResult>,
}

/// Fits `W_I(x)` for `x = 2..=x_max` for each `I` and records the slopes.
pub fn slope_vs_i_sweep(
    intervals: &[u64],
    x_max: u64,
    tables: &SieveTables,
    convention: Convention,
) -> Result<SlopeSweep> {
    if x_max < 4 {
        return Err(Error::invalid("x_max must be at least 4"));
    }
    let log_fact = log_factorials(x_max);
    let points = intervals
        .par_iter()
        .map(|&i| {
            let cfg = CorollaryConfig::new(i, convention)?;
            let series = cfg.series(x_max, tables)?;
            let w = weighted_log_series(&cfg, x_max, &series, &log_fact)?;
            Ok((i, fit_series(&w, 2, x_max)?.slope()))
        })
        .collect::<Result<Vec<_>>>()?;
    let quadratic = if points.len() >= 4 {
        let pts: Vec<(f64, f64)> = points.iter().map(|&(i, s)| (i as f64, s)).collect();
        Some(polyfit(&pts, 2)?)
    } else {
        None
    };
    Ok(SlopeSweep { points, quadratic })
}
