//! Derivative-free Nelder–Mead minimizer with optional box clamping.
//!
//! Coefficients are the standard ones (reflection 1, expansion 2,
//! contraction ½, shrink ½). When bounds are given every trial point is
//! clamped into the box before evaluation, so the simplex never leaves it.

#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    pub max_iter: usize,
    /// Stop when the largest coordinate distance from the best vertex to
    /// any other vertex falls below this.
    pub diameter_tol: f64,
    /// Initial simplex edge along each coordinate.
    pub step: f64,
    pub bounds: Option<Vec<(f64, f64)>>,
    /// Record `(iteration, best value)` after every iteration.
    pub record_trace: bool,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            max_iter: 2000,
            diameter_tol: 1e-10,
            step: 0.1,
            bounds: None,
            record_trace: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Vec<(usize, f64)>,
}

fn clamp(x: &mut [f64], bounds: &Option<Vec<(f64, f64)>>) {
    if let Some(b) = bounds {
        for (xi, &(lo, hi)) in x.iter_mut().zip(b) {
            *xi = xi.clamp(lo, hi);
        }
    }
}

/// Minimizes `f` starting from `x0`.
pub fn minimize<F>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    assert!(n >= 1, "need at least one coordinate");
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let mut start = x0.to_vec();
    clamp(&mut start, &opts.bounds);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.clone(), eval(&start)));
    for i in 0..n {
        let mut p = start.clone();
        p[i] += opts.step;
        if let Some(b) = &opts.bounds {
            // step inward when the forward step would be clamped away
            if p[i] > b[i].1 {
                p[i] = start[i] - opts.step;
            }
        }
        clamp(&mut p, &opts.bounds);
        let v = eval(&p);
        simplex.push((p, v));
    }

    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = &simplex[0].0;
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(p, _)| p.iter().zip(best).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if diameter < opts.diameter_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (p, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / n as f64;
            }
        }
        let along = |t: f64| {
            let mut p: Vec<f64> = centroid
                .iter()
                .zip(&simplex[n].0)
                .map(|(c, w)| c + t * (c - w))
                .collect();
            clamp(&mut p, &opts.bounds);
            p
        };

        let reflected = along(1.0);
        let fr = eval(&reflected);
        if fr < simplex[0].1 {
            let expanded = along(2.0);
            let fe = eval(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let (contracted, fc) = if fr < simplex[n].1 {
                let c = along(0.5);
                let v = eval(&c);
                (c, v)
            } else {
                let c = along(-0.5);
                let v = eval(&c);
                (c, v)
            };
            if fc < fr.min(simplex[n].1) {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0.clone();
                for (p, v) in simplex.iter_mut().skip(1) {
                    for (x, b) in p.iter_mut().zip(&best) {
                        *x = b + 0.5 * (*x - b);
                    }
                    clamp(p, &opts.bounds);
                    *v = eval(p);
                }
            }
        }
        if opts.record_trace {
            let best = simplex.iter().map(|s| s.1).fold(f64::INFINITY, f64::min);
            trace.push((iterations, best));
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    NelderMeadResult {
        x,
        value,
        iterations,
        converged,
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2);
        let r = minimize(f, &[0.0, 0.0], &NelderMeadOptions::default());
        assert!(r.converged);
        assert!((r.x[0] - 1.0).abs() < 1e-8 && (r.x[1] + 2.0).abs() < 1e-8);
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let opts = NelderMeadOptions {
            max_iter: 10_000,
            step: 0.5,
            ..Default::default()
        };
        let r = minimize(f, &[-1.2, 1.0], &opts);
        assert!((r.x[0] - 1.0).abs() < 1e-6, "{:?}", r.x);
    }

    #[test]
    fn respects_bounds() {
        let f = |x: &[f64]| -(x[0] + x[1]);
        let opts = NelderMeadOptions {
            bounds: Some(vec![(0.0, 1.0), (0.0, 0.5)]),
            record_trace: true,
            ..Default::default()
        };
        let r = minimize(f, &[0.2, 0.2], &opts);
        assert!((r.x[0] - 1.0).abs() < 1e-9 && (r.x[1] - 0.5).abs() < 1e-9);
        assert!(!r.trace.is_empty());
        assert!(r.trace.windows(2).all(|w| w[1].1 <= w[0].1));
    }

    #[test]
    fn one_dimensional() {
        let r = minimize(|x| (x[0] - 0.3).powi(2), &[0.0], &NelderMeadOptions::default());
        assert!((r.x[0] - 0.3).abs() < 1e-9);
    }
}
