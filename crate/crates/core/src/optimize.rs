//! Derivative-free local minimization and a deterministic multi-start driver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug)]
pub struct NelderMeadOptions {
    pub initial_step: f64,
    pub f_tol: f64,
    pub x_tol: f64,
    pub max_evals: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.5,
            f_tol: 1e-15,
            x_tol: 1e-10,
            max_evals: 20_000,
        }
    }
}

/// Nelder–Mead simplex minimization. Returns the best point and its value.
pub fn nelder_mead<F>(f: &F, x0: &[f64], opts: &NelderMeadOptions) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let d = x0.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut simplex: Vec<Vec<f64>> = std::iter::once(x0.to_vec())
        .chain((0..d).map(|i| {
            let mut x = x0.to_vec();
            x[i] += opts.initial_step;
            x
        }))
        .collect();
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();
    let mut evals = d + 1;

    let at = |base: &[f64], dir: &[f64], t: f64| -> Vec<f64> {
        base.iter().zip(dir).map(|(b, c)| b + t * (c - b)).collect()
    };

    while evals < opts.max_evals {
        let mut order: Vec<usize> = (0..=d).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let f_spread = values[d] - values[0];
        let x_spread = simplex[1..]
            .iter()
            .flat_map(|x| x.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_spread <= opts.f_tol && x_spread <= opts.x_tol {
            break;
        }

        let centroid: Vec<f64> = (0..d)
            .map(|j| simplex[..d].iter().map(|x| x[j]).sum::<f64>() / d as f64)
            .collect();
        let worst = simplex[d].clone();

        let xr = at(&centroid, &worst, -alpha);
        let fr = f(&xr);
        evals += 1;
        if fr < values[0] {
            let xe = at(&centroid, &worst, -gamma);
            let fe = f(&xe);
            evals += 1;
            if fe < fr {
                simplex[d] = xe;
                values[d] = fe;
            } else {
                simplex[d] = xr;
                values[d] = fr;
            }
            continue;
        }
        if fr < values[d - 1] {
            simplex[d] = xr;
            values[d] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[d] {
            let xc = at(&centroid, &xr, rho);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = at(&centroid, &worst, rho);
            let fc = f(&xc);
            (xc, fc)
        };
        evals += 1;
        if fc < values[d].min(fr) {
            simplex[d] = xc;
            values[d] = fc;
            continue;
        }
        let best = simplex[0].clone();
        for i in 1..=d {
            simplex[i] = at(&best, &simplex[i], sigma);
            values[i] = f(&simplex[i]);
        }
        evals += d;
    }
    let best = (0..=d)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    (simplex[best].clone(), values[best])
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
pub fn golden_section<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = (a + b) / 2.0;
    (x, f(x))
}

/// One sweep of golden-section line searches along each coordinate within
/// `±half_width`, keeping only improvements.
pub fn coordinate_polish<F>(f: &F, x: &mut [f64], fx: &mut f64, half_width: f64)
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    for i in 0..x.len() {
        let x0 = x[i];
        let mut probe = x.to_vec();
        let (xi, fi) = golden_section(
            |t| {
                probe[i] = t;
                f(&probe)
            },
            x0 - half_width,
            x0 + half_width,
            1e-12,
        );
        if fi < *fx {
            x[i] = xi;
            *fx = fi;
        }
    }
}

/// Nelder–Mead restarted from its own optimum with a shrinking simplex until
/// no further improvement, followed by a coordinate-wise polish.
pub fn minimize_local<F>(f: &F, x0: &[f64]) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut opts = NelderMeadOptions::default();
    let (mut x, mut fx) = nelder_mead(f, x0, &opts);
    for _ in 0..8 {
        opts.initial_step = (opts.initial_step * 0.25).max(1e-4);
        let (x2, f2) = nelder_mead(f, &x, &opts);
        let improved = f2 < fx - 1e-15;
        if f2 < fx {
            x = x2;
            fx = f2;
        }
        if !improved {
            break;
        }
    }
    for _ in 0..3 {
        let before = fx;
        coordinate_polish(f, &mut x, &mut fx, 1e-3);
        if before - fx <= 1e-16 {
            break;
        }
    }
    (x, fx)
}

/// Central-difference gradient norm, for stationarity checks.
pub fn gradient_norm<F>(f: &F, x: &[f64], h: f64) -> f64
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + h;
            let fp = f(&probe);
            probe[i] = x[i] - h;
            let fm = f(&probe);
            probe[i] = x[i];
            ((fp - fm) / (2.0 * h)).powi(2)
        })
        .sum::<f64>()
        .sqrt()
}

#[derive(Clone, Debug)]
pub struct MultiStartResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub start_index: usize,
}

/// Minimizes `f` from `starts` points drawn uniformly from the box
/// `[lower, upper]` by a seeded generator. Starts may run in parallel; the
/// result is the lowest value, ties going to the lowest start index.
pub fn multistart_minimize<F>(
    f: &F,
    lower: &[f64],
    upper: &[f64],
    starts: usize,
    seed: u64,
) -> MultiStartResult
where
    F: Fn(&[f64]) -> f64 + Sync + ?Sized,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<f64>> = (0..starts.max(1))
        .map(|_| {
            lower
                .iter()
                .zip(upper)
                .map(|(lo, hi)| rng.gen_range(*lo..*hi))
                .collect()
        })
        .collect();
    points
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let (x, value) = minimize_local(f, p);
            MultiStartResult {
                x,
                value,
                start_index: i,
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .min_by(|a, b| {
            a.value
                .total_cmp(&b.value)
                .then(a.start_index.cmp(&b.start_index))
        })
        .expect("at least one start")
}
