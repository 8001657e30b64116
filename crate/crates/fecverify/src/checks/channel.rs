use fecverify_core::soft::{branch_metric, Observation};

use crate::probe::Probe;

const GRID_Y: [f64; 10] = [-2.5, -1.0, -0.3, -0.01, 0.0, 0.2, 0.7, 1.0, 1.5, 3.0];
const GRID_ES: [f64; 3] = [0.25, 1.0, 2.0];
const GRID_N0: [f64; 3] = [0.1, 0.5, 2.0];

/// Independent Gaussian log-density `ln p(y | x)` with variance `N0/2`.
fn log_density(y: f64, x: f64, n0: f64) -> f64 {
    -(y - x).powi(2) / n0 - 0.5 * (std::f64::consts::PI * n0).ln()
}

/// A metric is right if `(m(y,1) - m(y,0)) / N0` is the log-likelihood ratio.
fn metric_identity(p: &mut Probe, metric: impl Fn(f64, u8, f64) -> f64) {
    let mut errs = Vec::new();
    let mut agree = true;
    for es in GRID_ES {
        let s = es.sqrt();
        for n0 in GRID_N0 {
            for y in GRID_Y {
                let llr = log_density(y, s, n0) - log_density(y, -s, n0);
                let from_metric = (metric(y, 1, es) - metric(y, 0, es)) / n0;
                errs.push((from_metric - llr).abs());
                agree &= (metric(y, 0, es) < metric(y, 1, es)) == (llr > 0.0) || llr == 0.0;
            }
        }
    }
    p.max_error("metric difference vs log-likelihood ratio", errs, 1e-9);
    p.holds("metric order equals likelihood order", agree);
}

pub fn squared_metric(p: &mut Probe) {
    metric_identity(p, branch_metric);
}

pub fn unsquared_metric(p: &mut Probe) {
    metric_identity(p, |y, v, es| if v == 0 { y - es.sqrt() } else { y + es.sqrt() });
}

/// Simpson integral of `exp(ln p(y | 0))` over `[-L, L]`.
fn integrate_density(obs: impl Fn(f64) -> f64) -> f64 {
    let (a, b, n) = (-12.0, 12.0, 24_000);
    let h = (b - a) / n as f64;
    let mut s = obs(a) + obs(b);
    for i in 1..n {
        s += obs(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn awgn_likelihood(y: f64, es: f64, n0: f64) -> f64 {
    Observation::awgn(vec![y], es, n0)
        .expect("positive parameters")
        .log_likelihood(0, 0)
        .exp()
}

fn bsc_sums(p: &mut Probe) {
    let mut errs = Vec::new();
    for q in [0.01, 0.1, 0.3, 0.5] {
        let total: f64 = (0..2u8)
            .map(|r| Observation::bsc(vec![r], q).unwrap().log_likelihood(0, 0).exp())
            .sum();
        errs.push((total - 1.0).abs());
    }
    p.max_error("BSC P(r|v) summed over r", errs, 1e-12);
}

pub fn awgn_is_density(p: &mut Probe) {
    bsc_sums(p);
    for n0 in GRID_N0 {
        let mass = integrate_density(|y| awgn_likelihood(y, 1.0, n0));
        p.close(format!("integral of p(y|v) over y, N0 = {n0}"), 1.0, mass, 1e-9);
    }
    let peak = awgn_likelihood(1.0, 1.0, 0.1);
    p.note("peak p(y|v) at N0 = 0.1", peak);
    p.holds("a density may exceed 1", peak > 1.0);
}

pub fn awgn_as_probability(p: &mut Probe) {
    bsc_sums(p);
    let mut worst = 0.0f64;
    for n0 in GRID_N0 {
        for y in GRID_Y {
            worst = worst.max(awgn_likelihood(y, 1.0, n0));
        }
    }
    p.holds("p(y|v) <= 1 as a probability would be", worst <= 1.0);
    p.note("largest p(y|v)", worst);
}
