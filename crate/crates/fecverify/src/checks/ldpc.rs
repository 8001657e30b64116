use fecverify_core::ldpc::{check_node_update, ParityCheckMatrix, SumProductDecoder};
use fecverify_core::soft::LlrSequence;
use rand::Rng;

use super::oracle::{bitwise_map, rng};
use crate::probe::Probe;

/// Brute-force sum over tuples; `filter` keeps only parity-satisfying ones.
fn enumerate(q: &[(f64, f64)], x: u8, filter: bool) -> f64 {
    (0u32..1 << q.len())
        .filter(|t| !filter || (t.count_ones() & 1) as u8 == x)
        .map(|t| {
            q.iter()
                .enumerate()
                .map(|(k, &(q0, q1))| if t >> k & 1 == 1 { q1 } else { q0 })
                .product::<f64>()
        })
        .sum()
}

fn random_pairs(r: &mut rand_chacha::ChaCha8Rng, m: usize) -> Vec<(f64, f64)> {
    (0..m)
        .map(|_| {
            let v: f64 = r.random();
            (v, 1.0 - v)
        })
        .collect()
}

fn recurrence_check(p: &mut Probe, filter: bool) {
    let grid = [0.0, 0.1, 0.25, 0.5, 0.8, 1.0];
    let mut small = Vec::new();
    for m in 0..=4u32 {
        for idx in 0..grid.len().pow(m) {
            let q: Vec<(f64, f64)> = (0..m)
                .map(|k| {
                    let g = grid[idx / grid.len().pow(k) % grid.len()];
                    (g, 1.0 - g)
                })
                .collect();
            for x in 0..2 {
                small.push((check_node_update(&q, x) - enumerate(&q, x, filter)).abs());
            }
        }
    }
    p.max_error("recurrence vs enumeration, m <= 4 exhaustive grid", small, 1e-12);
    let mut r = rng(0x1747);
    let (mut large, mut tanh) = (Vec::new(), Vec::new());
    for _ in 0..10_000 {
        let m = r.random_range(5..=12);
        let q = random_pairs(&mut r, m);
        for x in 0..2 {
            large.push((check_node_update(&q, x) - enumerate(&q, x, filter)).abs());
        }
        let prod: f64 = q.iter().map(|(a, b)| a - b).product();
        tanh.push((check_node_update(&q, 0) - check_node_update(&q, 1) - prod).abs());
    }
    p.max_error("recurrence vs enumeration, 10^4 random cases m in 5..=12", large, 1e-12);
    p.max_error("sigma0 - sigma1 vs product of (q0 - q1)", tanh, 1e-12);
}

pub fn recurrence(p: &mut Probe) {
    recurrence_check(p, true);
}

pub fn unfiltered_sum(p: &mut Probe) {
    recurrence_check(p, false);
}

fn pair(l: f64) -> (f64, f64) {
    let p0 = 1.0 / (1.0 + (-l).exp());
    (p0, 1.0 - p0)
}

fn normalize((a, b): (f64, f64)) -> (f64, f64) {
    (a / (a + b), b / (a + b))
}

/// Reference flooding decoder; `exclude` drops the target bit's own message
/// from each check-to-bit update.
fn reference_posteriors(h: &ParityCheckMatrix, llr: &[f64], sweeps: usize, exclude: bool) -> Vec<f64> {
    let prior: Vec<(f64, f64)> = llr.iter().map(|&l| pair(l)).collect();
    let mut q: Vec<Vec<(f64, f64)>> = h.rows().iter().map(|r| r.iter().map(|&l| prior[l]).collect()).collect();
    let mut post = prior.clone();
    for _ in 0..sweeps {
        let sigma: Vec<Vec<(f64, f64)>> = h
            .rows()
            .iter()
            .enumerate()
            .map(|(j, row)| {
                (0..row.len())
                    .map(|k| {
                        let others: Vec<(f64, f64)> = q[j]
                            .iter()
                            .enumerate()
                            .filter(|&(t, _)| !exclude || t != k)
                            .map(|(_, &m)| m)
                            .collect();
                        (check_node_update(&others, 0), check_node_update(&others, 1))
                    })
                    .collect()
            })
            .collect();
        for l in 0..h.n() {
            let incoming: Vec<(usize, (f64, f64))> = h
                .column(l)
                .iter()
                .map(|&j| (j, sigma[j][h.row(j).iter().position(|&b| b == l).expect("edge")]))
                .collect();
            post[l] = normalize(incoming.iter().fold(prior[l], |(a, b), &(_, (s0, s1))| (a * s0, b * s1)));
            for &(j, _) in &incoming {
                let m = incoming
                    .iter()
                    .filter(|&&(i, _)| i != j)
                    .fold(prior[l], |(a, b), &(_, (s0, s1))| (a * s0, b * s1));
                let k = h.row(j).iter().position(|&b| b == l).expect("edge");
                q[j][k] = normalize(m);
            }
        }
    }
    post.iter().map(|&(_, p1)| p1).collect()
}

fn trees() -> Vec<(ParityCheckMatrix, usize)> {
    vec![
        (ParityCheckMatrix::from_rows(5, vec![vec![0, 1, 2, 3, 4]]).expect("valid"), 1),
        (ParityCheckMatrix::from_rows(7, vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]]).expect("valid"), 3),
        (ParityCheckMatrix::from_rows(6, vec![vec![0, 1, 2], vec![2, 3], vec![2, 4, 5]]).expect("valid"), 2),
    ]
}

fn exclusion_check(p: &mut Probe, exclude: bool, use_library: bool) {
    let mut r = rng(0x875);
    let mut errs = Vec::new();
    for (h, sweeps) in trees() {
        for _ in 0..100 {
            let llr: Vec<f64> = (0..h.n()).map(|_| r.random_range(-4.0..4.0)).collect();
            let oracle = bitwise_map(h.n(), &llr, |c| h.is_codeword(c));
            let got = if use_library {
                let mut dec = SumProductDecoder::new(&h, &LlrSequence::new(llr.clone())).expect("lengths match");
                for _ in 0..sweeps {
                    dec.step();
                }
                dec.posteriors().iter().map(|&(_, p1)| p1).collect()
            } else {
                reference_posteriors(&h, &llr, sweeps, exclude)
            };
            errs.extend(got.iter().zip(&oracle).map(|(a, b)| (a - b).abs()));
        }
    }
    p.max_error("tree-graph posteriors vs bitwise MAP", errs, 1e-9);
}

pub fn set_minus_exclusion(p: &mut Probe) {
    exclusion_check(p, true, true);
    exclusion_check(p, true, false);
}

pub fn no_exclusion(p: &mut Probe) {
    exclusion_check(p, false, false);
}
