//! Decoders against exhaustive enumeration of every message.

use fecverify_core::blockcode::LinearBlockCode;
use fecverify_core::conv::{ConvEncoder, Trellis};
use fecverify_core::soft::{
    bcjr, partial_metrics, sova, sova_with_rule, viterbi, viterbi_path, LlrSequence, MapMode,
    Observation, ReliabilityRule,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn gaussian(rng: &mut StdRng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_encoder(rng: &mut StdRng) -> ConvEncoder {
    loop {
        let n_out = rng.random_range(2..=3);
        let mem = rng.random_range(1..=3u32);
        let gens: Vec<u64> = (0..n_out).map(|_| rng.random_range(1..1u64 << (mem + 1))).collect();
        if let Ok(e) = ConvEncoder::rate_one_over(&gens) {
            return e;
        }
    }
}

/// Every message of length `h` with its codeword, via the shift-register encoder.
fn codebook(enc: &ConvEncoder, h: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
    (0u32..1 << h)
        .map(|m| {
            let u: Vec<u8> = (0..h).map(|i| (m >> i & 1) as u8).collect();
            let c = enc.encode(&u, true).unwrap();
            (u, c)
        })
        .collect()
}

/// `ln p(y | c) + ln P(u)` up to terms common to all messages.
fn log_weight(y: &[f64], c: &[u8], u: &[u8], la: &[f64], es: f64, n0: f64) -> f64 {
    let s = es.sqrt();
    let chan: f64 = y
        .iter()
        .zip(c)
        .map(|(&y, &b)| {
            let x = if b == 0 { s } else { -s };
            -(y - x) * (y - x) / n0
        })
        .sum();
    let prior: f64 = u
        .iter()
        .zip(la)
        .map(|(&b, &l)| {
            let p_plus = 1.0 / (1.0 + (-l).exp());
            if b == 0 {
                p_plus.ln()
            } else {
                (1.0 - p_plus).ln()
            }
        })
        .sum();
    chan + prior
}

fn logsumexp(v: &[f64]) -> f64 {
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

struct Instance {
    trellis: Trellis,
    book: Vec<(Vec<u8>, Vec<u8>)>,
    y: Vec<f64>,
    es: f64,
    n0: f64,
    la: Vec<f64>,
}

fn instance(rng: &mut StdRng, with_priors: bool) -> Instance {
    let enc = random_encoder(rng);
    let h = rng.random_range(1..=10);
    let trellis = Trellis::terminated(&enc, h);
    let book = codebook(&enc, h);
    let es: f64 = rng.random_range(0.3..2.0);
    let n0 = rng.random_range(0.3..3.0);
    let truth = &book[rng.random_range(0..book.len())].1;
    let sigma = (n0 / 2.0f64).sqrt();
    let y = truth
        .iter()
        .map(|&b| if b == 0 { es.sqrt() } else { -es.sqrt() } + sigma * gaussian(rng))
        .collect();
    let la = (0..h)
        .map(|_| if with_priors { rng.random_range(-3.0..3.0) } else { 0.0 })
        .collect();
    Instance {
        trellis,
        book,
        y,
        es,
        n0,
        la,
    }
}

#[test]
fn bcjr_log_matches_exhaustive_posteriors() {
    let mut rng = StdRng::seed_from_u64(0xB0C1);
    for _ in 0..1000 {
        let inst = instance(&mut rng, true);
        let obs = Observation::awgn(inst.y.clone(), inst.es, inst.n0).unwrap();
        let out = bcjr(&obs, &inst.trellis, &LlrSequence::new(inst.la.clone()), MapMode::Log).unwrap();
        let weights: Vec<f64> = inst
            .book
            .iter()
            .map(|(u, c)| log_weight(&inst.y, c, u, &inst.la, inst.es, inst.n0))
            .collect();
        for l in 0..inst.la.len() {
            let split = |bit: u8| -> Vec<f64> {
                inst.book
                    .iter()
                    .zip(&weights)
                    .filter(|((u, _), _)| u[l] == bit)
                    .map(|(_, &w)| w)
                    .collect()
            };
            let oracle = logsumexp(&split(0)) - logsumexp(&split(1));
            assert!((out.a_posteriori[l] - oracle).abs() < 1e-9, "{} vs {oracle}", out.a_posteriori[l]);
        }
    }
}

#[test]
fn maxlog_matches_constrained_max() {
    let mut rng = StdRng::seed_from_u64(0x3A71);
    for _ in 0..1000 {
        let inst = instance(&mut rng, true);
        let obs = Observation::awgn(inst.y.clone(), inst.es, inst.n0).unwrap();
        let out = bcjr(&obs, &inst.trellis, &LlrSequence::new(inst.la.clone()), MapMode::MaxLog).unwrap();
        for l in 0..inst.la.len() {
            let best = |bit: u8| {
                inst.book
                    .iter()
                    .filter(|(u, _)| u[l] == bit)
                    .map(|(u, c)| log_weight(&inst.y, c, u, &inst.la, inst.es, inst.n0))
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            let oracle = best(0) - best(1);
            assert!((out.a_posteriori[l] - oracle).abs() < 1e-9);
        }
    }
}

#[test]
fn viterbi_is_exhaustive_ml_and_sova_agrees() {
    let mut rng = StdRng::seed_from_u64(0x7175);
    for _ in 0..1000 {
        let inst = instance(&mut rng, false);
        let obs = Observation::awgn(inst.y.clone(), inst.es, inst.n0).unwrap();
        let zeros = vec![0.0; inst.la.len()];
        let (best_u, best_w) = inst
            .book
            .iter()
            .map(|(u, c)| (u, log_weight(&inst.y, c, u, &zeros, inst.es, inst.n0)))
            .fold((None, f64::NEG_INFINITY), |acc, (u, w)| {
                if w > acc.1 {
                    (Some(u), w)
                } else {
                    acc
                }
            });
        let path = viterbi_path(&obs, &inst.trellis).unwrap();
        assert_eq!(&path.info, best_u.unwrap());
        let uniform = inst.la.len() as f64 * 0.5f64.ln();
        assert!((-path.metric / inst.n0 + uniform - best_w).abs() < 1e-9);
        let s = sova(&obs, &inst.trellis, &LlrSequence::new(zeros.clone())).unwrap();
        assert_eq!(s.hard, path.info);
        assert!(s.reliability.iter().all(|&r| r >= 0.0));

        // Survivor pruning can only raise SOVA's reliability above the max-log value.
        let maxlog = bcjr(&obs, &inst.trellis, &LlrSequence::new(zeros), MapMode::MaxLog).unwrap();
        for l in 0..inst.la.len() {
            let m = maxlog.a_posteriori[l];
            assert!(s.llr[l] * m >= 0.0);
            assert!(s.llr[l].abs() >= m.abs() - 1e-9);
        }
    }
}

#[test]
fn sova_with_priors_follows_map_sequence() {
    let mut rng = StdRng::seed_from_u64(0x5017);
    for _ in 0..300 {
        let inst = instance(&mut rng, true);
        let obs = Observation::awgn(inst.y.clone(), inst.es, inst.n0).unwrap();
        let best = inst
            .book
            .iter()
            .max_by(|a, b| {
                let wa = log_weight(&inst.y, &a.1, &a.0, &inst.la, inst.es, inst.n0);
                let wb = log_weight(&inst.y, &b.1, &b.0, &inst.la, inst.es, inst.n0);
                wa.partial_cmp(&wb).unwrap()
            })
            .unwrap();
        let s = sova(&obs, &inst.trellis, &LlrSequence::new(inst.la.clone())).unwrap();
        assert_eq!(s.hard, best.0);
    }
}

#[test]
fn zero_initialised_sova_loses_the_decisions() {
    let mut rng = StdRng::seed_from_u64(0x2E60);
    let inst = instance(&mut rng, false);
    let obs = Observation::awgn(inst.y.clone(), inst.es, inst.n0).unwrap();
    let la = LlrSequence::zeros(inst.la.len());
    let bad = sova_with_rule(&obs, &inst.trellis, &la, ReliabilityRule::ZeroInitialized).unwrap();
    assert!(bad.llr.values().iter().all(|&l| l == 0.0));
}

#[test]
fn prob_and_log_agree_on_four_state_trellises() {
    let mut rng = StdRng::seed_from_u64(0x9406);
    let enc = ConvEncoder::from_octal(1, 2, &["7", "5"]).unwrap();
    for _ in 0..200 {
        let h = rng.random_range(1..=14);
        let t = Trellis::terminated(&enc, h);
        let y: Vec<f64> = (0..t.code_len()).map(|_| gaussian(&mut rng)).collect();
        let obs = Observation::awgn(y, 1.0, 1.5).unwrap();
        let la = LlrSequence::new((0..h).map(|_| rng.random_range(-2.0..2.0)).collect());
        let p = bcjr(&obs, &t, &la, MapMode::Probability).unwrap();
        let l = bcjr(&obs, &t, &la, MapMode::Log).unwrap();
        for i in 0..h {
            assert!((p.a_posteriori[i] - l.a_posteriori[i]).abs() < 1e-9);
        }
    }
}

#[test]
fn block_code_trellis_decodes_like_exhaustive_ml() {
    let mut rng = StdRng::seed_from_u64(0xB10C);
    let code = LinearBlockCode::hamming74();
    let t = Trellis::from_systematic_code(&code).unwrap();
    for _ in 0..300 {
        let y: Vec<f64> = (0..7).map(|_| gaussian(&mut rng)).collect();
        let obs = Observation::awgn(y.clone(), 1.0, 1.0).unwrap();
        let (m, _) = code.ml_decode_soft_packed(&y).unwrap();
        let expect: Vec<u8> = (0..4).map(|i| (m >> i & 1) as u8).collect();
        assert_eq!(viterbi(&obs, &t).unwrap(), expect);
    }
}

#[test]
fn partial_metrics_are_cumulative() {
    let mut rng = StdRng::seed_from_u64(0x1DE5);
    let enc = ConvEncoder::from_octal(1, 2, &["7", "5"]).unwrap();
    let t = Trellis::terminated(&enc, 8);
    let y: Vec<f64> = (0..t.code_len()).map(|_| gaussian(&mut rng)).collect();
    let obs = Observation::awgn(y, 1.0, 1.0).unwrap();
    let path = viterbi_path(&obs, &t).unwrap();
    let m = partial_metrics(&obs, &t, &path.info).unwrap();
    assert_eq!(m.len(), t.sections().len());
    for (step, &pm) in m.iter().enumerate() {
        let batch: f64 = (0..2 * (step + 1)).map(|i| obs.cost(i, path.code[i])).sum();
        assert!((pm - batch).abs() < 1e-12);
    }
    assert!((m[m.len() - 1] - path.metric).abs() < 1e-9);
}

#[test]
fn bsc_viterbi_within_correction_radius() {
    let mut rng = StdRng::seed_from_u64(0xB5C);
    let enc = ConvEncoder::from_octal(1, 2, &["7", "5"]).unwrap();
    let t = Trellis::terminated(&enc, 40);
    for _ in 0..200 {
        let mut r = vec![0u8; t.code_len()];
        let a = rng.random_range(0..r.len());
        let b = rng.random_range(0..r.len());
        r[a] ^= 1;
        r[b] ^= 1;
        let obs = Observation::bsc(r, 0.02).unwrap();
        assert_eq!(viterbi(&obs, &t).unwrap(), vec![0; 40]);
    }
}
