use fecverify_core::blockcode::LinearBlockCode;
use fecverify_core::bounds::uncoded_bpsk_ber;
use fecverify_core::sim::{run_ber, ChannelKind, SimCode, SimConfig, Simulator};

#[test]
fn uncoded_awgn_tracks_q_function() {
    let cfg = SimConfig::new(ChannelKind::Awgn, SimCode::Uncoded, vec![0.0, 2.0, 4.0], 200_000, 42)
        .without_early_stop();
    for row in run_ber(cfg).unwrap() {
        let expect = uncoded_bpsk_ber(row.x);
        let sigma = (expect * (1.0 - expect) / row.trials as f64).sqrt();
        assert!((row.ber - expect).abs() < 3.0 * sigma, "{row:?} vs {expect}");
    }
}

/// Mean and variance of the per-frame bit error fraction under hard ML
/// decoding, summing over all `2^7` error patterns on the zero codeword.
fn hamming_bsc_exact(p: f64) -> (f64, f64) {
    let code = LinearBlockCode::hamming74();
    let (m1, m2) = (0u64..128).fold((0.0, 0.0), |(m1, m2), e| {
        let w = e.count_ones() as i32;
        let prob = p.powi(w) * (1.0 - p).powi(7 - w);
        let (m, _) = code.ml_decode_hard_packed(e).unwrap();
        let x = f64::from(m.count_ones()) / 4.0;
        (m1 + prob * x, m2 + prob * x * x)
    });
    (m1, m2 - m1 * m1)
}

#[test]
fn hamming_bsc_matches_exact_enumeration() {
    let p = 0.01;
    let cfg = SimConfig::new(ChannelKind::Bsc, SimCode::Hamming74, vec![p], 300_000, 7).without_early_stop();
    let row = run_ber(cfg).unwrap()[0];
    let (expect, var) = hamming_bsc_exact(p);
    // Errors cluster within a frame, so the spread comes from frame-level variance.
    let sigma = (var / row.trials as f64).sqrt();
    assert!((row.ber - expect).abs() < 3.0 * sigma, "{} vs {expect}", row.ber);
}

#[test]
fn reruns_are_identical() {
    let cfg = SimConfig::new(ChannelKind::Awgn, SimCode::Conv75 { info_bits: 32 }, vec![1.0, 3.0], 4000, 2024);
    let a = run_ber(cfg.clone()).unwrap();
    let b = run_ber(cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn coding_helps_at_moderate_snr() {
    let uncoded = SimConfig::new(ChannelKind::Awgn, SimCode::Uncoded, vec![4.0], 20_000, 1).without_early_stop();
    let conv = SimConfig::new(ChannelKind::Awgn, SimCode::Conv75 { info_bits: 64 }, vec![4.0], 500, 1)
        .without_early_stop();
    let u = run_ber(uncoded).unwrap()[0].ber;
    let c = run_ber(conv).unwrap()[0].ber;
    assert!(c < u, "{c} vs {u}");
}

#[test]
fn rate_accounts_for_termination() {
    let cfg = SimConfig::new(ChannelKind::Awgn, SimCode::Conv75 { info_bits: 8 }, vec![0.0], 1, 0);
    let s = Simulator::new(cfg).unwrap();
    assert!((s.rate() - 8.0 / 20.0).abs() < 1e-15);
}
