use fecverify_core::conv::{free_distance, weight_series, ConvEncoder, Trellis};
use fecverify_core::gf2::BinaryPolynomial;
use proptest::prelude::*;

fn encoder() -> impl Strategy<Value = ConvEncoder> {
    (1u32..=4, 2usize..=3)
        .prop_flat_map(|(mem, n)| prop::collection::vec(1u64..(1 << (mem + 1)), n))
        .prop_map(|g| ConvEncoder::rate_one_over(&g).unwrap())
}

proptest! {
    #[test]
    fn trellis_paths_equal_encoder_outputs(e in encoder(), u in prop::collection::vec(0u8..2, 1..=12)) {
        let t = Trellis::terminated(&e, u.len());
        prop_assert_eq!(t.encode_path(&u).unwrap(), e.encode(&u, true).unwrap());
    }

    #[test]
    fn time_domain_matches_polynomial_encoding(e in encoder(), u in prop::collection::vec(0u8..2, 1..=12)) {
        let c = e.encode(&u, true).unwrap();
        let v = e.encode_polynomials(&[BinaryPolynomial::from_coefficients(&u)]).unwrap();
        for (j, vj) in v.iter().enumerate() {
            let stream: Vec<u8> = c.iter().skip(j).step_by(e.n_out()).copied().collect();
            let mut coeffs = vj.coefficients();
            coeffs.resize(stream.len(), 0);
            prop_assert_eq!(coeffs, stream);
        }
    }

    #[test]
    fn free_distance_is_first_nonzero_weight(e in encoder()) {
        prop_assume!(!e.is_catastrophic());
        let d = free_distance(&e).unwrap();
        let s = weight_series(&e, d + 3).unwrap();
        prop_assert!(s.agree());
        prop_assert_eq!(s.by_transfer.min_weight(), Some(d));
    }
}

#[test]
fn rate_two_thirds_encoder() {
    // k = 2, n = 3 with memories (1, 1).
    let e = ConvEncoder::from_octal(2, 3, &["3", "1", "3", "1", "2", "2"]).unwrap();
    assert_eq!(e.k_in(), 2);
    let t = Trellis::terminated(&e, 5);
    let u = [1, 0, 1, 1, 0, 0, 1, 0, 1, 1];
    assert_eq!(t.encode_path(&u).unwrap(), e.encode(&u, true).unwrap());
    if !e.is_catastrophic() {
        let d = free_distance(&e).unwrap();
        let s = weight_series(&e, d + 2).unwrap();
        assert!(s.agree());
        assert_eq!(s.by_enumeration.min_weight(), Some(d));
    }
}
