use proptest::prelude::*;

use stabcat_core::construction::{degeneracy_check, ConcatenatedCode};
use stabcat_core::decode::sample_error;
use stabcat_core::stabilizer::max_admissible_weight;
use stabcat_core::{
    construct, syndrome, BitMatrix, BitVector, BlockCode, DecodeStatus, ErrorClass, Letter,
    PauliFilter, PauliOperator, TwoStageDecoder,
};

fn catalog() -> Vec<BlockCode> {
    vec![
        BlockCode::repetition(1).unwrap(),
        BlockCode::repetition(2).unwrap(),
        BlockCode::repetition(3).unwrap(),
        BlockCode::parity(3).unwrap(),
        BlockCode::parity(4).unwrap(),
        BlockCode::hamming74(),
        BlockCode::hamming74().dual(),
        BlockCode::from_generator("c322", BitMatrix::parse_rows(&["110", "011"]).unwrap()).unwrap(),
    ]
}

fn instances(max_n: usize) -> Vec<ConcatenatedCode> {
    let mut out = Vec::new();
    for c1 in catalog() {
        for d2 in 1..=5 {
            if c1.n() * d2 <= max_n {
                out.push(construct(&c1, d2).unwrap());
            }
        }
    }
    out
}

/// Every Pauli on `n` qubits, as base-4 digits.
fn all_paulis(n: usize) -> impl Iterator<Item = PauliOperator> {
    let letters = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    (0u64..4u64.pow(n as u32)).map(move |mut idx| {
        let mut p = PauliOperator::identity(n);
        for q in 0..n {
            p.set(q, letters[(idx % 4) as usize]);
            idx /= 4;
        }
        p
    })
}

#[test]
fn generator_structure() {
    for built in instances(32) {
        let code = built.code();
        let (n1, k1, d2) = (built.c1().n(), built.c1().k(), built.d2());
        assert_eq!(code.generators().len(), n1 * (d2 - 1) + (n1 - k1));
        let diag = code.validate();
        assert!(diag.is_ok(), "{} d2={d2}: {diag:?}", built.c1().name());
        assert_eq!(code.k(), k1);
        assert_eq!(code.logicals().len(), code.k());
        assert!(code.css_split().is_ok());
    }
}

#[test]
fn classes_partition_small_codes() {
    for built in instances(6) {
        let code = built.code();
        for p in all_paulis(code.n()) {
            let class = code.classify_error(&p).unwrap();
            let normal = code.stabilizer().in_normalizer(&p).unwrap();
            let member = code.stabilizer().in_group(&p).unwrap();
            match class {
                ErrorClass::Identity => assert!(p.is_identity()),
                ErrorClass::InStabilizer => assert!(normal && member && !p.is_identity()),
                ErrorClass::Detected => assert!(!normal),
                ErrorClass::Logical => assert!(normal && !member),
            }
        }
    }
}

#[test]
fn no_logical_below_distance() {
    for built in instances(12) {
        let code = built.code();
        let d = code.distance(code.n()).unwrap();
        let dist = d.exact().unwrap();
        let witness = d.witness.unwrap();
        assert_eq!(witness.weight(), dist);
        assert_eq!(code.classify_error(&witness).unwrap(), ErrorClass::Logical);
        let below = code.sweep_errors(dist - 1, PauliFilter::All).unwrap();
        assert_eq!(
            below.logical_total(),
            0,
            "{} d2={}",
            built.c1().name(),
            built.d2()
        );
    }
}

#[test]
fn computed_distance_is_min_of_d1_and_d2() {
    for built in instances(24) {
        let code = built.code();
        let d1 = built.c1().min_distance().unwrap().unwrap();
        let css = code.distance_css().unwrap();
        // pure-Z logicals follow nonzero codewords of C1, pure-X ones whole blocks
        assert_eq!(css.z, Some(d1), "{} d2={}", built.c1().name(), built.d2());
        assert_eq!(css.x, Some(built.d2()));
        let wmax = max_admissible_weight(code.n(), code.n(), PauliFilter::All);
        assert_eq!(code.distance(wmax).unwrap().exact(), css.min());
    }
}

#[test]
fn degeneracy_everywhere() {
    for built in instances(21) {
        assert!(degeneracy_check(&built, 4).unwrap().holds);
    }
}

#[test]
fn single_errors_decode_when_distance_at_least_three() {
    for built in instances(24) {
        let code = built.code();
        let d = code.distance_css().unwrap().min().unwrap();
        if d < 3 {
            continue;
        }
        let decoder = TwoStageDecoder::new(&built).unwrap();
        for q in 0..code.n() {
            for l in Letter::NON_IDENTITY {
                let e = PauliOperator::on(code.n(), l, &[q]);
                assert_eq!(decoder.correct(&e).unwrap().status, DecodeStatus::Success);
            }
        }
    }
}

#[test]
fn recovery_always_clears_syndrome() {
    for built in instances(21) {
        let decoder = TwoStageDecoder::new(&built).unwrap();
        for trial in 0..200 {
            let e = sample_error(built.n(), 0.25, 11, trial);
            let out = decoder.correct(&e).unwrap();
            let residual = out.recovery.mul(&e).unwrap();
            assert!(syndrome(built.code(), &residual).unwrap().is_zero());
            assert_ne!(out.status, DecodeStatus::Inconsistent);
        }
    }
}

fn arb_full_rank(max_k: usize, max_n: usize) -> impl Strategy<Value = BlockCode> {
    (2..=max_n)
        .prop_flat_map(move |n| (Just(n), 1..=max_k.min(n)))
        .prop_flat_map(|(n, k)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), n), k)
                .prop_filter_map("rank deficient", move |rows| {
                    let g = BitMatrix::from_rows(
                        n,
                        rows.into_iter().map(BitVector::from_bools).collect(),
                    )
                    .ok()?;
                    BlockCode::from_generator("random", g).ok()
                })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_c1_rate_and_css_distance(c1 in arb_full_rank(4, 6), d2 in 1usize..=3) {
        let built = construct(&c1, d2).unwrap();
        let code = built.code();
        prop_assert!(code.validate().is_ok());
        prop_assert_eq!(code.k(), c1.k());
        let css = code.distance_css().unwrap();
        prop_assert_eq!(css.x, Some(d2));
        prop_assert_eq!(css.z, c1.min_distance().unwrap());
    }

    #[test]
    fn even_block_parities_are_stabilizers(c1 in arb_full_rank(3, 5), d2 in 2usize..=4, seed in any::<u64>()) {
        let built = construct(&c1, d2).unwrap();
        let e = sample_error(built.n(), 0.5, seed, 0);
        let z_only = PauliOperator::from_z(e.z().clone());
        if built.block_parities(&z_only).is_zero() && !z_only.is_identity() {
            prop_assert_eq!(built.code().classify_error(&z_only).unwrap(), ErrorClass::InStabilizer);
        }
    }
}
