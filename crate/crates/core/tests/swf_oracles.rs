use std::collections::BTreeSet;

use implab_core::orders::{all_profiles, PairCode};
use implab_core::satkit::{decode_model, encode_arrow, enumerate_models, ArrowAxioms};
use implab_core::swf::{
    classify, enumerate_iia_swfs, satisfies_iia, satisfies_unanimity, verify_tang_lin, ClassTag, PairwiseSwf, Swf,
};
use implab_core::Budget;
use serde::Deserialize;

#[derive(Deserialize)]
struct GoldenRow {
    #[serde(flatten)]
    swf: PairwiseSwf,
    class: ClassTag,
}

#[derive(Deserialize)]
struct Golden {
    agents: usize,
    count: usize,
    swfs: Vec<GoldenRow>,
}

fn golden(n: usize) -> Golden {
    let path = format!("{}/tests/golden/swf_census_n{n}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn enumeration_matches_golden_census() {
    for n in [1, 2] {
        let g = golden(n);
        assert_eq!(g.agents, n);
        let swfs = enumerate_iia_swfs(n, &Budget::default()).unwrap();
        assert_eq!(swfs.len(), g.count);
        for (swf, row) in swfs.iter().zip(&g.swfs) {
            assert_eq!(swf, &row.swf);
            assert_eq!(classify(&Swf::from(*swf)).tag(), row.class, "{swf:?}");
        }
    }
}

/// The 84 small-range functions, rebuilt by hand: pick the pair whose table
/// varies (3 ways), fix the other two pairs to values that keep both outputs
/// acyclic (2 ways), and choose a non-constant table of the four entries (14).
#[test]
fn small_range_recount() {
    let mut expected = BTreeSet::new();
    for varying in 0..3 {
        let mut fixed_settings = 0;
        for fixed in 0..4u8 {
            let mut others = [fixed >> 1 & 1 == 1, fixed & 1 == 1].into_iter();
            let bits: Vec<Option<bool>> = (0..3)
                .map(|p| if p == varying { None } else { others.next() })
                .collect();
            let with = |b: bool| {
                let v: Vec<bool> = bits.iter().map(|x| x.unwrap_or(b)).collect();
                PairCode::from_bits(v[0], v[1], v[2])
            };
            if with(false).is_cyclic() || with(true).is_cyclic() {
                continue;
            }
            fixed_settings += 1;
            for table in 1..15u64 {
                let mut codes = [0u64; 3];
                for (p, code) in codes.iter_mut().enumerate() {
                    *code = match bits[p] {
                        None => table,
                        Some(true) => 0b1111,
                        Some(false) => 0,
                    };
                }
                expected.insert(PairwiseSwf::new(2, codes).unwrap());
            }
        }
        assert_eq!(fixed_settings, 2);
    }
    assert_eq!(expected.len(), 3 * 2 * 14);

    let small: BTreeSet<PairwiseSwf> = enumerate_iia_swfs(2, &Budget::default())
        .unwrap()
        .into_iter()
        .filter(|s| classify(&Swf::from(*s)).tag() == ClassTag::SmallRange)
        .collect();
    assert_eq!(small, expected);

    let report = verify_tang_lin(2, &Budget::default()).unwrap();
    assert!(report.holds);
    assert_eq!(report.census.small_range, 84);
}

#[test]
fn pairwise_and_extensional_forms_agree() {
    let profiles = all_profiles(2, 3, &Budget::default()).unwrap();
    for swf in enumerate_iia_swfs(2, &Budget::default()).unwrap() {
        let ext = swf.to_extensional();
        for p in &profiles {
            assert_eq!(swf.evaluate(p).unwrap(), ext.evaluate(p).unwrap());
        }
        assert_eq!(ext.to_pairwise().unwrap(), swf);
        let (pw, ex) = (Swf::from(swf), Swf::from(ext));
        assert!(satisfies_iia(&ex).is_ok());
        assert_eq!(satisfies_unanimity(&pw).is_ok(), satisfies_unanimity(&ex).is_ok());
        assert_eq!(classify(&pw), classify(&ex));
    }
}

#[test]
fn sat_models_equal_enumeration_for_one_and_two_agents() {
    for n in [1, 2] {
        let enc = encode_arrow(n, ArrowAxioms::NONE, &Budget::default()).unwrap();
        let models = enumerate_models(&enc.cnf, &enc.table_vars(), 10_000).unwrap();
        let decoded: BTreeSet<PairwiseSwf> = models
            .models
            .iter()
            .map(|row| {
                let mut a = implab_core::satkit::Assignment::all_false(enc.cnf.num_vars());
                for (&v, &b) in enc.table_vars().iter().zip(row) {
                    a.set(v, b);
                }
                decode_model(&enc, &a).unwrap()
            })
            .collect();
        let enumerated: BTreeSet<PairwiseSwf> =
            enumerate_iia_swfs(n, &Budget::default()).unwrap().into_iter().collect();
        assert_eq!(decoded, enumerated, "n={n}");
    }
}
