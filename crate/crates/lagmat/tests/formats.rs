use lagmat::commands::convert;
use lagmat::gen;
use lagmat::io::{Instance, Kind};
use lagmat_core::lagrangian::{plucker, LagrangianWitness};
use lagmat_core::Field;
use proptest::prelude::*;

fn field(k: usize) -> Field {
    [Field::Prime(2), Field::Prime(3), Field::Prime(7), Field::Rationals][k]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialization_is_a_fixed_point(seed in any::<u64>(), k in 0usize..4, n in 1usize..=4) {
        let w = gen::random_witness(&mut gen::rng(seed), field(k), n);
        for inst in [Instance::from_matrix(w.matrix()), Instance::from_rgp(&plucker(&w))] {
            let text = inst.to_canonical_string();
            let again = Instance::parse(&text).unwrap();
            prop_assert_eq!(&again, &inst);
            prop_assert_eq!(again.to_canonical_string(), text);
        }
    }

    #[test]
    fn bases_and_circuits_convert_back(seed in any::<u64>(), k in 0usize..4, n in 1usize..=3) {
        let w = gen::random_witness(&mut gen::rng(seed), field(k), n);
        let bases = convert(&Instance::from_matrix(w.matrix()), Kind::Bases).unwrap();
        let circuits = convert(&bases, Kind::Circuits).unwrap();
        prop_assert_eq!(convert(&circuits, Kind::Bases).unwrap(), bases);
    }

    #[test]
    fn matrix_survives_rgp(seed in any::<u64>(), k in 0usize..4, n in 1usize..=3) {
        let w = gen::random_witness(&mut gen::rng(seed), field(k), n);
        let rgp = convert(&Instance::from_matrix(w.matrix()), Kind::Rgp).unwrap();
        let back = convert(&rgp, Kind::Matrix).unwrap().to_matrix().unwrap();
        prop_assert!(LagrangianWitness::new(back).unwrap().same_subspace(&w));
    }
}

#[test]
fn documented_examples_parse() {
    let doc = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/formats.md")).unwrap();
    let examples: Vec<&str> = doc.lines().filter(|l| l.starts_with("{\"kind\"")).collect();
    assert_eq!(examples.len(), 8);
    let mut kinds: Vec<Kind> = examples.iter().map(|l| Instance::parse(l).unwrap().kind()).collect();
    kinds.sort_by_key(|k| k.as_str());
    kinds.dedup();
    assert_eq!(kinds.len(), 8);
}
