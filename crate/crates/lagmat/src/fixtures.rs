//! Worked instances, written out by `lagmat examples`.

use lagmat_core::bridges::lift;
use lagmat_core::lagrangian::{plucker, LagrangianWitness};
use lagmat_core::rgp::circuit_set_from_rgp;
use lagmat_core::{ground, ESubset, Field, FieldMatrix, RGPFunction, Scalar, Tract};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::io::Instance;

fn sets(n: usize, list: &[&str]) -> Vec<ESubset> {
    list.iter().map(|s| ESubset::parse(n, s).expect("fixture set")).collect()
}

fn q(a: i64, b: i64) -> Scalar {
    Scalar::Rat(BigRational::new(BigInt::from(a), BigInt::from(b)))
}

/// Rank-two witness whose matroid has the five bases `12, 11*, 12*, 21*, 22*`.
pub fn five_bases_matrix() -> FieldMatrix {
    FieldMatrix::from_i64(Field::Rationals, &[&[1, 0, 1, 1], &[0, 1, 1, 1]])
}

/// `V⊥ ⊕ V` for `V` the row space of `[[1,0,1],[0,1,1]]`.
pub fn ant_u23_matrix() -> FieldMatrix {
    FieldMatrix::from_i64(Field::Rationals, &[&[1, 1, -1, 0, 0, 0], &[0, 0, 0, 1, 0, 1], &[0, 0, 0, 0, 1, 1]])
}

/// `[I | A]` over `GF(3)`.
pub fn ternary(a: &[&[i64]]) -> FieldMatrix {
    let f = Field::Prime(3);
    let sigma = FieldMatrix::from_i64(f, a);
    LagrangianWitness::from_symmetric(&sigma).expect("symmetric").into_matrix()
}

pub fn identity_pair(field: Field, n: usize) -> FieldMatrix {
    LagrangianWitness::from_symmetric(&FieldMatrix::identity(field, n)).expect("symmetric").into_matrix()
}

/// Positive definite `Σ` with one negative almost-principal minor.
pub fn positive_definite_sigma() -> FieldMatrix {
    FieldMatrix::from_rows(
        Field::Rationals,
        vec![vec![q(1, 1), q(1, 2), q(1, 4)], vec![q(1, 2), q(1, 1), q(1, 4)], vec![q(1, 4), q(1, 4), q(1, 1)]],
    )
    .expect("square")
}

/// `[n]`, the transversals with two stars, and every almost-transversal
/// whose part outside its skew pair has at most one star.
pub fn three_term_support() -> Vec<ESubset> {
    ground::coordinates(4)
        .expect("n = 4")
        .into_iter()
        .filter(|b| {
            let pair = b.skew_pair_mask();
            let rest = ESubset::from_bits(4, b.bits() & !(pair | pair << 4));
            let stars = rest.starred_part().count_ones();
            if b.is_transversal() {
                stars == 0 || stars == 2
            } else {
                stars <= 1
            }
        })
        .collect()
}

pub fn three_term_function() -> RGPFunction {
    RGPFunction::indicator(4, Tract::Prime(2), &three_term_support()).expect("nonzero")
}

/// Lift of the delta-matroid `{∅, 1, 2, 3, 123}`.
pub fn no_strong_exchange() -> Vec<ESubset> {
    lift(3, &[0b000, 0b001, 0b010, 0b100, 0b111]).expect("delta-matroid").bases().to_vec()
}

/// Every fixture, by file stem.
pub fn all() -> Vec<(&'static str, Instance)> {
    let five = LagrangianWitness::new(five_bases_matrix()).expect("Lagrangian");
    let five_phi = plucker(&five);
    vec![
        ("five_bases_matrix", Instance::from_matrix(&five_bases_matrix())),
        ("five_bases", Instance::Bases { n: 2, sets: sets(2, &["1,2", "1,1*", "1,2*", "2,1*", "2,2*"]) }),
        ("five_bases_rgp", Instance::from_rgp(&five_phi)),
        ("five_bases_fcircuits", Instance::from_fcircuits(&circuit_set_from_rgp(&five_phi).expect("valid"))),
        ("ant_u23_circuits", Instance::Circuits { n: 3, sets: sets(3, &["1,2,3", "1*,2*", "1*,3*", "2*,3*"]) }),
        ("ant_u23_matrix", Instance::from_matrix(&ant_u23_matrix())),
        ("u34", Instance::Matroid { n: 4, bases: vec![0b0111, 0b1011, 0b1101, 0b1110] }),
        ("transversal_n2", Instance::Bases { n: 2, sets: ground::transversals(2).expect("n = 2") }),
        ("free_n2", Instance::Bases { n: 2, sets: ground::coordinates(2).expect("n = 2") }),
        ("transversal_n2_ternary", Instance::from_matrix(&ternary(&[&[1, 0], &[0, 1]]))),
        ("free_n2_ternary", Instance::from_matrix(&ternary(&[&[1, 1], &[1, -1]]))),
        ("no_strong_exchange", Instance::Symmetric { n: 3, sets: no_strong_exchange() }),
        ("even_pair_n2", Instance::Symmetric { n: 2, sets: sets(2, &["1,2", "1*,2*"]) }),
        ("identity_pair_n3", Instance::from_matrix(&identity_pair(Field::Rationals, 3))),
        ("identity_gaussoid_n3", Instance::Gaussoid { n: 3, sets: ground::almost_transversals(3).expect("n = 3") }),
        ("three_term_support", Instance::from_rgp(&three_term_function())),
        (
            "positive_definite",
            Instance::from_matrix(
                &LagrangianWitness::from_symmetric(&positive_definite_sigma()).expect("symmetric").into_matrix(),
            ),
        ),
    ]
}
