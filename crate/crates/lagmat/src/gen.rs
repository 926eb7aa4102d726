//! Seeded instance generators.

use lagmat_core::lagrangian::twist_witness;
use lagmat_core::{ESubset, Field, FieldMatrix, LagrangianWitness, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `GF(p)` for a prime `p` or `Q`.
pub fn parse_field(tag: &str) -> CliResult<Field> {
    let tract = tag.parse().map_err(|_| CliError::Schema(format!("unsupported field `{tag}`")))?;
    Field::from_tract(tract).map_err(|_| CliError::Schema(format!("unsupported field `{tag}`")))
}

/// Uniform over `GF(p)`; over `Q` a fraction with `|num| ≤ 4` and `1 ≤ den ≤ 4`.
pub fn random_scalar<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        Field::Rationals => {
            let num: i64 = rng.gen_range(-4..=4);
            let den: i64 = rng.gen_range(1..=4);
            Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
    }
}

pub fn random_symmetric<R: Rng>(rng: &mut R, field: Field, n: usize) -> FieldMatrix {
    let mut m = FieldMatrix::zeros(field, n, n);
    for i in 0..n {
        for j in i..n {
            let v = random_scalar(rng, field);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// `[I | Σ]` for a random symmetric `Σ`.
pub fn random_matrix(field: Field, n: usize, seed: u64) -> FieldMatrix {
    let sigma = random_symmetric(&mut rng(seed), field, n);
    LagrangianWitness::from_symmetric(&sigma).expect("symmetric").into_matrix()
}

/// `[I | Σ]` twisted on a random subset of `[n]`, so `[n]` need not be a basis.
pub fn random_witness<R: Rng>(rng: &mut R, field: Field, n: usize) -> LagrangianWitness {
    let sigma = random_symmetric(rng, field, n);
    let w = LagrangianWitness::from_symmetric(&sigma).expect("symmetric");
    let mask: u64 = rng.gen_range(0..1u64 << n);
    twist_witness(&w, ESubset::from_bits(n, mask)).expect("twist of a Lagrangian matrix")
}
