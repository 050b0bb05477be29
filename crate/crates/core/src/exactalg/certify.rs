use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AlgError, Field, RatFunc, Rational};

/// Outcome of a subtraction-free certification attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SfCertificate {
    /// Reduced numerator and denominator have only positive coefficients.
    Certified,
    /// Some sampled all-positive point gives a value `<= 0`.
    Refuted,
    /// Neither test is conclusive.
    Unknown,
}

/// Number of sampled points for refutation.
pub const SAMPLE_COUNT: usize = 32;
/// Seed of the sampling PRNG.
pub const SAMPLE_SEED: u64 = 0x5f5f_0001;
/// Coordinate values drawn for each sampled point, as `(num, den)`.
pub const SAMPLE_VALUES: [(i64, i64); 7] = [(1, 3), (1, 2), (1, 1), (2, 1), (3, 1), (5, 1), (7, 1)];

fn all_positive(p: &crate::exactalg::MultiPoly) -> bool {
    p.terms().iter().all(|(_, c)| c.is_positive())
}

/// Classifies `f` as certified subtraction-free, refuted, or unknown.
///
/// Deterministic: the sample points depend only on [`SAMPLE_SEED`] and the
/// sorted variable list of `f`.
pub fn certify_subtraction_free(f: &RatFunc) -> Result<SfCertificate, AlgError> {
    if f.is_zero() {
        return Err(AlgError::ZeroInput);
    }
    if all_positive(f.numer()) && all_positive(f.denom()) {
        return Ok(SfCertificate::Certified);
    }
    let vars = f.occurring_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..SAMPLE_COUNT {
        let point: BTreeMap<String, Rational> = vars
            .iter()
            .map(|v| {
                let (n, d) = SAMPLE_VALUES[rng.gen_range(0..SAMPLE_VALUES.len())];
                (v.clone(), Rational::new(n, d).expect("nonzero denominator"))
            })
            .collect();
        match f.eval_positive(&point) {
            Ok(val) if !val.is_positive() => return Ok(SfCertificate::Refuted),
            Ok(_) | Err(AlgError::PoleAtPoint) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(SfCertificate::Unknown)
}
