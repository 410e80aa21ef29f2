//! Hochschild cohomology dimensions of a gentle algebra from its AG-invariant.
//!
//! With `ψ(n) = Σ_{d | n} φ(0, d)`:
//!
//! - `dim HH⁰ = 1 + φ(1, 0)`
//! - `dim HH¹ = 1 + |Q1| − |Q0| + φ(1, 1)`, plus `φ(0, 1)` in characteristic 2
//! - `dim HHⁿ = φ(1, n) + aₙ ψ(n) + bₙ ψ(n − 1)` for `n ≥ 2`, where
//!   `(aₙ, bₙ)` is `(1, 0)` for even `n` and `(0, 1)` for odd `n` outside
//!   characteristic 2, and `(1, 1)` in characteristic 2.

use serde::Serialize;
use thiserror::Error;

use crate::ag::AgInvariant;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("field characteristic must be 0 or a prime, got {0}")]
pub struct CharacteristicError(pub u64);

/// The ground field, recorded only through its characteristic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    characteristic: u64,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, CharacteristicError> {
        if characteristic == 0 || is_prime(characteristic) {
            Ok(Self { characteristic })
        } else {
            Err(CharacteristicError(characteristic))
        }
    }

    pub const fn zero() -> Self {
        Self { characteristic: 0 }
    }

    pub fn characteristic(self) -> u64 {
        self.characteristic
    }

    pub fn is_char_two(self) -> bool {
        self.characteristic == 2
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let c: u64 = s.parse().map_err(|e| format!("invalid characteristic `{s}`: {e}"))?;
        FieldSpec::new(c).map_err(|e| e.to_string())
    }
}

/// Dimensions `dim HHⁿ` for `n = 0..=max_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HhResult {
    pub dims: Vec<u64>,
}

/// `ψ(n) = Σ_{d | n} φ(0, d)`, for `n ≥ 1`.
pub fn psi(a: &AgInvariant, n: u64) -> u64 {
    assert!(n >= 1, "psi is defined for n >= 1");
    a.iter()
        .filter(|&((x, d), _)| x == 0 && d >= 1 && n % d == 0)
        .map(|(_, k)| k)
        .sum()
}

/// `dim HHⁿ` of a gentle algebra with invariant `a`, `nv` vertices and `na`
/// arrows. If `1 + na − nv` is negative (not a connected quiver) degree 1
/// saturates at zero.
pub fn hh_dim(a: &AgInvariant, nv: u64, na: u64, n: u64, k: FieldSpec) -> u64 {
    match n {
        0 => 1 + a.multiplicity(1, 0),
        1 => {
            let base = (1 + na as i64 - nv as i64).max(0) as u64;
            let extra = if k.is_char_two() { a.multiplicity(0, 1) } else { 0 };
            base + a.multiplicity(1, 1) + extra
        }
        _ => {
            let (an, bn) = if k.is_char_two() {
                (1, 1)
            } else if n % 2 == 0 {
                (1, 0)
            } else {
                (0, 1)
            };
            a.multiplicity(1, n) + an * psi(a, n) + bn * psi(a, n - 1)
        }
    }
}

pub fn hh_sequence(a: &AgInvariant, nv: u64, na: u64, max_n: u64, k: FieldSpec) -> HhResult {
    HhResult {
        dims: (0..=max_n).map(|n| hh_dim(a, nv, na, n, k)).collect(),
    }
}
