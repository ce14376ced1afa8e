//! Logarithmic derivations `Der(-log h) = {θ : θ(h) ∈ (h)}`, Saito's criterion,
//! exponents and the Chern class of the logarithmic tangent sheaf.

mod freeness;
mod saito;
mod solve;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::groebner::{divide_reduce, GroebnerError};
use crate::poly::{parse_in_ring, PolyError, Polynomial, Rational, Ring};

pub use freeness::{
    arrangement_freeness, chern_log_sheaf, find_free_basis, find_free_basis_with, terao_check_char_poly,
    terao_factorization_check, FreenessOptions, FreenessVerdict, NonFreeReason, TeraoVerdict,
};
pub use saito::{saito_determinant, saito_from_candidates, saito_test, SaitoCertificate, SaitoFailure};
pub use solve::{bounded_log_derivations, graded_log_derivations, graded_log_derivations_with, GradedDerivationSpace};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LogderError {
    #[error("derivation has {found} coefficients but the ring has {expected} variables")]
    VariableMismatch { expected: usize, found: usize },
    #[error("polynomial is not homogeneous; use the bounded solver")]
    NotHomogeneous,
    #[error("polynomial is constant")]
    ConstantInput,
    #[error("polynomial is not squarefree; repeated factor {factor}")]
    NotSquarefree { factor: String },
    #[error("derivation {index} is not logarithmic: θ(h) leaves remainder {remainder}")]
    NotLogarithmic { index: usize, remainder: String },
    #[error("a Saito basis needs {expected} derivations, got {found}")]
    WrongBasisSize { expected: usize, found: usize },
    #[error("exponents {exponents:?} contain no 1 for the Euler derivation")]
    NoEulerExponent { exponents: Vec<u32> },
    #[error("expected {expected} exponents, got {found}")]
    ExponentCount { expected: usize, found: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// `θ = Σ p_i ∂/∂x_i`.
#[derive(Clone, PartialEq)]
pub struct Derivation {
    coeffs: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(ring: &Ring, coeffs: Vec<Polynomial>) -> Result<Self, LogderError> {
        if coeffs.len() != ring.nvars() {
            return Err(LogderError::VariableMismatch {
                expected: ring.nvars(),
                found: coeffs.len(),
            });
        }
        let coeffs = coeffs.iter().map(|p| p.in_ring(ring)).collect::<Result<_, _>>()?;
        Ok(Self { coeffs })
    }

    /// Parses one polynomial string per variable.
    pub fn parse<S: AsRef<str>>(ring: &Ring, texts: &[S]) -> Result<Self, LogderError> {
        let coeffs = texts
            .iter()
            .map(|t| parse_in_ring(t.as_ref(), ring))
            .collect::<Result<_, _>>()?;
        Self::new(ring, coeffs)
    }

    /// `∂/∂x_i`.
    pub fn partial(ring: &Ring, i: usize) -> Self {
        Self {
            coeffs: (0..ring.nvars())
                .map(|k| if k == i { ring.one() } else { ring.zero() })
                .collect(),
        }
    }

    /// `Σ x_i ∂/∂x_i`.
    pub fn euler(ring: &Ring) -> Self {
        Self {
            coeffs: (0..ring.nvars()).map(|i| ring.var(i)).collect(),
        }
    }

    pub fn ring(&self) -> &Ring {
        self.coeffs[0].ring()
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|p| p.is_zero())
    }

    /// Largest coefficient degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(|p| p.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let Some(d) = self.degree() else {
            return true;
        };
        self.coeffs
            .iter()
            .all(|p| p.terms().iter().all(|(m, _)| m.degree() == d))
    }

    pub fn scale_by(&self, p: &Polynomial) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Scaled so that all coefficients are coprime integers and the first
    /// nonzero one is positive.
    pub fn primitive(&self) -> Self {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        let mut first: Option<bool> = None;
        for (_, c) in self.coeffs.iter().flat_map(|p| p.terms()) {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
            first.get_or_insert(c.is_negative());
        }
        let Some(negative) = first else {
            return self.clone();
        };
        let mut ratio = Rational::new(den, num);
        if negative {
            ratio = -ratio;
        }
        Self {
            coeffs: self.coeffs.iter().map(|p| p.scale(&ratio)).collect(),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = self.ring().vars();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(vars)
            .filter(|(p, _)| !p.is_zero())
            .map(|(p, v)| {
                if p.len() == 1 {
                    format!("{p}*d{v}")
                } else {
                    format!("({p})*d{v}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({self})")
    }
}

impl Serialize for Derivation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let texts: Vec<String> = self.coeffs.iter().map(|p| p.to_string()).collect();
        texts.serialize(s)
    }
}

/// Deserializes against the ring `x, y, z, w` / `x0..` with as many variables as entries.
impl<'de> Deserialize<'de> for Derivation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        let ring = default_ring(texts.len());
        Derivation::parse(&ring, &texts).map_err(serde::de::Error::custom)
    }
}

/// `x, y, z, w` for up to four variables, `x0..` beyond.
pub fn default_ring(nvars: usize) -> Ring {
    if nvars <= 4 {
        Ring::new(&["x", "y", "z", "w"][..nvars])
    } else {
        let names: Vec<String> = (0..nvars).map(|i| format!("x{i}")).collect();
        Ring::new(&names)
    }
}

/// `θ(p) = Σ p_i ∂p/∂x_i`.
pub fn apply_derivation(theta: &Derivation, p: &Polynomial) -> Result<Polynomial, LogderError> {
    let p = p.in_ring(theta.ring())?;
    let mut acc = p.ring().zero();
    for (i, c) in theta.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(c * &p.partial_derivative(i)?);
    }
    Ok(acc)
}

/// Remainder of `θ(h)` on division by `h`; zero iff `θ` is logarithmic.
pub fn log_remainder(theta: &Derivation, h: &Polynomial) -> Result<Polynomial, LogderError> {
    let th = apply_derivation(theta, h)?;
    if h.is_constant() {
        return Ok(h.ring().zero());
    }
    let (_, r) = divide_reduce(&th, std::slice::from_ref(h), h.ring().order())?;
    Ok(r)
}

pub fn is_logarithmic(theta: &Derivation, h: &Polynomial) -> Result<bool, LogderError> {
    Ok(log_remainder(theta, h)?.is_zero())
}
