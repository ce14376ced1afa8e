use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{inverse, ChowError, ChowRing};

/// Element of `Z[h]/(h^{n+1})`; `coeffs[k]` multiplies `h^k = [P^{n-k}]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChowClass {
    coeffs: Vec<i64>,
}

impl ChowClass {
    /// `coeffs` has length `n + 1`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self, ChowError> {
        if coeffs.is_empty() {
            return Err(ChowError::Empty);
        }
        Ok(Self { coeffs })
    }

    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![0; n + 1] }
    }

    /// The fundamental class `[P^n]`.
    pub fn one(n: usize) -> Self {
        Self::h_power(n, 0)
    }

    /// `h^k = [P^{n-k}]`; zero when `k > n`.
    pub fn h_power(n: usize, k: usize) -> Self {
        let mut c = Self::zero(n);
        if k <= n {
            c.coeffs[k] = 1;
        }
        c
    }

    /// `[P^d]` inside `P^n`; zero when `d > n`.
    pub fn linear_subspace(n: usize, d: usize) -> Self {
        match n.checked_sub(d) {
            Some(k) => Self::h_power(n, k),
            None => Self::zero(n),
        }
    }

    /// Codimension-indexed from the constant term up to `h^n`.
    pub fn from_polynomial(n: usize, coeffs: &[i64]) -> Self {
        let mut c = Self::zero(n);
        for (k, &a) in coeffs.iter().enumerate().take(n + 1) {
            c.coeffs[k] = a;
        }
        c
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficient of `[P^d]`.
    pub fn dimension_component(&self, d: usize) -> i64 {
        if d > self.n() {
            0
        } else {
            self.coeffs[self.n() - d]
        }
    }

    /// Degree of the zero-dimensional part.
    pub fn degree(&self) -> i64 {
        self.coeffs[self.n()]
    }

    fn check(&self, other: &Self) -> Result<(), ChowError> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(ChowError::TruncationMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ChowError> {
        self.check(other)?;
        Ok(self.plus(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ChowError> {
        self.check(other)?;
        Ok(self.times(other))
    }
}

impl ChowRing for ChowClass {
    fn dimension(&self) -> usize {
        self.n()
    }

    fn zero_like(&self) -> Self {
        Self::zero(self.n())
    }

    fn one_like(&self) -> Self {
        Self::one(self.n())
    }

    fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "truncation mismatch");
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    fn times(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n(), "truncation mismatch");
        let n = self.n();
        let mut out = vec![0i64; n + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    fn scaled(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0)
    }

    fn constant_term(&self) -> i64 {
        self.coeffs[0]
    }

    fn graded_part(&self, k: usize) -> Self {
        let mut c = self.zero_like();
        if k <= self.n() {
            c.coeffs[k] = self.coeffs[k];
        }
        c
    }
}

/// Product of total Chern classes in a common truncation; the empty product is an error.
pub fn whitney_product(classes: &[ChowClass]) -> Result<ChowClass, ChowError> {
    let (first, rest) = classes.split_first().ok_or(ChowError::Empty)?;
    rest.iter().try_fold(first.clone(), |acc, c| acc.try_mul(c))
}

pub fn segre_of_bundle(c: &ChowClass) -> Result<ChowClass, ChowError> {
    inverse(c)
}

/// Multiplies the `i`-dimensional component by `(-1)^i`.
pub fn dual_class(gamma: &ChowClass) -> ChowClass {
    let n = gamma.n();
    ChowClass {
        coeffs: gamma
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| if (n - k).is_multiple_of(2) { *a } else { -a })
            .collect(),
    }
}

/// `Σ_k C(d+1, k) [P^{d-k}]` in `P^n`: the total Chern class of a `d`-plane pushed forward.
pub fn csm_projective_subspace(d: usize, n: usize) -> Result<ChowClass, ChowError> {
    if d > n {
        return Err(ChowError::OutOfRange {
            what: "subspace dimension",
            value: d as i64,
            min: 0,
            max: n as i64,
        });
    }
    let mut c = ChowClass::zero(n);
    let mut binom: i64 = 1;
    for k in 0..=d {
        c.coeffs[n - d + k] = binom;
        binom = binom * (d as i64 + 1 - k as i64) / (k as i64 + 1);
    }
    Ok(c)
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mag = a.unsigned_abs();
            if first {
                if a < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if a < 0 { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => f.write_str("h")?,
                (1, m) => write!(f, "{m}h")?,
                (k, 1) => write!(f, "h^{k}")?,
                (k, m) => write!(f, "{m}h^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChowClass(n={}, {})", self.n(), self)
    }
}

impl Serialize for ChowClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChowClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<i64>::deserialize(d)?;
        ChowClass::new(coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(coeffs: &[i64]) -> ChowClass {
        ChowClass::new(coeffs.to_vec()).unwrap()
    }

    #[test]
    fn whitney_examples() {
        assert_eq!(whitney_product(&[c(&[1, 1, 0]), c(&[1, 1, 0])]).unwrap(), c(&[1, 2, 1]));
        assert_eq!(
            whitney_product(&[c(&[1, -1, 0]), c(&[1, -2, 0])]).unwrap(),
            c(&[1, -3, 2])
        );
        let x = c(&[1, 4, -2]);
        assert_eq!(whitney_product(&[x.clone(), ChowClass::one(2)]).unwrap(), x);
        assert_eq!(
            whitney_product(&[c(&[1, 1]), c(&[1, 1, 1])]),
            Err(ChowError::TruncationMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn segre_examples() {
        assert_eq!(segre_of_bundle(&ChowClass::one(2)).unwrap(), ChowClass::one(2));
        assert_eq!(segre_of_bundle(&c(&[1, 1, 0])).unwrap(), c(&[1, -1, 1]));
        assert_eq!(segre_of_bundle(&c(&[1, 3, 3])).unwrap(), c(&[1, -3, 6]));
        assert_eq!(segre_of_bundle(&c(&[2, 1, 0])), Err(ChowError::NonUnit { constant: 2 }));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_class(&c(&[1, 3, 3])), c(&[1, -3, 3]));
        // c = 1 + h on P^1: [P^1] + [P^0] -> -[P^1] + [P^0] = -(c(E^v) ∩ [P^1])
        let e = c(&[1, 1]);
        let e_dual = c(&[1, -1]);
        assert_eq!(dual_class(&e), e_dual.scaled(-1));
    }

    #[test]
    fn projective_subspaces() {
        assert_eq!(csm_projective_subspace(2, 2).unwrap(), c(&[1, 3, 3]));
        assert_eq!(csm_projective_subspace(1, 2).unwrap(), c(&[0, 1, 2]));
        assert_eq!(csm_projective_subspace(0, 3).unwrap(), c(&[0, 0, 0, 1]));
        assert!(csm_projective_subspace(3, 2).is_err());
        assert_eq!(ChowClass::linear_subspace(3, 1), c(&[0, 0, 1, 0]));
    }

    #[test]
    fn rendering_and_json() {
        assert_eq!(c(&[1, -3, 2]).to_string(), "1 - 3h + 2h^2");
        assert_eq!(c(&[0, -1, 1]).to_string(), "-h + h^2");
        assert_eq!(c(&[0, 0]).to_string(), "0");
        let json = serde_json::to_string(&c(&[1, -3, 2])).unwrap();
        assert_eq!(json, "[1,-3,2]");
        let back: ChowClass = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c(&[1, -3, 2]));
        assert!(serde_json::from_str::<ChowClass>("[]").is_err());
        assert_eq!(c(&[1, 3, 3]).dimension_component(1), 3);
        assert_eq!(c(&[1, 3, 5]).degree(), 5);
    }

    fn class(n: usize) -> impl Strategy<Value = ChowClass> {
        proptest::collection::vec(-20i64..20, n + 1).prop_map(|v| ChowClass::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn segre_inverts_units(mut v in proptest::collection::vec(-9i64..10, 1..7)) {
            v[0] = 1;
            let c = ChowClass::new(v).unwrap();
            let s = segre_of_bundle(&c).unwrap();
            prop_assert_eq!(c.times(&s), c.one_like());
        }

        #[test]
        fn dual_is_an_involution(x in class(4)) {
            prop_assert_eq!(dual_class(&dual_class(&x)), x);
        }

        #[test]
        fn product_is_commutative_and_associative(a in class(3), b in class(3), d in class(3)) {
            prop_assert_eq!(a.times(&b), b.times(&a));
            prop_assert_eq!(a.times(&b).times(&d), a.times(&b.times(&d)));
        }
    }
}
