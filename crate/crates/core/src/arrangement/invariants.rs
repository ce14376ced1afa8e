//! Characteristic polynomial, Euler characteristic and CSM class of the complement.
//!
//! The complement's indicator function is `1_U = Σ_x μ(0̂, x) 1_{P(x)}` over all
//! flats, so by additivity `c_SM(1_U) = Σ_x μ(0̂, x) c_SM(1_{P(x)})`. The origin
//! flat has empty projectivization and contributes nothing.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::lattice::{build_lattice, IntersectionLattice};
use super::Arrangement;
use crate::chow::{csm_projective_subspace, ChowClass, ChowRing};
use crate::linalg;

/// `χ(t)` with coefficients in descending powers of `t`; degree `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharPoly {
    coeffs: Vec<i64>,
}

impl CharPoly {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, t: i64) -> i64 {
        self.coeffs.iter().fold(0, |acc, c| acc * t + c)
    }

    /// Ascending coefficients.
    pub fn ascending(&self) -> Vec<i64> {
        self.coeffs.iter().rev().copied().collect()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let p = d - i;
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let m = if mag == 1 && p > 0 {
                String::new()
            } else {
                mag.to_string()
            };
            match p {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{m}t")?,
                _ => write!(f, "{m}t^{p}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl IntersectionLattice {
    /// `χ(t) = Σ_x μ(0̂, x) t^{dim x}`.
    pub fn characteristic_polynomial(&self) -> CharPoly {
        let d = self.n() + 1;
        let mut coeffs = vec![0i64; d + 1];
        for (f, mu) in self.flats().iter().zip(self.mobius()) {
            coeffs[f.rank] += mu;
        }
        CharPoly { coeffs }
    }

    pub fn csm_complement(&self) -> ChowClass {
        let n = self.n();
        self.flats()
            .iter()
            .zip(self.mobius())
            .filter(|(f, _)| f.rank <= n)
            .fold(ChowClass::zero(n), |acc, (f, mu)| {
                let c = csm_projective_subspace(n - f.rank, n).expect("rank <= n");
                acc.plus(&c.scaled(*mu))
            })
    }

    /// `Σ_x μ(0̂, x) (dim P(x) + 1)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.flats()
            .iter()
            .zip(self.mobius())
            .map(|(f, mu)| mu * (self.n() + 1 - f.rank) as i64)
            .sum()
    }
}

pub fn characteristic_polynomial(a: &Arrangement) -> CharPoly {
    build_lattice(a).characteristic_polynomial()
}

pub fn csm_complement(a: &Arrangement) -> ChowClass {
    build_lattice(a).csm_complement()
}

pub fn euler_characteristic_complement(a: &Arrangement) -> i64 {
    build_lattice(a).euler_characteristic()
}

/// `c_SM(1_D)` for the union `D` by inclusion-exclusion over all nonempty
/// subsets of hyperplanes. Exponential in the number of hyperplanes; an
/// oracle for small cases only.
pub fn csm_divisor_by_inclusion_exclusion(a: &Arrangement) -> ChowClass {
    let n = a.n();
    let m = a.len();
    assert!(m < 24, "inclusion-exclusion oracle is limited to small arrangements");
    let mut total = ChowClass::zero(n);
    for mask in 1u32..(1u32 << m) {
        let rows: Vec<_> = (0..m)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| a.hyperplanes()[i].clone())
            .collect();
        let r = linalg::rank(&rows, n + 1);
        if r > n {
            continue;
        }
        let sign = if mask.count_ones() % 2 == 1 { 1 } else { -1 };
        let c = csm_projective_subspace(n - r, n).expect("rank <= n");
        total = total.plus(&c.scaled(sign));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(v: &[i64]) -> ChowClass {
        ChowClass::new(v.to_vec()).unwrap()
    }

    /// Points of `F_q^{n+1}` off every hyperplane, by enumeration.
    fn complement_points(a: &Arrangement, q: i64) -> i64 {
        let forms: Vec<Vec<i64>> = a
            .hyperplanes()
            .iter()
            .map(|h| {
                h.iter()
                    .map(|c| {
                        assert!(c.is_integer());
                        i64::try_from(c.numer()).unwrap().rem_euclid(q)
                    })
                    .collect()
            })
            .collect();
        let dim = a.n() + 1;
        let mut count = 0;
        for index in 0..q.pow(dim as u32) {
            let point: Vec<i64> = (0..dim).map(|i| (index / q.pow(i as u32)) % q).collect();
            let off = forms
                .iter()
                .all(|f| f.iter().zip(&point).map(|(c, x)| c * x).sum::<i64>() % q != 0);
            count += i64::from(off);
        }
        count
    }

    #[test]
    fn characteristic_polynomial_counts_points() {
        let generic = Arrangement::from_integers(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let lines = Arrangement::from_integers(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        for a in [
            Arrangement::boolean(2),
            Arrangement::braid(2, true),
            Arrangement::braid(3, true),
            generic,
            lines,
        ] {
            let chi = characteristic_polynomial(&a);
            for q in [5, 7] {
                assert_eq!(complement_points(&a, q), chi.evaluate(q), "{a:?} over F_{q}");
            }
        }
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(
            characteristic_polynomial(&Arrangement::boolean(2)).coeffs(),
            &[1, -3, 3, -1]
        );
        let braid = characteristic_polynomial(&Arrangement::braid(2, true));
        assert_eq!(braid.coeffs(), &[1, -6, 11, -6]);
        assert_eq!(braid.to_string(), "t^3 - 6t^2 + 11t - 6");
        assert_eq!(braid.evaluate(1), 0);
        let empty = Arrangement::new(2, vec![]).unwrap();
        assert_eq!(characteristic_polynomial(&empty).coeffs(), &[1, 0, 0, 0]);
        let generic = Arrangement::from_integers(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        assert_eq!(characteristic_polynomial(&generic).coeffs(), &[1, -4, 6, -3]);
    }

    #[test]
    fn csm_examples() {
        assert_eq!(csm_complement(&Arrangement::boolean(1)), class(&[1, 0]));
        let line = Arrangement::from_integers(2, &[&[1, 0, 0]]).unwrap();
        assert_eq!(csm_complement(&line), class(&[1, 2, 1]));
        assert_eq!(csm_complement(&Arrangement::braid(2, true)), class(&[1, -3, 2]));
    }

    #[test]
    fn euler_examples() {
        for n in 1..5 {
            assert_eq!(euler_characteristic_complement(&Arrangement::boolean(n)), 0);
        }
        let line = Arrangement::from_integers(2, &[&[1, 0, 0]]).unwrap();
        assert_eq!(euler_characteristic_complement(&line), 1);
        assert_eq!(euler_characteristic_complement(&Arrangement::braid(2, true)), 2);
    }

    fn small_arrangement() -> impl Strategy<Value = Arrangement> {
        (1usize..4).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-2i64..3, n + 1), 0..7).prop_map(move |rows| {
                let mut kept: Vec<Vec<i64>> = Vec::new();
                for r in rows {
                    if r.iter().all(|c| *c == 0) {
                        continue;
                    }
                    let proportional = kept
                        .iter()
                        .any(|k| (0..=n).all(|i| (0..=n).all(|j| k[i] * r[j] == k[j] * r[i])));
                    if !proportional {
                        kept.push(r);
                    }
                }
                let refs: Vec<&[i64]> = kept.iter().map(|r| r.as_slice()).collect();
                Arrangement::from_integers(n, &refs).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn point_coefficient_is_euler_characteristic(a in small_arrangement()) {
            let l = build_lattice(&a);
            prop_assert_eq!(l.csm_complement().degree(), l.euler_characteristic());
        }

        #[test]
        fn complement_and_divisor_add_up(a in small_arrangement()) {
            let whole = csm_projective_subspace(a.n(), a.n()).unwrap();
            let sum = csm_complement(&a).plus(&csm_divisor_by_inclusion_exclusion(&a));
            prop_assert_eq!(sum, whole);
        }

        #[test]
        fn chi_vanishes_at_one(a in small_arrangement()) {
            let chi = characteristic_polynomial(&a);
            prop_assert_eq!(chi.coeffs()[0], 1);
            if !a.is_empty() {
                prop_assert_eq!(chi.evaluate(1), 0);
            }
        }
    }
}
