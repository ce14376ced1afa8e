//! Central hyperplane arrangements over the rationals, viewed projectively in `P^n`.

mod invariants;
mod lattice;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg;
use crate::poly::{Polynomial, Rational, Ring};

pub use invariants::{
    characteristic_polynomial, csm_complement, csm_divisor_by_inclusion_exclusion, euler_characteristic_complement,
    CharPoly,
};
pub use lattice::{build_lattice, build_lattice_with, mobius_values, Flat, IntersectionLattice};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("hyperplane {index} has {found} coefficients, expected {expected}")]
    WrongLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("hyperplane {index} is the zero vector")]
    ZeroVector { index: usize },
    #[error("hyperplanes {first} and {second} are proportional")]
    Proportional { first: usize, second: usize },
    #[error("invalid rational '{0}'")]
    BadRational(String),
    #[error("invalid arrangement JSON: {0}")]
    Json(String),
}

/// A JSON coefficient: a string `"p/q"` / `"p"`, or a bare integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Text(String),
    Int(i64),
}

#[derive(Serialize, Deserialize)]
struct ArrangementFile {
    n: usize,
    hyperplanes: Vec<Vec<Coefficient>>,
}

/// Pairwise non-proportional nonzero linear forms on `Q^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    n: usize,
    hyperplanes: Vec<Vec<Rational>>,
}

pub fn parse_rational(text: &str) -> Result<Rational, ArrangementError> {
    Rational::from_str(text.trim()).map_err(|_| ArrangementError::BadRational(text.to_string()))
}

impl Arrangement {
    pub fn new(n: usize, hyperplanes: Vec<Vec<Rational>>) -> Result<Self, ArrangementError> {
        for (index, h) in hyperplanes.iter().enumerate() {
            if h.len() != n + 1 {
                return Err(ArrangementError::WrongLength {
                    index,
                    expected: n + 1,
                    found: h.len(),
                });
            }
            if h.iter().all(|c| c.is_zero()) {
                return Err(ArrangementError::ZeroVector { index });
            }
        }
        for second in 0..hyperplanes.len() {
            for first in 0..second {
                if linalg::rank(&[hyperplanes[first].clone(), hyperplanes[second].clone()], n + 1) == 1 {
                    return Err(ArrangementError::Proportional { first, second });
                }
            }
        }
        Ok(Self { n, hyperplanes })
    }

    pub fn from_integers(n: usize, hyperplanes: &[&[i64]]) -> Result<Self, ArrangementError> {
        Self::new(
            n,
            hyperplanes
                .iter()
                .map(|h| h.iter().map(|&c| Rational::from_integer(c.into())).collect())
                .collect(),
        )
    }

    /// The `n+1` coordinate hyperplanes of `P^n`.
    pub fn boolean(n: usize) -> Self {
        let hs = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::new(n, hs).expect("coordinate hyperplanes are distinct")
    }

    /// `x_i - x_j` for `i < j` on `Q^{n+1}`, preceded by the coordinate hyperplanes when
    /// `with_coordinates`.
    pub fn braid(n: usize, with_coordinates: bool) -> Self {
        // j > n means no second coordinate
        let unit = |i: usize, j: usize| -> Vec<Rational> {
            (0..=n)
                .map(|k| {
                    if k == i {
                        Rational::one()
                    } else if k == j {
                        -Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        };
        let mut hs = Vec::new();
        if with_coordinates {
            hs.extend((0..=n).map(|i| unit(i, n + 1)));
        }
        for i in 0..=n {
            for j in (i + 1)..=n {
                hs.push(unit(i, j));
            }
        }
        Self::new(n, hs).expect("braid hyperplanes are distinct")
    }

    pub fn from_json(text: &str) -> Result<Self, ArrangementError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| ArrangementError::Json(e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &serde_json::Value) -> Result<Self, ArrangementError> {
        let file: ArrangementFile =
            serde_json::from_value(value.clone()).map_err(|e| ArrangementError::Json(e.to_string()))?;
        let hyperplanes = file
            .hyperplanes
            .iter()
            .map(|h| {
                h.iter()
                    .map(|c| match c {
                        Coefficient::Text(t) => parse_rational(t),
                        Coefficient::Int(i) => Ok(Rational::from_integer((*i).into())),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        Self::new(file.n, hyperplanes)
    }

    pub fn to_value(&self) -> serde_json::Value {
        let file = ArrangementFile {
            n: self.n,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| h.iter().map(|c| Coefficient::Text(c.to_string())).collect())
                .collect(),
        };
        serde_json::to_value(file).expect("arrangement serializes")
    }

    /// Projective dimension of the ambient space.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hyperplanes(&self) -> &[Vec<Rational>] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Rank of the span of the normals.
    pub fn rank(&self) -> usize {
        linalg::rank(&self.hyperplanes, self.n + 1)
    }

    /// The normals span the dual space, i.e. no common nonzero point.
    pub fn is_essential(&self) -> bool {
        self.rank() == self.n + 1
    }

    /// `x, y, z, w` for up to four coordinates, `x0..xn` beyond.
    pub fn variable_names(&self) -> Vec<String> {
        let k = self.n + 1;
        if k <= 4 {
            ["x", "y", "z", "w"][..k].iter().map(|s| s.to_string()).collect()
        } else {
            (0..k).map(|i| format!("x{i}")).collect()
        }
    }

    pub fn ring(&self) -> Ring {
        Ring::new(&self.variable_names())
    }

    pub fn linear_form(&self, index: usize) -> Polynomial {
        let ring = self.ring();
        self.hyperplanes[index]
            .iter()
            .enumerate()
            .fold(ring.zero(), |acc, (i, c)| &acc + &ring.var(i).scale(c))
    }

    /// The hyperplanes containing `flat`, written in coordinates of the span of its
    /// normals: an essential central arrangement in `P^{rank - 1}`. Near a generic
    /// point of `P(flat)` the arrangement is this one times a smooth factor.
    pub fn localization(&self, flat: &Flat) -> Arrangement {
        assert!(flat.rank > 0, "the whole space has no localization");
        let pivots: Vec<usize> = flat
            .basis
            .iter()
            .map(|row| row.iter().position(|c| !c.is_zero()).expect("echelon rows are nonzero"))
            .collect();
        // with an RREF basis, the coordinate of v along row k is v[pivot_k]
        let hyperplanes = flat
            .closed
            .iter()
            .map(|&i| pivots.iter().map(|&p| self.hyperplanes[i][p].clone()).collect())
            .collect();
        Arrangement::new(flat.rank - 1, hyperplanes).expect("distinct hyperplanes stay distinct")
    }

    /// Product of the linear forms; `1` for the empty arrangement.
    pub fn defining_polynomial(&self) -> Polynomial {
        (0..self.len()).fold(self.ring().one(), |acc, i| &acc * &self.linear_form(i))
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let forms: Vec<String> = (0..self.len()).map(|i| self.linear_form(i).to_string()).collect();
        write!(f, "{{{}}} in P^{}", forms.join(", "), self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn validation() {
        assert_eq!(
            Arrangement::from_integers(1, &[&[1, 0, 0]]),
            Err(ArrangementError::WrongLength {
                index: 0,
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            Arrangement::from_integers(1, &[&[0, 0]]),
            Err(ArrangementError::ZeroVector { index: 0 })
        );
        assert_eq!(
            Arrangement::from_integers(1, &[&[1, 2], &[0, 1], &[-2, -4]]),
            Err(ArrangementError::Proportional { first: 0, second: 2 })
        );
    }

    #[test]
    fn json_round_trip() {
        let a = Arrangement::from_json(r#"{"n": 2, "hyperplanes": [["1","0","0"], ["1/2", "-1", 3]]}"#).unwrap();
        assert_eq!(a.hyperplanes()[1][0], Rational::new(1.into(), 2.into()));
        let back = Arrangement::from_value(&a.to_value()).unwrap();
        assert_eq!(back, a);
        assert!(matches!(
            Arrangement::from_json(r#"{"n": 1, "hyperplanes": [["1/0", "1"]]}"#),
            Err(ArrangementError::BadRational(_))
        ));
        assert!(matches!(Arrangement::from_json("{"), Err(ArrangementError::Json(_))));
    }

    #[test]
    fn defining_polynomials() {
        let a = Arrangement::braid(2, true);
        assert_eq!(a.len(), 6);
        let q = a.defining_polynomial();
        let expected = parse_polynomial("x*y*z*(x - y)*(x - z)*(y - z)", &["x", "y", "z"]).unwrap();
        assert_eq!(q, expected);
        assert!(a.is_essential());
        let e = Arrangement::new(2, vec![]).unwrap();
        assert!(e.defining_polynomial().is_constant());
        assert!(!Arrangement::from_integers(2, &[&[1, 0, 0], &[0, 1, 0]])
            .unwrap()
            .is_essential());
        assert_eq!(Arrangement::boolean(4).variable_names()[4], "x4");
    }

    #[test]
    fn localizations() {
        let a = Arrangement::braid(2, true);
        let l = build_lattice(&a);
        let (point, _) = l.flats_of_rank(2).find(|(f, _)| f.closed.len() == 3).unwrap();
        let local = a.localization(point);
        assert_eq!(local.n(), 1);
        assert_eq!(local.len(), 3);
        assert!(local.is_essential());
        let (line, _) = l.flats_of_rank(1).next().unwrap();
        assert_eq!(a.localization(line).len(), 1);
        let top = l.flats().last().unwrap();
        assert_eq!(a.localization(top).len(), 6);
    }
}
