//! Classes on a projective bundle `r: P(E) -> X` over a truncated base ring.
//!
//! `A_*(P(E))` is the base ring extended by `H = c_1(O(1))` subject to the
//! Grothendieck relation `Σ_{i=0..rank} c_i(E) H^{rank-i} = 0`. Pushforward
//! follows the Segre rule `r_*(H^k) = s_{k-rank+1}(E)`, with `s_j = 0` for `j < 0`.

use super::{inverse, ChowError, ChowRing};

/// Chern classes `c_1..c_rank` of a vector bundle; `c_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleModel<R: ChowRing> {
    chern: Vec<R>,
}

impl<R: ChowRing> BundleModel<R> {
    /// `chern[i]` is `c_{i+1}`. Rank is `chern.len()`, at least 1.
    pub fn new(chern: Vec<R>) -> Result<Self, ChowError> {
        if chern.is_empty() {
            return Err(ChowError::OutOfRange {
                what: "bundle rank",
                value: 0,
                min: 1,
                max: i64::MAX,
            });
        }
        Ok(Self { chern })
    }

    pub fn rank(&self) -> usize {
        self.chern.len()
    }

    fn one(&self) -> R {
        self.chern[0].one_like()
    }

    /// `c_i`, with `c_0 = 1` and `c_i = 0` beyond the rank.
    pub fn chern(&self, i: usize) -> R {
        match i {
            0 => self.one(),
            i if i <= self.rank() => self.chern[i - 1].clone(),
            _ => self.chern[0].zero_like(),
        }
    }

    pub fn total_chern(&self) -> R {
        self.chern.iter().fold(self.one(), |acc, c| acc.plus(c))
    }

    pub fn total_segre(&self) -> R {
        inverse(&self.total_chern()).expect("total Chern class has constant term 1")
    }

    /// `s_j`; zero for negative `j`.
    pub fn segre(&self, j: i64) -> R {
        if j < 0 {
            self.one().zero_like()
        } else {
            self.total_segre().graded_part(j as usize)
        }
    }

    /// Highest power of `H` that can survive: `dim P(E) = dim X + rank - 1`.
    pub fn h_cap(&self) -> usize {
        self.one().dimension() + self.rank() - 1
    }

    /// One Grothendieck step at `H^k`, `k >= rank`.
    pub fn reduce_at(&self, alpha: &ProjBundleClass<R>, k: usize) -> ProjBundleClass<R> {
        let r = self.rank();
        assert!(k >= r);
        let mut out = alpha.clone();
        let Some(a) = out.coeffs.get(k).cloned() else {
            return out;
        };
        if a.is_zero() {
            return out;
        }
        out.coeffs[k] = a.zero_like();
        for i in 1..=r {
            let t = a.times(&self.chern(i)).negated();
            out.coeffs[k - i] = out.coeffs[k - i].plus(&t);
        }
        out.trim();
        out
    }

    /// Canonical form: H-degree below the rank.
    pub fn reduce(&self, alpha: &ProjBundleClass<R>) -> ProjBundleClass<R> {
        let mut out = alpha.clone();
        while out.coeffs.len() > self.rank() {
            let k = out.coeffs.len() - 1;
            out = self.reduce_at(&out, k);
        }
        out
    }

    /// Segre rule applied termwise.
    pub fn pushforward(&self, alpha: &ProjBundleClass<R>) -> R {
        let s = self.total_segre();
        let r = self.rank() as i64;
        alpha
            .coeffs
            .iter()
            .enumerate()
            .fold(self.one().zero_like(), |acc, (k, a)| {
                let j = k as i64 - r + 1;
                if j < 0 || a.is_zero() {
                    acc
                } else {
                    acc.plus(&a.times(&s.graded_part(j as usize)))
                }
            })
    }

    /// Reduce to canonical form, then read off the coefficient of `H^{rank-1}`.
    pub fn pushforward_by_reduction(&self, alpha: &ProjBundleClass<R>) -> R {
        self.reduce(alpha)
            .coeff(self.rank() - 1)
            .unwrap_or_else(|| self.one().zero_like())
    }

    /// `r_*(c(r^*E) (1 - H)^{-1} α)`, i.e. `r_*(c(ζ) α)` for the universal quotient `ζ`.
    pub fn shadow(&self, alpha: &ProjBundleClass<R>) -> R {
        let cap = self.h_cap();
        let series = ProjBundleClass::new((0..=cap).map(|_| self.one()).collect());
        let c = ProjBundleClass::from_base(self.total_chern());
        self.pushforward(&c.times(&series).times(alpha).truncated(cap))
    }
}

/// `Σ_k coeffs[k] H^k` with base-ring coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjBundleClass<R: ChowRing> {
    coeffs: Vec<R>,
}

impl<R: ChowRing> ProjBundleClass<R> {
    pub fn new(coeffs: Vec<R>) -> Self {
        let mut c = Self { coeffs };
        c.trim();
        c
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_base(b: R) -> Self {
        Self::new(vec![b])
    }

    /// `H^k` with unit coefficient taken from `one`.
    pub fn h_power(one: &R, k: usize) -> Self {
        let mut coeffs = vec![one.zero_like(); k];
        coeffs.push(one.one_like());
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<R> {
        self.coeffs.get(k).cloned()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power of `H` present.
    pub fn h_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(coeffs)
    }

    pub fn times(&self, other: &Self) -> Self {
        let (Some(first), false) = (self.coeffs.first(), other.is_zero()) else {
            return Self::zero();
        };
        let mut coeffs = vec![first.zero_like(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        Self::new(coeffs)
    }

    pub fn scaled_by(&self, b: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(b)).collect())
    }

    pub fn negated(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.negated()).collect())
    }

    /// Drops powers of `H` above `cap`.
    pub fn truncated(&self, cap: usize) -> Self {
        Self::new(self.coeffs.iter().take(cap + 1).cloned().collect())
    }

    /// Power-series inverse in `H`, up to `H^cap`; needs a unit constant coefficient.
    pub fn series_inverse(&self, cap: usize) -> Result<Self, ChowError> {
        let a0 = self.coeffs.first().ok_or(ChowError::NonUnit { constant: 0 })?;
        let b0 = inverse(a0)?;
        let mut b = vec![b0.clone()];
        for k in 1..=cap {
            let mut acc = a0.zero_like();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc = acc.plus(&self.coeffs[j].times(&b[k - j]));
            }
            b.push(acc.times(&b0).negated());
        }
        Ok(Self::new(b))
    }
}

/// `c_n(r^*F ⊗ O(1)) = Σ_j c_j(F) H^{n-j}` for a rank-`n` bundle `F`.
pub fn top_chern_twist<R: ChowRing>(f: &BundleModel<R>, n: usize) -> Result<ProjBundleClass<R>, ChowError> {
    if f.rank() != n {
        return Err(ChowError::RankMismatch {
            expected: n,
            found: f.rank(),
        });
    }
    Ok(ProjBundleClass::new((0..=n).map(|k| f.chern(n - k)).collect()))
}
