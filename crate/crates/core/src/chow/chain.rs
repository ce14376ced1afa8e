//! Symbolic check of the chain of equalities computing
//! `-r_*((1-H)^{-1} [P(C)]) = [X] - c(F) s(E) ∩ [X]` for rank-`n` bundles `E`,
//! `F` over an `n`-dimensional base, with `[P(C)] = c_n(r^*F ⊗ O(1)) ∩ [P(E)]`
//! taken as input.
//!
//! Every step is evaluated by its own route to a normal form in
//! `Z[c_1..c_n, f_1..f_n]` truncated above degree `n`, so a wrong step shows up
//! as a mismatch with its neighbour rather than being silently rewritten.

use std::sync::Arc;

use serde::Serialize;

use super::bundle::{top_chern_twist, BundleModel, ProjBundleClass};
use super::{ChowError, ChowRing, FormalClass, FormalSpace};

/// Largest base dimension accepted by [`proof_chain_check`].
pub const MAX_CHAIN_DIMENSION: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub label: &'static str,
    /// Normal form of this step's expression.
    pub value: String,
    pub matches_previous: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofChainReport {
    pub n: usize,
    pub holds: bool,
    /// Index into `steps` of the first mismatch.
    pub first_failure: Option<usize>,
    pub steps: Vec<ChainStep>,
}

struct Setting {
    space: Arc<FormalSpace>,
    n: usize,
    e: BundleModel<FormalClass>,
    f: BundleModel<FormalClass>,
    one: FormalClass,
}

impl Setting {
    fn new(n: usize) -> Self {
        let space = FormalSpace::chern_symbols(n, n, n);
        let bundle = |prefix: &str| {
            BundleModel::new(
                (1..=n)
                    .map(|i| FormalClass::named(&space, &format!("{prefix}{i}")).unwrap())
                    .collect(),
            )
            .unwrap()
        };
        Self {
            e: bundle("c"),
            f: bundle("f"),
            one: FormalClass::constant(&space, 1),
            space,
            n,
        }
    }

    /// Upper limit for the sums over `i >= 0`; later terms vanish by degree.
    fn i_max(&self) -> usize {
        self.e.h_cap()
    }

    fn pc(&self) -> ProjBundleClass<FormalClass> {
        top_chern_twist(&self.f, self.n).expect("rank matches by construction")
    }

    fn h(&self, k: usize) -> ProjBundleClass<FormalClass> {
        ProjBundleClass::h_power(&self.one, k)
    }

    fn geometric(&self) -> ProjBundleClass<FormalClass> {
        (0..=self.i_max()).fold(ProjBundleClass::zero(), |acc, i| acc.plus(&self.h(i)))
    }

    /// `-r_*((1-H)^{-1} [P(C)])` with the inverse taken as a power series.
    fn lhs(&self) -> Result<FormalClass, ChowError> {
        let one_minus_h = ProjBundleClass::new(vec![self.one.clone(), self.one.negated()]);
        let inv = one_minus_h.series_inverse(self.i_max())?;
        let prod = inv.times(&self.pc()).truncated(self.e.h_cap());
        Ok(self.e.pushforward_by_reduction(&prod).negated())
    }

    /// `-r_*(Σ_i H^i [P(C)])`.
    fn shadow_expansion(&self) -> FormalClass {
        let prod = self.geometric().times(&self.pc());
        self.e.pushforward_by_reduction(&prod).negated()
    }

    /// `[P(C)]` recomputed as the degree-`n` part of `Σ_j c_j(F) (1+H)^{n-j}`.
    fn substituted(&self) -> FormalClass {
        let n = self.n;
        let one_plus_h = ProjBundleClass::new(vec![self.one.clone(), self.one.clone()]);
        let mut total = ProjBundleClass::zero();
        for j in 0..=n {
            let mut power = ProjBundleClass::from_base(self.one.clone());
            for _ in 0..(n - j) {
                power = power.times(&one_plus_h);
            }
            total = total.plus(&power.scaled_by(&self.f.chern(j)));
        }
        // keep H^k with base-degree n - k
        let coeffs: Vec<FormalClass> = (0..=n)
            .map(|k| {
                total
                    .coeff(k)
                    .map(|c| c.graded_part(n - k))
                    .unwrap_or_else(|| self.one.zero_like())
            })
            .collect();
        let pc = ProjBundleClass::new(coeffs);
        self.e.pushforward(&self.geometric().times(&pc)).negated()
    }

    /// `-r_*(Σ_i Σ_j c_j(F) H^{i+n-j})`, summed term by term.
    fn twist_expansion(&self) -> FormalClass {
        let mut total = ProjBundleClass::zero();
        for i in 0..=self.i_max() {
            for j in 0..=self.n {
                total = total.plus(&self.h(i + self.n - j).scaled_by(&self.f.chern(j)));
            }
        }
        self.e.pushforward(&total).negated()
    }

    /// `-Σ_i Σ_j c_j(F) r_*(H^{n+i-j})`, each pushforward by reduction.
    fn projection(&self) -> FormalClass {
        let mut acc = self.one.zero_like();
        for i in 0..=self.i_max() {
            for j in 0..=self.n {
                let pushed = self.e.pushforward_by_reduction(&self.h(self.n + i - j));
                acc = acc.plus(&self.f.chern(j).times(&pushed));
            }
        }
        acc.negated()
    }

    /// `-Σ_i Σ_j c_j(F) s_{i-j+1}(E)`.
    fn segre_rule(&self) -> FormalClass {
        let mut acc = self.one.zero_like();
        for i in 0..=self.i_max() as i64 {
            for j in 0..=self.n as i64 {
                acc = acc.plus(&self.f.chern(j as usize).times(&self.e.segre(i - j + 1)));
            }
        }
        acc.negated()
    }

    /// `-Σ_i Σ_{j+k=i+1} c_j(F) s_k(E)`.
    fn reindexed(&self) -> FormalClass {
        let mut acc = self.one.zero_like();
        for i in 0..=self.i_max() {
            for j in 0..=(i + 1) {
                let k = (i + 1 - j) as i64;
                acc = acc.plus(&self.f.chern(j).times(&self.e.segre(k)));
            }
        }
        acc.negated()
    }

    /// `-(c(F) s(E) - 1)`.
    fn telescoped(&self) -> FormalClass {
        self.f
            .total_chern()
            .times(&self.e.total_segre())
            .minus(&self.one)
            .negated()
    }

    /// `[X] - c(F) s(E)`.
    fn final_form(&self) -> FormalClass {
        self.one.minus(&self.f.total_chern().times(&self.e.total_segre()))
    }
}

/// Evaluates every step of the chain for base dimension `n` and compares
/// consecutive normal forms.
pub fn proof_chain_check(n: usize) -> Result<ProofChainReport, ChowError> {
    if n == 0 || n > MAX_CHAIN_DIMENSION {
        return Err(ChowError::OutOfRange {
            what: "base dimension",
            value: n as i64,
            min: 1,
            max: MAX_CHAIN_DIMENSION as i64,
        });
    }
    let s = Setting::new(n);
    debug_assert_eq!(s.space.names().len(), 2 * n);
    let values: Vec<(&'static str, FormalClass)> = vec![
        ("-r_*((1-H)^-1 [P(C)])", s.lhs()?),
        ("-r_*(sum H^i [P(C)])", s.shadow_expansion()),
        ("-r_*(sum H^i c_n(r^*F (x) O(1)))", s.substituted()),
        ("-r_*(sum_i H^i sum_j c_j(F) H^(n-j))", s.twist_expansion()),
        ("-sum_i sum_j c_j(F) r_*(H^(n+i-j))", s.projection()),
        ("-sum_i sum_j c_j(F) s_(i-j+1)(E)", s.segre_rule()),
        ("-sum_i sum_(j+k=i+1) c_j(F) s_k(E)", s.reindexed()),
        ("-(c(F) s(E) - 1)", s.telescoped()),
        ("[X] - c(F) s(E)", s.final_form()),
    ];
    let mut steps = Vec::with_capacity(values.len());
    let mut first_failure = None;
    for (idx, (label, v)) in values.iter().enumerate() {
        let matches_previous = idx == 0 || *v == values[idx - 1].1;
        if !matches_previous && first_failure.is_none() {
            first_failure = Some(idx);
        }
        steps.push(ChainStep {
            label,
            value: v.to_string(),
            matches_previous,
        });
    }
    Ok(ProofChainReport {
        n,
        holds: first_failure.is_none(),
        first_failure,
        steps,
    })
}
