//! Intersection lattice, built rank by rank from closures of `flat ∩ H`.

use std::collections::BTreeMap;

use super::Arrangement;
use crate::linalg::{self, Echelon};
use crate::par::Execution;
use crate::poly::Rational;

/// An intersection of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Sorted indices of every hyperplane containing the flat.
    pub closed: Vec<usize>,
    /// Reduced row echelon basis of the normals; zero rows for the whole space.
    pub basis: Vec<Vec<Rational>>,
    /// Codimension in `Q^{n+1}`.
    pub rank: usize,
}

impl Flat {
    /// Vector-space dimension of the flat inside `Q^{n+1}`.
    pub fn dimension(&self, n: usize) -> usize {
        n + 1 - self.rank
    }

    /// `self ⊋ other` as subspaces, i.e. `closed(self) ⊊ closed(other)`.
    pub fn is_below(&self, other: &Flat) -> bool {
        self.closed.len() < other.closed.len() && is_subset(&self.closed, &other.closed)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.by_ref().any(|y| y == x))
}

/// Flats graded by rank with their Möbius values `μ(0̂, x)`.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    n: usize,
    flats: Vec<Flat>,
    mobius: Vec<i64>,
}

impl IntersectionLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted by rank, then by closed set; `flats()[0]` is the whole space.
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn mobius(&self) -> &[i64] {
        &self.mobius
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats_of_rank(&self, rank: usize) -> impl Iterator<Item = (&Flat, i64)> {
        self.flats
            .iter()
            .zip(self.mobius.iter().copied())
            .filter(move |(f, _)| f.rank == rank)
    }

    pub fn rank_counts(&self) -> Vec<usize> {
        let top = self.flats.iter().map(|f| f.rank).max().unwrap_or(0);
        (0..=top).map(|r| self.flats_of_rank(r).count()).collect()
    }

    pub fn mobius_of(&self, closed: &[usize]) -> Option<i64> {
        self.flats
            .iter()
            .position(|f| f.closed == closed)
            .map(|i| self.mobius[i])
    }
}

fn close(arrangement: &Arrangement, generators: &[usize]) -> Flat {
    let rows: Vec<Vec<Rational>> = generators
        .iter()
        .map(|&i| arrangement.hyperplanes()[i].clone())
        .collect();
    let e: Echelon = linalg::rref(&rows, arrangement.n() + 1);
    let closed = (0..arrangement.len())
        .filter(|&i| e.contains(&arrangement.hyperplanes()[i]))
        .collect();
    Flat {
        closed,
        rank: e.rank(),
        basis: e.rows,
    }
}

pub fn build_lattice(arrangement: &Arrangement) -> IntersectionLattice {
    build_lattice_with(arrangement, Execution::default())
}

/// Closures of the candidates at each rank are computed with `exec`; the result
/// is independent of the execution mode.
pub fn build_lattice_with(arrangement: &Arrangement, exec: Execution) -> IntersectionLattice {
    let bottom = Flat {
        closed: Vec::new(),
        basis: Vec::new(),
        rank: 0,
    };
    let mut flats = vec![bottom];
    let mut layer_start = 0;
    loop {
        let layer = &flats[layer_start..];
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for f in layer {
            for h in 0..arrangement.len() {
                if f.closed.binary_search(&h).is_err() {
                    let mut g = f.closed.clone();
                    g.push(h);
                    candidates.push(g);
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let closed = exec.map(&candidates, |g| close(arrangement, g));
        let next: BTreeMap<Vec<usize>, Flat> = closed.into_iter().map(|f| (f.closed.clone(), f)).collect();
        layer_start = flats.len();
        flats.extend(next.into_values());
    }
    let mobius = mobius_values(&flats);
    IntersectionLattice {
        n: arrangement.n(),
        flats,
        mobius,
    }
}

/// `μ(0̂, x) = -Σ_{y < x} μ(0̂, y)` over flats sorted by rank.
pub fn mobius_values(flats: &[Flat]) -> Vec<i64> {
    let mut mu = Vec::with_capacity(flats.len());
    for (i, x) in flats.iter().enumerate() {
        if i == 0 {
            mu.push(1);
            continue;
        }
        let s: i64 = flats[..i]
            .iter()
            .zip(&mu)
            .filter(|(y, _)| y.is_below(x))
            .map(|(_, m)| *m)
            .sum();
        mu.push(-s);
    }
    mu
}
