//! Root systems of types A, B, C, D and F₄ in standard coordinates, with
//! Bourbaki numbering of the simple roots.
//!
//! Coordinates are stored doubled so the half-integral roots of F₄ stay
//! integral. Node sets `θ` follow the convention `θ = Δ` ↔ Borel,
//! `θ = ∅` ↔ the whole group, so `dim G/P_θ` counts positive roots whose
//! support meets `θ`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::row_reduce;
use crate::motives::{decompose_xj, decompose_z1, z1_codimension};
use crate::scalars::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("node {node} is not in 1..={rank}")]
    InvalidNode { node: usize, rank: usize },
    #[error("{0} is not a supported root system")]
    InvalidRank(String),
    #[error("invalid parameters (r = {r}, n = {n})")]
    BadParams { r: u32, n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    F4,
}

impl FromStr for RootType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "F4" | "F" => Ok(RootType::F4),
            other => Err(format!("unknown root system type {other:?}")),
        }
    }
}

/// A subset of the simple roots, 1-based.
pub type ThetaSet = BTreeSet<usize>;

pub fn theta(nodes: &[usize]) -> ThetaSet {
    nodes.iter().copied().collect()
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    kind: RootType,
    rank: usize,
    simple: Vec<Vec<i64>>,
    /// positive roots as coefficient vectors over the simple roots
    positive: Vec<Vec<i64>>,
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RootType::F4 => write!(f, "F4"),
            k => write!(f, "{k:?}{}", self.rank),
        }
    }
}

fn unit(dim: usize, i: usize, scale: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

fn combo(dim: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; dim];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

/// `±e_i ± e_j` for `i < j`, doubled.
fn long_pairs(dim: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for (s, t) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                out.push(combo(dim, &[(i, s), (j, t)]));
            }
        }
    }
    out
}

impl RootSystem {
    pub fn new(kind: RootType, rank: usize) -> Result<Self, RootError> {
        let invalid = || RootError::InvalidRank(format!("{kind:?}{rank}"));
        let (roots, simple): (Vec<Vec<i64>>, Vec<Vec<i64>>) = match kind {
            RootType::A => {
                if rank < 1 {
                    return Err(invalid());
                }
                let dim = rank + 1;
                let roots = (0..dim)
                    .flat_map(|i| (0..dim).filter(move |&j| j != i).map(move |j| combo(dim, &[(i, 2), (j, -2)])))
                    .collect();
                let simple = (0..rank).map(|i| combo(dim, &[(i, 2), (i + 1, -2)])).collect();
                (roots, simple)
            }
            RootType::B | RootType::C => {
                if rank < 1 {
                    return Err(invalid());
                }
                let short = if kind == RootType::B { 2 } else { 4 };
                let mut roots = long_pairs(rank);
                for i in 0..rank {
                    roots.push(unit(rank, i, short));
                    roots.push(unit(rank, i, -short));
                }
                let mut simple: Vec<Vec<i64>> = (0..rank - 1).map(|i| combo(rank, &[(i, 2), (i + 1, -2)])).collect();
                simple.push(unit(rank, rank - 1, short));
                (roots, simple)
            }
            RootType::D => {
                if rank < 2 {
                    return Err(invalid());
                }
                let mut simple: Vec<Vec<i64>> = (0..rank - 1).map(|i| combo(rank, &[(i, 2), (i + 1, -2)])).collect();
                simple.push(combo(rank, &[(rank - 2, 2), (rank - 1, 2)]));
                (long_pairs(rank), simple)
            }
            RootType::F4 => {
                if rank != 4 {
                    return Err(invalid());
                }
                let mut roots = long_pairs(4);
                for i in 0..4 {
                    roots.push(unit(4, i, 2));
                    roots.push(unit(4, i, -2));
                }
                for signs in 0..16u32 {
                    roots.push((0..4).map(|k| if signs >> k & 1 == 1 { -1 } else { 1 }).collect());
                }
                let simple = vec![
                    combo(4, &[(1, 2), (2, -2)]),
                    combo(4, &[(2, 2), (3, -2)]),
                    unit(4, 3, 2),
                    vec![1, -1, -1, -1],
                ];
                (roots, simple)
            }
        };
        let positive = roots
            .iter()
            .map(|r| simple_coefficients(&simple, r))
            .filter(|c| c.iter().all(|&x| x >= 0))
            .collect();
        Ok(RootSystem { kind, rank, simple, positive })
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Simple roots in doubled coordinates.
    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple
    }

    /// Positive roots in doubled coordinates.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.positive
            .iter()
            .map(|c| {
                let dim = self.simple[0].len();
                (0..dim).map(|k| c.iter().zip(&self.simple).map(|(a, s)| a * s[k]).sum()).collect()
            })
            .collect()
    }

    pub fn positive_count(&self) -> usize {
        self.positive.len()
    }

    /// `dim G = rank + 2·#Φ⁺`.
    pub fn group_dim(&self) -> usize {
        self.rank + 2 * self.positive.len()
    }

    fn check_theta(&self, theta: &ThetaSet) -> Result<(), RootError> {
        match theta.iter().find(|&&i| i == 0 || i > self.rank) {
            Some(&node) => Err(RootError::InvalidNode { node, rank: self.rank }),
            None => Ok(()),
        }
    }

    /// Positive roots of the Levi factor, i.e. those supported off `θ`.
    fn levi_roots<'a>(&'a self, theta: &'a ThetaSet) -> impl Iterator<Item = &'a Vec<i64>> + 'a {
        self.positive.iter().filter(move |c| theta.iter().all(|&i| c[i - 1] == 0))
    }

    /// `#Φ⁺ − #Φ⁺(Levi)`.
    pub fn dim_g_mod_p(&self, theta: &ThetaSet) -> Result<usize, RootError> {
        self.check_theta(theta)?;
        Ok(self.positive.len() - self.levi_roots(theta).count())
    }

    /// `dim P_θ = dim G − dim G/P_θ`.
    pub fn parabolic_dim(&self, theta: &ThetaSet) -> Result<usize, RootError> {
        Ok(self.group_dim() - self.dim_g_mod_p(theta)?)
    }

    /// `|W|` by the closed formulas.
    pub fn weyl_order(&self) -> u128 {
        weyl_order_of(self.kind, self.rank)
    }

    /// Order of the Weyl group of the Levi factor: the product over the
    /// connected components of `Δ ∖ θ`.
    pub fn levi_weyl_order(&self, theta: &ThetaSet) -> Result<u128, RootError> {
        self.check_theta(theta)?;
        let rest: Vec<usize> = (1..=self.rank).filter(|i| !theta.contains(i)).collect();
        let mut seen = BTreeSet::new();
        let mut order = 1u128;
        for &start in &rest {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start);
            let mut k = 0;
            while k < comp.len() {
                let a = comp[k];
                for &b in &rest {
                    if !seen.contains(&b) && dot(&self.simple[a - 1], &self.simple[b - 1]) != 0 {
                        seen.insert(b);
                        comp.push(b);
                    }
                }
                k += 1;
            }
            let count = self.positive.iter().filter(|c| (1..=self.rank).all(|i| c[i - 1] == 0 || comp.contains(&i))).count();
            order *= component_weyl_order(comp.len(), count);
        }
        Ok(order)
    }

    /// `χ(G/P_θ) = |W| / |W_θ|`.
    pub fn euler_characteristic(&self, theta: &ThetaSet) -> Result<u128, RootError> {
        Ok(self.weyl_order() / self.levi_weyl_order(theta)?)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn weyl_order_of(kind: RootType, rank: usize) -> u128 {
    match kind {
        RootType::A => factorial(rank + 1),
        RootType::B | RootType::C => (1u128 << rank) * factorial(rank),
        RootType::D => (1u128 << (rank - 1)) * factorial(rank),
        RootType::F4 => 1152,
    }
}

/// Weyl group order of a connected diagram from its rank and number of
/// positive roots (G₂ does not occur here).
fn component_weyl_order(rank: usize, positive: usize) -> u128 {
    let kind = if positive == rank * (rank + 1) / 2 {
        RootType::A
    } else if positive == rank * rank {
        RootType::B
    } else if positive == rank * (rank - 1) {
        RootType::D
    } else {
        debug_assert_eq!((rank, positive), (4, 24));
        RootType::F4
    };
    weyl_order_of(kind, rank)
}

/// Solves `root = Σ cᵢ αᵢ` exactly.
fn simple_coefficients(simple: &[Vec<i64>], root: &[i64]) -> Vec<i64> {
    let q = FieldSpec::Rationals;
    let rank = simple.len();
    let mut rows: Vec<Vec<Scalar>> = (0..root.len())
        .map(|k| {
            let mut row: Vec<Scalar> = simple.iter().map(|s| q.from_i64(s[k])).collect();
            row.push(q.from_i64(root[k]));
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    debug_assert!(pivots.iter().all(|&p| p < rank), "root outside the span of the simple roots");
    let mut c = vec![0; rank];
    for (r, &p) in pivots.iter().enumerate() {
        c[p] = rows[r][rank].to_i64().expect("integral coefficient");
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitLine {
    pub id: String,
    pub expected: i64,
    pub got: i64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub r: u32,
    pub n: u32,
    pub lines: Vec<OrbitLine>,
    pub pass: bool,
}

fn line(id: impl Into<String>, expected: i64, got: i64) -> OrbitLine {
    OrbitLine { id: id.into(), expected, got, pass: expected == got }
}

fn rs(kind: RootType, rank: usize) -> RootSystem {
    RootSystem::new(kind, rank).expect("valid by construction")
}

/// `(G, θ)` with `X(J) ≅ G/P_θ` over an algebraic closure.
pub fn xj_homogeneous_space(r: u32, n: u32) -> Result<(RootSystem, ThetaSet), RootError> {
    let n_us = n as usize;
    match (r, n) {
        (0, 4) => Ok((rs(RootType::D, 2), theta(&[1, 2]))),
        (0, _) if n >= 3 && n % 2 == 1 => Ok((rs(RootType::B, n_us / 2), theta(&[1]))),
        (0, _) if n >= 3 => Ok((rs(RootType::D, n_us / 2), theta(&[1]))),
        (1, _) if n >= 3 => Ok((rs(RootType::A, n_us - 1), theta(&[1, n_us - 1]))),
        (2, _) if n >= 3 => Ok((rs(RootType::C, n_us), theta(&[2]))),
        (3, 3) => Ok((rs(RootType::F4, 4), theta(&[4]))),
        _ => Err(RootError::BadParams { r, n }),
    }
}

/// Every dimension count behind the orbit descriptions of `X(J)` and `Z₁`.
pub fn check_orbit_dims(r: u32, n: u32) -> Result<OrbitReport, RootError> {
    let (g, th) = xj_homogeneous_space(r, n)?;
    let xj_dim = (1i64 << r) * (n as i64 - 1) - 1;
    let mut lines = vec![line(format!("dim X(J) = dim {g}/P{th:?}"), xj_dim, g.dim_g_mod_p(&th)? as i64)];

    let xj = decompose_xj(r, n).map_err(|_| RootError::BadParams { r, n })?.profile();
    lines.push(line("euler X(J) = |W|/|W_P|", xj.total() as i64, g.euler_characteristic(&th)? as i64));
    lines.push(line("top degree of X(J) profile", xj_dim, xj.max_degree().unwrap_or(0) as i64));

    let n_i = n as i64;
    let parabolic = g.parabolic_dim(&th)? as i64;
    match r {
        0 => {
            let m = n_i / 2;
            let expected = if n % 2 == 0 { 2 * m * m - 3 * m + 2 } else { 2 * m * m - m + 1 };
            lines.push(line("dim parabolic (r=0)", expected, parabolic));
        }
        1 => lines.push(line("dim parabolic (r=1) = n^2-2n+2", n_i * n_i - 2 * n_i + 2, parabolic)),
        2 => lines.push(line("dim parabolic (r=2) = 2n^2-3n+5", 2 * n_i * n_i - 3 * n_i + 5, parabolic)),
        _ => lines.push(line("dim parabolic (r=3) = 52-15", 37, parabolic)),
    }

    let traceless = (1i64 << r) * n_i * (n_i - 1) / 2 + n_i - 1;
    let rep = match r {
        0 => n_i * (n_i + 1) / 2 - 1,
        1 => n_i * n_i - 1,
        2 => n_i * (2 * n_i - 1) - 1,
        _ => 26,
    };
    lines.push(line("dim J_0", rep, traceless));

    if r >= 1 {
        let (z1_dim, z1_expected) = match r {
            1 => (rs(RootType::A, n as usize - 2).dim_g_mod_p(&theta(&[1]))? as i64, n_i - 2),
            2 => {
                let c = rs(RootType::C, n as usize - 1);
                let a = rs(RootType::A, 1);
                let dim = (c.dim_g_mod_p(&theta(&[1]))? + a.dim_g_mod_p(&theta(&[1]))?) as i64;
                let group = (c.group_dim() + a.group_dim()) as i64;
                lines.push(line("dim parabolic of Z_1 orbit (r=2) = 2n^2-5n+6", 2 * n_i * n_i - 5 * n_i + 6, group - dim));
                (dim, 2 * n_i - 2)
            }
            _ => (rs(RootType::B, 4).dim_g_mod_p(&theta(&[4]))? as i64, 10),
        };
        lines.push(line("dim Z_1", z1_expected, z1_dim));
        let z1 = decompose_z1(r, n).map_err(|_| RootError::BadParams { r, n })?.profile();
        lines.push(line("top degree of Z_1 profile", z1_dim, z1.max_degree().unwrap_or(0) as i64));
        lines.push(line("codim Z_1 in Q", z1_codimension(r, n) as i64, xj_dim - z1_dim));
    }
    let smaller = (1i64 << r) * (n_i - 2) - 1;
    lines.push(line("codim X(J_{n-1}) in X(J_n)", 1i64 << r, xj_dim - smaller));

    let pass = lines.iter().all(|l| l.pass);
    Ok(OrbitReport { r, n, lines, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        for m in 1..=8 {
            assert_eq!(rs(RootType::A, m).positive_count(), m * (m + 1) / 2);
            assert_eq!(rs(RootType::B, m).positive_count(), m * m);
            assert_eq!(rs(RootType::C, m).positive_count(), m * m);
            if m >= 2 {
                assert_eq!(rs(RootType::D, m).positive_count(), m * (m - 1));
            }
        }
        assert_eq!(rs(RootType::F4, 4).positive_count(), 24);
    }

    #[test]
    fn parabolic_examples() {
        assert_eq!(rs(RootType::F4, 4).dim_g_mod_p(&theta(&[4])).unwrap(), 15);
        assert_eq!(rs(RootType::C, 3).dim_g_mod_p(&theta(&[2])).unwrap(), 7);
        assert_eq!(rs(RootType::B, 4).dim_g_mod_p(&theta(&[4])).unwrap(), 10);
        assert_eq!(rs(RootType::D, 2).dim_g_mod_p(&theta(&[1, 2])).unwrap(), 2);
        let c4 = rs(RootType::C, 4);
        assert_eq!(c4.dim_g_mod_p(&theta(&[1, 2, 3, 4])).unwrap(), 16);
        assert_eq!(c4.dim_g_mod_p(&theta(&[])).unwrap(), 0);
        assert_eq!(c4.dim_g_mod_p(&theta(&[5])), Err(RootError::InvalidNode { node: 5, rank: 4 }));
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(rs(RootType::F4, 4).weyl_order(), 1152);
        let c3 = rs(RootType::C, 3);
        assert_eq!(c3.weyl_order(), 48);
        assert_eq!(c3.levi_weyl_order(&theta(&[2])).unwrap(), 4);
        assert_eq!(c3.euler_characteristic(&theta(&[2])).unwrap(), 12);
        assert_eq!(rs(RootType::F4, 4).euler_characteristic(&theta(&[4])).unwrap(), 24);
    }

    #[test]
    fn orbit_reports_pass() {
        for r in 0..=2 {
            for n in 3..=10 {
                let rep = check_orbit_dims(r, n).unwrap();
                assert!(rep.pass, "{rep:?}");
            }
        }
        assert!(check_orbit_dims(3, 3).unwrap().pass);
        assert!(check_orbit_dims(3, 4).is_err());
    }
}
