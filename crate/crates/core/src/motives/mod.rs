//! Formal motives: labeled summands with Tate twists and their profiles
//! over an algebraic closure.
//!
//! Nothing here models Chow groups. A [`MotiveExpr`] is a list of summands
//! (compared as a multiset) and a [`TateProfile`] is the multiset of twist
//! degrees it splits into, i.e. the Poincaré polynomial of a split model.

mod diagram;
mod profile;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use diagram::{render_diagram, DiagramFormat};
pub use profile::TateProfile;
pub use verify::{
    poincare_xj_recursive, verify_blowup, verify_krashen, z1_codimension, BlowupReport, KrashenReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("negative coefficient in degree {0}")]
    NegativeCoefficient(usize),
    #[error("nothing to draw")]
    EmptyExpression,
    #[error("profile has no class in degree {0} below its top degree")]
    GapInProfile(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SummandKind {
    /// Higher form `F^r_n`; zero for `n = 1`.
    F { r: u32, n: u32 },
    /// Rost motive `R^r`.
    R { r: u32 },
    /// Motive of a split quadric of the given dimension.
    SplitQuadric { dim: u32 },
    Tate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    #[serde(flatten)]
    pub kind: SummandKind,
    pub twist: u32,
}

impl Summand {
    pub fn f(r: u32, n: u32, twist: u32) -> Self {
        Summand { kind: SummandKind::F { r, n }, twist }
    }

    pub fn rost(r: u32, twist: u32) -> Self {
        Summand { kind: SummandKind::R { r }, twist }
    }

    pub fn split_quadric(dim: u32, twist: u32) -> Self {
        Summand { kind: SummandKind::SplitQuadric { dim }, twist }
    }

    pub fn tate(twist: u32) -> Self {
        Summand { kind: SummandKind::Tate, twist }
    }

    /// Twist degrees of this summand, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut out: Vec<u32> = profile::base_degrees(self.kind).into_iter().map(|d| d + self.twist).collect();
        out.sort_unstable();
        out
    }

    /// `F^2_3{1}`, `R^2{5}`, `Q_7`, `Z{3}`; no braces at twist 0.
    pub fn label(&self) -> String {
        let base = match self.kind {
            SummandKind::F { r, n } => format!("F^{r}_{n}"),
            SummandKind::R { r } => format!("R^{r}"),
            SummandKind::SplitQuadric { dim } => format!("Q_{dim}"),
            SummandKind::Tate => "Z".to_string(),
        };
        if self.twist == 0 {
            base
        } else {
            format!("{base}{{{}}}", self.twist)
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A formal direct sum of summands. Order is kept for display; equality
/// ignores it.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MotiveExpr {
    pub summands: Vec<Summand>,
}

impl PartialEq for MotiveExpr {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.summands.clone();
        let mut b = other.summands.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl Eq for MotiveExpr {}

impl fmt::Display for MotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.summands.iter().map(Summand::label).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl MotiveExpr {
    pub fn new(summands: Vec<Summand>) -> Self {
        MotiveExpr { summands }
    }

    pub fn push(&mut self, s: Summand) {
        self.summands.push(s);
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn profile(&self) -> TateProfile {
        profile(self)
    }

    /// Every summand twisted by `k` more.
    pub fn shifted(&self, k: u32) -> MotiveExpr {
        MotiveExpr::new(self.summands.iter().map(|s| Summand { kind: s.kind, twist: s.twist + k }).collect())
    }
}

/// Union of the summands' degree multisets.
pub fn profile(e: &MotiveExpr) -> TateProfile {
    TateProfile::from_degrees(e.summands.iter().flat_map(Summand::degrees))
}

fn bad(msg: impl Into<String>) -> MotiveError {
    MotiveError::BadParams(msg.into())
}

/// Checks the standing hypotheses `r ≤ 3`, `n ≥ 3`, `r = 3 ⇒ n = 3`.
pub fn check_jordan_params(r: u32, n: u32) -> Result<(), MotiveError> {
    if r > 3 {
        return Err(bad(format!("r must be at most 3 (got {r})")));
    }
    if n < 3 {
        return Err(bad(format!("n must be at least 3 (got {n})")));
    }
    if r == 3 && n != 3 {
        return Err(bad(format!("n must be 3 when r = 3 (got {n})")));
    }
    Ok(())
}

/// `M(φ ⊗ b) = ⊕_{i<2^r} F^r_n{i}`, plus `M(φ){2^{r−1}(n−1)}` for odd `n`,
/// with `M(φ) = ⊕_{i<2^{r−1}} R^r{i}`.
pub fn decompose_pfister_multiple(r: u32, n: u32) -> Result<MotiveExpr, MotiveError> {
    if r < 1 || n < 1 {
        return Err(bad(format!("need r ≥ 1 and n ≥ 1 (got r = {r}, n = {n})")));
    }
    let mut e = MotiveExpr::default();
    for i in 0..1u32 << r {
        e.push(Summand::f(r, n, i));
    }
    if n % 2 == 1 {
        let base = (1u32 << (r - 1)) * (n - 1);
        for i in 0..1u32 << (r - 1) {
            e.push(Summand::rost(r, base + i));
        }
    }
    Ok(e)
}

/// `M(q) = F^r_n ⊕ ⊕_{i=1}^{2^r−1} F^r_{n−1}{i}`, plus for even `n`
/// `⊕_{j=1}^{2^{r−1}−1} R^r{2^{r−1}(n−1) − j}`.
pub fn decompose_neighbour_quadric(r: u32, n: u32) -> Result<MotiveExpr, MotiveError> {
    if r < 1 || n < 2 {
        return Err(bad(format!("need r ≥ 1 and n ≥ 2 (got r = {r}, n = {n})")));
    }
    let mut e = MotiveExpr::default();
    e.push(Summand::f(r, n, 0));
    for i in 1..1u32 << r {
        e.push(Summand::f(r, n - 1, i));
    }
    if n % 2 == 0 {
        let top = (1u32 << (r - 1)) * (n - 1);
        for j in 1..1u32 << (r - 1) {
            e.push(Summand::rost(r, top - j));
        }
    }
    Ok(e)
}

/// The base locus `Z₁`. For `r = 1` the sum stops at `n − 2`, matching
/// `Z₁ ≅ ℙ^{n−2} ⊔ ℙ^{n−2}`; see [`decompose_z1_printed`] for the other
/// index.
pub fn decompose_z1(r: u32, n: u32) -> Result<MotiveExpr, MotiveError> {
    check_jordan_params(r, n)?;
    let top = match r {
        0 => return Ok(MotiveExpr::default()),
        1 => n - 2,
        2 => 2 * n - 3,
        _ => 7,
    };
    Ok(MotiveExpr::new((0..=top).map(|i| Summand::rost(r, i)).collect()))
}

/// `⊕_{i=0}^{n−1} R^1{i}`, the `r = 1` sum with the upper index `n − 1`.
pub fn decompose_z1_printed(n: u32) -> Result<MotiveExpr, MotiveError> {
    check_jordan_params(1, n)?;
    Ok(MotiveExpr::new((0..n).map(|i| Summand::rost(1, i)).collect()))
}

/// `M(X(J))` for `J = Sym(M_n(C), σ_b)` with `dim C = 2^r`.
pub fn decompose_xj(r: u32, n: u32) -> Result<MotiveExpr, MotiveError> {
    check_jordan_params(r, n)?;
    let mut e = MotiveExpr::default();
    match r {
        0 => e.push(Summand::split_quadric(n - 2, 0)),
        1 => {
            e.push(Summand::f(1, n, 0));
            for j in 0..=(n - 3) / 2 {
                for i in 1..=2 * (n / 2) {
                    e.push(Summand::rost(1, i + 2 * j));
                }
            }
        }
        2 => {
            e.push(Summand::f(2, n, 0));
            for j in 0..=(n - 2) / 2 {
                for i in 1..=4 * ((n - 1) / 2) + 1 {
                    e.push(Summand::rost(2, i + 4 * j));
                }
            }
        }
        _ => {
            e.push(Summand::f(3, 3, 0));
            for i in 1..=11 {
                e.push(Summand::rost(3, i));
            }
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(e: &MotiveExpr) -> Vec<u32> {
        profile(e).degrees()
    }

    #[test]
    fn base_profiles() {
        assert_eq!(Summand::f(2, 4, 0).degrees(), vec![0, 4, 7, 11]);
        assert_eq!(Summand::rost(2, 5).degrees(), vec![5, 6]);
        assert!(Summand::f(3, 1, 0).degrees().is_empty());
        assert_eq!(Summand::rost(1, 0).degrees(), vec![0, 0]);
        assert_eq!(Summand::split_quadric(2, 0).degrees(), vec![0, 1, 1, 2]);
        assert_eq!(Summand::tate(3).degrees(), vec![3]);
    }

    #[test]
    fn pfister_multiple_examples() {
        let e = decompose_pfister_multiple(1, 2).unwrap();
        assert_eq!(e, MotiveExpr::new(vec![Summand::f(1, 2, 0), Summand::f(1, 2, 1)]));
        let e = decompose_pfister_multiple(2, 3).unwrap();
        let mut expected: Vec<Summand> = (0..4).map(|i| Summand::f(2, 3, i)).collect();
        expected.extend([Summand::rost(2, 4), Summand::rost(2, 5)]);
        assert_eq!(e, MotiveExpr::new(expected));
        for r in 1..=3 {
            for n in 1..=8 {
                let p = decompose_pfister_multiple(r, n).unwrap().profile();
                assert_eq!(p.total(), (1u64 << r) * n as u64);
                assert_eq!(p, TateProfile::split_quadric((1 << r) * n - 2));
            }
        }
    }

    #[test]
    fn neighbour_quadric_examples() {
        let e = decompose_neighbour_quadric(2, 4).unwrap();
        let expected = MotiveExpr::new(vec![
            Summand::f(2, 4, 0),
            Summand::f(2, 3, 1),
            Summand::f(2, 3, 2),
            Summand::f(2, 3, 3),
            Summand::rost(2, 5),
        ]);
        assert_eq!(e, expected);
        assert_eq!(degrees(&e), (0..12).collect::<Vec<_>>());
        let e = decompose_neighbour_quadric(2, 2).unwrap();
        assert_eq!(degrees(&e), vec![0, 1, 2, 3]);
    }

    #[test]
    fn z1_examples() {
        assert_eq!(degrees(&decompose_z1(2, 3).unwrap()), vec![0, 1, 1, 2, 2, 3, 3, 4]);
        let p = decompose_z1(3, 3).unwrap().profile();
        assert_eq!((p.total(), p.max_degree()), (16, Some(10)));
        assert_eq!(degrees(&decompose_z1(1, 3).unwrap()), vec![0, 0, 1, 1]);
        assert!(decompose_z1(0, 5).unwrap().is_empty());
        assert_eq!(decompose_z1_printed(3).unwrap().profile().total(), 6);
    }

    #[test]
    fn xj_examples() {
        let p = decompose_xj(3, 3).unwrap().profile();
        assert_eq!(p.counts(), &[1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1]);
        assert_eq!(decompose_xj(2, 3).unwrap().profile().counts(), &[1, 1, 2, 2, 2, 2, 1, 1]);
        assert_eq!(decompose_xj(1, 3).unwrap().profile().counts(), &[1, 2, 2, 1]);
        assert_eq!(decompose_xj(3, 3).unwrap().len(), 12);
    }

    #[test]
    fn parameter_checks() {
        assert!(decompose_xj(5, 3).is_err());
        assert!(decompose_xj(3, 4).is_err());
        assert!(decompose_z1(2, 2).is_err());
        assert!(decompose_neighbour_quadric(0, 3).is_err());
        assert!(decompose_pfister_multiple(1, 0).is_err());
    }

    #[test]
    fn json_schema() {
        let e = MotiveExpr::new(vec![Summand::f(2, 4, 0), Summand::rost(2, 5)]);
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"summands": [
                {"kind": "F", "r": 2, "n": 4, "twist": 0},
                {"kind": "R", "r": 2, "twist": 5}
            ]})
        );
        let back: MotiveExpr = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn labels() {
        assert_eq!(Summand::f(2, 3, 1).label(), "F^2_3{1}");
        assert_eq!(Summand::rost(2, 5).to_string(), "R^2{5}");
        assert_eq!(Summand::f(2, 4, 0).label(), "F^2_4");
    }
}
