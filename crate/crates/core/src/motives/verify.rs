//! Profile-level checks of the blow-up identity
//!
//! ```text
//! M(Q) ⊕ ⊕_{i=1}^{c₁−1} M(Z₁){i}  ≅  M(X(J_n)) ⊕ ⊕_{i=1}^{d₂−1} M(X(J_{n−1})){i}
//! ```
//!
//! where `c₁` is the codimension of `Z₁` in `Q` and `d₂ = 2^r` that of
//! `X(J_{n−1})` in `X(J_n)`.

use serde::Serialize;

use super::{
    check_jordan_params, decompose_neighbour_quadric, decompose_pfister_multiple, decompose_xj, decompose_z1,
    decompose_z1_printed, MotiveError, TateProfile,
};

/// `dim Q − dim Z₁ = (2^r(n−1) − 1) − (2^{r−1}n − 2)`, for `r ≥ 1`.
pub fn z1_codimension(r: u32, n: u32) -> u32 {
    (1 << (r - 1)) * n - (1 << r) + 1
}

fn quadric_profile(r: u32, n: u32) -> Result<TateProfile, MotiveError> {
    if r == 0 {
        Ok(TateProfile::split_quadric(n - 2))
    } else {
        Ok(decompose_neighbour_quadric(r, n)?.profile())
    }
}

/// `X(J_{n−1})`, with `X(J₂)` the quadric `φ ⊗ ⟨b₁⟩ ⊥ ⟨b₂⟩`.
fn smaller_xj_profile(r: u32, n: u32) -> Result<TateProfile, MotiveError> {
    match (r, n - 1) {
        (0, 2) => Ok(TateProfile::split_quadric(0)),
        (_, 2) => Ok(decompose_neighbour_quadric(r, 2)?.profile()),
        (_, m) => Ok(decompose_xj(r, m)?.profile()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub r: u32,
    pub n: u32,
    /// Codimension of `Z₁`; `None` when `Z₁` is empty.
    pub c1: Option<u32>,
    pub d2: u32,
    pub lhs: TateProfile,
    pub rhs: TateProfile,
    pub equal: bool,
    /// The alternative exponent `2^{r−1}n − 2` in place of `c₁`.
    pub printed_d1: Option<u32>,
    pub printed_lhs: Option<TateProfile>,
    pub printed_equal: Option<bool>,
}

pub fn verify_blowup(r: u32, n: u32) -> Result<BlowupReport, MotiveError> {
    check_jordan_params(r, n)?;
    let q = quadric_profile(r, n)?;
    let z1 = decompose_z1(r, n)?.profile();
    let d2 = 1u32 << r;
    let rhs = decompose_xj(r, n)?.profile().add(&smaller_xj_profile(r, n)?.shifted_sum(1, d2 - 1));
    let lhs_with = |c: u32| q.add(&z1.shifted_sum(1, c.saturating_sub(1)));
    let (c1, lhs, printed_d1, printed_lhs) = if r == 0 {
        (None, q.clone(), None, None)
    } else {
        let c1 = z1_codimension(r, n);
        let printed = (1 << (r - 1)) * n - 2;
        (Some(c1), lhs_with(c1), Some(printed), Some(lhs_with(printed)))
    };
    let printed_equal = printed_lhs.as_ref().map(|p| *p == rhs);
    Ok(BlowupReport { r, n, c1, d2, equal: lhs == rhs, lhs, rhs, printed_d1, printed_lhs, printed_equal })
}

/// Poincaré polynomial of `Z₁` from its geometry: two copies of `ℙ^{n−2}`
/// (r = 1), `ℙ¹ × ℙ^{2n−3}` (r = 2), the 10-dimensional spinor variety
/// (r = 3).
fn geometric_z1(r: u32, n: u32) -> TateProfile {
    match r {
        0 => TateProfile::default(),
        1 => TateProfile::projective_space(n - 2).add(&TateProfile::projective_space(n - 2)),
        2 => TateProfile::projective_space(1).mul(&TateProfile::projective_space(2 * n - 3)),
        _ => (1..=4).fold(TateProfile::projective_space(0), |acc, i| {
            acc.mul(&TateProfile::projective_space(0).add(&TateProfile::projective_space(0).shifted(i)))
        }),
    }
}

/// `P_{X(J_n)} = P_Q + Σ_{i=1}^{c₁−1} tⁱ P_{Z₁} − Σ_{i=1}^{2^r−1} tⁱ P_{X(J_{n−1})}`
/// from the split quadric of dimension `2^r − 1` at `n = 2`, using only
/// geometric profiles for `Q` and `Z₁`.
pub fn poincare_xj_recursive(r: u32, n: u32) -> Result<TateProfile, MotiveError> {
    check_jordan_params(r, n)?;
    let mut prev = TateProfile::split_quadric((1 << r) - 1);
    for m in 3..=n {
        let q = TateProfile::split_quadric((1 << r) * (m - 1) - 1);
        let blown = if r == 0 { q } else { q.add(&geometric_z1(r, m).shifted_sum(1, z1_codimension(r, m) - 1)) };
        prev = blown.checked_sub(&prev.shifted_sum(1, (1 << r) - 1))?;
    }
    Ok(prev)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KrashenReport {
    pub n: u32,
    pub rhs: TateProfile,
    /// `Z₁` as `⊕_{i=0}^{n−2} R¹{i}`.
    pub literal_lhs: TateProfile,
    pub literal_equal: bool,
    /// `Z₁` as `⊕_{i=0}^{n−1} R¹{i}`.
    pub variant_lhs: TateProfile,
    pub variant_equal: bool,
}

/// `M(φ⊗b) ⊕ ⊕_{i=1}^{n−2} M(Z₁){i}` against `M(X(J)) ⊕ M(X(J)){1}` for `r = 1`,
/// with both readings of `Z₁`.
pub fn verify_krashen(n: u32) -> Result<KrashenReport, MotiveError> {
    check_jordan_params(1, n)?;
    let pfister = decompose_pfister_multiple(1, n)?.profile();
    let xj = decompose_xj(1, n)?.profile();
    let rhs = xj.add(&xj.shifted(1));
    let lhs_for = |z1: TateProfile| pfister.add(&z1.shifted_sum(1, n - 2));
    let literal_lhs = lhs_for(decompose_z1(1, n)?.profile());
    let variant_lhs = lhs_for(decompose_z1_printed(n)?.profile());
    Ok(KrashenReport {
        n,
        literal_equal: literal_lhs == rhs,
        variant_equal: variant_lhs == rhs,
        rhs,
        literal_lhs,
        variant_lhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blowup_2_3() {
        let rep = verify_blowup(2, 3).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.lhs.counts(), &[1, 2, 4, 5, 5, 4, 2, 1]);
        assert_eq!(rep.c1, Some(3));
        assert_eq!(rep.printed_d1, Some(4));
        assert_eq!(rep.printed_equal, Some(false));
    }

    #[test]
    fn blowup_3_3_uses_seven_dimensional_quadric() {
        let rep = verify_blowup(3, 3).unwrap();
        assert!(rep.equal);
        assert_eq!(decompose_neighbour_quadric(3, 2).unwrap().profile(), TateProfile::split_quadric(7));
    }

    #[test]
    fn blowup_r0_is_trivial() {
        for n in 3..=6 {
            let rep = verify_blowup(0, n).unwrap();
            assert!(rep.equal);
            assert_eq!(rep.c1, None);
            assert_eq!(rep.lhs, TateProfile::split_quadric(n - 2));
        }
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(poincare_xj_recursive(2, 3).unwrap().counts(), &[1, 1, 2, 2, 2, 2, 1, 1]);
        assert_eq!(poincare_xj_recursive(1, 3).unwrap().counts(), &[1, 2, 2, 1]);
        let p = poincare_xj_recursive(3, 3).unwrap();
        assert_eq!(p.total(), 24);
        assert!(p.is_palindromic_about(15));
    }

    #[test]
    fn krashen_three() {
        let rep = verify_krashen(3).unwrap();
        assert_eq!((rep.literal_lhs.total(), rep.rhs.total()), (10, 12));
        assert!(!rep.literal_equal);
        assert!(rep.variant_equal);
    }
}
