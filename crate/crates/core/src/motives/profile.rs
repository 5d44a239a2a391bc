use std::fmt;

use serde::{Deserialize, Serialize};

use super::{MotiveError, SummandKind};

/// Degrees of an untwisted summand.
pub(super) fn base_degrees(kind: SummandKind) -> Vec<u32> {
    match kind {
        SummandKind::F { r, n } => {
            let step = 1u32 << r;
            (0..n / 2).flat_map(|i| [step * i, step * (n - 1) - step * i - 1]).collect()
        }
        SummandKind::R { r } => vec![0, (1u32 << (r - 1)) - 1],
        SummandKind::SplitQuadric { dim } => {
            let mut v: Vec<u32> = (0..=dim).collect();
            if dim % 2 == 0 {
                v.push(dim / 2);
            }
            v
        }
        SummandKind::Tate => vec![0],
    }
}

/// A multiset of degrees, stored as `counts[d]` with no trailing zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TateProfile {
    counts: Vec<u64>,
}

impl TateProfile {
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        TateProfile { counts }
    }

    pub fn from_degrees(degrees: impl IntoIterator<Item = u32>) -> Self {
        let mut counts = Vec::new();
        for d in degrees {
            let d = d as usize;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        TateProfile { counts }
    }

    /// `1 + t + ⋯ + t^m`.
    pub fn projective_space(m: u32) -> Self {
        Self::from_counts(vec![1; m as usize + 1])
    }

    /// A split quadric of dimension `dim`: one class per degree, two in the
    /// middle degree when `dim` is even.
    pub fn split_quadric(dim: u32) -> Self {
        Self::from_degrees(base_degrees(SummandKind::SplitQuadric { dim }))
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// The multiset written out, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(d, &c)| std::iter::repeat_n(d as u32, c as usize))
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    pub fn count(&self, degree: usize) -> u64 {
        self.counts.get(degree).copied().unwrap_or(0)
    }

    /// Multiplication by `t^k`.
    pub fn shifted(&self, k: u32) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut counts = vec![0; k as usize];
        counts.extend_from_slice(&self.counts);
        TateProfile { counts }
    }

    pub fn add(&self, other: &TateProfile) -> Self {
        let len = self.counts.len().max(other.counts.len());
        Self::from_counts((0..len).map(|d| self.count(d) + other.count(d)).collect())
    }

    /// `self − other`, failing at the first degree that would go negative.
    pub fn checked_sub(&self, other: &TateProfile) -> Result<Self, MotiveError> {
        let len = self.counts.len().max(other.counts.len());
        let mut counts = Vec::with_capacity(len);
        for d in 0..len {
            counts.push(self.count(d).checked_sub(other.count(d)).ok_or(MotiveError::NegativeCoefficient(d))?);
        }
        Ok(Self::from_counts(counts))
    }

    /// Polynomial product.
    pub fn mul(&self, other: &TateProfile) -> Self {
        if self.is_empty() || other.is_empty() {
            return Self::default();
        }
        let mut counts = vec![0; self.counts.len() + other.counts.len() - 1];
        for (i, a) in self.counts.iter().enumerate() {
            for (j, b) in other.counts.iter().enumerate() {
                counts[i + j] += a * b;
            }
        }
        Self::from_counts(counts)
    }

    /// `Σ_{i=lo}^{hi} t^i · self`.
    pub fn shifted_sum(&self, lo: u32, hi: u32) -> Self {
        (lo..=hi).fold(Self::default(), |acc, i| acc.add(&self.shifted(i)))
    }

    /// `counts[d] = counts[dim − d]` for every `d`, and nothing above `dim`.
    pub fn is_palindromic_about(&self, dim: usize) -> bool {
        self.counts.len() <= dim + 1 && (0..=dim).all(|d| self.count(d) == self.count(dim - d))
    }

    /// The lowest degree below the top with no class, if any.
    pub fn first_gap(&self) -> Option<usize> {
        self.counts.iter().position(|&c| c == 0)
    }
}

impl fmt::Display for TateProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p1 = TateProfile::projective_space(1);
        let p3 = TateProfile::projective_space(3);
        assert_eq!(p1.mul(&p3).counts(), &[1, 2, 2, 2, 1]);
        assert_eq!(p1.shifted(2).counts(), &[0, 0, 1, 1]);
        assert_eq!(p3.checked_sub(&p1).unwrap().counts(), &[0, 0, 1, 1]);
        assert_eq!(p1.checked_sub(&p3), Err(MotiveError::NegativeCoefficient(2)));
        assert_eq!(p1.shifted_sum(1, 2).counts(), &[0, 1, 2, 1]);
        assert!(TateProfile::split_quadric(4).is_palindromic_about(4));
        assert_eq!(TateProfile::split_quadric(4).total(), 6);
        assert_eq!(TateProfile::from_degrees([2, 0]).first_gap(), Some(1));
        assert_eq!(p3.to_string(), "1,1,1,1");
    }
}
