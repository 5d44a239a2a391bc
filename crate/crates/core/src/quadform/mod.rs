//! Diagonal quadratic forms over ℚ and 𝔽_p: Pfister forms, invariants,
//! isotropy and Witt indices.
//!
//! Over 𝔽_p everything follows from dimension and discriminant. Over ℚ the
//! Witt index is computed on invariants alone: dimension, discriminant,
//! signature and the Hasse invariants at the finitely many places where
//! they can be nontrivial. Hyperbolic planes are stripped off one at a
//! time while the remaining invariant tuple stays isotropic.

mod hilbert;
pub mod search;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

pub use hilbert::{hilbert_symbol, Place};
pub use search::{isotropic_vector_search, witt_index_lower_bound};

use crate::scalars::{FieldSpec, Scalar, ScalarError, SquareClass};
use hilbert::{hilbert_int, integral_rep, is_local_square, relevant_places};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadFormError {
    #[error("a quadratic form needs at least one coefficient")]
    Empty,
    #[error("coefficient {0} is zero (degenerate form)")]
    ZeroCoefficient(usize),
    #[error("Pfister parameter {0} is zero")]
    ZeroParameter(usize),
    #[error("forms live over different fields ({0} vs {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero argument")]
    ZeroInput,
    #[error("operation needs rational scalars")]
    NotRational,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A non-degenerate diagonal form `⟨d₁, …, d_m⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadForm {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl QuadForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self, QuadFormError> {
        let field = coeffs.first().ok_or(QuadFormError::Empty)?.field();
        for (i, c) in coeffs.iter().enumerate() {
            if c.field() != field {
                return Err(QuadFormError::FieldMismatch(field, c.field()));
            }
            if c.is_zero() {
                return Err(QuadFormError::ZeroCoefficient(i));
            }
        }
        Ok(QuadForm { field, coeffs })
    }

    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> Result<Self, QuadFormError> {
        Self::new(coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// All pairwise products `fᵢ gⱼ`, row-major in `i`.
    pub fn tensor(&self, other: &QuadForm) -> Result<QuadForm, QuadFormError> {
        self.same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .flat_map(|a| other.coeffs.iter().map(move |b| a * b))
            .collect();
        Ok(QuadForm { field: self.field, coeffs })
    }

    /// Orthogonal sum: concatenation of the diagonals.
    pub fn perp(&self, other: &QuadForm) -> Result<QuadForm, QuadFormError> {
        self.same_field(other)?;
        let mut coeffs = self.coeffs.clone();
        coeffs.extend(other.coeffs.iter().cloned());
        Ok(QuadForm { field: self.field, coeffs })
    }

    /// `Σ dᵢ vᵢ²`.
    pub fn evaluate(&self, v: &[Scalar]) -> Result<Scalar, QuadFormError> {
        if v.len() != self.dim() {
            return Err(QuadFormError::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        let mut acc = self.field.zero();
        for (d, x) in self.coeffs.iter().zip(v) {
            if x.field() != self.field {
                return Err(QuadFormError::FieldMismatch(self.field, x.field()));
            }
            acc += &(d * &x.square());
        }
        Ok(acc)
    }

    /// The polar bilinear form `Σ dᵢ uᵢ vᵢ`.
    pub fn polar(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.coeffs
            .iter()
            .zip(u.iter().zip(v))
            .fold(self.field.zero(), |acc, (d, (a, b))| acc + &(d * &(a * b)))
    }

    fn same_field(&self, other: &QuadForm) -> Result<(), QuadFormError> {
        if self.field != other.field {
            return Err(QuadFormError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn discriminant(&self) -> SquareClass {
        self.coeffs
            .iter()
            .fold(self.field.one(), |acc, c| acc * c)
            .square_class()
            .expect("non-degenerate")
    }

    /// `(positive, negative)` diagonal counts over ℚ.
    pub fn signature(&self) -> Option<(usize, usize)> {
        if !self.field.is_rationals() {
            return None;
        }
        let pos = self.coeffs.iter().filter(|c| c.signum() == Some(std::cmp::Ordering::Greater)).count();
        Some((pos, self.dim() - pos))
    }

    pub fn invariants(&self) -> Result<FormInvariants, QuadFormError> {
        let disc = self.discriminant();
        if !self.field.is_rationals() {
            return Ok(FormInvariants { dim: self.dim(), disc, signature: None, hasse: None });
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(integral_rep).collect::<Result<_, _>>()?;
        let places = relevant_places(&ints)?;
        let hasse = places
            .into_iter()
            .map(|place| {
                let mut h = 1i8;
                for i in 0..ints.len() {
                    for j in i + 1..ints.len() {
                        h *= hilbert_int(&ints[i], &ints[j], place);
                    }
                }
                (place, h)
            })
            .collect();
        Ok(FormInvariants { dim: self.dim(), disc, signature: self.signature(), hasse: Some(hasse) })
    }

    pub fn is_isotropic(&self) -> Result<bool, QuadFormError> {
        match self.field {
            FieldSpec::PrimeField(_) => Ok(match self.dim() {
                1 => false,
                2 => self.discriminant() == self.field.from_i64(-1).square_class()?,
                _ => true,
            }),
            FieldSpec::Rationals => Ok(RationalInvariants::of(self)?.is_isotropic()),
        }
    }

    /// Number of hyperbolic planes in the Witt decomposition.
    pub fn witt_index(&self) -> Result<usize, QuadFormError> {
        let m = self.dim();
        match self.field {
            FieldSpec::PrimeField(_) => {
                if m % 2 == 1 {
                    return Ok((m - 1) / 2);
                }
                let sign = if (m / 2) % 2 == 0 { 1 } else { -1 };
                let split = self.field.from_i64(sign).square_class()?;
                Ok(if self.discriminant() == split { m / 2 } else { m / 2 - 1 })
            }
            FieldSpec::Rationals => {
                let mut inv = RationalInvariants::of(self)?;
                let mut index = 0;
                while inv.is_isotropic() {
                    inv.strip_hyperbolic_plane();
                    index += 1;
                }
                Ok(index)
            }
        }
    }
}

/// Classical invariants of a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    pub dim: usize,
    pub disc: SquareClass,
    /// `(positive, negative)`, ℚ only.
    pub signature: Option<(usize, usize)>,
    /// Hasse invariant `∏_{i<j} (dᵢ, dⱼ)_v` at ∞, 2 and the odd primes dividing
    /// a coefficient; ℚ only.
    pub hasse: Option<BTreeMap<Place, i8>>,
}

/// Everything the Hasse–Minkowski isotropy test needs, kept in a form that
/// can be updated when a hyperbolic plane is split off.
#[derive(Debug, Clone)]
struct RationalInvariants {
    dim: usize,
    disc: BigInt,
    pos: usize,
    neg: usize,
    hasse: BTreeMap<Place, i8>,
}

impl RationalInvariants {
    fn of(f: &QuadForm) -> Result<Self, QuadFormError> {
        let inv = f.invariants()?;
        let (pos, neg) = inv.signature.expect("rational form");
        Ok(RationalInvariants {
            dim: inv.dim,
            disc: inv.disc.as_integer().expect("rational form"),
            pos,
            neg,
            hasse: inv.hasse.expect("rational form"),
        })
    }

    fn is_isotropic(&self) -> bool {
        match self.dim {
            0 | 1 => false,
            // ⟨a, b⟩ is isotropic iff −ab is a square
            2 => self.disc == BigInt::from(-1),
            3 | 4 => {
                if self.pos == 0 || self.neg == 0 {
                    return false;
                }
                let minus_one = BigInt::from(-1);
                self.hasse.iter().filter(|(p, _)| **p != Place::Infinity).all(|(&place, &eps)| {
                    if self.dim == 3 {
                        hilbert_int(&minus_one, &(-&self.disc), place) == eps
                    } else {
                        !is_local_square(&self.disc, place)
                            || eps == hilbert_int(&minus_one, &minus_one, place)
                    }
                })
            }
            _ => self.pos > 0 && self.neg > 0,
        }
    }

    /// `f = H ⊥ f'`: `d(f') = −d(f)` and `ε(f) = ε(f')·(−1, d(f'))`.
    fn strip_hyperbolic_plane(&mut self) {
        self.dim -= 2;
        self.pos -= 1;
        self.neg -= 1;
        self.disc = -&self.disc;
        let minus_one = BigInt::from(-1);
        for (place, h) in self.hasse.iter_mut() {
            *h *= hilbert_int(&minus_one, &self.disc, *place);
        }
    }
}

/// Parameters `a₁, …, a_r` of the Pfister form `⟨⟨a₁, …, a_r⟩⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfisterSpec {
    pub field: FieldSpec,
    pub params: Vec<Scalar>,
}

impl PfisterSpec {
    pub fn new(field: FieldSpec, params: Vec<Scalar>) -> Self {
        PfisterSpec { field, params }
    }

    pub fn r(&self) -> usize {
        self.params.len()
    }
}

/// `⟨1, −a₁⟩ ⊗ ⋯ ⊗ ⟨1, −a_r⟩`.
///
/// Coefficient `i` is `∏ (−a_{j+1})` over the set bits `j` of `i`, which is
/// the Gram diagonal of the Cayley–Dickson basis.
pub fn pfister(spec: &PfisterSpec) -> Result<QuadForm, QuadFormError> {
    let mut form = QuadForm { field: spec.field, coeffs: vec![spec.field.one()] };
    for (i, a) in spec.params.iter().enumerate() {
        if a.field() != spec.field {
            return Err(QuadFormError::FieldMismatch(spec.field, a.field()));
        }
        if a.is_zero() {
            return Err(QuadFormError::ZeroParameter(i));
        }
        let level = QuadForm { field: spec.field, coeffs: vec![spec.field.one(), -a] };
        form = level.tensor(&form)?;
    }
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf(field: FieldSpec, c: &[i64]) -> QuadForm {
        QuadForm::from_ints(field, c).unwrap()
    }

    const Q: FieldSpec = FieldSpec::Rationals;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn pfister_expansions() {
        let a = Q.from_i64(5);
        assert_eq!(pfister(&PfisterSpec::new(Q, vec![a])).unwrap(), qf(Q, &[1, -5]));
        let p2 = pfister(&PfisterSpec::new(Q, vec![Q.from_i64(-1), Q.from_i64(-1)])).unwrap();
        assert_eq!(p2, qf(Q, &[1, 1, 1, 1]));
        assert_eq!(pfister(&PfisterSpec::new(Q, vec![])).unwrap(), qf(Q, &[1]));
        let mixed = pfister(&PfisterSpec::new(Q, vec![Q.from_i64(2), Q.from_i64(3)])).unwrap();
        assert_eq!(mixed, qf(Q, &[1, -2, -3, 6]));
        assert!(matches!(
            pfister(&PfisterSpec::new(Q, vec![Q.from_i64(1), Q.from_i64(0)])),
            Err(QuadFormError::ZeroParameter(1))
        ));
    }

    #[test]
    fn tensor_perp_evaluate() {
        let a = qf(Q, &[1, -3]);
        let b = qf(Q, &[2]);
        assert_eq!(a.tensor(&b).unwrap(), qf(Q, &[2, -6]));
        assert_eq!(qf(Q, &[1, 2]).perp(&qf(Q, &[3])).unwrap(), qf(Q, &[1, 2, 3]));
        let one = Q.one();
        assert!(qf(Q, &[1, 2, -3]).evaluate(&[one.clone(), one.clone(), one.clone()]).unwrap().is_zero());
        assert!(matches!(
            qf(Q, &[1, 2]).evaluate(&[one]),
            Err(QuadFormError::DimensionMismatch { expected: 2, got: 1 })
        ));
        assert!(matches!(
            qf(Q, &[1]).perp(&qf(f(7), &[1])),
            Err(QuadFormError::FieldMismatch(_, _))
        ));
    }

    #[test]
    fn construction_rejects_degenerate() {
        assert_eq!(QuadForm::new(vec![]), Err(QuadFormError::Empty));
        assert_eq!(QuadForm::from_ints(Q, &[1, 0]), Err(QuadFormError::ZeroCoefficient(1)));
        assert_eq!(QuadForm::from_ints(f(5), &[1, 5]), Err(QuadFormError::ZeroCoefficient(1)));
    }

    #[test]
    fn invariants_examples() {
        let h = qf(Q, &[1, -1]).invariants().unwrap();
        assert_eq!(h.dim, 2);
        assert_eq!(h.disc.representative(), &Q.from_i64(-1));
        assert_eq!(h.signature, Some((1, 1)));

        let four = qf(Q, &[1, 1, 1, 1]).invariants().unwrap();
        assert_eq!(four.disc.representative(), &Q.one());
        assert_eq!(four.signature, Some((4, 0)));
        // six symbols (1,1) = +1 everywhere
        assert!(four.hasse.unwrap().values().all(|&h| h == 1));

        let ff = qf(f(7), &[2, 3]).invariants().unwrap();
        assert_eq!(ff.dim, 2);
        assert!(!ff.disc.is_trivial());
        assert!(!f(7).from_i64(6).is_square().unwrap());
        assert_eq!(ff.signature, None);
    }

    #[test]
    fn hasse_of_sum_of_two_negative_squares() {
        let inv = qf(Q, &[-1, -1]).invariants().unwrap();
        let h = inv.hasse.unwrap();
        assert_eq!(h[&Place::Infinity], -1);
        assert_eq!(h[&Place::Prime(2)], -1);
    }

    #[test]
    fn isotropy_examples() {
        assert!(!qf(Q, &[1, 1]).is_isotropic().unwrap());
        assert!(qf(Q, &[1, 1, 1, 1, -7]).is_isotropic().unwrap());
        assert!(qf(f(5), &[1, 1]).is_isotropic().unwrap());
        assert!(!qf(f(7), &[1, 1]).is_isotropic().unwrap());
        // sum of three squares misses 7
        assert!(!qf(Q, &[1, 1, 1, -7]).is_isotropic().unwrap());
        assert!(qf(Q, &[1, 1, 1, -3]).is_isotropic().unwrap());
        assert!(!qf(Q, &[1, 1, -3]).is_isotropic().unwrap());
        assert!(qf(Q, &[1, 1, -2]).is_isotropic().unwrap());
    }

    #[test]
    fn witt_index_examples() {
        assert_eq!(qf(Q, &[1, -1]).witt_index().unwrap(), 1);
        assert_eq!(qf(f(7), &[1, 1, 1, 1]).witt_index().unwrap(), 2);
        let phi = qf(Q, &[1, 1, 1, 1]);
        let big = phi.tensor(&qf(Q, &[1, 1, -7])).unwrap();
        assert_eq!(big.dim(), 12);
        assert_eq!(big.witt_index().unwrap(), 4);
        assert_eq!(qf(Q, &[1, 1, 1]).witt_index().unwrap(), 0);
        assert_eq!(qf(f(3), &[1, 1]).witt_index().unwrap(), 0);
        assert_eq!(qf(f(3), &[1, 1, 1]).witt_index().unwrap(), 1);
    }

    #[test]
    fn witt_index_bounded_by_half_dimension() {
        for c in [&[1i64, -1, 2, -2, 3][..], &[1, 1, 1, 1, 1, 1, -1], &[5, -7, 11, -13]] {
            let form = qf(Q, c);
            assert!(form.witt_index().unwrap() <= form.dim() / 2);
        }
    }
}
