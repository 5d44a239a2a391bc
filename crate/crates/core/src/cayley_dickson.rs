//! Composition algebras of dimension 1, 2, 4 and 8 by Cayley–Dickson doubling.
//!
//! Level `k` doubles the previous algebra `A` to `A ⊕ A·e` with `e² = a_k`:
//!
//! ```text
//! (a, b)(c, d) = (ac + a_k·d̄b, da + bc̄),    conj(a, b) = (ā, −b)
//! ```
//!
//! so the norm is `N(a) − a_k N(b)` and the Gram diagonal of the doubling
//! basis is exactly the Pfister form `⟨⟨a₁, …, a_r⟩⟩`. Basis element `e_i`
//! is the product of the level generators at the set bits of `i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::quadform::{pfister, PfisterSpec, QuadForm};
use crate::scalars::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdError {
    #[error("composition algebras stop at r = 3 (got r = {0})")]
    TooLarge(usize),
    #[error("doubling parameter {0} is zero")]
    ZeroParameter(usize),
    #[error("parameter lives over {found}, algebra over {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A Cayley–Dickson algebra together with its basis multiplication table.
pub struct CdAlgebra {
    field: FieldSpec,
    params: Vec<Scalar>,
    /// `e_i e_j = table[i*dim + j] · e_{i ^ j}`
    table: Vec<Scalar>,
    gram: Vec<Scalar>,
}

impl PartialEq for CdAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.params == other.params
    }
}

impl Eq for CdAlgebra {}

impl fmt::Debug for CdAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CdAlgebra").field("field", &self.field).field("params", &self.params).finish()
    }
}

impl CdAlgebra {
    pub fn new(field: FieldSpec, params: Vec<Scalar>) -> Result<Arc<Self>, CdError> {
        if params.len() > 3 {
            return Err(CdError::TooLarge(params.len()));
        }
        for (i, a) in params.iter().enumerate() {
            if a.field() != field {
                return Err(CdError::FieldMismatch { expected: field, found: a.field() });
            }
            if a.is_zero() {
                return Err(CdError::ZeroParameter(i));
            }
        }
        let dim = 1 << params.len();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let prod = mul_doubling(&params, &unit(field, dim, i), &unit(field, dim, j));
                debug_assert!(prod.iter().enumerate().all(|(k, c)| k == (i ^ j) || c.is_zero()));
                table.push(prod[i ^ j].clone());
            }
        }
        let gram = pfister(&PfisterSpec::new(field, params.clone()))
            .expect("parameters validated")
            .coeffs()
            .to_vec();
        Ok(Arc::new(CdAlgebra { field, params, table, gram }))
    }

    pub fn from_ints(field: FieldSpec, params: &[i64]) -> Result<Arc<Self>, CdError> {
        Self::new(field, params.iter().map(|&a| field.from_i64(a)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn r(&self) -> usize {
        self.params.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.params.len()
    }

    pub fn params(&self) -> &[Scalar] {
        &self.params
    }

    /// Structure constant `c` with `e_i e_j = c · e_{i^j}`.
    pub fn structure_constant(&self, i: usize, j: usize) -> &Scalar {
        &self.table[i * self.dim() + j]
    }

    /// The norm form, as the diagonal form of the doubling basis.
    pub fn norm_form(&self) -> QuadForm {
        QuadForm::new(self.gram.clone()).expect("Pfister forms are non-degenerate")
    }

    /// `out += x·y` on raw coordinates.
    pub fn mul_add_into(&self, out: &mut [Scalar], x: &[Scalar], y: &[Scalar]) {
        let dim = self.dim();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = &self.table[i * dim + j];
                out[i ^ j] += &(&(xi * yj) * c);
            }
        }
    }

    pub fn mul_coords(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        self.mul_add_into(&mut out, x, y);
        out
    }

    pub fn conj_coords(&self, x: &[Scalar]) -> Vec<Scalar> {
        x.iter().enumerate().map(|(i, c)| if i == 0 { c.clone() } else { -c }).collect()
    }

    pub fn norm_coords(&self, x: &[Scalar]) -> Scalar {
        self.gram.iter().zip(x).fold(self.field.zero(), |acc, (g, c)| acc + &(g * &c.square()))
    }

    pub fn zero(self: &Arc<Self>) -> CdElem {
        CdElem { alg: Arc::clone(self), coords: vec![self.field.zero(); self.dim()] }
    }

    pub fn one(self: &Arc<Self>) -> CdElem {
        self.basis(0)
    }

    pub fn scalar(self: &Arc<Self>, s: Scalar) -> CdElem {
        let mut e = self.zero();
        e.coords[0] = s;
        e
    }

    pub fn basis(self: &Arc<Self>, i: usize) -> CdElem {
        CdElem { alg: Arc::clone(self), coords: unit(self.field, self.dim(), i) }
    }

    pub fn elem(self: &Arc<Self>, coords: Vec<Scalar>) -> Result<CdElem, CdError> {
        if coords.len() != self.dim() {
            return Err(CdError::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        if let Some(c) = coords.iter().find(|c| c.field() != self.field) {
            return Err(CdError::FieldMismatch { expected: self.field, found: c.field() });
        }
        Ok(CdElem { alg: Arc::clone(self), coords })
    }

    pub fn elem_from_ints(self: &Arc<Self>, coords: &[i64]) -> Result<CdElem, CdError> {
        self.elem(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }
}

fn unit(field: FieldSpec, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); dim];
    v[i] = field.one();
    v
}

fn conj_doubling(x: &[Scalar]) -> Vec<Scalar> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = conj_doubling(&x[..h]);
    out.extend(x[h..].iter().map(|c| -c));
    out
}

fn add_vec(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// The defining recursive product. `params[k]` squares the level-`k+1`
/// generator; the table in [`CdAlgebra`] is derived from this.
pub fn mul_doubling(params: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let level = params.len() - 1;
    let lambda = &params[level];
    let sub = &params[..level];
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let d_bar = conj_doubling(d);
    let c_bar = conj_doubling(c);
    let first = add_vec(
        &mul_doubling(sub, a, c),
        &mul_doubling(sub, &d_bar, b).iter().map(|t| lambda * t).collect::<Vec<_>>(),
    );
    let second = add_vec(&mul_doubling(sub, d, a), &mul_doubling(sub, b, &c_bar));
    let mut out = first;
    out.extend(second);
    out
}

/// An element of a composition algebra in the doubling basis.
#[derive(Clone, PartialEq, Eq)]
pub struct CdElem {
    alg: Arc<CdAlgebra>,
    coords: Vec<Scalar>,
}

impl fmt::Debug for CdElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coords).finish()
    }
}

impl CdElem {
    pub fn algebra(&self) -> &Arc<CdAlgebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    fn check(&self, other: &CdElem) -> Result<(), CdError> {
        if Arc::ptr_eq(&self.alg, &other.alg) || self.alg == other.alg {
            Ok(())
        } else {
            Err(CdError::AlgebraMismatch)
        }
    }

    pub fn try_mul(&self, other: &CdElem) -> Result<CdElem, CdError> {
        self.check(other)?;
        Ok(CdElem { alg: Arc::clone(&self.alg), coords: self.alg.mul_coords(&self.coords, &other.coords) })
    }

    pub fn try_add(&self, other: &CdElem) -> Result<CdElem, CdError> {
        self.check(other)?;
        Ok(CdElem { alg: Arc::clone(&self.alg), coords: add_vec(&self.coords, &other.coords) })
    }

    pub fn conj(&self) -> CdElem {
        CdElem { alg: Arc::clone(&self.alg), coords: self.alg.conj_coords(&self.coords) }
    }

    pub fn norm(&self) -> Scalar {
        self.alg.norm_coords(&self.coords)
    }

    /// `x + x̄ = trace · e₀`.
    pub fn trace(&self) -> Scalar {
        &self.coords[0] + &self.coords[0]
    }

    pub fn scale(&self, s: &Scalar) -> CdElem {
        CdElem { alg: Arc::clone(&self.alg), coords: self.coords.iter().map(|c| c * s).collect() }
    }
}

impl Mul for &CdElem {
    type Output = CdElem;
    fn mul(self, rhs: &CdElem) -> CdElem {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &CdElem {
    type Output = CdElem;
    fn add(self, rhs: &CdElem) -> CdElem {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &CdElem {
    type Output = CdElem;
    fn sub(self, rhs: &CdElem) -> CdElem {
        self + &(-rhs)
    }
}

impl Neg for &CdElem {
    type Output = CdElem;
    fn neg(self) -> CdElem {
        CdElem { alg: Arc::clone(&self.alg), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

/// `cd_mul`: the product of two elements of the same algebra.
pub fn cd_mul(x: &CdElem, y: &CdElem) -> Result<CdElem, CdError> {
    x.try_mul(y)
}

pub fn cd_conj(x: &CdElem) -> CdElem {
    x.conj()
}

pub fn cd_norm(x: &CdElem) -> Scalar {
    x.norm()
}

pub fn cd_trace(x: &CdElem) -> Scalar {
    x.trace()
}
