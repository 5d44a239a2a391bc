//! The reduced Jordan algebra `Sym(M_n(C), σ_b)`.
//!
//! `σ_b(x) = Γ⁻¹ x̄ᵗ Γ` with `Γ = diag(b₁, …, b_n)`, so `x` is symmetric iff
//! `b_i x_ij = b_j · conj(x_ji)`. Elements store the full matrix; the
//! constructors take the independent entries (diagonal scalars and the
//! strict upper triangle) and fill in the lower triangle as
//! `x_ji = (b_i / b_j) · conj(x_ij)`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::cayley_dickson::{CdAlgebra, CdError};
use crate::scalars::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JordanError {
    #[error("elements belong to different Jordan algebras")]
    SpecMismatch,
    #[error("the zero element has no rank")]
    ZeroElement,
    #[error("the adjoint is only defined for n = 3 (got n = {0})")]
    WrongDegree(usize),
    #[error("expected a diagonal primitive idempotent E_ii")]
    NotPrimitiveIdempotent,
    #[error("n must be at least 3 (got {0})")]
    DegreeTooSmall(usize),
    #[error("n must be 3 when r = 3 (got n = {0})")]
    OctonionDegree(usize),
    #[error("b_{0} is zero")]
    ZeroCoefficient(usize),
    #[error("b_{0} lives over the wrong field")]
    FieldMismatch(usize),
    #[error("matrix is not σ_b-symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Cd(#[from] CdError),
}

/// `Sym(M_n(C), σ_b)` for a composition algebra `C`.
pub struct JordanSpec {
    cd: Arc<CdAlgebra>,
    b: Vec<Scalar>,
    half: Scalar,
}

impl PartialEq for JordanSpec {
    fn eq(&self, other: &Self) -> bool {
        *self.cd == *other.cd && self.b == other.b
    }
}

impl Eq for JordanSpec {}

impl fmt::Debug for JordanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JordanSpec").field("cd", &self.cd).field("b", &self.b).finish()
    }
}

impl JordanSpec {
    pub fn new(cd: Arc<CdAlgebra>, b: Vec<Scalar>) -> Result<Arc<Self>, JordanError> {
        let n = b.len();
        if n < 3 {
            return Err(JordanError::DegreeTooSmall(n));
        }
        if cd.r() == 3 && n != 3 {
            return Err(JordanError::OctonionDegree(n));
        }
        for (i, bi) in b.iter().enumerate() {
            if bi.field() != cd.field() {
                return Err(JordanError::FieldMismatch(i));
            }
            if bi.is_zero() {
                return Err(JordanError::ZeroCoefficient(i));
            }
        }
        let half = cd.field().from_i64(2).inv().expect("odd characteristic");
        Ok(Arc::new(JordanSpec { cd, b, half }))
    }

    pub fn from_ints(field: FieldSpec, a: &[i64], b: &[i64]) -> Result<Arc<Self>, JordanError> {
        let cd = CdAlgebra::from_ints(field, a)?;
        Self::new(cd, b.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.cd.field()
    }

    pub fn cd(&self) -> &Arc<CdAlgebra> {
        &self.cd
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// `dim C = 2^r`.
    pub fn d(&self) -> usize {
        self.cd.dim()
    }

    pub fn r(&self) -> usize {
        self.cd.r()
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    /// `2^{r−1} n(n−1) + n`.
    pub fn symmetric_dim(&self) -> usize {
        let n = self.n();
        self.d() * n * (n - 1) / 2 + n
    }

    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.n() + j) * self.d()
    }

    pub fn zero(self: &Arc<Self>) -> JordanElem {
        let len = self.n() * self.n() * self.d();
        JordanElem { spec: Arc::clone(self), data: vec![self.field().zero(); len] }
    }

    pub fn identity(self: &Arc<Self>) -> JordanElem {
        let mut x = self.zero();
        for i in 0..self.n() {
            let o = self.offset(i, i);
            x.data[o] = self.field().one();
        }
        x
    }

    /// The diagonal idempotent `E_ii` (0-based `i`).
    pub fn e(self: &Arc<Self>, i: usize) -> JordanElem {
        let mut x = self.zero();
        let o = self.offset(i, i);
        x.data[o] = self.field().one();
        x
    }

    /// Builds the symmetric matrix from its diagonal and its strict upper
    /// triangle, the latter listed row by row (`(0,1), (0,2), …, (n−2,n−1)`).
    pub fn from_independent(
        self: &Arc<Self>,
        diag: &[Scalar],
        upper: &[Vec<Scalar>],
    ) -> Result<JordanElem, JordanError> {
        let n = self.n();
        if diag.len() != n {
            return Err(JordanError::DimensionMismatch { expected: n, got: diag.len() });
        }
        if upper.len() != n * (n - 1) / 2 {
            return Err(JordanError::DimensionMismatch { expected: n * (n - 1) / 2, got: upper.len() });
        }
        let mut x = self.zero();
        for (i, s) in diag.iter().enumerate() {
            let o = self.offset(i, i);
            x.data[o] = s.clone();
        }
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let entry = it.next().expect("length checked");
                if entry.len() != self.d() {
                    return Err(JordanError::DimensionMismatch { expected: self.d(), got: entry.len() });
                }
                x.set_upper(i, j, entry);
            }
        }
        Ok(x)
    }

    /// Accepts a full matrix (`n × n` entries of `2^r` coordinates) and checks
    /// `σ_b`-symmetry.
    pub fn from_matrix(self: &Arc<Self>, m: &[Vec<Vec<Scalar>>]) -> Result<JordanElem, JordanError> {
        let n = self.n();
        if m.len() != n {
            return Err(JordanError::DimensionMismatch { expected: n, got: m.len() });
        }
        let mut x = self.zero();
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(JordanError::DimensionMismatch { expected: n, got: row.len() });
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.len() != self.d() {
                    return Err(JordanError::DimensionMismatch { expected: self.d(), got: entry.len() });
                }
                let o = self.offset(i, j);
                x.data[o..o + self.d()].clone_from_slice(entry);
            }
        }
        for i in 0..n {
            for j in i..n {
                if !x.symmetric_at(i, j) {
                    return Err(JordanError::NotSymmetric(i, j));
                }
            }
        }
        Ok(x)
    }

    /// A k-basis: the `E_ii`, then for each `i < j` the `2^r` elements with
    /// upper entry `e_k`.
    pub fn basis(self: &Arc<Self>) -> Vec<JordanElem> {
        let n = self.n();
        let d = self.d();
        let mut out: Vec<JordanElem> = (0..n).map(|i| self.e(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..d {
                    let mut x = self.zero();
                    let mut entry = vec![self.field().zero(); d];
                    entry[k] = self.field().one();
                    x.set_upper(i, j, &entry);
                    out.push(x);
                }
            }
        }
        out
    }

    pub fn random_elem<R: Rng + ?Sized>(self: &Arc<Self>, rng: &mut R, bound: i64) -> JordanElem {
        let n = self.n();
        let f = self.field();
        let diag: Vec<Scalar> = (0..n).map(|_| f.random(rng, bound)).collect();
        let upper: Vec<Vec<Scalar>> =
            (0..n * (n - 1) / 2).map(|_| (0..self.d()).map(|_| f.random(rng, bound)).collect()).collect();
        self.from_independent(&diag, &upper).expect("shapes match")
    }
}

/// A `σ_b`-symmetric `n × n` matrix over `C`.
#[derive(Clone, PartialEq, Eq)]
pub struct JordanElem {
    spec: Arc<JordanSpec>,
    /// row-major, `2^r` coordinates per entry
    data: Vec<Scalar>,
}

impl fmt::Debug for JordanElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.spec.n();
        let rows: Vec<Vec<&[Scalar]>> = (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl JordanElem {
    pub fn spec(&self) -> &Arc<JordanSpec> {
        &self.spec
    }

    pub fn entry(&self, i: usize, j: usize) -> &[Scalar] {
        let o = self.spec.offset(i, j);
        &self.data[o..o + self.spec.d()]
    }

    /// Sets `x_ij` (`i < j`) and the matching `x_ji`.
    fn set_upper(&mut self, i: usize, j: usize, entry: &[Scalar]) {
        let spec = Arc::clone(&self.spec);
        let d = spec.d();
        let ratio = &spec.b[i] / &spec.b[j];
        let lower: Vec<Scalar> = spec.cd.conj_coords(entry).iter().map(|c| c * &ratio).collect();
        let o = spec.offset(i, j);
        self.data[o..o + d].clone_from_slice(entry);
        let o = spec.offset(j, i);
        self.data[o..o + d].clone_from_slice(&lower);
    }

    fn symmetric_at(&self, i: usize, j: usize) -> bool {
        let cd = &self.spec.cd;
        let lhs: Vec<Scalar> = self.entry(i, j).iter().map(|c| c * &self.spec.b[i]).collect();
        let rhs: Vec<Scalar> = cd.conj_coords(self.entry(j, i)).iter().map(|c| c * &self.spec.b[j]).collect();
        lhs == rhs
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.spec.n();
        (0..n).all(|i| (i..n).all(|j| self.symmetric_at(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn as_flat(&self) -> &[Scalar] {
        &self.data
    }

    /// Rows of entries, each entry a coordinate vector.
    pub fn to_matrix(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.spec.n();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j).to_vec()).collect()).collect()
    }

    fn check(&self, other: &JordanElem) -> Result<(), JordanError> {
        if Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec {
            Ok(())
        } else {
            Err(JordanError::SpecMismatch)
        }
    }

    fn with_data(&self, data: Vec<Scalar>) -> JordanElem {
        JordanElem { spec: Arc::clone(&self.spec), data }
    }

    /// Plain matrix product `xy` (not itself symmetric in general).
    fn matmul(&self, other: &JordanElem) -> Vec<Scalar> {
        let spec = &self.spec;
        let (n, d) = (spec.n(), spec.d());
        let mut out = vec![spec.field().zero(); n * n * d];
        let nonzero = |x: &JordanElem| -> Vec<bool> { x.data.chunks(d).map(|e| e.iter().any(|s| !s.is_zero())).collect() };
        let (a, b) = (nonzero(self), nonzero(other));
        for i in 0..n {
            for k in 0..n {
                if !a[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if b[k * n + j] {
                        let o = spec.offset(i, j);
                        spec.cd.mul_add_into(&mut out[o..o + d], self.entry(i, k), other.entry(k, j));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &JordanElem) -> Result<JordanElem, JordanError> {
        self.check(other)?;
        Ok(self.with_data(self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &JordanElem) -> Result<JordanElem, JordanError> {
        self.check(other)?;
        Ok(self.with_data(self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, s: &Scalar) -> JordanElem {
        self.with_data(self.data.iter().map(|a| a * s).collect())
    }

    /// `x ∘ y = ½(xy + yx)`.
    pub fn jordan_mul(&self, other: &JordanElem) -> Result<JordanElem, JordanError> {
        self.check(other)?;
        let xy = self.matmul(other);
        let yx = other.matmul(self);
        let half = &self.spec.half;
        Ok(self.with_data(xy.iter().zip(&yx).map(|(a, b)| &(a + b) * half).collect()))
    }

    pub fn square(&self) -> JordanElem {
        self.jordan_mul(self).expect("same spec")
    }

    pub fn trace(&self) -> Scalar {
        (0..self.spec.n()).fold(self.spec.field().zero(), |acc, i| acc + &self.entry(i, i)[0])
    }

    /// `τ(x, y) = trace(x ∘ y)`, computed from the diagonal only.
    pub fn trace_form(&self, other: &JordanElem) -> Result<Scalar, JordanError> {
        self.check(other)?;
        let spec = &self.spec;
        let (n, d) = (spec.n(), spec.d());
        let mut acc = spec.field().zero();
        let mut slot = vec![spec.field().zero(); d];
        for i in 0..n {
            for k in 0..n {
                for s in slot.iter_mut() {
                    *s = spec.field().zero();
                }
                spec.cd.mul_add_into(&mut slot, self.entry(i, k), other.entry(k, i));
                spec.cd.mul_add_into(&mut slot, other.entry(i, k), self.entry(k, i));
                acc += &slot[0];
            }
        }
        Ok(&acc * &spec.half)
    }

    /// `U_x y = 2 x∘(x∘y) − (x∘x)∘y`.
    pub fn u_operator(&self, y: &JordanElem) -> Result<JordanElem, JordanError> {
        self.u_with_square(&self.square(), y)
    }

    fn u_with_square(&self, x2: &JordanElem, y: &JordanElem) -> Result<JordanElem, JordanError> {
        let xy = self.jordan_mul(y)?;
        let a = self.jordan_mul(&xy)?;
        let b = x2.jordan_mul(y)?;
        let two = self.spec.field().from_i64(2);
        a.scale(&two).sub(&b)
    }

    /// `U_x y = τ(x, y)·x` for every basis element `y`.
    pub fn is_rank_one(&self) -> Result<bool, JordanError> {
        if self.is_zero() {
            return Err(JordanError::ZeroElement);
        }
        let x2 = self.square();
        for y in self.spec.basis() {
            let lhs = self.u_with_square(&x2, &y)?;
            let rhs = self.scale(&self.trace_form(&y)?);
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x# = x² − T(x)x + ½(T(x)² − T(x²))·1`, for `n = 3`.
    pub fn adjoint_sharp(&self) -> Result<JordanElem, JordanError> {
        if self.spec.n() != 3 {
            return Err(JordanError::WrongDegree(self.spec.n()));
        }
        let x2 = self.square();
        let t = self.trace();
        let c = &(&t.square() - &x2.trace()) * &self.spec.half;
        x2.sub(&self.scale(&t))?.add(&self.spec.identity().scale(&c))
    }

    /// Index `i` with `self = E_ii`, if any.
    pub fn as_diagonal_idempotent(&self) -> Option<usize> {
        let n = self.spec.n();
        (0..n).find(|&i| *self == self.spec.e(i))
    }
}

/// `x ∘ y`.
pub fn jordan_mul(x: &JordanElem, y: &JordanElem) -> Result<JordanElem, JordanError> {
    x.jordan_mul(y)
}

pub fn u_operator(x: &JordanElem, y: &JordanElem) -> Result<JordanElem, JordanError> {
    x.u_operator(y)
}

/// A k-basis of `J_{1/2}(E_ii)`: matrices supported off the diagonal on row
/// and column `i`. There are `2^r(n−1)` of them.
pub fn peirce_half_basis(spec: &Arc<JordanSpec>, u: &JordanElem) -> Result<Vec<JordanElem>, JordanError> {
    if !Arc::ptr_eq(spec, u.spec()) && **spec != **u.spec() {
        return Err(JordanError::SpecMismatch);
    }
    let i = u.as_diagonal_idempotent().ok_or(JordanError::NotPrimitiveIdempotent)?;
    let d = spec.d();
    let mut out = Vec::with_capacity(d * (spec.n() - 1));
    for j in (0..spec.n()).filter(|&j| j != i) {
        for k in 0..d {
            let mut x = spec.zero();
            let mut entry = vec![spec.field().zero(); d];
            entry[k] = spec.field().one();
            x.set_upper(i.min(j), i.max(j), &entry);
            out.push(x);
        }
    }
    Ok(out)
}

/// The element of `J_{1/2}(E_nn)` whose column `n` (above the diagonal)
/// is `(c₁, …, c_{n−1})`.
pub fn peirce_half_elem(spec: &Arc<JordanSpec>, c: &[Vec<Scalar>]) -> Result<JordanElem, JordanError> {
    let n = spec.n();
    if c.len() != n - 1 {
        return Err(JordanError::DimensionMismatch { expected: n - 1, got: c.len() });
    }
    let mut x = spec.zero();
    for (j, cj) in c.iter().enumerate() {
        if cj.len() != spec.d() {
            return Err(JordanError::DimensionMismatch { expected: spec.d(), got: cj.len() });
        }
        x.set_upper(j, n - 1, cj);
    }
    Ok(x)
}
