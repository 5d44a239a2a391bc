//! The Veronese map `v₂ : ℙ(C^{n−1} × k) ⇢ ℙJ`, its inverse, the base loci
//! `Z₁` and `Z₂`, and the transposition composite.
//!
//! Entries follow the right-weighted convention `x_ij = c_i c̄_j b_j`, which
//! is `σ_b`-symmetric on the nose. With it, column `n` of `v₂(c)` is
//! `b_n c_n · c`, so the inverse reads column `n`.
//!
//! Source points are stored flat: the `2^r` coordinates of `c₁`, then of
//! `c₂`, …, then of `c_{n−1}`, and finally the scalar `c_n`. The quadric
//! `Q(J,u)` in this layout is `⟨b₁,…,b_{n−1}⟩ ⊗ φ ⊥ ⟨b_n⟩`.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::jordan::{peirce_half_elem, JordanElem, JordanError, JordanSpec};
use crate::quadform::{isotropic_vector_search, QuadForm};
use crate::scalars::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BirationalError {
    #[error("point lies in the indeterminacy locus")]
    BasePoint,
    #[error("projective points must be nonzero")]
    ZeroPoint,
    #[error("points live in different ambient spaces")]
    AmbientMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Jordan(#[from] JordanError),
}

/// `u ~ v`: `v = λu` for a nonzero scalar `λ`.
pub fn projective_eq(u: &[Scalar], v: &[Scalar]) -> Result<bool, BirationalError> {
    if u.len() != v.len() {
        return Err(BirationalError::AmbientMismatch);
    }
    let Some(i) = u.iter().position(|x| !x.is_zero()) else {
        return Ok(v.iter().all(Scalar::is_zero));
    };
    if v[i].is_zero() {
        return Ok(false);
    }
    let lambda = &v[i] / &u[i];
    Ok(u.iter().zip(v).all(|(a, b)| &(a * &lambda) == b))
}

/// Scales so the first nonzero coordinate is 1.
fn normalize(v: &mut [Scalar]) -> Result<(), BirationalError> {
    let i = v.iter().position(|x| !x.is_zero()).ok_or(BirationalError::ZeroPoint)?;
    let inv = v[i].inv().expect("nonzero");
    for x in v.iter_mut() {
        *x *= &inv;
    }
    Ok(())
}

/// A point of `ℙ(C^{n−1} × k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPointC {
    spec: Arc<JordanSpec>,
    flat: Vec<Scalar>,
}

/// Number of flat coordinates of a source point.
pub fn source_len(spec: &JordanSpec) -> usize {
    (spec.n() - 1) * spec.d() + 1
}

impl ProjPointC {
    pub fn new(spec: &Arc<JordanSpec>, mut flat: Vec<Scalar>) -> Result<Self, BirationalError> {
        let len = source_len(spec);
        if flat.len() != len {
            return Err(BirationalError::DimensionMismatch { expected: len, got: flat.len() });
        }
        normalize(&mut flat)?;
        Ok(ProjPointC { spec: Arc::clone(spec), flat })
    }

    /// From `(c₁, …, c_{n−1})` and `c_n`.
    pub fn from_parts(spec: &Arc<JordanSpec>, cs: &[Vec<Scalar>], cn: Scalar) -> Result<Self, BirationalError> {
        if cs.len() + 1 != spec.n() {
            return Err(BirationalError::DimensionMismatch { expected: spec.n() - 1, got: cs.len() });
        }
        let mut flat = Vec::with_capacity(source_len(spec));
        for c in cs {
            if c.len() != spec.d() {
                return Err(BirationalError::DimensionMismatch { expected: spec.d(), got: c.len() });
            }
            flat.extend(c.iter().cloned());
        }
        flat.push(cn);
        Self::new(spec, flat)
    }

    pub fn from_ints(spec: &Arc<JordanSpec>, flat: &[i64]) -> Result<Self, BirationalError> {
        Self::new(spec, flat.iter().map(|&x| spec.field().from_i64(x)).collect())
    }

    pub fn spec(&self) -> &Arc<JordanSpec> {
        &self.spec
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.flat
    }

    /// `c_i` for `i < n−1` (0-based).
    pub fn c(&self, i: usize) -> &[Scalar] {
        let d = self.spec.d();
        &self.flat[i * d..(i + 1) * d]
    }

    pub fn c_n(&self) -> &Scalar {
        self.flat.last().expect("nonempty")
    }

    /// `Σ b_i N(c_i) + b_n c_n²`.
    pub fn quadric_value(&self) -> Scalar {
        quadric_form(&self.spec).evaluate(&self.flat).expect("layout matches")
    }

    pub fn on_quadric(&self) -> bool {
        self.quadric_value().is_zero()
    }

    pub fn proj_eq(&self, other: &ProjPointC) -> Result<bool, BirationalError> {
        if self.spec != other.spec {
            return Err(BirationalError::AmbientMismatch);
        }
        projective_eq(&self.flat, &other.flat)
    }
}

/// A point of `ℙJ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPointJ {
    elem: JordanElem,
}

impl ProjPointJ {
    pub fn new(x: JordanElem) -> Result<Self, BirationalError> {
        if x.is_zero() {
            return Err(BirationalError::ZeroPoint);
        }
        let i = x.as_flat().iter().position(|s| !s.is_zero()).expect("nonzero");
        let inv = x.as_flat()[i].inv().expect("nonzero");
        Ok(ProjPointJ { elem: x.scale(&inv) })
    }

    pub fn elem(&self) -> &JordanElem {
        &self.elem
    }

    pub fn proj_eq(&self, other: &ProjPointJ) -> Result<bool, BirationalError> {
        if self.elem.spec() != other.elem.spec() {
            return Err(BirationalError::AmbientMismatch);
        }
        projective_eq(self.elem.as_flat(), other.elem.as_flat())
    }
}

/// `q = ⟨b₁,…,b_{n−1}⟩ ⊗ φ ⊥ ⟨b_n⟩` in the flat source layout.
pub fn quadric_form(spec: &JordanSpec) -> QuadForm {
    let n = spec.n();
    let b_head = QuadForm::new(spec.b()[..n - 1].to_vec()).expect("b nonzero");
    let b_n = QuadForm::new(vec![spec.b()[n - 1].clone()]).expect("b nonzero");
    b_head.tensor(&spec.cd().norm_form()).and_then(|t| t.perp(&b_n)).expect("same field")
}

fn scalar_entry(spec: &JordanSpec, s: &Scalar) -> Vec<Scalar> {
    let mut v = vec![spec.field().zero(); spec.d()];
    v[0] = s.clone();
    v
}

/// `c_i` as an algebra element, with `c_n` embedded as a scalar.
fn slot(c: &ProjPointC, i: usize) -> Vec<Scalar> {
    if i + 1 == c.spec.n() {
        scalar_entry(&c.spec, c.c_n())
    } else {
        c.c(i).to_vec()
    }
}

/// `v₂(c) = [c_i c̄_j b_j]`.
pub fn veronese(c: &ProjPointC) -> Result<ProjPointJ, BirationalError> {
    let x = veronese_matrix(c)?;
    if x.is_zero() {
        return Err(BirationalError::BasePoint);
    }
    ProjPointJ::new(x)
}

/// The matrix `[c_i c̄_j b_j]` for the stored representative of `c`, without
/// rescaling, so `T(v₂(c)) = q(c)` holds exactly. Zero on `Z₁`.
pub fn veronese_matrix(c: &ProjPointC) -> Result<JordanElem, BirationalError> {
    let spec = &c.spec;
    let cd = spec.cd();
    let n = spec.n();
    let slots: Vec<Vec<Scalar>> = (0..n).map(|i| slot(c, i)).collect();
    let diag: Vec<Scalar> = (0..n).map(|i| &cd.norm_coords(&slots[i]) * &spec.b()[i]).collect();
    let mut upper = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let prod = cd.mul_coords(&slots[i], &cd.conj_coords(&slots[j]));
            upper.push(prod.iter().map(|x| x * &spec.b()[j]).collect());
        }
    }
    Ok(spec.from_independent(&diag, &upper)?)
}

/// Reads column `n`: `(x_{1n}, …, x_{n−1,n}, x_nn)`.
pub fn veronese_inverse(x: &ProjPointJ) -> Result<ProjPointC, BirationalError> {
    let spec = x.elem.spec();
    let n = spec.n();
    column_point(spec, &x.elem, n - 1, None)
}

/// Column `col` of `x` as a source point, optionally swapping two slots.
fn column_point(
    spec: &Arc<JordanSpec>,
    x: &JordanElem,
    col: usize,
    swap: Option<(usize, usize)>,
) -> Result<ProjPointC, BirationalError> {
    let n = spec.n();
    let mut order: Vec<usize> = (0..n).collect();
    if let Some((a, b)) = swap {
        order.swap(a, b);
    }
    let mut flat = Vec::with_capacity(source_len(spec));
    for &i in &order[..n - 1] {
        flat.extend(x.entry(i, col).iter().cloned());
    }
    flat.push(x.entry(order[n - 1], col)[0].clone());
    if flat.iter().all(Scalar::is_zero) {
        return Err(BirationalError::BasePoint);
    }
    ProjPointC::new(spec, flat)
}

/// `c_n = 0` and `c_i c̄_j = 0` for all `i, j < n`.
pub fn in_z1(c: &ProjPointC) -> bool {
    if !c.c_n().is_zero() {
        return false;
    }
    let cd = c.spec.cd();
    let n = c.spec.n();
    (0..n - 1).all(|i| {
        (i..n - 1).all(|j| cd.mul_coords(c.c(i), &cd.conj_coords(c.c(j))).iter().all(Scalar::is_zero))
    })
}

/// The `J_{1/2}(E_nn)` matrix `x(c)` with column `n` equal to `(c₁, …, c_{n−1})`.
pub fn z1_matrix(c: &ProjPointC) -> JordanElem {
    let cs: Vec<Vec<Scalar>> = (0..c.spec.n() - 1).map(|i| c.c(i).to_vec()).collect();
    peirce_half_elem(&c.spec, &cs).expect("shapes match")
}

/// Row `n` of `x` vanishes.
pub fn in_z2(x: &ProjPointJ) -> bool {
    let n = x.elem.spec().n();
    (0..n).all(|j| x.elem.entry(n - 1, j).iter().all(Scalar::is_zero))
}

/// The algebra with `b_{n−1}` and `b_n` exchanged, on which the transposed
/// points live.
pub fn transposed_spec(spec: &Arc<JordanSpec>) -> Arc<JordanSpec> {
    let mut b = spec.b().to_vec();
    let n = b.len();
    b.swap(n - 2, n - 1);
    JordanSpec::new(Arc::clone(spec.cd()), b).expect("same constraints as the original")
}

/// `(v₂′)⁻¹ ∘ v₂`: column `n−1` of `v₂(c)`, then the last two slots swapped.
pub fn transposition_map(c: &ProjPointC) -> Result<ProjPointC, BirationalError> {
    transposition_map_into(c, &transposed_spec(&c.spec))
}

/// As [`transposition_map`] with a precomputed target algebra.
pub fn transposition_map_into(c: &ProjPointC, target: &Arc<JordanSpec>) -> Result<ProjPointC, BirationalError> {
    if **target != *transposed_spec(&c.spec) {
        return Err(BirationalError::AmbientMismatch);
    }
    let x = veronese(c)?;
    let n = target.n();
    column_point(target, x.elem(), n - 2, Some((n - 2, n - 1)))
}

/// Number of points of `ℙ^{len−1}(𝔽_p)`.
pub fn projective_count(p: u64, len: usize) -> u64 {
    (0..len as u32).map(|k| p.pow(k)).sum()
}

/// The `index`-th point of `ℙ^{len−1}(𝔽_p)` with first nonzero coordinate 1.
/// Points whose leading 1 sits earliest come first.
pub fn projective_point(field: FieldSpec, len: usize, mut index: u64) -> Vec<Scalar> {
    let p = field.order().expect("finite field");
    for lead in 0..len {
        let tail = (len - lead - 1) as u32;
        let block = p.pow(tail);
        if index < block {
            let mut v = vec![field.zero(); len];
            v[lead] = field.one();
            let mut rest = index;
            for k in (lead + 1..len).rev() {
                v[k] = field.from_i64((rest % p) as i64);
                rest /= p;
            }
            return v;
        }
        index -= block;
    }
    panic!("index out of range")
}

/// The `index`-th point of the affine chart `c_n = 1`.
pub fn affine_chart_point(field: FieldSpec, len: usize, mut index: u64) -> Vec<Scalar> {
    let p = field.order().expect("finite field");
    let mut v = vec![field.one(); len];
    for k in (0..len - 1).rev() {
        v[k] = field.from_i64((index % p) as i64);
        index /= p;
    }
    v
}

/// A point of `Q(J,u)` found by bounded search.
pub fn find_quadric_point(spec: &Arc<JordanSpec>, bound: u32) -> Option<ProjPointC> {
    let q = quadric_form(spec);
    isotropic_vector_search(&q, bound).map(|v| ProjPointC::new(spec, v).expect("nonzero"))
}

/// Second intersection of the quadric with a random line through `p0`:
/// `q(v)·p0 − 2B(p0, v)·v`. `None` when the line is tangent or degenerate.
pub fn sample_quadric_point<R: Rng + ?Sized>(
    p0: &ProjPointC,
    rng: &mut R,
    bound: i64,
) -> Option<ProjPointC> {
    let spec = &p0.spec;
    let q = quadric_form(spec);
    let f = spec.field();
    let v: Vec<Scalar> = (0..p0.flat.len()).map(|_| f.random(rng, bound)).collect();
    let qv = q.evaluate(&v).expect("layout matches");
    let two_b = &q.polar(&p0.flat, &v) * &f.from_i64(2);
    let flat: Vec<Scalar> = p0.flat.iter().zip(&v).map(|(a, b)| &(&qv * a) - &(&two_b * b)).collect();
    ProjPointC::new(spec, flat).ok()
}

/// A uniformly random source point (not necessarily on the quadric).
pub fn random_source_point<R: Rng + ?Sized>(spec: &Arc<JordanSpec>, rng: &mut R, bound: i64) -> ProjPointC {
    loop {
        let flat: Vec<Scalar> = (0..source_len(spec)).map(|_| spec.field().random(rng, bound)).collect();
        if let Ok(c) = ProjPointC::new(spec, flat) {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn ints(f: FieldSpec, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn real_veronese_is_outer_product() {
        let s = JordanSpec::from_ints(Q, &[], &[1, 1, 1]).unwrap();
        let c = ProjPointC::from_ints(&s, &[1, 2, 3]).unwrap();
        let x = veronese(&c).unwrap();
        let rows = [[1, 2, 3], [2, 4, 6], [3, 6, 9]];
        let expected: Vec<Vec<Vec<Scalar>>> =
            rows.iter().map(|r| r.iter().map(|&v| vec![Q.from_i64(v)]).collect()).collect();
        assert!(x.proj_eq(&ProjPointJ::new(s.from_matrix(&expected).unwrap()).unwrap()).unwrap());
        assert!(x.elem().is_rank_one().unwrap());
        assert!(veronese_inverse(&x).unwrap().proj_eq(&c).unwrap());
    }

    #[test]
    fn quaternion_point_on_x_j() {
        // with b = ⟨1,1,−3⟩ the point (1, e₁, 1) has q = −1, so use b₃ = −2
        let s = JordanSpec::from_ints(Q, &[-1, -1], &[1, 1, -3]).unwrap();
        let c = ProjPointC::from_ints(&s, &[1, 0, 0, 0, 0, 1, 0, 0, 1]).unwrap();
        assert_eq!(c.quadric_value(), Q.from_i64(-1));
        assert_eq!(veronese(&c).unwrap().elem().trace(), Q.from_i64(-1));
        let s = JordanSpec::from_ints(Q, &[-1, -1], &[1, 1, -2]).unwrap();
        let c = ProjPointC::from_ints(&s, &[1, 0, 0, 0, 0, 1, 0, 0, 1]).unwrap();
        assert!(c.on_quadric());
        let x = veronese(&c).unwrap();
        assert!(x.elem().trace().is_zero());
        assert!(x.elem().is_rank_one().unwrap());
    }

    #[test]
    fn last_basis_point_maps_to_e_nn() {
        let s = JordanSpec::from_ints(Q, &[-1], &[1, 2, 3]).unwrap();
        let c = ProjPointC::from_ints(&s, &[0, 0, 0, 0, 1]).unwrap();
        let x = veronese(&c).unwrap();
        assert_eq!(x, ProjPointJ::new(s.e(2)).unwrap());
        assert_eq!(veronese_inverse(&x).unwrap(), c);
        assert_eq!(
            veronese_inverse(&ProjPointJ::new(s.e(0)).unwrap()).unwrap_err(),
            BirationalError::BasePoint
        );
    }

    #[test]
    fn z1_in_split_quaternions() {
        let f7 = FieldSpec::prime(7).unwrap();
        let s = JordanSpec::from_ints(f7, &[1, 1], &[1, 1, 1]).unwrap();
        // z = e0 + e1 has norm 1 − 1 = 0
        let z = ints(f7, &[1, 1, 0, 0]);
        let c = ProjPointC::from_parts(&s, &[z.clone(), z], f7.zero()).unwrap();
        assert!(in_z1(&c));
        assert!(z1_matrix(&c).square().is_zero());
        assert_eq!(veronese(&c).unwrap_err(), BirationalError::BasePoint);
        let c = ProjPointC::from_ints(&s, &[1, 1, 0, 0, 1, 1, 0, 0, 1]).unwrap();
        assert!(!in_z1(&c));
    }

    #[test]
    fn z2_membership() {
        let s = JordanSpec::from_ints(Q, &[], &[1, 1, -2]).unwrap();
        let x = veronese(&ProjPointC::from_ints(&s, &[1, 1, 0]).unwrap()).unwrap();
        assert!(in_z2(&x));
        let y = veronese(&ProjPointC::from_ints(&s, &[1, 1, 1]).unwrap()).unwrap();
        assert!(!in_z2(&y));
    }

    #[test]
    fn transposition_small_example() {
        let s = JordanSpec::from_ints(Q, &[], &[1, 2, -3]).unwrap();
        let c = ProjPointC::from_ints(&s, &[1, 1, 1]).unwrap();
        assert!(c.on_quadric());
        let t = transposition_map(&c).unwrap();
        assert_eq!(t.flat(), ints(Q, &[1, 1, 1]).as_slice());
        assert_eq!(t.spec().b(), ints(Q, &[1, -3, 2]).as_slice());
        assert!(t.on_quadric());
        let back = transposition_map(&t).unwrap();
        assert!(back.proj_eq(&c).unwrap());
        let base = ProjPointC::from_ints(&s, &[1, 0, 0]).unwrap();
        assert_eq!(transposition_map(&base).unwrap_err(), BirationalError::BasePoint);
    }

    #[test]
    fn projective_equality() {
        assert!(projective_eq(&ints(Q, &[1, 2, 3]), &ints(Q, &[2, 4, 6])).unwrap());
        assert!(!projective_eq(&ints(Q, &[1, 0, 0]), &ints(Q, &[0, 1, 0])).unwrap());
        assert!(projective_eq(&ints(Q, &[0, 1, 1, 0]), &ints(Q, &[0, 2, 2, 0])).unwrap());
        assert_eq!(projective_eq(&ints(Q, &[1]), &ints(Q, &[1, 0])), Err(BirationalError::AmbientMismatch));
    }

    #[test]
    fn enumeration_is_a_bijection() {
        let f3 = FieldSpec::prime(3).unwrap();
        let count = projective_count(3, 3);
        assert_eq!(count, 13);
        let pts: std::collections::HashSet<Vec<Scalar>> = (0..count).map(|i| projective_point(f3, 3, i)).collect();
        assert_eq!(pts.len(), 13);
        for p in &pts {
            let lead = p.iter().find(|x| !x.is_zero()).unwrap();
            assert!(lead.is_one());
        }
        assert_eq!(affine_chart_point(f3, 3, 5), ints(f3, &[1, 2, 1]));
    }

    #[test]
    fn sampled_points_lie_on_quadric() {
        use rand::SeedableRng;
        let s = JordanSpec::from_ints(Q, &[-1, -1], &[1, 2, -7]).unwrap();
        let p0 = find_quadric_point(&s, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            if let Some(p) = sample_quadric_point(&p0, &mut rng, 4) {
                assert!(p.on_quadric());
            }
        }
    }
}
