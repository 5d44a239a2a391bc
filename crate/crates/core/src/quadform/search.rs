//! Brute-force isotropic vectors, used as an oracle for the invariant-based
//! isotropy and Witt index computations.

use super::QuadForm;
use crate::linalg::{diagonalize_symmetric, nullspace};
use crate::scalars::{FieldSpec, Scalar};

/// Values tried per coordinate: all residues over 𝔽_p, `0, 1, −1, …, ±bound`
/// over ℚ.
fn coordinate_values(field: FieldSpec, bound: u32) -> Vec<Scalar> {
    match field.order() {
        Some(p) => (0..p as i64).map(|v| field.from_i64(v)).collect(),
        None => {
            let mut vals = vec![field.zero()];
            for k in 1..=bound as i64 {
                vals.push(field.from_i64(k));
                vals.push(field.from_i64(-k));
            }
            vals
        }
    }
}

/// First nonzero `v` with `f(v) = 0`.
///
/// Over 𝔽_p the search is exhaustive over 𝔽_p^dim (up to scaling) and `bound`
/// is ignored; over ℚ it covers the integer box `[−bound, bound]^dim`, so
/// `None` there is not a proof of anisotropy. Vectors are visited with their
/// first nonzero coordinate `1` (𝔽_p) or positive (ℚ), supports ending in
/// the last coordinates first.
pub fn isotropic_vector_search(f: &QuadForm, bound: u32) -> Option<Vec<Scalar>> {
    let field = f.field();
    let vals = coordinate_values(field, bound);
    let m = f.dim();
    let zero = field.zero();
    // leading nonzero coordinate at `lead`, values after it free
    for lead in (0..m).rev() {
        let leads: Vec<&Scalar> = match field.order() {
            Some(_) => vec![&vals[1]],
            None => vals.iter().skip(1).step_by(2).collect(),
        };
        for lead_val in leads {
            let tail = m - lead - 1;
            let mut idx = vec![0usize; tail];
            loop {
                let mut v = vec![zero.clone(); m];
                v[lead] = lead_val.clone();
                for (k, &i) in idx.iter().enumerate() {
                    v[lead + 1 + k] = vals[i].clone();
                }
                if f.evaluate(&v).expect("dimension matches").is_zero() {
                    return Some(v);
                }
                if !advance(&mut idx, vals.len()) {
                    break;
                }
            }
        }
    }
    None
}

fn advance(idx: &mut [usize], radix: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Counts hyperbolic planes found by repeated search: each isotropic vector
/// `v` is paired with a basis vector `w` with `b(v, w) ≠ 0`, and the search
/// continues on the diagonalised orthogonal complement of `⟨v, w⟩`.
///
/// Exact over 𝔽_p. Over ℚ it is a lower bound, since the bounded search may
/// miss isotropic vectors.
pub fn witt_index_lower_bound(f: &QuadForm, bound: u32) -> usize {
    let field = f.field();
    let mut form = f.clone();
    let mut planes = 0;
    while form.dim() >= 2 {
        let Some(v) = isotropic_vector_search(&form, bound) else {
            break;
        };
        planes += 1;
        let m = form.dim();
        let d = form.coeffs();
        let i = (0..m).find(|&i| !v[i].is_zero()).expect("nonzero vector");
        let mut w = vec![field.zero(); m];
        w[i] = field.one();
        let constraints: Vec<Vec<Scalar>> = [&v, &w]
            .iter()
            .map(|u| d.iter().zip(u.iter()).map(|(a, b)| a * b).collect())
            .collect();
        let basis = nullspace(field, &constraints, m);
        if basis.is_empty() {
            break;
        }
        let gram: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| form.polar(x, y)).collect())
            .collect();
        let diag = diagonalize_symmetric(gram);
        form = QuadForm::new(diag).expect("complement of a non-degenerate plane is non-degenerate");
    }
    planes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf(field: FieldSpec, c: &[i64]) -> QuadForm {
        QuadForm::from_ints(field, c).unwrap()
    }

    #[test]
    fn rational_examples() {
        let q = FieldSpec::Rationals;
        let ones = |n: usize| vec![q.one(); n];
        assert_eq!(isotropic_vector_search(&qf(q, &[1, 2, -3]), 1), Some(ones(3)));
        assert_eq!(isotropic_vector_search(&qf(q, &[1, -1]), 1), Some(ones(2)));
        assert_eq!(isotropic_vector_search(&qf(q, &[1, 1, 1]), 3), None);
    }

    #[test]
    fn sum_of_two_squares_mod_seven_is_anisotropic() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(isotropic_vector_search(&qf(f7, &[1, 1]), 0), None);
        let f5 = FieldSpec::prime(5).unwrap();
        let v = isotropic_vector_search(&qf(f5, &[1, 1]), 0).unwrap();
        assert!(qf(f5, &[1, 1]).evaluate(&v).unwrap().is_zero());
    }

    #[test]
    fn witt_lower_bound_small_cases() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(witt_index_lower_bound(&qf(f7, &[1, 1, 1, 1]), 0), 2);
        assert_eq!(witt_index_lower_bound(&qf(f7, &[1, 1, 1, 3]), 0), 1);
        let q = FieldSpec::Rationals;
        assert_eq!(witt_index_lower_bound(&qf(q, &[1, -1, 1, -1]), 2), 2);
        assert_eq!(witt_index_lower_bound(&qf(q, &[1, 1, 1, 1]), 2), 0);
    }
}
