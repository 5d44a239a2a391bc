//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use jordan_motive::birational::{
    in_z1, projective_count, projective_point, source_len, transposed_spec, BirationalError, ProjPointC,
};
use jordan_motive::cayley_dickson::mul_doubling;
use jordan_motive::jordan::JordanSpec;
use jordan_motive::rootsys::{RootSystem, ThetaSet};
use jordan_motive::scalars::{FieldSpec, Scalar};

fn conj(x: &[Scalar]) -> Vec<Scalar> {
    x.iter().enumerate().map(|(i, c)| if i == 0 { c.clone() } else { -c }).collect()
}

/// `x * y = x·ȳ`, through the recursive doubling product.
pub fn star(params: &[Scalar], x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    mul_doubling(params, x, &conj(y))
}

/// The transposition map written out with `*`, in the layout of the
/// transposed algebra:
/// `[c₁*c_{n−1}, …, c_{n−2}*c_{n−1}, c_n*c_{n−1}, c_{n−1}*c_{n−1}]·b_{n−1}`.
/// With `mirrored = false` the factors are swapped (`c_{n−1}*c_i`), which
/// agrees with the mirrored order up to conjugating each slot.
pub fn totaro_transposition(c: &ProjPointC, mirrored: bool) -> Vec<Scalar> {
    let spec = c.spec();
    let params = spec.cd().params();
    let n = spec.n();
    let d = spec.d();
    let f = spec.field();
    let mut cn = vec![f.zero(); d];
    cn[0] = c.c_n().clone();
    let pivot = c.c(n - 2);
    let apply = |x: &[Scalar]| if mirrored { star(params, x, pivot) } else { star(params, pivot, x) };
    let bn1 = &spec.b()[n - 2];
    let mut out = Vec::with_capacity(source_len(spec));
    for i in 0..n - 2 {
        out.extend(apply(c.c(i)).iter().map(|t| t * bn1));
    }
    out.extend(apply(&cn).iter().map(|t| t * bn1));
    out.push(&star(params, pivot, pivot)[0] * bn1);
    out
}

/// Conjugates every `2^r`-block of a flat point (the trailing scalar is
/// left alone).
pub fn conjugate_slots(spec: &JordanSpec, flat: &[Scalar]) -> Vec<Scalar> {
    let d = spec.d();
    let mut out: Vec<Scalar> = flat[..flat.len() - 1].chunks(d).flat_map(conj).collect();
    out.push(flat[flat.len() - 1].clone());
    out
}

/// The algebra whose points the transposition lands on.
pub fn transposed(spec: &Arc<JordanSpec>) -> Arc<JordanSpec> {
    transposed_spec(spec)
}

/// `|W|` by closing a regular vector under the simple reflections.
pub fn weyl_orbit_size(rs: &RootSystem, nodes: &[usize]) -> usize {
    let simple = rs.simple_roots();
    let dim = simple[0].len();
    // generic enough to have a trivial stabilizer; multiples of 8 keep the
    // reflections integral in doubled coordinates
    let start: Vec<i64> = (0..dim).map(|k| 8 * 10i64.pow((dim - k) as u32) + 8 * (k as i64 % 3)).collect();
    let gens: Vec<&Vec<i64>> = nodes.iter().map(|&i| &simple[i - 1]).collect();
    let dot = |a: &[i64], b: &[i64]| -> i64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for a in &gens {
            let num = 2 * dot(&v, a);
            let den = dot(a, a);
            assert_eq!(num % den, 0, "reflection leaves the lattice");
            let k = num / den;
            let w: Vec<i64> = v.iter().zip(a.iter()).map(|(x, y)| x - k * y).collect();
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.len()
}

/// `|W| / |W_θ|`, both sides by orbit enumeration.
pub fn euler_by_orbits(rs: &RootSystem, theta: &ThetaSet) -> usize {
    let all: Vec<usize> = (1..=rs.rank()).collect();
    let levi: Vec<usize> = all.iter().copied().filter(|i| !theta.contains(i)).collect();
    weyl_orbit_size(rs, &all) / weyl_orbit_size(rs, &levi)
}

/// Witt index of `φ ⊗ b` over ℚ for `φ` a sum of `2^r ≥ 4` squares: such a
/// `φ` represents every positive rational, so `φ ⊗ ⟨x⟩ ≅ φ ⊗ ⟨sign x⟩` and
/// the index is `2^r · min(#positive, #negative)`.
pub fn definite_pfister_witt(r: u32, b: &[i64]) -> usize {
    assert!(r >= 2);
    let pos = b.iter().filter(|&&x| x > 0).count();
    let neg = b.len() - pos;
    (1 << r) * pos.min(neg)
}

/// Points of `Z₁` on the hyperplane `c_n = 0`, by enumeration.
pub fn count_z1_points(spec: &Arc<JordanSpec>) -> u64 {
    let f = spec.field();
    let p = f.order().expect("finite field");
    let len = source_len(spec);
    (0..projective_count(p, len - 1))
        .filter(|&i| {
            let mut flat = projective_point(f, len - 1, i);
            flat.push(f.zero());
            in_z1(&ProjPointC::new(spec, flat).expect("nonzero"))
        })
        .count() as u64
}

/// `|ℙ^m(𝔽_p)|`.
pub fn pm(p: u64, m: u32) -> u64 {
    (0..=m).map(|k| p.pow(k)).sum()
}

/// `Z₁` point counts from its geometry: `ℙ^{n−2} ⊔ ℙ^{n−2}` (r = 1, split),
/// `ℙ¹ × ℙ^{2n−3}` (r = 2), empty for an anisotropic norm.
pub fn z1_model_count(p: u64, r: u32, n: u32, split: bool) -> u64 {
    match (r, split) {
        (_, false) | (0, _) => 0,
        (1, true) => 2 * pm(p, n - 2),
        (2, true) => pm(p, 1) * pm(p, 2 * n - 3),
        _ => unreachable!("not modelled"),
    }
}

pub fn is_base(e: &Result<ProjPointC, BirationalError>) -> bool {
    matches!(e, Err(BirationalError::BasePoint))
}

pub fn ints(f: FieldSpec, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}
