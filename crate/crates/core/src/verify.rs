//! Batch verification sweeps. Each returns a [`VerificationReport`] whose
//! cases are independent, so they run through [`Exec`].

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::birational::{
    find_quadric_point, in_z1, in_z2, projective_count, projective_point, quadric_form, random_source_point,
    sample_quadric_point, source_len, veronese_inverse, veronese_matrix, z1_matrix, BirationalError, ProjPointC,
    ProjPointJ,
};
use crate::jordan::{JordanError, JordanSpec};
use crate::motives::{decompose_xj, poincare_xj_recursive, verify_blowup, verify_krashen, MotiveError};
use crate::par::Exec;
use crate::quadform::{witt_index_lower_bound, QuadForm};
use crate::report::{CaseResult, VerificationReport};
use crate::rootsys::{check_orbit_dims, xj_homogeneous_space};
use crate::scalars::FieldSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub exec: Exec,
    pub seed: u64,
    /// seeded points per configuration when a sweep is not exhaustive
    pub samples: usize,
    /// largest point count enumerated exhaustively
    pub exhaustive_limit: u64,
    /// most points per configuration whose image gets the (costly)
    /// `is_rank_one` check; spread evenly over the sweep
    pub rank_one_budget: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { exec: Exec::Parallel, seed: 20080, samples: 100, exhaustive_limit: 20_000, rank_one_budget: 5_000 }
    }
}

/// A ChaCha stream per sample index, so results do not depend on the
/// execution strategy.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `r ∈ {0,1,2}` with `3 ≤ n ≤ n_max`, then `(3,3)`.
pub fn jordan_cases(n_max: u32) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = (0..=2).flat_map(|r| (3..=n_max).map(move |n| (r, n))).collect();
    v.push((3, 3));
    v
}

fn case_id(r: u32, n: u32) -> String {
    format!("r={r} n={n:02}")
}

fn collect<E>(suite: &str, results: Vec<Result<CaseResult, E>>) -> Result<VerificationReport, E> {
    Ok(VerificationReport::new(suite, results.into_iter().collect::<Result<Vec<_>, E>>()?))
}

pub fn blowup_suite(cases: &[(u32, u32)], exec: Exec) -> Result<VerificationReport, MotiveError> {
    let results = exec.map_slice(cases, |&(r, n)| {
        let rep = verify_blowup(r, n)?;
        let mut case = CaseResult::new(case_id(r, n), rep.equal, &rep.lhs, &rep.rhs);
        if let (Some(d1), Some(eq)) = (rep.printed_d1, rep.printed_equal) {
            case = case.with_note(format!("c1 = {}; exponent {d1} in place of c1 balances: {eq}", rep.c1.unwrap_or(0)));
        }
        Ok(case)
    });
    collect("blowup", results)
}

/// Two cases per `n`: the literal reading must be unbalanced and the
/// variant balanced.
pub fn krashen_suite(ns: &[u32], exec: Exec) -> Result<VerificationReport, MotiveError> {
    let results = exec.map_slice(ns, |&n| {
        let rep = verify_krashen(n)?;
        Ok(vec![
            CaseResult::new(format!("n={n:02} literal unbalanced"), !rep.literal_equal, &rep.literal_lhs, &rep.rhs)
                .with_note(format!("totals {} vs {}", rep.literal_lhs.total(), rep.rhs.total())),
            CaseResult::new(format!("n={n:02} variant balanced"), rep.variant_equal, &rep.variant_lhs, &rep.rhs),
        ])
    });
    let cases = results.into_iter().collect::<Result<Vec<_>, MotiveError>>()?;
    Ok(VerificationReport::new("krashen", cases.into_iter().flatten().collect()))
}

/// Recursive Poincaré polynomial against the closed decomposition, plus
/// palindromy about `dim X(J)`.
pub fn recursion_suite(cases: &[(u32, u32)], exec: Exec) -> Result<VerificationReport, MotiveError> {
    let results = exec.map_slice(cases, |&(r, n)| {
        let closed = decompose_xj(r, n)?.profile();
        let recursive = poincare_xj_recursive(r, n)?;
        let dim = ((1usize << r) * (n as usize - 1)) - 1;
        let pass = closed == recursive && closed.is_palindromic_about(dim);
        Ok(CaseResult::new(case_id(r, n), pass, &recursive, &closed))
    });
    collect("recursion", results)
}

/// `χ(X(J))` from the profile against `|W| / |W_P|`.
pub fn euler_suite(cases: &[(u32, u32)], exec: Exec) -> Result<VerificationReport, String> {
    let results = exec.map_slice(cases, |&(r, n)| {
        let total = decompose_xj(r, n).map_err(|e| e.to_string())?.profile().total() as u128;
        let (g, th) = xj_homogeneous_space(r, n).map_err(|e| e.to_string())?;
        let ratio = g.euler_characteristic(&th).map_err(|e| e.to_string())?;
        Ok(CaseResult::compare(case_id(r, n), total, ratio).with_note(format!("{g}/P{th:?}")))
    });
    collect("euler", results)
}

pub fn orbit_suite(cases: &[(u32, u32)], exec: Exec) -> Result<VerificationReport, String> {
    let results = exec.map_slice(cases, |&(r, n)| {
        let rep = check_orbit_dims(r, n).map_err(|e| e.to_string())?;
        let expected: Vec<i64> = rep.lines.iter().map(|l| l.expected).collect();
        let got: Vec<i64> = rep.lines.iter().map(|l| l.got).collect();
        let mut case = CaseResult::new(case_id(r, n), rep.pass, got, expected);
        if let Some(bad) = rep.lines.iter().find(|l| !l.pass) {
            case = case.with_note(format!("first failing line: {}", bad.id));
        }
        Ok(case)
    });
    collect("orbits", results)
}

/// Witt index from invariants against repeated exhaustive search, over
/// `𝔽_p`. Forms are diagonal with every square-class pattern of each
/// dimension up to `max_dim`, with coefficients drawn from the residues,
/// and all coefficient tuples in dimension at most `full_dim`.
pub fn fp_witt_suite(primes: &[u64], max_dim: usize, full_dim: usize, exec: Exec) -> Result<VerificationReport, String> {
    let mut forms: Vec<(u64, Vec<i64>)> = Vec::new();
    for &p in primes {
        let f = FieldSpec::prime(p).map_err(|e| e.to_string())?;
        let squares: Vec<i64> = (1..p as i64).filter(|&v| f.from_i64(v).is_square().unwrap_or(false)).collect();
        let non_squares: Vec<i64> = (1..p as i64).filter(|&v| !squares.contains(&v)).collect();
        for m in 1..=max_dim {
            for k in 0..=m {
                // k non-squares, spread over the classes
                let coeffs = (0..m)
                    .map(|i| if i < k { non_squares[(i * 3 + m) % non_squares.len()] } else { squares[(i * 5 + k) % squares.len()] })
                    .collect();
                forms.push((p, coeffs));
            }
        }
        for m in 1..=full_dim {
            let total = (p - 1).pow(m as u32);
            for idx in 0..total {
                let mut rest = idx;
                let coeffs = (0..m)
                    .map(|_| {
                        let v = (rest % (p - 1)) as i64 + 1;
                        rest /= p - 1;
                        v
                    })
                    .collect();
                forms.push((p, coeffs));
            }
        }
    }
    let results = exec.map_slice(&forms, |(p, coeffs)| {
        let f = FieldSpec::prime(*p).map_err(|e| e.to_string())?;
        let q = QuadForm::from_ints(f, coeffs).map_err(|e| e.to_string())?;
        let invariant = q.witt_index().map_err(|e| e.to_string())?;
        let search = witt_index_lower_bound(&q, 0);
        let id = format!("p={p:02} dim={} {:?}", coeffs.len(), coeffs);
        Ok(CaseResult::compare(id, invariant, search))
    });
    collect("fp-witt", results)
}

/// Algebras used by the birational sweeps: `a = (−1, 2, −2)` and
/// `b = (1, −1, 2, −4, 8, …)` truncated. Every entry is ± a power of 2, so
/// nothing vanishes modulo an odd prime, and `b₁ = −b₂` makes the quadric
/// isotropic over every field.
pub fn standard_spec(field: FieldSpec, r: u32, n: u32) -> Result<Arc<JordanSpec>, JordanError> {
    let a = [-1, 2, -2];
    let b: Vec<i64> = (0..n).map(|i| if i == 0 { 1 } else { -(-2i64).pow(i - 1) }).collect();
    JordanSpec::from_ints(field, &a[..r as usize], &b)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BirationalTally {
    pub points: u64,
    /// `c_n ≠ 0`, round trip checked
    pub round_trips: u64,
    /// base points of `v₂`
    pub z1: u64,
    /// `c_n = 0` off `Z₁`: the image lies in `Z₂`
    pub z2: u64,
    pub on_quadric: u64,
    pub rank_one_checked: u64,
}

impl BirationalTally {
    fn add(mut self, o: BirationalTally) -> Self {
        self.points += o.points;
        self.round_trips += o.round_trips;
        self.z1 += o.z1;
        self.z2 += o.z2;
        self.on_quadric += o.on_quadric;
        self.rank_one_checked += o.rank_one_checked;
        self
    }
}

/// Every pointwise property of `v₂` at `c`:
/// `in_Z1(c) ⟺ (c_n = 0 ∧ x(c)² = 0) ⟺ v₂(c)` is a base point;
/// otherwise `T(v₂(c)) = q(c)`, `v₂(c)` is rank one (if `check_rank`), and
/// `v₂⁻¹(v₂(c)) ~ c` when `c_n ≠ 0` while `v₂(c) ∈ Z₂` when `c_n = 0`.
pub fn check_birational_point(c: &ProjPointC, q: &QuadForm, check_rank: bool) -> Result<BirationalTally, String> {
    let mut t = BirationalTally { points: 1, ..Default::default() };
    let qc = q.evaluate(c.flat()).map_err(|e| e.to_string())?;
    t.on_quadric = qc.is_zero() as u64;
    let x = veronese_matrix(c).map_err(|e| e.to_string())?;
    let base = x.is_zero();
    let z1 = in_z1(c);
    let square_zero = c.c_n().is_zero() && z1_matrix(c).square().is_zero();
    if base != z1 || z1 != square_zero {
        return Err(format!("{:?}: base point {base}, in_Z1 {z1}, x(c)^2 = 0 {square_zero}", c.flat()));
    }
    if base {
        t.z1 = 1;
        return Ok(t);
    }
    if x.trace() != qc {
        return Err(format!("{:?}: trace {} but q = {qc}", c.flat(), x.trace()));
    }
    if check_rank {
        t.rank_one_checked = 1;
        if !x.is_rank_one().map_err(|e| e.to_string())? {
            return Err(format!("{:?}: image is not rank one", c.flat()));
        }
    }
    let image = ProjPointJ::new(x).map_err(|e| e.to_string())?;
    if c.c_n().is_zero() {
        t.z2 = 1;
        if !in_z2(&image) || veronese_inverse(&image) != Err(BirationalError::BasePoint) {
            return Err(format!("{:?}: c_n = 0 but the image is not a base point of the inverse", c.flat()));
        }
    } else {
        t.round_trips = 1;
        let back = veronese_inverse(&image).map_err(|e| e.to_string())?;
        if !back.proj_eq(c).map_err(|e| e.to_string())? {
            return Err(format!("{:?}: round trip gave {:?}", c.flat(), back.flat()));
        }
    }
    Ok(t)
}

fn sweep_points<F>(opts: &SweepOptions, count: u64, point: F, q: &QuadForm) -> Result<BirationalTally, String>
where
    F: Fn(u64) -> Option<ProjPointC> + Sync + Send,
{
    let stride = count.div_ceil(opts.rank_one_budget.max(1)).max(1);
    let tallies = opts.exec.map_range(0..count, |i| match point(i) {
        Some(c) => check_birational_point(&c, q, i % stride == 0),
        None => Ok(BirationalTally::default()),
    });
    tallies.into_iter().try_fold(BirationalTally::default(), |acc, t| Ok(acc.add(t?)))
}

/// All of `ℙ^{len−1}(𝔽_p)` when it has at most `exhaustive_limit` points,
/// otherwise `samples` seeded points of it.
pub fn birational_case(spec: &Arc<JordanSpec>, opts: &SweepOptions) -> Result<(BirationalTally, bool), String> {
    let q = quadric_form(spec);
    let len = source_len(spec);
    let f = spec.field();
    match f.order() {
        Some(p) if projective_count(p, len) <= opts.exhaustive_limit => {
            let total = projective_count(p, len);
            let t = sweep_points(opts, total, |i| ProjPointC::new(spec, projective_point(f, len, i)).ok(), &q)?;
            Ok((t, true))
        }
        Some(_) => {
            let t = sweep_points(
                opts,
                opts.samples as u64,
                |i| Some(random_source_point(spec, &mut sample_rng(opts.seed, i), 1 << 20)),
                &q,
            )?;
            Ok((t, false))
        }
        None => {
            // half on the quadric, half anywhere
            let p0 = find_quadric_point(spec, 2).ok_or("no rational point on the quadric")?;
            let n = opts.samples as u64;
            let t = sweep_points(
                opts,
                2 * n,
                |i| {
                    let mut rng = sample_rng(opts.seed, i);
                    if i < n {
                        sample_quadric_point(&p0, &mut rng, 6)
                    } else {
                        Some(random_source_point(spec, &mut rng, 6))
                    }
                },
                &q,
            )?;
            Ok((t, false))
        }
    }
}

/// The birational checks over each field for `r ∈ rs`, `n ∈ ns`.
pub fn roundtrip_suite(fields: &[FieldSpec], rs: &[u32], ns: &[u32], opts: &SweepOptions) -> VerificationReport {
    let mut cases = Vec::new();
    for &f in fields {
        for &r in rs {
            for &n in ns {
                if r == 3 && n != 3 {
                    continue;
                }
                let id = format!("{f} r={r} n={n:02}");
                let case = match standard_spec(f, r, n).map_err(|e| e.to_string()).and_then(|s| birational_case(&s, opts)) {
                    Ok((t, exhaustive)) => {
                        let mode = if exhaustive { "exhaustive" } else { "sampled" };
                        CaseResult::new(id, true, t, mode)
                    }
                    Err(e) => CaseResult::new(id, false, e, "no failure"),
                };
                cases.push(case);
            }
        }
    }
    VerificationReport::new("roundtrip", cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites() {
        let cases = [(1, 3), (2, 4), (3, 3)];
        assert!(blowup_suite(&cases, Exec::Parallel).unwrap().pass);
        assert!(recursion_suite(&cases, Exec::Sequential).unwrap().pass);
        assert!(euler_suite(&cases, Exec::Parallel).unwrap().pass);
        assert!(orbit_suite(&cases, Exec::Parallel).unwrap().pass);
        let k = krashen_suite(&[3, 4], Exec::Parallel).unwrap();
        assert!(k.pass);
        assert_eq!(k.cases.len(), 4);
    }

    #[test]
    fn blowup_ids_sort_numerically() {
        let rep = blowup_suite(&jordan_cases(10)[16..24], Exec::Parallel).unwrap();
        assert_eq!(rep.cases.len(), 8);
        assert_eq!(rep.cases[0].id, "r=2 n=03");
        assert_eq!(rep.cases[7].id, "r=2 n=10");
    }

    #[test]
    fn fp_witt_small() {
        let rep = fp_witt_suite(&[3, 5], 5, 2, Exec::Parallel).unwrap();
        assert!(rep.pass, "{:?}", rep.failures().next());
    }

    #[test]
    fn roundtrip_small_fields() {
        let opts = SweepOptions { samples: 20, ..Default::default() };
        let f3 = FieldSpec::prime(3).unwrap();
        let rep = roundtrip_suite(&[f3, FieldSpec::Rationals], &[0, 1], &[3], &opts);
        assert!(rep.pass, "{:?}", rep.failures().next());
        assert_eq!(rep.cases[0].rhs, "exhaustive");
    }

    #[test]
    fn strategies_agree() {
        let f = FieldSpec::prime(3).unwrap();
        let spec = standard_spec(f, 1, 3).unwrap();
        let seq = SweepOptions { exec: Exec::Sequential, ..Default::default() };
        let par = SweepOptions { exec: Exec::Parallel, ..Default::default() };
        assert_eq!(birational_case(&spec, &seq).unwrap(), birational_case(&spec, &par).unwrap());
    }
}
