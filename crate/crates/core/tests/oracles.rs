mod common;

use jordan_motive::birational::{
    find_quadric_point, sample_quadric_point, transposition_map, veronese, BirationalError, ProjPointC,
};
use jordan_motive::jordan::JordanSpec;
use jordan_motive::quadform::{witt_index_lower_bound, QuadForm};
use jordan_motive::rootsys::{theta, xj_homogeneous_space, RootSystem, RootType};
use jordan_motive::scalars::FieldSpec;
use jordan_motive::verify::{sample_rng, standard_spec};

const Q: FieldSpec = FieldSpec::Rationals;

#[test]
fn weyl_orders_by_orbit_enumeration() {
    let systems = [
        (RootType::A, 1..=5),
        (RootType::B, 2..=5),
        (RootType::C, 2..=5),
        (RootType::D, 2..=5),
        (RootType::F4, 4..=4),
    ];
    for (kind, ranks) in systems {
        for m in ranks {
            let rs = RootSystem::new(kind, m).unwrap();
            let all: Vec<usize> = (1..=m).collect();
            assert_eq!(common::weyl_orbit_size(&rs, &all) as u128, rs.weyl_order(), "{rs}");
        }
    }
}

#[test]
fn euler_characteristics_by_orbit_enumeration() {
    for (r, n) in [(0, 3), (0, 4), (0, 5), (0, 6), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 3)] {
        let (g, th) = xj_homogeneous_space(r, n).unwrap();
        assert_eq!(g.euler_characteristic(&th).unwrap(), common::euler_by_orbits(&g, &th) as u128, "({r},{n})");
    }
    let c3 = RootSystem::new(RootType::C, 3).unwrap();
    assert_eq!(common::euler_by_orbits(&c3, &theta(&[2])), 12);
}

#[test]
fn bourbaki_numbering() {
    let f4 = RootSystem::new(RootType::F4, 4).unwrap();
    assert_eq!(f4.simple_roots()[3], vec![1, -1, -1, -1]);
    // α₄ is short, α₁ long
    let norm = |v: &Vec<i64>| v.iter().map(|x| x * x).sum::<i64>();
    assert_eq!(norm(&f4.simple_roots()[0]), 2 * norm(&f4.simple_roots()[3]));
    let c3 = RootSystem::new(RootType::C, 3).unwrap();
    assert_eq!(c3.simple_roots()[2], vec![0, 0, 4]);
    let d4 = RootSystem::new(RootType::D, 4).unwrap();
    assert_eq!(d4.simple_roots()[3], vec![0, 0, 2, 2]);
}

#[test]
fn transposition_matches_star_formula() {
    for (r, n) in [(0, 3), (1, 3), (1, 4), (2, 3), (2, 4), (3, 3)] {
        let spec = standard_spec(Q, r, n).unwrap();
        let p0 = find_quadric_point(&spec, 2).unwrap();
        for i in 0..30 {
            let Some(c) = sample_quadric_point(&p0, &mut sample_rng(7, i), 5) else { continue };
            let t = match transposition_map(&c) {
                Err(BirationalError::BasePoint) => continue,
                t => t.unwrap(),
            };
            let star = common::totaro_transposition(&c, true);
            assert!(jordan_motive::birational::projective_eq(t.flat(), &star).unwrap(), "({r},{n}) {:?}", c.flat());
            match transposition_map(&t) {
                Ok(back) => assert!(back.proj_eq(&c).unwrap()),
                Err(e) => assert_eq!(e, BirationalError::BasePoint),
            }
        }
    }
}

#[test]
fn z1_point_counts_match_geometry() {
    for p in [3u64, 5, 7] {
        let f = FieldSpec::prime(p).unwrap();
        for (r, n) in [(1, 3), (1, 4), (2, 3)] {
            // a = 1 makes the norm split for r = 1
            let spec = JordanSpec::from_ints(f, &[1, -1][..r], &[1, -1, 2, -4][..n]).unwrap();
            assert_eq!(common::count_z1_points(&spec), common::z1_model_count(p, r as u32, n as u32, true), "F_{p} ({r},{n})");
        }
    }
}

#[test]
fn z1_is_empty_for_definite_norms_over_q() {
    let spec = JordanSpec::from_ints(Q, &[-1, -1], &[1, 1, -1]).unwrap();
    for idx in 1..3u64.pow(8) {
        let mut rest = idx;
        let mut flat: Vec<i64> = (0..8)
            .map(|_| {
                let v = (rest % 3) as i64 - 1;
                rest /= 3;
                v
            })
            .collect();
        flat.push(0);
        let Ok(c) = ProjPointC::from_ints(&spec, &flat) else { continue };
        assert!(veronese(&c).is_ok());
    }
}

#[test]
fn definite_pfister_multiples() {
    for (r, b) in [(2u32, vec![1i64, -3]), (2, vec![1, 2, -5]), (3, vec![1, 1]), (3, vec![2, -7, 1])] {
        let phi = QuadForm::from_ints(Q, &vec![1; 1 << r]).unwrap();
        let form = phi.tensor(&QuadForm::from_ints(Q, &b).unwrap()).unwrap();
        assert_eq!(form.witt_index().unwrap(), common::definite_pfister_witt(r, &b), "{b:?}");
    }
}

#[test]
fn rational_witt_index_dominates_search() {
    for d in [vec![1i64, -1, 2], vec![1, 1, 1, -7], vec![1, 2, -3, -6], vec![3, 5, -15, 1, -1]] {
        let q = QuadForm::from_ints(Q, &d).unwrap();
        assert!(q.witt_index().unwrap() >= witt_index_lower_bound(&q, 3), "{d:?}");
    }
    // ⟨1, 1, 1, −7⟩ is anisotropic over ℚ₂, so no search can succeed
    let q = QuadForm::from_ints(Q, &[1, 1, 1, -7]).unwrap();
    assert_eq!(q.witt_index().unwrap(), 0);
}

#[test]
fn finite_field_witt_matches_search_all_small_forms() {
    for p in [3u64, 5, 7] {
        let f = FieldSpec::prime(p).unwrap();
        for a in 1..p as i64 {
            for b in 1..p as i64 {
                for c in 1..p as i64 {
                    for d in [vec![a], vec![a, b], vec![a, b, c], vec![a, b, c, a * b]] {
                        let q = QuadForm::from_ints(f, &d).unwrap();
                        assert_eq!(q.witt_index().unwrap(), witt_index_lower_bound(&q, 0), "F_{p} {d:?}");
                    }
                }
            }
        }
    }
}
