//! Stable intersection of fan cycles by generic displacement.
//!
//! Two cycles `A` and `B` in `R^n` of dimensions `a` and `b` meet in a cycle
//! of dimension `m = a + b - n`. One of them is moved by `ε·v` for an
//! infinitesimal `ε > 0`. A pair of facets `(σ, τ)` contributes the cone
//! `σ ∩ τ` whenever the moved copies meet transversely in their relative
//! interiors and `σ ∩ τ` has dimension `m`; the weight is
//! `w_σ · w_τ · [Z^n : Λ_σ + Λ_τ]`.

use alloc::vec::Vec;
use num_traits::One;

use crate::cycles::FanCycle;
use crate::error::{Error, Result};
use crate::lattice::lattice_sum_index;
use crate::linear::{Int, IntVec};
use crate::polyhedra::{meet_transversally, Cone, DisplacedCone, Meeting};

const CANDIDATE_BASES: [u64; 24] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89];

/// The moment vector `(1, t, t², …)`.
fn moment_vector(t: u64, n: usize) -> IntVec {
    let mut v = Vec::with_capacity(n);
    let mut x = Int::one();
    for _ in 0..n {
        v.push(x.clone());
        x *= t;
    }
    v
}

fn expected_dim(a: &FanCycle, b: &FanCycle) -> Result<Option<usize>> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: a.ambient_dim(), found: b.ambient_dim() });
    }
    Ok((a.dim() + b.dim()).checked_sub(a.ambient_dim()))
}

/// Contributions of all facet pairs for the displacement `v`, or `None` if
/// some pair meets degenerately.
fn contributions(a: &FanCycle, b: &FanCycle, m: usize, v: &[Int]) -> Result<Option<Vec<(Cone, Int)>>> {
    let mut out = Vec::new();
    for (s, ws) in a.facets() {
        let p = DisplacedCone::at_origin(s.clone());
        for (t, wt) in b.facets() {
            let q = DisplacedCone::displaced(t.clone(), v);
            match meet_transversally(&p, &q, m) {
                Meeting::Empty => {}
                Meeting::Degenerate => return Ok(None),
                Meeting::Transverse(_) => {
                    let c = s.intersect(t);
                    if c.dim() != m {
                        continue;
                    }
                    let idx = lattice_sum_index(&s.lattice(), &t.lattice())?;
                    out.push((c, ws * wt * idx));
                }
            }
        }
    }
    Ok(Some(out))
}

/// A displacement vector for which every facet pair of `a` and `b` meets
/// either not at all or transversely.
pub fn admissible_displacement(a: &FanCycle, b: &FanCycle) -> Result<IntVec> {
    let Some(m) = expected_dim(a, b)? else {
        return Ok(moment_vector(CANDIDATE_BASES[0], a.ambient_dim()));
    };
    for t in CANDIDATE_BASES {
        let v = moment_vector(t, a.ambient_dim());
        if contributions(a, b, m, &v)?.is_some() {
            return Ok(v);
        }
    }
    Err(Error::NoAdmissibleDisplacement)
}

/// The stable intersection of `a` and `b`, normalized. When the expected
/// dimension is negative the result is the empty zero dimensional cycle.
pub fn stable_intersection(a: &FanCycle, b: &FanCycle) -> Result<FanCycle> {
    let n = a.ambient_dim();
    let Some(m) = expected_dim(a, b)? else {
        return Ok(FanCycle::empty(n, 0));
    };
    if a.is_empty() || b.is_empty() {
        return Ok(FanCycle::empty(n, m));
    }
    for t in CANDIDATE_BASES {
        let v = moment_vector(t, n);
        if let Some(pieces) = contributions(a, b, m, &v)? {
            return Ok(FanCycle::new(n, m, pieces)?.normalize());
        }
    }
    Err(Error::NoAdmissibleDisplacement)
}

/// The stable intersection computed with the given displacement, which
/// must be admissible.
pub fn stable_intersection_with(a: &FanCycle, b: &FanCycle, v: &[Int]) -> Result<FanCycle> {
    let n = a.ambient_dim();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    let Some(m) = expected_dim(a, b)? else {
        return Ok(FanCycle::empty(n, 0));
    };
    match contributions(a, b, m, v)? {
        Some(pieces) => Ok(FanCycle::new(n, m, pieces)?.normalize()),
        None => Err(Error::NoAdmissibleDisplacement),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bergman::bergman_cycle;
    use crate::linear::{gcd_vec, ivec, primitive_part, Rat};
    use crate::matroid::Matroid;
    use alloc::vec;
    use num_traits::{Signed, Zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ray_cycle(n: usize, rays: &[(IntVec, i64)]) -> FanCycle {
        let facets = rays.iter().map(|(r, w)| (Cone::new(vec![r.clone()], vec![], n).unwrap(), Int::from(*w))).collect();
        FanCycle::new(n, 1, facets).unwrap()
    }

    /// A balanced one dimensional cycle: random primitive rays plus the
    /// ray closing up the weighted sum.
    fn random_ray_cycle(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<(IntVec, i64)> {
        loop {
            let mut rays: Vec<(IntVec, i64)> = Vec::new();
            let mut sum = vec![Int::zero(); n];
            for _ in 0..k {
                let r: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                let Some(p) = primitive_part(&ivec(&r)) else { continue };
                let w = rng.gen_range(1..=2);
                for (s, x) in sum.iter_mut().zip(&p) {
                    *s += x * w;
                }
                rays.push((p, w));
            }
            let closing: IntVec = sum.iter().map(|x| -x).collect();
            let Some(p) = primitive_part(&closing) else { continue };
            let g = gcd_vec(&closing);
            rays.push((p, i64::try_from(g).unwrap()));
            if rays.len() >= 2 {
                return rays;
            }
        }
    }

    fn det2(a: &[Rat; 2], b: &[Rat; 2]) -> Rat {
        &a[0] * &b[1] - &a[1] * &b[0]
    }

    fn det3(c: [&[Rat]; 3]) -> Rat {
        &c[0][0] * (&c[1][1] * &c[2][2] - &c[1][2] * &c[2][1]) - &c[1][0] * (&c[0][1] * &c[2][2] - &c[0][2] * &c[2][1])
            + &c[2][0] * (&c[0][1] * &c[1][2] - &c[0][2] * &c[1][1])
    }

    fn q(v: &IntVec) -> Vec<Rat> {
        v.iter().map(|x| Rat::from_integer(x.clone())).collect()
    }

    /// Degree of two plane curves: solve `a r = ε v + b s` by Cramer's rule
    /// for each ray pair and add `w w' |det(r, s)|` when `a, b > 0`.
    fn plane_oracle(a: &[(IntVec, i64)], b: &[(IntVec, i64)], eps: Rat) -> i64 {
        let v = [Rat::from_integer(1.into()) * &eps, Rat::from_integer(7.into()) * &eps];
        let mut total = 0i64;
        for (r, wr) in a {
            for (s, ws) in b {
                let (r, s) = (q(r), q(s));
                let r2 = [r[0].clone(), r[1].clone()];
                let ms = [-s[0].clone(), -s[1].clone()];
                let d = det2(&r2, &ms);
                if d.is_zero() {
                    continue;
                }
                let x = det2(&v, &ms) / &d;
                let y = det2(&r2, &v) / &d;
                assert!(!x.is_zero() && !y.is_zero(), "oracle displacement not generic");
                if x.is_positive() && y.is_positive() {
                    total += wr * ws * i64::try_from(d.abs().to_integer()).unwrap();
                }
            }
        }
        total
    }

    #[test]
    fn two_standard_lines_meet_once() {
        let l = bergman_cycle(&Matroid::uniform(2, 3).unwrap());
        let p = stable_intersection(&l, &l).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.origin_weight(), Int::from(1));
    }

    #[test]
    fn scaled_line_degree() {
        let l = bergman_cycle(&Matroid::uniform(2, 3).unwrap());
        let d = l.scale(&Int::from(3));
        assert_eq!(stable_intersection(&l, &d).unwrap().origin_weight(), Int::from(3));
    }

    #[test]
    fn plane_and_line_in_r3() {
        let plane = bergman_cycle(&Matroid::uniform(3, 4).unwrap());
        let line = bergman_cycle(&Matroid::uniform(2, 4).unwrap());
        let p = stable_intersection(&plane, &line).unwrap();
        assert_eq!(p.origin_weight(), Int::from(1));
        let self_int = stable_intersection(&plane, &plane).unwrap();
        assert_eq!(self_int.dim(), 1);
        assert!(self_int.equals(&line).unwrap());
    }

    #[test]
    fn negative_expected_dimension_is_empty() {
        let l = bergman_cycle(&Matroid::uniform(2, 4).unwrap());
        let p = stable_intersection(&l, &l).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn explicit_degenerate_displacement_is_rejected() {
        let x = FanCycle::new(2, 1, vec![(Cone::new(vec![], vec![ivec(&[1, 0])], 2).unwrap(), Int::one())]).unwrap();
        assert_eq!(stable_intersection_with(&x, &x, &ivec(&[1, 0])), Err(Error::NoAdmissibleDisplacement));
        assert!(stable_intersection_with(&x, &x, &ivec(&[0, 1])).unwrap().is_empty());
    }

    #[test]
    fn random_plane_curves_against_cramer() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..12 {
            let ra = random_ray_cycle(&mut rng, 2, 2);
            let rb = random_ray_cycle(&mut rng, 2, 2);
            let a = ray_cycle(2, &ra);
            let b = ray_cycle(2, &rb);
            let small = plane_oracle(&ra, &rb, Rat::new(1.into(), 1000.into()));
            let smaller = plane_oracle(&ra, &rb, Rat::new(1.into(), 10000.into()));
            assert_eq!(small, smaller);
            assert_eq!(stable_intersection(&a, &b).unwrap().origin_weight(), Int::from(small));
        }
    }

    /// Two dimensional cycles in `R^3` from the plane of `U_{3,4}` under a
    /// unimodular change of coordinates.
    fn transformed_plane(m: &[[i64; 3]; 3]) -> FanCycle {
        let plane = bergman_cycle(&Matroid::uniform(3, 4).unwrap());
        let apply = |v: &IntVec| -> IntVec { (0..3).map(|i| (0..3).map(|j| &v[j] * Int::from(m[i][j])).sum()).collect() };
        plane.map_cones(3, |c| c.map(apply, 3)).unwrap()
    }

    #[test]
    fn random_surface_and_curve_against_cramer() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mats = [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 0, 2], [0, 1, -1], [0, 0, 1]],
            [[2, 1, 0], [1, 1, 0], [0, 0, 1]],
        ];
        for m in &mats {
            let plane = transformed_plane(m);
            for _ in 0..3 {
                let rc = random_ray_cycle(&mut rng, 3, 2);
                let curve = ray_cycle(3, &rc);
                let got = stable_intersection(&plane, &curve).unwrap().origin_weight();
                let oracle = |eps: Rat| -> i64 {
                    let v: Vec<Rat> = [1i64, 7, 49].iter().map(|x| Rat::from_integer((*x).into()) * &eps).collect();
                    let mut total = 0i64;
                    for (c, w) in plane.facets() {
                        let (p, pq) = (q(&c.rays()[0]), q(&c.rays()[1]));
                        let gm = gcd_vec(&[
                            &c.rays()[0][0] * &c.rays()[1][1] - &c.rays()[0][1] * &c.rays()[1][0],
                            &c.rays()[0][0] * &c.rays()[1][2] - &c.rays()[0][2] * &c.rays()[1][0],
                            &c.rays()[0][1] * &c.rays()[1][2] - &c.rays()[0][2] * &c.rays()[1][1],
                        ]);
                        for (r, wr) in &rc {
                            let mr: Vec<Rat> = q(r).iter().map(|x| -x).collect();
                            let d = det3([&p, &pq, &mr]);
                            if d.is_zero() {
                                continue;
                            }
                            let a = det3([&v, &pq, &mr]) / &d;
                            let b = det3([&p, &v, &mr]) / &d;
                            let cc = det3([&p, &pq, &v]) / &d;
                            assert!(!a.is_zero() && !b.is_zero() && !cc.is_zero());
                            if a.is_positive() && b.is_positive() && cc.is_positive() {
                                let idx = d.abs().to_integer() / &gm;
                                total += i64::try_from(w * idx).unwrap() * wr;
                            }
                        }
                    }
                    total
                };
                let o1 = oracle(Rat::new(1.into(), 1000.into()));
                assert_eq!(o1, oracle(Rat::new(1.into(), 10000.into())));
                assert_eq!(got, Int::from(o1));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn intersection_is_commutative_and_independent_of_v(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = ray_cycle(2, &random_ray_cycle(&mut rng, 2, 2));
            let b = ray_cycle(2, &random_ray_cycle(&mut rng, 2, 3));
            let ab = stable_intersection(&a, &b).unwrap();
            let ba = stable_intersection(&b, &a).unwrap();
            prop_assert!(ab.equals(&ba).unwrap());
            let v = admissible_displacement(&a, &b).unwrap();
            prop_assert!(stable_intersection_with(&a, &b, &v).unwrap().equals(&ab).unwrap());
            if let Ok(ab2) = stable_intersection_with(&a, &b, &ivec(&[5, -3])) {
                prop_assert!(ab2.equals(&ab).unwrap());
            }
        }

        #[test]
        fn intersection_is_bilinear(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = ray_cycle(2, &random_ray_cycle(&mut rng, 2, 2));
            let b = ray_cycle(2, &random_ray_cycle(&mut rng, 2, 2));
            let c = ray_cycle(2, &random_ray_cycle(&mut rng, 2, 2));
            let lhs = stable_intersection(&a.plus(&b).unwrap(), &c).unwrap().origin_weight();
            let rhs = stable_intersection(&a, &c).unwrap().origin_weight()
                + stable_intersection(&b, &c).unwrap().origin_weight();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn intersection_of_balanced_is_balanced(seed in 0u64..1000) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
            let mut b = transformed_plane(&m);
            if seed % 2 == 1 {
                b = transformed_plane(&[[1, 1, 0], [0, 1, 1], [0, 0, 1]]);
            }
            let a = transformed_plane(&[[1, 0, (rng.gen_range(-2..=2))], [0, 1, 0], [0, 0, 1]]);
            let ab = stable_intersection(&a, &b).unwrap();
            prop_assert!(ab.is_balanced().balanced);
        }
    }
}
