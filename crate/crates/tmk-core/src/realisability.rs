//! An intersection-theoretic obstruction to realising curves in matroidal
//! surfaces.
//!
//! Let `Ṽ → V` be an elementary contraction of matroidal fans with divisor
//! `D ⊂ V`, and let `C ⊂ V` be an effective fan curve not containing `D`.
//! If the multiplicity of `D.C` at the origin is negative, no algebraic
//! curve tropicalises to `C` compatibly with a realisation of `Ṽ`. When the
//! matroid of `Ṽ` has no `U_{2,4}` minor it is regular, hence realisable
//! over every field, and the curve is then not realisable over any field.
//!
//! Only fan curves are handled, so the bounded part of `C ∩ D` is the
//! origin.

use alloc::string::String;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::bergman::bergman_cycle;
use crate::cycles::FanCycle;
use crate::error::{Error, Result};
use crate::linear::{Int, IntVec};
use crate::matroid::{is_quotient, Matroid, Set};
use crate::modification::{elementary_contraction, Contraction, MatroidalContext};
use crate::product::{matroidal_product, ProductPolicy};

/// Outcome of [`obstruction_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionVerdict {
    /// Whether the multiplicity at the origin is negative.
    pub obstructed: bool,
    /// Multiplicity of `D.C` at the origin.
    pub total_multiplicity: Int,
    /// Whether the matroid of the modified fan has no `U_{2,4}` minor.
    pub u24_free: bool,
    /// Human readable verdict.
    pub explanation: String,
}

impl ObstructionVerdict {
    fn new(total_multiplicity: Int, u24_free: bool) -> Self {
        let obstructed = total_multiplicity.is_negative();
        let explanation = match (obstructed, u24_free) {
            (true, true) => "not realisable over any field",
            (true, false) => "not realisable over any field over which the modified fan is realisable",
            (false, _) => "no obstruction: the intersection multiplicity is nonnegative",
        };
        ObstructionVerdict { obstructed, total_multiplicity, u24_free, explanation: String::from(explanation) }
    }
}

/// Tests the curve `curve` in the surface `v` against the divisor of the
/// contraction `c`, whose target must be `v`.
pub fn obstruction_check(v: &MatroidalContext, c: &Contraction, curve: &FanCycle, policy: &ProductPolicy) -> Result<ObstructionVerdict> {
    if v.dim() != 2 {
        return Err(Error::Precondition(String::from("the obstruction applies to two dimensional fans")));
    }
    if c.target().matroid() != v.matroid() {
        return Err(Error::Precondition(String::from("contraction does not end at this fan")));
    }
    if curve.dim() != 1 {
        return Err(Error::Precondition(String::from("the obstruction applies to curves")));
    }
    let curve = curve.normalize();
    if curve.facets().iter().any(|(_, w)| !w.is_positive()) {
        return Err(Error::Precondition(String::from("curve is not effective")));
    }
    let d = c.divisor();
    if d.is_empty() {
        return Err(Error::Precondition(String::from("the contraction has an empty divisor")));
    }
    if d.support_within(&curve) {
        return Err(Error::Precondition(String::from("divisor contained in curve; the obstruction does not apply")));
    }
    let m = matroidal_product(v, d, &curve, policy)?.origin_weight();
    let u24 = Matroid::uniform(2, 4)?;
    Ok(ObstructionVerdict::new(m, !c.source().matroid().has_minor(&u24)))
}

/// The subset `F` of a ground set of size `n + 1` with chart vector `r`,
/// if there is one.
fn flat_of_ray(r: &IntVec) -> Option<Set> {
    let one = Int::from(1);
    let minus = Int::from(-1);
    if r.iter().all(|x| x.is_zero() || *x == one) && r.contains(&one) {
        // 0 in F, and j + 1 in F exactly where r_j = 0.
        let mut f: Set = 1;
        for (j, x) in r.iter().enumerate() {
            if x.is_zero() {
                f |= 1 << (j + 1);
            }
        }
        return Some(f);
    }
    if r.iter().all(|x| x.is_zero() || *x == minus) && r.contains(&minus) {
        let mut f: Set = 0;
        for (j, x) in r.iter().enumerate() {
            if *x == minus {
                f |= 1 << (j + 1);
            }
        }
        return Some(f);
    }
    None
}

/// The rank two matroid whose Bergman fan is the one dimensional cycle `d`
/// in `R^n`, on the ground set `{0, …, n}`.
pub fn quotient_from_divisor(d: &FanCycle) -> Result<Matroid> {
    let not_bergman = || Error::Precondition(String::from("divisor is not the fan of a rank two matroid"));
    if d.dim() != 1 {
        return Err(not_bergman());
    }
    let n = d.ambient_dim();
    let mut classes: Vec<Set> = Vec::new();
    for (cone, _) in d.normalize().facets() {
        let dirs: Vec<IntVec> = match cone.lineality().first() {
            Some(l) => alloc::vec![l.clone(), l.iter().map(|x| -x).collect()],
            None => cone.rays().to_vec(),
        };
        for r in dirs {
            let f = flat_of_ray(&r).ok_or_else(not_bergman)?;
            if !classes.contains(&f) {
                classes.push(f);
            }
        }
    }
    let ground: Set = (1 << (n + 1)) - 1;
    let union = classes.iter().fold(0, |u, &f| u | f);
    let disjoint = classes.iter().map(|f| f.count_ones()).sum::<u32>() == union.count_ones();
    if union != ground || !disjoint || classes.len() < 2 {
        return Err(not_bergman());
    }
    let mut bases = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            for x in 0..=n {
                for y in 0..=n {
                    if a & (1 << x) != 0 && b & (1 << y) != 0 {
                        bases.push((1 << x) | (1 << y));
                    }
                }
            }
        }
    }
    bases.sort_unstable();
    bases.dedup();
    let q = Matroid::from_masks(n + 1, bases)?;
    if !bergman_cycle(&q).equals(d)? {
        return Err(not_bergman());
    }
    Ok(q)
}

/// The matroid on one more element whose deletion is `m` and whose
/// contraction is `q`; the new element is last.
pub fn modification_matroid(m: &Matroid, q: &Matroid) -> Result<Matroid> {
    if q.ground_size() != m.ground_size() || q.rank() + 1 != m.rank() {
        return Err(Error::Precondition(String::from("divisor matroid has the wrong size or rank")));
    }
    if !is_quotient(q, m)? {
        return Err(Error::Precondition(String::from("divisor matroid is not a quotient")));
    }
    let p: Set = 1 << m.ground_size();
    let mut bases: Vec<Set> = m.bases().to_vec();
    bases.extend(q.bases().iter().map(|&b| b | p));
    Matroid::from_masks(m.ground_size() + 1, bases)
}

/// The obstruction for a curve and a divisor given as cycles in `B(m)`:
/// the divisor is read as `B(Q)` for a quotient `Q`, and `Ṽ` is the fan of
/// the matroid with deletion `m` and contraction `Q`.
pub fn obstruction_for_divisor(m: &Matroid, divisor: &FanCycle, curve: &FanCycle, policy: &ProductPolicy) -> Result<ObstructionVerdict> {
    let v = MatroidalContext::new(m.clone())?;
    if divisor.ambient_dim() != v.ambient_dim() || curve.ambient_dim() != v.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: v.ambient_dim(), found: divisor.ambient_dim() });
    }
    let q = quotient_from_divisor(divisor)?;
    let lifted = MatroidalContext::new(modification_matroid(m, &q)?)?;
    let c = elementary_contraction(&lifted, m.ground_size())?;
    obstruction_check(&v, &c, curve, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::ivec;
    use crate::modification::pullback;
    use crate::polyhedra::Cone;

    fn rays_cycle(n: usize, rays: &[(&[i64], i64)]) -> FanCycle {
        let facets = rays.iter().map(|(r, w)| (Cone::new(alloc::vec![ivec(r)], alloc::vec![], n).unwrap(), Int::from(*w))).collect();
        FanCycle::new(n, 1, facets).unwrap()
    }

    fn example_a() -> FanCycle {
        rays_cycle(3, &[(&[1, 1, 0], 1), (&[-1, -1, 0], 1)])
    }

    fn example_b(d: i64) -> FanCycle {
        rays_cycle(3, &[(&[0, 1, 1], 1), (&[1 - d, -d, 0], 1), (&[d - 1, d - 1, -1], 1)])
    }

    fn u34() -> Matroid {
        Matroid::uniform(3, 4).unwrap()
    }

    #[test]
    fn recovers_the_quotient_of_the_example_line() {
        let q = quotient_from_divisor(&example_a()).unwrap();
        assert_eq!(q.rank(), 2);
        assert!(q.is_flat(0b1001) && q.is_flat(0b0110));
        let lifted = modification_matroid(&u34(), &q).unwrap();
        assert_eq!(lifted.delete(4).unwrap(), u34());
        assert_eq!(lifted.contract(4).unwrap(), q);
    }

    #[test]
    fn example_curves() {
        let pol = ProductPolicy::default();
        let v3 = obstruction_for_divisor(&u34(), &example_a(), &example_b(3), &pol).unwrap();
        assert!(v3.obstructed);
        assert_eq!(v3.total_multiplicity, Int::from(-1));
        assert!(v3.u24_free);
        assert_eq!(v3.explanation, "not realisable over any field");
        let v2 = obstruction_for_divisor(&u34(), &example_a(), &example_b(2), &pol).unwrap();
        assert!(!v2.obstructed);
        assert_eq!(v2.total_multiplicity, Int::zero());
    }

    #[test]
    fn transverse_curve_is_not_obstructed() {
        let line = bergman_cycle(&Matroid::uniform(2, 4).unwrap());
        let v = obstruction_for_divisor(&u34(), &example_a(), &line, &ProductPolicy::default()).unwrap();
        assert!(!v.obstructed);
        assert_eq!(v.total_multiplicity, Int::from(1));
    }

    #[test]
    fn divisor_inside_curve_is_rejected() {
        let a = example_a();
        let curve = a.plus(&rays_cycle(3, &[(&[0, 0, 1], 1), (&[0, 0, -1], 1)])).unwrap();
        let curve = curve.plus(&example_a()).unwrap();
        let r = obstruction_for_divisor(&u34(), &a, &curve, &ProductPolicy::default());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn pullback_curves_are_not_obstructed() {
        let v = MatroidalContext::new(u34()).unwrap();
        let c = elementary_contraction(&v, 3).unwrap();
        let x = rays_cycle(2, &[(&[2, 1], 1), (&[-2, -1], 1)]);
        let curve = pullback(&c, &x).unwrap();
        assert!(curve.facets().iter().all(|(_, w)| w.is_positive()));
        let verdict = obstruction_for_divisor(&u34(), &example_a(), &curve, &ProductPolicy::default()).unwrap();
        assert!(!verdict.obstructed);
    }

    #[test]
    fn minor_certificate_matches_has_minor() {
        let q = quotient_from_divisor(&example_a()).unwrap();
        let lifted = modification_matroid(&u34(), &q).unwrap();
        let v = obstruction_for_divisor(&u34(), &example_a(), &example_b(3), &ProductPolicy::default()).unwrap();
        assert_eq!(v.u24_free, !lifted.has_minor(&Matroid::uniform(2, 4).unwrap()));
        assert!(Matroid::uniform(2, 5).unwrap().has_minor(&Matroid::uniform(2, 4).unwrap()));
    }

    #[test]
    fn verdict_follows_the_sign() {
        for m in [-3i64, -1, 0, 2] {
            let v = ObstructionVerdict::new(Int::from(m), true);
            let w = ObstructionVerdict::new(Int::from(-m), true);
            assert_eq!(v.obstructed, m < 0);
            if m != 0 {
                assert_ne!(v.obstructed, w.obstructed);
            }
        }
    }

    #[test]
    fn non_bergman_divisors_are_rejected() {
        let bad = rays_cycle(3, &[(&[2, 1, 0], 1), (&[-2, -1, 0], 1)]);
        assert!(quotient_from_divisor(&bad).is_err());
        let heavy = example_a().scale(&Int::from(2));
        assert!(quotient_from_divisor(&heavy).is_err());
    }
}
