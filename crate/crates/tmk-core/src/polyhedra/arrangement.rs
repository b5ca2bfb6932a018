//! Chambers of a hyperplane arrangement restricted to a union of cones.
//!
//! All cones handed to [`chambers`] are full-dimensional inside a common
//! linear space `W`. The hyperplanes cut `W` into open polyhedral regions;
//! the chambers are those regions that meet one of the cones. Each chamber
//! comes with a point of its interior, so that callers can evaluate anything
//! that is constant on chambers (weights, containment) at that point.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use super::fm::{Constraint, QEps, System};
use super::Cone;
use crate::linear::{coordinates, dot, dot_int_rat, integerize, nullspace, to_rat, Int, IntVec, Rat, RatVec};

/// An open region of the arrangement inside `W`.
#[derive(Debug, Clone)]
pub struct Chamber {
    /// A point of the open region, in ambient coordinates.
    pub point: RatVec,
    /// Ambient functionals, each positive on the open region.
    pub constraints: Vec<IntVec>,
    /// Signs of the arrangement hyperplanes at `point`.
    pub signs: Vec<bool>,
}

impl Chamber {
    /// The closure of the region as a cone.
    pub fn cone(&self, space: &[IntVec], n: usize) -> Cone {
        let eqs = nullspace(space, n);
        Cone::from_hrep(&eqs, &self.constraints, n).expect("dimensions agree")
    }
}

struct Space<'a> {
    basis: &'a [IntVec],
}

impl Space<'_> {
    fn restrict(&self, h: &[Int]) -> IntVec {
        self.basis.iter().map(|b| dot(h, b)).collect()
    }

    fn lift(&self, y: &[Rat], n: usize) -> RatVec {
        let mut x = alloc::vec![Rat::zero(); n];
        for (c, b) in y.iter().zip(self.basis) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += c * Rat::from_integer(bi.clone());
            }
        }
        x
    }

    /// A point `y` with `c(y) >= 1` for every restricted constraint.
    fn interior_point(&self, cons: &[IntVec]) -> Option<RatVec> {
        let k = self.basis.len();
        let mut s = System::new(k);
        for c in cons {
            s.inequalities.push(Constraint::geq(to_rat(&self.restrict(c)), QEps::real(Rat::one())));
        }
        s.solve().map(|x| x.into_iter().map(|v| v.re).collect())
    }
}

/// Chambers of the arrangement `hyperplanes` inside `span(space)` that meet
/// one of `seeds`. Seed facets are added to the arrangement. `space` must be
/// an independent family and every seed must be full-dimensional in its
/// span.
pub fn chambers(space: &[IntVec], n: usize, seeds: &[Cone], hyperplanes: &[IntVec]) -> Vec<Chamber> {
    let sp = Space { basis: space };
    // Distinct hyperplanes that are not identically zero on W, keyed by
    // their restriction.
    let mut seen: BTreeSet<IntVec> = BTreeSet::new();
    let mut planes: Vec<IntVec> = Vec::new();
    let mut add_plane = |h: &IntVec| {
        if let Some(r) = integerize(&to_rat(&sp.restrict(h))) {
            let lead_negative = r.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
            let key: IntVec = if lead_negative { r.iter().map(|x| -x).collect() } else { r };
            if seen.insert(key) {
                planes.push(h.clone());
            }
        }
    };
    for c in seeds {
        for a in c.facet_normals() {
            add_plane(a);
        }
    }
    for h in hyperplanes {
        add_plane(h);
    }

    // Regions: y-space point and ambient constraints.
    let mut regions: Vec<(RatVec, Vec<IntVec>)> = Vec::new();
    for c in seeds {
        let p = c.relative_interior_point();
        let y = coordinates(space, &p).expect("seed lies in the space");
        regions.push((y, c.facet_normals().to_vec()));
    }
    for h in &planes {
        let hy = sp.restrict(h);
        let neg: IntVec = h.iter().map(|x| -x).collect();
        let mut next = Vec::with_capacity(regions.len());
        for (y, cons) in regions {
            let s = dot_int_rat(&hy, &y);
            let mut plus = cons.clone();
            plus.push(h.clone());
            let mut minus = cons;
            minus.push(neg.clone());
            if s.is_positive() {
                if let Some(q) = sp.interior_point(&minus) {
                    next.push((q, minus));
                }
                next.push((y, plus));
            } else if s.is_negative() {
                if let Some(q) = sp.interior_point(&plus) {
                    next.push((q, plus));
                }
                next.push((y, minus));
            } else {
                if let Some(q) = sp.interior_point(&plus) {
                    next.push((q, plus));
                }
                if let Some(q) = sp.interior_point(&minus) {
                    next.push((q, minus));
                }
            }
        }
        regions = next;
    }

    let mut out: Vec<Chamber> = Vec::new();
    let mut keys: BTreeSet<Vec<bool>> = BTreeSet::new();
    for (y, cons) in regions {
        let point = sp.lift(&y, n);
        let signs: Vec<bool> = planes.iter().map(|h| dot_int_rat(h, &point).is_positive()).collect();
        if keys.insert(signs.clone()) {
            out.push(Chamber { point, constraints: cons, signs });
        }
    }
    out
}
