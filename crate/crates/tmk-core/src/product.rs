//! The intersection product of fan cycles inside a matroidal fan.
//!
//! The product is computed recursively. In a linear space it is the stable
//! intersection. Otherwise an elementary contraction `δ` is chosen and
//!
//! ```text
//! A.B = δ^*(δ_*A . δ_*B) + Δ_A.Δ_B - Δ_A.D_B - D_A.Δ_B,
//! ```
//!
//! where the last three products are taken in `divisor × R`. The target of
//! `δ` has smaller codimension, and the `divisor × R` context has more
//! lineality, so the recursion terminates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;
use num_traits::{One, Zero};

use crate::bergman::{bergman_fine, coarsen_2dim};
use crate::cycles::FanCycle;
use crate::error::{Error, Result};
use crate::linear::{coordinates, integerize, to_rat, Int, IntVec};
use crate::matroid::{is_quotient, Matroid};
use crate::modification::{delta_from_pushed, elementary_contraction, pullback, push_unchecked, Contraction, MatroidalContext};
use crate::polyhedra::Cone;
use crate::stable::stable_intersection;

/// Which contractible element the recursion removes next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Chooser {
    /// The contractible element with the smallest original label.
    #[default]
    Smallest,
    /// The contractible element with the largest original label.
    Largest,
}

impl FromStr for Chooser {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smallest" => Ok(Chooser::Smallest),
            "largest" => Ok(Chooser::Largest),
            other => Err(Error::Precondition(format!("unknown policy {other:?}"))),
        }
    }
}

/// How the recursion picks contractions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProductPolicy {
    /// Rule for every step.
    pub chooser: Chooser,
    /// Original label of the element contracted first, overriding the
    /// rule at the top level only.
    pub first: Option<usize>,
}

impl ProductPolicy {
    /// The policy with the given rule and no override.
    pub fn new(chooser: Chooser) -> Self {
        ProductPolicy { chooser, first: None }
    }

    /// The same policy with a first element forced.
    pub fn with_first(mut self, label: usize) -> Self {
        self.first = Some(label);
        self
    }
}

/// One step of the recursion, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Recursion depth, zero at the top.
    pub depth: usize,
    /// Ambient dimension of the context.
    pub ambient: usize,
    /// Dimension of the context fan.
    pub dim: usize,
    /// Original label of the contracted element, or `None` in a linear
    /// space.
    pub contracted: Option<usize>,
}

fn choose(ctx: &MatroidalContext, policy: &ProductPolicy, top: bool) -> Result<usize> {
    let cands = ctx.contractible();
    if top {
        if let Some(label) = policy.first {
            return cands
                .iter()
                .copied()
                .find(|&e| ctx.labels()[e] == label)
                .ok_or_else(|| Error::NotContractible(format!("element labelled {label} cannot be contracted first")));
        }
    }
    let key = |e: &usize| ctx.labels()[*e];
    let pick = match policy.chooser {
        Chooser::Smallest => cands.iter().copied().min_by_key(key),
        Chooser::Largest => cands.iter().copied().max_by_key(key),
    };
    pick.ok_or_else(|| Error::Internal(String::from("no contractible element in a nonlinear fan")))
}

struct Recursion<'a> {
    policy: &'a ProductPolicy,
    trace: Option<Vec<TraceStep>>,
}

impl Recursion<'_> {
    fn product(&mut self, ctx: &MatroidalContext, a: &FanCycle, b: &FanCycle, depth: usize) -> Result<FanCycle> {
        let n = ctx.ambient_dim();
        let Some(m) = (a.dim() + b.dim()).checked_sub(ctx.dim()) else {
            return Ok(FanCycle::empty(n, 0));
        };
        if a.is_empty() || b.is_empty() {
            return Ok(FanCycle::empty(n, m));
        }
        if ctx.is_linear_space() {
            if let Some(t) = self.trace.as_mut() {
                t.push(TraceStep { depth, ambient: n, dim: ctx.dim(), contracted: None });
            }
            return stable_intersection(a, b);
        }
        let i = choose(ctx, self.policy, depth == 0)?;
        if let Some(t) = self.trace.as_mut() {
            t.push(TraceStep { depth, ambient: n, dim: ctx.dim(), contracted: Some(ctx.labels()[i]) });
        }
        let c = elementary_contraction(ctx, i)?;
        let pa = push_unchecked(&c, a)?;
        let pb = push_unchecked(&c, b)?;
        let main = self.product(c.target(), &pa, &pb, depth + 1)?;
        let mut total = pullback(&c, &main)?;
        if !c.divisor().is_empty() {
            let (da, dda) = delta_from_pushed(&c, a, &pa)?;
            let (db, ddb) = delta_from_pushed(&c, b, &pb)?;
            let dr = c.divisor_context()?;
            let terms: [(&FanCycle, &FanCycle, bool); 3] = [(&da, &db, true), (&da, &ddb, false), (&dda, &db, false)];
            for (x, y, positive) in terms {
                if x.is_empty() || y.is_empty() {
                    continue;
                }
                let t = self.product(&dr, x, y, depth + 1)?;
                let t = if positive { t } else { t.neg() };
                total = total.plus(&t)?;
            }
        }
        Ok(total.normalize())
    }
}

fn check_subcycle(ctx: &MatroidalContext, a: &FanCycle) -> Result<()> {
    if a.ambient_dim() != ctx.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: ctx.ambient_dim(), found: a.ambient_dim() });
    }
    if !a.support_within(ctx.fan()) {
        return Err(Error::NotSubcycle(String::from("cycle is not supported on the matroidal fan")));
    }
    Ok(())
}

/// The intersection product `A.B` in the matroidal fan of `ctx`. The
/// result has dimension `dim A + dim B - dim V` and is empty when that
/// number is negative.
pub fn matroidal_product(ctx: &MatroidalContext, a: &FanCycle, b: &FanCycle, policy: &ProductPolicy) -> Result<FanCycle> {
    check_subcycle(ctx, a)?;
    check_subcycle(ctx, b)?;
    Recursion { policy, trace: None }.product(ctx, a, b, 0)
}

/// [`matroidal_product`] together with the contraction steps taken.
pub fn matroidal_product_traced(
    ctx: &MatroidalContext,
    a: &FanCycle,
    b: &FanCycle,
    policy: &ProductPolicy,
) -> Result<(FanCycle, Vec<TraceStep>)> {
    check_subcycle(ctx, a)?;
    check_subcycle(ctx, b)?;
    let mut r = Recursion { policy, trace: Some(Vec::new()) };
    let p = r.product(ctx, a, b, 0)?;
    Ok((p, r.trace.unwrap_or_default()))
}

/// Weighted primitive rays of a one dimensional cycle; lines count as two
/// opposite rays.
fn weighted_rays(a: &FanCycle) -> Vec<(IntVec, Int)> {
    let mut out: Vec<(IntVec, Int)> = Vec::new();
    for (c, w) in a.normalize().facets() {
        let dirs: Vec<IntVec> =
            if let Some(l) = c.lineality().first() { vec![l.clone(), l.iter().map(|x| -x).collect()] } else { c.rays().to_vec() };
        for d in dirs {
            match out.iter_mut().find(|(r, _)| *r == d) {
                Some((_, v)) => *v += w,
                None => out.push((d, w.clone())),
            }
        }
    }
    out
}

/// Coprime coordinates `(p, q)` of `r = p v1 + q v2` when `r` lies in the
/// open cone spanned by `v1, v2`.
fn interior_coordinates(r: &IntVec, v1: &IntVec, v2: &IntVec) -> Result<Option<(Int, Int)>> {
    let n = r.len();
    let cone = Cone::new(vec![v1.clone(), v2.clone()], Vec::new(), n)?;
    if !cone.relint_contains(&to_rat(r)) {
        return Ok(None);
    }
    let basis = [v1.clone(), v2.clone()];
    let y =
        coordinates(&basis, &to_rat(r)).ok_or_else(|| Error::Internal(String::from("ray is not expressible in its facet's ray basis")))?;
    let pq = integerize(&y).ok_or_else(|| Error::Internal(String::from("zero ray")))?;
    Ok(Some((pq[0].clone(), pq[1].clone())))
}

/// The multiplicity at the origin of `A.B` for one dimensional `A` and `B`
/// in a two dimensional matroidal fan, from the product of the images
/// under `c` minus corrections from pairs of rays of `Δ_A` and `Δ_B` in
/// the interior of a common coarse facet. The kernel ray of `c` is such a
/// ray whenever coarsening removes it.
pub fn surface_vertex_multiplicity(
    ctx: &MatroidalContext,
    a: &FanCycle,
    b: &FanCycle,
    c: &Contraction,
    policy: &ProductPolicy,
) -> Result<Int> {
    if ctx.dim() != 2 {
        return Err(Error::Precondition(String::from("surface formula needs a two dimensional fan")));
    }
    if a.dim() != 1 || b.dim() != 1 {
        return Err(Error::Precondition(String::from("surface formula needs two curves")));
    }
    if c.source().matroid() != ctx.matroid() {
        return Err(Error::Precondition(String::from("contraction does not start at this fan")));
    }
    check_subcycle(ctx, a)?;
    check_subcycle(ctx, b)?;
    let pa = push_unchecked(c, a)?;
    let pb = push_unchecked(c, b)?;
    let first = Recursion { policy, trace: None }.product(c.target(), &pa, &pb, 0)?.origin_weight();
    let coarse = coarsen_2dim(&bergman_fine(ctx.matroid()))?;
    // Both corrections carry the sign of `δ^*δ_*A - A`; the signs cancel in
    // the products below.
    let ra = weighted_rays(&delta_from_pushed(c, a, &pa)?.0);
    let rb = weighted_rays(&delta_from_pushed(c, b, &pb)?.0);
    let mut correction = Int::zero();
    for (v1, v2) in &coarse.bounding {
        let inside = |rays: &[(IntVec, Int)]| -> Result<Vec<(Int, Int, Int)>> {
            let mut out = Vec::new();
            for (r, w) in rays {
                if let Some((p, q)) = interior_coordinates(r, v1, v2)? {
                    out.push((p, q, w.clone()));
                }
            }
            Ok(out)
        };
        for (p, q, wa) in inside(&ra)? {
            for (r, s, wb) in inside(&rb)? {
                let x = &p * &r;
                let y = &q * &s;
                correction += &wa * &wb * x.min(y);
            }
        }
    }
    Ok(first - correction)
}

/// `1 - #{F : r_M(F) = 2, F a flat of both M1 and M2}` for rank two
/// quotients `M1, M2` of a rank three matroid `M`.
pub fn flats_multiplicity(m: &Matroid, m1: &Matroid, m2: &Matroid) -> Result<Int> {
    if m.rank() != 3 {
        return Err(Error::Precondition(String::from("flats formula needs a rank three matroid")));
    }
    for q in [m1, m2] {
        if q.rank() != 2 {
            return Err(Error::Precondition(String::from("flats formula needs rank two quotients")));
        }
        if !is_quotient(q, m)? {
            return Err(Error::Precondition(String::from("not a quotient of the ambient matroid")));
        }
    }
    let f2 = m2.flats();
    let common = m1.flats().all().filter(|&f| m.rank_mask(f) == 2 && f2.contains(f)).count();
    Ok(Int::one() - Int::from(common))
}
