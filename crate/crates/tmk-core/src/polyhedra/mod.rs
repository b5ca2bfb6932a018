//! Rational polyhedral cones with exact feasibility tests.
//!
//! A [`Cone`] keeps a canonical generator description (extreme rays modulo
//! the lineality space, plus a lineality basis) together with its
//! inequality description (equations of the linear span and one normal per
//! facet). Both are normalised so that two cones are equal exactly when
//! their point sets are equal.

pub mod arrangement;
pub mod fm;

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{saturation, Lattice};
use crate::linear::{dot, dot_int_rat, integerize, nullspace, project_out, rank, span_key, to_rat, Int, IntVec, Rat, RatVec};
use fm::{Constraint, QEps, System};

pub use arrangement::{chambers, Chamber};

/// A rational polyhedral cone `cone(rays) + span(lineality)` in `R^n`.
#[derive(Debug, Clone)]
pub struct Cone {
    ambient: usize,
    lineality: Vec<IntVec>,
    rays: Vec<IntVec>,
    span: Vec<IntVec>,
    equations: Vec<IntVec>,
    facets: Vec<IntVec>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cone {}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, &self.lineality, &self.rays).cmp(&(other.ambient, &other.lineality, &other.rays))
    }
}

/// Representative of `v` modulo the span of `lineality`: the orthogonal
/// projection scaled to a primitive integer vector. `None` when `v` lies in
/// the lineality space.
fn reduce_mod(v: &[Int], lineality: &[IntVec]) -> Option<IntVec> {
    integerize(&project_out(&to_rat(v), lineality))
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Splits `ineqs` into those forced to equality on `{eqs x = 0, ineqs x >= 0}`
/// and the rest.
fn implicit_equalities(eqs: &[IntVec], ineqs: &[IntVec], n: usize) -> (Vec<IntVec>, Vec<IntVec>) {
    let base = |extra: &[usize]| {
        let mut s = System::new(n);
        for e in eqs {
            s.equalities.push((to_rat(e), QEps::zero()));
        }
        for (i, a) in ineqs.iter().enumerate() {
            let rhs = if extra.contains(&i) { Rat::one() } else { Rat::zero() };
            s.inequalities.push(Constraint::geq(to_rat(a), QEps::real(rhs)));
        }
        s
    };
    let all: Vec<usize> = (0..ineqs.len()).collect();
    if base(&all).feasible() {
        return (Vec::new(), ineqs.to_vec());
    }
    let mut implicit = Vec::new();
    let mut proper = Vec::new();
    for (i, a) in ineqs.iter().enumerate() {
        if base(&[i]).feasible() {
            proper.push(a.clone());
        } else {
            implicit.push(a.clone());
        }
    }
    (implicit, proper)
}

/// Extreme rays of the pointed cone `{x : eqs x = 0, ineqs x >= 0}` when no
/// inequality is an implicit equality. Rays are primitive.
fn extreme_rays(eqs: &[IntVec], ineqs: &[IntVec], n: usize) -> Vec<IntVec> {
    let d = n - rank(eqs, n);
    let mut out: Vec<IntVec> = Vec::new();
    if d == 0 {
        return out;
    }
    for s in subsets(ineqs.len(), d - 1) {
        let mut rows = eqs.to_vec();
        rows.extend(s.iter().map(|&i| ineqs[i].clone()));
        let ns = nullspace(&rows, n);
        if ns.len() != 1 {
            continue;
        }
        let x = &ns[0];
        let signs: Vec<Int> = ineqs.iter().map(|a| dot(a, x)).collect();
        let x = if signs.iter().all(|v| !v.is_negative()) {
            x.clone()
        } else if signs.iter().all(|v| !v.is_positive()) {
            x.iter().map(|c| -c).collect()
        } else {
            continue;
        };
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out.sort();
    out
}

impl Cone {
    /// Builds the cone generated by `rays` and the linear span of
    /// `lineality`. Zero vectors are ignored.
    pub fn new(rays: Vec<IntVec>, lineality: Vec<IntVec>, ambient: usize) -> Result<Cone> {
        for v in rays.iter().chain(&lineality) {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        Ok(Cone::from_generators(rays, lineality, ambient))
    }

    /// The cone `{0}` in `R^n`.
    pub fn origin(ambient: usize) -> Cone {
        Cone::from_generators(Vec::new(), Vec::new(), ambient)
    }

    /// All of `R^n`.
    pub fn whole_space(ambient: usize) -> Cone {
        let basis = (0..ambient)
            .map(|i| {
                let mut e = vec![Int::zero(); ambient];
                e[i] = Int::one();
                e
            })
            .collect();
        Cone::from_generators(Vec::new(), basis, ambient)
    }

    fn from_generators(rays: Vec<IntVec>, lineality: Vec<IntVec>, n: usize) -> Cone {
        let mut all: Vec<IntVec> = lineality.clone();
        all.extend(rays.iter().cloned());
        let span = span_key(&all, n);
        let equations = span_key(&nullspace(&span, n), n);
        let lin0 = span_key(&lineality, n);
        let mut rays0: Vec<IntVec> = Vec::new();
        for r in &rays {
            if let Some(c) = reduce_mod(r, &lin0) {
                if !rays0.contains(&c) {
                    rays0.push(c);
                }
            }
        }
        if lin0.len() + rays0.len() == span.len() {
            // Simplicial modulo the lineality space.
            let mut facets = Vec::new();
            for j in 0..rays0.len() {
                let mut rows = equations.clone();
                rows.extend(lin0.iter().cloned());
                rows.extend(rays0.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, r)| r.clone()));
                let ns = nullspace(&rows, n);
                debug_assert_eq!(ns.len(), 1);
                let a = &ns[0];
                let a = if dot(a, &rays0[j]).is_negative() { a.iter().map(|c| -c).collect() } else { a.clone() };
                facets.push(a);
            }
            facets.sort();
            rays0.sort();
            return Cone { ambient: n, lineality: lin0, rays: rays0, span, equations, facets };
        }
        // General case: facets are the extreme rays of the dual cone inside
        // the span, taken modulo the given lineality.
        let mut dual_eqs = equations.clone();
        dual_eqs.extend(lin0.iter().cloned());
        let (implicit, proper) = implicit_equalities(&dual_eqs, &rays0, n);
        dual_eqs.extend(implicit.iter().cloned());
        let facets = extreme_rays(&dual_eqs, &proper, n);
        let mut lin_rows = equations.clone();
        lin_rows.extend(facets.iter().cloned());
        let lin = span_key(&nullspace(&lin_rows, n), n);
        let cone = Cone { ambient: n, lineality: lin, rays: Vec::new(), span, equations, facets };
        let mut extreme = Vec::new();
        for r in &rays0 {
            if let Some(c) = reduce_mod(r, &cone.lineality) {
                if !extreme.contains(&c) && cone.is_extreme(&c) {
                    extreme.push(c);
                }
            }
        }
        extreme.sort();
        Cone { rays: extreme, ..cone }
    }

    fn is_extreme(&self, r: &[Int]) -> bool {
        let tight: Vec<IntVec> = self.facets.iter().filter(|a| dot(a, r).is_zero()).cloned().collect();
        self.dim() - rank(&tight, self.ambient) == self.lineality.len() + 1
    }

    /// The cone `{x : eqs x = 0, ineqs x >= 0}`.
    pub fn from_hrep(eqs: &[IntVec], ineqs: &[IntVec], n: usize) -> Result<Cone> {
        for v in eqs.iter().chain(ineqs) {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        let eqs0 = span_key(eqs, n);
        let mut ineqs0: Vec<IntVec> = Vec::new();
        for a in ineqs {
            if let Some(p) = integerize(&project_out(&to_rat(a), &eqs0)) {
                if !ineqs0.contains(&p) {
                    ineqs0.push(p);
                }
            }
        }
        let (implicit, proper) = implicit_equalities(&eqs0, &ineqs0, n);
        let mut all_eqs = eqs0;
        all_eqs.extend(implicit);
        let equations = span_key(&all_eqs, n);
        let span = span_key(&nullspace(&equations, n), n);
        // Normals reduced into the span so that they are canonical.
        let mut normals: Vec<IntVec> = Vec::new();
        for a in &proper {
            if let Some(p) = integerize(&project_out(&to_rat(a), &equations)) {
                if !normals.contains(&p) {
                    normals.push(p);
                }
            }
        }
        let mut lin_rows = equations.clone();
        lin_rows.extend(normals.iter().cloned());
        let lineality = span_key(&nullspace(&lin_rows, n), n);
        let mut ray_eqs = equations.clone();
        ray_eqs.extend(lineality.iter().cloned());
        let rays = extreme_rays(&ray_eqs, &normals, n);
        let mut cone = Cone { ambient: n, lineality, rays, span, equations, facets: Vec::new() };
        let dim = cone.dim();
        let mut facets: Vec<IntVec> = Vec::new();
        for a in normals {
            let mut face: Vec<IntVec> = cone.lineality.clone();
            face.extend(cone.rays.iter().filter(|r| dot(&a, r).is_zero()).cloned());
            if rank(&face, n) + 1 == dim && !facets.contains(&a) {
                facets.push(a);
            }
        }
        facets.sort();
        cone.facets = facets;
        Ok(cone)
    }

    /// Ambient dimension `n`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension of the cone.
    pub fn dim(&self) -> usize {
        self.span.len()
    }

    /// Extreme rays modulo the lineality space, primitive and sorted.
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    /// Canonical basis of the lineality space.
    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    /// Canonical basis of the linear span; equal spans give equal keys.
    pub fn span(&self) -> &[IntVec] {
        &self.span
    }

    /// Canonical basis of the orthogonal complement of the span.
    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    /// Inner facet normals, each lying in the span.
    pub fn facet_normals(&self) -> &[IntVec] {
        &self.facets
    }

    /// Basis of the saturated lattice parallel to the cone.
    pub fn lattice_basis(&self) -> Vec<IntVec> {
        saturation(&self.span, self.ambient)
    }

    /// The saturated lattice parallel to the cone.
    pub fn lattice(&self) -> Lattice {
        Lattice { generators: self.lattice_basis(), ambient_dim: self.ambient }
    }

    /// Sum of the rays: a point of the relative interior.
    pub fn relative_interior_point(&self) -> RatVec {
        let mut p = vec![Rat::zero(); self.ambient];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += Rat::from_integer(y.clone());
            }
        }
        p
    }

    /// Whether `p` lies in the cone.
    pub fn contains_point(&self, p: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_int_rat(e, p).is_zero()) && self.facets.iter().all(|a| !dot_int_rat(a, p).is_negative())
    }

    /// Whether `p` lies in the relative interior.
    pub fn relint_contains(&self, p: &[Rat]) -> bool {
        self.equations.iter().all(|e| dot_int_rat(e, p).is_zero()) && self.facets.iter().all(|a| dot_int_rat(a, p).is_positive())
    }

    /// Whether `other` is a subset of this cone.
    pub fn contains_cone(&self, other: &Cone) -> bool {
        other
            .lineality
            .iter()
            .all(|l| self.equations.iter().all(|e| dot(e, l).is_zero()) && self.facets.iter().all(|a| dot(a, l).is_zero()))
            && other.rays.iter().all(|r| self.contains_point(&to_rat(r)))
    }

    /// Whether `other` is a face of this cone.
    pub fn has_face(&self, other: &Cone) -> bool {
        if !self.contains_cone(other) {
            return false;
        }
        let p = other.relative_interior_point();
        let tight: Vec<&IntVec> = self.facets.iter().filter(|a| dot_int_rat(a, &p).is_zero()).collect();
        let face = self.face_of(&tight);
        face == *other
    }

    fn face_of(&self, normals: &[&IntVec]) -> Cone {
        let rays = self.rays.iter().filter(|r| normals.iter().all(|a| dot(a, r).is_zero())).cloned().collect();
        Cone::from_generators(rays, self.lineality.clone(), self.ambient)
    }

    /// The face cut out by the facet normal `a`.
    pub fn facet(&self, a: &IntVec) -> Cone {
        self.face_of(&[a])
    }

    /// All faces of dimension `m`.
    pub fn faces(&self, m: usize) -> Vec<Cone> {
        let mut out: Vec<Cone> = Vec::new();
        if m > self.dim() {
            return out;
        }
        let mut layer: Vec<Cone> = vec![self.clone()];
        while let Some(top) = layer.first() {
            if top.dim() == m {
                break;
            }
            let mut next: Vec<Cone> = Vec::new();
            for c in &layer {
                for a in &c.facets {
                    let f = c.facet(a);
                    if !next.contains(&f) {
                        next.push(f);
                    }
                }
            }
            if next.is_empty() {
                return out;
            }
            layer = next;
        }
        out.extend(layer);
        out.sort();
        out
    }

    /// Intersection with another cone.
    pub fn intersect(&self, other: &Cone) -> Cone {
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        Cone::from_hrep(&eqs, &ineqs, self.ambient).expect("dimensions agree")
    }

    /// Image under the linear map `f`, landing in `R^m`.
    pub fn map(&self, f: impl Fn(&IntVec) -> IntVec, m: usize) -> Cone {
        let rays = self.rays.iter().map(&f).collect();
        let lin = self.lineality.iter().map(&f).collect();
        Cone::from_generators(rays, lin, m)
    }

    /// The product with a line in a fresh last coordinate.
    pub fn cross_with_line(&self) -> Cone {
        let n = self.ambient;
        let ext = |v: &IntVec| {
            let mut w = v.clone();
            w.push(Int::zero());
            w
        };
        let rays = self.rays.iter().map(ext).collect();
        let mut lin: Vec<IntVec> = self.lineality.iter().map(ext).collect();
        let mut e = vec![Int::zero(); n + 1];
        e[n] = Int::one();
        lin.push(e);
        Cone::from_generators(rays, lin, n + 1)
    }
}

/// A cone translated by an offset with entries in `Q[ε]`.
#[derive(Debug, Clone)]
pub struct DisplacedCone {
    /// The cone being translated.
    pub base: Cone,
    /// The translation vector.
    pub offset: Vec<QEps>,
}

impl DisplacedCone {
    /// A cone with zero offset.
    pub fn at_origin(base: Cone) -> Self {
        let n = base.ambient_dim();
        DisplacedCone { base, offset: vec![QEps::zero(); n] }
    }

    /// The cone translated by `ε·v`.
    pub fn displaced(base: Cone, v: &[Int]) -> Self {
        let offset = v.iter().map(|x| QEps::new(Rat::zero(), Rat::from_integer(x.clone()))).collect();
        DisplacedCone { base, offset }
    }
}

/// Outcome of [`meet_transversally`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Meeting {
    /// The closed cones are disjoint.
    Empty,
    /// The relative interiors meet, and the spans are transverse with the
    /// expected intersection dimension. The witness lies in both relative
    /// interiors.
    Transverse(Vec<QEps>),
    /// The cones meet but not transversely in their relative interiors.
    Degenerate,
}

fn meeting_system(p: &DisplacedCone, q: &DisplacedCone, strict: bool) -> (System, usize, usize) {
    let n = p.base.ambient_dim();
    let pr = p.base.rays().len();
    let pl = p.base.lineality().len();
    let qr = q.base.rays().len();
    let ql = q.base.lineality().len();
    let nv = pr + pl + qr + ql;
    let mut s = System::new(nv);
    for i in 0..n {
        let mut c = Vec::with_capacity(nv);
        for v in p.base.rays().iter().chain(p.base.lineality()) {
            c.push(Rat::from_integer(v[i].clone()));
        }
        for v in q.base.rays().iter().chain(q.base.lineality()) {
            c.push(Rat::from_integer(-v[i].clone()));
        }
        s.equalities.push((c, &q.offset[i] - &p.offset[i]));
    }
    for j in (0..pr).chain(pr + pl..pr + pl + qr) {
        let mut c = vec![Rat::zero(); nv];
        c[j] = Rat::one();
        let con = if strict { Constraint::gt(c, QEps::zero()) } else { Constraint::geq(c, QEps::zero()) };
        s.inequalities.push(con);
    }
    (s, pr, pl)
}

/// Decides how two displaced cones meet, expecting an intersection of
/// dimension `m`.
pub fn meet_transversally(p: &DisplacedCone, q: &DisplacedCone, m: usize) -> Meeting {
    let n = p.base.ambient_dim();
    let (closed, _, _) = meeting_system(p, q, false);
    if !closed.feasible() {
        return Meeting::Empty;
    }
    let (open, pr, pl) = meeting_system(p, q, true);
    let Some(sol) = open.solve() else {
        return Meeting::Degenerate;
    };
    let mut both = p.base.span().to_vec();
    both.extend(q.base.span().iter().cloned());
    let transverse = rank(&both, n) == n && p.base.dim() + q.base.dim() == n + m;
    if !transverse {
        return Meeting::Degenerate;
    }
    let mut x = p.offset.clone();
    for (coef, v) in sol[..pr + pl].iter().zip(p.base.rays().iter().chain(p.base.lineality())) {
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi = &*xi + &coef.scale(&Rat::from_integer(vi.clone()));
        }
    }
    Meeting::Transverse(x)
}
