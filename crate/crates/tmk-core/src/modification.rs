//! Elementary open matroidal modifications and their contractions.
//!
//! Deleting a non-loop, non-coloop element `i >= 1` of `M` projects `B(M)`
//! onto `B(M \ i)` by forgetting coordinate `i - 1`. This projection `δ`
//! carries cycles forward ([`pushforward`]); cycles of the target lift back
//! ([`pullback`]) as the graph of the modification function plus the part
//! of its undergraph needed for balancing. The divisor of the modification
//! is `B(M / i)` in target coordinates.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Signed, Zero};

use crate::bergman::bergman_cycle;
use crate::cycles::{covered, FanCycle};
use crate::error::{Error, Result};
use crate::lattice::{delete_coordinates, normal_generator, pushforward_index, saturation};
use crate::linear::{combine, coordinates, dot, dot_int_rat, dot_rat, integerize, nullspace, rank, rref, to_rat, Int, IntVec, Rat, RatVec};
use crate::matroid::{removal_map, Matroid};
use crate::polyhedra::{chambers, Cone};

/// A Bergman fan together with the bookkeeping needed by the recursive
/// product: the matroid in chart form and the original label of every
/// ground element.
#[derive(Debug, Clone)]
pub struct MatroidalContext {
    matroid: Matroid,
    labels: Vec<usize>,
    fan: FanCycle,
}

impl MatroidalContext {
    /// The context of `B(m)` with labels `0..n`.
    pub fn new(m: Matroid) -> Result<Self> {
        let labels = (0..m.ground_size()).collect();
        MatroidalContext::with_labels(m, labels)
    }

    /// The context of `B(m)` with the given original labels.
    pub fn with_labels(m: Matroid, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != m.ground_size() {
            return Err(Error::DimensionMismatch { expected: m.ground_size(), found: labels.len() });
        }
        if !m.loops().is_empty() {
            return Err(Error::InvalidMatroid(String::from("matroid has loops; its open fan is empty")));
        }
        let fan = bergman_cycle(&m);
        Ok(MatroidalContext { matroid: m, labels, fan })
    }

    /// The matroid.
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// Original label of each ground element.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// The fan as a cycle of weight one.
    pub fn fan(&self) -> &FanCycle {
        &self.fan
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.fan.ambient_dim()
    }

    /// Dimension of the fan.
    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    /// Coordinates spanning the lineality space coming from coloops other
    /// than the chart element.
    pub fn lineality_coordinates(&self) -> Vec<usize> {
        self.matroid.coloops().into_iter().filter(|&c| c >= 1).map(|c| c - 1).collect()
    }

    /// Whether the fan is all of the ambient space.
    pub fn is_linear_space(&self) -> bool {
        self.matroid.rank() == self.matroid.ground_size()
    }

    /// Elements that can be contracted: neither the chart element, a loop,
    /// nor a coloop.
    pub fn contractible(&self) -> Vec<usize> {
        let coloops = self.matroid.coloops();
        (1..self.matroid.ground_size()).filter(|e| !coloops.contains(e)).collect()
    }

    /// The context of `B(M) × R`, the new coordinate last.
    pub fn cross_with_line(&self) -> Result<Self> {
        let n = self.matroid.ground_size();
        let m = self.matroid.insert_coloop(n)?;
        let mut labels = self.labels.clone();
        labels.push(self.labels.iter().max().map_or(0, |x| x + 1));
        MatroidalContext::with_labels(m, labels)
    }
}

/// A facet of the source fan on which the projection is injective.
#[derive(Debug, Clone)]
struct GraphPiece {
    image: Cone,
    basis: Vec<IntVec>,
    image_basis: Vec<IntVec>,
}

impl GraphPiece {
    /// The point of the source piece lying over `v`.
    fn lift(&self, v: &[Rat], n: usize) -> Option<RatVec> {
        let y = coordinates(&self.image_basis, v)?;
        Some(combine(&y, &self.basis, n))
    }
}

/// An elementary contraction `δ: B(M) → B(M \ i)`.
#[derive(Debug, Clone)]
pub struct Contraction {
    source: MatroidalContext,
    target: MatroidalContext,
    element: usize,
    coordinate: usize,
    divisor: FanCycle,
    pieces: Vec<GraphPiece>,
}

/// Builds the contraction deleting element `i` of the context's matroid.
pub fn elementary_contraction(ctx: &MatroidalContext, i: usize) -> Result<Contraction> {
    let m = &ctx.matroid;
    if i >= m.ground_size() {
        return Err(Error::InvalidElement(i));
    }
    if i == 0 {
        return Err(Error::NotContractible(String::from("element 0 defines the chart")));
    }
    if m.loops().contains(&i) {
        return Err(Error::NotContractible(format!("element {i} is a loop")));
    }
    if m.coloops().contains(&i) {
        return Err(Error::NotContractible(format!("element {i} is a coloop")));
    }
    let deleted = m.delete(i)?;
    let labels = (0..m.ground_size()).filter(|&j| j != i).map(|j| ctx.labels[j]).collect();
    let target = MatroidalContext::with_labels(deleted, labels)?;
    let quotient = m.contract(i)?;
    let divisor = bergman_cycle(&quotient);
    let c = i - 1;
    let n = ctx.ambient_dim();
    let mut pieces = Vec::new();
    for (f, _) in ctx.fan.facets() {
        let image = project_cone(f, c, n);
        if image.dim() != f.dim() {
            continue;
        }
        let basis = f.lattice_basis();
        let image_basis = basis.iter().map(|b| delete_coordinates(b, &[c])).collect();
        pieces.push(GraphPiece { image, basis, image_basis });
    }
    Ok(Contraction { source: ctx.clone(), target, element: i, coordinate: c, divisor, pieces })
}

fn project_cone(f: &Cone, c: usize, n: usize) -> Cone {
    f.map(|v| delete_coordinates(v, &[c]), n - 1)
}

fn unit(n: usize, c: usize) -> IntVec {
    let mut e = vec![Int::zero(); n];
    e[c] = Int::one();
    e
}

impl Contraction {
    /// The source context `B(M)`.
    pub fn source(&self) -> &MatroidalContext {
        &self.source
    }

    /// The target context `B(M \ i)`.
    pub fn target(&self) -> &MatroidalContext {
        &self.target
    }

    /// The deleted element `i`.
    pub fn element(&self) -> usize {
        self.element
    }

    /// The ambient coordinate forgotten by the projection.
    pub fn kernel_coordinate(&self) -> usize {
        self.coordinate
    }

    /// `B(M / i)` in target coordinates; empty when `M / i` has loops.
    pub fn divisor(&self) -> &FanCycle {
        &self.divisor
    }

    /// Where a source element goes in the target.
    pub fn relabel(&self, e: usize) -> Option<usize> {
        removal_map(self.element, e)
    }

    /// The context of `divisor × R` inside the source ambient space: the
    /// matroid `M / i` with a coloop put back at `i`.
    pub fn divisor_context(&self) -> Result<MatroidalContext> {
        let m = self.source.matroid.contract(self.element)?.insert_coloop(self.element)?;
        MatroidalContext::with_labels(m, self.source.labels.clone())
    }

    /// The modification function of the contraction on the target fan: on
    /// each image of a graph piece it reads off the forgotten coordinate
    /// of the lift.
    pub fn modification_function(&self) -> PLFunction {
        let n1 = self.target.ambient_dim();
        let mut facets = Vec::new();
        let mut slopes = Vec::new();
        for p in &self.pieces {
            let values: Vec<Rat> = p.basis.iter().map(|b| Rat::from_integer(b[self.coordinate].clone())).collect();
            slopes.push(functional_on_basis(&p.image_basis, &values, n1));
            facets.push((p.image.clone(), Int::one()));
        }
        let domain = FanCycle::new(n1, self.target.dim(), facets).expect("graph pieces keep their dimension");
        PLFunction { domain, slopes }
    }
}

/// The functional in the span of `basis` taking the given values on it.
fn functional_on_basis(basis: &[IntVec], values: &[Rat], n: usize) -> RatVec {
    let k = basis.len();
    if k == 0 {
        return vec![Rat::zero(); n];
    }
    let b: Vec<RatVec> = basis.iter().map(|r| to_rat(r)).collect();
    let rows: Vec<RatVec> = (0..k)
        .map(|i| {
            let mut r: RatVec = (0..k).map(|j| dot_rat(&b[i], &b[j])).collect();
            r.push(values[i].clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&rows, k + 1);
    let mut z = vec![Rat::zero(); k];
    for (row, &p) in m.iter().zip(&pivots) {
        z[p] = row[k].clone();
    }
    let mut out = vec![Rat::zero(); n];
    for (zi, bi) in z.iter().zip(&b) {
        for j in 0..n {
            out[j] += zi * &bi[j];
        }
    }
    out
}

/// Pushes a source cycle forward, assuming it is supported on the source
/// fan.
pub(crate) fn push_unchecked(c: &Contraction, a: &FanCycle) -> Result<FanCycle> {
    let n = c.source.ambient_dim();
    if a.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.ambient_dim() });
    }
    let mut facets = Vec::new();
    for (s, w) in a.facets() {
        let idx = match pushforward_index(&s.lattice(), &[c.coordinate]) {
            Ok(i) => i,
            Err(Error::FaceContracted) => continue,
            Err(e) => return Err(e),
        };
        facets.push((project_cone(s, c.coordinate, n), w * idx));
    }
    Ok(FanCycle::new(n - 1, a.dim(), facets)?.normalize())
}

/// The pushforward `δ_* A`: images of the facets on which `δ` is injective,
/// weighted by the lattice index of the projection.
pub fn pushforward(c: &Contraction, a: &FanCycle) -> Result<FanCycle> {
    if a.ambient_dim() != c.source.ambient_dim() || !a.support_within(&c.source.fan) {
        return Err(Error::NotSubcycle(String::from("cycle is not supported on the source fan")));
    }
    push_unchecked(c, a)
}

/// The result of pulling a cycle back, keeping the undergraph facets
/// apart.
#[derive(Debug, Clone)]
pub(crate) struct Pullback {
    pub cycle: FanCycle,
    /// Undergraph facets `wall + R_{>=0}(-e_c)` with their weights.
    pub attachments: Vec<(Cone, Int)>,
}

/// Lifts the facets of `a` to the graph pieces over them.
fn lift_graph(c: &Contraction, a: &FanCycle) -> Result<FanCycle> {
    let n = c.source.ambient_dim();
    let n1 = n - 1;
    if a.ambient_dim() != n1 {
        return Err(Error::DimensionMismatch { expected: n1, found: a.ambient_dim() });
    }
    let mut facets = Vec::new();
    for (s, w) in a.facets() {
        if s.dim() == 0 {
            facets.push((Cone::origin(n), w.clone()));
            continue;
        }
        let cands: Vec<&GraphPiece> =
            c.pieces.iter().filter(|p| s.span().iter().all(|b| p.image.equations().iter().all(|e| dot(e, b).is_zero()))).collect();
        if cands.is_empty() {
            return Err(Error::NotSubcycle(String::from("no facet of the source lies over this cone")));
        }
        let planes: Vec<IntVec> = cands.iter().flat_map(|p| p.image.facet_normals().iter().cloned()).collect();
        for ch in chambers(s.span(), n1, core::slice::from_ref(s), &planes) {
            let Some(p) = cands.iter().find(|p| p.image.contains_point(&ch.point)) else {
                return Err(Error::NotSubcycle(String::from("cone leaves the target fan")));
            };
            let k = ch.cone(s.span(), n1);
            let lift_vec = |v: &IntVec| -> Result<IntVec> {
                let x = p.lift(&to_rat(v), n).ok_or_else(|| Error::Internal(String::from("lift outside piece")))?;
                integerize(&x).ok_or_else(|| Error::Internal(String::from("lift of a nonzero vector vanished")))
            };
            let rays = k.rays().iter().map(lift_vec).collect::<Result<Vec<_>>>()?;
            let lin = k.lineality().iter().map(lift_vec).collect::<Result<Vec<_>>>()?;
            let lifted = Cone::new(rays, lin, n)?;
            let idx = pushforward_index(&lifted.lattice(), &[c.coordinate])?;
            if !(w % &idx).is_zero() {
                return Err(Error::Internal(String::from("lift weight is not integral")));
            }
            facets.push((lifted, w / idx));
        }
    }
    Ok(FanCycle::new(n, a.dim(), facets)?.normalize())
}

/// Attaches undergraph facets `wall + R_{>=0}(-e_c)` wherever the lift is
/// unbalanced.
fn complete_undergraph(c: &Contraction, lift: &FanCycle) -> Result<Vec<(Cone, Int)>> {
    let n = c.source.ambient_dim();
    let e = unit(n, c.coordinate);
    let down: IntVec = e.iter().map(|x| -x).collect();
    let mut out = Vec::new();
    for wall in lift.walls() {
        if wall.is_balanced() {
            continue;
        }
        let mut with_kernel = wall.space.clone();
        with_kernel.push(e.clone());
        if rank(&with_kernel, n) != wall.space.len() + 1 {
            return Err(Error::Internal(String::from("kernel direction lies in an unbalanced wall")));
        }
        let mut deficit_span = with_kernel.clone();
        deficit_span.push(wall.deficit.clone());
        if rank(&deficit_span, n) != with_kernel.len() {
            return Err(Error::Internal(String::from("balancing deficit is not vertical")));
        }
        let phi = nullspace(&wall.space, n).into_iter().find(|f| !f[c.coordinate].is_zero()).expect("kernel direction is outside the wall");
        let phi: IntVec = if phi[c.coordinate].is_positive() { phi.iter().map(|x| -x).collect() } else { phi };
        let lat = saturation(&with_kernel, n);
        let u = normal_generator(&lat, &phi).expect("functional is nonzero on the kernel direction");
        let num = -dot(&phi, &wall.deficit);
        let den = dot(&phi, &u);
        if !(&num % &den).is_zero() {
            return Err(Error::Internal(String::from("undergraph weight is not integral")));
        }
        let weight = num / den;
        let mut rays = wall.cone.rays().to_vec();
        rays.push(down.clone());
        let cone = Cone::new(rays, wall.cone.lineality().to_vec(), n)?;
        out.push((cone, weight));
    }
    Ok(out)
}

pub(crate) fn pullback_detailed(c: &Contraction, a: &FanCycle) -> Result<Pullback> {
    let lift = lift_graph(c, a)?;
    let attachments = complete_undergraph(c, &lift)?;
    let under = FanCycle::new(c.source.ambient_dim(), a.dim(), attachments.clone())?;
    let cycle = lift.plus(&under)?.normalize();
    Ok(Pullback { cycle, attachments })
}

/// The pullback `δ^* A`: the lift of `A` to the graph of the modification
/// function, completed to a balanced cycle by undergraph facets.
pub fn pullback(c: &Contraction, a: &FanCycle) -> Result<FanCycle> {
    Ok(pullback_detailed(c, a)?.cycle)
}

/// A piecewise linear function on a fan cycle, linear on each stored facet
/// and homogeneous.
#[derive(Debug, Clone)]
pub struct PLFunction {
    domain: FanCycle,
    slopes: Vec<RatVec>,
}

impl PLFunction {
    /// A function with one linear functional per facet of `domain`.
    pub fn new(domain: FanCycle, slopes: Vec<RatVec>) -> Result<Self> {
        if slopes.len() != domain.facets().len() {
            return Err(Error::DimensionMismatch { expected: domain.facets().len(), found: slopes.len() });
        }
        if let Some(s) = slopes.iter().find(|s| s.len() != domain.ambient_dim()) {
            return Err(Error::DimensionMismatch { expected: domain.ambient_dim(), found: s.len() });
        }
        Ok(PLFunction { domain, slopes })
    }

    /// The maximum of integer linear functions, restricted to `domain`.
    pub fn max_of_linear(domain: &FanCycle, linears: &[IntVec]) -> Result<Self> {
        let n = domain.ambient_dim();
        if linears.is_empty() {
            return Err(Error::Precondition(String::from("maximum of no functions")));
        }
        if let Some(l) = linears.iter().find(|l| l.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: l.len() });
        }
        let mut planes = Vec::new();
        for (i, a) in linears.iter().enumerate() {
            for b in &linears[i + 1..] {
                let d: IntVec = a.iter().zip(b).map(|(x, y)| x - y).collect();
                if d.iter().any(|x| !x.is_zero()) {
                    planes.push(d);
                }
            }
        }
        let mut facets = Vec::new();
        let mut slopes = Vec::new();
        for (s, w) in domain.facets() {
            let best =
                |p: &[Rat]| -> &IntVec { linears.iter().max_by(|a, b| dot_int_rat(a, p).cmp(&dot_int_rat(b, p))).expect("nonempty") };
            if s.dim() == 0 {
                facets.push((s.clone(), w.clone()));
                slopes.push(to_rat(&linears[0]));
                continue;
            }
            for ch in chambers(s.span(), n, core::slice::from_ref(s), &planes) {
                facets.push((ch.cone(s.span(), n), w.clone()));
                slopes.push(to_rat(best(&ch.point)));
            }
        }
        PLFunction::new(FanCycle::new(n, domain.dim(), facets)?, slopes)
    }

    /// The domain, refined so that the function is linear on every facet.
    pub fn domain(&self) -> &FanCycle {
        &self.domain
    }

    /// The linear functional on each facet of the domain.
    pub fn slopes(&self) -> &[RatVec] {
        &self.slopes
    }

    /// Value at a point of the support.
    pub fn eval(&self, p: &[Rat]) -> Option<Rat> {
        self.domain.facets().iter().zip(&self.slopes).find(|((c, _), _)| c.contains_point(p)).map(|(_, s)| dot_rat(s, p))
    }

    /// The restriction to a cycle supported on the domain.
    pub fn restrict(&self, a: &FanCycle) -> Result<Self> {
        let n = self.domain.ambient_dim();
        if a.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.ambient_dim() });
        }
        let mut facets = Vec::new();
        let mut slopes = Vec::new();
        for (s, w) in a.facets() {
            let cands: Vec<usize> = (0..self.domain.facets().len())
                .filter(|&i| {
                    let d = &self.domain.facets()[i].0;
                    s.span().iter().all(|b| d.equations().iter().all(|e| dot(e, b).is_zero()))
                })
                .collect();
            if s.dim() == 0 {
                let Some(&i) = cands.first() else {
                    return Err(Error::NotSubcycle(String::from("origin outside the domain")));
                };
                facets.push((s.clone(), w.clone()));
                slopes.push(self.slopes[i].clone());
                continue;
            }
            let planes: Vec<IntVec> = cands.iter().flat_map(|&i| self.domain.facets()[i].0.facet_normals().iter().cloned()).collect();
            for ch in chambers(s.span(), n, core::slice::from_ref(s), &planes) {
                let Some(&i) = cands.iter().find(|&&i| self.domain.facets()[i].0.contains_point(&ch.point)) else {
                    return Err(Error::NotSubcycle(String::from("cycle leaves the domain of the function")));
                };
                facets.push((ch.cone(s.span(), n), w.clone()));
                slopes.push(self.slopes[i].clone());
            }
        }
        PLFunction::new(FanCycle::new(n, a.dim(), facets)?, slopes)
    }
}

/// The divisor of `f` on its domain: each wall gets the weight
/// `sum w_i f(u_i) - f(sum w_i u_i)` over the facets around it.
pub fn divisor(f: &PLFunction) -> Result<FanCycle> {
    let v = &f.domain;
    let n = v.ambient_dim();
    if v.dim() == 0 {
        return Err(Error::Precondition(String::from("divisor of a function on a point")));
    }
    let mut facets = Vec::new();
    for wall in v.walls() {
        if !wall.is_balanced() {
            return Err(Error::Precondition(String::from("domain of the function is not balanced")));
        }
        let (first, _) = &wall.contributions[0];
        let l0 = &f.slopes[*first];
        for (i, _) in &wall.contributions {
            let li = &f.slopes[*i];
            if wall.space.iter().any(|b| dot_int_rat(b, li) != dot_int_rat(b, l0)) {
                return Err(Error::Discontinuous);
            }
        }
        let mut value = -dot_int_rat(&wall.deficit, l0);
        for (i, u) in &wall.contributions {
            let w = &v.facets()[*i].1;
            value += Rat::from_integer(w.clone()) * dot_int_rat(u, &f.slopes[*i]);
        }
        if !value.is_integer() {
            return Err(Error::Internal(String::from("divisor weight is not integral")));
        }
        facets.push((wall.cone, value.to_integer()));
    }
    Ok(FanCycle::new(n, v.dim() - 1, facets)?.normalize())
}

/// The decomposition `Δ_A = δ^*δ_*A - A` together with `D_A`, the
/// undergraph walls of `δ^*δ_*A` crossed with the kernel line. Both live in
/// `divisor × R`, in source coordinates.
pub(crate) fn delta_unchecked(c: &Contraction, a: &FanCycle) -> Result<(FanCycle, FanCycle)> {
    let pushed = push_unchecked(c, a)?;
    delta_from_pushed(c, a, &pushed)
}

/// [`delta_unchecked`] with `δ_*A` already at hand.
pub(crate) fn delta_from_pushed(c: &Contraction, a: &FanCycle, pushed: &FanCycle) -> Result<(FanCycle, FanCycle)> {
    let n = c.source.ambient_dim();
    let pb = pullback_detailed(c, pushed)?;
    let delta = pb.cycle.plus(&a.neg())?.normalize();
    let e = unit(n, c.coordinate);
    let mut d = Vec::new();
    for (cone, w) in pb.attachments {
        let mut lin = cone.lineality().to_vec();
        lin.push(e.clone());
        d.push((Cone::new(cone.rays().to_vec(), lin, n)?, w));
    }
    let d = FanCycle::new(n, a.dim(), d)?.normalize();
    let delta = if delta.is_empty() { FanCycle::empty(n, a.dim()) } else { delta };
    Ok((delta, d))
}

/// `Δ_A` and `D_A` for a cycle `A` of the source, checked to lie in
/// `divisor × R`.
pub fn delta_decomposition(c: &Contraction, a: &FanCycle) -> Result<(FanCycle, FanCycle)> {
    if a.ambient_dim() != c.source.ambient_dim() || !a.support_within(&c.source.fan) {
        return Err(Error::NotSubcycle(String::from("cycle is not supported on the source fan")));
    }
    let (delta, d) = delta_unchecked(c, a)?;
    if c.divisor.is_empty() {
        if !delta.is_empty() || !d.is_empty() {
            return Err(Error::Internal(String::from("nonzero correction for an empty divisor")));
        }
        return Ok((delta, d));
    }
    let dr = c.divisor_context()?;
    let cones: Vec<&Cone> = dr.fan.facets().iter().map(|(s, _)| s).collect();
    for (s, _) in delta.facets().iter().chain(d.facets()) {
        if !covered(s, &cones) {
            return Err(Error::Internal(String::from("correction term leaves divisor × R")));
        }
    }
    Ok((delta, d))
}
