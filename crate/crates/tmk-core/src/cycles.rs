//! Weighted fan cycles.
//!
//! A [`FanCycle`] is a formal integer combination of `k`-dimensional cones
//! in `R^n`. The stored cones may overlap; two cycles are equal when their
//! difference is zero, which [`FanCycle::is_zero`] decides by cutting every
//! linear span into chambers and summing weights chamber by chamber.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::normal_generator;
use crate::linear::{dot, dot_int_rat, rank, Int, IntVec};
use crate::polyhedra::{chambers, Cone};

/// A formal sum of weighted `dim`-dimensional cones in `R^ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCycle {
    ambient: usize,
    dim: usize,
    facets: Vec<(Cone, Int)>,
}

/// A chamber of a codimension one linear space `W` of a cycle, with the
/// facets that have it as a boundary.
#[derive(Debug, Clone)]
pub struct Wall {
    /// The chamber, a `(k-1)`-dimensional cone.
    pub cone: Cone,
    /// Canonical basis of the span of the chamber.
    pub space: Vec<IntVec>,
    /// `(facet index, u)` where `u` is the primitive normal generator
    /// pointing from the wall into the facet.
    pub contributions: Vec<(usize, IntVec)>,
    /// `sum w u` over the contributions.
    pub deficit: IntVec,
}

impl Wall {
    /// Whether the weighted normals sum into the span of the wall.
    pub fn is_balanced(&self) -> bool {
        in_span(&self.space, &self.deficit)
    }
}

/// Result of [`FanCycle::is_balanced`].
#[derive(Debug, Clone)]
pub struct BalanceReport {
    /// Whether every wall is balanced.
    pub balanced: bool,
    /// Walls where balancing fails.
    pub failing: Vec<Cone>,
}

pub(crate) fn in_span(space: &[IntVec], v: &[Int]) -> bool {
    let n = v.len();
    let mut rows = space.to_vec();
    rows.push(v.to_vec());
    rank(&rows, n) == space.len()
}

/// Whether the union of `cones` covers `sigma`. Only cones whose span
/// contains the span of `sigma` can contribute to an open subset of it.
pub fn covered(sigma: &Cone, cones: &[&Cone]) -> bool {
    let n = sigma.ambient_dim();
    let relevant: Vec<&Cone> =
        cones.iter().copied().filter(|c| sigma.span().iter().all(|b| c.equations().iter().all(|e| dot(e, b).is_zero()))).collect();
    if relevant.is_empty() {
        return false;
    }
    if sigma.dim() == 0 {
        return true;
    }
    let planes: Vec<IntVec> = relevant.iter().flat_map(|c| c.facet_normals().iter().cloned()).collect();
    chambers(sigma.span(), n, core::slice::from_ref(sigma), &planes).iter().all(|ch| relevant.iter().any(|c| c.contains_point(&ch.point)))
}

impl FanCycle {
    /// Builds a cycle, checking dimensions and dropping zero weights.
    pub fn new(ambient: usize, dim: usize, facets: Vec<(Cone, Int)>) -> Result<FanCycle> {
        for (c, _) in &facets {
            if c.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: c.ambient_dim() });
            }
            if c.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: c.dim() });
            }
        }
        Ok(FanCycle { ambient, dim, facets: facets.into_iter().filter(|(_, w)| !w.is_zero()).collect() })
    }

    /// The empty cycle.
    pub fn empty(ambient: usize, dim: usize) -> FanCycle {
        FanCycle { ambient, dim, facets: Vec::new() }
    }

    /// The origin with weight `w`.
    pub fn point(ambient: usize, w: Int) -> FanCycle {
        FanCycle::new(ambient, 0, alloc::vec![(Cone::origin(ambient), w)]).expect("origin is zero dimensional")
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Pure dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The stored weighted cones.
    pub fn facets(&self) -> &[(Cone, Int)] {
        &self.facets
    }

    /// Whether no cone is stored. A cycle can be zero without being empty.
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Multiplies all weights by `c`.
    pub fn scale(&self, c: &Int) -> FanCycle {
        let facets = if c.is_zero() { Vec::new() } else { self.facets.iter().map(|(s, w)| (s.clone(), w * c)).collect() };
        FanCycle { facets, ..self.clone() }
    }

    /// The negative cycle.
    pub fn neg(&self) -> FanCycle {
        FanCycle { facets: self.facets.iter().map(|(s, w)| (s.clone(), -w)).collect(), ..self.clone() }
    }

    /// Formal sum without refinement. An empty operand adopts the other's
    /// dimension.
    pub fn plus(&self, other: &FanCycle) -> Result<FanCycle> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let mut facets = self.facets.clone();
        facets.extend(other.facets.iter().cloned());
        Ok(FanCycle { facets, ..self.clone() })
    }

    /// Sum of cycles, normalised.
    pub fn add(&self, other: &FanCycle) -> Result<FanCycle> {
        Ok(self.plus(other)?.normalize())
    }

    /// Difference of cycles, normalised.
    pub fn sub(&self, other: &FanCycle) -> Result<FanCycle> {
        self.add(&other.neg())
    }

    /// Whether the two cycles are equal.
    pub fn equals(&self, other: &FanCycle) -> Result<bool> {
        Ok(self.plus(&other.neg())?.is_zero())
    }

    /// Groups facets by linear span.
    fn by_span(&self) -> BTreeMap<Vec<IntVec>, Vec<usize>> {
        let mut groups: BTreeMap<Vec<IntVec>, Vec<usize>> = BTreeMap::new();
        for (i, (c, _)) in self.facets.iter().enumerate() {
            groups.entry(c.span().to_vec()).or_default().push(i);
        }
        groups
    }

    /// Nonzero weighted chambers of one span group; stops at the first
    /// nonzero chamber when `first_only`.
    fn group_chambers(&self, span: &[IntVec], idx: &[usize], first_only: bool) -> Vec<(Cone, Int)> {
        let n = self.ambient;
        let seeds: Vec<Cone> = idx.iter().map(|&i| self.facets[i].0.clone()).collect();
        let mut out = Vec::new();
        if self.dim == 0 {
            let w: Int = idx.iter().map(|&i| self.facets[i].1.clone()).sum();
            if !w.is_zero() {
                out.push((Cone::origin(n), w));
            }
            return out;
        }
        for ch in chambers(span, n, &seeds, &[]) {
            let w: Int = idx.iter().filter(|&&i| self.facets[i].0.contains_point(&ch.point)).map(|&i| self.facets[i].1.clone()).sum();
            if !w.is_zero() {
                out.push((ch.cone(span, n), w));
                if first_only {
                    break;
                }
            }
        }
        out
    }

    /// Whether the cycle is zero: every point carries total weight zero.
    pub fn is_zero(&self) -> bool {
        self.by_span().iter().all(|(span, idx)| self.group_chambers(span, idx, true).is_empty())
    }

    /// An equal cycle whose cones have pairwise disjoint interiors, nonzero
    /// weights, and where neighbours of equal weight are merged whenever
    /// their union is convex.
    pub fn normalize(&self) -> FanCycle {
        let mut facets: Vec<(Cone, Int)> = Vec::new();
        for (span, idx) in self.by_span() {
            if idx.len() == 1 {
                facets.push(self.facets[idx[0]].clone());
                continue;
            }
            let mut pieces = self.group_chambers(&span, &idx, false);
            merge_neighbours(&mut pieces);
            facets.extend(pieces);
        }
        facets.sort();
        FanCycle { facets, ..self.clone() }
    }

    /// The chambers of every codimension one span of the cycle, with the
    /// weighted normal vectors of the facets bounding them.
    pub fn walls(&self) -> Vec<Wall> {
        let n = self.ambient;
        if self.dim == 0 {
            return Vec::new();
        }
        let lattices: Vec<Vec<IntVec>> = self.facets.iter().map(|(c, _)| c.lattice_basis()).collect();
        let mut groups: BTreeMap<Vec<IntVec>, Vec<Cone>> = BTreeMap::new();
        for (c, _) in &self.facets {
            for a in c.facet_normals() {
                let f = c.facet(a);
                let entry = groups.entry(f.span().to_vec()).or_default();
                if !entry.contains(&f) {
                    entry.push(f);
                }
            }
        }
        let mut out = Vec::new();
        for (space, faces) in groups {
            let incident: Vec<usize> = (0..self.facets.len())
                .filter(|&i| {
                    let c = &self.facets[i].0;
                    space.iter().all(|b| c.equations().iter().all(|e| dot(e, b).is_zero()))
                })
                .collect();
            let planes: Vec<IntVec> = incident.iter().flat_map(|&i| self.facets[i].0.facet_normals().iter().cloned()).collect();
            for ch in chambers(&space, n, &faces, &planes) {
                let mut contributions = Vec::new();
                let mut deficit: IntVec = alloc::vec![Int::zero(); n];
                for &i in &incident {
                    let (c, w) = &self.facets[i];
                    if !c.contains_point(&ch.point) {
                        continue;
                    }
                    let Some(a) = c.facet_normals().iter().find(|a| dot_int_rat(a, &ch.point).is_zero()) else {
                        continue;
                    };
                    let u = normal_generator(&lattices[i], a).expect("facet normal is nonzero on its cone");
                    for (d, x) in deficit.iter_mut().zip(&u) {
                        *d += w * x;
                    }
                    contributions.push((i, u));
                }
                if contributions.is_empty() {
                    continue;
                }
                out.push(Wall { cone: ch.cone(&space, n), space: space.clone(), contributions, deficit });
            }
        }
        out
    }

    /// Checks the balancing condition at every wall.
    pub fn is_balanced(&self) -> BalanceReport {
        let failing: Vec<Cone> = self.walls().into_iter().filter(|w| !w.is_balanced()).map(|w| w.cone).collect();
        BalanceReport { balanced: failing.is_empty(), failing }
    }

    /// Faces of dimension `m` of the stored cones, without repetition.
    pub fn skeleton(&self, m: usize) -> Vec<Cone> {
        let mut out: Vec<Cone> = Vec::new();
        for (c, _) in &self.facets {
            for f in c.faces(m) {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out.sort();
        out
    }

    /// The product with a line in a fresh last coordinate.
    pub fn cross_with_line(&self) -> FanCycle {
        FanCycle {
            ambient: self.ambient + 1,
            dim: self.dim + 1,
            facets: self.facets.iter().map(|(c, w)| (c.cross_with_line(), w.clone())).collect(),
        }
    }

    /// Total weight at the origin of a zero dimensional cycle.
    pub fn origin_weight(&self) -> Int {
        if self.dim != 0 {
            return Int::zero();
        }
        self.facets.iter().map(|(_, w)| w.clone()).sum()
    }

    /// Whether every cone of `self` lies in the support of `other`.
    pub fn support_within(&self, other: &FanCycle) -> bool {
        let cones: Vec<&Cone> = other.facets.iter().map(|(c, _)| c).collect();
        self.facets.iter().all(|(c, _)| covered(c, &cones))
    }

    /// Whether every cone lies in the union of `cones`.
    pub fn supported_on(&self, cones: &[Cone]) -> bool {
        let refs: Vec<&Cone> = cones.iter().collect();
        self.facets.iter().all(|(c, _)| covered(c, &refs))
    }

    /// Applies `f` to every cone; cones whose dimension changes are
    /// rejected.
    pub fn map_cones(&self, ambient: usize, f: impl Fn(&Cone) -> Cone) -> Result<FanCycle> {
        let facets = self.facets.iter().map(|(c, w)| (f(c), w.clone())).collect();
        FanCycle::new(ambient, self.dim, facets)
    }
}

/// Greedily merges pairs of equal weight that share a facet and whose
/// union is convex.
fn merge_neighbours(pieces: &mut Vec<(Cone, Int)>) {
    'outer: loop {
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                if pieces[i].1 != pieces[j].1 {
                    continue;
                }
                if let Some(m) = try_merge(&pieces[i].0, &pieces[j].0) {
                    let w = pieces[i].1.clone();
                    pieces.swap_remove(j);
                    pieces[i] = (m, w);
                    continue 'outer;
                }
            }
        }
        return;
    }
}

fn try_merge(a: &Cone, b: &Cone) -> Option<Cone> {
    let shared = a.facet_normals().iter().find(|x| {
        let neg: IntVec = x.iter().map(|v| -v).collect();
        b.facet_normals().contains(&neg)
    })?;
    let neg: IntVec = shared.iter().map(|v| -v).collect();
    let others_a: Vec<&IntVec> = a.facet_normals().iter().filter(|x| *x != shared).collect();
    let others_b: Vec<&IntVec> = b.facet_normals().iter().filter(|x| **x != neg).collect();
    let valid = |normals: &[&IntVec], c: &Cone| {
        normals.iter().all(|h| c.rays().iter().all(|r| !dot(h, r).is_negative()) && c.lineality().iter().all(|l| dot(h, l).is_zero()))
    };
    if !valid(&others_a, b) || !valid(&others_b, a) {
        return None;
    }
    let n = a.ambient_dim();
    let mut ineqs: Vec<IntVec> = others_a.into_iter().cloned().collect();
    ineqs.extend(others_b.into_iter().cloned());
    let merged = Cone::from_hrep(a.equations(), &ineqs, n).ok()?;
    debug_assert_eq!(merged.dim(), a.dim());
    Some(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::ivec;
    use proptest::prelude::*;

    pub(crate) fn ray_cycle(n: usize, rays: &[(&[i64], i64)]) -> FanCycle {
        let facets = rays.iter().map(|(r, w)| (Cone::new(alloc::vec![ivec(r)], alloc::vec![], n).unwrap(), Int::from(*w))).collect();
        FanCycle::new(n, 1, facets).unwrap()
    }

    fn line(n: usize, dir: &[i64], w: i64) -> FanCycle {
        FanCycle::new(n, 1, alloc::vec![(Cone::new(alloc::vec![], alloc::vec![ivec(dir)], n).unwrap(), Int::from(w))]).unwrap()
    }

    fn std_line() -> FanCycle {
        ray_cycle(2, &[(&[-1, 0], 1), (&[0, -1], 1), (&[1, 1], 1)])
    }

    #[test]
    fn balancing_examples() {
        assert!(std_line().is_balanced().balanced);
        let bad = ray_cycle(2, &[(&[-1, 0], 2), (&[0, -1], 1), (&[1, 1], 1)]);
        let rep = bad.is_balanced();
        assert!(!rep.balanced);
        assert_eq!(rep.failing, alloc::vec![Cone::origin(2)]);
        for d in [2i64, 3, 5] {
            let b = ray_cycle(3, &[(&[0, 1, 1], 1), (&[1 - d, -d, 0], 1), (&[d - 1, d - 1, -1], 1)]);
            assert!(b.is_balanced().balanced);
        }
    }

    #[test]
    fn addition_examples() {
        let l = std_line();
        assert!(l.add(&l.neg()).unwrap().is_empty());
        let two = line(2, &[1, 0], 1).add(&line(2, &[0, 1], 1)).unwrap();
        assert_eq!(two.facets().len(), 2);
        assert!(two.equals(&ray_cycle(2, &[(&[1, 0], 1), (&[-1, 0], 1), (&[0, 1], 1), (&[0, -1], 1)])).unwrap());
        let doubled = l.add(&l).unwrap();
        assert!(doubled.equals(&l.scale(&Int::from(2))).unwrap());
        assert!(doubled.facets().iter().all(|(_, w)| *w == Int::from(2)));
        assert!(l.add(&FanCycle::point(2, Int::from(1))).is_err());
    }

    #[test]
    fn zero_examples() {
        assert!(FanCycle::empty(3, 1).is_zero());
        assert!(!std_line().is_zero());
        // A line split into two rays cancels against the line.
        let split = ray_cycle(2, &[(&[1, 1], 1), (&[-1, -1], 1)]);
        assert!(split.plus(&line(2, &[1, 1], -1)).unwrap().is_zero());
    }

    #[test]
    fn normalize_merges_rays_into_lines() {
        let split = ray_cycle(2, &[(&[1, 1], 3), (&[-1, -1], 3), (&[1, 0], 1), (&[1, 0], -1)]);
        let n = split.normalize();
        assert_eq!(n.facets().len(), 1);
        assert_eq!(n.facets()[0].0.lineality(), &[ivec(&[1, 1])]);
        // Overlapping two-dimensional cones.
        let a = Cone::new(alloc::vec![ivec(&[1, 0]), ivec(&[0, 1])], alloc::vec![], 2).unwrap();
        let b = Cone::new(alloc::vec![ivec(&[1, 1]), ivec(&[-1, 1])], alloc::vec![], 2).unwrap();
        let c = FanCycle::new(2, 2, alloc::vec![(a, Int::from(1)), (b, Int::from(1))]).unwrap().normalize();
        let weights: Vec<i64> = c.facets().iter().map(|(_, w)| i64::try_from(w).unwrap()).collect();
        assert_eq!(weights.iter().sum::<i64>(), 4);
        assert_eq!(c.facets().len(), 3);
    }

    #[test]
    fn skeleton_examples() {
        assert_eq!(std_line().skeleton(0), alloc::vec![Cone::origin(2)]);
        assert_eq!(std_line().skeleton(1).len(), 3);
    }

    #[test]
    fn cross_with_line_examples() {
        let p = FanCycle::point(0, Int::from(4));
        let l = p.cross_with_line();
        assert_eq!((l.ambient_dim(), l.dim()), (1, 1));
        assert_eq!(l.facets()[0].1, Int::from(4));
        let cyl = std_line().cross_with_line();
        assert_eq!((cyl.ambient_dim(), cyl.dim()), (3, 2));
        assert!(cyl.is_balanced().balanced);
    }

    #[test]
    fn two_dimensional_balancing() {
        // The plane of U_{3,4}: cones over pairs of -e1, -e2, -e3, (1,1,1).
        let v = [ivec(&[-1, 0, 0]), ivec(&[0, -1, 0]), ivec(&[0, 0, -1]), ivec(&[1, 1, 1])];
        let mut facets = alloc::vec![];
        for i in 0..4 {
            for j in i + 1..4 {
                facets.push((Cone::new(alloc::vec![v[i].clone(), v[j].clone()], alloc::vec![], 3).unwrap(), Int::from(1)));
            }
        }
        let p = FanCycle::new(3, 2, facets.clone()).unwrap();
        assert!(p.is_balanced().balanced);
        facets[0].1 = Int::from(2);
        assert!(!FanCycle::new(3, 2, facets).unwrap().is_balanced().balanced);
    }

    fn summary(c: &FanCycle) -> Vec<(Vec<IntVec>, Vec<IntVec>, Int)> {
        c.facets().iter().map(|(x, w)| (x.rays().to_vec(), x.lineality().to_vec(), w.clone())).collect()
    }

    fn balanced_ray_cycle() -> impl Strategy<Value = FanCycle> {
        proptest::collection::vec((proptest::collection::vec(-3i64..=3, 2), 1i64..=3), 1..=3).prop_filter_map("nonzero rays", |rs| {
            let mut rays: Vec<(IntVec, Int)> = Vec::new();
            let mut s = ivec(&[0, 0]);
            for (r, w) in rs {
                let r = crate::linear::primitive_part(&ivec(&r))?;
                for k in 0..2 {
                    s[k] += &r[k] * Int::from(w);
                }
                rays.push((r, Int::from(w)));
            }
            if !s.iter().all(Zero::is_zero) {
                let g = crate::linear::gcd_vec(&s);
                rays.push((s.iter().map(|x| -x / &g).collect(), g));
            }
            let facets = rays.into_iter().map(|(r, w)| (Cone::new(alloc::vec![r], alloc::vec![], 2).unwrap(), w)).collect();
            Some(FanCycle::new(2, 1, facets).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn addition_is_commutative_and_associative(a in balanced_ray_cycle(), b in balanced_ray_cycle(), c in balanced_ray_cycle()) {
            let ab = a.add(&b).unwrap();
            prop_assert!(ab.equals(&b.add(&a).unwrap()).unwrap());
            let left = ab.add(&c).unwrap();
            let right = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert!(left.equals(&right).unwrap());
            prop_assert!(ab.is_balanced().balanced, "{:?} | {:?} | {:?}", summary(&a), summary(&b), summary(&ab));
            prop_assert!(a.cross_with_line().add(&b.cross_with_line()).unwrap().equals(&ab.cross_with_line()).unwrap());
        }

        #[test]
        fn skeleton_top_dimension_recovers_facets(a in balanced_ray_cycle()) {
            let n = a.normalize();
            let sk = n.skeleton(1);
            let mut cones: Vec<Cone> = n.facets().iter().map(|(c, _)| c.clone()).collect();
            cones.sort();
            prop_assert_eq!(sk, cones);
        }
    }
}
