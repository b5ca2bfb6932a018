//! Bergman fans of matroids in the affine chart of element `0`.
//!
//! For a matroid on `{0, …, n}` the fan lives in `R^n`, where coordinate
//! `j - 1` belongs to element `j`. Element `j >= 1` has the vector
//! `v_j = -e_{j-1}`, element `0` has `v_0 = e_0 + … + e_{n-1}`, and a flat `F`
//! has `v_F = sum_{i in F} v_i`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::cycles::FanCycle;
use crate::error::{Error, Result};
use crate::linear::{Int, IntVec};
use crate::matroid::{elements, size, Matroid, Set};
use crate::polyhedra::Cone;

/// The chart vector `v_F` of a subset of a ground set of size `ground`.
pub fn chart_vector(ground: usize, f: Set) -> IntVec {
    let n = ground - 1;
    let base = if f & 1 != 0 { Int::one() } else { Int::zero() };
    let mut v = vec![base; n];
    for e in elements(f) {
        if e >= 1 {
            v[e - 1] -= Int::one();
        }
    }
    v
}

/// The fine subdivision of a Bergman fan: one cone per maximal chain of
/// proper nonempty flats, all of weight one.
#[derive(Debug, Clone)]
pub struct BergmanFan {
    matroid: Matroid,
    cones: Vec<Cone>,
    chains: Vec<Vec<Set>>,
    note: Option<String>,
}

/// Maximal chains of flats strictly between `bottom` and `top` in the
/// lattice of `m`, restricted to flats accepted by `keep`.
fn maximal_chains(m: &Matroid, keep: impl Fn(Set) -> bool) -> Vec<Vec<Set>> {
    let flats = m.flats();
    let r = m.rank();
    let levels: Vec<Vec<Set>> = (0..=r).map(|k| flats.by_rank[k].iter().copied().filter(|&f| keep(f)).collect()).collect();
    // Ranks 1..r-1 are the proper nonempty flats for a loopless matroid.
    let mut chains: Vec<Vec<Set>> = vec![Vec::new()];
    for level in levels.iter().take(r).skip(1) {
        let mut next = Vec::new();
        for c in &chains {
            for &f in level {
                if c.last().is_none_or(|&g| g & f == g) {
                    let mut d = c.clone();
                    d.push(f);
                    next.push(d);
                }
            }
        }
        chains = next;
    }
    chains
}

/// The fine Bergman fan of `m`. A matroid with loops has an empty fan in
/// the open chart; the returned fan then carries an explanatory note.
pub fn bergman_fine(m: &Matroid) -> BergmanFan {
    let g = m.ground_size();
    let n = g - 1;
    if !m.loops().is_empty() {
        return BergmanFan {
            matroid: m.clone(),
            cones: Vec::new(),
            chains: Vec::new(),
            note: Some(String::from("matroid has loops; its fan lies outside the open chart")),
        };
    }
    let chains = maximal_chains(m, |_| true);
    let cones =
        chains.iter().map(|c| Cone::new(c.iter().map(|&f| chart_vector(g, f)).collect(), Vec::new(), n).expect("chart vectors")).collect();
    BergmanFan { matroid: m.clone(), cones, chains, note: None }
}

/// The Bergman fan as a cycle with coloops turned into lineality
/// directions. It has fewer cones than the fine fan but equals it as a
/// cycle.
pub fn bergman_cycle(m: &Matroid) -> FanCycle {
    let g = m.ground_size();
    let n = g - 1;
    let dim = m.rank().saturating_sub(1);
    if !m.loops().is_empty() || m.rank() == 0 {
        return FanCycle::empty(n, dim);
    }
    let coloops = m.coloops();
    let cmask: Set = coloops.iter().fold(0, |s, &c| s | (1 << c));
    let rest = m.ground() & !cmask;
    let r_rest = m.rank() - coloops.len();
    let lineality: Vec<IntVec> = coloops.iter().map(|&c| chart_vector(g, 1 << c)).collect();
    let flats = m.flats();
    let mut chains: Vec<Vec<Set>> = vec![Vec::new()];
    for k in 1..r_rest {
        let level: Vec<Set> = flats.by_rank[k].iter().copied().filter(|&f| f & cmask == 0 && f != rest).collect();
        let mut next = Vec::new();
        for c in &chains {
            for &f in &level {
                if c.last().is_none_or(|&h| h & f == h) {
                    let mut d = c.clone();
                    d.push(f);
                    next.push(d);
                }
            }
        }
        chains = next;
    }
    let facets = chains
        .iter()
        .map(|c| {
            let rays = c.iter().map(|&f| chart_vector(g, f)).collect();
            (Cone::new(rays, lineality.clone(), n).expect("chart vectors"), Int::one())
        })
        .collect();
    FanCycle::new(n, dim, facets).expect("chains give cones of the right dimension")
}

impl BergmanFan {
    /// The matroid.
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.matroid.ground_size() - 1
    }

    /// Dimension `rank - 1`.
    pub fn dim(&self) -> usize {
        self.matroid.rank().saturating_sub(1)
    }

    /// The cones, one per maximal chain.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// The chain of flats behind each cone.
    pub fn chains(&self) -> &[Vec<Set>] {
        &self.chains
    }

    /// Diagnostic for matroids whose open fan is empty.
    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// Distinct rays of the fine structure.
    pub fn rays(&self) -> Vec<IntVec> {
        let mut out: Vec<IntVec> = Vec::new();
        for c in &self.cones {
            for r in c.rays() {
                if !out.contains(r) {
                    out.push(r.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// The fan as a cycle with all weights one.
    pub fn cycle(&self) -> FanCycle {
        let facets = self.cones.iter().map(|c| (c.clone(), Int::one())).collect();
        FanCycle::new(self.ambient_dim(), self.dim(), facets).expect("cones have the fan dimension")
    }
}

/// The coarse structure of a two dimensional Bergman fan.
#[derive(Debug, Clone)]
pub struct CoarseFan {
    /// The coarse fan as a cycle of weight one cones.
    pub cycle: FanCycle,
    /// Bounding rays `(v1, v2)` of each coarse facet, in the order of
    /// `cycle.facets()`.
    pub bounding: Vec<(IntVec, IntVec)>,
    /// Distinct rays of the coarse structure.
    pub rays: Vec<IntVec>,
}

/// Removes the rays of rank two flats of size two and of points lying on
/// exactly two rank two flats, merging the cones on either side.
pub fn coarsen_2dim(b: &BergmanFan) -> Result<CoarseFan> {
    let m = &b.matroid;
    if b.dim() != 2 {
        return Err(Error::Precondition(String::from("coarse structure needs a two dimensional fan")));
    }
    if !m.loops().is_empty() {
        return Err(Error::Precondition(String::from("matroid has loops")));
    }
    if !m.coloops().is_empty() {
        return Err(Error::Precondition(String::from("matroid has coloops")));
    }
    let flats = m.flats();
    if flats.by_rank[1].iter().any(|&f| size(f) > 1) {
        return Err(Error::Precondition(String::from("matroid has double points")));
    }
    let rank2 = &flats.by_rank[2];
    let removable = |f: Set| match m.rank_mask(f) {
        2 => size(f) == 2,
        1 => rank2.iter().filter(|&&g| g & f == f).count() == 2,
        _ => false,
    };
    let k = b.chains.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for f in flats.all().filter(|&f| removable(f)) {
        let members: Vec<usize> = (0..k).filter(|&i| b.chains[i].contains(&f)).collect();
        for w in members.windows(2) {
            let (a, c) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = c;
        }
    }
    let g = m.ground_size();
    let n = g - 1;
    let mut classes: Vec<(usize, Vec<Set>)> = Vec::new();
    for i in 0..k {
        let root = find(&mut parent, i);
        let pos = match classes.iter().position(|(r, _)| *r == root) {
            Some(p) => p,
            None => {
                classes.push((root, Vec::new()));
                classes.len() - 1
            }
        };
        for &f in &b.chains[i] {
            if !removable(f) && !classes[pos].1.contains(&f) {
                classes[pos].1.push(f);
            }
        }
    }
    let mut facets = Vec::new();
    let mut bounding = Vec::new();
    let mut rays: Vec<IntVec> = Vec::new();
    for (_, fl) in classes {
        if fl.len() != 2 {
            return Err(Error::Internal(String::from("coarse facet without exactly two rays")));
        }
        let v1 = chart_vector(g, fl[0]);
        let v2 = chart_vector(g, fl[1]);
        for v in [&v1, &v2] {
            if !rays.contains(v) {
                rays.push(v.clone());
            }
        }
        facets.push((Cone::new(vec![v1.clone(), v2.clone()], Vec::new(), n)?, Int::one()));
        bounding.push((v1, v2));
    }
    rays.sort();
    Ok(CoarseFan { cycle: FanCycle::new(n, 2, facets)?, bounding, rays })
}

/// Whether every cone of the fine fan of `q` is a face of a cone of the
/// fine fan of `m`. An empty fan is a subfan of anything.
pub fn is_subfan(q: &BergmanFan, m: &BergmanFan) -> Result<bool> {
    if q.ambient_dim() != m.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: m.ambient_dim(), found: q.ambient_dim() });
    }
    Ok(q.cones.iter().all(|c| m.cones.iter().any(|d| d.has_face(c))))
}
