//! Generators of cycles in matroidal fans shared by the integration
//! suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tmk_core::bergman::bergman_cycle;
use tmk_core::cycles::{covered, FanCycle};
use tmk_core::linear::{gcd_vec, ivec, primitive_part, Int, IntVec};
use tmk_core::matroid::{is_quotient, Matroid, Set};
use tmk_core::modification::{divisor, elementary_contraction, pullback, Contraction, MatroidalContext, PLFunction};
use tmk_core::polyhedra::Cone;

pub fn rays_cycle(n: usize, rays: &[(IntVec, i64)]) -> FanCycle {
    let facets = rays.iter().map(|(r, w)| (Cone::new(vec![r.clone()], vec![], n).unwrap(), BigInt::from(*w))).collect();
    FanCycle::new(n, 1, facets).unwrap()
}

pub fn rays(n: usize, rs: &[(&[i64], i64)]) -> FanCycle {
    let v: Vec<(IntVec, i64)> = rs.iter().map(|(r, w)| (ivec(r), *w)).collect();
    rays_cycle(n, &v)
}

pub fn example_a() -> FanCycle {
    rays(3, &[(&[1, 1, 0], 1), (&[-1, -1, 0], 1)])
}

pub fn example_b(d: i64) -> FanCycle {
    rays(3, &[(&[0, 1, 1], 1), (&[1 - d, -d, 0], 1), (&[d - 1, d - 1, -1], 1)])
}

pub fn context(m: Matroid) -> MatroidalContext {
    MatroidalContext::new(m).unwrap()
}

pub fn whole_space(n: usize) -> FanCycle {
    FanCycle::new(n, n, vec![(Cone::whole_space(n), Int::from(1))]).unwrap()
}

/// Rays and positive weights of a balanced one dimensional fan in `R^n`
/// with small entries: `k` random rays closed up by one more.
pub fn random_curve_rays(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<(IntVec, i64)> {
    loop {
        let mut out: Vec<(IntVec, i64)> = Vec::new();
        let mut sum = vec![Int::from(0); n];
        for _ in 0..k {
            let r: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            let Some(p) = primitive_part(&ivec(&r)) else { continue };
            let w = rng.gen_range(1..=2);
            for (s, x) in sum.iter_mut().zip(&p) {
                *s += x * w;
            }
            out.push((p, w));
        }
        let closing: IntVec = sum.iter().map(|x| -x).collect();
        let Some(p) = primitive_part(&closing) else { continue };
        out.push((p, i64::try_from(gcd_vec(&closing)).unwrap()));
        if out.len() >= 3 {
            return out;
        }
    }
}

pub fn random_curve(rng: &mut ChaCha8Rng, n: usize, k: usize) -> FanCycle {
    rays_cycle(n, &random_curve_rays(rng, n, k))
}

/// The divisor on `domain` of a maximum of `k` random linear functions
/// with small coefficients.
pub fn random_hypersurface(rng: &mut ChaCha8Rng, domain: &FanCycle, k: usize) -> FanCycle {
    random_hypersurface_within(rng, domain, k, 2)
}

/// As [`random_hypersurface`], with coefficients in `-bound..=bound`.
pub fn random_hypersurface_within(rng: &mut ChaCha8Rng, domain: &FanCycle, k: usize, bound: i64) -> FanCycle {
    let n = domain.ambient_dim();
    loop {
        let linears: Vec<IntVec> = (0..k).map(|_| ivec(&(0..n).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())).collect();
        let d = divisor(&PLFunction::max_of_linear(domain, &linears).unwrap()).unwrap();
        if !d.is_zero() {
            return d;
        }
    }
}

/// Contractions from `ctx` down to a linear space, smallest element first.
pub fn chain_to_linear(ctx: &MatroidalContext) -> Vec<Contraction> {
    let mut out: Vec<Contraction> = Vec::new();
    let mut cur = ctx.clone();
    while !cur.is_linear_space() {
        let c = elementary_contraction(&cur, cur.contractible()[0]).unwrap();
        cur = c.target().clone();
        out.push(c);
    }
    out
}

/// Pulls a cycle of the linear space at the bottom of `chain` back to the
/// top.
pub fn pull_through(chain: &[Contraction], x: &FanCycle) -> FanCycle {
    let mut cur = x.clone();
    for c in chain.iter().rev() {
        cur = pullback(c, &cur).unwrap();
    }
    cur
}

/// A random codimension one cycle of `ctx` pulled back from the linear
/// space at the bottom of its contraction chain.
pub fn random_pulled(rng: &mut ChaCha8Rng, ctx: &MatroidalContext) -> FanCycle {
    let chain = chain_to_linear(ctx);
    let base = chain.last().map_or(ctx.ambient_dim(), |c| c.target().ambient_dim());
    let k = rng.gen_range(2..=3);
    let x = if base == 2 { random_curve(rng, 2, k) } else { random_hypersurface(rng, &whole_space(base), k) };
    pull_through(&chain, &x)
}

/// The rank two matroid whose parallel classes are `classes`.
pub fn partition_matroid(n: usize, classes: &[Set]) -> Matroid {
    let mut bases = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            for x in (0..n).filter(|x| a & (1 << x) != 0) {
                for y in (0..n).filter(|y| b & (1 << y) != 0) {
                    bases.push((1u32 << x) | (1 << y));
                }
            }
        }
    }
    Matroid::from_masks(n, bases).unwrap()
}

/// All set partitions of `{0, …, n-1}` into at least two blocks.
pub fn partitions(n: usize) -> Vec<Vec<Set>> {
    let mut out: Vec<Vec<Set>> = vec![Vec::new()];
    for e in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i] |= 1 << e;
                next.push(q);
            }
            let mut q = p.clone();
            q.push(1 << e);
            next.push(q);
        }
        out = next;
    }
    out.retain(|p| p.len() >= 2);
    out
}

/// Every loopless rank two matroid on the ground set of `m`.
pub fn rank_two_matroids(n: usize) -> Vec<Matroid> {
    partitions(n).iter().map(|p| partition_matroid(n, p)).collect()
}

/// The rank two quotients of `m`.
pub fn rank_two_quotients(m: &Matroid) -> Vec<Matroid> {
    rank_two_matroids(m.ground_size()).into_iter().filter(|q| is_quotient(q, m).unwrap()).collect()
}

/// Codimension one cycles of `ctx` for the sampling suites: pullbacks,
/// Bergman fans of quotients, and integer combinations of the two.
pub fn sample_codim_one(rng: &mut ChaCha8Rng, ctx: &MatroidalContext, pool: &[FanCycle]) -> FanCycle {
    let pulled = random_pulled(rng, ctx);
    if pool.is_empty() {
        return pulled;
    }
    let q = pool.choose(rng).unwrap();
    match rng.gen_range(0..4) {
        0 => pulled,
        1 => q.clone(),
        2 => q.plus(&pulled).unwrap(),
        _ => pulled.scale(&Int::from(2)).sub(q).unwrap(),
    }
}

/// Bergman fans of the codimension one quotients used as a sampling pool.
pub fn quotient_pool(m: &Matroid) -> Vec<FanCycle> {
    if m.rank() == 3 {
        rank_two_quotients(m).iter().map(bergman_cycle).collect()
    } else if m == &Matroid::uniform(4, 5).unwrap() {
        vec![bergman_cycle(&Matroid::uniform(3, 5).unwrap())]
    } else {
        Vec::new()
    }
}

/// Whether every facet of `p` lies in the union of the pairwise
/// intersections of facets of `a` and `b`.
pub fn supported_in_intersection(p: &FanCycle, a: &FanCycle, b: &FanCycle) -> bool {
    let meets: Vec<Cone> = a.facets().iter().flat_map(|(s, _)| b.facets().iter().map(move |(t, _)| s.intersect(t))).collect();
    let m = p.dim();
    let skeleton: Vec<&Cone> = meets.iter().filter(|c| c.dim() >= m).collect();
    p.facets().iter().all(|(f, _)| covered(f, &skeleton))
}
