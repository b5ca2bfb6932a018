//! Matroids on small ground sets given by their bases.
//!
//! Subsets of the ground set `{0, …, n-1}` are `u32` bitmasks, which caps
//! the ground set at [`MAX_GROUND`] elements. Deletion and contraction of an
//! element `i` return a matroid on `n-1` elements in which every label above
//! `i` moves down by one; [`removal_map`] spells out that relabelling.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: usize = 12;

/// A subset of the ground set as a bitmask.
pub type Set = u32;

/// Bitmask of a list of elements.
pub fn set_of(elements: &[usize]) -> Set {
    elements.iter().fold(0, |m, &e| m | (1 << e))
}

/// Elements of a bitmask in increasing order.
pub fn elements(s: Set) -> Vec<usize> {
    (0..32).filter(|&i| s & (1 << i) != 0).collect()
}

/// Size of a bitmask.
pub fn size(s: Set) -> usize {
    s.count_ones() as usize
}

/// Where element `j` goes after removing element `i`: `None` for `i`
/// itself, otherwise `j` or `j - 1`.
pub fn removal_map(i: usize, j: usize) -> Option<usize> {
    use core::cmp::Ordering::*;
    match j.cmp(&i) {
        Less => Some(j),
        Equal => None,
        Greater => Some(j - 1),
    }
}

/// Removes bit `i` from `s` and shifts the higher bits down.
fn squeeze(s: Set, i: usize) -> Set {
    let low = s & ((1 << i) - 1);
    let high = (s >> (i + 1)) << i;
    low | high
}

/// Inserts a zero bit at position `i`, shifting higher bits up.
fn spread(s: Set, i: usize) -> Set {
    let low = s & ((1 << i) - 1);
    let high = (s >> i) << (i + 1);
    low | high
}

/// A matroid on `{0, …, n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Set>,
}

/// The flats of a matroid graded by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatLattice {
    /// `by_rank[k]` lists the flats of rank `k` in increasing mask order.
    pub by_rank: Vec<Vec<Set>>,
}

impl FlatLattice {
    /// Every flat, lowest rank first.
    pub fn all(&self) -> impl Iterator<Item = Set> + '_ {
        self.by_rank.iter().flatten().copied()
    }

    /// Whether `s` is a flat.
    pub fn contains(&self, s: Set) -> bool {
        self.by_rank.iter().any(|l| l.binary_search(&s).is_ok())
    }

    /// Pairs `(f, g)` with `g` covering `f`.
    pub fn covers(&self) -> Vec<(Set, Set)> {
        let mut out = Vec::new();
        for k in 1..self.by_rank.len() {
            for &f in &self.by_rank[k - 1] {
                for &g in &self.by_rank[k] {
                    if f & g == f {
                        out.push((f, g));
                    }
                }
            }
        }
        out
    }
}

impl Matroid {
    /// Validates a basis family on `n` elements.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Matroid> {
        for b in bases {
            for &e in b {
                if e >= n {
                    return Err(Error::InvalidElement(e));
                }
            }
            let distinct: BTreeSet<usize> = b.iter().copied().collect();
            if distinct.len() != b.len() {
                return Err(Error::InvalidMatroid(String::from("repeated element in a basis")));
            }
        }
        Matroid::from_masks(n, bases.iter().map(|b| set_of(b)).collect())
    }

    /// Validates a basis family given as bitmasks.
    pub fn from_masks(n: usize, mut bases: Vec<Set>) -> Result<Matroid> {
        if n > MAX_GROUND {
            return Err(Error::InvalidMatroid(format!("ground set larger than {MAX_GROUND}")));
        }
        bases.sort_unstable();
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(Error::InvalidMatroid(String::from("no bases")));
        };
        if let Some(&b) = bases.iter().find(|&&b| b >> n != 0) {
            return Err(Error::InvalidElement(31 - b.leading_zeros() as usize));
        }
        let rank = size(first);
        if bases.iter().any(|&b| size(b) != rank) {
            return Err(Error::InvalidMatroid(String::from("bases of different sizes")));
        }
        let m = Matroid { n, rank, bases };
        for &b1 in &m.bases {
            for &b2 in &m.bases {
                for x in elements(b1 & !b2) {
                    let ok = elements(b2 & !b1).into_iter().any(|y| m.is_basis((b1 & !(1 << x)) | (1 << y)));
                    if !ok {
                        return Err(Error::InvalidMatroid(String::from("basis exchange fails")));
                    }
                }
            }
        }
        Ok(m)
    }

    fn unchecked(n: usize, mut bases: Vec<Set>) -> Matroid {
        bases.sort_unstable();
        bases.dedup();
        let rank = size(bases[0]);
        Matroid { n, rank, bases }
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::InvalidMatroid(format!("rank {r} exceeds ground set {n}")));
        }
        if n > MAX_GROUND {
            return Err(Error::InvalidMatroid(format!("ground set larger than {MAX_GROUND}")));
        }
        let bases = (0..(1u32 << n)).filter(|&s| size(s) == r).collect();
        Ok(Matroid::unchecked(n, bases))
    }

    /// The cycle matroid of a graph with `vertices` vertices; edge `k` of
    /// `edges` becomes element `k`.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
        let n = edges.len();
        if n > MAX_GROUND {
            return Err(Error::InvalidMatroid(format!("ground set larger than {MAX_GROUND}")));
        }
        for &(a, b) in edges {
            if a >= vertices || b >= vertices {
                return Err(Error::InvalidElement(a.max(b)));
            }
        }
        let forest_size = |s: Set| {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut x = x;
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut count = 0;
            for e in elements(s) {
                let (a, b) = edges[e];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                    count += 1;
                }
            }
            count
        };
        let full = forest_size((1u32 << n) - 1);
        let bases: Vec<Set> = (0..(1u32 << n)).filter(|&s| size(s) == full && forest_size(s) == full).collect();
        Ok(Matroid::unchecked(n, bases))
    }

    /// The cycle matroid of the complete graph on four vertices with edges
    /// `01, 02, 03, 12, 13, 23` as elements `0..6`.
    pub fn k4() -> Matroid {
        Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("valid graph")
    }

    /// Three-element dependent sets of the Fano plane in the labelling used
    /// here. Deleting element 6 leaves the triangles of [`Matroid::k4`].
    pub const FANO_LINES: [[usize; 3]; 7] = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5], [0, 5, 6], [1, 4, 6], [2, 3, 6]];

    fn rank3_without_lines(lines: &[[usize; 3]]) -> Matroid {
        let line_masks: Vec<Set> = lines.iter().map(|l| set_of(l)).collect();
        let bases = (0..(1u32 << 7)).filter(|&s| size(s) == 3 && !line_masks.contains(&s)).collect();
        Matroid::unchecked(7, bases)
    }

    /// The Fano plane, labelled so that deleting 6 gives [`Matroid::k4`].
    pub fn fano() -> Matroid {
        Matroid::rank3_without_lines(&Matroid::FANO_LINES)
    }

    /// The anti-Fano matroid: the Fano plane with the line `{0, 5, 6}`
    /// relaxed to a basis.
    pub fn nonfano() -> Matroid {
        Matroid::rank3_without_lines(&Matroid::FANO_LINES[..4].iter().chain(&Matroid::FANO_LINES[5..]).copied().collect::<Vec<_>>())
    }

    /// Size of the ground set.
    pub fn ground_size(&self) -> usize {
        self.n
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The bases as bitmasks, sorted.
    pub fn bases(&self) -> &[Set] {
        &self.bases
    }

    /// Whether `s` is a basis.
    pub fn is_basis(&self, s: Set) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    /// Mask of the whole ground set.
    pub fn ground(&self) -> Set {
        if self.n == 0 {
            0
        } else {
            (1u32 << self.n) - 1
        }
    }

    /// Rank of a subset given as a list of elements.
    pub fn rank_of(&self, s: &[usize]) -> Result<usize> {
        if let Some(&e) = s.iter().find(|&&e| e >= self.n) {
            return Err(Error::InvalidElement(e));
        }
        Ok(self.rank_mask(set_of(s)))
    }

    /// Rank of a subset given as a bitmask.
    pub fn rank_mask(&self, s: Set) -> usize {
        self.bases.iter().map(|&b| size(b & s)).max().unwrap_or(0)
    }

    /// Whether `s` is independent.
    pub fn is_independent(&self, s: Set) -> bool {
        self.bases.iter().any(|&b| b & s == s)
    }

    /// Closure of `s`.
    pub fn closure(&self, s: Set) -> Set {
        let r = self.rank_mask(s);
        (0..self.n).fold(s, |c, i| if self.rank_mask(s | (1 << i)) == r { c | (1 << i) } else { c })
    }

    /// Whether `s` is a flat.
    pub fn is_flat(&self, s: Set) -> bool {
        self.closure(s) == s
    }

    /// The lattice of flats.
    pub fn flats(&self) -> FlatLattice {
        let mut by_rank: Vec<Vec<Set>> = vec![Vec::new(); self.rank + 1];
        let mut seen: BTreeSet<Set> = BTreeSet::new();
        let mut frontier = vec![self.closure(0)];
        seen.insert(frontier[0]);
        while let Some(f) = frontier.pop() {
            by_rank[self.rank_mask(f)].push(f);
            for i in 0..self.n {
                if f & (1 << i) == 0 {
                    let g = self.closure(f | (1 << i));
                    if seen.insert(g) {
                        frontier.push(g);
                    }
                }
            }
        }
        for l in by_rank.iter_mut() {
            l.sort_unstable();
        }
        FlatLattice { by_rank }
    }

    /// Elements in no basis.
    pub fn loops(&self) -> Vec<usize> {
        let union = self.bases.iter().fold(0, |u, &b| u | b);
        elements(self.ground() & !union)
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> Vec<usize> {
        let inter = self.bases.iter().fold(self.ground(), |u, &b| u & b);
        elements(inter)
    }

    fn check(&self, i: usize) -> Result<()> {
        if i >= self.n {
            Err(Error::InvalidElement(i))
        } else {
            Ok(())
        }
    }

    /// The deletion `M \ i`, relabelled by [`removal_map`].
    pub fn delete(&self, i: usize) -> Result<Matroid> {
        self.check(i)?;
        let bit = 1u32 << i;
        let keep: Vec<Set> = if self.coloops().contains(&i) {
            self.bases.iter().map(|&b| b & !bit).collect()
        } else {
            self.bases.iter().filter(|&&b| b & bit == 0).copied().collect()
        };
        Ok(Matroid::unchecked(self.n - 1, keep.into_iter().map(|b| squeeze(b, i)).collect()))
    }

    /// The contraction `M / i`, relabelled by [`removal_map`].
    pub fn contract(&self, i: usize) -> Result<Matroid> {
        self.check(i)?;
        let bit = 1u32 << i;
        if self.loops().contains(&i) {
            return self.delete(i);
        }
        let keep: Vec<Set> = self.bases.iter().filter(|&&b| b & bit != 0).map(|&b| b & !bit).collect();
        Ok(Matroid::unchecked(self.n - 1, keep.into_iter().map(|b| squeeze(b, i)).collect()))
    }

    /// Inserts a new coloop with label `i`; labels at or above `i` move up.
    pub fn insert_coloop(&self, i: usize) -> Result<Matroid> {
        if i > self.n {
            return Err(Error::InvalidElement(i));
        }
        if self.n + 1 > MAX_GROUND {
            return Err(Error::InvalidMatroid(format!("ground set larger than {MAX_GROUND}")));
        }
        let bases = self.bases.iter().map(|&b| spread(b, i) | (1 << i)).collect();
        Ok(Matroid::unchecked(self.n + 1, bases))
    }

    /// Applies a permutation: element `e` becomes `perm[e]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Matroid> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if perm.len() != self.n || sorted.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::Precondition(String::from("relabelling is not a permutation")));
        }
        let map = |b: Set| elements(b).iter().fold(0, |m, &e| m | (1 << perm[e]));
        Ok(Matroid::unchecked(self.n, self.bases.iter().map(|&b| map(b)).collect()))
    }

    /// Whether `q` is a quotient of `self`: every flat of `q` is a flat of
    /// `self`.
    pub fn has_quotient(&self, q: &Matroid) -> Result<bool> {
        is_quotient(q, self)
    }

    /// Whether `self` and `other` are isomorphic.
    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        if self.n != other.n || self.rank != other.rank || self.bases.len() != other.bases.len() {
            return false;
        }
        let degree = |m: &Matroid, e: usize| m.bases.iter().filter(|&&b| b & (1 << e) != 0).count();
        let da: Vec<usize> = (0..self.n).map(|e| degree(self, e)).collect();
        let db: Vec<usize> = (0..other.n).map(|e| degree(other, e)).collect();
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
        let mut perm = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.extend_iso(other, &da, &db, 0, &mut perm, &mut used)
    }

    fn extend_iso(&self, other: &Matroid, da: &[usize], db: &[usize], k: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
        if k == self.n {
            let map = |b: Set| elements(b).iter().fold(0, |m, &e| m | (1 << perm[e]));
            return self.bases.iter().all(|&b| other.is_basis(map(b)));
        }
        for t in 0..self.n {
            if used[t] || da[k] != db[t] {
                continue;
            }
            // Partial check: ranks of subsets of mapped elements agree.
            perm[k] = t;
            let src: Set = (0..=k).fold(0, |m, e| m | (1 << e));
            let ok = elements(src).iter().all(|&e| {
                let s = src & !(1 << e);
                let img = elements(s).iter().fold(0, |m, &x| m | (1 << perm[x]));
                self.rank_mask(s) == other.rank_mask(img)
            }) && {
                let img = elements(src).iter().fold(0, |m, &x| m | (1 << perm[x]));
                self.rank_mask(src) == other.rank_mask(img)
            };
            if ok {
                used[t] = true;
                if self.extend_iso(other, da, db, k + 1, perm, used) {
                    return true;
                }
                used[t] = false;
            }
        }
        perm[k] = usize::MAX;
        false
    }

    /// The minor `M / c \ d` for disjoint sets `c` and `d`, on the remaining
    /// elements in increasing order.
    pub fn minor(&self, c: Set, d: Set) -> Matroid {
        let mut m = self.clone();
        let mut removed: Vec<(usize, bool)> = elements(c).into_iter().map(|e| (e, true)).collect();
        removed.extend(elements(d).into_iter().map(|e| (e, false)));
        removed.sort_unstable_by_key(|r| core::cmp::Reverse(r.0));
        for (e, contract) in removed {
            m = if contract { m.contract(e) } else { m.delete(e) }.expect("element in range");
        }
        m
    }

    /// Whether some minor of `self` is isomorphic to `n`.
    pub fn has_minor(&self, n: &Matroid) -> bool {
        if n.n > self.n || n.rank > self.rank || n.n - n.rank > self.n - self.rank {
            return false;
        }
        let c_size = self.rank - n.rank;
        let d_size = self.n - n.n - c_size;
        let g = self.ground();
        for c in (0..=g).filter(|&s| s & g == s && size(s) == c_size && self.is_independent(s)) {
            let rest = g & !c;
            for d in (0..=rest).filter(|&s| s & rest == s && size(s) == d_size) {
                let minor = self.minor(c, d);
                if minor.rank == n.rank && minor.is_isomorphic(n) {
                    return true;
                }
            }
        }
        false
    }
}

/// Whether `q` is a quotient of `m`: every flat of `q` is a flat of `m`.
pub fn is_quotient(q: &Matroid, m: &Matroid) -> Result<bool> {
    if q.n != m.n {
        return Err(Error::DimensionMismatch { expected: m.n, found: q.n });
    }
    Ok(q.flats().all().all(|f| m.is_flat(f)))
}
