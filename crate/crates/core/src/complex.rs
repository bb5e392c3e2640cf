//! The frame complex as the clique complex of the orthogonality graph:
//! frame enumeration, f-vector and Euler characteristic, simplicial boundary
//! matrices over GF(p), and reduced Betti numbers via sparse rank.

use std::io::Write;

use num::{BigRational, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ff::is_prime;
use crate::graph::OrthoGraph;
use crate::oracle;

/// Frames of one size, stored flat; each frame is a strictly increasing
/// id tuple and the list is in lexicographic order.
#[derive(Clone, Debug)]
pub struct FrameList {
    size: usize,
    flat: Vec<u32>,
}

impl FrameList {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        if self.size == 0 {
            0
        } else {
            self.flat.len() / self.size
        }
    }

    pub fn is_empty(&self) -> bool {
        self.flat.is_empty()
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.flat[i * self.size..(i + 1) * self.size]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.flat.chunks_exact(self.size)
    }

    /// Position of a frame by binary search; the list is sorted.
    pub fn position(&self, frame: &[u32]) -> Option<usize> {
        let len = self.len();
        let mut lo = 0usize;
        let mut hi = len;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(frame) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

fn intersect_gt(candidates: &[u32], neighbors: &[u32], floor: u32) -> Vec<u32> {
    // Both inputs sorted ascending; keep common entries strictly above floor.
    let mut out = Vec::new();
    let mut i = 0;
    let mut j = 0;
    while i < candidates.len() && j < neighbors.len() {
        match candidates[i].cmp(&neighbors[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if candidates[i] > floor {
                    out.push(candidates[i]);
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn extend_cliques(
    g: &OrthoGraph,
    tuple: &mut Vec<u32>,
    candidates: &[u32],
    m: usize,
    flat: &mut Vec<u32>,
) {
    for (idx, &v) in candidates.iter().enumerate() {
        tuple.push(v);
        if tuple.len() == m {
            flat.extend_from_slice(tuple);
        } else {
            let rest = intersect_gt(&candidates[idx + 1..], g.neighbors(v), v);
            extend_cliques(g, tuple, &rest, m, flat);
        }
        tuple.pop();
    }
}

/// All m-frames (m pairwise orthogonal planes), each generated once by
/// extending with strictly larger ids.
pub fn enumerate_frames(g: &OrthoGraph, m: usize) -> Result<FrameList> {
    let n = g.half_rank();
    if m < 1 || m > n {
        return Err(Error::FrameSizeOutOfRange { m, max: n });
    }
    let count = g.vertex_count() as u32;
    let chunks: Vec<Vec<u32>> = (0..count)
        .into_par_iter()
        .map(|v| {
            let mut flat = Vec::new();
            let mut tuple = vec![v];
            if m == 1 {
                flat.push(v);
            } else {
                let pos = g.neighbors(v).partition_point(|&w| w <= v);
                let candidates: Vec<u32> = g.neighbors(v)[pos..].to_vec();
                extend_cliques(g, &mut tuple, &candidates, m, &mut flat);
            }
            flat
        })
        .collect();
    let mut flat = Vec::new();
    for c in chunks {
        flat.extend(c);
    }
    Ok(FrameList { size: m, flat })
}

/// Counts f_1 .. f_n by enumeration.
pub fn f_vector(g: &OrthoGraph) -> Result<Vec<u64>> {
    (1..=g.half_rank())
        .map(|m| Ok(enumerate_frames(g, m)?.len() as u64))
        .collect()
}

/// Reduced Euler characteristic: -1 + f_1 - f_2 + ...
pub fn euler_characteristic(g: &OrthoGraph) -> Result<i128> {
    let f = f_vector(g)?;
    let mut acc: i128 = -1;
    for (idx, &count) in f.iter().enumerate() {
        if idx % 2 == 0 {
            acc += count as i128;
        } else {
            acc -= count as i128;
        }
    }
    Ok(acc)
}

/// A sparse matrix with entries +-1, column-major; the simplicial boundary.
#[derive(Clone, Debug)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<Vec<(u32, i8)>>,
}

impl SparseMat {
    pub fn nnz(&self) -> u64 {
        self.cols.iter().map(|c| c.len() as u64).sum()
    }
}

/// Frame lists per dimension and boundary matrices over GF(p) (signs are
/// +-1 mod p). `boundaries[d-1]` maps d-chains to (d-1)-chains.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub prime: u64,
    pub frames: Vec<FrameList>,
    pub boundaries: Vec<SparseMat>,
}

/// Build frame lists for dimensions 0..=max_dim and the boundary matrices
/// between them. `max_dim` is the top simplicial dimension, at most n-1.
pub fn boundary_matrices(g: &OrthoGraph, max_dim: usize, p: u64) -> Result<ChainComplex> {
    if !is_prime(p) {
        return Err(Error::NotPrime { p });
    }
    let n = g.half_rank();
    let max_dim = max_dim.min(n - 1);
    let frames: Vec<FrameList> =
        (0..=max_dim).map(|d| enumerate_frames(g, d + 1)).collect::<Result<_>>()?;
    let boundaries: Vec<SparseMat> = (1..=max_dim)
        .map(|d| boundary_matrix(&frames[d - 1], &frames[d]))
        .collect();
    Ok(ChainComplex { prime: p, frames, boundaries })
}

/// The boundary of each d-simplex: alternating-sign sum of its facets.
fn boundary_matrix(faces: &FrameList, cells: &FrameList) -> SparseMat {
    let cols: Vec<Vec<(u32, i8)>> = (0..cells.len())
        .into_par_iter()
        .map(|ci| {
            let cell = cells.get(ci);
            let mut face = vec![0u32; cell.len() - 1];
            let mut col = Vec::with_capacity(cell.len());
            for drop in 0..cell.len() {
                let mut w = 0;
                for (idx, &v) in cell.iter().enumerate() {
                    if idx != drop {
                        face[w] = v;
                        w += 1;
                    }
                }
                let row = faces.position(&face).expect("facet must be enumerated") as u32;
                let sign = if drop % 2 == 0 { 1i8 } else { -1 };
                col.push((row, sign));
            }
            col.sort_unstable_by_key(|&(r, _)| r);
            col
        })
        .collect();
    SparseMat { rows: faces.len(), cols }
}

// ---------------------------------------------------------------------------
// Sparse rank by left-to-right column reduction on the largest nonzero row
// index. Works over GF(p) and over the rationals through one small trait.

trait RankField: Sync {
    type Elem: Clone + Send + Sync;
    fn from_sign(&self, s: i8) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

struct PrimeField(u64);

impl RankField for PrimeField {
    type Elem = u64;

    fn from_sign(&self, s: i8) -> u64 {
        if s >= 0 {
            s as u64 % self.0
        } else {
            self.0 - (-s as u64 % self.0)
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn inv(&self, a: &u64) -> u64 {
        // Fermat; p has at most 31 bits here so u128 intermediates suffice.
        let mut acc: u128 = 1;
        let mut base: u128 = *a as u128;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.0 as u128;
            }
            base = base * base % self.0 as u128;
            e >>= 1;
        }
        acc as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (*a as u128 * *b as u128 % self.0 as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - *a
        }
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
}

struct Rationals;

impl RankField for Rationals {
    type Elem = BigRational;

    fn from_sign(&self, s: i8) -> BigRational {
        BigRational::from_integer(num::BigInt::from(s))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
}

/// result = a + c * b, both sorted by row; zeros dropped.
fn axpy_merge<F: RankField>(
    f: &F,
    a: &[(u32, F::Elem)],
    c: &F::Elem,
    b: &[(u32, F::Elem)],
) -> Vec<(u32, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_rank<F: RankField>(f: &F, mat: &SparseMat) -> usize {
    // pivot_for_row[r] = index into `stored` of the reduced column whose
    // largest row is r; stored pivot columns are normalized to low value 1.
    let mut pivot_for_row: Vec<i32> = vec![-1; mat.rows];
    let mut stored: Vec<Vec<(u32, F::Elem)>> = Vec::new();
    let mut rank = 0usize;
    for col in &mat.cols {
        let mut cur: Vec<(u32, F::Elem)> = col
            .iter()
            .map(|&(r, s)| (r, f.from_sign(s)))
            .filter(|(_, v)| !f.is_zero(v))
            .collect();
        loop {
            let Some((low, val)) = cur.last().cloned() else {
                break;
            };
            let slot = pivot_for_row[low as usize];
            if slot < 0 {
                // normalize so the low entry is 1, then register the pivot
                let inv = f.inv(&val);
                for entry in cur.iter_mut() {
                    entry.1 = f.mul(&inv, &entry.1);
                }
                pivot_for_row[low as usize] = stored.len() as i32;
                stored.push(cur);
                rank += 1;
                break;
            }
            cur = axpy_merge(f, &cur, &f.neg(&val), &stored[slot as usize]);
        }
    }
    rank
}

/// Rank of a boundary matrix over GF(p).
pub fn rank_mod_p(mat: &SparseMat, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime { p });
    }
    Ok(sparse_rank(&PrimeField(p), mat))
}

/// Rank over the rationals; exact but only sensible for small complexes.
pub fn rank_exact(mat: &SparseMat) -> usize {
    sparse_rank(&Rationals, mat)
}

/// Default pair of rank primes, the two smallest primes above 10^6.
pub const DEFAULT_PRIMES: [u64; 2] = [1_000_003, 1_000_033];

/// Simplex budget below which the exact rational mode is allowed.
pub const EXACT_CELL_LIMIT: u64 = 50_000;

#[derive(Clone, Debug)]
pub struct BettiOptions {
    /// Abort if the complex has more simplices than this.
    pub max_cells: u64,
    /// Additionally compute exact rational ranks (small complexes only).
    pub exact: bool,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions { max_cells: 10_000_000, exact: false }
    }
}

#[derive(Clone, Debug)]
pub struct BettiReport {
    pub primes: Vec<u64>,
    /// Reduced Betti numbers per prime, dimensions 0..=n-1.
    pub betti_per_prime: Vec<Vec<u64>>,
    /// All primes produced identical ranks.
    pub agree: bool,
    /// Alternating Betti sum matches the Euler characteristic, per prime.
    pub euler_ok: bool,
    pub f_vector: Vec<u64>,
    pub euler: i128,
    /// Rational Betti numbers when the exact mode ran.
    pub exact_betti: Option<Vec<u64>>,
    pub cells: u64,
}

impl BettiReport {
    /// The agreed Betti vector (first prime's, which equals the others').
    pub fn betti(&self) -> &[u64] {
        &self.betti_per_prime[0]
    }
}

fn betti_from_ranks(f: &[u64], ranks: &[usize]) -> Vec<u64> {
    // reduced: the augmentation absorbs one unit in dimension 0
    let n = f.len();
    let mut betti = vec![0u64; n];
    for k in 0..n {
        let kernel = if k == 0 {
            f[0] - 1
        } else {
            f[k] - ranks[k - 1] as u64
        };
        let image = if k < ranks.len() { ranks[k] as u64 } else { 0 };
        betti[k] = kernel - image;
    }
    betti
}

/// Reduced Betti numbers over each prime, with cross-prime agreement and
/// the Euler identity checked.
pub fn betti(g: &OrthoGraph, primes: &[u64], opts: &BettiOptions) -> Result<BettiReport> {
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime { p });
        }
    }
    let n = g.half_rank();
    let q = g.q();
    let predicted: u64 = (1..=n)
        .map(|m| oracle::frame_count(n, q, m).unwrap().to_u64().expect("cell count"))
        .sum();
    if predicted > opts.max_cells {
        return Err(Error::CellBudgetExceeded { cells: predicted, budget: opts.max_cells });
    }

    let complex = boundary_matrices(g, n - 1, primes[0])?;
    let f: Vec<u64> = complex.frames.iter().map(|fr| fr.len() as u64).collect();
    let cells: u64 = f.iter().sum();
    let euler = {
        let mut acc: i128 = -1;
        for (idx, &count) in f.iter().enumerate() {
            if idx % 2 == 0 {
                acc += count as i128;
            } else {
                acc -= count as i128;
            }
        }
        acc
    };

    let per_prime: Vec<Vec<u64>> = primes
        .par_iter()
        .map(|&p| {
            let ranks: Vec<usize> = complex
                .boundaries
                .par_iter()
                .map(|b| sparse_rank(&PrimeField(p), b))
                .collect();
            betti_from_ranks(&f, &ranks)
        })
        .collect();

    let agree = per_prime.windows(2).all(|w| w[0] == w[1]);
    let euler_ok = per_prime.iter().all(|betti| {
        let mut acc: i128 = 0;
        for (k, &b) in betti.iter().enumerate() {
            if k % 2 == 0 {
                acc += b as i128;
            } else {
                acc -= b as i128;
            }
        }
        acc == euler
    });

    let exact_betti = if opts.exact {
        if cells > EXACT_CELL_LIMIT {
            return Err(Error::CellBudgetExceeded { cells, budget: EXACT_CELL_LIMIT });
        }
        let ranks: Vec<usize> =
            complex.boundaries.par_iter().map(|b| sparse_rank(&Rationals, b)).collect();
        Some(betti_from_ranks(&f, &ranks))
    } else {
        None
    };

    Ok(BettiReport {
        primes: primes.to_vec(),
        betti_per_prime: per_prime,
        agree,
        euler_ok,
        f_vector: f,
        euler,
        exact_betti,
        cells,
    })
}

/// Coordinate text export, 1-based indices, MatrixMarket header.
pub fn write_matrix_market<W: Write>(mat: &SparseMat, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "%%MatrixMarket matrix coordinate integer general")?;
    writeln!(out, "{} {} {}", mat.rows, mat.cols.len(), mat.nnz())?;
    for (j, col) in mat.cols.iter().enumerate() {
        for &(r, s) in col {
            writeln!(out, "{} {} {}", r + 1, j + 1, s)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;
    use crate::graph::build_graph;
    use crate::symp::SympSpace;

    fn graph(q: u64, n: usize) -> OrthoGraph {
        let sp = SympSpace::new(FieldSpec::new(q).unwrap(), n, 0).unwrap();
        build_graph(&sp).unwrap()
    }

    #[test]
    fn frame_counts_32() {
        let g = graph(2, 3);
        assert_eq!(enumerate_frames(&g, 1).unwrap().len(), 336);
        assert_eq!(enumerate_frames(&g, 2).unwrap().len(), 3360);
        assert_eq!(enumerate_frames(&g, 3).unwrap().len(), 1120);
        assert!(enumerate_frames(&g, 4).is_err());
        assert!(enumerate_frames(&g, 0).is_err());
    }

    #[test]
    fn frames_are_sorted_and_orthogonal() {
        let g = graph(2, 3);
        let frames = enumerate_frames(&g, 3).unwrap();
        let mut prev: Option<Vec<u32>> = None;
        for frame in frames.iter().take(200) {
            assert!(frame.windows(2).all(|w| w[0] < w[1]));
            for i in 0..3 {
                for j in (i + 1)..3 {
                    assert!(g.adjacent(frame[i], frame[j]));
                }
            }
            if let Some(p) = prev {
                assert!(p.as_slice() < frame);
            }
            prev = Some(frame.to_vec());
        }
    }

    #[test]
    fn euler_22_and_32() {
        let g = graph(2, 2);
        assert_eq!(f_vector(&g).unwrap(), vec![20, 10]);
        assert_eq!(euler_characteristic(&g).unwrap(), 9);
        let g = graph(2, 3);
        assert_eq!(euler_characteristic(&g).unwrap(), -1905);
    }

    #[test]
    fn boundary_of_edge() {
        let g = graph(2, 2);
        let complex = boundary_matrices(&g, 1, 1_000_003).unwrap();
        let d1 = &complex.boundaries[0];
        assert_eq!(d1.rows, 20);
        assert_eq!(d1.cols.len(), 10);
        for (j, col) in d1.cols.iter().enumerate() {
            let edge = complex.frames[1].get(j);
            // +1 at the dropped-first face (the larger id), -1 at the other
            assert_eq!(col.len(), 2);
            assert_eq!(col[0], (edge[0], -1));
            assert_eq!(col[1], (edge[1], 1));
        }
    }

    #[test]
    fn boundary_squares_to_zero_32() {
        let g = graph(2, 3);
        let complex = boundary_matrices(&g, 2, 1_000_003).unwrap();
        let d1 = &complex.boundaries[0];
        let d2 = &complex.boundaries[1];
        // sparse product d1 * d2 must vanish identically over Z
        for col in &d2.cols {
            let mut acc: std::collections::HashMap<u32, i64> = Default::default();
            for &(edge_row, s2) in col {
                for &(vert_row, s1) in &d1.cols[edge_row as usize] {
                    *acc.entry(vert_row).or_insert(0) += s1 as i64 * s2 as i64;
                }
            }
            assert!(acc.values().all(|&v| v == 0));
        }
    }

    #[test]
    fn rank_22() {
        let g = graph(2, 2);
        let complex = boundary_matrices(&g, 1, 1_000_003).unwrap();
        assert_eq!(rank_mod_p(&complex.boundaries[0], 1_000_003).unwrap(), 10);
        assert_eq!(rank_exact(&complex.boundaries[0]), 10);
    }

    #[test]
    fn betti_22() {
        let g = graph(2, 2);
        let report = betti(&g, &DEFAULT_PRIMES, &BettiOptions::default()).unwrap();
        assert!(report.agree);
        assert!(report.euler_ok);
        assert_eq!(report.betti(), &[9, 0]);
        // ten contractible components
        let comps = crate::graph::components_and_diameter(&g);
        assert_eq!(report.betti()[0] as usize, comps.count - 1);
    }

    #[test]
    fn betti_22_exact_matches() {
        let g = graph(2, 2);
        let report = betti(
            &g,
            &DEFAULT_PRIMES,
            &BettiOptions { exact: true, ..Default::default() },
        )
        .unwrap();
        assert_eq!(report.exact_betti.as_deref(), Some(report.betti()));
    }

    #[test]
    fn betti_rejects_composite_prime() {
        let g = graph(2, 2);
        assert!(matches!(
            betti(&g, &[1_000_000], &BettiOptions::default()),
            Err(Error::NotPrime { .. })
        ));
    }

    #[test]
    fn budget_is_enforced() {
        let g = graph(2, 2);
        let err = betti(&g, &DEFAULT_PRIMES, &BettiOptions { max_cells: 10, exact: false });
        assert!(matches!(err, Err(Error::CellBudgetExceeded { .. })));
    }

    #[test]
    fn maximal_frame_extension_is_unique() {
        // every (n-1)-frame lies in exactly one n-frame
        for (q, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
            let g = graph(q, n);
            let sub = enumerate_frames(&g, n - 1).unwrap();
            let top = enumerate_frames(&g, n).unwrap();
            let mut containment = vec![0u32; sub.len()];
            let mut face = vec![0u32; n - 1];
            for cell in top.iter() {
                for drop in 0..n {
                    let mut w = 0;
                    for (idx, &v) in cell.iter().enumerate() {
                        if idx != drop {
                            face[w] = v;
                            w += 1;
                        }
                    }
                    containment[sub.position(&face).unwrap()] += 1;
                }
            }
            assert!(
                containment.iter().all(|&c| c == 1),
                "q={q} n={n}: some frame extends to != 1 maximal frame"
            );
        }
    }

    #[test]
    fn matrix_market_format() {
        let g = graph(2, 2);
        let complex = boundary_matrices(&g, 1, 1_000_003).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&complex.boundaries[0], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "%%MatrixMarket matrix coordinate integer general"
        );
        assert_eq!(lines.next().unwrap(), "20 10 20");
        let first = lines.next().unwrap();
        let parts: Vec<i64> = first.split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(parts.len(), 3);
        assert!(parts[2] == 1 || parts[2] == -1);
    }
}
