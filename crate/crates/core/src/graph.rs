//! The orthogonality graph: vertices are the enumerated planes, edges join
//! orthogonal pairs. Provides BFS connectivity/diameter, brute-force walk
//! counts bucketed by pair class, the empirical triple-transition matrix,
//! degenerate-sum witnesses, and an exact integer spectrum certificate.

use num::{BigRational, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle;
use crate::planes::{classify, enumerate_planes, CaseIndex, Plane, PlaneSet};
use crate::symp::{SympSpace, Vector};

/// Adjacency bitset, one row per vertex, kept while the graph fits.
#[derive(Clone, Debug)]
pub struct BitRows {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> BitRows {
        let words_per_row = n.div_ceil(64);
        BitRows { words_per_row, bits: vec![0; words_per_row * n] }
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] & (1 << (j % 64)) != 0
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }
}

/// Maximum vertex count for which adjacency bitsets are kept.
pub const BITSET_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug)]
pub struct OrthoGraph {
    n: usize,
    q: u32,
    planes: PlaneSet,
    neighbors: Vec<Vec<u32>>,
    bits: Option<BitRows>,
    degree: usize,
}

impl OrthoGraph {
    pub fn vertex_count(&self) -> usize {
        self.planes.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn edge_count(&self) -> u64 {
        self.vertex_count() as u64 * self.degree as u64 / 2
    }

    pub fn planes(&self) -> &PlaneSet {
        &self.planes
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[v as usize]
    }

    pub fn adjacent(&self, i: u32, j: u32) -> bool {
        match &self.bits {
            Some(b) => b.get(i as usize, j as usize),
            None => self.neighbors[i as usize].binary_search(&j).is_ok(),
        }
    }

    pub fn bit_rows(&self) -> Option<&BitRows> {
        self.bits.as_ref()
    }

    pub fn half_rank(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

/// Build the graph for a non-degenerate space with n >= 2.
pub fn build_graph(sp: &SympSpace) -> Result<OrthoGraph> {
    if sp.r() != 0 {
        return Err(Error::RadicalUnsupported { r: sp.r() });
    }
    if sp.n() < 2 {
        return Err(Error::HalfRankTooSmall { n: sp.n(), min: 2 });
    }
    let planes = enumerate_planes(sp);
    let count = planes.len();

    let neighbors: Vec<Vec<u32>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let pi = planes.get(i as u32);
            (0..count)
                .filter(|&j| j != i && pi.orthogonal_to(sp, planes.get(j as u32)))
                .map(|j| j as u32)
                .collect()
        })
        .collect();

    let expected_degree = oracle::d(sp.n() as i64, sp.field().q())
        .to_usize()
        .expect("degree fits usize");
    for (i, nb) in neighbors.iter().enumerate() {
        assert_eq!(
            nb.len(),
            expected_degree,
            "vertex {i} has degree {} instead of {expected_degree}",
            nb.len()
        );
    }

    let bits = if count <= BITSET_LIMIT {
        let mut b = BitRows::new(count);
        for (i, nb) in neighbors.iter().enumerate() {
            for &j in nb {
                b.set(i, j as usize);
            }
        }
        Some(b)
    } else {
        None
    };

    Ok(OrthoGraph {
        n: sp.n(),
        q: sp.field().q(),
        planes,
        neighbors,
        bits,
        degree: expected_degree,
    })
}

/// Connectivity data: component count, per-component sizes and diameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentsReport {
    pub count: usize,
    pub sizes: Vec<usize>,
    pub diameters: Vec<usize>,
}

impl ComponentsReport {
    /// The graph diameter when connected.
    pub fn diameter(&self) -> Option<usize> {
        (self.count == 1).then(|| self.diameters[0])
    }
}

pub fn components_and_diameter(g: &OrthoGraph) -> ComponentsReport {
    let n = g.vertex_count();
    let mut comp = vec![u32::MAX; n];
    let mut count = 0usize;
    let mut sizes = Vec::new();
    for start in 0..n {
        if comp[start] != u32::MAX {
            continue;
        }
        let label = count as u32;
        count += 1;
        let mut size = 0usize;
        let mut queue = std::collections::VecDeque::from([start as u32]);
        comp[start] = label;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(v) {
                if comp[w as usize] == u32::MAX {
                    comp[w as usize] = label;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }

    // Eccentricities by BFS from every vertex, folded per component.
    let diameters = (0..n)
        .into_par_iter()
        .map(|start| {
            let mut dist = vec![u32::MAX; n];
            let mut queue = std::collections::VecDeque::from([start as u32]);
            dist[start] = 0;
            let mut ecc = 0u32;
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbors(v) {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[v as usize] + 1;
                        ecc = ecc.max(dist[w as usize]);
                        queue.push_back(w);
                    }
                }
            }
            (comp[start] as usize, ecc as usize)
        })
        .fold(
            || vec![0usize; count],
            |mut acc, (c, ecc)| {
                acc[c] = acc[c].max(ecc);
                acc
            },
        )
        .reduce(
            || vec![0usize; count],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = (*x).max(y);
                }
                a
            },
        );

    ComponentsReport { count, sizes, diameters }
}

/// Walk counts of a fixed length from one source, bucketed by the class of
/// (source, W). The six counts; classes with no witness plane stay 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkVector(pub [u128; 6]);

/// A^r applied to the indicator of `source`, i.e. l_r(source, W) for all W.
pub fn walk_counts(g: &OrthoGraph, source: u32, r: usize) -> Vec<u128> {
    let n = g.vertex_count();
    let mut cur = vec![0u128; n];
    cur[source as usize] = 1;
    for _ in 0..r {
        let next: Vec<u128> = (0..n)
            .into_par_iter()
            .map(|v| {
                g.neighbors(v as u32)
                    .iter()
                    .map(|&w| cur[w as usize])
                    .fold(0u128, |a, b| a.checked_add(b).expect("walk count overflow"))
            })
            .collect();
        cur = next;
    }
    cur
}

/// Brute-force walk vector; errors if two planes of the same class see
/// different counts (they never should).
pub fn walk_vector(sp: &SympSpace, g: &OrthoGraph, source: u32, r: usize) -> Result<WalkVector> {
    let counts = walk_counts(g, source, r);
    let s = g.planes().get(source);
    let mut vec = [None::<u128>; 6];
    for (w_id, &c) in counts.iter().enumerate() {
        let class = classify(sp, s, g.planes().get(w_id as u32))?.index();
        match vec[class - 1] {
            None => vec[class - 1] = Some(c),
            Some(prev) => {
                if prev != c {
                    return Err(Error::WalkClassMismatch {
                        class,
                        first: prev as u64,
                        second: c as u64,
                    });
                }
            }
        }
    }
    Ok(WalkVector(vec.map(|v| v.unwrap_or(0))))
}

/// How pairs are drawn for the empirical transition matrix.
#[derive(Clone, Copy, Debug)]
pub enum SamplingPolicy {
    /// Every ordered pair of planes.
    Exhaustive,
    /// Fixed-seed random pairs, at least `per_class` per realized class.
    Sampled { per_class: usize, seed: u64 },
}

impl SamplingPolicy {
    /// Exhaustive for graphs of at most 1000 vertices, sampled otherwise.
    pub fn auto(g: &OrthoGraph, per_class: usize, seed: u64) -> SamplingPolicy {
        if g.vertex_count() <= 1000 {
            SamplingPolicy::Exhaustive
        } else {
            SamplingPolicy::Sampled { per_class, seed }
        }
    }
}

#[derive(Clone, Debug)]
pub struct MuReport {
    /// Observed row per class; unrealized classes stay zero.
    pub matrix: [[u64; 6]; 6],
    /// Classes with at least one observed pair.
    pub realized: [bool; 6],
    /// Ordered pairs inspected per class.
    pub pairs_sampled: [u64; 6],
    /// True iff every pair of a class produced the same row.
    pub class_constant: bool,
    /// Echoed sampling seed, if sampling was used.
    pub seed: Option<u64>,
}

/// The row of transition counts for one ordered pair (S, W): entry j counts
/// neighbours T of S with (T, W) in class j.
pub fn mu_row(sp: &SympSpace, g: &OrthoGraph, s_id: u32, w_id: u32) -> Result<[u64; 6]> {
    let w = g.planes().get(w_id);
    let mut row = [0u64; 6];
    for &t in g.neighbors(s_id) {
        let class = classify(sp, g.planes().get(t), w)?;
        row[class.index() - 1] += 1;
    }
    Ok(row)
}

pub fn empirical_mu(sp: &SympSpace, g: &OrthoGraph, policy: SamplingPolicy) -> Result<MuReport> {
    struct Acc {
        rows: [Option<[u64; 6]>; 6],
        pairs: [u64; 6],
        constant: bool,
    }
    impl Acc {
        fn new() -> Acc {
            Acc { rows: [None; 6], pairs: [0; 6], constant: true }
        }
        fn push(&mut self, class: usize, row: [u64; 6]) {
            self.pairs[class - 1] += 1;
            match self.rows[class - 1] {
                None => self.rows[class - 1] = Some(row),
                Some(prev) => {
                    if prev != row {
                        self.constant = false;
                    }
                }
            }
        }
        fn merge(mut self, other: Acc) -> Acc {
            for c in 0..6 {
                self.pairs[c] += other.pairs[c];
                match (self.rows[c], other.rows[c]) {
                    (None, r) => self.rows[c] = r,
                    (Some(a), Some(b)) if a != b => self.constant = false,
                    _ => {}
                }
            }
            self.constant &= other.constant;
            self
        }
    }

    let count = g.vertex_count() as u32;
    let acc = match policy {
        SamplingPolicy::Exhaustive => (0..count)
            .into_par_iter()
            .map(|s_id| {
                let mut acc = Acc::new();
                let s = g.planes().get(s_id);
                for w_id in 0..count {
                    let class = classify(sp, s, g.planes().get(w_id))?.index();
                    acc.push(class, mu_row(sp, g, s_id, w_id)?);
                }
                Ok(acc)
            })
            .try_reduce(Acc::new, |a, b| Ok(a.merge(b)))?,
        SamplingPolicy::Sampled { per_class, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            let t1 = oracle::table1(g.half_rank(), g.q())?;
            let class_sizes = t1.counts();
            let mut pairs: Vec<(u32, u32, usize)> = Vec::new();
            for class in 1..=6usize {
                if class_sizes[class - 1].is_zero() {
                    continue;
                }
                let mut found = 0usize;
                let mut attempts = 0u64;
                while found < per_class {
                    attempts += 1;
                    assert!(
                        attempts < 200_000 * per_class as u64,
                        "sampling starved for class {class}"
                    );
                    let s_id = rng.gen_range(0..count);
                    let w_id = if class == 1 { s_id } else { rng.gen_range(0..count) };
                    let got = classify(sp, g.planes().get(s_id), g.planes().get(w_id))?;
                    if got.index() == class {
                        pairs.push((s_id, w_id, class));
                        found += 1;
                    }
                }
            }
            pairs
                .into_par_iter()
                .map(|(s_id, w_id, class)| {
                    let mut acc = Acc::new();
                    acc.push(class, mu_row(sp, g, s_id, w_id)?);
                    Ok(acc)
                })
                .try_reduce(Acc::new, |a, b| Ok(a.merge(b)))?
        }
    };

    let mut matrix = [[0u64; 6]; 6];
    let mut realized = [false; 6];
    for c in 0..6 {
        if let Some(row) = acc.rows[c] {
            matrix[c] = row;
            realized[c] = true;
        }
    }
    Ok(MuReport {
        matrix,
        realized,
        pairs_sampled: acc.pairs,
        class_constant: acc.constant,
        seed: match policy {
            SamplingPolicy::Sampled { seed, .. } => Some(seed),
            SamplingPolicy::Exhaustive => None,
        },
    })
}

/// Count of neighbours T of S with (T, W) of class 5, next to the closed
/// form in dim(S + W) and psi(w_S, u_S).
pub fn mu5_check(sp: &SympSpace, g: &OrthoGraph, s_id: u32, w_id: u32) -> Result<(u64, u64)> {
    let s = g.planes().get(s_id);
    let w = g.planes().get(w_id);
    let empirical = mu_row(sp, g, s_id, w_id)?[CaseIndex::CircZero.index() - 1];

    let sum_dim = crate::planes::sum_dim(sp, s, w);
    let (bw, bu) = w.sbasis();
    let (_, _, ws) = s.project(sp, bw);
    let (_, _, us) = s.project(sp, bu);
    let pairing_nonzero = !sp.psi(&ws, &us).is_zero();
    let formula = oracle::mu5_formula(sp.n(), sp.field().q(), sum_dim, pairing_nonzero)
        .to_u64()
        .expect("mu5 fits u64");
    Ok((empirical, formula))
}

/// The unique ordered pair (x, y) in T with psi(x,y) = 1, psi(x,w) = 1 =
/// psi(y,u), psi(x,u) = 0 = psi(y,w), which exists iff W + T is degenerate.
/// Scans every vector pair of T; errors if uniqueness ever fails.
pub fn degenerate_sum_witness(
    sp: &SympSpace,
    w_plane: &Plane,
    t_plane: &Plane,
) -> Result<Option<(Vector, Vector)>> {
    let (w, u) = w_plane.sbasis();
    let members: Vec<Vector> = t_plane.subspace().members(sp).collect();
    let mut found: Vec<(Vector, Vector)> = Vec::new();
    for x in &members {
        if sp.psi(x, w) != crate::ff::FieldElement::ONE || !sp.psi(x, u).is_zero() {
            continue;
        }
        for y in &members {
            if sp.psi(x, y) == crate::ff::FieldElement::ONE
                && sp.psi(y, u) == crate::ff::FieldElement::ONE
                && sp.psi(y, w).is_zero()
            {
                found.push((x.clone(), y.clone()));
            }
        }
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(found.pop()),
        n => Err(Error::WitnessNotUnique { count: n }),
    }
}

/// Exact spectrum certificate: annihilation of the eigenvalue product over
/// the integers plus multiplicities recovered from power traces.
#[derive(Clone, Debug)]
pub struct SpectrumCertificate {
    pub eigenvalues: Vec<i64>,
    pub multiplicities: Vec<i128>,
    pub annihilation_verified: bool,
    pub multiplicities_valid: bool,
    /// tr(A^k) for k = 0 .. #eigenvalues-1.
    pub traces: Vec<i128>,
    /// 1 - q^{3n-6}/d_n for n >= 3; the n = 2 components are single edges.
    pub lambda_min: Option<BigRational>,
}

pub fn spectrum_certificate(sp: &SympSpace, g: &OrthoGraph) -> Result<SpectrumCertificate> {
    let n = sp.n();
    let q = sp.field().q();
    let eigenvalues = oracle::eigenvalues_i64(n, q)?;
    let deg = eigenvalues.len();

    // Coefficients of prod (X - lambda), low degree first.
    let mut coeffs = vec![0i128; deg + 1];
    coeffs[0] = 1;
    for (step, &lambda) in eigenvalues.iter().enumerate() {
        let mut next = vec![0i128; deg + 1];
        for k in 0..=step {
            next[k + 1] += coeffs[k];
            next[k] -= lambda as i128 * coeffs[k];
        }
        coeffs = next;
    }

    // Walk counts stay below degree^deg; pick the narrower kernel when safe.
    let fits_i64 = (g.degree() as f64).powi(deg as i32) < 0.9 * i64::MAX as f64;
    let (annihilation_verified, traces) = if fits_i64 {
        annihilation_scan::<i64>(g, &coeffs, deg)
    } else {
        annihilation_scan::<i128>(g, &coeffs, deg)
    };

    // Lagrange recovery: m_i = (sum_k c^{(i)}_k tr_k) / prod_{j != i}(l_i - l_j)
    // with c^{(i)} the coefficients of R(X)/(X - lambda_i).
    let mut multiplicities = Vec::with_capacity(deg);
    let mut multiplicities_valid = annihilation_verified;
    for &lambda in &eigenvalues {
        // synthetic division of coeffs by (X - lambda)
        let mut quo = vec![0i128; deg];
        let mut carry = 0i128;
        for k in (0..deg).rev() {
            quo[k] = coeffs[k + 1] + carry;
            carry = quo[k] * lambda as i128;
        }
        let numer: i128 = quo.iter().zip(&traces).map(|(c, t)| c * t).sum();
        let denom: i128 = eigenvalues
            .iter()
            .filter(|&&other| other != lambda)
            .map(|&other| (lambda - other) as i128)
            .product();
        if numer % denom != 0 {
            multiplicities_valid = false;
            multiplicities.push(0);
        } else {
            let m = numer / denom;
            if m < 0 {
                multiplicities_valid = false;
            }
            multiplicities.push(m);
        }
    }

    // Moment identities.
    let v = g.vertex_count() as i128;
    let d = g.degree() as i128;
    let sum: i128 = multiplicities.iter().sum();
    let sum1: i128 = multiplicities.iter().zip(&eigenvalues).map(|(m, &l)| m * l as i128).sum();
    let sum2: i128 = multiplicities
        .iter()
        .zip(&eigenvalues)
        .map(|(m, &l)| m * (l as i128) * (l as i128))
        .sum();
    if sum != v || sum1 != 0 || sum2 != v * d {
        multiplicities_valid = false;
    }

    Ok(SpectrumCertificate {
        eigenvalues,
        multiplicities,
        annihilation_verified,
        multiplicities_valid,
        traces,
        lambda_min: if n >= 3 { Some(oracle::lambda_min(n, q)?) } else { None },
    })
}

/// For every column j: iterate w_k = A^k e_j, accumulate the polynomial
/// combination sum_k c_k w_k and check it vanishes; collect diagonal
/// entries (A^k)_{jj} into power traces along the way.
fn annihilation_scan<T>(g: &OrthoGraph, coeffs: &[i128], deg: usize) -> (bool, Vec<i128>)
where
    T: Copy + Default + Send + Sync + num::PrimInt + std::ops::AddAssign,
{
    let n = g.vertex_count();
    let result = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut cur = vec![T::zero(); n];
            cur[j] = T::one();
            let mut acc = vec![0i128; n];
            acc[j] = coeffs[0];
            let mut diag = vec![0i128; deg];
            diag[0] = 1;
            let mut next = vec![T::zero(); n];
            for k in 1..=deg {
                for (v, slot) in next.iter_mut().enumerate() {
                    let mut s = T::zero();
                    for &w in g.neighbors(v as u32) {
                        s += cur[w as usize];
                    }
                    *slot = s;
                }
                std::mem::swap(&mut cur, &mut next);
                if k < deg {
                    diag[k] = cur[j].to_i128().unwrap();
                }
                let c = coeffs[k];
                if c != 0 {
                    for (a, w) in acc.iter_mut().zip(&cur) {
                        *a += c * w.to_i128().unwrap();
                    }
                }
            }
            let zero = acc.iter().all(|&a| a == 0);
            (zero, diag)
        })
        .reduce(
            || (true, vec![0i128; deg]),
            |(za, mut ta), (zb, tb)| {
                for (x, y) in ta.iter_mut().zip(tb) {
                    *x += y;
                }
                (za && zb, ta)
            },
        );
    (result.0, result.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;
    use crate::planes::canonical_plane;

    fn graph(q: u64, n: usize) -> (SympSpace, OrthoGraph) {
        let sp = SympSpace::new(FieldSpec::new(q).unwrap(), n, 0).unwrap();
        let g = build_graph(&sp).unwrap();
        (sp, g)
    }

    #[test]
    fn build_22_perfect_matching() {
        let (_, g) = graph(2, 2);
        assert_eq!(g.vertex_count(), 20);
        assert_eq!(g.degree(), 1);
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn build_32() {
        let (_, g) = graph(2, 3);
        assert_eq!(g.vertex_count(), 336);
        assert_eq!(g.degree(), 20);
        assert_eq!(g.edge_count(), 3360);
        // adjacency is symmetric and loop-free
        for v in 0..336u32 {
            assert!(!g.adjacent(v, v));
            for &w in g.neighbors(v) {
                assert!(g.adjacent(w, v));
            }
        }
    }

    #[test]
    fn build_rejects_bad_spaces() {
        let sp = SympSpace::new(FieldSpec::new(2).unwrap(), 1, 0).unwrap();
        assert!(build_graph(&sp).is_err());
        let sp = SympSpace::new(FieldSpec::new(2).unwrap(), 2, 1).unwrap();
        assert!(build_graph(&sp).is_err());
    }

    #[test]
    fn components_22() {
        let (_, g) = graph(2, 2);
        let rep = components_and_diameter(&g);
        assert_eq!(rep.count, 10);
        assert!(rep.sizes.iter().all(|&s| s == 2));
        assert!(rep.diameters.iter().all(|&d| d == 1));
    }

    #[test]
    fn components_32() {
        let (_, g) = graph(2, 3);
        let rep = components_and_diameter(&g);
        assert_eq!(rep.count, 1);
        assert_eq!(rep.diameter(), Some(3));
    }

    #[test]
    fn walk_vectors_small() {
        // Class 6 is empty at q = 2, so its bucket stays 0 while the
        // matrix-power vector carries the formula value; compare the five
        // realized slots.
        let (sp, g) = graph(2, 3);
        assert_eq!(walk_vector(&sp, &g, 0, 0).unwrap().0, [1, 0, 0, 0, 0, 0]);
        assert_eq!(walk_vector(&sp, &g, 0, 1).unwrap().0, [0, 0, 0, 1, 0, 0]);
        let l2 = walk_vector(&sp, &g, 0, 2).unwrap().0;
        assert_eq!(l2[..5], [20, 4, 0, 1, 1]);
        assert_eq!(l2[5], 0);
        let l3 = walk_vector(&sp, &g, 17, 3).unwrap().0;
        assert_eq!(l3[..5], [20, 20, 12, 66, 26]);
    }

    #[test]
    fn empirical_mu_exhaustive_32() {
        let (sp, g) = graph(2, 3);
        let rep = empirical_mu(&sp, &g, SamplingPolicy::Exhaustive).unwrap();
        assert!(rep.class_constant);
        assert_eq!(rep.realized, [true, true, true, true, true, false]);
        let mu = oracle::mu_table(3, 2).unwrap();
        for i in 0..6 {
            if rep.realized[i] {
                let expect: Vec<u64> =
                    mu.values[i].iter().map(|v| v.to_u64().unwrap()).collect();
                assert_eq!(rep.matrix[i].to_vec(), expect, "row {}", i + 1);
            }
        }
    }

    #[test]
    fn empirical_mu_row1_22() {
        let (sp, g) = graph(2, 2);
        let rep = empirical_mu(&sp, &g, SamplingPolicy::Exhaustive).unwrap();
        assert_eq!(rep.matrix[0], [0, 0, 0, 1, 0, 0]);
    }

    #[test]
    fn mu5_check_cases() {
        let (sp, g) = graph(2, 3);
        let s_id = 0u32;
        let s = g.planes().get(s_id);
        let mut seen = [false; 6];
        for w_id in 0..g.vertex_count() as u32 {
            let class = classify(&sp, s, g.planes().get(w_id)).unwrap().index();
            if seen[class - 1] {
                continue;
            }
            seen[class - 1] = true;
            let (empirical, formula) = mu5_check(&sp, &g, s_id, w_id).unwrap();
            assert_eq!(empirical, formula, "class {class}");
            match class {
                2 => assert_eq!(formula, 16),
                4 | 5 => assert_eq!(formula, 9),
                _ => {}
            }
        }
        assert!(seen[1] && seen[3] && seen[4]);
    }

    #[test]
    fn witness_iff_degenerate_sum() {
        let (sp, g) = graph(2, 3);
        // S = plane 0; T runs over neighbours of S, W over a slice of planes.
        for w_id in (0..336u32).step_by(29) {
            let w = g.planes().get(w_id);
            for &t_id in g.neighbors(0) {
                let t = g.planes().get(t_id);
                if t == w {
                    continue;
                }
                let witness = degenerate_sum_witness(&sp, w, t).unwrap();
                let mut all = w.rows().to_vec();
                all.extend(t.rows().iter().cloned());
                let sum = crate::symp::rref(&sp, &all);
                let degenerate = crate::symp::radical_dim(&sp, &sum) > 0;
                assert_eq!(witness.is_some(), degenerate);
                if let Some((x, y)) = witness {
                    assert_eq!(sp.psi(&x, &y), crate::ff::FieldElement::ONE);
                    let (bw, bu) = w.sbasis();
                    assert_eq!(sp.psi(&x, bw), crate::ff::FieldElement::ONE);
                    assert_eq!(sp.psi(&y, bu), crate::ff::FieldElement::ONE);
                    assert!(sp.psi(&x, bu).is_zero());
                    assert!(sp.psi(&y, bw).is_zero());
                }
            }
        }
    }

    #[test]
    fn witness_count_matches_mu3() {
        // W in class 3 of S: exactly q^{4n-9} = 8 neighbours T of S give a
        // degenerate sum with W.
        let (sp, g) = graph(2, 3);
        let s = g.planes().get(0);
        let w_id = (0..336u32)
            .find(|&i| {
                classify(&sp, s, g.planes().get(i)).unwrap() == CaseIndex::DegenerateSum
            })
            .unwrap();
        let w = g.planes().get(w_id);
        let hits = g
            .neighbors(0)
            .iter()
            .filter(|&&t| degenerate_sum_witness(&sp, w, g.planes().get(t)).unwrap().is_some())
            .count();
        assert_eq!(hits, 8);
    }

    #[test]
    fn spectrum_22() {
        let (sp, g) = graph(2, 2);
        let cert = spectrum_certificate(&sp, &g).unwrap();
        assert!(cert.annihilation_verified);
        assert!(cert.multiplicities_valid);
        assert_eq!(cert.eigenvalues, vec![-1, 1]);
        assert_eq!(cert.multiplicities, vec![10, 10]);
        assert_eq!(cert.lambda_min, None);
    }

    #[test]
    fn spectrum_32() {
        let (sp, g) = graph(2, 3);
        let cert = spectrum_certificate(&sp, &g).unwrap();
        assert!(cert.annihilation_verified);
        assert!(cert.multiplicities_valid);
        assert_eq!(cert.eigenvalues, vec![-8, -4, 2, 4, 8, 20]);
        assert_eq!(cert.multiplicities, vec![27, 105, 168, 0, 35, 1]);
        assert_eq!(cert.traces, vec![336, 0, 6720, 6720, 443_520, 3_360_000]);
        // the largest non-trivial eigenvalue actually attained is q^{3n-6}
        let attained: Vec<i64> = cert
            .eigenvalues
            .iter()
            .zip(&cert.multiplicities)
            .filter(|(_, &m)| m > 0)
            .map(|(&l, _)| l)
            .collect();
        assert_eq!(attained.iter().filter(|&&l| l != 20).max(), Some(&8));
        assert_eq!(
            cert.lambda_min,
            Some(BigRational::new(num::BigInt::from(3), num::BigInt::from(5)))
        );
    }
}
