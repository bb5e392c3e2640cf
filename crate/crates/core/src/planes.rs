//! Canonical 2-dimensional non-degenerate subspaces, their deterministic
//! enumeration, and the six-case classification of ordered pairs.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ff::FieldElement;
use crate::symp::{circ, rank, rref, SympSpace, Vector};

/// A plane: canonical RREF basis plus a cached symplectic basis (w, u)
/// with psi(w, u) = 1 derived deterministically from the RREF rows.
/// Equality and hashing go through the RREF encoding alone.
#[derive(Clone, Debug)]
pub struct Plane {
    rows: [Vector; 2],
    sbasis: [Vector; 2],
    key: [u64; 2],
}

impl PartialEq for Plane {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Plane {}

impl std::hash::Hash for Plane {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl Plane {
    /// RREF basis rows (two of them).
    pub fn rows(&self) -> &[Vector; 2] {
        &self.rows
    }

    /// The cached pair (w, u) with psi(w, u) = 1.
    pub fn sbasis(&self) -> (&Vector, &Vector) {
        (&self.sbasis[0], &self.sbasis[1])
    }

    /// Row encodings; lexicographic order on these is the enumeration order.
    pub fn key(&self) -> [u64; 2] {
        self.key
    }

    /// Decompose v over this plane: (v_x, v_y, v_S).
    pub fn project(&self, sp: &SympSpace, v: &Vector) -> (FieldElement, FieldElement, Vector) {
        crate::symp::project(sp, v, &self.sbasis[0], &self.sbasis[1])
            .expect("cached basis is symplectic")
    }

    /// w o_S u with S = this plane.
    pub fn circ(&self, sp: &SympSpace, w: &Vector, u: &Vector) -> FieldElement {
        circ(sp, &self.sbasis[0], &self.sbasis[1], w, u)
    }

    /// True iff every vector of `self` pairs to zero with every vector
    /// of `other`.
    pub fn orthogonal_to(&self, sp: &SympSpace, other: &Plane) -> bool {
        self.rows.iter().all(|a| {
            other.rows.iter().all(|b| sp.psi(a, b).is_zero())
        })
    }

    /// The plane as a subspace.
    pub fn subspace(&self) -> crate::symp::SubspaceBasis {
        crate::symp::SubspaceBasis::from_rref_rows(self.rows.to_vec())
    }
}

/// dim(S + W) for two planes.
pub fn sum_dim(sp: &SympSpace, s: &Plane, w: &Plane) -> usize {
    if s.key() == w.key() {
        2
    } else {
        sum_rank(sp, s, w)
    }
}

/// The canonical plane spanned by v1, v2; rejects dependent spans and
/// spans on which the form vanishes.
pub fn canonical_plane(sp: &SympSpace, v1: &Vector, v2: &Vector) -> Result<Plane> {
    let basis = rref(sp, &[v1.clone(), v2.clone()]);
    if basis.dim() != 2 {
        return Err(Error::LinearlyDependent);
    }
    let r0 = basis.rows()[0].clone();
    let r1 = basis.rows()[1].clone();
    let pairing = sp.psi(&r0, &r1);
    if pairing.is_zero() {
        return Err(Error::DegeneratePlane);
    }
    let u = sp.scale(sp.field().inv(pairing).unwrap(), &r1);
    let key = [r0.encode(sp.field()), r1.encode(sp.field())];
    Ok(Plane { sbasis: [r0.clone(), u], rows: [r0, r1], key })
}

/// All planes of the space, sorted by RREF encoding; the position in
/// `planes` is the dense id.
#[derive(Clone, Debug)]
pub struct PlaneSet {
    planes: Vec<Plane>,
    index: HashMap<[u64; 2], u32>,
}

impl PlaneSet {
    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn get(&self, id: u32) -> &Plane {
        &self.planes[id as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Plane> {
        self.planes.iter()
    }

    pub fn id_of(&self, plane: &Plane) -> Option<u32> {
        self.index.get(&plane.key()).copied()
    }
}

/// Enumerate every 2-dimensional non-degenerate subspace: walk projective
/// representatives w (first nonzero coordinate 1), pair them with every u
/// having psi(w, u) != 0, canonicalize, and deduplicate on the RREF key.
pub fn enumerate_planes(sp: &SympSpace) -> PlaneSet {
    let f = sp.field();
    let q = f.q() as u64;
    let dim = sp.dim();
    let total = q.checked_pow(dim as u32).expect("space too large to enumerate");

    let mut seen: HashMap<[u64; 2], Plane> = HashMap::new();
    for code in 1..total {
        let w = sp.vector_from_code(code);
        // projective representative: first nonzero coordinate is 1
        let first = w.coords().iter().position(|c| !c.is_zero()).unwrap();
        if w.coords()[first] != FieldElement::ONE {
            continue;
        }
        for ucode in 1..total {
            let u = sp.vector_from_code(ucode);
            if sp.psi(&w, &u).is_zero() {
                continue;
            }
            let plane = canonical_plane(sp, &w, &u).expect("span is a plane by construction");
            seen.entry(plane.key()).or_insert(plane);
        }
    }

    let mut planes: Vec<Plane> = seen.into_values().collect();
    planes.sort_by_key(|p| p.key());
    let index = planes
        .iter()
        .enumerate()
        .map(|(i, p)| (p.key(), i as u32))
        .collect();
    PlaneSet { planes, index }
}

/// The six pairwise-disjoint configurations of an ordered pair of planes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CaseIndex {
    /// S = W.
    Equal = 1,
    /// dim(S + W) = 3.
    Dim3 = 2,
    /// dim(S + W) = 4 with S + W degenerate.
    DegenerateSum = 3,
    /// S perp W.
    Orthogonal = 4,
    /// Sum non-degenerate, not orthogonal, w o_S u = 0.
    CircZero = 5,
    /// dim 4 sum, non-degenerate, not orthogonal, w o_S u != 0.
    CircNonzero = 6,
}

impl CaseIndex {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<CaseIndex> {
        use CaseIndex::*;
        match i {
            1 => Some(Equal),
            2 => Some(Dim3),
            3 => Some(DegenerateSum),
            4 => Some(Orthogonal),
            5 => Some(CircZero),
            6 => Some(CircNonzero),
            _ => None,
        }
    }

    pub const ALL: [CaseIndex; 6] = [
        CaseIndex::Equal,
        CaseIndex::Dim3,
        CaseIndex::DegenerateSum,
        CaseIndex::Orthogonal,
        CaseIndex::CircZero,
        CaseIndex::CircNonzero,
    ];
}

/// Classify the ordered pair (S, W). Stated for non-degenerate ambient
/// spaces only; r > 0 is rejected.
pub fn classify(sp: &SympSpace, s: &Plane, w: &Plane) -> Result<CaseIndex> {
    if sp.r() != 0 {
        return Err(Error::RadicalUnsupported { r: sp.r() });
    }
    if s.key() == w.key() {
        return Ok(CaseIndex::Equal);
    }
    if s.orthogonal_to(sp, w) {
        // orthogonality forces dim(S+W) = 4 and a non-degenerate sum
        return Ok(CaseIndex::Orthogonal);
    }
    let sum_dim = sum_rank(sp, s, w);
    if sum_dim == 3 {
        return Ok(CaseIndex::Dim3);
    }
    debug_assert_eq!(sum_dim, 4);
    // Gram rank of the four generators decides degeneracy of S + W.
    if gram_rank4(sp, s, w) < 4 {
        return Ok(CaseIndex::DegenerateSum);
    }
    let (bw, bu) = w.sbasis();
    if s.circ(sp, bw, bu).is_zero() {
        Ok(CaseIndex::CircZero)
    } else {
        Ok(CaseIndex::CircNonzero)
    }
}

/// Spaces up to this ambient dimension take the allocation-free rank path.
const STACK_DIM: usize = 16;

/// dim(S + W) from the four basis rows.
fn sum_rank(sp: &SympSpace, s: &Plane, w: &Plane) -> usize {
    let dim = sp.dim();
    if dim > STACK_DIM {
        let stacked = [
            s.rows[0].clone(),
            s.rows[1].clone(),
            w.rows[0].clone(),
            w.rows[1].clone(),
        ];
        return rank(sp, &stacked);
    }
    let f = sp.field();
    let mut m = [[FieldElement::ZERO; STACK_DIM]; 4];
    for (dst, src) in m.iter_mut().zip([&s.rows[0], &s.rows[1], &w.rows[0], &w.rows[1]]) {
        dst[..dim].copy_from_slice(src.coords());
    }
    // Rows 0 and 1 are S's RREF rows (leading 1s), so only rows 2 and 3
    // need eliminating. Pivot rows are kept normalized.
    let mut rank = 2;
    for row in 2..4 {
        for prev in 0..rank {
            let lead = m[prev].iter().position(|c| !c.is_zero()).unwrap();
            let factor = m[row][lead];
            if !factor.is_zero() {
                for c in lead..dim {
                    m[row][c] = f.sub(m[row][c], f.mul(factor, m[prev][c]));
                }
            }
        }
        if let Some(lead) = m[row].iter().position(|c| !c.is_zero()) {
            let inv = f.inv(m[row][lead]).unwrap();
            for c in lead..dim {
                m[row][c] = f.mul(inv, m[row][c]);
            }
            if rank != row {
                m.swap(rank, row);
            }
            rank += 1;
        }
    }
    rank
}

/// Rank of the 4x4 Gram matrix of psi on the four basis rows of S and W.
fn gram_rank4(sp: &SympSpace, s: &Plane, w: &Plane) -> usize {
    let rows = [&s.rows[0], &s.rows[1], &w.rows[0], &w.rows[1]];
    let f = sp.field();
    let mut g = [[FieldElement::ZERO; 4]; 4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            let v = sp.psi(rows[i], rows[j]);
            g[i][j] = v;
            g[j][i] = f.neg(v);
        }
    }
    let mut rank = 0;
    for col in 0..4 {
        let Some(p) = (rank..4).find(|&i| !g[i][col].is_zero()) else {
            continue;
        };
        g.swap(rank, p);
        let inv = f.inv(g[rank][col]).unwrap();
        for c in 0..4 {
            g[rank][c] = f.mul(inv, g[rank][c]);
        }
        for i in 0..4 {
            let factor = g[i][col];
            if i != rank && !factor.is_zero() {
                for c in 0..4 {
                    g[i][c] = f.sub(g[i][c], f.mul(factor, g[rank][c]));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Counts of the six configurations over every plane W for a fixed S.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseCensus(pub [u64; 6]);

impl CaseCensus {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

pub fn case_census(sp: &SympSpace, planes: &PlaneSet, s: &Plane) -> Result<CaseCensus> {
    let mut counts = [0u64; 6];
    for w in planes.iter() {
        counts[classify(sp, s, w)?.index() - 1] += 1;
    }
    Ok(CaseCensus(counts))
}
