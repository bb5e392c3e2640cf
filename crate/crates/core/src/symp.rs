//! The ambient space GF(q)^(2n+r) with the standard alternating form, the
//! RREF subspace calculus, and the projection machinery onto 2-dimensional
//! non-degenerate subspaces.
//!
//! Coordinate convention: coordinates 0..2n-1 carry the standard form
//! (psi(e_i, e_{n+j}) = delta_{ij} for 0 <= i, j < n) and coordinates
//! 2n..2n+r-1 span the radical.

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};

/// A vector in a fixed ambient space, one coordinate per dimension.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vector {
    coords: Vec<FieldElement>,
}

impl Vector {
    pub fn zero(dim: usize) -> Vector {
        Vector { coords: vec![FieldElement::ZERO; dim] }
    }

    /// Standard basis vector e_i (0-indexed).
    pub fn basis(dim: usize, i: usize) -> Vector {
        let mut v = Vector::zero(dim);
        v.coords[i] = FieldElement::ONE;
        v
    }

    pub fn from_indices(field: &FieldSpec, idx: &[u32]) -> Vector {
        Vector { coords: idx.iter().map(|&i| field.element(i)).collect() }
    }

    #[inline]
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Base-q integer encoding, coordinate 0 most significant.
    pub fn encode(&self, field: &FieldSpec) -> u64 {
        let q = field.q() as u64;
        let mut acc = 0u64;
        for c in &self.coords {
            acc = acc
                .checked_mul(q)
                .and_then(|a| a.checked_add(c.index() as u64))
                .expect("vector encoding overflows u64");
        }
        acc
    }

    /// Inverse of `encode`.
    pub fn decode(field: &FieldSpec, dim: usize, mut code: u64) -> Vector {
        let q = field.q() as u64;
        let mut coords = vec![FieldElement::ZERO; dim];
        for i in (0..dim).rev() {
            coords[i] = field.element((code % q) as u32);
            code /= q;
        }
        Vector { coords }
    }

    /// Digit string, coordinate 0 first. Digits are separated by `.` when
    /// q has more than one decimal digit.
    pub fn digit_string(&self, field: &FieldSpec) -> String {
        if field.q() <= 10 {
            self.coords.iter().map(|c| char::from_digit(c.index(), 10).unwrap()).collect()
        } else {
            self.coords.iter().map(|c| c.index().to_string()).collect::<Vec<_>>().join(".")
        }
    }
}

/// The ambient r-degenerate symplectic space GF(q)^(2n+r).
#[derive(Clone, Debug)]
pub struct SympSpace {
    field: FieldSpec,
    n: usize,
    r: usize,
}

impl SympSpace {
    pub fn new(field: FieldSpec, n: usize, r: usize) -> Result<SympSpace> {
        if n < 1 {
            return Err(Error::HalfRankTooSmall { n, min: 1 });
        }
        Ok(SympSpace { field, n, r })
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.n + self.r
    }

    pub fn e(&self, i: usize) -> Vector {
        Vector::basis(self.dim(), i)
    }

    /// The standard form: sum over i < n of u_i v_{n+i} - u_{n+i} v_i.
    /// Radical coordinates contribute nothing.
    pub fn psi(&self, u: &Vector, v: &Vector) -> FieldElement {
        assert_eq!(u.dim(), self.dim(), "psi: left vector dimension");
        assert_eq!(v.dim(), self.dim(), "psi: right vector dimension");
        let f = &self.field;
        let mut acc = FieldElement::ZERO;
        for i in 0..self.n {
            let a = f.mul(u.coords[i], v.coords[self.n + i]);
            let b = f.mul(u.coords[self.n + i], v.coords[i]);
            acc = f.add(acc, f.sub(a, b));
        }
        acc
    }

    pub fn add_vec(&self, u: &Vector, v: &Vector) -> Vector {
        let f = &self.field;
        Vector {
            coords: u.coords.iter().zip(&v.coords).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub_vec(&self, u: &Vector, v: &Vector) -> Vector {
        let f = &self.field;
        Vector {
            coords: u.coords.iter().zip(&v.coords).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: FieldElement, v: &Vector) -> Vector {
        let f = &self.field;
        Vector { coords: v.coords.iter().map(|&a| f.mul(c, a)).collect() }
    }

    /// u - c * v, the elimination step.
    pub fn axmy(&self, u: &Vector, c: FieldElement, v: &Vector) -> Vector {
        let f = &self.field;
        Vector {
            coords: u
                .coords
                .iter()
                .zip(&v.coords)
                .map(|(&a, &b)| f.sub(a, f.mul(c, b)))
                .collect(),
        }
    }

    pub fn vector_from_code(&self, code: u64) -> Vector {
        Vector::decode(&self.field, self.dim(), code)
    }

    /// Iterate all q^dim vectors in encoding order.
    pub fn vectors(&self) -> impl Iterator<Item = Vector> + '_ {
        let count = (self.field.q() as u64).pow(self.dim() as u32);
        (0..count).map(move |c| self.vector_from_code(c))
    }
}

/// A subspace in reduced row-echelon form; the RREF matrix is the unique
/// canonical representative, so equality of subspaces is row-wise equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubspaceBasis {
    rows: Vec<Vector>,
}

impl SubspaceBasis {
    /// Wrap rows already known to be in RREF.
    pub(crate) fn from_rref_rows(rows: Vec<Vector>) -> SubspaceBasis {
        SubspaceBasis { rows }
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, sp: &SympSpace, v: &Vector) -> bool {
        // Reduce v against the RREF rows; membership iff it reduces to zero.
        let mut w = v.clone();
        for row in &self.rows {
            let pivot = row.coords().iter().position(|c| !c.is_zero()).unwrap();
            let c = w.coords()[pivot];
            if !c.is_zero() {
                w = sp.axmy(&w, c, row);
            }
        }
        w.is_zero()
    }

    /// Iterate every vector of the subspace (q^dim of them).
    pub fn members<'a>(&'a self, sp: &'a SympSpace) -> impl Iterator<Item = Vector> + 'a {
        let q = sp.field().q() as u64;
        let count = q.pow(self.rows.len() as u32);
        (0..count).map(move |mut code| {
            let mut v = Vector::zero(sp.dim());
            for row in &self.rows {
                let c = sp.field().element((code % q) as u32);
                code /= q;
                if !c.is_zero() {
                    v = sp.add_vec(&v, &sp.scale(c, row));
                }
            }
            v
        })
    }
}

/// Reduced row echelon form of the span of `rows`; zero rows are dropped,
/// pivots are 1 and alone in their column, pivot columns strictly increase.
pub fn rref(sp: &SympSpace, rows: &[Vector]) -> SubspaceBasis {
    let f = sp.field();
    let dim = sp.dim();
    let mut mat: Vec<Vector> = rows.to_vec();
    let mut pivot_row = 0usize;
    for col in 0..dim {
        let Some(src) = (pivot_row..mat.len()).find(|&i| !mat[i].coords[col].is_zero()) else {
            continue;
        };
        mat.swap(pivot_row, src);
        let inv = f.inv(mat[pivot_row].coords[col]).unwrap();
        mat[pivot_row] = sp.scale(inv, &mat[pivot_row]);
        for i in 0..mat.len() {
            let factor = mat[i].coords[col];
            if i != pivot_row && !factor.is_zero() {
                let eliminated = sp.axmy(&mat[i], factor, &mat[pivot_row]);
                mat[i] = eliminated;
            }
        }
        pivot_row += 1;
        if pivot_row == mat.len() {
            break;
        }
    }
    mat.truncate(pivot_row);
    SubspaceBasis { rows: mat }
}

/// Rank of the span without building the canonical form.
pub fn rank(sp: &SympSpace, rows: &[Vector]) -> usize {
    rref(sp, rows).dim()
}

/// S^perp = { v : psi(s, v) = 0 for all s in S }, in RREF.
///
/// Kernel of the matrix whose rows are psi(s_i, e_j): after RREF-ing that
/// matrix the free columns index a canonical kernel basis.
pub fn orth_complement(sp: &SympSpace, s: &SubspaceBasis) -> SubspaceBasis {
    let f = sp.field();
    let dim = sp.dim();
    // Constraint matrix: one row per basis vector of S.
    let constraints: Vec<Vector> = s
        .rows
        .iter()
        .map(|row| {
            let coords = (0..dim).map(|j| sp.psi(row, &sp.e(j))).collect();
            Vector { coords }
        })
        .collect();
    let reduced = rref(sp, &constraints);

    let mut pivots = vec![usize::MAX; reduced.rows.len()];
    let mut is_pivot_col = vec![false; dim];
    for (i, row) in reduced.rows.iter().enumerate() {
        let p = row.coords.iter().position(|c| !c.is_zero()).unwrap();
        pivots[i] = p;
        is_pivot_col[p] = true;
    }

    let mut kernel = Vec::with_capacity(dim - reduced.rows.len());
    for free in 0..dim {
        if is_pivot_col[free] {
            continue;
        }
        let mut v = Vector::zero(dim);
        v.coords[free] = FieldElement::ONE;
        for (i, row) in reduced.rows.iter().enumerate() {
            // pivot coordinate solves row . v = 0
            v.coords[pivots[i]] = f.neg(row.coords[free]);
        }
        kernel.push(v);
    }
    rref(sp, &kernel)
}

/// dim(S intersect S^perp): corank of the Gram matrix of psi restricted to S.
pub fn radical_dim(sp: &SympSpace, s: &SubspaceBasis) -> usize {
    let d = s.dim();
    if d == 0 {
        return 0;
    }
    // Gram rows live in a d-dimensional coordinate space; reuse the ambient
    // machinery by padding with zeros.
    let gram: Vec<Vector> = s
        .rows
        .iter()
        .map(|a| {
            let mut coords = vec![FieldElement::ZERO; sp.dim()];
            for (j, b) in s.rows.iter().enumerate() {
                coords[j] = sp.psi(a, b);
            }
            Vector { coords }
        })
        .collect();
    d - rank(sp, &gram)
}

/// Lemma: S is non-degenerate iff S + S^perp is the whole space, which for
/// the restricted form means the Gram matrix has full rank.
pub fn is_nondegenerate(sp: &SympSpace, s: &SubspaceBasis) -> bool {
    let nd = radical_dim(sp, s) == 0;
    if nd && sp.r() == 0 {
        debug_assert_eq!(s.dim() + orth_complement(sp, s).dim(), sp.dim());
        debug_assert_eq!(intersection_dim(sp, s, &orth_complement(sp, s)), 0);
    }
    nd
}

/// dim(A intersect B) via dim A + dim B - dim(A + B).
pub fn intersection_dim(sp: &SympSpace, a: &SubspaceBasis, b: &SubspaceBasis) -> usize {
    let mut all: Vec<Vector> = a.rows.clone();
    all.extend(b.rows.iter().cloned());
    a.dim() + b.dim() - rank(sp, &all)
}

/// Decompose v against the plane spanned by the symplectic pair (x, y):
/// v = v_x x + v_y y + v_S with v_S in the plane's orthogonal complement.
/// v_x = psi(v, y), v_y = -psi(v, x).
pub fn project(
    sp: &SympSpace,
    v: &Vector,
    x: &Vector,
    y: &Vector,
) -> Result<(FieldElement, FieldElement, Vector)> {
    let pairing = sp.psi(x, y);
    if pairing != FieldElement::ONE {
        return Err(Error::NotSymplecticBasis { value: pairing.index() });
    }
    let vx = sp.psi(v, y);
    let vy = sp.field().neg(sp.psi(v, x));
    let mut vs = sp.axmy(v, vx, x);
    vs = sp.axmy(&vs, vy, y);
    Ok((vx, vy, vs))
}

/// w o_S u = w_x u_y - w_y u_x for the plane with symplectic basis (x, y).
/// Independent of the choice of (x, y); equals 1 - psi(w_S, u_S) whenever
/// psi(w, u) = 1.
pub fn circ(sp: &SympSpace, x: &Vector, y: &Vector, w: &Vector, u: &Vector) -> FieldElement {
    let f = sp.field();
    let wx = sp.psi(w, y);
    let wy = f.neg(sp.psi(w, x));
    let ux = sp.psi(u, y);
    let uy = f.neg(sp.psi(u, x));
    f.sub(f.mul(wx, uy), f.mul(wy, ux))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn space(q: u64, n: usize, r: usize) -> SympSpace {
        SympSpace::new(FieldSpec::new(q).unwrap(), n, r).unwrap()
    }

    fn random_vector(sp: &SympSpace, rng: &mut StdRng) -> Vector {
        let coords: Vec<u32> = (0..sp.dim()).map(|_| rng.gen_range(0..sp.field().q())).collect();
        Vector::from_indices(sp.field(), &coords)
    }

    #[test]
    fn psi_on_standard_basis() {
        let sp = space(3, 2, 0);
        // e_1, e_{n+1} in 1-indexed terms are e(0), e(n) here.
        assert_eq!(sp.psi(&sp.e(0), &sp.e(2)), FieldElement::ONE);
        assert_eq!(sp.psi(&sp.e(0), &sp.e(1)), FieldElement::ZERO);
        assert_eq!(sp.psi(&sp.e(2), &sp.e(0)), sp.field().neg(FieldElement::ONE));
        assert_eq!(sp.psi(&sp.e(1), &sp.e(3)), FieldElement::ONE);
    }

    #[test]
    fn psi_is_alternating_and_antisymmetric() {
        let sp = space(5, 2, 1);
        let mut rng = StdRng::seed_from_u64(crate::DEFAULT_SEED);
        for _ in 0..100 {
            let u = random_vector(&sp, &mut rng);
            let v = random_vector(&sp, &mut rng);
            assert_eq!(sp.psi(&u, &u), FieldElement::ZERO);
            assert_eq!(
                sp.field().add(sp.psi(&u, &v), sp.psi(&v, &u)),
                FieldElement::ZERO
            );
        }
    }

    #[test]
    fn radical_coordinates_are_orthogonal() {
        let sp = space(2, 1, 2);
        let rad = sp.e(2);
        for v in sp.vectors() {
            assert_eq!(sp.psi(&rad, &v), FieldElement::ZERO);
        }
    }

    #[test]
    fn complement_of_whole_space_is_zero() {
        let sp = space(2, 2, 0);
        let whole = rref(&sp, &(0..4).map(|i| sp.e(i)).collect::<Vec<_>>());
        assert_eq!(orth_complement(&sp, &whole).dim(), 0);
    }

    #[test]
    fn complement_of_isotropic_line() {
        let sp = space(2, 2, 0);
        let s = rref(&sp, &[sp.e(0)]);
        let c = orth_complement(&sp, &s);
        assert_eq!(c.dim(), 3);
        assert!(c.contains(&sp, &sp.e(0)));
    }

    #[test]
    fn dimension_identity_exhaustive_random() {
        // dim S + dim S^perp = dim V + dim(S cap Rad V) over random spans,
        // including degenerate ambient spaces.
        let mut rng = StdRng::seed_from_u64(crate::DEFAULT_SEED);
        for (q, n, r) in [(2u64, 3usize, 0usize), (2, 2, 1), (3, 2, 0), (2, 1, 2)] {
            let sp = space(q, n, r);
            let rad_rows: Vec<Vector> = (2 * n..2 * n + r).map(|i| sp.e(i)).collect();
            let rad = rref(&sp, &rad_rows);
            for _ in 0..50 {
                let k = rng.gen_range(0..=3usize);
                let rows: Vec<Vector> = (0..k).map(|_| random_vector(&sp, &mut rng)).collect();
                let s = rref(&sp, &rows);
                let c = orth_complement(&sp, &s);
                assert_eq!(
                    s.dim() + c.dim(),
                    sp.dim() + intersection_dim(&sp, &s, &rad),
                    "q={q} n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn double_complement_is_span_plus_radical() {
        let mut rng = StdRng::seed_from_u64(crate::DEFAULT_SEED + 1);
        for (q, n, r) in [(2u64, 2usize, 0usize), (2, 2, 2), (3, 2, 1), (2, 3, 0)] {
            let sp = space(q, n, r);
            let rad_rows: Vec<Vector> = (2 * n..2 * n + r).map(|i| sp.e(i)).collect();
            for _ in 0..40 {
                let k = rng.gen_range(0..=3usize);
                let rows: Vec<Vector> = (0..k).map(|_| random_vector(&sp, &mut rng)).collect();
                let s = rref(&sp, &rows);
                let double = orth_complement(&sp, &orth_complement(&sp, &s));
                let mut expected_rows = s.rows().to_vec();
                expected_rows.extend(rad_rows.iter().cloned());
                let expected = rref(&sp, &expected_rows);
                assert_eq!(double, expected, "q={q} n={n} r={r}");
            }
        }
    }

    #[test]
    fn radical_dim_examples() {
        let sp = space(2, 3, 0);
        let hyperbolic = rref(&sp, &[sp.e(0), sp.e(3)]);
        assert_eq!(radical_dim(&sp, &hyperbolic), 0);
        let isotropic = rref(&sp, &[sp.e(0), sp.e(1)]);
        assert_eq!(radical_dim(&sp, &isotropic), 2);
        let mixed = rref(&sp, &[sp.e(0), sp.e(1), sp.e(3)]);
        assert_eq!(radical_dim(&sp, &mixed), 1);
    }

    #[test]
    fn nondegeneracy_examples() {
        let sp = space(2, 3, 0);
        assert!(is_nondegenerate(&sp, &rref(&sp, &[sp.e(0), sp.e(3)])));
        assert!(!is_nondegenerate(&sp, &rref(&sp, &[sp.e(0), sp.e(1)])));
        let v = sp.add_vec(&sp.e(0), &sp.e(1));
        assert!(is_nondegenerate(&sp, &rref(&sp, &[v, sp.e(3)])));
    }

    #[test]
    fn projection_examples() {
        let sp = space(2, 3, 0);
        let x = sp.e(0);
        let y = sp.e(3);
        // v already orthogonal to the plane
        let w = sp.e(1);
        let (vx, vy, vs) = project(&sp, &w, &x, &y).unwrap();
        assert_eq!((vx, vy), (FieldElement::ZERO, FieldElement::ZERO));
        assert_eq!(vs, w);
        // v = x
        let (vx, vy, vs) = project(&sp, &x, &x, &y).unwrap();
        assert_eq!((vx, vy), (FieldElement::ONE, FieldElement::ZERO));
        assert!(vs.is_zero());
        // v = x + y + w
        let v = sp.add_vec(&sp.add_vec(&x, &y), &w);
        let (vx, vy, vs) = project(&sp, &v, &x, &y).unwrap();
        assert_eq!((vx, vy), (FieldElement::ONE, FieldElement::ONE));
        assert_eq!(vs, w);
    }

    #[test]
    fn projection_rejects_non_symplectic_basis() {
        let sp = space(2, 2, 0);
        let err = project(&sp, &sp.e(0), &sp.e(0), &sp.e(1)).unwrap_err();
        assert!(matches!(err, Error::NotSymplecticBasis { value: 0 }));
    }

    #[test]
    fn projection_decomposition_and_basis_independence() {
        let sp = space(3, 2, 0);
        let mut rng = StdRng::seed_from_u64(crate::DEFAULT_SEED + 2);
        let x = sp.e(0);
        let y = sp.e(2);
        // Second symplectic basis of the same plane: (x + y, y).
        let x2 = sp.add_vec(&x, &y);
        for _ in 0..200 {
            let v = random_vector(&sp, &mut rng);
            let (vx, vy, vs) = project(&sp, &v, &x, &y).unwrap();
            // v = v_x x + v_y y + v_S
            let rebuilt =
                sp.add_vec(&sp.add_vec(&sp.scale(vx, &x), &sp.scale(vy, &y)), &vs);
            assert_eq!(rebuilt, v);
            // v_S lands in the orthogonal complement
            assert_eq!(sp.psi(&vs, &x), FieldElement::ZERO);
            assert_eq!(sp.psi(&vs, &y), FieldElement::ZERO);
            // v_S does not depend on the basis
            let (_, _, vs2) = project(&sp, &v, &x2, &y).unwrap();
            assert_eq!(vs, vs2);
        }
    }

    #[test]
    fn circ_examples() {
        let sp = space(2, 3, 0);
        let x = sp.e(0);
        let y = sp.e(3);
        // both in the complement: all projections vanish
        let w = sp.e(1);
        let u = sp.e(4);
        assert_eq!(sp.psi(&w, &u), FieldElement::ONE);
        assert_eq!(circ(&sp, &x, &y, &w, &u), FieldElement::ZERO);
        // w = x, u = y
        assert_eq!(circ(&sp, &x, &y, &x, &y), FieldElement::ONE);
    }

    #[test]
    fn circ_identity_exhaustive_small() {
        // 1 - psi(w_S, u_S) = circ whenever psi(w, u) = 1, for n = 2 and
        // q in {2, 3}, over every plane basis (x, y) and every pair (w, u).
        for q in [2u64, 3] {
            let sp = space(q, 2, 0);
            let f = sp.field();
            let vectors: Vec<Vector> = sp.vectors().collect();
            let mut bases = Vec::new();
            for x in &vectors {
                for y in &vectors {
                    if sp.psi(x, y) == FieldElement::ONE {
                        bases.push((x.clone(), y.clone()));
                    }
                }
            }
            let mut checked = 0u64;
            for (x, y) in bases.iter().take(30) {
                for w in &vectors {
                    for u in &vectors {
                        if sp.psi(w, u) != FieldElement::ONE {
                            continue;
                        }
                        let (_, _, ws) = project(&sp, w, x, y).unwrap();
                        let (_, _, us) = project(&sp, u, x, y).unwrap();
                        let lhs = f.sub(FieldElement::ONE, sp.psi(&ws, &us));
                        assert_eq!(lhs, circ(&sp, x, y, w, u));
                        checked += 1;
                    }
                }
            }
            assert!(checked > 0);
        }
    }

    #[test]
    fn encode_decode_roundtrip() {
        let sp = space(3, 2, 1);
        for v in sp.vectors().take(200) {
            let code = v.encode(sp.field());
            assert_eq!(Vector::decode(sp.field(), sp.dim(), code), v);
        }
        let v = Vector::from_indices(sp.field(), &[1, 0, 2, 1, 0]);
        assert_eq!(v.digit_string(sp.field()), "10210");
        assert_eq!(v.encode(sp.field()), 1 * 81 + 0 * 27 + 2 * 9 + 1 * 3 + 0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_space() -> impl Strategy<Value = SympSpace> {
            (prop_oneof![Just(2u64), Just(3), Just(4), Just(5)], 1usize..=3, 0usize..=1)
                .prop_map(|(q, n, r)| space(q, n, r))
        }

        fn vector_from_code(sp: &SympSpace, code: u64) -> Vector {
            let total = (sp.field().q() as u64).pow(sp.dim() as u32);
            sp.vector_from_code(code % total)
        }

        proptest! {
            /// Two generating sets of the same span reduce to the same RREF:
            /// scalings, row additions, reordering, and redundant rows all
            /// wash out.
            #[test]
            fn rref_is_a_canonical_form(
                sp in arb_space(),
                codes in proptest::collection::vec(0u64..1_000_000, 1..4),
                scale_idx in 0u32..64,
                mix in proptest::collection::vec((0usize..4, 0usize..4), 0..4),
            ) {
                let rows: Vec<Vector> =
                    codes.iter().map(|&c| vector_from_code(&sp, c)).collect();
                let canon = rref(&sp, &rows);

                let f = sp.field();
                let mut altered: Vec<Vector> = rows.iter().rev().cloned().collect();
                let c = f.element(1 + scale_idx % (f.q() - 1).max(1));
                altered[0] = sp.scale(c, &altered[0]);
                for &(i, j) in &mix {
                    let (i, j) = (i % altered.len(), j % altered.len());
                    if i != j {
                        let sum = sp.add_vec(&altered[i], &altered[j]);
                        altered[i] = sum;
                    }
                }
                // a redundant generator changes nothing
                let extra = altered[0].clone();
                altered.push(extra);

                prop_assert_eq!(rref(&sp, &altered), canon);
            }

            /// psi is bilinear in the first slot.
            #[test]
            fn psi_is_bilinear(
                sp in arb_space(),
                a in 0u64..1_000_000,
                b in 0u64..1_000_000,
                w in 0u64..1_000_000,
                scalar in 0u32..64,
            ) {
                let f = sp.field();
                let u = vector_from_code(&sp, a);
                let v = vector_from_code(&sp, b);
                let w = vector_from_code(&sp, w);
                let c = f.element(scalar % f.q());
                let lhs = sp.psi(&sp.add_vec(&sp.scale(c, &u), &v), &w);
                let rhs = f.add(f.mul(c, sp.psi(&u, &w)), sp.psi(&v, &w));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
