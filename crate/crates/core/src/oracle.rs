//! Closed-form counting formulas as pure functions of (n, q): group orders,
//! the pair census, plane counts, the 6x6 triple-transition matrix, frame
//! counts and Euler characteristics, adjacency eigenvalues, and the spectral
//! vanishing predicates. Everything is exact big-integer or big-rational
//! arithmetic; no floating point.
//!
//! Formulas with small indices (d_1, c_1, ...) are evaluated literally as
//! rationals; entries that come out non-integral can only belong to
//! unrealizable configurations and are reported as 0 with the row flagged.

use std::collections::BTreeMap;

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(int(x))
}

/// q^e as an exact rational, e possibly negative.
fn qpow(q: u32, e: i64) -> BigRational {
    let p = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Rational -> count. Non-integral or negative values signal an
/// unrealizable configuration; they map to (0, false).
fn to_count(r: &BigRational) -> (BigUint, bool) {
    if r.is_integer() && !r.is_negative() {
        (r.to_integer().to_biguint().unwrap(), true)
    } else {
        (BigUint::zero(), false)
    }
}

/// |Sp_{2n}(q)| = q^{n^2} * prod_{i=1}^{n} (q^{2i} - 1); the empty product
/// gives 1 at n = 0.
pub fn sp_order(n: usize, q: u32) -> BigUint {
    let qi = BigUint::from(q);
    let mut acc = qi.pow((n * n) as u32);
    for i in 1..=n {
        acc *= qi.pow(2 * i as u32) - BigUint::one();
    }
    acc
}

// Literal census formulas, defined for any integer index m. For m >= 2 these
// are the genuine counts; smaller m evaluates to 0 or to a non-integral
// placeholder handled by `to_count`.

fn d_rat(m: i64, q: u32) -> BigRational {
    qpow(q, 2 * m - 4) * (qpow(q, 2 * m - 2) - rat(1)) / (qpow(q, 2) - rat(1))
}

fn b_rat(m: i64, q: u32) -> BigRational {
    (qpow(q, 2 * m - 2) - rat(1)) * (rat(q as i64) + rat(1))
}

fn c_rat(m: i64, q: u32) -> BigRational {
    (qpow(q, 2 * m - 2) - rat(1)) * (qpow(q, 2 * m - 3) - rat(q as i64))
}

fn e1_rat(m: i64, q: u32) -> BigRational {
    qpow(q, 2 * m - 4) * (qpow(q, 2 * m - 2) - rat(1)) * (rat(q as i64) + rat(1))
}

fn e2_rat(m: i64, q: u32) -> BigRational {
    qpow(q, 2 * m - 3) * (qpow(q, 2 * m - 2) - rat(1)) * (rat(q as i64) - rat(2))
}

fn e0_rat(m: i64, q: u32) -> BigRational {
    e1_rat(m, q) + e2_rat(m, q)
}

/// d_m: number of 2-dimensional non-degenerate subspaces of a symplectic
/// space of dimension 2(m-1); the vertex degree at half-rank m.
pub fn d(m: i64, q: u32) -> BigUint {
    to_count(&d_rat(m, q)).0
}

/// The pair census of a base plane: counts of the six configurations over
/// all planes W for fixed S in half-rank n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1 {
    pub b: BigUint,
    pub c: BigUint,
    pub d: BigUint,
    pub e0: BigUint,
    pub e1: BigUint,
    pub e2: BigUint,
}

impl Table1 {
    /// 1 + b + c + d + e0, which must equal the total plane count.
    pub fn total(&self) -> BigUint {
        BigUint::one() + &self.b + &self.c + &self.d + &self.e0
    }

    /// Census as the six per-case counts (case 1 is the plane itself).
    pub fn counts(&self) -> [BigUint; 6] {
        [
            BigUint::one(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.e1.clone(),
            self.e2.clone(),
        ]
    }
}

pub fn table1(n: usize, q: u32) -> Result<Table1> {
    if n < 2 {
        return Err(Error::HalfRankTooSmall { n, min: 2 });
    }
    let m = n as i64;
    let t = Table1 {
        b: to_count(&b_rat(m, q)).0,
        c: to_count(&c_rat(m, q)).0,
        d: to_count(&d_rat(m, q)).0,
        e0: to_count(&e0_rat(m, q)).0,
        e1: to_count(&e1_rat(m, q)).0,
        e2: to_count(&e2_rat(m, q)).0,
    };
    debug_assert_eq!(t.e0, &t.e1 + &t.e2);
    Ok(t)
}

/// Number of 2-dimensional non-degenerate subspaces of an r-degenerate
/// space of dimension 2n + r: d_{n+1} * q^{2r}.
pub fn plane_count(n: usize, q: u32, r: usize) -> BigUint {
    d(n as i64 + 1, q) * BigUint::from(q).pow(2 * r as u32)
}

/// The 6x6 transition matrix: entry (i, j) counts, for a class-i pair
/// (S, W), the neighbours T of S with (T, W) in class j. Rows whose class
/// is unrealizable for this (n, q) are flagged; their entries follow the
/// mu = 0 convention wherever the literal formula is not a count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuTable {
    pub values: [[BigUint; 6]; 6],
    pub realized: [bool; 6],
}

impl MuTable {
    pub fn row(&self, i: usize) -> &[BigUint; 6] {
        &self.values[i - 1]
    }
}

pub fn mu_table(n: usize, q: u32) -> Result<MuTable> {
    if n < 2 {
        return Err(Error::HalfRankTooSmall { n, min: 2 });
    }
    let m = n as i64;
    let qi = |e: i64| qpow(q, e);
    let zero = BigRational::zero;

    let rows: [[BigRational; 6]; 6] = [
        [zero(), zero(), zero(), d_rat(m, q), zero(), zero()],
        [zero(), zero(), zero(), d_rat(m - 1, q) * qi(2), qi(4 * m - 8), zero()],
        [
            zero(),
            zero(),
            qi(4 * m - 9),
            d_rat(m - 2, q) * qi(4),
            qi(4 * m - 10) * (rat(q as i64) + rat(1)),
            qi(4 * m - 9) * (rat(q as i64) - rat(2)),
        ],
        [
            rat(1),
            b_rat(m - 1, q),
            c_rat(m - 1, q),
            d_rat(m - 1, q),
            e1_rat(m - 1, q),
            e2_rat(m - 1, q),
        ],
        [
            zero(),
            qi(2 * m - 4),
            qi(2 * m - 5) * (qi(2 * m - 4) - rat(1)),
            d_rat(m - 1, q),
            e1_rat(m - 1, q),
            e2_rat(m - 1, q),
        ],
        [
            zero(),
            zero(),
            qi(2 * m - 5) * (qi(2 * m - 4) - rat(1)),
            d_rat(m - 1, q),
            e1_rat(m - 1, q),
            e2_rat(m - 1, q) + qi(2 * m - 4),
        ],
    ];

    let t1 = table1(n, q)?;
    let class_sizes = t1.counts();
    let mut values: [[BigUint; 6]; 6] = Default::default();
    let mut realized = [false; 6];
    for i in 0..6 {
        realized[i] = !class_sizes[i].is_zero();
        for j in 0..6 {
            let (v, integral) = to_count(&rows[i][j]);
            // Literal formulas only fail to be counts on unrealizable rows.
            debug_assert!(integral || !realized[i], "row {} col {}", i + 1, j + 1);
            values[i][j] = v;
        }
    }
    Ok(MuTable { values, realized })
}

/// Number of m-frames: |Sp_{2n}(q)| / (q^m (q^2-1)^m m! |Sp_{2(n-m)}(q)|).
pub fn frame_count(n: usize, q: u32, m: usize) -> Result<BigUint> {
    if m > n {
        return Err(Error::FrameSizeOutOfRange { m, max: n });
    }
    let qb = BigUint::from(q);
    let mut denom = qb.pow(m as u32) * (qb.pow(2) - BigUint::one()).pow(m as u32);
    for i in 1..=m {
        denom *= BigUint::from(i);
    }
    denom *= sp_order(n - m, q);
    let num = sp_order(n, q);
    let (quot, rem) = num::Integer::div_rem(&num, &denom);
    assert!(rem.is_zero(), "frame count is not integral");
    Ok(quot)
}

/// Reduced Euler characteristic of the frame complex:
/// sum_{m=0}^{n} (-1)^{m+1} f_m.
pub fn euler_char(n: usize, q: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for m in 0..=n {
        let f = BigInt::from_biguint(Sign::Plus, frame_count(n, q, m).unwrap());
        if m % 2 == 0 {
            acc -= f;
        } else {
            acc += f;
        }
    }
    acc
}

/// Roots of the minimal polynomial of the orthogonality-graph adjacency
/// matrix, sorted ascending with duplicates collapsed.
pub fn eigenvalues(n: usize, q: u32) -> Result<Vec<BigInt>> {
    if n < 2 {
        return Err(Error::HalfRankTooSmall { n, min: 2 });
    }
    let dn = BigInt::from_biguint(Sign::Plus, d(n as i64, q));
    let mut eig = if n == 2 {
        // d_2 = 1 and -q^{2n-4} = -1.
        vec![dn, int(-1)]
    } else {
        let q1 = int(q as i64).pow((2 * n - 5) as u32);
        let q2 = int(q as i64).pow((2 * n - 4) as u32);
        let q3 = int(q as i64).pow((3 * n - 6) as u32);
        vec![dn, q1, q2.clone(), -q2, q3.clone(), -q3]
    };
    eig.sort();
    eig.dedup();
    Ok(eig)
}

/// The six walk counts of length 2 bucketed by class:
/// (d_n, d_{n-1} q^2, d_{n-2} q^4, d_{n-1}, d_{n-1}, d_{n-1}).
pub fn l2_vector(n: usize, q: u32) -> Result<[BigUint; 6]> {
    if n < 2 {
        return Err(Error::HalfRankTooSmall { n, min: 2 });
    }
    let m = n as i64;
    Ok([
        to_count(&d_rat(m, q)).0,
        to_count(&(d_rat(m - 1, q) * qpow(q, 2))).0,
        to_count(&(d_rat(m - 2, q) * qpow(q, 4))).0,
        to_count(&d_rat(m - 1, q)).0,
        to_count(&d_rat(m - 1, q)).0,
        to_count(&d_rat(m - 1, q)).0,
    ])
}

/// mu^r applied to the length-0 walk vector (1, 0, 0, 0, 0, 0).
pub fn mu_walk_vector(n: usize, q: u32, r: usize) -> Result<[BigUint; 6]> {
    let mu = mu_table(n, q)?;
    let mut l: [BigUint; 6] = Default::default();
    l[0] = BigUint::one();
    for _ in 0..r {
        let mut next: [BigUint; 6] = Default::default();
        for i in 0..6 {
            for j in 0..6 {
                next[i] += &mu.values[i][j] * &l[j];
            }
        }
        l = next;
    }
    Ok(l)
}

/// Closed form for the class-5 transition count of a pair (S, W), given
/// dim(S + W) and whether psi(w_S, u_S) vanishes:
/// q^{2n-dim-2}/(q-1) * (q^{2n-2} - q^{2n-dim} [- q^2 + 1]).
pub fn mu5_formula(n: usize, q: u32, sum_dim: usize, pairing_nonzero: bool) -> BigUint {
    let m = n as i64;
    let dim = sum_dim as i64;
    let mut bracket = qpow(q, 2 * m - 2) - qpow(q, 2 * m - dim);
    if pairing_nonzero {
        bracket -= qpow(q, 2) - rat(1);
    }
    let value = qpow(q, 2 * m - dim - 2) / (rat(q as i64) - rat(1)) * bracket;
    let (count, integral) = to_count(&value);
    assert!(integral, "mu5 formula must be a count (n={n} q={q} dim={sum_dim})");
    count
}

/// P_j(q) = (q^{2j-2} - 1) / (q^{j-2} (q^2 - 1)) + j - 1, the threshold
/// controlling the spectral-gap vanishing argument.
pub fn p_value(j: usize, q: u32) -> BigRational {
    let j = j as i64;
    (qpow(q, 2 * j - 2) - rat(1)) / (qpow(q, j - 2) * (qpow(q, 2) - rat(1))) + rat(j - 1)
}

/// 1 - q^{3n-6}/d_n: the smallest non-zero normalized-Laplacian eigenvalue
/// for n >= 3.
pub fn lambda_min(n: usize, q: u32) -> Result<BigRational> {
    if n < 3 {
        return Err(Error::HalfRankTooSmall { n, min: 3 });
    }
    Ok(rat(1) - qpow(q, 3 * n as i64 - 6) / d_rat(n as i64, q))
}

/// Does the half-connectivity criterion hold? For n = 2n' + eps this is
/// P_{n'+eps}(q) > n, applicable only when n' + eps >= 3.
pub fn conn_half_n(n: usize, q: u32) -> bool {
    let half = n / 2;
    let eps = n % 2;
    let j = half + eps;
    if j < 3 {
        return false;
    }
    p_value(j, q) > rat(n as i64)
}

/// f_n + f_{n-2} > f_{n-1} + f_{n-3}: the chain-group inequality that
/// forces non-vanishing top-adjacent homology.
pub fn fvector_inequality_holds(n: usize, q: u32) -> Result<bool> {
    if n < 3 {
        return Err(Error::HalfRankTooSmall { n, min: 3 });
    }
    let f = |m: usize| frame_count(n, q, m).unwrap();
    Ok(f(n) + f(n - 2) > f(n - 1) + f(n - 3))
}

/// n > q^2 (q^2 + 1) + n(n-2) / (q^4 (q^4 + q^2 + 1)), the closed-form
/// bound equivalent to the chain-group inequality.
pub fn prop91_bound_holds(n: usize, q: u32) -> bool {
    let n_r = rat(n as i64);
    let q2 = qpow(q, 2);
    let q4 = qpow(q, 4);
    let rhs = &q2 * (&q2 + rat(1))
        + n_r.clone() * (n_r.clone() - rat(2)) / (&q4 * (&q4 + &q2 + rat(1)));
    n_r > rhs
}

/// Smallest n for which the closed-form bound holds, by direct scan.
pub fn prop91_threshold(q: u32) -> u64 {
    for n in 3..1_000_000usize {
        if prop91_bound_holds(n, q) {
            return n as u64;
        }
    }
    unreachable!("threshold scan exhausted");
}

/// All the spectral-gap predicates for one (n, q).
#[derive(Clone, Debug)]
pub struct GarlandReport {
    pub n: usize,
    pub q: u32,
    pub lambda_min: BigRational,
    /// P_j(q) for 3 <= j <= max(n, 4).
    pub p_values: BTreeMap<usize, BigRational>,
    /// Cohen-Macaulay over characteristic 0: n < q + 3.
    pub cm_char0: bool,
    /// (n-4)-connected over characteristic 0: n < q^2 + 4.
    pub conn_n_minus_4: bool,
    /// floor(n/2)-connected per the half-n threshold table.
    pub conn_half_n: bool,
    /// Chain-group inequality forcing nonzero H_{n-3}.
    pub prop91_nonvanishing: bool,
    /// Smallest n at which the closed-form bound holds for this q.
    pub prop91_threshold: u64,
}

pub fn garland_report(n: usize, q: u32) -> Result<GarlandReport> {
    if n < 3 {
        return Err(Error::HalfRankTooSmall { n, min: 3 });
    }
    let mut p_values = BTreeMap::new();
    for j in 3..=n.max(4) {
        p_values.insert(j, p_value(j, q));
    }
    Ok(GarlandReport {
        n,
        q,
        lambda_min: lambda_min(n, q)?,
        p_values,
        cm_char0: p_value(3, q) > rat(n as i64),
        // The stated clause n < q^2 + 4. One notch inside the raw
        // threshold: P_4(q) > n also holds at n = q^2 + 4 itself.
        conn_n_minus_4: n < (q as usize) * (q as usize) + 4,
        conn_half_n: conn_half_n(n, q),
        prop91_nonvanishing: fvector_inequality_holds(n, q)?,
        prop91_threshold: prop91_threshold(q),
    })
}

/// Eigenvalues as i64 for the annihilation certificate; errors out only
/// far beyond any graph this crate can hold in memory.
pub fn eigenvalues_i64(n: usize, q: u32) -> Result<Vec<i64>> {
    Ok(eigenvalues(n, q)?
        .iter()
        .map(|v| v.to_i64().expect("eigenvalue exceeds i64"))
        .collect())
}
