//! Lorentz-orthogonality handling: exact zero tests for Λ-polynomials on
//! SO(2,1).
//!
//! A polynomial of degree ≤ d in the entries `Λ^μ_ν` vanishes on SO(2,1) iff
//! it vanishes at a set of integer points on which evaluation is injective
//! for the space of such functions (of dimension `Σ_{j≤d} (2j+1)²`).
//! Injectivity is certified once per degree by a rank computation mod a
//! prime, which bounds the rational rank from below.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::galg::{GMonomial, GroupElement, TensorElement};
use crate::param::ParamRational;
use crate::scalar::{KScalar, Rat};

pub type Mat3 = [[i64; 3]; 3];

const PRIME: u64 = (1 << 61) - 1;
const ENTRY_BOUND: i64 = 1 << 20;

/// Dimension of the space of degree-≤d polynomial functions on SO(2,1).
pub fn function_space_dim(d: usize) -> usize {
    (0..=d).map(|j| (2 * j + 1) * (2 * j + 1)).sum()
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut c = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

pub fn det(m: &Mat3) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `Λᵀ g Λ = g` and `det Λ = 1`.
pub fn is_so21(m: &Mat3) -> bool {
    let g = [1i64, -1, -1];
    for a in 0..3 {
        for b in 0..3 {
            let s: i64 = (0..3).map(|r| m[r][a] * g[r] * m[r][b]).sum();
            if s != if a == b { g[a] } else { 0 } {
                return false;
            }
        }
    }
    det(m) == 1
}

/// `Λ⁻¹ = g Λᵀ g`.
pub fn lorentz_inverse(m: &Mat3) -> Mat3 {
    let g = [1i64, -1, -1];
    std::array::from_fn(|i| std::array::from_fn(|j| g[i] * m[j][i] * g[j]))
}

/// Integer generators of a Zariski-dense subgroup of SO(2,1).
pub fn generators() -> Vec<Mat3> {
    let rot = [[1, 0, 0], [0, 0, -1], [0, 1, 0]];
    let rot_inv = [[1, 0, 0], [0, 0, 1], [0, -1, 0]];
    let boost = [[3, 2, 2], [2, 1, 2], [-2, -2, -1]];
    let boost_inv = lorentz_inverse(&boost);
    let flip_a = [[-1, 0, 0], [0, -1, 0], [0, 0, 1]];
    let flip_b = [[-1, 0, 0], [0, 1, 0], [0, 0, -1]];
    let flip_c = [[1, 0, 0], [0, -1, 0], [0, 0, -1]];
    vec![rot, rot_inv, boost, boost_inv, flip_a, flip_b, flip_c]
}

/// Certified evaluation points for one degree.
#[derive(Debug)]
pub struct PointSet {
    pub degree: usize,
    pub points: Vec<Mat3>,
}

fn modp(v: i64) -> u64 {
    v.rem_euclid(PRIME as i64) as u64
}

fn mulmod(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let lo = (x as u64) & PRIME;
    let hi = (x >> 61) as u64;
    let mut r = lo + hi;
    while r >= PRIME {
        r -= PRIME;
    }
    r
}

fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + PRIME - b
    }
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, PRIME - 2)
}

/// All exponent vectors in 9 variables of total degree ≤ d, graded.
pub fn lambda_monomials(d: usize) -> Vec<[u8; 9]> {
    let mut out = vec![[0u8; 9]];
    let mut layer = vec![[0u8; 9]];
    for _ in 0..d {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for m in &layer {
            let last = (0..9).rev().find(|&k| m[k] > 0).unwrap_or(0);
            for k in last..9 {
                let mut n = *m;
                n[k] += 1;
                if seen.insert(n) {
                    next.push(n);
                }
            }
        }
        out.extend(next.iter().copied());
        layer = next;
    }
    out
}

fn mono_mod(p: &Mat3, l: &[u8; 9]) -> u64 {
    let mut acc = 1u64;
    for k in 0..9 {
        if l[k] > 0 {
            acc = mulmod(acc, powmod(modp(p[k / 3][k % 3]), l[k] as u64));
        }
    }
    acc
}

/// Breadth-first enumeration of distinct group words with bounded entries.
fn enumerate_points(count: usize) -> Vec<Mat3> {
    let gens = generators();
    let id: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id);
    queue.push_back(id);
    while let Some(p) = queue.pop_front() {
        out.push(p);
        if out.len() >= count {
            break;
        }
        for g in &gens {
            let q = mat_mul(&p, g);
            if q.iter().flatten().all(|v| v.abs() <= ENTRY_BOUND) && seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    out
}

/// Selects `function_space_dim(d)` points with injective evaluation.
fn certify(d: usize) -> PointSet {
    let target = function_space_dim(d);
    let mut n = target + target / 4 + 8;
    loop {
        let pts = enumerate_points(n);
        if let Some(rows) = pivot_rows(&pts, d, target) {
            let mut rows = rows;
            rows.sort_unstable();
            let points = rows.into_iter().map(|r| pts[r]).collect();
            return PointSet { degree: d, points };
        }
        n *= 2;
    }
}

/// Column-incremental elimination mod p; returns `target` rows on which
/// the monomial columns reach full rank, if they do.
fn pivot_rows(pts: &[Mat3], d: usize, target: usize) -> Option<Vec<usize>> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for l in lambda_monomials(d) {
        let mut v: Vec<u64> = pts.iter().map(|p| mono_mod(p, &l)).collect();
        for (r, b) in &basis {
            let f = v[*r];
            if f != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = submod(*vi, mulmod(f, *bi));
                }
            }
        }
        if let Some(r) = v.iter().position(|&x| x != 0) {
            let inv = invmod(v[r]);
            for x in v.iter_mut() {
                *x = mulmod(*x, inv);
            }
            for (_, b) in basis.iter_mut() {
                let f = b[r];
                if f != 0 {
                    for (bi, vi) in b.iter_mut().zip(&v) {
                        *bi = submod(*bi, mulmod(f, *vi));
                    }
                }
            }
            basis.push((r, v));
            if basis.len() == target {
                return Some(basis.into_iter().map(|(r, _)| r).collect());
            }
        }
    }
    None
}

static POINTS: OnceLock<RwLock<HashMap<usize, Arc<PointSet>>>> = OnceLock::new();

/// Certified point set for degree `d`, computed once per process.
pub fn certified_points(d: usize) -> Arc<PointSet> {
    let cache = POINTS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&d) {
        return p.clone();
    }
    let ps = Arc::new(certify(d));
    cache.write().unwrap().entry(d).or_insert(ps).clone()
}

/// Exact value of a Λ-monomial at an integer point.
pub fn lambda_value(p: &Mat3, l: &[u8; 9]) -> BigInt {
    let mut acc = BigInt::from(1);
    for k in 0..9 {
        for _ in 0..l[k] {
            acc *= p[k / 3][k % 3];
        }
    }
    acc
}

fn l_degree(l: &[u8; 9]) -> usize {
    l.iter().map(|&a| a as usize).sum()
}

/// Λ-polynomial coefficient of every x-monomial, evaluated at a point.
fn eval_at(e: &GroupElement, p: &Mat3, cache: &mut HashMap<[u8; 9], BigInt>) -> HashMap<[u8; 3], KScalar> {
    let mut acc: HashMap<[u8; 3], KScalar> = HashMap::new();
    for (m, c) in e.terms() {
        let v = cache.entry(m.l).or_insert_with(|| lambda_value(p, &m.l));
        let t = c.scale_rat(&Rat::from_integer(v.clone()));
        let slot = acc.entry(m.x).or_insert_with(KScalar::zero);
        *slot += &t;
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

/// True iff `e` is zero modulo Lorentz orthogonality.
pub fn vanishes(e: &GroupElement) -> bool {
    if e.is_structurally_zero() {
        return true;
    }
    let d = e.terms().map(|(m, _)| l_degree(&m.l)).max().unwrap_or(0);
    let ps = certified_points(d);
    ps.points.iter().all(|p| {
        let mut cache = HashMap::new();
        eval_at(e, p, &mut cache).is_empty()
    })
}

/// Canonical image of an element: for each x-monomial, the values of its
/// Λ-coefficient at the certified points of degree `d`.
pub fn evaluation_image(e: &GroupElement, d: usize) -> Vec<([u8; 3], Vec<KScalar>)> {
    let ps = certified_points(d);
    let mut by_x: std::collections::BTreeMap<[u8; 3], Vec<KScalar>> = std::collections::BTreeMap::new();
    for (k, p) in ps.points.iter().enumerate() {
        let mut cache = HashMap::new();
        for (x, v) in eval_at(e, p, &mut cache) {
            by_x.entry(x).or_insert_with(|| vec![KScalar::zero(); ps.points.len()])[k] = v;
        }
    }
    by_x.into_iter().collect()
}

/// Leg-by-leg zero test for tensors: each leg's Λ-part is evaluated at the
/// certified points for that leg's degree.
pub fn tensor_vanishes(t: &TensorElement) -> bool {
    if t.is_empty() {
        return true;
    }
    let rank = t.rank();
    let rows: Vec<(Vec<GMonomial>, KScalar)> = t.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
    vanish_rec(rows, 0, rank)
}

fn vanish_rec(rows: Vec<(Vec<GMonomial>, KScalar)>, leg: usize, rank: usize) -> bool {
    if rows.is_empty() {
        return true;
    }
    if leg == rank {
        let mut acc: HashMap<Vec<[u8; 3]>, KScalar> = HashMap::new();
        for (k, c) in rows {
            let key: Vec<[u8; 3]> = k.iter().map(|m| m.x).collect();
            *acc.entry(key).or_insert_with(KScalar::zero) += &c;
        }
        return acc.values().all(|v| v.is_zero());
    }
    let d = rows.iter().map(|(k, _)| l_degree(&k[leg].l)).max().unwrap_or(0);
    if d == 0 {
        return vanish_rec(rows, leg + 1, rank);
    }
    let ps = certified_points(d);
    for p in &ps.points {
        let mut cache: HashMap<[u8; 9], BigInt> = HashMap::new();
        let mut acc: HashMap<Vec<GMonomial>, KScalar> = HashMap::new();
        for (k, c) in &rows {
            let v = cache.entry(k[leg].l).or_insert_with(|| lambda_value(p, &k[leg].l));
            let mut nk = k.clone();
            nk[leg] = k[leg].x_part();
            *acc.entry(nk).or_insert_with(KScalar::zero) += &c.scale_rat(&Rat::from_integer(v.clone()));
        }
        let next: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if !vanish_rec(next, leg + 1, rank) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// rational parametrization

fn c(n: i64) -> ParamRational {
    ParamRational::constant(KScalar::from_int(n))
}

fn mat_mul_param(a: &[[ParamRational; 3]; 3], b: &[[ParamRational; 3]; 3]) -> [[ParamRational; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = c(0);
            for k in 0..3 {
                acc = acc.add(&a[i][k].mul(&b[k][j]));
            }
            acc
        })
    })
}

/// `Λ(t1, t2, s) = R(s)·B1(t1)·B2(t2)`, with optional `diag(−1,−1,1)` twist
/// reaching the second connected component.
pub fn param_matrix(twisted: bool) -> [[ParamRational; 3]; 3] {
    let cos_sin = |v: usize| {
        let t = ParamRational::var(v);
        let t2 = t.mul(&t);
        let den = c(1).add(&t2);
        (c(1).sub(&t2).div(&den).unwrap(), c(2).mul(&t).div(&den).unwrap())
    };
    let ch_sh = |v: usize| {
        let t = ParamRational::var(v);
        let t2 = t.mul(&t);
        let den = c(1).sub(&t2);
        (c(1).add(&t2).div(&den).unwrap(), c(2).mul(&t).div(&den).unwrap())
    };
    let (co, si) = cos_sin(2);
    let rot = [[c(1), c(0), c(0)], [c(0), co.clone(), si.neg()], [c(0), si, co]];
    let (ch1, sh1) = ch_sh(0);
    let b1 = [[ch1.clone(), sh1.clone(), c(0)], [sh1, ch1, c(0)], [c(0), c(0), c(1)]];
    let (ch2, sh2) = ch_sh(1);
    let b2 = [[ch2.clone(), c(0), sh2.clone()], [c(0), c(1), c(0)], [sh2, c(0), ch2]];
    let mut m = mat_mul_param(&mat_mul_param(&rot, &b1), &b2);
    if twisted {
        for row in m.iter_mut().take(2) {
            for e in row.iter_mut() {
                *e = e.neg();
            }
        }
    }
    m
}

/// Zero test by symbolic substitution of the parametrization.
pub fn vanishes_param(e: &GroupElement) -> bool {
    [false, true].iter().all(|&tw| {
        let m = param_matrix(tw);
        let mut by_x: HashMap<[u8; 3], ParamRational> = HashMap::new();
        for (mono, coef) in e.terms() {
            let mut v = ParamRational::constant(coef.clone());
            for k in 0..9 {
                for _ in 0..mono.l[k] {
                    v = v.mul(&m[k / 3][k % 3]);
                }
            }
            let slot = by_x.entry(mono.x).or_insert_with(|| c(0));
            *slot = slot.add(&v);
        }
        by_x.values().all(|v| v.is_zero())
    })
}

/// `Λ^μ_ρ g^ρρ Λ^ν_ρ − g^μν` (rows), or the column version `Λ^ρ_μ g_ρρ Λ^ρ_ν − g_μν`
/// when `columns` is set. Both vanish on SO(2,1).
pub fn orthogonality_relation(mu: usize, nu: usize, columns: bool) -> GroupElement {
    let gmn = if mu == nu { crate::galg::metric(mu) } else { 0 };
    let mut e = GroupElement::scalar(KScalar::from_int(-gmn));
    for rho in 0..3 {
        let g = KScalar::from_int(crate::galg::metric(rho));
        let p = if columns {
            &GroupElement::l(rho, mu) * &GroupElement::l(rho, nu)
        } else {
            &GroupElement::l(mu, rho) * &GroupElement::l(nu, rho)
        };
        e = &e + &p.scale(&g);
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orth(mu: usize, nu: usize) -> GroupElement {
        orthogonality_relation(mu, nu, false)
    }

    #[test]
    fn generators_are_in_so21() {
        for g in generators() {
            assert!(is_so21(&g), "{:?}", g);
        }
    }

    #[test]
    fn dims() {
        assert_eq!((0..5).map(function_space_dim).collect::<Vec<_>>(), vec![1, 10, 35, 84, 165]);
    }

    #[test]
    fn certified_point_counts() {
        for d in 0..4 {
            let ps = certified_points(d);
            assert_eq!(ps.points.len(), function_space_dim(d));
            assert!(ps.points.iter().all(is_so21));
        }
    }

    #[test]
    fn orthogonality_relation_vanishes() {
        assert!(vanishes(&orth(0, 0)));
        assert!(vanishes(&orth(1, 2)));
        assert!(vanishes_param(&orth(0, 0)));
    }

    #[test]
    fn non_zero_examples() {
        assert!(!vanishes(&GroupElement::x(0)));
        let e = &GroupElement::l(0, 0) - &GroupElement::one();
        assert!(!vanishes(&e));
        assert!(!vanishes_param(&e));
    }

    #[test]
    fn determinant_relation_vanishes() {
        // cofactor identity Λ^0_0 = Λ^1_1 Λ^2_2 − Λ^1_2 Λ^2_1 on SO(2,1)
        let l = GroupElement::l;
        let e = &(&(&l(1, 1) * &l(2, 2)) - &(&l(1, 2) * &l(2, 1))) - &l(0, 0);
        assert!(vanishes(&e));
        assert!(vanishes_param(&e));
    }

    #[test]
    fn param_and_evaluation_agree() {
        let l = GroupElement::l;
        let samples = vec![
            &(&l(0, 1) * &orth(0, 2)) + &GroupElement::x(1).scale(&KScalar::from_int(0)),
            &(&l(0, 1) * &l(1, 0)) - &(&l(1, 0) * &l(0, 1)),
            &(&l(0, 1) * &l(0, 1)) - &(&l(1, 0) * &l(1, 0)),
            &(&l(0, 0) * &l(0, 0)) - &(&l(1, 0) * &l(1, 0)),
            &(&(&l(0, 0) * &l(0, 0)) - &(&l(1, 0) * &l(1, 0))) - &(&l(2, 0) * &l(2, 0)),
        ];
        for s in samples {
            assert_eq!(vanishes(&s), vanishes_param(&s), "{}", s);
        }
    }

    #[test]
    fn tensor_zero_test() {
        let t = TensorElement::product_of(&[orth(0, 1), GroupElement::x(0)]);
        assert!(tensor_vanishes(&t));
        let u = TensorElement::product_of(&[GroupElement::l(0, 1), GroupElement::x(0)]);
        assert!(!tensor_vanishes(&u));
    }
}
