//! The bicovariant calculus: 1-forms with left coefficients, the exterior
//! derivative, commutation rules, the right coaction, right-invariant forms,
//! the braiding σ, the second exterior power and the star structure.
//!
//! Everything is expressed through two families of functionals on the group
//! algebra obtained from the quotient map: `χ_i(b) = c_i(b)` and
//! `f_ik(b) = c_k(a_i b)`, so that
//!
//! `da = Σ (χ_i ∗ a) ω_i`, `ω_i b = Σ (f_ik ∗ b) ω_k`.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::cocycle::QuotientMap;
use crate::error::{Error, Result};
use crate::galg::{metric, GMonomial, GroupElement, TensorElement};
use crate::hopftools::ad;
use crate::ideal::{basis_element, QLabel, NLABELS};
use crate::linalg::Combiner;
use crate::scalar::{GaussianRational, KScalar, Ring};

pub const N: usize = NLABELS;

/// Number of basis elements of the second exterior power.
pub const NPAIRS: usize = N * (N - 1) / 2;

/// Index of `(a, b)`, `a < b`, in the fixed order of basis 2-forms.
pub fn pair_index(a: usize, b: usize) -> usize {
    assert!(a < b && b < N);
    (0..a).map(|r| N - 1 - r).sum::<usize>() + (b - a - 1)
}

pub fn pair_from_index(p: usize) -> (usize, usize) {
    let mut p = p;
    for a in 0..N {
        let row = N - 1 - a;
        if p < row {
            return (a, a + 1 + p);
        }
        p -= row;
    }
    panic!("pair index out of range")
}

fn coeff_string(c: &GroupElement) -> String {
    let s = c.to_string();
    if c.len() > 1 || s.starts_with('-') && c.len() == 1 && s[1..].contains(['+', ' ']) {
        format!("({})", s)
    } else {
        s
    }
}

fn fmt_sum(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = (String, GroupElement)>) -> fmt::Result {
    let mut first = true;
    for (name, c) in items {
        if c.is_structurally_zero() {
            continue;
        }
        let body = if c == GroupElement::one() { name } else { format!("{}*{}", coeff_string(&c), name) };
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "{}", body)?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// A 1-form `Σ a_i ω_i` with left coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Form1 {
    pub coeffs: Vec<GroupElement>,
}

impl Form1 {
    pub fn zero() -> Self {
        Form1 { coeffs: vec![GroupElement::zero(); N] }
    }

    pub fn basis(i: usize) -> Self {
        let mut f = Self::zero();
        f.coeffs[i] = GroupElement::one();
        f
    }

    pub fn label(l: QLabel) -> Self {
        Self::basis(l.index())
    }

    /// `Σ c_i ω_i` with scalar coefficients.
    pub fn constant(c: &[KScalar]) -> Self {
        Form1 { coeffs: c.iter().map(|x| GroupElement::scalar(x.clone())).collect() }
    }

    pub fn coeff(&self, l: QLabel) -> &GroupElement {
        &self.coeffs[l.index()]
    }

    pub fn add(&self, o: &Form1) -> Self {
        Form1 { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Form1) -> Self {
        Form1 { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &KScalar) -> Self {
        Form1 { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    /// `a · f`.
    pub fn left_mul(&self, a: &GroupElement) -> Self {
        Form1 { coeffs: self.coeffs.iter().map(|c| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn equals(&self, o: &Form1) -> bool {
        self.sub(o).is_zero()
    }

    /// True iff all coefficients are scalars.
    pub fn is_left_invariant(&self) -> bool {
        self.coeffs.iter().all(|c| c.terms().all(|(m, _)| m.is_one()))
    }
}

impl fmt::Display for Form1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, QLabel::ALL.iter().zip(&self.coeffs).map(|(l, c)| (l.name(), c.clone())))
    }
}

/// An element `Σ a_ij ω_i ⊗ ω_j` of `Γ ⊗ Γ` with left coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Form11 {
    pub coeffs: Vec<GroupElement>,
}

impl Form11 {
    pub fn zero() -> Self {
        Form11 { coeffs: vec![GroupElement::zero(); N * N] }
    }

    pub fn basis(i: usize, j: usize) -> Self {
        let mut t = Self::zero();
        t.coeffs[N * i + j] = GroupElement::one();
        t
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupElement {
        &self.coeffs[N * i + j]
    }

    pub fn add(&self, o: &Form11) -> Self {
        Form11 { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Form11) -> Self {
        Form11 { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &KScalar) -> Self {
        Form11 { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn equals(&self, o: &Form11) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Display for Form11 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(
            f,
            (0..N * N).map(|p| {
                let (i, j) = (p / N, p % N);
                (format!("{}⊗{}", QLabel::ALL[i].name(), QLabel::ALL[j].name()), self.coeffs[p].clone())
            }),
        )
    }
}

/// A 2-form on the basis `ω_a ∧ ω_b`, `a < b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form2 {
    pub coeffs: Vec<GroupElement>,
}

impl Form2 {
    pub fn zero() -> Self {
        Form2 { coeffs: vec![GroupElement::zero(); NPAIRS] }
    }

    pub fn get(&self, a: usize, b: usize) -> &GroupElement {
        &self.coeffs[pair_index(a, b)]
    }

    pub fn add(&self, o: &Form2) -> Self {
        Form2 { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Form2) -> Self {
        Form2 { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &KScalar) -> Self {
        Form2 { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn left_mul(&self, a: &GroupElement) -> Self {
        Form2 { coeffs: self.coeffs.iter().map(|c| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn equals(&self, o: &Form2) -> bool {
        self.sub(o).is_zero()
    }
}

impl fmt::Display for Form2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(
            f,
            (0..NPAIRS).map(|p| {
                let (a, b) = pair_from_index(p);
                (format!("{}^{}", QLabel::ALL[a].name(), QLabel::ALL[b].name()), self.coeffs[p].clone())
            }),
        )
    }
}

/// Scalar linear map on `V ⊗ V`, `V` the span of the left-invariant forms;
/// `m[N*i+j][N*k+l]` is the coefficient of `ω_k ⊗ ω_l` in the image of
/// `ω_i ⊗ ω_j`.
pub type PairMatrix = Vec<Vec<KScalar>>;

/// Precomputed structure of the calculus.
pub struct Calculus {
    q: &'static QuotientMap,
    /// Right coaction matrix: `_ΓΔ(ω_c) = Σ_d ω_d ⊗ M[d][c]`.
    coaction: Vec<Vec<GroupElement>>,
    eta: OnceLock<Vec<Form1>>,
    sigma: OnceLock<PairMatrix>,
    wedge: OnceLock<Vec<Vec<KScalar>>>,
    d_omega: OnceLock<Vec<Form2>>,
    star_basis: OnceLock<Vec<Form1>>,
}

fn pair_weight(i: usize, j: usize) -> i32 {
    QLabel::ALL[i].weight() + QLabel::ALL[j].weight()
}

impl Calculus {
    pub fn global() -> &'static Calculus {
        static C: OnceLock<Calculus> = OnceLock::new();
        C.get_or_init(Calculus::new)
    }

    fn new() -> Self {
        let q = QuotientMap::global();
        let cols: Vec<Vec<GroupElement>> = (0..N)
            .into_par_iter()
            .map(|c| {
                let t = ad(&basis_element(QLabel::ALL[c], q.variant()));
                let mut col = vec![GroupElement::zero(); N];
                for (legs, v) in t.terms() {
                    let first = q.coords(&GroupElement::mono(legs[0]));
                    for (d, x) in first.0.iter().enumerate() {
                        if !x.is_zero() {
                            col[d].add_term(legs[1], &(v * x));
                        }
                    }
                }
                col
            })
            .collect();
        let coaction = (0..N).map(|d| (0..N).map(|c| cols[c][d].clone()).collect()).collect();
        Calculus {
            q,
            coaction,
            eta: OnceLock::new(),
            sigma: OnceLock::new(),
            wedge: OnceLock::new(),
            d_omega: OnceLock::new(),
            star_basis: OnceLock::new(),
        }
    }

    pub fn quotient_map(&self) -> &'static QuotientMap {
        self.q
    }

    // -- 1-forms -----------------------------------------------------------

    /// `ω(b) = π r⁻¹(I ⊗ b) = Σ c_i(b) ω_i`.
    pub fn omega_of(&self, b: &GroupElement) -> Form1 {
        Form1::constant(&self.q.coords(b).0)
    }

    /// `ω^μ_ν = ω(Λ^μ_ν)` for any index pair.
    pub fn omega_mixed(&self, mu: usize, nu: usize) -> Form1 {
        self.omega_of(&GroupElement::l(mu, nu))
    }

    /// `ω^{μν} = ω^μ_ρ g^{ρν}`.
    pub fn omega_upper(&self, mu: usize, nu: usize) -> Form1 {
        self.omega_mixed(mu, nu).scale(&KScalar::from_int(metric(nu)))
    }

    /// `da = Σ (χ_i ∗ a) ω_i`.
    pub fn d(&self, a: &GroupElement) -> Form1 {
        let mut out = Form1::zero();
        for (legs, c) in a.coproduct().terms() {
            let coords = self.q.coords(&GroupElement::mono(legs[1]));
            for (k, x) in coords.0.iter().enumerate() {
                if !x.is_zero() {
                    out.coeffs[k].add_term(legs[0], &(c * x));
                }
            }
        }
        out
    }

    /// `ω_i · b`.
    pub fn rmul_basis(&self, i: usize, b: &GroupElement) -> Form1 {
        let mut out = Form1::zero();
        for (legs, c) in b.coproduct().terms() {
            let f = self.q.matrix(&GroupElement::mono(legs[1]));
            for (k, x) in f[i].iter().enumerate() {
                if !x.is_zero() {
                    out.coeffs[k].add_term(legs[0], &(c * x));
                }
            }
        }
        out
    }

    /// `f · b`.
    pub fn rmul(&self, f: &Form1, b: &GroupElement) -> Form1 {
        let mut out = Form1::zero();
        for (i, c) in f.coeffs.iter().enumerate() {
            if c.is_structurally_zero() {
                continue;
            }
            out = out.add(&self.rmul_basis(i, b).left_mul(c));
        }
        out
    }

    /// `[g, ω_i] = g ω_i − ω_i g`.
    pub fn commutator(&self, g: &GroupElement, i: usize) -> Form1 {
        Form1::basis(i).left_mul(g).sub(&self.rmul_basis(i, g))
    }

    // -- right coaction ------------------------------------------------------

    pub fn coaction_matrix(&self) -> &Vec<Vec<GroupElement>> {
        &self.coaction
    }

    /// `_ΓΔ(f)` as one rank-2 tensor per basis label:
    /// `_ΓΔ(f) = Σ_d (left leg) ω_d ⊗ (right leg)`.
    pub fn right_coaction(&self, f: &Form1) -> Vec<TensorElement> {
        let mut out = vec![TensorElement::zero(2); N];
        for (c, p) in f.coeffs.iter().enumerate() {
            if p.is_structurally_zero() {
                continue;
            }
            let dp = p.coproduct();
            for (d, slot) in out.iter_mut().enumerate() {
                let m = &self.coaction[d][c];
                if m.is_structurally_zero() {
                    continue;
                }
                let t = dp.mul(&TensorElement::product_of(&[GroupElement::one(), m.clone()]));
                *slot = slot.add(&t);
            }
        }
        out
    }

    /// True iff `_ΓΔ(f) = f ⊗ 1`.
    pub fn is_right_invariant(&self, f: &Form1) -> bool {
        let co = self.right_coaction(f);
        co.iter().zip(&f.coeffs).all(|(t, c)| t.sub(&TensorElement::product_of(&[c.clone(), GroupElement::one()])).is_zero())
    }

    /// Right-invariant forms `η_a = Σ_b ω_b S(M_ba)`.
    pub fn eta(&self) -> &Vec<Form1> {
        self.eta.get_or_init(|| {
            (0..N)
                .into_par_iter()
                .map(|a| {
                    let mut out = Form1::zero();
                    for b in 0..N {
                        let m = &self.coaction[b][a];
                        if !m.is_structurally_zero() {
                            out = out.add(&self.rmul_basis(b, &m.antipode()));
                        }
                    }
                    out
                })
                .collect()
        })
    }

    // -- Γ ⊗ Γ -----------------------------------------------------------

    /// `f ⊗ g` with all coefficients moved to the left.
    pub fn tensor(&self, f: &Form1, g: &Form1) -> Form11 {
        let mut out = Form11::zero();
        for (k, p) in f.coeffs.iter().enumerate() {
            if p.is_structurally_zero() {
                continue;
            }
            for (l, q) in g.coeffs.iter().enumerate() {
                if q.is_structurally_zero() {
                    continue;
                }
                let moved = self.rmul_basis(k, q);
                for (n, c) in moved.coeffs.iter().enumerate() {
                    if !c.is_structurally_zero() {
                        let v = p * c;
                        out.coeffs[N * n + l] = &out.coeffs[N * n + l] + &v;
                    }
                }
            }
        }
        out
    }

    /// `σ(ω_i ⊗ ω_j) = Σ f_il(M_kj) ω_k ⊗ ω_l`.
    pub fn sigma_matrix(&self) -> &PairMatrix {
        self.sigma.get_or_init(|| {
            let fs: Vec<Vec<Vec<Vec<KScalar>>>> = (0..N)
                .into_par_iter()
                .map(|k| (0..N).map(|j| self.q.matrix(&self.coaction[k][j])).collect())
                .collect();
            let mut m = vec![vec![KScalar::zero(); N * N]; N * N];
            for i in 0..N {
                for j in 0..N {
                    for k in 0..N {
                        for l in 0..N {
                            m[N * i + j][N * k + l] = fs[k][j][i][l].clone();
                        }
                    }
                }
            }
            m
        })
    }

    /// σ extended left-linearly to `Γ ⊗ Γ`.
    pub fn sigma(&self, t: &Form11) -> Form11 {
        let s = self.sigma_matrix();
        let mut out = Form11::zero();
        for (p, c) in t.coeffs.iter().enumerate() {
            if c.is_structurally_zero() {
                continue;
            }
            for (r, x) in s[p].iter().enumerate() {
                if !x.is_zero() {
                    out.coeffs[r] = &out.coeffs[r] + &c.scale(x);
                }
            }
        }
        out
    }

    /// Scalar vector `(I − σ)(e_i ⊗ e_j)`.
    fn antisym_vector(&self, i: usize, j: usize) -> Vec<KScalar> {
        let s = self.sigma_matrix();
        let p = N * i + j;
        (0..N * N)
            .map(|r| {
                let id = if r == p { KScalar::one() } else { KScalar::zero() };
                &id - &s[p][r]
            })
            .collect()
    }

    /// Rank of `I − σ` on `V ⊗ V`.
    pub fn antisymmetrizer_rank(&self) -> usize {
        let rows: Vec<Vec<GaussianRational>> = (0..N * N)
            .map(|p| self.antisym_vector(p / N, p % N).iter().map(|x| x.at_kappa_i()).collect())
            .collect();
        crate::linalg::rank(&rows)
    }

    /// `ω_i ∧ ω_j = Σ_{a<b} λ_{ij,ab} ω_a ∧ ω_b`, row `N*i+j`.
    pub fn wedge_table(&self) -> &Vec<Vec<KScalar>> {
        self.wedge.get_or_init(|| self.build_wedge_table().expect("ω_a ∧ ω_b (a < b) span Γ^∧2"))
    }

    fn build_wedge_table(&self) -> Result<Vec<Vec<KScalar>>> {
        let exact: Vec<Vec<KScalar>> = (0..N * N).map(|p| self.antisym_vector(p / N, p % N)).collect();
        let at_i = |v: &Vec<KScalar>| v.iter().map(|x| x.at_kappa_i()).collect::<Vec<GaussianRational>>();
        let family: Vec<Vec<GaussianRational>> = (0..NPAIRS)
            .map(|p| {
                let (a, b) = pair_from_index(p);
                at_i(&exact[N * a + b])
            })
            .collect();
        let comb = Combiner::new(&family).ok_or_else(|| Error::Invalid("ordered wedge basis is dependent".into()))?;
        let mut table = Vec::with_capacity(N * N);
        for i in 0..N {
            for j in 0..N {
                let lam = comb
                    .express(&at_i(&exact[N * i + j]))
                    .ok_or_else(|| Error::Invalid(format!("ω_{}∧ω_{} outside the ordered span", i, j)))?;
                let row: Vec<KScalar> = (0..NPAIRS)
                    .map(|p| {
                        let (a, b) = pair_from_index(p);
                        if lam[p].is_zero() {
                            KScalar::zero()
                        } else {
                            KScalar::from_h_power(&lam[p], pair_weight(i, j) - pair_weight(a, b))
                        }
                    })
                    .collect();
                // exact confirmation of the weight-restored solution
                let mut check = exact[N * i + j].clone();
                for (p, l) in row.iter().enumerate() {
                    if l.is_zero() {
                        continue;
                    }
                    let (a, b) = pair_from_index(p);
                    for (r, x) in exact[N * a + b].iter().enumerate() {
                        check[r] = &check[r] - &(l * x);
                    }
                }
                if check.iter().any(|x| !x.is_zero()) {
                    return Err(Error::Invalid(format!("wedge table row ({}, {}) is not weight-homogeneous", i, j)));
                }
                table.push(row);
            }
        }
        Ok(table)
    }

    /// Projection `Γ ⊗ Γ → Γ^∧2`.
    pub fn project(&self, t: &Form11) -> Form2 {
        let table = self.wedge_table();
        let mut out = Form2::zero();
        for (p, c) in t.coeffs.iter().enumerate() {
            if c.is_structurally_zero() {
                continue;
            }
            for (r, x) in table[p].iter().enumerate() {
                if !x.is_zero() {
                    out.coeffs[r] = &out.coeffs[r] + &c.scale(x);
                }
            }
        }
        out
    }

    pub fn wedge(&self, f: &Form1, g: &Form1) -> Form2 {
        self.project(&self.tensor(f, g))
    }

    /// `ω_i ∧ ω_j` on the ordered basis.
    pub fn wedge_basis(&self, i: usize, j: usize) -> Form2 {
        self.wedge(&Form1::basis(i), &Form1::basis(j))
    }

    /// True iff a scalar element of `V ⊗ V` lies in `ker(I − σ)`.
    pub fn in_wedge_kernel(&self, v: &[KScalar]) -> bool {
        let s = self.sigma_matrix();
        let mut out: Vec<KScalar> = v.to_vec();
        for (p, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, x) in s[p].iter().enumerate() {
                if !x.is_zero() {
                    out[r] = &out[r] - &(c * x);
                }
            }
        }
        out.iter().all(|x| x.is_zero())
    }

    // -- exterior derivative on forms -------------------------------------

    /// `dω_i = Σ dS(a_i(1)) ∧ d a_i(2)`.
    pub fn d_omega(&self) -> &Vec<Form2> {
        self.d_omega.get_or_init(|| {
            (0..N)
                .into_par_iter()
                .map(|i| {
                    let a = basis_element(QLabel::ALL[i], self.q.variant());
                    let mut out = Form2::zero();
                    for (legs, c) in a.coproduct().terms() {
                        let s = GroupElement::mono(legs[0]).antipode();
                        let w = self.wedge(&self.d(&s), &self.d(&GroupElement::mono(legs[1])));
                        out = out.add(&w.scale(c));
                    }
                    out
                })
                .collect()
        })
    }

    /// `d(Σ a_i ω_i) = Σ da_i ∧ ω_i + a_i dω_i`.
    pub fn d_form(&self, f: &Form1) -> Form2 {
        let dw = self.d_omega();
        let mut out = Form2::zero();
        for (i, a) in f.coeffs.iter().enumerate() {
            if a.is_structurally_zero() {
                continue;
            }
            out = out.add(&self.wedge(&self.d(a), &Form1::basis(i)));
            out = out.add(&dw[i].left_mul(a));
        }
        out
    }

    // -- star ----------------------------------------------------------------

    /// `ω_i* = Σ d(a_i(2)*) S(a_i(1))*`, derived from `(da)* = d(a*)`.
    pub fn star_basis(&self) -> &Vec<Form1> {
        self.star_basis.get_or_init(|| {
            (0..N)
                .into_par_iter()
                .map(|i| {
                    let a = basis_element(QLabel::ALL[i], self.q.variant());
                    let mut out = Form1::zero();
                    for (legs, c) in a.coproduct().terms() {
                        let left = self.d(&GroupElement::mono(legs[1]).star());
                        let right = GroupElement::mono(legs[0]).antipode().star();
                        out = out.add(&self.rmul(&left, &right).scale(&c.star()));
                    }
                    out
                })
                .collect()
        })
    }

    /// `(Σ a_i ω_i)* = Σ ω_i* a_i*`.
    pub fn star_form(&self, f: &Form1) -> Form1 {
        let sb = self.star_basis();
        let mut out = Form1::zero();
        for (i, a) in f.coeffs.iter().enumerate() {
            if a.is_structurally_zero() {
                continue;
            }
            out = out.add(&self.rmul(&sb[i], &a.star()));
        }
        out
    }
}

/// Normal-ordered monomials of degree exactly `d`.
pub fn monomials_of_degree(d: usize) -> Vec<GMonomial> {
    crate::ideal::monomials_upto(d).into_iter().filter(|m| m.degree() == d).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::phi;

    fn c() -> &'static Calculus {
        Calculus::global()
    }

    fn wx(a: usize) -> usize {
        QLabel::WX(a as u8).index()
    }

    #[test]
    fn pair_indexing_roundtrip() {
        for p in 0..NPAIRS {
            let (a, b) = pair_from_index(p);
            assert_eq!(pair_index(a, b), p);
        }
        assert_eq!(NPAIRS, 28);
    }

    #[test]
    fn d_of_x0() {
        let d = c().d(&GroupElement::x(0));
        for a in 0..3 {
            assert!(d.coeffs[wx(a)].equals(&GroupElement::l(0, a)));
        }
        for l in [QLabel::W(0, 1), QLabel::W(0, 2), QLabel::W(1, 2), QLabel::WPhi, QLabel::WOm] {
            assert!(d.coeff(l).is_zero());
        }
        assert!(c().d(&GroupElement::one()).is_zero());
    }

    #[test]
    fn d_of_phi() {
        let mut expect = Form1::label(QLabel::WPhi);
        for mu in 0..3 {
            let x_low = GroupElement::x(mu).scale(&KScalar::from_int(2 * metric(mu)));
            for al in 0..3 {
                let mut f = Form1::zero();
                f.coeffs[wx(al)] = &x_low * &GroupElement::l(mu, al);
                expect = expect.add(&f);
            }
        }
        assert!(c().d(&phi()).equals(&expect));
    }

    #[test]
    fn leibniz_rule() {
        let (a, b) = (GroupElement::x(1), GroupElement::l(0, 2));
        let lhs = c().d(&(&a * &b));
        let rhs = c().rmul(&c().d(&a), &b).add(&c().d(&b).left_mul(&a));
        assert!(lhs.equals(&rhs));
    }

    #[test]
    fn lorentz_commutes_with_lorentz_forms() {
        for i in 0..3 {
            assert!(c().commutator(&GroupElement::l(1, 2), i).is_zero());
        }
        assert!(c().commutator(&GroupElement::l(0, 1), QLabel::WOm.index()).is_zero());
    }

    #[test]
    fn omega_phi_is_coaction_invariant() {
        let co = c().right_coaction(&Form1::label(QLabel::WPhi));
        for (d, t) in co.iter().enumerate() {
            let expect = if d == QLabel::WPhi.index() { TensorElement::one(2) } else { TensorElement::zero(2) };
            assert!(t.sub(&expect).is_zero());
        }
    }

    #[test]
    fn wedge_of_omega_with_itself_vanishes() {
        let w = QLabel::WPhi.index();
        assert!(c().wedge_basis(w, w).is_zero());
        let a = QLabel::W(0, 1).index();
        assert!(c().wedge_basis(a, 3).equals(&{
            let mut f = Form2::zero();
            f.coeffs[pair_index(a, 3)] = GroupElement::one();
            f
        }));
    }

    #[test]
    fn d_squared_on_x() {
        assert!(c().d_form(&c().d(&GroupElement::x(0))).is_zero());
    }
}
