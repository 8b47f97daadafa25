//! Exact dense linear algebra over Q and Q(i).

use crate::scalar::{GaussianRational, Rat, Ring};

pub trait Field: Ring {
    fn inv(&self) -> Self;
}

impl Field for Rat {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for GaussianRational {
    fn inv(&self) -> Self {
        GaussianRational::inv(self).expect("inverse of zero")
    }
}

/// Row space kept in reduced echelon form; rows are inserted one at a time.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    width: usize,
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Residual of `v` modulo the row space.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    v[j] = v[j].sub(&f.mul(r));
                }
            }
        }
        v
    }

    /// Inserts `v`; returns false if it was already in the row space.
    pub fn insert(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    row[j] = row[j].sub(&f.mul(x));
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Expresses vectors as combinations of a fixed independent family.
#[derive(Clone, Debug)]
pub struct Combiner<F: Field> {
    n: usize,
    ech: Echelon<F>,
}

impl<F: Field> Combiner<F> {
    /// Returns `None` if the family is linearly dependent.
    pub fn new(family: &[Vec<F>]) -> Option<Self> {
        let n = family.len();
        let width = family.first().map(|v| v.len()).unwrap_or(0);
        let mut ech = Echelon::new(width + n);
        for (i, v) in family.iter().enumerate() {
            let mut row = v.clone();
            row.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            ech.insert(&row);
        }
        let ok = ech.rows.iter().all(|(p, _)| *p < width);
        if ok && ech.rank() == n {
            Some(Combiner { n, ech })
        } else {
            None
        }
    }

    /// Coefficients `c` with `v = Σ c_i family_i`, if `v` is in the span.
    pub fn express(&self, v: &[F]) -> Option<Vec<F>> {
        let mut row = v.to_vec();
        row.extend((0..self.n).map(|_| F::zero()));
        let r = self.ech.reduce(&row);
        let width = r.len() - self.n;
        if r[..width].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(r[width..].iter().map(|x| x.neg()).collect())
    }
}

/// Rank of a list of rows.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let width = rows.first().map(|v| v.len()).unwrap_or(0);
    let mut e = Echelon::new(width);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])]), 2);
    }

    #[test]
    fn combiner_recovers_coefficients() {
        let fam = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let c = Combiner::new(&fam).unwrap();
        let got = c.express(&v(&[3, -2, 1])).unwrap();
        assert_eq!(got, v(&[3, -2]));
        assert!(c.express(&v(&[0, 0, 1])).is_none());
        assert!(Combiner::new(&[v(&[1, 1]), v(&[2, 2])]).is_none());
    }

    #[test]
    fn gaussian_elimination() {
        let i = GaussianRational::i();
        let one = GaussianRational::from_int(1);
        let fam = vec![vec![one.clone(), i.clone()]];
        let c = Combiner::new(&fam).unwrap();
        let half = GaussianRational::real(rat(1, 2));
        let got = c.express(&[half.clone(), half.mul(&i)]).unwrap();
        assert_eq!(got, vec![half]);
    }
}
