use super::datum::BellRogalskiDatum;
use crate::aut::Automorphism;
use crate::poly::Ideal;
use crate::{Check, Error, Field, Report, Result};

/// `B` written as a rank-1 algebra over the rank-`(n-1)` algebra `S` obtained
/// by dropping one axis.
pub struct Decomposition<F> {
    pub axis: usize,
    /// The datum of `S` (remaining axes in their original order).
    pub inner: BellRogalskiDatum<F>,
    /// `σ̂` restricted to `R`.
    pub outer_sigma: Automorphism<F>,
    /// `σ̂(t_i) = p_{i,axis} t_i` for the inner axes, in order.
    pub t_twist: Vec<F>,
    /// `Ĥ = H_axis S` and `Ĵ = J_axis S`, given by generators in `R`.
    pub outer_h: Ideal<F>,
    pub outer_j: Ideal<F>,
    /// Degreewise comparison of the recomposed components with `I^(α)`.
    pub window_check: Report,
}

impl<F: Field> BellRogalskiDatum<F> {
    /// Splits off `axis` and verifies, for every degree with entries in
    /// `[-2, 2]`, that the recomposed component `I_axis^(k) · I_S^(α')`
    /// equals `I^(α)`.
    pub fn iterate_decompose(&self, axis: usize) -> Result<Decomposition<F>> {
        let n = self.rank();
        if n < 2 {
            return Err(Error::Precondition("decomposition needs rank at least 2".into()));
        }
        if axis >= n {
            return Err(Error::Precondition(format!("axis {} out of range", axis + 1)));
        }
        let keep: Vec<usize> = (0..n).filter(|&i| i != axis).collect();
        let inner = BellRogalskiDatum::new(
            self.ring(),
            keep.iter().map(|&i| self.sigma(i).clone()).collect(),
            keep.iter().map(|&i| keep.iter().map(|&k| self.p()[i][k].clone()).collect()).collect(),
            keep.iter().map(|&i| self.h(i).clone()).collect(),
            keep.iter().map(|&i| self.j(i).clone()).collect(),
        )?;
        let t_twist = keep.iter().map(|&i| self.p()[i][axis].clone()).collect();

        let mut report = Report::new();
        let mut failures = Vec::new();
        let mut count = 0;
        for_each_in_box(n, 2, |alpha| {
            let inner_deg: Vec<i64> = keep.iter().map(|&i| alpha[i]).collect();
            let recomposed = self
                .axis_ideal(axis, alpha[axis])
                .product(&inner.canonical_ideal(&inner_deg))
                .expect("same ring");
            count += 1;
            if !recomposed.equals(&self.canonical_ideal(alpha)).unwrap_or(false) {
                failures.push(alpha.to_vec());
            }
        });
        if failures.is_empty() {
            report.push(Check::pass("recomposed components", format!("{count} degrees in [-2, 2]^{n} agree")));
        } else {
            report.push(Check::fail("recomposed components", format!("mismatch at degrees {failures:?}")));
        }
        Ok(Decomposition {
            axis,
            inner,
            outer_sigma: self.sigma(axis).clone(),
            t_twist,
            outer_h: self.h(axis).clone(),
            outer_j: self.j(axis).clone(),
            window_check: report,
        })
    }
}

/// Calls `f` on every `α ∈ [-r, r]^n` in lexicographic order.
pub fn for_each_in_box(n: usize, r: i64, mut f: impl FnMut(&[i64])) {
    let mut alpha = vec![-r; n];
    loop {
        f(&alpha);
        let mut k = n;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if alpha[k] < r {
                alpha[k] += 1;
                break;
            }
            alpha[k] = -r;
        }
    }
}
