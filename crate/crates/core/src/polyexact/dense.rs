//! Dense homogeneous polynomials with integer coefficients.
//!
//! Determinants of matrices of linear forms and linear substitutions into
//! homogeneous polynomials both reduce to repeatedly multiplying a
//! homogeneous polynomial by a linear form. With every monomial of a fixed
//! degree assigned a slot, that product is a table lookup per variable, and
//! integer coefficients avoid the gcd work of rational arithmetic.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Monomial, MultiPoly, Rational};

/// All monomials of one total degree in `arity` variables, with a slot index
/// for each and a table for multiplication by a single variable.
struct DegreeBasis {
    monos: Vec<Monomial>,
    /// `times_var[slot * arity + i]` is the slot of `mono · v_i` one degree up.
    times_var: Vec<usize>,
}

/// Slot tables for degrees `0..=max_degree + 1`; multiplication tables
/// exist up to `max_degree`.
pub(crate) struct Layout {
    arity: usize,
    bases: Vec<DegreeBasis>,
}

fn monomials_of_degree(arity: usize, degree: usize) -> Vec<Monomial> {
    fn rec(arity: usize, pos: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if pos == arity - 1 {
            cur[pos] = left as u8;
            out.push(Monomial::from_exps(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u8;
            rec(arity, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if arity == 0 {
        if degree == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(arity, 0, degree, &mut vec![0u8; arity], &mut out);
    out
}

impl Layout {
    pub(crate) fn new(arity: usize, max_degree: usize) -> Self {
        let levels: Vec<Vec<Monomial>> = (0..=max_degree + 1)
            .map(|d| monomials_of_degree(arity, d))
            .collect();
        let mut bases = Vec::with_capacity(max_degree + 2);
        for d in 0..=max_degree + 1 {
            let mut times_var = Vec::new();
            if d <= max_degree {
                let up: HashMap<Monomial, usize> = levels[d + 1]
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (*m, i))
                    .collect();
                times_var.reserve(levels[d].len() * arity);
                for m in &levels[d] {
                    for i in 0..arity {
                        times_var.push(up[&m.mul(&Monomial::var(i))]);
                    }
                }
            }
            bases.push(DegreeBasis {
                monos: levels[d].clone(),
                times_var,
            });
        }
        Layout { arity, bases }
    }

    fn len(&self, degree: usize) -> usize {
        self.bases[degree].monos.len()
    }

    /// `acc += sign · p · ℓ` where `p` has the given degree and `ℓ` is linear.
    fn mul_linear_into(
        &self,
        degree: usize,
        p: &[BigInt],
        linear: &[BigInt],
        negate: bool,
        acc: &mut [BigInt],
    ) {
        let table = &self.bases[degree].times_var;
        for (slot, c) in p.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, a) in linear.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let prod = c * a;
                let target = &mut acc[table[slot * self.arity + i]];
                if negate {
                    *target -= prod;
                } else {
                    *target += prod;
                }
            }
        }
    }

    fn to_poly(&self, degree: usize, coeffs: &[BigInt], denom: &BigInt) -> MultiPoly<Rational> {
        MultiPoly::from_terms(
            self.arity,
            self.bases[degree]
                .monos
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (*m, Rational::new(c.clone(), denom.clone()))),
        )
    }
}

/// Integer numerators of `values` over their least common denominator.
pub(crate) fn clear_denominators(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let mut l = BigInt::from(1);
    for v in values {
        l = num_integer::Integer::lcm(&l, v.denom());
    }
    let nums = values
        .iter()
        .map(|v| v.numer() * (&l / v.denom()))
        .collect();
    (nums, l)
}

/// Determinant of an `n × n` matrix whose entries are linear forms in
/// `arity` variables, given as coefficient rows `forms[i][j][k]`.
pub(crate) fn det_linear_forms(forms: &[Vec<Vec<Rational>>], arity: usize) -> MultiPoly<Rational> {
    let n = forms.len();
    if n == 0 {
        return MultiPoly::one(arity);
    }
    let mut denom = BigInt::from(1);
    let int_rows: Vec<Vec<Vec<BigInt>>> = forms
        .iter()
        .map(|row| {
            let flat: Vec<Rational> = row.iter().flatten().cloned().collect();
            let (nums, l) = clear_denominators(&flat);
            denom *= l;
            nums.chunks(arity).map(<[BigInt]>::to_vec).collect()
        })
        .collect();
    let layout = Layout::new(arity, n - 1);
    let mut minors: Vec<Option<Vec<BigInt>>> = vec![None; 1 << n];
    minors[0] = Some(vec![BigInt::from(1)]);
    for (row, entries) in int_rows.iter().enumerate() {
        let mut next: Vec<Option<Vec<BigInt>>> = vec![None; 1 << n];
        let out_len = layout.len(row + 1);
        for (set, m) in minors.iter().enumerate() {
            let Some(m) = m else { continue };
            if m.iter().all(Zero::is_zero) {
                continue;
            }
            for (col, form) in entries.iter().enumerate() {
                if set & (1 << col) != 0 || form.iter().all(Zero::is_zero) {
                    continue;
                }
                let negate = (set >> (col + 1)).count_ones() % 2 == 1;
                let slot =
                    next[set | (1 << col)].get_or_insert_with(|| vec![BigInt::zero(); out_len]);
                layout.mul_linear_into(row, m, form, negate, slot);
            }
        }
        minors = next;
    }
    match &minors[(1 << n) - 1] {
        Some(top) => layout.to_poly(n, top, &denom),
        None => MultiPoly::zero(arity),
    }
}

#[cfg(test)]
fn monomials_count(arity: usize, degree: usize) -> usize {
    // C(degree + arity - 1, arity - 1)
    if arity == 0 {
        return usize::from(degree == 0);
    }
    let mut c: usize = 1;
    for i in 0..arity - 1 {
        c = c * (degree + arity - 1 - i) / (i + 1);
    }
    c
}

/// `p(A·v)` for polynomials with rational coefficients, computed one
/// homogeneous component at a time over the integers.
pub(crate) fn substitute(p: &MultiPoly<Rational>, a: &[Vec<Rational>]) -> MultiPoly<Rational> {
    let arity = p.arity();
    let Some(max_deg) = p.total_degree() else {
        return MultiPoly::zero(arity);
    };
    let flat: Vec<Rational> = a.iter().flatten().cloned().collect();
    let (nums, a_denom) = clear_denominators(&flat);
    let rows: Vec<Vec<BigInt>> = nums.chunks(arity.max(1)).map(<[BigInt]>::to_vec).collect();
    let layout = Layout::new(arity, max_deg as usize);

    let mut out = MultiPoly::zero(arity);
    for degree in 0..=max_deg as usize {
        let component: Vec<(&Monomial, &Rational)> = p
            .terms()
            .filter(|(m, _)| m.degree() as usize == degree)
            .collect();
        if component.is_empty() {
            continue;
        }
        let coeffs: Vec<Rational> = component.iter().map(|(_, c)| (*c).clone()).collect();
        let (cnums, c_denom) = clear_denominators(&coeffs);
        let mut acc = vec![BigInt::zero(); layout.len(degree)];
        // partial products of the variable sequence, shared between
        // consecutive terms with a common prefix
        let mut stack: Vec<(usize, Vec<BigInt>)> = Vec::new();
        for ((m, _), cnum) in component.iter().zip(&cnums) {
            let vars: Vec<usize> = (0..arity)
                .flat_map(|i| std::iter::repeat(i).take(m.exp(i) as usize))
                .collect();
            let common = stack
                .iter()
                .zip(&vars)
                .take_while(|((v, _), w)| v == *w)
                .count();
            stack.truncate(common);
            for &v in &vars[common..] {
                let depth = stack.len();
                let mut next = vec![BigInt::zero(); layout.len(depth + 1)];
                match stack.last() {
                    Some((_, prev)) => {
                        layout.mul_linear_into(depth, prev, &rows[v], false, &mut next)
                    }
                    None => {
                        layout.mul_linear_into(0, &[BigInt::from(1)], &rows[v], false, &mut next)
                    }
                }
                stack.push((v, next));
            }
            match stack.last() {
                Some((_, prod)) => {
                    for (slot, c) in acc.iter_mut().zip(prod) {
                        if !c.is_zero() {
                            *slot += cnum * c;
                        }
                    }
                }
                None => acc[0] += cnum,
            }
        }
        let denom = c_denom * num_traits::pow(a_denom.clone(), degree);
        out = out.add(&layout.to_poly(degree, &acc, &denom));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyexact::{q, qi, Mat, PolyMatrix};

    #[test]
    fn slot_counts() {
        assert_eq!(monomials_count(8, 8), 6435);
        assert_eq!(monomials_of_degree(8, 3).len(), monomials_count(8, 3));
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
    }

    #[test]
    fn dense_det_agrees_with_sparse() {
        let forms: Vec<Vec<Vec<Rational>>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        (0..3)
                            .map(|k| q(((i * 7 + j * 3 + k * 5) % 5) as i64 - 2, 1 + k as i64))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let pm = PolyMatrix::from_fn(3, 3, |i, j| MultiPoly::linear(&forms[i][j]));
        assert_eq!(det_linear_forms(&forms, 3), pm.det_sparse());
    }

    #[test]
    fn dense_substitution_agrees_with_sparse() {
        let x = MultiPoly::<Rational>::var(3, 0);
        let y = MultiPoly::<Rational>::var(3, 1);
        let z = MultiPoly::<Rational>::var(3, 2);
        let p = x
            .mul(&y)
            .mul(&z)
            .add(&x.mul(&x).scale(&q(1, 3)))
            .add(&MultiPoly::constant(3, qi(2)));
        let a = Mat::from_rows(vec![
            vec![qi(1), q(1, 2), qi(0)],
            vec![qi(0), qi(2), qi(-1)],
            vec![q(3, 4), qi(0), qi(1)],
        ]);
        assert_eq!(
            substitute(&p, &a.to_rows()),
            p.linear_substitute_sparse(&a).unwrap()
        );
    }
}
