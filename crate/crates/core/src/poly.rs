//! Dense integer polynomials and exact determinants of matrices whose
//! entries are polynomials of degree at most one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Formats a rational as `"num/den"`, always with an explicit denominator.
pub fn fmt_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Integer polynomial, `coeffs[i]` multiplying `x^i`, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `a*x + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_i64s(&[b, a])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// Divides every coefficient by `d`, which must divide all of them.
    pub fn divide_exact_by_integer(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "coefficient of x^{i} ({c}) is not divisible by {d}"
                )));
            }
            out.push(q);
        }
        Ok(IntPolynomial { coeffs: out })
    }

    /// Gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// The polynomial divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        self.divide_exact_by_integer(&c)
            .expect("content divides every coefficient")
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Quotient by `a*x - b` when that division is exact over the integers.
    ///
    /// `a*x - b` should be primitive (`gcd(a, b) = 1`); by Gauss's lemma the
    /// quotient of an integer polynomial by a primitive factor is again integral.
    pub fn div_linear_exact(&self, a: &BigInt, b: &BigInt) -> Option<Self> {
        if a.is_zero() {
            return None;
        }
        let Some(d) = self.degree() else {
            return Some(Self::zero());
        };
        if d == 0 {
            return None;
        }
        // Synthetic division from the top: p = (a x - b) * s.
        let mut s = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (1..=d).rev() {
            let (q, r) = (&self.coeffs[i] + &carry).div_rem(a);
            if !r.is_zero() {
                return None;
            }
            carry = &q * b;
            s[i - 1] = q;
        }
        if (&self.coeffs[0] + &carry).is_zero() {
            Some(Self::new(s))
        } else {
            None
        }
    }

    /// Multiplicity of the root `b/a` and the cofactor left after removing it.
    pub fn strip_linear_factor(&self, a: &BigInt, b: &BigInt) -> (usize, Self) {
        let mut p = self.clone();
        let mut k = 0;
        if p.is_zero() {
            return (0, p);
        }
        while let Some(q) = p.div_linear_exact(a, b) {
            p = q;
            k += 1;
        }
        (k, p)
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Square matrix whose entries are `slope * x + constant`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMatrix {
    n: usize,
    constant: Vec<i64>,
    slope: Vec<i64>,
}

impl LinearMatrix {
    pub fn zeros(n: usize) -> Self {
        LinearMatrix {
            n,
            constant: vec![0; n * n],
            slope: vec![0; n * n],
        }
    }

    /// Builds the matrix from polynomial entries, rejecting degree > 1 and
    /// coefficients outside `i64`.
    pub fn from_polys(rows: &[Vec<IntPolynomial>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, p) in row.iter().enumerate() {
                if p.degree().unwrap_or(0) > 1 {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({i}, {j}) has degree {}",
                        p.degree().unwrap_or(0)
                    )));
                }
                let small = |c: BigInt| {
                    c.to_i64().ok_or_else(|| {
                        Error::InvalidParameter(format!("entry ({i}, {j}) exceeds i64"))
                    })
                };
                m.set(i, j, small(p.coeff(1))?, small(p.coeff(0))?);
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, slope: i64, constant: i64) {
        self.slope[i * self.n + j] = slope;
        self.constant[i * self.n + j] = constant;
    }

    pub fn entry(&self, i: usize, j: usize) -> IntPolynomial {
        let k = i * self.n + j;
        IntPolynomial::linear(self.slope[k], self.constant[k])
    }

    /// Integer determinant of the matrix evaluated at `x`.
    pub fn det_at(&self, x: i64) -> BigInt {
        let small: Option<Vec<i128>> = self
            .slope
            .iter()
            .zip(&self.constant)
            .map(|(&a, &b)| (a as i128).checked_mul(x as i128)?.checked_add(b as i128))
            .collect();
        if let Some(vals) = small {
            if let Some(d) = bareiss_i128(vals.clone(), self.n) {
                return BigInt::from(d);
            }
            return bareiss(vals.into_iter().map(BigInt::from).collect(), self.n);
        }
        let xb = BigInt::from(x);
        let vals = self
            .slope
            .iter()
            .zip(&self.constant)
            .map(|(&a, &b)| BigInt::from(a) * &xb + b)
            .collect();
        bareiss(vals, self.n)
    }

    /// Exact determinant polynomial.
    ///
    /// The matrix is evaluated at `x = 0, 1, .., n`, each integer
    /// determinant is computed by fraction-free elimination, and the unique
    /// interpolant of degree at most `n` through those values is returned.
    pub fn det(&self) -> IntPolynomial {
        let values: Vec<BigInt> = (0..=self.n as i64).map(|x| self.det_at(x)).collect();
        interpolate_from_zero(&values)
            .expect("determinant of an integer-linear matrix has integer coefficients")
    }

    /// Checks `p` against a determinant at the extra node `x = n + 1`.
    pub fn agrees_off_nodes(&self, p: &IntPolynomial) -> bool {
        let x = self.n as i64 + 1;
        p.eval_i64(x) == self.det_at(x)
    }
}

/// Exact determinant of a matrix of degree-at-most-one integer polynomials.
pub fn linear_matrix_det(rows: &[Vec<IntPolynomial>]) -> Result<IntPolynomial> {
    Ok(LinearMatrix::from_polys(rows)?.det())
}

/// Fraction-free Gaussian elimination over `i128`; `None` on overflow.
fn bareiss_i128(mut a: Vec<i128>, n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let aik = a[i * n + k];
            for j in k + 1..n {
                let num = a[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(aik.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = num / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    a[n * n - 1].checked_mul(sign)
}

/// Fraction-free Gaussian elimination over arbitrary-precision integers.
pub fn bareiss(mut a: Vec<BigInt>, n: usize) -> BigInt {
    assert_eq!(a.len(), n * n, "matrix must be square");
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = std::mem::take(&mut a[i * n + k]);
            for j in k + 1..n {
                let num = &a[i * n + j] * &pivot - &aik * &a[k * n + j];
                a[i * n + j] = num / &prev;
            }
        }
        prev = pivot;
    }
    let d = a.swap_remove(n * n - 1);
    if negate {
        -d
    } else {
        d
    }
}

/// Interpolates integer values at `x = 0, 1, .., k` in Newton form.
///
/// The k-th forward difference of an integer polynomial at 0 is divisible
/// by `k!`, so every step stays in the integers. Fails if the values do not
/// come from an integer polynomial.
pub fn interpolate_from_zero(values: &[BigInt]) -> Result<IntPolynomial> {
    let mut diffs = values.to_vec();
    let mut result = IntPolynomial::zero();
    // Falling factorial x (x-1) .. (x-k+1).
    let mut falling = IntPolynomial::one();
    let mut factorial = BigInt::one();
    for k in 0..values.len() {
        if k > 0 {
            for i in 0..values.len() - k {
                diffs[i] = &diffs[i + 1] - &diffs[i];
            }
            factorial *= k;
            falling = &falling * &IntPolynomial::linear(1, -(k as i64 - 1));
        }
        let (c, r) = diffs[0].div_rem(&factorial);
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!(
                "forward difference {k} is not divisible by {k}!"
            )));
        }
        if !c.is_zero() {
            result = &result + &falling.scale(&c);
        }
    }
    Ok(result)
}

fn rat_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rat_rem(f: &[BigRational], g: &[BigRational]) -> Vec<BigRational> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    let lead = &g[dg];
    while r.len() > dg && !r.is_empty() {
        let k = r.len() - 1 - dg;
        let c = r.last().expect("nonempty") / lead;
        for (i, gi) in g.iter().enumerate() {
            r[k + i] -= &c * gi;
        }
        r.pop();
        r = rat_trim(r);
    }
    r
}

fn rat_div(f: &[BigRational], g: &[BigRational]) -> Vec<BigRational> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    let mut q = vec![BigRational::zero(); (f.len() - 1).saturating_sub(dg) + 1];
    while r.len() > dg {
        let k = r.len() - 1 - dg;
        let c = r.last().expect("nonempty") / &g[dg];
        for (i, gi) in g.iter().enumerate() {
            r[k + i] -= &c * gi;
        }
        q[k] = c;
        r.pop();
    }
    rat_trim(q)
}

fn rat_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn sign_changes(seq: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| rat_eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the closed interval `[a, b]`,
/// counted exactly with a Sturm sequence.
pub fn count_distinct_roots_in(p: &IntPolynomial, a: &BigRational, b: &BigRational) -> usize {
    if p.degree().unwrap_or(0) == 0 || a > b {
        return 0;
    }
    let to_rat = |q: &IntPolynomial| -> Vec<BigRational> {
        q.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    // Work with the square-free part so that no point zeroes the whole chain.
    let (f, df) = (to_rat(p), to_rat(&p.derivative()));
    let (mut x, mut y) = (f.clone(), df);
    while !y.is_empty() {
        let r = rat_rem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    let sf = rat_div(&f, &x);
    if sf.len() < 2 {
        return 0;
    }
    let dsf: Vec<BigRational> = sf
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    let mut seq = vec![sf, dsf];
    loop {
        let k = seq.len();
        let r = rat_rem(&seq[k - 2], &seq[k - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    // The chain counts roots in (a, b]; add a root sitting exactly at a.
    let at_a = usize::from(p.eval_rational(a).is_zero());
    sign_changes(&seq, a) - sign_changes(&seq, b) + at_a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn ring_ops() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[0, -2, 1]).eval_i64(3), BigInt::from(3));
        assert_eq!(
            p(&[0, -4, 2])
                .divide_exact_by_integer(&BigInt::from(2))
                .unwrap(),
            p(&[0, -2, 1])
        );
        assert!(p(&[1, -4, 2])
            .divide_exact_by_integer(&BigInt::from(2))
            .is_err());
        assert_eq!(&p(&[1, 2, 3]) - &p(&[1, 2, 3]), IntPolynomial::zero());
        assert_eq!((&p(&[1, 2]) + &p(&[0, -2])).degree(), Some(0));
        assert_eq!(p(&[]).degree(), None);
        assert_eq!(p(&[0, 0, 0]), IntPolynomial::zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[0, 4, -6, 2]).to_string(), "2x^3 - 6x^2 + 4x");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn linear_factors() {
        // 2x(x-1)(x-2) = 2x^3 - 6x^2 + 4x
        let f = p(&[0, 4, -6, 2]);
        let one = BigInt::one();
        assert_eq!(f.strip_linear_factor(&one, &BigInt::from(0)).0, 1);
        assert_eq!(f.strip_linear_factor(&one, &BigInt::from(2)).0, 1);
        assert_eq!(f.strip_linear_factor(&one, &BigInt::from(3)).0, 0);
        // (2x - 3)^2 x
        let g = &(&p(&[-3, 2]) * &p(&[-3, 2])) * &p(&[0, 1]);
        let (k, rest) = g.strip_linear_factor(&BigInt::from(2), &BigInt::from(3));
        assert_eq!(k, 2);
        assert_eq!(rest, p(&[0, 1]));
        assert_eq!(p(&[0, 6, 4]).primitive_part(), p(&[0, 3, 2]));
        assert_eq!(p(&[0, -6, -4]).primitive_part(), p(&[0, 3, 2]));
    }

    #[test]
    fn det_one_by_one() {
        let m = vec![vec![p(&[-1, 1])]];
        assert_eq!(linear_matrix_det(&m).unwrap(), p(&[-1, 1]));
        assert_eq!(linear_matrix_det(&[]).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn det_k2() {
        // (x-1) I + A(K_2): (x-1)^2 - 1 = x^2 - 2x.
        let m = vec![vec![p(&[-1, 1]), p(&[1])], vec![p(&[1]), p(&[-1, 1])]];
        assert_eq!(linear_matrix_det(&m).unwrap(), p(&[0, -2, 1]));
    }

    #[test]
    fn det_p3() {
        // (x-1) diag(1,2,1) + A(P_3); expanding along the first row gives
        // (x-1)[2(x-1)^2 - 1] - (x-1) = 2(x-1)^3 - 2(x-1) = 2x^3 - 6x^2 + 4x.
        let m = vec![
            vec![p(&[-1, 1]), p(&[1]), p(&[0])],
            vec![p(&[1]), p(&[-2, 2]), p(&[1])],
            vec![p(&[0]), p(&[1]), p(&[-1, 1])],
        ];
        assert_eq!(linear_matrix_det(&m).unwrap(), p(&[0, 4, -6, 2]));
    }

    #[test]
    fn rejects_quadratic_entries() {
        assert!(linear_matrix_det(&[vec![p(&[0, 0, 1])]]).is_err());
        assert!(linear_matrix_det(&[vec![p(&[1]), p(&[1])]]).is_err());
    }

    #[test]
    fn big_fallback_matches() {
        // Entries near i64::MAX force the arbitrary-precision path.
        let mut m = LinearMatrix::zeros(3);
        let big = i64::MAX / 2;
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, (i + 2 * j) as i64 - 2, big - (i * 7 + j * 3) as i64);
            }
        }
        let d = m.det();
        assert!(m.agrees_off_nodes(&d));
        let vals: Vec<BigInt> = (0..9)
            .map(|k| BigInt::from(m.slope[k]) * 5 + m.constant[k])
            .collect();
        assert_eq!(d.eval_i64(5), bareiss(vals, 3));
    }

    #[test]
    fn sturm_counts() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // x (x - 1)^2 (x - 2)
        let f = &(&p(&[0, 1]) * &(&p(&[-1, 1]) * &p(&[-1, 1]))) * &p(&[-2, 1]);
        assert_eq!(count_distinct_roots_in(&f, &r(-1, 1), &r(3, 1)), 3);
        assert_eq!(count_distinct_roots_in(&f, &r(1, 1), &r(1, 1)), 1);
        assert_eq!(count_distinct_roots_in(&f, &r(0, 1), &r(1, 1)), 2);
        assert_eq!(count_distinct_roots_in(&f, &r(1, 4), &r(3, 4)), 0);
        // x^2 - 2 has one root in [1.41, 1.42].
        let g = p(&[-2, 0, 1]);
        assert_eq!(count_distinct_roots_in(&g, &r(141, 100), &r(142, 100)), 1);
        assert_eq!(count_distinct_roots_in(&g, &r(142, 100), &r(143, 100)), 0);
    }

    #[test]
    fn interpolation_rejects_non_integer_data() {
        // x(x-1)/2 takes integer values but has rational coefficients.
        let vals: Vec<BigInt> = [0, 0, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert!(interpolate_from_zero(&vals).is_err());
    }
}
