//! Normalized-Laplacian spectra, exactly and in floating point.
//!
//! `L(G) = I - D^{-1/2} A D^{-1/2}` is similar to `I - D^{-1} A` on the
//! non-isolated vertices, so its characteristic polynomial there is
//! `det((x - 1) D + A) / prod(d_v)`. Each isolated vertex has an all-zero
//! row and contributes one factor `x`. A [`Fingerprint`] keeps that
//! determinant, the degree product and the isolated count; two graphs are
//! cospectral exactly when their fingerprints are equal.

use std::hash::{Hash, Hasher};

use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};
use crate::poly::{count_distinct_roots_in, BigRational, IntPolynomial, LinearMatrix};

#[derive(Clone, Debug)]
pub struct Fingerprint {
    det_poly: IntPolynomial,
    deg_product: BigInt,
    isolated: usize,
}

impl Fingerprint {
    /// Assembles a fingerprint, checking that the leading coefficient of
    /// `det_poly` equals `deg_product`.
    pub fn new(det_poly: IntPolynomial, deg_product: BigInt, isolated: usize) -> Result<Self> {
        if !deg_product.is_positive() {
            return Err(Error::InvalidParameter(
                "degree product must be positive".into(),
            ));
        }
        if det_poly.leading_coefficient() != deg_product {
            return Err(Error::InvalidParameter(format!(
                "leading coefficient {} differs from degree product {deg_product}",
                det_poly.leading_coefficient()
            )));
        }
        Ok(Fingerprint {
            det_poly,
            deg_product,
            isolated,
        })
    }

    /// `det((x - 1) D + A)` over the non-isolated vertices.
    pub fn det_poly(&self) -> &IntPolynomial {
        &self.det_poly
    }

    pub fn deg_product(&self) -> &BigInt {
        &self.deg_product
    }

    pub fn isolated_count(&self) -> usize {
        self.isolated
    }

    /// Vertex count of the underlying graph.
    pub fn n(&self) -> usize {
        self.det_poly.degree().unwrap_or(0) + self.isolated
    }

    /// `deg_product` times the monic characteristic polynomial.
    pub fn scaled_char_poly(&self) -> IntPolynomial {
        self.det_poly.shift(self.isolated)
    }

    /// Coefficients of the monic characteristic polynomial, low to high.
    pub fn monic_coefficients(&self) -> Vec<BigRational> {
        self.scaled_char_poly()
            .coeffs()
            .iter()
            .map(|c| BigRational::new(c.clone(), self.deg_product.clone()))
            .collect()
    }

    /// Canonical integer representative of the spectrum: the primitive part
    /// of the scaled characteristic polynomial. Equal fingerprints have
    /// equal keys.
    pub fn spectral_key(&self) -> IntPolynomial {
        self.scaled_char_poly().primitive_part()
    }

    /// Multiplicity of the eigenvalue `num/den` (`den > 0`).
    pub fn multiplicity(&self, num: &BigInt, den: &BigInt) -> usize {
        let extra = if num.is_zero() { self.isolated } else { 0 };
        let (k, _) = self.det_poly.strip_linear_factor(den, num);
        k + extra
    }

    /// Whether the set of distinct eigenvalues is exactly `roots`
    /// (each given as `(num, den)` in lowest terms with `den > 0`), decided
    /// by stripping the corresponding integer linear factors.
    pub fn distinct_roots_are(&self, roots: &[(BigInt, BigInt)]) -> bool {
        let mut rest = self.scaled_char_poly();
        for (num, den) in roots {
            let (k, q) = rest.strip_linear_factor(den, num);
            if k == 0 {
                return false;
            }
            rest = q;
        }
        rest.degree() == Some(0)
    }

    /// Whether the monic characteristic polynomial has a root in `[lo, hi]`.
    pub fn has_root_in(&self, lo: &BigRational, hi: &BigRational) -> bool {
        count_distinct_roots_in(&self.scaled_char_poly(), lo, hi) > 0
    }

    pub fn to_json(&self) -> FingerprintJson {
        FingerprintJson {
            det: self
                .det_poly
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect(),
            degprod: self.deg_product.to_string(),
            isolated: self.isolated,
        }
    }

    pub fn from_json(j: &FingerprintJson) -> Result<Self> {
        let parse = |s: &str| -> Result<BigInt> {
            s.parse()
                .map_err(|_| Error::InvalidParameter(format!("bad integer {s:?} in fingerprint")))
        };
        let det = j.det.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
        Fingerprint::new(IntPolynomial::new(det), parse(&j.degprod)?, j.isolated)
    }
}

/// Cross-multiplied comparison of the monic characteristic polynomials.
impl PartialEq for Fingerprint {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
            && self.scaled_char_poly().scale(&other.deg_product)
                == other.scaled_char_poly().scale(&self.deg_product)
    }
}

impl Eq for Fingerprint {}

impl Hash for Fingerprint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spectral_key().hash(state);
    }
}

/// Wire form: `{"det": [decimal strings low to high], "degprod": "...", "isolated": k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintJson {
    pub det: Vec<String>,
    pub degprod: String,
    pub isolated: usize,
}

/// The matrix `(x - 1) D + A` restricted to the non-isolated vertices.
pub fn shifted_degree_matrix(g: &Graph) -> LinearMatrix {
    let h = g.induced(g.non_isolated_mask());
    let n = h.n();
    let mut m = LinearMatrix::zeros(n);
    for u in 0..n {
        let d = h.degree(u) as i64;
        m.set(u, u, d, -d);
        for v in Bits(h.row(u)) {
            m.set(u, v, 0, 1);
        }
    }
    m
}

pub fn fingerprint(g: &Graph) -> Fingerprint {
    let m = shifted_degree_matrix(g);
    let det_poly = m.det();
    let deg_product = g
        .degrees()
        .iter()
        .filter(|&&d| d > 0)
        .fold(BigInt::one(), |acc, &d| acc * d);
    debug_assert_eq!(det_poly.leading_coefficient(), deg_product);
    Fingerprint {
        det_poly,
        deg_product,
        isolated: g.isolated_count(),
    }
}

/// Same normalized-Laplacian spectrum (isomorphism is not considered).
pub fn is_cospectral(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && fingerprint(g) == fingerprint(h)
}

/// A spectrum with rational eigenvalues, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormSpectrum {
    pairs: Vec<(BigRational, usize)>,
}

impl ClosedFormSpectrum {
    pub fn new(pairs: Vec<(BigRational, usize)>) -> Result<Self> {
        if pairs.iter().any(|(_, m)| *m == 0) {
            return Err(Error::InvalidParameter(
                "multiplicities must be positive".into(),
            ));
        }
        if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidParameter(
                "eigenvalues must be strictly increasing".into(),
            ));
        }
        Ok(ClosedFormSpectrum { pairs })
    }

    pub fn pairs(&self) -> &[(BigRational, usize)] {
        &self.pairs
    }

    pub fn n(&self) -> usize {
        self.pairs.iter().map(|(_, m)| m).sum()
    }
}

fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Spectrum of F_{p,q}: `{0, 1 + 1/q}` with multiplicities `1, q` when
/// `p = 1`, otherwise `{0, 1/q, 1 + 1/q}` with multiplicities
/// `1, p - 1, pq - p + 1`.
pub fn closed_form_fpq(p: usize, q: usize) -> Result<ClosedFormSpectrum> {
    if p < 1 || q < 1 {
        return Err(Error::InvalidParameter("need p >= 1 and q >= 1".into()));
    }
    let zero = (BigRational::zero(), 1);
    let high = ratio(q + 1, q);
    if p == 1 {
        return ClosedFormSpectrum::new(vec![zero, (high, q)]);
    }
    ClosedFormSpectrum::new(vec![zero, (ratio(1, q), p - 1), (high, p * q - p + 1)])
}

/// Expands `deg_product * prod (x - l)^m`. Fails when `deg_product` does not
/// clear the denominators.
pub fn spectrum_to_fingerprint(
    s: &ClosedFormSpectrum,
    deg_product: &BigInt,
) -> Result<Fingerprint> {
    let mut primitive = IntPolynomial::one();
    for (l, m) in s.pairs() {
        let factor = IntPolynomial::new(vec![-l.numer().clone(), l.denom().clone()]);
        for _ in 0..*m {
            primitive = &primitive * &factor;
        }
    }
    let lead = primitive.leading_coefficient();
    if !(deg_product % &lead).is_zero() {
        return Err(Error::InexactDivision(format!(
            "degree product {deg_product} is not a multiple of {lead}"
        )));
    }
    Fingerprint::new(
        primitive.scale(&(deg_product / &lead)),
        deg_product.clone(),
        0,
    )
}

/// Dense `L(G)` in floating point.
pub fn normalized_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    DMatrix::from_fn(n, n, |u, v| {
        if u == v {
            if g.degree(u) > 0 {
                1.0
            } else {
                0.0
            }
        } else if g.has_edge(u, v) {
            -1.0 / ((g.degree(u) * g.degree(v)) as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// Eigenvalues of `L(G)` in increasing order. Display only.
pub fn float_spectrum(g: &Graph) -> Vec<f64> {
    if g.n() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(normalized_laplacian(g))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Default tolerance for grouping floating eigenvalues into multiplicities.
pub const DISPLAY_TOLERANCE: f64 = 1e-9;

/// Groups sorted values whose consecutive gaps are within `tol`.
pub fn group_multiplicities(sorted: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some((sum, count, last)) if (v - *last).abs() <= tol => {
                *sum += v;
                *count += 1;
                *last = v;
            }
            _ => out.push((v, 1, v)),
        }
    }
    out.into_iter()
        .map(|(sum, count, _)| (sum / count as f64, count))
        .collect()
}
