//! Linearized polynomials `Σ a_j X^(2^j)` over GF(2^m) and the GF(2)-linear
//! maps they define.
//!
//! Annihilators are found from the Moore system; the image polynomial of a
//! subspace `U` is the right quotient of `X^(2^m) + X` by the annihilator of
//! `U`, which is what makes up- and down-conversion exact inverses of each
//! other on supports.

use crate::error::{Error, Result};
use crate::gf2m::{Elem, Field};
use crate::gflinalg::{self, BitMatrix};

/// `Σ coeffs[j] · X^(2^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    coeffs: Vec<Elem>,
}

impl LinearizedPoly {
    /// Builds a polynomial, trimming zero leading coefficients. The zero
    /// polynomial is rejected.
    pub fn new(mut coeffs: Vec<Elem>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        Ok(LinearizedPoly { coeffs })
    }

    /// The polynomial `X`.
    pub fn identity() -> Self {
        LinearizedPoly {
            coeffs: vec![Elem::ONE],
        }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// `s` such that the ordinary degree is `2^s`.
    pub fn q_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        *self.coeffs.last().unwrap() == Elem::ONE
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut pow = x;
        for (j, &a) in self.coeffs.iter().enumerate() {
            if j > 0 {
                pow = field.square(pow);
            }
            acc += field.mul(a, pow);
        }
        acc
    }

    /// The matrix form, evaluated on the polynomial basis.
    pub fn to_map(&self, field: &Field) -> LinearMap {
        LinearMap::from_fn(field, |x| self.eval(field, x))
    }

    /// Symbolic composition `self ∘ other`.
    pub fn compose(&self, field: &Field, other: &LinearizedPoly) -> LinearizedPoly {
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (j, &a) in self.coeffs.iter().enumerate() {
            for (l, &b) in other.coeffs.iter().enumerate() {
                out[j + l] += field.mul(a, field.frobenius(b, j as i64));
            }
        }
        LinearizedPoly::new(out).expect("composition of nonzero linearized polynomials is nonzero")
    }
}

/// A GF(2)-linear map on GF(2^m), stored as the images of 1, α, ..., α^(m-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    images: Vec<Elem>,
}

impl LinearMap {
    pub fn from_fn(field: &Field, f: impl Fn(Elem) -> Elem) -> Self {
        LinearMap {
            images: (0..field.m()).map(|k| f(Elem(1 << k))).collect(),
        }
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        let mut bits = x.bits();
        let mut acc = Elem::ZERO;
        while bits != 0 {
            acc += self.images[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        acc
    }

    pub fn matrix(&self, field: &Field) -> BitMatrix {
        gflinalg::map_matrix(field, |x| self.apply(x))
    }

    pub fn rank(&self) -> usize {
        gflinalg::rank(&self.images)
    }

    pub fn kernel(&self, field: &Field) -> Vec<Elem> {
        gflinalg::map_kernel(field, |x| self.apply(x))
    }

    /// One `x` with `self(x) = y`, if `y` is in the image.
    pub fn preimage_point(&self, field: &Field, y: Elem) -> Option<Elem> {
        gflinalg::map_solve(field, |x| self.apply(x), y)
    }

    /// The full preimage of a set: each point contributes a coset of the
    /// kernel. Points outside the image contribute nothing.
    pub fn preimage(&self, field: &Field, ys: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
        let a = self.matrix(field);
        let m = field.m() as usize;
        let kernel: Vec<Elem> = gflinalg::solve_gf2(&a, &gflinalg::BitVector::zeros(m))
            .kernel
            .iter()
            .map(gflinalg::elem_of)
            .collect();
        let coset = gflinalg::span(&kernel);
        let mut out = Vec::new();
        for y in ys {
            let sol = gflinalg::solve_gf2(&a, &gflinalg::vec_of(field, y));
            if let Some(x0) = sol.particular.as_ref().map(gflinalg::elem_of) {
                out.extend(coset.iter().map(|&k| x0 + k));
            }
        }
        out
    }
}

/// Gaussian elimination over GF(2^m) for a square system; `None` when singular.
fn solve_field_system(field: &Field, mut a: Vec<Vec<Elem>>, mut b: Vec<Elem>) -> Option<Vec<Elem>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        b.swap(c, p);
        let inv = field.inv(a[c][c]).ok()?;
        for e in &mut a[c][c..] {
            *e = field.mul(*e, inv);
        }
        b[c] = field.mul(b[c], inv);
        let pivot = a[c].clone();
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for (e, &p) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                    *e += field.mul(f, p);
                }
                let t = field.mul(f, b[c]);
                b[r] += t;
            }
        }
    }
    Some(b)
}

/// The monic annihilator of span(gens): `X^(2^s) + a_(s-1) X^(2^(s-1)) + ... + a_0 X`,
/// with coefficients from the Moore system
/// `[γ_i^(2^j)]_(i,j) · (a_0..a_(s-1))ᵀ = (γ_i^(2^s))_i`.
pub fn annihilator(field: &Field, gens: &[Elem]) -> Result<LinearizedPoly> {
    if !gflinalg::independent(gens) {
        return Err(Error::DependentGenerators);
    }
    let s = gens.len();
    if s == 0 {
        return Ok(LinearizedPoly::identity());
    }
    let mut moore = Vec::with_capacity(s);
    let mut rhs = Vec::with_capacity(s);
    for &g in gens {
        let mut row = Vec::with_capacity(s);
        let mut p = g;
        for _ in 0..s {
            row.push(p);
            p = field.square(p);
        }
        moore.push(row);
        rhs.push(p);
    }
    let mut coeffs = solve_field_system(field, moore, rhs).ok_or(Error::DependentGenerators)?;
    coeffs.push(Elem::ONE);
    LinearizedPoly::new(coeffs)
}

/// Basis of the kernel `{x : P(x) = 0}`.
pub fn lin_kernel(field: &Field, p: &LinearizedPoly) -> Vec<Elem> {
    gflinalg::map_kernel(field, |x| p.eval(field, x))
}

/// The image polynomial of `U = span(u_basis)`: the unique monic linearized
/// polynomial of degree `2^(m-k)` whose image is exactly `U`.
///
/// It is the right quotient `B` in `X^(2^m) + X = B ∘ A_U`, where `A_U` is
/// the annihilator of `U`.
pub fn image_polynomial(field: &Field, u_basis: &[Elem]) -> Result<LinearizedPoly> {
    let a = annihilator(field, u_basis)?;
    let m = field.m() as usize;
    let k = a.q_degree();
    let ac = a.coeffs();
    // target T = X^(2^m) + X
    let mut t = vec![Elem::ZERO; m + 1];
    t[m] += Elem::ONE;
    t[0] += Elem::ONE;
    // coefficient of X^(2^(j+k)) in B∘A is b_j + Σ_(j'>j) b_j' · a_(j+k-j')^(2^j')
    let mut b = vec![Elem::ZERO; m - k + 1];
    for j in (0..=m - k).rev() {
        let mut v = t[j + k];
        for (jp, &bj) in b.iter().enumerate().skip(j + 1).take(k) {
            let l = j + k - jp;
            v += field.mul(bj, field.frobenius(ac[l], jp as i64));
        }
        b[j] = v;
    }
    let quotient = LinearizedPoly::new(b)?;
    debug_assert_eq!(quotient.compose(field, &a).coeffs(), &t[..]);
    Ok(quotient)
}

/// A linear map GF(2^m) -> GF(2^m) with image exactly `span(u_basis)` and
/// kernel of dimension `m - k`: the image polynomial in matrix form.
pub fn image_map_for_subspace(field: &Field, u_basis: &[Elem]) -> Result<LinearMap> {
    Ok(image_polynomial(field, u_basis)?.to_map(field))
}

/// All nonzero roots of `c1 X^3 + c2 X + c1^2`, ascending. They are the
/// nonzero kernel of `x -> c1 x^4 + c2 x^2 + c1^2 x`, so there are 0, 1 or 3.
pub fn affine_cubic_roots(field: &Field, c1: Elem, c2: Elem) -> Result<Vec<Elem>> {
    if c1.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let c1sq = field.square(c1);
    let kernel = gflinalg::map_kernel(field, |x| {
        let x2 = field.square(x);
        field.mul(c1, field.square(x2)) + field.mul(c2, x2) + field.mul(c1sq, x)
    });
    let mut roots: Vec<Elem> = gflinalg::span(&kernel)
        .into_iter()
        .filter(|&x| {
            !x.is_zero()
                && field.mul(c1, field.mul(field.square(x), x)) + field.mul(c2, x) + c1sq
                    == Elem::ZERO
        })
        .collect();
    roots.sort();
    Ok(roots)
}
