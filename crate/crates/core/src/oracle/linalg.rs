use nalgebra::DMatrix;
use num_complex::Complex64;

use super::OracleError;

pub type Mat = DMatrix<Complex64>;

pub fn identity(dim: usize) -> Mat {
    Mat::identity(dim, dim)
}

/// Kronecker product; `a` is the more significant factor.
pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

pub fn commutator(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

/// Largest singular value.
pub fn spectral_norm(a: &Mat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().singular_values().max()
}

fn max_abs(a: &Mat) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_unitary(u: &Mat, tol: f64) -> bool {
    u.is_square() && max_abs(&(u.adjoint() * u - identity(u.nrows()))) <= tol
}

/// exp(−i·A·t) for Hermitian `A`, by eigendecomposition.
pub fn expm_hermitian(a: &Mat, t: f64) -> Result<Mat, OracleError> {
    let dev = max_abs(&(a - a.adjoint()));
    let scale = max_abs(a).max(1.0);
    if !a.is_square() || dev > 1e-12 * scale {
        return Err(OracleError::NotHermitian(dev));
    }
    let eig = a.clone().symmetric_eigen();
    let phases = eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l * t));
    let v = &eig.eigenvectors;
    Ok(v * Mat::from_diagonal(&phases) * v.adjoint())
}

/// Unit complex number `p` that best aligns `b` onto `a` (a ≈ p·b).
///
/// Uses the phase of tr(b†a); when that trace vanishes, the phase of the
/// largest-magnitude entry of `b` against the same entry of `a`.
pub fn phase_between(a: &Mat, b: &Mat) -> Complex64 {
    let overlap: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    if overlap.norm() > 1e-9 {
        return overlap / overlap.norm();
    }
    let (idx, _) = b.iter().enumerate().fold((0, -1.0), |acc, (i, z)| {
        if z.norm() > acc.1 {
            (i, z.norm())
        } else {
            acc
        }
    });
    let (x, y) = (b.as_slice()[idx], a.as_slice()[idx]);
    let p = y * x.conj();
    if p.norm() > 0.0 {
        p / p.norm()
    } else {
        Complex64::new(1.0, 0.0)
    }
}

/// Largest entry deviation between `a` and `b` after global-phase alignment.
pub fn distance_up_to_phase(a: &Mat, b: &Mat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    let p = phase_between(a, b);
    max_abs(&(a - b * p))
}
