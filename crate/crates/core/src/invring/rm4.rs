//! The quaternary `RM(1,1)` enumerator `x^4 + 12 x y^3 + 3 y^4`, whose
//! projective symmetries and invariant generators live over `Q(sqrt(-15))`.
//! Checked numerically at working precision.

use astro_float::BigFloat;

use crate::roots::{log2_abs, BigComplex, RM};
use crate::symgroup::ProjectiveMatrix;
use crate::wpoly::HomPoly;

pub fn enumerator() -> HomPoly {
    HomPoly::from_integers(&[1, 0, 0, 12, 3])
}

/// `sqrt(-15)`.
fn s15(prec: usize) -> BigComplex {
    let r = BigFloat::from_word(15, prec).sqrt(prec, RM);
    BigComplex::new(BigFloat::from_word(0, prec), r, prec)
}

fn int(n: i64, prec: usize) -> BigComplex {
    BigComplex::from_f64(n as f64, 0.0, prec)
}

/// `[[3 - s, 6 + 2s], [-4, s - 3]]` with `s = sqrt(-15)`, and the
/// MacWilliams matrix `[[1, 3], [1, -1]]`.
pub fn symmetries(prec: usize) -> [ProjectiveMatrix; 2] {
    let s = s15(prec);
    let g = ProjectiveMatrix::new([&int(3, prec) - &s, &int(6, prec) + &(&s + &s), int(-4, prec), &s - &int(3, prec)])
        .expect("nonsingular");
    let h = ProjectiveMatrix::new([int(1, prec), int(3, prec), int(1, prec), int(-1, prec)]).expect("nonsingular");
    [g, h]
}

/// Coefficients of `f1 = 2x^2 + (3 + s) xy + (3 - s) y^2` and
/// `f2 = 53x^4 - 36x^3y - 18x^2y^2 + 636xy^3 + 213y^4`.
pub fn generators(prec: usize) -> (Vec<BigComplex>, Vec<BigComplex>) {
    let s = s15(prec);
    let f1 = vec![int(2, prec), &int(3, prec) + &s, &int(3, prec) - &s];
    let f2 = [53, -36, -18, 636, 213].iter().map(|&c| int(c, prec)).collect();
    (f1, f2)
}

fn poly_mul(a: &[BigComplex], b: &[BigComplex]) -> Vec<BigComplex> {
    let prec = a[0].prec();
    let mut out = vec![BigComplex::zero(prec); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Least-squares `(alpha, beta)` for `target = alpha u + beta v` by the
/// normal equations, with `log2` of the largest coefficient residual
/// relative to the largest target coefficient.
pub fn fit_two_terms(target: &[BigComplex], u: &[BigComplex], v: &[BigComplex]) -> (BigComplex, BigComplex, f64) {
    let dot = |a: &[BigComplex], b: &[BigComplex]| {
        a.iter().zip(b).fold(BigComplex::zero(target[0].prec()), |acc, (x, y)| &acc + &(&x.conj() * y))
    };
    let (uu, uv, vv) = (dot(u, u), dot(u, v), dot(v, v));
    let (ut, vt) = (dot(u, target), dot(v, target));
    let vu = uv.conj();
    let det = &(&uu * &vv) - &(&uv * &vu);
    let alpha = &(&(&vv * &ut) - &(&uv * &vt)) / &det;
    let beta = &(&(&uu * &vt) - &(&vu * &ut)) / &det;
    let worst = target
        .iter()
        .zip(u.iter().zip(v))
        .map(|(t, (x, y))| (&(t - &(&alpha * x)) - &(&beta * y)).log2_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    let size = target.iter().map(|t| log2_abs(&t.abs())).fold(f64::NEG_INFINITY, f64::max);
    (alpha, beta, worst - size)
}

/// `w = alpha f1^2 + beta f2` for the enumerator `w`.
pub fn decomposition_residual(prec: usize) -> (BigComplex, BigComplex, f64) {
    let (f1, f2) = generators(prec);
    let w: Vec<BigComplex> = enumerator().coeffs().iter().map(|c| BigComplex::from_rational(c, prec)).collect();
    fit_two_terms(&w, &poly_mul(&f1, &f1), &f2)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::symgroup::invariance_check;

    #[test]
    fn printed_symmetries_fix_the_enumerator() {
        for m in symmetries(256) {
            let (_, worst) = invariance_check(&enumerator(), &m, 8, 7);
            assert!(worst <= -100.0, "residual 2^{worst}");
        }
    }

    #[test]
    fn macwilliams_scalar_is_sixteen() {
        let [_, h] = symmetries(256);
        let (lambda, _) = invariance_check(&enumerator(), &h, 5, 1);
        // Canonical form divides by 3, so lambda = 16 / 3^4.
        assert!((lambda.to_c64() - Complex64::new(16.0 / 81.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn printed_generators_span_the_enumerator() {
        let (alpha, beta, residual) = decomposition_residual(256);
        assert!(residual <= -80.0, "residual 2^{residual}");
        // Plain f64 least squares as an independent check of the coefficients.
        let s = Complex64::new(0.0, 15f64.sqrt());
        let f1 = [Complex64::new(2.0, 0.0), 3.0 + s, 3.0 - s];
        let f1sq: Vec<Complex64> = (0..5).map(|k| (0..3).filter(|&i| k >= i && k - i < 3).map(|i| f1[i] * f1[k - i]).sum()).collect();
        let f2 = [53.0, -36.0, -18.0, 636.0, 213.0].map(|c| Complex64::new(c, 0.0));
        let w = [1.0, 0.0, 0.0, 12.0, 3.0];
        // Rows 0 and 2 determine alpha and beta.
        let det = f1sq[0] * f2[2] - f1sq[2] * f2[0];
        let a = (w[0] * f2[2] - w[2] * f2[0]) / det;
        let b = (f1sq[0] * w[2] - f1sq[2] * w[0]) / det;
        assert!((alpha.to_c64() - a).norm() < 1e-12);
        assert!((beta.to_c64() - b).norm() < 1e-12);
    }
}
