use super::number::Paracomplex;
use crate::scalar::Real;

/// Central-difference step `∛ε · (1 + scale)`.
pub fn default_fd_step<T: Real>(scale: T) -> T {
    T::fd_step() * (T::one() + num_traits::Float::abs(scale))
}

/// Finite-difference residual of the paracomplex Cauchy–Riemann system at `z`.
///
/// In idempotent coordinates the system says `f₊` depends only on `z₊` and
/// `f₋` only on `z₋`, so the residual is `max(|∂f₊/∂z₋|, |∂f₋/∂z₊|)`
/// estimated by central differences. Returns NaN if any sample is not finite.
pub fn paraholomorphy_residual<T, F>(f: F, z: Paracomplex<T>, step: T) -> T
where
    T: Real,
    F: Fn(Paracomplex<T>) -> Paracomplex<T>,
{
    let two = T::one() + T::one();
    let (p, m) = (z.plus(), z.minus());
    let fm_hi = f(Paracomplex::from_idempotent(p, m + step));
    let fm_lo = f(Paracomplex::from_idempotent(p, m - step));
    let fp_hi = f(Paracomplex::from_idempotent(p + step, m));
    let fp_lo = f(Paracomplex::from_idempotent(p - step, m));
    let samples = [fm_hi, fm_lo, fp_hi, fp_lo];
    if samples.iter().any(|s| !(s.plus().is_finite() && s.minus().is_finite())) {
        return T::nan();
    }
    let d_plus_d_minus = (fm_hi.plus() - fm_lo.plus()) / (two * step);
    let d_minus_d_plus = (fp_hi.minus() - fp_lo.minus()) / (two * step);
    num_traits::Float::max(
        num_traits::Float::abs(d_plus_d_minus),
        num_traits::Float::abs(d_minus_d_plus),
    )
}
