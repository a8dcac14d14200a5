use num_complex::Complex64;

use crate::arith::require_odd_prime;
use crate::error::{Error, Result};
use crate::stickelberger::{smallest_primitive_root, PowerTable};

/// Largest `p` accepted by [`analytic_hminus`].
pub const ANALYTIC_BOUND: u64 = 200;

/// Neumaier-compensated complex sum.
#[derive(Default)]
struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, x: Complex64) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(re, im);
        self.carry += Complex64::new(cre, cim);
    }

    fn total(&self) -> Complex64 {
        self.sum + self.carry
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Floating approximation of `h⁻ = 2p · Π_{χ odd} (-B_{1,χ} / 2)` with
/// `B_{1,χ} = (1/p) Σ_{a=1}^{p-1} a χ(a)`.
pub fn analytic_hminus(p: u64) -> Result<f64> {
    require_odd_prime(p, "p")?;
    if p > ANALYTIC_BOUND {
        return Err(Error::param(format!(
            "p = {p} exceeds the floating-point guard {ANALYTIC_BOUND}"
        )));
    }
    let table = PowerTable::new(p, smallest_primitive_root(p)?)?;
    let order = p - 1;
    let tau = std::f64::consts::TAU;
    // χ_j(v^k) = exp(2πi·jk/(p-1)); odd characters are those with j odd.
    let mut product = Complex64::new(2.0 * p as f64, 0.0);
    for j in (1..order).step_by(2) {
        let mut acc = CompensatedSum::default();
        for (k, &a) in table.forward().iter().enumerate() {
            let angle = tau * ((j * k as u64) % order) as f64 / order as f64;
            acc.add(Complex64::from_polar(a as f64, angle));
        }
        let b1 = acc.total() / p as f64;
        product *= -b1 / 2.0;
    }
    if product.im.abs() > 1e-6 * product.re.abs().max(1.0) {
        return Err(Error::consistency(format!(
            "analytic class number for p={p} has imaginary part {}",
            product.im
        )));
    }
    Ok(product.re)
}
