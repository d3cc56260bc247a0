/// Generalized Laguerre polynomial L_n^(alpha)(z) by the stable three-term
/// recurrence.
pub fn laguerre(n: usize, alpha: f64, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - z) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::kummer::kummer_m;
    use num_complex::Complex64;

    #[test]
    fn order_zero_is_one() {
        for &(a, z) in &[(0.0, 0.0), (2.5, -3.0), (-0.5, 17.0)] {
            assert_eq!(laguerre(0, a, z), 1.0);
        }
    }

    #[test]
    fn order_one_closed_form() {
        for &(a, z) in &[(0.0, 0.3), (1.7, 2.2), (-0.4, -1.0)] {
            assert!((laguerre(1, a, z) - (1.0 + a - z)).abs() < 1e-15);
        }
    }

    #[test]
    fn matches_kummer_identity() {
        // L_n^(alpha)(z) = binom(n+alpha, n) M(-n, alpha+1, z)
        let n = 3usize;
        let alpha = 2.0f64;
        let z = 1.5f64;
        let binom = 10.0; // C(5,3)
        let m = kummer_m(
            Complex64::new(-(n as f64), 0.0),
            Complex64::new(alpha + 1.0, 0.0),
            z,
        )
        .unwrap()
        .value()
        .re;
        let expect = binom * m;
        let got = laguerre(n, alpha, z);
        assert!((got - expect).abs() < 1e-12, "got {got}, expect {expect}");
        assert!((got - 0.0625).abs() < 1e-12);
    }

    #[test]
    fn recurrence_consistency_higher_order() {
        // spot check the classical L_4(x) at alpha = 0
        let x = 0.7f64;
        let expect = (x.powi(4) - 16.0 * x.powi(3) + 72.0 * x * x - 96.0 * x + 24.0) / 24.0;
        assert!((laguerre(4, 0.0, x) - expect).abs() < 1e-13);
    }
}
