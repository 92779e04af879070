/// Generalized Laguerre polynomial `L_n^(alpha)(x)` by the three-term
/// recurrence
/// `(k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}`.
pub fn laguerre(n: usize, alpha: usize, x: f64) -> f64 {
    let a = alpha as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * cur - (kf + a) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    /// Explicit sum `L_n^(a)(x) = sum_k (-1)^k C(n+a, n-k) x^k / k!` in exact
    /// rational arithmetic.
    fn explicit_sum(n: usize, alpha: usize, x: f64) -> f64 {
        let x = BigRational::from_float(x).unwrap();
        let binom = |top: usize, k: usize| -> BigRational {
            (0..k).fold(BigRational::one(), |acc, i| {
                acc * BigRational::new(BigInt::from(top - i), BigInt::from(i + 1))
            })
        };
        let mut fact = BigRational::one();
        let mut power = BigRational::one();
        let mut total = BigRational::zero();
        for k in 0..=n {
            if k > 0 {
                fact *= BigRational::from_integer(BigInt::from(k));
                power *= &x;
            }
            let term = binom(n + alpha, n - k) * &power / &fact;
            if k % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total.to_f64().unwrap()
    }

    #[test]
    fn low_degree_closed_forms() {
        for &x in &[-1.5, 0.0, 0.3, 3.0, 11.0] {
            assert_eq!(laguerre(0, 1, x), 1.0);
            assert!((laguerre(1, 1, x) - (2.0 - x)).abs() < 1e-14);
            assert!((laguerre(2, 1, x) - (3.0 - 3.0 * x + x * x / 2.0)).abs() < 1e-12);
        }
        assert!((laguerre(2, 1, 3.0) + 1.5).abs() < 1e-14);
    }

    #[test]
    fn matches_explicit_sum_to_degree_30() {
        for n in 0..=30 {
            for alpha in 0..=3 {
                for &x in &[0.05, 0.7, 2.5, 6.0] {
                    let r = laguerre(n, alpha, x);
                    let e = explicit_sum(n, alpha, x);
                    assert!(
                        (r - e).abs() / e.abs().max(1e-3) < 1e-12,
                        "n={n} alpha={alpha} x={x}: {r} vs {e}"
                    );
                }
            }
        }
    }

    #[test]
    fn value_at_origin_is_binomial() {
        // L_n^(1)(0) = n + 1
        for n in 0..10 {
            assert!((laguerre(n, 1, 0.0) - (n + 1) as f64).abs() < 1e-12);
        }
    }
}
