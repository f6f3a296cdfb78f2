use crate::error::{Error, Result};
use crate::scalar::Scalar;

// Below this the argument is shifted up with psi(x) = psi(x + 1) - 1/x.
const ASYMPTOTIC_FROM: f64 = 10.0;

/// Digamma function for `x > 0`.
///
/// Shifts small arguments up by recurrence, then sums the asymptotic series
/// `ln x - 1/(2x) - sum B_2n / (2n x^2n)` through the `x^-14` term.
pub fn digamma<F: Scalar>(x: F) -> Result<F> {
    if !x.is_finite() || x <= F::zero() {
        return Err(Error::Domain(x.to_f64_lossy()));
    }
    let mut x = x;
    let mut shift = F::zero();
    let limit = F::lit(ASYMPTOTIC_FROM);
    while x < limit {
        shift = shift + x.recip();
        x = x + F::one();
    }
    let inv2 = (x * x).recip();
    // B_2n / 2n for n = 1..7, evaluated in Horner form in 1/x^2
    let series = inv2
        * (F::lit(1.0 / 12.0)
            - inv2
                * (F::lit(1.0 / 120.0)
                    - inv2
                        * (F::lit(1.0 / 252.0)
                            - inv2
                                * (F::lit(1.0 / 240.0)
                                    - inv2
                                        * (F::lit(1.0 / 132.0)
                                            - inv2
                                                * (F::lit(691.0 / 32760.0)
                                                    - inv2 * F::lit(1.0 / 12.0)))))));
    Ok(x.ln() - F::lit(0.5) / x - series - shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn value_at_one() {
        assert!((digamma(1.0_f64).unwrap() + EULER_GAMMA).abs() < 1e-12);
    }

    #[test]
    fn value_at_one_matches_series_oracle() {
        // psi(1) = -gamma = sum_{n>=1} (1/n - ln(1 + 1/n)) negated; tail ~ 1/(2N)
        let n_terms = 2_000_000u64;
        let partial: f64 = (1..=n_terms)
            .map(|n| {
                let n = n as f64;
                1.0 / n - (1.0 / n).ln_1p()
            })
            .sum();
        let tail = 0.5 / n_terms as f64;
        assert!((digamma(1.0_f64).unwrap() + partial + tail).abs() < 1e-10);
    }

    #[test]
    fn value_at_two() {
        let d1 = digamma(1.0_f64).unwrap();
        assert!((digamma(2.0_f64).unwrap() - (d1 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn value_at_hundred_matches_expansion() {
        let x = 100.0_f64;
        let expected = x.ln() - 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x) + 1.0 / (120.0 * x.powi(4))
            - 1.0 / (252.0 * x.powi(6));
        assert!((digamma(x).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn half_integer_reference() {
        // psi(1/2) = -gamma - 2 ln 2
        let expected = -EULER_GAMMA - 2.0 * std::f64::consts::LN_2;
        assert!((digamma(0.5_f64).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn recurrence_on_grid() {
        for i in 1..=100 {
            let x = 0.5 * i as f64;
            let lhs = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
            assert!((lhs - 1.0 / x).abs() < 1e-10, "x = {x}");
        }
    }

    #[test]
    fn domain() {
        assert!(matches!(digamma(0.0_f64), Err(Error::Domain(_))));
        assert!(matches!(digamma(-1.5_f64), Err(Error::Domain(_))));
        assert!(digamma(f64::NAN).is_err());
    }

    #[test]
    fn single_precision() {
        assert!((digamma(1.0_f32).unwrap() + EULER_GAMMA as f32).abs() < 1e-6);
    }
}
