use rug::{Integer, Rational};

/// Exact `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n, k))
}

/// `H_l = 1 + 1/2 + … + 1/l`, with `H_0 = 0`.
pub fn harmonic(l: u32) -> Rational {
    let mut sum = Rational::new();
    for i in 1..=l {
        sum += Rational::from((1, i));
    }
    sum
}

/// `k!/(l_0!⋯l_n!)` for `k = Σ l_i`, as the telescoping product
/// `C(l_0, l_0)·C(l_0+l_1, l_1)⋯C(l_0+⋯+l_n, l_n)`.
pub fn multinomial(parts: &[u32]) -> Integer {
    let mut total = 0u32;
    let mut product = Integer::from(1);
    for &part in parts {
        total += part;
        product *= Integer::from(Integer::binomial_u(total, part));
    }
    product
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factorial(n: u32) -> Integer {
        Integer::from(Integer::factorial(n))
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), 0);
        assert_eq!(harmonic(1), 1);
        assert_eq!(harmonic(3), Rational::from((11, 6)));
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[0, 0, 0]), 1);
        assert_eq!(multinomial(&[1, 1, 1]), 6);
        let by_factorials = factorial(6) / (factorial(2) * factorial(2) * factorial(2));
        assert_eq!(by_factorials, 90);
        assert_eq!(multinomial(&[2, 2, 2]), by_factorials);
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(400, 200), binomial(400, 200));
        assert_eq!(binomial(10, 3), 120);
    }

    proptest! {
        #[test]
        fn multinomial_is_permutation_invariant(mut parts in proptest::collection::vec(0u32..40, 1..6), seed in 0usize..720) {
            let base = multinomial(&parts);
            let len = parts.len();
            parts.rotate_left(seed % len);
            if len > 1 {
                parts.swap(0, seed % len);
            }
            prop_assert_eq!(multinomial(&parts), base.clone());
            let k: u32 = parts.iter().sum();
            let mut den = Integer::from(1);
            for &p in &parts {
                den *= factorial(p);
            }
            prop_assert_eq!(factorial(k) / den, base);
        }
    }
}
