//! Evaluates both sides of every identity at random rational points,
//! summing over compositions directly instead of expanding polynomials.

use besselid::besselpoly::{f_poly, q_poly, theta_poly};
use besselid::exact::{binomial, factorial, rat, ratio, weak_compositions, BigInt, BigRational};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const POINTS: usize = 20;

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    ratio(rng.random_range(-60..=60), rng.random_range(1..=17))
}

fn random_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<BigRational> {
    (0..m).map(|_| random_rational(rng)).collect()
}

fn int(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// `((m-1)/2)_j / j!` as a running product.
fn p_coeff(m: usize, j: u32) -> BigRational {
    let a = ratio(m as i64 - 1, 2);
    (0..j).fold(BigRational::one(), |acc, i| {
        acc * (&a + rat(i64::from(i))) / rat(i64::from(i) + 1)
    })
}

/// `L_n^{(-2n-1)}(x)` from its explicit series with a generalized binomial.
fn laguerre(n: u32, x: &BigRational) -> BigRational {
    let alpha = -2 * i64::from(n) - 1;
    let upper = i64::from(n) + alpha;
    (0..=n)
        .map(|j| {
            let r = n - j;
            let gen_binom = (0..r).fold(BigRational::one(), |acc, i| {
                acc * rat(upper - i64::from(i)) / rat(i64::from(i) + 1)
            });
            gen_binom * pow(&-x, j) / int(factorial(j))
        })
        .sum()
}

fn composition_sum(
    n: u32,
    z: &[BigRational],
    term: impl Fn(u32, &BigRational) -> BigRational,
) -> BigRational {
    weak_compositions(n, z.len())
        .map(|c| {
            c.parts()
                .iter()
                .zip(z)
                .map(|(&k, zi)| term(k, zi))
                .fold(BigRational::one(), |a, b| a * b)
        })
        .sum()
}

fn total(z: &[BigRational]) -> BigRational {
    z.iter().cloned().sum()
}

fn central(k: u32) -> BigRational {
    int(binomial(2 * k, i64::from(k)))
}

fn bessel_rhs(m: usize, n: u32, s: &BigRational) -> BigRational {
    (0..=n)
        .map(|k| central(k) * pow(&rat(4), n - k) * p_coeff(m, n - k) * q_poly(k).eval(s))
        .sum()
}

fn grid() -> impl Iterator<Item = (usize, u32)> {
    (2..=4usize).flat_map(|m| (0..=6u32).map(move |n| (m, n)))
}

#[test]
fn general_bessel_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for (m, n) in grid() {
        for _ in 0..POINTS {
            let z = random_point(&mut rng, m);
            let lhs = composition_sum(n, &z, |k, zi| central(k) * q_poly(k).eval(zi));
            assert_eq!(lhs, bessel_rhs(m, n, &total(&z)), "m={m} n={n} z={z:?}");
        }
    }
}

#[test]
fn convolution_form_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for (m, n) in grid() {
        for _ in 0..POINTS {
            let z = random_rational(&mut rng);
            let lhs = composition_sum(n, &vec![z.clone(); m], |k, zi| {
                central(k) * q_poly(k).eval(zi)
            });
            let mz = rat(m as i64) * &z;
            assert_eq!(lhs, bessel_rhs(m, n, &mz), "m={m} n={n} z={z}");
        }
    }
}

#[test]
fn theta_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for (m, n) in grid() {
        for _ in 0..POINTS {
            let z = random_point(&mut rng, m);
            let lhs = composition_sum(n, &z, |k, zi| theta_poly(k).eval(zi) / int(factorial(k)));
            let s = total(&z);
            let rhs: BigRational = (0..=n)
                .map(|k| {
                    pow(&rat(2), n - k) * p_coeff(m, n - k) * theta_poly(k).eval(&s)
                        / int(factorial(k))
                })
                .sum();
            assert_eq!(lhs, rhs, "m={m} n={n} z={z:?}");
        }
    }
}

#[test]
fn f_multinomial_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for (m, n) in grid().chain([(4, 6), (5, 5)]) {
        for _ in 0..POINTS {
            let z = random_point(&mut rng, m);
            let lhs = composition_sum(n, &z, |k, zi| f_poly(k).eval(zi) / int(factorial(k)));
            let rhs = f_poly(n).eval(&total(&z)) / int(factorial(n));
            assert_eq!(lhs, rhs, "m={m} n={n} z={z:?}");
        }
    }
}

#[test]
fn laguerre_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for (m, n) in grid() {
        for _ in 0..POINTS {
            let x = random_point(&mut rng, m);
            let lhs = composition_sum(n, &x, laguerre);
            let s = total(&x);
            let rhs: BigRational = (0..=n)
                .map(|k| pow(&rat(-4), n - k) * p_coeff(m, n - k) * laguerre(k, &s))
                .sum();
            assert_eq!(lhs, rhs, "m={m} n={n} x={x:?}");
        }
    }
}

#[test]
fn laguerre_series_matches_bessel_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for n in 0..=8 {
        for _ in 0..POINTS {
            let z = random_rational(&mut rng);
            let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
            let expected = sign * central(n) * q_poly(n).eval(&z);
            assert_eq!(laguerre(n, &(rat(2) * &z)), expected, "n={n} z={z}");
        }
    }
}

#[test]
fn prudnikov_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for n in 0..=12u32 {
        let expected = pow(&rat(-4), n);
        for _ in 0..POINTS {
            let z = random_rational(&mut rng);
            let sum: BigRational = (0..=n)
                .map(|k| laguerre(k, &z) * laguerre(n - k, &-&z))
                .sum();
            assert_eq!(sum, expected, "n={n} z={z}");
        }
    }
}

#[test]
fn zero_point_gives_constant_terms() {
    // At z = 0 only the constant terms survive: q_k(0) = 1 for every k.
    for (m, n) in grid() {
        let z = vec![BigRational::zero(); m];
        let lhs = composition_sum(n, &z, |k, _| central(k));
        assert_eq!(lhs, bessel_rhs(m, n, &BigRational::zero()));
    }
}
