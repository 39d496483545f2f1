use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient `C(n, k)`; zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u32, k: i64) -> BigInt {
    if k < 0 || k > i64::from(n) {
        return BigInt::zero();
    }
    let k = (k as u32).min(n - k as u32);
    // Each partial product is itself a binomial coefficient, so the
    // division is exact at every step.
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Multinomial coefficient `(Σ parts)! / Π parts_i!`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut total = 0u32;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, i64::from(p));
    }
    acc
}

/// Rising factorial `a (a+1) … (a+j-1)`, with `(a)_0 = 1`.
///
/// Intended for integer and half-integer `a`, which is all the multi-sums
/// need (`a = (m-1)/2`), but exact for any rational.
pub fn pochhammer_half(a: &BigRational, j: u32) -> BigRational {
    debug_assert!(
        *a.denom() == BigInt::one() || *a.denom() == BigInt::from(2),
        "expected integer or half-integer, got {a}"
    );
    let mut acc = BigRational::one();
    let mut factor = a.clone();
    for _ in 0..j {
        acc *= &factor;
        factor += BigRational::one();
    }
    acc
}

/// `Γ(n + 1/2) / Γ(1/2) = (2n)! / (4^n n!)`.
pub fn gamma_half_ratio(n: u32) -> BigRational {
    let num = factorial(2 * n);
    let den = (BigInt::one() << (2 * n as usize)) * factorial(n);
    BigRational::new(num, den)
}

/// A weak composition `(k_1, …, k_m)` of `n`: non-negative parts summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
    n: u32,
}

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Iterator over all weak compositions of `n` into `m` parts, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct WeakCompositions {
    next: Option<Vec<u32>>,
    n: u32,
}

/// Every `(k_1, …, k_m)` with `k_i ≥ 0` and `Σ k_i = n`, each exactly once,
/// in lexicographic order. There are `C(n+m-1, m-1)` of them.
///
/// `m = 0` yields nothing.
pub fn weak_compositions(n: u32, m: usize) -> WeakCompositions {
    let next = if m == 0 {
        None
    } else {
        let mut first = vec![0; m];
        first[m - 1] = n;
        Some(first)
    };
    WeakCompositions { next, n }
}

impl Iterator for WeakCompositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let m = current.len();
        // Lexicographic successor: bump the rightmost position that still
        // has mass to its right, then park all remaining mass in the last slot.
        let mut succ = current.clone();
        let mut tail = succ[m - 1];
        let mut i = m - 1;
        while i > 0 {
            i -= 1;
            if tail > 0 {
                succ[i] += 1;
                for s in succ.iter_mut().skip(i + 1) {
                    *s = 0;
                }
                succ[m - 1] = tail - 1;
                self.next = Some(succ);
                break;
            }
            tail += succ[i];
        }
        Some(Composition {
            parts: current,
            n: self.n,
        })
    }
}
