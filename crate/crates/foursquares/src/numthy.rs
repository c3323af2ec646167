//! Independent number-theoretic oracles: representation counts by lattice
//! enumeration and the divisor sums that turn the Lambert series coefficients
//! into Jacobi's theorem.
//!
//! Nothing here touches the series identities under test; these functions are
//! the other side of every cross-check.

use thiserror::Error;

use crate::fps::theta_full;
use crate::report::{Discrepancy, VerificationReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumthyError {
    #[error("n must be >= 1, got {0}")]
    ZeroNotAllowed(u64),
    #[error("series order {order} too small for n_max {n_max} (need order >= n_max + 1)")]
    OrderTooSmall { order: usize, n_max: u64 },
}

/// Number of ordered pairs `(x, y)` of integers with `x^2 + y^2 = n`,
/// by direct lattice enumeration over `0 <= x <= sqrt(n)`.
pub fn r2_enumerate(n: u64) -> u64 {
    let mut count = 0;
    let mut x = 0u64;
    while x * x <= n {
        let rest = n - x * x;
        let y = isqrt(rest);
        if y * y == rest {
            let sx = if x == 0 { 1 } else { 2 };
            let sy = if y == 0 { 1 } else { 2 };
            count += sx * sy;
        }
        x += 1;
    }
    count
}

/// Number of ordered signed 4-tuples `(x1, x2, x3, x4)` with
/// `x1^2 + x2^2 + x3^2 + x4^2 = n`.
///
/// Computed as the convolution `r4(n) = sum_{a+b=n} r2(a) * r2(b)` with `r2`
/// by lattice enumeration; never derived from the series identities, so it can
/// serve as their oracle.
pub fn r4_enumerate(n: u64) -> u64 {
    let r2: Vec<u64> = (0..=n).map(r2_enumerate).collect();
    (0..=n).map(|a| r2[a as usize] * r2[(n - a) as usize]).sum()
}

/// All of `r4(0..=n_max)` sharing one `r2` table; same values as
/// [`r4_enumerate`] per index.
pub fn r4_sweep(n_max: u64) -> Vec<u64> {
    let r2: Vec<u64> = (0..=n_max).map(r2_enumerate).collect();
    (0..=n_max)
        .map(|n| (0..=n).map(|a| r2[a as usize] * r2[(n - a) as usize]).sum())
        .collect()
}

/// Sorted divisors of `n >= 1` by trial division up to `sqrt(n)`.
fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Sum of the divisors of `n` that are not multiples of 4.
pub fn sigma_not4(n: u64) -> Result<u64, NumthyError> {
    if n == 0 {
        return Err(NumthyError::ZeroNotAllowed(0));
    }
    Ok(divisors(n).into_iter().filter(|d| d % 4 != 0).sum())
}

/// The signed divisor sum `sum_{r|n} (-1)^{(r+1)(n/r+1)} r`: each divisor `r`
/// enters with `-1` exactly when `r` and `n/r` are both even.
pub fn weighted_divisor_sum(n: u64) -> Result<i64, NumthyError> {
    if n == 0 {
        return Err(NumthyError::ZeroNotAllowed(0));
    }
    Ok(divisors(n)
        .into_iter()
        .map(|r| {
            let minus = (r + 1) % 2 == 1 && (n / r + 1) % 2 == 1;
            if minus {
                -(r as i64)
            } else {
                r as i64
            }
        })
        .sum())
}

/// Verify the three-way rewriting of the signed divisor sum:
///
/// `sigma(n) - 2 * sum_{r|n, r and n/r even} r
///   = sigma(n) - sum_{d|n, 4|d} d
///   = sum_{d|n, 4 !| d} d
///   = sum_{r|n} (-1)^{(r+1)(n/r+1)} r`.
///
/// The report params carry all four values; on failure the discrepancy slots
/// `power = n`, `expected` = the first expression, `got` = the first member
/// that disagrees with it.
pub fn divisor_chain_check(n: u64) -> Result<VerificationReport, NumthyError> {
    if n == 0 {
        return Err(NumthyError::ZeroNotAllowed(0));
    }
    let ds = divisors(n);
    let sigma: u64 = ds.iter().sum();
    let both_even: u64 = ds.iter().filter(|&&r| r % 2 == 0 && (n / r) % 2 == 0).sum();
    let by_parity = sigma as i64 - 2 * both_even as i64;
    let mult4: u64 = ds.iter().filter(|&&d| d % 4 == 0).sum();
    let by_mult4 = sigma as i64 - mult4 as i64;
    let direct = sigma_not4(n)? as i64;
    let weighted = weighted_divisor_sum(n)?;

    let params: &[(&str, i64)] = &[
        ("n", n as i64),
        ("by_parity", by_parity),
        ("by_mult4", by_mult4),
        ("sigma_not4", direct),
        ("weighted", weighted),
    ];
    let subject = format!("divisor chain n={n}");
    for &(got, label) in &[
        (by_mult4, "by_mult4"),
        (direct, "sigma_not4"),
        (weighted, "weighted"),
    ] {
        if got != by_parity {
            let mut rep = VerificationReport::fail(
                subject,
                1,
                params,
                Discrepancy {
                    power: n as usize,
                    expected: by_parity.into(),
                    got: got.into(),
                },
            );
            rep.params.insert("failed_member".into(), 0);
            rep.subject.push_str(&format!(" ({label} differs)"));
            return Ok(rep);
        }
    }
    Ok(VerificationReport::pass(subject, 1, params))
}

/// For every `1 <= n <= n_max`, check that the coefficient of `q^n` in
/// `theta_full^4` equals `r4(n)` from the enumeration oracle, and that both
/// equal `8 * sigma_not4(n)`. Requires `order >= n_max + 1`.
pub fn jacobi_check(n_max: u64, order: usize) -> Result<VerificationReport, NumthyError> {
    if n_max == 0 {
        return Err(NumthyError::ZeroNotAllowed(0));
    }
    if order < (n_max as usize) + 1 {
        return Err(NumthyError::OrderTooSmall { order, n_max });
    }
    let theta4 = theta_full(order).pow(4);
    let r4 = r4_sweep(n_max);
    let subject = format!("four-square counts vs 8*sigma_not4, n <= {n_max}");
    let params: &[(&str, i64)] = &[("n_max", n_max as i64), ("N", order as i64)];
    for n in 1..=n_max {
        let coeff = theta4.coeff(n as usize).expect("order checked above");
        let enumerated = r4[n as usize];
        if *coeff != enumerated.into() {
            return Ok(VerificationReport::fail(
                subject,
                order,
                params,
                Discrepancy {
                    power: n as usize,
                    expected: enumerated.into(),
                    got: coeff.clone(),
                },
            ));
        }
        let eight_sigma = 8 * sigma_not4(n)?;
        if enumerated != eight_sigma {
            return Ok(VerificationReport::fail(
                subject,
                order,
                params,
                Discrepancy {
                    power: n as usize,
                    expected: eight_sigma.into(),
                    got: enumerated.into(),
                },
            ));
        }
    }
    Ok(VerificationReport::pass(subject, order, params))
}

fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    while x * x > n {
        x -= 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_small_values() {
        // OEIS A004018
        let expected = [1u64, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(r2_enumerate(n as u64), e, "r2({n})");
        }
    }

    #[test]
    fn r4_small_values() {
        assert_eq!(r4_enumerate(0), 1); // only the zero vector
        assert_eq!(r4_enumerate(1), 8); // 4 positions, 2 signs
        assert_eq!(r4_enumerate(2), 24);
        assert_eq!(r4_enumerate(3), 32);
        assert_eq!(r4_enumerate(4), 24);
    }

    #[test]
    fn r4_matches_brute_force_enumeration() {
        // truly independent route: four nested loops over signed integers
        let brute = |n: i64| -> u64 {
            let b = (n as f64).sqrt() as i64 + 1;
            let mut count = 0;
            for x1 in -b..=b {
                for x2 in -b..=b {
                    for x3 in -b..=b {
                        for x4 in -b..=b {
                            if x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4 == n {
                                count += 1;
                            }
                        }
                    }
                }
            }
            count
        };
        for n in 0..=30u64 {
            assert_eq!(r4_enumerate(n), brute(n as i64), "r4({n})");
        }
    }

    #[test]
    fn sweep_agrees_with_single_calls() {
        let sweep = r4_sweep(40);
        for n in 0..=40u64 {
            assert_eq!(sweep[n as usize], r4_enumerate(n));
        }
    }

    #[test]
    fn sigma_not4_values() {
        assert_eq!(sigma_not4(1).unwrap(), 1);
        assert_eq!(sigma_not4(4).unwrap(), 3); // divisors 1,2; 4 excluded
        assert_eq!(sigma_not4(12).unwrap(), 12); // 1+2+3+6; 4 and 12 excluded
        assert_eq!(sigma_not4(16).unwrap(), 3);
        assert_eq!(sigma_not4(0), Err(NumthyError::ZeroNotAllowed(0)));
    }

    #[test]
    fn weighted_divisor_sum_values() {
        assert_eq!(weighted_divisor_sum(1).unwrap(), 1);
        assert_eq!(weighted_divisor_sum(2).unwrap(), 3);
        assert_eq!(weighted_divisor_sum(8).unwrap(), 3);
        assert_eq!(weighted_divisor_sum(0), Err(NumthyError::ZeroNotAllowed(0)));
    }

    #[test]
    fn divisor_chain_members_agree() {
        for n in [1u64, 6, 12, 16, 48, 97, 360] {
            let rep = divisor_chain_check(n).unwrap();
            assert!(rep.passed(), "chain failed at n={n}: {:?}", rep);
        }
        let rep = divisor_chain_check(6).unwrap();
        assert_eq!(rep.params["sigma_not4"], 12);
    }

    #[test]
    fn jacobi_check_small_range() {
        let rep = jacobi_check(50, 51).unwrap();
        assert!(rep.passed());
        assert_eq!(
            jacobi_check(50, 50),
            Err(NumthyError::OrderTooSmall { order: 50, n_max: 50 })
        );
        assert_eq!(jacobi_check(0, 10), Err(NumthyError::ZeroNotAllowed(0)));
    }
}
