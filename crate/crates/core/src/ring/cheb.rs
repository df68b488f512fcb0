use super::Scalar;

/// `omega_n(x)`: `omega_0 = 0`, `omega_1 = 1`, `omega_{n+1} = x omega_n - omega_{n-1}`,
/// extended by `omega_{-n} = -omega_n`.
///
/// With `x = eta + 1/eta` this is `(eta^n - eta^-n) / (eta - eta^-1)`; the
/// recurrence also covers `eta = +-1` without special casing.
pub fn cheb_omega<S: Scalar>(n: i64, x: &S) -> S {
    let cur = chebyshev_pair(n.unsigned_abs(), x, S::zero(), S::one()).1;
    if n < 0 {
        -cur
    } else {
        cur
    }
}

/// `theta_n(x) = eta^n + eta^-n` for `x = eta + 1/eta`; even in `n`.
pub fn cheb_theta<S: Scalar>(n: i64, x: &S) -> S {
    chebyshev_pair(n.unsigned_abs(), x, S::from_i64(2), x.clone()).1
}

/// Runs the three-term recurrence from `(f_0, f_1)` and returns `(f_{n-1}, f_n)`.
fn chebyshev_pair<S: Scalar>(n: u64, x: &S, f0: S, f1: S) -> (S, S) {
    if n == 0 {
        // f_{-1} is irrelevant to callers at n = 0
        return (S::zero(), f0);
    }
    let (mut prev, mut cur) = (f0, f1);
    for _ in 1..n {
        let next = x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    (prev, cur)
}
