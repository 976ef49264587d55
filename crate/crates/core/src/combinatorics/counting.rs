//! Integer counting helpers (u128, exact up to 34!).

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Falling factorial `(n)_t = n(n-1)...(n-t+1)`; zero when `t > n`.
pub fn falling_factorial(n: usize, t: usize) -> u128 {
    if t > n {
        return 0;
    }
    ((n - t + 1) as u128..=n as u128).product()
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Rank of a sorted `k`-subset of `0..n` among all `k`-subsets in lexicographic order.
pub(crate) fn combination_rank(n: usize, subset: &[usize]) -> usize {
    let k = subset.len();
    let mut rank = 0usize;
    let mut prev = 0usize;
    for (i, &x) in subset.iter().enumerate() {
        for v in prev..x {
            rank += binomial(n - v - 1, k - i - 1) as usize;
        }
        prev = x + 1;
    }
    rank
}

/// Rank of an ordered tuple of distinct values from `0..n` among all such `t`-tuples
/// in lexicographic order.
pub(crate) fn arrangement_rank(n: usize, tuple: &[usize]) -> usize {
    let t = tuple.len();
    let mut rank = 0usize;
    let mut used = 0u64;
    for (i, &x) in tuple.iter().enumerate() {
        let smaller_free = (0..x).filter(|v| used & (1 << v) == 0).count();
        rank += smaller_free * falling_factorial(n - i - 1, t - i - 1) as usize;
        used |= 1 << x;
    }
    rank
}

/// All sorted `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All ordered `t`-tuples of distinct values from `0..n` in lexicographic order.
pub(crate) fn arrangements(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(n: usize, t: usize, used: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if used & (1 << v) == 0 {
                cur.push(v);
                rec(n, t, used | (1 << v), cur, out);
                cur.pop();
            }
        }
    }
    rec(n, t, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(7), 5040);
        assert_eq!(falling_factorial(7, 2), 42);
        assert_eq!(falling_factorial(3, 4), 0);
        assert_eq!(binomial(7, 2), 21);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn ranks_follow_enumeration_order() {
        for (i, c) in combinations(6, 3).iter().enumerate() {
            assert_eq!(combination_rank(6, c), i);
        }
        for (i, a) in arrangements(5, 3).iter().enumerate() {
            assert_eq!(arrangement_rank(5, a), i);
        }
        assert_eq!(arrangements(5, 3).len(), 60);
    }
}
