//! Lexicographic subset enumeration.

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

/// All `k`-subsets of `0..n` as sorted vectors, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Subsets {
    Subsets { n, current: if k <= n { Some((0..k).collect()) } else { None } }
}

/// All `k`-subsets of `items` (kept in the order of `items`).
pub fn subsets_of<'a>(items: &'a [usize], k: usize) -> impl Iterator<Item = Vec<usize>> + 'a {
    subsets(items.len(), k).map(move |idx| idx.into_iter().map(|i| items[i]).collect())
}

pub struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}
