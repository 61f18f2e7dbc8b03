/// All weak orders on `n` vertices as level vectors, in lexicographic order.
///
/// A level vector `l` uses exactly the levels `0..k` for some `k`; vertices
/// on higher levels rank higher. There are Fubini(n) of them.
pub fn weak_orders(n: usize) -> WeakOrders {
    let mut out = Vec::new();
    let mut levels = Vec::with_capacity(n);
    let mut used = vec![0usize; n.max(1)];
    collect(n, &mut levels, &mut used, &mut out);
    WeakOrders {
        inner: out.into_iter(),
    }
}

#[derive(Debug, Clone)]
pub struct WeakOrders {
    inner: std::vec::IntoIter<Vec<usize>>,
}

impl Iterator for WeakOrders {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.inner.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for WeakOrders {}

fn collect(n: usize, levels: &mut Vec<usize>, used: &mut [usize], out: &mut Vec<Vec<usize>>) {
    let top = levels.iter().copied().max();
    let missing = top.map_or(0, |m| (0..m).filter(|&l| used[l] == 0).count());
    let remaining = n - levels.len();
    if missing > remaining {
        return;
    }
    if remaining == 0 {
        out.push(levels.clone());
        return;
    }
    for level in 0..n {
        levels.push(level);
        used[level] += 1;
        collect(n, levels, used, out);
        used[level] -= 1;
        levels.pop();
    }
}
