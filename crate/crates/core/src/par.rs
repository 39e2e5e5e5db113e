// Order-respecting search helpers. With `parallel` on and requested, work is
// spread over rayon but the result is always the one the sequential scan
// would have returned first.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// First `Some` produced by `f` over `items`, in slice order.
pub(crate) fn find_map_first<T, R, F>(items: &[T], parallel: bool, f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        return items.par_iter().find_map_first(f);
    }
    let _ = parallel;
    items.iter().find_map(f)
}

/// `f` over every item, collected in order.
pub(crate) fn map_collect<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_in_order_regardless_of_mode() {
        let items: Vec<u32> = (0..1000).collect();
        for parallel in [false, true] {
            let hit = find_map_first(&items, parallel, |&x| (x % 97 == 50).then_some(x));
            assert_eq!(hit, Some(50));
            assert_eq!(map_collect(&items[..5], parallel, |x| x * 2), vec![0, 2, 4, 6, 8]);
        }
    }
}
