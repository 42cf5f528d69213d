//! Thin wrappers over the optional rayon backend. With the `parallel`
//! feature disabled these degrade to plain sequential iteration; results are
//! identical either way (order-preserving map, first-in-order search).

#[cfg(feature = "parallel")]
pub fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Index of the first item (in slice order) satisfying `pred`.
#[cfg(feature = "parallel")]
pub fn par_position<T: Sync, F: Fn(&T) -> bool + Sync + Send>(
    items: &[T],
    pred: F,
) -> Option<usize> {
    use rayon::prelude::*;
    items.par_iter().position_first(pred)
}

#[cfg(not(feature = "parallel"))]
pub fn par_position<T, F: Fn(&T) -> bool>(items: &[T], pred: F) -> Option<usize> {
    items.iter().position(|x| pred(x))
}
