//! Odometer-style iteration over index grids.
//!
//! Every divisor-tuple and box sweep in the crate walks tuples with the
//! first coordinate varying fastest; counterexample reporting relies on
//! that order being identical everywhere.

/// Advances `idx` in place; returns false once the grid is exhausted.
/// An empty grid yields exactly one (empty) tuple.
pub(crate) fn advance_indices(idx: &mut [usize], dims: &[usize]) -> bool {
    for i in 0..idx.len() {
        idx[i] += 1;
        if idx[i] < dims[i] {
            return true;
        }
        idx[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coordinate_fastest() {
        let dims = [2usize, 3];
        let mut idx = vec![0usize; 2];
        let mut seen = Vec::new();
        loop {
            seen.push(idx.clone());
            if !advance_indices(&mut idx, &dims) {
                break;
            }
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![0, 2],
                vec![1, 2]
            ]
        );
    }

    #[test]
    fn empty_grid_visits_once() {
        let mut idx: Vec<usize> = vec![];
        let mut visits = 0;
        loop {
            visits += 1;
            if !advance_indices(&mut idx, &[]) {
                break;
            }
        }
        assert_eq!(visits, 1);
    }
}
