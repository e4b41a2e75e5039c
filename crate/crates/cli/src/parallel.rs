//! Census split over worker threads. Each worker classifies a contiguous
//! range of tuple indices; shards are merged in index order, so the result
//! does not depend on the worker count.

use ectk_core::oracle::{census_shard, Census};
use ectk_core::{Error, Result, Shape};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub fn parallel_census(shape: &Shape, cap: u64, workers: usize, with_weights: bool) -> Result<Census> {
    let required = shape.total_tuples();
    let total = required
        .to_u64()
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::CapExceeded {
            what: "census",
            required,
            cap: BigUint::from(cap),
        })?;
    let workers = workers.clamp(1, total.max(1) as usize) as u64;
    let bounds: Vec<(u64, u64)> = (0..workers)
        .map(|w| (total * w / workers, total * (w + 1) / workers))
        .collect();
    if workers == 1 {
        return Ok(census_shard(shape, 0, total, with_weights));
    }
    let shards: Vec<Census> = std::thread::scope(|scope| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(start, end)| scope.spawn(move || census_shard(shape, start, end, with_weights)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    Ok(shards
        .into_iter()
        .reduce(Census::merge)
        .unwrap_or_else(|| Census::empty(shape, with_weights)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ectk_core::oracle::{census, DEFAULT_ENUMERATION_CAP};

    #[test]
    fn worker_count_does_not_matter() {
        for sizes in [vec![3, 3], vec![2, 2, 3], vec![1], vec![5]] {
            let s = Shape::new(sizes).unwrap();
            let single = census(&s, DEFAULT_ENUMERATION_CAP).unwrap();
            for workers in [1, 2, 3, 8, 1000] {
                let c = parallel_census(&s, DEFAULT_ENUMERATION_CAP, workers, single.has_weights()).unwrap();
                assert_eq!(c, single, "shape {s} workers {workers}");
            }
        }
    }

    #[test]
    fn respects_cap() {
        let s = Shape::new(vec![3, 3]).unwrap();
        assert!(matches!(parallel_census(&s, 728, 2, false), Err(Error::CapExceeded { .. })));
        assert!(parallel_census(&s, 729, 2, false).is_ok());
    }
}
