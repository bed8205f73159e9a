use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Runs `f(0..count)` across a pool of `workers` threads and returns the
/// results ordered by index, not by completion.
///
/// Each job owns its state and sees only its index, so fan-out changes
/// throughput but never results; `workers <= 1` degenerates to a plain
/// sequential loop.
pub fn run_indexed<T, F>(count: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if workers <= 1 || count <= 1 {
        return (0..count).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers.min(count) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= count {
                    break;
                }
                let result = f(idx);
                slots.lock().expect("worker poisoned the results").insert_result(idx, result);
            });
        }
    });
    slots
        .into_inner()
        .expect("worker poisoned the results")
        .into_iter()
        .map(|slot| slot.expect("every index was filled"))
        .collect()
}

trait InsertResult<T> {
    fn insert_result(&mut self, idx: usize, value: T);
}

impl<T> InsertResult<T> for Vec<Option<T>> {
    fn insert_result(&mut self, idx: usize, value: T) {
        self[idx] = Some(value);
    }
}
