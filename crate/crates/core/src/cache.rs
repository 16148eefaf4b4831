//! Per-(k, n) memoization of precomputed tables.

use crate::error::Result;
use std::any::Any;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type Slot = Arc<dyn Any + Send + Sync>;

fn store() -> &'static Mutex<HashMap<(&'static str, usize, usize), Slot>> {
    static S: OnceLock<Mutex<HashMap<(&'static str, usize, usize), Slot>>> = OnceLock::new();
    S.get_or_init(Default::default)
}

/// Fetch the table `tag` for `(k, n)`, building it on first use.
pub(crate) fn cached<T, F>(tag: &'static str, k: usize, n: usize, build: F) -> Result<Arc<T>>
where
    T: Send + Sync + 'static,
    F: FnOnce() -> Result<T>,
{
    if let Some(hit) = store().lock().expect("cache poisoned").get(&(tag, k, n)) {
        return Ok(hit.clone().downcast::<T>().expect("cache tag reused with another type"));
    }
    let built: Arc<T> = Arc::new(build()?);
    let mut guard = store().lock().expect("cache poisoned");
    let slot = guard.entry((tag, k, n)).or_insert_with(|| built.clone() as Slot);
    Ok(slot.clone().downcast::<T>().expect("cache tag reused with another type"))
}
