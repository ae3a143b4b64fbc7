//! Persistent memo for the recursive composition count.
//!
//! Format: the header line `compolab-memo v1`, then one `n m value` line per
//! cell. A cache that fails to parse or fails a spot check is discarded with a
//! warning; it never changes a result.

use std::io::Write;
use std::path::Path;

use rand::Rng;

use crate::closedform::{comp_count_explicit, MemoStore};
use crate::BigNat;

pub const CACHE_HEADER: &str = "compolab-memo v1";

fn parse_cache(text: &str) -> Result<Vec<(usize, usize, BigNat)>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CACHE_HEADER => {}
        Some(h) => return Err(format!("unexpected header `{h}`")),
        None => return Err("empty file".into()),
    }
    let mut cells = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<_> = line.split_whitespace().collect();
        let [n, m, v] = fields[..] else {
            return Err(format!("line {}: expected `n m value`", i + 2));
        };
        let bad = |what: &str| format!("line {}: bad {what}", i + 2);
        let n: usize = n.parse().map_err(|_| bad("n"))?;
        let m: usize = m.parse().map_err(|_| bad("m"))?;
        let v: BigNat = v.parse().map_err(|_| bad("value"))?;
        if m > n {
            return Err(format!("line {}: m = {m} exceeds n = {n}", i + 2));
        }
        cells.push((n, m, v));
    }
    Ok(cells)
}

/// Checks each cell `(n, m)` by recomputing one randomly chosen dependency
/// `(i + j, j)` of its recursion with the explicit formula. The dependency is
/// compared with its cached value when present, otherwise the cell itself is
/// compared.
fn spot_check(store: &MemoStore, rng: &mut impl Rng) -> Result<(), String> {
    for ((n, m), v) in store.cells() {
        let (dn, dm) = if n == m {
            (n, m)
        } else {
            let i = rng.gen_range(0..n - m);
            let j = rng.gen_range(0..=m);
            (i + j, j)
        };
        let (cn, cm, cached) = match store.get(dn, dm) {
            Some(dv) => (dn, dm, dv),
            None => (n, m, v),
        };
        let fresh = comp_count_explicit(cn, cm).map_err(|e| e.to_string())?;
        if &fresh != cached {
            return Err(format!(
                "cell ({cn}, {cm}) holds {cached}, expected {fresh}"
            ));
        }
    }
    Ok(())
}

/// Loads a cache, returning an empty store (after a warning on `err`) when
/// the file is missing, unreadable, malformed or fails validation.
pub fn load_cache(path: &Path, err: &mut dyn Write) -> MemoStore {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return MemoStore::new(),
        Err(e) => {
            let _ = writeln!(err, "warning: ignoring cache {}: {e}", path.display());
            return MemoStore::new();
        }
    };
    let mut store = MemoStore::new();
    match parse_cache(&text) {
        Ok(cells) => {
            for (n, m, v) in cells {
                store.insert(n, m, v);
            }
        }
        Err(e) => {
            let _ = writeln!(err, "warning: ignoring cache {}: {e}", path.display());
            return MemoStore::new();
        }
    }
    if let Err(e) = spot_check(&store, &mut rand::thread_rng()) {
        let _ = writeln!(err, "warning: ignoring cache {}: {e}", path.display());
        return MemoStore::new();
    }
    store
}

pub fn save_cache(path: &Path, store: &MemoStore) -> std::io::Result<()> {
    let mut text = String::from(CACHE_HEADER);
    text.push('\n');
    for ((n, m), v) in store.cells() {
        text.push_str(&format!("{n} {m} {v}\n"));
    }
    std::fs::write(path, text)
}
