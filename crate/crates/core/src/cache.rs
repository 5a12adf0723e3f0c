//! Persistent tau cache: a versioned, line-oriented text format with entries
//! sorted by key, so files are deterministic and diffs reviewable.
//!
//! ```text
//! qsphere-tau-cache v1
//! engine: <basis conventions>
//! tau <k> <m> <n> := <canonically rendered tensor>
//! ```
//!
//! Writers replace the whole file atomically (write to a sibling temp file,
//! then rename); concurrent command-line invocations are serialized by an
//! advisory lock on a `.lock` sibling.

use crate::expr;
use crate::galois::{PPElement, TauError, TauKey, TauTable};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const MAGIC: &str = "qsphere-tau-cache v1";
pub const ENGINE_PARAMS: &str =
    "engine: s7 basis z1..z4 z1*..z4* elim z4z4*; su2 basis a^k b^m c^n | b^m c^n d^l";

#[derive(Debug)]
pub enum CacheError {
    Io(std::io::Error),
    BadHeader { line: usize, found: String },
    BadEntry { line: usize, message: String },
    Tau(TauError),
}

impl fmt::Display for CacheError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache i/o error: {}", e),
            CacheError::BadHeader { line, found } => write!(
                f,
                "cache version mismatch at line {}: found `{}`",
                line, found
            ),
            CacheError::BadEntry { line, message } => {
                write!(f, "bad cache entry at line {}: {}", line, message)
            }
            CacheError::Tau(e) => write!(f, "cache entry rejected: {}", e),
        }
    }
}

impl std::error::Error for CacheError {}

impl From<std::io::Error> for CacheError {
    fn from(e: std::io::Error) -> Self {
        CacheError::Io(e)
    }
}

impl From<TauError> for CacheError {
    fn from(e: TauError) -> Self {
        CacheError::Tau(e)
    }
}

/// Serialize entries (already sorted by key) to the full file text.
pub fn serialize(entries: &[(TauKey, std::sync::Arc<PPElement>)]) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(ENGINE_PARAMS);
    out.push('\n');
    for (key, value) in entries {
        out.push_str(&format!(
            "tau {} {} {} := {}\n",
            key.k,
            key.m,
            key.n,
            crate::galois::render_pp(value)
        ));
    }
    out
}

/// Parse the full file text into entries.
pub fn parse(text: &str) -> Result<Vec<(TauKey, PPElement)>, CacheError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        Some((i, l)) => {
            return Err(CacheError::BadHeader {
                line: i + 1,
                found: l.to_string(),
            })
        }
        None => {
            return Err(CacheError::BadHeader {
                line: 1,
                found: String::new(),
            })
        }
    }
    match lines.next() {
        Some((_, l)) if l == ENGINE_PARAMS => {}
        Some((i, l)) => {
            return Err(CacheError::BadHeader {
                line: i + 1,
                found: l.to_string(),
            })
        }
        None => {
            return Err(CacheError::BadHeader {
                line: 2,
                found: String::new(),
            })
        }
    }
    let mut entries = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| CacheError::BadEntry {
            line: i + 1,
            message,
        };
        let rest = line
            .strip_prefix("tau ")
            .ok_or_else(|| bad("expected `tau <k> <m> <n> := <tensor>`".to_string()))?;
        let (head, body) = rest
            .split_once(" := ")
            .ok_or_else(|| bad("missing ` := `".to_string()))?;
        let parts: Vec<&str> = head.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(bad("expected three integers".to_string()));
        }
        let k: i64 = parts[0].parse().map_err(|_| bad("bad k".to_string()))?;
        let m: u32 = parts[1].parse().map_err(|_| bad("bad m".to_string()))?;
        let n: u32 = parts[2].parse().map_err(|_| bad("bad n".to_string()))?;
        let value = expr::parse_pp(body).map_err(|e| bad(format!("bad tensor: {}", e)))?;
        entries.push((TauKey::new(k, m, n), value));
    }
    Ok(entries)
}

/// Load a cache file into a table. Entries pass through the table's
/// verification mode, if enabled. Returns the number of entries loaded.
pub fn load_into(table: &TauTable, path: &Path) -> Result<usize, CacheError> {
    let text = fs::read_to_string(path)?;
    let entries = parse(&text)?;
    let count = entries.len();
    for (key, value) in entries {
        table.insert_entry(key, value)?;
    }
    Ok(count)
}

/// Write the table's entries to a file, replacing it atomically.
pub fn save_from(table: &TauTable, path: &Path) -> Result<(), CacheError> {
    let text = serialize(&table.snapshot());
    let tmp: PathBuf = path.with_extension(format!("tmp.{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Advisory lock serializing concurrent invocations against one cache file.
/// The lock is held on a `.lock` sibling and released on drop.
pub struct CacheLock {
    #[cfg(unix)]
    file: fs::File,
}

impl CacheLock {
    pub fn acquire(cache_path: &Path) -> std::io::Result<CacheLock> {
        #[cfg(unix)]
        {
            use std::os::unix::io::AsRawFd;
            let lock_path = cache_path.with_extension("lock");
            let file = fs::OpenOptions::new()
                .create(true)
                .truncate(false)
                .write(true)
                .open(&lock_path)?;
            let rc = unsafe { libc::flock(file.as_raw_fd(), libc::LOCK_EX) };
            if rc != 0 {
                return Err(std::io::Error::last_os_error());
            }
            Ok(CacheLock { file })
        }
        #[cfg(not(unix))]
        {
            let _ = cache_path;
            Ok(CacheLock {})
        }
    }
}

#[cfg(unix)]
impl Drop for CacheLock {
    fn drop(&mut self) {
        use std::os::unix::io::AsRawFd;
        unsafe {
            libc::flock(self.file.as_raw_fd(), libc::LOCK_UN);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serialize_parse_round_trip_is_byte_identical() {
        let table = TauTable::new();
        for (k, m, n) in [(0i64, 0u32, 0u32), (1, 0, 0), (-1, 0, 0), (0, 1, 1), (2, 0, 0)] {
            table.tau(k, m, n).unwrap();
        }
        let text = serialize(&table.snapshot());
        let entries = parse(&text).unwrap();
        let reloaded = TauTable::new();
        for (key, value) in entries {
            reloaded.insert_entry(key, value).unwrap();
        }
        let text2 = serialize(&reloaded.snapshot());
        assert_eq!(text, text2);
    }

    #[test]
    fn rejects_wrong_version() {
        let err = parse("qsphere-tau-cache v0\n").unwrap_err();
        assert!(matches!(err, CacheError::BadHeader { .. }));
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("qsphere-cache-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tau.cache");
        let table = TauTable::new();
        table.tau(1, 1, 0).unwrap();
        let _lock = CacheLock::acquire(&path).unwrap();
        save_from(&table, &path).unwrap();
        let reloaded = TauTable::new();
        let n = load_into(&reloaded, &path).unwrap();
        assert_eq!(n, table.len());
        assert_eq!(serialize(&table.snapshot()), serialize(&reloaded.snapshot()));
        fs::remove_dir_all(&dir).unwrap();
    }
}
