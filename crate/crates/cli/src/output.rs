//! Atomic file emission.

use kisslab_core::{Error, Result};
use std::io::Write;
use std::path::Path;

/// Write to stdout, or atomically (temp + rename) to the given path.
pub fn emit(payload: &str, out: Option<&Path>) -> Result<()> {
    match out {
        None => {
            print!("{payload}");
            std::io::stdout().flush().map_err(|e| Error::Io(e.to_string()))
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let tmp = match dir {
                Some(d) => d.join(format!(
                    ".{}.tmp",
                    path.file_name().and_then(|n| n.to_str()).unwrap_or("kisslab-out")
                )),
                None => std::path::PathBuf::from(format!(
                    ".{}.tmp",
                    path.file_name().and_then(|n| n.to_str()).unwrap_or("kisslab-out")
                )),
            };
            std::fs::write(&tmp, payload).map_err(|e| Error::Io(e.to_string()))?;
            std::fs::rename(&tmp, path).map_err(|e| Error::Io(e.to_string()))
        }
    }
}
