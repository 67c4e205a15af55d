use std::fs;
use std::io::Read;
use std::path::Path;

use tempotw::io::parse_temporal_graph;
use tempotw::TemporalGraph;

use crate::args::Format;
use crate::error::{CliError, CliResult};

/// File contents, with `-` meaning standard input.
pub fn read_text(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_graph(path: &Path) -> CliResult<TemporalGraph> {
    let text = read_text(path)?;
    parse_temporal_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// The requested format if it is one of `allowed`, else the first entry.
pub fn pick(format: Option<Format>, allowed: &[Format]) -> CliResult<Format> {
    match format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(CliError::Usage(
            format!("format {f:?} is not available here").to_lowercase(),
        )),
    }
}

pub fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values always serialize")
    );
}
