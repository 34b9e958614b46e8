use std::fs;
use std::path::Path;

use hfree::catalog::make;
use hfree::Graph;

use crate::CliError;

/// Resolves a graph argument. An existing file is read as an edge list or,
/// failing that, as a graph6 line. Anything else is tried as a catalog name
/// and then as a graph6 string.
pub fn load_graph(arg: &str) -> Result<Graph, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io {
            path: arg.to_string(),
            reason: e.to_string(),
        })?;
        if let Ok(g) = Graph::from_edge_list(&text) {
            return Ok(g);
        }
        let line = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
        return Graph::from_graph6(line).map_err(|e| CliError::GraphFile {
            path: arg.to_string(),
            reason: e.to_string(),
        });
    }
    let catalog = match make(arg) {
        Ok(g) => return Ok(g),
        Err(e) => e,
    };
    Graph::from_graph6(arg.trim()).map_err(|graph6| CliError::GraphArg {
        arg: arg.to_string(),
        catalog: catalog.to_string(),
        graph6: graph6.to_string(),
    })
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        reason: e.to_string(),
    })
}

pub fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io {
        path: path.to_string(),
        reason: e.to_string(),
    })
}

/// `0->3 1->0 2->1`
pub fn format_map(map: &[usize]) -> String {
    map.iter()
        .enumerate()
        .map(|(u, v)| format!("{u}->{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}
