//! Matrix Market, whitespace edge-list and binary CSR cache I/O.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{BuildOptions, CooGraph, CsrGraph, VertexId, Weight};
use crate::error::GraphError;

/// First eight bytes of a binary CSR cache file.
pub const BINARY_MAGIC: [u8; 8] = *b"GRAPHFX\0";
pub const BINARY_VERSION: u32 = 1;

const FLAG_WEIGHTED: u32 = 1;
const FLAG_UNDIRECTED: u32 = 1 << 1;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> GraphError + '_ {
    move |source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn build_opts(make_undirected: bool) -> BuildOptions {
    if make_undirected {
        BuildOptions::undirected()
    } else {
        BuildOptions::directed()
    }
}

/// Loads a Matrix Market coordinate file, or a whitespace edge list when the
/// Matrix Market banner is absent.
pub fn load_matrix_market(
    path: impl AsRef<Path>,
    make_undirected: bool,
) -> Result<CsrGraph, GraphError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_err(path))?;
    let mut reader = BufReader::new(file);
    let is_mm = reader
        .fill_buf()
        .map_err(io_err(path))?
        .starts_with(b"%%MatrixMarket");
    if is_mm {
        parse_matrix_market(reader, make_undirected)
    } else {
        parse_edge_list(reader, make_undirected, 0)
    }
}

/// Loads any supported format: binary cache (by magic), Matrix Market, or
/// edge list.
pub fn load_graph(path: impl AsRef<Path>, make_undirected: bool) -> Result<CsrGraph, GraphError> {
    let path = path.as_ref();
    let mut file = File::open(path).map_err(io_err(path))?;
    let mut magic = [0u8; 8];
    let n = file.read(&mut magic).map_err(io_err(path))?;
    if n == magic.len() && magic == BINARY_MAGIC {
        return read_binary(path);
    }
    load_matrix_market(path, make_undirected)
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        message: format!("cannot parse {what} from {tok:?}"),
    })
}

fn parse_weight(tok: Option<&str>, line: usize, integer: bool) -> Result<Weight, GraphError> {
    let value: f64 = if integer {
        parse_num::<i64>(tok, line, "weight")? as f64
    } else {
        parse_num(tok, line, "weight")?
    };
    if value < 0.0 {
        return Err(GraphError::NegativeWeight { line, value });
    }
    if value > Weight::MAX as f64 {
        return Err(GraphError::Parse {
            line,
            message: format!("weight {value} exceeds 32 bits"),
        });
    }
    Ok(value.round() as Weight)
}

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Pattern,
    Integer,
    Real,
}

/// Parses Matrix Market `coordinate` data (1-based indices).
///
/// `general` and `symmetric` storage are accepted; symmetric entries are
/// mirrored. Real values are rounded to the nearest integer weight.
pub fn parse_matrix_market<R: BufRead>(
    reader: R,
    make_undirected: bool,
) -> Result<CsrGraph, GraphError> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (lineno, banner) = lines
        .next()
        .ok_or(GraphError::Parse {
            line: 1,
            message: "empty file".into(),
        })?;
    let banner = banner.map_err(|e| GraphError::Parse {
        line: lineno,
        message: e.to_string(),
    })?;
    let toks: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    if toks.len() < 5 || toks[0] != "%%matrixmarket" || toks[1] != "matrix" {
        return Err(GraphError::Parse {
            line: 1,
            message: "missing %%MatrixMarket matrix banner".into(),
        });
    }
    if toks[2] != "coordinate" {
        return Err(GraphError::Parse {
            line: 1,
            message: format!("unsupported format {:?}", toks[2]),
        });
    }
    let field = match toks[3].as_str() {
        "pattern" => Field::Pattern,
        "integer" => Field::Integer,
        "real" | "double" => Field::Real,
        other => {
            return Err(GraphError::Parse {
                line: 1,
                message: format!("unsupported field {other:?}"),
            })
        }
    };
    let symmetric = match toks[4].as_str() {
        "general" => false,
        "symmetric" | "skew-symmetric" | "hermitian" => true,
        other => {
            return Err(GraphError::Parse {
                line: 1,
                message: format!("unsupported symmetry {other:?}"),
            })
        }
    };

    let mut header: Option<(usize, usize, usize)> = None;
    let mut coo = CooGraph::new(0);
    let mut seen = 0usize;
    let mut last_line = lineno;
    for (lineno, line) in lines {
        last_line = lineno;
        let line = line.map_err(|e| GraphError::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let mut it = line.split_whitespace();
        let Some((rows, cols, nnz)) = header else {
            let rows: usize = parse_num(it.next(), lineno, "row count")?;
            let cols: usize = parse_num(it.next(), lineno, "column count")?;
            let nnz: usize = parse_num(it.next(), lineno, "entry count")?;
            header = Some((rows, cols, nnz));
            coo = CooGraph::new(rows.max(cols));
            if field != Field::Pattern {
                coo.weights = Some(Vec::with_capacity(nnz));
            }
            continue;
        };
        if seen == nnz {
            return Err(GraphError::Parse {
                line: lineno,
                message: format!("more than the declared {nnz} entries"),
            });
        }
        let i: usize = parse_num(it.next(), lineno, "row index")?;
        let j: usize = parse_num(it.next(), lineno, "column index")?;
        if i == 0 || i > rows || j == 0 || j > cols {
            return Err(GraphError::Parse {
                line: lineno,
                message: format!("entry ({i}, {j}) outside {rows} x {cols}"),
            });
        }
        let (u, v) = ((i - 1) as VertexId, (j - 1) as VertexId);
        if field == Field::Pattern {
            coo.push(u, v);
            if symmetric && u != v {
                coo.push(v, u);
            }
        } else {
            let w = parse_weight(it.next(), lineno, field == Field::Integer)?;
            coo.push_weighted(u, v, w);
            if symmetric && u != v {
                coo.push_weighted(v, u, w);
            }
        }
        seen += 1;
    }
    let Some((_, _, nnz)) = header else {
        return Err(GraphError::Parse {
            line: last_line,
            message: "missing size line".into(),
        });
    };
    if seen != nnz {
        return Err(GraphError::Parse {
            line: last_line,
            message: format!("declared {nnz} entries, found {seen}"),
        });
    }
    coo.to_csr(build_opts(make_undirected))
}

/// Parses a whitespace-separated edge list (`src dst [weight]`, 0-based).
///
/// Lines starting with `#` or `%` are comments. The vertex count is one past
/// the largest id seen, but never less than `min_vertices`.
pub fn parse_edge_list<R: BufRead>(
    reader: R,
    make_undirected: bool,
    min_vertices: usize,
) -> Result<CsrGraph, GraphError> {
    let mut coo = CooGraph::new(0);
    let mut max_id: Option<u64> = None;
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| GraphError::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut it = line.split_whitespace();
        let u: u64 = parse_num(it.next(), lineno, "source id")?;
        let v: u64 = parse_num(it.next(), lineno, "destination id")?;
        if u >= u32::MAX as u64 || v >= u32::MAX as u64 {
            return Err(GraphError::Parse {
                line: lineno,
                message: "vertex id exceeds 32 bits".into(),
            });
        }
        max_id = Some(max_id.unwrap_or(0).max(u).max(v));
        match it.next() {
            Some(tok) => {
                let w = parse_weight(Some(tok), lineno, false)?;
                coo.push_weighted(u as VertexId, v as VertexId, w);
            }
            None => coo.push(u as VertexId, v as VertexId),
        }
    }
    coo.num_vertices = max_id.map_or(0, |m| m as usize + 1).max(min_vertices);
    coo.to_csr(build_opts(make_undirected))
}

/// Writes the binary cache: magic, version, flags, n, m, then row offsets
/// (u64), column indices (u32) and, when weighted, weights (u32). All
/// little-endian.
pub fn write_binary(g: &CsrGraph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    let mut flags = 0u32;
    if g.is_weighted() {
        flags |= FLAG_WEIGHTED;
    }
    if g.is_undirected() {
        flags |= FLAG_UNDIRECTED;
    }
    let write = |w: &mut BufWriter<File>| -> std::io::Result<()> {
        w.write_all(&BINARY_MAGIC)?;
        w.write_all(&BINARY_VERSION.to_le_bytes())?;
        w.write_all(&flags.to_le_bytes())?;
        w.write_all(&(g.num_vertices() as u64).to_le_bytes())?;
        w.write_all(&(g.num_edges() as u64).to_le_bytes())?;
        for &r in g.row_offsets() {
            w.write_all(&(r as u64).to_le_bytes())?;
        }
        for &c in g.column_indices() {
            w.write_all(&c.to_le_bytes())?;
        }
        if let Some(ws) = g.edge_weights() {
            for &x in ws {
                w.write_all(&x.to_le_bytes())?;
            }
        }
        w.flush()
    };
    write(&mut w).map_err(io_err(path))
}

fn read_u32s(r: &mut impl Read, count: usize) -> std::io::Result<Vec<u32>> {
    let mut buf = vec![0u8; count * 4];
    r.read_exact(&mut buf)?;
    Ok(buf
        .chunks_exact(4)
        .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
        .collect())
}

fn read_u64s(r: &mut impl Read, count: usize) -> std::io::Result<Vec<u64>> {
    let mut buf = vec![0u8; count * 8];
    r.read_exact(&mut buf)?;
    Ok(buf
        .chunks_exact(8)
        .map(|b| u64::from_le_bytes(b.try_into().unwrap()))
        .collect())
}

/// Reads a cache written by [`write_binary`].
pub fn read_binary(path: impl AsRef<Path>) -> Result<CsrGraph, GraphError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_err(path))?;
    let mut r = BufReader::new(file);
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic).map_err(io_err(path))?;
    if magic != BINARY_MAGIC {
        return Err(GraphError::BadCache("wrong magic bytes".into()));
    }
    let head = read_u32s(&mut r, 2).map_err(io_err(path))?;
    let (version, flags) = (head[0], head[1]);
    if version != BINARY_VERSION {
        return Err(GraphError::BadCache(format!("unsupported version {version}")));
    }
    let sizes = read_u64s(&mut r, 2).map_err(io_err(path))?;
    let (n, m) = (sizes[0] as usize, sizes[1] as usize);
    let offsets = read_u64s(&mut r, n + 1).map_err(io_err(path))?;
    let cols = read_u32s(&mut r, m).map_err(io_err(path))?;
    let weights = if flags & FLAG_WEIGHTED != 0 {
        Some(read_u32s(&mut r, m).map_err(io_err(path))?)
    } else {
        None
    };
    let mut trailing = [0u8; 1];
    if r.read(&mut trailing).map_err(io_err(path))? != 0 {
        return Err(GraphError::BadCache("trailing bytes after arrays".into()));
    }
    CsrGraph::from_parts(
        offsets.into_iter().map(|o| o as usize).collect(),
        cols,
        weights,
        flags & FLAG_UNDIRECTED != 0,
    )
    .map_err(|e| GraphError::BadCache(e.to_string()))
}
