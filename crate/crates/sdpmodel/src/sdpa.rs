use crate::error::SdpError;
use crate::problem::SdpProblem;
use std::path::Path;
use symcore::SymMatrix;

/// Loads a single-block SDPA sparse (`.dat-s`) file.
///
/// Layout: optional comment lines starting with `*` or `"`; then the number
/// of constraint matrices `m`; the number of blocks (only 1 accepted); the
/// block sizes (only a positive size accepted); the `m` values of `b`; and
/// entry lines `matno blkno i j value` with 1-based `i <= j` and `matno 0`
/// denoting the cost matrix. The stored objective is the minimized
/// `<C, X>` of the primal standard form.
pub fn load_sdpa(path: impl AsRef<Path>) -> Result<SdpProblem, SdpError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| SdpError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_sdpa(&text)
}

/// Splits a header line on whitespace, commas, and brace punctuation.
fn tokens(line: &str) -> Vec<&str> {
    line.split(|c: char| c.is_whitespace() || matches!(c, ',' | '{' | '}' | '(' | ')'))
        .filter(|t| !t.is_empty())
        .collect()
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, SdpError> {
    tok.parse().map_err(|_| SdpError::Parse {
        line,
        message: format!("cannot parse number from {tok:?}"),
    })
}

/// Parses SDPA sparse text; see [`load_sdpa`].
pub fn parse_sdpa(text: &str) -> Result<SdpProblem, SdpError> {
    // Pair each remaining line with its 1-based position for diagnostics.
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('*') && !l.starts_with('"'));

    let mut next_line = |what: &str| {
        lines.next().ok_or(SdpError::Parse {
            line: 0,
            message: format!("unexpected end of file, expected {what}"),
        })
    };

    let (ln, l) = next_line("constraint count")?;
    let m: usize = parse_num(tokens(l)[0], ln)?;

    let (ln, l) = next_line("block count")?;
    let nblocks: usize = parse_num(tokens(l)[0], ln)?;

    let (ln, l) = next_line("block sizes")?;
    let sizes: Vec<i64> = tokens(l)
        .iter()
        .map(|t| parse_num::<i64>(t, ln))
        .collect::<Result<_, _>>()?;
    if nblocks != 1 || sizes.len() != 1 || sizes[0] <= 0 {
        return Err(SdpError::UnsupportedStructure { block_sizes: sizes });
    }
    let n = sizes[0] as usize;

    let (ln, l) = next_line("right-hand side")?;
    let b: Vec<f64> = tokens(l)
        .iter()
        .map(|t| parse_num::<f64>(t, ln))
        .collect::<Result<_, _>>()?;
    if b.len() != m {
        return Err(SdpError::Parse {
            line: ln,
            message: format!("expected {m} right-hand side values, found {}", b.len()),
        });
    }

    let mut c = SymMatrix::zeros(n);
    let mut a_mats = vec![SymMatrix::zeros(n); m];
    for (ln, l) in lines {
        let toks = tokens(l);
        if toks.len() != 5 {
            return Err(SdpError::Parse {
                line: ln,
                message: format!("expected `matno blkno i j value`, found {} fields", toks.len()),
            });
        }
        let matno: usize = parse_num(toks[0], ln)?;
        let blkno: usize = parse_num(toks[1], ln)?;
        let i: usize = parse_num(toks[2], ln)?;
        let j: usize = parse_num(toks[3], ln)?;
        let value: f64 = parse_num(toks[4], ln)?;
        if blkno != 1 {
            return Err(SdpError::Parse {
                line: ln,
                message: format!("block {blkno} referenced in a single-block file"),
            });
        }
        if i > j {
            return Err(SdpError::Parse {
                line: ln,
                message: format!("entry has i = {i} > j = {j}; upper-triangle indices required"),
            });
        }
        if j > n || i == 0 {
            return Err(SdpError::Parse {
                line: ln,
                message: format!("index ({i}, {j}) outside 1..={n}"),
            });
        }
        if matno > m {
            return Err(SdpError::Parse {
                line: ln,
                message: format!("matrix index {matno} exceeds constraint count {m}"),
            });
        }
        let target = if matno == 0 { &mut c } else { &mut a_mats[matno - 1] };
        target.set(i - 1, j - 1, value);
    }

    SdpProblem::new(a_mats, b, c)
}
