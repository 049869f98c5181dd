use super::cut::CutReport;
use super::lazy::LazyChain;
use super::{ChainError, ChainIndex};

/// One row per cut: `x0,row,verdict,gap,witness`. An infinite gap is `inf`.
pub fn cut_csv(reports: &[CutReport]) -> Result<String, ChainError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| ChainError::Shape(format!("csv: {e}"));
    w.write_record(["x0", "row", "verdict", "gap", "witness"]).map_err(io)?;
    for r in reports {
        let gap = r.gap.map_or_else(|| "inf".to_string(), |g| g.to_string());
        let witness = match &r.verdict {
            super::CutVerdict::SingletonGapNonCopy { witness } => witness.to_string(),
            super::CutVerdict::Unresolved { reason } => reason.clone(),
            _ => String::new(),
        };
        w.write_record([
            r.x0.to_string(),
            r.row.to_string(),
            r.verdict.label().to_string(),
            gap,
            witness,
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| ChainError::Shape(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The sampled elements as a DOT path, bottom first.
pub fn chain_dot(chain: &LazyChain, indices: &[ChainIndex]) -> Result<String, ChainError> {
    let mut out = String::from("digraph chain {\n  rankdir=BT;\n");
    for (t, i) in indices.iter().enumerate() {
        let label = format!("{i}\n{}", chain.element(i)?);
        out.push_str(&format!("  n{t} [label={}];\n", quote(&label)));
    }
    for t in 1..indices.len() {
        out.push_str(&format!("  n{} -> n{t};\n", t - 1));
    }
    out.push_str("}\n");
    Ok(out)
}
