use std::collections::BTreeSet;
use std::io::{self, Write};

use icef::{Document, FusionResult, Subset};

fn value(x: f64, precision: Option<usize>) -> String {
    match precision {
        Some(p) => format!("{x:.p$}"),
        None => format!("{x}"),
    }
}

/// Masses on every subset focal in the input or the result, then the
/// pignistic probabilities and the decision.
pub fn fusion<W: Write>(
    out: &mut W,
    doc: &Document,
    result: &FusionResult,
    precision: Option<usize>,
) -> io::Result<()> {
    let subsets: BTreeSet<Subset> = doc
        .evidence
        .iter()
        .chain(std::iter::once(&result.fused))
        .flat_map(|m| m.focal().map(|(s, _)| s))
        .collect();
    let labels: Vec<String> = subsets
        .iter()
        .map(|&s| format!("{{{}}}", doc.frame.format_subset(s)))
        .collect();
    let width = labels.iter().map(|l| l.len()).max().unwrap_or(0).max(7);
    writeln!(out, "method: {}", result.method)?;
    writeln!(out, "{:<width$}  mass", "subset")?;
    for (s, label) in subsets.iter().zip(&labels) {
        writeln!(
            out,
            "{label:<width$}  {}",
            value(result.fused.mass(*s), precision)
        )?;
    }
    writeln!(out)?;
    writeln!(out, "{:<width$}  BetP", "event")?;
    for (label, p) in doc.frame.labels().iter().zip(result.pignistic.probs()) {
        writeln!(out, "{label:<width$}  {}", value(*p, precision))?;
    }
    writeln!(out)?;
    writeln!(out, "decision: {}", result.decision_label())
}

pub fn credibility<W: Write>(
    out: &mut W,
    names: &[String],
    result: &FusionResult,
    precision: Option<usize>,
) -> io::Result<()> {
    let Some(cred) = &result.credibility else {
        return Ok(());
    };
    let width = names.iter().map(|n| n.len()).max().unwrap_or(0).max(8);
    writeln!(out)?;
    writeln!(out, "{:<width$}  credibility", "evidence")?;
    for (name, c) in names.iter().zip(cred.values()) {
        writeln!(out, "{name:<width$}  {}", value(*c, precision))?;
    }
    Ok(())
}
