use super::{
    dimension_table, identity_failures, omega_decomposition, rank_identity_holds, DecompositionSequence,
    CONVOLUTION_THROUGH,
};
use crate::levels::{index, Weight1Data};
use crate::report::Report;

/// Convolution, rank, cross-block and block-specific identity checks for a
/// (possibly hand-edited) sequence.
pub fn verify_consistency(seq: &DecompositionSequence, w1: &Weight1Data) -> Report {
    let mut report = Report::new();
    let label = format!("{} {}", seq.group, seq.block);
    let t = match dimension_table(&seq.group, w1) {
        Ok(t) => t,
        Err(e) => {
            report.push(format!("{label} dimensions"), false, e.to_string());
            return report;
        }
    };

    let predicted = seq.predicted_dimensions(CONVOLUTION_THROUGH);
    let mismatch = (0..=CONVOLUTION_THROUGH).find(|&k| predicted.get(k) != Some(t.m(k)));
    report.push(
        format!("{label} convolution"),
        mismatch.is_none(),
        match mismatch {
            None => format!("m_k matches for k <= {CONVOLUTION_THROUGH}"),
            Some(k) => format!(
                "failure at k = {k}: m_k = {}, blocks give {}",
                t.m(k),
                predicted.get(k).unwrap_or(0)
            ),
        },
    );

    report.push(
        format!("{label} rank"),
        rank_identity_holds(seq),
        format!(
            "{} x {} = {} vs index {}",
            seq.mult.total(),
            seq.block.rank(),
            seq.total_rank(),
            index(&seq.group)
        ),
    );

    match omega_decomposition(&seq.group, w1) {
        Ok(omega) => {
            let expanded = seq.to_omega();
            report.push(
                format!("{label} cross-block"),
                expanded.mult == omega.mult,
                format!("expanded {:?} vs omega {:?}", expanded.to_vec(), omega.to_vec()),
            );
        }
        Err(e) => report.push(format!("{label} cross-block"), false, e.to_string()),
    }

    let failures = identity_failures(seq, &t);
    report.push(
        format!("{label} identities"),
        failures.is_empty(),
        failures
            .iter()
            .map(|(name, detail)| format!("{name} fails ({detail})"))
            .collect::<Vec<_>>()
            .join("; "),
    );
    report
}
