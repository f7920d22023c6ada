use serde::Serialize;
use serde_json::json;

use super::exponents::TraceRow;
use super::select::in_a_eps;
use crate::bracket::Triple;
use crate::error::{Error, Result};
use crate::exact::RationalInterval;

/// Version tag written into every JSON document.
pub const SCHEMA: &str = "palinprefix/1";

/// `{"schema": .., "kind": .., "data": ..}` as pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(kind: &str, data: &T) -> Result<String> {
    let data = serde_json::to_value(data).map_err(|e| Error::Domain(e.to_string()))?;
    let doc = json!({ "schema": SCHEMA, "kind": kind, "data": data });
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::Domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

/// CSV with columns `index,norm_log,L_log,ratio`.
pub fn trace_csv(rows: &[TraceRow]) -> String {
    let mut out = String::from("index,norm_log,L_log,ratio\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.index, num(r.norm_log), num(r.l_log), num(r.ratio)));
    }
    out
}

/// One point of a sequence as written to JSON.
#[derive(Clone, Debug, Serialize)]
pub struct PointRow {
    pub index: usize,
    pub point: Triple,
    pub l_mid: f64,
    pub l_width: f64,
    pub det2: String,
    pub in_a_eps: bool,
    pub independent: bool,
}

pub fn point_rows(points: &[Triple], l: &[RationalInterval], independent: &[usize], eps: f64) -> Vec<PointRow> {
    points
        .iter()
        .zip(l)
        .enumerate()
        .map(|(i, (p, lp))| PointRow {
            index: i,
            point: p.clone(),
            l_mid: lp.mid_f64(),
            l_width: lp.width().to_f64(),
            det2: p.det2().to_string(),
            in_a_eps: in_a_eps(p, lp, eps),
            independent: independent.contains(&i),
        })
        .collect()
}
