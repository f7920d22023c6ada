use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use palinprefix::exact::{convergents, ConvergentPair, RealEnclosure, DEFAULT_REFINEMENT_CAP};
use palinprefix::lab::*;
use palinprefix::word::{
    delta_of_word, palindromic_prefix_lengths, psi_equivalent, psi_from_word, theta_sequence, Equivalence, PsiFunction,
};
use palinprefix::{Error, Triple};

use crate::config::RunConfig;
use crate::output::{cell, opt_cell, sibling, Output, Table};
use crate::CliError;

const PREFIX_SHOWN: usize = 200;
const TAIL: f64 = 0.5;
const LEMMA_INDICES: usize = 12;

fn spec_header(cfg: &RunConfig) -> (String, String) {
    (cfg.word.to_string(), cfg.phi.to_string())
}

#[derive(Serialize)]
struct WordReport {
    word: String,
    length: usize,
    prefix: String,
    lengths: Vec<usize>,
    delta: Option<f64>,
    delta_liminf: Option<f64>,
    note: Option<String>,
}

pub fn word(cfg: &RunConfig) -> Result<Output, CliError> {
    let w = cfg.word.materialize(cfg.length)?;
    let table = palindromic_prefix_lengths(w.symbols());
    let (delta, delta_liminf, note) = match delta_of_word(&table, TAIL) {
        Ok(d) => (Some(d.value), Some(d.liminf), None),
        Err(e @ Error::InsufficientData(_)) => (None, None, Some(format!("delta undefined, {e}"))),
        Err(e) => return Err(e.into()),
    };
    let mut t = Table::new(&["index", "length"]);
    for (i, n) in table.lengths.iter().enumerate() {
        t.push(vec![cell(i + 1), cell(n)]);
    }
    let report = WordReport {
        word: cfg.word.to_string(),
        length: w.len(),
        prefix: w.prefix(PREFIX_SHOWN).to_letters(),
        lengths: table.lengths,
        delta,
        delta_liminf,
        note,
    };
    Output::new("word", &report, t)
}

#[derive(Serialize)]
struct XiReport {
    word: String,
    phi: String,
    quotients: Vec<u64>,
    convergents: Vec<ConvergentPair>,
    lower: String,
    upper: String,
    value: f64,
}

pub fn xi(cfg: &RunConfig) -> Result<Output, CliError> {
    let w = cfg.word.materialize(cfg.length)?;
    let cf = build_xi_from_word(&w, &cfg.phi)?;
    let n = cfg.count.min(w.len() - 1);
    let conv = convergents(&cf, n + 1)?;
    let e = RealEnclosure::at_depth(Arc::new(cf.clone()), n)?;
    let quotients = cf.quotients(n)?;
    let mut t = Table::new(&["index", "quotient", "p", "q"]);
    for c in &conv {
        let a = if c.index == 0 { cf.a0().to_string() } else { quotients[c.index - 1].to_string() };
        t.push(vec![cell(c.index), a, cell(&c.p), cell(&c.q)]);
    }
    let (word, phi) = spec_header(cfg);
    let report = XiReport {
        word,
        phi,
        quotients,
        convergents: conv,
        lower: e.lo().to_string(),
        upper: e.hi().to_string(),
        value: e.interval().mid_f64(),
    };
    Output::new("xi", &report, t)
}

fn point_cells(p: &Triple) -> [String; 3] {
    [cell(&p.x0), cell(&p.x1), cell(&p.x2)]
}

#[derive(Serialize)]
struct ApproximantReport {
    word: String,
    phi: String,
    rows: Vec<ApproximantRow>,
}

pub fn approximants(cfg: &RunConfig) -> Result<Output, CliError> {
    let seq = approximants_for(&cfg.word, &cfg.phi, cfg.count)?;
    let rows = seq.rows();
    let mut t = Table::new(&["index", "length", "x0", "x1", "x2", "det2", "l_mid_log", "l_rel_width"]);
    for r in &rows {
        let [a, b, c] = point_cells(&r.point);
        t.push(vec![cell(r.index), cell(r.length), a, b, c, r.det2.clone(), cell(r.l_mid_log), cell(r.l_rel_width)]);
    }
    let (word, phi) = spec_header(cfg);
    Output::new("approximants", &ApproximantReport { word, phi, rows }, t)
}

fn scan(cfg: &RunConfig) -> Result<MinimalPointSequence, CliError> {
    let w = cfg.word.materialize(cfg.length)?;
    let cf = Arc::new(build_xi_from_word(&w, &cfg.phi)?);
    Ok(minimal_points(&cf, cfg.bmax, cfg.workers, DEFAULT_REFINEMENT_CAP)?)
}

#[derive(Serialize)]
struct PointsReport {
    word: String,
    phi: String,
    bmax: u64,
    eps: f64,
    points: Vec<PointRow>,
}

pub fn minpoints(cfg: &RunConfig) -> Result<Output, CliError> {
    let seq = scan(cfg)?;
    let eps = cfg.eps[0];
    let points = point_rows(&seq.points, &seq.l, &seq.independent, eps);
    let mut t = Table::new(&["index", "x0", "x1", "x2", "l_mid", "l_width", "det2", "in_a_eps", "independent"]);
    for r in &points {
        let [a, b, c] = point_cells(&r.point);
        t.push(vec![
            cell(r.index),
            a,
            b,
            c,
            cell(r.l_mid),
            cell(r.l_width),
            r.det2.clone(),
            cell(r.in_a_eps),
            cell(r.independent),
        ]);
    }
    let (word, phi) = spec_header(cfg);
    let ok = seq.structure_ok() && seq.records_ok();
    Ok(Output::new("minpoints", &PointsReport { word, phi, bmax: cfg.bmax, eps, points }, t)?.failed_if(!ok))
}

#[derive(Serialize)]
struct ChainsReport {
    word: String,
    phi: String,
    bmax: u64,
    eps2: f64,
    grace: usize,
    selection: Selection,
    chains: Vec<ChainRecord>,
    failures: Vec<usize>,
    early_failures: Vec<usize>,
}

fn build_chains(
    seq: &MinimalPointSequence,
    sel: &Selection,
    grace: usize,
) -> (Vec<ChainRecord>, Vec<usize>, Vec<usize>) {
    let mut chains = Vec::new();
    let (mut failures, mut early) = (Vec::new(), Vec::new());
    for p in sel.pairs.iter() {
        let Some(n) = p.d_next else { continue };
        let pts = &seq.points;
        let ok = match reconstruct_chain(p.k, &pts[p.d], &pts[p.e], &pts[n], None) {
            Ok(c) => {
                let ok = c.ok() && c.links.iter().all(|x| seq.position_of(x).is_some());
                chains.push(c);
                ok
            }
            Err(_) => false,
        };
        if !ok {
            if p.k >= grace {
                failures.push(p.k);
            } else {
                early.push(p.k);
            }
        }
    }
    (chains, failures, early)
}

pub fn chains(cfg: &RunConfig) -> Result<Output, CliError> {
    let seq = scan(cfg)?;
    let selection = select_e_points(&seq, cfg.eps2, cfg.grace)?;
    let (chains, failures, early_failures) = build_chains(&seq, &selection, cfg.grace);
    let mut t = Table::new(&["k", "s", "endpoints_ok", "decreasing", "first_norm", "last_norm"]);
    for c in &chains {
        let norm = |x: Option<&Triple>| x.map(|p| p.norm().to_string()).unwrap_or_default();
        t.push(vec![
            cell(c.k),
            cell(c.s),
            cell(c.endpoints_ok),
            cell(c.decreasing),
            norm(c.links.first()),
            norm(c.links.last()),
        ]);
    }
    let failed = !failures.is_empty() || !selection.ordered();
    let (word, phi) = spec_header(cfg);
    let report = ChainsReport {
        word,
        phi,
        bmax: cfg.bmax,
        eps2: cfg.eps2,
        grace: cfg.grace,
        selection,
        chains,
        failures,
        early_failures,
    };
    Ok(Output::new("chains", &report, t)?.failed_if(failed))
}

#[derive(Serialize)]
struct PsiReport {
    word: String,
    phi: String,
    lengths: Vec<usize>,
    from_word: PsiFunction,
    word_failures: Vec<usize>,
    theta: Vec<usize>,
    from_points: PsiFunction,
    points_not_found: Vec<usize>,
    equivalence: Equivalence,
}

pub fn psi(cfg: &RunConfig) -> Result<Output, CliError> {
    let seq = approximants_for(&cfg.word, &cfg.phi, cfg.count)?;
    let ex = psi_from_word(&seq.word, usize::MAX)?;
    let pts = extract_psi_from_points(&seq.triples)?;
    let h = seq.count().saturating_sub(1);
    let equivalence = psi_equivalent(&ex.psi, &pts.psi, h);
    let mut t = Table::new(&["index", "from_word", "from_points"]);
    for i in 1..=h {
        t.push(vec![cell(i), opt_cell(ex.psi.eval(i)), opt_cell(pts.psi.eval(i))]);
    }
    let (word, phi) = spec_header(cfg);
    let failed = !equivalence.equivalent;
    let report = PsiReport {
        word,
        phi,
        lengths: ex.table.lengths[..=h.min(ex.table.len() - 1)].to_vec(),
        theta: theta_sequence(&ex.psi, h),
        word_failures: ex.failures.iter().map(|f| f.index()).collect(),
        from_word: ex.psi,
        from_points: pts.psi,
        points_not_found: pts.not_found,
        equivalence,
    };
    Ok(Output::new("psi", &report, t)?.failed_if(failed))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    failures: Vec<String>,
    early_failures: Vec<String>,
    detail: String,
}

fn check(name: &'static str, failures: Vec<String>, early_failures: Vec<String>, detail: String) -> Check {
    Check { name, passed: failures.is_empty(), failures, early_failures, detail }
}

#[derive(Serialize)]
struct VerifyReport {
    word: String,
    phi: String,
    count: usize,
    bmax: u64,
    grace: usize,
    passed: bool,
    checks: Vec<Check>,
}

fn strings(v: &[usize]) -> Vec<String> {
    v.iter().map(usize::to_string).collect()
}

fn split_by_grace(v: impl IntoIterator<Item = usize>, grace: usize) -> (Vec<String>, Vec<String>) {
    let (late, early): (Vec<usize>, Vec<usize>) = v.into_iter().partition(|&i| i >= grace);
    (strings(&late), strings(&early))
}

pub fn verify(cfg: &RunConfig) -> Result<Output, CliError> {
    let seq = approximants_for(&cfg.word, &cfg.phi, cfg.count)?;
    let mut checks = Vec::new();

    let ex = psi_from_word(&seq.word, usize::MAX)?;
    let rec = verify_bracket_recurrence(&seq, &ex.psi, cfg.grace)?;
    checks.push(check(
        "bracket recurrence",
        strings(&rec.failures),
        strings(&rec.early_failures),
        format!("{} indices checked, {} without psi", rec.entries.len(), rec.skipped.len()),
    ));

    let n = seq.count().min(LEMMA_INDICES);
    let mut bad = Vec::new();
    let mut cases = 0;
    for i0 in 0..=n {
        for i1 in 0..=n {
            for i2 in 0..=n {
                let (a, b, c) = (seq.lengths[i0], seq.lengths[i1], seq.lengths[i2]);
                if c < a.min(b) || c > a + b {
                    continue;
                }
                cases += 1;
                if !lemma55_check(&seq, i0, i1, i2)?.consistent() {
                    bad.push(format!("({i0},{i1},{i2})"));
                }
            }
        }
    }
    checks.push(check("palindrome and dependence", bad, vec![], format!("{cases} index triples")));

    let pts = extract_psi_from_points(&seq.triples)?;
    let h = seq.count().saturating_sub(1);
    let eq = psi_equivalent(&ex.psi, &pts.psi, h);
    let fail = if eq.equivalent { vec![] } else { vec!["not equivalent".to_string()] };
    checks.push(check("psi from word and from points", fail, vec![], format!("shift {}, from {}", eq.shift, eq.from)));

    let scan = minimal_points(&seq.xi, cfg.bmax, cfg.workers, DEFAULT_REFINEMENT_CAP)?;
    let bound = BigInt::from(cfg.bmax);
    let half = palinprefix::Q::new(1.into(), 2.into());
    let mut missing = Vec::new();
    let mut covered = 0;
    for i in 0..=seq.count() {
        let v = seq.v(i);
        if v.norm() > bound {
            break;
        }
        if seq.l[i].hi >= half {
            continue;
        }
        covered += 1;
        if scan.position_of(v).is_none() {
            missing.push(i);
        }
    }
    let (late, early) = split_by_grace(missing, cfg.grace);
    let mut fail = late;
    if !(scan.structure_ok() && scan.records_ok()) {
        fail.push("scan structure".into());
    }
    checks.push(check(
        "approximants among minimal points",
        fail,
        early,
        format!("{} minimal points, {covered} approximants with L < 1/2 checked", scan.len()),
    ));

    let sel = select_e_points(&scan, cfg.eps2, cfg.grace)?;
    let (chains, failures, early) = build_chains(&scan, &sel, cfg.grace);
    let mut fail = strings(&failures);
    if !sel.ordered() {
        fail.push("selection order".into());
    }
    checks.push(check("chains", fail, strings(&early), format!("{} chains", chains.len())));

    let ineq = scan_inequalities(&scan)?;
    let fail = if ineq.all_hold(PLANE_RATIO_UPPER) { vec![] } else { vec!["explicit constants".to_string()] };
    checks.push(check(
        "explicit constants",
        fail,
        vec![],
        format!("plane ratio in [{:.4}, {:.4}]", ineq.heights.ratio_min, ineq.heights.ratio_max),
    ));

    let mut t = Table::new(&["check", "passed", "failures", "early_failures", "detail"]);
    for c in &checks {
        t.push(vec![c.name.into(), cell(c.passed), c.failures.join(" "), c.early_failures.join(" "), c.detail.clone()]);
    }
    let passed = checks.iter().all(|c| c.passed);
    let (word, phi) = spec_header(cfg);
    let report = VerifyReport { word, phi, count: cfg.count, bmax: cfg.bmax, grace: cfg.grace, passed, checks };
    Ok(Output::new("verify", &report, t)?.failed_if(!passed))
}

#[derive(Serialize)]
struct ExponentRow {
    kind: &'static str,
    eps: Option<f64>,
    value: f64,
    liminf: Option<f64>,
    window: Option<(usize, usize)>,
    beta1: Option<f64>,
    beta0: Option<f64>,
    trace: Option<String>,
}

#[derive(Serialize)]
struct ExponentReport {
    word: String,
    phi: String,
    count: usize,
    rows: Vec<ExponentRow>,
}

pub struct BetaOverride {
    pub beta1: Option<f64>,
    pub beta0: Option<f64>,
}

pub fn exponents(cfg: &RunConfig, betas: &BetaOverride) -> Result<Output, CliError> {
    let seq = approximants_for(&cfg.word, &cfg.phi, cfg.count)?;
    let mut rows = Vec::new();
    let mut attachments = Vec::new();
    for &eps in &cfg.eps {
        let est = estimate_beta_eps(&seq.triples, &seq.l, eps, TAIL)?;
        let trace = cfg.out.as_ref().map(|out| {
            let p = sibling(out, &format!("trace-eps{eps}.csv"));
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            attachments.push((p, trace_csv(&est.rows)));
            name
        });
        rows.push(ExponentRow {
            kind: "beta_eps",
            eps: Some(eps),
            value: est.value,
            liminf: Some(est.liminf),
            window: Some(est.window),
            beta1: None,
            beta0: None,
            trace,
        });
    }
    let logs: Vec<f64> = seq.norm_logs().into_iter().skip_while(|&l| l <= 0.0).collect();
    let growth = growth_exponent(&logs, TAIL)?;
    rows.push(ExponentRow {
        kind: "growth",
        eps: None,
        value: growth.value,
        liminf: Some(growth.liminf),
        window: Some(growth.window),
        beta1: None,
        beta0: None,
        trace: None,
    });
    let beta0 = betas.beta0.unwrap_or(growth.value);
    let beta1 = betas.beta1.unwrap_or(beta0);
    let e1 = epsilon_one(beta1, beta0)?;
    rows.push(ExponentRow {
        kind: "epsilon_one",
        eps: None,
        value: e1,
        liminf: None,
        window: None,
        beta1: Some(beta1),
        beta0: Some(beta0),
        trace: None,
    });
    let mut t =
        Table::new(&["kind", "eps", "value", "liminf", "window_start", "window_end", "beta1", "beta0", "trace"]);
    for r in &rows {
        t.push(vec![
            r.kind.into(),
            opt_cell(r.eps),
            cell(r.value),
            opt_cell(r.liminf),
            opt_cell(r.window.map(|w| w.0)),
            opt_cell(r.window.map(|w| w.1)),
            opt_cell(r.beta1),
            opt_cell(r.beta0),
            r.trace.clone().unwrap_or_default(),
        ]);
    }
    let (word, phi) = spec_header(cfg);
    let mut out = Output::new("exponents", &ExponentReport { word, phi, count: cfg.count, rows }, t)?;
    out.attachments = attachments;
    Ok(out)
}

pub struct SpectrumArgs {
    pub period: usize,
    pub offset: usize,
    pub horizon: usize,
    pub gap: (f64, f64),
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Output, CliError> {
    let r = spectrum_gap(a.period, a.offset, a.horizon, a.gap)?;
    let mut t = Table::new(&["offsets", "delta", "in_gap"]);
    for e in &r.entries {
        let offs: Vec<String> = e.offsets.iter().map(usize::to_string).collect();
        let inside = e.delta > a.gap.0 && e.delta < a.gap.1;
        t.push(vec![offs.join(" "), cell(e.delta), cell(inside)]);
    }
    let failed = !r.in_gap.is_empty();
    Ok(Output::new("spectrum", &r, t)?.failed_if(failed))
}
