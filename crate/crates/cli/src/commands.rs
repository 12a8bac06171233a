use std::fmt::Write as _;
use std::time::Instant;

use gridiv_core::closedform::{markdown_tables, ClosedForms, FittedFamily};
use gridiv_core::division::write_divisions;
use gridiv_core::poly::{interpolate, rat, Polynomial, Rational};
use gridiv_core::recurrence::ladder_rows;
use gridiv_core::symmetry::{i2_closed_form, orbit_count_with_limit, GroupElement, OrbitCount};
use gridiv_core::table::big_number;
use gridiv_core::{dp_count, BoardShape, BruteForce, Provenance, SequenceTable, Series};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::engine::{columns, Column, Engine};
use crate::failure::Failure;
use crate::span::Span;
use crate::{Args, Format, SeriesArg};

/// Output of a command, plus a failure to report after the output is written.
#[derive(Debug, Default)]
pub struct Report {
    pub body: String,
    pub failure: Option<Failure>,
}

impl Report {
    fn ok(body: String) -> Self {
        Self {
            body,
            failure: None,
        }
    }
}

fn require(span: Option<Span>, flag: &str) -> Result<Span, Failure> {
    span.ok_or_else(|| Failure::input(format!("{flag} is required")))
}

fn single(span: Span, flag: &str) -> Result<usize, Failure> {
    if span.is_single() {
        Ok(span.lo)
    } else {
        Err(Failure::input(format!(
            "{flag} takes a single value here, got {span}"
        )))
    }
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure::input(format!("{command} does not support {format:?} output").to_lowercase())
}

/// Runs `f` for every value in `items` concurrently and returns results in
/// input order; the first error in that order wins.
fn fan_out<T, R, F>(items: Vec<T>, f: F) -> Result<Vec<R>, Failure>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> Result<R, Failure> + Send + Sync,
{
    let results: Vec<Result<R, Failure>> = items.par_iter().map(f).collect();
    results.into_iter().collect()
}

fn provenance(engine: Engine) -> Provenance {
    match engine {
        Engine::Brute => Provenance::Brute,
        Engine::Recursion => Provenance::Recursion,
        Engine::Dp | Engine::Auto => Provenance::Dp,
    }
}

pub fn count(args: &Args) -> Result<Report, Failure> {
    let (ms, ns, ks) = (
        require(args.m, "--m")?,
        require(args.n, "--n")?,
        require(args.k, "--k")?,
    );
    let boards = fan_out(ms.iter().collect(), |&m| {
        let engine = args.engine.resolve(m)?;
        Ok((
            m,
            engine,
            columns(m, ns, engine, args.edge_limit, false, 0)?,
        ))
    })?;
    let rows: Vec<(usize, usize, usize, BigUint, Engine)> = boards
        .iter()
        .flat_map(|(m, engine, cols)| {
            cols.iter()
                .flat_map(move |c| ks.iter().map(move |k| (*m, c.n, k, c.division(k), *engine)))
        })
        .collect();

    let mut out = String::new();
    match args.format.unwrap_or(Format::Text) {
        Format::Text if rows.len() == 1 => writeln!(out, "{}", rows[0].3).unwrap(),
        Format::Text => {
            for (m, n, k, c, _) in &rows {
                writeln!(out, "{m}x{n} k={k}: {c}").unwrap();
            }
        }
        Format::Csv => {
            out.push_str("m,n,k,count\n");
            for (m, n, k, c, _) in &rows {
                writeln!(out, "{m},{n},{k},{c}").unwrap();
            }
        }
        Format::Json => {
            for (m, n, k, c, engine) in &rows {
                let line = json!({ "m": m, "n": n, "k": k, "count": big_number(c), "engine": engine.name() });
                writeln!(out, "{line}").unwrap();
            }
        }
        Format::Markdown => {
            out.push_str("| m | n | k | count |\n|---|---|---|---|\n");
            for (m, n, k, c, _) in &rows {
                writeln!(out, "| {m} | {n} | {k} | {c} |").unwrap();
            }
        }
    }
    Ok(Report::ok(out))
}

pub fn enumerate(args: &Args) -> Result<Report, Failure> {
    let m = single(require(args.m, "--m")?, "--m")?;
    let n = single(require(args.n, "--n")?, "--n")?;
    let ks = require(args.k, "--k")?;
    if !matches!(args.engine, Engine::Auto | Engine::Brute) {
        return Err(Failure::input("enumerate only runs on the brute engine"));
    }
    let shape = BoardShape::new(m, n)?;
    let brute = BruteForce::new(shape, args.edge_limit)?;
    let format = args.format.unwrap_or(Format::Text);
    let mut out = String::new();
    for k in ks.iter() {
        let divisions = brute.divisions(k)?;
        match format {
            Format::Text | Format::Csv => out.push_str(&write_divisions(shape, k, &divisions)),
            Format::Json => {
                let labels: Vec<&[usize]> = divisions.iter().map(|d| d.labels()).collect();
                let line = json!({ "m": m, "n": n, "k": k, "count": divisions.len(), "divisions": labels });
                writeln!(out, "{line}").unwrap();
            }
            Format::Markdown => return Err(unsupported(format, "enumerate")),
        }
    }
    Ok(Report::ok(out))
}

pub fn table(args: &Args) -> Result<Report, Failure> {
    let m = single(args.m.unwrap_or(Span::single(2)), "--m")?;
    let ns = args.n.unwrap_or(Span { lo: 1, hi: 20 });
    let ks = args.k.unwrap_or(Span { lo: 1, hi: 10 });
    let series = match args.series {
        SeriesArg::D => Series::Divisions,
        SeriesArg::S => Series::Separations,
    };
    let engine = args.engine.resolve(m)?;
    let cols = columns(
        m,
        ns,
        engine,
        args.edge_limit,
        series == Series::Separations,
        ks.hi,
    )?;
    let mut table = SequenceTable::new(m, series);
    for c in &cols {
        for k in ks.iter() {
            let value = match series {
                Series::Divisions => c.division(k),
                Series::Separations => c.separation(k),
            };
            table.insert(c.n, k, value, provenance(engine))?;
        }
    }
    let body = match args.format.unwrap_or(Format::Csv) {
        Format::Text | Format::Csv => table.to_grid_csv(),
        Format::Json => format!("{}\n", table.to_json()),
        Format::Markdown => grid_markdown(&table),
    };
    let violations = table.violations();
    let failure = (!violations.is_empty()).then(|| Failure::disagreement(violations.join("; ")));
    Ok(Report { body, failure })
}

fn grid_markdown(table: &SequenceTable) -> String {
    let csv = table.to_grid_csv();
    let mut out = String::new();
    for (i, line) in csv.lines().enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        writeln!(out, "| {} |", cells.join(" | ")).unwrap();
        if i == 0 {
            writeln!(out, "|{}", "---|".repeat(cells.len())).unwrap();
        }
    }
    out
}

pub fn fit(args: &Args) -> Result<Report, Failure> {
    let ks = require(args.k, "--k")?;
    let forms = ClosedForms::fit_up_to(ks.hi)?;
    let families: Vec<FittedFamily> = ks
        .iter()
        .map(|k| forms.family(k).expect("fitted up to ks.hi").clone())
        .collect();
    let mut out = String::new();
    match args.format.unwrap_or(Format::Text) {
        Format::Text => {
            for f in &families {
                let v = f.verified;
                let mark = |b: bool| if b { "ok" } else { "FAILED" };
                writeln!(out, "k = {}", f.k).unwrap();
                writeln!(out, "  d(n) = {}", f.d_poly).unwrap();
                writeln!(out, "  s(n) = {}", f.s_poly).unwrap();
                writeln!(
                    out,
                    "  recursion identity {}, degree {}, spot values {}",
                    mark(v.recursion_identity),
                    mark(v.degree),
                    mark(v.spot_values)
                )
                .unwrap();
            }
        }
        Format::Json => {
            for f in &families {
                writeln!(out, "{}", f.to_json()).unwrap();
            }
        }
        Format::Markdown => out = markdown_tables(&families),
        Format::Csv => {
            out.push_str("k,series,power,coefficient\n");
            for f in &families {
                for (name, p) in [("d", &f.d_poly), ("s", &f.s_poly)] {
                    for (power, c) in p.coeffs().iter().enumerate() {
                        writeln!(out, "{},{name},{power},{c}", f.k).unwrap();
                    }
                }
            }
        }
    }
    let failure = families.iter().find(|f| !f.verified.all()).map(|f| {
        Failure::disagreement(format!(
            "family k={} failed verification: {:?}",
            f.k, f.verified
        ))
    });
    Ok(Report { body: out, failure })
}

pub fn symmetry(args: &Args) -> Result<Report, Failure> {
    let (ms, ns, ks) = (
        require(args.m, "--m")?,
        require(args.n, "--n")?,
        require(args.k, "--k")?,
    );
    let queries: Vec<(usize, usize, usize)> = ms
        .iter()
        .flat_map(|m| {
            ns.iter()
                .flat_map(move |n| ks.iter().map(move |k| (m, n, k)))
        })
        .collect();
    let reports: Vec<OrbitCount> = fan_out(queries, |&(m, n, k)| {
        Ok(orbit_count_with_limit(
            BoardShape::new(m, n)?,
            k,
            args.edge_limit,
        )?)
    })?;

    let mut failure = None;
    for r in &reports {
        if r.shape.rows() == 2 && r.k == 2 && r.up_to_isometry != i2_closed_form(r.shape.cols()) {
            failure.get_or_insert(Failure::disagreement(format!(
                "{} two-piece orbits: burnside {} vs n(n+1)/2 = {}",
                r.shape,
                r.up_to_isometry,
                i2_closed_form(r.shape.cols())
            )));
        }
    }

    let mut out = String::new();
    match args.format.unwrap_or(Format::Json) {
        Format::Text | Format::Json => {
            for r in &reports {
                writeln!(out, "{}", r.to_json()).unwrap();
            }
        }
        Format::Csv | Format::Markdown => {
            let markdown = args.format == Some(Format::Markdown);
            let keys: Vec<&str> = GroupElement::ALL.iter().map(|g| g.key()).collect();
            let header = format!("m,n,k,{},orbits", keys.join(","));
            let line = |cells: &str| {
                if markdown {
                    format!("| {} |\n", cells.replace(',', " | "))
                } else {
                    format!("{cells}\n")
                }
            };
            out.push_str(&line(&header));
            if markdown {
                writeln!(out, "|{}", "---|".repeat(header.split(',').count())).unwrap();
            }
            for r in &reports {
                let fixed: Vec<String> = GroupElement::ALL
                    .iter()
                    .map(|&g| r.fixed_by(g).to_string())
                    .collect();
                let cells = format!(
                    "{},{},{},{},{}",
                    r.shape.rows(),
                    r.shape.cols(),
                    r.k,
                    fixed.join(","),
                    r.up_to_isometry
                );
                out.push_str(&line(&cells));
            }
        }
    }
    Ok(Report { body: out, failure })
}

/// One line of the `verify` suite.
struct Check {
    name: &'static str,
    detail: String,
    problem: Option<String>,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<String, String>) -> Check {
    match run() {
        Ok(detail) => Check {
            name,
            detail,
            problem: None,
        },
        Err(problem) => Check {
            name,
            detail: String::new(),
            problem: Some(problem),
        },
    }
}

fn compare(context: &str, left: &[BigUint], right: &[BigUint]) -> Result<(), String> {
    let len = left.len().max(right.len());
    for k in 1..len {
        let (a, b) = (
            left.get(k).cloned().unwrap_or_default(),
            right.get(k).cloned().unwrap_or_default(),
        );
        if a != b {
            return Err(format!("{context}, k={k}: {a} vs {b}"));
        }
    }
    Ok(())
}

fn oracle_triangle(edge_limit: usize) -> Result<String, String> {
    let shapes: Vec<(usize, usize)> = (1..=12)
        .flat_map(|m| (1..=12 / m).map(move |n| (m, n)))
        .collect();
    let outcomes: Vec<Result<usize, String>> = shapes
        .par_iter()
        .map(|&(m, n)| {
            let shape = BoardShape::new(m, n).map_err(|e| e.to_string())?;
            let brute: Vec<BigUint> = BruteForce::new(shape, edge_limit.max(shape.edge_count()))
                .map_err(|e| e.to_string())?
                .counts_by_pieces()
                .into_iter()
                .map(BigUint::from)
                .collect();
            let mut compared = 1;
            if m <= gridiv_core::dpcount::MAX_ROWS {
                let dp = dp_count(shape).map_err(|e| e.to_string())?;
                compare(&format!("{shape} brute vs dp"), &brute, &dp)?;
                compared += 1;
            }
            if m == 2 {
                let rec = &ladder_rows(2 * n, n)[n - 1].d;
                compare(&format!("{shape} brute vs recursion"), &brute, rec)?;
                compared += 1;
            }
            Ok(compared)
        })
        .collect();
    let mut engines = 0;
    for o in outcomes {
        engines += o?;
    }
    Ok(format!(
        "{} boards with mn <= 12, {engines} engine runs",
        shapes.len()
    ))
}

fn ladder_agreement() -> Result<String, String> {
    let rows = ladder_rows(40, 20);
    let dp: Vec<Column> =
        columns(2, Span { lo: 1, hi: 20 }, Engine::Dp, 0, true, 40).map_err(|f| f.message)?;
    for (row, col) in rows.iter().zip(&dp) {
        compare(
            &format!("2x{} d recursion vs dp", col.n),
            &row.d,
            &col.divisions,
        )?;
        compare(
            &format!("2x{} s recursion vs dp", col.n),
            &row.s,
            &col.separations,
        )?;
    }
    for n in 1..=5 {
        let brute = BruteForce::new(BoardShape::ladder(n).map_err(|e| e.to_string())?, 16)
            .map_err(|e| e.to_string())?;
        for k in 1..=2 * n {
            let s = brute.separation_count(k).map_err(|e| e.to_string())?;
            if s != rows[n - 1].s[k] {
                return Err(format!(
                    "s_{k}({n}): brute {s} vs recursion {}",
                    rows[n - 1].s[k]
                ));
            }
        }
    }
    Ok("d and s for n <= 20 (dp), s for n <= 5 (brute)".into())
}

fn closed_forms() -> Result<String, String> {
    let forms = ClosedForms::fit_up_to(10).map_err(|e| e.to_string())?;
    let rows = ladder_rows(10, 20);
    for f in forms.families() {
        if !f.verified.all() {
            return Err(format!(
                "family k={} failed verification: {:?}",
                f.k, f.verified
            ));
        }
        for (i, row) in rows.iter().enumerate() {
            let n = i as i64 + 1;
            for (name, p, want) in [("d", &f.d_poly, &row.d[f.k]), ("s", &f.s_poly, &row.s[f.k])] {
                if p.eval_int(n) != Rational::from_integer(want.clone().into()) {
                    return Err(format!(
                        "{name}_{}({n}): polynomial {} vs table {want}",
                        f.k,
                        p.eval_int(n)
                    ));
                }
            }
        }
    }
    Ok("k <= 10 against the recursion for n <= 20".into())
}

fn burnside(edge_limit: usize) -> Result<String, String> {
    let mut queries = Vec::new();
    for m in 1..=3 {
        for n in 1..=8 {
            let shape = BoardShape::new(m, n).map_err(|e| e.to_string())?;
            if shape.edge_count() <= 14 {
                queries.extend((1..=shape.squares()).map(|k| (shape, k)));
            }
        }
    }
    let outcomes: Vec<Result<(), String>> = queries
        .par_iter()
        .map(|&(shape, k)| {
            orbit_count_with_limit(shape, k, edge_limit.max(14))
                .map(|_| ())
                .map_err(|e| e.to_string())
        })
        .collect();
    outcomes.into_iter().collect::<Result<Vec<()>, String>>()?;
    Ok(format!(
        "{} (shape, k) pairs with at most 14 edges",
        queries.len()
    ))
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> Polynomial {
    let degree = rng.gen_range(0..=12);
    let coeffs: Vec<Rational> = (0..=degree)
        .map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=30)))
        .collect();
    Polynomial::from_coeffs(coeffs)
}

fn polynomial_identities(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..200 {
        let p = random_polynomial(&mut rng);
        let points: Vec<(i64, Rational)> = (1..=p.coeffs().len().max(1) as i64)
            .map(|x| (x, p.eval_int(x)))
            .collect();
        let back = interpolate(&points).map_err(|e| e.to_string())?;
        if back != p {
            return Err(format!("trial {trial}: interpolation of {p} gave {back}"));
        }
        let x = rng.gen_range(-20..=20);
        if p.shift().eval_int(x) != p.eval_int(x + 1) {
            return Err(format!("trial {trial}: shift of {p} wrong at {x}"));
        }
        let expected = p.degree().filter(|&d| d > 0);
        if p.difference_transform().degree() != expected {
            return Err(format!(
                "trial {trial}: n(p(n+1) - p(n)) changed the degree of {p}"
            ));
        }
    }
    Ok(format!("200 random polynomials, seed {seed}"))
}

pub fn verify(args: &Args) -> Result<Report, Failure> {
    let checks = vec![
        check("oracle-triangle", || oracle_triangle(args.edge_limit)),
        check("ladder-engines", ladder_agreement),
        check("closed-forms", closed_forms),
        check("burnside", || burnside(args.edge_limit)),
        check("polynomial-identities", || polynomial_identities(args.seed)),
    ];
    let mut out = String::new();
    let json = args.format == Some(Format::Json);
    for c in &checks {
        if json {
            let line = json!({
                "check": c.name,
                "ok": c.problem.is_none(),
                "detail": c.problem.as_ref().unwrap_or(&c.detail),
            });
            writeln!(out, "{line}").unwrap();
        } else {
            match &c.problem {
                None => writeln!(out, "ok    {:<22} {}", c.name, c.detail).unwrap(),
                Some(p) => writeln!(out, "FAIL  {:<22} {p}", c.name).unwrap(),
            }
        }
    }
    let failure = checks.iter().find_map(|c| {
        c.problem
            .as_ref()
            .map(|p| Failure::disagreement(format!("{}: {p}", c.name)))
    });
    Ok(Report { body: out, failure })
}

pub fn bench(args: &Args) -> Result<Report, Failure> {
    let ms = args.m.unwrap_or(Span { lo: 2, hi: 3 });
    let ns = args.n.unwrap_or(Span { lo: 2, hi: 6 });
    let format = args.format.unwrap_or(Format::Text);
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("m,n,edges,dp_ms,brute_ms\n");
    }
    for m in ms.iter() {
        for n in ns.iter() {
            let shape = BoardShape::new(m, n)?;
            let start = Instant::now();
            let dp = dp_count(shape)?;
            let dp_ms = start.elapsed().as_secs_f64() * 1e3;
            let brute_ms = match BruteForce::new(shape, args.edge_limit) {
                Ok(brute) => {
                    let start = Instant::now();
                    let counts: Vec<BigUint> = brute
                        .counts_by_pieces()
                        .into_iter()
                        .map(BigUint::from)
                        .collect();
                    let ms = start.elapsed().as_secs_f64() * 1e3;
                    if counts != dp {
                        return Err(Failure::disagreement(format!(
                            "{shape}: dp and brute counts differ"
                        )));
                    }
                    Some(ms)
                }
                Err(_) => None,
            };
            match format {
                Format::Csv => {
                    let b = brute_ms.map_or(String::new(), |b| format!("{b:.3}"));
                    writeln!(out, "{m},{n},{},{dp_ms:.3},{b}", shape.edge_count()).unwrap();
                }
                Format::Json => {
                    let line = json!({ "m": m, "n": n, "edges": shape.edge_count(), "dp_ms": dp_ms, "brute_ms": brute_ms });
                    writeln!(out, "{line}").unwrap();
                }
                Format::Text => {
                    let b = brute_ms
                        .map_or("skipped (edge limit)".to_string(), |b| format!("{b:.3} ms"));
                    writeln!(
                        out,
                        "{shape:<6} edges {:>3}  dp {dp_ms:>10.3} ms  brute {b}",
                        shape.edge_count()
                    )
                    .unwrap();
                }
                Format::Markdown => return Err(unsupported(format, "bench")),
            }
        }
    }
    Ok(Report::ok(out))
}
