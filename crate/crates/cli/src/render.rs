//! Plain-text rendering.

use std::fmt::Write;

use apportion::{Allocation, Rational, VoteTally};
use apportion_oracle::SuiteReport;

use crate::run::{Report, Trace, TraceEntry};

/// `hare: A 6, B 3, C 1`
pub fn seat_line(tally: &VoteTally, a: &Allocation) -> String {
    let parts: Vec<String> = tally
        .ids()
        .zip(&a.seats)
        .map(|(id, s)| format!("{id} {s}"))
        .collect();
    format!("{}: {}", a.method, parts.join(", "))
}

fn table(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, w))| {
                if i == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "{}", line(header));
    for row in rows {
        let _ = writeln!(out, "{}", line(row));
    }
}

fn quota_cell(q: &Rational) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("{} ({})", q, q.to_decimal(3))
    }
}

pub fn render_report(r: &Report) -> String {
    let mut out = String::new();
    let ids: Vec<&str> = r.tally.ids().collect();
    let mut header: Vec<String> = ["party", "votes"].map(String::from).to_vec();
    if r.seeded_run.is_some() {
        header.extend(["districts", "extra"].map(String::from));
    }
    header.push("quota".into());
    for a in &r.allocations {
        header.push(if r.allocations.len() > 1 {
            a.method.to_string()
        } else {
            "seats".into()
        });
    }
    let flagged: Vec<&str> = r
        .differences
        .iter()
        .flatten()
        .map(|d| d.party.as_str())
        .collect();
    if r.differences.is_some() {
        header.push("diff".into());
    }
    let rows: Vec<Vec<String>> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| {
            let mut row = vec![id.to_string(), r.tally.votes(i).to_string()];
            if let Some(run) = &r.seeded_run {
                row.push(run.district_seats[i].to_string());
                row.push(run.extra_seats[i].to_string());
            }
            row.push(quota_cell(&r.quota_report.parties[i].ideal));
            row.extend(r.allocations.iter().map(|a| a.seats[i].to_string()));
            if r.differences.is_some() {
                row.push(if flagged.contains(id) {
                    "*".into()
                } else {
                    String::new()
                });
            }
            row
        })
        .collect();

    let house = r.quota_report.house_size;
    let _ = writeln!(
        out,
        "{} seats, {} votes, form {}",
        house,
        r.tally.total_votes(),
        r.config.form
    );
    if let Some(run) = &r.seeded_run {
        let _ = write!(
            out,
            "seeded: {} district seats + {} additional, stop {}",
            run.district_seats.iter().sum::<u64>(),
            run.iterations,
            serde_plain(&run.stop_reason)
        );
        if let Some(m) = &run.multiplier {
            let _ = write!(out, ", multiplier {}", quota_cell(m));
        }
        out.push('\n');
    }
    out.push('\n');
    table(&mut out, &header, &rows);
    out.push('\n');
    for a in &r.allocations {
        let _ = writeln!(out, "{}", seat_line(&r.tally, a));
    }
    if let Some(diffs) = &r.differences {
        if diffs.is_empty() {
            let _ = writeln!(out, "no differences");
        } else {
            let _ = writeln!(out, "differences: {}", flagged.join(", "));
        }
    }
    for t in &r.tie_events {
        let names: Vec<&str> = t.event.tied.iter().map(|&p| ids[p]).collect();
        let won: Vec<&str> = t.event.awarded.iter().map(|&p| ids[p]).collect();
        let _ = writeln!(
            out,
            "tie ({} {}, step {}, value {}): {} tied, {} preferred",
            t.method,
            serde_plain(&t.event.kind),
            t.event.step,
            t.event.value,
            names.join("/"),
            won.join("/")
        );
    }
    for entry in r.trace.iter().flatten() {
        out.push('\n');
        render_trace(&mut out, &ids, entry);
    }
    out
}

fn serde_plain<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn render_trace(out: &mut String, ids: &[&str], entry: &TraceEntry) {
    let _ = writeln!(out, "{} ({}) trace", entry.method, entry.form);
    let mut header = vec![String::new()];
    header.extend(ids.iter().map(|s| s.to_string()));
    match &entry.table {
        Trace::Divisor(t) => {
            for s in &t.steps {
                let _ = writeln!(out, "seat {}: {}", s.step, ids[s.winner]);
                let mut rows = vec![{
                    let mut r = vec!["seats".to_string()];
                    r.extend(s.seats.iter().map(u64::to_string));
                    r
                }];
                let mut present = vec!["present quota".to_string()];
                present.extend(
                    s.present
                        .iter()
                        .map(|p| p.as_ref().map_or("-".to_string(), quota_cell)),
                );
                rows.push(present);
                let mut next = vec!["next quota".to_string()];
                next.extend(s.next.iter().map(quota_cell));
                rows.push(next);
                table(out, &header, &rows);
            }
        }
        Trace::Multiplier(t) => {
            let rows = multiplier_rows(t.steps.iter().map(|s| (&s.multiplier, &s.seats)));
            let mut h = vec!["multiplier".to_string()];
            h.extend(ids.iter().map(|s| s.to_string()));
            table(out, &h, &rows);
            let _ = writeln!(out, "witness {}", quota_cell(&t.witness));
            if let Some(q) = &t.implied_quota {
                let _ = writeln!(out, "implied quota {}", quota_cell(q));
            }
        }
        Trace::SeededMultiplier { steps } => {
            let rows = multiplier_rows(steps.iter().map(|s| (&s.multiplier, &s.seats)));
            let mut h = vec!["multiplier".to_string()];
            h.extend(ids.iter().map(|s| s.to_string()));
            table(out, &h, &rows);
        }
        Trace::Awards { events } => {
            let rows: Vec<Vec<String>> = events
                .iter()
                .map(|e| {
                    vec![
                        e.iteration.to_string(),
                        ids[e.party].to_string(),
                        quota_cell(&e.deficit),
                    ]
                })
                .collect();
            table(out, &["seat", "party", "deficit"].map(String::from), &rows);
        }
        Trace::Deficits { log } => {
            let mut h = vec!["seat".to_string(), "house".to_string()];
            h.extend(ids.iter().map(|s| s.to_string()));
            h.push("to".into());
            let rows: Vec<Vec<String>> = log
                .iter()
                .map(|d| {
                    let mut r = vec![d.iteration.to_string(), d.house.to_string()];
                    r.extend(d.deficits.iter().map(quota_cell));
                    r.push(ids[d.awarded].to_string());
                    r
                })
                .collect();
            table(out, &h, &rows);
        }
    }
}

fn multiplier_rows<'a>(
    steps: impl Iterator<Item = (&'a Rational, &'a Vec<u64>)>,
) -> Vec<Vec<String>> {
    steps
        .map(|(m, seats)| {
            let mut r = vec![quota_cell(m)];
            r.extend(seats.iter().map(u64::to_string));
            r
        })
        .collect()
}

pub fn render_suite(r: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} suite: {} trials, {} agreements, {} disagreements, {} witnesses",
        serde_plain(&r.suite),
        r.trials_run,
        r.agreements,
        r.disagreements.len(),
        r.witnesses.len()
    );
    let rows: Vec<Vec<String>> = r
        .statistics
        .iter()
        .map(|(k, s)| {
            vec![
                k.clone(),
                s.samples.to_string(),
                s.sum.to_string(),
                s.mean.as_ref().map_or("-".into(), quota_cell),
            ]
        })
        .collect();
    if !rows.is_empty() {
        out.push('\n');
        table(
            &mut out,
            &["statistic", "samples", "sum", "mean"].map(String::from),
            &rows,
        );
    }
    for d in r.disagreements.iter().take(10) {
        let _ = writeln!(
            out,
            "trial {}: votes {:?}, {} seats, {} failing checks",
            d.trial,
            d.instance.votes,
            d.instance.house_size,
            d.failures.len()
        );
    }
    out
}
