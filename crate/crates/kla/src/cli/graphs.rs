use kla_core::arith::Rationals;
use kla_core::cohomology::betti_table;
use kla_core::quotient::expand_tables;
use kla_core::raag::{clique_data, decompose as split, droms_obstruction, lex_bfs, maximal_cliques, peo_violation, raag_presentation, Obstruction};
use serde_json::json;

use super::{CliError, Options};
use crate::frontend::{render_presentation, GraphSource};
use crate::report::{betti_grid, betti_json, poly_text, Report};

fn graph_json(g: &GraphSource) -> serde_json::Value {
    json!({ "name": g.name, "vertices": g.graph.len(), "edges": g.graph.edge_count() })
}

/// The presentation plus a comparison of its Betti diagonal with the clique
/// counts through `--max-degree`.
pub(super) fn raag(g: &GraphSource, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new("raag");
    let p = raag_presentation(Rationals, &g.graph)?.renamed(g.name.clone());
    let text = render_presentation(&p);
    for l in text.lines() {
        r.line(l.to_string());
    }
    r.set("presentation", json!(text));
    let counts = clique_data(&g.graph)?.counts;
    let t = expand_tables(&p, opts.max_degree)?.structure();
    let b = betti_table(&t, None);
    let mismatch = b.nonzero().into_iter().find(|&(i, j, x)| i as u32 != j || counts.get(i).copied().unwrap_or(0) != x as u64);
    let missing = (1..=b.rows().min(opts.max_degree as usize)).find(|&i| counts.get(i).copied().unwrap_or(0) != b.get(i, i as u32) as u64);
    r.line(betti_grid(&b).trim_end().to_string());
    r.set("betti", betti_json(&b));
    r.set("clique_counts", json!(counts));
    r.set("graph", graph_json(g));
    let ok = mismatch.is_none() && missing.is_none();
    if let Some((i, j, x)) = mismatch {
        r.set("witness", json!({ "i": i, "j": j, "value": x }));
    } else if let Some(i) = missing {
        r.set("witness", json!({ "i": i, "j": i, "value": b.get(i, i as u32) }));
    }
    r.line(format!("Betti diagonal = clique counts through degree {}: {}", opts.max_degree, if ok { "PASS" } else { "FAIL" }));
    r.check("clique_polynomial", ok);
    Ok(r)
}

pub(super) fn clique_poly(g: &GraphSource) -> Result<Report, CliError> {
    let mut r = Report::new("clique-poly");
    let c = clique_data(&g.graph)?;
    let max = maximal_cliques(&g.graph)?;
    r.line(format!("clique polynomial: {}", poly_text(&c.counts)));
    r.line(format!("clique number: {}", c.clique_number()));
    let rendered: Vec<String> = max.iter().map(|m| g.graph.render_set(m)).collect();
    r.line(format!("maximal cliques: {}", rendered.join(" ")));
    r.set("counts", json!(c.counts));
    r.set("clique_number", json!(c.clique_number()));
    r.set("maximal_cliques", json!(rendered));
    r.set("graph", graph_json(g));
    Ok(r)
}

pub(super) fn droms(g: &GraphSource) -> Report {
    let mut r = Report::new("droms");
    r.set("graph", graph_json(g));
    match droms_obstruction(&g.graph) {
        None => {
            r.line("Droms");
            r.set("droms", json!(true));
            r.check("droms", true);
        }
        Some(o) => {
            let (kind, label) = match o {
                Obstruction::Square(_) => ("square", "induced square"),
                Obstruction::Path(_) => ("path", "induced path on four vertices"),
            };
            let set = g.graph.render_set(&o.vertices());
            r.line(format!("not Droms: {label} {set}"));
            r.set("droms", json!(false));
            r.set("witness", json!({ "kind": kind, "vertices": o.vertices().iter().map(|&v| g.graph.names()[v].clone()).collect::<Vec<_>>() }));
            r.check("droms", false);
        }
    }
    r
}

pub(super) fn chordal(g: &GraphSource) -> Report {
    let mut r = Report::new("chordal");
    let order = lex_bfs(&g.graph);
    let names = g.graph.names();
    r.set("order", json!(order.iter().map(|&v| names[v].clone()).collect::<Vec<_>>()));
    r.set("graph", graph_json(g));
    match peo_violation(&g.graph, &order) {
        None => {
            r.line("chordal");
            r.check("chordal", true);
        }
        Some([v, a, b]) => {
            r.line(format!("not chordal: {} has nonadjacent earlier neighbours {} and {}", names[v], names[a], names[b]));
            r.set("witness", json!({ "vertex": names[v], "nonadjacent": [names[a], names[b]] }));
            r.check("chordal", false);
        }
    }
    r
}

pub(super) fn decompose(g: &GraphSource) -> Report {
    let mut r = Report::new("decompose");
    let d = split(&g.graph);
    let text = d.render(&g.graph);
    r.line(text.clone());
    r.set("decomposition", json!(text));
    r.set("graph", graph_json(g));
    match d.obstruction() {
        None => r.check("decomposable", true),
        Some(vs) => {
            r.set("witness", json!({ "indecomposable": vs.iter().map(|&v| g.graph.names()[v].clone()).collect::<Vec<_>>() }));
            r.check("decomposable", false);
        }
    }
    r
}
