//! CSV renderings.

use qgraph::audit::GraphRow;
use qgraph::Graph;

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn edges_csv(g: &Graph) -> String {
    let mut out = String::from("u,v\n");
    for (u, v) in g.edges() {
        out.push_str(&format!("{u},{v}\n"));
    }
    out
}

pub fn rows_csv(rows: &[GraphRow]) -> String {
    let mut out = String::from(
        "name,n,edges,alpha,omega,chi,chi_f,theta,theta_bar,c0,chi_q_upper,alpha_q_lower,xi_f_upper,checks,failed\n",
    );
    for r in rows {
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        let cells = [
            field(&r.name),
            r.n.to_string(),
            r.edges.to_string(),
            r.alpha.to_string(),
            r.omega.to_string(),
            r.chi.to_string(),
            r.chi_f.clone().unwrap_or_default(),
            format!("{:.6}", r.theta),
            format!("{:.6}", r.theta_bar),
            r.c0.to_string(),
            r.chi_q_upper.to_string(),
            r.alpha_q_lower.to_string(),
            r.xi_f_upper.clone().unwrap_or_default(),
            r.checks.len().to_string(),
            field(&failed.join("; ")),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
