use std::fmt::Write as _;

use super::ChaseProblem;
use crate::chase::{ChaseOutcome, ChaseStatus, LogAction, StepLog};
use crate::model::{ObjectKind, Query};

/// Writes `p` back in the problem-file syntax. Instance atoms come out sorted.
pub fn render_problem(p: &ChaseProblem) -> String {
    let mut out = String::from("[schema]\n");
    for r in p.schema.relations() {
        let _ = writeln!(out, "{}({})", r.name, r.attributes.join(", "));
    }
    out.push_str("\n[dependencies]\n");
    for d in &p.dependencies {
        let _ = writeln!(out, "{d}");
    }
    match (p.object.kind(), &p.query_head) {
        (ObjectKind::Query, Some(head)) => {
            out.push_str("\n[query]\n");
            let q = Query {
                body: p.object.sorted_for_display(),
                head: head.clone(),
            };
            let _ = writeln!(out, "{q}");
        }
        _ => {
            out.push_str("\n[instance]\n");
            for a in p.object.sorted_for_display() {
                let _ = writeln!(out, "{a}");
            }
        }
    }
    out
}

/// Result text of a run: the target atoms (or the query) on a fixpoint, a
/// fixed token otherwise.
pub fn render_result(o: &ChaseOutcome) -> String {
    match o.status {
        ChaseStatus::Fixpoint => match &o.query {
            Some(q) => format!("{q}\n"),
            None => o
                .target()
                .sorted_for_display()
                .iter()
                .map(|a| format!("{a}\n"))
                .collect(),
        },
        ChaseStatus::FailedBottom => "_|_\n".into(),
        ChaseStatus::EmptyQuery => "{}\n".into(),
        ChaseStatus::StepLimit => format!("STEP-LIMIT({})\n", o.steps()),
    }
}

/// Log text: the given check lines, a header, then one line per step.
pub fn write_log(log: &StepLog, check_lines: &[String]) -> String {
    let mut out = String::new();
    for line in check_lines {
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(out, "Chase log: {} steps", log.len());
    for e in log.entries() {
        let (action, payload) = match &e.action {
            LogAction::AddedAtoms(atoms) => (
                "AddedAtoms",
                atoms
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
            ),
            LogAction::Substituted { from, to } => ("Substituted", format!("{from} -> {to}")),
            LogAction::Conflict { left, right } => ("Conflict", format!("{left} != {right}")),
        };
        let _ = writeln!(
            out,
            "step {}: {} via {} => {action}: {payload}",
            e.step, e.dependency, e.binding
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chase::run;
    use crate::io::parse_problem;

    const CONFLICT: &str = "[schema]\nR(a, b)\n[dependencies]\nR(#V_x_1, #V_y_1), R(#V_x_1, #V_y_2) -> #V_y_1 = #V_y_2\n[instance]\nR(1, 2)\nR(1, 3)\n";

    fn outcome(src: &str, max: usize) -> ChaseOutcome {
        let p = parse_problem(src).unwrap();
        run(&p.dependencies, &p.object, p.query_head.as_ref(), max).unwrap()
    }

    #[test]
    fn conflict_renders_bottom_and_logs_conflict() {
        let o = outcome(CONFLICT, 100);
        assert_eq!(render_result(&o), "_|_\n");
        let log = write_log(&o.log, &[]);
        assert_eq!(log.lines().next(), Some("Chase log: 1 steps"));
        assert_eq!(
            log.lines().last(),
            Some("step 1: sigma1 via {#V_x_1 -> 1, #V_y_1 -> 2, #V_y_2 -> 3} => Conflict: 2 != 3")
        );
    }

    #[test]
    fn empty_log_is_header_only() {
        assert_eq!(write_log(&StepLog::default(), &[]), "Chase log: 0 steps\n");
        assert_eq!(
            write_log(&StepLog::default(), &["a".into()]),
            "a\nChase log: 0 steps\n"
        );
    }

    #[test]
    fn empty_fixpoint_is_empty_text() {
        let o = outcome("[schema]\nR(a)\n[instance]\n", 10);
        assert_eq!(o.status, ChaseStatus::Fixpoint);
        assert_eq!(render_result(&o), "");
    }

    #[test]
    fn step_limit_token() {
        let o = outcome(
            "[schema]\nR(a,b)\n[dependencies]\nR(#V_x_1,#V_y_1) -> R(#V_y_1,#E_z_1)\n[instance]\nR(1,2)",
            4,
        );
        assert_eq!(render_result(&o), "STEP-LIMIT(4)\n");
    }

    #[test]
    fn problem_round_trip() {
        for src in [
            CONFLICT,
            "[schema]\nR(a,b)\n[dependencies]\nst R(#V_x_1,'q') -> R(#V_x_1,#E_y_1), R(-4,#V_x_1)\n[query]\nR(#V_x_1,#E_b_2), R(3,#V_x_1) -> (#V_x_1, 'c')",
        ] {
            let p = parse_problem(src).unwrap();
            let text = render_problem(&p);
            assert_eq!(parse_problem(&text).unwrap(), p, "{text}");
            assert_eq!(render_problem(&parse_problem(&text).unwrap()), text);
        }
    }
}
