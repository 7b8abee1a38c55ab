mod common;

use common::read_fixture;
use genchase::chase::chase;
use genchase::io::{parse_problem, render_problem, write_log};
use genchase::model::ObjectKind;

#[test]
fn demo_file_has_five_atoms_and_one_st_tgd() {
    let p = parse_problem(&read_fixture("F1.cht")).unwrap();
    assert_eq!(p.object.kind(), ObjectKind::Instance);
    assert_eq!(p.object.len(), 5);
    assert_eq!(p.dependencies.len(), 1);
    assert!(p.dependencies[0].source_target && p.dependencies[0].is_tgd());
    assert_eq!(p.query_head, None);
    assert_eq!(p.schema.relations().len(), 3);
}

#[test]
fn query_fixtures_carry_a_head() {
    for name in ["F3q.cht", "F4.cht", "F5.cht"] {
        let p = parse_problem(&read_fixture(name)).unwrap();
        assert_eq!(p.object.kind(), ObjectKind::Query, "{name}");
        assert!(p.query_head.is_some(), "{name}");
    }
}

#[test]
fn rendered_problem_is_stable() {
    let p = parse_problem(&read_fixture("F1.cht")).unwrap();
    let text = render_problem(&p);
    assert_eq!(render_problem(&parse_problem(&text).unwrap()), text);
    assert!(text.contains("st participant(#V_module_1,#V_id_1,#V_semester_1), student(#V_id_1,'Max',#V_course_1) -> grade("));
}

#[test]
fn demo_log_lines() {
    let p = parse_problem(&read_fixture("F1.cht")).unwrap();
    let o = chase(&p.dependencies, &p.object, 100).unwrap();
    let log = write_log(&o.log, &[]);
    assert_eq!(
        log,
        "Chase log: 2 steps\n\
         step 1: sigma1 via {#V_course_1 -> 'Math', #V_id_1 -> 3, #V_module_1 -> 2, #V_semester_1 -> 4} => AddedAtoms: grade(2,3,#N_semester_2,#N_score_1)\n\
         step 2: sigma1 via {#V_course_1 -> 'Math', #V_id_1 -> 3, #V_module_1 -> 7, #V_semester_1 -> #N_semester_1} => AddedAtoms: grade(7,3,#N_semester_3,#N_score_2)\n"
    );
}
