use frontdoor::fixtures;
use frontdoor::{
    check_adjustment, check_backdoor, check_generalized_fdc, check_pearl_fdc, find_cond1_violation,
    find_cond_ii_pattern, Admg, Criterion, CriterionReport, Path, Pattern, Query,
};

fn q(x: &[&str], y: &[&str], z: &[&str]) -> Query {
    Query::from_labels(x, y, z)
}

fn g(text: &str) -> Admg {
    text.parse().unwrap()
}

fn witness(r: &CriterionReport, label: &str) -> Option<String> {
    r.condition(label).unwrap().witness.as_ref().map(Path::to_string)
}

#[test]
fn backdoor() {
    assert!(check_backdoor(&g("X -> Z\nZ -> Y"), &q(&["X"], &["Y"], &[])).unwrap().holds);
    assert!(!check_backdoor(&fixtures::identifiability_a(), &q(&["X"], &["Y"], &["Z"])).unwrap().holds);
    assert!(check_backdoor(&g("Z -> X\nZ -> Y"), &q(&["X"], &["Y"], &["Z"])).unwrap().holds);
}

#[test]
fn adjustment() {
    let r = check_adjustment(&g("X -> W\nW -> Y\nW -> D"), &q(&["X"], &["Y"], &["D"])).unwrap();
    assert!(!r.holds && !r.condition("1").unwrap().holds);
    assert!(check_adjustment(&g("Z -> X\nZ -> Y"), &q(&["X"], &["Y"], &["Z"])).unwrap().holds);
    let r = check_adjustment(&fixtures::identifiability_a(), &q(&["X"], &["Y"], &["Z"])).unwrap();
    assert_eq!(witness(&r, "2").as_deref(), Some("X <-> Y"));
}

#[test]
fn pearl_front_door() {
    let fd = q(&["X"], &["Y"], &["Z"]);
    assert!(check_pearl_fdc(&fixtures::identifiability_b(), &fd).unwrap().holds);
    let r = check_pearl_fdc(&fixtures::fdc_violate_3(), &q(&["X"], &["Y"], &["Z1", "Z2"])).unwrap();
    assert_eq!(witness(&r, "3").as_deref(), Some("Z1 <-> Z2 -> Y"));
    let r = check_pearl_fdc(&fixtures::fdc_violate_2(), &q(&["X1", "X2"], &["Y"], &["Z"])).unwrap();
    assert_eq!(witness(&r, "2").as_deref(), Some("X1 <- X2 -> Z"));
}

#[test]
fn generalized_front_door() {
    let fd = q(&["X"], &["Y"], &["Z"]);
    assert!(check_generalized_fdc(&fixtures::identifiability_b(), &fd).unwrap().holds);
    assert!(check_generalized_fdc(&fixtures::fdc_violate_3(), &q(&["X"], &["Y"], &["Z1", "Z2"])).unwrap().holds);
    let r = check_generalized_fdc(&g("X -> Z\nY -> Z"), &fd).unwrap();
    assert_eq!(witness(&r, "ii").as_deref(), Some("X -> Z <- Y"));
    assert!(r.condition("i").unwrap().holds);
}

#[test]
fn direct_path_violations() {
    assert_eq!(find_cond1_violation(&g("X -> Z\nZ -> Y"), &q(&["X"], &["Y"], &["Z"])).unwrap(), None);
    let w = find_cond1_violation(&g("X -> Y\nX -> Z"), &q(&["X"], &["Y"], &["Z"])).unwrap();
    assert_eq!(w.unwrap().to_string(), "X -> Y");
    let w = find_cond1_violation(&g("X -> W\nW -> Y\nnode Z"), &q(&["X"], &["Y"], &["Z"])).unwrap();
    assert_eq!(w.unwrap().to_string(), "X -> W -> Y");
}

#[test]
fn necessity_patterns() {
    let fd = q(&["X"], &["Y"], &["Z"]);
    let w = find_cond_ii_pattern(&g("X -> Z\nY -> Z"), &fd).unwrap().unwrap();
    assert_eq!((w.pattern, w.k), (Pattern::B, 1));
    let w = find_cond_ii_pattern(&g("X -> Z\nZ <-> Y"), &fd).unwrap().unwrap();
    assert_eq!((w.pattern, w.k), (Pattern::C, 1));
    assert_eq!(find_cond_ii_pattern(&fixtures::identifiability_b(), &fd).unwrap(), None);
    let w = find_cond_ii_pattern(&g("X -> W\nW -> Y\nnode Z"), &fd).unwrap().unwrap();
    assert_eq!(w.pattern, Pattern::A);
}

#[test]
fn queries_are_validated() {
    let h = fixtures::identifiability_b();
    assert!(check_pearl_fdc(&h, &q(&["X"], &["X"], &[])).is_err());
    assert!(check_pearl_fdc(&h, &q(&[], &["Y"], &[])).is_err());
    let latent = fixtures::latent_projection_a();
    assert!(check_generalized_fdc(&latent, &q(&["X"], &["Y"], &["U1"])).is_err());
}

#[test]
fn criterion_names_and_reports() {
    for c in Criterion::ALL {
        assert_eq!(c.name().parse::<Criterion>().unwrap(), c);
    }
    let r = Criterion::Gfdc.check(&fixtures::fdc_violate_3(), &q(&["X"], &["Y"], &["Z1", "Z2"])).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<CriterionReport>(&json).unwrap(), r);
}
