use frontdoor::corpus::{binary_assignments, random_model, rng};
use frontdoor::fixtures;
use frontdoor::prob::{parse_model, write_model};
use frontdoor::{
    adjustment_functional, check_positivity, frontdoor_functional, intervene, observational_joint, Assignment,
    Cpt, Model, NodeSet, ProbError, Query, Rational, Scalar,
};

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn a(pairs: &[(&str, usize)]) -> Assignment {
    pairs.iter().map(|&(k, v)| (k.into(), v)).collect()
}

fn collider() -> Model {
    parse_model(fixtures::COLLIDER_K1_MODEL).unwrap()
}

#[test]
fn collider_tables() {
    let m = collider();
    let j = observational_joint(&m).unwrap();
    assert_eq!(j.at(&a(&[("X", 0), ("Y", 0), ("Z", 0)])).unwrap(), &r(3, 16));
    assert_eq!(j.total(), r(1, 1));
    let y = NodeSet::from_labels(["Y"]);
    let cond = j.conditional(&y, &a(&[("Z", 0), ("X", 0)])).unwrap();
    assert_eq!(cond.at(&a(&[("Y", 0)])).unwrap(), &r(3, 5));
    let done = intervene(&m, &a(&[("X", 0)])).unwrap().marginal(&y).unwrap();
    assert_eq!(done.at(&a(&[("Y", 0)])).unwrap(), &r(1, 2));
    let q = Query::from_labels(&["X"], &["Y"], &["Z"]);
    let f = frontdoor_functional(&j, &q, &a(&[("X", 0)])).unwrap();
    assert_eq!(f.at(&a(&[("Y", 0)])).unwrap(), &r(8, 15));
}

#[test]
fn independent_outcome_gives_marginal() {
    let m: Model = parse_model(
        "X -> Z\nnode Y\n\ncpt X\ndomain 0 1\nrow : 1/3 2/3\n\ncpt Z | X\ndomain 0 1\nrow 0 : 1/5 4/5\nrow 1 : 1/2 1/2\n\ncpt Y\ndomain 0 1\nrow : 2/7 5/7\n",
    )
    .unwrap();
    let j = observational_joint(&m).unwrap();
    let q = Query::from_labels(&["X"], &["Y"], &["Z"]);
    for xs in binary_assignments(&q.x) {
        assert_eq!(frontdoor_functional(&j, &q, &xs).unwrap(), j.marginal(&q.y).unwrap());
    }
}

#[test]
fn treatment_pair_reduces_to_x2() {
    let q = Query::from_labels(&["X1", "X2"], &["Y"], &["Z"]);
    for seed in 0..10 {
        let m = random_model(&mut rng(seed), &fixtures::fdc_violate_2(), 9).unwrap();
        let j = observational_joint(&m).unwrap();
        for xs in binary_assignments(&q.x) {
            let f = frontdoor_functional(&j, &q, &xs).unwrap();
            let x2 = a(&[("X2", xs[&"X2".into()])]);
            assert_eq!(f, j.conditional(&q.y, &x2).unwrap());
            assert_eq!(f, intervene(&m, &xs).unwrap().marginal(&q.y).unwrap());
        }
    }
}

#[test]
fn adjustment_on_a_chain_is_wrong() {
    let m: Model = parse_model(
        "X -> Z\nZ -> Y\n\ncpt X\ndomain 0 1\nrow : 1/2 1/2\n\ncpt Z | X\ndomain 0 1\nrow 0 : 3/4 1/4\nrow 1 : 1/4 3/4\n\ncpt Y | Z\ndomain 0 1\nrow 0 : 3/4 1/4\nrow 1 : 1/4 3/4\n",
    )
    .unwrap();
    let j = observational_joint(&m).unwrap();
    let q = Query::from_labels(&["X"], &["Y"], &["Z"]);
    let xs = a(&[("X", 0)]);
    let adj = adjustment_functional(&j, &q, &xs).unwrap();
    let oracle = intervene(&m, &xs).unwrap().marginal(&q.y).unwrap();
    // Adjusting for the mediator erases the effect: P(Y=0) = 1/2 against 5/8.
    assert_eq!(adj.at(&a(&[("Y", 0)])).unwrap(), &r(1, 2));
    assert_eq!(oracle.at(&a(&[("Y", 0)])).unwrap(), &r(5, 8));
    assert!(check_positivity(&j));
}

#[test]
fn non_positive_joints() {
    let m: Model = parse_model(
        "latent U\nU -> X\nU -> Y\n\ncpt U\ndomain 0 1\nrow : 1/2 1/2\n\ncpt X | U\ndomain 0 1\nrow 0 : 1 0\nrow 1 : 0 1\n\ncpt Y | U\ndomain 0 1\nrow 0 : 1 0\nrow 1 : 0 1\n",
    )
    .unwrap();
    let j = observational_joint(&m).unwrap();
    assert_eq!(j.at(&a(&[("X", 0), ("Y", 0)])).unwrap(), &r(1, 2));
    assert!(!check_positivity(&j));
    let q = Query::from_labels(&["X"], &["Y"], &[]);
    assert!(adjustment_functional(&j, &q, &a(&[("X", 0)])).is_ok());
    assert_eq!(
        j.conditional(&q.y, &a(&[("X", 0), ("Y", 1)])).unwrap_err(),
        ProbError::ZeroProbabilityEvent
    );
}

#[test]
fn model_text_round_trips() {
    let m = collider();
    let text = write_model(&m);
    assert_eq!(parse_model::<Rational>(&text).unwrap(), m);
    let big = random_model(&mut rng(5), &fixtures::latent_projection_a(), 9).unwrap();
    assert_eq!(parse_model::<Rational>(&write_model(&big)).unwrap(), big);
}

#[test]
fn float_models_track_exact_ones() {
    let m = collider();
    let mf = m.map_scalar(Scalar::to_f64).unwrap();
    let j = observational_joint(&mf).unwrap();
    let q = Query::from_labels(&["X"], &["Y"], &["Z"]);
    let f = frontdoor_functional(&j, &q, &a(&[("X", 0)])).unwrap();
    assert!(f.at(&a(&[("Y", 0)])).unwrap().approx_eq(&(8.0 / 15.0)));
    let cpt: Cpt<f32> = Cpt::binary_root("C", 0.25);
    assert_eq!(cpt.rows()[0], vec![0.25, 0.75]);
}
