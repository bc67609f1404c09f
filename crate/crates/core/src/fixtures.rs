//! Reference graphs used by the test suite and the verification harness.

use crate::criteria::Query;
use crate::graph::Admg;

pub const IDENTIFIABILITY_A: &str = include_str!("../fixtures/identifiability_a.graph");
pub const IDENTIFIABILITY_B: &str = include_str!("../fixtures/identifiability_b.graph");
pub const LATENT_PROJECTION_A: &str = include_str!("../fixtures/latent_projection_a.graph");
pub const LATENT_PROJECTION_B: &str = include_str!("../fixtures/latent_projection_b.graph");
pub const FDC_VIOLATE_2: &str = include_str!("../fixtures/fdc_violate_2.graph");
pub const FDC_VIOLATE_3: &str = include_str!("../fixtures/fdc_violate_3.graph");

fn load(text: &str) -> Admg {
    text.parse().expect("bundled fixture parses")
}

pub fn identifiability_a() -> Admg {
    load(IDENTIFIABILITY_A)
}

pub fn identifiability_b() -> Admg {
    load(IDENTIFIABILITY_B)
}

pub fn latent_projection_a() -> Admg {
    load(LATENT_PROJECTION_A)
}

pub fn latent_projection_b() -> Admg {
    load(LATENT_PROJECTION_B)
}

pub fn fdc_violate_2() -> Admg {
    load(FDC_VIOLATE_2)
}

pub fn fdc_violate_3() -> Admg {
    load(FDC_VIOLATE_3)
}

pub const CHAIN: &str = include_str!("../fixtures/chain.graph");
pub const COLLIDER_K1_MODEL: &str = include_str!("../fixtures/collider_k1.model");

/// A graph on which the front-door functional is correct although Pearl's
/// criterion fails. `panel` is `a` (violates (3)), `b` (violates (2)) or
/// `c` (violates both).
#[derive(Clone, Copy, Debug)]
pub struct NonExample {
    pub name: &'static str,
    pub panel: char,
    pub text: &'static str,
    pub x: &'static [&'static str],
    pub z: &'static [&'static str],
}

impl NonExample {
    pub fn graph(&self) -> Admg {
        load(self.text)
    }

    pub fn query(&self) -> Query {
        Query::from_labels(self.x, &["Y"], self.z)
    }
}

pub const NON_EXAMPLES: [NonExample; 8] = [
    NonExample { name: "a1", panel: 'a', text: FDC_VIOLATE_3, x: &["X"], z: &["Z1", "Z2"] },
    NonExample {
        name: "a2",
        panel: 'a',
        text: include_str!("../fixtures/nonexample_a2.graph"),
        x: &["X1", "X2"],
        z: &["Z"],
    },
    NonExample {
        name: "a3",
        panel: 'a',
        text: include_str!("../fixtures/nonexample_a3.graph"),
        x: &["X"],
        z: &["Z1", "Z2", "Z3", "Z4"],
    },
    NonExample { name: "b1", panel: 'b', text: FDC_VIOLATE_2, x: &["X1", "X2"], z: &["Z"] },
    NonExample {
        name: "b2",
        panel: 'b',
        text: include_str!("../fixtures/nonexample_b2.graph"),
        x: &["X1", "X2"],
        z: &["Z1", "Z2", "Z3"],
    },
    NonExample {
        name: "c1",
        panel: 'c',
        text: include_str!("../fixtures/nonexample_c1.graph"),
        x: &["X"],
        z: &["Z1", "Z2"],
    },
    NonExample {
        name: "c2",
        panel: 'c',
        text: include_str!("../fixtures/nonexample_c2.graph"),
        x: &["X"],
        z: &["Z1", "Z2", "Z3", "Z4"],
    },
    NonExample {
        name: "c3",
        panel: 'c',
        text: include_str!("../fixtures/nonexample_c3.graph"),
        x: &["X"],
        z: &["Z1", "Z2", "Z3"],
    },
];
