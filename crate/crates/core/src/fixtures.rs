//! Hand-transcribed layouts, each paired with the graph it
//! is meant to realize. Square `i` of a layout is vertex `i` of its graph.

use crate::geometry::Layout;
use crate::graphs::Graph;
use crate::io::{parse_graph, parse_layout};

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub layout_text: &'static str,
    pub graph_text: &'static str,
}

impl Fixture {
    pub fn layout(&self) -> Layout {
        parse_layout(self.layout_text).unwrap_or_else(|e| panic!("fixture {}: {e}", self.name))
    }

    pub fn graph(&self) -> Graph {
        parse_graph(self.graph_text).unwrap_or_else(|e| panic!("fixture {}: {e}", self.name))
    }
}

macro_rules! fixture {
    ($name:literal) => {
        Fixture {
            name: $name,
            layout_text: include_str!(concat!("../../../fixtures/", $name, ".layout")),
            graph_text: include_str!(concat!("../../../fixtures/", $name, ".graph")),
        }
    };
}

pub const NONPLANAR: Fixture = fixture!("nonplanar");
pub const K33_SUBDIVISION: Fixture = fixture!("k33_subdivision");
pub const K16: Fixture = fixture!("k16");
/// As drawn, squares 0-1, 2-3-4 and 5-6-7 meet at corners; the validator
/// rejects it.
pub const K26_AS_DRAWN: Fixture = fixture!("k26_as_drawn");
pub const K34: Fixture = fixture!("k34");
pub const K4: Fixture = fixture!("k4");
pub const K5_MINUS_EDGE: Fixture = fixture!("k5_minus_edge");
/// Frame graph for m = 1, B = 2. Without ladders the two w columns see each
/// other along rows 4 and 6, so extraction adds those two edges.
pub const FRAME: Fixture = fixture!("frame");
pub const TWO_CENTRE_TREE: Fixture = fixture!("two_centre_tree");
pub const K4_CLASS1: Fixture = fixture!("k4_class1");
pub const K4_CLASS2: Fixture = fixture!("k4_class2");
pub const K4_CLASS3: Fixture = fixture!("k4_class3");
pub const K5_SUBDIVISION: Fixture = fixture!("k5_subdivision");

pub const ALL: [Fixture; 13] = [
    NONPLANAR,
    K33_SUBDIVISION,
    K16,
    K26_AS_DRAWN,
    K34,
    K4,
    K5_MINUS_EDGE,
    FRAME,
    TWO_CENTRE_TREE,
    K4_CLASS1,
    K4_CLASS2,
    K4_CLASS3,
    K5_SUBDIVISION,
];

pub fn by_name(name: &str) -> Option<Fixture> {
    ALL.iter().copied().find(|f| f.name == name)
}
