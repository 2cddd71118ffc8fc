#![allow(dead_code)]

use wellbalanced::format::parse_star;
use wellbalanced::StarRayless;

/// Named star instances used by the acceptance suite and integration tests.
pub const STARS: &[(&str, &str)] = &[
    ("bare-pair", "core { edge a b 2 }"),
    ("bare-triangle", "core { edge a b 1 edge b c 1 edge a c 1 }"),
    (
        "finite-pair",
        "core { vertex u vertex v }
         template t copies 2 { edge w b0 1 edge w b1 1 attach b0 u attach b1 v }",
    ),
    (
        "omega-pair",
        "core { vertex u vertex v }
         template t copies omega { edge w b0 1 edge w b1 1 attach b0 u attach b1 v }",
    ),
    (
        "omega-pair-double",
        "core { vertex u vertex v }
         template t copies omega { edge w b0 2 edge w b1 2 attach b0 u attach b1 v }",
    ),
    (
        "omega-chain",
        "core { vertex u vertex v vertex w }
         template a copies omega { edge p b0 1 edge p b1 1 attach b0 u attach b1 v }
         template b copies omega { edge p b0 1 edge p b1 1 attach b0 v attach b1 w }",
    ),
    (
        "three-way-with-core-edge",
        "core { edge x y 1 vertex z }
         template t copies omega { edge w bx 1 edge w by 1 edge w bz 1
                                   attach bx x attach by y attach bz z }",
    ),
    (
        "three-way",
        "core { vertex x vertex y vertex z }
         template t copies omega { edge w bx 1 edge w by 1 edge w bz 1
                                   attach bx x attach by y attach bz z }",
    ),
    (
        "three-way-two-interior",
        "core { vertex x vertex y vertex z }
         template t copies omega { edge p bx 1 edge p by 1 edge p q 1 edge q bz 1
                                   attach bx x attach by y attach bz z }",
    ),
    (
        "mixed-finite-omega",
        "core { vertex u edge v x 2 }
         template inf copies omega { edge p b0 1 edge q b1 1 edge p q 1 attach b0 u attach b1 v }
         template fin copies 3 { edge p b0 1 edge p b1 1 attach b0 u attach b1 x }",
    ),
    (
        "pendant-omega",
        "core { edge u v 1 }
         template t copies omega { edge w b 2 attach b u }",
    ),
    ("core-omega-edge", "core { edge a b omega edge b c 1 }"),
    (
        "core-omega-plus-template",
        "core { edge a b omega vertex c }
         template t copies omega { edge w b0 1 edge w b1 1 attach b0 b attach b1 c }",
    ),
    (
        "omega-cycle",
        "core { vertex u vertex v vertex w }
         template a copies omega { edge p b0 1 edge p b1 1 attach b0 u attach b1 v }
         template b copies omega { edge p b0 1 edge p b1 1 attach b0 v attach b1 w }
         template c copies omega { edge p b0 1 edge p b1 1 attach b0 w attach b1 u }",
    ),
    (
        "omega-interior-edge",
        "core { vertex u vertex v }
         template t copies omega { edge p q omega edge p b0 1 edge q b1 1 attach b0 u attach b1 v }",
    ),
    (
        "finite-triangle-template",
        "core { vertex x vertex y vertex z }
         template t copies 1 { edge p q 1 edge q r 1 edge r p 1 edge p bx 1 edge q by 1 edge r bz 1
                               attach bx x attach by y attach bz z }",
    ),
    (
        "two-omega-same-pair",
        "core { vertex u vertex v }
         template a copies omega { edge w b0 1 edge w b1 1 attach b0 u attach b1 v }
         template b copies omega { edge p b0 2 edge p q 1 edge q b1 1 attach b0 u attach b1 v }",
    ),
    (
        "path-core-omega-ends",
        "core { edge a b 1 edge b c 1 edge c d 1 }
         template t copies omega { edge w b0 1 edge w b1 1 attach b0 a attach b1 d }",
    ),
    (
        "four-way",
        "core { vertex a vertex b vertex c vertex d }
         template t copies omega { edge w ba 1 edge w bb 1 edge w bc 1 edge w bd 1
                                   attach ba a attach bb b attach bc c attach bd d }",
    ),
    (
        "long-interior-path",
        "core { vertex u vertex v }
         template t copies omega { edge b0 p 1 edge p q 1 edge q r 1 edge r b1 1 attach b0 u attach b1 v }",
    ),
    (
        "finite-three-way",
        "core { vertex x vertex y vertex z }
         template t copies 3 { edge w bx 1 edge w by 1 edge w bz 1
                               attach bx x attach by y attach bz z }",
    ),
    (
        "k4-core-omega-diagonal",
        "core { edge a b 1 edge b c 1 edge c d 1 edge d a 1 edge a c 1 edge b d 1 }
         template t copies omega { edge w b0 1 edge w b1 1 attach b0 a attach b1 c }",
    ),
    (
        "two-classes-finite-link",
        "core { vertex x vertex y vertex z vertex w }
         template a copies omega { edge p b0 1 edge p b1 1 attach b0 x attach b1 y }
         template b copies omega { edge p b0 1 edge p b1 1 attach b0 z attach b1 w }
         template link copies 2 { edge p b0 1 edge p b1 1 attach b0 y attach b1 z }",
    ),
    (
        "two-classes-core-link",
        "core { vertex x vertex w edge y z 1 }
         template a copies omega { edge p b0 1 edge p b1 1 attach b0 x attach b1 y }
         template b copies omega { edge p b0 1 edge p b1 1 attach b0 z attach b1 w }
         template link copies 2 { edge p b0 1 edge p b1 1 attach b0 y attach b1 z }",
    ),
    (
        "three-way-then-pair",
        "core { vertex x vertex y vertex z vertex w }
         template t copies omega { edge p bx 1 edge p by 1 edge p bz 1
                                   attach bx x attach by y attach bz z }
         template s copies omega { edge p b0 1 edge p b1 1 attach b0 z attach b1 w }",
    ),
    (
        "omega-pair-heavy",
        "core { edge u v 2 }
         template t copies omega { edge w b0 3 edge w b1 3 attach b0 u attach b1 v }",
    ),
    (
        "single-vertex-core",
        "core { vertex u }
         template t copies omega { edge w b 1 edge w x 2 edge x b 1 attach b u }",
    ),
    (
        "pendant-finite",
        "core { edge u v 3 }
         template t copies 2 { edge w b 1 edge w x 1 attach b v }",
    ),
    (
        "hub-and-leaves",
        "core { edge h l1 1 edge h l3 2 vertex l2 }
         template a copies omega { edge p b0 1 edge p b1 1 attach b0 l1 attach b1 l2 }
         template b copies omega { edge p b0 1 edge p b1 1 attach b0 l2 attach b1 l3 }",
    ),
    (
        "finite-mixture",
        "core { edge x y 1 vertex z }
         template t copies 1 { edge w bx 1 edge w by 1 edge w bz 1
                               attach bx x attach by y attach bz z }
         template s copies 2 { edge p b0 1 edge p b1 2 attach b0 x attach b1 z }",
    ),
    (
        "three-way-path-interior",
        "core { vertex x vertex y vertex z }
         template t copies omega { edge p q 1 edge q r 1 edge p bx 1 edge q by 1 edge r bz 1
                                   attach bx x attach by y attach bz z }",
    ),
    (
        "two-three-way",
        "core { vertex x vertex y vertex z }
         template t copies omega { edge w bx 1 edge w by 1 edge w bz 1
                                   attach bx x attach by y attach bz z }
         template s copies omega { edge p bx 1 edge p q 2 edge q by 1 edge q bz 1
                                   attach bx x attach by y attach bz z }",
    ),
    (
        "three-way-and-finite-outside",
        "core { vertex x vertex y vertex z edge z o 1 }
         template t copies omega { edge w bx 1 edge w by 1 attach bx x attach by y }
         template s copies omega { edge w by 1 edge w bz 1 attach by y attach bz z }
         template f copies 1 { edge w bo 2 edge w bx 1 attach bo o attach bx x }",
    ),
];

pub fn corpus() -> Vec<(&'static str, StarRayless)> {
    STARS
        .iter()
        .map(|(name, text)| {
            let s = parse_star(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (*name, s)
        })
        .collect()
}
