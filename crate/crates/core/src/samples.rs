//! Small worked graphs used across tests, benchmarks, and documentation.

use crate::graph::{Color, Edge, Vertex, WiringGraph};
use std::collections::BTreeMap;

/// A four-vertex tree with five input legs `c,d,e,f`, output leg `r`, and
/// internal edges `a,b,g`:
///
/// ```text
///  c d e   f  q
///   \|/    | /
///    w     y
///     \b  /a
///      \ /
///       v
///       |r
/// ```
pub fn four_vertex_tree() -> WiringGraph {
    WiringGraph::new(
        vec![
            Vertex::new("w", 3, 1),
            Vertex::new("y", 2, 1),
            Vertex::new("v", 2, 1),
            Vertex::new("q", 0, 1),
        ],
        vec![
            Edge::between("a", ("y", 1), ("v", 1)),
            Edge::between("b", ("w", 1), ("v", 2)),
            Edge::from_input("c", 1, ("w", 1)),
            Edge::from_input("d", 2, ("w", 2)),
            Edge::from_input("e", 3, ("w", 3)),
            Edge::from_input("f", 4, ("y", 1)),
            Edge::between("g", ("q", 1), ("y", 2)),
            Edge::to_output("r", ("v", 1), 1),
        ],
        vec!["c".into(), "d".into(), "e".into(), "f".into()],
        vec!["r".into()],
    )
    .unwrap()
}

/// The tree above with edges colored `c1..c7` and root color `d`.
pub fn colored_tree() -> WiringGraph {
    let colors: BTreeMap<_, _> = [
        ("a", "c1"),
        ("b", "c2"),
        ("c", "c3"),
        ("d", "c4"),
        ("e", "c5"),
        ("f", "c6"),
        ("g", "c7"),
        ("r", "d"),
    ]
    .into_iter()
    .map(|(e, c)| (e.into(), Color::from(c)))
    .collect();
    four_vertex_tree().with_colors(&colors)
}

/// A two-vertex graph with five inputs and six outputs: `w` of arity (2;3)
/// feeds one edge into `x` of arity (4;4).
pub fn wide_host() -> WiringGraph {
    WiringGraph::new(
        vec![Vertex::new("w", 2, 3), Vertex::new("x", 4, 4)],
        vec![
            Edge::from_input("k", 1, ("x", 1)),
            Edge::from_input("l", 2, ("x", 2)),
            Edge::from_input("j", 3, ("x", 3)),
            Edge::from_input("a", 4, ("w", 1)),
            Edge::from_input("b", 5, ("w", 2)),
            Edge::between("wx", ("w", 1), ("x", 4)),
            Edge::to_output("m", ("x", 1), 1),
            Edge::to_output("n", ("x", 2), 2),
            Edge::to_output("o", ("x", 3), 3),
            Edge::to_output("p", ("x", 4), 4),
            Edge::to_output("c", ("w", 2), 5),
            Edge::to_output("d", ("w", 3), 6),
        ],
        vec!["k".into(), "l".into(), "j".into(), "a".into(), "b".into()],
        vec![
            "m".into(),
            "n".into(),
            "o".into(),
            "p".into(),
            "c".into(),
            "d".into(),
        ],
    )
    .unwrap()
}

/// A partially grafted corolla with four inputs and four outputs: upper
/// vertex (3;5), lower vertex (4;2), three grafted edges.
pub fn wide_pgc() -> WiringGraph {
    WiringGraph::pgc(&crate::graph::PgcSpec::new(
        (3, 5),
        (4, 2),
        vec![(1, 1), (2, 2), (3, 3)],
    ))
    .unwrap()
}

/// Two vertices joined by a pair of parallel edges `1` and `2`; no legs.
pub fn parallel_pair() -> WiringGraph {
    WiringGraph::new(
        vec![Vertex::new("u", 0, 2), Vertex::new("v", 2, 0)],
        vec![
            Edge::between("1", ("u", 1), ("v", 1)),
            Edge::between("2", ("u", 2), ("v", 2)),
        ],
        vec![],
        vec![],
    )
    .unwrap()
}

/// Three-vertex chain used in the factorization walkthrough: `u` of arity
/// (3;1) feeds the unary vertex `v`, which feeds `x` of arity (3;2).
pub fn factor_source() -> WiringGraph {
    WiringGraph::new(
        vec![
            Vertex::new("u", 3, 1),
            Vertex::new("v", 1, 1),
            Vertex::new("x", 3, 2),
        ],
        vec![
            Edge::from_input("k", 1, ("u", 1)),
            Edge::from_input("l", 2, ("u", 2)),
            Edge::from_input("j", 3, ("u", 3)),
            Edge::between("uv", ("u", 1), ("v", 1)),
            Edge::between("vx", ("v", 1), ("x", 1)),
            Edge::from_input("p", 4, ("x", 2)),
            Edge::from_input("q", 5, ("x", 3)),
            Edge::to_output("m", ("x", 1), 1),
            Edge::to_output("mp", ("x", 2), 2),
        ],
        vec!["k".into(), "l".into(), "j".into(), "p".into(), "q".into()],
        vec!["m".into(), "mp".into()],
    )
    .unwrap()
}

/// Target of the factorization walkthrough: `w` of arity (3;1) feeds `z` of
/// arity (3;2) along edge `e1`; a side vertex `t` of arity (2;2) feeds `z`
/// twice.
pub fn factor_target() -> WiringGraph {
    WiringGraph::new(
        vec![
            Vertex::new("w", 3, 1),
            Vertex::new("z", 3, 2),
            Vertex::new("t", 2, 2),
        ],
        vec![
            Edge::from_input("k", 1, ("w", 1)),
            Edge::from_input("l", 2, ("w", 2)),
            Edge::from_input("j", 3, ("w", 3)),
            Edge::between("e1", ("w", 1), ("z", 1)),
            Edge::between("e2", ("t", 1), ("z", 2)),
            Edge::between("e3", ("t", 2), ("z", 3)),
            Edge::from_input("p", 4, ("t", 1)),
            Edge::from_input("pp", 5, ("t", 2)),
            Edge::to_output("m", ("z", 1), 1),
            Edge::to_output("mp", ("z", 2), 2),
        ],
        vec!["k".into(), "l".into(), "j".into(), "p".into(), "pp".into()],
        vec!["m".into(), "mp".into()],
    )
    .unwrap()
}

use crate::gamma::{DecoratedGraph, GammaMorphism};
use crate::graph::EdgeId;

/// An endomorphism of [`parallel_pair`] whose image has four vertices, so it
/// fails the subgraph condition: the identity on edges, the identity corolla
/// at `v`, and a three-vertex decorated graph at `u`.
pub fn parallel_pair_endomorphism() -> GammaMorphism {
    let g = parallel_pair();
    let edge_map: BTreeMap<EdgeId, EdgeId> =
        [("1", "1"), ("2", "2")].map(|(a, b)| (a.into(), b.into())).into();

    // Two occurrences of `u` feeding one occurrence of `v`, with output legs
    // decorated to meet the boundary profile (; 1, 2).
    let shape = WiringGraph::new(
        vec![
            Vertex::new("A", 0, 2),
            Vertex::new("B", 0, 2),
            Vertex::new("C", 2, 0),
        ],
        vec![
            Edge::between("ac", ("A", 1), ("C", 1)),
            Edge::between("bc", ("B", 1), ("C", 2)),
            Edge::to_output("bleg", ("B", 2), 1),
            Edge::to_output("aleg", ("A", 2), 2),
        ],
        vec![],
        vec!["bleg".into(), "aleg".into()],
    )
    .unwrap();
    let at_u = DecoratedGraph::new(
        shape,
        [("ac", "1"), ("bc", "2"), ("aleg", "2"), ("bleg", "1")]
            .map(|(a, b)| (a.into(), b.into()))
            .into(),
        [("A", "u"), ("B", "u"), ("C", "v")]
            .map(|(a, b)| (a.into(), b.into()))
            .into(),
    );
    let at_v = crate::gamma::identity_decoration(&g, &"v".into());
    GammaMorphism::new(
        g.clone(),
        g,
        edge_map,
        [("u".into(), at_u), ("v".into(), at_v)].into(),
    )
    .unwrap()
}

/// The walkthrough morphism from [`factor_source`] to [`factor_target`]:
/// `u` maps to the corolla of `w`, the unary `v` to the edge `e1`, and `x`
/// to the partially grafted corolla spanned by `t` and `z`.
pub fn factor_morphism() -> GammaMorphism {
    let source = factor_source();
    let target = factor_target();
    let edge_map: BTreeMap<EdgeId, EdgeId> = [
        ("k", "k"),
        ("l", "l"),
        ("j", "j"),
        ("uv", "e1"),
        ("vx", "e1"),
        ("p", "p"),
        ("q", "pp"),
        ("m", "m"),
        ("mp", "mp"),
    ]
    .map(|(a, b)| (a.into(), b.into()))
    .into();

    let at_u = {
        let shape = WiringGraph::corolla(3, 1);
        DecoratedGraph::new(
            shape,
            [("i1", "k"), ("i2", "l"), ("i3", "j"), ("o1", "e1")]
                .map(|(a, b)| (a.into(), b.into()))
                .into(),
            [("v", "w")].map(|(a, b)| (a.into(), b.into())).into(),
        )
    };
    let at_v = {
        let shape = WiringGraph::exceptional_edge(None);
        DecoratedGraph::new(
            shape,
            [("e", "e1")].map(|(a, b)| (a.into(), b.into())).into(),
            BTreeMap::new(),
        )
    };
    let at_x = {
        let shape = WiringGraph::new(
            vec![Vertex::new("A", 2, 2), Vertex::new("B", 3, 2)],
            vec![
                Edge::from_input("se1", 1, ("B", 1)),
                Edge::from_input("sp", 2, ("A", 1)),
                Edge::from_input("spp", 3, ("A", 2)),
                Edge::between("se2", ("A", 1), ("B", 2)),
                Edge::between("se3", ("A", 2), ("B", 3)),
                Edge::to_output("sm", ("B", 1), 1),
                Edge::to_output("smp", ("B", 2), 2),
            ],
            vec!["se1".into(), "sp".into(), "spp".into()],
            vec!["sm".into(), "smp".into()],
        )
        .unwrap();
        DecoratedGraph::new(
            shape,
            [
                ("se1", "e1"),
                ("sp", "p"),
                ("spp", "pp"),
                ("se2", "e2"),
                ("se3", "e3"),
                ("sm", "m"),
                ("smp", "mp"),
            ]
            .map(|(a, b)| (a.into(), b.into()))
            .into(),
            [("A", "t"), ("B", "z")].map(|(a, b)| (a.into(), b.into())).into(),
        )
    };
    GammaMorphism::new(
        source,
        target,
        edge_map,
        [("u".into(), at_u), ("v".into(), at_v), ("x".into(), at_x)].into(),
    )
    .unwrap()
}
