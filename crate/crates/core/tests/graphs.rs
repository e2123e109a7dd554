use cn_spectra::graph::{clique_decomposition, CliqueCheck, CommutingGraph, EdgeList, GraphError};
use cn_spectra::group::GroupSpec;
use proptest::prelude::*;

fn edge_list() -> impl Strategy<Value = EdgeList> {
    (1usize..24).prop_flat_map(|n| {
        let pairs = proptest::collection::vec((0..n, 0..n), 0..60);
        pairs.prop_map(move |ps| {
            let mut edges: Vec<[usize; 2]> = ps
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| [a.min(b), a.max(b)])
                .collect();
            edges.sort_unstable();
            edges.dedup();
            EdgeList {
                n,
                edges,
                labels: Vec::new(),
            }
        })
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip(doc in edge_list()) {
        let g = CommutingGraph::from_edge_list(&doc).unwrap();
        prop_assert_eq!(g.edge_count(), doc.edges.len());
        let back = CommutingGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
    }

    #[test]
    fn clique_unions_are_recognised(parts in proptest::collection::vec((1usize..7, 1usize..4), 1..5)) {
        let g = CommutingGraph::clique_union(&parts);
        match clique_decomposition(&g) {
            CliqueCheck::CliqueUnion(d) => {
                prop_assert_eq!(d.vertex_count() as usize, g.vertex_count());
            }
            CliqueCheck::NotCliqueUnion { .. } => prop_assert!(false),
        }
    }
}

#[test]
fn adjacency_is_commutation() {
    let g = GroupSpec::Dicyclic { n: 4 }.build().unwrap();
    let cg = CommutingGraph::from_group(&g).unwrap();
    let el = cg.elements();
    for u in 0..cg.vertex_count() {
        for v in 0..cg.vertex_count() {
            let want = u != v && g.commute(el[u], el[v]);
            assert_eq!(cg.adjacent(u, v), want);
        }
    }
}

#[test]
fn labels_survive_json_and_dot() {
    let g = GroupSpec::Dihedral { m: 3 }.build().unwrap();
    let cg = CommutingGraph::from_group(&g).unwrap();
    let back = CommutingGraph::from_json(&cg.to_json()).unwrap();
    assert_eq!(back.labels(), cg.labels());
    let dot = cg.to_dot();
    assert!(dot.starts_with("graph commuting {"));
    for l in cg.labels() {
        assert!(dot.contains(&format!("\"{l}\"")));
    }
}

#[test]
fn abelian_groups_have_no_graph() {
    let g = GroupSpec::HanakiP { p: 2, n: 1 }.build().unwrap().center();
    assert_eq!(g.len(), 2);
    let cyclic = GroupSpec::Presented {
        m: 5,
        s: 2,
        t: 0,
        k: 1,
    }
    .build()
    .unwrap();
    assert!(matches!(
        CommutingGraph::from_group(&cyclic),
        Err(GraphError::AbelianGroup)
    ));
}

#[test]
fn malformed_documents_are_rejected() {
    for text in [
        r#"{"n":2,"edges":[[0,2]]}"#,
        r#"{"n":2,"edges":[[1,1]]}"#,
        r#"{"edges":[]}"#,
        "not json",
    ] {
        assert!(CommutingGraph::from_json(text).is_err(), "{text}");
    }
}
