#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(graph) = gi_screen::parse_edge_list(text) {
            assert!(graph.n() >= 1);
            assert!(graph.edge_count() <= graph.n() * (graph.n() - 1) / 2);
            if graph.n() <= 62 {
                let encoded = gi_screen::encode_graph6(&graph);
                assert_eq!(gi_screen::parse_graph6(&encoded).unwrap(), graph);
            }
        }
    }
});
