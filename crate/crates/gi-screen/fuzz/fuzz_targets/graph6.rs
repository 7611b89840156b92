#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(graph) = gi_screen::parse_graph6(text) {
            // canonical re-encoding must round-trip to the same graph
            let encoded = gi_screen::encode_graph6(&graph);
            let again = gi_screen::parse_graph6(&encoded).expect("canonical encoding re-parses");
            assert_eq!(graph, again);
        }
    }
});
