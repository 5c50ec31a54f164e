use sdpmodel::{load_sdpa, parse_sdpa, SdpError};
use std::io::Write;

const TRACE_INSTANCE: &str = "\
* trace-constrained 3x3 instance
2
1
3
1.0 0.0
0 1 3 3 1.0
1 1 1 1 1.0
1 1 2 2 1.0
1 1 3 3 1.0
2 1 2 3 1.0
";

#[test]
fn parses_a_single_block_file() {
    let p = parse_sdpa(TRACE_INSTANCE).unwrap();
    assert_eq!(p.order(), 3);
    assert_eq!(p.num_constraints(), 2);
    assert_eq!(p.rhs().as_slice(), &[1.0, 0.0]);
    assert_eq!(p.cost().get(2, 2), 1.0);
    assert_eq!(p.constraint_matrices()[0].get(1, 1), 1.0);
    assert_eq!(p.constraint_matrices()[1].get(1, 2), 1.0);
    assert_eq!(p.constraint_matrices()[1].get(2, 1), 1.0);
}

#[test]
fn load_round_trips_through_a_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(TRACE_INSTANCE.as_bytes()).unwrap();
    let p = load_sdpa(f.path()).unwrap();
    assert_eq!(p.order(), 3);
    assert_eq!(p.num_constraints(), 2);
}

#[test]
fn accepts_braced_header_punctuation() {
    let text = TRACE_INSTANCE
        .replace("3\n1.0 0.0", "{3}\n1.0, 0.0")
        .replace("* trace-constrained 3x3 instance\n", "");
    let p = parse_sdpa(&text).unwrap();
    assert_eq!(p.order(), 3);
}

#[test]
fn rejects_multiple_blocks() {
    let text = "1\n2\n2 3\n1.0\n1 1 1 1 1.0\n";
    assert!(matches!(
        parse_sdpa(text),
        Err(SdpError::UnsupportedStructure { .. })
    ));
}

#[test]
fn rejects_lower_triangle_entries() {
    let text = "1\n1\n2\n1.0\n1 1 2 1 1.0\n";
    match parse_sdpa(text) {
        Err(SdpError::Parse { line, .. }) => assert_eq!(line, 5),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn rejects_out_of_range_matrix_index() {
    let text = "1\n1\n2\n1.0\n2 1 1 1 1.0\n";
    assert!(matches!(parse_sdpa(text), Err(SdpError::Parse { .. })));
}

#[test]
fn rejects_wrong_rhs_length() {
    let text = "2\n1\n2\n1.0\n1 1 1 1 1.0\n2 1 2 2 1.0\n";
    assert!(matches!(parse_sdpa(text), Err(SdpError::Parse { .. })));
}

#[test]
fn missing_file_reports_io_error() {
    assert!(matches!(
        load_sdpa("/nonexistent/path.dat-s"),
        Err(SdpError::Io { .. })
    ));
}
