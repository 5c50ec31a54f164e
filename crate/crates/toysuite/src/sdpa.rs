use sdpmodel::SdpProblem;
use std::fmt::Write as _;
use symcore::SymMatrix;

/// Serializes a single-block problem in SDPA sparse (`.dat-s`) layout:
/// constraint count, block count, block size, right-hand side, then one
/// `matno blkno i j value` line per nonzero upper-triangle entry, with
/// `matno 0` denoting the cost matrix. Values use the shortest
/// round-tripping decimal form, so re-parsing reproduces the data exactly.
pub fn sdpa_text(problem: &SdpProblem) -> String {
    let n = problem.order();
    let m = problem.num_constraints();
    let mut out = String::new();
    let _ = writeln!(out, "{m}");
    let _ = writeln!(out, "1");
    let _ = writeln!(out, "{n}");
    let rhs: Vec<String> = problem.rhs().iter().map(|v| format!("{v}")).collect();
    let _ = writeln!(out, "{}", rhs.join(" "));

    let mut write_entries = |matno: usize, mat: &SymMatrix| {
        for i in 0..n {
            for j in i..n {
                let v = mat.get(i, j);
                if v != 0.0 {
                    let _ = writeln!(out, "{matno} 1 {} {} {v}", i + 1, j + 1);
                }
            }
        }
    };
    write_entries(0, problem.cost());
    for (k, a) in problem.constraint_matrices().iter().enumerate() {
        write_entries(k + 1, a);
    }
    out
}
