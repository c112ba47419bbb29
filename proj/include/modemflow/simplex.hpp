#pragma once

#include <vector>

namespace modemflow::lp {

enum class RowKind { less_equal, greater_equal, equal };
enum class SolveStatus { optimal, infeasible, unbounded };

// maximize objective . x  subject to rows, x >= 0
struct DenseLp {
    struct Row {
        std::vector<double> coeffs;
        double rhs = 0;
        RowKind kind = RowKind::less_equal;
    };
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<Row> rows;
};

struct SimplexResult {
    SolveStatus status = SolveStatus::optimal;
    double objective = 0;
    std::vector<double> x;
    int iterations = 0;
};

// Two-phase dense tableau simplex. Fully deterministic: Dantzig pricing
// with lowest-index tie-breaking, lowest-basis-index ratio ties, and a
// Bland-rule fallback after prolonged stalling so cycling cannot occur.
SimplexResult solve(const DenseLp& lp);

}  // namespace modemflow::lp
