#include "modemflow/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "modemflow/errors.hpp"
#include "modemflow/kernels.hpp"

namespace modemflow::lp {

namespace {

constexpr double kEpsCost = 1e-9;    // reduced-cost optimality threshold
constexpr double kEpsPivot = 1e-9;   // minimum usable pivot magnitude
constexpr int kStallLimit = 500;     // stalled iterations before Bland fallback
constexpr int kMaxIterations = 200000;

// Dense row-major tableau.
//   columns: [structural | slack/surplus | rhs | artificial]
//   rows:    [constraints (active prefix) | phase-2 cost | phase-1 cost]
struct Tableau {
    int nx = 0;      // structural vars
    int ns = 0;      // slack + surplus vars
    int na = 0;      // artificial vars
    int m = 0;       // active constraint rows
    int width = 0;   // full row width incl. rhs and artificials
    int rhs = 0;     // rhs column index = nx + ns
    std::vector<double> cells;
    std::vector<int> basis;  // basic column per constraint row

    double* row(int i) { return cells.data() + static_cast<std::size_t>(i) * width; }
    const double* row(int i) const {
        return cells.data() + static_cast<std::size_t>(i) * width;
    }
};

void pivot(Tableau& t, int cost_row_a, int cost_row_b, int r, int s, int active_width) {
    double* pr = t.row(r);
    kernels::scale(pr, 1.0 / pr[s], active_width);
    pr[s] = 1.0;
    for (int i = 0; i < t.m; ++i) {
        if (i == r) {
            continue;
        }
        double* ri = t.row(i);
        if (ri[s] != 0.0) {
            kernels::axpy(ri, pr, -ri[s], active_width);
            ri[s] = 0.0;
        }
    }
    for (int cr : {cost_row_a, cost_row_b}) {
        if (cr < 0) {
            continue;
        }
        double* rc = t.row(cr);
        if (rc[s] != 0.0) {
            kernels::axpy(rc, pr, -rc[s], active_width);
            rc[s] = 0.0;
        }
    }
    t.basis[r] = s;
}

// min-ratio row for entering column s; -1 when the column is unbounded
int ratio_row(const Tableau& t, int s) {
    int best = -1;
    double best_ratio = 0;
    for (int i = 0; i < t.m; ++i) {
        const double* ri = t.row(i);
        const double a = ri[s];
        if (a <= kEpsPivot) {
            continue;
        }
        const double b = std::max(ri[t.rhs], 0.0);
        const double ratio = b / a;
        if (best < 0 || ratio < best_ratio ||
            (ratio == best_ratio && t.basis[i] < t.basis[best])) {
            best = i;
            best_ratio = ratio;
        }
    }
    return best;
}

// One simplex phase on the given cost row. Returns false on unbounded.
bool run_phase(Tableau& t, int cost_row, int other_cost_row, int active_width,
               int scan_width, int& iterations) {
    int stalled = 0;
    bool bland = false;
    double last_obj = t.row(cost_row)[t.rhs];
    while (true) {
        if (++iterations > kMaxIterations) {
            throw Error("simplex iteration limit exceeded");
        }
        const double* cost = t.row(cost_row);
        int s = -1;
        if (!bland) {
            const std::size_t j = kernels::argmin(cost, scan_width);
            if (cost[j] < -kEpsCost) {
                s = static_cast<int>(j);
            }
        } else {
            for (int j = 0; j < scan_width; ++j) {
                if (cost[j] < -kEpsCost) {
                    s = j;
                    break;
                }
            }
        }
        if (s < 0) {
            return true;  // optimal for this phase
        }
        const int r = ratio_row(t, s);
        if (r < 0) {
            return false;  // unbounded direction
        }
        pivot(t, cost_row, other_cost_row, r, s, active_width);
        const double obj = t.row(cost_row)[t.rhs];
        if (obj > last_obj + 1e-12 * (1.0 + std::fabs(last_obj))) {
            stalled = 0;
            last_obj = obj;
        } else if (++stalled >= kStallLimit) {
            bland = true;  // degenerate stretch; Bland's rule terminates
        }
    }
}

}  // namespace

SimplexResult solve(const DenseLp& lp) {
    if (lp.num_vars <= 0) {
        throw std::invalid_argument("LP needs at least one variable");
    }
    if (static_cast<int>(lp.objective.size()) != lp.num_vars) {
        throw std::invalid_argument("objective size does not match num_vars");
    }
    for (const auto& r : lp.rows) {
        if (static_cast<int>(r.coeffs.size()) != lp.num_vars) {
            throw std::invalid_argument("row size does not match num_vars");
        }
    }

    const int nx = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());

    // row equilibration keeps reduced costs near unit scale
    std::vector<double> row_scale(m, 1.0);
    std::vector<double> rhs_norm(m, 0.0);
    std::vector<RowKind> kind(m);
    std::vector<double> sign(m, 1.0);
    for (int i = 0; i < m; ++i) {
        const auto& r = lp.rows[i];
        kind[i] = r.kind;
        double rhs = r.rhs;
        double s = 1.0;
        if (rhs < 0) {  // normalize to rhs >= 0, flipping the inequality
            s = -1.0;
            rhs = -rhs;
            if (r.kind == RowKind::less_equal) {
                kind[i] = RowKind::greater_equal;
            } else if (r.kind == RowKind::greater_equal) {
                kind[i] = RowKind::less_equal;
            }
        }
        sign[i] = s;
        double amax = 0;
        for (double a : r.coeffs) {
            amax = std::max(amax, std::fabs(a));
        }
        row_scale[i] = amax > 0 ? amax : 1.0;
        rhs_norm[i] = rhs / row_scale[i];
    }

    int ns = 0;
    int na = 0;
    for (int i = 0; i < m; ++i) {
        if (kind[i] != RowKind::equal) {
            ++ns;
        }
        if (kind[i] != RowKind::less_equal) {
            ++na;
        }
    }

    Tableau t;
    t.nx = nx;
    t.ns = ns;
    t.na = na;
    t.m = m;
    t.rhs = nx + ns;
    t.width = nx + ns + 1 + na;
    t.cells.assign(static_cast<std::size_t>(m + 2) * t.width, 0.0);
    t.basis.assign(m, -1);

    const int cost2 = m;      // phase-2 objective row
    const int cost1 = m + 1;  // phase-1 objective row
    const int art_start = t.rhs + 1;

    double cmax = 0;
    for (double c : lp.objective) {
        cmax = std::max(cmax, std::fabs(c));
    }
    const double obj_scale = cmax > 0 ? cmax : 1.0;

    int slack_at = nx;
    int art_at = art_start;
    double bmax = 1.0;
    for (int i = 0; i < m; ++i) {
        double* ri = t.row(i);
        const auto& r = lp.rows[i];
        for (int j = 0; j < nx; ++j) {
            ri[j] = sign[i] * r.coeffs[j] / row_scale[i];
        }
        ri[t.rhs] = rhs_norm[i];
        bmax = std::max(bmax, rhs_norm[i]);
        if (kind[i] == RowKind::less_equal) {
            ri[slack_at] = 1.0;
            t.basis[i] = slack_at++;
        } else if (kind[i] == RowKind::greater_equal) {
            ri[slack_at] = -1.0;  // surplus
            ++slack_at;
            ri[art_at] = 1.0;
            t.basis[i] = art_at++;
        } else {
            ri[art_at] = 1.0;
            t.basis[i] = art_at++;
        }
    }

    double* z2 = t.row(cost2);
    for (int j = 0; j < nx; ++j) {
        z2[j] = -lp.objective[j] / obj_scale;
    }

    SimplexResult result;
    result.x.assign(nx, 0.0);

    // phase 1: drive artificials to zero
    if (na > 0) {
        double* z1 = t.row(cost1);
        for (int j = art_start; j < t.width; ++j) {
            z1[j] = 1.0;
        }
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] >= art_start) {
                kernels::axpy(z1, t.row(i), -1.0, t.width);
            }
        }
        if (!run_phase(t, cost1, cost2, t.width, nx + ns, result.iterations)) {
            throw Error("phase-1 objective unbounded; inconsistent tableau");
        }
        const double infeasibility = -t.row(cost1)[t.rhs];
        if (infeasibility > 1e-7 * bmax) {
            result.status = SolveStatus::infeasible;
            return result;
        }
        // remove artificials still basic at zero; drop dependent rows
        for (int i = 0; i < t.m;) {
            if (t.basis[i] < art_start) {
                ++i;
                continue;
            }
            const double* ri = t.row(i);
            int enter = -1;
            for (int j = 0; j < nx + ns; ++j) {
                if (std::fabs(ri[j]) > kEpsPivot) {
                    enter = j;
                    break;
                }
            }
            if (enter >= 0) {
                pivot(t, cost2, cost1, i, enter, t.width);
                ++i;
            } else {
                // redundant constraint: swap with the last active row
                const int last = t.m - 1;
                if (i != last) {
                    std::swap_ranges(t.row(i), t.row(i) + t.width, t.row(last));
                    std::swap(t.basis[i], t.basis[last]);
                }
                --t.m;
            }
        }
    }

    // phase 2: artificial columns are stale from here on
    if (!run_phase(t, cost2, -1, nx + ns + 1, nx + ns, result.iterations)) {
        result.status = SolveStatus::unbounded;
        return result;
    }

    for (int i = 0; i < t.m; ++i) {
        const int v = t.basis[i];
        if (v < nx) {
            double value = t.row(i)[t.rhs];
            if (value < 0 && value > -1e-11 * bmax) {
                value = 0;  // numerical dust from degenerate pivots
            }
            result.x[v] = value;
        }
    }
    result.status = SolveStatus::optimal;
    result.objective = t.row(cost2)[t.rhs] * obj_scale;
    return result;
}

}  // namespace modemflow::lp
