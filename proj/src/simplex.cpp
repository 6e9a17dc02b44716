#include "hyperctx/simplex.hpp"

#include "hyperctx/errors.hpp"

#include <cstddef>
#include <stdexcept>

namespace hyperctx {

namespace {

// Phase-1 tableau. Columns: [0, n) structural, [n, n+m) artificial, last = rhs.
// The objective row carries reduced costs for minimizing the artificial sum;
// its rhs slot holds minus the current objective value.
struct Tableau {
    std::size_t n_struct;
    std::size_t n_rows;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> objective;
    std::vector<std::size_t> basis;  // basis[i] = column basic in row i

    std::size_t width() const { return n_struct + n_rows + 1; }

    void pivot(std::size_t pivot_row, std::size_t pivot_col) {
        auto& prow = rows[pivot_row];
        const Rational inv = Rational(1) / prow[pivot_col];
        for (auto& v : prow) v *= inv;
        for (std::size_t i = 0; i < n_rows; ++i) {
            if (i == pivot_row || rows[i][pivot_col] == 0) continue;
            const Rational factor = rows[i][pivot_col];
            for (std::size_t j = 0; j < width(); ++j) rows[i][j] -= factor * prow[j];
        }
        if (objective[pivot_col] != 0) {
            const Rational factor = objective[pivot_col];
            for (std::size_t j = 0; j < width(); ++j) objective[j] -= factor * prow[j];
        }
        basis[pivot_row] = pivot_col;
    }
};

}  // namespace

FeasibilityResult solve_equality_feasibility(const std::vector<std::vector<Rational>>& matrix,
                                             const std::vector<Rational>& rhs) {
    const std::size_t m = matrix.size();
    if (rhs.size() != m) throw Error("DimensionMismatch", "matrix and rhs row counts differ");
    const std::size_t n = m == 0 ? 0 : matrix[0].size();
    for (const auto& row : matrix) {
        if (row.size() != n) throw Error("DimensionMismatch", "ragged constraint matrix");
    }
    if (m == 0) return {true, std::vector<Rational>(n, Rational(0)), {}};

    // Flip rows with negative rhs so the all-artificial start is feasible.
    std::vector<int> row_sign(m, 1);
    Tableau t;
    t.n_struct = n;
    t.n_rows = m;
    t.rows.assign(m, std::vector<Rational>(t.width(), Rational(0)));
    t.objective.assign(t.width(), Rational(0));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (rhs[i] < 0) row_sign[i] = -1;
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = row_sign[i] * matrix[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][t.width() - 1] = row_sign[i] * rhs[i];
        t.basis[i] = n + i;
    }
    // Reduced costs under the initial artificial basis: 0 - sum of each column.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) t.objective[j] -= t.rows[i][j];
    }
    for (std::size_t i = 0; i < m; ++i) t.objective[t.width() - 1] -= t.rows[i][t.width() - 1];

    // Bland's rule: least-index entering column, least basis-index tie-break
    // on the ratio test. Terminates without cycling.
    const std::size_t rhs_col = t.width() - 1;
    for (;;) {
        std::size_t entering = rhs_col;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (t.objective[j] < 0) {
                entering = j;
                break;
            }
        }
        if (entering == rhs_col) break;

        std::size_t leaving = m;
        Rational best_ratio;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.rows[i][entering] <= 0) continue;
            const Rational ratio = t.rows[i][rhs_col] / t.rows[i][entering];
            if (leaving == m || ratio < best_ratio ||
                (ratio == best_ratio && t.basis[i] < t.basis[leaving])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving == m) {
            // The artificial sum is bounded below by zero, so a missing
            // leaving row cannot happen on a well-formed tableau.
            throw std::logic_error("phase-1 simplex: unbounded improving direction");
        }
        t.pivot(leaving, entering);
    }

    const Rational objective_value = -t.objective[rhs_col];
    FeasibilityResult result;
    if (objective_value == 0) {
        result.feasible = true;
        result.point.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < n) result.point[t.basis[i]] = t.rows[i][rhs_col];
        }
        return result;
    }

    // Infeasible. The simplex multipliers y satisfy yᵀA' <= 0 and yᵀb' > 0 on
    // the sign-flipped system; the artificial column i has reduced cost
    // 1 - y_i, and flipped rows map back through their sign.
    result.feasible = false;
    result.farkas.assign(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
        result.farkas[i] = row_sign[i] * (Rational(1) - t.objective[n + i]);
    }
    return result;
}

}  // namespace hyperctx
