// Copyright 2026 The ttload Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ttload/maxvol.hpp"

#include <cmath>
#include <stdexcept>

#include "ttload/errors.hpp"

namespace ttload {

namespace {

// Gaussian elimination with row pivoting on a rectangular matrix; the pivot
// rows give a well-conditioned starting submatrix.
std::vector<Eigen::Index> initial_rows(const Eigen::MatrixXd &m, double rank_tol) {
    Eigen::MatrixXd work = m;
    const Eigen::Index n = m.rows();
    const Eigen::Index r = m.cols();
    const double scale = m.cwiseAbs().maxCoeff();
    std::vector<Eigen::Index> rows;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (Eigen::Index j = 0; j < r; ++j) {
        Eigen::Index best = -1;
        double best_abs = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            if (std::abs(work(i, j)) > best_abs) {
                best_abs = std::abs(work(i, j));
                best = i;
            }
        }
        if (!(best_abs > rank_tol * scale) || scale == 0.0) {
            throw RankDeficientError(static_cast<std::size_t>(j), static_cast<std::size_t>(r));
        }
        used[static_cast<std::size_t>(best)] = true;
        rows.push_back(best);
        const Eigen::RowVectorXd pivot_row = work.row(best) / work(best, j);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!used[static_cast<std::size_t>(i)]) work.row(i) -= work(i, j) * pivot_row;
        }
    }
    return rows;
}

}  // namespace

std::vector<Eigen::Index> maxvol(const Eigen::MatrixXd &m, const MaxvolOptions &opts) {
    const Eigen::Index n = m.rows();
    const Eigen::Index r = m.cols();
    if (r == 0 || n < r) throw std::invalid_argument("maxvol: need an n x r matrix with n >= r >= 1");
    if (opts.swap_tol < 1.0) throw std::invalid_argument("maxvol: swap_tol must be >= 1");

    std::vector<Eigen::Index> rows = initial_rows(m, opts.rank_tol);
    Eigen::MatrixXd sub(r, r);
    for (Eigen::Index j = 0; j < r; ++j) sub.row(j) = m.row(rows[static_cast<std::size_t>(j)]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sub.transpose());
    // coeffs = M * sub^{-1}
    Eigen::MatrixXd coeffs = lu.solve(m.transpose()).transpose();

    for (int it = 0; it < opts.max_iterations; ++it) {
        // Largest modulus; ties go to the lowest row, then the lowest column.
        Eigen::Index bi = 0, bj = 0;
        double best = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < r; ++j) {
                const double v = std::abs(coeffs(i, j));
                if (v > best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (best <= opts.swap_tol) break;
        // Sherman-Morrison update for replacing row rows[bj] by row bi.
        const Eigen::VectorXd col = coeffs.col(bj);
        Eigen::RowVectorXd row = coeffs.row(bi);
        row(bj) -= 1.0;
        coeffs.noalias() -= (col / coeffs(bi, bj)) * row;
        rows[static_cast<std::size_t>(bj)] = bi;
    }
    return rows;
}

}  // namespace ttload
