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

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace ttload {

struct MaxvolOptions {
    double swap_tol = 1.01;
    int max_iterations = 200;
    /// Relative pivot threshold below which the matrix is declared rank deficient.
    double rank_tol = 1e-13;

    bool operator==(const MaxvolOptions &) const = default;
};

/// Selects r rows of an n x r matrix (n >= r) spanning a submatrix of locally
/// maximal volume: every entry of M * M[S]^{-1} is bounded by swap_tol in
/// modulus. Rows are returned in the order they occupy in the submatrix.
/// Throws RankDeficientError when M does not have full column rank.
std::vector<Eigen::Index> maxvol(const Eigen::MatrixXd &m, const MaxvolOptions &opts = {});

}  // namespace ttload
