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

#include "ttload/tensor_train.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ttload/errors.hpp"

namespace ttload {

namespace {

std::size_t product(const std::vector<std::size_t> &v) {
    return std::accumulate(v.begin(), v.end(), std::size_t{1}, std::multiplies<>());
}

// Smallest rank whose discarded tail has Frobenius norm <= threshold.
std::size_t truncation_rank(const Eigen::VectorXd &sv, double threshold, std::size_t max_rank) {
    std::size_t n = static_cast<std::size_t>(sv.size());
    std::size_t r = n;
    double tail = 0.0;
    while (r > 1) {
        double next = tail + sv[r - 1] * sv[r - 1];
        if (std::sqrt(next) > threshold) break;
        tail = next;
        --r;
    }
    return std::max<std::size_t>(1, std::min(r, max_rank));
}

struct ThinQR {
    Eigen::MatrixXd q;
    Eigen::MatrixXd r;
};

ThinQR thin_qr(const Eigen::MatrixXd &a) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::Index m = std::min(a.rows(), a.cols());
    ThinQR out;
    out.q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), m);
    out.r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
    return out;
}

}  // namespace

bool is_power_of_two(std::size_t x) { return std::has_single_bit(x); }

int ceil_log2(std::size_t x) {
    if (x == 0) throw std::invalid_argument("ceil_log2(0)");
    return static_cast<int>(std::bit_width(x - 1));
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_.empty()) throw std::invalid_argument("DenseTensor: empty shape");
    for (auto e : shape_) {
        if (e < 1) throw std::invalid_argument("DenseTensor: zero extent");
    }
    if (product(shape_) != data_.size()) {
        throw std::invalid_argument("DenseTensor: data length does not match shape");
    }
}

DenseTensor::DenseTensor(std::vector<std::size_t> shape)
    : DenseTensor(shape, std::vector<double>(product(shape), 0.0)) {}

std::size_t DenseTensor::flat_index(std::span<const int> idx) const {
    if (idx.size() != shape_.size()) throw std::out_of_range("DenseTensor: index arity mismatch");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] < 0 || static_cast<std::size_t>(idx[k]) >= shape_[k]) {
            throw std::out_of_range("DenseTensor: index out of range on axis " + std::to_string(k));
        }
        flat = flat * shape_[k] + static_cast<std::size_t>(idx[k]);
    }
    return flat;
}

TTCore::TTCore(std::size_t left, std::size_t mode, std::size_t right, std::vector<double> data)
    : left_(left), mode_(mode), right_(right), data_(std::move(data)) {
    if (left < 1 || mode < 1 || right < 1) throw std::invalid_argument("TTCore: zero extent");
    if (data_.size() != left * mode * right) {
        throw std::invalid_argument("TTCore: data length does not match (left, mode, right)");
    }
}

TTCore::TTCore(std::size_t left, std::size_t mode, std::size_t right)
    : TTCore(left, mode, right, std::vector<double>(left * mode * right, 0.0)) {}

Eigen::MatrixXd TTCore::left_unfolding() const {
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        data_.data(), static_cast<Eigen::Index>(left_ * mode_), static_cast<Eigen::Index>(right_));
}

Eigen::MatrixXd TTCore::right_unfolding() const {
    return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        data_.data(), static_cast<Eigen::Index>(left_), static_cast<Eigen::Index>(mode_ * right_));
}

TTCore TTCore::from_left_unfolding(const Eigen::MatrixXd &m, std::size_t mode) {
    if (m.rows() % static_cast<Eigen::Index>(mode) != 0) {
        throw std::invalid_argument("TTCore: unfolding rows not divisible by mode");
    }
    std::vector<double> data(static_cast<std::size_t>(m.size()));
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        data.data(), m.rows(), m.cols()) = m;
    return TTCore(static_cast<std::size_t>(m.rows()) / mode, mode, static_cast<std::size_t>(m.cols()),
                  std::move(data));
}

TTCore TTCore::from_right_unfolding(const Eigen::MatrixXd &m, std::size_t mode) {
    if (m.cols() % static_cast<Eigen::Index>(mode) != 0) {
        throw std::invalid_argument("TTCore: unfolding columns not divisible by mode");
    }
    std::vector<double> data(static_cast<std::size_t>(m.size()));
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        data.data(), m.rows(), m.cols()) = m;
    return TTCore(static_cast<std::size_t>(m.rows()), mode, static_cast<std::size_t>(m.cols()) / mode,
                  std::move(data));
}

Eigen::MatrixXd TTCore::slice(std::size_t i) const {
    Eigen::MatrixXd s(left_, right_);
    for (std::size_t a = 0; a < left_; ++a) {
        for (std::size_t b = 0; b < right_; ++b) s(a, b) = (*this)(a, i, b);
    }
    return s;
}

TensorTrain::TensorTrain(std::vector<TTCore> cores) : cores_(std::move(cores)) {
    if (cores_.empty()) throw std::invalid_argument("TensorTrain: no cores");
    if (cores_.front().left() != 1 || cores_.back().right() != 1) {
        throw std::invalid_argument("TensorTrain: boundary ranks must be 1");
    }
    for (std::size_t k = 0; k + 1 < cores_.size(); ++k) {
        if (cores_[k].right() != cores_[k + 1].left()) {
            throw std::invalid_argument("TensorTrain: rank mismatch between cores " + std::to_string(k) +
                                        " and " + std::to_string(k + 1));
        }
    }
}

std::vector<std::size_t> TensorTrain::ranks() const {
    std::vector<std::size_t> r{1};
    for (const auto &c : cores_) r.push_back(c.right());
    return r;
}

std::vector<std::size_t> TensorTrain::modes() const {
    std::vector<std::size_t> n;
    for (const auto &c : cores_) n.push_back(c.mode());
    return n;
}

std::size_t TensorTrain::max_rank() const {
    auto r = ranks();
    return *std::max_element(r.begin(), r.end());
}

std::vector<int> TensorTrain::log_ranks() const {
    std::vector<int> l;
    for (auto r : ranks()) l.push_back(ceil_log2(r));
    return l;
}

double tt_eval(const TensorTrain &tt, std::span<const int> idx) {
    if (idx.size() != tt.order()) {
        throw std::out_of_range("tt_eval: index has " + std::to_string(idx.size()) + " entries, expected " +
                                std::to_string(tt.order()));
    }
    std::vector<double> row{1.0};
    std::vector<double> next;
    for (std::size_t k = 0; k < tt.order(); ++k) {
        const TTCore &c = tt.core(k);
        if (idx[k] < 0 || static_cast<std::size_t>(idx[k]) >= c.mode()) {
            throw std::out_of_range("tt_eval: index " + std::to_string(idx[k]) + " out of range on core " +
                                    std::to_string(k));
        }
        const auto i = static_cast<std::size_t>(idx[k]);
        next.assign(c.right(), 0.0);
        for (std::size_t a = 0; a < c.left(); ++a) {
            const double v = row[a];
            for (std::size_t b = 0; b < c.right(); ++b) next[b] += v * c(a, i, b);
        }
        row.swap(next);
    }
    return row[0];
}

DenseTensor tt_to_dense(const TensorTrain &tt, std::size_t cap) {
    const auto modes = tt.modes();
    std::size_t total = 1;
    for (auto n : modes) {
        if (total > cap / n) {
            throw CapacityError("tt_to_dense: tensor exceeds the materialization cap of " + std::to_string(cap));
        }
        total *= n;
    }
    if (total > cap) {
        throw CapacityError("tt_to_dense: " + std::to_string(total) + " entries exceed the cap of " +
                            std::to_string(cap));
    }
    DenseTensor out(modes);
    std::vector<int> idx(modes.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        out.data()[flat] = tt_eval(tt, idx);
        for (std::size_t k = modes.size(); k-- > 0;) {
            if (static_cast<std::size_t>(++idx[k]) < modes[k]) break;
            idx[k] = 0;
        }
    }
    return out;
}

TensorTrain tt_from_dense(const DenseTensor &dense, double rel_tol, std::size_t max_rank) {
    const auto &shape = dense.shape();
    const std::size_t d = shape.size();
    Eigen::MatrixXd rest = Eigen::Map<const Eigen::VectorXd>(dense.data().data(),
                                                             static_cast<Eigen::Index>(dense.size()));
    const double threshold = d > 1 ? rel_tol / std::sqrt(double(d - 1)) * rest.norm() : 0.0;
    std::vector<TTCore> cores;
    std::size_t r_prev = 1;
    for (std::size_t k = 0; k + 1 < d; ++k) {
        const auto rows = static_cast<Eigen::Index>(r_prev * shape[k]);
        const auto cols = static_cast<Eigen::Index>(rest.size()) / rows;
        // rest holds row-major data; reinterpret as rows x cols.
        Eigen::MatrixXd m = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            rest.data(), rows, cols);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const std::size_t r = truncation_rank(svd.singularValues(), threshold, max_rank);
        const auto ri = static_cast<Eigen::Index>(r);
        cores.push_back(TTCore::from_left_unfolding(svd.matrixU().leftCols(ri), shape[k]));
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> carry =
            svd.singularValues().head(ri).asDiagonal() * svd.matrixV().leftCols(ri).transpose();
        rest = Eigen::Map<Eigen::VectorXd>(carry.data(), carry.size());
        r_prev = r;
    }
    std::vector<double> last(rest.data(), rest.data() + rest.size());
    cores.emplace_back(r_prev, shape[d - 1], 1, std::move(last));
    return TensorTrain(std::move(cores));
}

double tt_norm(const TensorTrain &tt) {
    // Gram matrix sweep: sum_i G(:,i,:)^T X G(:,i,:).
    Eigen::MatrixXd gram = Eigen::MatrixXd::Ones(1, 1);
    for (const auto &c : tt.cores()) {
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(c.right(), c.right());
        for (std::size_t i = 0; i < c.mode(); ++i) {
            Eigen::MatrixXd s = c.slice(i);
            next.noalias() += s.transpose() * gram * s;
        }
        gram = std::move(next);
    }
    return std::sqrt(std::max(0.0, gram(0, 0)));
}

TensorTrain tt_round(const TensorTrain &tt, double rel_tol, std::size_t max_rank) {
    if (rel_tol < 0.0) throw std::invalid_argument("tt_round: negative tolerance");
    if (max_rank < 1) throw std::invalid_argument("tt_round: max_rank must be >= 1");
    std::vector<TTCore> cores = tt.cores();
    const std::size_t d = cores.size();
    if (d == 1) return TensorTrain(std::move(cores));

    for (std::size_t k = d - 1; k > 0; --k) {
        ThinQR qr = thin_qr(cores[k].right_unfolding().transpose());
        cores[k] = TTCore::from_right_unfolding(qr.q.transpose(), cores[k].mode());
        cores[k - 1] = TTCore::from_left_unfolding(cores[k - 1].left_unfolding() * qr.r.transpose(),
                                                   cores[k - 1].mode());
    }
    const double norm = cores[0].left_unfolding().norm();
    const double threshold = rel_tol / std::sqrt(double(d - 1)) * norm;

    for (std::size_t k = 0; k + 1 < d; ++k) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(cores[k].left_unfolding(), Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success) throw NumericError("tt_round: SVD failed on core " + std::to_string(k));
        const auto r = static_cast<Eigen::Index>(truncation_rank(svd.singularValues(), threshold, max_rank));
        cores[k] = TTCore::from_left_unfolding(svd.matrixU().leftCols(r), cores[k].mode());
        Eigen::MatrixXd carry = svd.singularValues().head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
        cores[k + 1] = TTCore::from_right_unfolding(carry * cores[k + 1].right_unfolding(), cores[k + 1].mode());
    }
    return TensorTrain(std::move(cores));
}

TensorTrain pad_ranks_pow2(const TensorTrain &tt) {
    std::vector<TTCore> cores = tt.cores();
    const std::size_t d = cores.size();

    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (cores[k].right() <= cores[k].left() * cores[k].mode()) continue;
        ThinQR qr = thin_qr(cores[k].left_unfolding());
        cores[k] = TTCore::from_left_unfolding(qr.q, cores[k].mode());
        cores[k + 1] = TTCore::from_right_unfolding(qr.r * cores[k + 1].right_unfolding(), cores[k + 1].mode());
    }
    for (std::size_t k = d - 1; k > 0; --k) {
        if (cores[k].left() <= cores[k].mode() * cores[k].right()) continue;
        ThinQR qr = thin_qr(cores[k].right_unfolding().transpose());
        cores[k] = TTCore::from_right_unfolding(qr.q.transpose(), cores[k].mode());
        cores[k - 1] = TTCore::from_left_unfolding(cores[k - 1].left_unfolding() * qr.r.transpose(),
                                                   cores[k - 1].mode());
    }

    for (std::size_t k = 0; k + 1 < d; ++k) {
        const std::size_t r = cores[k].right();
        const std::size_t padded = std::bit_ceil(r);
        if (padded == r) continue;
        TTCore left(cores[k].left(), cores[k].mode(), padded);
        for (std::size_t a = 0; a < left.left(); ++a)
            for (std::size_t i = 0; i < left.mode(); ++i)
                for (std::size_t b = 0; b < r; ++b) left(a, i, b) = cores[k](a, i, b);
        TTCore right(padded, cores[k + 1].mode(), cores[k + 1].right());
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t i = 0; i < right.mode(); ++i)
                for (std::size_t b = 0; b < right.right(); ++b) right(a, i, b) = cores[k + 1](a, i, b);
        cores[k] = std::move(left);
        cores[k + 1] = std::move(right);
    }
    return TensorTrain(std::move(cores));
}

}  // namespace ttload
