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

#include "ttload/bits.hpp"

#include <stdexcept>
#include <string>

#include "ttload/errors.hpp"

namespace ttload {

InputFunctionError::InputFunctionError(std::vector<int> index, const std::string &what)
    : NumericError([&] {
          std::string s = "input function error at index (";
          for (std::size_t k = 0; k < index.size(); ++k) {
              s += (k ? "," : "") + std::to_string(index[k]);
          }
          return s + "): " + what;
      }()),
      index_(std::move(index)) {}

std::vector<int> binary_index(std::uint64_t i, int d) {
    if (d < 0 || d > 63) {
        throw std::out_of_range("binary_index: bit count " + std::to_string(d) + " out of range");
    }
    if (i >> d) {
        throw std::out_of_range("binary_index: " + std::to_string(i) + " does not fit in " +
                                std::to_string(d) + " bits");
    }
    std::vector<int> bits(d);
    for (int k = 1; k <= d; ++k) {
        bits[k - 1] = static_cast<int>((i >> qubit_bit_position(k, d)) & 1u);
    }
    return bits;
}

std::uint64_t index_from_bits(const std::vector<int> &bits) {
    std::uint64_t i = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw std::out_of_range("index_from_bits: digit is not binary");
        }
        i = (i << 1) | static_cast<std::uint64_t>(b);
    }
    return i;
}

}  // namespace ttload
