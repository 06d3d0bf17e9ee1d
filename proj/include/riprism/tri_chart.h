// Copyright 2026 The riprism Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RIPRISM_TRI_CHART_H_
#define RIPRISM_TRI_CHART_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "riprism/error.h"

namespace riprism {

// Records how the diagonal cells (t, t) of a chart were produced.
enum class DiagonalFill : std::uint8_t {
  kComputed,    // diagonal holds the metric value like any other cell
  kZeroFilled,  // diagonal has no reference state and was set to 0
};

// Lower-triangular chart with one value per (timestep t, token position i),
// 1 <= i <= t <= n_tokens. Indices are 1-based.
//
// For floating-point charts a quiet NaN is the "missing" marker; set() only
// accepts finite values so a missing cell is always explicit.
template <typename T>
class TriangularChart {
 public:
  TriangularChart() = default;

  // Floating-point charts start with every cell missing, others with T{}.
  explicit TriangularChart(std::size_t n_tokens)
      : n_tokens_(n_tokens), cells_(cell_count(n_tokens), initial_value()) {}

  TriangularChart(std::size_t n_tokens, T fill)
      : n_tokens_(n_tokens), cells_(cell_count(n_tokens), fill) {}

  static constexpr std::size_t cell_count(std::size_t n) {
    return n * (n + 1) / 2;
  }

  // Row-major offset of (t, i) in the flattened cell array.
  static constexpr std::size_t offset(std::size_t t, std::size_t i) {
    return (t - 1) * t / 2 + (i - 1);
  }

  std::size_t n_tokens() const { return n_tokens_; }
  std::size_t size() const { return cells_.size(); }

  bool contains(std::size_t t, std::size_t i) const {
    return i >= 1 && i <= t && t <= n_tokens_;
  }

  T at(std::size_t t, std::size_t i) const {
    check(t, i);
    return cells_[offset(t, i)];
  }

  void set(std::size_t t, std::size_t i, T value) {
    check(t, i);
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(value)) {
        throw InvalidArgument("chart cell (" + std::to_string(t) + "," +
                              std::to_string(i) + ") set to a non-finite value");
      }
    }
    cells_[offset(t, i)] = value;
  }

  bool is_missing(std::size_t t, std::size_t i) const {
    check(t, i);
    if constexpr (std::is_floating_point_v<T>) {
      return std::isnan(cells_[offset(t, i)]);
    } else {
      return false;
    }
  }

  void set_missing(std::size_t t, std::size_t i)
    requires std::is_floating_point_v<T>
  {
    check(t, i);
    cells_[offset(t, i)] = std::numeric_limits<T>::quiet_NaN();
  }

  DiagonalFill fill_policy() const { return fill_policy_; }
  void set_fill_policy(DiagonalFill fill) { fill_policy_ = fill; }

  const std::vector<T>& cells() const& { return cells_; }
  // Rvalue charts hand over their storage so range-for over a temporary
  // chart's cells stays valid.
  std::vector<T> cells() && { return std::move(cells_); }

 private:
  static T initial_value() {
    if constexpr (std::is_floating_point_v<T>) {
      return std::numeric_limits<T>::quiet_NaN();
    } else {
      return T{};
    }
  }

  void check(std::size_t t, std::size_t i) const {
    if (!contains(t, i)) {
      throw InvalidArgument("chart cell (" + std::to_string(t) + "," +
                            std::to_string(i) + ") outside a " +
                            std::to_string(n_tokens_) + "-token chart");
    }
  }

  std::size_t n_tokens_ = 0;
  std::vector<T> cells_;
  DiagonalFill fill_policy_ = DiagonalFill::kComputed;
};

using TriChart = TriangularChart<double>;
using MaskChart = TriangularChart<bool>;

// Cell-by-cell equality where two missing cells compare equal. Values are
// compared exactly; fill policies are ignored.
inline bool same_cells(const TriChart& a, const TriChart& b) {
  if (a.n_tokens() != b.n_tokens()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = a.cells()[k];
    const double y = b.cells()[k];
    if (std::isnan(x) != std::isnan(y)) return false;
    if (!std::isnan(x) && x != y) return false;
  }
  return true;
}

}  // namespace riprism

#endif  // RIPRISM_TRI_CHART_H_
