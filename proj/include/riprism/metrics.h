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

#ifndef RIPRISM_METRICS_H_
#define RIPRISM_METRICS_H_

#include <cstddef>
#include <span>
#include <vector>

namespace riprism {

// Tolerance on the total mass of a probability vector.
inline constexpr double kProbSumTolerance = 1e-6;

// Upper bound of the Jensen-Shannon divergence in nats.
inline constexpr double kLn2 = 0.69314718055994530942;

// 1 - cos(u, v). Identical vectors give exactly 0. Throws on length mismatch
// or a zero-norm operand.
double cosine_distance(std::span<const double> u, std::span<const double> v);

// Throws InvalidArgument unless p is nonnegative and sums to 1 within
// kProbSumTolerance.
void validate_distribution(std::span<const double> p);

// Jensen-Shannon divergence in nats, clamped to [0, ln 2]. Operands are put in
// lexicographic order before evaluation so jsd(p, q) == jsd(q, p) bitwise.
double jsd(std::span<const double> p, std::span<const double> q);

// Shannon entropy in nats, with 0 ln 0 = 0.
double entropy(std::span<const double> p);

struct EntropyDelta {
  double absolute = 0.0;  // |H(current) - H(previous)|
  double signed_value = 0.0;  // H(current) - H(previous)
};

// Each entropy is taken over its own distribution as given; the two
// distributions may have different lengths (arc distributions grow with t).
EntropyDelta entropy_delta(std::span<const double> current,
                           std::span<const double> previous);

std::vector<double> uniform(std::size_t categories);

}  // namespace riprism

#endif  // RIPRISM_METRICS_H_
