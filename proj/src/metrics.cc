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

#include "riprism/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "riprism/error.h"

namespace riprism {
namespace {

void check_same_length(std::span<const double> a, std::span<const double> b,
                       const char* what) {
  if (a.size() != b.size()) {
    throw InvalidArgument(std::string(what) + ": length mismatch (" +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()) + ")");
  }
}

// KL(p || m) restricted to the support of p.
double kl_to_mixture(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) continue;
    const double m = 0.5 * (p[k] + q[k]);
    sum += p[k] * std::log(p[k] / m);
  }
  return sum;
}

}  // namespace

double cosine_distance(std::span<const double> u, std::span<const double> v) {
  check_same_length(u, v, "cosine_distance");
  if (u.empty()) throw InvalidArgument("cosine_distance: empty vectors");
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  bool identical = true;
  for (std::size_t k = 0; k < u.size(); ++k) {
    dot += u[k] * v[k];
    uu += u[k] * u[k];
    vv += v[k] * v[k];
    identical = identical && u[k] == v[k];
  }
  if (uu == 0.0 || vv == 0.0) {
    throw InvalidArgument("cosine_distance: zero-norm vector");
  }
  if (identical) return 0.0;
  const double d = 1.0 - dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(d, 0.0, 2.0);
}

void validate_distribution(std::span<const double> p) {
  if (p.empty()) throw InvalidArgument("empty probability vector");
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvalidArgument("probability vector has a negative or non-finite entry");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kProbSumTolerance) {
    throw InvalidArgument("probability vector sums to " + std::to_string(total));
  }
}

double jsd(std::span<const double> p, std::span<const double> q) {
  check_same_length(p, q, "jsd");
  validate_distribution(p);
  validate_distribution(q);
  if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end())) {
    std::swap(p, q);
  }
  const double d = 0.5 * kl_to_mixture(p, q) + 0.5 * kl_to_mixture(q, p);
  return std::clamp(d, 0.0, kLn2);
}

double entropy(std::span<const double> p) {
  validate_distribution(p);
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return std::max(h, 0.0);
}

EntropyDelta entropy_delta(std::span<const double> current,
                           std::span<const double> previous) {
  const double signed_value = entropy(current) - entropy(previous);
  return {std::abs(signed_value), signed_value};
}

std::vector<double> uniform(std::size_t categories) {
  if (categories == 0) throw InvalidArgument("uniform: zero categories");
  return std::vector<double>(categories, 1.0 / static_cast<double>(categories));
}

}  // namespace riprism
