// Copyright 2026 The tqekit Authors
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

#ifndef TQE_EVAL_HPP_
#define TQE_EVAL_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "tqe/data.hpp"

namespace tqe {

// Whether a score scale treats lower values as better (TER/HTER) or higher
// values as better (DA). Correlations are only meaningful after both sides
// are oriented to a common polarity.
enum class Polarity {
  kLowerBetter,
  kHigherBetter,
};

std::string polarity_to_string(Polarity p);
Polarity polarity_from_string(const std::string& s);

/// The gold polarity implied by a dataset kind (TER/HTER lower-better,
/// DA higher-better).
Polarity polarity_of(DatasetKind kind);

struct CorrelationReport {
  std::string system;
  std::string gold;
  double r = 0.0;
  std::size_t n = 0;
  bool polarity_flip_applied = false;
};

struct SignificanceResult {
  double t = 0.0;
  std::size_t df = 0;  // n - 3
  double p = 0.0;      // one-tailed upper-tail probability
  std::string winner;  // system name, or "tie"
};

/// Pearson's product-moment correlation, two-pass mean-centered in 64-bit.
/// Throws Error on a length mismatch or fewer than 3 points, and
/// DegenerateError when either vector has zero variance.
double pearson(const std::vector<double>& a, const std::vector<double>& b);

/// Negates every score when the two polarities differ; identity otherwise.
std::vector<double> orient(std::vector<double> scores,
                           Polarity scores_polarity, Polarity gold_polarity);

/// Upper-tail probability P(T > t) of Student's t with df degrees of
/// freedom, evaluated through the regularized incomplete beta function
/// (continued fraction, roughly 1e-12 accuracy; documented target 1e-10).
double student_t_upper_tail(double t, double df);

/// Williams test for the difference between two correlations that share a
/// dependent variable. r12 = corr(system1, gold), r13 = corr(system2, gold),
/// r23 = corr(system1, system2). One-tailed; winner is name1 when p < 0.05,
/// name2 when p > 0.95, "tie" otherwise. r12 == r13 short-circuits to a tie
/// with t = 0 and p = 0.5. Throws Error on invalid inputs and
/// DegenerateError when the determinant term K is not positive.
SignificanceResult williams_test(double r12, double r13, double r23,
                                 std::size_t n,
                                 const std::string& name1 = "system1",
                                 const std::string& name2 = "system2");

/// Orients the predictions to the gold polarity, then correlates them with
/// the gold labels.
CorrelationReport evaluate(const std::vector<double>& predictions,
                           Polarity predictions_polarity,
                           const QeDataset& gold,
                           const std::string& system_name = "system",
                           const std::string& gold_name = "");

struct CompareResult {
  CorrelationReport report_a;
  CorrelationReport report_b;
  SignificanceResult significance;
};

/// Orients both systems, computes the three pairwise correlations and runs
/// the Williams test.
CompareResult compare(const std::vector<double>& preds_a, Polarity polarity_a,
                      const std::vector<double>& preds_b, Polarity polarity_b,
                      const QeDataset& gold,
                      const std::string& name_a = "system_a",
                      const std::string& name_b = "system_b");

}  // namespace tqe

#endif  // TQE_EVAL_HPP_
