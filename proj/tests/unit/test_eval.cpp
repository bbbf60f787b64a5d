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

#include "tqe/eval.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "doctest.h"
#include "tqe/error.hpp"
#include "tqe/rng.hpp"

namespace tqe {
namespace {

// Independent evaluation of the Williams t statistic in extended precision.
long double williams_t_oracle(long double r12, long double r13,
                              long double r23, std::size_t n) {
  const long double nn = static_cast<long double>(n);
  const long double k =
      1.0L - r12 * r12 - r13 * r13 - r23 * r23 + 2.0L * r12 * r13 * r23;
  const long double numerator =
      (r12 - r13) * std::sqrt((nn - 1.0L) * (1.0L + r23));
  const long double mean_sq = (r12 + r13) * (r12 + r13) / 4.0L;
  const long double denominator =
      std::sqrt(2.0L * k * (nn - 1.0L) / (nn - 3.0L) +
                mean_sq * (1.0L - r23) * (1.0L - r23) * (1.0L - r23));
  return numerator / denominator;
}

QeDataset gold_from_labels(const std::vector<double>& labels,
                           DatasetKind kind = DatasetKind::kSyntheticTer) {
  QeDataset dataset;
  dataset.kind = kind;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string tag = std::to_string(i);
    dataset.tuples.push_back({"s" + tag, "h" + tag, labels[i], Direction{}});
  }
  return dataset;
}

TEST_CASE("polarity names roundtrip and map from dataset kinds") {
  CHECK(polarity_from_string(polarity_to_string(Polarity::kLowerBetter)) ==
        Polarity::kLowerBetter);
  CHECK(polarity_from_string("higher-better") == Polarity::kHigherBetter);
  CHECK_THROWS_AS(polarity_from_string("sideways"), Error);
  CHECK(polarity_of(DatasetKind::kSyntheticTer) == Polarity::kLowerBetter);
  CHECK(polarity_of(DatasetKind::kGoldHter) == Polarity::kLowerBetter);
  CHECK(polarity_of(DatasetKind::kGoldDa) == Polarity::kHigherBetter);
}

TEST_CASE("pearson matches the fixed examples exactly") {
  CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0).epsilon(1e-12));
  const double r = pearson({1, 2, 3, 4}, {1, 3, 2, 4});
  CHECK(std::abs(r - 0.8) < 1e-12);
}

TEST_CASE("pearson rejects degenerate and mismatched input") {
  CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), DegenerateError);
  CHECK_THROWS_AS(pearson({1, 2, 3}, {5, 5, 5}), DegenerateError);
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2}), Error);
  CHECK_THROWS_AS(pearson({1, 2, 3}, {1, 2}), Error);
}

TEST_CASE("pearson is affine invariant and sign equivariant") {
  Rng rng(21);
  std::vector<double> a(50), b(50);
  for (std::size_t i = 0; i < 50; ++i) {
    a[i] = rng.uniform(-2, 2);
    b[i] = 0.7 * a[i] + rng.uniform(-1, 1);
  }
  const double r = pearson(a, b);
  std::vector<double> scaled = a;
  for (double& x : scaled) x = 3.25 * x + 17.0;
  CHECK(std::abs(pearson(scaled, b) - r) < 1e-9);

  std::vector<double> negated = a;
  for (double& x : negated) x = -x;
  CHECK(pearson(negated, b) == -r);
}

TEST_CASE("orient flips only on differing polarity and is an involution") {
  const std::vector<double> scores = {0.1, 0.9};
  CHECK(orient(scores, Polarity::kLowerBetter, Polarity::kHigherBetter) ==
        std::vector<double>{-0.1, -0.9});
  CHECK(orient(scores, Polarity::kLowerBetter, Polarity::kLowerBetter) ==
        scores);
  CHECK(orient(orient(scores, Polarity::kLowerBetter,
                      Polarity::kHigherBetter),
               Polarity::kLowerBetter, Polarity::kHigherBetter) == scores);
}

TEST_CASE("student_t_upper_tail hits the df=10 calibration point") {
  CHECK(std::abs(student_t_upper_tail(1.812, 10) - 0.05) < 5e-4);
  // Symmetry and the trivial center.
  CHECK(student_t_upper_tail(0.0, 7) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(student_t_upper_tail(2.3, 9) +
                 student_t_upper_tail(-2.3, 9) - 1.0) < 1e-9);
  // Monotone decreasing in t.
  CHECK(student_t_upper_tail(1.0, 12) > student_t_upper_tail(2.0, 12));
}

TEST_CASE("williams_test ties exactly when the correlations agree") {
  const SignificanceResult result = williams_test(0.62, 0.62, 0.4, 50);
  CHECK(result.t == 0.0);
  CHECK(result.p == 0.5);
  CHECK(result.winner == "tie");
  CHECK(result.df == 47);
}

TEST_CASE("williams_test matches the frozen worked example") {
  const SignificanceResult result =
      williams_test(0.6, 0.5, 0.7, 100, "a", "b");
  CHECK(std::abs(result.t - 1.595225146722991) < 1e-9);
  CHECK(std::abs(result.p - 0.05695752695116080) < 1e-9);
  CHECK(result.df == 97);
  CHECK(result.winner == "tie");  // p just above 0.05
}

TEST_CASE("williams_test is antisymmetric under swapping the systems") {
  const SignificanceResult ab = williams_test(0.6, 0.5, 0.7, 100, "a", "b");
  const SignificanceResult ba = williams_test(0.5, 0.6, 0.7, 100, "a", "b");
  CHECK(ab.t == -ba.t);
  CHECK(std::abs(ab.p + ba.p - 1.0) < 1e-9);
}

TEST_CASE("williams_test names a significant winner on either side") {
  const SignificanceResult win1 = williams_test(0.9, 0.2, 0.1, 200, "a", "b");
  CHECK(win1.p < 0.05);
  CHECK(win1.winner == "a");
  const SignificanceResult win2 = williams_test(0.2, 0.9, 0.1, 200, "a", "b");
  CHECK(win2.p > 0.95);
  CHECK(win2.winner == "b");
}

TEST_CASE("williams_test p falls as the first correlation rises") {
  double prev = 1.0;
  for (double r12 : {0.30, 0.45, 0.60, 0.75}) {
    const double p = williams_test(r12, 0.3, 0.5, 80).p;
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("williams_test rejects invalid and degenerate triples") {
  CHECK_THROWS_AS(williams_test(0.5, 0.4, 0.3, 3), Error);
  CHECK_THROWS_AS(williams_test(1.0, 0.4, 0.3, 50), Error);
  CHECK_THROWS_AS(williams_test(0.5, -1.0, 0.3, 50), Error);
  // K = 1 - r12^2 - r13^2 - r23^2 + 2 r12 r13 r23 < 0.
  CHECK_THROWS_AS(williams_test(0.99, -0.98, 0.0, 50), DegenerateError);
}

TEST_CASE("williams_test tracks the extended-precision oracle") {
  Rng rng(31);
  int checked = 0;
  while (checked < 100) {
    const double r12 = rng.uniform(-0.95, 0.95);
    const double r13 = rng.uniform(-0.95, 0.95);
    const double r23 = rng.uniform(-0.95, 0.95);
    const std::size_t n = 4 + rng.bounded(496);
    const double k = 1.0 - r12 * r12 - r13 * r13 - r23 * r23 +
                     2.0 * r12 * r13 * r23;
    if (k <= 1e-6 || r12 == r13) continue;
    const SignificanceResult result = williams_test(r12, r13, r23, n);
    const long double expected = williams_t_oracle(r12, r13, r23, n);
    CHECK(std::abs(result.t - static_cast<double>(expected)) < 1e-9);
    ++checked;
  }
}

TEST_CASE("evaluate correlates after orienting the predictions") {
  const QeDataset gold = gold_from_labels({0.1, 0.4, 0.2, 0.9, 0.5});
  const std::vector<double> preds = {0.1, 0.4, 0.2, 0.9, 0.5};

  const CorrelationReport same =
      evaluate(preds, Polarity::kLowerBetter, gold, "sys");
  CHECK(same.r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.n == 5);
  CHECK_FALSE(same.polarity_flip_applied);
  CHECK(same.system == "sys");

  const CorrelationReport flipped =
      evaluate(preds, Polarity::kHigherBetter, gold, "sys");
  CHECK(flipped.r == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(flipped.polarity_flip_applied);
  // Orientation only changes the sign of r.
  CHECK(same.r == -flipped.r);
}

TEST_CASE("evaluate rejects length mismatch and constant gold") {
  const QeDataset gold = gold_from_labels({0.1, 0.4, 0.2});
  CHECK_THROWS_AS(
      evaluate({0.1, 0.2}, Polarity::kLowerBetter, gold), Error);
  const QeDataset constant = gold_from_labels({0.3, 0.3, 0.3});
  CHECK_THROWS_AS(
      evaluate({0.1, 0.2, 0.3}, Polarity::kLowerBetter, constant),
      DegenerateError);
}

TEST_CASE("compare ties on identical systems and mirrors under a swap") {
  const QeDataset gold = gold_from_labels({0.1, 0.4, 0.2, 0.9, 0.5, 0.7});
  const std::vector<double> preds = {0.2, 0.3, 0.25, 0.8, 0.55, 0.6};
  const CompareResult self = compare(preds, Polarity::kLowerBetter, preds,
                                     Polarity::kLowerBetter, gold, "a", "b");
  CHECK(self.significance.t == 0.0);
  CHECK(self.significance.winner == "tie");

  const std::vector<double> other = {0.15, 0.5, 0.3, 0.7, 0.4, 0.65};
  const CompareResult ab = compare(preds, Polarity::kLowerBetter, other,
                                   Polarity::kLowerBetter, gold, "a", "b");
  const CompareResult ba = compare(other, Polarity::kLowerBetter, preds,
                                   Polarity::kLowerBetter, gold, "b", "a");
  CHECK(ab.significance.t == -ba.significance.t);
  CHECK(ab.report_a.r == ba.report_b.r);
  CHECK(ab.report_b.r == ba.report_a.r);
}

TEST_CASE("compare declares a significant winner over seeded noise") {
  Rng rng(77);
  std::vector<double> labels(100), strong(100), noise(100);
  for (std::size_t i = 0; i < 100; ++i) {
    labels[i] = rng.uniform(0.0, 1.0);
    // Near-gold system: tiny jitter keeps the correlation triple
    // non-degenerate without threatening the win.
    strong[i] = labels[i] + rng.uniform(-0.01, 0.01);
    noise[i] = rng.uniform(0.0, 1.0);
  }
  const QeDataset gold = gold_from_labels(labels);
  const CompareResult result =
      compare(strong, Polarity::kLowerBetter, noise, Polarity::kLowerBetter,
              gold, "strong", "noise");
  CHECK(result.significance.p < 0.05);
  CHECK(result.significance.winner == "strong");
  CHECK(result.report_a.r > 0.99);
}

}  // namespace
}  // namespace tqe
