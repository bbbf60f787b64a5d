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
#include <sstream>

#include "tqe/error.hpp"

namespace tqe {

namespace {

// Continued-fraction evaluation of the incomplete beta function (modified
// Lentz); converges quickly for x < (a+1)/(a+b+2).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

// Regularized incomplete beta I_x(a, b).
double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * betacf(a, b, x) / a;
  }
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

std::string polarity_to_string(Polarity p) {
  return p == Polarity::kLowerBetter ? "lower-better" : "higher-better";
}

Polarity polarity_from_string(const std::string& s) {
  if (s == "lower-better") return Polarity::kLowerBetter;
  if (s == "higher-better") return Polarity::kHigherBetter;
  throw Error("unknown polarity '" + s +
              "' (expected lower-better or higher-better)");
}

Polarity polarity_of(DatasetKind kind) {
  return kind == DatasetKind::kGoldDa ? Polarity::kHigherBetter
                                      : Polarity::kLowerBetter;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw Error("pearson: length mismatch (" + std::to_string(a.size()) +
                " vs " + std::to_string(b.size()) + ")");
  }
  if (a.size() < 3) {
    throw Error("pearson: need at least 3 points, got " +
                std::to_string(a.size()));
  }
  const std::size_t n = a.size();
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);

  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double da = a[i] - mean_a;
    double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    throw DegenerateError(
        "pearson: zero variance in " +
        std::string(var_a == 0.0 ? "first" : "second") +
        " argument (correlation undefined)");
  }
  return cov / std::sqrt(var_a * var_b);
}

std::vector<double> orient(std::vector<double> scores,
                           Polarity scores_polarity, Polarity gold_polarity) {
  if (scores_polarity != gold_polarity) {
    for (double& s : scores) s = -s;
  }
  return scores;
}

double student_t_upper_tail(double t, double df) {
  if (df <= 0.0) throw Error("student_t_upper_tail: df must be positive");
  double x = df / (df + t * t);
  double half = 0.5 * ibeta(df / 2.0, 0.5, x);
  return t >= 0.0 ? half : 1.0 - half;
}

SignificanceResult williams_test(double r12, double r13, double r23,
                                 std::size_t n, const std::string& name1,
                                 const std::string& name2) {
  if (n < 4) {
    throw Error("williams_test: need n >= 4, got " + std::to_string(n));
  }
  auto check_r = [](double r, const char* label) {
    if (!std::isfinite(r) || r < -1.0 || r > 1.0) {
      throw Error(std::string("williams_test: ") + label +
                  " outside [-1, 1]");
    }
  };
  check_r(r12, "r12");
  check_r(r13, "r13");
  check_r(r23, "r23");

  SignificanceResult result;
  result.df = n - 3;
  // Equal correlations need no test; this also covers identical systems,
  // where r23 = 1 would make K vanish.
  if (r12 == r13) {
    result.t = 0.0;
    result.p = 0.5;
    result.winner = "tie";
    return result;
  }

  double nd = static_cast<double>(n);
  double k = 1.0 - r12 * r12 - r13 * r13 - r23 * r23 + 2.0 * r12 * r13 * r23;
  if (k <= 1e-12) {
    std::ostringstream msg;
    msg << "williams_test: degenerate correlation triple (K = " << k
        << " for r12 = " << r12 << ", r13 = " << r13 << ", r23 = " << r23
        << ")";
    throw DegenerateError(msg.str());
  }
  double mean_sq = (r12 + r13) * (r12 + r13) / 4.0;
  double one_minus = 1.0 - r23;
  double denom = 2.0 * k * (nd - 1.0) / (nd - 3.0) +
                 mean_sq * one_minus * one_minus * one_minus;
  result.t = (r12 - r13) * std::sqrt((nd - 1.0) * (1.0 + r23)) /
             std::sqrt(denom);
  result.p = student_t_upper_tail(result.t, nd - 3.0);
  if (result.p < 0.05) {
    result.winner = name1;
  } else if (result.p > 0.95) {
    result.winner = name2;
  } else {
    result.winner = "tie";
  }
  return result;
}

CorrelationReport evaluate(const std::vector<double>& predictions,
                           Polarity predictions_polarity,
                           const QeDataset& gold,
                           const std::string& system_name,
                           const std::string& gold_name) {
  if (predictions.size() != gold.tuples.size()) {
    throw Error("evaluate: " + std::to_string(predictions.size()) +
                " predictions vs " + std::to_string(gold.tuples.size()) +
                " gold tuples");
  }
  Polarity gold_polarity = polarity_of(gold.kind);
  std::vector<double> oriented =
      orient(predictions, predictions_polarity, gold_polarity);
  std::vector<double> labels;
  labels.reserve(gold.tuples.size());
  for (const QeTuple& t : gold.tuples) labels.push_back(t.label);

  CorrelationReport report;
  report.system = system_name;
  report.gold = gold_name.empty() ? kind_to_string(gold.kind) : gold_name;
  report.n = predictions.size();
  report.polarity_flip_applied = predictions_polarity != gold_polarity;
  report.r = pearson(oriented, labels);
  return report;
}

CompareResult compare(const std::vector<double>& preds_a, Polarity polarity_a,
                      const std::vector<double>& preds_b, Polarity polarity_b,
                      const QeDataset& gold, const std::string& name_a,
                      const std::string& name_b) {
  if (preds_a.size() != preds_b.size()) {
    throw Error("compare: prediction lengths differ (" +
                std::to_string(preds_a.size()) + " vs " +
                std::to_string(preds_b.size()) + ")");
  }
  if (preds_a.size() < 4) {
    throw Error("compare: need at least 4 points for the Williams test");
  }
  CompareResult result;
  result.report_a = evaluate(preds_a, polarity_a, gold, name_a);
  result.report_b = evaluate(preds_b, polarity_b, gold, name_b);

  Polarity gold_polarity = polarity_of(gold.kind);
  std::vector<double> oriented_a = orient(preds_a, polarity_a, gold_polarity);
  std::vector<double> oriented_b = orient(preds_b, polarity_b, gold_polarity);
  double r23 = pearson(oriented_a, oriented_b);
  result.significance =
      williams_test(result.report_a.r, result.report_b.r, r23,
                    preds_a.size(), name_a, name_b);
  return result;
}

}  // namespace tqe
