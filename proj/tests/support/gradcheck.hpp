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

#ifndef TQE_TESTS_SUPPORT_GRADCHECK_HPP_
#define TQE_TESTS_SUPPORT_GRADCHECK_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "tqe/data.hpp"
#include "tqe/model/encoder.hpp"

namespace tqetest {

struct GradCheckReport {
  std::size_t checked = 0;
  std::size_t failed = 0;
  double worst_rel = 0.0;
  std::string worst_coord;
};

// Central finite differences with step h on `per_tensor` coordinates of
// every registered tensor (stride-sampled, so edges and interiors both get
// hit). A coordinate passes when the analytic/numeric relative error is
// below rtol or the absolute difference is below atol (covers gradients
// that are legitimately ~0, where the quotient is pure rounding noise).
GradCheckReport gradcheck(tqe::Model& model,
                          const std::vector<const tqe::QeTuple*>& batch,
                          std::size_t per_tensor, double h = 1e-4,
                          double rtol = 1e-4, double atol = 1e-7);

// Fixed four-example batch over a small vocabulary; labels are spread wide
// so every gradient path carries signal.
struct GradFixture {
  tqe::Vocab vocab;
  std::vector<tqe::QeTuple> tuples;
  std::vector<const tqe::QeTuple*> batch() const;
};
GradFixture make_grad_fixture();

}  // namespace tqetest

#endif  // TQE_TESTS_SUPPORT_GRADCHECK_HPP_
