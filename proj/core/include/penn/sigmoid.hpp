// Copyright 2026 The penn Authors. All Rights Reserved.
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

#pragma once

#include <cmath>
#include <vector>

namespace penn {

// Logistic function with a fast table mode used by the training loops and an
// exact mode used by the gradient tests. The table covers [-6, 6]; inputs
// outside are clamped to the edge cells.
class Sigmoid {
 public:
  enum class Mode { Table, Exact };

  static constexpr double kMaxExp = 6.0;
  static constexpr int kTableBins = 8192;

  explicit Sigmoid(Mode mode = Mode::Table);

  static double exact(double z) { return 1.0 / (1.0 + std::exp(-z)); }

  double value(double z) const {
    if (mode_ == Mode::Exact) return exact(z);
    const double x = (z + kMaxExp) * scale_;
    if (x <= 0.0) return table_.front();
    if (x >= kTableBins - 1) return table_.back();
    return table_[static_cast<int>(x)];
  }

  Mode mode() const { return mode_; }

 private:
  Mode mode_;
  double scale_ = 0;
  std::vector<double> table_;
};

const char* to_string(Sigmoid::Mode m);

}  // namespace penn
