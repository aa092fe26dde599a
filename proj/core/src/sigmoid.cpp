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

#include "penn/sigmoid.hpp"

namespace penn {

Sigmoid::Sigmoid(Mode mode) : mode_(mode) {
  if (mode_ != Mode::Table) return;
  scale_ = kTableBins / (2.0 * kMaxExp);
  table_.resize(kTableBins);
  const double step = 2.0 * kMaxExp / kTableBins;
  // Bin left edges, so grid points like z = 0 are exact. With 8192 bins the
  // worst-case error is 0.25 * step ~= 3.7e-4.
  for (int i = 0; i < kTableBins; ++i) table_[i] = exact(-kMaxExp + i * step);
}

const char* to_string(Sigmoid::Mode m) {
  return m == Sigmoid::Mode::Table ? "table" : "exact";
}

}  // namespace penn
