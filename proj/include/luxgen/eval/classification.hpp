// Copyright (c) 2026 The LuxGen Toolkit Authors. All Rights Reserved.
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

#include <cstddef>
#include <string>
#include <vector>

namespace luxgen::eval {

struct ClassMetrics {
    std::string label;
    double precision{0.0};
    double recall{0.0};
    double f1{0.0};
    std::size_t support{0};  ///< gold count
};

struct ClassificationReport {
    std::vector<ClassMetrics> per_class;  ///< in declared class order
    double weighted_precision{0.0};
    double weighted_recall{0.0};
    double weighted_f1{0.0};
    double macro_f1{0.0};  ///< over all declared classes, absent ones included
    double accuracy{0.0};
    std::size_t total{0};
};

/// Per-class precision/recall/F1 (0 where a denominator is 0), averages
/// weighted by gold support, and macro F1. Every gold label must be a
/// declared class (Error("unknown-label")); a prediction outside the classes
/// counts as a miss for its gold class and as nobody's false positive.
ClassificationReport classification_metrics(const std::vector<std::string> &predictions,
                                             const std::vector<std::string> &golds,
                                             const std::vector<std::string> &classes);

}  // namespace luxgen::eval
