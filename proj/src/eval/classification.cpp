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

#include "luxgen/eval/classification.hpp"

#include "luxgen/common/error.hpp"

#include <map>

namespace luxgen::eval {

ClassificationReport classification_metrics(const std::vector<std::string> &predictions,
                                             const std::vector<std::string> &golds,
                                             const std::vector<std::string> &classes) {
    if (predictions.size() != golds.size()) {
        throw Error("length-mismatch", "got " + std::to_string(predictions.size()) + " predictions for " +
                                           std::to_string(golds.size()) + " gold labels");
    }
    std::map<std::string, std::size_t> index;
    for (const std::string &c : classes) {
        if (!index.emplace(c, index.size()).second) {
            throw Error("invalid-config", "class '" + c + "' is declared twice");
        }
    }
    const std::size_t k = classes.size();
    std::vector<std::size_t> tp(k, 0), fp(k, 0), fn(k, 0), support(k, 0);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < golds.size(); ++i) {
        const auto g = index.find(golds[i]);
        if (g == index.end()) {
            throw Error("unknown-label", "gold label '" + golds[i] + "' at position " + std::to_string(i) +
                                             " is not a declared class");
        }
        ++support[g->second];
        const auto p = index.find(predictions[i]);
        if (p != index.end() && p->second == g->second) {
            ++tp[g->second];
            ++correct;
        } else {
            ++fn[g->second];
            if (p != index.end()) {
                ++fp[p->second];
            }
        }
    }
    auto ratio = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    ClassificationReport r;
    r.total = golds.size();
    r.accuracy = ratio(correct, r.total);
    for (std::size_t c = 0; c < k; ++c) {
        ClassMetrics m;
        m.label = classes[c];
        m.support = support[c];
        m.precision = ratio(tp[c], tp[c] + fp[c]);
        m.recall = ratio(tp[c], tp[c] + fn[c]);
        m.f1 = m.precision + m.recall == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
        const double w = ratio(support[c], r.total);
        r.weighted_precision += w * m.precision;
        r.weighted_recall += w * m.recall;
        r.weighted_f1 += w * m.f1;
        r.macro_f1 += m.f1;
        r.per_class.push_back(m);
    }
    if (k > 0) {
        r.macro_f1 /= static_cast<double>(k);
    }
    return r;
}

}  // namespace luxgen::eval
