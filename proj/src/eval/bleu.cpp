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

#include "luxgen/eval/bleu.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace luxgen::eval {

namespace {

using NGramCounts = std::map<std::vector<std::string>, std::uint64_t>;

NGramCounts ngrams(const std::vector<std::string> &tokens, std::size_t n) {
    NGramCounts counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                          tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    return counts;
}

void check_inputs(const std::vector<std::string> &hypotheses, const std::vector<std::string> &references) {
    if (hypotheses.size() != references.size()) {
        throw Error("length-mismatch", "got " + std::to_string(hypotheses.size()) + " hypotheses for " +
                                           std::to_string(references.size()) + " references");
    }
    if (hypotheses.empty()) {
        throw Error("empty-corpus", "BLEU needs at least one hypothesis/reference pair");
    }
}

}  // namespace

BleuStats bleu_stats(const std::vector<std::string> &hypotheses, const std::vector<std::string> &references,
                     int max_n) {
    check_inputs(hypotheses, references);
    if (max_n < 1) {
        throw Error("invalid-config", "max_n must be positive");
    }
    BleuStats s;
    s.matches.assign(static_cast<std::size_t>(max_n), 0);
    s.candidates.assign(static_cast<std::size_t>(max_n), 0);
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        const std::vector<std::string> hyp = text::tokenize(hypotheses[i]);
        const std::vector<std::string> ref = text::tokenize(references[i]);
        s.hypothesis_length += hyp.size();
        s.reference_length += ref.size();
        for (std::size_t n = 1; n <= static_cast<std::size_t>(max_n); ++n) {
            const NGramCounts h = ngrams(hyp, n);
            const NGramCounts r = ngrams(ref, n);
            for (const auto &[gram, count] : h) {
                s.candidates[n - 1] += count;
                if (auto it = r.find(gram); it != r.end()) {
                    s.matches[n - 1] += std::min(count, it->second);
                }
            }
        }
    }
    return s;
}

BleuResult bleu_from_stats(const BleuStats &stats) {
    BleuResult result;
    result.stats = stats;
    result.precisions.assign(stats.matches.size(), std::nullopt);
    const double c = static_cast<double>(stats.hypothesis_length);
    const double r = static_cast<double>(stats.reference_length);
    if (stats.hypothesis_length == 0) {
        return result;
    }
    double log_sum = 0.0;
    int orders = 0;
    for (std::size_t k = 0; k < stats.matches.size(); ++k) {
        if (stats.candidates[k] == 0) {
            continue;
        }
        const double p = stats.matches[k] == 0
                             ? 1.0 / (2.0 * c)
                             : static_cast<double>(stats.matches[k]) / static_cast<double>(stats.candidates[k]);
        result.precisions[k] = p;
        log_sum += std::log(p);
        ++orders;
    }
    result.brevity_penalty = c > r ? 1.0 : std::exp(1.0 - r / c);
    result.score = result.brevity_penalty * std::exp(log_sum / orders);
    return result;
}

BleuResult corpus_bleu(const std::vector<std::string> &hypotheses, const std::vector<std::string> &references,
                       int max_n) {
    return bleu_from_stats(bleu_stats(hypotheses, references, max_n));
}

double sentence_bleu_average(const std::vector<std::string> &hypotheses, const std::vector<std::string> &references,
                             int max_n) {
    check_inputs(hypotheses, references);
    double sum = 0.0;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        sum += corpus_bleu({hypotheses[i]}, {references[i]}, max_n).score;
    }
    return sum / static_cast<double>(hypotheses.size());
}

double bleu(const std::vector<std::string> &hypotheses, const std::vector<std::string> &references, BleuMode mode,
            int max_n) {
    return mode == BleuMode::corpus ? corpus_bleu(hypotheses, references, max_n).score
                                    : sentence_bleu_average(hypotheses, references, max_n);
}

}  // namespace luxgen::eval
