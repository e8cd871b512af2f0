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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace luxgen::eval {

/// Pooled n-gram counts over a corpus, tokenized with the toolkit tokenizer.
struct BleuStats {
    std::vector<std::uint64_t> matches;     ///< clipped matches per order 1..max_n
    std::vector<std::uint64_t> candidates;  ///< hypothesis n-grams per order
    std::uint64_t hypothesis_length{0};
    std::uint64_t reference_length{0};
};

struct BleuResult {
    double score{0.0};
    /// Precision per order after flooring; nullopt for orders with no
    /// hypothesis n-grams, which are left out of the geometric mean.
    std::vector<std::optional<double>> precisions;
    double brevity_penalty{0.0};
    BleuStats stats;
};

BleuStats bleu_stats(const std::vector<std::string> &hypotheses, const std::vector<std::string> &references,
                     int max_n = 4);

/// Corpus BLEU from pooled counts: geometric mean of the modified precisions
/// times the brevity penalty exp(1 - r / c) (1 when c > r). A precision with
/// zero matches is floored at 1 / (2c), c = pooled hypothesis length. An
/// empty pooled hypothesis scores 0.
BleuResult bleu_from_stats(const BleuStats &stats);

/// Throws Error("empty-corpus") for no pairs and Error("length-mismatch")
/// when the lists differ in length.
BleuResult corpus_bleu(const std::vector<std::string> &hypotheses, const std::vector<std::string> &references,
                       int max_n = 4);

/// Mean of per-pair corpus_bleu scores, for comparison with the corpus form.
double sentence_bleu_average(const std::vector<std::string> &hypotheses, const std::vector<std::string> &references,
                             int max_n = 4);

enum class BleuMode { corpus, sentence_average };

double bleu(const std::vector<std::string> &hypotheses, const std::vector<std::string> &references,
            BleuMode mode = BleuMode::corpus, int max_n = 4);

}  // namespace luxgen::eval
