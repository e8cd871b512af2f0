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

#include "luxgen/common/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace luxgen::testing {

inline std::vector<std::string> words(const std::string &s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

// Occurrences of tokens[at, at+n) inside `seq`, by direct scanning.
inline std::size_t occurrences(const std::vector<std::string> &seq, const std::vector<std::string> &tokens, std::size_t at,
                               std::size_t n) {
    std::size_t count = 0;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
        bool same = true;
        for (std::size_t k = 0; k < n && same; ++k) same = seq[i + k] == tokens[at + k];
        count += same;
    }
    return count;
}

// Corpus BLEU over whitespace tokens. Clipped counts are summed per distinct
// hypothesis n-gram; orders without hypothesis n-grams are left out; a zero
// match count is floored at 1/(2c).
inline double bleu_oracle(const std::vector<std::string> &hyps, const std::vector<std::string> &refs, int max_n = 4) {
    std::vector<double> matches(max_n, 0.0), totals(max_n, 0.0);
    double c = 0, r = 0;
    for (std::size_t s = 0; s < hyps.size(); ++s) {
        const auto h = words(hyps[s]);
        const auto g = words(refs[s]);
        c += static_cast<double>(h.size());
        r += static_cast<double>(g.size());
        for (int n = 1; n <= max_n; ++n) {
            const auto un = static_cast<std::size_t>(n);
            for (std::size_t i = 0; i + un <= h.size(); ++i) {
                totals[n - 1] += 1;
                // count each distinct n-gram once, at its first position
                bool first = true;
                for (std::size_t j = 0; j < i && first; ++j) {
                    first = !std::equal(h.begin() + j, h.begin() + j + n, h.begin() + i);
                }
                if (!first) continue;
                const auto in_h = occurrences(h, h, i, un);
                const auto in_g = occurrences(g, h, i, un);
                matches[n - 1] += static_cast<double>(std::min(in_h, in_g));
            }
        }
    }
    if (c == 0) return 0.0;
    double log_sum = 0;
    int orders = 0;
    for (int n = 0; n < max_n; ++n) {
        if (totals[n] == 0) continue;
        const double p = matches[n] == 0 ? 1.0 / (2.0 * c) : matches[n] / totals[n];
        log_sum += std::log(p);
        ++orders;
    }
    const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
    return bp * std::exp(log_sum / orders);
}

struct ClassOracle {
    std::vector<double> precision, recall, f1, support;
    double accuracy{0}, weighted_precision{0}, weighted_recall{0}, weighted_f1{0}, macro_f1{0};
};

// Metrics read off an explicit confusion matrix; row = gold, column =
// predicted, with one extra column for predictions outside the class list.
inline ClassOracle classification_oracle(const std::vector<std::string> &pred, const std::vector<std::string> &gold,
                                         const std::vector<std::string> &classes) {
    const std::size_t k = classes.size();
    std::vector<std::vector<double>> m(k, std::vector<double>(k + 1, 0.0));
    auto index = [&](const std::string &s) {
        return static_cast<std::size_t>(std::find(classes.begin(), classes.end(), s) - classes.begin());
    };
    for (std::size_t i = 0; i < gold.size(); ++i) m[index(gold[i])][std::min(index(pred[i]), k)] += 1;
    ClassOracle o;
    double n = 0, diag = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b <= k; ++b) n += m[a][b];
        diag += m[a][a];
    }
    o.accuracy = n == 0 ? 0 : diag / n;
    for (std::size_t c = 0; c < k; ++c) {
        double row = 0, col = 0;
        for (std::size_t b = 0; b <= k; ++b) row += m[c][b];
        for (std::size_t a = 0; a < k; ++a) col += m[a][c];
        const double p = col == 0 ? 0 : m[c][c] / col;
        const double rc = row == 0 ? 0 : m[c][c] / row;
        const double f = p + rc == 0 ? 0 : 2 * p * rc / (p + rc);
        o.precision.push_back(p);
        o.recall.push_back(rc);
        o.f1.push_back(f);
        o.support.push_back(row);
        const double w = n == 0 ? 0 : row / n;
        o.weighted_precision += w * p;
        o.weighted_recall += w * rc;
        o.weighted_f1 += w * f;
        o.macro_f1 += f / static_cast<double>(k);
    }
    return o;
}

inline std::string random_sentence(Rng &rng, std::size_t vocab, std::size_t max_len) {
    std::string s;
    const auto len = rng.below(max_len + 1);
    for (std::uint64_t i = 0; i < len; ++i) {
        if (i) s += ' ';
        s += "w" + std::to_string(rng.below(vocab));
    }
    return s;
}

}  // namespace luxgen::testing
