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

#include "luxgen/model/generate.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/model/transformer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace luxgen::model {

namespace {

struct Hypothesis {
    std::vector<TokenId> tokens;
    double log_prob{0.0};
    bool finished{false};
};

bool banned(const subword::SpecialTokens &sp, TokenId id, bool allow_sentinels) {
    return id == sp.pad || id == sp.unk || (!allow_sentinels && sp.is_sentinel(id));
}

std::vector<TokenId> clip_source(std::span<const TokenId> source, const ModelConfig &config,
                                 const subword::SpecialTokens &sp) {
    std::vector<TokenId> src(source.begin(), source.end());
    if (src.empty() || src.back() != sp.eos) {
        src.push_back(sp.eos);
    }
    const auto max_len = static_cast<std::size_t>(config.max_seq_len);
    if (src.size() > max_len) {
        src.resize(max_len);
        src.back() = sp.eos;
    }
    return src;
}

std::vector<TokenId> with_start(const std::vector<TokenId> &tokens, TokenId start) {
    std::vector<TokenId> prefix;
    prefix.reserve(tokens.size() + 1);
    prefix.push_back(start);
    prefix.insert(prefix.end(), tokens.begin(), tokens.end());
    return prefix;
}

std::vector<TokenId> greedy(const Weights<float> &w, const ModelConfig &c, const subword::SpecialTokens &sp,
                            const Matrix<float> &encoded, int limit, bool allow_sentinels) {
    std::vector<TokenId> out;
    while (static_cast<int>(out.size()) < limit) {
        const Matrix<float> logits = next_token_logits(w, c, encoded, std::span<const TokenId>(with_start(out, sp.pad)));
        TokenId best = -1;
        float best_value = -std::numeric_limits<float>::infinity();
        for (TokenId id = 0; id < c.vocab_size; ++id) {
            if (!banned(sp, id, allow_sentinels) && (best < 0 || logits(0, id) > best_value)) {
                best = id;
                best_value = logits(0, id);
            }
        }
        if (best == sp.eos) {
            break;
        }
        out.push_back(best);
    }
    return out;
}

double length_penalty(std::size_t length, double alpha) {
    return std::pow((5.0 + static_cast<double>(length)) / 6.0, alpha);
}

std::vector<TokenId> beam(const Weights<float> &w, const ModelConfig &c, const subword::SpecialTokens &sp,
                          const Matrix<float> &encoded, int limit, const DecodeConfig &d) {
    const auto width = static_cast<std::size_t>(d.beam_width);
    std::vector<Hypothesis> live{Hypothesis{}};
    std::vector<Hypothesis> finished;
    struct Candidate {
        double log_prob;
        std::size_t parent;
        TokenId token;
    };
    for (int step = 0; step < limit && !live.empty() && finished.size() < width; ++step) {
        std::vector<Candidate> candidates;
        for (std::size_t h = 0; h < live.size(); ++h) {
            const Matrix<float> logits =
                next_token_logits(w, c, encoded, std::span<const TokenId>(with_start(live[h].tokens, sp.pad)));
            double max = -std::numeric_limits<double>::infinity();
            for (Eigen::Index v = 0; v < logits.cols(); ++v) {
                max = std::max(max, static_cast<double>(logits(0, v)));
            }
            double sum = 0.0;
            for (Eigen::Index v = 0; v < logits.cols(); ++v) {
                sum += std::exp(static_cast<double>(logits(0, v)) - max);
            }
            const double log_z = max + std::log(sum);
            for (TokenId id = 0; id < c.vocab_size; ++id) {
                if (!banned(sp, id, d.allow_sentinels)) {
                    candidates.push_back({live[h].log_prob + static_cast<double>(logits(0, id)) - log_z, h, id});
                }
            }
        }
        const std::size_t keep = std::min(width, candidates.size());
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                          [](const Candidate &a, const Candidate &b) {
                              if (a.log_prob != b.log_prob) {
                                  return a.log_prob > b.log_prob;
                              }
                              if (a.parent != b.parent) {
                                  return a.parent < b.parent;
                              }
                              return a.token < b.token;
                          });
        std::vector<Hypothesis> next;
        for (std::size_t i = 0; i < keep; ++i) {
            const Candidate &cand = candidates[i];
            Hypothesis h{live[cand.parent].tokens, cand.log_prob, cand.token == sp.eos};
            if (h.finished) {
                finished.push_back(std::move(h));
            } else {
                h.tokens.push_back(cand.token);
                next.push_back(std::move(h));
            }
        }
        live = std::move(next);
    }
    for (Hypothesis &h : live) {
        finished.push_back(std::move(h));
    }
    const Hypothesis *best = nullptr;
    double best_score = -std::numeric_limits<double>::infinity();
    for (const Hypothesis &h : finished) {
        const double score = h.log_prob / length_penalty(h.tokens.size() + (h.finished ? 1 : 0), d.length_alpha);
        if (best == nullptr || score > best_score) {
            best = &h;
            best_score = score;
        }
    }
    return best == nullptr ? std::vector<TokenId>{} : best->tokens;
}

}  // namespace

std::vector<TokenId> generate_ids(const Weights<float> &weights, const ModelConfig &config,
                                  const subword::SpecialTokens &specials, std::span<const TokenId> source,
                                  const DecodeConfig &decode) {
    if (specials.vocab_size != config.vocab_size) {
        throw Error("vocab-mismatch", "vocabulary has " + std::to_string(specials.vocab_size) +
                                          " ids but the model expects " + std::to_string(config.vocab_size));
    }
    const std::vector<TokenId> src = clip_source(source, config, specials);
    const Matrix<float> encoded = encode(weights, config, std::span<const TokenId>(src));
    const int limit = std::min(decode.max_new_tokens, config.max_seq_len);
    if (decode.mode == DecodeMode::greedy) {
        return greedy(weights, config, specials, encoded, limit, decode.allow_sentinels);
    }
    return beam(weights, config, specials, encoded, limit, decode);
}

std::string generate(const Checkpoint &checkpoint, const subword::Vocabulary &vocab, std::string_view input,
                     const DecodeConfig &decode) {
    if (!checkpoint.vocab_fingerprint.empty() && checkpoint.vocab_fingerprint != vocab.fingerprint()) {
        throw Error("vocab-mismatch", "checkpoint was trained with vocabulary " + checkpoint.vocab_fingerprint +
                                          ", got " + vocab.fingerprint());
    }
    const std::vector<TokenId> ids =
        generate_ids(checkpoint.params, checkpoint.model, vocab.specials(), vocab.encode(input), decode);
    return vocab.decode(ids);
}

}  // namespace luxgen::model
