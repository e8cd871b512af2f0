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

#include "luxgen/common/sequence.hpp"

#include <algorithm>

namespace luxgen {

std::size_t Batch::real_target_tokens() const {
    return static_cast<std::size_t>(std::count(target_mask.begin(), target_mask.end(), std::uint8_t{1}));
}

Batch make_batch(const std::vector<const SequencePair *> &pairs, std::size_t max_len, TokenId pad, TokenId eos) {
    Batch batch;
    batch.size = pairs.size();
    for (const SequencePair *p : pairs) {
        batch.input_len = std::max(batch.input_len, std::min(p->input_ids.size(), max_len));
        batch.target_len = std::max(batch.target_len, std::min(p->target_ids.size(), max_len));
    }
    batch.inputs.assign(batch.size * batch.input_len, pad);
    batch.input_mask.assign(batch.size * batch.input_len, 0);
    batch.targets.assign(batch.size * batch.target_len, pad);
    batch.target_mask.assign(batch.size * batch.target_len, 0);

    auto fill = [&](const std::vector<TokenId> &ids, std::size_t row, std::size_t width, std::vector<TokenId> &dst,
                    std::vector<std::uint8_t> &mask) {
        const std::size_t n = std::min(ids.size(), max_len);
        for (std::size_t j = 0; j < n; ++j) {
            dst[row * width + j] = ids[j];
            mask[row * width + j] = 1;
        }
        if (ids.size() > max_len && n > 0) {
            dst[row * width + n - 1] = eos;
        }
    };
    for (std::size_t r = 0; r < batch.size; ++r) {
        fill(pairs[r]->input_ids, r, batch.input_len, batch.inputs, batch.input_mask);
        fill(pairs[r]->target_ids, r, batch.target_len, batch.targets, batch.target_mask);
    }
    return batch;
}

}  // namespace luxgen
