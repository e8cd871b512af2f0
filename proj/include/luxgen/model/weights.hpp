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

#include "luxgen/model/config.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace luxgen::model {

template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class TensorKind { embedding, projection, bias, norm_gain, norm_offset, position_bias };

/// y = x * weight + bias, weight is (in x out), bias is (1 x out).
template <typename T>
struct Linear {
    Matrix<T> weight;
    Matrix<T> bias;
};

template <typename T>
struct LayerNorm {
    Matrix<T> gain;    // 1 x hidden
    Matrix<T> offset;  // 1 x hidden
};

template <typename T>
struct Attention {
    Linear<T> query;
    Linear<T> key;
    Linear<T> value;
    Linear<T> output;
};

template <typename T>
struct FeedForward {
    Linear<T> expand;
    Linear<T> contract;
};

/// Pre-norm blocks: x + attn(norm(x)), then x + ffn(norm(x)).
template <typename T>
struct EncoderBlock {
    LayerNorm<T> attn_norm;
    Attention<T> self_attn;
    LayerNorm<T> ffn_norm;
    FeedForward<T> ffn;
};

template <typename T>
struct DecoderBlock {
    LayerNorm<T> self_norm;
    Attention<T> self_attn;
    LayerNorm<T> cross_norm;
    Attention<T> cross_attn;
    LayerNorm<T> ffn_norm;
    FeedForward<T> ffn;
};

/// All parameters of the encoder-decoder. Relative-position bias tables
/// (buckets x heads) are shared by every self-attention layer of a stack.
/// `lm_head` is empty when embeddings are tied.
template <typename T>
struct Weights {
    Matrix<T> embedding;  // vocab x hidden
    Matrix<T> lm_head;    // hidden x vocab, untied models only
    Matrix<T> encoder_position_bias;
    Matrix<T> decoder_position_bias;
    std::vector<EncoderBlock<T>> encoder;
    LayerNorm<T> encoder_norm;
    std::vector<DecoderBlock<T>> decoder;
    LayerNorm<T> decoder_norm;
};

namespace detail {

template <typename Fn, typename... L>
void visit_linear(Fn &fn, const std::string &name, L &...l) {
    fn(name + ".weight", TensorKind::projection, l.weight...);
    fn(name + ".bias", TensorKind::bias, l.bias...);
}

template <typename Fn, typename... N>
void visit_norm(Fn &fn, const std::string &name, N &...n) {
    fn(name + ".gain", TensorKind::norm_gain, n.gain...);
    fn(name + ".offset", TensorKind::norm_offset, n.offset...);
}

template <typename Fn, typename... A>
void visit_attention(Fn &fn, const std::string &name, A &...a) {
    visit_linear(fn, name + ".query", a.query...);
    visit_linear(fn, name + ".key", a.key...);
    visit_linear(fn, name + ".value", a.value...);
    visit_linear(fn, name + ".output", a.output...);
}

template <typename Fn, typename... F>
void visit_ffn(Fn &fn, const std::string &name, F &...f) {
    visit_linear(fn, name + ".expand", f.expand...);
    visit_linear(fn, name + ".contract", f.contract...);
}

template <typename First, typename... Rest>
First &first_of(First &first, Rest &...) {
    return first;
}

}  // namespace detail

/// Calls fn(name, kind, tensor_of_w1, tensor_of_w2, ...) for every tensor, in
/// a fixed order, across structurally identical weight sets.
template <typename Fn, typename... W>
void visit_tensors(Fn &&fn, W &...w) {
    auto &first = detail::first_of(w...);
    fn(std::string("embedding"), TensorKind::embedding, w.embedding...);
    if (first.lm_head.size() != 0) {
        fn(std::string("lm_head"), TensorKind::projection, w.lm_head...);
    }
    fn(std::string("encoder.position_bias"), TensorKind::position_bias, w.encoder_position_bias...);
    fn(std::string("decoder.position_bias"), TensorKind::position_bias, w.decoder_position_bias...);
    for (std::size_t i = 0; i < first.encoder.size(); ++i) {
        const std::string p = "encoder." + std::to_string(i);
        detail::visit_norm(fn, p + ".attn_norm", w.encoder[i].attn_norm...);
        detail::visit_attention(fn, p + ".self_attn", w.encoder[i].self_attn...);
        detail::visit_norm(fn, p + ".ffn_norm", w.encoder[i].ffn_norm...);
        detail::visit_ffn(fn, p + ".ffn", w.encoder[i].ffn...);
    }
    detail::visit_norm(fn, std::string("encoder.final_norm"), w.encoder_norm...);
    for (std::size_t i = 0; i < first.decoder.size(); ++i) {
        const std::string p = "decoder." + std::to_string(i);
        detail::visit_norm(fn, p + ".self_norm", w.decoder[i].self_norm...);
        detail::visit_attention(fn, p + ".self_attn", w.decoder[i].self_attn...);
        detail::visit_norm(fn, p + ".cross_norm", w.decoder[i].cross_norm...);
        detail::visit_attention(fn, p + ".cross_attn", w.decoder[i].cross_attn...);
        detail::visit_norm(fn, p + ".ffn_norm", w.decoder[i].ffn_norm...);
        detail::visit_ffn(fn, p + ".ffn", w.decoder[i].ffn...);
    }
    detail::visit_norm(fn, std::string("decoder.final_norm"), w.decoder_norm...);
}

struct TensorShape {
    std::string name;
    TensorKind kind;
    std::int64_t rows;
    std::int64_t cols;

    bool operator==(const TensorShape &) const = default;
};

/// Name, kind and shape of every tensor in visit order, without allocating.
std::vector<TensorShape> tensor_shapes(const ModelConfig &config);
std::int64_t parameter_count(const ModelConfig &config);

/// Zero-filled weights with the shapes of `config`.
template <typename T>
Weights<T> make_weights(const ModelConfig &config);

/// Deterministic initialization: Glorot-uniform projections, uniform(-1, 1)
/// embeddings, zero biases / norm offsets / position biases, unit norm gains.
template <typename T>
Weights<T> init_weights(const ModelConfig &config, std::uint64_t seed);

template <typename To, typename From>
Weights<To> cast_weights(const Weights<From> &weights);

template <typename T>
void set_zero(Weights<T> &weights);

}  // namespace luxgen::model
