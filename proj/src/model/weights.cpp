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

#include "luxgen/model/weights.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/rng.hpp"

#include <cmath>

namespace luxgen::model {

std::vector<TensorShape> tensor_shapes(const ModelConfig &c) {
    c.validate();
    const std::int64_t d = c.hidden_size;
    const std::int64_t ff = c.feedforward_size;
    std::vector<TensorShape> shapes;
    auto linear = [&](const std::string &name, std::int64_t in, std::int64_t out) {
        shapes.push_back({name + ".weight", TensorKind::projection, in, out});
        shapes.push_back({name + ".bias", TensorKind::bias, 1, out});
    };
    auto norm = [&](const std::string &name) {
        shapes.push_back({name + ".gain", TensorKind::norm_gain, 1, d});
        shapes.push_back({name + ".offset", TensorKind::norm_offset, 1, d});
    };
    auto attention = [&](const std::string &name) {
        for (const char *part : {".query", ".key", ".value", ".output"}) {
            linear(name + part, d, d);
        }
    };
    auto ffn = [&](const std::string &name) {
        linear(name + ".expand", d, ff);
        linear(name + ".contract", ff, d);
    };
    shapes.push_back({"embedding", TensorKind::embedding, c.vocab_size, d});
    if (!c.tie_embeddings) {
        shapes.push_back({"lm_head", TensorKind::projection, d, c.vocab_size});
    }
    shapes.push_back({"encoder.position_bias", TensorKind::position_bias, c.relative_buckets, c.num_heads});
    shapes.push_back({"decoder.position_bias", TensorKind::position_bias, c.relative_buckets, c.num_heads});
    for (int i = 0; i < c.num_layers; ++i) {
        const std::string p = "encoder." + std::to_string(i);
        norm(p + ".attn_norm");
        attention(p + ".self_attn");
        norm(p + ".ffn_norm");
        ffn(p + ".ffn");
    }
    norm("encoder.final_norm");
    for (int i = 0; i < c.num_layers; ++i) {
        const std::string p = "decoder." + std::to_string(i);
        norm(p + ".self_norm");
        attention(p + ".self_attn");
        norm(p + ".cross_norm");
        attention(p + ".cross_attn");
        norm(p + ".ffn_norm");
        ffn(p + ".ffn");
    }
    norm("decoder.final_norm");
    return shapes;
}

std::int64_t parameter_count(const ModelConfig &config) {
    std::int64_t total = 0;
    for (const TensorShape &s : tensor_shapes(config)) {
        total += s.rows * s.cols;
    }
    return total;
}

template <typename T>
Weights<T> make_weights(const ModelConfig &c) {
    c.validate();
    const int d = c.hidden_size;
    const int ff = c.feedforward_size;
    auto linear = [](int in, int out) { return Linear<T>{Matrix<T>::Zero(in, out), Matrix<T>::Zero(1, out)}; };
    auto norm = [d] { return LayerNorm<T>{Matrix<T>::Zero(1, d), Matrix<T>::Zero(1, d)}; };
    auto attention = [&] { return Attention<T>{linear(d, d), linear(d, d), linear(d, d), linear(d, d)}; };
    auto ffn = [&] { return FeedForward<T>{linear(d, ff), linear(ff, d)}; };

    Weights<T> w;
    w.embedding = Matrix<T>::Zero(c.vocab_size, d);
    if (!c.tie_embeddings) {
        w.lm_head = Matrix<T>::Zero(d, c.vocab_size);
    }
    w.encoder_position_bias = Matrix<T>::Zero(c.relative_buckets, c.num_heads);
    w.decoder_position_bias = Matrix<T>::Zero(c.relative_buckets, c.num_heads);
    for (int i = 0; i < c.num_layers; ++i) {
        w.encoder.push_back({norm(), attention(), norm(), ffn()});
        w.decoder.push_back({norm(), attention(), norm(), attention(), norm(), ffn()});
    }
    w.encoder_norm = norm();
    w.decoder_norm = norm();
    return w;
}

template <typename T>
Weights<T> init_weights(const ModelConfig &config, std::uint64_t seed) {
    Weights<T> w = make_weights<T>(config);
    Rng rng(seed);
    visit_tensors(
        [&](const std::string &, TensorKind kind, Matrix<T> &m) {
            double bound = 0.0;
            switch (kind) {
                case TensorKind::embedding: bound = 1.0; break;
                case TensorKind::projection:
                    bound = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
                    break;
                case TensorKind::norm_gain: m.setOnes(); return;
                case TensorKind::bias:
                case TensorKind::norm_offset:
                case TensorKind::position_bias: m.setZero(); return;
            }
            for (Eigen::Index i = 0; i < m.size(); ++i) {
                m.data()[i] = static_cast<T>((2.0 * rng.uniform() - 1.0) * bound);
            }
        },
        w);
    return w;
}

template <typename To, typename From>
Weights<To> cast_weights(const Weights<From> &weights) {
    Weights<To> out;
    // build the same structure, then copy tensor by tensor
    out.encoder.resize(weights.encoder.size());
    out.decoder.resize(weights.decoder.size());
    if (weights.lm_head.size() != 0) {
        out.lm_head.resize(1, 1);
    }
    visit_tensors([](const std::string &, TensorKind, Matrix<To> &dst, const Matrix<From> &src) { dst = src.template cast<To>(); },
                  out, weights);
    return out;
}

template <typename T>
void set_zero(Weights<T> &weights) {
    visit_tensors([](const std::string &, TensorKind, Matrix<T> &m) { m.setZero(); }, weights);
}

template Weights<float> make_weights<float>(const ModelConfig &);
template Weights<double> make_weights<double>(const ModelConfig &);
template Weights<float> init_weights<float>(const ModelConfig &, std::uint64_t);
template Weights<double> init_weights<double>(const ModelConfig &, std::uint64_t);
template Weights<double> cast_weights<double, float>(const Weights<float> &);
template Weights<float> cast_weights<float, double>(const Weights<double> &);
template void set_zero<float>(Weights<float> &);
template void set_zero<double>(Weights<double> &);

}  // namespace luxgen::model
