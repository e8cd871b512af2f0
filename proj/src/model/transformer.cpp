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

#include "luxgen/model/transformer.hpp"

#include "luxgen/common/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace luxgen::model {

int relative_position_bucket(int relative_position, bool bidirectional, int num_buckets, int max_distance) {
    int bucket = 0;
    int n = relative_position;
    if (bidirectional) {
        num_buckets /= 2;
        if (n > 0) {
            bucket += num_buckets;
        }
        n = std::abs(n);
    } else {
        n = -std::min(n, 0);
    }
    const int max_exact = num_buckets / 2;
    if (n < max_exact) {
        return bucket + n;
    }
    const double scaled = std::log(static_cast<double>(n) / max_exact) /
                          std::log(static_cast<double>(max_distance) / max_exact) * (num_buckets - max_exact);
    const int large = max_exact + static_cast<int>(scaled);
    return bucket + std::min(large, num_buckets - 1);
}

namespace {

constexpr double norm_epsilon = 1e-6;

using BucketMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

BucketMatrix bucket_matrix(Eigen::Index queries, Eigen::Index keys, bool bidirectional, const ModelConfig &c) {
    BucketMatrix b(queries, keys);
    for (Eigen::Index i = 0; i < queries; ++i) {
        for (Eigen::Index j = 0; j < keys; ++j) {
            b(i, j) = relative_position_bucket(static_cast<int>(j - i), bidirectional, c.relative_buckets,
                                               c.relative_max_distance);
        }
    }
    return b;
}

// ---- layer norm -----------------------------------------------------------

template <typename T>
struct NormCache {
    Matrix<T> xhat;
    std::vector<T> rstd;
};

template <typename T>
Matrix<T> layer_norm(const LayerNorm<T> &w, const Matrix<T> &x, NormCache<T> *cache) {
    const Eigen::Index n = x.rows();
    Matrix<T> y(n, x.cols());
    if (cache != nullptr) {
        cache->xhat.resize(n, x.cols());
        cache->rstd.resize(static_cast<std::size_t>(n));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        const T mean = x.row(i).mean();
        const T var = (x.row(i).array() - mean).square().mean();
        const T rstd = T(1) / std::sqrt(var + static_cast<T>(norm_epsilon));
        const auto xhat = ((x.row(i).array() - mean) * rstd).eval();
        y.row(i) = (xhat * w.gain.array() + w.offset.array()).matrix();
        if (cache != nullptr) {
            cache->xhat.row(i) = xhat.matrix();
            cache->rstd[static_cast<std::size_t>(i)] = rstd;
        }
    }
    return y;
}

template <typename T>
Matrix<T> layer_norm_backward(const LayerNorm<T> &w, const NormCache<T> &c, const Matrix<T> &dy, LayerNorm<T> &g) {
    const Eigen::Index n = dy.rows();
    Matrix<T> dx(n, dy.cols());
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto dyi = dy.row(i).array();
        const auto xh = c.xhat.row(i).array();
        g.gain.array() += dyi * xh;
        g.offset.array() += dyi;
        const auto dxhat = (dyi * w.gain.array()).eval();
        const T m1 = dxhat.mean();
        const T m2 = (dxhat * xh).mean();
        dx.row(i) = (c.rstd[static_cast<std::size_t>(i)] * (dxhat - m1 - xh * m2)).matrix();
    }
    return dx;
}

// ---- linear / feed-forward -------------------------------------------------

template <typename T>
Matrix<T> linear(const Linear<T> &w, const Matrix<T> &x) {
    Matrix<T> y(x.rows(), w.weight.cols());
    y.noalias() = x * w.weight;
    y.rowwise() += w.bias.row(0);
    return y;
}

template <typename T>
Matrix<T> linear_backward(const Linear<T> &w, const Matrix<T> &x, const Matrix<T> &dy, Linear<T> &g) {
    g.weight.noalias() += x.transpose() * dy;
    g.bias += dy.colwise().sum();
    Matrix<T> dx(dy.rows(), w.weight.rows());
    dx.noalias() = dy * w.weight.transpose();
    return dx;
}

template <typename T>
T gelu(T z) {
    const T c = static_cast<T>(0.7978845608028654);  // sqrt(2 / pi)
    return T(0.5) * z * (T(1) + std::tanh(c * (z + T(0.044715) * z * z * z)));
}

template <typename T>
T gelu_grad(T z) {
    const T c = static_cast<T>(0.7978845608028654);
    const T t = std::tanh(c * (z + T(0.044715) * z * z * z));
    return T(0.5) * (T(1) + t) + T(0.5) * z * (T(1) - t * t) * c * (T(1) + T(3) * T(0.044715) * z * z);
}

template <typename T>
struct FfnCache {
    Matrix<T> pre;
    Matrix<T> act;
};

template <typename T>
Matrix<T> feed_forward(const FeedForward<T> &w, const Matrix<T> &x, FfnCache<T> *cache) {
    Matrix<T> pre = linear(w.expand, x);
    Matrix<T> act = pre.unaryExpr([](T z) { return gelu(z); });
    Matrix<T> out = linear(w.contract, act);
    if (cache != nullptr) {
        cache->pre = std::move(pre);
        cache->act = std::move(act);
    }
    return out;
}

template <typename T>
Matrix<T> feed_forward_backward(const FeedForward<T> &w, const Matrix<T> &x, const FfnCache<T> &c, const Matrix<T> &dy,
                                FeedForward<T> &g) {
    const Matrix<T> dact = linear_backward(w.contract, c.act, dy, g.contract);
    const Matrix<T> dpre = dact.cwiseProduct(c.pre.unaryExpr([](T z) { return gelu_grad(z); }));
    return linear_backward(w.expand, x, dpre, g.expand);
}

// ---- attention ---------------------------------------------------------------

struct KeyMask {
    const std::uint8_t *keys;  // one flag per key row
    bool causal;

    [[nodiscard]] bool allowed(Eigen::Index query, Eigen::Index key) const {
        return keys[key] != 0 && (!causal || key <= query);
    }
};

template <typename T>
struct PositionBias {
    const Matrix<T> *table = nullptr;  // buckets x heads
    const BucketMatrix *buckets = nullptr;
};

template <typename T>
struct AttentionCache {
    Matrix<T> q, k, v, context;
    std::vector<Matrix<T>> probs;  // per head, queries x keys
};

template <typename T>
Matrix<T> attention(const Attention<T> &w, const Matrix<T> &xq, const Matrix<T> &xkv, const KeyMask &mask,
                    const PositionBias<T> &bias, int heads, AttentionCache<T> *cache) {
    const Eigen::Index n = xq.rows();
    const Eigen::Index m = xkv.rows();
    const Eigen::Index d = xq.cols();
    const Eigen::Index dh = d / heads;
    const T scale = T(1) / std::sqrt(static_cast<T>(dh));

    Matrix<T> q = linear(w.query, xq);
    Matrix<T> k = linear(w.key, xkv);
    Matrix<T> v = linear(w.value, xkv);
    Matrix<T> context(n, d);
    std::vector<Matrix<T>> probs;
    for (int h = 0; h < heads; ++h) {
        Matrix<T> s(n, m);
        s.noalias() = q.middleCols(h * dh, dh) * k.middleCols(h * dh, dh).transpose();
        for (Eigen::Index i = 0; i < n; ++i) {
            T row_max = -std::numeric_limits<T>::infinity();
            for (Eigen::Index j = 0; j < m; ++j) {
                if (!mask.allowed(i, j)) {
                    continue;
                }
                T value = s(i, j) * scale;
                if (bias.table != nullptr) {
                    value += (*bias.table)((*bias.buckets)(i, j), h);
                }
                s(i, j) = value;
                row_max = std::max(row_max, value);
            }
            T sum = 0;
            for (Eigen::Index j = 0; j < m; ++j) {
                if (mask.allowed(i, j)) {
                    s(i, j) = std::exp(s(i, j) - row_max);
                    sum += s(i, j);
                } else {
                    s(i, j) = 0;
                }
            }
            if (sum > 0) {
                s.row(i) /= sum;
            }
        }
        context.middleCols(h * dh, dh).noalias() = s * v.middleCols(h * dh, dh);
        if (cache != nullptr) {
            probs.push_back(std::move(s));
        }
    }
    Matrix<T> out = linear(w.output, context);
    if (cache != nullptr) {
        cache->q = std::move(q);
        cache->k = std::move(k);
        cache->v = std::move(v);
        cache->context = std::move(context);
        cache->probs = std::move(probs);
    }
    return out;
}

// Returns d(xq) and accumulates d(xkv) into `dxkv`.
template <typename T>
Matrix<T> attention_backward(const Attention<T> &w, const AttentionCache<T> &c, const Matrix<T> &xq,
                             const Matrix<T> &xkv, const PositionBias<T> &bias, int heads, const Matrix<T> &dout,
                             Attention<T> &g, Matrix<T> *dtable, Matrix<T> &dxkv) {
    const Eigen::Index n = xq.rows();
    const Eigen::Index m = xkv.rows();
    const Eigen::Index d = xq.cols();
    const Eigen::Index dh = d / heads;
    const T scale = T(1) / std::sqrt(static_cast<T>(dh));

    const Matrix<T> dcontext = linear_backward(w.output, c.context, dout, g.output);
    Matrix<T> dq(n, d);
    Matrix<T> dk(m, d);
    Matrix<T> dv(m, d);
    for (int h = 0; h < heads; ++h) {
        const Matrix<T> &p = c.probs[static_cast<std::size_t>(h)];
        const auto dctx = dcontext.middleCols(h * dh, dh);
        Matrix<T> dp(n, m);
        dp.noalias() = dctx * c.v.middleCols(h * dh, dh).transpose();
        dv.middleCols(h * dh, dh).noalias() = p.transpose() * dctx;
        const auto row_dot = (p.array() * dp.array()).rowwise().sum().eval();
        Matrix<T> ds = (p.array() * (dp.array().colwise() - row_dot)).matrix();
        if (dtable != nullptr) {
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < m; ++j) {
                    (*dtable)((*bias.buckets)(i, j), h) += ds(i, j);
                }
            }
        }
        ds *= scale;
        dq.middleCols(h * dh, dh).noalias() = ds * c.k.middleCols(h * dh, dh);
        dk.middleCols(h * dh, dh).noalias() = ds.transpose() * c.q.middleCols(h * dh, dh);
    }
    dxkv += linear_backward(w.key, xkv, dk, g.key);
    dxkv += linear_backward(w.value, xkv, dv, g.value);
    return linear_backward(w.query, xq, dq, g.query);
}

// ---- stacks ------------------------------------------------------------------

template <typename T>
struct EncoderBlockCache {
    NormCache<T> attn_norm;
    Matrix<T> attn_in;
    AttentionCache<T> attn;
    NormCache<T> ffn_norm;
    Matrix<T> ffn_in;
    FfnCache<T> ffn;
};

template <typename T>
struct DecoderBlockCache {
    NormCache<T> self_norm;
    Matrix<T> self_in;
    AttentionCache<T> self_attn;
    NormCache<T> cross_norm;
    Matrix<T> cross_in;
    AttentionCache<T> cross_attn;
    NormCache<T> ffn_norm;
    Matrix<T> ffn_in;
    FfnCache<T> ffn;
};

template <typename T>
Matrix<T> embed(const Weights<T> &w, std::span<const TokenId> ids) {
    Matrix<T> x(static_cast<Eigen::Index>(ids.size()), w.embedding.cols());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        x.row(static_cast<Eigen::Index>(i)) = w.embedding.row(ids[i]);
    }
    return x;
}

template <typename T>
Matrix<T> run_encoder(const Weights<T> &w, const ModelConfig &c, std::span<const TokenId> src,
                      const std::vector<std::uint8_t> &mask, const BucketMatrix &buckets,
                      std::vector<EncoderBlockCache<T>> *caches, NormCache<T> *final_cache) {
    Matrix<T> x = embed(w, src);
    const KeyMask km{mask.data(), false};
    const PositionBias<T> bias{&w.encoder_position_bias, &buckets};
    if (caches != nullptr) {
        caches->resize(w.encoder.size());
    }
    for (std::size_t l = 0; l < w.encoder.size(); ++l) {
        const EncoderBlock<T> &blk = w.encoder[l];
        EncoderBlockCache<T> *bc = caches != nullptr ? &(*caches)[l] : nullptr;
        Matrix<T> attn_in = layer_norm(blk.attn_norm, x, bc ? &bc->attn_norm : nullptr);
        x += attention(blk.self_attn, attn_in, attn_in, km, bias, c.num_heads, bc ? &bc->attn : nullptr);
        Matrix<T> ffn_in = layer_norm(blk.ffn_norm, x, bc ? &bc->ffn_norm : nullptr);
        x += feed_forward(blk.ffn, ffn_in, bc ? &bc->ffn : nullptr);
        if (bc != nullptr) {
            bc->attn_in = std::move(attn_in);
            bc->ffn_in = std::move(ffn_in);
        }
    }
    return layer_norm(w.encoder_norm, x, final_cache);
}

template <typename T>
Matrix<T> run_decoder(const Weights<T> &w, const ModelConfig &c, std::span<const TokenId> dec_in,
                      const std::vector<std::uint8_t> &dec_mask, const BucketMatrix &buckets, const Matrix<T> &enc_out,
                      const std::vector<std::uint8_t> &enc_mask, std::vector<DecoderBlockCache<T>> *caches,
                      NormCache<T> *final_cache) {
    Matrix<T> y = embed(w, dec_in);
    const KeyMask self_mask{dec_mask.data(), true};
    const KeyMask cross_mask{enc_mask.data(), false};
    const PositionBias<T> self_bias{&w.decoder_position_bias, &buckets};
    const PositionBias<T> no_bias{};
    if (caches != nullptr) {
        caches->resize(w.decoder.size());
    }
    for (std::size_t l = 0; l < w.decoder.size(); ++l) {
        const DecoderBlock<T> &blk = w.decoder[l];
        DecoderBlockCache<T> *bc = caches != nullptr ? &(*caches)[l] : nullptr;
        Matrix<T> self_in = layer_norm(blk.self_norm, y, bc ? &bc->self_norm : nullptr);
        y += attention(blk.self_attn, self_in, self_in, self_mask, self_bias, c.num_heads, bc ? &bc->self_attn : nullptr);
        Matrix<T> cross_in = layer_norm(blk.cross_norm, y, bc ? &bc->cross_norm : nullptr);
        y += attention(blk.cross_attn, cross_in, enc_out, cross_mask, no_bias, c.num_heads, bc ? &bc->cross_attn : nullptr);
        Matrix<T> ffn_in = layer_norm(blk.ffn_norm, y, bc ? &bc->ffn_norm : nullptr);
        y += feed_forward(blk.ffn, ffn_in, bc ? &bc->ffn : nullptr);
        if (bc != nullptr) {
            bc->self_in = std::move(self_in);
            bc->cross_in = std::move(cross_in);
            bc->ffn_in = std::move(ffn_in);
        }
    }
    return layer_norm(w.decoder_norm, y, final_cache);
}

template <typename T>
T output_scale(const ModelConfig &c) {
    return c.tie_embeddings ? T(1) / std::sqrt(static_cast<T>(c.hidden_size)) : T(1);
}

template <typename T>
Matrix<T> project(const Weights<T> &w, const ModelConfig &c, const Matrix<T> &hidden) {
    Matrix<T> logits(hidden.rows(), c.vocab_size);
    if (c.tie_embeddings) {
        logits.noalias() = hidden * w.embedding.transpose();
        logits *= output_scale<T>(c);
    } else {
        logits.noalias() = hidden * w.lm_head;
    }
    return logits;
}

template <typename T>
Matrix<T> project_backward(const Weights<T> &w, const ModelConfig &c, const Matrix<T> &hidden, const Matrix<T> &dlogits,
                           Weights<T> &g) {
    Matrix<T> dhidden(hidden.rows(), hidden.cols());
    if (c.tie_embeddings) {
        const T scale = output_scale<T>(c);
        g.embedding.noalias() += scale * (dlogits.transpose() * hidden);
        dhidden.noalias() = dlogits * w.embedding;
        dhidden *= scale;
    } else {
        g.lm_head.noalias() += hidden.transpose() * dlogits;
        dhidden.noalias() = dlogits * w.lm_head.transpose();
    }
    return dhidden;
}

void check_batch(const ModelConfig &c, const Batch &b) {
    auto fail = [](const std::string &what) { throw Error("shape-mismatch", what); };
    if (b.inputs.size() != b.size * b.input_len || b.input_mask.size() != b.inputs.size()) {
        fail(fmt::format("input: expected {} x {} ids and mask entries", b.size, b.input_len));
    }
    if (b.targets.size() != b.size * b.target_len || b.target_mask.size() != b.targets.size()) {
        fail(fmt::format("target: expected {} x {} ids and mask entries", b.size, b.target_len));
    }
    if (b.input_len > static_cast<std::size_t>(c.max_seq_len)) {
        fail(fmt::format("input_len {} exceeds max_seq_len {}", b.input_len, c.max_seq_len));
    }
    if (b.target_len > static_cast<std::size_t>(c.max_seq_len)) {
        fail(fmt::format("target_len {} exceeds max_seq_len {}", b.target_len, c.max_seq_len));
    }
    auto check_ids = [&](const std::vector<TokenId> &ids, const char *what) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i] < 0 || ids[i] >= c.vocab_size) {
                fail(fmt::format("{} id {} at flat position {} is outside vocab_size {}", what, ids[i], i, c.vocab_size));
            }
        }
    };
    check_ids(b.inputs, "input");
    check_ids(b.targets, "target");
}

void check_weights(const ModelConfig &c, const Matrix<float>::Index rows, const Matrix<float>::Index cols) {
    if (rows != c.vocab_size || cols != c.hidden_size) {
        throw Error("shape-mismatch", fmt::format("embedding is {} x {} but the configuration expects vocab_size {} x hidden_size {}",
                                                  rows, cols, c.vocab_size, c.hidden_size));
    }
}

}  // namespace

template <typename T>
struct ForwardState {
    struct Example {
        std::vector<TokenId> src;
        std::vector<TokenId> dec_in;
        std::vector<std::uint8_t> src_mask;
        std::vector<std::uint8_t> dec_mask;
        BucketMatrix enc_buckets;
        BucketMatrix dec_buckets;
        std::vector<EncoderBlockCache<T>> enc;
        NormCache<T> enc_norm;
        Matrix<T> enc_out;
        std::vector<DecoderBlockCache<T>> dec;
        NormCache<T> dec_norm;
        Matrix<T> hidden;
    };
    std::vector<Example> examples;
};

template <typename T>
ForwardResult<T> forward(const Weights<T> &w, const ModelConfig &c, const Batch &b) {
    c.validate();
    check_batch(c, b);
    check_weights(c, w.embedding.rows(), w.embedding.cols());
    ForwardResult<T> result;
    result.state = std::make_shared<ForwardState<T>>();
    result.state->examples.resize(b.size);
    const auto in_len = static_cast<Eigen::Index>(b.input_len);
    const auto tg_len = static_cast<Eigen::Index>(b.target_len);
    const BucketMatrix enc_buckets = bucket_matrix(in_len, in_len, true, c);
    const BucketMatrix dec_buckets = bucket_matrix(tg_len, tg_len, false, c);
    for (std::size_t r = 0; r < b.size; ++r) {
        auto &ex = result.state->examples[r];
        ex.src.assign(b.inputs.begin() + static_cast<std::ptrdiff_t>(r * b.input_len),
                      b.inputs.begin() + static_cast<std::ptrdiff_t>((r + 1) * b.input_len));
        ex.src_mask.assign(b.input_mask.begin() + static_cast<std::ptrdiff_t>(r * b.input_len),
                           b.input_mask.begin() + static_cast<std::ptrdiff_t>((r + 1) * b.input_len));
        ex.dec_in.assign(b.target_len, subword::Vocabulary::pad_id);
        for (std::size_t j = 1; j < b.target_len; ++j) {
            ex.dec_in[j] = b.target(r, j - 1);
        }
        ex.dec_mask.assign(b.target_mask.begin() + static_cast<std::ptrdiff_t>(r * b.target_len),
                           b.target_mask.begin() + static_cast<std::ptrdiff_t>((r + 1) * b.target_len));
        ex.enc_buckets = enc_buckets;
        ex.dec_buckets = dec_buckets;
        ex.enc_out = run_encoder(w, c, ex.src, ex.src_mask, ex.enc_buckets, &ex.enc, &ex.enc_norm);
        ex.hidden = run_decoder(w, c, ex.dec_in, ex.dec_mask, ex.dec_buckets, ex.enc_out, ex.src_mask, &ex.dec,
                                &ex.dec_norm);
        result.logits.push_back(project(w, c, ex.hidden));
    }
    return result;
}

template <typename T>
LossValue loss(const std::vector<Matrix<T>> &logits, const Batch &b) {
    double total = 0.0;
    std::size_t tokens = 0;
    for (std::size_t r = 0; r < b.size; ++r) {
        for (std::size_t j = 0; j < b.target_len; ++j) {
            if (b.target_mask[r * b.target_len + j] == 0) {
                continue;
            }
            const auto row = logits[r].row(static_cast<Eigen::Index>(j));
            const double max = static_cast<double>(row.maxCoeff());
            double sum = 0.0;
            for (Eigen::Index v = 0; v < row.size(); ++v) {
                sum += std::exp(static_cast<double>(row(v)) - max);
            }
            total += max + std::log(sum) - static_cast<double>(row(b.target(r, j)));
            ++tokens;
        }
    }
    return {tokens == 0 ? 0.0 : total / static_cast<double>(tokens), tokens};
}

template <typename T>
std::vector<Matrix<T>> loss_gradient(const std::vector<Matrix<T>> &logits, const Batch &b) {
    const std::size_t tokens = b.real_target_tokens();
    std::vector<Matrix<T>> grads;
    grads.reserve(logits.size());
    for (std::size_t r = 0; r < b.size; ++r) {
        Matrix<T> g = Matrix<T>::Zero(logits[r].rows(), logits[r].cols());
        for (std::size_t j = 0; j < b.target_len; ++j) {
            if (b.target_mask[r * b.target_len + j] == 0) {
                continue;
            }
            const auto jj = static_cast<Eigen::Index>(j);
            const auto row = logits[r].row(jj);
            const T max = row.maxCoeff();
            g.row(jj) = (row.array() - max).exp().matrix();
            g.row(jj) /= g.row(jj).sum();
            g(jj, b.target(r, j)) -= T(1);
            g.row(jj) /= static_cast<T>(tokens);
        }
        grads.push_back(std::move(g));
    }
    return grads;
}

template <typename T>
void backward(const Weights<T> &w, const ModelConfig &c, const ForwardState<T> &state,
              const std::vector<Matrix<T>> &dlogits, Weights<T> &g) {
    for (std::size_t r = 0; r < state.examples.size(); ++r) {
        const auto &ex = state.examples[r];
        Matrix<T> dy = project_backward(w, c, ex.hidden, dlogits[r], g);
        dy = layer_norm_backward(w.decoder_norm, ex.dec_norm, dy, g.decoder_norm);

        const PositionBias<T> dec_bias{&w.decoder_position_bias, &ex.dec_buckets};
        const PositionBias<T> enc_bias{&w.encoder_position_bias, &ex.enc_buckets};
        const PositionBias<T> no_bias{};
        Matrix<T> denc = Matrix<T>::Zero(ex.enc_out.rows(), ex.enc_out.cols());
        for (std::size_t l = w.decoder.size(); l-- > 0;) {
            const DecoderBlock<T> &blk = w.decoder[l];
            const DecoderBlockCache<T> &bc = ex.dec[l];
            DecoderBlock<T> &gb = g.decoder[l];

            const Matrix<T> dffn_in = feed_forward_backward(blk.ffn, bc.ffn_in, bc.ffn, dy, gb.ffn);
            dy += layer_norm_backward(blk.ffn_norm, bc.ffn_norm, dffn_in, gb.ffn_norm);

            const Matrix<T> dcross_in = attention_backward(blk.cross_attn, bc.cross_attn, bc.cross_in, ex.enc_out, no_bias,
                                                           c.num_heads, dy, gb.cross_attn, static_cast<Matrix<T> *>(nullptr), denc);
            dy += layer_norm_backward(blk.cross_norm, bc.cross_norm, dcross_in, gb.cross_norm);

            Matrix<T> dself_in = Matrix<T>::Zero(bc.self_in.rows(), bc.self_in.cols());
            dself_in += attention_backward(blk.self_attn, bc.self_attn, bc.self_in, bc.self_in, dec_bias, c.num_heads, dy,
                                           gb.self_attn, &g.decoder_position_bias, dself_in);
            dy += layer_norm_backward(blk.self_norm, bc.self_norm, dself_in, gb.self_norm);
        }
        for (std::size_t j = 0; j < ex.dec_in.size(); ++j) {
            g.embedding.row(ex.dec_in[j]) += dy.row(static_cast<Eigen::Index>(j));
        }

        Matrix<T> dx = layer_norm_backward(w.encoder_norm, ex.enc_norm, denc, g.encoder_norm);
        for (std::size_t l = w.encoder.size(); l-- > 0;) {
            const EncoderBlock<T> &blk = w.encoder[l];
            const EncoderBlockCache<T> &bc = ex.enc[l];
            EncoderBlock<T> &gb = g.encoder[l];

            const Matrix<T> dffn_in = feed_forward_backward(blk.ffn, bc.ffn_in, bc.ffn, dx, gb.ffn);
            dx += layer_norm_backward(blk.ffn_norm, bc.ffn_norm, dffn_in, gb.ffn_norm);

            Matrix<T> dattn_in = Matrix<T>::Zero(bc.attn_in.rows(), bc.attn_in.cols());
            dattn_in += attention_backward(blk.self_attn, bc.attn, bc.attn_in, bc.attn_in, enc_bias, c.num_heads, dx,
                                           gb.self_attn, &g.encoder_position_bias, dattn_in);
            dx += layer_norm_backward(blk.attn_norm, bc.attn_norm, dattn_in, gb.attn_norm);
        }
        for (std::size_t i = 0; i < ex.src.size(); ++i) {
            g.embedding.row(ex.src[i]) += dx.row(static_cast<Eigen::Index>(i));
        }
    }
}

template <typename T>
GradientResult<T> gradients(const Weights<T> &w, const ModelConfig &c, const Batch &b) {
    GradientResult<T> result{{}, make_weights<T>(c)};
    const ForwardResult<T> fwd = forward(w, c, b);
    result.loss = loss(fwd.logits, b);
    if (result.loss.tokens == 0) {
        return result;
    }
    backward(w, c, *fwd.state, loss_gradient(fwd.logits, b), result.gradients);
    visit_tensors(
        [](const std::string &name, TensorKind, const Matrix<T> &m) {
            if (!m.allFinite()) {
                throw Error("non-finite-gradient", "non-finite gradient in parameter " + name);
            }
        },
        std::as_const(result.gradients));
    return result;
}

template <typename T>
Matrix<T> encode(const Weights<T> &w, const ModelConfig &c, std::span<const TokenId> source) {
    const std::vector<std::uint8_t> mask(source.size(), 1);
    const auto n = static_cast<Eigen::Index>(source.size());
    return run_encoder<T>(w, c, source, mask, bucket_matrix(n, n, true, c), nullptr, nullptr);
}

template <typename T>
Matrix<T> next_token_logits(const Weights<T> &w, const ModelConfig &c, const Matrix<T> &encoded,
                            std::span<const TokenId> prefix) {
    const std::vector<std::uint8_t> enc_mask(static_cast<std::size_t>(encoded.rows()), 1);
    const std::vector<std::uint8_t> dec_mask(prefix.size(), 1);
    const auto n = static_cast<Eigen::Index>(prefix.size());
    const Matrix<T> hidden =
        run_decoder<T>(w, c, prefix, dec_mask, bucket_matrix(n, n, false, c), encoded, enc_mask, nullptr, nullptr);
    const Matrix<T> last = hidden.bottomRows(1);
    return project(w, c, last);
}

#define LUXGEN_INSTANTIATE(T)                                                                                   \
    template struct ForwardState<T>;                                                                            \
    template ForwardResult<T> forward<T>(const Weights<T> &, const ModelConfig &, const Batch &);               \
    template LossValue loss<T>(const std::vector<Matrix<T>> &, const Batch &);                                  \
    template std::vector<Matrix<T>> loss_gradient<T>(const std::vector<Matrix<T>> &, const Batch &);           \
    template void backward<T>(const Weights<T> &, const ModelConfig &, const ForwardState<T> &,                \
                              const std::vector<Matrix<T>> &, Weights<T> &);                                   \
    template GradientResult<T> gradients<T>(const Weights<T> &, const ModelConfig &, const Batch &);           \
    template Matrix<T> encode<T>(const Weights<T> &, const ModelConfig &, std::span<const TokenId>);           \
    template Matrix<T> next_token_logits<T>(const Weights<T> &, const ModelConfig &, const Matrix<T> &,        \
                                            std::span<const TokenId>);

LUXGEN_INSTANTIATE(float)
LUXGEN_INSTANTIATE(double)

#undef LUXGEN_INSTANTIATE

}  // namespace luxgen::model
