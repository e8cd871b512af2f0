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

#include "luxgen/common/error.hpp"
#include "luxgen/model/checkpoint.hpp"
#include "luxgen/model/generate.hpp"
#include "luxgen/model/optimizer.hpp"
#include "luxgen/model/trainer.hpp"
#include "luxgen/model/transformer.hpp"
#include "luxgen/subword/vocabulary.hpp"
#include "support/gradcheck.hpp"
#include "support/model_fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace luxgen;
using namespace luxgen::model;
using luxgen::testing::batch_of;
using luxgen::testing::random_pair;
using luxgen::testing::tiny_config;

namespace {

std::filesystem::path temp_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("luxgen_model_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::vector<SequencePair> random_pairs(std::size_t n, int vocab, std::uint64_t seed, std::size_t max_in = 8,
                                       std::size_t max_out = 6) {
    Rng rng(seed);
    std::vector<SequencePair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        pairs.push_back(random_pair(rng, vocab, max_in, max_out));
    }
    return pairs;
}

bool same_weights(const Weights<float> &a, const Weights<float> &b) {
    bool same = true;
    visit_tensors([&](const std::string &, TensorKind, const Matrix<float> &x,
                      const Matrix<float> &y) { same = same && x == y; },
                  a, b);
    return same;
}

}  // namespace

TEST(ModelConfig, DeskParameterCountMatchesClosedForm) {
    const ModelConfig c = ModelConfig::desk(8192);
    const std::int64_t d = 128, ff = 512, V = 8192, L = 2, buckets = 32, heads = 4;
    const std::int64_t linear_dd = d * d + d;
    const std::int64_t norm = 2 * d;
    const std::int64_t ffn = (d * ff + ff) + (ff * d + d);
    const std::int64_t encoder_block = 2 * norm + 4 * linear_dd + ffn;
    const std::int64_t decoder_block = 3 * norm + 8 * linear_dd + ffn;
    const std::int64_t expected = V * d + 2 * buckets * heads + L * encoder_block + L * decoder_block + 2 * norm;
    EXPECT_EQ(parameter_count(c), expected);
}

TEST(ModelConfig, PaperPresetIsAboutTwoHundredTwentyMillion) {
    const std::int64_t n = parameter_count(ModelConfig::paper());
    EXPECT_GT(n, 198'000'000);
    EXPECT_LT(n, 242'000'000);
}

TEST(ModelConfig, RejectsHeadsThatDoNotDivideHidden) {
    ModelConfig c = ModelConfig::desk();
    c.num_heads = 3;
    EXPECT_THROW(c.validate(), Error);
}

TEST(ModelInit, SameSeedSameParameters) {
    const auto c = tiny_config();
    EXPECT_TRUE(same_weights(init_weights<float>(c, 5), init_weights<float>(c, 5)));
    EXPECT_FALSE(same_weights(init_weights<float>(c, 5), init_weights<float>(c, 6)));
}

TEST(RelativePosition, KnownBuckets) {
    EXPECT_EQ(relative_position_bucket(0, true, 32, 128), 0);
    EXPECT_EQ(relative_position_bucket(-1, true, 32, 128), 1);
    EXPECT_EQ(relative_position_bucket(1, true, 32, 128), 17);
    EXPECT_EQ(relative_position_bucket(-8, true, 32, 128), 8);
    EXPECT_EQ(relative_position_bucket(-127, true, 32, 128), 15);
    EXPECT_EQ(relative_position_bucket(-1000, true, 32, 128), 15);
    EXPECT_EQ(relative_position_bucket(1000, true, 32, 128), 31);
    EXPECT_EQ(relative_position_bucket(5, false, 32, 128), 0);
    EXPECT_EQ(relative_position_bucket(-20, false, 32, 128), 17);
}

TEST(Forward, SingleTokenRowsAreNormalized) {
    const auto c = tiny_config();
    const auto w = init_weights<float>(c, 1);
    const Batch b = batch_of({SequencePair{{1}, {1}}});
    const auto out = forward(w, c, b);
    ASSERT_EQ(out.logits.size(), 1u);
    ASSERT_EQ(out.logits[0].rows(), 1);
    ASSERT_EQ(out.logits[0].cols(), c.vocab_size);
    ASSERT_TRUE(out.logits[0].allFinite());
    const auto row = out.logits[0].row(0).cast<double>();
    const double z = (row.array() - row.maxCoeff()).exp().sum();
    const double total = ((row.array() - row.maxCoeff()).exp() / z).sum();
    EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(Forward, PaddedInputPositionsDoNotMatter) {
    const auto c = tiny_config();
    auto w = init_weights<float>(c, 2);
    luxgen::testing::perturb(w, 3, 0.1);
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SequencePair> pairs{random_pair(rng, c.vocab_size, 4, 5), random_pair(rng, c.vocab_size, 12, 5)};
        Batch b = batch_of(pairs);
        const auto before = forward(w, c, b).logits;
        for (std::size_t j = 0; j < b.input_len; ++j) {
            if (b.input_mask[j] == 0) {
                b.inputs[j] = static_cast<TokenId>(3 + rng.below(30));
            }
        }
        const auto after = forward(w, c, b).logits;
        EXPECT_LT((before[0] - after[0]).cwiseAbs().maxCoeff(), 1e-6f);
    }
}

TEST(Forward, DecoderIsCausal) {
    const auto c = tiny_config();
    auto w = init_weights<float>(c, 7);
    luxgen::testing::perturb(w, 8, 0.1);
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SequencePair> pairs{random_pair(rng, c.vocab_size, 8, 10)};
        Batch b = batch_of(pairs);
        if (b.target_len < 2) {
            continue;
        }
        // Decoder input t is target t-1, so changing target t-1 may only
        // affect logits at positions >= t.
        const auto t = static_cast<std::size_t>(1 + rng.below(b.target_len - 1));
        const auto before = forward(w, c, b).logits[0];
        b.targets[t - 1] = b.targets[t - 1] == 5 ? 6 : 5;
        const auto after = forward(w, c, b).logits[0];
        const auto rows = static_cast<Eigen::Index>(t);
        EXPECT_LT((before.topRows(rows) - after.topRows(rows)).cwiseAbs().maxCoeff(), 1e-6f) << "t=" << t;
    }
}

TEST(Forward, ShapeErrorsNameTheDimension) {
    const auto c = tiny_config();
    const auto w = init_weights<float>(c, 1);
    Batch b = batch_of({SequencePair{{5, 1}, {6, 1}}});
    b.inputs.push_back(3);
    try {
        forward(w, c, b);
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "shape-mismatch");
        EXPECT_NE(std::string(e.what()).find("input"), std::string::npos);
    }
    Batch bad = batch_of({SequencePair{{5, 1}, {c.vocab_size, 1}}});
    EXPECT_THROW(forward(w, c, bad), Error);
    std::vector<TokenId> long_input(static_cast<std::size_t>(c.max_seq_len) + 1, 4);
    Batch too_long = batch_of({SequencePair{long_input, {6, 1}}});
    try {
        forward(w, c, too_long);
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("input_len"), std::string::npos);
    }
}

TEST(Loss, UniformLogitsGiveLogV) {
    const Batch b = batch_of({SequencePair{{5, 1}, {6, 7, 1}}});
    const std::vector<Matrix<double>> logits{Matrix<double>::Zero(3, 50)};
    EXPECT_NEAR(loss(logits, b).value, std::log(50.0), 1e-12);
    EXPECT_EQ(loss(logits, b).tokens, 3u);
}

TEST(Loss, ConfidentCorrectLogitsApproachZero) {
    const Batch b = batch_of({SequencePair{{5, 1}, {6, 7, 1}}});
    Matrix<double> logits = Matrix<double>::Zero(3, 10);
    logits(0, 6) = logits(1, 7) = logits(2, 1) = 60.0;
    EXPECT_LT(loss(std::vector<Matrix<double>>{logits}, b).value, 1e-20);
}

TEST(Loss, MatchesDirectLogSoftmaxSum) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<SequencePair> pairs;
        for (int i = 0; i < 3; ++i) {
            pairs.push_back(random_pair(rng, 12, 4, 6));
        }
        const Batch b = batch_of(pairs);
        std::vector<Matrix<double>> logits;
        for (std::size_t r = 0; r < b.size; ++r) {
            Matrix<double> m(static_cast<Eigen::Index>(b.target_len), 12);
            for (Eigen::Index i = 0; i < m.size(); ++i) {
                m.data()[i] = 6.0 * rng.uniform() - 3.0;
            }
            logits.push_back(m);
        }
        double sum = 0.0;
        int count = 0;
        for (std::size_t r = 0; r < b.size; ++r) {
            for (std::size_t j = 0; j < pairs[r].target_ids.size(); ++j) {
                double z = 0.0;
                for (int v = 0; v < 12; ++v) {
                    z += std::exp(logits[r](static_cast<Eigen::Index>(j), v));
                }
                sum -= std::log(std::exp(logits[r](static_cast<Eigen::Index>(j), pairs[r].target_ids[j])) / z);
                ++count;
            }
        }
        EXPECT_NEAR(loss(logits, b).value, sum / count, 1e-12);
    }
}

TEST(Gradients, MatchCentralDifferencesOnTinyModel) {
    const auto c = tiny_config();
    Rng rng(21);
    std::vector<SequencePair> pairs{random_pair(rng, c.vocab_size, 6, 5), random_pair(rng, c.vocab_size, 9, 7)};
    for (const auto &s : luxgen::testing::gradient_check(c, batch_of(pairs), 40, 22)) {
        EXPECT_LT(s.rel_error, 1e-4) << s.tensor << "[" << s.index << "] analytic " << s.analytic << " numeric "
                                     << s.numeric;
    }
}

TEST(Gradients, UntiedHeadAlsoMatches) {
    auto c = tiny_config();
    c.tie_embeddings = false;
    Rng rng(23);
    std::vector<SequencePair> pairs{random_pair(rng, c.vocab_size, 6, 5)};
    const auto samples = luxgen::testing::gradient_check(c, batch_of(pairs), 20, 24);
    ASSERT_EQ(samples.size(), 20u);
    for (const auto &s : samples) {
        EXPECT_LT(s.rel_error, 1e-4) << s.tensor;
    }
}

TEST(Gradients, EmptyTargetMaskGivesZeroGradients) {
    const auto c = tiny_config();
    const auto w = init_weights<double>(c, 1);
    Batch b = batch_of({SequencePair{{5, 6, 1}, {7, 1}}});
    std::fill(b.target_mask.begin(), b.target_mask.end(), 0);
    const auto g = gradients(w, c, b);
    EXPECT_EQ(g.loss.tokens, 0u);
    visit_tensors([](const std::string &name, TensorKind, const Matrix<double> &m) {
        EXPECT_EQ(m.cwiseAbs().maxCoeff(), 0.0) << name;
    },
                  g.gradients);
}

TEST(Gradients, DuplicatedExampleMatchesSingleExample) {
    const auto c = tiny_config();
    auto w = init_weights<double>(c, 31);
    luxgen::testing::perturb(w, 32, 0.05);
    const SequencePair p{{5, 9, 12, 1}, {7, 8, 1}};
    const auto single = gradients(w, c, batch_of({p})).gradients;
    const auto doubled = gradients(w, c, batch_of({p, p})).gradients;
    visit_tensors([](const std::string &name, TensorKind, const Matrix<double> &a, const Matrix<double> &b) {
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12) << name;
    },
                  single, doubled);
}

TEST(Gradients, NonFiniteGradientNamesTheParameter) {
    const auto c = tiny_config();
    auto w = init_weights<double>(c, 1);
    w.decoder[0].ffn.expand.weight(0, 0) = std::numeric_limits<double>::infinity();
    try {
        gradients(w, c, batch_of({SequencePair{{5, 1}, {6, 1}}}));
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "non-finite-gradient");
        EXPECT_NE(std::string(e.what()).find("parameter"), std::string::npos);
    }
}

TEST(Adam, ZeroGradientLeavesParametersUnchanged) {
    const auto c = tiny_config();
    auto w = init_weights<float>(c, 1);
    const auto before = w;
    auto state = make_adam_state<float>(c);
    adam_step(w, state, make_weights<float>(c), 1e-3, TrainConfig{});
    EXPECT_TRUE(same_weights(w, before));
    EXPECT_EQ(state.step, 1);
}

TEST(Adam, WeightDecayShrinksOnlyMatrices) {
    const auto c = tiny_config();
    auto w = init_weights<double>(c, 1);
    luxgen::testing::perturb(w, 2, 0.1);
    const auto before = w;
    auto state = make_adam_state<double>(c);
    TrainConfig t;
    t.weight_decay = 0.5;
    adam_step(w, state, make_weights<double>(c), 1e-2, t);
    visit_tensors(
        [](const std::string &name, TensorKind kind, const Matrix<double> &after, const Matrix<double> &orig) {
            const bool decays = kind == TensorKind::embedding || kind == TensorKind::projection;
            const double factor = decays ? 1.0 - 1e-2 * 0.5 : 1.0;
            EXPECT_LT((after - orig * factor).cwiseAbs().maxCoeff(), 1e-15) << name;
        },
        w, before);
}

TEST(Adam, FirstStepMatchesClosedForm) {
    const auto c = tiny_config();
    auto w = init_weights<double>(c, 1);
    const auto before = w;
    auto g = make_weights<double>(c);
    luxgen::testing::perturb(g, 2, 1.0);
    auto state = make_adam_state<double>(c);
    TrainConfig tc;
    tc.epsilon = 1e-8;
    const double lr = 0.01;
    adam_step(w, state, g, lr, tc);
    // t = 1: m_hat = g and v_hat = g^2, so the update is lr * g / (|g| + eps).
    visit_tensors([&](const std::string &name, TensorKind, const Matrix<double> &after, const Matrix<double> &orig,
                      const Matrix<double> &grad) {
        for (Eigen::Index i = 0; i < after.size(); ++i) {
            const double gi = grad.data()[i];
            const double expected = orig.data()[i] - lr * gi / (std::abs(gi) + 1e-8);
            ASSERT_NEAR(after.data()[i], expected, 1e-12) << name;
        }
    },
                  w, before, g);
}

TEST(Schedule, LinearWarmupThenConstant) {
    TrainConfig tc;
    tc.learning_rate = 1e-4;
    tc.warmup_fraction = 0.1;
    const auto s = LearningRateSchedule::from(tc, 100);
    EXPECT_EQ(s.warmup_steps, 10);
    EXPECT_DOUBLE_EQ(s.at(5), 0.5 * s.at(10));
    EXPECT_DOUBLE_EQ(s.at(10), 1e-4);
    EXPECT_DOUBLE_EQ(s.at(80), 1e-4);
    tc.warmup_fraction = 0.0;
    EXPECT_DOUBLE_EQ(LearningRateSchedule::from(tc, 100).at(1), 1e-4);
}

namespace {

TrainConfig quick_train(std::int64_t steps) {
    TrainConfig tc;
    tc.learning_rate = 3e-3;
    tc.batch_size = 4;
    tc.total_steps = steps;
    tc.seed = 17;
    return tc;
}

}  // namespace

TEST(Training, LossDecreases) {
    const auto c = tiny_config();
    const auto data = random_pairs(12, c.vocab_size, 40);
    const auto result = pretrain(c, quick_train(60), "v", data);
    ASSERT_EQ(result.history.size(), 60u);
    double first = 0, last = 0;
    for (int i = 0; i < 6; ++i) {
        first += result.history[static_cast<std::size_t>(i)].loss;
        last += result.history[result.history.size() - 1 - static_cast<std::size_t>(i)].loss;
    }
    EXPECT_LT(last, first);
    EXPECT_EQ(result.checkpoint.step, 60);
    EXPECT_EQ(result.checkpoint.adam.step, 60);
}

TEST(Training, ResumeIsBitIdentical) {
    const auto c = tiny_config();
    const auto data = random_pairs(10, c.vocab_size, 41);  // 3 batches per epoch
    const auto dir = temp_dir("resume");
    const auto full = pretrain(c, quick_train(20), "v", data);

    TrainOptions first_half;
    first_half.checkpoint_path = dir / "ck.bin";
    first_half.stop_after = 7;
    const auto partial = pretrain(c, quick_train(20), "v", data, first_half);
    EXPECT_EQ(partial.checkpoint.step, 7);
    const Checkpoint loaded = load_checkpoint(dir / "ck.bin");
    EXPECT_EQ(loaded.step, 7);
    const auto resumed = train(loaded, data);
    ASSERT_EQ(resumed.history.size(), 13u);
    EXPECT_EQ(resumed.history.back().loss, full.history.back().loss);
    EXPECT_TRUE(same_weights(resumed.checkpoint.params, full.checkpoint.params));
}

TEST(Training, ResumeAtEpochBoundaryIsBitIdentical) {
    const auto c = tiny_config();
    const auto data = random_pairs(8, c.vocab_size, 42);  // 2 batches per epoch
    const auto dir = temp_dir("resume_boundary");
    const auto full = pretrain(c, quick_train(9), "v", data);
    TrainOptions opts;
    opts.checkpoint_path = dir / "ck.bin";
    opts.stop_after = 4;
    pretrain(c, quick_train(9), "v", data, opts);
    const auto resumed = train(load_checkpoint(dir / "ck.bin"), data);
    EXPECT_TRUE(same_weights(resumed.checkpoint.params, full.checkpoint.params));
}

TEST(Training, NonFiniteLossHaltsKeepingLastGoodState) {
    const auto c = tiny_config();
    const auto data = random_pairs(4, c.vocab_size, 43);
    const auto dir = temp_dir("halt");
    Checkpoint start = new_checkpoint(c, quick_train(5), "v", 1);
    start.params.embedding(4, 0) = std::numeric_limits<float>::quiet_NaN();
    TrainOptions opts;
    opts.checkpoint_path = dir / "ck.bin";
    const auto result = train(start, data, opts);
    EXPECT_TRUE(result.halted);
    EXPECT_EQ(result.checkpoint.step, 0);
    EXPECT_FALSE(std::filesystem::exists(dir / "ck.bin"));
}

TEST(Training, LogRecordsEveryStep) {
    const auto c = tiny_config();
    const auto data = random_pairs(4, c.vocab_size, 44);
    const auto dir = temp_dir("log");
    TrainOptions opts;
    opts.log_path = dir / "train.jsonl";
    pretrain(c, quick_train(5), "v", data, opts);
    std::ifstream in(dir / "train.jsonl");
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        EXPECT_NE(line.find("\"wall_time\""), std::string::npos);
    }
    EXPECT_EQ(lines, 5);
}

TEST(Finetune, ZeroEpochsLeavesParametersUnchanged) {
    const auto c = tiny_config();
    const Checkpoint base = new_checkpoint(c, quick_train(0), "v", 3);
    TrainConfig tc = TrainConfig::desk_finetune();
    tc.epochs = 0;
    const auto result = finetune(base, tc, "v", random_pairs(5, c.vocab_size, 45));
    EXPECT_TRUE(same_weights(result.checkpoint.params, base.params));
    EXPECT_EQ(result.checkpoint.stage, "finetune");
}

TEST(Finetune, RejectsForeignVocabulary) {
    const auto c = tiny_config();
    const Checkpoint base = new_checkpoint(c, quick_train(0), "aaaa", 3);
    EXPECT_THROW(finetune(base, TrainConfig::desk_finetune(), "bbbb", random_pairs(5, c.vocab_size, 46)), Error);
}

TEST(Checkpoint, RoundTripsEverything) {
    const auto c = tiny_config();
    const auto dir = temp_dir("ckpt");
    const auto trained = pretrain(c, quick_train(3), "fp", random_pairs(6, c.vocab_size, 47)).checkpoint;
    save_checkpoint(trained, dir / "a.bin");
    const Checkpoint back = load_checkpoint(dir / "a.bin");
    EXPECT_EQ(back.model, trained.model);
    EXPECT_EQ(back.train, trained.train);
    EXPECT_EQ(back.step, trained.step);
    EXPECT_EQ(back.rng_state, trained.rng_state);
    EXPECT_EQ(back.vocab_fingerprint, "fp");
    EXPECT_EQ(back.adam.step, trained.adam.step);
    EXPECT_TRUE(same_weights(back.params, trained.params));
    EXPECT_TRUE(same_weights(back.adam.first, trained.adam.first));
    EXPECT_TRUE(same_weights(back.adam.second, trained.adam.second));
}

TEST(Checkpoint, DetectsTruncationAndCorruption) {
    const auto c = tiny_config();
    const auto dir = temp_dir("ckpt_bad");
    save_checkpoint(new_checkpoint(c, quick_train(0), "fp", 1), dir / "a.bin");
    const auto size = std::filesystem::file_size(dir / "a.bin");
    std::filesystem::copy_file(dir / "a.bin", dir / "b.bin");
    std::filesystem::resize_file(dir / "b.bin", size - 10);
    EXPECT_THROW(load_checkpoint(dir / "b.bin"), Error);
    {
        std::fstream f(dir / "a.bin", std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(static_cast<std::streamoff>(size - 100));
        f.put('\x7f');
    }
    try {
        load_checkpoint(dir / "a.bin");
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), "corrupt-checkpoint");
    }
}

TEST(Generate, BeamWidthOneEqualsGreedy) {
    const auto c = tiny_config();
    auto w = init_weights<float>(c, 51);
    luxgen::testing::perturb(w, 52, 0.2);
    const subword::SpecialTokens sp{0, 1, 2, c.vocab_size, 5};
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const SequencePair p = random_pair(rng, c.vocab_size, 8, 2, 5);
        DecodeConfig greedy;
        greedy.max_new_tokens = 12;
        DecodeConfig beam = greedy;
        beam.mode = DecodeMode::beam;
        beam.beam_width = 1;
        EXPECT_EQ(generate_ids(w, c, sp, p.input_ids, greedy), generate_ids(w, c, sp, p.input_ids, beam));
    }
}

TEST(Generate, NeverEmitsBannedIds) {
    const auto c = tiny_config();
    auto w = init_weights<float>(c, 61);
    // Make sentinels and pad very attractive: they must still be skipped.
    w.embedding.row(c.vocab_size - 1) *= 5.0f;
    w.embedding.row(0) *= 5.0f;
    const subword::SpecialTokens sp{0, 1, 2, c.vocab_size, 5};
    Rng rng(62);
    for (auto mode : {DecodeMode::greedy, DecodeMode::beam}) {
        DecodeConfig d;
        d.mode = mode;
        d.max_new_tokens = 10;
        for (int trial = 0; trial < 5; ++trial) {
            const SequencePair p = random_pair(rng, c.vocab_size, 6, 2, 5);
            for (TokenId id : generate_ids(w, c, sp, p.input_ids, d)) {
                EXPECT_FALSE(sp.is_sentinel(id) || id == sp.pad || id == sp.unk || id == sp.eos);
            }
        }
    }
}

TEST(Generate, SentinelsCanBeAllowed) {
    const auto c = tiny_config();
    auto w = init_weights<float>(c, 61);
    w.embedding.row(c.vocab_size - 1) *= 5.0f;
    w.embedding.row(0) *= 5.0f;
    const subword::SpecialTokens sp{0, 1, 2, c.vocab_size, 5};
    Rng rng(62);
    DecodeConfig d;
    d.max_new_tokens = 10;
    d.allow_sentinels = true;
    std::size_t sentinels = 0;
    for (int trial = 0; trial < 5; ++trial) {
        const SequencePair p = random_pair(rng, c.vocab_size, 6, 2, 5);
        for (TokenId id : generate_ids(w, c, sp, p.input_ids, d)) {
            EXPECT_FALSE(id == sp.pad || id == sp.unk);
            sentinels += sp.is_sentinel(id) ? 1 : 0;
        }
    }
    EXPECT_GT(sentinels, 0U);
}
