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

#include "luxgen/model/trainer.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/model/transformer.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>

namespace luxgen::model {

namespace {

void append_log(const std::filesystem::path &path, const StepRecord &r) {
    if (path.empty()) {
        return;
    }
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) {
        throw Error("write-failed", "cannot append to training log " + path.string());
    }
    const nlohmann::json record{{"step", r.step}, {"loss", r.loss}, {"lr", r.lr}, {"wall_time", r.wall_time}};
    out << record.dump() << '\n';
}

bool params_finite(const Weights<float> &w) {
    bool ok = true;
    visit_tensors([&](const std::string &, TensorKind, const Matrix<float> &m) { ok = ok && m.allFinite(); }, w);
    return ok;
}

}  // namespace

std::int64_t planned_steps(const TrainConfig &train, std::size_t num_pairs) {
    if (train.epochs > 0) {
        const auto batch = static_cast<std::size_t>(train.batch_size);
        return static_cast<std::int64_t>(train.epochs) * static_cast<std::int64_t>((num_pairs + batch - 1) / batch);
    }
    return train.total_steps;
}

TrainResult train(Checkpoint start, std::span<const SequencePair> data, const TrainOptions &options) {
    TrainResult result;
    Checkpoint &ck = result.checkpoint;
    ck = std::move(start);
    const TrainConfig &tc = ck.train;
    tc.validate();
    ck.model.validate();

    const std::int64_t total = planned_steps(tc, data.size());
    const auto batch = static_cast<std::size_t>(tc.batch_size);
    const auto steps_per_epoch = static_cast<std::int64_t>((data.size() + batch - 1) / batch);
    const LearningRateSchedule schedule = LearningRateSchedule::from(tc, total);
    const auto max_len = static_cast<std::size_t>(ck.model.max_seq_len);

    auto write_checkpoint = [&] {
        if (!options.checkpoint_path.empty()) {
            save_checkpoint(ck, options.checkpoint_path);
        }
    };
    if (ck.step >= total) {
        write_checkpoint();
        return result;
    }
    if (data.empty()) {
        throw Error("empty-training-data", "no training pairs were supplied");
    }

    Rng rng;
    rng.restore(ck.rng_state);
    std::vector<std::size_t> order;
    std::int64_t built_epoch = -1;
    const auto started = std::chrono::steady_clock::now();
    std::int64_t steps_this_call = 0;

    while (ck.step < total && (options.stop_after < 0 || steps_this_call < options.stop_after)) {
        const std::int64_t epoch = ck.step / steps_per_epoch;
        const std::int64_t position = ck.step % steps_per_epoch;
        if (epoch != built_epoch) {
            order.resize(data.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            rng.shuffle(order);
            built_epoch = epoch;
        }
        std::vector<const SequencePair *> members;
        const std::size_t begin = static_cast<std::size_t>(position) * batch;
        for (std::size_t i = begin; i < std::min(begin + batch, data.size()); ++i) {
            members.push_back(&data[order[i]]);
        }
        const Batch b = make_batch(members, max_len, subword::Vocabulary::pad_id, subword::Vocabulary::eos_id);

        const std::int64_t next_step = ck.step + 1;
        auto halt = [&](const std::string &reason) {
            result.halted = true;
            result.halt_reason = "step " + std::to_string(next_step) + ": " + reason;
        };
        std::optional<GradientResult<float>> g;
        try {
            g.emplace(gradients(ck.params, ck.model, b));
        } catch (const Error &e) {
            if (e.code() != "non-finite-gradient") {
                throw;
            }
            halt(e.what());
            break;
        }
        if (!std::isfinite(g->loss.value)) {
            halt("non-finite loss");
            break;
        }
        const double lr = schedule.at(next_step);
        Weights<float> backup_params = ck.params;
        AdamState<float> backup_adam = ck.adam;
        adam_step(ck.params, ck.adam, g->gradients, lr, tc);
        if (!params_finite(ck.params)) {
            ck.params = std::move(backup_params);
            ck.adam = std::move(backup_adam);
            halt("update produced non-finite parameters");
            break;
        }
        ck.step = next_step;
        ++steps_this_call;
        if (ck.step % steps_per_epoch == 0) {
            ck.rng_state = rng.state();
        }

        StepRecord record{ck.step, g->loss.value, lr,
                          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()};
        result.history.push_back(record);
        if (options.on_step) {
            options.on_step(record);
        }
        if (tc.log_every > 0 && (ck.step % tc.log_every == 0 || ck.step == total)) {
            append_log(options.log_path, record);
        }
        if (tc.checkpoint_every > 0 && ck.step % tc.checkpoint_every == 0 && ck.step != total) {
            write_checkpoint();
        }
    }
    if (!result.halted || steps_this_call > 0) {
        write_checkpoint();
    }
    return result;
}

TrainResult pretrain(const ModelConfig &model, const TrainConfig &train_config, const std::string &vocab_fingerprint,
                     std::span<const SequencePair> data, const TrainOptions &options) {
    Checkpoint start = new_checkpoint(model, train_config, vocab_fingerprint, derive_seed(train_config.seed, "init"));
    start.stage = "pretrain";
    return train(std::move(start), data, options);
}

TrainResult finetune(const Checkpoint &pretrained, const TrainConfig &train_config, const std::string &vocab_fingerprint,
                     std::span<const SequencePair> data, const TrainOptions &options) {
    if (pretrained.vocab_fingerprint != vocab_fingerprint) {
        throw Error("vocab-mismatch", "checkpoint was trained with vocabulary " + pretrained.vocab_fingerprint +
                                          " but the task data is encoded with " + vocab_fingerprint);
    }
    Checkpoint start;
    start.model = pretrained.model;
    start.train = train_config;
    start.stage = "finetune";
    start.params = pretrained.params;
    start.adam = make_adam_state<float>(pretrained.model);
    start.rng_state = Rng(train_config.seed).state();
    start.vocab_fingerprint = vocab_fingerprint;
    return train(std::move(start), data, options);
}

}  // namespace luxgen::model
