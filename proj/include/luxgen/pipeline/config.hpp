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

#include "luxgen/baseline/client.hpp"
#include "luxgen/baseline/prompts.hpp"
#include "luxgen/corpus/document.hpp"
#include "luxgen/model/config.hpp"
#include "luxgen/tasks/tasks.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace luxgen::pipeline {

/// Which documents a model is pre-trained on.
enum class PretrainCorpus {
    reference,  ///< reference-language documents only
    balanced,   ///< output of the balance stage
};

struct ModelSpec {
    std::string name;
    PretrainCorpus corpus{PretrainCorpus::reference};
};

struct BaselineSpec {
    std::string name;
    baseline::PromptFlavor flavor{baseline::PromptFlavor::base};
    baseline::EndpointConfig endpoint;
    baseline::Limits limits;
};

/// A published score row shown below the computed table for orientation.
struct ReferenceRow {
    std::string name;
    std::vector<double> scores;  ///< headline, positive, negative, description
};

struct PipelineConfig {
    std::string preset{"desk"};
    std::uint64_t seed{1};
    std::filesystem::path corpus_manifest;
    std::filesystem::path work_dir;
    corpus::Language reference_language{corpus::Language::lb};
    double balance_tolerance{0.05};
    std::int32_t vocab_size{1024};
    std::int32_t num_sentinels{32};
    double drop_rate{0.15};
    std::size_t chunk_tokens{64};  ///< pre-training window before corruption
    model::ModelConfig model;      ///< vocab_size is replaced by the built vocabulary's size
    model::TrainConfig pretrain;
    model::TrainConfig finetune;
    model::DecodeConfig decode;
    std::vector<tasks::TaskKind> tasks;
    double test_fraction{0.15};
    std::vector<ModelSpec> models;
    std::optional<BaselineSpec> baseline;
    std::size_t manual_per_task{10};
    bool published_rows{false};

    /// Throws Error("invalid-config").
    void validate() const;
};

/// Defaults for "desk" (laptop scale) or "paper" (full-size hyperparameters).
PipelineConfig preset_config(std::string_view preset);

/// Parses a config file body. Keys absent from the file keep the preset's
/// values; relative paths resolve against `base_dir`. The overrides replace
/// the file's "preset" and "seed".
PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path &base_dir,
                            const std::optional<std::string> &preset_override = std::nullopt,
                            const std::optional<std::uint64_t> &seed_override = std::nullopt);
PipelineConfig load_config(const std::filesystem::path &path,
                           const std::optional<std::string> &preset_override = std::nullopt,
                           const std::optional<std::uint64_t> &seed_override = std::nullopt);

/// Effective configuration as pretty-printed JSON (paths absolute).
std::string config_to_json(const PipelineConfig &config);

/// Seed of one stage (or stage/item) derived from the master seed.
std::uint64_t stage_seed(const PipelineConfig &config, std::string_view label);

/// Column order and titles of the generation score table.
std::string_view column_title(tasks::TaskKind task);

/// Published BLEU rows of the fine-tuned and prompted systems.
std::vector<ReferenceRow> published_reference_rows();

}  // namespace luxgen::pipeline
