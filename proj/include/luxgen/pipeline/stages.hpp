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

#include "luxgen/common/error.hpp"
#include "luxgen/pipeline/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace luxgen::pipeline {

/// Raised when a stage input is absent; `producer` names the subcommand
/// that creates it.
class MissingArtifact : public Error {
public:
    MissingArtifact(const std::filesystem::path &path, std::string producer)
        : Error("missing-artifact", "missing " + path.string() + " (run '" + producer + "' first)"),
          producer_(std::move(producer)) {}

    [[nodiscard]] const std::string &producer() const noexcept { return producer_; }

private:
    std::string producer_;
};

/// Stage order of a full run.
inline constexpr std::string_view stage_names[] = {
    "ingest",   "stats",    "balance", "build-vocab", "make-pretrain-data", "pretrain",     "build-tasks",
    "finetune", "predict",  "baseline", "evaluate",   "report",             "manual-sample"};

bool is_stage(std::string_view name);

struct RunContext {
    PipelineConfig config;
    bool force{false};
    std::ostream *out{nullptr};  ///< tables printed by stats and report; may be null
};

/// Every stage writes only below work_dir/<stage name>.
std::filesystem::path stage_dir(const PipelineConfig &config, std::string_view stage);

/// Runs one stage. A stage that already completed is skipped unless `force`
/// is set (stats and report still print their saved tables).
void run_stage(std::string_view stage, const RunContext &ctx);

/// Runs every stage in order; baseline only when the config has one.
void run_all(const RunContext &ctx);

}  // namespace luxgen::pipeline
