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

#include "luxgen/pipeline/config.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/files.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/model/config_json.hpp"
#include "luxgen/subword/vocabulary.hpp"

#include <json.hpp>

#include <set>

namespace luxgen::pipeline {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string &message) { throw Error("invalid-config", message); }

void reject_unknown(const json &j, const std::set<std::string> &known, const std::string &where) {
    if (!j.is_object()) invalid(where + " must be an object");
    for (const auto &[key, value] : j.items()) {
        if (!known.count(key)) invalid(where + ": unknown key '" + key + "'");
    }
}

template <typename T>
void read(const json &j, const char *key, T &out, const std::string &where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception &e) {
        invalid(where + "." + key + ": " + e.what());
    }
}

std::string_view to_string(PretrainCorpus c) { return c == PretrainCorpus::reference ? "reference" : "balanced"; }

PretrainCorpus parse_corpus(const std::string &name) {
    if (name == "reference") return PretrainCorpus::reference;
    if (name == "balanced") return PretrainCorpus::balanced;
    invalid("unknown pretraining corpus '" + name + "'");
}

std::filesystem::path resolve(const std::filesystem::path &base, const std::string &p) {
    const std::filesystem::path path(p);
    return (path.is_absolute() ? path : base / path).lexically_normal();
}

}  // namespace

void PipelineConfig::validate() const {
    if (corpus_manifest.empty()) invalid("corpus_manifest is required");
    if (work_dir.empty()) invalid("work_dir is required");
    if (!(balance_tolerance >= 0.0 && balance_tolerance < 1.0)) invalid("balance.tolerance must lie in [0, 1)");
    if (num_sentinels < 1) invalid("vocab.sentinels must be positive");
    if (vocab_size < subword::minimum_vocab_size(num_sentinels)) {
        invalid("vocab.size must be at least " + std::to_string(subword::minimum_vocab_size(num_sentinels)));
    }
    if (!(drop_rate > 0.0 && drop_rate < 1.0)) invalid("pretrain_data.drop_rate must lie in (0, 1)");
    if (chunk_tokens < 2 || chunk_tokens + 1 > static_cast<std::size_t>(model.max_seq_len)) {
        invalid("pretrain_data.chunk_tokens must lie in [2, model.max_seq_len - 1]");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) invalid("split.test_fraction must lie in (0, 1)");
    if (tasks.empty()) invalid("tasks must not be empty");
    if (models.empty()) invalid("models must not be empty");
    std::set<std::string> names;
    for (const auto &m : models) {
        if (m.name.empty() || m.name.find('/') != std::string::npos) invalid("model names must be non-empty file names");
        if (!names.insert(m.name).second) invalid("duplicate model name '" + m.name + "'");
    }
    if (baseline) {
        if (baseline->name.empty() || names.count(baseline->name)) invalid("baseline.name must be unique and non-empty");
    }
    pretrain.validate();
    finetune.validate();
    if (decode.beam_width < 1 || decode.max_new_tokens < 1) invalid("decode settings out of range");
}

PipelineConfig preset_config(std::string_view preset) {
    PipelineConfig c;
    c.preset = std::string(preset);
    if (preset == "desk") {
        c.vocab_size = 1024;
        c.num_sentinels = 32;
        c.model = model::ModelConfig::desk(c.vocab_size);
        c.chunk_tokens = 64;
        c.pretrain = model::TrainConfig::desk_pretrain();
        c.finetune = model::TrainConfig::desk_finetune();
        c.decode.max_new_tokens = 48;
        c.models = {{"LuxT5-desk", PretrainCorpus::reference}, {"LuxT5-Grande-desk", PretrainCorpus::balanced}};
    } else if (preset == "paper") {
        c.vocab_size = 32128;
        c.num_sentinels = 100;
        c.model = model::ModelConfig::paper(c.vocab_size);
        c.chunk_tokens = 511;
        c.pretrain = model::TrainConfig::paper_pretrain();
        c.finetune = model::TrainConfig::paper_finetune();
        c.decode.max_new_tokens = 128;
        c.models = {{"LuxT5", PretrainCorpus::reference}, {"LuxT5-Grande", PretrainCorpus::balanced}};
    } else {
        invalid("unknown preset '" + std::string(preset) + "' (expected desk or paper)");
    }
    c.tasks.assign(std::begin(tasks::all_tasks), std::end(tasks::all_tasks));
    return c;
}

PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path &base_dir,
                            const std::optional<std::string> &preset_override,
                            const std::optional<std::uint64_t> &seed_override) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        invalid(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j,
                   {"preset", "seed", "corpus_manifest", "work_dir", "reference_language", "balance", "vocab",
                    "pretrain_data", "model", "pretrain", "finetune", "decode", "tasks", "split", "models",
                    "baseline", "manual_sample", "report"},
                   "config");
    std::string preset = j.value("preset", std::string("desk"));
    if (preset_override) preset = *preset_override;
    PipelineConfig c = preset_config(preset);
    read(j, "seed", c.seed, "config");
    if (seed_override) c.seed = *seed_override;

    std::string manifest, work = "work";
    read(j, "corpus_manifest", manifest, "config");
    read(j, "work_dir", work, "config");
    if (manifest.empty()) invalid("corpus_manifest is required");
    c.corpus_manifest = resolve(base_dir, manifest);
    c.work_dir = resolve(base_dir, work);
    if (j.contains("reference_language")) {
        c.reference_language = corpus::parse_language(j["reference_language"].get<std::string>());
    }
    if (j.contains("balance")) {
        reject_unknown(j["balance"], {"tolerance"}, "balance");
        read(j["balance"], "tolerance", c.balance_tolerance, "balance");
    }
    if (j.contains("vocab")) {
        reject_unknown(j["vocab"], {"size", "sentinels"}, "vocab");
        read(j["vocab"], "size", c.vocab_size, "vocab");
        read(j["vocab"], "sentinels", c.num_sentinels, "vocab");
    }
    if (j.contains("pretrain_data")) {
        reject_unknown(j["pretrain_data"], {"drop_rate", "chunk_tokens"}, "pretrain_data");
        read(j["pretrain_data"], "drop_rate", c.drop_rate, "pretrain_data");
        read(j["pretrain_data"], "chunk_tokens", c.chunk_tokens, "pretrain_data");
    }
    try {
        if (j.contains("model")) model::from_json(j["model"], c.model);
        if (j.contains("pretrain")) model::from_json(j["pretrain"], c.pretrain);
        if (j.contains("finetune")) model::from_json(j["finetune"], c.finetune);
        if (j.contains("decode")) model::from_json(j["decode"], c.decode);
    } catch (const json::exception &e) {
        invalid(e.what());
    }
    c.model.vocab_size = c.vocab_size;
    if (j.contains("tasks")) {
        c.tasks.clear();
        for (const auto &t : j["tasks"]) c.tasks.push_back(tasks::parse_task(t.get<std::string>()));
    }
    if (j.contains("split")) {
        reject_unknown(j["split"], {"test_fraction"}, "split");
        read(j["split"], "test_fraction", c.test_fraction, "split");
    }
    if (j.contains("models")) {
        c.models.clear();
        for (const auto &m : j["models"]) {
            reject_unknown(m, {"name", "corpus"}, "models[]");
            ModelSpec spec;
            read(m, "name", spec.name, "models[]");
            spec.corpus = parse_corpus(m.value("corpus", std::string("reference")));
            c.models.push_back(std::move(spec));
        }
    }
    if (j.contains("baseline") && !j["baseline"].is_null()) {
        const json &b = j["baseline"];
        reject_unknown(b, {"name", "flavor", "endpoint", "limits"}, "baseline");
        BaselineSpec spec;
        spec.name = b.value("name", std::string("prompted-llm"));
        spec.flavor = baseline::parse_flavor(b.value("flavor", std::string("base")));
        if (!b.contains("endpoint")) invalid("baseline.endpoint is required");
        spec.endpoint = baseline::endpoint_from_json(b["endpoint"].dump());
        if (b.contains("limits")) spec.limits = baseline::limits_from_json(b["limits"].dump());
        c.baseline = std::move(spec);
    }
    if (j.contains("manual_sample")) {
        reject_unknown(j["manual_sample"], {"per_task"}, "manual_sample");
        read(j["manual_sample"], "per_task", c.manual_per_task, "manual_sample");
    }
    if (j.contains("report")) {
        reject_unknown(j["report"], {"published_rows"}, "report");
        read(j["report"], "published_rows", c.published_rows, "report");
    }
    c.validate();
    return c;
}

PipelineConfig load_config(const std::filesystem::path &path, const std::optional<std::string> &preset_override,
                           const std::optional<std::uint64_t> &seed_override) {
    std::string text;
    try {
        text = files::read_all(path);
    } catch (const Error &) {
        throw Error("missing-config", "cannot read config file " + path.string());
    }
    const auto base = std::filesystem::absolute(path).parent_path();
    return parse_config(text, base, preset_override, seed_override);
}

std::string config_to_json(const PipelineConfig &c) {
    json j;
    j["preset"] = c.preset;
    j["seed"] = c.seed;
    j["corpus_manifest"] = c.corpus_manifest.string();
    j["work_dir"] = c.work_dir.string();
    j["reference_language"] = corpus::to_string(c.reference_language);
    j["balance"] = {{"tolerance", c.balance_tolerance}};
    j["vocab"] = {{"size", c.vocab_size}, {"sentinels", c.num_sentinels}};
    j["pretrain_data"] = {{"drop_rate", c.drop_rate}, {"chunk_tokens", c.chunk_tokens}};
    j["model"] = c.model;
    j["pretrain"] = c.pretrain;
    j["finetune"] = c.finetune;
    j["decode"] = c.decode;
    j["tasks"] = json::array();
    for (auto t : c.tasks) j["tasks"].push_back(tasks::to_string(t));
    j["split"] = {{"test_fraction", c.test_fraction}};
    j["models"] = json::array();
    for (const auto &m : c.models) j["models"].push_back({{"name", m.name}, {"corpus", to_string(m.corpus)}});
    if (c.baseline) {
        const auto &b = *c.baseline;
        j["baseline"] = {{"name", b.name},
                         {"flavor", baseline::to_string(b.flavor)},
                         {"endpoint",
                          {{"url", b.endpoint.url},
                           {"adapter", baseline::to_string(b.endpoint.adapter)},
                           {"model", b.endpoint.model},
                           {"credential_env", b.endpoint.credential_env},
                           {"timeout_seconds", b.endpoint.timeout_seconds},
                           {"temperature", b.endpoint.temperature}}},
                         {"limits",
                          {{"max_attempts", b.limits.max_attempts},
                           {"initial_backoff_seconds", b.limits.initial_backoff_seconds},
                           {"backoff_multiplier", b.limits.backoff_multiplier},
                           {"max_backoff_seconds", b.limits.max_backoff_seconds},
                           {"requests_per_second", b.limits.requests_per_second},
                           {"max_in_flight", b.limits.max_in_flight}}}};
    }
    j["manual_sample"] = {{"per_task", c.manual_per_task}};
    j["report"] = {{"published_rows", c.published_rows}};
    return j.dump(2);
}

std::uint64_t stage_seed(const PipelineConfig &config, std::string_view label) {
    return derive_seed(config.seed, label);
}

std::string_view column_title(tasks::TaskKind task) {
    switch (task) {
        case tasks::TaskKind::headline: return "Headline";
        case tasks::TaskKind::positive_comment: return "Positive";
        case tasks::TaskKind::negative_comment: return "Negative";
        case tasks::TaskKind::description: return "Wiki";
        case tasks::TaskKind::moderation: return "Moderation";
    }
    return "?";
}

std::vector<ReferenceRow> published_reference_rows() {
    return {
        {"GPT-4o-2024-05-13 (published)", {0.0482, 0.0032, 0.0017, 0.1001}},
        {"Llama-3.1-8B-Ins. (published)", {0.0359, 0.0037, 0.0028, 0.0268}},
        {"LuxT5-Grande (published)", {0.2130, 0.0810, 0.0780, 0.1100}},
        {"LuxT5 (published)", {0.1680, 0.0450, 0.0320, 0.0280}},
        {"mT5-base (published)", {0.1820, 0.0009, 0.0006, 0.0230}},
        {"mT5-small (published)", {0.1650, 0.0003, 0.0003, 0.0160}},
        {"ByT5-base (published)", {0.0310, 0.0000, 0.0000, 0.0002}},
        {"ByT5-small (published)", {0.0320, 0.0000, 0.0000, 0.0001}},
    };
}

}  // namespace luxgen::pipeline
