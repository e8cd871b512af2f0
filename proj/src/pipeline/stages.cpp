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

#include "luxgen/pipeline/stages.hpp"

#include "luxgen/balance/balancer.hpp"
#include "luxgen/baseline/client.hpp"
#include "luxgen/common/files.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/corpus/stats.hpp"
#include "luxgen/corpus/store.hpp"
#include "luxgen/denoise/denoiser.hpp"
#include "luxgen/eval/bleu.hpp"
#include "luxgen/eval/classification.hpp"
#include "luxgen/eval/report.hpp"
#include "luxgen/model/checkpoint.hpp"
#include "luxgen/model/generate.hpp"
#include "luxgen/model/trainer.hpp"
#include "luxgen/subword/vocabulary.hpp"
#include "luxgen/tasks/tasks.hpp"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace luxgen::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;
using tasks::TaskKind;

bool is_stage(std::string_view name) {
    return std::find(std::begin(stage_names), std::end(stage_names), name) != std::end(stage_names);
}

fs::path stage_dir(const PipelineConfig &config, std::string_view stage) { return config.work_dir / std::string(stage); }

namespace {

constexpr const char *marker = ".complete";

// ---- artifact locations -----------------------------------------------------

fs::path store_path(const PipelineConfig &c) { return stage_dir(c, "ingest") / "store.jsonl"; }
fs::path balanced_path(const PipelineConfig &c) { return stage_dir(c, "balance") / "balanced.jsonl"; }
fs::path vocab_path(const PipelineConfig &c) { return stage_dir(c, "build-vocab") / "vocab.txt"; }
fs::path pairs_path(const PipelineConfig &c, const std::string &model) {
    return stage_dir(c, "make-pretrain-data") / (model + ".pairs");
}
fs::path pretrain_path(const PipelineConfig &c, const std::string &model) {
    return stage_dir(c, "pretrain") / model / "pretrain.ckpt";
}
fs::path split_dir(const PipelineConfig &c, TaskKind task) {
    return stage_dir(c, "build-tasks") / std::string(tasks::to_string(task));
}
fs::path finetune_path(const PipelineConfig &c, const std::string &model, TaskKind task) {
    return stage_dir(c, "finetune") / model / (std::string(tasks::to_string(task)) + ".ckpt");
}
fs::path prediction_path(const PipelineConfig &c, std::string_view stage, const std::string &system, TaskKind task) {
    return stage_dir(c, stage) / system / (std::string(tasks::to_string(task)) + ".jsonl");
}
fs::path scores_path(const PipelineConfig &c) { return stage_dir(c, "evaluate") / "scores.json"; }

const fs::path &require(const fs::path &p, const char *producer) {
    if (!fs::exists(p)) throw MissingArtifact(p, producer);
    return p;
}

// ---- stage bookkeeping --------------------------------------------------------

/// False when the stage already completed and may be skipped.
bool begin(const RunContext &ctx, std::string_view stage) {
    const fs::path dir = stage_dir(ctx.config, stage);
    if (!ctx.force && fs::exists(dir / marker)) {
        spdlog::info("{}: up to date (use --force to redo)", stage);
        return false;
    }
    if (ctx.force) fs::remove_all(dir);
    fs::create_directories(dir);
    spdlog::info("{}: running", stage);
    return true;
}

void complete(const RunContext &ctx, std::string_view stage) {
    files::write_atomic(stage_dir(ctx.config, stage) / marker, [](std::ostream &out) { out << "ok\n"; });
    spdlog::info("{}: done", stage);
}

void write_text(const fs::path &path, const std::string &text) {
    files::write_atomic(path, [&](std::ostream &out) { out << text; });
}

void print(const RunContext &ctx, const std::string &text) {
    if (ctx.out) *ctx.out << text << std::flush;
}

// ---- inputs -------------------------------------------------------------------

std::vector<corpus::Document> load_store(const PipelineConfig &c) { return corpus::load(require(store_path(c), "ingest")); }

std::vector<corpus::Document> reference_only(const PipelineConfig &c, std::vector<corpus::Document> docs) {
    std::erase_if(docs, [&](const corpus::Document &d) { return d.language != c.reference_language; });
    return docs;
}

subword::Vocabulary load_vocab(const PipelineConfig &c) {
    return subword::Vocabulary::load(require(vocab_path(c), "build-vocab"));
}

tasks::TaskSplit load_split(const PipelineConfig &c, TaskKind task) {
    const fs::path dir = split_dir(c, task);
    require(dir / "manifest.json", "build-tasks");
    return tasks::read_split(dir);
}

std::vector<TaskKind> generation_tasks(const PipelineConfig &c) {
    std::vector<TaskKind> out;
    for (TaskKind t : c.tasks) {
        if (t != TaskKind::moderation) out.push_back(t);
    }
    return out;
}

// ---- training helper ------------------------------------------------------------

/// Trains into `path`, resuming an unfinished checkpoint of the same run.
model::Checkpoint train_into(const fs::path &path, const std::string &label, const std::string &stage,
                             const model::TrainConfig &train, const std::string &fingerprint,
                             const std::vector<SequencePair> &data,
                             const std::function<model::TrainResult(const model::TrainOptions &)> &fresh) {
    model::TrainOptions opts;
    opts.checkpoint_path = path;
    opts.log_path = path.parent_path() / (path.stem().string() + "_log.jsonl");
    const std::int64_t planned = model::planned_steps(train, data.size());
    std::int64_t last_logged = 0;
    opts.on_step = [&](const model::StepRecord &r) {
        if (r.step == planned || r.step - last_logged >= std::max<std::int64_t>(1, planned / 10)) {
            last_logged = r.step;
            spdlog::info("{}: step {}/{} loss {:.4f}", label, r.step, planned, r.loss);
        }
    };
    model::TrainResult result;
    if (fs::exists(path)) {
        model::Checkpoint ck = model::load_checkpoint(path);
        if (ck.stage != stage || ck.train != train || ck.vocab_fingerprint != fingerprint) {
            throw Error("stale-artifact", path.string() + " belongs to a different run; rerun with --force");
        }
        spdlog::info("{}: resuming at step {}", label, ck.step);
        result = model::train(std::move(ck), data, opts);
    } else {
        result = fresh(opts);
    }
    if (result.halted) {
        throw Error("training-halted", label + ": " + result.halt_reason);
    }
    return std::move(result.checkpoint);
}

// ---- stages -------------------------------------------------------------------

void ingest_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "ingest")) return;
    if (!fs::exists(c.corpus_manifest)) {
        throw Error("missing-input", "corpus manifest " + c.corpus_manifest.string() + " does not exist");
    }
    const auto manifest = corpus::load_manifest(c.corpus_manifest);
    corpus::IngestResult r = corpus::ingest(manifest);
    const auto docs = corpus::dedupe(r.documents);
    if (docs.empty()) throw Error("empty-corpus", "no documents survived ingestion");
    const fs::path dir = stage_dir(c, "ingest");
    corpus::save(dir / "store.jsonl", docs);

    const fs::path base = c.corpus_manifest.parent_path();
    auto issues = [&](const std::vector<corpus::IngestIssue> &list) {
        json a = json::array();
        for (const auto &i : list) {
            a.push_back({{"path", i.path.lexically_relative(base).string()}, {"message", i.message}});
        }
        return a;
    };
    const json report = {{"documents_read", r.documents.size()},
                         {"documents_kept", docs.size()},
                         {"duplicates_removed", r.documents.size() - docs.size()},
                         {"warnings", issues(r.warnings)},
                         {"errors", issues(r.errors)}};
    write_text(dir / "ingest_report.json", report.dump(2) + "\n");
    spdlog::info("ingest: {} documents kept, {} duplicates removed, {} file errors", docs.size(),
                 r.documents.size() - docs.size(), r.errors.size());
    complete(ctx, "ingest");
}

void stats_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    const fs::path out = stage_dir(c, "stats") / "stats.txt";
    if (begin(ctx, "stats")) {
        const auto stats = corpus::count_stats(load_store(c));
        std::string text = "Tokens per domain and language\n" + corpus::render_domain_table(stats);
        for (const auto &total : stats.totals) {
            text += "\nSources (" + std::string(corpus::to_string(total.language)) + ")\n";
            text += corpus::render_source_table(stats, total.language);
        }
        write_text(out, text);
        complete(ctx, "stats");
    }
    print(ctx, files::read_all(out));
}

void balance_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "balance")) return;
    const auto docs = load_store(c);
    const auto stats = corpus::count_stats(docs);
    const auto targets = balance::reference_targets(stats, c.reference_language);
    const auto plan = balance::plan(stats, c.reference_language, targets, c.balance_tolerance);
    const auto balanced = balance::execute(plan, docs, stage_seed(c, "balance"));
    const fs::path dir = stage_dir(c, "balance");
    write_text(dir / "plan.json", balance::plan_to_json(plan));
    write_text(dir / "plan.txt", balance::render_plan(plan));
    corpus::save(dir / "balanced.jsonl", balanced);
    for (const auto &d : plan.deficits) {
        spdlog::warn("balance: {} {} short by {} tokens (target {}, available {})", corpus::to_string(d.language),
                     corpus::to_string(d.domain), d.shortfall, d.target, d.available);
    }
    spdlog::info("balance: {} documents selected", balanced.size());
    complete(ctx, "balance");
}

void vocab_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "build-vocab")) return;
    const auto docs = corpus::load(require(balanced_path(c), "balance"));
    std::vector<std::string> texts;
    texts.reserve(docs.size());
    for (const auto &d : docs) texts.push_back(d.text);
    const auto vocab = subword::train_vocab(texts, c.vocab_size, c.num_sentinels);
    vocab.save(vocab_path(c));
    spdlog::info("build-vocab: {} ids ({} merges, {} sentinels)", vocab.size(), vocab.merges().size(),
                 vocab.num_sentinels());
    complete(ctx, "build-vocab");
}

void pretrain_data_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "make-pretrain-data")) return;
    const auto vocab = load_vocab(c);
    const auto specials = vocab.specials();
    std::vector<corpus::Document> reference;
    std::vector<corpus::Document> balanced;
    for (const auto &m : c.models) {
        const std::vector<corpus::Document> *docs = nullptr;
        if (m.corpus == PretrainCorpus::reference) {
            if (reference.empty()) reference = reference_only(c, load_store(c));
            docs = &reference;
        } else {
            if (balanced.empty()) balanced = corpus::load(require(balanced_path(c), "balance"));
            docs = &balanced;
        }
        Rng rng(stage_seed(c, "make-pretrain-data/" + m.name));
        std::vector<denoise::DenoisedPair> pairs;
        for (const auto &d : *docs) {
            std::vector<TokenId> ids = vocab.encode(d.text);
            ids.pop_back();  // eos
            for (std::size_t start = 0; start < ids.size(); start += c.chunk_tokens) {
                const std::size_t end = std::min(ids.size(), start + c.chunk_tokens);
                const std::span<const TokenId> chunk(ids.data() + start, end - start);
                pairs.push_back(denoise::corrupt(chunk, c.drop_rate, rng, specials));
            }
        }
        denoise::write_pairs(pairs_path(c, m.name), pairs);
        spdlog::info("make-pretrain-data: {}: {} pairs from {} documents", m.name, pairs.size(), docs->size());
    }
    complete(ctx, "make-pretrain-data");
}

void pretrain_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "pretrain")) return;
    const auto vocab = load_vocab(c);
    model::ModelConfig mc = c.model;
    mc.vocab_size = vocab.size();
    for (const auto &m : c.models) {
        const auto pairs = denoise::read_pairs(require(pairs_path(c, m.name), "make-pretrain-data"));
        model::TrainConfig tc = c.pretrain;
        tc.seed = stage_seed(c, "pretrain/" + m.name);
        const auto fp = vocab.fingerprint();
        const auto ck = train_into(pretrain_path(c, m.name), "pretrain " + m.name, "pretrain", tc, fp, pairs,
                                   [&](const model::TrainOptions &opts) {
                                       return model::pretrain(mc, tc, fp, pairs, opts);
                                   });
        spdlog::info("pretrain: {} finished at step {}", m.name, ck.step);
    }
    complete(ctx, "pretrain");
}

void build_tasks_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "build-tasks")) return;
    const auto docs = reference_only(c, load_store(c));
    for (TaskKind t : c.tasks) {
        const std::string name(tasks::to_string(t));
        const auto built = tasks::build_task(t, docs);
        if (built.examples.size() < 2) {
            throw Error("insufficient-examples", name + ": only " + std::to_string(built.examples.size()) +
                                                      " examples could be built");
        }
        const auto split = tasks::split(built.examples, c.test_fraction, stage_seed(c, "build-tasks/" + name));
        tasks::write_split(split_dir(c, t), split, built.report);
        spdlog::info("build-tasks: {}: {} train, {} test", name, split.train.size(), split.test.size());
    }
    complete(ctx, "build-tasks");
}

void finetune_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "finetune")) return;
    const auto vocab = load_vocab(c);
    const auto fp = vocab.fingerprint();
    for (const auto &m : c.models) {
        const auto pretrained = model::load_checkpoint(require(pretrain_path(c, m.name), "pretrain"));
        for (TaskKind t : c.tasks) {
            const std::string task(tasks::to_string(t));
            const auto split = load_split(c, t);
            std::vector<SequencePair> data;
            data.reserve(split.train.size());
            for (const auto &e : split.train) data.push_back(tasks::encode_example(e, vocab));
            model::TrainConfig tc = c.finetune;
            tc.seed = stage_seed(c, "finetune/" + m.name + "/" + task);
            train_into(finetune_path(c, m.name, t), "finetune " + m.name + "/" + task, "finetune", tc, fp, data,
                       [&](const model::TrainOptions &opts) { return model::finetune(pretrained, tc, fp, data, opts); });
        }
    }
    complete(ctx, "finetune");
}

void predict_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "predict")) return;
    const auto vocab = load_vocab(c);
    for (const auto &m : c.models) {
        for (TaskKind t : c.tasks) {
            const auto ck = model::load_checkpoint(require(finetune_path(c, m.name, t), "finetune"));
            const auto split = load_split(c, t);
            std::vector<eval::Prediction> preds;
            preds.reserve(split.test.size());
            for (const auto &e : split.test) {
                const std::string input = std::string(tasks::task_prefix(t)) + e.input_text;
                preds.push_back({std::string(tasks::to_string(t)), e.id, model::generate(ck, vocab, input, c.decode)});
            }
            eval::write_predictions(prediction_path(c, "predict", m.name, t), preds);
            spdlog::info("predict: {}/{}: {} predictions", m.name, tasks::to_string(t), preds.size());
        }
    }
    complete(ctx, "predict");
}

void baseline_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!c.baseline) throw Error("invalid-config", "the config has no baseline section");
    const auto &b = *c.baseline;
    if (!begin(ctx, "baseline")) return;
    std::size_t failed = 0;
    for (TaskKind t : generation_tasks(c)) {
        const std::string task(tasks::to_string(t));
        const auto split = load_split(c, t);
        const auto prompt = baseline::prompt_for(t, b.flavor);
        baseline::RunOptions opts;
        opts.journal_path = stage_dir(c, "baseline") / b.name / (task + ".journal.jsonl");
        opts.predictions_path = prediction_path(c, "baseline", b.name, t);
        opts.limits = b.limits;
        opts.log = [&](const std::string &line) { spdlog::warn("baseline {}: {}", task, line); };
        const auto s = baseline::run_baseline(b.endpoint, split.test, prompt, opts);
        spdlog::info("baseline: {}: {} resumed, {} completed, {} failed, {} requests, {} retries", task, s.resumed,
                     s.succeeded, s.failed, s.requests, s.retries);
        failed += s.failed;
    }
    if (failed > 0) {
        spdlog::warn("baseline: {} examples failed; rerun to retry them", failed);
        return;
    }
    complete(ctx, "baseline");
}

struct System {
    std::string name;
    std::string stage;  ///< directory holding its predictions
};

std::vector<System> systems(const PipelineConfig &c) {
    std::vector<System> out;
    for (const auto &m : c.models) out.push_back({m.name, "predict"});
    if (c.baseline && fs::exists(stage_dir(c, "baseline") / c.baseline->name)) {
        out.push_back({c.baseline->name, "baseline"});
    }
    return out;
}

std::unordered_map<std::string, std::string> prediction_map(const fs::path &path) {
    std::unordered_map<std::string, std::string> out;
    for (auto &p : eval::read_predictions(path)) out.emplace(p.id, std::move(p.prediction));
    return out;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

json report_json(const eval::ClassificationReport &r) {
    json per = json::array();
    for (const auto &m : r.per_class) {
        per.push_back({{"label", m.label}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1},
                       {"support", m.support}});
    }
    return {{"per_class", per},
            {"weighted_precision", r.weighted_precision},
            {"weighted_recall", r.weighted_recall},
            {"weighted_f1", r.weighted_f1},
            {"macro_f1", r.macro_f1},
            {"accuracy", r.accuracy},
            {"total", r.total}};
}

eval::ClassificationReport report_from_json(const json &j) {
    eval::ClassificationReport r;
    for (const auto &m : j.at("per_class")) {
        r.per_class.push_back({m.at("label").get<std::string>(), m.at("precision").get<double>(),
                               m.at("recall").get<double>(), m.at("f1").get<double>(),
                               m.at("support").get<std::size_t>()});
    }
    r.weighted_precision = j.at("weighted_precision").get<double>();
    r.weighted_recall = j.at("weighted_recall").get<double>();
    r.weighted_f1 = j.at("weighted_f1").get<double>();
    r.macro_f1 = j.at("macro_f1").get<double>();
    r.accuracy = j.at("accuracy").get<double>();
    r.total = j.at("total").get<std::size_t>();
    return r;
}

void evaluate_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "evaluate")) return;
    json scores = {{"systems", json::array()}, {"bleu", json::object()}, {"classification", json::object()}};
    for (const System &s : systems(c)) {
        scores["systems"].push_back(s.name);
        for (TaskKind t : c.tasks) {
            const std::string task(tasks::to_string(t));
            const fs::path path = prediction_path(c, s.stage, s.name, t);
            if (s.stage == "baseline") {
                if (t == TaskKind::moderation || !fs::exists(path)) continue;
            } else {
                require(path, "predict");
            }
            const auto split = load_split(c, t);
            const auto preds = prediction_map(path);
            std::vector<std::string> hyps;
            std::vector<std::string> refs;
            std::size_t missing = 0;
            for (const auto &e : split.test) {
                auto it = preds.find(e.id);
                if (it == preds.end()) ++missing;
                hyps.push_back(it == preds.end() ? std::string{} : it->second);
                refs.push_back(e.target_text);
            }
            if (missing) spdlog::warn("evaluate: {}/{}: {} test examples lack a prediction", s.name, task, missing);
            if (t == TaskKind::moderation) {
                for (auto &h : hyps) h = trim(std::move(h));
                const auto r = eval::classification_metrics(hyps, refs, {"archived", "published"});
                scores["classification"][s.name] = report_json(r);
                continue;
            }
            const auto r = eval::corpus_bleu(hyps, refs);
            json precisions = json::array();
            for (const auto &p : r.precisions) precisions.push_back(p ? json(*p) : json());
            scores["bleu"][s.name][task] = {{"score", r.score},
                                            {"brevity_penalty", r.brevity_penalty},
                                            {"precisions", precisions},
                                            {"examples", split.test.size()},
                                            {"missing", missing}};
        }
    }
    write_text(scores_path(c), scores.dump(2) + "\n");
    complete(ctx, "evaluate");
}

void report_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    const fs::path text_path = stage_dir(c, "report") / "report.txt";
    if (begin(ctx, "report")) {
        const json scores = json::parse(files::read_all(require(scores_path(c), "evaluate")));
        eval::ScoreTable table;
        const auto gen = generation_tasks(c);
        for (TaskKind t : gen) {
            table.tasks.emplace_back(tasks::to_string(t));
            table.headers.emplace_back(column_title(t));
        }
        std::vector<eval::ClassificationRow> class_rows;
        for (const auto &name : scores.at("systems")) {
            const std::string system = name.get<std::string>();
            table.models.push_back(system);
            if (scores.at("bleu").contains(system)) {
                for (const auto &[task, cell] : scores["bleu"][system].items()) {
                    table.set(system, task, cell.at("score").get<double>());
                }
            }
            if (scores.at("classification").contains(system)) {
                class_rows.push_back({system, report_from_json(scores["classification"][system])});
            }
        }
        std::string text;
        std::string tsv;
        if (!gen.empty()) {
            text += "BLEU on the test split (best per column marked *)\n" + eval::render_text(table);
            tsv += eval::render_tsv(table);
        }
        if (!class_rows.empty()) {
            text += "\nModeration classification on the test split\n" + eval::render_classification_text(class_rows);
            tsv += "\n" + eval::render_classification_tsv(class_rows);
        }
        if (c.published_rows && !gen.empty()) {
            eval::ScoreTable published;
            published.tasks = table.tasks;
            published.headers = table.headers;
            published.mark_best = false;
            static constexpr TaskKind order[] = {TaskKind::headline, TaskKind::positive_comment,
                                                 TaskKind::negative_comment, TaskKind::description};
            for (const auto &row : published_reference_rows()) {
                published.models.push_back(row.name);
                for (std::size_t i = 0; i < std::size(order); ++i) {
                    published.set(row.name, std::string(tasks::to_string(order[i])), row.scores[i]);
                }
            }
            text += "\nPublished full-scale scores for orientation (different data and scale, not ranked)\n" +
                    eval::render_text(published);
        }
        write_text(text_path, text);
        write_text(stage_dir(c, "report") / "report.tsv", tsv);
        complete(ctx, "report");
    }
    print(ctx, files::read_all(text_path));
}

void manual_sample_stage(const RunContext &ctx) {
    const auto &c = ctx.config;
    if (!begin(ctx, "manual-sample")) return;
    const std::uint64_t seed = stage_seed(c, "manual-sample");
    for (const System &s : systems(c)) {
        std::vector<eval::ManualItem> rows;
        for (TaskKind t : generation_tasks(c)) {
            const fs::path path = prediction_path(c, s.stage, s.name, t);
            if (s.stage == "baseline" && !fs::exists(path)) continue;
            const auto preds = prediction_map(require(path, "predict"));
            const auto split = load_split(c, t);
            std::vector<eval::ManualItem> items;
            for (const auto &e : split.test) {
                auto it = preds.find(e.id);
                items.push_back({std::string(tasks::to_string(t)), e.id, e.input_text, e.target_text,
                                 it == preds.end() ? std::string{} : it->second});
            }
            const std::size_t n = std::min(c.manual_per_task, items.size());
            auto picked = eval::sample_manual(items, n, seed);
            rows.insert(rows.end(), std::make_move_iterator(picked.begin()), std::make_move_iterator(picked.end()));
        }
        write_text(stage_dir(c, "manual-sample") / (s.name + ".tsv"), eval::render_sheet(rows));
        spdlog::info("manual-sample: {}: {} rows", s.name, rows.size());
    }
    complete(ctx, "manual-sample");
}

}  // namespace

void run_stage(std::string_view stage, const RunContext &ctx) {
    static const std::pair<std::string_view, void (*)(const RunContext &)> table[] = {
        {"ingest", ingest_stage},
        {"stats", stats_stage},
        {"balance", balance_stage},
        {"build-vocab", vocab_stage},
        {"make-pretrain-data", pretrain_data_stage},
        {"pretrain", pretrain_stage},
        {"build-tasks", build_tasks_stage},
        {"finetune", finetune_stage},
        {"predict", predict_stage},
        {"baseline", baseline_stage},
        {"evaluate", evaluate_stage},
        {"report", report_stage},
        {"manual-sample", manual_sample_stage},
    };
    for (const auto &[name, fn] : table) {
        if (name == stage) {
            fn(ctx);
            return;
        }
    }
    throw Error("unknown-stage", "unknown stage '" + std::string(stage) + "'");
}

void run_all(const RunContext &ctx) {
    for (std::string_view stage : stage_names) {
        if (stage == "baseline" && !ctx.config.baseline) continue;
        run_stage(stage, ctx);
    }
}

}  // namespace luxgen::pipeline
