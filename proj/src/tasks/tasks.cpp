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

#include "luxgen/tasks/tasks.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/files.hpp"
#include "luxgen/common/id_order.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/common/text.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>

namespace luxgen::tasks {

using corpus::Document;
using corpus::Domain;
using json = nlohmann::json;

std::string_view to_string(TaskKind task) {
    switch (task) {
        case TaskKind::headline: return "headline";
        case TaskKind::positive_comment: return "positive_comment";
        case TaskKind::negative_comment: return "negative_comment";
        case TaskKind::description: return "description";
        case TaskKind::moderation: return "moderation";
    }
    return "headline";
}

TaskKind parse_task(std::string_view name) {
    for (TaskKind t : all_tasks) {
        if (to_string(t) == name) {
            return t;
        }
    }
    throw Error("unknown-task", "unknown task '" + std::string(name) + "'");
}

std::string_view task_prefix(TaskKind task) {
    switch (task) {
        case TaskKind::headline: return "headline: ";
        case TaskKind::positive_comment: return "positive comment: ";
        case TaskKind::negative_comment: return "negative comment: ";
        case TaskKind::description: return "description: ";
        case TaskKind::moderation: return "moderation: ";
    }
    return "";
}

namespace {

std::vector<const Document *> sorted_by_id(const std::vector<Document> &store) {
    std::vector<const Document *> docs;
    docs.reserve(store.size());
    for (const Document &d : store) {
        docs.push_back(&d);
    }
    std::sort(docs.begin(), docs.end(), [](const Document *a, const Document *b) { return id_less(a->id, b->id); });
    return docs;
}

TaskExample make_example(TaskKind task, std::string input, std::string target, std::vector<std::string> sources) {
    TaskExample e;
    e.task = task;
    e.id = std::string(to_string(task)) + ":" + sources.front();
    e.input_text = std::move(input);
    e.target_text = std::move(target);
    e.source_ids = std::move(sources);
    return e;
}

std::string remove_once(const std::string &body, const std::string &needle) {
    const auto at = body.find(needle);
    if (needle.empty() || at == std::string::npos) {
        return body;
    }
    return text::normalize(body.substr(0, at) + " " + body.substr(at + needle.size()));
}

bool voted(const Document &c) {
    return c.meta.upvotes && c.meta.downvotes && *c.meta.upvotes + *c.meta.downvotes > 0;
}

}  // namespace

int compare_ratio(std::int64_t up_a, std::int64_t down_a, std::int64_t up_b, std::int64_t down_b) {
    const __int128 lhs = static_cast<__int128>(up_a + 1) * (down_b + 1);
    const __int128 rhs = static_cast<__int128>(up_b + 1) * (down_a + 1);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

BuildResult build_headline(const std::vector<Document> &store) {
    BuildResult r;
    for (const Document *d : sorted_by_id(store)) {
        if (d->domain != Domain::news) {
            continue;
        }
        ++r.report.considered;
        if (!d->meta.title || text::normalize(*d->meta.title).empty()) {
            ++r.report.skipped_missing_field;
            continue;
        }
        const std::string title = text::normalize(*d->meta.title);
        std::string body = remove_once(d->text, title);
        if (body.empty()) {
            ++r.report.skipped_empty_text;
            continue;
        }
        r.examples.push_back(make_example(TaskKind::headline, std::move(body), title, {d->id}));
    }
    r.report.emitted = r.examples.size();
    return r;
}

BuildResult build_comments(const std::vector<Document> &store, Polarity polarity) {
    const TaskKind task = polarity == Polarity::positive ? TaskKind::positive_comment : TaskKind::negative_comment;
    BuildResult r;
    std::unordered_map<std::string, const Document *> by_id;
    for (const Document &d : store) {
        by_id.emplace(d.id, &d);
    }
    // article id -> voted comments, visited in natural comment-id order
    std::map<std::string, std::vector<const Document *>, IdLess> per_article;
    std::map<std::string, bool, IdLess> articles_with_comments;
    for (const Document *c : sorted_by_id(store)) {
        if (c->domain != Domain::comments) {
            continue;
        }
        ++r.report.considered;
        if (!c->meta.article_id) {
            ++r.report.skipped_missing_field;
            continue;
        }
        if (by_id.count(*c->meta.article_id) == 0) {
            ++r.report.skipped_dangling;
            continue;
        }
        articles_with_comments[*c->meta.article_id] = true;
        if (voted(*c)) {
            per_article[*c->meta.article_id].push_back(c);
        }
    }
    r.report.skipped_unvoted_articles = articles_with_comments.size() - per_article.size();

    auto better = [polarity](const Document *a, const Document *b) {
        const int cmp = compare_ratio(*a->meta.upvotes, *a->meta.downvotes, *b->meta.upvotes, *b->meta.downvotes);
        if (cmp != 0) {
            return polarity == Polarity::positive ? cmp > 0 : cmp < 0;
        }
        const std::int64_t total_a = *a->meta.upvotes + *a->meta.downvotes;
        const std::int64_t total_b = *b->meta.upvotes + *b->meta.downvotes;
        if (total_a != total_b) {
            return total_a > total_b;
        }
        return id_less(a->id, b->id);
    };
    for (const auto &[article_id, comments] : per_article) {
        const Document *best = comments.front();
        for (const Document *c : comments) {
            if (better(c, best)) {
                best = c;
            }
        }
        const Document &article = *by_id.at(article_id);
        TaskExample e = make_example(task, article.text, best->text, {article_id, best->id});
        e.degenerate = comments.size() == 1;
        if (e.degenerate) {
            ++r.report.degenerate;
        }
        r.examples.push_back(std::move(e));
    }
    r.report.emitted = r.examples.size();
    return r;
}

BuildResult build_description(const std::vector<Document> &store) {
    BuildResult r;
    for (const Document *d : sorted_by_id(store)) {
        if (d->domain != Domain::wiki) {
            continue;
        }
        ++r.report.considered;
        const std::string description = d->meta.short_description ? text::normalize(*d->meta.short_description) : "";
        if (description.empty()) {
            ++r.report.skipped_missing_field;
            continue;
        }
        r.examples.push_back(make_example(TaskKind::description, d->text, description, {d->id}));
    }
    r.report.emitted = r.examples.size();
    return r;
}

BuildResult build_moderation(const std::vector<Document> &store) {
    BuildResult r;
    for (const Document *d : sorted_by_id(store)) {
        if (d->domain != Domain::comments) {
            continue;
        }
        ++r.report.considered;
        if (!d->meta.moderation_status) {
            ++r.report.skipped_missing_field;
            continue;
        }
        const std::string label(corpus::to_string(*d->meta.moderation_status));
        std::vector<std::string> sources;
        if (d->meta.article_id) {
            sources = {*d->meta.article_id, d->id};
        } else {
            sources = {d->id};
        }
        TaskExample e = make_example(TaskKind::moderation, d->text, label, std::move(sources));
        e.id = std::string(to_string(TaskKind::moderation)) + ":" + d->id;
        r.examples.push_back(std::move(e));
        ++r.report.class_counts[label];
    }
    r.report.emitted = r.examples.size();
    const std::size_t archived = r.report.class_counts["archived"];
    const std::size_t published = r.report.class_counts["published"];
    const std::size_t lo = std::min(archived, published);
    const std::size_t hi = std::max(archived, published);
    r.report.imbalance_ratio = lo == 0 ? 0.0 : static_cast<double>(hi) / static_cast<double>(lo);
    return r;
}

BuildResult build_task(TaskKind task, const std::vector<Document> &store) {
    switch (task) {
        case TaskKind::headline: return build_headline(store);
        case TaskKind::positive_comment: return build_comments(store, Polarity::positive);
        case TaskKind::negative_comment: return build_comments(store, Polarity::negative);
        case TaskKind::description: return build_description(store);
        case TaskKind::moderation: return build_moderation(store);
    }
    throw Error("unknown-task", "unknown task");
}

// ---- splitting -----------------------------------------------------------------

namespace {

struct Group {
    std::string key;
    std::vector<std::size_t> members;
};

std::vector<Group> shuffled_groups(const std::vector<TaskExample> &examples, std::uint64_t seed) {
    std::map<std::string, std::vector<std::size_t>, IdLess> by_key;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        if (examples[i].source_ids.empty()) {
            throw Error("invalid-example", "example " + examples[i].id + " has no source ids");
        }
        by_key[examples[i].source_ids.front()].push_back(i);
    }
    std::vector<Group> groups;
    for (auto &[key, members] : by_key) {
        groups.push_back({key, std::move(members)});
    }
    Rng rng(seed);
    rng.shuffle(groups);
    return groups;
}

void finish(TaskSplit &s, const std::vector<TaskExample> &examples, std::vector<std::size_t> train,
            std::vector<std::size_t> test) {
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    for (std::size_t i : train) {
        s.train.push_back(examples[i]);
    }
    for (std::size_t i : test) {
        s.test.push_back(examples[i]);
    }
    if (!examples.empty()) {
        s.task = examples.front().task;
    }
}

}  // namespace

TaskSplit split(const std::vector<TaskExample> &examples, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw Error("invalid-config", fmt::format("test_fraction must lie in (0, 1), got {}", test_fraction));
    }
    TaskSplit s;
    s.seed = seed;
    s.mode = "fraction";
    s.test_fraction = test_fraction;
    const auto target = static_cast<std::size_t>(std::llround(static_cast<double>(examples.size()) * test_fraction));
    std::vector<std::size_t> train, test;
    for (const Group &g : shuffled_groups(examples, seed)) {
        auto &side = test.size() + g.members.size() <= target ? test : train;
        side.insert(side.end(), g.members.begin(), g.members.end());
    }
    finish(s, examples, std::move(train), std::move(test));
    return s;
}

TaskSplit split_counts(const std::vector<TaskExample> &examples, std::size_t train_count, std::size_t test_count,
                       std::uint64_t seed) {
    TaskSplit s;
    s.seed = seed;
    s.mode = "counts";
    if (train_count + test_count > examples.size()) {
        throw Error("insufficient-examples", fmt::format("counts mode needs {} + {} = {} examples but only {} exist",
                                                         train_count, test_count, train_count + test_count,
                                                         examples.size()));
    }
    std::vector<std::size_t> train, test;
    for (const Group &g : shuffled_groups(examples, seed)) {
        if (test.size() + g.members.size() <= test_count) {
            test.insert(test.end(), g.members.begin(), g.members.end());
        } else if (train.size() + g.members.size() <= train_count) {
            train.insert(train.end(), g.members.begin(), g.members.end());
        } else {
            s.unused += g.members.size();
        }
    }
    if (train.size() != train_count || test.size() != test_count) {
        throw Error("insufficient-examples",
                    fmt::format("article groups cannot be packed into exactly {} train / {} test examples (got {} / {})",
                                train_count, test_count, train.size(), test.size()));
    }
    finish(s, examples, std::move(train), std::move(test));
    return s;
}

std::optional<PublishedCounts> published_counts(TaskKind task) {
    switch (task) {
        case TaskKind::headline: return PublishedCounts{162'882, 13'852};
        case TaskKind::positive_comment:
        case TaskKind::negative_comment: return PublishedCounts{3'236, 810};
        case TaskKind::description: return PublishedCounts{11'858, 2'094};
        case TaskKind::moderation: return std::nullopt;
    }
    return std::nullopt;
}

std::vector<std::string> published_count_notes() {
    std::vector<std::string> notes;
    const PublishedCounts c = *published_counts(TaskKind::positive_comment);
    const std::size_t stated_total = 4'044;
    if (c.train + c.test != stated_total) {
        notes.push_back(fmt::format("comment tasks: listed counts {} + {} = {} differ from the stated total of {}",
                                    c.train, c.test, c.train + c.test, stated_total));
    }
    const double ratio = static_cast<double>(c.test) / static_cast<double>(c.train + c.test);
    if (std::abs(ratio - 0.15) > 0.01) {
        notes.push_back(fmt::format("comment tasks: listed counts give a {:.1f}% test share, not the stated 15%",
                                    100.0 * ratio));
    }
    for (TaskKind t : {TaskKind::headline, TaskKind::description}) {
        const PublishedCounts p = *published_counts(t);
        notes.push_back(fmt::format("{}: listed counts give a {:.1f}% test share", to_string(t),
                                    100.0 * static_cast<double>(p.test) / static_cast<double>(p.train + p.test)));
    }
    return notes;
}

// ---- files -------------------------------------------------------------------------

namespace {

json example_to_json(const TaskExample &e) {
    json j{{"task", to_string(e.task)},
           {"id", e.id},
           {"input", e.input_text},
           {"target", e.target_text},
           {"source_ids", e.source_ids}};
    if (e.degenerate) {
        j["degenerate"] = true;
    }
    return j;
}

TaskExample example_from_json(const json &j) {
    TaskExample e;
    e.task = parse_task(j.at("task").get<std::string>());
    e.id = j.at("id").get<std::string>();
    e.input_text = j.at("input").get<std::string>();
    e.target_text = j.at("target").get<std::string>();
    e.source_ids = j.at("source_ids").get<std::vector<std::string>>();
    e.degenerate = j.value("degenerate", false);
    return e;
}

json report_to_json(const BuildReport &r) {
    return {{"considered", r.considered},
            {"emitted", r.emitted},
            {"skipped_missing_field", r.skipped_missing_field},
            {"skipped_empty_text", r.skipped_empty_text},
            {"skipped_dangling", r.skipped_dangling},
            {"skipped_unvoted_articles", r.skipped_unvoted_articles},
            {"degenerate", r.degenerate},
            {"class_counts", r.class_counts},
            {"imbalance_ratio", r.imbalance_ratio}};
}

}  // namespace

void write_examples(const std::filesystem::path &path, const std::vector<TaskExample> &examples) {
    files::write_atomic(path, [&](std::ostream &out) {
        for (const TaskExample &e : examples) {
            out << example_to_json(e).dump() << '\n';
        }
    });
}

std::vector<TaskExample> read_examples(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("read-failed", "cannot read " + path.string());
    }
    std::vector<TaskExample> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) {
            continue;
        }
        try {
            out.push_back(example_from_json(json::parse(line)));
        } catch (const json::exception &e) {
            throw Error("malformed-record", fmt::format("{} line {}: {}", path.string(), number, e.what()));
        }
    }
    return out;
}

void write_split(const std::filesystem::path &dir, const TaskSplit &s, const BuildReport &report) {
    write_examples(dir / "train.jsonl", s.train);
    write_examples(dir / "test.jsonl", s.test);
    json manifest{{"builder_version", task_builder_version},
                  {"task", to_string(s.task)},
                  {"seed", s.seed},
                  {"mode", s.mode},
                  {"test_fraction", s.test_fraction},
                  {"train", s.train.size()},
                  {"test", s.test.size()},
                  {"unused", s.unused},
                  {"report", report_to_json(report)}};
    files::write_atomic(dir / "manifest.json", [&](std::ostream &out) { out << manifest.dump(2) << '\n'; });
}

TaskSplit read_split(const std::filesystem::path &dir) {
    const json manifest = json::parse(files::read_all(dir / "manifest.json"));
    TaskSplit s;
    s.task = parse_task(manifest.at("task").get<std::string>());
    s.seed = manifest.at("seed").get<std::uint64_t>();
    s.mode = manifest.at("mode").get<std::string>();
    s.test_fraction = manifest.at("test_fraction").get<double>();
    s.unused = manifest.at("unused").get<std::size_t>();
    s.train = read_examples(dir / "train.jsonl");
    s.test = read_examples(dir / "test.jsonl");
    return s;
}

SequencePair encode_example(const TaskExample &example, const subword::Vocabulary &vocab) {
    return {vocab.encode(std::string(task_prefix(example.task)) + example.input_text),
            vocab.encode(example.target_text)};
}

}  // namespace luxgen::tasks
