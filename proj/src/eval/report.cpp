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

#include "luxgen/eval/report.hpp"

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
#include <set>

namespace luxgen::eval {

using json = nlohmann::json;

void write_predictions(const std::filesystem::path &path, const std::vector<Prediction> &predictions) {
    files::write_atomic(path, [&](std::ostream &out) {
        for (const Prediction &p : predictions) {
            out << json{{"task", p.task}, {"id", p.id}, {"prediction", p.prediction}}.dump() << '\n';
        }
    });
}

std::vector<Prediction> read_predictions(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("read-failed", "cannot read " + path.string());
    }
    std::vector<Prediction> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) {
            continue;
        }
        try {
            const json j = json::parse(line);
            out.push_back({j.at("task").get<std::string>(), j.at("id").get<std::string>(),
                           j.at("prediction").get<std::string>()});
        } catch (const json::exception &e) {
            throw Error("malformed-record", fmt::format("{} line {}: {}", path.string(), number, e.what()));
        }
    }
    return out;
}

void ScoreTable::set(const std::string &model, const std::string &task, double score) {
    if (std::find(models.begin(), models.end(), model) == models.end()) {
        models.push_back(model);
    }
    if (std::find(tasks.begin(), tasks.end(), task) == tasks.end()) {
        tasks.push_back(task);
    }
    scores[{model, task}] = score;
}

std::optional<double> ScoreTable::get(const std::string &model, const std::string &task) const {
    if (auto it = scores.find({model, task}); it != scores.end()) {
        return it->second;
    }
    return std::nullopt;
}

namespace {

double rounded(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

std::string header_of(const ScoreTable &t, std::size_t column) {
    return column < t.headers.size() ? t.headers[column] : t.tasks[column];
}

std::vector<std::vector<std::string>> cells(const ScoreTable &t) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Model"};
    for (std::size_t c = 0; c < t.tasks.size(); ++c) {
        header.push_back(header_of(t, c));
    }
    rows.push_back(header);
    std::vector<std::vector<std::string>> best;
    for (const std::string &task : t.tasks) {
        best.push_back(t.mark_best ? t.best(task) : std::vector<std::string>{});
    }
    for (const std::string &model : t.models) {
        std::vector<std::string> row{model};
        for (std::size_t c = 0; c < t.tasks.size(); ++c) {
            const auto score = t.get(model, t.tasks[c]);
            if (!score) {
                row.emplace_back("-");
                continue;
            }
            std::string cell = fmt::format("{:.{}f}", rounded(*score, t.decimals), t.decimals);
            if (std::find(best[c].begin(), best[c].end(), model) != best[c].end()) {
                cell += "*";
            }
            row.push_back(cell);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string align(const std::vector<std::vector<std::string>> &rows) {
    std::vector<std::size_t> width;
    for (const auto &row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t c = 0; c < row.size(); ++c) {
            width[c] = std::max(width[c], row[c].size());
        }
    }
    std::string out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::string line;
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c == 0) {
                line += fmt::format("{:<{}}", rows[r][c], width[c]);
            } else {
                line += fmt::format("  {:>{}}", rows[r][c], width[c]);
            }
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out += line + "\n";
        if (r == 0) {
            std::size_t total = 0;
            for (std::size_t c = 0; c < width.size(); ++c) {
                total += width[c] + (c == 0 ? 0 : 2);
            }
            out += std::string(total, '-') + "\n";
        }
    }
    return out;
}

std::string tsv(const std::vector<std::vector<std::string>> &rows) {
    std::string out;
    for (const auto &row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += (c == 0 ? "" : "\t") + text::escape_field(row[c]);
        }
        out += "\n";
    }
    return out;
}

std::vector<std::vector<std::string>> classification_cells(const std::vector<ClassificationRow> &rows) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> header{"Model"};
    if (!rows.empty()) {
        for (const ClassMetrics &m : rows.front().report.per_class) {
            for (const char *part : {"P", "R", "F1"}) {
                header.push_back(m.label + " " + part);
            }
        }
    }
    for (const char *part : {"weighted P", "weighted R", "weighted F1", "macro F1"}) {
        header.emplace_back(part);
    }
    out.push_back(header);
    auto num = [](double v) { return fmt::format("{:.2f}", v); };
    for (const ClassificationRow &row : rows) {
        std::vector<std::string> line{row.model};
        for (const ClassMetrics &m : row.report.per_class) {
            line.push_back(num(m.precision));
            line.push_back(num(m.recall));
            line.push_back(num(m.f1));
        }
        line.push_back(num(row.report.weighted_precision));
        line.push_back(num(row.report.weighted_recall));
        line.push_back(num(row.report.weighted_f1));
        line.push_back(num(row.report.macro_f1));
        out.push_back(line);
    }
    return out;
}

}  // namespace

std::vector<std::string> ScoreTable::best(const std::string &task) const {
    std::optional<double> top;
    for (const std::string &model : models) {
        if (const auto s = get(model, task)) {
            const double r = rounded(*s, decimals);
            top = top ? std::max(*top, r) : r;
        }
    }
    std::vector<std::string> winners;
    for (const std::string &model : models) {
        if (const auto s = get(model, task); s && rounded(*s, decimals) == *top) {
            winners.push_back(model);
        }
    }
    return winners;
}

std::string render_text(const ScoreTable &table) { return align(cells(table)); }

std::string render_tsv(const ScoreTable &table) { return tsv(cells(table)); }

std::string render_classification_text(const std::vector<ClassificationRow> &rows) {
    return align(classification_cells(rows));
}

std::string render_classification_tsv(const std::vector<ClassificationRow> &rows) {
    return tsv(classification_cells(rows));
}

std::vector<ManualItem> sample_manual(const std::vector<ManualItem> &items, std::size_t n, std::uint64_t seed) {
    std::map<std::string, std::vector<const ManualItem *>> by_task;
    for (const ManualItem &item : items) {
        by_task[item.task].push_back(&item);
    }
    std::vector<ManualItem> out;
    for (auto &[task, group] : by_task) {
        if (n > group.size()) {
            throw Error("sample-too-large", fmt::format("task {} has {} items, cannot sample {}", task, group.size(), n));
        }
        std::sort(group.begin(), group.end(),
                  [](const ManualItem *a, const ManualItem *b) { return id_less(a->id, b->id); });
        Rng rng(derive_seed(seed, "manual/" + task));
        rng.shuffle(group);
        for (std::size_t i = 0; i < n; ++i) {
            out.push_back(*group[i]);
        }
    }
    return out;
}

std::string render_sheet(const std::vector<ManualItem> &rows) {
    std::string out = "task\tid\tinput\ttarget\tprediction\ttask_rating\tcontent_rating\tcorrectness_rating\n";
    for (const ManualItem &r : rows) {
        out += fmt::format("{}\t{}\t{}\t{}\t{}\t\t\t\n", text::escape_field(r.task), text::escape_field(r.id),
                           text::escape_field(r.input), text::escape_field(r.target),
                           text::escape_field(r.prediction));
    }
    return out;
}

}  // namespace luxgen::eval
