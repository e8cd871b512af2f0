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

#include "luxgen/corpus/store.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/files.hpp"
#include "luxgen/common/id_order.hpp"
#include "luxgen/common/text.hpp"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace luxgen::corpus {

using nlohmann::json;

RecordFormat parse_record_format(std::string_view name) {
    if (name == "plain-lines") {
        return RecordFormat::plain_lines;
    }
    if (name == "delimited-records") {
        return RecordFormat::delimited_records;
    }
    if (name == "structured-records") {
        return RecordFormat::structured_records;
    }
    throw Error("unknown-format", "unknown record format '" + std::string(name) + "'");
}

std::string_view to_string(RecordFormat format) {
    switch (format) {
        case RecordFormat::plain_lines: return "plain-lines";
        case RecordFormat::delimited_records: return "delimited-records";
        case RecordFormat::structured_records: return "structured-records";
    }
    return "?";
}

std::vector<ManifestEntry> parse_manifest(std::string_view json_text, const std::filesystem::path &base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception &e) {
        throw Error("malformed-manifest", std::string("manifest is not valid JSON: ") + e.what());
    }
    const json &inputs = root.is_array() ? root : root.value("inputs", json::array());
    if (!inputs.is_array()) {
        throw Error("malformed-manifest", "manifest 'inputs' must be a list");
    }
    std::vector<ManifestEntry> entries;
    for (const json &item : inputs) {
        try {
            ManifestEntry entry;
            std::filesystem::path path = item.at("path").get<std::string>();
            entry.path = path.is_absolute() ? path : base_dir / path;
            entry.language = parse_language(item.at("language").get<std::string>());
            entry.domain = parse_domain(item.at("domain").get<std::string>());
            entry.source = item.at("source").get<std::string>();
            entry.format = parse_record_format(item.at("format").get<std::string>());
            if (entry.source.empty()) {
                throw Error("malformed-manifest", "manifest entry has an empty source");
            }
            entries.push_back(std::move(entry));
        } catch (const json::exception &e) {
            throw Error("malformed-manifest", std::string("manifest entry: ") + e.what());
        }
    }
    return entries;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path &manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        throw Error("unreadable-file", "cannot open manifest " + manifest_path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_manifest(buffer.str(), manifest_path.parent_path());
}

namespace {

std::int64_t vote_count(const json &value, const char *field) {
    std::int64_t n = 0;
    if (value.is_number_integer()) {
        n = value.get<std::int64_t>();
    } else if (value.is_string()) {
        const std::string s = value.get<std::string>();
        std::size_t used = 0;
        try {
            n = std::stoll(s, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != s.size() || s.empty()) {
            throw Error("malformed-record", std::string(field) + " is not an integer: '" + s + "'");
        }
    } else {
        throw Error("malformed-record", std::string(field) + " is not an integer");
    }
    if (n < 0) {
        throw Error("malformed-record", std::string(field) + " must be non-negative");
    }
    return n;
}

// Reads the optional metadata keys from a flat object of record fields.
DocumentMeta meta_from_fields(const json &fields) {
    DocumentMeta meta;
    auto text_field = [&](const char *key) -> std::optional<std::string> {
        auto it = fields.find(key);
        if (it == fields.end() || it->is_null()) {
            return std::nullopt;
        }
        if (!it->is_string()) {
            throw Error("malformed-record", std::string(key) + " must be a string");
        }
        std::string value = it->get<std::string>();
        if (value.empty()) {
            return std::nullopt;
        }
        return value;
    };
    if (auto it = fields.find("upvotes"); it != fields.end() && !it->is_null() && *it != "") {
        meta.upvotes = vote_count(*it, "upvotes");
    }
    if (auto it = fields.find("downvotes"); it != fields.end() && !it->is_null() && *it != "") {
        meta.downvotes = vote_count(*it, "downvotes");
    }
    meta.article_id = text_field("article_id");
    if (auto status = text_field("moderation_status")) {
        meta.moderation_status = parse_moderation_status(*status);
    }
    if (auto title = text_field("title")) {
        meta.title = text::normalize(*title);
    }
    if (auto description = text_field("short_description")) {
        meta.short_description = text::normalize(*description);
    }
    return meta;
}

json document_to_json(const Document &doc) {
    json meta = json::object();
    if (doc.meta.upvotes) {
        meta["upvotes"] = *doc.meta.upvotes;
    }
    if (doc.meta.downvotes) {
        meta["downvotes"] = *doc.meta.downvotes;
    }
    if (doc.meta.article_id) {
        meta["article_id"] = *doc.meta.article_id;
    }
    if (doc.meta.moderation_status) {
        meta["moderation_status"] = to_string(*doc.meta.moderation_status);
    }
    if (doc.meta.title) {
        meta["title"] = *doc.meta.title;
    }
    if (doc.meta.short_description) {
        meta["short_description"] = *doc.meta.short_description;
    }
    return json{{"id", doc.id},
                {"text", doc.text},
                {"language", to_string(doc.language)},
                {"domain", to_string(doc.domain)},
                {"source", doc.source},
                {"meta", std::move(meta)}};
}

Document document_from_json(const json &j) {
    Document doc;
    doc.id = j.at("id").get<std::string>();
    doc.text = j.at("text").get<std::string>();
    doc.language = parse_language(j.at("language").get<std::string>());
    doc.domain = parse_domain(j.at("domain").get<std::string>());
    doc.source = j.at("source").get<std::string>();
    if (auto it = j.find("meta"); it != j.end()) {
        const json &m = *it;
        if (auto u = m.find("upvotes"); u != m.end()) {
            doc.meta.upvotes = vote_count(*u, "upvotes");
        }
        if (auto d = m.find("downvotes"); d != m.end()) {
            doc.meta.downvotes = vote_count(*d, "downvotes");
        }
        if (auto a = m.find("article_id"); a != m.end()) {
            doc.meta.article_id = a->get<std::string>();
        }
        if (auto s = m.find("moderation_status"); s != m.end()) {
            doc.meta.moderation_status = parse_moderation_status(s->get<std::string>());
        }
        if (auto t = m.find("title"); t != m.end()) {
            doc.meta.title = t->get<std::string>();
        }
        if (auto s = m.find("short_description"); s != m.end()) {
            doc.meta.short_description = s->get<std::string>();
        }
    }
    if (doc.text.empty()) {
        throw Error("malformed-record", "document " + doc.id + " has empty text");
    }
    return doc;
}

struct FileReader {
    const ManifestEntry &entry;
    IngestResult &result;
    std::size_t ordinal = 0;

    void add(std::string_view raw_text, DocumentMeta meta) {
        const std::size_t record = ordinal++;
        std::string normalized = text::normalize(raw_text);
        if (normalized.empty()) {
            result.warnings.push_back({entry.path, "record " + std::to_string(record) + " is empty after normalization"});
            return;
        }
        Document doc;
        doc.id = entry.source + "-" + std::to_string(record);
        doc.text = std::move(normalized);
        doc.language = entry.language;
        doc.domain = entry.domain;
        doc.source = entry.source;
        doc.meta = std::move(meta);
        result.documents.push_back(std::move(doc));
    }
};

void strip_cr(std::string &line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
}

void read_file(const ManifestEntry &entry, std::istream &in, std::vector<Document> &out, IngestResult &result) {
    IngestResult local;
    FileReader reader{entry, local};
    std::string line;
    std::size_t line_number = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_number;
        strip_cr(line);
        switch (entry.format) {
            case RecordFormat::plain_lines:
                reader.add(line, {});
                break;
            case RecordFormat::delimited_records: {
                const auto fields = text::split(line, '\t');
                if (header.empty()) {
                    for (const auto f : fields) {
                        header.emplace_back(f);
                    }
                    if (std::find(header.begin(), header.end(), "text") == header.end()) {
                        throw Error("malformed-record", "line 1: delimited header lacks a 'text' column");
                    }
                    break;
                }
                if (fields.size() != header.size()) {
                    throw Error("malformed-record", "line " + std::to_string(line_number) + ": expected " +
                                                        std::to_string(header.size()) + " fields, found " +
                                                        std::to_string(fields.size()));
                }
                json record = json::object();
                for (std::size_t i = 0; i < fields.size(); ++i) {
                    record[header[i]] = text::unescape_field(fields[i]);
                }
                try {
                    reader.add(record.at("text").get<std::string>(), meta_from_fields(record));
                } catch (const Error &e) {
                    throw Error(e.code(), "line " + std::to_string(line_number) + ": " + e.what());
                }
                break;
            }
            case RecordFormat::structured_records: {
                if (line.find_first_not_of(" \t") == std::string::npos) {
                    reader.add("", {});
                    break;
                }
                try {
                    const json record = json::parse(line);
                    reader.add(record.at("text").get<std::string>(), meta_from_fields(record));
                } catch (const json::exception &e) {
                    throw Error("malformed-record", "line " + std::to_string(line_number) + ": " + e.what());
                } catch (const Error &e) {
                    throw Error(e.code(), "line " + std::to_string(line_number) + ": " + e.what());
                }
                break;
            }
        }
    }
    if (in.bad()) {
        throw Error("unreadable-file", "read error");
    }
    if (line_number == 0) {
        local.warnings.push_back({entry.path, "file is empty"});
    }
    for (auto &w : local.warnings) {
        result.warnings.push_back(std::move(w));
    }
    for (auto &doc : local.documents) {
        out.push_back(std::move(doc));
    }
}

}  // namespace

IngestResult ingest(const std::vector<ManifestEntry> &manifest) {
    IngestResult result;
    for (const ManifestEntry &entry : manifest) {
        std::ifstream in(entry.path, std::ios::binary);
        if (!in) {
            result.errors.push_back({entry.path, "cannot open " + entry.path.string()});
            spdlog::error("ingest: cannot open {}", entry.path.string());
            continue;
        }
        try {
            read_file(entry, in, result.documents, result);
        } catch (const Error &e) {
            result.errors.push_back({entry.path, entry.path.string() + ": " + e.what()});
            spdlog::error("ingest: {}: {}", entry.path.string(), e.what());
        }
    }
    for (const IngestIssue &w : result.warnings) {
        spdlog::warn("ingest: {}: {}", w.path.string(), w.message);
    }
    return result;
}

std::vector<Document> dedupe(const std::vector<Document> &docs) {
    // survivor index per (language, domain, text)
    std::map<std::tuple<Language, Domain, std::string_view>, std::size_t> survivor;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const Document &doc = docs[i];
        auto [it, inserted] = survivor.try_emplace({doc.language, doc.domain, doc.text}, i);
        if (!inserted && id_less(doc.id, docs[it->second].id)) {
            it->second = i;
        }
    }
    std::vector<bool> keep(docs.size(), false);
    for (const auto &[key, index] : survivor) {
        keep[index] = true;
    }
    std::vector<Document> out;
    out.reserve(survivor.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (keep[i]) {
            out.push_back(docs[i]);
        }
    }
    return out;
}

void save(std::ostream &out, const std::vector<Document> &docs) {
    const json header{{"format", "luxgen-store"}, {"version", store_format_version}, {"documents", docs.size()}};
    out << header.dump() << '\n';
    for (const Document &doc : docs) {
        out << document_to_json(doc).dump() << '\n';
    }
    if (!out) {
        throw Error("write-failed", "failed writing document archive");
    }
}

void save(const std::filesystem::path &path, const std::vector<Document> &docs) {
    files::write_atomic(path, [&](std::ostream &out) { save(out, docs); });
}

std::vector<Document> load(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error("malformed-record", "line 1: missing archive header");
    }
    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception &e) {
        throw Error("malformed-record", std::string("line 1: malformed header: ") + e.what());
    }
    if (header.value("format", "") != "luxgen-store") {
        throw Error("malformed-record", "line 1: not a luxgen document archive");
    }
    const int version = header.value("version", -1);
    if (version != store_format_version) {
        throw Error("version-mismatch", "archive version " + std::to_string(version) + " is not supported (expected " +
                                            std::to_string(store_format_version) + ")");
    }
    const auto expected = header.value("documents", std::size_t{0});
    std::vector<Document> docs;
    docs.reserve(expected);
    std::set<std::string> ids;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        try {
            Document doc = document_from_json(json::parse(line));
            if (!ids.insert(doc.id).second) {
                throw Error("malformed-record", "duplicate id " + doc.id);
            }
            docs.push_back(std::move(doc));
        } catch (const json::exception &e) {
            throw Error("malformed-record", "line " + std::to_string(line_number) + ": " + e.what());
        } catch (const Error &e) {
            throw Error(e.code(), "line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    if (docs.size() != expected) {
        throw Error("malformed-record", "line " + std::to_string(line_number + 1) + ": archive truncated, expected " +
                                            std::to_string(expected) + " documents, found " + std::to_string(docs.size()));
    }
    return docs;
}

std::vector<Document> load(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("unreadable-file", "cannot open " + path.string());
    }
    try {
        return load(in);
    } catch (const Error &e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

}  // namespace luxgen::corpus
