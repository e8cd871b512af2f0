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

#include "luxgen/corpus/document.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace luxgen::corpus {

enum class RecordFormat {
    plain_lines,         ///< one document per line
    delimited_records,   ///< tab-separated, header row, a "text" column is required
    structured_records,  ///< one JSON object per line with a "text" key
};

RecordFormat parse_record_format(std::string_view name);
std::string_view to_string(RecordFormat format);

struct ManifestEntry {
    std::filesystem::path path;
    Language language{Language::lb};
    Domain domain{Domain::web};
    std::string source;
    RecordFormat format{RecordFormat::plain_lines};
};

/// Reads a JSON manifest: {"inputs": [{"path", "language", "domain", "source", "format"}, ...]}.
/// Relative paths resolve against the manifest's directory. Unknown formats
/// are rejected here, before any input file is opened.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path &manifest_path);
std::vector<ManifestEntry> parse_manifest(std::string_view json_text, const std::filesystem::path &base_dir);

struct IngestIssue {
    std::filesystem::path path;
    std::string message;
};

struct IngestResult {
    std::vector<Document> documents;
    std::vector<IngestIssue> warnings;  ///< empty files, records empty after normalization
    std::vector<IngestIssue> errors;    ///< unreadable or malformed files (whole file skipped)
};

/// One Document per record, id "<source>-<record ordinal>", text normalized.
IngestResult ingest(const std::vector<ManifestEntry> &manifest);

/// Removes exact duplicate texts inside each (language, domain) scope. The
/// survivor of a duplicate group is its smallest id (natural id order);
/// survivors keep their input order.
std::vector<Document> dedupe(const std::vector<Document> &docs);

inline constexpr int store_format_version = 1;

/// Line-delimited JSON archive: a header line then one document per line.
void save(std::ostream &out, const std::vector<Document> &docs);
void save(const std::filesystem::path &path, const std::vector<Document> &docs);
std::vector<Document> load(std::istream &in);
std::vector<Document> load(const std::filesystem::path &path);

}  // namespace luxgen::corpus
