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

#include "luxgen/baseline/prompts.hpp"
#include "luxgen/tasks/tasks.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace luxgen::baseline {

/// Wire shape spoken by the endpoint. Both carry a system and a user message.
enum class Adapter { openai_chat, ollama_chat };

std::string_view to_string(Adapter adapter);
/// Throws Error("invalid-config").
Adapter parse_adapter(std::string_view name);

struct EndpointConfig {
    std::string url;  ///< full request URL, e.g. http://127.0.0.1:11434/api/chat
    Adapter adapter{Adapter::openai_chat};
    std::string model;
    /// Name of the environment variable holding the bearer token. Empty means
    /// no Authorization header is sent. The token itself is never stored.
    std::string credential_env;
    double timeout_seconds{60.0};
    double temperature{0.0};
};

struct Limits {
    int max_attempts{5};
    double initial_backoff_seconds{1.0};
    double backoff_multiplier{2.0};
    double max_backoff_seconds{30.0};
    double requests_per_second{1.0};
    int max_in_flight{4};
};

/// Reads {"url", "adapter", "model", "credential_env", "timeout_seconds",
/// "temperature"}. Unknown keys, including any attempt to inline a secret,
/// raise Error("invalid-config").
EndpointConfig endpoint_from_json(const std::string &json_text);
/// Reads the keys of `Limits`; absent keys keep their defaults.
Limits limits_from_json(const std::string &json_text);

/// Serialized request body. A pure function of its arguments; keys are emitted
/// in sorted order so reruns produce identical bytes.
std::string request_body(const EndpointConfig &endpoint, const PromptTemplate &prompt, std::string_view input);

/// Extracts the completion text from a 2xx response body.
/// Throws Error("bad-response") when the expected field is missing.
std::string parse_completion(Adapter adapter, const std::string &response_body);

struct HttpResponse {
    int status{0};               ///< 0 when no response arrived
    std::string body;
    std::string transport_error;  ///< non-empty for connection failures and timeouts
};

using Headers = std::multimap<std::string, std::string>;
using Transport =
    std::function<HttpResponse(const std::string &url, const std::string &body, const Headers &headers,
                               double timeout_seconds)>;

/// POSTs JSON over http or https.
Transport http_transport();

enum class Outcome { ok, failed };

/// One line of the resume journal.
struct JournalEntry {
    std::string id;
    Outcome outcome{Outcome::ok};
    std::string prediction;
    int attempts{0};
    std::string error;
};

/// Reads a journal, tolerating a truncated final line. A missing file yields
/// an empty list. Later entries for an id supersede earlier ones.
std::vector<JournalEntry> read_journal(const std::filesystem::path &path);

struct RunOptions {
    std::filesystem::path journal_path;
    std::filesystem::path predictions_path;
    Limits limits;
    /// Receives one human-readable line per notable event (retry, failure).
    std::function<void(const std::string &)> log;
};

struct RunSummary {
    std::size_t total{0};
    std::size_t resumed{0};     ///< ids already completed in the journal
    std::size_t succeeded{0};   ///< completed during this run
    std::size_t failed{0};
    std::size_t requests{0};
    std::size_t retries{0};
    std::size_t predictions_written{0};
};

/// Sends one chat request per test example not yet completed in the journal,
/// appends each outcome to the journal, then writes predictions for every
/// completed id in split order. Examples whose retries are exhausted are
/// journaled as failed and left out of the predictions file; they are retried
/// by the next run. A 401 or 403 stops the run with Error("auth-failed") after
/// in-flight requests settle.
RunSummary run_baseline(const EndpointConfig &endpoint, const std::vector<tasks::TaskExample> &examples,
                        const PromptTemplate &prompt, const RunOptions &options,
                        const Transport &transport = http_transport());

/// Delay before retry number `retry` (1-based).
double backoff_delay(const Limits &limits, int retry);

}  // namespace luxgen::baseline
