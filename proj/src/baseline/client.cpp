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

#include "luxgen/baseline/client.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/files.hpp"
#include "luxgen/eval/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

namespace luxgen::baseline {

using nlohmann::json;

std::string_view to_string(Adapter adapter) {
    return adapter == Adapter::openai_chat ? "openai_chat" : "ollama_chat";
}

Adapter parse_adapter(std::string_view name) {
    if (name == "openai_chat") return Adapter::openai_chat;
    if (name == "ollama_chat") return Adapter::ollama_chat;
    throw Error("invalid-config", "unknown endpoint adapter '" + std::string(name) + "'");
}

namespace {

json parse_object(const std::string &text, const char *what) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw Error("invalid-config", std::string(what) + ": " + e.what());
    }
    if (!j.is_object()) {
        throw Error("invalid-config", std::string(what) + " must be a JSON object");
    }
    return j;
}

void reject_unknown(const json &j, const std::set<std::string> &known, const char *what) {
    for (const auto &[key, value] : j.items()) {
        if (!known.count(key)) {
            throw Error("invalid-config", std::string(what) + ": unknown key '" + key + "'");
        }
    }
}

}  // namespace

EndpointConfig endpoint_from_json(const std::string &json_text) {
    const json j = parse_object(json_text, "endpoint config");
    reject_unknown(j, {"url", "adapter", "model", "credential_env", "timeout_seconds", "temperature"},
                   "endpoint config");
    EndpointConfig cfg;
    try {
        cfg.url = j.at("url").get<std::string>();
        cfg.model = j.at("model").get<std::string>();
        if (j.contains("adapter")) cfg.adapter = parse_adapter(j["adapter"].get<std::string>());
        if (j.contains("credential_env")) cfg.credential_env = j["credential_env"].get<std::string>();
        if (j.contains("timeout_seconds")) cfg.timeout_seconds = j["timeout_seconds"].get<double>();
        if (j.contains("temperature")) cfg.temperature = j["temperature"].get<double>();
    } catch (const json::exception &e) {
        throw Error("invalid-config", std::string("endpoint config: ") + e.what());
    }
    if (cfg.timeout_seconds <= 0) {
        throw Error("invalid-config", "endpoint config: timeout_seconds must be positive");
    }
    return cfg;
}

Limits limits_from_json(const std::string &json_text) {
    const json j = parse_object(json_text, "limits");
    reject_unknown(j,
                   {"max_attempts", "initial_backoff_seconds", "backoff_multiplier", "max_backoff_seconds",
                    "requests_per_second", "max_in_flight"},
                   "limits");
    Limits l;
    try {
        if (j.contains("max_attempts")) l.max_attempts = j["max_attempts"].get<int>();
        if (j.contains("initial_backoff_seconds")) l.initial_backoff_seconds = j["initial_backoff_seconds"].get<double>();
        if (j.contains("backoff_multiplier")) l.backoff_multiplier = j["backoff_multiplier"].get<double>();
        if (j.contains("max_backoff_seconds")) l.max_backoff_seconds = j["max_backoff_seconds"].get<double>();
        if (j.contains("requests_per_second")) l.requests_per_second = j["requests_per_second"].get<double>();
        if (j.contains("max_in_flight")) l.max_in_flight = j["max_in_flight"].get<int>();
    } catch (const json::exception &e) {
        throw Error("invalid-config", std::string("limits: ") + e.what());
    }
    if (l.max_attempts < 1 || l.max_in_flight < 1 || l.requests_per_second <= 0 || l.initial_backoff_seconds < 0 ||
        l.backoff_multiplier < 1 || l.max_backoff_seconds < 0) {
        throw Error("invalid-config", "limits out of range");
    }
    return l;
}

std::string request_body(const EndpointConfig &endpoint, const PromptTemplate &prompt, std::string_view input) {
    validate(prompt);
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", prompt.instruction}});
    messages.push_back({{"role", "user"}, {"content", prompt.render_user(input)}});
    json body = {{"model", endpoint.model}, {"messages", std::move(messages)}};
    if (endpoint.adapter == Adapter::openai_chat) {
        body["temperature"] = endpoint.temperature;
    } else {
        body["stream"] = false;
        body["options"] = {{"temperature", endpoint.temperature}};
    }
    return body.dump();
}

std::string parse_completion(Adapter adapter, const std::string &response_body) {
    try {
        const json j = json::parse(response_body);
        if (adapter == Adapter::openai_chat) {
            return j.at("choices").at(0).at("message").at("content").get<std::string>();
        }
        return j.at("message").at("content").get<std::string>();
    } catch (const json::exception &e) {
        throw Error("bad-response", std::string("unexpected completion payload: ") + e.what());
    }
}

double backoff_delay(const Limits &limits, int retry) {
    const double d = limits.initial_backoff_seconds * std::pow(limits.backoff_multiplier, retry - 1);
    return std::min(d, limits.max_backoff_seconds);
}

// ---- journal ----------------------------------------------------------------

namespace {

json entry_json(const JournalEntry &e) {
    json j = {{"id", e.id}, {"status", e.outcome == Outcome::ok ? "ok" : "failed"}, {"attempts", e.attempts}};
    if (e.outcome == Outcome::ok) {
        j["prediction"] = e.prediction;
    } else {
        j["error"] = e.error;
    }
    return j;
}

/// Cuts a partially written final line so appends start on a fresh line.
void trim_partial_tail(const std::filesystem::path &path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return;
    const std::string content = files::read_all(path);
    if (content.empty() || content.back() == '\n') return;
    const auto last_nl = content.rfind('\n');
    std::filesystem::resize_file(path, last_nl == std::string::npos ? 0 : last_nl + 1);
}

}  // namespace

std::vector<JournalEntry> read_journal(const std::filesystem::path &path) {
    std::vector<JournalEntry> out;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return out;
    const std::string content = files::read_all(path);
    std::unordered_map<std::string, std::size_t> slot;
    std::size_t pos = 0;
    while (pos < content.size()) {
        const auto nl = content.find('\n', pos);
        const bool complete = nl != std::string::npos;
        const std::string line = content.substr(pos, complete ? nl - pos : std::string::npos);
        pos = complete ? nl + 1 : content.size();
        if (line.empty()) continue;
        JournalEntry e;
        try {
            const json j = json::parse(line);
            e.id = j.at("id").get<std::string>();
            const auto status = j.at("status").get<std::string>();
            if (status != "ok" && status != "failed") throw Error("corrupt-journal", "bad status");
            e.outcome = status == "ok" ? Outcome::ok : Outcome::failed;
            e.attempts = j.value("attempts", 0);
            e.prediction = j.value("prediction", std::string{});
            e.error = j.value("error", std::string{});
        } catch (const std::exception &) {
            if (!complete) break;  // killed mid-write
            throw Error("corrupt-journal", "unreadable journal line in " + path.string());
        }
        if (auto it = slot.find(e.id); it != slot.end()) {
            out[it->second] = std::move(e);
        } else {
            slot.emplace(e.id, out.size());
            out.push_back(std::move(e));
        }
    }
    return out;
}

// ---- run ----------------------------------------------------------------------

namespace {

class TokenBucket {
public:
    explicit TokenBucket(double rate) : interval_(1.0 / rate) {}

    void acquire() {
        using clock = std::chrono::steady_clock;
        clock::time_point slot;
        {
            std::lock_guard lock(mu_);
            const auto now = clock::now();
            if (next_ < now) next_ = now;
            slot = next_;
            next_ += std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(interval_));
        }
        std::this_thread::sleep_until(slot);
    }

private:
    double interval_;
    std::mutex mu_;
    std::chrono::steady_clock::time_point next_{};
};

class Journal {
public:
    explicit Journal(const std::filesystem::path &path) {
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        trim_partial_tail(path);
        file_ = std::fopen(path.c_str(), "ab");
        if (!file_) throw Error("write-failed", "cannot open journal " + path.string());
    }
    Journal(const Journal &) = delete;
    Journal &operator=(const Journal &) = delete;
    ~Journal() { std::fclose(file_); }

    void append(const JournalEntry &e) {
        const std::string line = entry_json(e).dump() + "\n";
        std::lock_guard lock(mu_);
        if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0) {
            throw Error("write-failed", "journal append failed");
        }
    }

private:
    std::FILE *file_{nullptr};
    std::mutex mu_;
};

enum class Verdict { ok, transient, permanent, auth };

Verdict classify(const HttpResponse &r) {
    if (!r.transport_error.empty() || r.status == 0) return Verdict::transient;
    if (r.status >= 200 && r.status < 300) return Verdict::ok;
    if (r.status == 401 || r.status == 403) return Verdict::auth;
    if (r.status == 429 || r.status >= 500) return Verdict::transient;
    return Verdict::permanent;
}

std::string describe(const HttpResponse &r) {
    if (!r.transport_error.empty()) return "transport error: " + r.transport_error;
    return "HTTP " + std::to_string(r.status);
}

}  // namespace

RunSummary run_baseline(const EndpointConfig &endpoint, const std::vector<tasks::TaskExample> &examples,
                        const PromptTemplate &prompt, const RunOptions &options, const Transport &transport) {
    validate(prompt);
    const Limits &limits = options.limits;
    if (limits.max_attempts < 1 || limits.max_in_flight < 1 || limits.requests_per_second <= 0) {
        throw Error("invalid-config", "limits out of range");
    }

    Headers headers;
    if (!endpoint.credential_env.empty()) {
        const char *token = std::getenv(endpoint.credential_env.c_str());
        if (token == nullptr || *token == '\0') {
            throw Error("missing-credential", "environment variable " + endpoint.credential_env + " is not set");
        }
        headers.emplace("Authorization", std::string("Bearer ") + token);
    }

    auto log = [&](const std::string &line) {
        if (options.log) options.log(line);
    };

    RunSummary summary;
    summary.total = examples.size();

    std::set<std::string> done;
    for (const auto &e : read_journal(options.journal_path)) {
        if (e.outcome == Outcome::ok) done.insert(e.id);
    }
    std::vector<const tasks::TaskExample *> pending;
    for (const auto &ex : examples) {
        if (done.count(ex.id)) {
            ++summary.resumed;
        } else {
            pending.push_back(&ex);
        }
    }

    Journal journal(options.journal_path);
    TokenBucket bucket(limits.requests_per_second);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> halt{false};
    std::mutex summary_mu;
    std::string auth_error;

    auto process = [&](const tasks::TaskExample &ex) {
        const std::string body = request_body(endpoint, prompt, ex.input_text);
        JournalEntry entry;
        entry.id = ex.id;
        for (int attempt = 1; attempt <= limits.max_attempts; ++attempt) {
            bucket.acquire();
            HttpResponse r;
            try {
                r = transport(endpoint.url, body, headers, endpoint.timeout_seconds);
            } catch (const std::exception &e) {
                r.transport_error = e.what();
            }
            entry.attempts = attempt;
            {
                std::lock_guard lock(summary_mu);
                ++summary.requests;
                if (attempt > 1) ++summary.retries;
            }
            Verdict v = classify(r);
            if (v == Verdict::ok) {
                try {
                    entry.prediction = parse_completion(endpoint.adapter, r.body);
                    entry.outcome = Outcome::ok;
                    journal.append(entry);
                    std::lock_guard lock(summary_mu);
                    ++summary.succeeded;
                    return;
                } catch (const Error &e) {
                    entry.error = e.what();
                    v = Verdict::permanent;
                }
            } else {
                entry.error = describe(r);
            }
            if (v == Verdict::auth) {
                std::lock_guard lock(summary_mu);
                if (auth_error.empty()) auth_error = entry.error;
                halt = true;
                return;
            }
            if (v == Verdict::permanent || attempt == limits.max_attempts) break;
            const double delay = backoff_delay(limits, attempt);
            log(ex.id + ": " + entry.error + ", retry " + std::to_string(attempt) + " in " +
                std::to_string(delay) + "s");
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
        }
        entry.outcome = Outcome::failed;
        journal.append(entry);
        log(ex.id + ": failed after " + std::to_string(entry.attempts) + " attempt(s): " + entry.error);
        std::lock_guard lock(summary_mu);
        ++summary.failed;
    };

    auto worker = [&] {
        while (!halt) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size()) return;
            process(*pending[i]);
        }
    };

    const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(limits.max_in_flight), pending.size());
    std::vector<std::thread> threads;
    std::exception_ptr worker_error;
    std::mutex error_mu;
    for (std::size_t t = 0; t < n_threads; ++t) {
        threads.emplace_back([&] {
            try {
                worker();
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!worker_error) worker_error = std::current_exception();
                halt = true;
            }
        });
    }
    for (auto &t : threads) t.join();
    if (worker_error) std::rethrow_exception(worker_error);
    if (!auth_error.empty()) {
        throw Error("auth-failed", "endpoint rejected the credentials (" + auth_error + ")");
    }

    std::unordered_map<std::string, std::string> completed;
    for (auto &e : read_journal(options.journal_path)) {
        if (e.outcome == Outcome::ok) completed.emplace(e.id, std::move(e.prediction));
    }
    std::vector<eval::Prediction> predictions;
    for (const auto &ex : examples) {
        if (auto it = completed.find(ex.id); it != completed.end()) {
            predictions.push_back({std::string(tasks::to_string(ex.task)), ex.id, it->second});
        }
    }
    eval::write_predictions(options.predictions_path, predictions);
    summary.predictions_written = predictions.size();
    return summary;
}

}  // namespace luxgen::baseline
