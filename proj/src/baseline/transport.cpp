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

#include <httplib.h>

namespace luxgen::baseline {

namespace {

struct SplitUrl {
    std::string origin;  ///< scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string &url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error("invalid-config", "endpoint url lacks a scheme: " + url);
    }
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw Error("invalid-config", "unsupported url scheme: " + scheme);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

Transport http_transport() {
    return [](const std::string &url, const std::string &body, const Headers &headers,
              double timeout_seconds) -> HttpResponse {
        const SplitUrl parts = split_url(url);
        httplib::Client client(parts.origin);
        const auto timeout = std::chrono::duration<double>(timeout_seconds);
        const auto us = std::chrono::duration_cast<std::chrono::microseconds>(timeout);
        client.set_connection_timeout(us);
        client.set_read_timeout(us);
        client.set_write_timeout(us);
        httplib::Headers h(headers.begin(), headers.end());
        HttpResponse out;
        auto res = client.Post(parts.path, h, body, "application/json");
        if (!res) {
            out.transport_error = httplib::to_string(res.error());
            return out;
        }
        out.status = res->status;
        out.body = res->body;
        return out;
    };
}

}  // namespace luxgen::baseline
