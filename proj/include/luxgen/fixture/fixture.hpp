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

#include <cstddef>
#include <cstdint>
#include <filesystem>

namespace luxgen::fixture {

/// Size knobs of the synthetic corpus. Counts are Luxembourgish records;
/// German and French cells are drawn larger so balancing can meet its
/// budget, except where a cell is missing on purpose.
struct FixtureOptions {
    std::uint64_t seed{7};
    std::size_t articles{80};
    std::size_t wiki_pages{60};
    std::size_t lines_per_domain{120};
};

struct FixtureSummary {
    std::filesystem::path manifest;
    std::size_t files{0};
    std::size_t records{0};
};

/// Writes a small trilingual corpus in all three record formats plus an
/// ingest manifest ("manifest.json") into `dir`. Output depends only on the
/// options.
///
/// Luxembourgish covers every domain. German has no chat cell and French has
/// neither radio nor chat, so balancing reports deficits for them. News
/// records carry titles (a share of bodies repeat the title verbatim), wiki
/// records carry short descriptions (a few are missing), and comments carry
/// votes, an article id and a moderation status; archived comments are
/// never voted.
FixtureSummary write_fixture(const std::filesystem::path &dir, const FixtureOptions &options = {});

}  // namespace luxgen::fixture
