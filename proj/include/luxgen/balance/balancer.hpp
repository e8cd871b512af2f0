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
#include "luxgen/corpus/stats.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace luxgen::balance {

using corpus::Domain;
using corpus::Language;

/// Maps document domains onto planning domains. The reference language and
/// the auxiliary languages have separate maps; unmapped domains map to
/// themselves.
struct DomainMapping {
    std::map<Domain, Domain> reference;
    std::map<Domain, Domain> auxiliary{{Domain::comments, Domain::web}};

    [[nodiscard]] Domain map(Domain domain, bool is_reference) const;
};

struct Allocation {
    Language language{Language::other};
    Domain domain{Domain::web};         ///< planning domain
    Domain source_domain{Domain::web};  ///< domain of the documents drawn
    std::string source;
    std::uint64_t take_tokens{0};
    std::uint64_t available_tokens{0};

    bool operator==(const Allocation &) const = default;
};

struct Deficit {
    Language language{Language::other};
    Domain domain{Domain::web};
    std::uint64_t target{0};
    std::uint64_t available{0};
    std::uint64_t shortfall{0};

    bool operator==(const Deficit &) const = default;
};

struct BalancePlan {
    Language reference{Language::lb};
    double tolerance{0.05};
    std::map<Domain, std::uint64_t> targets;
    std::vector<Allocation> allocations;  ///< sorted by (language, domain, source_domain, source)
    std::vector<Deficit> deficits;
};

inline constexpr double default_tolerance = 0.05;

/// Per-domain token budget of the reference language (after mapping).
std::map<Domain, std::uint64_t> reference_targets(const corpus::CorpusStats &stats, Language reference,
                                                  const DomainMapping &mapping = {});

/// Allocates min(target, available) tokens to every auxiliary (language,
/// domain) cell, split across sources in proportion to their availability
/// (largest-remainder rounding, ties by source name). The reference
/// language is allocated in full.
BalancePlan plan(const corpus::CorpusStats &stats, Language reference, const std::map<Domain, std::uint64_t> &targets,
                 double tolerance = default_tolerance, const DomainMapping &mapping = {});

/// Draws documents for every allocation. Within a cell, sources are visited
/// in allocation order; each source's documents are sorted by id, shuffled
/// with a seed derived from (seed, language, source) and taken until the
/// cell's running budget is met, keeping the document that crosses it.
std::vector<corpus::Document> execute(const BalancePlan &plan, const std::vector<corpus::Document> &store,
                                      std::uint64_t seed);

/// Language x domain grid of target / taken / deficit.
std::string render_plan(const BalancePlan &plan);
std::string plan_to_json(const BalancePlan &plan);
BalancePlan plan_from_json(const std::string &json_text);

}  // namespace luxgen::balance
