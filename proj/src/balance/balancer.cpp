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

#include "luxgen/balance/balancer.hpp"

#include "luxgen/common/error.hpp"
#include "luxgen/common/id_order.hpp"
#include "luxgen/common/rng.hpp"
#include "luxgen/common/text.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <set>
#include <tuple>

namespace luxgen::balance {

using corpus::CorpusStats;
using corpus::Document;
using corpus::StatsRow;
using nlohmann::json;

Domain DomainMapping::map(Domain domain, bool is_reference) const {
    const auto &table = is_reference ? reference : auxiliary;
    const auto it = table.find(domain);
    return it == table.end() ? domain : it->second;
}

std::map<Domain, std::uint64_t> reference_targets(const CorpusStats &stats, Language reference,
                                                  const DomainMapping &mapping) {
    std::map<Domain, std::uint64_t> targets;
    bool found = false;
    for (const StatsRow &row : stats.rows) {
        if (row.language == reference) {
            targets[mapping.map(row.domain, true)] += row.token_count;
            found = true;
        }
    }
    if (!found) {
        throw Error("missing-reference", fmt::format("statistics contain no rows for reference language '{}'",
                                                     corpus::to_string(reference)));
    }
    return targets;
}

namespace {

// Splits `take` across sources proportionally to availability. Floors first,
// then hands the remaining units to the largest remainders (ties: source name).
void distribute(std::vector<Allocation> &cell, std::uint64_t take) {
    std::uint64_t available = 0;
    for (const Allocation &a : cell) {
        available += a.available_tokens;
    }
    if (available == 0) {
        return;
    }
    std::uint64_t assigned = 0;
    std::vector<std::pair<unsigned __int128, std::size_t>> remainders;
    for (std::size_t i = 0; i < cell.size(); ++i) {
        const auto numerator = static_cast<unsigned __int128>(take) * cell[i].available_tokens;
        cell[i].take_tokens = static_cast<std::uint64_t>(numerator / available);
        assigned += cell[i].take_tokens;
        remainders.emplace_back(numerator % available, i);
    }
    std::sort(remainders.begin(), remainders.end(), [&](const auto &a, const auto &b) {
        if (a.first != b.first) {
            return a.first > b.first;
        }
        return cell[a.second].source < cell[b.second].source;
    });
    for (std::size_t k = 0; assigned < take; ++k) {
        ++cell[remainders[k].second].take_tokens;
        ++assigned;
    }
}

}  // namespace

BalancePlan plan(const CorpusStats &stats, Language reference, const std::map<Domain, std::uint64_t> &targets,
                 double tolerance, const DomainMapping &mapping) {
    if (!(tolerance >= 0.0 && tolerance < 1.0)) {
        throw Error("invalid-argument", fmt::format("tolerance must lie in [0, 1), got {}", tolerance));
    }
    BalancePlan result;
    result.reference = reference;
    result.tolerance = tolerance;
    result.targets = targets;

    // cells keyed by (language, planning domain)
    std::map<std::pair<Language, Domain>, std::vector<Allocation>> cells;
    std::set<Language> auxiliary;
    for (const StatsRow &row : stats.rows) {
        const bool is_reference = row.language == reference;
        const Domain planned = mapping.map(row.domain, is_reference);
        cells[{row.language, planned}].push_back(
            {row.language, planned, row.domain, row.source, 0, row.token_count});
        if (!is_reference) {
            auxiliary.insert(row.language);
        }
    }
    for (auto &[key, cell] : cells) {
        std::sort(cell.begin(), cell.end(), [](const Allocation &a, const Allocation &b) {
            return std::tie(a.source_domain, a.source) < std::tie(b.source_domain, b.source);
        });
        const auto [language, domain] = key;
        if (language == reference) {
            for (Allocation &a : cell) {
                a.take_tokens = a.available_tokens;
            }
            continue;
        }
        const auto target_it = targets.find(domain);
        const std::uint64_t target = target_it == targets.end() ? 0 : target_it->second;
        std::uint64_t available = 0;
        for (const Allocation &a : cell) {
            available += a.available_tokens;
        }
        distribute(cell, std::min(target, available));
    }
    // empty auxiliary cells for domains the reference has
    for (const Language language : auxiliary) {
        for (const auto &[domain, target] : targets) {
            cells.try_emplace({language, domain});
        }
    }
    for (const auto &[key, cell] : cells) {
        const auto [language, domain] = key;
        result.allocations.insert(result.allocations.end(), cell.begin(), cell.end());
        if (language == reference) {
            continue;
        }
        const auto target_it = targets.find(domain);
        const std::uint64_t target = target_it == targets.end() ? 0 : target_it->second;
        std::uint64_t available = 0;
        for (const Allocation &a : cell) {
            available += a.available_tokens;
        }
        if (static_cast<double>(available) < static_cast<double>(target) * (1.0 - tolerance)) {
            result.deficits.push_back({language, domain, target, available, target - available});
        }
    }
    return result;
}

std::vector<Document> execute(const BalancePlan &plan, const std::vector<Document> &store, std::uint64_t seed) {
    using SourceKey = std::tuple<Language, Domain, std::string>;
    std::map<SourceKey, std::vector<const Document *>> by_source;
    for (const Document &doc : store) {
        by_source[{doc.language, doc.domain, doc.source}].push_back(&doc);
    }

    std::vector<Document> selected;
    std::size_t i = 0;
    while (i < plan.allocations.size()) {
        // one cell = consecutive allocations sharing (language, domain)
        std::size_t end = i;
        while (end < plan.allocations.size() && plan.allocations[end].language == plan.allocations[i].language &&
               plan.allocations[end].domain == plan.allocations[i].domain) {
            ++end;
        }
        std::uint64_t budget = 0;
        std::uint64_t taken = 0;
        for (std::size_t k = i; k < end; ++k) {
            const Allocation &a = plan.allocations[k];
            budget += a.take_tokens;
            if (a.take_tokens == 0) {
                continue;
            }
            const auto it = by_source.find({a.language, a.source_domain, a.source});
            if (it == by_source.end()) {
                throw Error("missing-source", fmt::format("store has no documents for (language={}, domain={}, source={})",
                                                          corpus::to_string(a.language),
                                                          corpus::to_string(a.source_domain), a.source));
            }
            std::vector<const Document *> order = it->second;
            std::sort(order.begin(), order.end(),
                      [](const Document *x, const Document *y) { return id_less(x->id, y->id); });
            Rng rng(derive_seed(seed, fmt::format("balance/{}/{}/{}", corpus::to_string(a.language),
                                                  corpus::to_string(a.source_domain), a.source)));
            rng.shuffle(order);
            for (const Document *doc : order) {
                if (taken >= budget) {
                    break;
                }
                taken += text::count_tokens(doc->text);
                selected.push_back(*doc);
            }
        }
        i = end;
    }
    return selected;
}

std::string render_plan(const BalancePlan &plan) {
    std::set<Language> languages;
    std::set<Domain> domains;
    std::map<std::pair<Language, Domain>, std::pair<std::uint64_t, std::uint64_t>> cells;  // take, available
    for (const Allocation &a : plan.allocations) {
        languages.insert(a.language);
        domains.insert(a.domain);
        auto &cell = cells[{a.language, a.domain}];
        cell.first += a.take_tokens;
        cell.second += a.available_tokens;
    }
    for (const auto &[d, t] : plan.targets) {
        domains.insert(d);
    }
    std::set<std::pair<Language, Domain>> deficit_cells;
    for (const Deficit &d : plan.deficits) {
        deficit_cells.insert({d.language, d.domain});
    }
    std::string out = fmt::format("reference: {}  tolerance: {}\n", corpus::to_string(plan.reference), plan.tolerance);
    out += fmt::format("{:<12}{:>12}", "Domain", "target");
    for (const Language l : languages) {
        out += fmt::format("{:>16}", corpus::to_string(l));
    }
    out += '\n';
    std::map<Language, std::uint64_t> totals;
    std::uint64_t target_total = 0;
    for (const Domain d : domains) {
        const auto t = plan.targets.find(d);
        const std::uint64_t target = t == plan.targets.end() ? 0 : t->second;
        target_total += target;
        out += fmt::format("{:<12}{:>12}", corpus::to_string(d), corpus::abbreviate_count(target));
        for (const Language l : languages) {
            const auto c = cells.find({l, d});
            std::string cell = "-";
            if (c != cells.end()) {
                cell = corpus::abbreviate_count(c->second.first);
                totals[l] += c->second.first;
            }
            if (deficit_cells.count({l, d}) != 0) {
                cell += " !";
            }
            out += fmt::format("{:>16}", cell);
        }
        out += '\n';
    }
    out += fmt::format("{:<12}{:>12}", "Total", corpus::abbreviate_count(target_total));
    for (const Language l : languages) {
        out += fmt::format("{:>16}", corpus::abbreviate_count(totals[l]));
    }
    out += '\n';
    for (const Deficit &d : plan.deficits) {
        out += fmt::format("deficit: {} {} target {} available {} shortfall {}\n", corpus::to_string(d.language),
                           corpus::to_string(d.domain), d.target, d.available, d.shortfall);
    }
    return out;
}

std::string plan_to_json(const BalancePlan &plan) {
    json j;
    j["reference"] = corpus::to_string(plan.reference);
    j["tolerance"] = plan.tolerance;
    json targets = json::object();
    for (const auto &[d, t] : plan.targets) {
        targets[std::string(corpus::to_string(d))] = t;
    }
    j["targets"] = targets;
    json allocations = json::array();
    for (const Allocation &a : plan.allocations) {
        allocations.push_back({{"language", corpus::to_string(a.language)},
                               {"domain", corpus::to_string(a.domain)},
                               {"source_domain", corpus::to_string(a.source_domain)},
                               {"source", a.source},
                               {"take_tokens", a.take_tokens},
                               {"available_tokens", a.available_tokens}});
    }
    j["allocations"] = allocations;
    json deficits = json::array();
    for (const Deficit &d : plan.deficits) {
        deficits.push_back({{"language", corpus::to_string(d.language)},
                            {"domain", corpus::to_string(d.domain)},
                            {"target", d.target},
                            {"available", d.available},
                            {"shortfall", d.shortfall}});
    }
    j["deficits"] = deficits;
    return j.dump(2) + "\n";
}

BalancePlan plan_from_json(const std::string &json_text) {
    try {
        const json j = json::parse(json_text);
        BalancePlan plan;
        plan.reference = corpus::parse_language(j.at("reference").get<std::string>());
        plan.tolerance = j.at("tolerance").get<double>();
        for (const auto &[d, t] : j.at("targets").items()) {
            plan.targets[corpus::parse_domain(d)] = t.get<std::uint64_t>();
        }
        for (const json &a : j.at("allocations")) {
            plan.allocations.push_back({corpus::parse_language(a.at("language").get<std::string>()),
                                        corpus::parse_domain(a.at("domain").get<std::string>()),
                                        corpus::parse_domain(a.at("source_domain").get<std::string>()),
                                        a.at("source").get<std::string>(), a.at("take_tokens").get<std::uint64_t>(),
                                        a.at("available_tokens").get<std::uint64_t>()});
        }
        for (const json &d : j.at("deficits")) {
            plan.deficits.push_back({corpus::parse_language(d.at("language").get<std::string>()),
                                     corpus::parse_domain(d.at("domain").get<std::string>()),
                                     d.at("target").get<std::uint64_t>(), d.at("available").get<std::uint64_t>(),
                                     d.at("shortfall").get<std::uint64_t>()});
        }
        return plan;
    } catch (const nlohmann::json::exception &e) {
        throw Error("malformed-plan", std::string("balance plan: ") + e.what());
    }
}

}  // namespace luxgen::balance
