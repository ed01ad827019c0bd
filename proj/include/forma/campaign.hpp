/*
   Copyright 2026 The forma authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FORMA_CAMPAIGN_HPP
#define FORMA_CAMPAIGN_HPP

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "forma/family.hpp"
#include "forma/report.hpp"
#include "forma/strength.hpp"

namespace forma {

/// The long-running exhaustion of length-3 decompositions of the four-term
/// quartic in its weighted ring. The search space is split into resumable
/// chunks keyed by the first factor's candidate-index range; the short r=1
/// and r=2 phases run first so that "nothing found" really means strength
/// > 3 (the enumeration skips tuples with a repeated factor, which only
/// represent shorter decompositions).
struct CampaignConfig {
    int workers = 1;
    std::string checkpoint_path;
    bool resume = false;
    uint64_t chunk_size = 8;   // first-factor indices per chunk
    double budget_seconds = 0;  // 0 = unlimited
    std::string only_cases;     // subset of "abcd"; empty = all r=3 shapes
    bool skip_low_r = false;
    bool confirmed = false;  // required beyond GF(2)
};

struct CampaignPhase {
    std::string label;
    long r = 0;
    DegreeSplitShape shape;
    uint64_t first_factor_count = 0;
    uint64_t next_index = 0;
    uint64_t tuples = 0;
    bool completed = false;
};

struct CampaignReport {
    bool completed = false;
    bool found = false;
    std::optional<Decomposition> certificate;
    std::vector<CampaignPhase> phases;
    uint64_t tuples = 0;
    double elapsed_ms = 0;
    bool needs_confirmation = false;
    std::string note;
    std::string verdict;  // "exhausted-below r=3" / "counterexample" / "incomplete"
};

namespace detail {

inline std::vector<CampaignPhase> campaign_phase_plan(const RingPtr& ring,
                                                      const CampaignConfig& cfg) {
    std::vector<CampaignPhase> phases;
    auto first_count = [&](const DegreeSplitShape& shape) {
        auto basis = basis_of_degree(ring, shape.lows[0]);
        return MonicEnum::make(ring->field().characteristic(), static_cast<int>(basis.size()))
            .count;
    };
    if (!cfg.skip_low_r) {
        for (long r = 1; r <= 2; ++r)
            for (const auto& shape : enumerate_shapes(4, r))
                phases.push_back(CampaignPhase{"r=" + std::to_string(r) + " " + shape.to_string(),
                                               r, shape, first_count(shape), 0, 0, false});
    }
    auto r3 = enumerate_shapes(4, 3);
    const char* tags = "abcd";
    for (size_t i = 0; i < r3.size(); ++i) {
        if (!cfg.only_cases.empty() &&
            cfg.only_cases.find(tags[i]) == std::string::npos)
            continue;
        phases.push_back(CampaignPhase{std::string("case-") + tags[i] + " " + r3[i].to_string(),
                                       3, r3[i], first_count(r3[i]), 0, 0, false});
    }
    return phases;
}

inline nlohmann::ordered_json campaign_checkpoint_json(const CampaignReport& rep,
                                                       const std::string& digest,
                                                       const FieldSpec& field) {
    nlohmann::ordered_json j;
    j["format"] = "forma-campaign-v1";
    j["field"] = field.to_string();
    j["target_digest"] = digest;
    auto phases = nlohmann::ordered_json::array();
    for (const auto& ph : rep.phases) {
        nlohmann::ordered_json p;
        p["label"] = ph.label;
        p["next_index"] = ph.next_index;
        p["tuples"] = ph.tuples;
        p["completed"] = ph.completed;
        phases.push_back(p);
    }
    j["phases"] = phases;
    j["found"] = rep.found;
    if (rep.certificate) j["certificate"] = decomposition_report(*rep.certificate);
    return j;
}

inline void campaign_save(const CampaignReport& rep, const std::string& path,
                          const std::string& digest, const FieldSpec& field) {
    if (path.empty()) return;
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << campaign_checkpoint_json(rep, digest, field).dump(2) << "\n";
    }
    std::rename(tmp.c_str(), path.c_str());
}

inline void campaign_load(CampaignReport& rep, const std::string& path,
                          const std::string& digest, const FieldSpec& field) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::CheckpointCorrupt, "cannot open checkpoint " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error(ErrorKind::CheckpointCorrupt, std::string("unparsable checkpoint: ") + e.what());
    }
    if (j.value("format", "") != "forma-campaign-v1")
        throw Error(ErrorKind::CheckpointCorrupt, "unknown checkpoint format");
    if (j.value("field", "") != field.to_string())
        throw Error(ErrorKind::CheckpointCorrupt, "checkpoint belongs to a different field");
    if (j.value("target_digest", "") != digest)
        throw Error(ErrorKind::CheckpointCorrupt, "checkpoint targets a different polynomial");
    auto phases = j.find("phases");
    if (phases == j.end() || !phases->is_array() || phases->size() != rep.phases.size())
        throw Error(ErrorKind::CheckpointCorrupt, "checkpoint phase plan does not match");
    for (size_t i = 0; i < rep.phases.size(); ++i) {
        const auto& p = (*phases)[i];
        if (p.value("label", "") != rep.phases[i].label)
            throw Error(ErrorKind::CheckpointCorrupt, "checkpoint phase plan does not match");
        rep.phases[i].next_index = p.value("next_index", uint64_t(0));
        rep.phases[i].tuples = p.value("tuples", uint64_t(0));
        rep.phases[i].completed = p.value("completed", false);
    }
}

/// Combinations-with-distinctness count of a full phase, for projections.
inline double phase_tuple_estimate(const RingPtr& ring, const DegreeSplitShape& shape) {
    double total = 1;
    size_t i = 0;
    uint32_t p = ring->field().characteristic();
    while (i < shape.lows.size()) {
        size_t j = i;
        while (j < shape.lows.size() && shape.lows[j] == shape.lows[i]) ++j;
        auto basis = basis_of_degree(ring, shape.lows[i]);
        double n = static_cast<double>(MonicEnum::make(p, static_cast<int>(basis.size())).count);
        double mult = 1;
        for (size_t k = 0; k < j - i; ++k) mult *= (n - k) / (k + 1);
        total *= mult;
        i = j;
    }
    return total;
}

}  // namespace detail

inline CampaignReport campaign_full(const FieldSpec& field, const CampaignConfig& cfg = {}) {
    auto t0 = std::chrono::steady_clock::now();
    RingPtr ring = quartic_family_ring(field);
    Poly target = build_h(ring, 4);
    std::string digest = fnv1a_hex(print_ring(ring) + "|" + print_poly(target));

    CampaignReport rep;
    rep.phases = detail::campaign_phase_plan(ring, cfg);

    if (field.characteristic() != 2 && !cfg.confirmed) {
        rep.needs_confirmation = true;
        std::string note = "projected tuple counts:";
        for (const auto& ph : rep.phases) {
            char buf[64];
            snprintf(buf, sizeof buf, " %s=%.3g", ph.label.c_str(),
                     detail::phase_tuple_estimate(ring, ph.shape));
            note += buf;
        }
        rep.note = note + "; pass the confirmation flag to proceed";
        rep.verdict = "incomplete";
        return rep;
    }

    if (cfg.resume && !cfg.checkpoint_path.empty())
        detail::campaign_load(rep, cfg.checkpoint_path, digest, field);

    auto tables = detail::SearchTables::build(ring, 4);
    bool out_of_budget = false;

    for (auto& ph : rep.phases) {
        if (ph.completed || rep.found || out_of_budget) continue;
        detail::ShapeSearcher searcher(tables, target, ph.shape,
                                       SearchOptions{.r_max = 3, .workers = cfg.workers});
        while (ph.next_index < ph.first_factor_count) {
            uint64_t from = ph.next_index;
            uint64_t to = std::min<uint64_t>(ph.first_factor_count, from + cfg.chunk_size);
            auto res = searcher.run_range(from, to);
            ph.tuples += res.tuples_tried;
            ph.next_index = to;
            if (res.found) {
                std::vector<Poly> gs;
                for (size_t i = 0; i < res.tuple.size(); ++i)
                    gs.push_back(searcher.candidate_poly(i, res.tuple[i]));
                auto hs = cofactor_solve(target, gs);
                Decomposition cert{ring, 4, {}};
                for (size_t i = 0; i < gs.size(); ++i)
                    if (!(*hs)[i].is_zero()) cert.pairs.push_back({gs[i], (*hs)[i]});
                rep.found = true;
                rep.certificate = std::move(cert);
                break;
            }
            double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (cfg.budget_seconds > 0 && elapsed > cfg.budget_seconds) {
                double frac = static_cast<double>(ph.next_index) / ph.first_factor_count;
                char buf[160];
                snprintf(buf, sizeof buf,
                         "budget of %.0fs exceeded in %s; phase ~%.1f%% done, projected %.0fs",
                         cfg.budget_seconds, ph.label.c_str(), 100 * frac,
                         frac > 0 ? elapsed / frac : 0.0);
                rep.note = buf;
                out_of_budget = true;
                break;
            }
            detail::campaign_save(rep, cfg.checkpoint_path, digest, field);
        }
        ph.completed = ph.next_index >= ph.first_factor_count;
        detail::campaign_save(rep, cfg.checkpoint_path, digest, field);
    }

    rep.completed = true;
    for (const auto& ph : rep.phases) {
        rep.tuples += ph.tuples;
        if (!ph.completed) rep.completed = false;
    }
    bool partial_plan = cfg.skip_low_r || !cfg.only_cases.empty();
    if (rep.found)
        rep.verdict = "counterexample at r=" +
                      std::to_string(rep.certificate ? rep.certificate->length() : 3);
    else if (rep.completed && !partial_plan)
        rep.verdict = "exhausted-below r=3";
    else if (rep.completed)
        rep.verdict = "slices exhausted (partial plan)";
    else
        rep.verdict = "incomplete";
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    detail::campaign_save(rep, cfg.checkpoint_path, digest, field);
    return rep;
}

}  // namespace forma

#endif
