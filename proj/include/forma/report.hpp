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

#ifndef FORMA_REPORT_HPP
#define FORMA_REPORT_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "forma/parse.hpp"
#include "forma/strength.hpp"

namespace forma {

/// Machine-readable result document. Timing and enumeration statistics live
/// under the separate "stats" section so golden comparisons can drop them.
using Report = nlohmann::ordered_json;

inline std::string fnv1a_hex(std::string_view text) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline Report decomposition_report(const Decomposition& D) {
    Report pairs = Report::array();
    for (const auto& pr : D.pairs) {
        Report entry;
        entry["g"] = print_poly(pr.g);
        entry["h"] = print_poly(pr.h);
        pairs.push_back(entry);
    }
    Report out;
    out["length"] = D.pairs.size();
    out["pairs"] = pairs;
    return out;
}

inline Report subspace_report(const SubspaceCertificate& cert) {
    Report forms = Report::array();
    for (const auto& f : cert.cutting_forms) forms.push_back(print_poly(f));
    Report out;
    out["codimension"] = cert.cutting_forms.size();
    out["cutting_forms"] = forms;
    return out;
}

inline Report search_report_body(const SearchReport& rep) {
    Report out;
    out["mode"] = rep.mode_name();
    if (rep.mode == SearchReport::Mode::ExhaustedBelow) {
        out["exhausted_up_to"] = rep.value;
        out["value"] = "> " + std::to_string(rep.value);
    } else {
        out["value"] = rep.value;
    }
    if (rep.certificate) out["certificate"] = decomposition_report(*rep.certificate);
    if (rep.subspace) out["subspace"] = subspace_report(*rep.subspace);
    if (!rep.shapes.empty()) {
        Report shapes = Report::array();
        for (const auto& st : rep.shapes) {
            Report s;
            s["r"] = st.r;
            s["shape"] = st.shape.to_string();
            s["tuples"] = st.tuples;
            s["completed"] = st.completed;
            shapes.push_back(s);
        }
        out["exhaustion"] = shapes;
    }
    return out;
}

inline Report search_report_stats(const SearchReport& rep) {
    Report stats;
    stats["nodes"] = rep.nodes;
    stats["elapsed_ms"] = rep.elapsed_ms;
    stats["workers"] = rep.workers;
    return stats;
}

/// Canonical serialized form: 2-space indented JSON and a trailing newline.
inline std::string render_report(const Report& r) { return r.dump(2) + "\n"; }

/// Copy with the volatile sections removed, for golden-file comparison.
inline Report strip_stats(Report r) {
    r.erase("stats");
    return r;
}

}  // namespace forma

#endif
