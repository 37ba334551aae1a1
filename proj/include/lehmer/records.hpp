/*
   Copyright 2026 The lehmerlib Authors

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

/**
 * @file records.hpp
 * @brief JSON result records and the append-only search cache.
 *
 * Exact integers are serialized as decimal strings so they survive any JSON
 * consumer; floats appear only for genuinely float-valued measures. Search
 * results persist as JSONL, one record per completed search, keyed by
 * (group, bound). Corrupt cache lines are skipped with a warning, never
 * fatal.
 */

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "lehmer/finite_measure.hpp"
#include "lehmer/groups.hpp"
#include "lehmer/lehmer_search.hpp"
#include "lehmer/torus_measure.hpp"

namespace lehmer {

using json = nlohmann::json;

inline constexpr int kRecordSchema = 1;

inline json measure_to_json(const MeasureValue& m) {
    if (std::holds_alternative<NegInfinity>(m)) return json{{"negInfinity", true}};
    if (const auto* e = std::get_if<ExactMeasure>(&m))
        return json{{"normAbs", to_decimal(e->norm_abs)}, {"order", e->order}};
    const auto& x = std::get<NumericMeasure>(m);
    return json{{"float", x.value}, {"err", x.err_bound}};
}

inline MeasureValue measure_from_json(const json& j) {
    if (j.contains("negInfinity") && j["negInfinity"].get<bool>()) return NegInfinity{};
    if (j.contains("normAbs"))
        return ExactMeasure{from_decimal(j["normAbs"].get<std::string>()), j["order"].get<long long>()};
    return NumericMeasure{j["float"].get<double>(), j["err"].get<double>()};
}

inline json torus_to_json(const TorusMeasure& m) {
    if (m.neg_infinity) return json{{"negInfinity", true}};
    return json{{"float", m.value}, {"err", m.err_bound}, {"method", to_string(m.method)}};
}

/// JSONL record for a completed search, in the cache wire format.
inline json search_record(const SearchResult& r) {
    json rec{{"schema", kRecordSchema},
             {"group", group_spec_string(r.group)},
             {"bound", r.bound},
             {"scanned", r.scanned},
             {"prunedBySymmetry", r.pruned_by_symmetry},
             {"exhaustive", r.exhaustive_within_bound},
             {"elapsedSec", r.elapsed_sec}};
    if (r.best) {
        rec["normAbs"] = to_decimal(r.best->min.norm_abs);
        rec["order"] = r.best->min.order;
        rec["witness"] = r.best->witness;
    } else {
        rec["found"] = false;
    }
    return rec;
}

inline json bounds_report_to_json(const BoundsReport& row) {
    json j{{"label", row.label},
           {"group", group_spec_string(row.group)},
           {"conjectured", measure_to_json(MeasureValue{row.conjectured})},
           {"status", to_string(row.status)}};
    if (row.cyclic_n) j["n"] = *row.cyclic_n;
    if (row.rho_value) j["rho"] = *row.rho_value;
    if (row.lemma44) j["lemma44"] = measure_to_json(MeasureValue{*row.lemma44});
    if (row.search_min) j["searchMin"] = measure_to_json(MeasureValue{*row.search_min});
    if (!row.note.empty()) j["note"] = row.note;
    return j;
}

/// Append-only JSONL store for search records.
class ResultsCache {
public:
    explicit ResultsCache(std::filesystem::path path) : path_(std::move(path)) {}

    const std::filesystem::path& path() const { return path_; }

    /// Latest record matching (group, bound); corrupt lines are skipped.
    std::optional<json> lookup(const std::string& group_spec, int bound,
                               std::ostream* warn = nullptr) const {
        std::ifstream in(path_);
        if (!in) return std::nullopt;
        std::optional<json> found;
        std::string line;
        long lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            json rec = json::parse(line, nullptr, false);
            if (rec.is_discarded() || !rec.is_object() || !rec.contains("group") ||
                !rec.contains("bound")) {
                if (warn)
                    *warn << "warning: skipping corrupt cache line " << lineno << " in "
                          << path_.string() << "\n";
                continue;
            }
            if (rec["group"] == group_spec && rec["bound"] == bound) found = rec;
        }
        return found;
    }

    /// Crash-safe single-line append.
    void append(const json& rec) const {
        std::ofstream out(path_, std::ios::app);
        if (!out) throw std::runtime_error("cache path not writable: " + path_.string());
        out << rec.dump() << '\n';
        out.flush();
        if (!out) throw std::runtime_error("cache write failed: " + path_.string());
    }

private:
    std::filesystem::path path_;
};

// ---------------------------------------------------------------------------
// CLI input parsing

/// {"k":2,"terms":[[[0,0],1],...]}; coefficients may be ints or decimal strings.
inline BigInt coeff_from_json(const json& c) {
    if (c.is_string()) return from_decimal(c.get<std::string>());
    if (c.is_number_integer()) return to_bigint(c.get<long long>());
    throw std::invalid_argument("coefficient must be an integer or decimal string, got " + c.dump());
}

inline LaurentPoly laurent_from_json(const json& j) {
    LaurentPoly p;
    p.k = j.value("k", 1);
    if (!j.contains("terms") || !j["terms"].is_array())
        throw std::invalid_argument("polynomial JSON needs a \"terms\" array");
    for (const auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array())
            throw std::invalid_argument("bad term " + t.dump() + "; expected [[e1,...,ek], coeff]");
        std::vector<int> e = t[0].get<std::vector<int>>();
        if (static_cast<int>(e.size()) != p.k)
            throw std::invalid_argument("term exponent arity mismatch in " + t.dump());
        BigInt c = coeff_from_json(t[1]);
        if (sgn(c) == 0) continue;
        auto [it, inserted] = p.terms.try_emplace(std::move(e), c);
        if (!inserted) it->second += c;
    }
    std::erase_if(p.terms, [](const auto& kv) { return sgn(kv.second) == 0; });
    p.check();
    return p;
}

/// {"k":1,"fibers":{"0":[[[0],1],...],"1":...}}; keys are canonical element positions.
inline FiberedPoly fibered_from_json(const json& j, const FiniteAbelianGroup& G) {
    FiberedPoly h;
    h.k = j.value("k", 1);
    h.group = G;
    if (!j.contains("fibers") || !j["fibers"].is_object())
        throw std::invalid_argument("fibered JSON needs a \"fibers\" object");
    for (const auto& [key, val] : j["fibers"].items()) {
        long long pos = 0;
        try {
            std::size_t used = 0;
            pos = std::stoll(key, &used);
            if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad fiber key: \"" + key + "\"");
        }
        if (pos < 0 || pos >= G.order())
            throw std::invalid_argument("fiber key out of range: \"" + key + "\"");
        json wrapped{{"k", h.k}, {"terms", val}};
        LaurentPoly fiber = laurent_from_json(wrapped);
        h.fibers[G.element_at(pos)] = std::move(fiber);
    }
    for (long long p = 0; p < G.order(); ++p) {
        GroupElement x = G.element_at(p);
        if (!h.fibers.count(x)) {
            LaurentPoly zero;
            zero.k = h.k;
            h.fibers[x] = std::move(zero);  // missing fiber means the zero function
        }
    }
    return h;
}

}  // namespace lehmer
