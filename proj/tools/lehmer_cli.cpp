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

// lehmer: exact Mahler measures and Lehmer-constant searches from the shell.
//
// One JSON record per invocation on stdout; human-readable summary on stderr.
// Exit codes: 0 success, 2 invalid input, 3 search-budget refusal.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lehmer/lehmer.hpp"

namespace {

using lehmer::json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const json& record) { std::cout << record.dump() << "\n"; }

json base_record(const std::string& command) {
    return json{{"schema", lehmer::kRecordSchema}, {"command", command}};
}

/// --json accepts inline JSON or @path-to-file.
json load_json_arg(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::invalid_argument("cannot read JSON file: \"" + arg.substr(1) + "\"");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("malformed JSON input: \"" + arg + "\"");
    return j;
}

std::vector<lehmer::BigInt> coeffs_for_group(const std::string& coeffs,
                                             const lehmer::FiniteAbelianGroup& G) {
    auto v = lehmer::parse_coeff_list(coeffs);
    if (v.size() != static_cast<std::size_t>(G.order()))
        throw std::invalid_argument("expected " + std::to_string(G.order()) +
                                    " coefficients for group of order " + std::to_string(G.order()) +
                                    ", got " + std::to_string(v.size()));
    return v;
}

// Example 5.3 pair: f + g is a product of cyclotomics, f - g is not.
lehmer::LaurentPoly borwein_f() {
    return lehmer::LaurentPoly::from_coeffs(
        {1, -1, 1, -1, 0, 0, -1, 0, 0, -1, 1, -1, 1});
}
lehmer::LaurentPoly borwein_g() {
    return lehmer::LaurentPoly::from_coeffs({0, 0, 0, 0, 1, -1, 1, -1, 1});
}
lehmer::LaurentPoly lehmer_polynomial() {
    return lehmer::LaurentPoly::from_coeffs({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
}

lehmer::LaurentPoly laurent_add(const lehmer::LaurentPoly& a, const lehmer::LaurentPoly& b,
                                int sign) {
    lehmer::LaurentPoly out = a;
    for (const auto& [e, c] : b.terms) {
        auto [it, inserted] = out.terms.try_emplace(e, sign * c);
        if (!inserted) it->second += sign * c;
    }
    std::erase_if(out.terms, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

int run_measure_finite(const std::string& group, const std::string& coeffs) {
    auto t0 = std::chrono::steady_clock::now();
    lehmer::FiniteAbelianGroup G = lehmer::parse_group_spec(group);
    auto v = coeffs_for_group(coeffs, G);
    lehmer::CharPoly f = lehmer::CharPoly::from_dense(G, v);
    lehmer::MeasureValue m = lehmer::mahler_finite(f);

    json rec = base_record("measure-finite");
    rec["inputs"] = {{"group", lehmer::group_spec_string(G)}, {"coeffs", coeffs}};
    rec["result"] = lehmer::measure_to_json(m);
    rec["elapsedSec"] = seconds_since(t0);
    emit(rec);
    std::cerr << "m(f) over Z[" << lehmer::group_spec_string(G) << "]: "
              << (std::holds_alternative<lehmer::NegInfinity>(m)
                      ? std::string("-infinity")
                      : std::to_string(lehmer::to_double(m)))
              << "\n";
    return kExitOk;
}

int run_measure_torus(const std::string& coeffs, const std::string& json_arg, long grid) {
    auto t0 = std::chrono::steady_clock::now();
    lehmer::LaurentPoly p;
    if (!coeffs.empty()) {
        p = lehmer::LaurentPoly::from_coeffs(lehmer::parse_coeff_list(coeffs));
    } else if (!json_arg.empty()) {
        p = lehmer::laurent_from_json(load_json_arg(json_arg));
    } else {
        throw std::invalid_argument("measure-torus needs --coeffs or --json");
    }
    if (p.is_zero()) throw std::invalid_argument("zero polynomial has no measure");

    json rec = base_record("measure-torus");
    rec["inputs"] = {{"k", p.k}};
    if (!coeffs.empty()) rec["inputs"]["coeffs"] = coeffs;

    if (p.k == 1) {
        bool kron = lehmer::is_kronecker(p);
        lehmer::TorusMeasure m = kron ? lehmer::TorusMeasure{0.0, 0.0, lehmer::TorusMethod::jensen, false}
                                      : lehmer::mahler_t1(p);
        rec["result"] = lehmer::torus_to_json(m);
        rec["result"]["kronecker"] = kron;
        std::cerr << "m(p) = " << m.value << (kron ? " (exactly 0: Kronecker)" : "") << "\n";
    } else {
        lehmer::TorusMeasure m = lehmer::mahler_tk_grid(p, grid);
        rec["result"] = lehmer::torus_to_json(m);
        std::cerr << "m(p) ~ " << m.value << " (grid M=" << grid << ", err " << m.err_bound << ")\n";
    }
    rec["elapsedSec"] = seconds_since(t0);
    emit(rec);
    return kExitOk;
}

int run_measure_mixed(const std::string& group, const std::string& json_arg, long grid) {
    auto t0 = std::chrono::steady_clock::now();
    lehmer::FiniteAbelianGroup G = lehmer::parse_group_spec(group);
    lehmer::FiberedPoly h = lehmer::fibered_from_json(load_json_arg(json_arg), G);
    lehmer::TorusMeasure m = lehmer::mahler_mixed(h, grid);

    json rec = base_record("measure-mixed");
    rec["inputs"] = {{"group", lehmer::group_spec_string(G)}, {"k", h.k}};
    rec["result"] = lehmer::torus_to_json(m);
    rec["elapsedSec"] = seconds_since(t0);
    emit(rec);
    std::cerr << "m(h) over T^" << h.k << " + [" << lehmer::group_spec_string(G)
              << "]: " << (m.neg_infinity ? std::string("-infinity") : std::to_string(m.value))
              << "\n";
    return kExitOk;
}

int run_search(const std::string& group, int bound, int shards, int threads,
               unsigned long long budget, const std::string& cache_path, bool force) {
    lehmer::FiniteAbelianGroup G = lehmer::parse_group_spec(group);
    std::string spec = lehmer::group_spec_string(G);
    lehmer::ResultsCache cache{cache_path};

    if (!force) {
        if (auto hit = cache.lookup(spec, bound, &std::cerr)) {
            json rec = *hit;
            rec["cached"] = true;
            emit(rec);
            std::cerr << "cache hit for group " << spec << " bound " << bound << "\n";
            return kExitOk;
        }
    }

    lehmer::SearchConfig cfg;
    cfg.group = G;
    cfg.bound = bound;
    cfg.shards = shards;
    cfg.threads = threads;
    cfg.budget = budget;
    lehmer::SearchResult r = lehmer::search_lambda(cfg);

    json rec = lehmer::search_record(r);
    cache.append(rec);
    rec["cached"] = false;
    emit(rec);
    if (r.best) {
        std::cerr << "lambda(" << spec << ") <= log(" << lehmer::to_decimal(r.best->min.norm_abs)
                  << ")/" << r.best->min.order << " = " << lehmer::to_double(lehmer::MeasureValue{r.best->min})
                  << " (bound " << bound << ", scanned " << r.scanned << ", pruned "
                  << r.pruned_by_symmetry << ", exact " << r.exact_confirmations << ")\n";
    } else {
        std::cerr << "no positive-measure candidate within bound " << bound << "\n";
    }
    return kExitOk;
}

int run_verify(long nmax, int bound, int threads, unsigned long long budget) {
    auto t0 = std::chrono::steady_clock::now();
    lehmer::SearchConfig base;
    base.bound = bound;
    base.threads = threads;
    base.budget = budget;
    auto rows = lehmer::verify_conjectures(nmax, base);

    json rec = base_record("verify");
    rec["inputs"] = {{"nMax", nmax}, {"bound", bound}};
    rec["reports"] = json::array();
    bool counterexample = false;
    for (const auto& row : rows) {
        rec["reports"].push_back(lehmer::bounds_report_to_json(row));
        std::cerr << row.label << ": " << lehmer::to_string(row.status);
        if (row.search_min)
            std::cerr << "  min = log(" << lehmer::to_decimal(row.search_min->norm_abs) << ")/"
                      << row.search_min->order;
        if (!row.note.empty()) std::cerr << "  [" << row.note << "]";
        std::cerr << "\n";
        if (row.status == lehmer::ConjectureStatus::below) counterexample = true;
    }
    if (counterexample)
        std::cerr << "*** POTENTIAL COUNTEREXAMPLE FOUND: see BELOW rows above ***\n";
    rec["elapsedSec"] = seconds_since(t0);
    emit(rec);
    return kExitOk;
}

int run_bounds(long n, const std::string& group, const std::string& orders) {
    json rec = base_record("bounds");
    if (n >= 2) {
        lehmer::FiniteAbelianGroup G({n});
        rec["inputs"] = {{"n", n}};
        rec["rho"] = lehmer::rho(n);
        rec["conjectured"] = lehmer::measure_to_json(lehmer::MeasureValue{lehmer::conjectured_cyclic_lambda(n)});
        if (n >= 3)
            rec["lemma44"] = lehmer::measure_to_json(lehmer::MeasureValue{lehmer::finite_upper_bound(G)});
        std::cerr << "rho(" << n << ") = " << lehmer::rho(n) << "\n";
    } else if (!group.empty()) {
        lehmer::FiniteAbelianGroup G = lehmer::parse_group_spec(group);
        rec["inputs"] = {{"group", lehmer::group_spec_string(G)}};
        rec["lemma44"] = lehmer::measure_to_json(lehmer::MeasureValue{lehmer::finite_upper_bound(G)});
        std::cerr << "lemma 4.4 bound for " << lehmer::group_spec_string(G) << ": log("
                  << (G.order() - 1) << ")/" << G.order() << "\n";
    } else if (!orders.empty()) {
        std::vector<long long> ms;
        for (const auto& tok : lehmer::parse_coeff_list(orders)) ms.push_back(tok.get_si());
        auto decay = lehmer::quotient_bound_decay(ms);
        rec["inputs"] = {{"orders", ms}};
        rec["bounds"] = json::array();
        for (const auto& b : decay) rec["bounds"].push_back(lehmer::measure_to_json(b));
        std::cerr << "quotient bounds for " << ms.size() << " orders (decay toward 0)\n";
    } else {
        throw std::invalid_argument("bounds needs one of --n, --group, --orders");
    }
    emit(rec);
    return kExitOk;
}

int run_borwein(long grid) {
    auto t0 = std::chrono::steady_clock::now();
    lehmer::LaurentPoly f = borwein_f(), g = borwein_g();
    lehmer::LaurentPoly plus = laurent_add(f, g, +1);
    lehmer::LaurentPoly minus = laurent_add(f, g, -1);

    bool plus_kronecker = lehmer::is_kronecker(plus);
    lehmer::TorusMeasure m_plus =
        plus_kronecker ? lehmer::TorusMeasure{0.0, 0.0, lehmer::TorusMethod::jensen, false}
                       : lehmer::mahler_t1(plus);
    lehmer::TorusMeasure m_minus = lehmer::mahler_t1(minus);

    lehmer::FiberedPoly h;
    h.k = 1;
    h.group = lehmer::FiniteAbelianGroup({2});
    h.fibers[h.group.element_at(0)] = plus;
    h.fibers[h.group.element_at(1)] = minus;
    lehmer::TorusMeasure m_mixed = lehmer::mahler_mixed(h, grid);

    lehmer::TorusMeasure m_lehmer = lehmer::mahler_t1(lehmer_polynomial());
    double identity_residual = std::fabs(m_mixed.value - 0.5 * (m_plus.value + m_minus.value));

    json rec = base_record("borwein");
    rec["fPlusG"] = lehmer::torus_to_json(m_plus);
    rec["fPlusG"]["kronecker"] = plus_kronecker;
    rec["fMinusG"] = lehmer::torus_to_json(m_minus);
    rec["mixed"] = lehmer::torus_to_json(m_mixed);
    rec["lehmerPolynomial"] = lehmer::torus_to_json(m_lehmer);
    rec["identityResidual"] = identity_residual;
    rec["mixedBelowLehmer"] = m_mixed.value < m_lehmer.value;
    rec["elapsedSec"] = seconds_since(t0);
    emit(rec);

    std::cerr << "m(f+g) = " << m_plus.value << (plus_kronecker ? " (Kronecker, exactly 0)" : "")
              << "\nm(f-g) = " << m_minus.value << "\nm(h) on T+Z/2 = " << m_mixed.value
              << "\nm(Lehmer poly) = " << m_lehmer.value << "\nmixed < Lehmer: "
              << (m_mixed.value < m_lehmer.value ? "yes" : "NO") << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Mahler measures and Lehmer constants over finite groups, tori, and mixed groups"};
    app.require_subcommand(1);

    std::string cache_path = "./lehmer-cache.jsonl";
    app.add_option("--cache", cache_path, "JSONL results cache path");

    auto* mf = app.add_subcommand("measure-finite", "Exact measure of f over a finite abelian group");
    std::string mf_group, mf_coeffs;
    mf->add_option("--group", mf_group, "comma-separated factors, e.g. 2,2 (empty = trivial group)");
    mf->add_option("--coeffs", mf_coeffs, "coefficients in canonical character order")->required();

    auto* mt = app.add_subcommand("measure-torus", "Measure of an integer (Laurent) polynomial over T^k");
    std::string mt_coeffs, mt_json;
    long mt_grid = 1024;
    mt->add_option("--coeffs", mt_coeffs, "ascending coefficients (univariate)");
    mt->add_option("--json", mt_json, "multivariate JSON: {\"k\":2,\"terms\":[[[0,0],1],...]} or @file");
    mt->add_option("--grid", mt_grid, "grid resolution for k >= 2");

    auto* mm = app.add_subcommand("measure-mixed", "Measure of a fibered polynomial over T^k + F");
    std::string mm_group, mm_json;
    long mm_grid = 1024;
    mm->add_option("--group", mm_group, "finite part, comma-separated factors")->required();
    mm->add_option("--json", mm_json, "fibered JSON: {\"k\":1,\"fibers\":{\"0\":[[[0],1],...]}} or @file")
        ->required();
    mm->add_option("--grid", mm_grid, "grid resolution for k >= 2 fibers");

    auto* se = app.add_subcommand("search", "Exhaustive bounded search for lambda(F)");
    std::string se_group;
    int se_bound = 1, se_shards = 1, se_threads = 1;
    unsigned long long se_budget = 100'000'000ULL;
    bool se_force = false;
    se->add_option("--group", se_group, "comma-separated factors")->required();
    se->add_option("--bound", se_bound, "coefficient bound B >= 1")->required();
    se->add_option("--shards", se_shards, "deterministic partition of the lead coefficient range");
    se->add_option("--threads", se_threads, "worker threads");
    se->add_option("--budget", se_budget, "max candidates (2B+1)^|F|; refused above this");
    se->add_flag("--force", se_force, "recompute even when cached");

    auto* ve = app.add_subcommand("verify", "Search evidence for the cyclic and 2-group conjectures");
    long ve_nmax = 8;
    int ve_bound = 2, ve_threads = 1;
    unsigned long long ve_budget = 100'000'000ULL;
    ve->add_option("--nmax", ve_nmax, "largest cyclic order (2-group rows up to the same size)");
    ve->add_option("--bound", ve_bound, "coefficient bound B");
    ve->add_option("--threads", ve_threads, "worker threads");
    ve->add_option("--budget", ve_budget, "per-row candidate budget");

    auto* bo = app.add_subcommand("bounds", "Upper bounds: rho(n), conjectured value, quotient decay");
    long bo_n = 0;
    std::string bo_group, bo_orders;
    bo->add_option("--n", bo_n, "cyclic order");
    bo->add_option("--group", bo_group, "group factors");
    bo->add_option("--orders", bo_orders, "comma-separated orders >= 3, increasing");

    auto* bw = app.add_subcommand("borwein", "Reproduce the T + Z/2 fiber-average example");
    long bw_grid = 1024;
    bw->add_option("--grid", bw_grid, "grid resolution (unused for k = 1 fibers)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (app.got_subcommand(mf)) return run_measure_finite(mf_group, mf_coeffs);
        if (app.got_subcommand(mt)) return run_measure_torus(mt_coeffs, mt_json, mt_grid);
        if (app.got_subcommand(mm)) return run_measure_mixed(mm_group, mm_json, mm_grid);
        if (app.got_subcommand(se))
            return run_search(se_group, se_bound, se_shards, se_threads, se_budget, cache_path, se_force);
        if (app.got_subcommand(ve)) return run_verify(ve_nmax, ve_bound, ve_threads, ve_budget);
        if (app.got_subcommand(bo)) return run_bounds(bo_n, bo_group, bo_orders);
        if (app.got_subcommand(bw)) return run_borwein(bw_grid);
    } catch (const lehmer::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
