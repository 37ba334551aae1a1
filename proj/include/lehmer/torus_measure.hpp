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
 * @file torus_measure.hpp
 * @brief Mahler measure over the circle, tori, and T^k + finite fibers.
 *
 * Over T the measure of an integer Laurent polynomial comes from Jensen's
 * formula: m(p) = log|lead| + sum over roots of log max(1, |root|). Roots are
 * refined by Aberth simultaneous iteration after two exact preprocessing
 * steps that carry the load-bearing decisions:
 *
 *  - exact deflation of cyclotomic factors (they contribute 0 and would
 *    otherwise park multiple roots on the unit circle), and
 *  - Yun squarefree decomposition of the rest, so the iteration only ever
 *    sees simple roots.
 *
 * Whether m(p) equals 0 is never decided from floats: is_kronecker divides
 * out every cyclotomic candidate exactly and checks that only a unit times a
 * monomial remains.
 *
 * Over T^k the measure is estimated two independent ways: substitution
 * x_i -> x^{r_i} (one-variable specialization whose measure converges to the
 * k-torus measure as r spreads out), and direct quadrature on an offset grid
 * s_i = (j_i + 1/2) / M, which dodges roots of unity where integer
 * polynomials like to vanish.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lehmer/bigint.hpp"
#include "lehmer/exactpoly.hpp"
#include "lehmer/groups.hpp"

namespace lehmer {

/// Integer Laurent polynomial in k >= 1 variables; no zero coefficients stored.
struct LaurentPoly {
    int k = 1;
    std::map<std::vector<int>, BigInt> terms;

    bool is_zero() const { return terms.empty(); }

    void check() const {
        if (k < 1) throw std::invalid_argument("LaurentPoly: k must be >= 1");
        for (const auto& [e, c] : terms) {
            if (static_cast<int>(e.size()) != k)
                throw std::invalid_argument("LaurentPoly: exponent arity mismatch");
            if (sgn(c) == 0) throw std::invalid_argument("LaurentPoly: zero coefficient stored");
        }
    }

    static LaurentPoly from_coeffs(const std::vector<BigInt>& ascending) {
        LaurentPoly p;
        p.k = 1;
        for (std::size_t i = 0; i < ascending.size(); ++i)
            if (sgn(ascending[i]) != 0) p.terms[{static_cast<int>(i)}] = ascending[i];
        return p;
    }
};

enum class TorusMethod { jensen, lawton, grid };

inline const char* to_string(TorusMethod m) {
    switch (m) {
        case TorusMethod::jensen: return "jensen";
        case TorusMethod::lawton: return "lawton";
        case TorusMethod::grid: return "grid";
    }
    return "?";
}

struct TorusMeasure {
    double value = 0;
    double err_bound = 0;
    TorusMethod method = TorusMethod::jensen;
    bool neg_infinity = false;  // set only by mahler_mixed on a zero fiber
};

/// h on T^k + F: one k-variable Laurent polynomial per group element.
struct FiberedPoly {
    int k = 1;
    FiniteAbelianGroup group;
    std::map<GroupElement, LaurentPoly> fibers;
};

// ---------------------------------------------------------------------------
// Univariate plumbing

/// Factor p = x^shift * q with q(0) != 0; returns (shift, q as IntPoly).
inline std::pair<long, IntPoly> to_univariate(const LaurentPoly& p) {
    p.check();
    if (p.k != 1) throw std::invalid_argument("to_univariate: k must be 1");
    if (p.is_zero()) throw std::invalid_argument("to_univariate: zero polynomial");
    int lo = p.terms.begin()->first[0];
    int hi = p.terms.rbegin()->first[0];
    std::vector<BigInt> c(static_cast<std::size_t>(hi - lo) + 1, BigInt(0));
    for (const auto& [e, coeff] : p.terms) c[static_cast<std::size_t>(e[0] - lo)] = coeff;
    return {lo, IntPoly(std::move(c))};
}

namespace detail {

/// All d >= 1 with phi(d) <= bound, via a smallest-prime-factor sieve.
inline std::vector<long> conductors_with_phi_up_to(long bound) {
    // phi(d) >= sqrt(d/2), so phi(d) <= bound forces d <= 2*bound^2.
    long limit = 2 * bound * bound + 1;
    std::vector<long> spf(static_cast<std::size_t>(limit) + 1, 0);
    for (long i = 2; i <= limit; ++i) {
        if (spf[static_cast<std::size_t>(i)]) continue;
        for (long j = i; j <= limit; j += i)
            if (!spf[static_cast<std::size_t>(j)]) spf[static_cast<std::size_t>(j)] = i;
    }
    std::vector<long> out;
    for (long d = 1; d <= limit; ++d) {
        long m = d, phi = 1;
        while (m > 1) {
            long p = spf[static_cast<std::size_t>(m)];
            phi *= p - 1;
            m /= p;
            while (m % p == 0) { phi *= p; m /= p; }
        }
        if (phi <= bound) out.push_back(d);
    }
    return out;
}

/// Divide out every cyclotomic factor (with multiplicity); returns the quotient.
inline IntPoly deflate_cyclotomic_factors(IntPoly q) {
    if (q.degree() < 1) return q;
    for (long d : conductors_with_phi_up_to(q.degree())) {
        if (euler_phi(d) > q.degree()) continue;
        const IntPoly phi = cyclotomic(d);
        while (q.degree() >= phi.degree()) {
            auto quo = divide_exact(q, phi);
            if (!quo) break;
            q = std::move(*quo);
        }
        if (q.degree() < 1) break;
    }
    return q;
}

struct AberthResult {
    std::vector<std::complex<double>> roots;
    double max_residual = 0;        // backward-error style, scale free
    double err_sum = 0;             // summed first-order error of log max(1,|z|)
};

/**
 * Aberth simultaneous iteration from perturbed unit-circle starting points.
 * Intended for squarefree input with coefficients representable in doubles.
 */
inline AberthResult aberth_roots(const IntPoly& p, double target_residual = 1e-12) {
    const int n = p.degree();
    std::vector<double> a(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) a[static_cast<std::size_t>(i)] = to_double(p[i]);

    std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double angle = 2.0 * std::numbers::pi * (j + 0.3) / n + 0.43;
        double radius = 1.0 + 0.08 * ((j % 5) - 2) / 5.0;
        z[static_cast<std::size_t>(j)] = std::polar(radius, angle);
    }

    auto horner2 = [&](std::complex<double> x) {
        std::complex<double> v(0, 0), d(0, 0);
        for (int i = n; i >= 0; --i) {
            d = d * x + v;
            v = v * x + a[static_cast<std::size_t>(i)];
        }
        return std::pair{v, d};
    };
    auto coeff_scale = [&](std::complex<double> x) {
        double s = 0, ax = std::abs(x), pw = 1;
        for (int i = 0; i <= n; ++i) {
            s += std::fabs(a[static_cast<std::size_t>(i)]) * pw;
            pw *= ax;
        }
        return s;
    };

    for (int iter = 0; iter < 800; ++iter) {
        double worst = 0;
        for (int j = 0; j < n; ++j) {
            auto& zj = z[static_cast<std::size_t>(j)];
            auto [pv, dv] = horner2(zj);
            if (std::abs(pv) == 0.0) continue;
            if (std::abs(dv) == 0.0) {  // stationary point; nudge off it
                zj += std::complex<double>(1e-8, 1e-8);
                worst = 1;
                continue;
            }
            std::complex<double> w = pv / dv;
            std::complex<double> sum(0, 0);
            for (int m = 0; m < n; ++m)
                if (m != j) sum += 1.0 / (zj - z[static_cast<std::size_t>(m)]);
            std::complex<double> denom = 1.0 - w * sum;
            std::complex<double> step = (std::abs(denom) < 1e-30) ? w : w / denom;
            zj -= step;
            worst = std::max(worst, std::abs(step) / (1.0 + std::abs(zj)));
        }
        if (worst < 5e-16) break;
    }

    AberthResult out;
    out.roots = z;
    for (int j = 0; j < n; ++j) {
        auto [pv, dv] = horner2(z[static_cast<std::size_t>(j)]);
        double scale = coeff_scale(z[static_cast<std::size_t>(j)]);
        out.max_residual = std::max(out.max_residual, std::abs(pv) / std::max(scale, 1e-300));
        double root_err = (std::abs(dv) > 0) ? static_cast<double>(n) * std::abs(pv) / std::abs(dv)
                                             : 1.0;
        double az = std::abs(z[static_cast<std::size_t>(j)]);
        if (az + root_err > 1.0) out.err_sum += root_err / std::max(az, 1.0);
    }
    if (out.max_residual > target_residual)
        throw std::runtime_error("aberth_roots: residual " + std::to_string(out.max_residual) +
                                 " above target");
    return out;
}

}  // namespace detail

/**
 * True iff p = +/- x^a * product of cyclotomic polynomials, decided exactly
 * by trial division by every Phi_d with phi(d) <= deg p. These are precisely
 * the integer polynomials with Mahler measure zero.
 */
inline bool is_kronecker(const LaurentPoly& p) {
    auto [shift, q] = to_univariate(p);
    (void)shift;
    if (big_abs(content(q)) != 1) return false;
    q = detail::deflate_cyclotomic_factors(std::move(q));
    return q.degree() == 0;  // remaining unit +/-1
}

/// Mahler measure over T by Jensen's formula with certified-residual roots.
inline TorusMeasure mahler_t1(const LaurentPoly& p) {
    auto [shift, q] = to_univariate(p);  // monomial factor contributes 0
    (void)shift;
    double value = log_abs(q.lead());
    double err = 1e-15 * (q.degree() + 1);
    // cyclotomic factors are monic and contribute 0, so deflating them
    // changes neither the lead nor the positive-root sum
    IntPoly body = detail::deflate_cyclotomic_factors(primitive_part(q));
    if (body.degree() >= 1) {
        for (const auto& [factor, mult] : squarefree_decomposition(body)) {
            detail::AberthResult r = detail::aberth_roots(factor);
            double part = 0;
            for (const auto& z : r.roots) {
                double az = std::abs(z);
                if (az > 1.0) part += std::log(az);
            }
            value += mult * part;
            err += mult * (r.err_sum + 1e-15 * (factor.degree() + 1));
        }
    }
    return TorusMeasure{value, err, TorusMethod::jensen, false};
}

/// Substitute x_i -> x^{r_i}; collects terms (coefficients may merge or cancel).
inline LaurentPoly lawton_specialize(const LaurentPoly& p, const std::vector<long>& r) {
    p.check();
    if (static_cast<int>(r.size()) != p.k)
        throw std::invalid_argument("lawton_specialize: r arity mismatch");
    LaurentPoly out;
    out.k = 1;
    for (const auto& [e, c] : p.terms) {
        long long ee = 0;
        for (int i = 0; i < p.k; ++i) ee += static_cast<long long>(e[static_cast<std::size_t>(i)]) * r[static_cast<std::size_t>(i)];
        std::vector<int> key{static_cast<int>(ee)};
        auto [it, inserted] = out.terms.try_emplace(key, c);
        if (!inserted) it->second += c;
    }
    std::erase_if(out.terms, [](const auto& kv) { return sgn(kv.second) == 0; });
    return out;
}

namespace detail {

/// Deterministic pairwise (tree) reduction over [lo, hi) of f.
inline double pairwise_sum(std::int64_t lo, std::int64_t hi,
                           const std::function<double(std::int64_t)>& f) {
    if (hi - lo <= 8) {
        double s = 0;
        for (std::int64_t i = lo; i < hi; ++i) s += f(i);
        return s;
    }
    std::int64_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(lo, mid, f) + pairwise_sum(mid, hi, f);
}

struct GridPass {
    double mean = 0;
    bool hit_zero = false;
};

inline GridPass grid_pass(const LaurentPoly& p, long M, double offset) {
    const int k = p.k;
    const std::size_t nterms = p.terms.size();
    // per-term, per-dimension tables: exp(2*pi*i * e * (j+offset)/M)
    std::vector<std::vector<std::vector<std::complex<double>>>> tab(nterms);
    std::vector<double> coeff(nterms);
    {
        std::size_t t = 0;
        for (const auto& [e, c] : p.terms) {
            coeff[t] = to_double(c);
            tab[t].resize(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) {
                auto& row = tab[t][static_cast<std::size_t>(i)];
                row.resize(static_cast<std::size_t>(M));
                for (long j = 0; j < M; ++j)
                    row[static_cast<std::size_t>(j)] = std::polar(
                        1.0, 2.0 * std::numbers::pi * e[static_cast<std::size_t>(i)] *
                                 ((j + offset) / static_cast<double>(M)));
            }
            ++t;
        }
    }
    std::int64_t total = 1;
    for (int i = 0; i < k; ++i) total *= M;

    GridPass out;
    bool zero = false;
    auto value_at = [&](std::int64_t flat) {
        std::int64_t rest = flat;
        std::array<long, 3> idx{0, 0, 0};
        for (int i = k - 1; i >= 0; --i) {
            idx[static_cast<std::size_t>(i)] = static_cast<long>(rest % M);
            rest /= M;
        }
        std::complex<double> v(0, 0);
        for (std::size_t t = 0; t < nterms; ++t) {
            std::complex<double> term(coeff[t], 0);
            for (int i = 0; i < k; ++i)
                term *= tab[t][static_cast<std::size_t>(i)][static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
            v += term;
        }
        double av = std::abs(v);
        if (av < 1e-300) {
            zero = true;
            return 0.0;
        }
        return std::log(av);
    };
    double sum = pairwise_sum(0, total, value_at);
    out.hit_zero = zero;
    out.mean = sum / static_cast<double>(total);
    return out;
}

inline double grid_mean(const LaurentPoly& p, long M) {
    for (double offset : {0.5, 0.37, 0.61, 0.23}) {
        GridPass g = grid_pass(p, M, offset);
        if (!g.hit_zero) return g.mean;
    }
    throw std::runtime_error("mahler_tk_grid: grid hit an exact zero at every offset");
}

}  // namespace detail

/**
 * Quadrature estimate of the T^k measure on the offset grid
 * s_i = (j_i + 1/2)/M; err_bound is the observed difference against the M/2
 * grid, not a proven bound.
 */
inline TorusMeasure mahler_tk_grid(const LaurentPoly& p, long M) {
    p.check();
    if (p.is_zero()) throw std::invalid_argument("mahler_tk_grid: zero polynomial");
    if (p.k > 3) throw std::invalid_argument("mahler_tk_grid: k must be <= 3");
    if (M < 8) throw std::invalid_argument("mahler_tk_grid: M must be >= 8");
    double fine = detail::grid_mean(p, M);
    double coarse = detail::grid_mean(p, M / 2);
    return TorusMeasure{fine, std::fabs(fine - coarse), TorusMethod::grid, false};
}

/**
 * Measure over T^k + F as the fiber average (1/|F|) sum_x m(fiber_x).
 * One-variable fibers go through the Kronecker test (exact zero) or Jensen;
 * higher k uses the grid. A zero fiber makes the whole measure -infinity.
 */
inline TorusMeasure mahler_mixed(const FiberedPoly& h, long grid_resolution = 1024) {
    const auto& G = h.group;
    double acc = 0, err = 0;
    bool any_grid = false;
    for (long long pos = 0; pos < G.order(); ++pos) {
        GroupElement x = G.element_at(pos);
        auto it = h.fibers.find(x);
        if (it == h.fibers.end() || it->second.is_zero()) {
            TorusMeasure out;
            out.neg_infinity = true;
            out.value = -std::numeric_limits<double>::infinity();
            out.method = TorusMethod::jensen;
            return out;
        }
        const LaurentPoly& fiber = it->second;
        if (static_cast<int>(fiber.k) != h.k)
            throw std::invalid_argument("mahler_mixed: fiber arity mismatch");
        if (h.k == 1) {
            if (is_kronecker(fiber)) continue;  // contributes exactly 0
            TorusMeasure m = mahler_t1(fiber);
            acc += m.value;
            err += m.err_bound;
        } else {
            TorusMeasure m = mahler_tk_grid(fiber, grid_resolution);
            acc += m.value;
            err += m.err_bound;
            any_grid = true;
        }
    }
    double n = static_cast<double>(G.order());
    return TorusMeasure{acc / n, err / n, any_grid ? TorusMethod::grid : TorusMethod::jensen, false};
}

}  // namespace lehmer
