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
 * @file finite_measure.hpp
 * @brief Exact logarithmic Mahler measure over a finite abelian group.
 *
 * For f = sum a_chi * chi with integer coefficients, the measure over F is
 *
 *     m(f) = (1/|F|) * sum_{x in F} log|f(x)| = (1/|F|) * log|N(f)|,
 *
 * where N(f) = prod_{x in F} f(x). Each value f(x) lives in Z[zeta_N] with N
 * the exponent of F, and the product over the whole group is Galois-stable,
 * hence a rational integer. The product is accumulated in Z[x]/Phi_N with
 * reduction after every factor, and the degree-0 outcome is asserted at
 * runtime rather than assumed; a failure would mean a bug, not bad input.
 *
 * Measures are carried around exactly: Exact(a, m) means (1/m) log a, and two
 * exact measures compare through the integer comparison a^n vs b^m. Floats
 * appear only as advisory shadows.
 */

#pragma once

#include <compare>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lehmer/bigint.hpp"
#include "lehmer/exactpoly.hpp"
#include "lehmer/groups.hpp"

namespace lehmer {

/// f in Z[G^] as a character -> coefficient map; absent means 0.
struct CharPoly {
    FiniteAbelianGroup group;
    std::map<Character, BigInt> coeffs;

    bool is_zero() const {
        for (const auto& [chi, c] : coeffs)
            if (sgn(c) != 0) return false;
        return true;
    }

    /// Dense coefficients in canonical character order.
    std::vector<BigInt> dense() const {
        std::vector<BigInt> v(static_cast<std::size_t>(group.order()), BigInt(0));
        for (const auto& [chi, c] : coeffs) {
            if (!group.valid(chi)) throw std::invalid_argument("CharPoly: character invalid for group");
            v[static_cast<std::size_t>(group.position_of(chi))] = c;
        }
        return v;
    }

    static CharPoly from_dense(const FiniteAbelianGroup& G, const std::vector<BigInt>& v) {
        if (v.size() != static_cast<std::size_t>(G.order()))
            throw std::invalid_argument("from_dense: expected " + std::to_string(G.order()) +
                                        " coefficients, got " + std::to_string(v.size()));
        CharPoly f{G, {}};
        for (std::size_t p = 0; p < v.size(); ++p)
            if (sgn(v[p]) != 0) f.coeffs[G.character_at(static_cast<long long>(p))] = v[p];
        return f;
    }

    static CharPoly from_dense_longs(const FiniteAbelianGroup& G, const std::vector<long>& v) {
        std::vector<BigInt> b(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) b[i] = v[i];
        return from_dense(G, b);
    }
};

/// Pointwise product on the group = convolution of coefficient maps in G^.
inline CharPoly mul(const CharPoly& f, const CharPoly& g) {
    if (!(f.group == g.group)) throw std::invalid_argument("CharPoly mul: group mismatch");
    CharPoly h{f.group, {}};
    for (const auto& [a, ca] : f.coeffs) {
        if (sgn(ca) == 0) continue;
        for (const auto& [b, cb] : g.coeffs) {
            if (sgn(cb) == 0) continue;
            Character sum = f.group.add(a, b);
            auto [it, inserted] = h.coeffs.try_emplace(sum, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    std::erase_if(h.coeffs, [](const auto& kv) { return sgn(kv.second) == 0; });
    return h;
}

// ---------------------------------------------------------------------------
// Measure values

struct NegInfinity {
    bool operator==(const NegInfinity&) const = default;
};

/// m = (1/order) * log(norm_abs); norm_abs = 1 encodes exactly zero.
struct ExactMeasure {
    BigInt norm_abs;
    long long order = 1;
    bool operator==(const ExactMeasure&) const = default;
};

struct NumericMeasure {
    double value = 0;
    double err_bound = 0;
    bool operator==(const NumericMeasure&) const = default;
};

using MeasureValue = std::variant<NegInfinity, ExactMeasure, NumericMeasure>;

inline MeasureValue make_exact(BigInt norm_abs, long long order) {
    if (sgn(norm_abs) < 1) throw std::invalid_argument("ExactMeasure: norm_abs must be >= 1");
    if (order < 1) throw std::invalid_argument("ExactMeasure: order must be >= 1");
    return ExactMeasure{std::move(norm_abs), order};
}

inline double to_double(const MeasureValue& m) {
    if (std::holds_alternative<NegInfinity>(m)) return -std::numeric_limits<double>::infinity();
    if (const auto* e = std::get_if<ExactMeasure>(&m))
        return log_abs(e->norm_abs) / static_cast<double>(e->order);
    return std::get<NumericMeasure>(m).value;
}

/**
 * Exact ordering. NegInfinity sorts below every Exact value; Exact(a, m) vs
 * Exact(b, n) is decided by the integer comparison a^n vs b^m. Numeric values
 * refuse to participate: ordering a float against an exact value silently
 * would defeat the point of carrying exact values.
 */
inline std::strong_ordering compare_measure(const MeasureValue& lhs, const MeasureValue& rhs) {
    if (std::holds_alternative<NumericMeasure>(lhs) || std::holds_alternative<NumericMeasure>(rhs))
        throw std::invalid_argument("compare_measure: refusing to order Numeric against Exact");
    const bool li = std::holds_alternative<NegInfinity>(lhs);
    const bool ri = std::holds_alternative<NegInfinity>(rhs);
    if (li || ri) {
        if (li && ri) return std::strong_ordering::equal;
        return li ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    const auto& a = std::get<ExactMeasure>(lhs);
    const auto& b = std::get<ExactMeasure>(rhs);
    BigInt left = big_pow(a.norm_abs, static_cast<unsigned long>(b.order));
    BigInt right = big_pow(b.norm_abs, static_cast<unsigned long>(a.order));
    int c = cmp(left, right);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Norms

/// Exact integer norm with its runtime Galois certificate.
struct NormCertificate {
    BigInt value;          // N(f) = prod_x f(x), signed
    int residual_degree;   // always 0: the reduced product is a constant
    double float_shadow;   // advisory |N(f)| estimate from double arithmetic
};

struct VanishesFlag {
    bool operator==(const VanishesFlag&) const = default;
};

using NormOutcome = std::variant<NormCertificate, VanishesFlag>;

/// f evaluated at x, as an exact element of Z[zeta_N].
inline CycloElem value_at(const CharPoly& f, const GroupElement& x) {
    const auto& G = f.group;
    if (!G.valid(x)) throw std::invalid_argument("value_at: element invalid for group");
    const long N = static_cast<long>(G.exponent());
    std::vector<std::pair<long, BigInt>> terms;
    terms.reserve(f.coeffs.size());
    for (const auto& [chi, c] : f.coeffs) {
        if (sgn(c) == 0) continue;
        terms.emplace_back(static_cast<long>(pairing(G, chi, x)), c);
    }
    return CycloElem::from_exponents(N, terms);
}

/**
 * N(f) = prod_{x in F} f(x), computed in Z[x]/Phi_N with reduction after
 * every factor. Returns VanishesFlag if any factor is exactly zero; otherwise
 * certifies that the reduced product has degree 0 and returns its value.
 */
inline NormOutcome norm_integer(const CharPoly& f) {
    const auto& G = f.group;
    const long N = static_cast<long>(G.exponent());

    // unit-circle table for the advisory float shadow
    std::vector<std::complex<double>> unit(static_cast<std::size_t>(N));
    for (long e = 0; e < N; ++e)
        unit[static_cast<std::size_t>(e)] =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(N));

    CycloElem prod = CycloElem::constant(N, BigInt(1));
    double shadow = 1.0;
    for (long long p = 0; p < G.order(); ++p) {
        GroupElement x = G.element_at(p);
        std::vector<std::pair<long, BigInt>> terms;
        std::complex<double> approx(0.0, 0.0);
        for (const auto& [chi, c] : f.coeffs) {
            if (sgn(c) == 0) continue;
            long e = static_cast<long>(pairing(G, chi, x));
            terms.emplace_back(e, c);
            approx += to_double(c) * unit[static_cast<std::size_t>(e)];
        }
        CycloElem v = CycloElem::from_exponents(N, terms);
        if (v.is_zero()) return VanishesFlag{};
        prod = prod * v;
        shadow *= std::abs(approx);
    }
    if (prod.is_zero())
        throw std::logic_error("norm_integer: zero product from nonzero factors (ring bug)");
    auto val = prod.as_integer();
    if (!val)
        throw std::logic_error("norm_integer: Galois certificate failed, residual degree " +
                               std::to_string(prod.rep().degree()));
    return NormCertificate{*val, 0, shadow};
}

/// m(f) over the finite group carrying f. Rejects the zero map.
inline MeasureValue mahler_finite(const CharPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("mahler_finite: zero map has no measure");
    NormOutcome out = norm_integer(f);
    if (std::holds_alternative<VanishesFlag>(out)) return NegInfinity{};
    return make_exact(big_abs(std::get<NormCertificate>(out).value), f.group.order());
}

/**
 * Independent route for cyclic groups: N(f) equals Res(F(x), x^n - 1) up to
 * sign, where F = sum a_k x^k. Used as a cross-check oracle for norm_integer.
 */
inline BigInt resultant_norm_cyclic(long n, const CharPoly& f) {
    if (!f.group.is_cyclic() || f.group.order() != n)
        throw std::invalid_argument("resultant_norm_cyclic: group must be Z/" + std::to_string(n));
    std::vector<BigInt> c(static_cast<std::size_t>(n), BigInt(0));
    for (const auto& [chi, coeff] : f.coeffs) {
        long k = f.group.is_trivial() ? 0 : chi.index[0];
        c[static_cast<std::size_t>(k)] += coeff;
    }
    IntPoly F(std::move(c));
    if (F.is_zero()) throw std::invalid_argument("resultant_norm_cyclic: zero map");
    return resultant(F, IntPoly::x_pow_minus_one(n));
}

/**
 * The all-characters-but-trivial witness: f = sum_chi chi - chi_0 takes the
 * value |F|-1 at the identity and -1 elsewhere, so m(f) = log(|F|-1)/|F|.
 * Requires |F| >= 3 (below that the measure is not positive).
 */
inline CharPoly lemma44_witness(const FiniteAbelianGroup& F) {
    if (F.order() < 3) throw std::invalid_argument("lemma44_witness: needs |F| >= 3");
    CharPoly f{F, {}};
    for (long long p = 1; p < F.order(); ++p) f.coeffs[F.character_at(p)] = 1;
    return f;
}

/**
 * Cyclic witness from the cyclotomic polynomial of p = rho(n), the smallest
 * prime not dividing n: fold the coefficients of Phi_p along exponents mod n.
 * Its measure is exactly (1/n) log rho(n).
 */
inline CharPoly theorem46_witness(long n, long p) {
    if (n < 2) throw std::invalid_argument("theorem46_witness: needs n >= 2");
    FiniteAbelianGroup G({n});
    IntPoly phi = cyclotomic(p);
    CharPoly f{G, {}};
    for (int m = 0; m <= phi.degree(); ++m) {
        if (sgn(phi[m]) == 0) continue;
        Character chi{{m % n}};
        auto [it, inserted] = f.coeffs.try_emplace(chi, phi[m]);
        if (!inserted) it->second += phi[m];
    }
    std::erase_if(f.coeffs, [](const auto& kv) { return sgn(kv.second) == 0; });
    return f;
}

inline CharPoly theorem46_witness(long n) {
    if (n < 2) throw std::invalid_argument("theorem46_witness: needs n >= 2");
    return theorem46_witness(n, smallest_prime_not_dividing(n));
}

/// Pull f on Z/m back along the quotient Z/n -> Z/m (m | n): chi_k -> chi_{k n/m}.
inline CharPoly pullback_cyclic(const CharPoly& f, long n) {
    if (!f.group.is_cyclic()) throw std::invalid_argument("pullback_cyclic: base group must be cyclic");
    long m = static_cast<long>(f.group.order());
    if (m == 0 || n % m != 0) throw std::invalid_argument("pullback_cyclic: m must divide n");
    FiniteAbelianGroup Gn({n});
    CharPoly g{Gn, {}};
    for (const auto& [chi, c] : f.coeffs) {
        long k = f.group.is_trivial() ? 0 : chi.index[0];
        g.coeffs[Character{{k * (n / m) % n}}] = c;
    }
    return g;
}

}  // namespace lehmer
