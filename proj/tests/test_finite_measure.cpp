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

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "lehmer/finite_measure.hpp"
#include "lehmer/lehmer_search.hpp"

using namespace lehmer;

namespace {

std::vector<std::vector<long>> presentations(long lo, long hi) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    auto rec = [&](auto&& self, long remaining_max, long product) -> void {
        if (product >= lo && product <= hi) out.push_back(cur);
        for (long f = 2; f <= remaining_max && product * f <= hi; ++f) {
            cur.push_back(f);
            self(self, f, product * f);
            cur.pop_back();
        }
    };
    rec(rec, hi, 1);
    return out;
}

CharPoly random_charpoly(std::mt19937& rng, const FiniteAbelianGroup& G, int max_coeff) {
    std::uniform_int_distribution<long> coeff(-max_coeff, max_coeff);
    std::vector<BigInt> v(static_cast<std::size_t>(G.order()));
    bool nonzero = false;
    for (auto& x : v) {
        long c = coeff(rng);
        x = c;
        nonzero = nonzero || c != 0;
    }
    if (!nonzero) v[0] = 1;
    return CharPoly::from_dense(G, v);
}

const ExactMeasure& exact_of(const MeasureValue& m) { return std::get<ExactMeasure>(m); }

}  // namespace

TEST_CASE("value_at: worked examples on Z/2") {
    FiniteAbelianGroup z2({2});
    CharPoly f{z2, {{Character{{0}}, 2}, {Character{{1}}, 1}}};
    CHECK(value_at(f, GroupElement{{0}}) == CycloElem::constant(2, BigInt(3)));
    CHECK(value_at(f, GroupElement{{1}}) == CycloElem::constant(2, BigInt(1)));

    CharPoly g{z2, {{Character{{0}}, 1}, {Character{{1}}, 1}}};
    CHECK(value_at(g, GroupElement{{1}}).is_zero());
}

TEST_CASE("norm_integer: worked examples") {
    FiniteAbelianGroup z2({2});
    CharPoly f{z2, {{Character{{0}}, 2}, {Character{{1}}, 1}}};
    auto out = norm_integer(f);
    REQUIRE(std::holds_alternative<NormCertificate>(out));
    CHECK(std::get<NormCertificate>(out).value == 3);
    CHECK(std::get<NormCertificate>(out).residual_degree == 0);

    FiniteAbelianGroup z3({3});
    CharPoly g{z3, {{Character{{0}}, 1}, {Character{{1}}, 1}}};
    CHECK(std::get<NormCertificate>(norm_integer(g)).value == 2);

    FiniteAbelianGroup z22({2, 2});
    CharPoly h{z22, {{Character{{0, 0}}, 1}, {Character{{0, 1}}, 1}, {Character{{1, 0}}, 1}}};
    CHECK(std::get<NormCertificate>(norm_integer(h)).value == 3);
}

TEST_CASE("mahler_finite: worked examples") {
    FiniteAbelianGroup z4({4});
    auto m = mahler_finite(CharPoly::from_dense_longs(z4, {1, 1, 1, 0}));
    CHECK(exact_of(m) == ExactMeasure{BigInt(3), 4});

    FiniteAbelianGroup z3({3});
    CHECK(exact_of(mahler_finite(CharPoly::from_dense_longs(z3, {1, 1, 0}))) ==
          ExactMeasure{BigInt(2), 3});

    FiniteAbelianGroup z2({2});
    CHECK(std::holds_alternative<NegInfinity>(
        mahler_finite(CharPoly::from_dense_longs(z2, {1, 1}))));

    CHECK_THROWS_AS(mahler_finite(CharPoly{z2, {}}), std::invalid_argument);

    // trivial group: measure of the constant c is log|c|
    FiniteAbelianGroup triv;
    CHECK(exact_of(mahler_finite(CharPoly::from_dense_longs(triv, {-5}))) ==
          ExactMeasure{BigInt(5), 1});
}

TEST_CASE("resultant_norm_cyclic: worked examples") {
    FiniteAbelianGroup z3({3});
    CHECK(resultant_norm_cyclic(3, CharPoly::from_dense_longs(z3, {1, 1, 0})) == -2);

    FiniteAbelianGroup z2({2});
    CHECK(big_abs(resultant_norm_cyclic(2, CharPoly::from_dense_longs(z2, {2, 1}))) == 3);

    FiniteAbelianGroup z4({4});
    CHECK(big_abs(resultant_norm_cyclic(4, CharPoly::from_dense_longs(z4, {1, 1, 1, 0}))) == 3);
}

TEST_CASE("lemma44_witness measures log(|F|-1)/|F| for every presentation of order 3..12") {
    CHECK(exact_of(mahler_finite(lemma44_witness(FiniteAbelianGroup({5})))) ==
          ExactMeasure{BigInt(4), 5});
    CHECK(exact_of(mahler_finite(lemma44_witness(FiniteAbelianGroup({3})))) ==
          ExactMeasure{BigInt(2), 3});
    CHECK(exact_of(mahler_finite(lemma44_witness(FiniteAbelianGroup({2, 2})))) ==
          ExactMeasure{BigInt(3), 4});
    CHECK_THROWS_AS(lemma44_witness(FiniteAbelianGroup({2})), std::invalid_argument);

    for (const auto& factors : presentations(3, 12)) {
        FiniteAbelianGroup F(factors);
        auto m = mahler_finite(lemma44_witness(F));
        REQUIRE(exact_of(m) == (ExactMeasure{to_bigint(F.order() - 1), F.order()}));
    }
}

TEST_CASE("theorem46_witness: folded cyclotomic coefficients and measures") {
    CharPoly f4 = theorem46_witness(4);
    CHECK(f4.coeffs == std::map<Character, BigInt>{
                           {Character{{0}}, 1}, {Character{{1}}, 1}, {Character{{2}}, 1}});
    CHECK(exact_of(mahler_finite(f4)) == ExactMeasure{BigInt(3), 4});

    CharPoly f9 = theorem46_witness(9);
    CHECK(f9.coeffs ==
          std::map<Character, BigInt>{{Character{{0}}, 1}, {Character{{1}}, 1}});
    CHECK(exact_of(mahler_finite(f9)) == ExactMeasure{BigInt(2), 9});

    CHECK(exact_of(mahler_finite(theorem46_witness(6))) == ExactMeasure{BigInt(5), 6});
}

TEST_CASE("resultant identity Res(Phi_rho(n), x^n - 1) = rho(n) for 2 <= n <= 30") {
    for (long n = 2; n <= 30; ++n) {
        long p = rho(n);
        CHECK(resultant(cyclotomic(p), IntPoly::x_pow_minus_one(n)) == p);
        CHECK(exact_of(mahler_finite(theorem46_witness(n))) == (ExactMeasure{BigInt(p), n}));
    }
}

TEST_CASE("compare_measure: exact cross-power ordering") {
    MeasureValue a = ExactMeasure{BigInt(3), 4};  // (1/4) log 3
    MeasureValue b = ExactMeasure{BigInt(2), 3};  // (1/3) log 2
    CHECK(compare_measure(a, b) == std::strong_ordering::greater);  // 27 > 16
    CHECK(compare_measure(MeasureValue{ExactMeasure{BigInt(1), 7}},
                          MeasureValue{ExactMeasure{BigInt(1), 2}}) ==
          std::strong_ordering::equal);
    CHECK(compare_measure(MeasureValue{NegInfinity{}},
                          MeasureValue{ExactMeasure{BigInt(1), 1}}) ==
          std::strong_ordering::less);
    CHECK_THROWS_AS(compare_measure(MeasureValue{NumericMeasure{0.5, 0.1}}, a),
                    std::invalid_argument);
}

TEST_CASE("positivity: 10^4 random cases are -infinity or >= 0") {
    std::mt19937 rng(20260809);
    auto pres = presentations(1, 12);
    std::uniform_int_distribution<std::size_t> pick(0, pres.size() - 1);
    for (int trial = 0; trial < 10000; ++trial) {
        FiniteAbelianGroup G(pres[pick(rng)]);
        CharPoly f = random_charpoly(rng, G, 5);
        MeasureValue m = mahler_finite(f);
        if (std::holds_alternative<NegInfinity>(m)) continue;
        REQUIRE(exact_of(m).norm_abs >= 1);
    }
}

TEST_CASE("norm multiplicativity: N(f*g) = N(f) N(g) via convolution product") {
    std::mt19937 rng(31337);
    auto pres = presentations(1, 8);
    std::uniform_int_distribution<std::size_t> pick(0, pres.size() - 1);
    for (int trial = 0; trial < 300; ++trial) {
        FiniteAbelianGroup G(pres[pick(rng)]);
        CharPoly f = random_charpoly(rng, G, 3);
        CharPoly g = random_charpoly(rng, G, 3);
        CharPoly fg = mul(f, g);
        auto nf = norm_integer(f), ng = norm_integer(g);
        if (fg.is_zero()) continue;  // pointwise product identically zero
        auto nfg = norm_integer(fg);
        if (std::holds_alternative<VanishesFlag>(nf) || std::holds_alternative<VanishesFlag>(ng)) {
            REQUIRE(std::holds_alternative<VanishesFlag>(nfg));
        } else {
            REQUIRE(std::get<NormCertificate>(nfg).value ==
                    std::get<NormCertificate>(nf).value * std::get<NormCertificate>(ng).value);
        }
    }
}

TEST_CASE("oracle equivalence: |norm_integer| = |resultant_norm_cyclic| on 10^3 cyclic cases") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<long> pickN(1, 12);
    for (int trial = 0; trial < 1000; ++trial) {
        long n = pickN(rng);
        FiniteAbelianGroup G = n == 1 ? FiniteAbelianGroup{} : FiniteAbelianGroup({n});
        CharPoly f = random_charpoly(rng, G, 5);
        auto out = norm_integer(f);
        BigInt res = resultant_norm_cyclic(G.order(), f);
        if (std::holds_alternative<VanishesFlag>(out)) {
            REQUIRE(res == 0);
        } else {
            REQUIRE(big_abs(std::get<NormCertificate>(out).value) == big_abs(res));
        }
    }
}

TEST_CASE("quotient pullback: measures agree along Z/n -> Z/m for all m | n <= 12") {
    std::mt19937 rng(987);
    for (long n = 2; n <= 12; ++n) {
        for (long m = 1; m <= n; ++m) {
            if (n % m) continue;
            FiniteAbelianGroup Gm = m == 1 ? FiniteAbelianGroup{} : FiniteAbelianGroup({m});
            for (int trial = 0; trial < 25; ++trial) {
                CharPoly f = random_charpoly(rng, Gm, 4);
                CharPoly lifted = pullback_cyclic(f, n);
                MeasureValue base = mahler_finite(f);
                MeasureValue up = mahler_finite(lifted);
                REQUIRE(compare_measure(base, up) == std::strong_ordering::equal);
            }
        }
    }
}

TEST_CASE("symmetry invariance: negation, translations, automorphisms (orders <= 8)") {
    std::mt19937 rng(1618);
    for (const auto& factors : presentations(1, 8)) {
        FiniteAbelianGroup G(factors);
        auto chars = enumerate_characters(G);
        auto auts = automorphism_index_maps(G);
        for (int trial = 0; trial < 30; ++trial) {
            CharPoly f = random_charpoly(rng, G, 4);
            MeasureValue base = mahler_finite(f);
            auto dense = f.dense();

            // global negation
            {
                std::vector<BigInt> neg(dense.size());
                for (std::size_t i = 0; i < dense.size(); ++i) neg[i] = -dense[i];
                REQUIRE(compare_measure(base, mahler_finite(CharPoly::from_dense(G, neg))) ==
                        std::strong_ordering::equal);
            }
            // every translation chi -> chi + t
            for (std::size_t t = 0; t < chars.size(); ++t) {
                std::vector<BigInt> moved(dense.size());
                for (std::size_t p = 0; p < dense.size(); ++p) {
                    auto shifted = G.add(chars[p], chars[t]);
                    moved[static_cast<std::size_t>(G.position_of(shifted))] = dense[p];
                }
                REQUIRE(compare_measure(base, mahler_finite(CharPoly::from_dense(G, moved))) ==
                        std::strong_ordering::equal);
            }
            // every automorphism relabeling
            for (const auto& aut : auts) {
                std::vector<BigInt> relabeled(dense.size());
                for (std::size_t p = 0; p < dense.size(); ++p)
                    relabeled[static_cast<std::size_t>(aut[p])] = dense[p];
                REQUIRE(compare_measure(base, mahler_finite(CharPoly::from_dense(G, relabeled))) ==
                        std::strong_ordering::equal);
            }
        }
    }
}

TEST_CASE("measures agree across isomorphic presentations Z/6 and Z/2+Z/3") {
    std::mt19937 rng(55);
    FiniteAbelianGroup z6({6});
    FiniteAbelianGroup z23({2, 3});
    for (int trial = 0; trial < 100; ++trial) {
        CharPoly f = random_charpoly(rng, z6, 4);
        // chi_(a,b) on Z/2+Z/3 corresponds to chi_{3a+2b mod 6} on Z/6
        CharPoly g{z23, {}};
        for (long a = 0; a < 2; ++a)
            for (long b = 0; b < 3; ++b) {
                auto it = f.coeffs.find(Character{{(3 * a + 2 * b) % 6}});
                if (it != f.coeffs.end()) g.coeffs[Character{{a, b}}] = it->second;
            }
        REQUIRE(compare_measure(mahler_finite(f), mahler_finite(g)) ==
                std::strong_ordering::equal);
    }
}

TEST_CASE("float shadow tracks |N(f)| within 1e-6 below 10^12") {
    std::mt19937 rng(909);
    auto pres = presentations(1, 10);
    std::uniform_int_distribution<std::size_t> pick(0, pres.size() - 1);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        FiniteAbelianGroup G(pres[pick(rng)]);
        CharPoly f = random_charpoly(rng, G, 5);
        auto out = norm_integer(f);
        if (!std::holds_alternative<NormCertificate>(out)) continue;
        const auto& cert = std::get<NormCertificate>(out);
        BigInt a = big_abs(cert.value);
        if (a == 0 || a >= BigInt(1000000000000L)) continue;
        double exact = to_double(a);
        REQUIRE(std::fabs(cert.float_shadow - exact) / exact < 1e-6);
        ++checked;
    }
    REQUIRE(checked > 500);
}

TEST_CASE("from_dense rejects wrong coefficient counts") {
    FiniteAbelianGroup z4({4});
    CHECK_THROWS_AS(CharPoly::from_dense_longs(z4, {1, 2}), std::invalid_argument);
}
