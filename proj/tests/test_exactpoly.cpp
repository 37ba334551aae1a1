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

#include <complex>
#include <numbers>
#include <random>

#include "lehmer/exactpoly.hpp"

using namespace lehmer;

namespace {

IntPoly random_poly(std::mt19937& rng, int max_deg, int max_coeff) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    int d = deg(rng);
    std::vector<BigInt> c(static_cast<std::size_t>(d) + 1);
    for (auto& x : c) x = coeff(rng);
    while (sgn(c.back()) == 0) c.back() = coeff(rng);
    return IntPoly(std::move(c));
}

/// Independent totient: count residues coprime to n.
long phi_by_counting(long n) {
    long count = 0;
    for (long k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++count;
    return count;
}

/// Independent cyclotomic construction from primitive roots in floats.
IntPoly cyclotomic_by_roots(long n) {
    std::vector<std::complex<double>> coeffs{1.0};
    for (long j = 1; j <= n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        std::complex<double> root =
            std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
        std::vector<std::complex<double>> next(coeffs.size() + 1, 0.0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= coeffs[i] * root;
        }
        coeffs = std::move(next);
    }
    std::vector<BigInt> c;
    for (const auto& z : coeffs) {
        REQUIRE(std::fabs(z.imag()) < 1e-6);
        c.push_back(to_bigint(std::llround(z.real())));
    }
    return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("cyclotomic polynomials: known values") {
    CHECK(cyclotomic(1) == IntPoly{-1, 1});
    CHECK(cyclotomic(2) == IntPoly{1, 1});
    CHECK(cyclotomic(5) == IntPoly{1, 1, 1, 1, 1});
    CHECK(cyclotomic(12) == IntPoly{1, 0, -1, 0, 1});
    CHECK_THROWS_AS(cyclotomic(0), std::invalid_argument);
}

TEST_CASE("cyclotomic polynomials agree with the numeric-root construction") {
    for (long n : {3L, 8L, 12L, 15L, 30L}) CHECK(cyclotomic(n) == cyclotomic_by_roots(n));
}

TEST_CASE("product of Phi_d over divisors is x^n - 1, n <= 200") {
    for (long n = 1; n <= 200; ++n) {
        IntPoly prod{1};
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) prod = prod * cyclotomic(d);
        REQUIRE(prod == IntPoly::x_pow_minus_one(n));
    }
}

TEST_CASE("deg Phi_n = phi(n), n <= 200") {
    for (long n = 1; n <= 200; ++n) {
        REQUIRE(cyclotomic(n).degree() == phi_by_counting(n));
        REQUIRE(euler_phi(n) == phi_by_counting(n));
    }
}

TEST_CASE("resultant: known values") {
    CHECK(resultant(cyclotomic(5), IntPoly::x_pow_minus_one(6)) == 5);
    CHECK(resultant(cyclotomic(3), IntPoly::x_pow_minus_one(6)) == 0);
    CHECK(resultant(IntPoly{-2, 1}, IntPoly{-3, 1}) == -1);
    CHECK_THROWS_AS(resultant(IntPoly{}, IntPoly{1, 1}), std::invalid_argument);
}

TEST_CASE("resultant: swap symmetry and multiplicativity on random inputs") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        IntPoly p = random_poly(rng, 5, 4);
        IntPoly q = random_poly(rng, 5, 4);
        IntPoly r = random_poly(rng, 4, 3);
        long sign = (p.degree() % 2 && q.degree() % 2) ? -1 : 1;
        REQUIRE(resultant(p, q) == sign * resultant(q, p));
        REQUIRE(resultant(p, q * r) == resultant(p, q) * resultant(p, r));
    }
}

TEST_CASE("resultant against direct root evaluation for linear factors") {
    // Res(P, (x-a)(x-b)...) = prod P(a_i) when the second factor is monic
    std::mt19937 rng(777);
    std::uniform_int_distribution<long> small(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        IntPoly p = random_poly(rng, 4, 5);
        long a = small(rng), b = small(rng);
        IntPoly q = IntPoly{-a, 1} * IntPoly{-b, 1};
        BigInt pa(0), pb(0);
        for (int i = p.degree(); i >= 0; --i) pa = pa * a + p[i];
        for (int i = p.degree(); i >= 0; --i) pb = pb * b + p[i];
        // q monic: Res(q, p) = p(a) * p(b)
        REQUIRE(resultant(q, p) == pa * pb);
    }
}

TEST_CASE("gcd and squarefree decomposition") {
    IntPoly xm1{-1, 1}, xp2{2, 1};
    IntPoly f = xm1 * xm1 * xp2;
    CHECK(poly_gcd(f, derivative(f)) == xm1);
    auto parts = squarefree_decomposition(f);
    REQUIRE(parts.size() == 2);
    IntPoly rebuilt{1};
    for (const auto& [factor, mult] : parts)
        for (int i = 0; i < mult; ++i) rebuilt = rebuilt * factor;
    CHECK((rebuilt == f || rebuilt == -f));
    CHECK(parts[0] == std::pair{xp2, 1});
    CHECK(parts[1] == std::pair{xm1, 2});
}

TEST_CASE("divide_exact recovers factors and rejects non-divisors") {
    std::mt19937 rng(999);
    for (int trial = 0; trial < 100; ++trial) {
        IntPoly p = random_poly(rng, 6, 6);
        IntPoly q = random_poly(rng, 4, 6);
        auto quo = divide_exact(p * q, q);
        REQUIRE(quo.has_value());
        REQUIRE(*quo == p);
    }
    CHECK_FALSE(divide_exact(IntPoly{1, 0, 1}, IntPoly{1, 1}).has_value());
}

TEST_CASE("cyclotomic ring: worked examples") {
    // zeta_4^2 = -1
    CHECK(CycloElem(4, IntPoly{0, 1}) * CycloElem(4, IntPoly{0, 1}) ==
          CycloElem::constant(4, BigInt(-1)));
    // zeta_3^2 = -1 - zeta_3
    CHECK(CycloElem(3, IntPoly{0, 1}) * CycloElem(3, IntPoly{0, 1}) ==
          CycloElem(3, IntPoly{-1, -1}));
    // multiplicative identity
    CycloElem a(8, IntPoly{3, -2, 0, 1});
    CHECK(a * CycloElem::constant(8, BigInt(1)) == a);
    // conductor mismatch
    CHECK_THROWS_AS(CycloElem(3, IntPoly{1}) * CycloElem(4, IntPoly{1}), std::invalid_argument);
}

TEST_CASE("cyclotomic ring: from_exponents") {
    // 1 + zeta_2 = 0
    CHECK(CycloElem::from_exponents(2, {{0, BigInt(1)}, {1, BigInt(1)}}).is_zero());
    // 2 + zeta_4 stays x + 2
    CHECK(CycloElem::from_exponents(4, {{0, BigInt(2)}, {1, BigInt(1)}}) ==
          CycloElem(4, IntPoly{2, 1}));
    // conductor 1: constants
    CHECK(CycloElem::from_exponents(1, {{0, BigInt(7)}}) == CycloElem::constant(1, BigInt(7)));
    CHECK_THROWS_AS(CycloElem::from_exponents(4, {{4, BigInt(1)}}), std::invalid_argument);
}

TEST_CASE("cyclotomic ring is a commutative ring (randomized, N <= 24)") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<long> pickN(1, 24);
    std::uniform_int_distribution<int> coeff(-6, 6);
    for (int trial = 0; trial < 300; ++trial) {
        long N = pickN(rng);
        auto rand_elem = [&] {
            std::vector<BigInt> c(static_cast<std::size_t>(std::max<long>(1, euler_phi(N))));
            for (auto& x : c) x = coeff(rng);
            return CycloElem(N, IntPoly(std::move(c)));
        };
        CycloElem a = rand_elem(), b = rand_elem(), c = rand_elem();
        REQUIRE(a * b == b * a);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("eval_complex: worked examples") {
    CHECK(std::abs(eval_complex(IntPoly{1, 0, 1}, {0.0, 1.0})) < 1e-15);
    CHECK(eval_complex(IntPoly{-2, 1}, {0.0, 0.0}) == std::complex<double>(-2.0, 0.0));
    CHECK(std::abs(eval_complex(cyclotomic(3), {1.0, 0.0}) - std::complex<double>(3.0, 0.0)) < 1e-12);
}

TEST_CASE("CycloElem rep evaluated at a primitive root matches the exponent sum") {
    std::mt19937 rng(555);
    std::uniform_int_distribution<long> pickN(1, 100);
    std::uniform_int_distribution<long> coeff(-1000, 1000);
    for (int trial = 0; trial < 100; ++trial) {
        long N = pickN(rng);
        std::vector<std::pair<long, BigInt>> terms;
        std::uniform_int_distribution<long> pickE(0, N - 1);
        for (int t = 0; t < 8; ++t) terms.emplace_back(pickE(rng), BigInt(coeff(rng)));
        CycloElem v = CycloElem::from_exponents(N, terms);
        std::complex<double> zeta =
            std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(N));
        std::complex<double> direct(0, 0);
        for (const auto& [e, c] : terms)
            direct += to_double(c) * std::polar(1.0, 2.0 * std::numbers::pi *
                                                         static_cast<double>(e) / static_cast<double>(N));
        std::complex<double> via_rep = eval_complex(v.rep(), zeta);
        REQUIRE(std::abs(direct - via_rep) < 1e-9);
    }
}

TEST_CASE("coefficient list parsing") {
    auto v = parse_coeff_list("1,1,0,-1");
    REQUIRE(v.size() == 4);
    CHECK(v[0] == 1);
    CHECK(v[3] == -1);
    CHECK_THROWS_WITH(parse_coeff_list("1,x,3"), Catch::Matchers::ContainsSubstring("x"));
    CHECK_THROWS_AS(parse_coeff_list(""), std::invalid_argument);
}

TEST_CASE("smallest prime not dividing") {
    CHECK(smallest_prime_not_dividing(2) == 3);
    CHECK(smallest_prime_not_dividing(105) == 2);
    CHECK(smallest_prime_not_dividing(210) == 11);
}
