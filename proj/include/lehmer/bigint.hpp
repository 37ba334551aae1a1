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
 * @file bigint.hpp
 * @brief Arbitrary-precision signed integers.
 *
 * All exact arithmetic in the library runs on GMP's mpz_class. The helpers
 * here cover the handful of operations gmpxx does not expose ergonomically:
 * integer powers, decimal (de)serialization, and a log that cannot overflow
 * a double no matter how many limbs the value has.
 */

#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace lehmer {

using BigInt = mpz_class;

// mpz_class has no long long constructor; on this library's targets long is
// 64-bit, so the cast below is lossless.
inline BigInt to_bigint(long long v) {
    static_assert(sizeof(long) == sizeof(long long));
    return BigInt(static_cast<long>(v));
}
inline BigInt to_bigint(unsigned long long v) {
    static_assert(sizeof(unsigned long) == sizeof(unsigned long long));
    return BigInt(static_cast<unsigned long>(v));
}

inline BigInt big_pow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline BigInt big_abs(const BigInt& a) {
    BigInt r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Decimal string, round-trippable through from_decimal.
inline std::string to_decimal(const BigInt& a) { return a.get_str(10); }

inline BigInt from_decimal(const std::string& s) {
    BigInt r;
    if (s.empty() || mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
        throw std::invalid_argument("not a decimal integer: \"" + s + "\"");
    return r;
}

/// log|a| as a double, safe for values far beyond double range. a must be nonzero.
inline double log_abs(const BigInt& a) {
    if (sgn(a) == 0) throw std::domain_error("log_abs(0)");
    signed long exp2;
    double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp2) * M_LN2;
}

/// Nearest-double value of a; loses precision beyond 2^53 but never overflows silently to garbage.
inline double to_double(const BigInt& a) { return mpz_get_d(a.get_mpz_t()); }

}  // namespace lehmer
