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
 * @file exactpoly.hpp
 * @brief Exact integer-polynomial arithmetic.
 *
 * Dense polynomials over arbitrary-precision integers, with the pieces of
 * exact computer algebra this library leans on:
 *
 *  - cyclotomic polynomials Phi_n by recursive exact division of x^n - 1,
 *    memoized behind a lock;
 *  - resultants via the fraction-free subresultant PRS (Cohen, "A Course in
 *    Computational Algebraic Number Theory", Alg. 3.3.7), so every resultant
 *    is an exact integer;
 *  - gcd / Yun squarefree decomposition over Z[x];
 *  - arithmetic in Z[x]/Phi_N(x), the ring where character values of a group
 *    with exponent N live. Elements are reduced after every multiplication,
 *    which keeps coefficient growth bounded by a function of phi(N) and the
 *    operand heights.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lehmer/bigint.hpp"

namespace lehmer {

/// Dense polynomial over Z, ascending exponents, highest stored coefficient
/// nonzero. The zero polynomial is the empty coefficient list (degree -1).
class IntPoly {
public:
    IntPoly() = default;

    explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

    IntPoly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        normalize();
    }

    static IntPoly monomial(int exponent, BigInt coeff = BigInt(1)) {
        if (sgn(coeff) == 0) return {};
        std::vector<BigInt> c(static_cast<std::size_t>(exponent) + 1);
        c.back() = std::move(coeff);
        return IntPoly(std::move(c));
    }

    /// x^n - 1
    static IntPoly x_pow_minus_one(long n) {
        std::vector<BigInt> c(static_cast<std::size_t>(n) + 1);
        c[0] = -1;
        c.back() = 1;
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    const BigInt& operator[](int i) const {
        static const BigInt zero(0);
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
        return c_[static_cast<std::size_t>(i)];
    }

    const BigInt& lead() const {
        if (c_.empty()) throw std::domain_error("lead of zero polynomial");
        return c_.back();
    }

    IntPoly shifted(int k) const {  // * x^k
        if (is_zero() || k == 0) return k == 0 ? *this : IntPoly{};
        std::vector<BigInt> c(static_cast<std::size_t>(k), BigInt(0));
        c.insert(c.end(), c_.begin(), c_.end());
        return IntPoly(std::move(c));
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return IntPoly(std::move(c));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()), BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return IntPoly(std::move(c));
    }

    IntPoly operator-() const {
        IntPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1, BigInt(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(c));
    }

    friend IntPoly operator*(const IntPoly& a, const BigInt& s) {
        if (sgn(s) == 0) return {};
        IntPoly r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    bool operator==(const IntPoly&) const = default;

private:
    void normalize() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }

    std::vector<BigInt> c_;
};

inline BigInt content(const IntPoly& p) {
    BigInt g(0);
    for (const auto& c : p.coeffs()) g = big_gcd(g, c);
    return g;  // 0 for the zero polynomial
}

/// Divide every coefficient by s; s must divide exactly.
inline IntPoly scalar_div_exact(const IntPoly& p, const BigInt& s) {
    if (sgn(s) == 0) throw std::domain_error("scalar_div_exact by zero");
    std::vector<BigInt> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) {
        BigInt q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
        if (sgn(r) != 0) throw std::logic_error("scalar_div_exact: not divisible");
        c.push_back(std::move(q));
    }
    return IntPoly(std::move(c));
}

inline IntPoly primitive_part(const IntPoly& p) {
    if (p.is_zero()) return p;
    return scalar_div_exact(p, content(p));
}

inline IntPoly derivative(const IntPoly& p) {
    if (p.degree() <= 0) return {};
    std::vector<BigInt> c(static_cast<std::size_t>(p.degree()));
    for (int i = 1; i <= p.degree(); ++i) c[static_cast<std::size_t>(i - 1)] = p[i] * i;
    return IntPoly(std::move(c));
}

/// Quotient a/b when b divides a in Z[x]; nullopt otherwise.
inline std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("divide_exact by zero polynomial");
    if (a.is_zero()) return IntPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<BigInt> rem = a.coeffs();
    std::vector<BigInt> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, BigInt(0));
    const BigInt& lb = b.lead();
    for (int i = a.degree(); i >= b.degree(); --i) {
        BigInt& top = rem[static_cast<std::size_t>(i)];
        if (sgn(top) == 0) continue;
        BigInt q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        if (sgn(r) != 0) return std::nullopt;
        quot[static_cast<std::size_t>(i - b.degree())] = q;
        for (int j = 0; j <= b.degree(); ++j)
            rem[static_cast<std::size_t>(i - b.degree() + j)] -= q * b[j];
    }
    for (const auto& x : rem)
        if (sgn(x) != 0) return std::nullopt;
    return IntPoly(std::move(quot));
}

/// Remainder of a mod m for monic m (stays in Z[x]).
inline IntPoly rem_monic(const IntPoly& a, const IntPoly& m) {
    if (m.is_zero() || m.lead() != 1) throw std::domain_error("rem_monic: modulus must be monic");
    if (a.degree() < m.degree()) return a;
    std::vector<BigInt> rem = a.coeffs();
    for (int i = a.degree(); i >= m.degree(); --i) {
        BigInt q = rem[static_cast<std::size_t>(i)];
        if (sgn(q) == 0) continue;
        for (int j = 0; j <= m.degree(); ++j)
            rem[static_cast<std::size_t>(i - m.degree() + j)] -= q * m[j];
    }
    rem.resize(static_cast<std::size_t>(m.degree()));
    return IntPoly(std::move(rem));
}

/// Pseudo-remainder: rem(lc(b)^{deg a - deg b + 1} * a, b). Requires deg a >= deg b >= 0.
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo_rem by zero polynomial");
    IntPoly r = a;
    const BigInt& lb = b.lead();
    int e = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        IntPoly s = b.shifted(r.degree() - b.degree()) * r.lead();
        r = r * lb - s;
        --e;
    }
    if (e > 0) r = r * big_pow(lb, static_cast<unsigned long>(e));
    return r;
}

/**
 * Exact resultant by the fraction-free subresultant PRS (Cohen Alg. 3.3.7).
 * Throws on zero input.
 */
inline BigInt resultant(IntPoly a, IntPoly b) {
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("resultant of zero polynomial");
    int s = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
        std::swap(a, b);
    }
    if (b.degree() == 0) return BigInt(s) * big_pow(b[0], static_cast<unsigned long>(a.degree()));

    BigInt ca = content(a), cb = content(b);
    a = scalar_div_exact(a, ca);
    b = scalar_div_exact(b, cb);
    BigInt t = big_pow(ca, static_cast<unsigned long>(b.degree())) *
               big_pow(cb, static_cast<unsigned long>(a.degree()));
    BigInt g(1), h(1);
    while (true) {
        int da = a.degree(), db = b.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        IntPoly r = pseudo_rem(a, b);
        a = std::move(b);
        if (r.is_zero()) return BigInt(0);  // deg a >= 1 here, common factor
        BigInt divisor = g * big_pow(h, static_cast<unsigned long>(delta));
        b = scalar_div_exact(r, divisor);
        g = a.lead();
        if (delta > 0) {
            BigInt num = big_pow(g, static_cast<unsigned long>(delta));
            BigInt den = big_pow(h, static_cast<unsigned long>(delta - 1));
            BigInt q, rr;
            mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (sgn(rr) != 0) throw std::logic_error("subresultant PRS: inexact h update");
            h = q;
        }
        if (b.degree() == 0) break;
    }
    int da = a.degree();
    BigInt num = big_pow(b[0], static_cast<unsigned long>(da));
    BigInt den = big_pow(h, static_cast<unsigned long>(da - 1));
    BigInt q, rr;
    mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (sgn(rr) != 0) throw std::logic_error("subresultant PRS: inexact final division");
    return BigInt(s) * t * q;
}

/// Gcd over Z[x], primitive PRS, result sign-normalized to positive lead.
inline IntPoly poly_gcd(IntPoly a, IntPoly b) {
    auto norm = [](IntPoly p) {
        if (!p.is_zero() && sgn(p.lead()) < 0) p = -p;
        return p;
    };
    if (a.is_zero()) return norm(b);
    if (b.is_zero()) return norm(a);
    BigInt c = big_gcd(content(a), content(b));
    a = primitive_part(a);
    b = primitive_part(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = pseudo_rem(a, b);
        a = std::move(b);
        b = r.is_zero() ? IntPoly{} : primitive_part(r);
    }
    return norm(a * c);
}

/**
 * Yun squarefree decomposition of the primitive part: returns pairs
 * (factor, multiplicity) with factor squarefree, pairwise coprime, and
 * primitive_part(p) = +/- prod factor^multiplicity. Constant content and the
 * overall sign are the caller's business.
 */
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
    std::vector<std::pair<IntPoly, int>> out;
    if (p.degree() <= 0) return out;
    IntPoly f = primitive_part(p);
    IntPoly fp = derivative(f);
    IntPoly g = poly_gcd(f, fp);
    IntPoly ci = *divide_exact(f, g);
    IntPoly di = [&] {
        IntPoly t = *divide_exact(fp, g);
        return t - derivative(ci);
    }();
    int mult = 1;
    while (ci.degree() > 0) {
        IntPoly ai = poly_gcd(ci, di);
        IntPoly cn = *divide_exact(ci, ai);
        IntPoly dn = *divide_exact(di, ai) - derivative(cn);
        if (ai.degree() > 0) out.emplace_back(primitive_part(ai), mult);
        ci = std::move(cn);
        di = std::move(dn);
        ++mult;
    }
    return out;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Smallest prime p with p not dividing n.
inline long smallest_prime_not_dividing(long n) {
    for (long p = 2;; ++p)
        if (is_prime(p) && n % p != 0) return p;
}

/// Euler totient by trial-division factorization.
inline long euler_phi(long n) {
    if (n < 1) throw std::invalid_argument("euler_phi: n must be >= 1");
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        result -= result / p;
        while (m % p == 0) m /= p;
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace detail {
inline const IntPoly& cyclotomic_unlocked(long n, std::map<long, IntPoly>& cache) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    IntPoly p = (n == 1) ? IntPoly{-1, 1} : IntPoly::x_pow_minus_one(n);
    if (n > 1) {
        for (long d = 1; d < n; ++d) {
            if (n % d) continue;
            auto q = divide_exact(p, cyclotomic_unlocked(d, cache));
            if (!q) throw std::logic_error("cyclotomic: exact division failed");
            p = std::move(*q);
        }
    }
    return cache.emplace(n, std::move(p)).first->second;
}
}  // namespace detail

/// n-th cyclotomic polynomial, Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
inline IntPoly cyclotomic(long n) {
    if (n < 1) throw std::invalid_argument("cyclotomic: n must be >= 1");
    static std::map<long, IntPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    return detail::cyclotomic_unlocked(n, cache);
}

/**
 * Horner evaluation in double-precision complex arithmetic. Shadow values
 * only: the relative error is O(deg * ulp * sum|c_i||z|^i / |P(z)|), which
 * blows up exactly when P(z) cancels to something tiny. Exact decisions are
 * never taken from this.
 */
inline std::complex<double> eval_complex(const IntPoly& p, std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (int i = p.degree(); i >= 0; --i) acc = acc * z + to_double(p[i]);
    return acc;
}

inline std::string to_string(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        if (sgn(p[i]) == 0) continue;
        BigInt c = p[i];
        if (first) {
            if (sgn(c) < 0) os << '-';
            first = false;
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        BigInt a = big_abs(c);
        if (i == 0 || a != 1) os << to_decimal(a);
        if (i > 0) {
            os << 'x';
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

/// Element of Z[x]/Phi_N(x): an exact value in the N-th cyclotomic ring.
class CycloElem {
public:
    explicit CycloElem(long conductor) : n_(check_conductor(conductor)) {}

    CycloElem(long conductor, IntPoly rep) : n_(check_conductor(conductor)) {
        rep_ = rem_monic(std::move(rep), cyclotomic(n_));
    }

    static CycloElem constant(long conductor, BigInt c) {
        return CycloElem(conductor, IntPoly(std::vector<BigInt>{std::move(c)}));
    }

    /// sum a_e * zeta_N^e from (exponent, coefficient) pairs; exponents in [0, N).
    static CycloElem from_exponents(long conductor,
                                    const std::vector<std::pair<long, BigInt>>& terms) {
        std::vector<BigInt> c(static_cast<std::size_t>(conductor), BigInt(0));
        for (const auto& [e, coeff] : terms) {
            if (e < 0 || e >= conductor)
                throw std::invalid_argument("from_exponents: exponent out of [0, N)");
            c[static_cast<std::size_t>(e)] += coeff;
        }
        return CycloElem(conductor, IntPoly(std::move(c)));
    }

    long conductor() const { return n_; }
    const IntPoly& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }

    /// Integer value when the reduced representative has degree <= 0.
    std::optional<BigInt> as_integer() const {
        if (rep_.is_zero()) return BigInt(0);
        if (rep_.degree() == 0) return rep_[0];
        return std::nullopt;
    }

    friend CycloElem operator+(const CycloElem& a, const CycloElem& b) {
        a.check_same(b);
        return CycloElem(a.n_, a.rep_ + b.rep_);
    }
    friend CycloElem operator-(const CycloElem& a, const CycloElem& b) {
        a.check_same(b);
        return CycloElem(a.n_, a.rep_ - b.rep_);
    }
    friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
        a.check_same(b);
        return CycloElem(a.n_, a.rep_ * b.rep_);  // reduced on construction
    }
    CycloElem operator-() const { return CycloElem(n_, -rep_); }

    bool operator==(const CycloElem&) const = default;

private:
    static long check_conductor(long n) {
        if (n < 1) throw std::invalid_argument("CycloElem: conductor must be >= 1");
        return n;
    }
    void check_same(const CycloElem& o) const {
        if (n_ != o.n_)
            throw std::invalid_argument("CycloElem: conductor mismatch (" + std::to_string(n_) +
                                        " vs " + std::to_string(o.n_) + ")");
    }

    long n_;
    IntPoly rep_;
};

/// Parse "1,1,0,-1" as ascending coefficients.
inline std::vector<BigInt> parse_coeff_list(const std::string& s) {
    std::vector<BigInt> out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) {
        std::string trimmed = tok;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
        try {
            out.push_back(from_decimal(trimmed));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coefficient token: \"" + tok + "\"");
        }
    }
    if (out.empty()) throw std::invalid_argument("empty coefficient list");
    return out;
}

}  // namespace lehmer
