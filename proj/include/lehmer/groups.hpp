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
 * @file groups.hpp
 * @brief Finite abelian groups in invariant-factor form.
 *
 * A group is presented as Z/n1 + ... + Z/nr with every n_i >= 2 (the empty
 * list is the trivial group). Elements and characters are residue vectors
 * against the same factor list; the dual pairing takes values in Z/N where
 * N = lcm(n_i) is the exponent of the group:
 *
 *     chi_k(x) = zeta_N ^ e,   e = sum_i (N/n_i) * k_i * j_i   (mod N).
 *
 * Presentations are not canonicalized: Z/2+Z/3 and Z/6 are distinct values
 * here even though they are isomorphic. Canonical enumeration order for
 * elements and characters is row-major lexicographic over residue vectors,
 * and every dense coefficient vector in the library uses that order.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace lehmer {

struct GroupElement {
    std::vector<long> residues;
    auto operator<=>(const GroupElement&) const = default;
};

struct Character {
    std::vector<long> index;
    auto operator<=>(const Character&) const = default;
};

class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;  // trivial group

    explicit FiniteAbelianGroup(std::vector<long> factors) : factors_(std::move(factors)) {
        for (long n : factors_)
            if (n < 2) throw std::invalid_argument("group factor must be >= 2, got " + std::to_string(n));
        for (long n : factors_) {
            if (order_ > (std::int64_t{1} << 62) / n)
                throw std::invalid_argument("group order exceeds 2^62");
            order_ *= n;
            exponent_ = std::lcm(exponent_, n);
        }
    }

    const std::vector<long>& factors() const { return factors_; }
    long long order() const { return order_; }
    long long exponent() const { return exponent_; }
    std::size_t rank() const { return factors_.size(); }
    bool is_trivial() const { return factors_.empty(); }
    bool is_cyclic() const { return factors_.size() <= 1; }

    GroupElement identity() const { return GroupElement{std::vector<long>(factors_.size(), 0)}; }
    Character trivial_character() const { return Character{std::vector<long>(factors_.size(), 0)}; }

    bool valid(const GroupElement& x) const { return valid_residues(x.residues); }
    bool valid(const Character& chi) const { return valid_residues(chi.index); }

    GroupElement add(const GroupElement& a, const GroupElement& b) const {
        check(a); check(b);
        GroupElement r = a;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            r.residues[i] = (r.residues[i] + b.residues[i]) % factors_[i];
        return r;
    }

    GroupElement negate(const GroupElement& a) const {
        check(a);
        GroupElement r = a;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            r.residues[i] = (factors_[i] - r.residues[i]) % factors_[i];
        return r;
    }

    Character add(const Character& a, const Character& b) const {
        Character r = a;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            r.index[i] = (r.index[i] + b.index[i]) % factors_[i];
        return r;
    }

    Character negate(const Character& a) const {
        Character r = a;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            r.index[i] = (factors_[i] - r.index[i]) % factors_[i];
        return r;
    }

    /// Row-major position of a residue vector in the canonical enumeration.
    long long position_of(const std::vector<long>& v) const {
        long long pos = 0;
        for (std::size_t i = 0; i < factors_.size(); ++i) pos = pos * factors_[i] + v[i];
        return pos;
    }
    long long position_of(const GroupElement& x) const { return position_of(x.residues); }
    long long position_of(const Character& chi) const { return position_of(chi.index); }

    std::vector<long> residues_at(long long pos) const {
        std::vector<long> v(factors_.size());
        for (std::size_t i = factors_.size(); i-- > 0;) {
            v[i] = static_cast<long>(pos % factors_[i]);
            pos /= factors_[i];
        }
        return v;
    }
    GroupElement element_at(long long pos) const { return GroupElement{residues_at(pos)}; }
    Character character_at(long long pos) const { return Character{residues_at(pos)}; }

    bool operator==(const FiniteAbelianGroup&) const = default;

private:
    bool valid_residues(const std::vector<long>& v) const {
        if (v.size() != factors_.size()) return false;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] < 0 || v[i] >= factors_[i]) return false;
        return true;
    }
    void check(const GroupElement& x) const {
        if (!valid(x)) throw std::invalid_argument("group element invalid for this group");
    }

    std::vector<long> factors_;
    long long order_ = 1;
    long long exponent_ = 1;
};

inline FiniteAbelianGroup make_group(std::vector<long> factors) {
    return FiniteAbelianGroup(std::move(factors));
}

/// chi(x) = zeta_N^e with N the group exponent; returns e in [0, N).
inline long long pairing(const FiniteAbelianGroup& G, const Character& chi, const GroupElement& x) {
    if (!G.valid(chi) || !G.valid(x))
        throw std::invalid_argument("pairing: character or element invalid for group");
    const long long N = G.exponent();
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < G.factors().size(); ++i) {
        unsigned __int128 term = static_cast<unsigned __int128>(N / G.factors()[i]);
        term = term * static_cast<unsigned long long>(chi.index[i]) % N;
        term = term * static_cast<unsigned long long>(x.residues[i]) % N;
        acc = (acc + term) % N;
    }
    return static_cast<long long>(acc);
}

inline std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& G) {
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(G.order()));
    for (long long p = 0; p < G.order(); ++p) out.push_back(G.element_at(p));
    return out;
}

inline std::vector<Character> enumerate_characters(const FiniteAbelianGroup& G) {
    std::vector<Character> out;
    out.reserve(static_cast<std::size_t>(G.order()));
    for (long long p = 0; p < G.order(); ++p) out.push_back(G.character_at(p));
    return out;
}

/// Additive closure of the generators (the subgroup they generate).
inline std::set<GroupElement> subgroup_closure(const FiniteAbelianGroup& G,
                                               const std::vector<GroupElement>& gens) {
    std::set<GroupElement> H{G.identity()};
    std::vector<GroupElement> frontier(H.begin(), H.end());
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& h : frontier) {
            for (const auto& g : gens) {
                GroupElement s = G.add(h, g);
                if (H.insert(s).second) next.push_back(s);
            }
        }
        frontier = std::move(next);
    }
    return H;
}

inline bool is_subgroup(const FiniteAbelianGroup& G, const std::set<GroupElement>& H) {
    if (!H.count(G.identity())) return false;
    for (const auto& a : H) {
        if (!G.valid(a)) return false;
        for (const auto& b : H)
            if (!H.count(G.add(a, b))) return false;
    }
    return true;
}

/// One representative per coset of H, each the lexicographically smallest
/// member of its coset, in canonical enumeration order.
inline std::vector<GroupElement> coset_representatives(const FiniteAbelianGroup& G,
                                                       const std::set<GroupElement>& H) {
    if (!is_subgroup(G, H))
        throw std::invalid_argument("coset_representatives: H is not closed under addition");
    std::vector<bool> covered(static_cast<std::size_t>(G.order()), false);
    std::vector<GroupElement> reps;
    for (long long p = 0; p < G.order(); ++p) {
        if (covered[static_cast<std::size_t>(p)]) continue;
        GroupElement rep = G.element_at(p);
        reps.push_back(rep);
        for (const auto& h : H)
            covered[static_cast<std::size_t>(G.position_of(G.add(rep, h)))] = true;
    }
    return reps;
}

/// All characters vanishing on H (the annihilator H^perp in the dual group).
inline std::set<Character> annihilator(const FiniteAbelianGroup& G,
                                       const std::set<GroupElement>& H) {
    std::set<Character> out;
    for (long long p = 0; p < G.order(); ++p) {
        Character chi = G.character_at(p);
        bool kills = true;
        for (const auto& h : H)
            if (pairing(G, chi, h) != 0) { kills = false; break; }
        if (kills) out.insert(chi);
    }
    return out;
}

/**
 * Automorphisms of the abstract group with the given factor list, returned as
 * permutations of canonical enumeration positions. Works equally for a group
 * and for its dual (both are residue vectors over the same factors).
 *
 * Enumeration is brute force over images of the standard generators, so the
 * caller should keep order()^rank() within max_tuples; throws when above it.
 */
inline std::vector<std::vector<int>> automorphism_index_maps(const FiniteAbelianGroup& G,
                                                             std::uint64_t max_tuples = (1u << 22)) {
    const std::size_t n = static_cast<std::size_t>(G.order());
    const std::size_t r = G.rank();
    if (r == 0) return {std::vector<int>{0}};

    double tuples = 1;
    for (std::size_t i = 0; i < r; ++i) tuples *= static_cast<double>(n);
    if (tuples > static_cast<double>(max_tuples))
        throw std::invalid_argument("automorphism_index_maps: generator-image space too large");

    auto element_order = [&](const std::vector<long>& v) {
        long long o = 1;
        for (std::size_t i = 0; i < r; ++i) {
            long ni = G.factors()[i];
            o = std::lcm<long long>(o, ni / std::gcd(ni, v[i]));
        }
        return o;
    };

    std::vector<std::vector<int>> maps;
    std::vector<long long> img(r, 0);
    while (true) {
        bool order_ok = true;
        for (std::size_t i = 0; i < r && order_ok; ++i)
            order_ok = (G.factors()[i] % element_order(G.residues_at(img[i]))) == 0;
        if (order_ok) {
            std::vector<int> perm(n);
            std::vector<bool> seen(n, false);
            bool bijective = true;
            for (std::size_t p = 0; p < n && bijective; ++p) {
                std::vector<long> src = G.residues_at(static_cast<long long>(p));
                std::vector<long> dst(r, 0);
                for (std::size_t i = 0; i < r; ++i) {
                    std::vector<long> gi = G.residues_at(img[i]);
                    for (std::size_t j = 0; j < r; ++j)
                        dst[j] = (dst[j] + src[i] % G.factors()[j] * (gi[j] % G.factors()[j])) % G.factors()[j];
                }
                int q = static_cast<int>(G.position_of(dst));
                perm[p] = q;
                if (seen[static_cast<std::size_t>(q)]) bijective = false;
                seen[static_cast<std::size_t>(q)] = true;
            }
            if (bijective) maps.push_back(std::move(perm));
        }
        std::size_t i = r;
        while (i-- > 0) {
            if (++img[i] < G.order()) break;
            img[i] = 0;
            if (i == 0) return maps;
        }
    }
}

/// CLI form: comma-separated factors ("2,2"); empty string is the trivial group.
inline std::string group_spec_string(const FiniteAbelianGroup& G) {
    std::ostringstream os;
    for (std::size_t i = 0; i < G.factors().size(); ++i) {
        if (i) os << ',';
        os << G.factors()[i];
    }
    return os.str();
}

inline FiniteAbelianGroup parse_group_spec(const std::string& spec) {
    std::vector<long> factors;
    std::string tok;
    std::istringstream is(spec);
    while (std::getline(is, tok, ',')) {
        if (tok.empty() && factors.empty() && is.eof()) break;  // ""
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad group factor token: \"" + tok + "\"");
        }
        if (used != tok.size())
            throw std::invalid_argument("bad group factor token: \"" + tok + "\"");
        if (v < 2)
            throw std::invalid_argument("group factor must be >= 2: \"" + tok + "\"");
        factors.push_back(v);
    }
    return FiniteAbelianGroup(std::move(factors));
}

}  // namespace lehmer
