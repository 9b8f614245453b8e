/**
 * @file paley.hpp
 * @brief Unit groups, multiplicative characters and Paley graphs P_chi.
 *
 * P_chi is the Cayley graph Gamma(R, ker chi) for a multiplicative character
 * chi on the units of R with chi(-1) = 1. The integrality criterion: P_chi is
 * integral iff the Dirichlet character induced by chi on (Z/n)^x is trivial.
 *
 * The quartic residue symbol is supported on Z[i]/p for inert rational
 * primes p = 3 (mod 4), where Z[i]/p is the field with p^2 elements and
 * chi(a) = i^k with i^k = a^{(p^2-1)/4}; the split analogue (modulus a
 * degree-one factor x - c of x^2 + 1 mod p) is accepted as well.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "cayley/functional.hpp"
#include "cayley/ring.hpp"
#include "cayley/spectra.hpp"

namespace cayley {

struct UnitGroup {
    FiniteRing ring;
    std::vector<std::uint64_t> elements;          // sorted unit indices
    std::vector<std::uint64_t> generators;        // indices; <generators> = whole group
    std::vector<std::uint64_t> generator_orders;  // multiplicative orders of the generators
};

namespace detail {

constexpr std::size_t kUnitGroupCap = 4096;

// Multiplicative order of the element with index idx (must be a unit).
inline std::uint64_t element_order(const FiniteRing& ring, std::uint64_t idx) {
    RingElement x = ring.element_at(idx);
    RingElement acc = x;
    std::uint64_t order = 1;
    while (!(acc == ring.one())) {
        acc = acc * x;
        ++order;
        if (order > ring.order()) throw std::logic_error("element_order: not a unit");
    }
    return order;
}

}  // namespace detail

/// All invertible elements plus a generating set found by greedy brute-force
/// structure decomposition (largest relative order first).
inline UnitGroup unit_group(const FiniteRing& ring) {
    if (ring.order() > detail::kUnitGroupCap)
        throw CapExceeded("unit_group: ring order exceeds 4096");
    UnitGroup group{ring, {}, {}, {}};

    // r is a unit iff some power of r equals 1.
    std::vector<std::uint64_t> coords, acc, next;
    for (std::uint64_t idx = 0; idx < ring.order(); ++idx) {
        ring.coords_of(idx, coords);
        acc = coords;
        std::vector<bool> seen(ring.order(), false);
        while (true) {
            std::uint64_t cur = ring.index_of_coords(acc);
            if (cur == ring.one().index()) {
                group.elements.push_back(idx);
                break;
            }
            if (seen[cur]) break;
            seen[cur] = true;
            ring.mul_coords(acc, coords, next);
            acc = next;
        }
    }

    // Greedy generating set: repeatedly adjoin the element of largest order
    // relative to the subgroup generated so far.
    std::set<std::uint64_t> subgroup{ring.one().index()};
    auto relative_order = [&](std::uint64_t idx) {
        RingElement x = ring.element_at(idx);
        RingElement acc_el = x;
        std::uint64_t k = 1;
        while (subgroup.find(acc_el.index()) == subgroup.end()) {
            acc_el = acc_el * x;
            ++k;
        }
        return k;
    };
    while (subgroup.size() < group.elements.size()) {
        std::uint64_t best = 0, best_order = 0;
        for (std::uint64_t idx : group.elements) {
            if (subgroup.count(idx)) continue;
            std::uint64_t k = relative_order(idx);
            if (k > best_order) {
                best_order = k;
                best = idx;
            }
        }
        const std::uint64_t g_order = detail::element_order(ring, best);
        group.generators.push_back(best);
        group.generator_orders.push_back(g_order);
        // New subgroup = previous * <g> (abelian).
        std::vector<std::uint64_t> previous(subgroup.begin(), subgroup.end());
        RingElement g = ring.element_at(best);
        RingElement power = g;
        for (std::uint64_t k = 1; k < g_order; ++k) {
            for (std::uint64_t h : previous)
                subgroup.insert((ring.element_at(h) * power).index());
            power = power * g;
        }
    }
    return group;
}

/// Character on the unit group, values encoded as residues k meaning
/// zeta_order^k; non-units carry the sentinel -1.
class MultiplicativeCharacter {
public:
    MultiplicativeCharacter(FiniteRing ring, std::uint64_t order, std::vector<std::int64_t> values)
        : ring_(std::move(ring)), order_(order), values_(std::move(values)) {
        if (order_ == 0) throw std::invalid_argument("MultiplicativeCharacter: order must be positive");
        if (values_.size() != ring_.order())
            throw std::invalid_argument("MultiplicativeCharacter: value table has wrong length");
        for (std::uint64_t idx = 0; idx < values_.size(); ++idx) {
            if (values_[idx] < 0) continue;
            values_[idx] %= static_cast<std::int64_t>(order_);
            units_.push_back(idx);
        }
        if (values_[ring_.one().index()] != 0)
            throw std::invalid_argument("MultiplicativeCharacter: chi(1) != 1");
        validate_multiplicativity();
    }

    const FiniteRing& ring() const { return ring_; }
    std::uint64_t order() const { return order_; }
    const std::vector<std::uint64_t>& units() const { return units_; }

    bool defined_at(std::uint64_t idx) const { return values_[idx] >= 0; }
    std::uint64_t value_at(std::uint64_t idx) const {
        if (!defined_at(idx))
            throw std::invalid_argument("MultiplicativeCharacter: element is not a unit");
        return static_cast<std::uint64_t>(values_[idx]);
    }
    bool is_trivial_at(std::uint64_t idx) const { return value_at(idx) == 0; }

    bool minus_one_trivial() const {
        return is_trivial_at((-ring_.one()).index());
    }

private:
    void validate_multiplicativity() const {
        // Exhaustive for small unit groups, randomized above 512 units.
        const std::size_t u = units_.size();
        auto check_pair = [&](std::uint64_t a, std::uint64_t b) {
            RingElement prod = ring_.element_at(a) * ring_.element_at(b);
            std::uint64_t expected = (value_at(a) + value_at(b)) % order_;
            if (!defined_at(prod.index()) || value_at(prod.index()) != expected)
                throw std::invalid_argument("MultiplicativeCharacter: values are not multiplicative");
        };
        if (u <= 512) {
            for (std::uint64_t a : units_)
                for (std::uint64_t b : units_) check_pair(a, b);
        } else {
            std::uint64_t state = 0x9e3779b97f4a7c15ULL;
            auto next = [&state, u]() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                return state % u;
            };
            for (int i = 0; i < 4096; ++i) check_pair(units_[next()], units_[next()]);
        }
    }

    FiniteRing ring_;
    std::uint64_t order_;
    std::vector<std::int64_t> values_;
    std::vector<std::uint64_t> units_;
};

inline MultiplicativeCharacter trivial_character(const FiniteRing& ring) {
    UnitGroup group = unit_group(ring);
    std::vector<std::int64_t> values(ring.order(), -1);
    for (std::uint64_t idx : group.elements) values[idx] = 0;
    return MultiplicativeCharacter(ring, 1, std::move(values));
}

/// Quadratic character chi(a) = a^{|U|/2} on a finite field of odd order
/// (the Legendre symbol when the ring is Z/p).
inline MultiplicativeCharacter quadratic_character(const FiniteRing& ring) {
    UnitGroup group = unit_group(ring);
    if (group.elements.size() != ring.order() - 1)
        throw std::invalid_argument("quadratic_character: ring is not a field");
    if (group.elements.size() % 2 != 0)
        throw std::invalid_argument("quadratic_character: unit group has odd order");
    const std::uint64_t half = group.elements.size() / 2;
    std::vector<std::int64_t> values(ring.order(), -1);
    const RingElement one = ring.one();
    const RingElement minus_one = -one;
    for (std::uint64_t idx : group.elements) {
        RingElement p = ring.element_at(idx).pow(half);
        if (p == one) values[idx] = 0;
        else if (p == minus_one) values[idx] = 1;
        else throw std::logic_error("quadratic_character: a^{|U|/2} is not +-1");
    }
    return MultiplicativeCharacter(ring, 2, std::move(values));
}

/// Quartic residue symbol on Z[i]/p. Requires the spec to be a
/// MonogenicQuotient with prime n = p and either g = x^2 + 1 with
/// p = 3 (mod 4) (inert case, field F_{p^2}) or g = x - c with
/// c^2 = -1 (mod p) (split-prime analogue, field F_p).
inline MultiplicativeCharacter quartic_residue_character(const RingSpec& spec,
                                                         const FiniteRing& ring) {
    const auto* mono = std::get_if<MonogenicQuotientSpec>(&spec.node);
    if (!mono)
        throw std::invalid_argument("quartic_residue_character: spec must be a monogenic quotient");
    const std::uint64_t p = mono->n;
    if (!is_prime(p)) throw std::invalid_argument("quartic_residue_character: modulus is not prime");

    auto coeff_mod_p = [&](std::int64_t c) {
        std::int64_t r = c % static_cast<std::int64_t>(p);
        if (r < 0) r += static_cast<std::int64_t>(p);
        return static_cast<std::uint64_t>(r);
    };
    RingElement i_element = ring.zero();
    std::uint64_t field_size = 0;
    if (mono->g.size() == 3 && coeff_mod_p(mono->g[0]) == 1 % p && coeff_mod_p(mono->g[1]) == 0) {
        if (p % 4 != 3)
            throw std::invalid_argument(
                "quartic_residue_character: modulus is not inert (needs p = 3 mod 4)");
        i_element = ring.from_coords({0, 1});
        field_size = p * p;
    } else if (mono->g.size() == 2) {
        // g = x - c: ring is Z/p with x mapped to c.
        std::uint64_t c = (p - coeff_mod_p(mono->g[0])) % p;
        if (mul_mod(c, c, p) != p - 1)
            throw std::invalid_argument(
                "quartic_residue_character: x - c is not a factor of x^2 + 1 mod p");
        i_element = ring.one().scaled(c);
        field_size = p;
    } else {
        throw std::invalid_argument(
            "quartic_residue_character: modulus must be x^2 + 1 or a degree-one factor of it");
    }
    if ((field_size - 1) % 4 != 0)
        throw std::invalid_argument("quartic_residue_character: field order is not 1 mod 4");

    const std::uint64_t exponent = (field_size - 1) / 4;
    std::vector<RingElement> i_powers{ring.one(), i_element, i_element * i_element,
                                      i_element * i_element * i_element};
    std::vector<std::int64_t> values(ring.order(), -1);
    for (std::uint64_t idx = 1; idx < ring.order(); ++idx) {
        RingElement v = ring.element_at(idx).pow(exponent);
        std::int64_t k = -1;
        for (std::size_t j = 0; j < 4; ++j)
            if (v == i_powers[j]) {
                if (k >= 0) throw std::logic_error("quartic_residue_character: ambiguous power of i");
                k = static_cast<std::int64_t>(j);
            }
        if (k < 0) throw std::logic_error("quartic_residue_character: a^{(N-1)/4} is not a power of i");
        values[idx] = k;
    }
    return MultiplicativeCharacter(ring, 4, std::move(values));
}

/// ker(chi) = units where chi is trivial, as sorted element indices.
inline std::vector<std::uint64_t> character_kernel(const MultiplicativeCharacter& chi) {
    std::vector<std::uint64_t> kernel;
    for (std::uint64_t idx : chi.units())
        if (chi.is_trivial_at(idx)) kernel.push_back(idx);
    return kernel;
}

/// P_chi = Gamma(R, ker chi). Requires chi(-1) = 1 so that S = -S.
inline CayleyGraphSpec paley_graph(const FiniteRing& ring, const MultiplicativeCharacter& chi) {
    if (!chi.ring().same_ring(ring))
        throw std::invalid_argument("paley_graph: character from a different ring");
    if (!chi.minus_one_trivial())
        throw std::invalid_argument(
            "paley_graph: chi(-1) != 1, the undirected requirement S = -S fails");
    return CayleyGraphSpec(ring, character_kernel(chi));
}

/// True iff chi(a * 1_R) = 1 for every unit a mod n: the induced Dirichlet
/// character of chi on (Z/n)^x is trivial.
inline bool induced_dirichlet_is_trivial(const MultiplicativeCharacter& chi, std::uint64_t n) {
    const FiniteRing& ring = chi.ring();
    const RingElement one = ring.one();
    for (std::uint64_t a : units_mod(n)) {
        RingElement image = one.scaled(a);
        if (!chi.defined_at(image.index()))
            throw std::invalid_argument(
                "induced_dirichlet_is_trivial: a * 1 is not a unit (malformed n)");
        if (!chi.is_trivial_at(image.index())) return false;
    }
    return true;
}

}  // namespace cayley
