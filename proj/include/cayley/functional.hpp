/**
 * @file functional.hpp
 * @brief Hom(R, Z/n), non-degeneracy certification, canonical functionals.
 *
 * A linear functional is stored by its generator values psi_1..psi_m with
 * d_i * psi_i = 0 (mod n); evaluation is psi(sum a_i e_i) = sum a_i psi_i.
 * A functional is non-degenerate when its kernel contains no nonzero ideal,
 * tested through principal ideals: for every r != 0 some t has psi(rt) != 0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cayley/ring.hpp"

namespace cayley {

class LinearFunctional {
public:
    LinearFunctional(FiniteRing ring, std::vector<std::uint64_t> generator_values)
        : ring_(std::move(ring)), values_(std::move(generator_values)) {
        const std::uint64_t n = ring_.scalar_modulus();
        if (values_.size() != ring_.rank())
            throw std::invalid_argument("LinearFunctional: value count does not match ring rank");
        const auto& d = ring_.divisors();
        for (std::size_t i = 0; i < values_.size(); ++i) {
            values_[i] %= n;
            if (d[i] * values_[i] % n != 0)
                throw std::invalid_argument(
                    "LinearFunctional: generator value violates d_i * psi_i = 0 (mod n)");
        }
    }

    const FiniteRing& ring() const { return ring_; }
    const std::vector<std::uint64_t>& generator_values() const { return values_; }

    std::uint64_t operator()(const RingElement& r) const {
        if (!r.ring().same_ring(ring_))
            throw std::invalid_argument("LinearFunctional: element from a different ring");
        return apply_coords(r.coords());
    }

    std::uint64_t apply_coords(const std::vector<std::uint64_t>& coords) const {
        const std::uint64_t n = ring_.scalar_modulus();
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < values_.size(); ++i)
            acc = (acc + coords[i] % n * values_[i]) % n;
        return acc;
    }

    friend bool operator==(const LinearFunctional& a, const LinearFunctional& b) {
        return a.ring_.same_ring(b.ring_) && a.values_ == b.values_;
    }

private:
    FiniteRing ring_;
    std::vector<std::uint64_t> values_;
};

/// All of Hom(R, Z/n) in mixed-radix order over the constrained generator
/// values (first generator fastest); the count always equals |R|.
inline std::vector<LinearFunctional> enumerate_functionals(const FiniteRing& ring) {
    const std::uint64_t n = ring.scalar_modulus();
    const auto& d = ring.divisors();
    const std::size_t m = d.size();
    std::vector<LinearFunctional> out;
    out.reserve(ring.order());
    std::vector<std::uint64_t> k(m, 0);
    while (true) {
        std::vector<std::uint64_t> values(m);
        for (std::size_t i = 0; i < m; ++i) values[i] = k[i] * (n / d[i]) % n;
        out.emplace_back(ring, std::move(values));
        std::size_t i = 0;
        while (i < m && ++k[i] == d[i]) k[i++] = 0;
        if (i == m) break;
    }
    return out;
}

/// True iff no nonzero principal ideal lies inside ker psi.
inline bool is_nondegenerate(const LinearFunctional& psi) {
    const FiniteRing& ring = psi.ring();
    std::vector<std::uint64_t> r, t, rt;
    for (std::uint64_t ri = 1; ri < ring.order(); ++ri) {
        ring.coords_of(ri, r);
        bool hit = false;
        for (std::uint64_t ti = 1; ti < ring.order() && !hit; ++ti) {
            ring.coords_of(ti, t);
            ring.mul_coords(r, t, rt);
            hit = psi.apply_coords(rt) != 0;
        }
        if (!hit) return false;
    }
    return true;
}

/// First non-degenerate functional in enumeration order, if any. A missing
/// result certifies that the ring is not a symmetric Z/n-algebra.
inline std::optional<LinearFunctional> find_nondegenerate(const FiniteRing& ring) {
    for (const auto& psi : enumerate_functionals(ring))
        if (is_nondegenerate(psi)) return psi;
    return std::nullopt;
}

namespace detail {

// Canonical generator values per spec variant: identity for Z/n, coefficient
// at the group identity for Z/n[G], top coefficient for quotients, scaled sum
// for products. Explicit specs have no canonical functional.
inline std::pair<std::uint64_t, std::vector<std::uint64_t>> canonical_values(const RingSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::pair<std::uint64_t, std::vector<std::uint64_t>> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ZnSpec>) {
                return {s.n, {1 % s.n}};
            } else if constexpr (std::is_same_v<T, GroupAlgebraSpec>) {
                std::uint64_t g_order = 1;
                for (std::uint64_t f : s.factors) g_order *= f;
                std::vector<std::uint64_t> v(g_order, 0);
                v[0] = 1 % s.n;
                return {s.n, std::move(v)};
            } else if constexpr (std::is_same_v<T, PolyQuotientSpec>) {
                // Mirror the builder's trimming of redundant leading zeros.
                std::size_t e = s.base_poly.size();
                while (e > 0 && s.base_poly[e - 1] % s.p == 0) --e;
                if (e > 0) --e;
                std::size_t k = s.modulus.size();
                auto coeff_zero = [&](const std::vector<std::uint64_t>& c) {
                    return std::all_of(c.begin(), c.end(),
                                       [&](std::uint64_t v) { return v % s.p == 0; });
                };
                while (k > 0 && coeff_zero(s.modulus[k - 1])) --k;
                if (k > 0) --k;
                std::vector<std::uint64_t> v(e * k, 0);
                if (v.empty())
                    throw std::invalid_argument("canonical_functional: degenerate poly quotient");
                v.back() = 1 % s.p;
                return {s.p, std::move(v)};
            } else if constexpr (std::is_same_v<T, MonogenicQuotientSpec>) {
                std::vector<std::uint64_t> v(s.g.size() - 1, 0);
                v.back() = 1 % s.n;
                return {s.n, std::move(v)};
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                std::vector<std::uint64_t> v;
                for (const auto& factor : s.specs) {
                    auto [nf, vf] = canonical_values(factor);
                    if (s.declared_n % nf != 0)
                        throw std::invalid_argument(
                            "Product: factor modulus does not divide declared modulus");
                    const std::uint64_t scale = s.declared_n / nf;
                    for (std::uint64_t x : vf) v.push_back(scale * x % s.declared_n);
                }
                return {s.declared_n, std::move(v)};
            } else {
                throw std::invalid_argument("no canonical functional for explicit ring specs");
            }
        },
        spec.node);
}

}  // namespace detail

/// The paper's canonical non-degenerate functional for a constructor spec;
/// the ring must have been built from the same spec.
inline LinearFunctional canonical_functional(const RingSpec& spec, const FiniteRing& ring) {
    auto [n, values] = detail::canonical_values(spec);
    if (n != ring.scalar_modulus() || values.size() != ring.rank())
        throw std::invalid_argument("canonical_functional: ring was not built from this spec");
    return LinearFunctional(ring, std::move(values));
}

/// Transport along the embedding Z/n -> Z/m, a -> (m/n) a. Preserves
/// non-degeneracy; the result lives on the re-declared Z/m-algebra.
inline LinearFunctional induce_functional(const LinearFunctional& psi, std::uint64_t m) {
    const std::uint64_t n = psi.ring().scalar_modulus();
    if (m == 0 || m % n != 0)
        throw std::invalid_argument("induce_functional: n must divide the target modulus");
    FiniteRing lifted = psi.ring().with_scalar_modulus(m);
    std::vector<std::uint64_t> values;
    values.reserve(psi.generator_values().size());
    for (std::uint64_t v : psi.generator_values()) values.push_back(m / n * v % m);
    return LinearFunctional(std::move(lifted), std::move(values));
}

/// Quotient transport psi_{f/g}(a) = psi((f/g) a), returned as its pullback
/// on the ambient ring A/f (the functional descends to A/g = R/ann(cofactor)).
inline LinearFunctional quotient_functional(const LinearFunctional& psi,
                                            const RingElement& cofactor) {
    const FiniteRing& ring = psi.ring();
    if (!cofactor.ring().same_ring(ring))
        throw std::invalid_argument("quotient_functional: cofactor from a different ring");
    const std::size_t m = ring.rank();
    std::vector<std::uint64_t> values(m), ei(m, 0), prod;
    for (std::size_t i = 0; i < m; ++i) {
        std::fill(ei.begin(), ei.end(), 0);
        ei[i] = 1 % ring.divisors()[i];
        ring.mul_coords(cofactor.coords(), ei, prod);
        values[i] = psi.apply_coords(prod);
    }
    return LinearFunctional(ring, std::move(values));
}

struct CharacterTable {
    FiniteRing ring;
    LinearFunctional psi;
    // rows[r] = generator values of psi_r(t) = psi(r t).
    std::vector<std::vector<std::uint64_t>> rows;
    bool bijective = false;

    LinearFunctional functional_for(std::uint64_t r) const {
        return LinearFunctional(ring, rows.at(r));
    }
};

/// Tabulates r -> psi_r; the map is a bijection onto Hom(R, Z/n) exactly when
/// psi is non-degenerate (works for degenerate psi too, flag then false).
inline CharacterTable build_character_table(const FiniteRing& ring, const LinearFunctional& psi) {
    if (!psi.ring().same_ring(ring))
        throw std::invalid_argument("build_character_table: functional from a different ring");
    const std::size_t m = ring.rank();
    CharacterTable table{ring, psi, {}, false};
    table.rows.reserve(ring.order());
    std::vector<std::uint64_t> r, ei(m), prod;
    for (std::uint64_t ri = 0; ri < ring.order(); ++ri) {
        ring.coords_of(ri, r);
        std::vector<std::uint64_t> row(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::fill(ei.begin(), ei.end(), 0);
            ei[i] = 1 % ring.divisors()[i];
            ring.mul_coords(r, ei, prod);
            row[i] = psi.apply_coords(prod);
        }
        table.rows.push_back(std::move(row));
    }
    std::set<std::vector<std::uint64_t>> distinct(table.rows.begin(), table.rows.end());
    table.bijective = distinct.size() == table.rows.size();
    return table;
}

struct SymmetryCertificate {
    bool symmetric = false;
    std::optional<LinearFunctional> psi;
    // When not symmetric: for each functional, the first nonzero principal
    // ideal inside its kernel (deduplicated, as sorted index sets).
    std::vector<std::vector<std::uint64_t>> witness_ideals;
};

/// Certifies the symmetric-algebra property. Prefers the canonical functional
/// when the spec variant has one, otherwise searches enumeration order.
inline SymmetryCertificate certify_symmetric(const RingSpec& spec, const FiniteRing& ring) {
    if (!std::holds_alternative<ExplicitSpec>(spec.node)) {
        LinearFunctional psi = canonical_functional(spec, ring);
        if (is_nondegenerate(psi)) return {true, std::move(psi), {}};
    }
    if (auto found = find_nondegenerate(ring)) return {true, std::move(found), {}};

    SymmetryCertificate cert;
    cert.symmetric = false;
    std::set<std::vector<std::uint64_t>> ideals;
    std::vector<std::uint64_t> r, t, rt;
    for (const auto& psi : enumerate_functionals(ring)) {
        for (std::uint64_t ri = 1; ri < ring.order(); ++ri) {
            ring.coords_of(ri, r);
            bool contained = true;
            for (std::uint64_t ti = 0; ti < ring.order() && contained; ++ti) {
                ring.coords_of(ti, t);
                ring.mul_coords(r, t, rt);
                contained = psi.apply_coords(rt) == 0;
            }
            if (contained) {
                ideals.insert(principal_ideal(ring.element_at(ri)));
                break;
            }
        }
    }
    cert.witness_ideals.assign(ideals.begin(), ideals.end());
    return cert;
}

}  // namespace cayley
