/**
 * @file spectra.hpp
 * @brief Cayley graph spectra over finite symmetric algebras.
 *
 * For a ring R with non-degenerate functional psi, the characters of (R, +)
 * are t -> zeta_n^{psi(r t)} indexed by r in R, and the spectrum of
 * Gamma(R, S) is the family lambda_r = sum_{s in S} zeta_n^{psi(r s)}
 * (circulant diagonalization). Integrality of each eigenvalue is an exact
 * power-basis coefficient check; the main theorem states that the graph is
 * integral iff S is stable under the scalar action of (Z/n)^x.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayley/cyclotomic.hpp"
#include "cayley/functional.hpp"
#include "cayley/parallel.hpp"
#include "cayley/ring.hpp"

namespace cayley {

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Undirected Cayley graph data: 0 not in S and S = -S, enforced on build.
class CayleyGraphSpec {
public:
    CayleyGraphSpec(FiniteRing ring, std::vector<std::uint64_t> connection_set)
        : ring_(std::move(ring)), s_(std::move(connection_set)) {
        std::sort(s_.begin(), s_.end());
        s_.erase(std::unique(s_.begin(), s_.end()), s_.end());
        if (!s_.empty() && s_.back() >= ring_.order())
            throw std::invalid_argument("CayleyGraphSpec: connection set index out of range");
        if (!s_.empty() && s_.front() == 0)
            throw std::invalid_argument("CayleyGraphSpec: 0 must not lie in the connection set");
        std::vector<std::uint64_t> coords, neg;
        for (std::uint64_t s : s_) {
            ring_.coords_of(s, coords);
            ring_.neg_coords(coords, neg);
            if (!std::binary_search(s_.begin(), s_.end(), ring_.index_of_coords(neg)))
                throw std::invalid_argument("CayleyGraphSpec: connection set is not symmetric (S != -S)");
        }
    }

    const FiniteRing& ring() const { return ring_; }
    const std::vector<std::uint64_t>& connection_set() const { return s_; }
    bool contains(std::uint64_t idx) const {
        return std::binary_search(s_.begin(), s_.end(), idx);
    }

private:
    FiniteRing ring_;
    std::vector<std::uint64_t> s_;
};

// ---------------------------------------------------------------------------
// Orbits and gcd classes
// ---------------------------------------------------------------------------

struct OrbitPartition {
    FiniteRing ring;
    std::vector<std::vector<std::uint64_t>> orbits;  // sorted; ordered by least element
    std::vector<std::size_t> orbit_of;               // element index -> orbit id
};

/// Orbits of R under r -> a r for units a of Z/n (n = declared modulus).
inline OrbitPartition scalar_orbits(const FiniteRing& ring) {
    const std::uint64_t n = ring.scalar_modulus();
    const auto units = units_mod(n);
    OrbitPartition part{ring, {}, std::vector<std::size_t>(ring.order(), SIZE_MAX)};
    std::vector<std::uint64_t> coords, scaled;
    for (std::uint64_t idx = 0; idx < ring.order(); ++idx) {
        if (part.orbit_of[idx] != SIZE_MAX) continue;
        std::vector<std::uint64_t> orbit;
        ring.coords_of(idx, coords);
        for (std::uint64_t a : units) {
            ring.scalar_coords(a, coords, scaled);
            std::uint64_t img = ring.index_of_coords(scaled);
            if (part.orbit_of[img] == SIZE_MAX) {
                part.orbit_of[img] = part.orbits.size();
                orbit.push_back(img);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        part.orbits.push_back(std::move(orbit));
    }
    return part;
}

/// G_n(d) = {m in Z/n : gcd(m, n) = d}, keyed by the divisors of n.
inline std::map<std::uint64_t, std::vector<std::uint64_t>> gcd_classes(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("gcd_classes: n must be positive");
    std::map<std::uint64_t, std::vector<std::uint64_t>> classes;
    for (std::uint64_t d : divisors_of(n)) classes[d] = {};
    for (std::uint64_t m = 0; m < n; ++m) classes[std::gcd(m, n)].push_back(m);
    return classes;
}

// ---------------------------------------------------------------------------
// Spectrum
// ---------------------------------------------------------------------------

struct SpectrumReport {
    CayleyGraphSpec graph;
    std::vector<CyclotomicInt> eigenvalues;               // indexed by r
    std::vector<std::optional<mpz_class>> integer_values;  // per r, when rational
    bool integral = false;
    // (rendered value, multiplicity), ordered by coefficient vector.
    std::vector<std::pair<std::string, std::size_t>> multiset_summary;
};

namespace detail {

inline void require_nondegenerate(const CayleyGraphSpec& graph, const LinearFunctional& psi) {
    if (!psi.ring().same_ring(graph.ring()))
        throw std::invalid_argument("spectrum: functional from a different ring");
    if (!is_nondegenerate(psi))
        throw std::invalid_argument(
            "spectrum: degenerate functional rejected (the character family would be incomplete)");
}

// lambda_r as residue counts: counts[e] = #{s in S : psi(r s) = e}.
inline void eigenvalue_counts(const FiniteRing& ring, const LinearFunctional& psi,
                              const std::vector<std::uint64_t>& s_set, std::uint64_t r_index,
                              std::vector<std::int64_t>& counts,
                              std::vector<std::uint64_t>& r_coords,
                              std::vector<std::uint64_t>& s_coords,
                              std::vector<std::uint64_t>& prod) {
    counts.assign(ring.scalar_modulus(), 0);
    ring.coords_of(r_index, r_coords);
    for (std::uint64_t s : s_set) {
        ring.coords_of(s, s_coords);
        ring.mul_coords(r_coords, s_coords, prod);
        ++counts[psi.apply_coords(prod)];
    }
}

inline std::vector<std::pair<std::string, std::size_t>> summarize(
    const std::vector<CyclotomicInt>& eigenvalues) {
    std::map<std::vector<mpz_class>, std::size_t> groups;
    for (const auto& ev : eigenvalues) ++groups[ev.coeffs()];
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& [coeffs, count] : groups) {
        CyclotomicInt value(eigenvalues.front().order(), coeffs);
        if (auto z = value.as_integer()) out.emplace_back(z->get_str(), count);
        else out.emplace_back(value.to_string(), count);
    }
    return out;
}

}  // namespace detail

/// Exact spectrum lambda_r = sum_{s in S} zeta^{psi(r s)} for every r in R.
/// Requires a non-degenerate psi; eigenvalues are indexed by element index.
inline SpectrumReport spectrum(const CayleyGraphSpec& graph, const LinearFunctional& psi) {
    detail::require_nondegenerate(graph, psi);
    const FiniteRing& ring = graph.ring();
    const CyclotomicBasis basis(ring.scalar_modulus());
    SpectrumReport report{graph, {}, {}, true, {}};
    report.eigenvalues.assign(ring.order(), basis.zero());
    parallel_chunks(ring.order(), [&](std::size_t begin, std::size_t end) {
        std::vector<std::int64_t> counts;
        std::vector<std::uint64_t> r, s, prod;
        for (std::size_t idx = begin; idx < end; ++idx) {
            detail::eigenvalue_counts(ring, psi, graph.connection_set(), idx, counts, r, s, prod);
            report.eigenvalues[idx] = basis.reduce_counts(counts);
        }
    });
    report.integer_values.reserve(ring.order());
    for (const auto& ev : report.eigenvalues) {
        report.integer_values.push_back(ev.as_integer());
        if (!report.integer_values.back()) report.integral = false;
    }
    report.multiset_summary = detail::summarize(report.eigenvalues);
    return report;
}

/// Spectrum through all |R| additive characters (no parametrization by R).
/// Valid for any finite Z/n-algebra, symmetric or not; indexed by the
/// functional enumeration order.
inline std::vector<CyclotomicInt> spectrum_all_characters(const CayleyGraphSpec& graph) {
    const FiniteRing& ring = graph.ring();
    const std::uint64_t n = ring.scalar_modulus();
    const CyclotomicBasis basis(n);
    std::vector<CyclotomicInt> out;
    std::vector<std::int64_t> counts(n);
    std::vector<std::uint64_t> s_coords;
    for (const auto& psi : enumerate_functionals(ring)) {
        counts.assign(n, 0);
        for (std::uint64_t s : graph.connection_set()) {
            ring.coords_of(s, s_coords);
            ++counts[psi.apply_coords(s_coords)];
        }
        out.push_back(basis.reduce_counts(counts));
    }
    return out;
}

/// Exact integrality of the whole spectrum (early-exit variant of spectrum()).
inline bool is_integral(const CayleyGraphSpec& graph, const LinearFunctional& psi) {
    detail::require_nondegenerate(graph, psi);
    const FiniteRing& ring = graph.ring();
    const CyclotomicBasis basis(ring.scalar_modulus());
    std::vector<std::int64_t> counts;
    std::vector<std::uint64_t> r, s, prod;
    for (std::uint64_t idx = 1; idx < ring.order(); ++idx) {
        detail::eigenvalue_counts(ring, psi, graph.connection_set(), idx, counts, r, s, prod);
        if (!basis.reduce_counts(counts).as_integer()) return false;
    }
    return true;
}

/// True iff a S = S for every unit a mod n, i.e. S is a union of scalar orbits.
inline bool is_stable(const CayleyGraphSpec& graph, const OrbitPartition& orbits) {
    const auto& s = graph.connection_set();
    for (std::uint64_t idx : s)
        for (std::uint64_t member : orbits.orbits[orbits.orbit_of[idx]])
            if (!std::binary_search(s.begin(), s.end(), member)) return false;
    return true;
}

inline bool is_stable(const CayleyGraphSpec& graph) {
    return is_stable(graph, scalar_orbits(graph.ring()));
}

// ---------------------------------------------------------------------------
// Ramanujan sums
// ---------------------------------------------------------------------------

/// c_n(r) = sum over units a of zeta_n^{a r}, by the closed form
/// mu(n/g) phi(n) / phi(n/g) with g = gcd(r, n).
inline std::int64_t ramanujan_sum(std::uint64_t n, std::uint64_t r) {
    if (n == 0) throw std::invalid_argument("ramanujan_sum: n must be positive");
    const std::uint64_t g = std::gcd(r % n, n);
    const std::uint64_t q = n / g;
    const std::int64_t mu = moebius(q);
    if (mu == 0) return 0;
    return mu * static_cast<std::int64_t>(euler_phi(n) / euler_phi(q));
}

// ---------------------------------------------------------------------------
// Theorem verification
// ---------------------------------------------------------------------------

/// Negation classes {s, -s} of the nonzero elements: the atoms from which
/// every symmetric connection set is assembled.
inline std::vector<std::vector<std::uint64_t>> negation_classes(const FiniteRing& ring) {
    std::vector<std::vector<std::uint64_t>> classes;
    std::vector<bool> seen(ring.order(), false);
    std::vector<std::uint64_t> coords, neg;
    for (std::uint64_t idx = 1; idx < ring.order(); ++idx) {
        if (seen[idx]) continue;
        ring.coords_of(idx, coords);
        ring.neg_coords(coords, neg);
        std::uint64_t other = ring.index_of_coords(neg);
        seen[idx] = true;
        if (other == idx) {
            classes.push_back({idx});
        } else {
            seen[other] = true;
            classes.push_back({idx, other});  // idx < other: -idx was unseen
        }
    }
    return classes;
}

struct TheoremReport {
    std::string mode;
    std::uint64_t tested = 0;
    std::uint64_t stable_integral = 0;
    std::uint64_t stable_nonintegral = 0;
    std::uint64_t unstable_integral = 0;
    std::uint64_t unstable_nonintegral = 0;
    std::vector<std::vector<std::uint64_t>> violations;  // offending S, at most 16 kept

    bool consistent() const { return stable_nonintegral == 0 && unstable_integral == 0; }
};

namespace detail {

constexpr std::size_t kVerifierOrderCap = 4096;
constexpr std::size_t kExhaustiveClassCap = 20;

/// Shared tables for testing many connection sets over one (ring, psi).
class TheoremVerifier {
public:
    TheoremVerifier(const FiniteRing& ring, const LinearFunctional& psi)
        : ring_(ring),
          n_(ring.scalar_modulus()),
          basis_(n_),
          orbits_(scalar_orbits(ring)),
          classes_(negation_classes(ring)) {
        if (!psi.ring().same_ring(ring))
            throw std::invalid_argument("verify_theorem: functional from a different ring");
        if (!is_nondegenerate(psi))
            throw std::invalid_argument("verify_theorem: degenerate functional rejected");
        const std::size_t order = ring.order();
        if (order > kVerifierOrderCap)
            throw CapExceeded("verify_theorem: ring order exceeds the verification cap");
        expo_.resize(order * order);
        parallel_chunks(order, [&](std::size_t begin, std::size_t end) {
            std::vector<std::uint64_t> r, t, prod;
            for (std::size_t ri = begin; ri < end; ++ri) {
                ring_.coords_of(ri, r);
                for (std::size_t ti = 0; ti < order; ++ti) {
                    ring_.coords_of(ti, t);
                    ring_.mul_coords(r, t, prod);
                    expo_[ri * order + ti] = static_cast<std::uint32_t>(psi.apply_coords(prod));
                }
            }
        });
        // int64 fast path for reductions when coefficient growth is bounded.
        const auto& rows = basis_.power_table();
        mpz_class max_abs = 0;
        for (const auto& row : rows)
            for (const auto& c : row)
                if (abs(c) > max_abs) max_abs = abs(c);
        mpz_class bound = max_abs * static_cast<unsigned long>(order) *
                          static_cast<unsigned long>(n_);
        fast_ = bound.fits_slong_p() && bound.get_si() < (std::int64_t{1} << 60);
        if (fast_) {
            rows64_.resize(n_, std::vector<std::int64_t>(basis_.degree()));
            for (std::size_t e = 0; e < n_; ++e)
                for (std::size_t j = 0; j < basis_.degree(); ++j)
                    rows64_[e][j] = rows[e][j].get_si();
        }
    }

    const std::vector<std::vector<std::uint64_t>>& classes() const { return classes_; }

    bool subset_integral(const std::vector<std::uint64_t>& s_set) const {
        const std::size_t order = ring_.order();
        std::vector<std::int64_t> counts(n_);
        std::vector<std::int64_t> acc64(basis_.degree());
        for (std::size_t ri = 1; ri < order; ++ri) {
            counts.assign(n_, 0);
            const std::uint32_t* row = &expo_[ri * order];
            for (std::uint64_t s : s_set) ++counts[row[s]];
            if (fast_) {
                std::fill(acc64.begin(), acc64.end(), 0);
                for (std::size_t e = 0; e < n_; ++e) {
                    if (counts[e] == 0) continue;
                    const auto& prow = rows64_[e];
                    for (std::size_t j = 0; j < prow.size(); ++j) acc64[j] += counts[e] * prow[j];
                }
                for (std::size_t j = 1; j < acc64.size(); ++j)
                    if (acc64[j] != 0) return false;
            } else {
                if (!basis_.reduce_counts(counts).as_integer()) return false;
            }
        }
        return true;
    }

    bool subset_stable(const std::vector<bool>& member) const {
        for (const auto& orbit : orbits_.orbits) {
            bool any = false, all = true;
            for (std::uint64_t idx : orbit) {
                if (member[idx]) any = true;
                else all = false;
            }
            if (any && !all) return false;
        }
        return true;
    }

    // A subset of negation classes is an inclusion vector of length classes().size().
    std::pair<bool, bool> classify_choice(const std::vector<std::uint8_t>& include) const {
        std::vector<std::uint64_t> s_set;
        std::vector<bool> member(ring_.order(), false);
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            if (!include[c]) continue;
            for (std::uint64_t idx : classes_[c]) {
                s_set.push_back(idx);
                member[idx] = true;
            }
        }
        std::sort(s_set.begin(), s_set.end());
        return {subset_stable(member), subset_integral(s_set)};
    }

    std::vector<std::uint64_t> choice_to_set(const std::vector<std::uint8_t>& include) const {
        std::vector<std::uint64_t> s_set;
        for (std::size_t c = 0; c < classes_.size(); ++c)
            if (include[c]) s_set.insert(s_set.end(), classes_[c].begin(), classes_[c].end());
        std::sort(s_set.begin(), s_set.end());
        return s_set;
    }

    const OrbitPartition& orbits() const { return orbits_; }
    const FiniteRing& ring() const { return ring_; }

private:
    FiniteRing ring_;
    std::uint64_t n_;
    CyclotomicBasis basis_;
    OrbitPartition orbits_;
    std::vector<std::vector<std::uint64_t>> classes_;
    std::vector<std::uint32_t> expo_;
    bool fast_ = false;
    std::vector<std::vector<std::int64_t>> rows64_;
};

inline TheoremReport run_choices(const TheoremVerifier& verifier,
                                 const std::vector<std::vector<std::uint8_t>>& choices,
                                 std::string mode) {
    TheoremReport report;
    report.mode = std::move(mode);
    report.tested = choices.size();
    std::vector<std::uint8_t> result(choices.size(), 0);
    parallel_chunks(choices.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto [stable, integral] = verifier.classify_choice(choices[i]);
            result[i] = static_cast<std::uint8_t>((stable ? 2 : 0) | (integral ? 1 : 0));
        }
    });
    for (std::size_t i = 0; i < choices.size(); ++i) {
        bool stable = result[i] & 2, integral = result[i] & 1;
        if (stable && integral) ++report.stable_integral;
        else if (stable && !integral) ++report.stable_nonintegral;
        else if (!stable && integral) ++report.unstable_integral;
        else ++report.unstable_nonintegral;
        if (stable != integral && report.violations.size() < 16)
            report.violations.push_back(verifier.choice_to_set(choices[i]));
    }
    return report;
}

}  // namespace detail

/// Tests is_integral <=> is_stable for one symmetric connection set.
inline TheoremReport verify_theorem_single(const FiniteRing& ring, const LinearFunctional& psi,
                                           const std::vector<std::uint64_t>& connection_set) {
    CayleyGraphSpec graph(ring, connection_set);  // validates S
    detail::TheoremVerifier verifier(ring, psi);
    TheoremReport report;
    report.mode = "single";
    report.tested = 1;
    std::vector<bool> member(ring.order(), false);
    for (std::uint64_t idx : graph.connection_set()) member[idx] = true;
    bool stable = verifier.subset_stable(member);
    bool integral = verifier.subset_integral(graph.connection_set());
    if (stable && integral) ++report.stable_integral;
    else if (stable && !integral) ++report.stable_nonintegral;
    else if (!stable && integral) ++report.unstable_integral;
    else ++report.unstable_nonintegral;
    if (stable != integral) report.violations.push_back(graph.connection_set());
    return report;
}

/// Tests every symmetric S (all 2^c unions of negation classes).
/// Refuses when c > 20.
inline TheoremReport verify_theorem_exhaustive(const FiniteRing& ring,
                                               const LinearFunctional& psi) {
    detail::TheoremVerifier verifier(ring, psi);
    const std::size_t c = verifier.classes().size();
    if (c > detail::kExhaustiveClassCap)
        throw CapExceeded("verify_theorem: more than 20 negation classes; use sampling");
    std::vector<std::vector<std::uint8_t>> choices(std::size_t{1} << c,
                                                   std::vector<std::uint8_t>(c, 0));
    for (std::size_t i = 0; i < choices.size(); ++i)
        for (std::size_t bit = 0; bit < c; ++bit) choices[i][bit] = (i >> bit) & 1;
    return detail::run_choices(verifier, choices, "exhaustive");
}

/// Tests k random symmetric subsets drawn from a seeded mt19937_64.
inline TheoremReport verify_theorem_sampled(const FiniteRing& ring, const LinearFunctional& psi,
                                            std::uint64_t k, std::uint64_t seed) {
    detail::TheoremVerifier verifier(ring, psi);
    const std::size_t c = verifier.classes().size();
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::uint8_t>> choices(k, std::vector<std::uint8_t>(c, 0));
    for (auto& choice : choices)
        for (std::size_t bit = 0; bit < c; ++bit) choice[bit] = rng() & 1;
    return detail::run_choices(verifier, choices, "sample");
}

// ---------------------------------------------------------------------------
// DFT matrix
// ---------------------------------------------------------------------------

/// A_R = (zeta^{psi(r t)})_{r,t}: the DFT matrix diagonalizing R-circulants.
/// Entries are materialized on demand from the exponent table.
class DftMatrix {
public:
    static constexpr std::size_t kOrderCap = 256;

    DftMatrix(const FiniteRing& ring, const LinearFunctional& psi)
        : ring_(ring), basis_(ring.scalar_modulus()) {
        if (!psi.ring().same_ring(ring))
            throw std::invalid_argument("DftMatrix: functional from a different ring");
        if (ring.order() > kOrderCap)
            throw CapExceeded("DftMatrix: ring order exceeds the 256 cap");
        const std::size_t order = ring.order();
        expo_.resize(order * order);
        std::vector<std::uint64_t> r, t, prod;
        for (std::size_t ri = 0; ri < order; ++ri) {
            ring_.coords_of(ri, r);
            for (std::size_t ti = 0; ti < order; ++ti) {
                ring_.coords_of(ti, t);
                ring_.mul_coords(r, t, prod);
                expo_[ri * order + ti] = static_cast<std::uint32_t>(psi.apply_coords(prod));
            }
        }
    }

    std::size_t size() const { return ring_.order(); }
    const CyclotomicBasis& basis() const { return basis_; }
    std::uint32_t exponent(std::size_t r, std::size_t t) const { return expo_[r * size() + t]; }
    CyclotomicInt entry(std::size_t r, std::size_t t) const {
        return basis_.root_power(exponent(r, t));
    }

    /// A_R * v for an integer vector v (componentwise exact).
    std::vector<CyclotomicInt> apply(const std::vector<mpz_class>& v) const {
        const std::size_t order = size();
        if (v.size() != order) throw std::invalid_argument("DftMatrix::apply: dimension mismatch");
        std::vector<CyclotomicInt> out;
        out.reserve(order);
        std::vector<mpz_class> counts(basis_.n());
        for (std::size_t r = 0; r < order; ++r) {
            std::fill(counts.begin(), counts.end(), 0);
            for (std::size_t t = 0; t < order; ++t) counts[exponent(r, t)] += v[t];
            out.push_back(basis_.reduce_counts(counts));
        }
        return out;
    }

    /// Checks A_R * conj(A_R)^T = |R| * I exactly (character orthogonality).
    bool gram_is_order_times_identity() const {
        const std::size_t order = size();
        const std::uint64_t n = basis_.n();
        std::vector<std::int64_t> counts(n);
        for (std::size_t r = 0; r < order; ++r)
            for (std::size_t s = 0; s < order; ++s) {
                counts.assign(n, 0);
                for (std::size_t t = 0; t < order; ++t)
                    ++counts[(exponent(r, t) + n - exponent(s, t)) % n];
                auto value = basis_.reduce_counts(counts).as_integer();
                if (!value) return false;
                if (r == s ? (*value != static_cast<long>(order)) : (*value != 0)) return false;
            }
        return true;
    }

private:
    FiniteRing ring_;
    CyclotomicBasis basis_;
    std::vector<std::uint32_t> expo_;
};

}  // namespace cayley
