// Shared fixtures for the unit and acceptance suites: the standard ring
// battery, the truncated-plane counterexample, and small helpers.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cayley/cayley.hpp"

namespace testsupport {

struct NamedSpec {
    std::string name;
    cayley::RingSpec spec;
};

/// F_p[x,y]/(x^2, xy, y^2): basis {1, x, y}, all products of x, y vanish.
/// Not a symmetric algebra for any p.
inline cayley::RingSpec truncated_plane_spec(std::uint64_t p) {
    cayley::ExplicitSpec s;
    s.n = p;
    s.divisors = {p, p, p};
    s.one = {1, 0, 0};
    auto coords = [](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return std::vector<std::uint64_t>{a, b, c};
    };
    s.products = {
        {coords(1, 0, 0), coords(0, 1, 0), coords(0, 0, 1)},
        {coords(0, 1, 0), coords(0, 0, 0), coords(0, 0, 0)},
        {coords(0, 0, 1), coords(0, 0, 0), coords(0, 0, 0)},
    };
    return cayley::RingSpec{std::move(s)};
}

/// The main-theorem battery: Z/n for 3..16, two group algebras, Z/4[x]/(x^2),
/// Z[i]/3, F_2[t]/t^3 and the CRT product Z/2 x Z/3.
inline std::vector<NamedSpec> theorem_battery() {
    using namespace cayley;
    std::vector<NamedSpec> out;
    for (std::uint64_t n = 3; n <= 16; ++n)
        out.push_back({"zn" + std::to_string(n), RingSpec{ZnSpec{n}}});
    out.push_back({"z2[c2]", RingSpec{GroupAlgebraSpec{2, {2}}}});
    out.push_back({"z3[c3]", RingSpec{GroupAlgebraSpec{3, {3}}}});
    out.push_back({"z4[x]/x^2", RingSpec{MonogenicQuotientSpec{4, {0, 0, 1}}}});
    out.push_back({"z[i]/3", RingSpec{MonogenicQuotientSpec{3, {1, 0, 1}}}});
    out.push_back({"f2[t]/t^3", RingSpec{MonogenicQuotientSpec{2, {0, 0, 0, 1}}}});
    out.push_back({"z2xz3", RingSpec{ProductSpec{6, {RingSpec{ZnSpec{2}}, RingSpec{ZnSpec{3}}}}}});
    return out;
}

/// Battery extended with poly-quotient instances so every constructor variant
/// with a canonical functional is exercised.
inline std::vector<NamedSpec> constructor_battery() {
    using namespace cayley;
    auto out = theorem_battery();
    out.push_back({"f4[t]/(t^2+t+1)",
                   RingSpec{PolyQuotientSpec{2, {1, 1, 1}, {{1}, {1}, {1}}}}});
    out.push_back({"f9", RingSpec{PolyQuotientSpec{3, {1, 0, 1}, {{0, 0}, {1, 0}}}}});
    return out;
}

/// Random symmetric connection set (union of negation classes, each kept with
/// probability 1/2).
inline std::vector<std::uint64_t> random_symmetric_set(const cayley::FiniteRing& ring,
                                                       std::mt19937_64& rng) {
    std::vector<std::uint64_t> s;
    for (const auto& cls : cayley::negation_classes(ring))
        if (rng() & 1) s.insert(s.end(), cls.begin(), cls.end());
    std::sort(s.begin(), s.end());
    return s;
}

/// Seeded pool of small rings (|R| <= 256) drawn from every constructor.
inline std::vector<NamedSpec> random_ring_pool() {
    using namespace cayley;
    std::vector<NamedSpec> out;
    for (std::uint64_t n = 3; n <= 40; ++n)
        out.push_back({"zn" + std::to_string(n), RingSpec{ZnSpec{n}}});
    for (std::uint64_t n : {2, 3, 5, 7, 11, 13})
        out.push_back({"zn" + std::to_string(n) + "[x]/x^2",
                       RingSpec{MonogenicQuotientSpec{n, {0, 0, 1}}}});
    out.push_back({"z[i]/5-split", RingSpec{MonogenicQuotientSpec{5, {-2, 1}}}});
    out.push_back({"z[i]/7", RingSpec{MonogenicQuotientSpec{7, {1, 0, 1}}}});
    out.push_back({"z8[x]/(x^2-2)", RingSpec{MonogenicQuotientSpec{8, {-2, 0, 1}}}});
    out.push_back({"f2[t]/t^4", RingSpec{MonogenicQuotientSpec{2, {0, 0, 0, 0, 1}}}});
    out.push_back({"f3[t]/t^3", RingSpec{MonogenicQuotientSpec{3, {0, 0, 0, 1}}}});
    out.push_back({"z4[c2]", RingSpec{GroupAlgebraSpec{4, {2}}}});
    out.push_back({"z2[c2xc2]", RingSpec{GroupAlgebraSpec{2, {2, 2}}}});
    out.push_back({"z3[c3]", RingSpec{GroupAlgebraSpec{3, {3}}}});
    out.push_back({"f4", RingSpec{PolyQuotientSpec{2, {1, 1, 1}, {{0}, {1}}}}});
    out.push_back({"f9[t]/t^2", RingSpec{PolyQuotientSpec{3, {1, 0, 1}, {{0}, {0}, {1}}}}});
    out.push_back({"z6xz4", RingSpec{ProductSpec{12, {RingSpec{ZnSpec{6}}, RingSpec{ZnSpec{4}}}}}});
    out.push_back({"z5xz5", RingSpec{ProductSpec{5, {RingSpec{ZnSpec{5}}, RingSpec{ZnSpec{5}}}}}});
    out.push_back(
        {"z2xz9", RingSpec{ProductSpec{18, {RingSpec{ZnSpec{2}}, RingSpec{ZnSpec{9}}}}}});
    return out;
}

}  // namespace testsupport
