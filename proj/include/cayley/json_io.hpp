/**
 * @file json_io.hpp
 * @brief JSON ring-spec format, spectrum report serialization, DOT export.
 *
 * Spec format mirrors the RingSpec variants; polynomial coefficients are
 * listed from the constant term upward, e.g.
 *   {"kind":"monogenic","n":3,"g":[1,0,1]}   for Z[x]/(x^2+1, 3).
 */
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cayley/functional.hpp"
#include "cayley/ring.hpp"
#include "cayley/spectra.hpp"

namespace cayley {

using json = nlohmann::json;

struct SpecParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json spec_to_json(const RingSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ZnSpec>) {
                return json{{"kind", "zn"}, {"n", s.n}};
            } else if constexpr (std::is_same_v<T, GroupAlgebraSpec>) {
                return json{{"kind", "group_algebra"}, {"n", s.n}, {"factors", s.factors}};
            } else if constexpr (std::is_same_v<T, PolyQuotientSpec>) {
                return json{{"kind", "poly_quotient"},
                            {"p", s.p},
                            {"base_poly", s.base_poly},
                            {"modulus", s.modulus}};
            } else if constexpr (std::is_same_v<T, MonogenicQuotientSpec>) {
                return json{{"kind", "monogenic"}, {"n", s.n}, {"g", s.g}};
            } else if constexpr (std::is_same_v<T, ProductSpec>) {
                json factors = json::array();
                for (const auto& f : s.specs) factors.push_back(spec_to_json(f));
                return json{{"kind", "product"}, {"n", s.declared_n}, {"specs", factors}};
            } else {
                return json{{"kind", "explicit"},
                            {"n", s.n},
                            {"divisors", s.divisors},
                            {"one", s.one},
                            {"products", s.products}};
            }
        },
        spec.node);
}

namespace detail {

inline std::uint64_t require_positive(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned() || j[key].get<std::uint64_t>() == 0)
        throw SpecParseError(std::string("ring spec: missing or invalid positive integer '") +
                             key + "'");
    return j[key].get<std::uint64_t>();
}

template <typename T>
std::vector<T> int_list(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw SpecParseError(std::string("ring spec: missing array '") + key + "'");
    std::vector<T> out;
    for (const auto& v : j[key]) {
        bool ok = std::is_signed_v<T> ? v.is_number_integer() : v.is_number_unsigned();
        if (!ok)
            throw SpecParseError(std::string("ring spec: '") + key + "' must hold " +
                                 (std::is_signed_v<T> ? "integers" : "nonnegative integers"));
        out.push_back(v.get<T>());
    }
    return out;
}

}  // namespace detail

inline RingSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw SpecParseError("ring spec: expected an object with a 'kind' string");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "zn") {
        return RingSpec{ZnSpec{detail::require_positive(j, "n")}};
    }
    if (kind == "group_algebra") {
        GroupAlgebraSpec s;
        s.n = detail::require_positive(j, "n");
        s.factors = detail::int_list<std::uint64_t>(j, "factors");
        return RingSpec{std::move(s)};
    }
    if (kind == "poly_quotient") {
        PolyQuotientSpec s;
        s.p = detail::require_positive(j, "p");
        s.base_poly = detail::int_list<std::uint64_t>(j, "base_poly");
        if (!j.contains("modulus") || !j["modulus"].is_array())
            throw SpecParseError("ring spec: poly_quotient needs a 'modulus' array");
        for (const auto& coeff : j["modulus"]) {
            if (coeff.is_number_unsigned())
                s.modulus.push_back({coeff.get<std::uint64_t>()});
            else if (coeff.is_array()) {
                std::vector<std::uint64_t> c;
                for (const auto& v : coeff) {
                    if (!v.is_number_unsigned())
                        throw SpecParseError("ring spec: modulus entries must be nonnegative");
                    c.push_back(v.get<std::uint64_t>());
                }
                s.modulus.push_back(std::move(c));
            } else
                throw SpecParseError("ring spec: modulus coefficients must be ints or int arrays");
        }
        return RingSpec{std::move(s)};
    }
    if (kind == "monogenic") {
        MonogenicQuotientSpec s;
        s.n = detail::require_positive(j, "n");
        s.g = detail::int_list<std::int64_t>(j, "g");
        return RingSpec{std::move(s)};
    }
    if (kind == "product") {
        ProductSpec s;
        s.declared_n = detail::require_positive(j, "n");
        if (!j.contains("specs") || !j["specs"].is_array() || j["specs"].empty())
            throw SpecParseError("ring spec: product needs a nonempty 'specs' array");
        for (const auto& f : j["specs"]) s.specs.push_back(spec_from_json(f));
        return RingSpec{std::move(s)};
    }
    if (kind == "explicit") {
        ExplicitSpec s;
        s.n = detail::require_positive(j, "n");
        s.divisors = detail::int_list<std::uint64_t>(j, "divisors");
        s.one = detail::int_list<std::uint64_t>(j, "one");
        if (!j.contains("products") || !j["products"].is_array())
            throw SpecParseError("ring spec: explicit needs a 'products' table");
        for (const auto& row : j["products"]) {
            std::vector<std::vector<std::uint64_t>> r;
            for (const auto& entry : row) {
                std::vector<std::uint64_t> coords;
                for (const auto& v : entry) {
                    if (!v.is_number_unsigned())
                        throw SpecParseError("ring spec: product entries must be nonnegative");
                    coords.push_back(v.get<std::uint64_t>());
                }
                r.push_back(std::move(coords));
            }
            s.products.push_back(std::move(r));
        }
        return RingSpec{std::move(s)};
    }
    throw SpecParseError("ring spec: unknown kind '" + kind + "'");
}

inline RingSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open ring spec file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SpecParseError("malformed JSON in " + path + ": " + e.what());
    }
    return spec_from_json(j);
}

/// FNV-1a hash of the canonical (key-sorted, compact) spec serialization.
inline std::string spec_hash(const RingSpec& spec) {
    const std::string canonical = spec_to_json(spec).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : canonical) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline json mpz_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

inline json cyclotomic_to_json(const CyclotomicInt& c) {
    json coeffs = json::array();
    for (const auto& x : c.coeffs()) coeffs.push_back(mpz_to_json(x));
    return json{{"n", c.order()}, {"coeffs", coeffs}};
}

inline json functional_to_json(const LinearFunctional& psi, const std::string& ring_hash) {
    return json{{"ring", ring_hash}, {"psi", psi.generator_values()}};
}

inline json report_to_json(const SpectrumReport& report, const std::string& ring_hash) {
    json eigenvalues = json::array();
    for (std::size_t r = 0; r < report.eigenvalues.size(); ++r) {
        json entry{{"r", r}};
        json coeffs = json::array();
        for (const auto& c : report.eigenvalues[r].coeffs()) coeffs.push_back(mpz_to_json(c));
        entry["coeffs"] = std::move(coeffs);
        entry["int"] = report.integer_values[r] ? mpz_to_json(*report.integer_values[r])
                                                : json(nullptr);
        eigenvalues.push_back(std::move(entry));
    }
    return json{{"ring", ring_hash},
                {"S", report.graph.connection_set()},
                {"integral", report.integral},
                {"eigenvalues", std::move(eigenvalues)}};
}

/// Re-validates a serialized report: each "int" must match its coefficient
/// vector and the "integral" flag must agree with the entries.
inline bool report_json_consistent(const json& j) {
    if (!j.contains("integral") || !j.contains("eigenvalues")) return false;
    bool all_integral = true;
    for (const auto& entry : j["eigenvalues"]) {
        const auto& coeffs = entry["coeffs"];
        bool rational = true;
        for (std::size_t k = 1; k < coeffs.size(); ++k) {
            const auto& c = coeffs[k];
            bool zero = c.is_number_integer() ? c.get<std::int64_t>() == 0
                                              : mpz_class(c.get<std::string>()) == 0;
            if (!zero) rational = false;
        }
        if (rational) {
            mpz_class head = coeffs[0].is_number_integer()
                                 ? mpz_class(static_cast<long>(coeffs[0].get<std::int64_t>()))
                                 : mpz_class(coeffs[0].get<std::string>());
            mpz_class claimed = entry["int"].is_null()
                                    ? mpz_class(0)
                                    : (entry["int"].is_number_integer()
                                           ? mpz_class(static_cast<long>(entry["int"].get<std::int64_t>()))
                                           : mpz_class(entry["int"].get<std::string>()));
            if (entry["int"].is_null() || claimed != head) return false;
        } else {
            if (!entry["int"].is_null()) return false;
            all_integral = false;
        }
    }
    return j["integral"].get<bool>() == all_integral;
}

/// Digest of the eigenvalue multiset (rendered values with multiplicities).
inline std::string spectrum_digest(const SpectrumReport& report) {
    std::string flattened;
    for (const auto& [value, count] : report.multiset_summary)
        flattened += value + ":" + std::to_string(count) + ";";
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : flattened) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// DOT export; vertex labels are element coordinates, one edge per pair.
inline std::string to_dot(const CayleyGraphSpec& graph) {
    const FiniteRing& ring = graph.ring();
    std::ostringstream os;
    os << "graph cayley {\n";
    std::vector<std::uint64_t> coords, s, sum;
    for (std::uint64_t idx = 0; idx < ring.order(); ++idx) {
        ring.coords_of(idx, coords);
        os << "  v" << idx << " [label=\"(";
        for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
        os << ")\"];\n";
    }
    for (std::uint64_t a = 0; a < ring.order(); ++a) {
        ring.coords_of(a, coords);
        for (std::uint64_t si : graph.connection_set()) {
            ring.coords_of(si, s);
            ring.add_coords(coords, s, sum);
            std::uint64_t b = ring.index_of_coords(sum);
            if (a < b) os << "  v" << a << " -- v" << b << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace cayley
