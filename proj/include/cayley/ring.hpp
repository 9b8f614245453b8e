/**
 * @file ring.hpp
 * @brief Finite commutative Z/n-algebras built from declarative specs.
 *
 * A ring is stored as its additive group  Z/d_1 x ... x Z/d_m  (each d_i
 * dividing the declared scalar modulus n) together with the multiplication
 * of basis elements, e_i * e_j = sum_k c_ijk e_k.  Multiplication is checked
 * to be commutative, associative and unital on all basis pairs/triples at
 * build time; bilinearity then extends the checks to the whole ring.
 *
 * Elements are indexed in mixed-radix order with the first coordinate
 * varying fastest; index 0 is always the zero element, and the order is
 * stable across rebuilds from the same spec.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cayley/numtheory.hpp"

namespace cayley {

// ---------------------------------------------------------------------------
// Ring specs
// ---------------------------------------------------------------------------

/// Z/n.
struct ZnSpec {
    std::uint64_t n = 0;
};

/// Group algebra Z/n[G] for G = C_{m1} x ... x C_{mk}.
struct GroupAlgebraSpec {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> factors;
};

/// F_q[t]/(f) realized as an F_p-algebra, where F_q = F_p[y]/(base_poly).
/// Coefficients of the modulus f are F_q elements given in the y-power
/// basis, constant term first in both directions.
struct PolyQuotientSpec {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> base_poly;
    std::vector<std::vector<std::uint64_t>> modulus;
};

/// Z[x]/(g, n) for a monic integer polynomial g, constant term first.
struct MonogenicQuotientSpec {
    std::uint64_t n = 0;
    std::vector<std::int64_t> g;
};

struct RingSpec;

/// Direct product of factor rings, re-declared over Z/declared_n.
struct ProductSpec {
    std::uint64_t declared_n = 0;
    std::vector<RingSpec> specs;
};

/// Raw structure-constant encoding: additive group given by divisors,
/// products[i][j] = coordinates of e_i * e_j.  Covers rings outside the
/// named constructors (e.g. F_p[x,y]/(x^2, xy, y^2)).
struct ExplicitSpec {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> divisors;
    std::vector<std::uint64_t> one;
    std::vector<std::vector<std::vector<std::uint64_t>>> products;
};

struct RingSpec {
    std::variant<ZnSpec, GroupAlgebraSpec, PolyQuotientSpec, MonogenicQuotientSpec,
                 ProductSpec, ExplicitSpec>
        node;
};

/// The scalar modulus a spec declares (n for most variants, p for F_p-algebras).
inline std::uint64_t declared_scalar_modulus(const RingSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::uint64_t {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ZnSpec>) return s.n;
            else if constexpr (std::is_same_v<T, GroupAlgebraSpec>) return s.n;
            else if constexpr (std::is_same_v<T, PolyQuotientSpec>) return s.p;
            else if constexpr (std::is_same_v<T, MonogenicQuotientSpec>) return s.n;
            else if constexpr (std::is_same_v<T, ProductSpec>) return s.declared_n;
            else return s.n;
        },
        spec.node);
}

// ---------------------------------------------------------------------------
// FiniteRing / RingElement
// ---------------------------------------------------------------------------

class RingElement;
class FiniteRing;

namespace detail {

struct RingData {
    std::uint64_t n = 1;
    std::vector<std::uint64_t> divisors;
    std::vector<std::uint64_t> one;
    // table[i][j] = coordinates of e_i * e_j, entries reduced mod divisors.
    std::vector<std::vector<std::vector<std::uint64_t>>> table;
    std::uint64_t order = 1;
    std::uint64_t characteristic = 1;
};

FiniteRing finish_ring(RingData data);

}  // namespace detail

class FiniteRing {
public:
    FiniteRing() = default;

    bool valid() const { return impl_ != nullptr; }
    bool same_ring(const FiniteRing& other) const { return impl_ == other.impl_; }

    std::uint64_t scalar_modulus() const { return impl().n; }
    std::size_t rank() const { return impl().divisors.size(); }
    const std::vector<std::uint64_t>& divisors() const { return impl().divisors; }
    std::uint64_t order() const { return impl().order; }
    std::uint64_t characteristic() const { return impl().characteristic; }

    RingElement zero() const;
    RingElement one() const;
    RingElement element_at(std::uint64_t index) const;
    RingElement from_coords(std::vector<std::uint64_t> coords) const;

    // Low-level coordinate ops; out buffers may alias inputs only where noted.
    void coords_of(std::uint64_t index, std::vector<std::uint64_t>& out) const {
        const auto& d = impl().divisors;
        out.resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            out[i] = index % d[i];
            index /= d[i];
        }
    }
    std::uint64_t index_of_coords(const std::vector<std::uint64_t>& coords) const {
        const auto& d = impl().divisors;
        std::uint64_t idx = 0;
        for (std::size_t i = d.size(); i-- > 0;) idx = idx * d[i] + (coords[i] % d[i]);
        return idx;
    }
    void add_coords(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                    std::vector<std::uint64_t>& out) const {
        const auto& d = impl().divisors;
        out.resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) out[i] = (a[i] + b[i]) % d[i];
    }
    void neg_coords(const std::vector<std::uint64_t>& a, std::vector<std::uint64_t>& out) const {
        const auto& d = impl().divisors;
        out.resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) out[i] = (d[i] - a[i] % d[i]) % d[i];
    }
    void scalar_coords(std::uint64_t k, const std::vector<std::uint64_t>& a,
                       std::vector<std::uint64_t>& out) const {
        const auto& d = impl().divisors;
        out.resize(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) out[i] = (k % d[i]) * a[i] % d[i];
    }
    // out must not alias a or b.
    void mul_coords(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                    std::vector<std::uint64_t>& out) const {
        const detail::RingData& r = impl();
        const std::size_t m = r.divisors.size();
        out.assign(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (b[j] == 0) continue;
                const auto& cij = r.table[i][j];
                for (std::size_t k = 0; k < m; ++k) {
                    if (cij[k] == 0) continue;
                    std::uint64_t dk = r.divisors[k];
                    std::uint64_t t = (a[i] % dk) * (b[j] % dk) % dk;
                    out[k] = (out[k] + t * cij[k]) % dk;
                }
            }
        }
    }

    /// Re-declares the same ring as a Z/m-algebra; requires characteristic | m.
    FiniteRing with_scalar_modulus(std::uint64_t m) const;

    friend FiniteRing detail::finish_ring(detail::RingData data);

private:
    const detail::RingData& impl() const {
        if (!impl_) throw std::logic_error("FiniteRing: empty handle");
        return *impl_;
    }

    std::shared_ptr<const detail::RingData> impl_;
};

class RingElement {
public:
    RingElement() = default;
    RingElement(FiniteRing ring, std::vector<std::uint64_t> coords)
        : ring_(std::move(ring)), coords_(std::move(coords)) {
        if (coords_.size() != ring_.rank())
            throw std::invalid_argument("RingElement: coordinate count does not match ring rank");
        const auto& d = ring_.divisors();
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] %= d[i];
    }

    const FiniteRing& ring() const { return ring_; }
    const std::vector<std::uint64_t>& coords() const { return coords_; }
    std::uint64_t index() const { return ring_.index_of_coords(coords_); }
    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](std::uint64_t c) { return c == 0; });
    }

    /// Scalar action of k in Z/n.
    RingElement scaled(std::uint64_t k) const {
        std::vector<std::uint64_t> out;
        ring_.scalar_coords(k, coords_, out);
        return RingElement(ring_, std::move(out));
    }

    friend RingElement operator+(const RingElement& a, const RingElement& b) {
        require_same(a, b);
        std::vector<std::uint64_t> out;
        a.ring_.add_coords(a.coords_, b.coords_, out);
        return RingElement(a.ring_, std::move(out));
    }
    friend RingElement operator-(const RingElement& a) {
        std::vector<std::uint64_t> out;
        a.ring_.neg_coords(a.coords_, out);
        return RingElement(a.ring_, std::move(out));
    }
    friend RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }
    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        require_same(a, b);
        std::vector<std::uint64_t> out;
        a.ring_.mul_coords(a.coords_, b.coords_, out);
        return RingElement(a.ring_, std::move(out));
    }
    friend bool operator==(const RingElement& a, const RingElement& b) {
        require_same(a, b);
        return a.coords_ == b.coords_;
    }
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

    RingElement pow(std::uint64_t e) const {
        RingElement result = ring_.one();
        RingElement base = *this;
        while (e > 0) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

private:
    static void require_same(const RingElement& a, const RingElement& b) {
        if (!a.ring_.same_ring(b.ring_))
            throw std::invalid_argument("RingElement: elements belong to different rings");
    }

    FiniteRing ring_;
    std::vector<std::uint64_t> coords_;
};

inline RingElement FiniteRing::zero() const {
    return RingElement(*this, std::vector<std::uint64_t>(rank(), 0));
}
inline RingElement FiniteRing::one() const { return RingElement(*this, impl().one); }
inline RingElement FiniteRing::element_at(std::uint64_t index) const {
    if (index >= order()) throw std::out_of_range("FiniteRing: element index out of range");
    std::vector<std::uint64_t> c;
    coords_of(index, c);
    return RingElement(*this, std::move(c));
}
inline RingElement FiniteRing::from_coords(std::vector<std::uint64_t> coords) const {
    return RingElement(*this, std::move(coords));
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

namespace detail {

constexpr std::uint64_t kMaxRingOrder = std::uint64_t{1} << 24;

// F_p polynomial helpers (coefficients constant-first, values < p).
using FpPoly = std::vector<std::uint64_t>;

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    fp_trim(out);
    return out;
}

// Remainder of a mod monic b.
inline FpPoly fp_rem(FpPoly a, const FpPoly& b, std::uint64_t p) {
    fp_trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        std::uint64_t lead = a.back();
        std::size_t shift = a.size() - 1 - db;
        if (lead != 0)
            for (std::size_t i = 0; i < b.size(); ++i)
                a[shift + i] = (a[shift + i] + p - lead * b[i] % p) % p;
        a.pop_back();
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline bool fp_irreducible(const FpPoly& h, std::uint64_t p) {
    const std::size_t deg = h.size() - 1;
    if (deg == 0) return false;
    if (deg == 1) return true;
    // Trial division by all monic polynomials of degree 1..deg/2.
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < d; ++i) {
            if (combos > (std::uint64_t{1} << 22) / p)
                throw std::invalid_argument("base_poly too large to certify irreducible");
            combos *= p;
        }
        FpPoly cand(d + 1, 0);
        cand[d] = 1;
        for (std::uint64_t code = 0; code < combos; ++code) {
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                cand[i] = c % p;
                c /= p;
            }
            if (fp_rem(h, cand, p).empty()) return false;
        }
    }
    return true;
}

// F_q = F_p[y]/(h) elements as fixed-length coordinate vectors.
struct FqContext {
    std::uint64_t p;
    FpPoly h;  // monic, degree e >= 1
    std::size_t e() const { return h.size() - 1; }

    std::vector<std::uint64_t> reduce(const FpPoly& a) const {
        FpPoly r = fp_rem(a, h, p);
        r.resize(e(), 0);
        return r;
    }
    std::vector<std::uint64_t> mul(const std::vector<std::uint64_t>& a,
                                   const std::vector<std::uint64_t>& b) const {
        return reduce(fp_mul(a, b, p));
    }
    bool is_zero(const std::vector<std::uint64_t>& a) const {
        return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
    }
    std::uint64_t q() const {
        std::uint64_t out = 1;
        for (std::size_t i = 0; i < e(); ++i) {
            if (out > kMaxRingOrder / p)
                throw std::invalid_argument("PolyQuotient: field size exceeds the supported cap");
            out *= p;
        }
        return out;
    }
    std::vector<std::uint64_t> pow(std::vector<std::uint64_t> base, std::uint64_t exp) const {
        std::vector<std::uint64_t> result(e(), 0);
        result[0] = 1 % p;
        while (exp > 0) {
            if (exp & 1) result = mul(result, base);
            base = mul(base, base);
            exp >>= 1;
        }
        return result;
    }
    std::vector<std::uint64_t> inverse(const std::vector<std::uint64_t>& a) const {
        if (is_zero(a)) throw std::invalid_argument("FqContext: inverse of zero");
        return pow(a, q() - 2);
    }
};

}  // namespace detail

FiniteRing build_ring(const RingSpec& spec);

/// Componentwise product on concatenated coordinates, re-declared over
/// Z/declared_n.  Requires char(r1) | declared_n and char(r2) | declared_n.
inline FiniteRing product_ring(const FiniteRing& r1, const FiniteRing& r2,
                               std::uint64_t declared_n) {
    if (declared_n == 0) throw std::invalid_argument("product_ring: declared modulus must be positive");
    if (declared_n % r1.characteristic() != 0 || declared_n % r2.characteristic() != 0)
        throw std::invalid_argument(
            "product_ring: declared modulus is not a common multiple of factor characteristics");
    detail::RingData impl;
    impl.n = declared_n;
    const std::size_t m1 = r1.rank(), m2 = r2.rank(), m = m1 + m2;
    impl.divisors = r1.divisors();
    impl.divisors.insert(impl.divisors.end(), r2.divisors().begin(), r2.divisors().end());
    impl.one = r1.one().coords();
    {
        auto c2 = r2.one().coords();
        impl.one.insert(impl.one.end(), c2.begin(), c2.end());
    }
    impl.table.assign(m, std::vector<std::vector<std::uint64_t>>(m, std::vector<std::uint64_t>(m, 0)));
    std::vector<std::uint64_t> ei, ej, prod;
    for (std::size_t i = 0; i < m1; ++i)
        for (std::size_t j = 0; j < m1; ++j) {
            ei.assign(m1, 0); ei[i] = 1;
            ej.assign(m1, 0); ej[j] = 1;
            r1.mul_coords(ei, ej, prod);
            for (std::size_t k = 0; k < m1; ++k) impl.table[i][j][k] = prod[k];
        }
    for (std::size_t i = 0; i < m2; ++i)
        for (std::size_t j = 0; j < m2; ++j) {
            ei.assign(m2, 0); ei[i] = 1;
            ej.assign(m2, 0); ej[j] = 1;
            r2.mul_coords(ei, ej, prod);
            for (std::size_t k = 0; k < m2; ++k) impl.table[m1 + i][m1 + j][m1 + k] = prod[k];
        }
    return detail::finish_ring(std::move(impl));
}

inline FiniteRing FiniteRing::with_scalar_modulus(std::uint64_t m) const {
    if (m == 0 || m % characteristic() != 0)
        throw std::invalid_argument("with_scalar_modulus: characteristic does not divide new modulus");
    detail::RingData copy = impl();
    copy.n = m;
    return detail::finish_ring(std::move(copy));
}

inline FiniteRing detail::finish_ring(detail::RingData impl) {
    const std::size_t m = impl.divisors.size();
    if (m == 0) throw std::invalid_argument("ring must have rank >= 1");
    if (impl.n == 0) throw std::invalid_argument("scalar modulus must be positive");
    impl.order = 1;
    impl.characteristic = 1;
    for (std::uint64_t d : impl.divisors) {
        if (d == 0) throw std::invalid_argument("elementary divisors must be positive");
        if (impl.n % d != 0)
            throw std::invalid_argument("elementary divisor does not divide the scalar modulus");
        if (impl.order > detail::kMaxRingOrder / d)
            throw std::invalid_argument("ring order exceeds the supported cap");
        impl.order *= d;
        impl.characteristic = std::lcm(impl.characteristic, d);
    }
    if (impl.one.size() != m) throw std::invalid_argument("identity coordinates have wrong length");
    for (std::size_t i = 0; i < m; ++i) impl.one[i] %= impl.divisors[i];
    if (impl.table.size() != m) throw std::invalid_argument("structure constant table has wrong shape");
    for (auto& row : impl.table) {
        if (row.size() != m) throw std::invalid_argument("structure constant table has wrong shape");
        for (auto& entry : row) {
            if (entry.size() != m)
                throw std::invalid_argument("structure constant table has wrong shape");
            for (std::size_t k = 0; k < m; ++k) entry[k] %= impl.divisors[k];
        }
    }

    // Additive order of 1 must equal the group exponent.
    std::uint64_t one_order = 1;
    for (std::size_t i = 0; i < m; ++i)
        one_order = std::lcm(one_order, impl.divisors[i] / std::gcd(impl.divisors[i], impl.one[i]));
    if (one_order != impl.characteristic)
        throw std::invalid_argument("identity element has wrong additive order");

    FiniteRing ring;
    ring.impl_ = std::make_shared<const detail::RingData>(std::move(impl));
    const detail::RingData& r = *ring.impl_;

    // Commutativity on basis pairs.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (r.table[i][j] != r.table[j][i])
                throw std::invalid_argument("multiplication is not commutative");

    // Identity law on basis elements.
    std::vector<std::uint64_t> ei(m), lhs, rhs;
    for (std::size_t i = 0; i < m; ++i) {
        std::fill(ei.begin(), ei.end(), 0);
        ei[i] = 1 % r.divisors[i];
        ring.mul_coords(r.one, ei, lhs);
        if (lhs != ei) throw std::invalid_argument("declared identity is not a unit element");
    }

    // Associativity on basis triples; bilinearity extends it to the ring.
    std::vector<std::uint64_t> ek(m), ab, bc;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) {
                std::fill(ek.begin(), ek.end(), 0);
                ek[k] = 1 % r.divisors[k];
                ring.mul_coords(r.table[i][j], ek, lhs);
                std::fill(ei.begin(), ei.end(), 0);
                ei[i] = 1 % r.divisors[i];
                ring.mul_coords(ei, r.table[j][k], rhs);
                if (lhs != rhs) throw std::invalid_argument("multiplication is not associative");
            }

    return ring;
}

namespace detail {

inline FiniteRing build_zn(const ZnSpec& s) {
    if (s.n == 0) throw std::invalid_argument("Zn: n must be positive");
    RingData impl;
    impl.n = s.n;
    impl.divisors = {s.n};
    impl.one = {1 % s.n};
    impl.table = {{{1 % s.n}}};
    return finish_ring(std::move(impl));
}

inline FiniteRing build_group_algebra(const GroupAlgebraSpec& s) {
    if (s.n == 0) throw std::invalid_argument("GroupAlgebra: n must be positive");
    std::uint64_t g_order = 1;
    for (std::uint64_t f : s.factors) {
        if (f == 0) throw std::invalid_argument("GroupAlgebra: cycle orders must be positive");
        if (g_order > kMaxRingOrder / f)
            throw std::invalid_argument("GroupAlgebra: group too large");
        g_order *= f;
    }
    const std::size_t m = static_cast<std::size_t>(g_order);
    RingData impl;
    impl.n = s.n;
    impl.divisors.assign(m, s.n);
    impl.one.assign(m, 0);
    impl.one[0] = 1 % s.n;
    impl.table.assign(m, std::vector<std::vector<std::uint64_t>>(m, std::vector<std::uint64_t>(m, 0)));
    // Group element index: mixed radix over the cycle factors, first fastest.
    auto add_group = [&](std::uint64_t a, std::uint64_t b) {
        std::uint64_t out = 0, mult = 1;
        for (std::uint64_t f : s.factors) {
            std::uint64_t ga = a % f, gb = b % f;
            a /= f; b /= f;
            out += ((ga + gb) % f) * mult;
            mult *= f;
        }
        return out;
    };
    for (std::uint64_t i = 0; i < g_order; ++i)
        for (std::uint64_t j = 0; j < g_order; ++j)
            impl.table[i][j][add_group(i, j)] = 1 % s.n;
    return finish_ring(std::move(impl));
}

inline FiniteRing build_monogenic(const MonogenicQuotientSpec& s) {
    if (s.n == 0) throw std::invalid_argument("MonogenicQuotient: n must be positive");
    if (s.n > kMaxRingOrder)
        throw std::invalid_argument("MonogenicQuotient: ring order exceeds the supported cap");
    if (s.g.size() < 2) throw std::invalid_argument("MonogenicQuotient: g must have degree >= 1");
    if (s.g.back() != 1) throw std::invalid_argument("MonogenicQuotient: g must be monic");
    const std::size_t m = s.g.size() - 1;
    // Reduce g mod n.
    std::vector<std::uint64_t> g(m);  // low coefficients only
    for (std::size_t i = 0; i < m; ++i) {
        std::int64_t c = s.g[i] % static_cast<std::int64_t>(s.n);
        if (c < 0) c += static_cast<std::int64_t>(s.n);
        g[i] = static_cast<std::uint64_t>(c);
    }
    // x^t mod (g, n) for t <= 2m-2.
    std::vector<std::vector<std::uint64_t>> xpow(2 * m - 1, std::vector<std::uint64_t>(m, 0));
    for (std::size_t t = 0; t < m; ++t) xpow[t][t] = 1 % s.n;
    for (std::size_t t = m; t <= 2 * m - 2; ++t) {
        const auto& prev = xpow[t - 1];
        auto& cur = xpow[t];
        std::uint64_t top = prev[m - 1];
        for (std::size_t i = m; i-- > 1;) cur[i] = prev[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (std::size_t i = 0; i < m; ++i)
                cur[i] = (cur[i] + (s.n - top * g[i] % s.n)) % s.n;
    }
    RingData impl;
    impl.n = s.n;
    impl.divisors.assign(m, s.n);
    impl.one.assign(m, 0);
    impl.one[0] = 1 % s.n;
    impl.table.assign(m, std::vector<std::vector<std::uint64_t>>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) impl.table[i][j] = xpow[i + j];
    return finish_ring(std::move(impl));
}

inline FiniteRing build_poly_quotient(const PolyQuotientSpec& s) {
    if (s.p > kMaxRingOrder)
        throw std::invalid_argument("PolyQuotient: ring order exceeds the supported cap");
    if (!is_prime(s.p)) throw std::invalid_argument("PolyQuotient: p must be prime");
    FpPoly h;
    for (std::uint64_t c : s.base_poly) h.push_back(c % s.p);
    fp_trim(h);
    if (h.size() < 2) throw std::invalid_argument("PolyQuotient: base_poly must have degree >= 1");
    if (h.back() != 1) {
        std::uint64_t inv = inv_mod(h.back(), s.p);
        for (auto& c : h) c = c * inv % s.p;
    }
    if (!fp_irreducible(h, s.p))
        throw std::invalid_argument("PolyQuotient: base_poly is reducible over F_p");
    FqContext fq{s.p, h};
    const std::size_t e = fq.e();

    // Modulus f over F_q; normalize monic.
    std::vector<std::vector<std::uint64_t>> f;
    for (const auto& coeff : s.modulus) {
        FpPoly c;
        for (std::uint64_t v : coeff) c.push_back(v % s.p);
        f.push_back(fq.reduce(c));
    }
    while (!f.empty() && fq.is_zero(f.back())) f.pop_back();
    if (f.size() < 2)
        throw std::invalid_argument("PolyQuotient: modulus must be nonzero of degree >= 1");
    if (!(f.back()[0] == 1 && std::all_of(f.back().begin() + 1, f.back().end(),
                                          [](std::uint64_t c) { return c == 0; }))) {
        auto inv = fq.inverse(f.back());
        for (auto& c : f) c = fq.mul(c, inv);
    }
    const std::size_t k = f.size() - 1;

    // x^t mod f over F_q for t <= 2k-2, as length-k vectors of F_q elements.
    std::vector<std::vector<std::uint64_t>> zero_fq(k, std::vector<std::uint64_t>(e, 0));
    std::vector<std::vector<std::vector<std::uint64_t>>> xpow(2 * k - 1, zero_fq);
    for (std::size_t t = 0; t < k; ++t) xpow[t][t][0] = 1;
    for (std::size_t t = k; t <= 2 * k - 2; ++t) {
        const auto& prev = xpow[t - 1];
        auto& cur = xpow[t];
        auto top = prev[k - 1];
        for (std::size_t i = k; i-- > 1;) cur[i] = prev[i - 1];
        cur[0] = std::vector<std::uint64_t>(e, 0);
        if (!fq.is_zero(top))
            for (std::size_t i = 0; i < k; ++i) {
                auto sub = fq.mul(top, f[i]);
                for (std::size_t c = 0; c < e; ++c)
                    cur[i][c] = (cur[i][c] + s.p - sub[c]) % s.p;
            }
    }

    // y^t mod h for t <= 2e-2.
    std::vector<std::vector<std::uint64_t>> ypow(2 * e - 1);
    for (std::size_t t = 0; t <= 2 * e - 2; ++t) {
        FpPoly mono(t + 1, 0);
        mono[t] = 1;
        ypow[t] = fq.reduce(mono);
    }

    // Ring basis x^j y^i at coordinate j*e + i.
    const std::size_t m = e * k;
    RingData impl;
    impl.n = s.p;
    impl.divisors.assign(m, s.p);
    impl.one.assign(m, 0);
    impl.one[0] = 1;
    impl.table.assign(m, std::vector<std::vector<std::uint64_t>>(m, std::vector<std::uint64_t>(m, 0)));
    for (std::size_t j1 = 0; j1 < k; ++j1)
        for (std::size_t i1 = 0; i1 < e; ++i1)
            for (std::size_t j2 = 0; j2 < k; ++j2)
                for (std::size_t i2 = 0; i2 < e; ++i2) {
                    auto& entry = impl.table[j1 * e + i1][j2 * e + i2];
                    const auto& xr = xpow[j1 + j2];
                    const auto& yr = ypow[i1 + i2];
                    for (std::size_t j = 0; j < k; ++j) {
                        if (fq.is_zero(xr[j])) continue;
                        auto prod = fq.mul(xr[j], yr);
                        for (std::size_t i = 0; i < e; ++i) entry[j * e + i] = prod[i];
                    }
                }
    return finish_ring(std::move(impl));
}

inline FiniteRing build_explicit(const ExplicitSpec& s) {
    RingData impl;
    impl.n = s.n;
    impl.divisors = s.divisors;
    impl.one = s.one;
    impl.table = s.products;
    return finish_ring(std::move(impl));
}

}  // namespace detail

inline FiniteRing build_ring(const RingSpec& spec) {
    return std::visit(
        [](const auto& s) -> FiniteRing {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ZnSpec>) return detail::build_zn(s);
            else if constexpr (std::is_same_v<T, GroupAlgebraSpec>) return detail::build_group_algebra(s);
            else if constexpr (std::is_same_v<T, PolyQuotientSpec>) return detail::build_poly_quotient(s);
            else if constexpr (std::is_same_v<T, MonogenicQuotientSpec>) return detail::build_monogenic(s);
            else if constexpr (std::is_same_v<T, ExplicitSpec>) return detail::build_explicit(s);
            else {
                if (s.specs.empty())
                    throw std::invalid_argument("Product: needs at least one factor");
                FiniteRing acc = build_ring(s.specs.front());
                if (s.specs.size() == 1) return acc.with_scalar_modulus(s.declared_n);
                for (std::size_t i = 1; i < s.specs.size(); ++i)
                    acc = product_ring(acc, build_ring(s.specs[i]), s.declared_n);
                return acc;
            }
        },
        spec.node);
}

/// All ring elements in index order; index 0 is zero.
inline std::vector<RingElement> enumerate_elements(const FiniteRing& ring) {
    std::vector<RingElement> out;
    out.reserve(ring.order());
    for (std::uint64_t i = 0; i < ring.order(); ++i) out.push_back(ring.element_at(i));
    return out;
}

/// The principal ideal {r*t : t in R} as sorted element indices.
inline std::vector<std::uint64_t> principal_ideal(const RingElement& r) {
    const FiniteRing& ring = r.ring();
    std::vector<bool> seen(ring.order(), false);
    std::vector<std::uint64_t> t, prod;
    for (std::uint64_t idx = 0; idx < ring.order(); ++idx) {
        ring.coords_of(idx, t);
        ring.mul_coords(r.coords(), t, prod);
        seen[ring.index_of_coords(prod)] = true;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < ring.order(); ++i)
        if (seen[i]) out.push_back(i);
    return out;
}

}  // namespace cayley
