/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in Z[zeta_n] in the power basis mod Phi_n.
 *
 * A value is an integer vector of length phi(n): sum coeffs[j] zeta^j for
 * j < phi(n). The power basis mod Phi_n is a Z-basis, so representations are
 * unique and integrality is a coefficient check. Coefficients are
 * arbitrary-precision (GMP); reductions never overflow silently.
 */
#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayley/numtheory.hpp"

namespace cayley {

namespace detail {

using ZPoly = std::vector<mpz_class>;  // constant term first

inline void zpoly_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Exact quotient a / b for monic b; remainder must vanish.
inline ZPoly zpoly_divexact_monic(ZPoly a, const ZPoly& b) {
    zpoly_trim(a);
    if (b.empty() || b.back() != 1) throw std::logic_error("zpoly_divexact_monic: divisor not monic");
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) {
        if (!a.empty()) throw std::logic_error("zpoly_divexact_monic: inexact division");
        return {};
    }
    ZPoly q(a.size() - db, 0);
    for (std::size_t qi = q.size(); qi-- > 0;) {
        mpz_class lead = a[qi + db];
        q[qi] = lead;
        if (lead != 0)
            for (std::size_t i = 0; i <= db; ++i) a[qi + i] -= lead * b[i];
    }
    for (const auto& c : a)
        if (c != 0) throw std::logic_error("zpoly_divexact_monic: inexact division");
    return q;
}

}  // namespace detail

/// Coefficients of the n-th cyclotomic polynomial Phi_n, constant term first,
/// computed by exact division of x^n - 1 by the Phi_d for proper divisors d.
inline std::vector<mpz_class> cyclotomic_poly(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("cyclotomic_poly: n must be positive");
    std::map<std::uint64_t, detail::ZPoly> memo;
    for (std::uint64_t d : divisors_of(n)) {
        detail::ZPoly numerator(static_cast<std::size_t>(d) + 1, 0);
        numerator[0] = -1;
        numerator[static_cast<std::size_t>(d)] = 1;
        for (const auto& [e, phi_e] : memo)
            if (d % e == 0 && e < d) numerator = detail::zpoly_divexact_monic(numerator, phi_e);
        memo[d] = std::move(numerator);
    }
    return memo[n];
}

class CyclotomicInt {
public:
    CyclotomicInt(std::uint64_t n, std::vector<mpz_class> coeffs)
        : n_(n), coeffs_(std::move(coeffs)) {
        if (n_ == 0) throw std::invalid_argument("CyclotomicInt: n must be positive");
        if (coeffs_.size() != euler_phi(n_))
            throw std::invalid_argument("CyclotomicInt: coefficient vector must have length phi(n)");
    }

    static CyclotomicInt zero(std::uint64_t n) {
        return CyclotomicInt(n, std::vector<mpz_class>(euler_phi(n), 0));
    }
    static CyclotomicInt integer(std::uint64_t n, const mpz_class& v) {
        std::vector<mpz_class> c(euler_phi(n), 0);
        c[0] = v;
        return CyclotomicInt(n, std::move(c));
    }

    std::uint64_t order() const { return n_; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }

    /// The value as a rational integer, when it is one. Being an algebraic
    /// integer, the value is rational iff all higher coefficients vanish.
    std::optional<mpz_class> as_integer() const {
        for (std::size_t j = 1; j < coeffs_.size(); ++j)
            if (coeffs_[j] != 0) return std::nullopt;
        return coeffs_[0];
    }

    friend CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
        require_same(a, b);
        std::vector<mpz_class> c(a.coeffs_);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] += b.coeffs_[j];
        return CyclotomicInt(a.n_, std::move(c));
    }
    friend CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b) {
        require_same(a, b);
        std::vector<mpz_class> c(a.coeffs_);
        for (std::size_t j = 0; j < c.size(); ++j) c[j] -= b.coeffs_[j];
        return CyclotomicInt(a.n_, std::move(c));
    }
    friend CyclotomicInt operator-(const CyclotomicInt& a) {
        std::vector<mpz_class> c(a.coeffs_);
        for (auto& x : c) x = -x;
        return CyclotomicInt(a.n_, std::move(c));
    }
    friend CyclotomicInt operator*(const mpz_class& k, const CyclotomicInt& a) {
        std::vector<mpz_class> c(a.coeffs_);
        for (auto& x : c) x *= k;
        return CyclotomicInt(a.n_, std::move(c));
    }
    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }

    /// Rendering like "-1 - z^2 - z^3 (n=5)".
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const mpz_class& c = coeffs_[j];
            if (c == 0) continue;
            mpz_class mag = abs(c);
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            if (j == 0) os << mag.get_str();
            else {
                if (mag != 1) os << mag.get_str() << " ";
                os << "z";
                if (j > 1) os << "^" << j;
            }
        }
        if (first) os << "0";
        os << " (n=" << n_ << ")";
        return os.str();
    }

private:
    static void require_same(const CyclotomicInt& a, const CyclotomicInt& b) {
        if (a.n_ != b.n_)
            throw std::invalid_argument("CyclotomicInt: mixed root-of-unity orders");
    }

    std::uint64_t n_;
    std::vector<mpz_class> coeffs_;
};

/**
 * Reduction context for a fixed n: caches Phi_n and the power basis
 * representation of every zeta^e, e < n. Immutable after construction, so
 * safe to share across threads.
 */
class CyclotomicBasis {
public:
    explicit CyclotomicBasis(std::uint64_t n) : n_(n), modulus_(cyclotomic_poly(n)) {
        phi_ = modulus_.size() - 1;
        power_.assign(n_, std::vector<mpz_class>(phi_, 0));
        for (std::size_t e = 0; e < phi_ && e < n_; ++e) power_[e][e] = 1;
        for (std::size_t e = phi_; e < n_; ++e) {
            const auto& prev = power_[e - 1];
            auto& cur = power_[e];
            mpz_class top = prev[phi_ - 1];
            for (std::size_t j = phi_; j-- > 1;) cur[j] = prev[j - 1];
            cur[0] = 0;
            if (top != 0)
                for (std::size_t j = 0; j < phi_; ++j) cur[j] -= top * modulus_[j];
        }
    }

    std::uint64_t n() const { return n_; }
    std::size_t degree() const { return phi_; }
    const std::vector<mpz_class>& modulus() const { return modulus_; }
    const std::vector<std::vector<mpz_class>>& power_table() const { return power_; }

    /// zeta^e reduced to the power basis.
    CyclotomicInt root_power(std::uint64_t e) const {
        return CyclotomicInt(n_, power_[e % n_]);
    }

    CyclotomicInt zero() const { return CyclotomicInt::zero(n_); }

    /// Sum of zeta^e over a multiset of exponents.
    CyclotomicInt reduce_sum(const std::vector<std::uint64_t>& exponents) const {
        std::vector<mpz_class> acc(phi_, 0);
        for (std::uint64_t e : exponents) {
            const auto& row = power_[e % n_];
            for (std::size_t j = 0; j < phi_; ++j) acc[j] += row[j];
        }
        return CyclotomicInt(n_, std::move(acc));
    }

    /// Sum of counts[e] * zeta^e over residues e mod n.
    template <typename Int>
    CyclotomicInt reduce_counts(const std::vector<Int>& counts) const {
        if (counts.size() != n_)
            throw std::invalid_argument("reduce_counts: counts must have length n");
        std::vector<mpz_class> acc(phi_, 0);
        for (std::size_t e = 0; e < n_; ++e) {
            if (counts[e] == 0) continue;
            const auto& row = power_[e];
            for (std::size_t j = 0; j < phi_; ++j) acc[j] += counts[e] * row[j];
        }
        return CyclotomicInt(n_, std::move(acc));
    }

    CyclotomicInt mul(const CyclotomicInt& a, const CyclotomicInt& b) const {
        check(a);
        check(b);
        std::vector<mpz_class> conv(2 * phi_ - 1, 0);
        for (std::size_t i = 0; i < phi_; ++i) {
            if (a.coeffs()[i] == 0) continue;
            for (std::size_t j = 0; j < phi_; ++j) conv[i + j] += a.coeffs()[i] * b.coeffs()[j];
        }
        std::vector<mpz_class> acc(phi_, 0);
        for (std::size_t t = 0; t < conv.size(); ++t) {
            if (conv[t] == 0) continue;
            const auto& row = power_[t % n_];
            for (std::size_t j = 0; j < phi_; ++j) acc[j] += conv[t] * row[j];
        }
        return CyclotomicInt(n_, std::move(acc));
    }

    /// Galois action sigma_a: zeta -> zeta^a for a unit a mod n.
    CyclotomicInt galois(std::uint64_t a, const CyclotomicInt& c) const {
        check(c);
        if (std::gcd(a % n_, n_) != 1)
            throw std::invalid_argument("galois: a is not a unit mod n");
        std::vector<mpz_class> acc(phi_, 0);
        for (std::size_t j = 0; j < phi_; ++j) {
            if (c.coeffs()[j] == 0) continue;
            const auto& row = power_[mul_mod(a % n_, j, n_)];
            for (std::size_t k = 0; k < phi_; ++k) acc[k] += c.coeffs()[j] * row[k];
        }
        return CyclotomicInt(n_, std::move(acc));
    }

    /// Complex conjugate (sigma_{-1}).
    CyclotomicInt conjugate(const CyclotomicInt& c) const {
        return galois(n_ == 1 ? 0 : n_ - 1, c);
    }

private:
    void check(const CyclotomicInt& c) const {
        if (c.order() != n_) throw std::invalid_argument("CyclotomicBasis: order mismatch");
    }

    std::uint64_t n_;
    std::size_t phi_;
    std::vector<mpz_class> modulus_;
    std::vector<std::vector<mpz_class>> power_;
};

inline CyclotomicInt reduce_sum(std::uint64_t n, const std::vector<std::uint64_t>& exponents) {
    return CyclotomicBasis(n).reduce_sum(exponents);
}

inline std::optional<mpz_class> as_integer(const CyclotomicInt& c) { return c.as_integer(); }

inline CyclotomicInt galois_act(std::uint64_t a, const CyclotomicInt& c) {
    return CyclotomicBasis(c.order()).galois(a, c);
}

/// Numeric embedding zeta -> exp(2 pi i / n).
inline std::complex<double> embed_numeric(const CyclotomicInt& c) {
    const double tau = 6.283185307179586476925286766559;
    std::complex<double> acc(0.0, 0.0);
    const auto& coeffs = c.coeffs();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        double angle = tau * static_cast<double>(j) / static_cast<double>(c.order());
        acc += coeffs[j].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return acc;
}

}  // namespace cayley
