#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "rcfm/errors.hpp"
#include "rcfm/scalar.hpp"

namespace rcfm {

/// Univariate polynomial over Q in the column-index variable j.
/// Coefficients ascending; the last one is nonzero unless the list is empty
/// (empty = zero polynomial).
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(const Scalar& constant) {
        if (!is_zero(constant)) coeffs_.push_back(constant);
    }

    explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
        trim();
    }

    static Polynomial variable() { return Polynomial({Scalar(0), Scalar(1)}); }
    static Polynomial one() { return Polynomial(Scalar(1)); }

    bool is_zero_poly() const { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<Scalar>& coeffs() const { return coeffs_; }

    Scalar coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : Scalar(0);
    }

    Scalar leading() const {
        return coeffs_.empty() ? Scalar(0) : coeffs_.back();
    }

    bool operator==(const Polynomial& other) const = default;

    Polynomial operator+(const Polynomial& o) const {
        std::vector<Scalar> out(std::max(coeffs_.size(), o.coeffs_.size()), Scalar(0));
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) + o.coeff(k);
        return Polynomial(std::move(out));
    }

    Polynomial operator-() const {
        std::vector<Scalar> out(coeffs_);
        for (auto& c : out) c = -c;
        return Polynomial(std::move(out));
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero_poly() || o.is_zero_poly()) return Polynomial();
        std::vector<Scalar> out(coeffs_.size() + o.coeffs_.size() - 1, Scalar(0));
        for (std::size_t a = 0; a < coeffs_.size(); ++a)
            for (std::size_t b = 0; b < o.coeffs_.size(); ++b)
                out[a + b] += coeffs_[a] * o.coeffs_[b];
        return Polynomial(std::move(out));
    }

    Polynomial operator*(const Scalar& c) const {
        if (is_zero(c)) return Polynomial();
        std::vector<Scalar> out(coeffs_);
        for (auto& x : out) x *= c;
        return Polynomial(std::move(out));
    }

    Scalar eval(const Scalar& x) const {
        Scalar acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Scalar eval_at(long j) const { return eval(Scalar(j)); }

    /// Composition j |-> j + k.
    Polynomial shifted(long k) const {
        if (k == 0 || is_zero_poly()) return *this;
        Polynomial xk({Scalar(k), Scalar(1)});
        Polynomial acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * xk + Polynomial(*it);
        return acc;
    }

    /// Quotient/remainder over Q; den must be nonzero.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num,
                                                    const Polynomial& den) {
        if (den.is_zero_poly()) fail("ZeroDenominator", "polynomial division by zero");
        Polynomial rem = num;
        std::vector<Scalar> quot;
        int dq = num.degree() - den.degree();
        if (dq < 0) return {Polynomial(), rem};
        quot.assign(static_cast<std::size_t>(dq) + 1, Scalar(0));
        while (!rem.is_zero_poly() && rem.degree() >= den.degree()) {
            int shift = rem.degree() - den.degree();
            Scalar factor = rem.leading() / den.leading();
            quot[static_cast<std::size_t>(shift)] = factor;
            std::vector<Scalar> sub(static_cast<std::size_t>(shift), Scalar(0));
            sub.push_back(factor);
            rem = rem - den * Polynomial(std::move(sub));
        }
        return {Polynomial(std::move(quot)), rem};
    }

    Polynomial monic() const {
        if (is_zero_poly()) return *this;
        return *this * (Scalar(1) / leading());
    }

    /// Monic gcd over Q (1 if both arguments are nonzero constants).
    static Polynomial gcd(const Polynomial& a, const Polynomial& b) {
        Polynomial r0 = a, r1 = b;
        while (!r1.is_zero_poly()) {
            Polynomial r2 = divmod(r0, r1).second;
            r0 = std::move(r1);
            r1 = r2.monic();  // keeps coefficient growth flat
        }
        return r0.monic();
    }

    /// Integer-coefficient form with content 1: p * (lcm of denominators) / (gcd of numerators).
    /// Same roots as p. Requires p != 0.
    std::vector<Integer> primitive_integer_coeffs() const {
        Integer den_lcm(1);
        for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
        std::vector<Integer> out;
        out.reserve(coeffs_.size());
        Integer content(0);
        for (const auto& c : coeffs_) {
            Integer v = c.get_num() * (den_lcm / c.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
            out.push_back(std::move(v));
        }
        if (sgn(content) != 0)
            for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
        return out;
    }

    std::string to_string(char var = 'j') const;

private:
    void trim() {
        while (!coeffs_.empty() && is_zero(coeffs_.back())) coeffs_.pop_back();
    }

    std::vector<Scalar> coeffs_;
};

inline Polynomial operator*(const Scalar& c, const Polynomial& p) { return p * c; }

namespace detail {

inline Integer eval_integer_poly(const std::vector<Integer>& coeffs, const Integer& x) {
    Integer acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// All positive divisors of |n|, n != 0, by trial division.
inline std::vector<Integer> positive_divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> small, large;
    Integer d(1);
    while (d * d <= n) {
        if (n % d == 0) {
            small.push_back(d);
            Integer q = n / d;
            if (q != d) large.push_back(q);
        }
        ++d;
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace detail

/// Exactly the integers j >= j0 with p(j) = 0, sorted ascending. Complete:
/// integer roots of the primitive integer form divide its constant term
/// (after stripping the root at 0), so every candidate is enumerated and
/// tested exactly.
inline std::vector<Integer> integer_roots_geq(const Polynomial& p, long j0) {
    if (p.is_zero_poly()) fail("ZeroPolynomial", "integer root search on the zero polynomial");
    std::vector<Integer> coeffs = p.primitive_integer_coeffs();
    std::vector<Integer> roots;
    std::size_t low = 0;
    while (low < coeffs.size() && sgn(coeffs[low]) == 0) ++low;
    if (low > 0) {
        coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(low));
        if (j0 <= 0) roots.emplace_back(0);
    }
    if (coeffs.size() > 1) {
        for (const Integer& d : detail::positive_divisors(coeffs.front())) {
            for (int sign : {1, -1}) {
                Integer cand = sign * d;
                if (cand < j0) continue;
                if (sgn(detail::eval_integer_poly(coeffs, cand)) == 0) roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline std::string Polynomial::to_string(char var) const {
    if (is_zero_poly()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Scalar c = coeff(static_cast<std::size_t>(k));
        if (is_zero(c)) continue;
        const bool negative = sgn(c) < 0;
        Scalar mag = abs(c);
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        const bool unit = mag == 1;
        if (k == 0) {
            out += scalar_to_string(mag);
        } else {
            if (!unit) out += scalar_to_string(mag) + "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace rcfm
