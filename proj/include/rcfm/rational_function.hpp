#pragma once

#include <string>
#include <utility>

#include "rcfm/errors.hpp"
#include "rcfm/polynomial.hpp"
#include "rcfm/scalar.hpp"

namespace rcfm {

/// Ratio of polynomials in j, kept canonical: gcd(num, den) = 1, den monic,
/// zero is 0/1. Equality is therefore structural.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Polynomial::one()) {}

    RationalFunction(Polynomial num, Polynomial den) {
        if (den.is_zero_poly()) fail("ZeroDenominator", "rational function with zero denominator");
        if (num.is_zero_poly()) {
            num_ = Polynomial();
            den_ = Polynomial::one();
            return;
        }
        Polynomial g = Polynomial::gcd(num, den);
        num = Polynomial::divmod(num, g).first;
        den = Polynomial::divmod(den, g).first;
        Scalar lead = den.leading();
        num_ = num * (Scalar(1) / lead);
        den_ = den * (Scalar(1) / lead);
    }

    static RationalFunction constant(const Scalar& c) {
        return RationalFunction(Polynomial(c), Polynomial::one());
    }

    static RationalFunction variable() {
        return RationalFunction(Polynomial::variable(), Polynomial::one());
    }

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    bool is_zero_fn() const { return num_.is_zero_poly(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    bool is_one() const { return is_constant() && constant_value() == 1; }

    Scalar constant_value() const {
        return num_.coeff(0);  // den is 1 whenever is_constant()
    }

    bool operator==(const RationalFunction& other) const = default;

    RationalFunction operator+(const RationalFunction& o) const {
        return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    RationalFunction operator-() const {
        RationalFunction out = *this;
        out.num_ = -out.num_;
        return out;
    }

    RationalFunction operator-(const RationalFunction& o) const { return *this + (-o); }

    RationalFunction operator*(const RationalFunction& o) const {
        return RationalFunction(num_ * o.num_, den_ * o.den_);
    }

    RationalFunction operator*(const Scalar& c) const {
        return RationalFunction(num_ * c, den_);
    }

    RationalFunction inverse() const {
        if (is_zero_fn()) fail("ZeroDenominator", "inverse of the zero rational function");
        return RationalFunction(den_, num_);
    }

    RationalFunction operator/(const RationalFunction& o) const { return *this * o.inverse(); }

    /// j |-> f(j + k).
    RationalFunction shifted(long k) const {
        if (k == 0) return *this;
        return RationalFunction(num_.shifted(k), den_.shifted(k));
    }

    Scalar eval_at(long j) const {
        Scalar d = den_.eval_at(j);
        if (is_zero(d)) fail("PoleAt", "rational function has a pole at j = " + std::to_string(j));
        return num_.eval_at(j) / d;
    }

    std::string to_string(char var = 'j') const {
        if (den_.degree() == 0) return num_.to_string(var);  // den == 1
        std::string n = num_.to_string(var);
        std::string d = den_.to_string(var);
        if (num_.degree() > 0 || num_.coeffs().size() > 1) n = "(" + n + ")";
        if (den_.degree() > 0) d = "(" + d + ")";
        return n + "/" + d;
    }

private:
    Polynomial num_;
    Polynomial den_;
};

inline RationalFunction ratfunc_make(const Polynomial& num, const Polynomial& den) {
    return RationalFunction(num, den);
}

inline RationalFunction operator*(const Scalar& c, const RationalFunction& f) { return f * c; }

}  // namespace rcfm
