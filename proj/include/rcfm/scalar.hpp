#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>

#include "rcfm/errors.hpp"

namespace rcfm {

/// Exact rational scalar. mpq_class keeps the canonical form we rely on for
/// structural equality: gcd(|num|, den) = 1, den >= 1, zero is 0/1.
using Scalar = mpq_class;

using Integer = mpz_class;

inline Scalar scalar_of(long n) { return Scalar(n); }

inline Scalar scalar_of(long num, long den) {
    if (den == 0) fail("ZeroDenominator", "scalar denominator is zero");
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

/// Serialized form: "p" when the denominator is 1, else "p/q".
inline std::string scalar_to_string(const Scalar& s) { return s.get_str(); }

inline bool looks_like_rational_literal(const std::string& text) {
    if (text.empty()) return false;
    std::size_t i = text[0] == '-' ? 1 : 0;
    if (i == text.size()) return false;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) { ++i; ++digits; }
    if (digits == 0) return false;
    if (i == text.size()) return true;
    if (text[i] != '/') return false;
    ++i;
    digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) { ++i; ++digits; }
    return digits > 0 && i == text.size();
}

/// Accepts "p" or "p/q" with q > 0 required only to be nonzero; the result is
/// canonicalized. Anything else is a SchemaError (this is the JSON-facing
/// parser).
inline Scalar scalar_from_string(const std::string& text) {
    if (!looks_like_rational_literal(text))
        fail("SchemaError", "not a rational literal: \"" + text + "\"");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Integer den(text.substr(slash + 1));
        if (sgn(den) == 0)
            fail("ZeroDenominator", "rational literal with zero denominator: \"" + text + "\"");
    }
    Scalar q(text);
    q.canonicalize();
    return q;
}

inline Scalar scalar_pow(const Scalar& base, unsigned long e) {
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
    return Scalar(num, den);  // coprime powers of coprime parts, den > 0
}

}  // namespace rcfm
