#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rcfm/scalar.hpp"

namespace rcfm {

/// Row-major dense matrix of exact rationals.
using DenseMatrix = std::vector<std::vector<Scalar>>;

namespace linalg {

struct Echelon {
    std::vector<std::vector<Integer>> m;        // fraction-free row echelon form
    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t cols = 0;
};

/// Fraction-free (Bareiss) row echelon form. Rows are first scaled to integers
/// (row scaling changes neither rank nor nullspace); each elimination step
/// divides by the previous pivot, which is exact by the Sylvester identity.
inline Echelon echelon_form(const DenseMatrix& a) {
    Echelon e;
    const std::size_t rows = a.size();
    e.cols = rows ? a[0].size() : 0;
    e.m.assign(rows, {});
    for (std::size_t i = 0; i < rows; ++i) {
        Integer lcm(1);
        for (const auto& v : a[i]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
        e.m[i].reserve(e.cols);
        for (const auto& v : a[i]) e.m[i].push_back(Integer(v.get_num() * (lcm / v.get_den())));
    }
    Integer prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < e.cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && sgn(e.m[pr][c]) == 0) ++pr;
        if (pr == rows) continue;  // free column
        std::swap(e.m[r], e.m[pr]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < e.cols; ++j) {
                Integer t = e.m[r][c] * e.m[i][j] - e.m[i][c] * e.m[r][j];
                mpz_divexact(e.m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            e.m[i][c] = 0;
        }
        prev = e.m[r][c];
        e.pivots.emplace_back(r, c);
        ++r;
    }
    return e;
}

inline std::size_t rank_exact(const DenseMatrix& a) { return echelon_form(a).pivots.size(); }

/// Basis of the right nullspace, one vector per free column, back-substituted
/// over Q and rescaled to coprime integers with positive first entry.
inline std::vector<std::vector<Scalar>> nullspace_exact(const DenseMatrix& a) {
    Echelon e = echelon_form(a);
    std::vector<bool> is_pivot(e.cols, false);
    for (auto [r, c] : e.pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < e.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> x(e.cols, Scalar(0));
        x[f] = 1;
        for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
            auto [r, c] = *it;
            Scalar acc(0);
            for (std::size_t j = c + 1; j < e.cols; ++j)
                if (!is_zero(x[j])) acc += Scalar(e.m[r][j]) * x[j];
            x[c] = -acc / Scalar(e.m[r][c]);
        }
        // clear denominators, divide by content, make the first entry positive
        Integer lcm(1), content(0);
        for (const auto& v : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
        std::vector<Scalar> scaled;
        scaled.reserve(x.size());
        for (const auto& v : x) {
            Integer z = v.get_num() * (lcm / v.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
            scaled.emplace_back(std::move(z));
        }
        int lead_sign = 0;
        for (const auto& v : scaled)
            if (!is_zero(v)) { lead_sign = sgn(v); break; }
        Scalar div = Scalar(content) * lead_sign;
        for (auto& v : scaled) v /= div;
        basis.push_back(std::move(scaled));
    }
    return basis;
}

/// One exact solution of M x = b if the system is consistent.
inline std::optional<std::vector<Scalar>> solve_exact(const DenseMatrix& m,
                                                      const std::vector<Scalar>& b) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    DenseMatrix aug(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        aug[i] = m[i];
        aug[i].push_back(b[i]);
    }
    Echelon e = echelon_form(aug);
    std::vector<Scalar> x(cols, Scalar(0));
    for (auto it = e.pivots.rbegin(); it != e.pivots.rend(); ++it) {
        auto [r, c] = *it;
        if (c == cols) return std::nullopt;  // pivot in the rhs column: inconsistent
        Scalar acc(Integer(e.m[r][cols]));
        for (std::size_t j = c + 1; j < cols; ++j)
            if (!is_zero(x[j])) acc -= Scalar(e.m[r][j]) * x[j];
        x[c] = acc / Scalar(e.m[r][c]);
    }
    return x;
}

}  // namespace linalg
}  // namespace rcfm
