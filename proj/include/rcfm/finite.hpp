#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "rcfm/errors.hpp"
#include "rcfm/scalar.hpp"

namespace rcfm {

/// Finitely supported coordinate vector over positive indices; entries sorted
/// by index, values nonzero.
class FinSuppVector {
public:
    FinSuppVector() = default;

    explicit FinSuppVector(std::map<long, Scalar> values) {
        for (auto& [idx, v] : values) {
            if (idx < 1) fail("OutOfDomain", "vector index " + std::to_string(idx) + " < 1");
            if (!is_zero(v)) entries_.emplace_back(idx, std::move(v));
        }
    }

    static FinSuppVector unit(long i) { return FinSuppVector({{i, Scalar(1)}}); }

    const std::vector<std::pair<long, Scalar>>& entries() const { return entries_; }
    bool is_zero_vector() const { return entries_.empty(); }

    Scalar coeff(long i) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                                   [](const auto& e, long key) { return e.first < key; });
        if (it != entries_.end() && it->first == i) return it->second;
        return Scalar(0);
    }

    long max_index() const { return entries_.empty() ? 0 : entries_.back().first; }

    bool operator==(const FinSuppVector& other) const = default;

private:
    std::vector<std::pair<long, Scalar>> entries_;
};

struct PatchEntry {
    long row = 0;
    long col = 0;
    Scalar value;

    bool operator==(const PatchEntry& other) const = default;
};

/// Finite-support correction matrix: lexicographically sorted unique
/// positions, no zero values, with cached row/column maxima (0 when empty).
class FinitePatch {
public:
    FinitePatch() = default;

    explicit FinitePatch(const std::map<std::pair<long, long>, Scalar>& cells) {
        for (const auto& [pos, v] : cells) {
            if (pos.first < 1 || pos.second < 1)
                fail("OutOfDomain", "patch position out of range");
            if (is_zero(v)) continue;
            entries_.push_back({pos.first, pos.second, v});
            row_bound_ = std::max(row_bound_, pos.first);
            col_bound_ = std::max(col_bound_, pos.second);
        }
    }

    static FinitePatch unit(long i, long j, const Scalar& v = Scalar(1)) {
        return FinitePatch({{{i, j}, v}});
    }

    const std::vector<PatchEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    long row_bound() const { return row_bound_; }
    long col_bound() const { return col_bound_; }

    Scalar value_at(long i, long j) const {
        auto it = std::lower_bound(
            entries_.begin(), entries_.end(), std::make_pair(i, j),
            [](const PatchEntry& e, const std::pair<long, long>& key) {
                return std::make_pair(e.row, e.col) < key;
            });
        if (it != entries_.end() && it->row == i && it->col == j) return it->value;
        return Scalar(0);
    }

    std::map<std::pair<long, long>, Scalar> cells() const {
        std::map<std::pair<long, long>, Scalar> out;
        for (const auto& e : entries_) out[{e.row, e.col}] = e.value;
        return out;
    }

    bool operator==(const FinitePatch& other) const {
        return entries_ == other.entries_;
    }

private:
    std::vector<PatchEntry> entries_;
    long row_bound_ = 0;
    long col_bound_ = 0;
};

}  // namespace rcfm
