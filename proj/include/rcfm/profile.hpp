#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "rcfm/errors.hpp"
#include "rcfm/rational_function.hpp"
#include "rcfm/scalar.hpp"

namespace rcfm {

/// One diagonal of an infinite matrix: offset d places entries at (j + d, j),
/// so the domain is j >= start() = max(1, 1 - d). Values are an explicit head
/// followed by a rational-function tail.
///
/// Canonical form, established by the constructor:
///   - the tail denominator has no integer roots >= tail_start() (the head
///     must cover every integer pole, otherwise the profile is rejected);
///   - the head is minimal: its last value differs from the tail there.
/// The zero profile is the empty head with tail 0.
class DiagonalProfile {
public:
    DiagonalProfile() : offset_(0) {}

    DiagonalProfile(long offset, std::vector<Scalar> head, RationalFunction tail)
        : offset_(offset), head_(std::move(head)), tail_(std::move(tail)) {
        const long start_col = start();
        std::size_t min_head = 0;
        if (!tail_.is_zero_fn() && tail_.den().degree() > 0) {
            auto poles = integer_roots_geq(tail_.den(), start_col);
            if (!poles.empty()) {
                Integer last = poles.back();
                if (last > start_col + static_cast<long>(1u << 24))
                    fail("PoleInTail", "tail pole at j = " + last.get_str() +
                                           " is too far out to cover with a head");
                min_head = static_cast<std::size_t>(last.get_si() - start_col + 1);
            }
        }
        if (head_.size() < min_head)
            fail("PoleInTail", "tail has an integer pole inside the profile domain");
        while (head_.size() > min_head &&
               head_.back() == tail_.eval_at(start_col + static_cast<long>(head_.size()) - 1))
            head_.pop_back();
    }

    static DiagonalProfile zero(long offset) { return DiagonalProfile(offset, {}, {}); }

    static DiagonalProfile constant(long offset, const Scalar& value) {
        return DiagonalProfile(offset, {}, RationalFunction::constant(value));
    }

    long offset() const { return offset_; }
    long start() const { return std::max(1L, 1 - offset_); }
    long head_len() const { return static_cast<long>(head_.size()); }
    long tail_start() const { return start() + head_len(); }

    const std::vector<Scalar>& head() const { return head_; }
    const RationalFunction& tail() const { return tail_; }

    bool is_zero_profile() const { return head_.empty() && tail_.is_zero_fn(); }

    bool operator==(const DiagonalProfile& other) const = default;

    Scalar eval(long j) const {
        if (j < start())
            fail("OutOfDomain", "profile at offset " + std::to_string(offset_) +
                                    " has no entry at column " + std::to_string(j));
        if (j < tail_start()) return head_[static_cast<std::size_t>(j - start())];
        return tail_.eval_at(j);
    }

    /// Least J with eval(j) != 0 for every j >= J. Needs an eventually nonzero
    /// profile, i.e. a nonzero tail.
    long support_bound() const {
        if (tail_.is_zero_fn())
            fail("ZeroProfile", "support bound of an eventually-zero profile");
        long bound = start();
        for (std::size_t i = 0; i < head_.size(); ++i)
            if (is_zero(head_[i])) bound = start() + static_cast<long>(i) + 1;
        auto zeros = integer_roots_geq(tail_.num(), tail_start());
        if (!zeros.empty()) {
            Integer last = zeros.back();
            if (last > start() + static_cast<long>(1u << 24))
                fail("PoleInTail", "tail zero at j = " + last.get_str() + " out of tractable range");
            bound = std::max(bound, last.get_si() + 1);
        }
        return bound;
    }

    std::string to_string() const {
        std::string s = "d=" + std::to_string(offset_) + " head[";
        for (std::size_t i = 0; i < head_.size(); ++i) {
            if (i) s += ",";
            s += scalar_to_string(head_[i]);
        }
        return s + "] tail " + tail_.to_string();
    }

private:
    long offset_;
    std::vector<Scalar> head_;
    RationalFunction tail_;
};

inline DiagonalProfile profile_add(const DiagonalProfile& p, const DiagonalProfile& q) {
    if (p.offset() != q.offset())
        fail("OffsetMismatch", "adding profiles at offsets " + std::to_string(p.offset()) +
                                   " and " + std::to_string(q.offset()));
    const long start = p.start();
    const long head_end = std::max(p.tail_start(), q.tail_start());
    std::vector<Scalar> head;
    head.reserve(static_cast<std::size_t>(head_end - start));
    for (long j = start; j < head_end; ++j) head.push_back(p.eval(j) + q.eval(j));
    return DiagonalProfile(p.offset(), std::move(head), p.tail() + q.tail());
}

/// One term of the band product: the offset-(d1+d2) diagonal j |-> a(j+d2)*b(j),
/// where a sits at offset d1 and b at offset d2. A factor evaluated outside its
/// domain contributes 0; those boundary truncations are exactly where head
/// corrections such as S_1 S_{-1} = I - e_{11} come from.
inline DiagonalProfile profile_shift_mul(const DiagonalProfile& a, const DiagonalProfile& b) {
    const long d = a.offset() + b.offset();
    const long shift = b.offset();
    const long start = std::max(1L, 1 - d);
    const long tail_from = std::max({start, b.tail_start(), a.tail_start() - shift});
    std::vector<Scalar> head;
    head.reserve(static_cast<std::size_t>(tail_from - start));
    for (long j = start; j < tail_from; ++j) {
        const bool in_domain = j >= b.start() && j + shift >= a.start();
        head.push_back(in_domain ? Scalar(a.eval(j + shift) * b.eval(j)) : Scalar(0));
    }
    return DiagonalProfile(d, std::move(head), a.tail().shifted(shift) * b.tail());
}

inline DiagonalProfile profile_scale(const DiagonalProfile& p, const Scalar& c) {
    std::vector<Scalar> head(p.head());
    for (auto& v : head) v *= c;
    return DiagonalProfile(p.offset(), std::move(head), p.tail() * c);
}

inline bool profile_equal(const DiagonalProfile& p, const DiagonalProfile& q) {
    return p == q;
}

}  // namespace rcfm
