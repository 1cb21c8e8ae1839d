#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rcfm/errors.hpp"
#include "rcfm/finite.hpp"
#include "rcfm/linalg.hpp"
#include "rcfm/profile.hpp"

namespace rcfm {

/// Invertible diagonal Diag(u_1, u_2, ...) given by u_1 = a1 and the
/// hypergeometric recurrence u_{j+1} = r(j) * u_j. The ratio may not vanish or
/// blow up at any integer j >= 1, so every u_j is nonzero.
class HyperDiagonal {
public:
    HyperDiagonal(Scalar a1, RationalFunction ratio)
        : a1_(std::move(a1)), ratio_(std::move(ratio)) {
        if (is_zero(a1_)) fail("InvalidHyperRatio", "leading diagonal value must be nonzero");
        if (ratio_.is_zero_fn()) fail("InvalidHyperRatio", "ratio must be nonzero");
        if (!integer_roots_geq(ratio_.num(), 1).empty() ||
            !integer_roots_geq(ratio_.den(), 1).empty())
            fail("InvalidHyperRatio", "ratio has a zero or pole at an integer j >= 1");
    }

    const Scalar& a1() const { return a1_; }
    const RationalFunction& ratio() const { return ratio_; }

    /// u_{j+d} / u_j as an exact scalar; arguments must be >= 1.
    Scalar value_ratio(long i, long j) const {
        Scalar acc(1);
        for (long t = j; t < i; ++t) acc *= ratio_.eval_at(t);
        for (long t = i; t < j; ++t) acc /= ratio_.eval_at(t);
        return acc;
    }

    Scalar value(long j) const { return a1_ * value_ratio(j, 1); }

    /// rho_d(j) = u_{j+d}/u_j as a rational function of j.
    RationalFunction offset_factor(long d) const {
        RationalFunction acc = RationalFunction::constant(Scalar(1));
        for (long s = 0; s < d; ++s) acc = acc * ratio_.shifted(s);
        for (long s = d; s < 0; ++s) acc = acc / ratio_.shifted(s);
        return acc;
    }

    HyperDiagonal inverse() const {
        return HyperDiagonal(Scalar(1) / a1_, ratio_.inverse());
    }

private:
    Scalar a1_;
    RationalFunction ratio_;
};

/// Row-and-column-finite infinite matrix in canonical band-plus-patch form.
/// Total entry: A[i,j] = band profile at offset i-j evaluated at j, plus the
/// patch value. Canonical means: every stored profile has a nonzero tail and a
/// minimal head, and no patch entry sits on a banded offset (such entries are
/// absorbed into the head).
class RcfMatrix {
public:
    RcfMatrix() = default;

    static RcfMatrix make(const std::map<long, DiagonalProfile>& raw_band,
                          const std::map<std::pair<long, long>, Scalar>& raw_patch) {
        std::map<std::pair<long, long>, Scalar> cells = raw_patch;
        std::map<long, DiagonalProfile> band;
        for (const auto& [d, prof] : raw_band) {
            if (prof.offset() != d) fail("OffsetMismatch", "band key disagrees with profile offset");
            if (prof.tail().is_zero_fn()) {
                // eventually-zero diagonal: only finitely many entries, patch material
                for (long idx = 0; idx < prof.head_len(); ++idx) {
                    long j = prof.start() + idx;
                    const Scalar& v = prof.head()[static_cast<std::size_t>(idx)];
                    if (!is_zero(v)) cells[{j + d, j}] += v;
                }
            } else {
                band.emplace(d, prof);
            }
        }
        // absorb patch cells that sit on a banded offset into that head
        std::map<long, std::map<long, Scalar>> on_band;
        for (auto it = cells.begin(); it != cells.end();) {
            long d = it->first.first - it->first.second;
            if (band.count(d)) {
                on_band[d][it->first.second] = it->second;
                it = cells.erase(it);
            } else {
                ++it;
            }
        }
        for (const auto& [d, cols] : on_band) {
            const DiagonalProfile& prof = band.at(d);
            long max_col = std::max(prof.tail_start() - 1, cols.rbegin()->first);
            std::vector<Scalar> head;
            for (long j = prof.start(); j <= max_col; ++j) head.push_back(prof.eval(j));
            for (const auto& [j, v] : cols)
                head[static_cast<std::size_t>(j - prof.start())] += v;
            band.insert_or_assign(d, DiagonalProfile(d, std::move(head), prof.tail()));
        }
        for (auto it = cells.begin(); it != cells.end();)
            it = is_zero(it->second) ? cells.erase(it) : std::next(it);
        RcfMatrix out;
        out.band_ = std::move(band);
        out.patch_ = FinitePatch(cells);
        return out;
    }

    // -- builders ---------------------------------------------------------

    static RcfMatrix zero() { return RcfMatrix(); }

    /// S_i: ones along the i-th subdiagonal (superdiagonal for i < 0); S_0 = I.
    static RcfMatrix shift(long i) {
        return RcfMatrix::make({{i, DiagonalProfile::constant(i, Scalar(1))}}, {});
    }

    static RcfMatrix identity() { return shift(0); }

    /// Matrix unit e_{ij}.
    static RcfMatrix unit(long i, long j, const Scalar& v = Scalar(1)) {
        if (i < 1 || j < 1) fail("OutOfDomain", "matrix unit position out of range");
        return RcfMatrix::make({}, {{{i, j}, v}});
    }

    /// T_1 = sum (j+1) e_{j+1,j}; T_{-1} = sum 1/(i+1) e_{i,i+1}.
    static RcfMatrix t_shift(int sign) {
        if (sign == 1) {
            RationalFunction jp1(Polynomial({Scalar(1), Scalar(1)}), Polynomial::one());
            return RcfMatrix::make({{1, DiagonalProfile(1, {}, jp1)}}, {});
        }
        if (sign == -1) {
            RationalFunction inv_j(Polynomial::one(), Polynomial::variable());
            return RcfMatrix::make({{-1, DiagonalProfile(-1, {}, inv_j)}}, {});
        }
        fail("OutOfDomain", "T(k) is defined for k = 1 and k = -1 only");
    }

    static RcfMatrix diagonal(const RationalFunction& f) {
        if (f.is_zero_fn()) return zero();
        return RcfMatrix::make({{0, DiagonalProfile(0, {}, f)}}, {});
    }

    static RcfMatrix toeplitz(const std::vector<std::pair<long, Scalar>>& symbol) {
        std::map<long, DiagonalProfile> band;
        std::map<long, Scalar> merged;
        for (const auto& [d, c] : symbol) merged[d] += c;
        for (const auto& [d, c] : merged)
            if (!is_zero(c)) band.emplace(d, DiagonalProfile::constant(d, c));
        return RcfMatrix::make(band, {});
    }

    /// Materializes Diag(u_j) only when the ratio is the constant 1, i.e. the
    /// diagonal is the constant a1. Any other ratio yields a diagonal outside
    /// the rational-tail class (geometric or faster), so those hyperdiagonals
    /// act purely through hyperdiag_conjugate.
    static RcfMatrix hyper(const HyperDiagonal& h) {
        if (h.ratio().is_one()) return diagonal(RationalFunction::constant(h.a1()));
        fail("NotMaterializable",
             "hyperdiagonal with ratio " + h.ratio().to_string() +
                 " has no band-plus-patch form; use hyperdiag_conjugate");
    }

    // -- structure --------------------------------------------------------

    const std::map<long, DiagonalProfile>& band() const { return band_; }
    const FinitePatch& patch() const { return patch_; }

    bool is_zero_matrix() const { return band_.empty() && patch_.empty(); }
    bool is_finite() const { return band_.empty(); }

    std::optional<long> max_offset() const {
        if (band_.empty()) return std::nullopt;
        return band_.rbegin()->first;
    }
    std::optional<long> min_offset() const {
        if (band_.empty()) return std::nullopt;
        return band_.begin()->first;
    }

    bool operator==(const RcfMatrix& other) const {
        return band_ == other.band_ && patch_ == other.patch_;
    }

    Scalar entry(long i, long j) const {
        if (i < 1 || j < 1) fail("OutOfDomain", "matrix entries are indexed from 1");
        Scalar v = patch_.value_at(i, j);
        auto it = band_.find(i - j);
        if (it != band_.end()) v += it->second.eval(j);  // j >= start holds whenever i,j >= 1
        return v;
    }

    DenseMatrix window(long i1, long i2, long j1, long j2) const {
        if (i1 < 1 || j1 < 1 || i2 < i1 - 1 || j2 < j1 - 1)
            fail("OutOfDomain", "invalid window bounds");
        DenseMatrix out;
        out.reserve(static_cast<std::size_t>(i2 - i1 + 1));
        for (long i = i1; i <= i2; ++i) {
            std::vector<Scalar> row;
            row.reserve(static_cast<std::size_t>(j2 - j1 + 1));
            for (long j = j1; j <= j2; ++j) row.push_back(entry(i, j));
            out.push_back(std::move(row));
        }
        return out;
    }

    // -- ring operations --------------------------------------------------

    RcfMatrix operator+(const RcfMatrix& o) const {
        std::map<long, DiagonalProfile> band;
        for (const auto& [d, p] : band_) {
            auto it = o.band_.find(d);
            band.emplace(d, it == o.band_.end() ? p : profile_add(p, it->second));
        }
        for (const auto& [d, q] : o.band_)
            if (!band_.count(d)) band.emplace(d, q);
        std::map<std::pair<long, long>, Scalar> cells = patch_.cells();
        for (const auto& e : o.patch_.entries()) cells[{e.row, e.col}] += e.value;
        return make(band, cells);
    }

    RcfMatrix operator-() const { return scaled(Scalar(-1)); }
    RcfMatrix operator-(const RcfMatrix& o) const { return *this + (-o); }

    RcfMatrix scaled(const Scalar& c) const {
        if (is_zero(c)) return zero();
        std::map<long, DiagonalProfile> band;
        for (const auto& [d, p] : band_) band.emplace(d, profile_scale(p, c));
        std::map<std::pair<long, long>, Scalar> cells;
        for (const auto& e : patch_.entries()) cells[{e.row, e.col}] = e.value * c;
        return make(band, cells);
    }

    RcfMatrix operator*(const RcfMatrix& o) const {
        std::map<long, DiagonalProfile> band;
        // band x band, one shifted profile product per offset pair
        for (const auto& [d1, p] : band_) {
            for (const auto& [d2, q] : o.band_) {
                DiagonalProfile term = profile_shift_mul(p, q);
                auto it = band.find(d1 + d2);
                if (it == band.end())
                    band.emplace(d1 + d2, std::move(term));
                else
                    it->second = profile_add(it->second, term);
            }
        }
        std::map<std::pair<long, long>, Scalar> cells;
        // band x patch: each patch cell of o pulls in one column of our band
        for (const auto& e : o.patch_.entries())
            for (const auto& [d, p] : band_)
                if (e.row >= p.start()) cells[{e.row + d, e.col}] += p.eval(e.row) * e.value;
        // patch x band: each of our patch cells pulls in one row of o's band
        for (const auto& e : patch_.entries())
            for (const auto& [d, q] : o.band_) {
                long j = e.col - d;
                if (j >= q.start()) cells[{e.row, j}] += e.value * q.eval(j);
            }
        // patch x patch
        for (const auto& e : patch_.entries())
            for (const auto& f : o.patch_.entries())
                if (e.col == f.row) cells[{e.row, f.col}] += e.value * f.value;
        return make(band, cells);
    }

    RcfMatrix pow(unsigned long e) const {
        RcfMatrix acc = identity();
        for (unsigned long k = 0; k < e; ++k) acc = acc * *this;
        return acc;
    }

    RcfMatrix transpose() const {
        std::map<long, DiagonalProfile> band;
        for (const auto& [d, p] : band_) {
            std::vector<Scalar> head(p.head());
            band.emplace(-d, DiagonalProfile(-d, std::move(head), p.tail().shifted(-d)));
        }
        std::map<std::pair<long, long>, Scalar> cells;
        for (const auto& e : patch_.entries()) cells[{e.col, e.row}] = e.value;
        return make(band, cells);
    }

    // -- module actions ---------------------------------------------------

    FinSuppVector apply_left(const FinSuppVector& v) const {
        std::map<long, Scalar> out;
        for (const auto& [j, x] : v.entries()) {
            for (const auto& [d, p] : band_)
                if (j >= p.start()) out[j + d] += p.eval(j) * x;
        }
        for (const auto& e : patch_.entries()) {
            Scalar x = v.coeff(e.col);
            if (!is_zero(x)) out[e.row] += e.value * x;
        }
        return FinSuppVector(std::move(out));
    }

    FinSuppVector apply_right(const FinSuppVector& w) const {
        std::map<long, Scalar> out;
        for (const auto& [i, x] : w.entries()) {
            for (const auto& [d, p] : band_) {
                long j = i - d;
                if (j >= p.start()) out[j] += x * p.eval(j);
            }
        }
        for (const auto& e : patch_.entries()) {
            Scalar x = w.coeff(e.row);
            if (!is_zero(x)) out[e.col] += x * e.value;
        }
        return FinSuppVector(std::move(out));
    }

    /// Rank of a finite matrix, by fraction-free elimination on the occupied
    /// rows and columns.
    long rank_of_finite() const {
        if (!is_finite()) fail("NotFinite", "rank is defined for finite matrices only");
        if (patch_.empty()) return 0;
        std::set<long> rows, cols;
        for (const auto& e : patch_.entries()) {
            rows.insert(e.row);
            cols.insert(e.col);
        }
        std::map<long, std::size_t> col_index;
        std::size_t ci = 0;
        for (long c : cols) col_index[c] = ci++;
        DenseMatrix m(rows.size(), std::vector<Scalar>(cols.size(), Scalar(0)));
        std::map<long, std::size_t> row_index;
        std::size_t ri = 0;
        for (long r : rows) row_index[r] = ri++;
        for (const auto& e : patch_.entries()) m[row_index[e.row]][col_index[e.col]] = e.value;
        return static_cast<long>(linalg::rank_exact(m));
    }

    std::string debug_string() const {
        std::string s = "band{";
        for (const auto& [d, p] : band_) s += " " + p.to_string() + ";";
        s += " } patch{";
        for (const auto& e : patch_.entries())
            s += " (" + std::to_string(e.row) + "," + std::to_string(e.col) + ")=" +
                 scalar_to_string(e.value);
        return s + " }";
    }

private:
    std::map<long, DiagonalProfile> band_;
    FinitePatch patch_;
};

inline RcfMatrix operator*(const Scalar& c, const RcfMatrix& a) { return a.scaled(c); }

inline bool mod_finite_equal(const RcfMatrix& a, const RcfMatrix& b) {
    return (a - b).is_finite();
}

/// Exact U A U^{-1} for a hyperdiagonal U: the offset-d profile tail picks up
/// the rational factor rho_d(j) = u_{j+d}/u_j, heads and patch scale by the
/// evaluated u_i/u_j.
inline RcfMatrix hyperdiag_conjugate(const HyperDiagonal& u, const RcfMatrix& a) {
    std::map<long, DiagonalProfile> band;
    for (const auto& [d, p] : a.band()) {
        RationalFunction rho = u.offset_factor(d);
        std::vector<Scalar> head;
        head.reserve(static_cast<std::size_t>(p.head_len()));
        for (long idx = 0; idx < p.head_len(); ++idx) {
            long j = p.start() + idx;
            head.push_back(p.head()[static_cast<std::size_t>(idx)] * u.value_ratio(j + d, j));
        }
        band.emplace(d, DiagonalProfile(d, std::move(head), p.tail() * rho));
    }
    std::map<std::pair<long, long>, Scalar> cells;
    for (const auto& e : a.patch().entries())
        cells[{e.row, e.col}] = e.value * u.value_ratio(e.row, e.col);
    return RcfMatrix::make(band, cells);
}

}  // namespace rcfm
