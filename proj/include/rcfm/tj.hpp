#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rcfm/errors.hpp"
#include "rcfm/fredholm.hpp"
#include "rcfm/matrix.hpp"

namespace rcfm {

enum class TJLetter { x, y };

/// Basis monomial y^a x^b of the algebra <x, y | xy = 1>.
struct TJMonomial {
    long a = 0;
    long b = 0;
    auto operator<=>(const TJMonomial&) const = default;
};

/// Element of <x, y | xy = 1> in normal form: a linear combination of y^a x^b.
/// The single rewrite rule xy -> 1 is length-reducing and its left side admits
/// no self-overlap ("xy" at positions t and t+1 would need letters x,y,y and
/// x,x,y simultaneously), so rewriting to exhaustion is confluent and the
/// normal form is canonical.
class TJElement {
public:
    TJElement() = default;

    explicit TJElement(std::map<TJMonomial, Scalar> terms) {
        for (auto& [m, c] : terms)
            if (!is_zero(c)) terms_.emplace(m, std::move(c));
    }

    static TJElement zero() { return {}; }
    static TJElement one() { return monomial(0, 0); }
    static TJElement gen_x() { return monomial(0, 1); }
    static TJElement gen_y() { return monomial(1, 0); }

    static TJElement monomial(long a, long b, const Scalar& c = Scalar(1)) {
        return TJElement({{TJMonomial{a, b}, c}});
    }

    const std::map<TJMonomial, Scalar>& terms() const { return terms_; }
    bool is_zero_element() const { return terms_.empty(); }

    bool operator==(const TJElement& other) const = default;

    TJElement operator+(const TJElement& o) const {
        std::map<TJMonomial, Scalar> out = terms_;
        for (const auto& [m, c] : o.terms_) out[m] += c;
        return TJElement(std::move(out));
    }

    TJElement operator-() const {
        std::map<TJMonomial, Scalar> out = terms_;
        for (auto& [m, c] : out) c = -c;
        return TJElement(std::move(out));
    }

    TJElement operator-(const TJElement& o) const { return *this + (-o); }

    /// (y^a x^b)(y^c x^d): the inner x^b y^c collapses pairwise via xy = 1.
    TJElement operator*(const TJElement& o) const {
        std::map<TJMonomial, Scalar> out;
        for (const auto& [m1, c1] : terms_) {
            for (const auto& [m2, c2] : o.terms_) {
                TJMonomial m;
                if (m2.a >= m1.b) {
                    m = {m1.a + m2.a - m1.b, m2.b};
                } else {
                    m = {m1.a, m1.b - m2.a + m2.b};
                }
                out[m] += c1 * c2;
            }
        }
        return TJElement(std::move(out));
    }

    TJElement operator*(const Scalar& c) const {
        std::map<TJMonomial, Scalar> out = terms_;
        for (auto& [m, v] : out) v *= c;
        return TJElement(std::move(out));
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += scalar_to_string(c) + "*y^" + std::to_string(m.a) + "x^" + std::to_string(m.b);
        }
        return s;
    }

private:
    std::map<TJMonomial, Scalar> terms_;
};

/// Normalize one word under xy -> 1 with a stack: pushing y onto a trailing x
/// cancels the pair. The survivors are all y's before all x's.
inline TJMonomial normalize_word(const std::vector<TJLetter>& word) {
    long ys = 0, xs = 0;
    for (TJLetter l : word) {
        if (l == TJLetter::x) {
            ++xs;
        } else if (xs > 0) {
            --xs;  // the trailing x and this y form "xy"
        } else {
            ++ys;
        }
    }
    return TJMonomial{ys, xs};
}

inline TJElement tj_normalize(const std::vector<std::pair<Scalar, std::vector<TJLetter>>>& words) {
    std::map<TJMonomial, Scalar> out;
    for (const auto& [c, w] : words) out[normalize_word(w)] += c;
    return TJElement(std::move(out));
}

/// A pair of matrices satisfying the defining relation xy = 1 symbolically.
class Embedding {
public:
    Embedding(std::string name, RcfMatrix image_x, RcfMatrix image_y)
        : name_(std::move(name)), x_(std::move(image_x)), y_(std::move(image_y)) {
        if (!(x_ * y_ == RcfMatrix::identity()))
            fail("InvalidEmbedding", "images do not satisfy xy = 1");
    }

    static Embedding phi() { return Embedding("Phi", RcfMatrix::shift(-1), RcfMatrix::shift(1)); }
    static Embedding psi() { return Embedding("Psi", RcfMatrix::t_shift(-1), RcfMatrix::t_shift(1)); }
    static Embedding xi() { return Embedding("Xi", RcfMatrix::shift(-2), RcfMatrix::shift(2)); }

    static Embedding by_name(const std::string& name) {
        if (name == "Phi") return phi();
        if (name == "Psi") return psi();
        if (name == "Xi") return xi();
        fail("UnknownEmbedding", "no embedding named \"" + name + "\" (expected Phi, Psi, or Xi)");
    }

    const std::string& name() const { return name_; }
    const RcfMatrix& image_x() const { return x_; }
    const RcfMatrix& image_y() const { return y_; }

private:
    std::string name_;
    RcfMatrix x_;
    RcfMatrix y_;
};

/// Linear extension of y^a x^b |-> image_y^a * image_x^b.
inline RcfMatrix tj_embed(const Embedding& e, const TJElement& t) {
    RcfMatrix out = RcfMatrix::zero();
    std::map<long, RcfMatrix> xpow, ypow;
    auto power = [](std::map<long, RcfMatrix>& cache, const RcfMatrix& base, long n) {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        RcfMatrix p = base.pow(static_cast<unsigned long>(n));
        cache.emplace(n, p);
        return p;
    };
    for (const auto& [m, c] : t.terms())
        out = out + (power(ypow, e.image_y(), m.a) * power(xpow, e.image_x(), m.b)).scaled(c);
    return out;
}

inline bool embedding_hom_check(const Embedding& e, const TJElement& u, const TJElement& v) {
    return tj_embed(e, u * v) == tj_embed(e, u) * tj_embed(e, v);
}

/// Linear independence of the images of {y^a x^b : a, b <= max_degree},
/// decided by exact rank of the window vectorizations. Independence of the
/// truncations implies independence of the matrices (the window is a linear
/// projection), so `true` is a certificate.
inline bool injectivity_check(const Embedding& e, long max_degree) {
    if (max_degree < 1) fail("OutOfDomain", "degree bound must be >= 1");
    const long w = 2 * max_degree + 2;
    DenseMatrix rows;
    for (long a = 0; a <= max_degree; ++a) {
        for (long b = 0; b <= max_degree; ++b) {
            RcfMatrix img = tj_embed(e, TJElement::monomial(a, b));
            std::vector<Scalar> flat;
            flat.reserve(static_cast<std::size_t>(w * w));
            for (long i = 1; i <= w; ++i)
                for (long j = 1; j <= w; ++j) flat.push_back(img.entry(i, j));
            rows.push_back(std::move(flat));
        }
    }
    const auto wanted = static_cast<std::size_t>((max_degree + 1) * (max_degree + 1));
    return linalg::rank_exact(rows) == wanted;
}

/// Conjugator for equivalence checking: either a hyperdiagonal or an explicit
/// (U, U^{-1}) pair verified against the identity.
using Conjugator = std::variant<HyperDiagonal, std::pair<RcfMatrix, RcfMatrix>>;

inline bool equivalence_check(const Embedding& e1, const Embedding& e2, const Conjugator& u) {
    RcfMatrix cx, cy;
    if (const auto* h = std::get_if<HyperDiagonal>(&u)) {
        cx = hyperdiag_conjugate(*h, e1.image_x());
        cy = hyperdiag_conjugate(*h, e1.image_y());
    } else {
        const auto& [m, minv] = std::get<std::pair<RcfMatrix, RcfMatrix>>(u);
        const RcfMatrix id = RcfMatrix::identity();
        if (!(m * minv == id) || !(minv * m == id))
            fail("NotInvertible", "conjugator pair does not multiply to the identity");
        cx = m * e1.image_x() * minv;
        cy = m * e1.image_y() * minv;
    }
    return cx == e2.image_x() && cy == e2.image_y();
}

struct IndexObstruction {
    bool distinguishable = false;
    long index1 = 0;  // index of e1.image_x
    long index2 = 0;  // index of e2.image_x
};

/// Unequal indices of the generator images rule out any invertible conjugator;
/// equal indices prove nothing.
inline IndexObstruction index_obstruction(const Embedding& e1, const Embedding& e2) {
    long i1 = index(witness_verify(e1.image_x(), e1.image_y()));
    long i2 = index(witness_verify(e2.image_x(), e2.image_y()));
    return IndexObstruction{i1 != i2, i1, i2};
}

}  // namespace rcfm
