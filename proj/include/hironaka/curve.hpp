#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace hironaka {

inline constexpr int kDefaultTruncation = 64;

// Truncated power series in t. Exponents >= precision are unknown; precision
// kExact means the stored terms are the whole series.
class Series {
public:
    static constexpr int kExact = std::numeric_limits<int>::max();

    using Term = std::pair<int, Rat>;

    Series() = default;

    explicit Series(std::vector<Term> terms, int precision = kExact) : precision_(precision) {
        std::map<int, Rat> acc;
        for (auto& [e, c] : terms) {
            if (e < 0) throw InputError("negative exponent in series");
            acc[e] += c;
        }
        for (auto& [e, c] : acc)
            if (sgn(c) != 0 && e < precision_) terms_.emplace_back(e, c);
    }

    static Series monomial(const Rat& c, int e) { return Series({{e, c}}); }
    static Series zero(int precision = kExact) { return Series({}, precision); }

    const std::vector<Term>& terms() const { return terms_; }
    int precision() const { return precision_; }
    bool exact() const { return precision_ == kExact; }
    bool known_zero() const { return terms_.empty(); }
    bool exact_zero() const { return terms_.empty() && exact(); }

    // First exponent that could be nonzero: first term, or precision if none.
    int low_bound() const { return terms_.empty() ? precision_ : terms_.front().first; }

    Rat coeff(int e) const {
        for (auto& [k, c] : terms_)
            if (k == e) return c;
        return Rat(0);
    }

    bool operator==(const Series& o) const {
        return precision_ == o.precision_ && terms_ == o.terms_;
    }

    std::string to_text() const {
        std::string s;
        for (auto& [e, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += rat_to_text(c) + "*t^" + std::to_string(e);
        }
        if (s.empty()) s = "0";
        if (!exact()) s += " + O(t^" + std::to_string(precision_) + ")";
        return s;
    }

private:
    std::vector<Term> terms_;
    int precision_ = kExact;
};

namespace detail {

inline int sat_add(int a, int b) {
    if (a == Series::kExact || b == Series::kExact) return Series::kExact;
    long s = long(a) + long(b);
    return s >= Series::kExact ? Series::kExact - 1 : int(s);
}

inline std::vector<Rat> dense(const Series& s, int upto) {
    std::vector<Rat> v(std::max(upto, 0));
    for (auto& [e, c] : s.terms())
        if (e < upto) v[e] = c;
    return v;
}

inline Series from_dense(const std::vector<Rat>& v, int precision) {
    std::vector<Series::Term> t;
    for (int e = 0; e < int(v.size()) && e < precision; ++e)
        if (sgn(v[e]) != 0) t.emplace_back(e, v[e]);
    return Series(std::move(t), precision);
}

}  // namespace detail

inline Series operator+(const Series& a, const Series& b) {
    std::vector<Series::Term> t = a.terms();
    t.insert(t.end(), b.terms().begin(), b.terms().end());
    return Series(std::move(t), std::min(a.precision(), b.precision()));
}

inline Series operator-(const Series& a) {
    std::vector<Series::Term> t = a.terms();
    for (auto& [e, c] : t) c = -c;
    return Series(std::move(t), a.precision());
}

inline Series operator-(const Series& a, const Series& b) { return a + (-b); }

inline Series operator*(const Series& a, const Series& b) {
    int p = std::min(detail::sat_add(a.precision(), b.low_bound()),
                     detail::sat_add(b.precision(), a.low_bound()));
    std::map<int, Rat> acc;
    for (auto& [ea, ca] : a.terms())
        for (auto& [eb, cb] : b.terms()) {
            int e = ea + eb;
            if (e < p) acc[e] += ca * cb;
        }
    std::vector<Series::Term> t(acc.begin(), acc.end());
    return Series(std::move(t), p);
}

inline Series scale(const Series& a, const Rat& c) {
    if (sgn(c) == 0) return Series::zero(a.exact() ? Series::kExact : a.precision());
    std::vector<Series::Term> t = a.terms();
    for (auto& [e, x] : t) x *= c;
    return Series(std::move(t), a.precision());
}

inline Series add_constant(const Series& a, const Rat& c) { return a + Series::monomial(c, 0); }

// t -> t^k on every exponent.
inline Series scale_exponents(const Series& a, int k) {
    std::vector<Series::Term> t = a.terms();
    for (auto& [e, c] : t) e *= k;
    return Series(std::move(t), a.exact() ? Series::kExact : detail::sat_add(0, a.precision() * k));
}

struct Order {
    enum class Kind { Known, Infinite, Unknown };
    Kind kind;
    int value;  // the order when Known, the precision bound when Unknown

    bool known() const { return kind == Kind::Known; }
    bool infinite() const { return kind == Kind::Infinite; }
    bool unknown() const { return kind == Kind::Unknown; }
};

inline Order ord(const Series& s) {
    if (!s.terms().empty()) return {Order::Kind::Known, s.terms().front().first};
    if (s.exact()) return {Order::Kind::Infinite, 0};
    return {Order::Kind::Unknown, s.precision()};
}

// a / b where ord b <= ord a. Infinite results are cut at `cap`.
inline Series divide(const Series& a, const Series& b, int cap) {
    Order ob = ord(b);
    if (!ob.known()) throw PrecisionExhausted("division by a series of unknown order");
    int k = ob.value;
    if (a.low_bound() < k) throw InternalError("divide: quotient would have negative exponents");
    const Rat b0 = b.terms().front().second;
    // shift both by k
    int pA = a.exact() ? Series::kExact : a.precision() - k;
    int pB = b.exact() ? Series::kExact : b.precision() - k;
    bool b_monomial = b.terms().size() == 1;
    if (a.exact_zero()) return Series::zero();
    if (b_monomial && b.exact()) {
        std::vector<Series::Term> t;
        for (auto& [e, c] : a.terms()) t.emplace_back(e - k, c / b0);
        return Series(std::move(t), pA);
    }
    int lA = a.low_bound() - k;
    int p = std::max(0, std::min({pA, detail::sat_add(pB, lA), cap}));
    std::vector<Rat> A(p), B(p), R(p);
    for (auto& [e, c] : a.terms())
        if (e - k < p) A[e - k] = c;
    for (auto& [e, c] : b.terms())
        if (e - k < p) B[e - k] = c;
    std::vector<int> bnz;
    for (int j = 1; j < p; ++j)
        if (sgn(B[j]) != 0) bnz.push_back(j);
    for (int e = std::max(lA, 0); e < p; ++e) {
        Rat s = A[e];
        for (int j : bnz) {
            if (j > e) break;
            if (sgn(R[e - j]) != 0) s -= B[j] * R[e - j];
        }
        R[e] = s / b0;
    }
    return detail::from_dense(R, p);
}

// Coefficients of phi with y(t) = phi(x(t)), x of order 1. Known to min(px, py, cap).
inline Series graph_form(const Series& x, const Series& y, int cap) {
    Order ox = ord(x);
    if (!ox.known() || ox.value != 1) throw InternalError("graph_form needs ord x = 1");
    const Rat a1 = x.terms().front().second;
    if (x.exact() && x.terms().size() == 1 && y.exact()) {
        std::vector<Series::Term> t;
        for (auto& [e, c] : y.terms()) {
            Rat f = c;
            Rat inv = 1 / a1;
            for (int i = 0; i < e; ++i) f *= inv;
            t.emplace_back(e, f);
        }
        return Series(std::move(t));
    }
    int p = std::min({x.precision(), y.precision(), cap});
    std::vector<Rat> a = detail::dense(x, p), yc = detail::dense(y, p);
    // pw[k][n] = [x^n] T^k where T is the compositional inverse of x(t)
    std::vector<std::vector<Rat>> pw(p, std::vector<Rat>(p));
    std::vector<Rat> phi(p);
    if (p > 0 && sgn(yc[0]) != 0) phi[0] = yc[0];
    for (int n = 1; n < p; ++n) {
        for (int kk = 2; kk <= n; ++kk) {
            Rat s = 0;
            for (int j = 1; j <= n - kk + 1; ++j)
                if (sgn(pw[1][j]) != 0 && sgn(pw[kk - 1][n - j]) != 0) s += pw[1][j] * pw[kk - 1][n - j];
            pw[kk][n] = s;
        }
        Rat s = (n == 1) ? Rat(1) : Rat(0);
        for (int kk = 2; kk <= n; ++kk)
            if (sgn(a[kk]) != 0) s -= a[kk] * pw[kk][n];
        pw[1][n] = s / a1;
        Rat v = 0;
        for (int kk = 1; kk <= n; ++kk)
            if (sgn(yc[kk]) != 0) v += yc[kk] * pw[kk][n];
        phi[n] = v;
    }
    return detail::from_dense(phi, p);
}

// A parametrized germ of plane curve.
struct Branch {
    Series x;
    Series y;
    std::string name;
};

inline int exponent_gcd(const Branch& b) {
    int g = 0;
    for (auto* s : {&b.x, &b.y})
        for (auto& [e, c] : s->terms()) g = std::gcd(g, e);
    return g;
}

inline void validate_branch(const Branch& b) {
    if (b.x.known_zero() && b.y.known_zero()) throw InputError("branch '" + b.name + "' is zero");
    if (sgn(b.x.coeff(0)) != 0 || sgn(b.y.coeff(0)) != 0)
        throw InputError("branch '" + b.name + "' does not pass through the origin");
    if (exponent_gcd(b) != 1)
        throw InputError("branch '" + b.name + "' is not primitively parametrized");
}

enum class Role { F, G, Delta };

inline std::string role_name(Role r) {
    switch (r) {
        case Role::F: return "f";
        case Role::G: return "g";
        default: return "delta";
    }
}

struct TaggedBranch {
    Branch branch;
    Role role = Role::Delta;
    std::int64_t mult = 1;
};

struct TaggedSystem {
    std::vector<TaggedBranch> branches;

    std::vector<const TaggedBranch*> with_role(Role r) const {
        std::vector<const TaggedBranch*> out;
        for (auto& b : branches)
            if (b.role == r) out.push_back(&b);
        return out;
    }

    void add(Branch b, Role r, std::int64_t mult = 1) { branches.push_back({std::move(b), r, mult}); }
};

inline Branch x_axis() { return {Series::monomial(1, 1), Series::zero(), "y=0"}; }
inline Branch y_axis() { return {Series::zero(), Series::monomial(1, 1), "x=0"}; }

// --- local blow-up kernel shared by the pair engine and module resolve ---

// Tangent direction of a branch at the origin of a chart: slope of Y over X.
struct Direction {
    bool infinite = false;
    Rat slope = 0;

    bool operator==(const Direction& o) const {
        return infinite == o.infinite && (infinite || slope == o.slope);
    }
    bool operator<(const Direction& o) const {
        if (infinite != o.infinite) return !infinite;
        return !infinite && slope < o.slope;
    }
    std::string to_text() const { return infinite ? "inf" : rat_to_text(slope); }
};

struct LocalBranch {
    Series X;
    Series Y;
};

namespace detail {

[[noreturn]] inline void exhausted(const std::string& what) {
    throw PrecisionExhausted("precision exhausted: " + what);
}

}  // namespace detail

inline int multiplicity(const LocalBranch& b) {
    Order a = ord(b.X), c = ord(b.Y);
    if (a.known() && c.known()) return std::min(a.value, c.value);
    if (a.known() && (c.infinite() || (c.unknown() && c.value >= a.value))) return a.value;
    if (c.known() && (a.infinite() || (a.unknown() && a.value >= c.value))) return c.value;
    detail::exhausted("multiplicity of a strict transform");
}

inline Direction direction(const LocalBranch& b) {
    Order a = ord(b.X), c = ord(b.Y);
    if (a.known() && c.known()) {
        if (a.value < c.value) return {false, 0};
        if (c.value < a.value) return {true, 0};
        Rat s = b.Y.terms().front().second / b.X.terms().front().second;
        return {false, s};
    }
    if (a.known() && (c.infinite() || (c.unknown() && c.value > a.value))) return {false, 0};
    if (c.known() && (a.infinite() || (a.unknown() && a.value > c.value))) return {true, 0};
    detail::exhausted("tangent direction of a strict transform");
}

// Strict transform in the chart centred at the point of direction d.
inline LocalBranch chart(const LocalBranch& b, const Direction& d, int cap) {
    if (d.infinite) return {divide(b.X, b.Y, cap), b.Y};
    Series q = divide(b.Y, b.X, cap);
    return {b.X, sgn(d.slope) == 0 ? q : add_constant(q, -d.slope)};
}

// Order along the branch of the coordinate defining {X=0} or {Y=0}.
inline Order order_along(const LocalBranch& b, bool x_coordinate) { return ord(x_coordinate ? b.X : b.Y); }

// Two smooth branches with a common tangent: throws when they cannot be told
// apart (identical, or equal to the available precision).
inline void check_separable(const LocalBranch& a, const LocalBranch& b, const Direction& d, int cap,
                            const std::string& na, const std::string& nb) {
    const Series& xa = d.infinite ? a.Y : a.X;
    const Series& ya = d.infinite ? a.X : a.Y;
    const Series& xb = d.infinite ? b.Y : b.X;
    const Series& yb = d.infinite ? b.X : b.Y;
    Series pa = graph_form(xa, ya, cap), pb = graph_form(xb, yb, cap);
    Series diff = pa - pb;
    if (!diff.known_zero()) return;
    if (diff.exact()) throw IdenticalBranch("branches '" + na + "' and '" + nb + "' are identical");
    throw PrecisionExhausted("branches '" + na + "' and '" + nb + "' agree to precision " +
                             std::to_string(diff.precision()));
}

inline LocalBranch local(const Branch& b) { return {b.x, b.y}; }

// Noether: sum over shared infinitely near points of products of multiplicities.
inline std::int64_t intersection_multiplicity(const Branch& a, const Branch& b, int cap = kDefaultTruncation) {
    if (a.x == b.x && a.y == b.y && a.x.exact() && a.y.exact())
        throw IdenticalBranch("branches '" + a.name + "' and '" + b.name + "' are identical");
    LocalBranch la = local(a), lb = local(b);
    std::int64_t total = 0;
    for (int step = 0; step < 100000; ++step) {
        int ma = multiplicity(la), mb = multiplicity(lb);
        total += std::int64_t(ma) * mb;
        Direction da = direction(la), db = direction(lb);
        if (!(da == db)) return total;
        if (ma == 1 && mb == 1) check_separable(la, lb, da, cap, a.name, b.name);
        la = chart(la, da, cap);
        lb = chart(lb, db, cap);
    }
    throw InternalError("intersection multiplicity did not terminate");
}

inline Quotient contact_quotient(const Branch& c, const TaggedSystem& sys, int cap = kDefaultTruncation) {
    Int vf = 0, vg = 0;
    for (auto& tb : sys.branches) {
        if (tb.role == Role::Delta) continue;
        std::int64_t i;
        try {
            i = intersection_multiplicity(c, tb.branch, cap);
        } catch (const IdenticalBranch&) {
            throw InputError("branch '" + c.name + "' is a branch of {fg=0}");
        }
        (tb.role == Role::F ? vf : vg) += Int(static_cast<long>(tb.mult * i));
    }
    return Quotient::ratio(vf, vg);
}

inline Branch reparametrize_cover(const Branch& c, int k) {
    if (k < 1) throw InputError("cover degree must be positive");
    return {scale_exponents(c.x, k), scale_exponents(c.y, k), c.name};
}

// ord x / ord y, i.e. the contact quotient against f = {x=0}, g = {y=0}.
inline Quotient first_puiseux_exponent(const Branch& c) {
    Order a = ord(c.x), b = ord(c.y);
    if (a.infinite() || b.infinite()) throw InputError("branch '" + c.name + "' lies on an axis");
    if (!a.known() || !b.known()) detail::exhausted("first Puiseux exponent");
    return Quotient::ratio(a.value, b.value);
}

// Implicit bivariate polynomial, only used as a test oracle.
struct BivPoly {
    std::map<std::pair<int, int>, Rat> coeffs;  // (i,j) -> coefficient of x^i y^j
};

inline Series series_pow(const Series& s, int k) {
    Series r = Series::monomial(1, 0);
    for (int i = 0; i < k; ++i) r = r * s;
    return r;
}

inline Series substitute(const BivPoly& F, const Branch& b) {
    Series acc = Series::zero();
    for (auto& [ij, c] : F.coeffs) acc = acc + scale(series_pow(b.x, ij.first) * series_pow(b.y, ij.second), c);
    return acc;
}

// ord_t F(x(t), y(t)), the intersection number with {F=0}.
inline std::int64_t substitution_order(const BivPoly& F, const Branch& b) {
    Order o = ord(substitute(F, b));
    if (o.infinite()) throw IdenticalBranch("branch '" + b.name + "' lies on the curve");
    if (o.unknown()) detail::exhausted("substitution oracle");
    return o.value;
}

}  // namespace hironaka
