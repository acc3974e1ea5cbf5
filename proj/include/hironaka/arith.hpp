#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hironaka {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rat_to_text(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_text(const std::string& s) {
    Rat r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw InputError("bad rational: '" + s + "'");
    r.canonicalize();
    return r;
}

// Ratio of two nonnegative valuations.
class Quotient {
public:
    enum class Kind { Zero, Finite, Infinity };

    Quotient() = default;

    static Quotient zero() { return Quotient(Kind::Zero, Rat(0)); }
    static Quotient infinity() { return Quotient(Kind::Infinity, Rat(0)); }

    static Quotient finite(const Rat& r) {
        if (sgn(r) <= 0) throw InputError("finite quotient must be positive");
        return Quotient(Kind::Finite, r);
    }

    template <class A, class B>
    static Quotient ratio(const A& vf, const B& vg) {
        Int a(vf), b(vg);
        if (sgn(a) < 0 || sgn(b) < 0) throw InputError("negative valuation");
        if (sgn(a) == 0 && sgn(b) == 0) throw InputError("quotient 0/0");
        if (sgn(a) == 0) return zero();
        if (sgn(b) == 0) return infinity();
        Rat r(a, b);
        r.canonicalize();
        return Quotient(Kind::Finite, r);
    }

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_infinity() const { return kind_ == Kind::Infinity; }
    const Rat& value() const { return value_; }

    std::string to_text() const {
        switch (kind_) {
            case Kind::Zero: return "0";
            case Kind::Infinity: return "inf";
            default: return rat_to_text(value_);
        }
    }

    static Quotient from_text(const std::string& s) {
        if (s == "0") return zero();
        if (s == "inf") return infinity();
        return finite(rat_from_text(s));
    }

    friend std::strong_ordering operator<=>(const Quotient& a, const Quotient& b) {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
        if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend bool operator==(const Quotient& a, const Quotient& b) {
        return (a <=> b) == std::strong_ordering::equal;
    }

private:
    Quotient(Kind k, Rat v) : kind_(k), value_(std::move(v)) {}
    Kind kind_ = Kind::Zero;
    Rat value_ = 0;
};

inline std::strong_ordering quotient_cmp(const Quotient& a, const Quotient& b) { return a <=> b; }

using HJString = std::vector<std::int64_t>;

// n/q = b1 - 1/(b2 - 1/(... - 1/bk))
inline HJString hj_expand(std::int64_t n, std::int64_t q) {
    if (q <= 0 || q >= n) throw InputError("hj_expand needs 0 < q < n");
    if (std::gcd(n, q) != 1) throw InputError("hj_expand needs gcd(n,q) = 1");
    HJString out;
    while (q != 0) {
        std::int64_t b = (n + q - 1) / q;
        out.push_back(b);
        std::int64_t r = b * q - n;
        n = q;
        q = r;
    }
    return out;
}

inline Rat cf_evaluate(const HJString& s) {
    if (s.empty()) throw InputError("empty HJ string");
    Rat r(static_cast<long>(s.back()));
    for (auto it = s.rbegin() + 1; it != s.rend(); ++it) r = Rat(static_cast<long>(*it)) - 1 / r;
    r.canonicalize();
    return r;
}

// Used by the lattice code; floor division that behaves for negatives.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace hironaka
