#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cover.hpp"
#include "curve.hpp"
#include "resolve.hpp"

namespace hironaka {

struct RandomSystemOptions {
    int min_per_role = 1;
    int max_per_role = 6;
    int max_exponent = 12;
    int max_coefficient = 3;
};

namespace detail {

inline Rat random_coefficient(std::mt19937_64& rng, int bound) {
    std::uniform_int_distribution<int> c(1, bound), s(0, 1);
    int v = c(rng);
    return Rat(s(rng) ? v : -v);
}

}  // namespace detail

// A primitive polynomial branch through the origin with exponents <= max_exponent.
inline Branch random_branch(std::mt19937_64& rng, const RandomSystemOptions& o, const std::string& name) {
    std::uniform_int_distribution<int> lead(1, 4), exp(1, o.max_exponent), terms(0, 3), coin(0, 3);
    for (;;) {
        int a = lead(rng);
        Series x = Series::monomial(detail::random_coefficient(rng, o.max_coefficient), a);
        std::vector<Series::Term> ys;
        int k = terms(rng);
        for (int i = 0; i < k; ++i) ys.emplace_back(exp(rng), detail::random_coefficient(rng, o.max_coefficient));
        Branch b{x, Series(ys), name};
        if (coin(rng) == 0) std::swap(b.x, b.y);
        if (b.x.known_zero() && b.y.known_zero()) continue;
        if (exponent_gcd(b) != 1) continue;
        return b;
    }
}

inline TaggedSystem random_system(std::mt19937_64& rng, const RandomSystemOptions& o = {}) {
    std::uniform_int_distribution<int> count(o.min_per_role, o.max_per_role);
    TaggedSystem s;
    for (Role r : {Role::F, Role::G}) {
        int n = count(rng);
        for (int i = 0; i < n; ++i)
            s.add(random_branch(rng, o, role_name(r) + std::to_string(i)), r);
    }
    return s;
}

// Draws systems until one resolves; degenerate draws (repeated or
// indistinguishable branches) are resampled.
struct RandomCase {
    TaggedSystem system;
    ResolutionOutcome outcome;
    int resampled = 0;
};

inline RandomCase random_resolvable_system(std::mt19937_64& rng, const ResolveOptions& opt,
                                           const RandomSystemOptions& o = {}) {
    RandomCase c;
    for (;;) {
        c.system = random_system(rng, o);
        try {
            c.outcome = resolve_embedded(c.system, opt);
            return c;
        } catch (const InputError&) {
        } catch (const PrecisionExhausted&) {
        }
        ++c.resampled;
    }
}

// Every branch of the system becomes an h-branch with a random multiplicity.
inline CoverSpec random_cover_spec(std::mt19937_64& rng, const TaggedSystem& sys, int degree, int max_mult = 3) {
    std::uniform_int_distribution<int> m(1, max_mult), side(0, 1);
    CoverSpec spec;
    spec.degree = degree;
    spec.f_is_x = side(rng) == 0;
    for (auto tb : sys.branches) {
        tb.role = Role::Delta;
        tb.mult = m(rng);
        spec.h_branches.push_back(std::move(tb));
    }
    return spec;
}

}  // namespace hironaka
