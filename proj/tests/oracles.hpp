#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include <hironaka/cover.hpp>

namespace oracles {

using P = std::pair<std::int64_t, std::int64_t>;

// Points over a double point: orbits of the d-th roots of x^m1 y^m2 under the two monodromies.
inline std::int64_t orbit_count(std::int64_t d, std::int64_t m1, std::int64_t m2) {
    std::vector<int> seen(std::size_t(d), 0);
    std::int64_t orbits = 0;
    for (std::int64_t s = 0; s < d; ++s) {
        if (seen[std::size_t(s)]) continue;
        ++orbits;
        std::vector<std::int64_t> st{s};
        seen[std::size_t(s)] = 1;
        while (!st.empty()) {
            std::int64_t k = st.back();
            st.pop_back();
            for (std::int64_t step : {m1, m2}) {
                std::int64_t n = (k + step) % d;
                if (!seen[std::size_t(n)]) {
                    seen[std::size_t(n)] = 1;
                    st.push_back(n);
                }
            }
        }
    }
    return orbits;
}

// Irreducible elements of the quadrant in {(a,b) : a m1 + b m2 = 0 mod d}, sorted by b.
inline std::vector<P> hilbert_basis(std::int64_t d, std::int64_t m1, std::int64_t m2) {
    auto in = [&](std::int64_t a, std::int64_t b) { return a >= 0 && b >= 0 && (a * m1 + b * m2) % d == 0; };
    std::int64_t n1 = 1, n2 = 1;
    while (!in(n1, 0)) ++n1;
    while (!in(0, n2)) ++n2;
    std::vector<P> pts;
    for (std::int64_t a = 0; a <= n1; ++a)
        for (std::int64_t b = 0; b <= n2; ++b)
            if ((a || b) && in(a, b)) pts.emplace_back(a, b);
    std::vector<P> basis;
    for (auto& p : pts) {
        bool reducible = false;
        for (auto& q : pts)
            if (q != p && q.first <= p.first && q.second <= p.second && in(p.first - q.first, p.second - q.second)) {
                reducible = true;
                break;
            }
        if (!reducible) basis.push_back(p);
    }
    std::sort(basis.begin(), basis.end(), [](const P& x, const P& y) { return x.second < y.second; });
    return basis;
}

// Empty when the model agrees with the brute-force normalization, else what differs.
inline std::string lattice_mismatch(std::int64_t d, std::int64_t m1, std::int64_t m2) {
    using hironaka::LatticeModel;
    LatticeModel L = hironaka::lattice_model(d, m1, m2);
    if (L.points != orbit_count(d, m1, m2)) return "point count";
    std::int64_t dd = d / L.points;
    std::vector<P> hb = hilbert_basis(dd, m1 / L.points, m2 / L.points);
    if (hb.size() < 2 || hb.front() != P(L.n1, 0) || hb.back() != P(0, L.n2)) return "cone rays";
    std::vector<P> inner(hb.begin() + 1, hb.end() - 1);
    if (L.vectors != inner) return "chain vectors";
    if (L.chain.size() != inner.size()) return "chain length";
    for (std::size_t k = 0; k < inner.size(); ++k) {
        const P &a = hb[k], &b = hb[k + 1], &c = hb[k + 2];
        if (a.first + c.first != L.chain[k] * b.first || a.second + c.second != L.chain[k] * b.second)
            return "self-intersections";
    }
    if (L.n != L.n1 * L.n2 / dd) return "order of the quotient singularity";
    if (L.n > 1 && hironaka::cf_evaluate(L.chain) != hironaka::make_rat(L.n, L.q)) return "type (n,q)";
    if (std::int64_t(hironaka::local_model_at_double_point(d, m1, m2).size()) != L.points) return "points listed";
    return {};
}

}  // namespace oracles
