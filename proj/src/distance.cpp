// distance.cpp
#include "charfun/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "charfun/errors.hpp"

namespace charfun {

namespace {

constexpr double kFar = 1e18;

// Felzenszwalb-Huttenlocher pass, generalized to arbitrary real parabola
// positions: d[q] = min_k (q - p[k])^2 + f[k] over the m sources. kFar f's
// must be filtered out by the caller.
void envelope_1d(const double* f, const double* p, int m, int n, double* d, int* v, double* z) {
    if (m == 0) {
        std::fill(d, d + n, kFar);
        return;
    }
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < m; ++q) {
        double s;
        while (true) {
            const int w = v[k];
            s = ((f[q] + p[q] * p[q]) - (f[w] + p[w] * p[w])) / (2.0 * (p[q] - p[w]));
            if (s <= z[k] && k > 0) --k;
            else break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double dq = q - p[v[k]];
        d[q] = dq * dq + f[v[k]];
    }
}

struct Scratch {
    std::vector<double> f, p, d, z, dist_col, gsq_col;
    std::vector<int> v;
    void resize(int n) {
        f.resize(static_cast<std::size_t>(n));
        p.resize(static_cast<std::size_t>(n));
        d.resize(static_cast<std::size_t>(n));
        z.resize(static_cast<std::size_t>(n) + 1);
        v.resize(static_cast<std::size_t>(n));
    }
};

// Per-column scan: for every cell the |row offset| to the nearest site in its
// column (kFar when the column holds none).
void column_offsets(const ScalarField& ind, bool phase_one, std::vector<double>& out, Exec exec) {
    const int n = ind.spec.n;
    out.assign(static_cast<std::size_t>(ind.spec.cell_count()), kFar);
    for_each_index(n, exec, [&](std::int64_t col) {
        int prev = -1;
        for (int i = 0; i < n; ++i) {
            const bool site = (ind.values[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(col)] > 0.5) == phase_one;
            if (site) prev = i;
            if (prev >= 0) out[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(col)] = i - prev;
        }
        prev = -1;
        for (int i = n - 1; i >= 0; --i) {
            const bool site = (ind.values[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(col)] > 0.5) == phase_one;
            if (site) prev = i;
            if (prev >= 0) {
                auto& cur = out[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(col)];
                cur = std::min(cur, static_cast<double>(prev - i));
            }
        }
    });
}

// Squared distances to the opposite phase for both flavors: center-to-center
// and center-to-region. The region variant clips half a cell off each axis
// offset; its row pass needs one-sided envelopes with vertices at j' +- 1/2
// (a full envelope overestimates the wrong side, so min(left, right, same)
// stays exact).
void squared_edt(const ScalarField& ind, bool phase_one, std::vector<double>& center_sq,
                 std::vector<double>& region_sq, Exec exec) {
    const int n = ind.spec.n;
    std::vector<double> offs;
    column_offsets(ind, phase_one, offs, exec);
    center_sq.assign(offs.size(), kFar);
    region_sq.assign(offs.size(), kFar);

    for_each_index(n, exec, [&](std::int64_t row) {
        thread_local Scratch sc;
        sc.resize(n);
        const double* o = offs.data() + row * n;

        // Gather finite columns once.
        int m = 0;
        thread_local std::vector<int> cols;
        cols.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            if (o[j] < kFar) cols[static_cast<std::size_t>(m++)] = j;
        double* cen = center_sq.data() + row * n;
        double* reg = region_sq.data() + row * n;
        if (m == 0) return; // some other row holds the sites

        // Center flavor: parabolas at integer positions with f = u^2.
        for (int t = 0; t < m; ++t) {
            const int j = cols[static_cast<std::size_t>(t)];
            sc.p[static_cast<std::size_t>(t)] = j;
            sc.f[static_cast<std::size_t>(t)] = o[j] * o[j];
        }
        envelope_1d(sc.f.data(), sc.p.data(), m, n, sc.d.data(), sc.v.data(), sc.z.data());
        std::copy(sc.d.data(), sc.d.data() + n, cen);

        // Region flavor: f = (max(u - 1/2, 0))^2, vertices shifted half a
        // cell toward the query.
        for (int t = 0; t < m; ++t) {
            const int j = cols[static_cast<std::size_t>(t)];
            const double ucl = std::max(o[j] - 0.5, 0.0);
            sc.f[static_cast<std::size_t>(t)] = ucl * ucl;
            sc.p[static_cast<std::size_t>(t)] = j + 0.5;
        }
        envelope_1d(sc.f.data(), sc.p.data(), m, n, sc.d.data(), sc.v.data(), sc.z.data());
        for (int j = 0; j < n; ++j) reg[j] = sc.d[static_cast<std::size_t>(j)];
        for (int t = 0; t < m; ++t) sc.p[static_cast<std::size_t>(t)] = cols[static_cast<std::size_t>(t)] - 0.5;
        envelope_1d(sc.f.data(), sc.p.data(), m, n, sc.d.data(), sc.v.data(), sc.z.data());
        for (int j = 0; j < n; ++j) reg[j] = std::min(reg[j], sc.d[static_cast<std::size_t>(j)]);
        for (int t = 0; t < m; ++t) {
            const int j = cols[static_cast<std::size_t>(t)];
            reg[j] = std::min(reg[j], sc.f[static_cast<std::size_t>(t)]); // same-column term
        }
    });
}

} // namespace

DistanceMap distance_transform(const ScalarField& indicator, Exec exec) {
    validate_grid(indicator.spec);
    if (indicator.spec.dim != 2) throw ConfigError("distance_transform: 2D grids only");
    bool any0 = false, any1 = false;
    for (double v : indicator.values) {
        if (v > 0.5) any1 = true;
        else any0 = true;
        if (any0 && any1) break;
    }
    if (!any0 || !any1) throw ConfigError("distance_transform: constant indicator, no boundary");

    std::vector<double> cen_to_one, reg_to_one, cen_to_zero, reg_to_zero;
    squared_edt(indicator, true, cen_to_one, reg_to_one, exec);
    squared_edt(indicator, false, cen_to_zero, reg_to_zero, exec);

    DistanceMap map{indicator.spec, std::vector<double>(indicator.values.size()),
                    std::vector<double>(indicator.values.size())};
    const double h = indicator.spec.spacing();
    const std::int64_t count = indicator.spec.cell_count();
    for_each_index(count, exec, [&](std::int64_t i) {
        const auto u = static_cast<std::size_t>(i);
        const bool one = indicator.values[u] > 0.5;
        map.values[u] = h * std::sqrt(one ? cen_to_zero[u] : cen_to_one[u]);
        map.interface_values[u] = h * std::sqrt(one ? reg_to_zero[u] : reg_to_one[u]);
    });
    return map;
}

} // namespace charfun
