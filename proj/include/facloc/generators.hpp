#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "facloc/core.hpp"

namespace facloc {

// xoshiro256++ seeded through splitmix64. Pure 64-bit integer arithmetic,
// so seeded draws reproduce on any platform (and are easy to port).
// Integer draws use plain modulo; doubles take the top 53 bits.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : s_) {
            x += 0x9E3779B97F4A7C15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int r) { return (v << r) | (v >> (64 - r)); };
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // uniform double in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t s_[4];
};

struct GenSpec {
    enum class Kind { Grid, Gnp, Hochbaum };
    Kind kind = Kind::Grid;
    int n_f = 0;
    int n_c = 0;
    std::uint64_t seed = 0;
    // grid
    int side = 10000;
    int cost_max = 9999;
    // gnp
    int nodes = 0;        // 0 = n_f + n_c
    double edge_p = 0.1;
    int w_max = 100;
    // hochbaum
    int hochbaum_p = 2;
    int hochbaum_k = 2;
};

// Random points on a side x side grid: Euclidean connection costs, integer
// opening costs uniform on [0, cost_max]. Draw order: facility points,
// city points, then opening costs.
inline Instance gen_grid(const GenSpec& spec) {
    if (spec.side <= 0 || spec.n_f < 0 || spec.n_c < 0) throw ParamError("gen_grid: bad spec");
    Rng rng(spec.seed);
    std::vector<double> fx(spec.n_f), fy(spec.n_f), cx(spec.n_c), cy(spec.n_c);
    for (int i = 0; i < spec.n_f; ++i) {
        fx[i] = static_cast<double>(rng.next_below(spec.side));
        fy[i] = static_cast<double>(rng.next_below(spec.side));
    }
    for (int j = 0; j < spec.n_c; ++j) {
        cx[j] = static_cast<double>(rng.next_below(spec.side));
        cy[j] = static_cast<double>(rng.next_below(spec.side));
    }
    Instance inst;
    inst.n_f = spec.n_f;
    inst.n_c = spec.n_c;
    inst.open_cost.resize(spec.n_f);
    for (int i = 0; i < spec.n_f; ++i)
        inst.open_cost[i] = static_cast<double>(rng.next_below(spec.cost_max + 1));
    inst.conn.resize(static_cast<std::size_t>(spec.n_f) * spec.n_c);
    for (int i = 0; i < spec.n_f; ++i)
        for (int j = 0; j < spec.n_c; ++j)
            inst.c(i, j) = std::hypot(fx[i] - cx[j], fy[i] - cy[j]);
    inst.metric = true;
    return inst;
}

// G(n, p) with uniform integer edge weights in [1, w_max]; connection costs
// are shortest-path distances, so the bipartite triangle inequality holds by
// construction. The first n_f nodes are facilities, the next n_c cities.
// Disconnected draws retry with the seed salted by the attempt number.
inline Instance gen_gnp(const GenSpec& spec) {
    const int n = spec.nodes > 0 ? spec.nodes : spec.n_f + spec.n_c;
    if (spec.n_f + spec.n_c > n) throw ParamError("gen_gnp: n_f + n_c exceeds node count");
    if (!(spec.edge_p > 0.0) || spec.edge_p > 1.0) throw ParamError("gen_gnp: p out of range");
    if (spec.w_max < 1) throw ParamError("gen_gnp: w_max must be >= 1");

    constexpr int kMaxAttempts = 64;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Rng rng(spec.seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull);
        std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
        for (int i = 0; i < n; ++i) dist[i][i] = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.next_double() < spec.edge_p) {
                    double w = static_cast<double>(1 + rng.next_below(spec.w_max));
                    dist[i][j] = dist[j][i] = w;
                }
        for (int mid = 0; mid < n; ++mid)
            for (int i = 0; i < n; ++i) {
                if (dist[i][mid] == kInf) continue;
                for (int j = 0; j < n; ++j)
                    if (dist[i][mid] + dist[mid][j] < dist[i][j])
                        dist[i][j] = dist[i][mid] + dist[mid][j];
            }
        bool connected = true;
        for (int j = 0; j < n && connected; ++j)
            if (dist[0][j] == kInf) connected = false;
        if (!connected) continue;

        Instance inst;
        inst.n_f = spec.n_f;
        inst.n_c = spec.n_c;
        inst.open_cost.resize(spec.n_f);
        for (int i = 0; i < spec.n_f; ++i)
            inst.open_cost[i] = static_cast<double>(rng.next_below(spec.cost_max + 1));
        inst.conn.resize(static_cast<std::size_t>(spec.n_f) * spec.n_c);
        for (int i = 0; i < spec.n_f; ++i)
            for (int j = 0; j < spec.n_c; ++j)
                inst.c(i, j) = dist[i][spec.n_f + j];
        inst.metric = true;
        return inst;
    }
    throw ParamError("gen_gnp: could not draw a connected graph");
}

// Adversarial family for the plain set-cover greedy over stars: k co-located
// facilities of cost p^k, and groups S_1..S_{k-1} where S_i holds p^{k-i+1}
// cities at distance 1 + p + ... + p^{i-1}.
inline Instance gen_hochbaum(const GenSpec& spec) {
    const int p = spec.hochbaum_p, k = spec.hochbaum_k;
    if (p < 2 || k < 2) throw ParamError("gen_hochbaum: need p >= 2, k >= 2");
    double top = 1.0;
    for (int e = 0; e < k; ++e) top *= p;  // p^k
    const double open_cost = top;
    std::vector<long long> sizes(k, 0);    // sizes[i] = p^{k-i+1}, i = 1..k-1
    double n_cities = 0;
    for (int i = 1; i <= k - 1; ++i) {
        sizes[i] = static_cast<long long>(top);
        top /= p;
        n_cities += static_cast<double>(sizes[i]);
    }
    if (n_cities > 200000) throw ParamError("gen_hochbaum: instance too large");

    Instance inst;
    inst.n_f = k;
    inst.n_c = static_cast<int>(n_cities);
    inst.open_cost.assign(k, open_cost);
    inst.conn.resize(static_cast<std::size_t>(k) * inst.n_c);
    int at = 0;
    double dist_sum = 0.0, pw = 1.0;
    for (int i = 1; i <= k - 1; ++i) {
        dist_sum += pw;  // + p^{i-1}
        pw *= p;
        for (long long t = 0; t < sizes[i]; ++t, ++at)
            for (int fi = 0; fi < k; ++fi) inst.c(fi, at) = dist_sum;
    }
    inst.metric = true;
    return inst;
}

inline Instance generate(const GenSpec& spec) {
    switch (spec.kind) {
        case GenSpec::Kind::Grid: return gen_grid(spec);
        case GenSpec::Kind::Gnp: return gen_gnp(spec);
        default: return gen_hochbaum(spec);
    }
}

}  // namespace facloc
