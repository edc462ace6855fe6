#include "ersa/percolation.hpp"

#include <cmath>
#include <numeric>

#include "ersa/parallel.hpp"

namespace ersa {

bool face_black(const JammedColouring& jc, const Window& w, const Site& s) {
    int idx = w.octagon_index(s.x, s.y);
    return s.kind == SiteKind::Octagon ? jc.oct_black[idx] != 0 : jc.dia_black[idx] != 0;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool has_crossing(const CrossingSpec& spec, const JammedColouring& jc, const Window& w,
                  int forced_diamond, bool forced_black) {
    const Rect& r = spec.rect;
    if (r.empty()) throw std::domain_error("has_crossing: empty rectangle");
    const int rw = r.width(), rh = r.height();
    const int noct = rw * rh;
    const int ndia = (rw - 1) * (rh - 1);

    auto oct_id = [&](int x, int y) { return (y - r.y_lo) * rw + (x - r.x_lo); };
    auto dia_id = [&](int x, int y) { return noct + (y - r.y_lo) * (rw - 1) + (x - r.x_lo); };

    std::vector<uint8_t> match(noct + ndia);
    for (int y = r.y_lo; y <= r.y_hi; ++y)
        for (int x = r.x_lo; x <= r.x_hi; ++x) {
            bool black = jc.oct_black[w.octagon_index(x, y)] != 0;
            match[oct_id(x, y)] = black == spec.black;
        }
    for (int y = r.y_lo; y < r.y_hi; ++y)
        for (int x = r.x_lo; x < r.x_hi; ++x) {
            int idx = w.octagon_index(x, y);
            bool black = idx == forced_diamond ? forced_black : jc.dia_black[idx] != 0;
            match[dia_id(x, y)] = black == spec.black;
        }

    UnionFind uf(noct + ndia);
    for (int y = r.y_lo; y <= r.y_hi; ++y)
        for (int x = r.x_lo; x <= r.x_hi; ++x) {
            if (!match[oct_id(x, y)]) continue;
            if (x < r.x_hi && match[oct_id(x + 1, y)]) uf.unite(oct_id(x, y), oct_id(x + 1, y));
            if (y < r.y_hi && match[oct_id(x, y + 1)]) uf.unite(oct_id(x, y), oct_id(x, y + 1));
        }
    for (int y = r.y_lo; y < r.y_hi; ++y)
        for (int x = r.x_lo; x < r.x_hi; ++x) {
            int d = dia_id(x, y);
            if (!match[d]) continue;
            if (match[oct_id(x, y)]) uf.unite(d, oct_id(x, y));
            if (match[oct_id(x + 1, y)]) uf.unite(d, oct_id(x + 1, y));
            if (match[oct_id(x, y + 1)]) uf.unite(d, oct_id(x, y + 1));
            if (match[oct_id(x + 1, y + 1)]) uf.unite(d, oct_id(x + 1, y + 1));
        }

    std::vector<uint8_t> start_root(noct + ndia, 0);
    if (spec.orientation == CrossingSpec::Horizontal) {
        for (int y = r.y_lo; y <= r.y_hi; ++y)
            if (match[oct_id(r.x_lo, y)]) start_root[uf.find(oct_id(r.x_lo, y))] = 1;
        for (int y = r.y_lo; y <= r.y_hi; ++y)
            if (match[oct_id(r.x_hi, y)] && start_root[uf.find(oct_id(r.x_hi, y))]) return true;
    } else {
        for (int x = r.x_lo; x <= r.x_hi; ++x)
            if (match[oct_id(x, r.y_lo)]) start_root[uf.find(oct_id(x, r.y_lo))] = 1;
        for (int x = r.x_lo; x <= r.x_hi; ++x)
            if (match[oct_id(x, r.y_hi)] && start_root[uf.find(oct_id(x, r.y_hi))]) return true;
    }
    return false;
}

int default_buffer(const Rect& r) {
    int s = std::max(r.width(), r.height());
    return 2 * static_cast<int>(std::ceil(std::sqrt(static_cast<double>(s))));
}

Estimate estimate_crossing(const CrossingSpec& spec, const Params& params, int buffer,
                           long long trials, uint64_t seed, int workers) {
    if (trials < 100) throw std::domain_error("estimate_crossing: trials >= 100 required");
    params.validate();
    Window w = Window::plane(inflate(spec.rect, buffer));
    auto acc = run_trials(trials, workers, 2, [&](long long t, std::vector<double>& a) {
        for (uint64_t attempt = 0;; ++attempt) {
            ArrivalField f =
                sample_arrivals(w, params, seed, static_cast<uint64_t>(t) + (attempt << 48));
            try {
                JammedColouring jc = resolve_jamming(f, params);
                if (has_crossing(spec, jc, w)) a[0] += 1;
                if (!e_dense(spec.rect, buffer, f, params)) a[1] += 1;
                break;
            } catch (const TieError&) {
                continue;  // probability-zero event; fresh stream
            }
        }
    });
    return make_estimate(static_cast<long long>(acc[0]), trials, static_cast<long long>(acc[1]));
}

Estimate estimate_h(int n, double rho, const Params& params, long long trials, uint64_t seed,
                    int workers, int buffer) {
    CrossingSpec spec{crossing_rect(n, rho), CrossingSpec::Horizontal, true};
    if (buffer < 0) buffer = default_buffer(spec.rect);
    return estimate_crossing(spec, params, buffer, trials, seed, workers);
}

}  // namespace ersa
