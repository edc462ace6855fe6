#include "ersa/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace ersa {

ArrivalField sample_arrivals(const Window& w, const Params& params, uint64_t seed,
                             uint64_t stream) {
    params.validate();
    ArrivalField f;
    f.window = w;
    f.params = params;
    const int n = w.num_octagons();
    f.std_exp.resize(n);
    f.delay_u.resize(n);
    f.diamond_u.resize(n);
    f.even.resize(n);
    RngKey key(seed, stream);
    for (int i = 0; i < n; ++i) {
        Site s = w.octagon_at(i);
        f.even[i] = is_even_octagon(s) ? 1 : 0;
        f.std_exp[i] = key.std_exponential(s, Salt::ArrivalExp);
        f.delay_u[i] = key.uniform(s, Salt::DelayUniform);
        f.diamond_u[i] = key.uniform(diamond(s.x, s.y), Salt::DiamondUniform);
    }
    return f;
}

JammedColouring resolve_jamming(const ArrivalField& f, const Params& params,
                                std::span<const TimeOverride> overrides) {
    params.validate();
    const Window& w = f.window;
    const int n = w.num_octagons();

    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = f.effective_time(i, params);
    for (const auto& [idx, tv] : overrides) t[idx] = tv;

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    // zero-time odd sites first in lexicographic (x,y) order, then by time
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (t[a] != t[b]) return t[a] < t[b];
        Site sa = w.octagon_at(a), sb = w.octagon_at(b);
        return std::pair(sa.x, sa.y) < std::pair(sb.x, sb.y);
    });
    for (int i = 0; i + 1 < n; ++i)
        if (t[order[i]] > 0 && t[order[i]] == t[order[i + 1]]) throw TieError();

    std::vector<OctState> st = occupy_in_order(w, order);

    JammedColouring jc;
    jc.oct_state = st;
    jc.oct_black.resize(n);
    jc.dia_black.resize(n);
    for (int i = 0; i < n; ++i) {
        bool occ = st[i] == OctState::Occupied;
        jc.oct_black[i] = (f.even[i] != 0) == occ ? 1 : 0;
        jc.dia_black[i] = f.diamond_black(i, params) ? 1 : 0;
    }
    return jc;
}

std::vector<OctState> occupy_in_order(const Window& w, const std::vector<int>& order) {
    const int n = w.num_octagons();
    constexpr uint8_t kEmpty = 0, kOccupied = 1, kBlocked = 2;
    std::vector<uint8_t> st(n, kEmpty);
    int nb[4], nbc;
    for (int idx : order) {
        if (st[idx] != kEmpty) continue;  // arrival discarded
        st[idx] = kOccupied;
        Site s = w.octagon_at(idx);
        blocking_neighbors(w, s.x, s.y, nb, nbc);
        for (int i = 0; i < nbc; ++i)
            if (st[nb[i]] == kEmpty) st[nb[i]] = kBlocked;
    }
    std::vector<OctState> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = st[i] == kOccupied ? OctState::Occupied : OctState::Blocked;
    return out;
}

namespace {

constexpr double kNoOddYet = -std::numeric_limits<double>::infinity();

// Minimal achievable "last odd arrival time" over walks with
// nondecreasing odd-site times; loop erasure makes walks and
// self-avoiding paths interchangeable here.
bool reachable_with_ordering(const ArrivalField& f, const Params& params,
                             const std::vector<std::pair<int, double>>& sources,
                             const std::vector<uint8_t>& targets) {
    const Window& w = f.window;
    const int n = w.num_octagons();
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    using Node = std::pair<double, int>;
    std::priority_queue<Node, std::vector<Node>, std::greater<>> pq;
    for (const auto& [idx, v] : sources)
        if (v < best[idx]) {
            best[idx] = v;
            pq.emplace(v, idx);
        }
    int nb[4], nbc;
    while (!pq.empty()) {
        auto [v, idx] = pq.top();
        pq.pop();
        if (v > best[idx]) continue;
        if (targets[idx]) return true;
        Site s = w.octagon_at(idx);
        blocking_neighbors(w, s.x, s.y, nb, nbc);
        for (int i = 0; i < nbc; ++i) {
            int z = nb[i];
            double nv = v;
            if (!f.even[z]) {
                double tz = f.effective_time(z, params);
                if (tz < v) continue;
                nv = tz;
            }
            if (nv < best[z]) {
                best[z] = nv;
                pq.emplace(nv, z);
            }
        }
    }
    return false;
}

double entry_value(const ArrivalField& f, const Params& params, int idx) {
    return f.even[idx] ? kNoOddYet : f.effective_time(idx, params);
}

}  // namespace

bool affects(const Site& x, const Site& y, const ArrivalField& f, const Params& params) {
    if (x == y) throw std::domain_error("affects: x != y required");
    const Window& w = f.window;
    if (!w.contains_octagon(x.x, x.y) || !w.contains_octagon(y.x, y.y))
        throw std::domain_error("affects: sites must lie in the window");
    std::vector<std::pair<int, double>> sources;
    int nb[4], nbc;
    blocking_neighbors(w, x.x, x.y, nb, nbc);
    for (int i = 0; i < nbc; ++i) sources.emplace_back(nb[i], entry_value(f, params, nb[i]));
    std::vector<uint8_t> targets(w.num_octagons(), 0);
    targets[w.octagon_index(y.x, y.y)] = 1;
    return reachable_with_ordering(f, params, sources, targets);
}

std::vector<int> generations(const ArrivalField& f, const Params& params, const Site& root) {
    const Window& w = f.window;
    const int n = w.num_octagons();
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = f.effective_time(i, params);

    std::vector<int> gen(n, kUnassignedGeneration);
    gen[w.octagon_index(root.x, root.y)] = 0;
    int nb[4], nbc;
    for (int k = 0;; ++k) {
        std::vector<int> next;
        for (int z = 0; z < n; ++z) {
            if (gen[z] != kUnassignedGeneration) continue;
            Site s = w.octagon_at(z);
            blocking_neighbors(w, s.x, s.y, nb, nbc);
            bool earliest = true;
            for (int i = 0; i < nbc && earliest; ++i)
                if (gen[nb[i]] == kUnassignedGeneration && t[z] >= t[nb[i]]) earliest = false;
            if (earliest) next.push_back(z);
        }
        if (next.empty()) break;
        for (int z : next) gen[z] = k + 1;
    }
    return gen;
}

bool e_dense(const Rect& r, int buffer, const ArrivalField& f, const Params& params) {
    if (buffer < 0) throw std::domain_error("e_dense: buffer must be nonnegative");
    const Window& w = f.window;
    Rect big = inflate(r, buffer);
    if (w.kind == Window::Plane &&
        !(w.bounds.contains(big.x_lo, big.y_lo) && w.bounds.contains(big.x_hi, big.y_hi)))
        throw std::domain_error("e_dense: enlarged rectangle must fit in the window");
    if (w.kind == Window::Torus && (big.width() >= w.side && big.height() >= w.side))
        return true;  // no outside sites

    // A path witnessing an outside influence can be truncated at its
    // last entry into the enlarged rectangle, so it suffices to search
    // from the inner boundary ring of the enlarged rectangle.
    std::vector<std::pair<int, double>> sources;
    auto on_ring = [&](int x, int y) {
        return x == big.x_lo || x == big.x_hi || y == big.y_lo || y == big.y_hi;
    };
    for (int y = big.y_lo; y <= big.y_hi; ++y)
        for (int x = big.x_lo; x <= big.x_hi; ++x) {
            if (!on_ring(x, y)) continue;
            int idx = w.octagon_index(x, y);
            sources.emplace_back(idx, entry_value(f, params, idx));
        }
    std::vector<uint8_t> targets(w.num_octagons(), 0);
    for (int y = r.y_lo; y <= r.y_hi; ++y)
        for (int x = r.x_lo; x <= r.x_hi; ++x) targets[w.octagon_index(x, y)] = 1;
    return !reachable_with_ordering(f, params, sources, targets);
}

std::pair<JammedColouring, JammedColouring> coupled_colouring(const ArrivalField& f,
                                                              const Params& lo,
                                                              const Params& hi) {
    if (!(lo.lambda <= hi.lambda && lo.p <= hi.p && lo.delta == hi.delta))
        throw std::domain_error("coupled_colouring: parameters not comparable");
    return {resolve_jamming(f, lo), resolve_jamming(f, hi)};
}

}  // namespace ersa
