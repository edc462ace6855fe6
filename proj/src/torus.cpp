#include "ersa/torus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ersa/parallel.hpp"

namespace ersa {

std::array<double, 4> discrete_marginals(double lambda0, double p_tilde, double lambda1,
                                         double delta) {
    if (!(lambda0 > 0) || !(lambda1 > 0) || !(delta > 0) || !(p_tilde >= 0 && p_tilde <= 1))
        throw std::domain_error("discrete_marginals: invalid parameters");
    std::array<double, 4> m;
    m[3] = -std::expm1(-lambda0 * delta);
    m[2] = p_tilde + std::exp(-lambda0 * delta) - 1;
    m[1] = std::exp(-lambda1 * delta) - p_tilde;
    m[0] = -std::expm1(-lambda1 * delta);
    for (int i = 0; i < 4; ++i)
        if (m[i] < 0)
            throw std::domain_error("discrete_marginals: entry " + std::to_string(i) +
                                    " negative (infeasible parameters)");
    return m;
}

double default_block_length(int n) {
    if (n < 2) throw std::domain_error("default_block_length: n >= 2 required");
    return 1.0 / std::sqrt(std::log(static_cast<double>(n)));
}

namespace {

int draw_cell(const std::array<double, 4>& m, double u) {
    double c = 0;
    for (int v = 0; v < 3; ++v) {
        c += m[v];
        if (u < c) return v;
    }
    return 3;
}

// value drawn from m restricted to states other than `excluded`
int draw_conditional(const std::array<double, 4>& m, int excluded, double u) {
    double total = 1.0 - m[excluded];
    double c = 0;
    for (int v = 0; v < 3; ++v) {
        if (v == excluded) continue;
        c += m[v] / total;
        if (u < c) return v;
    }
    return excluded == 3 ? 2 : 3;
}

XField make_x_field(int n, double lambda0, double p_tilde, double lambda1, double delta) {
    XField xf;
    xf.n = n;
    xf.side = 20 * n;
    xf.delta = delta;
    xf.lambda0 = lambda0;
    xf.lambda1 = lambda1;
    xf.p_tilde = p_tilde;
    xf.blocks = static_cast<int>(std::floor(n / delta)) + 1;
    xf.cells.assign(static_cast<size_t>(xf.side) * xf.side * (xf.blocks + 1), 0);
    return xf;
}

}  // namespace

XField sample_x_field(int n, double lambda0, double p_tilde, double lambda1, double delta,
                      uint64_t seed, uint64_t stream) {
    auto m = discrete_marginals(lambda0, p_tilde, lambda1, delta);
    XField xf = make_x_field(n, lambda0, p_tilde, lambda1, delta);
    Window w = Window::torus(xf.side);
    RngKey key(seed, stream);
    for (int i = 0; i < w.num_octagons(); ++i) {
        Site s = w.octagon_at(i);
        for (int k = -1; k < xf.blocks; ++k)
            xf.at(i, k) = static_cast<uint8_t>(
                draw_cell(m, key.uniform(s, Salt::Generic, static_cast<uint64_t>(k + 2))));
    }
    return xf;
}

XField project_to_x(const ArrivalField& f, int n, double delta, uint64_t seed,
                    uint64_t stream) {
    const Window& w = f.window;
    if (w.kind != Window::Torus || w.side != 20 * n)
        throw std::domain_error("project_to_x: torus of side 20n required");
    if (f.params.delta != 0) throw std::domain_error("project_to_x: field delta = 0 required");
    const double lambda0 = f.params.lambda, lambda1 = 1.0, p_tilde = f.params.p;
    auto m = discrete_marginals(lambda0, p_tilde, lambda1, delta);
    XField xf = make_x_field(n, lambda0, p_tilde, lambda1, delta);
    RngKey key(seed, stream);
    for (int i = 0; i < w.num_octagons(); ++i) {
        Site s = w.octagon_at(i);
        bool ev = f.even[i] != 0;
        int arrival_state = ev ? 3 : 0;
        double t = f.raw_time(i, f.params);
        int kt = static_cast<int>(std::floor(t / delta));
        for (int k = 0; k < xf.blocks; ++k) {
            double u = key.uniform(s, Salt::Generic, static_cast<uint64_t>(k + 2));
            if (k == kt)
                xf.at(i, k) = static_cast<uint8_t>(arrival_state);
            else if (k < kt)  // known arrival-free block
                xf.at(i, k) = static_cast<uint8_t>(draw_conditional(m, arrival_state, u));
            else  // beyond the first arrival: memoryless, full marginal
                xf.at(i, k) = static_cast<uint8_t>(draw_cell(m, u));
        }
        double u = key.uniform(s, Salt::Generic, 1);
        if (f.diamond_black(i, f.params))
            xf.at(i, -1) = u < m[3] / p_tilde ? 3 : 2;
        else
            xf.at(i, -1) = u < m[0] / (1 - p_tilde) ? 0 : 1;
    }
    return xf;
}

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

// Undelayed witness first-arrival time of octagon i, or infinity.
double witness_time(const XField& xf, int i, bool even) {
    for (int k = 0; k < xf.blocks; ++k) {
        uint8_t v = xf.at(i, k);
        if (even && v == 3) return k * xf.delta;
        if (!even && v == 0) return (k + 1) * xf.delta;
    }
    return kNever;
}

}  // namespace

JammedColouring witness_colouring(const XField& xf, bool delayed) {
    Window w = Window::torus(xf.side);
    const int noct = w.num_octagons();
    std::vector<double> t(noct);
    std::vector<uint8_t> even(noct);
    for (int i = 0; i < noct; ++i) {
        even[i] = is_even_octagon(w.octagon_at(i)) ? 1 : 0;
        t[i] = witness_time(xf, i, even[i] != 0);
        if (delayed && even[i] && t[i] < kNever) t[i] += 2 * xf.delta;
    }
    std::vector<int> order;
    order.reserve(noct);
    for (int i = 0; i < noct; ++i)
        if (t[i] < kNever) order.push_back(i);
    // Ties happen only between odd and even sites (block-boundary
    // times); odd goes first, realizable since an odd arrival lies
    // strictly before its block's right endpoint.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (t[a] != t[b]) return t[a] < t[b];
        if (even[a] != even[b]) return even[a] < even[b];
        Site sa = w.octagon_at(a), sb = w.octagon_at(b);
        return std::pair(sa.x, sa.y) < std::pair(sb.x, sb.y);
    });
    std::vector<OctState> st = occupy_in_order(w, order);
    JammedColouring jc;
    jc.oct_state = st;
    jc.oct_black.resize(noct);
    jc.dia_black.resize(noct);
    for (int i = 0; i < noct; ++i) {
        bool occ = st[i] == OctState::Occupied;
        jc.oct_black[i] = (even[i] != 0) == occ ? 1 : 0;
        jc.dia_black[i] = xf.at(i, -1) >= 2 ? 1 : 0;
    }
    return jc;
}

namespace {

bool witness_crossing(const XField& xf, const JammedColouring& jc) {
    Window w = Window::torus(xf.side);
    const int n = xf.n;
    for (int ix = 0; ix < 4; ++ix)
        for (int iy = 0; iy < 10; ++iy) {
            Rect r{5 * n * ix, 5 * n * ix + 18 * n - 1, 2 * n * iy, 2 * n * iy + 2 * n - 1};
            CrossingSpec spec{r, CrossingSpec::Horizontal, true};
            if (has_crossing(spec, jc, w)) return true;
        }
    return false;
}

}  // namespace

bool crude_event(const XField& xf) {
    Window w = Window::torus(xf.side);
    const double bound = std::sqrt(static_cast<double>(xf.n));
    for (int i = 0; i < w.num_octagons(); ++i) {
        if (!is_even_octagon(w.octagon_at(i))) continue;
        if (!(witness_time(xf, i, true) < bound)) return false;
    }
    return witness_crossing(xf, witness_colouring(xf, true));
}

bool witness_f_event(const XField& xf) {
    return witness_crossing(xf, witness_colouring(xf, false));
}

TorusGapReport torus_plane_gap(int n, const Rect& rect, const Params& params,
                               long long trials, uint64_t seed, int workers) {
    params.validate();
    if (trials < 100) throw std::domain_error("torus_plane_gap: trials >= 100 required");
    const int side = 2 * n;
    double limit = side - 4 * std::sqrt(static_cast<double>(side));
    if (std::max(rect.width(), rect.height()) > limit)
        throw std::domain_error("torus_plane_gap: rectangle too large for the torus");
    Rect square{0, side - 1, 0, side - 1};
    if (!(square.contains(rect.x_lo, rect.y_lo) && square.contains(rect.x_hi, rect.y_hi)))
        throw std::domain_error("torus_plane_gap: rectangle outside the common square");
    Window wt = Window::torus(side);
    Window wp = Window::plane(square);
    CrossingSpec spec{rect, CrossingSpec::Horizontal, true};
    auto acc = run_trials(trials, workers, 3, [&](long long t, std::vector<double>& a) {
        for (uint64_t attempt = 0;; ++attempt) {
            uint64_t stream = static_cast<uint64_t>(t) + (attempt << 48);
            ArrivalField ft = sample_arrivals(wt, params, seed, stream);
            ArrivalField fp = sample_arrivals(wp, params, seed, stream);
            try {
                int ct = has_crossing(spec, resolve_jamming(ft, params), wt) ? 1 : 0;
                int cp = has_crossing(spec, resolve_jamming(fp, params), wp) ? 1 : 0;
                a[0] += ct;
                a[1] += cp;
                a[2] += (ct - cp) * (ct - cp);
                break;
            } catch (const TieError&) {
                continue;
            }
        }
    });
    TorusGapReport rep;
    rep.torus = make_estimate(static_cast<long long>(acc[0]), trials);
    rep.plane = make_estimate(static_cast<long long>(acc[1]), trials);
    const double N = static_cast<double>(trials);
    double mean_d = (acc[0] - acc[1]) / N;
    rep.gap = std::abs(mean_d);
    rep.sigma = std::sqrt(std::max(0.0, acc[2] / N - mean_d * mean_d) / N);
    return rep;
}

}  // namespace ersa
