#include "ersa/pivotal.hpp"

#include <algorithm>
#include <cmath>

#include "ersa/parallel.hpp"

namespace ersa {

SiteClass classify(const Site& s) {
    if (s.kind == SiteKind::Diamond) return SiteClass::Diamond;
    return is_even_octagon(s) ? SiteClass::EvenOctagon : SiteClass::OddOctagon;
}

void PivotalQuery::validate() const {
    if (classify(site) != site_class)
        throw std::domain_error("pivotal query: class does not match site");
    if (spec.rect.empty()) throw std::domain_error("pivotal query: empty rectangle");
}

namespace {

// Sorted arrival order with single-site replacement in O(n), so the
// per-site sums of the derivative identities stay affordable.
struct JamCtx {
    const ArrivalField* f = nullptr;
    const Params* params = nullptr;
    std::vector<double> t;
    std::vector<int> order;

    bool before(int a, int b) const {
        if (t[a] != t[b]) return t[a] < t[b];
        Site sa = f->window.octagon_at(a), sb = f->window.octagon_at(b);
        return std::pair(sa.x, sa.y) < std::pair(sb.x, sb.y);
    }

    void build(const ArrivalField& field, const Params& pr) {
        f = &field;
        params = &pr;
        const int n = field.window.num_octagons();
        t.resize(n);
        for (int i = 0; i < n; ++i) t[i] = field.effective_time(i, pr);
        order.resize(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) { return before(a, b); });
        for (int i = 0; i + 1 < n; ++i)
            if (t[order[i]] > 0 && t[order[i]] == t[order[i + 1]]) throw TieError();
    }

    std::vector<OctState> states_with(int idx, double new_time) {
        double old = t[idx];
        t[idx] = new_time;
        std::vector<int> o;
        o.reserve(order.size());
        for (int v : order)
            if (v != idx) o.push_back(v);
        auto pos = std::lower_bound(o.begin(), o.end(), idx,
                                    [&](int a, int b) { return before(a, b); });
        o.insert(pos, idx);
        auto st = occupy_in_order(f->window, o);
        t[idx] = old;
        return st;
    }

    std::vector<OctState> states() { return occupy_in_order(f->window, order); }
};

JammedColouring colouring_from(const ArrivalField& f, const Params& params,
                               std::vector<OctState> st) {
    const int n = f.window.num_octagons();
    JammedColouring jc;
    jc.oct_black.resize(n);
    jc.dia_black.resize(n);
    for (int i = 0; i < n; ++i) {
        bool occ = st[i] == OctState::Occupied;
        jc.oct_black[i] = (f.even[i] != 0) == occ ? 1 : 0;
        jc.dia_black[i] = f.diamond_black(i, params) ? 1 : 0;
    }
    jc.oct_state = std::move(st);
    return jc;
}

}  // namespace

bool is_pivotal(const PivotalQuery& q, const ArrivalField& f, const Params& params,
                std::optional<double> aux) {
    q.validate();
    const Window& w = f.window;
    int idx = w.octagon_index(q.site.x, q.site.y);
    if (q.site_class == SiteClass::Diamond) {
        JammedColouring jc = resolve_jamming(f, params);
        return has_crossing(q.spec, jc, w, idx, true) != has_crossing(q.spec, jc, w, idx, false);
    }
    JamCtx ctx;
    ctx.build(f, params);
    if (q.site_class == SiteClass::OddOctagon) {
        bool c_raw = has_crossing(
            q.spec, colouring_from(f, params, ctx.states_with(idx, f.raw_time(idx, params))), w);
        bool c_zero = has_crossing(q.spec, colouring_from(f, params, ctx.states_with(idx, 0.0)), w);
        return c_raw != c_zero;
    }
    if (!aux) throw std::invalid_argument("is_pivotal: even query needs an auxiliary delay");
    bool c_base = has_crossing(q.spec, colouring_from(f, params, ctx.states()), w);
    bool c_late = has_crossing(
        q.spec, colouring_from(f, params, ctx.states_with(idx, ctx.t[idx] + *aux)), w);
    return c_base != c_late;
}

Estimate estimate_phi(const PivotalQuery& q, const Params& params, long long trials,
                      uint64_t seed, int workers, int buffer) {
    if (trials < 100) throw std::domain_error("estimate_phi: trials >= 100 required");
    q.validate();
    params.validate();
    if (buffer < 0) buffer = default_buffer(q.spec.rect);
    Window w = Window::plane(inflate(q.spec.rect, buffer));
    auto acc = run_trials(trials, workers, 2, [&](long long t, std::vector<double>& a) {
        for (uint64_t attempt = 0;; ++attempt) {
            ArrivalField f =
                sample_arrivals(w, params, seed, static_cast<uint64_t>(t) + (attempt << 48));
            std::optional<double> aux;
            if (q.site_class == SiteClass::EvenOctagon) {
                RngKey key(seed, static_cast<uint64_t>(t) + (attempt << 48));
                aux = key.std_exponential(q.site, Salt::AuxExp) / params.lambda;
            }
            try {
                if (is_pivotal(q, f, params, aux)) a[0] += 1;
                if (!e_dense(q.spec.rect, buffer, f, params)) a[1] += 1;
                break;
            } catch (const TieError&) {
                continue;
            }
        }
    });
    return make_estimate(static_cast<long long>(acc[0]), trials, static_cast<long long>(acc[1]));
}

RussoReport russo_residuals(int n, double rho, const Params& params, double h_step,
                            long long trials, uint64_t seed, int workers) {
    params.validate();
    if (!(h_step > 0)) throw std::domain_error("russo_residuals: positive step required");
    if (trials < 100) throw std::domain_error("russo_residuals: trials >= 100 required");
    CrossingSpec spec{crossing_rect(n, rho), CrossingSpec::Horizontal, true};
    const Rect& r = spec.rect;
    int buffer = default_buffer(r);
    Window w = Window::plane(inflate(r, buffer));
    const int noct = w.num_octagons();

    Params pp = params, pm = params;
    pp.p = std::min(1.0, params.p + h_step);
    pm.p = std::max(0.0, params.p - h_step);
    Params lp = params, lm = params;
    lp.lambda = params.lambda + h_step;
    lm.lambda = std::max(1e-9, params.lambda - h_step);
    Params dp = params, dm = params;
    dp.delta = params.delta + h_step;
    dm.delta = std::max(0.0, params.delta - h_step);

    // accumulators: six perturbed crossing counts, three signed pivotal
    // sums, three squared finite-difference sums (all integer valued)
    enum { Pp, Pm, Lp, Lm, Dp, Dm, SDia, SEven, SOdd, Qp, Ql, Qd, NAcc };
    auto acc = run_trials(trials, workers, NAcc, [&](long long t, std::vector<double>& a) {
        for (uint64_t attempt = 0;; ++attempt) {
            uint64_t stream = static_cast<uint64_t>(t) + (attempt << 48);
            ArrivalField f = sample_arrivals(w, params, seed, stream);
            try {
                int cpp = has_crossing(spec, resolve_jamming(f, pp), w) ? 1 : 0;
                int cpm = has_crossing(spec, resolve_jamming(f, pm), w) ? 1 : 0;
                int clp = has_crossing(spec, resolve_jamming(f, lp), w) ? 1 : 0;
                int clm = has_crossing(spec, resolve_jamming(f, lm), w) ? 1 : 0;
                int cdp = has_crossing(spec, resolve_jamming(f, dp), w) ? 1 : 0;
                int cdm = has_crossing(spec, resolve_jamming(f, dm), w) ? 1 : 0;

                JamCtx ctx;
                ctx.build(f, params);
                JammedColouring base = colouring_from(f, params, ctx.states());
                bool c0 = has_crossing(spec, base, w);
                RngKey key(seed, stream);

                long long s_dia = 0, s_even = 0, s_odd = 0;
                for (int i = 0; i < noct; ++i) {
                    Site s = w.octagon_at(i);
                    if (f.even[i]) {
                        double extra = key.std_exponential(s, Salt::AuxExp) / params.lambda;
                        bool c1 = has_crossing(
                            spec,
                            colouring_from(f, params, ctx.states_with(i, ctx.t[i] + extra)), w);
                        s_even += (c0 ? 1 : 0) - (c1 ? 1 : 0);
                    } else {
                        bool c_raw = has_crossing(
                            spec,
                            colouring_from(f, params, ctx.states_with(i, f.raw_time(i, params))),
                            w);
                        bool c_zero = has_crossing(
                            spec, colouring_from(f, params, ctx.states_with(i, 0.0)), w);
                        s_odd += (c_raw ? 1 : 0) - (c_zero ? 1 : 0);
                    }
                    bool in_cell = r.contains(s.x, s.y) && r.contains(s.x + 1, s.y + 1);
                    if (in_cell) {
                        bool cb = has_crossing(spec, base, w, i, true);
                        bool cw = has_crossing(spec, base, w, i, false);
                        s_dia += (cb ? 1 : 0) - (cw ? 1 : 0);
                    }
                }
                a[Pp] += cpp;
                a[Pm] += cpm;
                a[Lp] += clp;
                a[Lm] += clm;
                a[Dp] += cdp;
                a[Dm] += cdm;
                a[SDia] += static_cast<double>(s_dia);
                a[SEven] += static_cast<double>(s_even);
                a[SOdd] += static_cast<double>(s_odd);
                a[Qp] += (cpp - cpm) * (cpp - cpm);
                a[Ql] += (clp - clm) * (clp - clm);
                a[Qd] += (cdp - cdm) * (cdp - cdm);
                break;
            } catch (const TieError&) {
                continue;
            }
        }
    });

    const double N = static_cast<double>(trials);
    RussoReport rep;
    auto fd = [&](int plus, int minus, double span) { return (acc[plus] - acc[minus]) / (span * N); };
    auto fd_sigma = [&](int plus, int minus, int sq, double span) {
        double mean = (acc[plus] - acc[minus]) / N;
        double var = std::max(0.0, acc[sq] / N - mean * mean);
        return std::sqrt(var / N) / span;
    };
    rep.fd_p = fd(Pp, Pm, pp.p - pm.p);
    rep.fd_lambda = fd(Lp, Lm, lp.lambda - lm.lambda);
    rep.fd_delta = fd(Dp, Dm, dp.delta - dm.delta);
    rep.fd_p_sigma = fd_sigma(Pp, Pm, Qp, pp.p - pm.p);
    rep.fd_lambda_sigma = fd_sigma(Lp, Lm, Ql, lp.lambda - lm.lambda);
    rep.fd_delta_sigma = fd_sigma(Dp, Dm, Qd, dp.delta - dm.delta);
    rep.sum_phi_diamond = acc[SDia] / N;
    rep.sum_phi_even_over_lambda = acc[SEven] / (N * params.lambda);
    rep.sum_phi_odd_scaled = std::exp(-params.delta) * acc[SOdd] / N;
    rep.r_p = rep.fd_p - rep.sum_phi_diamond;
    rep.r_lambda = rep.fd_lambda - rep.sum_phi_even_over_lambda;
    rep.r_delta = rep.fd_delta + rep.sum_phi_odd_scaled;
    rep.lambda_checked_at_delta0 = params.delta == 0;
    return rep;
}

double oracle_mra_residual(const OracleInstance& inst, const Params& params,
                           const CrossingSpec& spec) {
    const Window& w = inst.window;
    Poly crossing = oracle_event_poly(inst, params, [&](uint32_t occ, uint32_t dm) {
        return has_crossing(spec, colouring_from_masks(inst, occ, dm), w);
    });
    Poly rhs = Poly::constant(0);
    for (int j = 0; j < static_cast<int>(inst.diamonds.size()); ++j) {
        int base = inst.diamonds[j];
        Site ds = w.octagon_at(base);
        if (!(spec.rect.contains(ds.x, ds.y) && spec.rect.contains(ds.x + 1, ds.y + 1)))
            continue;  // diamonds outside the rectangle cannot be pivotal
        rhs += oracle_event_poly(inst, params, [&](uint32_t occ, uint32_t dm) {
            JammedColouring jc = colouring_from_masks(inst, occ, dm);
            return has_crossing(spec, jc, w, base, true) != has_crossing(spec, jc, w, base, false);
        });
    }
    return crossing.derivative().max_coeff_diff(rhs);
}

}  // namespace ersa
