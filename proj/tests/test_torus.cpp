#include <cmath>

#include "doctest.h"
#include "ersa/torus.hpp"

using namespace ersa;

namespace {

XField blank_field(int n, double delta) {
    XField xf;
    xf.n = n;
    xf.side = 20 * n;
    xf.delta = delta;
    xf.lambda0 = xf.lambda1 = 1.0;
    xf.p_tilde = 0.5;
    xf.blocks = static_cast<int>(n / delta) + 1;
    xf.cells.assign(static_cast<size_t>(xf.side) * xf.side * (xf.blocks + 1), 2);
    return xf;
}

}  // namespace

TEST_CASE("four-state marginals") {
    auto m = discrete_marginals(1.0, 0.5, 1.0, 0.1);
    double e = std::exp(-0.1);
    CHECK(m[3] == doctest::Approx(1 - e).epsilon(1e-12));
    CHECK(m[2] == doctest::Approx(0.5 + e - 1).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(e - 0.5).epsilon(1e-12));
    CHECK(m[0] == doctest::Approx(1 - e).epsilon(1e-12));
    CHECK(m[0] + m[1] + m[2] + m[3] == doctest::Approx(1.0).epsilon(1e-12));

    // p_tilde beyond e^{-lambda1 delta} leaves no mass for state 1
    CHECK_THROWS_AS(discrete_marginals(1.0, 0.99, 1.0, 0.5), std::domain_error);

    auto tiny = discrete_marginals(2.0, 0.4, 1.0, 1e-9);
    CHECK(tiny[3] < 1e-8);
    CHECK(tiny[2] == doctest::Approx(0.4).epsilon(1e-6));
    CHECK(tiny[1] == doctest::Approx(0.6).epsilon(1e-6));

    CHECK(default_block_length(4) == doctest::Approx(1.0 / std::sqrt(std::log(4.0))));
}

TEST_CASE("sampled fields follow the marginals") {
    const double delta = 0.25;
    XField xf = sample_x_field(1, 1.0, 0.5, 1.0, delta, 77, 0);
    auto m = discrete_marginals(1.0, 0.5, 1.0, delta);
    const int nsites = xf.side * xf.side;
    long long count[4] = {0, 0, 0, 0};
    long long dia_black = 0;
    for (int i = 0; i < nsites; ++i) {
        for (int k = 0; k < xf.blocks; ++k) ++count[xf.at(i, k)];
        if (xf.at(i, -1) >= 2) ++dia_black;
    }
    const double total = static_cast<double>(nsites) * xf.blocks;
    for (int v = 0; v < 4; ++v) {
        double freq = count[v] / total;
        double sd = std::sqrt(m[v] * (1 - m[v]) / total);
        CHECK(std::abs(freq - m[v]) < 5 * sd + 1e-9);
    }
    double dfreq = dia_black / static_cast<double>(nsites);
    CHECK(std::abs(dfreq - 0.5) < 5 * std::sqrt(0.25 / nsites));
}

TEST_CASE("projection reproduces determined cells") {
    const int n = 1;
    const double delta = 0.3;
    Params pr{1.3, 0.4, 0.0};
    Window w = Window::torus(20 * n);
    ArrivalField f = sample_arrivals(w, pr, 13, 4);
    XField xf = project_to_x(f, n, delta, 13, 4);
    for (int i = 0; i < w.num_octagons(); ++i) {
        double t = f.raw_time(i, pr);
        int kt = static_cast<int>(t / delta);
        uint8_t arrival = f.even[i] ? 3 : 0;
        for (int k = 0; k < std::min(kt, xf.blocks); ++k) CHECK(xf.at(i, k) != arrival);
        if (kt < xf.blocks) CHECK(xf.at(i, kt) == arrival);
        if (f.diamond_black(i, pr))
            CHECK(xf.at(i, -1) >= 2);
        else
            CHECK(xf.at(i, -1) <= 1);
    }
    ArrivalField bad = sample_arrivals(w, Params{1.0, 0.5, 0.4}, 13, 4);
    CHECK_THROWS_AS(project_to_x(bad, n, delta, 13, 4), std::domain_error);
}

TEST_CASE("hand-built witness fields") {
    XField all = blank_field(1, 0.5);
    for (int i = 0; i < all.side * all.side; ++i) {
        Site s = octagon(i % all.side, i / all.side);
        all.at(i, -1) = 3;  // black diamonds
        if (is_even_octagon(s)) all.at(i, 0) = 3;
    }
    CHECK(crude_event(all));
    CHECK(witness_f_event(all));

    XField empty = blank_field(1, 0.5);  // no arrivals at all
    CHECK_FALSE(crude_event(empty));

    // the witness colouring of `all`: evens occupied, odds blocked
    JammedColouring jc = witness_colouring(all, true);
    for (int i = 0; i < all.side * all.side; ++i) {
        Site s = octagon(i % all.side, i / all.side);
        CHECK((jc.oct_state[i] == OctState::Occupied) == is_even_octagon(s));
        CHECK(jc.oct_black[i] == 1);
        CHECK(jc.dia_black[i] == 1);
    }
}

TEST_CASE("torus and plane crossing probabilities agree away from the wrap") {
    TorusGapReport rep =
        torus_plane_gap(16, Rect{14, 17, 14, 17}, Params{1.0, 0.5, 0.0}, 400, 3);
    CHECK(rep.gap <= 4 * rep.sigma + 0.02);
    // rectangle too close to wrapping is rejected
    CHECK_THROWS_AS(torus_plane_gap(16, Rect{10, 21, 14, 17}, Params{1.0, 0.5, 0.0}, 400, 3),
                    std::domain_error);
}
