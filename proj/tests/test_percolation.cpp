#include "doctest.h"
#include "ersa/percolation.hpp"
#include "ersa/rng.hpp"

using namespace ersa;

namespace {

JammedColouring random_colouring(const Window& w, uint64_t seed) {
    JammedColouring jc;
    const int n = w.num_octagons();
    jc.oct_state.assign(n, OctState::Blocked);
    jc.oct_black.resize(n);
    jc.dia_black.resize(n);
    for (int i = 0; i < n; ++i) {
        jc.oct_black[i] = detail::splitmix64(seed + 2 * i) & 1;
        jc.dia_black[i] = detail::splitmix64(seed + 2 * i + 1) & 1;
    }
    return jc;
}

}  // namespace

TEST_CASE("horizontal black crossing complements vertical white crossing") {
    for (Rect r : {Rect{0, 2, 0, 2}, Rect{0, 4, 0, 2}, Rect{0, 1, 0, 3}, Rect{0, 0, 0, 0}}) {
        Window w = Window::plane(r);
        for (uint64_t s = 0; s < 300; ++s) {
            JammedColouring jc = random_colouring(w, 1000 * s + r.width());
            bool hb = has_crossing({r, CrossingSpec::Horizontal, true}, jc, w);
            bool vw = has_crossing({r, CrossingSpec::Vertical, false}, jc, w);
            CHECK(hb == !vw);
        }
    }
}

TEST_CASE("forced diamond can bridge a crossing") {
    Rect r{0, 1, 0, 1};
    Window w = Window::plane(r);
    JammedColouring jc;
    jc.oct_state.assign(4, OctState::Blocked);
    // black octagons on the anti-diagonal only
    jc.oct_black = {0, 1, 1, 0};
    jc.dia_black = {0, 0, 0, 0};
    CrossingSpec spec{r, CrossingSpec::Horizontal, true};
    int dia = w.octagon_index(0, 0);
    CHECK_FALSE(has_crossing(spec, jc, w));
    CHECK(has_crossing(spec, jc, w, dia, true));
    CHECK_FALSE(has_crossing(spec, jc, w, dia, false));
}

TEST_CASE("estimates are identical across worker counts") {
    Params pr{1.0, 0.5, 0.0};
    Estimate a = estimate_h(3, 1.0, pr, 400, 42, 1);
    Estimate b = estimate_h(3, 1.0, pr, 400, 42, 4);
    CHECK(a.successes == b.successes);
    CHECK(a.dense_failures == b.dense_failures);
    CHECK(a.value == b.value);
}

TEST_CASE("degenerate parameters pin the crossing") {
    // p = 1 and a huge lambda make everything black
    Params black{50.0, 1.0, 0.0};
    Estimate e = estimate_h(3, 1.0, black, 200, 7);
    CHECK(e.value > 0.9);
    Params white{0.02, 0.0, 0.0};
    Estimate e2 = estimate_h(3, 1.0, white, 200, 7);
    CHECK(e2.value < 0.1);
}

TEST_CASE("trial floor is enforced") {
    CHECK_THROWS_AS(estimate_h(3, 1.0, Params{}, 50, 1), std::domain_error);
}
