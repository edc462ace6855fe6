#include <cmath>

#include "doctest.h"
#include "ersa/oracle.hpp"
#include "ersa/verify.hpp"

using namespace ersa;

namespace {

OracleInstance strip(int w, int h) {
    return OracleInstance::from_window(Window::plane(Rect{0, w - 1, 0, h - 1}));
}

}  // namespace

TEST_CASE("three-site path: centre occupied with probability 1/3") {
    OracleInstance inst = strip(3, 1);
    OracleDistribution d = exact_oracle(inst, Params{1.0, 0.5, 0.0});
    CHECK(d.total == doctest::Approx(1.0).epsilon(1e-12));
    int centre = inst.window.octagon_index(1, 0);
    CHECK(occupied_probability(d, centre) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    int left = inst.window.octagon_index(0, 0);
    CHECK(occupied_probability(d, left) == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("two-site path with a fast even site") {
    OracleInstance inst = strip(2, 1);
    OracleDistribution d = exact_oracle(inst, Params{2.0, 0.5, 0.0});
    CHECK(occupied_probability(d, inst.window.octagon_index(0, 0)) ==
          doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(occupied_probability(d, inst.window.octagon_index(1, 0)) ==
          doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("delay boosts the odd site") {
    // odd site wins with probability q + (1-q)/2 at equal rates
    OracleInstance inst = strip(2, 1);
    double delta = std::log(2.0);  // q = 1/2
    OracleDistribution d = exact_oracle(inst, Params{1.0, 0.5, delta});
    CHECK(occupied_probability(d, inst.window.octagon_index(1, 0)) ==
          doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("single site is always occupied") {
    OracleInstance inst = strip(1, 1);
    OracleDistribution d = exact_oracle(inst, Params{1.7, 0.2, 0.3});
    CHECK(occupied_probability(d, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distributions over the corpus are normalized") {
    for (const auto& entry : oracle_corpus()) {
        OracleDistribution d = exact_oracle(entry.instance, entry.params);
        CHECK(std::abs(d.total - 1.0) < 1e-12);
        // no two adjacent occupied sites in any reachable state
        const Window& w = entry.instance.window;
        for (uint32_t mask = 0; mask < d.prob.size(); ++mask) {
            if (d.prob[mask] == 0) continue;
            int nb[4], nbc;
            for (int i = 0; i < w.num_octagons(); ++i) {
                if (!((mask >> i) & 1)) continue;
                Site s = w.octagon_at(i);
                blocking_neighbors(w, s.x, s.y, nb, nbc);
                for (int j = 0; j < nbc; ++j) CHECK_FALSE(((mask >> nb[j]) & 1) != 0);
            }
        }
    }
}

TEST_CASE("event polynomial: single diamond") {
    OracleInstance inst = strip(2, 2);
    REQUIRE(inst.diamonds.size() == 1);
    Poly black = oracle_event_poly(inst, Params{1.0, 0.5, 0.0},
                                   [](uint32_t, uint32_t dm) { return (dm & 1) != 0; });
    CHECK(black.max_coeff_diff(Poly{{0.0, 1.0}}) < 1e-12);
    Poly any = oracle_event_poly(inst, Params{1.0, 0.5, 0.0},
                                 [](uint32_t, uint32_t) { return true; });
    CHECK(any.max_coeff_diff(Poly::constant(1.0)) < 1e-12);
}

TEST_CASE("polynomial arithmetic") {
    Poly a{{1.0, 2.0}};       // 1 + 2p
    Poly b{{0.0, 0.0, 3.0}};  // 3p^2
    Poly prod = a * b;
    CHECK(prod.eval(2.0) == doctest::Approx((1 + 4) * 12.0));
    CHECK(b.derivative().eval(2.0) == doctest::Approx(12.0));
    a += b;
    CHECK(a.eval(1.0) == doctest::Approx(6.0));
}
