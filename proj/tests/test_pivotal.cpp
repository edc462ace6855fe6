#include <cmath>

#include "doctest.h"
#include "ersa/pivotal.hpp"

using namespace ersa;

TEST_CASE("site classification") {
    CHECK(classify(octagon(0, 0)) == SiteClass::EvenOctagon);
    CHECK(classify(octagon(1, 0)) == SiteClass::OddOctagon);
    CHECK(classify(diamond(3, 5)) == SiteClass::Diamond);
    PivotalQuery bad{octagon(0, 0), SiteClass::OddOctagon,
                     {Rect{0, 1, 0, 1}, CrossingSpec::Horizontal, true}};
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("diamond pivotality matches the exact polynomial on a 2x2 block") {
    Rect r{0, 1, 0, 1};
    OracleInstance inst = OracleInstance::from_window(Window::plane(r));
    Params params{1.0, 0.5, 0.0};
    CrossingSpec spec{r, CrossingSpec::Horizontal, true};
    int base = inst.diamonds[0];
    Poly phi = oracle_event_poly(inst, params, [&](uint32_t occ, uint32_t dm) {
        JammedColouring jc = colouring_from_masks(inst, occ, dm);
        return has_crossing(spec, jc, inst.window, base, true) !=
               has_crossing(spec, jc, inst.window, base, false);
    });
    for (double p : {0.25, 0.5, 0.75}) {
        Params pp{1.0, p, 0.0};
        PivotalQuery q{diamond(0, 0), SiteClass::Diamond, spec};
        Estimate e = estimate_phi(q, pp, 4000, 11, 1, /*buffer=*/0);
        double exact = phi.eval(p);
        CHECK(std::abs(e.value - exact) < 4 * e.sigma() + 1e-3);
    }
}

TEST_CASE("faraway sites are almost never pivotal") {
    CrossingSpec spec{crossing_rect(2, 1.0), CrossingSpec::Horizontal, true};
    PivotalQuery q{diamond(40, 40), SiteClass::Diamond, spec};
    // window must contain the site: widen the buffer
    Estimate e = estimate_phi(q, Params{1.0, 0.5, 0.0}, 1000, 3, 1, 45);
    CHECK(e.ci_hi < 0.01);
}

TEST_CASE("derivative identities at small size") {
    RussoReport r = russo_residuals(2, 1.0, Params{1.0, 0.5, 0.2}, 0.08, 2500, 21);
    CHECK(std::abs(r.r_p) < 5 * r.fd_p_sigma + 0.02);
    CHECK(std::abs(r.r_delta) < 5 * r.fd_delta_sigma + 0.02);
    CHECK_FALSE(r.lambda_checked_at_delta0);
    RussoReport r0 = russo_residuals(2, 1.0, Params{1.0, 0.5, 0.0}, 0.08, 2500, 22);
    CHECK(r0.lambda_checked_at_delta0);
    CHECK(std::abs(r0.r_lambda) < 5 * r0.fd_lambda_sigma + 0.02);
}

TEST_CASE("symbolic p-derivative identity") {
    for (Rect r : {Rect{0, 1, 0, 1}, Rect{0, 2, 0, 1}}) {
        OracleInstance inst = OracleInstance::from_window(Window::plane(r));
        CrossingSpec spec{r, CrossingSpec::Horizontal, true};
        CHECK(oracle_mra_residual(inst, Params{1.3, 0.5, 0.4}, spec) < 1e-9);
    }
}
