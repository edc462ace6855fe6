#include "doctest.h"
#include "ersa/geometry.hpp"

using namespace ersa;

TEST_CASE("parity of octagons") {
    CHECK(is_even_octagon(octagon(0, 0)));
    CHECK(is_even_octagon(octagon(-1, 1)));
    CHECK(is_odd_octagon(octagon(1, 0)));
    CHECK(is_odd_octagon(octagon(-1, 0)));
    CHECK_FALSE(is_even_octagon(diamond(0, 0)));
}

TEST_CASE("crossing rectangle dimensions") {
    Rect r = crossing_rect(4, 1.0);
    CHECK(r == Rect{-4, 3, -4, 3});
    CHECK(r.width() == 8);
    Rect wide = crossing_rect(4, 3.0);
    CHECK(wide == Rect{-12, 11, -4, 3});
    CHECK_THROWS_AS(crossing_rect(1, 0.4), std::domain_error);
}

TEST_CASE("octagon neighbours on a torus") {
    Window w = Window::torus(8);
    auto nb = octagon_neighbors(octagon(0, 0), w);
    CHECK(nb.size() == 8);
    int octs = 0, dias = 0;
    for (const Site& s : nb) (s.kind == SiteKind::Octagon ? octs : dias)++;
    CHECK(octs == 4);
    CHECK(dias == 4);
    // wrapped coordinates
    bool has_left = false, has_corner = false;
    for (const Site& s : nb) {
        if (s == octagon(7, 0)) has_left = true;
        if (s == diamond(7, 7)) has_corner = true;
    }
    CHECK(has_left);
    CHECK(has_corner);
}

TEST_CASE("boundary truncation on a plane") {
    Window w = Window::plane(Rect{0, 3, 0, 3});
    auto corner = octagon_neighbors(octagon(0, 0), w);
    CHECK(corner.size() == 3);  // two octagons, one diamond
    auto dn = diamond_neighbors(diamond(1, 1), w);
    CHECK(dn.size() == 4);
}

TEST_CASE("face adjacency") {
    Window w = Window::torus(8);
    CHECK(face_adjacency(octagon(0, 0), octagon(1, 0), w));
    CHECK_FALSE(face_adjacency(octagon(0, 0), octagon(1, 1), w));
    CHECK(face_adjacency(octagon(1, 1), diamond(0, 0), w));
    CHECK(face_adjacency(octagon(0, 0), diamond(0, 0), w));
    CHECK_FALSE(face_adjacency(diamond(0, 0), diamond(1, 0), w));
    CHECK(face_adjacency(octagon(0, 0), octagon(7, 0), w));
}

TEST_CASE("rectangle faces count") {
    Window w = Window::plane(Rect{-10, 10, -10, 10});
    auto faces = rect_faces(Rect{0, 3, 0, 3}, w);
    CHECK(faces.size() == 16 + 9);
}

TEST_CASE("window indexing round-trips") {
    Window t = Window::torus(6);
    for (int i = 0; i < t.num_octagons(); ++i) {
        Site s = t.octagon_at(i);
        CHECK(t.octagon_index(s.x, s.y) == i);
    }
    CHECK(t.octagon_index(-1, -1) == t.octagon_index(5, 5));
    Window p = Window::plane(Rect{-2, 2, -2, 2});
    CHECK(p.num_octagons() == 25);
    CHECK_THROWS_AS(p.octagon_index(3, 0), std::domain_error);
}
