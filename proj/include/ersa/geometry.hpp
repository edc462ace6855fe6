#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

// Geometry of the enhanced lattice: octagon sites at integer points,
// diamond sites at cell corners, and the face-adjacency of the
// truncated square tiling. All coordinates are integers; a diamond is
// indexed by the octagon at the lower-left corner of its cell.

namespace ersa {

enum class SiteKind { Octagon, Diamond };

struct Site {
    SiteKind kind = SiteKind::Octagon;
    int x = 0;
    int y = 0;

    bool operator==(const Site&) const = default;
};

inline Site octagon(int x, int y) { return Site{SiteKind::Octagon, x, y}; }
inline Site diamond(int x, int y) { return Site{SiteKind::Diamond, x, y}; }

inline bool is_even_octagon(const Site& s) {
    return s.kind == SiteKind::Octagon && ((s.x + s.y) % 2 + 2) % 2 == 0;
}
inline bool is_odd_octagon(const Site& s) {
    return s.kind == SiteKind::Octagon && !is_even_octagon(s);
}

struct Rect {
    int x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;  // inclusive

    int width() const { return x_hi - x_lo + 1; }
    int height() const { return y_hi - y_lo + 1; }
    bool contains(int x, int y) const {
        return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
    }
    bool empty() const { return x_hi < x_lo || y_hi < y_lo; }
    bool operator==(const Rect&) const = default;
};

// R(2n, rho) = [-floor(rho n), floor(rho n)-1] x [-n, n-1]
Rect crossing_rect(int n, double rho);

// Inflate by a buffer on all four sides.
inline Rect inflate(const Rect& r, int buffer) {
    return Rect{r.x_lo - buffer, r.x_hi + buffer, r.y_lo - buffer, r.y_hi + buffer};
}

struct Window {
    enum Kind { Plane, Torus };
    Kind kind = Plane;
    Rect bounds;   // Plane only
    int side = 0;  // Torus only; must be even

    static Window plane(const Rect& r);
    static Window torus(int side);

    int num_octagons() const;
    bool contains_octagon(int x, int y) const;

    // Canonical coordinates: identity on a plane, wrap on a torus.
    void canonicalize(int& x, int& y) const;

    // Dense index of an octagon; torus coordinates are wrapped first.
    int octagon_index(int x, int y) const;
    Site octagon_at(int index) const;
};

// The 8 neighbours of an octagon in Lambda (4 octagons, 4 diamonds),
// truncated at plane boundaries.
std::vector<Site> octagon_neighbors(const Site& s, const Window& w);

// The 4 octagons around a diamond's cell, truncated at plane boundaries.
std::vector<Site> diamond_neighbors(const Site& s, const Window& w);

// Shared-tile-edge adjacency of faces in the truncated square tiling.
bool face_adjacency(const Site& a, const Site& b, const Window& w);

// Octagons with coordinates in r, plus diamonds strictly interior to r.
std::vector<Site> rect_faces(const Rect& r, const Window& w);

// The 4 octagon neighbours (|x-y|=1) of an octagon, in-window only.
// Used by the jamming dynamics, where diamonds play no role.
void blocking_neighbors(const Window& w, int x, int y, int out[4], int& count);

}  // namespace ersa
