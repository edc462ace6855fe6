#include "ersa/geometry.hpp"

#include <cmath>

namespace ersa {

Rect crossing_rect(int n, double rho) {
    int m = static_cast<int>(std::floor(rho * n));
    if (m < 1 || n < 1) throw std::domain_error("crossing_rect: floor(rho*n) >= 1 required");
    return Rect{-m, m - 1, -n, n - 1};
}

Window Window::plane(const Rect& r) {
    if (r.empty()) throw std::domain_error("plane window: empty rectangle");
    Window w;
    w.kind = Plane;
    w.bounds = r;
    return w;
}

Window Window::torus(int side) {
    if (side < 2 || side % 2 != 0) throw std::domain_error("torus side must be even and >= 2");
    Window w;
    w.kind = Torus;
    w.side = side;
    return w;
}

int Window::num_octagons() const {
    if (kind == Torus) return side * side;
    return bounds.width() * bounds.height();
}

bool Window::contains_octagon(int x, int y) const {
    if (kind == Torus) return true;
    return bounds.contains(x, y);
}

void Window::canonicalize(int& x, int& y) const {
    if (kind == Torus) {
        x = ((x % side) + side) % side;
        y = ((y % side) + side) % side;
    }
}

int Window::octagon_index(int x, int y) const {
    canonicalize(x, y);
    if (kind == Torus) return y * side + x;
    if (!bounds.contains(x, y)) throw std::domain_error("octagon outside window");
    return (y - bounds.y_lo) * bounds.width() + (x - bounds.x_lo);
}

Site Window::octagon_at(int index) const {
    if (kind == Torus) return octagon(index % side, index / side);
    return octagon(bounds.x_lo + index % bounds.width(), bounds.y_lo + index / bounds.width());
}

std::vector<Site> octagon_neighbors(const Site& s, const Window& w) {
    if (s.kind != SiteKind::Octagon || !w.contains_octagon(s.x, s.y))
        throw std::domain_error("octagon_neighbors: octagon site inside window required");
    std::vector<Site> out;
    out.reserve(8);
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int i = 0; i < 4; ++i) {
        int x = s.x + dx[i], y = s.y + dy[i];
        if (w.contains_octagon(x, y)) {
            w.canonicalize(x, y);
            out.push_back(octagon(x, y));
        }
    }
    // diamonds at the four corners of the unit cell around s
    const int cx[4] = {0, -1, 0, -1};
    const int cy[4] = {0, 0, -1, -1};
    for (int i = 0; i < 4; ++i) {
        int x = s.x + cx[i], y = s.y + cy[i];
        // on a plane the diamond exists if all four of its octagons do
        if (w.kind == Window::Plane &&
            !(w.contains_octagon(x, y) && w.contains_octagon(x + 1, y) &&
              w.contains_octagon(x, y + 1) && w.contains_octagon(x + 1, y + 1)))
            continue;
        w.canonicalize(x, y);
        out.push_back(diamond(x, y));
    }
    return out;
}

std::vector<Site> diamond_neighbors(const Site& s, const Window& w) {
    if (s.kind != SiteKind::Diamond) throw std::domain_error("diamond_neighbors: diamond required");
    std::vector<Site> out;
    out.reserve(4);
    for (int dx = 0; dx <= 1; ++dx)
        for (int dy = 0; dy <= 1; ++dy) {
            int x = s.x + dx, y = s.y + dy;
            if (w.contains_octagon(x, y)) {
                w.canonicalize(x, y);
                out.push_back(octagon(x, y));
            }
        }
    return out;
}

bool face_adjacency(const Site& a, const Site& b, const Window& w) {
    if (a == b) return false;
    if (a.kind == SiteKind::Diamond && b.kind == SiteKind::Diamond) return false;
    if (a.kind == SiteKind::Octagon && b.kind == SiteKind::Octagon) {
        int dx = a.x - b.x, dy = a.y - b.y;
        if (w.kind == Window::Torus) {
            dx = ((dx % w.side) + w.side) % w.side;
            dy = ((dy % w.side) + w.side) % w.side;
            dx = std::min(dx, w.side - dx);
            dy = std::min(dy, w.side - dy);
        }
        return std::abs(dx) + std::abs(dy) == 1;
    }
    const Site& oct = a.kind == SiteKind::Octagon ? a : b;
    const Site& dia = a.kind == SiteKind::Diamond ? a : b;
    int dx = oct.x - dia.x, dy = oct.y - dia.y;
    if (w.kind == Window::Torus) {
        dx = ((dx % w.side) + w.side) % w.side;
        dy = ((dy % w.side) + w.side) % w.side;
    }
    return (dx == 0 || dx == 1) && (dy == 0 || dy == 1);
}

std::vector<Site> rect_faces(const Rect& r, const Window& w) {
    if (r.empty()) throw std::domain_error("rect_faces: empty rectangle");
    if (w.kind == Window::Plane &&
        !(w.bounds.contains(r.x_lo, r.y_lo) && w.bounds.contains(r.x_hi, r.y_hi)))
        throw std::domain_error("rect_faces: rectangle not contained in window");
    if (w.kind == Window::Torus && (r.width() > w.side || r.height() > w.side))
        throw std::domain_error("rect_faces: rectangle larger than torus");
    std::vector<Site> out;
    out.reserve(static_cast<size_t>(r.width()) * r.height() * 2);
    for (int y = r.y_lo; y <= r.y_hi; ++y)
        for (int x = r.x_lo; x <= r.x_hi; ++x) out.push_back(octagon(x, y));
    for (int y = r.y_lo; y < r.y_hi; ++y)
        for (int x = r.x_lo; x < r.x_hi; ++x) out.push_back(diamond(x, y));
    return out;
}

void blocking_neighbors(const Window& w, int x, int y, int out[4], int& count) {
    count = 0;
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int i = 0; i < 4; ++i) {
        int nx = x + dx[i], ny = y + dy[i];
        if (w.contains_octagon(nx, ny)) out[count++] = w.octagon_index(nx, ny);
    }
}

}  // namespace ersa
