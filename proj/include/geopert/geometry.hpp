// Points in [0,1]^d, l_p distances, and the tessellation of the unit cube
// into axis-aligned hypercube cells with king-move ("friend") adjacency.
//
// Cell side s = 1/ceil(2*d^(1/p)/r), so the l_p diameter of the union of a
// cell and any friend cell is at most r: any two points in the same cell or
// in friend cells are within distance r.
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace geopert {

using Point = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double lp_distance(const Point& a, const Point& b, double p) {
    if (a.size() != b.size()) throw std::invalid_argument("lp_distance: dimension mismatch");
    if (p == kInf) {
        double m = 0.0;
        for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) {
            double t = a[i] - b[i];
            s += t * t;
        }
        return std::sqrt(s);
    }
    if (p == 1.0) {
        double s = 0.0;
        for (size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
        return s;
    }
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::pow(std::abs(a[i] - b[i]), p);
    return std::pow(s, 1.0 / p);
}

// Integer cell coordinates, one per axis, each in [0, cells_per_axis - 1].
// Ordering is lexicographic; it fixes every "arbitrary" cell choice.
struct CellId {
    std::vector<int32_t> ix;
    auto operator<=>(const CellId&) const = default;
};

class Tessellation {
public:
    // Throws std::invalid_argument on d < 1, r <= 0, p < 1 or n < 1.
    // cells_per_axis = ceil(2*d^(1/p)/r) >= 1, so a radius larger than the
    // cube diameter simply yields a single cell.
    Tessellation(int d, double r, double p, int64_t n) : d_(d), r_(r), p_(p) {
        if (d < 1) throw std::invalid_argument("Tessellation: d must be >= 1");
        if (!(r > 0.0)) throw std::invalid_argument("Tessellation: r must be positive");
        if (!(p >= 1.0)) throw std::invalid_argument("Tessellation: p must be >= 1");
        if (n < 1) throw std::invalid_argument("Tessellation: n must be >= 1");
        const double root = (p == kInf) ? 1.0 : std::pow(static_cast<double>(d), 1.0 / p);
        cells_per_axis_ = static_cast<int32_t>(std::ceil(2.0 * root / r));
        if (cells_per_axis_ < 1) cells_per_axis_ = 1;
        s_ = 1.0 / static_cast<double>(cells_per_axis_);
        cell_count_ = 1;
        for (int i = 0; i < d_; ++i) {
            if (cell_count_ > (int64_t{1} << 40) / cells_per_axis_)
                throw std::invalid_argument("Tessellation: cell count too large");
            cell_count_ *= cells_per_axis_;
        }
        K_ = std::pow(s_, d_) * static_cast<double>(n);
    }

    int d() const { return d_; }
    double r() const { return r_; }
    double p() const { return p_; }
    double s() const { return s_; }
    double K() const { return K_; }
    int32_t cells_per_axis() const { return cells_per_axis_; }
    int64_t cell_count() const { return cell_count_; }

    // Half-open boxes [k*s, (k+1)*s) per axis; coordinate exactly 1.0 maps to
    // the last cell. Throws std::out_of_range outside [0,1]^d.
    CellId cell_of(const Point& x) const {
        if (static_cast<int>(x.size()) != d_) throw std::invalid_argument("cell_of: dimension mismatch");
        CellId c;
        c.ix.resize(d_);
        for (int i = 0; i < d_; ++i) {
            if (!(x[i] >= 0.0 && x[i] <= 1.0)) throw std::out_of_range("cell_of: coordinate outside [0,1]");
            auto k = static_cast<int32_t>(x[i] * cells_per_axis_);
            if (k >= cells_per_axis_) k = cells_per_axis_ - 1;
            c.ix[i] = k;
        }
        return c;
    }

    // Lexicographic linear index: axis 0 most significant. Linear order of
    // indices therefore equals lexicographic order of CellIds.
    int64_t index_of(const CellId& c) const {
        int64_t idx = 0;
        for (int i = 0; i < d_; ++i) idx = idx * cells_per_axis_ + c.ix[i];
        return idx;
    }

    CellId cell_at(int64_t idx) const {
        CellId c;
        c.ix.assign(d_, 0);
        for (int i = d_ - 1; i >= 0; --i) {
            c.ix[i] = static_cast<int32_t>(idx % cells_per_axis_);
            idx /= cells_per_axis_;
        }
        return c;
    }

    // Friends: distinct cells whose closed boundaries intersect, i.e.
    // Chebyshev distance of the index vectors is <= 1. A shared corner counts;
    // a cell is not its own friend.
    bool are_friends(const CellId& a, const CellId& b) const {
        if (a.ix == b.ix) return false;
        for (int i = 0; i < d_; ++i)
            if (std::abs(a.ix[i] - b.ix[i]) > 1) return false;
        return true;
    }

    // All friends of a, in lexicographic order. At most 3^d - 1 cells, with
    // equality for interior cells.
    std::vector<CellId> friend_cells(const CellId& a) const {
        std::vector<CellId> out;
        CellId cur = a;
        enumerate_friends(a, cur, 0, out);
        return out;
    }

    std::vector<int64_t> friend_indices(int64_t idx) const {
        std::vector<int64_t> out;
        for (const CellId& f : friend_cells(cell_at(idx))) out.push_back(index_of(f));
        return out;  // ascending, since friend_cells is lexicographic
    }

private:
    void enumerate_friends(const CellId& a, CellId& cur, int axis, std::vector<CellId>& out) const {
        if (axis == d_) {
            if (cur.ix != a.ix) out.push_back(cur);
            return;
        }
        for (int dlt = -1; dlt <= 1; ++dlt) {
            int32_t v = a.ix[axis] + dlt;
            if (v < 0 || v >= cells_per_axis_) continue;
            cur.ix[axis] = v;
            enumerate_friends(a, cur, axis + 1, out);
        }
        cur.ix[axis] = a.ix[axis];
    }

    int d_;
    double r_, p_, s_, K_;
    int32_t cells_per_axis_;
    int64_t cell_count_;
};

}  // namespace geopert
