#pragma once

#include "grimglue/geometry.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace grimglue {

// Triangle mesh of a height field over the annulus [r_lo, r_hi], polar grid
// with n_r radial bands and n_theta sectors: exactly 2 * n_r * n_theta
// triangles, counterclockwise faces for the outward (upward) normal.
struct TriangleMesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> faces;  // zero-based

    std::string to_obj() const;
    void write_obj(const std::filesystem::path& path) const;
    int connected_components() const;
};

TriangleMesh mesh_height_field(const std::function<double(double, double)>& u, double r_lo,
                               double r_hi, int n_r, int n_theta);

inline TriangleMesh mesh_chart(const GraphChart& chart, int n_r, int n_theta) {
    return mesh_height_field(chart.height.u, chart.r_inner, chart.r_outer, n_r, n_theta);
}

// Scalar-field dump on a polar grid: columns x, y, value.
std::string scalar_field_csv(const std::function<double(double, double)>& f, double r_lo,
                             double r_hi, int n_r, int n_theta);

}  // namespace grimglue
