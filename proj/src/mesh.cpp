#include "grimglue/mesh.hpp"

#include "grimglue/report.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace grimglue {

std::string TriangleMesh::to_obj() const {
    std::string out;
    out.reserve(vertices.size() * 40 + faces.size() * 20);
    for (const auto& v : vertices) {
        out += "v " + format_double(v[0]) + " " + format_double(v[1]) + " " +
               format_double(v[2]) + "\n";
    }
    for (const auto& f : faces) {
        out += "f " + std::to_string(f[0] + 1) + " " + std::to_string(f[1] + 1) + " " +
               std::to_string(f[2] + 1) + "\n";
    }
    return out;
}

void TriangleMesh::write_obj(const std::filesystem::path& path) const {
    write_text_file(path, to_obj());
}

int TriangleMesh::connected_components() const {
    std::vector<int> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (const auto& f : faces) {
        parent[find(f[0])] = find(f[1]);
        parent[find(f[1])] = find(f[2]);
    }
    int count = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
        if (find(static_cast<int>(i)) == static_cast<int>(i)) ++count;
    return count;
}

TriangleMesh mesh_height_field(const std::function<double(double, double)>& u, double r_lo,
                               double r_hi, int n_r, int n_theta) {
    if (n_r < 1 || n_theta < 3) throw std::invalid_argument("mesh: grid too coarse");
    if (r_lo < 0 || !(r_lo < r_hi)) throw std::invalid_argument("mesh: bad radial range");
    TriangleMesh mesh;
    // Rings i = 0..n_r, sector j = 0..n_theta-1, wrapping in theta. A ring at
    // r = 0 collapses to coincident vertices; the face count stays 2 n_r n_theta.
    for (int i = 0; i <= n_r; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / n_r;
        for (int j = 0; j < n_theta; ++j) {
            const double theta = 2.0 * M_PI * j / n_theta;
            const double x = r * std::cos(theta);
            const double y = r * std::sin(theta);
            mesh.vertices.push_back({x, y, u(x, y)});
        }
    }
    auto vid = [n_theta](int i, int j) { return i * n_theta + (j % n_theta); };
    for (int i = 0; i < n_r; ++i) {
        for (int j = 0; j < n_theta; ++j) {
            const int a = vid(i, j), b = vid(i, j + 1), c = vid(i + 1, j), d = vid(i + 1, j + 1);
            mesh.faces.push_back({a, d, c});
            mesh.faces.push_back({a, b, d});
        }
    }
    return mesh;
}


std::string scalar_field_csv(const std::function<double(double, double)>& f, double r_lo,
                             double r_hi, int n_r, int n_theta) {
    CsvWriter csv({"x", "y", "value"});
    for (int i = 0; i <= n_r; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / n_r;
        for (int j = 0; j < n_theta; ++j) {
            const double theta = 2.0 * M_PI * j / n_theta;
            const double x = r * std::cos(theta);
            const double y = r * std::sin(theta);
            csv.add_row({format_double(x), format_double(y), format_double(f(x, y))});
        }
    }
    return csv.str();
}

}  // namespace grimglue
