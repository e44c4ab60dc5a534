#include "arrfrob/gaussmanin.hpp"

#include <cstdio>

namespace arrfrob {

std::vector<Complex> Path::at(double s) const {
    int last = static_cast<int>(vertices.size()) - 1;
    int seg = std::clamp(static_cast<int>(std::floor(s)), 0, std::max(last - 1, 0));
    if (last == 0) return vertices[0];
    double u = s - seg;
    std::vector<Complex> z(vertices[seg].size());
    for (size_t i = 0; i < z.size(); ++i) z[i] = vertices[seg][i] + u * (vertices[seg + 1][i] - vertices[seg][i]);
    return z;
}

std::vector<Complex> Path::velocity(double s) const {
    int last = static_cast<int>(vertices.size()) - 1;
    if (last == 0) return std::vector<Complex>(vertices[0].size(), 0.0);
    int seg = std::clamp(static_cast<int>(std::floor(s)), 0, last - 1);
    std::vector<Complex> v(vertices[seg].size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = vertices[seg + 1][i] - vertices[seg][i];
    return v;
}

namespace {

struct Rhs {
    const GmSystem& gm;
    Complex kappa;
    const Path& path;
    double guard;
    std::vector<Matrix<Complex>> L;

    Rhs(const GmSystem& g, Complex k, const Path& p, double gd) : gm(g), kappa(k), path(p), guard(gd) {
        for (const auto& m : gm.l_matrices()) L.push_back(convert<Complex>(m));
    }

    // Segment index is fixed by the caller so that stage points on a boundary keep the segment velocity.
    Vec<Complex> operator()(int seg, double s, const Vec<Complex>& y) const {
        const auto& v0 = path.vertices[seg];
        const auto& v1 = path.vertices[std::min<size_t>(seg + 1, path.vertices.size() - 1)];
        double u = s - seg;
        int n = static_cast<int>(v0.size());
        std::vector<Complex> z(n), vel(n);
        for (int i = 0; i < n; ++i) {
            vel[i] = v1[i] - v0[i];
            z[i] = v0[i] + u * vel[i];
        }
        const auto& cs = gm.family().circuits();
        int d = static_cast<int>(y.size());
        Vec<Complex> out(d, 0.0);
        for (size_t c = 0; c < cs.size(); ++c) {
            Complex f = f_C_value(cs[c], z);
            if (std::abs(f) <= guard) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "path comes within %.3e of discriminant hyperplane %s at s=%.6f",
                              std::abs(f), subset_label(cs[c].indices).c_str(), s);
                throw FlowError(buf);
            }
            Complex w = 0;
            for (size_t m = 0; m < cs[c].indices.size(); ++m) w += cs[c].lambda[m].get_d() * vel[cs[c].indices[m]];
            if (w == Complex(0)) continue;
            w /= f * kappa;
            const auto& M = L[c];
            for (int r = 0; r < d; ++r)
                for (int q = 0; q < d; ++q)
                    if (M(r, q) != Complex(0)) out[r] += w * M(r, q) * y[q];
        }
        return out;
    }
};

constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200, E6 = 22.0 / 525,
                 E7 = -1.0 / 40;

Vec<Complex> comb(const Vec<Complex>& y, double h, std::initializer_list<std::pair<double, const Vec<Complex>*>> terms) {
    Vec<Complex> out = y;
    for (const auto& [c, k] : terms)
        for (size_t i = 0; i < out.size(); ++i) out[i] += h * c * (*k)[i];
    return out;
}

}  // namespace

Vec<Complex> flow_rhs(const GmSystem& gm, Complex kappa, const Path& path, double s, const Vec<Complex>& I) {
    Rhs rhs(gm, kappa, path, 0.0);
    int last = static_cast<int>(path.vertices.size()) - 1;
    int seg = std::clamp(static_cast<int>(std::floor(s)), 0, std::max(last - 1, 0));
    return rhs(seg, s, I);
}

GmTrajectory flow_flat_section(const Family& fam, Complex kappa, const Path& path, const Vec<Complex>& I0,
                               const FlowOptions& opt) {
    if (kappa == Complex(0)) throw std::invalid_argument("kappa must be nonzero");
    GmSystem gm(fam);
    Rhs rhs(gm, kappa, path, opt.guard);
    GmTrajectory tr;
    tr.kappa = kappa;
    Vec<Complex> y = I0;
    tr.s.push_back(0.0);
    tr.z.push_back(path.at(0.0));
    tr.I.push_back(y);
    int segments = static_cast<int>(path.vertices.size()) - 1;
    double h = 1e-2;
    for (int seg = 0; seg < segments; ++seg) {
        for (int sample = 1; sample <= opt.samples_per_segment; ++sample) {
            double target = seg + static_cast<double>(sample) / opt.samples_per_segment;
            double s = seg + static_cast<double>(sample - 1) / opt.samples_per_segment;
            while (s < target - 1e-15) {
                if (++tr.steps > opt.max_steps) throw FlowError("step budget exhausted");
                bool last_step = s + h >= target;
                double step = last_step ? target - s : h;
                auto k1 = rhs(seg, s, y);
                auto k2 = rhs(seg, s + C2 * step, comb(y, step, {{A21, &k1}}));
                auto k3 = rhs(seg, s + C3 * step, comb(y, step, {{A31, &k1}, {A32, &k2}}));
                auto k4 = rhs(seg, s + C4 * step, comb(y, step, {{A41, &k1}, {A42, &k2}, {A43, &k3}}));
                auto k5 = rhs(seg, s + C5 * step, comb(y, step, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}));
                auto k6 = rhs(seg, s + step,
                              comb(y, step, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}));
                auto y5 = comb(y, step, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
                auto k7 = rhs(seg, s + step, y5);
                double err = 0;
                for (size_t i = 0; i < y.size(); ++i) {
                    Complex e = step * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                    double sc = opt.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
                    err = std::max(err, std::abs(e) / sc);
                }
                double factor = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                if (err <= 1.0) {
                    s = last_step ? target : s + step;
                    y = y5;
                    if (!last_step || factor > 1.0) h = step * factor;
                } else {
                    h = step * factor;
                    if (h < 1e-14) throw FlowError("step size underflow near s=" + std::to_string(s));
                }
            }
            tr.s.push_back(target);
            tr.z.push_back(path.at(target));
            tr.I.push_back(y);
        }
    }
    return tr;
}

nlohmann::json trajectory_json_lines(const GmTrajectory& tr) {
    auto out = nlohmann::json::array();
    auto cj = [](const std::vector<Complex>& v) {
        auto a = nlohmann::json::array();
        for (const auto& x : v) a.push_back({x.real(), x.imag()});
        return a;
    };
    for (size_t i = 0; i < tr.s.size(); ++i) out.push_back({{"s", tr.s[i]}, {"z", cj(tr.z[i])}, {"I", cj(tr.I[i])}});
    return out;
}

}  // namespace arrfrob
