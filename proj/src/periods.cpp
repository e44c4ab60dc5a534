#include "arrfrob/frobenius.hpp"

#include <Eigen/Eigenvalues>

namespace arrfrob {

namespace {

// Gauss-Legendre nodes and weights on [0, 1] (Golub-Welsch).
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) J(i, i - 1) = J(i - 1, i) = i / std::sqrt(4.0 * i * i - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    std::vector<double> x(m), w(m);
    for (int i = 0; i < m; ++i) {
        x[i] = 0.5 * (es.eigenvalues()(i) + 1.0);
        w[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    }
    return {x, w};
}

struct PeriodContext {
    const WAlgebra& alg;
    Matrix<Complex> N;
    std::vector<Poly> q;
    std::vector<std::vector<Poly>> dq;
    GmSystem gm;

    explicit PeriodContext(const WAlgebra& a)
        : alg(a), N(convert<Complex>(naive_iso(a))), q(period_polynomials(a.family(), a.anchor())), gm(a.family()) {
        for (int j = 0; j < a.family().n(); ++j) {
            std::vector<Poly> d;
            for (const auto& p : q) d.push_back(p.derivative(j));
            dq.push_back(std::move(d));
        }
    }

    const Family& fam() const { return alg.family(); }

    // alpha([a_j/f_j]) at z.
    Vec<Complex> alpha_generator(int j, const std::vector<Complex>& z) const { return N * alg.padded_product({j}, z); }

    Vec<Complex> q_at(const std::vector<Complex>& z) const { return evaluate_polys(q, z); }

    Vec<Complex> q_dot(const std::vector<Complex>& z, const std::vector<Complex>& vel) const {
        Vec<Complex> out(q.size(), 0.0);
        for (size_t j = 0; j < vel.size(); ++j)
            if (vel[j] != Complex(0)) axpy(vel[j], evaluate_polys(dq[j], z), out);
        return out;
    }

    Vec<Complex> i_dot(Complex kappa, const std::vector<Complex>& z, const std::vector<Complex>& vel,
                       const Vec<Complex>& I) const {
        Vec<Complex> out(I.size(), 0.0);
        for (size_t j = 0; j < vel.size(); ++j)
            if (vel[j] != Complex(0)) axpy(vel[j] / kappa, gm.k_operator(static_cast<int>(j), z) * I, out);
        return out;
    }
};

std::vector<Complex> sample_velocity(const Path& path, double s) { return path.velocity(s > 0 ? s - 1e-9 : 0.0); }

Vec<Complex> short_flow(const Family& fam, Complex kappa, const std::vector<Complex>& z, const std::vector<Complex>& dir,
                        double h, const Vec<Complex>& I) {
    Path p;
    p.vertices.push_back(z);
    std::vector<Complex> end = z;
    for (size_t i = 0; i < z.size(); ++i) end[i] += h * dir[i];
    p.vertices.push_back(end);
    FlowOptions opt;
    opt.tol = 1e-13;
    return flow_flat_section(fam, kappa, p, I, opt).I.back();
}

Complex twisted_factor(const Family& fam, Complex kappa) {
    double ak = fam.abs_a().get_d() / fam.k();
    if (std::abs(kappa - ak) < 1e-12 || std::abs(kappa + ak) < 1e-12)
        throw std::invalid_argument("twisted period checks require kappa != +-|a|/k");
    return 1.0 / kappa + 1.0 / ak;
}

}  // namespace

Checks flat_and_twisted_periods(const WAlgebra& alg, const GmTrajectory& tr, const Path& path, const PeriodOptions& opt) {
    const Family& fam = alg.family();
    PeriodContext ctx(alg);
    Checks out;
    int d = fam.basis().size(), n = fam.n();
    auto [x, w] = gauss_legendre(opt.quad_nodes);
    double ak = fam.abs_a().get_d() / fam.k();
    double flat_err = 0;
    for (int r = 0; r < d; ++r) {
        Vec<Complex> v(d, 0.0);
        v[r] = 1.0;
        Complex integral = 0;
        for (size_t seg = 0; seg + 1 < path.vertices.size(); ++seg) {
            const auto& z0 = path.vertices[seg];
            const auto& z1 = path.vertices[seg + 1];
            for (int m = 0; m < opt.quad_nodes; ++m) {
                std::vector<Complex> z(n);
                for (int i = 0; i < n; ++i) z[i] = z0[i] + x[m] * (z1[i] - z0[i]);
                for (int i = 0; i < n; ++i)
                    if (z1[i] != z0[i])
                        integral += w[m] * (z1[i] - z0[i]) * contravariant_pairing(fam, v, ctx.alpha_generator(i, z));
            }
        }
        Complex rhs = ak * (contravariant_pairing(fam, v, ctx.q_at(path.vertices.back())) -
                            contravariant_pairing(fam, v, ctx.q_at(path.vertices.front())));
        flat_err = std::max(flat_err, std::abs(integral - rhs) / std::max(1.0, std::abs(rhs)));
    }
    out.push_back(numeric_check("periods.flat", "int psi_v = (|a|/k) Delta S(v, q)", flat_err, opt.flat_tol));
    append(out, twisted_exactness(alg, tr, path, opt.twisted_tol));

    if (fam.k() == 1 && !tr.s.empty()) {
        Complex kappa = tr.kappa;
        twisted_factor(fam, kappa);
        double err = 0, pointwise = 0;
        size_t stride = std::max<size_t>(1, tr.s.size() / 5);
        for (size_t idx = 0; idx < tr.s.size(); idx += stride) {
            const auto& z = tr.z[idx];
            const auto& I = tr.I[idx];
            std::vector<Vec<Complex>> fd(n), ex(n);
            double mag = 1.0;
            for (int m = 0; m < n; ++m) {
                std::vector<Complex> e(n, 0.0);
                e[m] = 1.0;
                Vec<Complex> plus = short_flow(fam, kappa, z, e, opt.fd_step, I);
                Vec<Complex> minus = short_flow(fam, kappa, z, e, -opt.fd_step, I);
                fd[m] = arrfrob::scale(Complex(0.5 / opt.fd_step), sub(plus, minus));
                ex[m] = ctx.i_dot(kappa, z, e, I);
                for (const auto& c : ex[m]) mag = std::max(mag, std::abs(c));
            }
            for (int i = 0; i < n; ++i)
                for (int m = 0; m < n; ++m) {
                    int ri = fam.basis().find({i}), rm = fam.basis().find({m});
                    double ai = fam.a()[i].get_d(), am = fam.a()[m].get_d();
                    err = std::max(err, std::abs(ai * fd[m][ri] - am * fd[i][rm]) / mag);
                    pointwise = std::max(pointwise, std::abs(ai * ex[m][ri] - am * ex[i][rm]) / mag);
                }
        }
        out.push_back(numeric_check("periods.k1_closed_fd", "d_m(a_i I^i) = d_i(a_m I^m) by finite differences", err,
                                    opt.twisted_tol));
        out.push_back(numeric_check("periods.k1_closed", "d_m(a_i I^i) = d_i(a_m I^m) via dI = (1/kappa) K I", pointwise,
                                    1e-9));
    }
    return out;
}

Checks twisted_exactness(const WAlgebra& alg, const GmTrajectory& tr, const Path& path, double tol) {
    const Family& fam = alg.family();
    PeriodContext ctx(alg);
    Complex factor = twisted_factor(fam, tr.kappa);
    int n = fam.n();
    double err = 0, fd_err = 0;
    size_t stride = std::max<size_t>(1, tr.s.size() / 10);
    const double h = 1e-3;
    for (size_t idx = 0; idx < tr.s.size(); ++idx) {
        const auto& z = tr.z[idx];
        const auto& I = tr.I[idx];
        auto vel = sample_velocity(path, tr.s[idx]);
        Complex rhs = 0;
        for (int j = 0; j < n; ++j)
            if (vel[j] != Complex(0)) rhs += vel[j] * contravariant_pairing(fam, I, ctx.alpha_generator(j, z));
        rhs *= factor;
        Complex lhs = contravariant_pairing(fam, ctx.i_dot(tr.kappa, z, vel, I), ctx.q_at(z)) +
                      contravariant_pairing(fam, I, ctx.q_dot(z, vel));
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        err = std::max(err, std::abs(lhs - rhs) / scale);
        if (idx % stride == 0) {
            auto at = [&](double step) {
                std::vector<Complex> zz = z;
                for (int i = 0; i < n; ++i) zz[i] += step * vel[i];
                return contravariant_pairing(fam, short_flow(fam, tr.kappa, z, vel, step, I), ctx.q_at(zz));
            };
            Complex fd = (at(h) - at(-h)) / (2 * h);
            fd_err = std::max(fd_err, std::abs(fd - rhs) / scale);
        }
    }
    Checks out;
    out.push_back(numeric_check("periods.twisted", "d S(I, q) = (1/kappa + k/|a|) S(I, alpha beta d)", err, tol));
    out.push_back(numeric_check("periods.twisted_fd", "d S(I, q) = (1/kappa + k/|a|) S(I, alpha beta d) by finite differences",
                                fd_err, tol));
    return out;
}

}  // namespace arrfrob
