#include "arrfrob/critalg.hpp"
#include "arrfrob/poly.hpp"

#include <array>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace arrfrob {

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int expected_critical_count(const Family& fam) { return static_cast<int>(binomial(fam.n() - 1, fam.k())); }

std::vector<Complex> f_values(const Family& fam, const std::vector<Complex>& z, const std::vector<Complex>& t) {
    std::vector<Complex> f(fam.n());
    for (int j = 0; j < fam.n(); ++j) {
        f[j] = z[j];
        for (int m = 0; m < fam.k(); ++m) f[j] += fam.b()[j][m].get_d() * t[m];
    }
    return f;
}

std::vector<Complex> master_gradient(const Family& fam, const std::vector<Complex>& z, const std::vector<Complex>& t) {
    auto f = f_values(fam, z, t);
    std::vector<Complex> g(fam.k(), 0.0);
    for (int j = 0; j < fam.n(); ++j)
        for (int m = 0; m < fam.k(); ++m) g[m] += fam.a()[j].get_d() * fam.b()[j][m].get_d() / f[j];
    return g;
}

Matrix<Complex> master_hessian(const Family& fam, const std::vector<Complex>& z, const std::vector<Complex>& t) {
    auto f = f_values(fam, z, t);
    int k = fam.k();
    Matrix<Complex> h(k, k);
    for (int j = 0; j < fam.n(); ++j) {
        Complex w = -fam.a()[j].get_d() / (f[j] * f[j]);
        for (int m = 0; m < k; ++m)
            for (int l = 0; l < k; ++l) h(m, l) += w * fam.b()[j][m].get_d() * fam.b()[j][l].get_d();
    }
    return h;
}

namespace {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

double residual_of(const std::vector<Complex>& g) {
    double r = 0;
    for (const auto& x : g) r = std::max(r, std::abs(x));
    return r;
}

// Roots of a polynomial with complex coefficients (ascending degree) via the companion matrix.
std::vector<Complex> companion_roots(std::vector<Complex> c) {
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    int d = static_cast<int>(c.size()) - 1;
    if (d < 1) return {};
    CMat comp = CMat::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<CMat> es(comp, false);
    std::vector<Complex> roots;
    for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

std::vector<Complex> to_complex_coeffs(const UPoly<Rational>& p) {
    std::vector<Complex> c;
    for (const auto& x : p.c) c.push_back(x.get_d());
    return c;
}

Complex horner(const std::vector<Complex>& c, Complex x) {
    Complex r = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) r = r * x + c[i];
    return r;
}

void polish_root(const std::vector<Complex>& c, Complex& x) {
    std::vector<Complex> dc;
    for (size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<double>(i));
    for (int it = 0; it < 30; ++it) {
        Complex d = horner(dc, x);
        if (std::abs(d) == 0.0) return;
        Complex step = horner(c, x) / d;
        x -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(x))) return;
    }
}

bool newton_refine(const Family& fam, const std::vector<Complex>& z, std::vector<Complex>& t, double& residual) {
    int k = fam.k();
    auto g = master_gradient(fam, z, t);
    residual = residual_of(g);
    for (int it = 0; it < 50 && residual > 1e-12; ++it) {
        auto h = master_hessian(fam, z, t);
        CMat H(k, k);
        CVec G(k);
        for (int i = 0; i < k; ++i) {
            G(i) = g[i];
            for (int j = 0; j < k; ++j) H(i, j) = h(i, j);
        }
        CVec step = H.fullPivLu().solve(G);
        if (!step.allFinite()) return false;
        double damping = 1.0;
        bool improved = false;
        for (int tries = 0; tries < 12; ++tries) {
            std::vector<Complex> cand = t;
            for (int i = 0; i < k; ++i) cand[i] -= damping * step(i);
            auto gc = master_gradient(fam, z, cand);
            double rc = residual_of(gc);
            if (std::isfinite(rc) && rc < residual) {
                t = cand;
                g = gc;
                residual = rc;
                improved = true;
                break;
            }
            damping *= 0.5;
        }
        if (!improved) break;
    }
    return std::isfinite(residual);
}

Complex hessian_det(const Family& fam, const std::vector<Complex>& z, const std::vector<Complex>& t) {
    auto h = master_hessian(fam, z, t);
    return determinant(h);
}

// Bivariate polynomial: index = power of the second variable, entry = polynomial in the first.
using BiPoly = std::vector<UPoly<Rational>>;

BiPoly bi_mul(const BiPoly& a, const BiPoly& b) {
    BiPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

void bi_trim(BiPoly& p) {
    while (!p.empty() && p.back().degree() < 0) p.pop_back();
}

UPoly<Rational> resultant(const BiPoly& p, const BiPoly& q) {
    int dp = static_cast<int>(p.size()) - 1, dq = static_cast<int>(q.size()) - 1;
    int N = dp + dq;
    std::vector<std::vector<UPoly<Rational>>> m(N, std::vector<UPoly<Rational>>(N));
    for (int r = 0; r < dq; ++r)
        for (int i = 0; i <= dp; ++i) m[r][r + i] = p[dp - i];
    for (int r = 0; r < dp; ++r)
        for (int i = 0; i <= dq; ++i) m[dq + r][r + i] = q[dq - i];
    UPoly<Rational> prev{{Rational(1)}};
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (m[k][k].degree() < 0) {
            int swap_row = -1;
            for (int i = k + 1; i < N; ++i)
                if (m[i][k].degree() >= 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return UPoly<Rational>{};
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i)
            for (int j = k + 1; j < N; ++j) m[i][j] = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
        prev = m[k][k];
    }
    UPoly<Rational> det = m[N - 1][N - 1];
    if (sign < 0)
        for (auto& x : det.c) x = -x;
    return det;
}

std::vector<std::vector<Complex>> candidates_k1(const Family& fam, const std::vector<Rational>& z) {
    UPoly<Rational> h;
    for (int j = 0; j < fam.n(); ++j) {
        UPoly<Rational> term{{fam.a()[j] * fam.b()[j][0]}};
        for (int l = 0; l < fam.n(); ++l)
            if (l != j) term = term * UPoly<Rational>{{z[l], fam.b()[l][0]}};
        h = h + term;
    }
    auto c = to_complex_coeffs(h);
    std::vector<std::vector<Complex>> out;
    for (auto r : companion_roots(c)) {
        polish_root(c, r);
        out.push_back({r});
    }
    return out;
}

std::vector<std::vector<Complex>> candidates_k2(const Family& fam, const std::vector<Rational>& z) {
    const Rational shear[2][2] = {{Rational(1), Rational(2, 7)}, {Rational(3, 11), Rational(1)}};
    int n = fam.n();
    std::vector<std::array<Rational, 2>> bs(n);
    for (int j = 0; j < n; ++j)
        for (int c = 0; c < 2; ++c) bs[j][c] = fam.b()[j][0] * shear[0][c] + fam.b()[j][1] * shear[1][c];
    std::array<BiPoly, 2> H;
    for (int i = 0; i < 2; ++i) {
        BiPoly total;
        for (int j = 0; j < n; ++j) {
            BiPoly term{UPoly<Rational>{{fam.a()[j] * bs[j][i]}}};
            for (int l = 0; l < n; ++l)
                if (l != j) term = bi_mul(term, BiPoly{UPoly<Rational>{{z[l], bs[l][0]}}, UPoly<Rational>{{bs[l][1]}}});
            if (total.size() < term.size()) total.resize(term.size());
            for (size_t p = 0; p < term.size(); ++p) total[p] = total[p] + term[p];
        }
        bi_trim(total);
        H[i] = total;
    }
    std::vector<std::vector<Complex>> out;
    if (H[0].size() < 2 || H[1].size() < 2) return out;
    auto res = resultant(H[0], H[1]);
    // Each vertex f_l = f_m = 0 is a simple common zero of H[0], H[1]; divide its s1-value out once.
    // A critical point may share its s1-value with a vertex, so the factor is not removed repeatedly.
    for (int l = 0; l < n; ++l)
        for (int m = l + 1; m < n; ++m) {
            Rational det = bs[l][0] * bs[m][1] - bs[l][1] * bs[m][0];
            if (sgn(det) == 0) continue;
            Rational s1 = (-z[l] * bs[m][1] + z[m] * bs[l][1]) / det;
            Rational v = 0;
            for (int i = res.degree(); i >= 0; --i) v = v * s1 + res.c[i];
            if (res.degree() >= 1 && sgn(v) == 0) res = exact_divide(res, UPoly<Rational>{{-s1, Rational(1)}});
        }
    auto rc = to_complex_coeffs(res);
    for (auto s1 : companion_roots(rc)) {
        polish_root(rc, s1);
        std::vector<Complex> inner;
        for (const auto& coef : H[0]) inner.push_back(horner(to_complex_coeffs(coef), s1));
        for (auto s2 : companion_roots(inner)) {
            polish_root(inner, s2);
            Complex t1 = shear[0][0].get_d() * s1 + shear[0][1].get_d() * s2;
            Complex t2 = shear[1][0].get_d() * s1 + shear[1][1].get_d() * s2;
            out.push_back({t1, t2});
        }
    }
    return out;
}

}  // namespace

CriticalSet solve_critical(const Family& fam, const std::vector<Rational>& z) {
    if (fam.k() > 2) throw std::invalid_argument("numeric critical solving is available for k <= 2 only");
    CriticalSet cs;
    cs.expected = expected_critical_count(fam);
    auto zc = convert<Complex>(z);
    auto cands = fam.k() == 1 ? candidates_k1(fam, z) : candidates_k2(fam, z);
    double zscale = 1.0;
    for (const auto& x : zc) zscale = std::max(zscale, std::abs(x));
    for (auto t : cands) {
        bool finite = true;
        for (const auto& x : t) finite = finite && std::isfinite(x.real()) && std::isfinite(x.imag());
        if (!finite) continue;
        double residual = 0;
        auto f0 = f_values(fam, zc, t);
        bool on_plane = false;
        for (const auto& x : f0) on_plane = on_plane || std::abs(x) < 1e-8 * zscale;
        if (on_plane) continue;
        const auto start = t;
        if (!newton_refine(fam, zc, t, residual)) continue;
        double drift = 0, tmag = 1.0;
        for (int i = 0; i < fam.k(); ++i) {
            drift = std::max(drift, std::abs(t[i] - start[i]));
            tmag = std::max(tmag, std::abs(start[i]));
        }
        if (drift > 1e-3 * tmag) continue;
        auto f = f_values(fam, zc, t);
        double fmin = 1e300, terms = 0;
        for (int j = 0; j < fam.n(); ++j) {
            fmin = std::min(fmin, std::abs(f[j]));
            for (int m = 0; m < fam.k(); ++m) terms += std::abs(fam.a()[j].get_d() * fam.b()[j][m].get_d() / f[j]);
        }
        if (fmin < 1e-8 * zscale || residual > 1e-10 * std::max(1.0, terms)) continue;
        bool dup = false;
        for (const auto& p : cs.points) {
            double dist = 0;
            for (int i = 0; i < fam.k(); ++i) dist = std::max(dist, std::abs(p.t[i] - t[i]));
            dup = dup || dist < 1e-8 * (1.0 + std::abs(t[0]));
        }
        if (dup) continue;
        cs.points.push_back({t, hessian_det(fam, zc, t), residual});
    }
    std::sort(cs.points.begin(), cs.points.end(), [](const CriticalPoint& x, const CriticalPoint& y) {
        for (size_t i = 0; i < x.t.size(); ++i) {
            if (x.t[i].real() != y.t[i].real()) return x.t[i].real() < y.t[i].real();
            if (x.t[i].imag() != y.t[i].imag()) return x.t[i].imag() < y.t[i].imag();
        }
        return false;
    });
    for (const auto& p : cs.points)
        if (std::abs(p.hess) < 1e-10) cs.degenerate = true;
    if (cs.degenerate)
        cs.diagnostic = "degenerate critical point (|Hess| < 1e-10)";
    else if (static_cast<int>(cs.points.size()) != cs.expected)
        cs.diagnostic = "degenerate critical set: found " + std::to_string(cs.points.size()) + " points, expected " +
                        std::to_string(cs.expected);
    return cs;
}

Complex residue_pairing_analytic(const CriticalSet& cs, const std::vector<Complex>& g, const std::vector<Complex>& h) {
    if (cs.degenerate) throw std::invalid_argument("residue pairing needs nondegenerate critical points");
    Complex total = 0;
    for (size_t p = 0; p < cs.points.size(); ++p) total += g[p] * h[p] / cs.points[p].hess;
    return total;
}

}  // namespace arrfrob
