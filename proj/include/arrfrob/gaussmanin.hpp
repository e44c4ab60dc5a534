#ifndef ARRFROB_GAUSSMANIN_HPP
#define ARRFROB_GAUSSMANIN_HPP

#include "arrfrob/osflag.hpp"
#include "arrfrob/report.hpp"

#include <functional>

namespace arrfrob {

Matrix<Rational> l_c_matrix(const Family& fam, const Circuit& c);

// Caches the circuit operators L_C of a family.
class GmSystem {
public:
    explicit GmSystem(const Family& fam);

    const Family& family() const { return fam_; }
    const std::vector<Matrix<Rational>>& l_matrices() const { return l_; }

    template <class S> Matrix<S> k_operator(int j, const std::vector<S>& z) const {
        int d = fam_.basis().size();
        Matrix<S> out(d, d);
        const auto& cs = fam_.circuits();
        for (size_t c = 0; c < cs.size(); ++c) {
            Rational lam = cs[c].lambda_at(j);
            if (sgn(lam) == 0) continue;
            S f = f_C_value(cs[c], z);
            if (is_zero(f)) throw DiscriminantError("base point lies on the discriminant hyperplane of circuit " + subset_label(cs[c].indices));
            out = out + (from_rational<S>(lam) / f) * convert<S>(l_[c]);
        }
        return out;
    }

    // Closed-form derivative d K_j / d z_i = -sum_C lambda_j lambda_i / f_C^2 L_C.
    Matrix<Rational> k_derivative(int j, int i, const std::vector<Rational>& z) const;

private:
    const Family& fam_;
    std::vector<Matrix<Rational>> l_;
};

template <class S> Matrix<S> k_operator(const Family& fam, int j, const std::vector<S>& z) {
    return GmSystem(fam).k_operator(j, z);
}

Checks check_symmetry_and_invariance(const Family& fam, const std::vector<Rational>& z);
Checks check_flatness(const Family& fam, const std::vector<Rational>& z);
Checks check_conformal_block(const Family& fam, const std::vector<Rational>& z, int anchor = -1);

// d^r {1} / dz_{m_1}..dz_{m_r}: symbolic route, asserted equal to the algebra route.
FlagVector derivative_sections(const Family& fam, const std::vector<Rational>& z, const Subset& ms, int anchor = -1);

// Piecewise-linear path through complex vertices; s runs over [0, vertices-1].
struct Path {
    std::vector<std::vector<Complex>> vertices;
    std::vector<Complex> at(double s) const;
    std::vector<Complex> velocity(double s) const;
    double length() const { return static_cast<double>(vertices.size()) - 1.0; }
};

struct FlowOptions {
    double tol = 1e-10;
    double guard = 1e-6;
    int samples_per_segment = 1;
    int max_steps = 2000000;
};

struct GmTrajectory {
    Complex kappa;
    std::vector<double> s;
    std::vector<std::vector<Complex>> z;
    std::vector<Vec<Complex>> I;  // coordinates in the standard basis of V
    int steps = 0;
};

struct FlowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GmTrajectory flow_flat_section(const Family& fam, Complex kappa, const Path& path, const Vec<Complex>& I0,
                               const FlowOptions& opt = {});
// Right-hand side of dI/ds at parameter s.
Vec<Complex> flow_rhs(const GmSystem& gm, Complex kappa, const Path& path, double s, const Vec<Complex>& I);
nlohmann::json trajectory_json_lines(const GmTrajectory& tr);

}  // namespace arrfrob

#endif
