#ifndef ARRFROB_OSFLAG_HPP
#define ARRFROB_OSFLAG_HPP

#include "arrfrob/core.hpp"

namespace arrfrob {

// Flag vectors and covectors are dense coefficient vectors over fam.basis().
using FlagVector = Vec<Rational>;

// +-e_T for an arbitrary ordered tuple; zero if repeated or dependent.
FlagVector flag_basis_vector(const Family& fam, const Subset& tuple);

template <class S> S contravariant_pairing(const Family& fam, const Vec<S>& u, const Vec<S>& w) {
    S total = from_rational<S>(Rational(0));
    for (int i = 0; i < fam.basis().size(); ++i)
        total += from_rational<S>(fam.weight_product(fam.basis().at(i))) * u[i] * w[i];
    return total;
}

// Diagonal matrix of S on the standard basis.
Matrix<Rational> contravariant_form(const Family& fam);

struct SingularSubspace {
    Matrix<Rational> conditions;  // rows: sum_j a_j c_{j,T'} for (k-1)-subsets T'
    std::vector<FlagVector> basis;
    Matrix<Rational> gram;
    int dim() const { return static_cast<int>(basis.size()); }
    Matrix<Rational> basis_matrix(int dimV) const { return Matrix<Rational>::from_columns(basis, dimV); }
};

SingularSubspace singular_subspace(const Family& fam);

template <class S> double singular_residual(const SingularSubspace& sing, const Vec<S>& u) {
    return max_abs(convert<S>(sing.conditions) * u);
}

// The distinguished projection vectors; k = 1 uses the leading -F_j convention.
FlagVector v_vector(const Family& fam, const Subset& tuple);
Rational gram_v(const Family& fam, const Subset& t1, const Subset& t2);
FlagVector orthogonal_projection(const Family& fam, const SingularSubspace& sing, const FlagVector& u);

nlohmann::json flag_vector_json(const Family& fam, const FlagVector& v);

}  // namespace arrfrob

#endif
