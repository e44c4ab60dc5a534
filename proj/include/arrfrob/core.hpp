#ifndef ARRFROB_CORE_HPP
#define ARRFROB_CORE_HPP

#include "arrfrob/matrix.hpp"
#include "arrfrob/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace arrfrob {

// Indices are 0-based internally and 1-based in every external document.
using Subset = std::vector<int>;

struct DiscriminantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sorts v in place; returns the permutation sign, or 0 if v has a repeated entry.
int sort_with_sign(Subset& v);
std::vector<Subset> k_subsets(int n, int k);
std::string subset_label(const Subset& s);

struct Circuit {
    Subset indices;
    std::vector<Rational> lambda;

    Rational lambda_at(int j) const;
};

template <class S> S f_C_value(const Circuit& c, const std::vector<S>& z) {
    S total = from_rational<S>(Rational(0));
    for (size_t m = 0; m < c.indices.size(); ++m) total += from_rational<S>(c.lambda[m]) * z[c.indices[m]];
    return total;
}

class SubsetIndex {
public:
    SubsetIndex() = default;
    explicit SubsetIndex(std::vector<Subset> sorted_items);

    int size() const { return static_cast<int>(items_.size()); }
    const Subset& at(int i) const { return items_[i]; }
    const std::vector<Subset>& items() const { return items_; }
    // Position of a sorted tuple, -1 if absent.
    int find(const Subset& sorted) const;

private:
    std::vector<Subset> items_;
    std::map<Subset, int> pos_;
};

class Family {
public:
    Family(int k, std::vector<std::vector<Rational>> b, std::vector<Rational> a);

    int k() const { return k_; }
    int n() const { return n_; }
    const std::vector<std::vector<Rational>>& b() const { return b_; }
    const std::vector<Rational>& a() const { return a_; }
    const Rational& abs_a() const { return abs_a_; }
    bool generic() const { return generic_; }
    const std::vector<Circuit>& circuits() const { return circuits_; }
    // Independent sorted k-subsets: the standard basis F_T of V.
    const SubsetIndex& basis() const { return basis_; }
    // Circuits whose weight sum vanishes; reported, not rejected.
    const std::vector<Subset>& zero_weight_circuits() const { return zero_weight_circuits_; }

    // Determinant of the rows b_{idx[0]},...,b_{idx[k-1]} in the given order.
    Rational minor(const Subset& idx) const;
    Rational weight_product(const Subset& idx) const;

private:
    int k_, n_;
    std::vector<std::vector<Rational>> b_;
    std::vector<Rational> a_;
    Rational abs_a_;
    bool generic_ = true;
    std::map<Subset, Rational> minors_;
    std::vector<Circuit> circuits_;
    SubsetIndex basis_;
    std::vector<Subset> zero_weight_circuits_;
};

struct LoadedConfig {
    Family family;
    std::optional<std::vector<Rational>> z;
};

LoadedConfig load_family(const nlohmann::json& doc);
LoadedConfig load_family_file(const std::string& path);

const std::vector<Circuit>& circuits(const Family& fam);
Rational minor_det(const Family& fam, const Subset& idx);

template <class S> bool is_good_fiber(const Family& fam, const std::vector<S>& z) {
    for (const auto& c : fam.circuits())
        if (is_zero(f_C_value(c, z))) return false;
    return true;
}

template <class S> double min_circuit_distance(const Family& fam, const std::vector<S>& z) {
    double m = 1e300;
    for (const auto& c : fam.circuits()) m = std::min(m, magnitude(f_C_value(c, z)));
    return m;
}

std::vector<Rational> sample_good_point(const Family& fam, std::uint64_t seed, int budget = 1000);

nlohmann::json rational_vector_json(const std::vector<Rational>& v);

}  // namespace arrfrob

#endif
