#include "arrfrob/core.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace arrfrob {

int sort_with_sign(Subset& v) {
    int sign = 1;
    for (size_t i = 1; i < v.size(); ++i)
        for (size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
            if (v[j - 1] == v[j]) return 0;
            std::swap(v[j - 1], v[j]);
            sign = -sign;
        }
    return sign;
}

std::vector<Subset> k_subsets(int n, int k) {
    std::vector<Subset> out;
    if (k < 0 || k > n) return out;
    Subset cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::string subset_label(const Subset& s) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
    os << "}";
    return os.str();
}

Rational Circuit::lambda_at(int j) const {
    for (size_t m = 0; m < indices.size(); ++m)
        if (indices[m] == j) return lambda[m];
    return Rational(0);
}

SubsetIndex::SubsetIndex(std::vector<Subset> sorted_items) : items_(std::move(sorted_items)) {
    std::sort(items_.begin(), items_.end());
    for (int i = 0; i < size(); ++i) pos_[items_[i]] = i;
}

int SubsetIndex::find(const Subset& sorted) const {
    auto it = pos_.find(sorted);
    return it == pos_.end() ? -1 : it->second;
}

namespace {

Matrix<Rational> rows_matrix(const std::vector<std::vector<Rational>>& b, const Subset& idx, int k) {
    Matrix<Rational> m(static_cast<int>(idx.size()), k);
    for (size_t r = 0; r < idx.size(); ++r)
        for (int c = 0; c < k; ++c) m(static_cast<int>(r), c) = b[idx[r]][c];
    return m;
}

}  // namespace

Family::Family(int k, std::vector<std::vector<Rational>> b, std::vector<Rational> a)
    : k_(k), n_(static_cast<int>(b.size())), b_(std::move(b)), a_(std::move(a)) {
    if (k_ < 1) throw ConfigError("k must be a positive integer");
    if (n_ <= k_) throw ConfigError("need n > k hyperplanes");
    if (static_cast<int>(a_.size()) != n_) throw ConfigError("weights must have length n");
    for (int j = 0; j < n_; ++j) {
        if (static_cast<int>(b_[j].size()) != k_) throw ConfigError("row b_" + std::to_string(j + 1) + " must have k entries");
        bool nonzero = false;
        for (const auto& x : b_[j]) nonzero = nonzero || sgn(x) != 0;
        if (!nonzero) throw ConfigError("row b_" + std::to_string(j + 1) + " is zero");
        if (sgn(a_[j]) == 0) throw ConfigError("weight a_" + std::to_string(j + 1) + " is zero");
    }
    abs_a_ = 0;
    for (const auto& x : a_) abs_a_ += x;
    if (sgn(abs_a_) == 0) throw ConfigError("total weight |a| is zero");
    Subset all(n_);
    for (int j = 0; j < n_; ++j) all[j] = j;
    if (rank(rows_matrix(b_, all, k_)) != k_) throw ConfigError("arrangement is not essential (rank b < k)");

    std::vector<Subset> independent;
    for (const auto& s : k_subsets(n_, k_)) {
        Rational d = determinant(rows_matrix(b_, s, k_));
        minors_[s] = d;
        if (sgn(d) == 0)
            generic_ = false;
        else
            independent.push_back(s);
    }
    basis_ = SubsetIndex(independent);

    for (int r = 2; r <= k_ + 1; ++r)
        for (const auto& c : k_subsets(n_, r)) {
            Matrix<Rational> m = rows_matrix(b_, c, k_);
            if (rank(m) != r - 1) continue;
            bool minimal = true;
            for (int drop = 0; drop < r && minimal; ++drop) {
                Subset sub;
                for (int i = 0; i < r; ++i)
                    if (i != drop) sub.push_back(c[i]);
                minimal = rank(rows_matrix(b_, sub, k_)) == r - 1;
            }
            if (!minimal) continue;
            auto ns = nullspace(m.transpose());
            Circuit circ{c, ns.at(0)};
            Rational lead = circ.lambda[0];
            for (auto& x : circ.lambda) x /= lead;
            Rational weight = 0;
            for (int i : c) weight += a_[i];
            if (sgn(weight) == 0) zero_weight_circuits_.push_back(c);
            circuits_.push_back(std::move(circ));
        }
}

Rational Family::minor(const Subset& idx) const {
    Subset s = idx;
    int sign = sort_with_sign(s);
    if (sign == 0) return Rational(0);
    return sign * minors_.at(s);
}

Rational Family::weight_product(const Subset& idx) const {
    Rational p = 1;
    for (int i : idx) p *= a_[i];
    return p;
}

const std::vector<Circuit>& circuits(const Family& fam) { return fam.circuits(); }

Rational minor_det(const Family& fam, const Subset& idx) { return fam.minor(idx); }

namespace {

Rational json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw ConfigError("rationals must be given as \"p\" or \"p/q\" strings");
}

}  // namespace

LoadedConfig load_family(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (const char* key : {"k", "n", "b", "weights"})
        if (!doc.contains(key)) throw ConfigError(std::string("config missing key \"") + key + "\"");
    if (!doc["k"].is_number_integer() || !doc["n"].is_number_integer()) throw ConfigError("k and n must be integers");
    int k = doc["k"].get<int>();
    int n = doc["n"].get<int>();
    const auto& bj = doc["b"];
    if (!bj.is_array() || static_cast<int>(bj.size()) != n) throw ConfigError("b must be an array of n rows");
    std::vector<std::vector<Rational>> b;
    for (const auto& row : bj) {
        if (!row.is_array()) throw ConfigError("each row of b must be an array");
        std::vector<Rational> r;
        for (const auto& x : row) r.push_back(json_rational(x));
        b.push_back(r);
    }
    const auto& wj = doc["weights"];
    if (!wj.is_array()) throw ConfigError("weights must be an array");
    std::vector<Rational> a;
    for (const auto& x : wj) a.push_back(json_rational(x));
    if (static_cast<int>(a.size()) != n) throw ConfigError("weights must have length n");
    LoadedConfig cfg{Family(k, b, a), std::nullopt};
    if (doc.contains("z")) {
        std::vector<Rational> z;
        for (const auto& x : doc["z"]) z.push_back(json_rational(x));
        if (static_cast<int>(z.size()) != n) throw ConfigError("z must have length n");
        cfg.z = z;
    }
    return cfg;
}

LoadedConfig load_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return load_family(doc);
}

std::vector<Rational> sample_good_point(const Family& fam, std::uint64_t seed, int budget) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 4);
    for (int attempt = 0; attempt < budget; ++attempt) {
        std::vector<Rational> z(fam.n());
        for (auto& x : z) {
            x = Rational(num(rng), den(rng));
            x.canonicalize();
        }
        if (is_good_fiber(fam, z)) return z;
    }
    throw std::runtime_error("no good fiber found within the retry budget; family looks degenerate");
}

nlohmann::json rational_vector_json(const std::vector<Rational>& v) {
    auto out = nlohmann::json::array();
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

}  // namespace arrfrob
