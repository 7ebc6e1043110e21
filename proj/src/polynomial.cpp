#include "grouplab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "grouplab/sampling.hpp"
#include "grouplab/young.hpp"
#include "json.hpp"

namespace grouplab {

MonomialIndex::MonomialIndex(std::initializer_list<MonomialFactor> factors)
    : MonomialIndex(std::vector<MonomialFactor>(factors)) {}

MonomialIndex::MonomialIndex(std::vector<MonomialFactor> factors) : factors_(std::move(factors)) {
    for (const auto& f : factors_)
        if (f.row < 1 || f.col < 1) throw InvalidShapeError("MonomialIndex: positions are 1-based");
    std::sort(factors_.begin(), factors_.end());
}

MonomialIndex MonomialIndex::row_form(const std::vector<int>& cols) {
    std::vector<MonomialFactor> fs;
    fs.reserve(cols.size());
    for (size_t h = 0; h < cols.size(); ++h)
        fs.push_back({static_cast<int>(h) + 1, cols[h], Part::Real});
    return MonomialIndex(std::move(fs));
}

bool MonomialIndex::is_column_comfortable(int n) const {
    const int half = n / 2;
    std::set<int> cols;
    for (const auto& f : factors_) {
        if (f.row > half || f.col > half) return false;
        if (!cols.insert(f.col).second) return false;
    }
    return true;
}

bool MonomialIndex::is_row_comfortable(int n) const {
    const int half = n / 2;
    std::set<int> rows;
    for (const auto& f : factors_) {
        if (f.row > half || f.col > half) return false;
        if (!rows.insert(f.row).second) return false;
    }
    return true;
}

bool MonomialIndex::is_comfortable(int n) const {
    return is_row_comfortable(n) && is_column_comfortable(n);
}

std::string MonomialIndex::to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(factors_[i].row) + "," + std::to_string(factors_[i].col);
        if (factors_[i].part != Part::Real) {
            const char* names[] = {"re", "i", "j", "k"};
            s += ";";
            s += names[static_cast<int>(factors_[i].part)];
        }
        s += ")";
    }
    return s + "}";
}

double lambda_S(const MonomialIndex& s, int n) {
    if (!s.is_column_comfortable(n))
        throw NotComfortableError("lambda_S: index is not column comfortable for this n");
    const int d = s.degree();
    double v = std::pow(static_cast<double>(n), -0.5 * d);
    for (const auto& f : s.factors()) v *= expected_chi_norm(n - f.col + 1);
    return v;
}

double hs_normalizer(Field f, int degree) {
    switch (f) {
        case Field::Real: return 1.0;
        case Field::Complex: return std::pow(std::sqrt(2.0), degree);
        case Field::Quaternion: return std::pow(2.0, degree);
    }
    return 1.0;
}

GroupPolynomial GroupPolynomial::constant(double c, int ambient_n, Field field) {
    GroupPolynomial p(ambient_n, field);
    p.add_term(MonomialIndex{}, c);
    return p;
}

GroupPolynomial GroupPolynomial::monomial(const MonomialIndex& m, double coeff, int ambient_n,
                                          Field field) {
    GroupPolynomial p(ambient_n, field);
    p.add_term(m, coeff);
    return p;
}

int GroupPolynomial::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

void GroupPolynomial::add_term(const MonomialIndex& m, double coeff) {
    for (const auto& f : m.factors()) {
        if (f.row > n_ || f.col > n_)
            throw InvalidShapeError("add_term: position outside the ambient size");
        if (field_ == Field::Real && f.part != Part::Real)
            throw FieldMismatchError("add_term: part tag on a real-field polynomial");
        if (field_ == Field::Complex && (f.part == Part::J || f.part == Part::K))
            throw FieldMismatchError("add_term: quaternion part tag on a complex-field polynomial");
    }
    const double v = (terms_[m] += coeff);
    if (v == 0.0) terms_.erase(m);
}

double GroupPolynomial::coefficient(const MonomialIndex& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
}

GroupPolynomial GroupPolynomial::operator+(const GroupPolynomial& o) const {
    GroupPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

GroupPolynomial GroupPolynomial::operator-(const GroupPolynomial& o) const {
    GroupPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

GroupPolynomial GroupPolynomial::scaled(double s) const {
    GroupPolynomial r(n_, field_);
    if (s == 0.0) return r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
}

std::string GroupPolynomial::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    const char* names[] = {"re", "i", "j", "k"};
    for (const auto& [m, c] : terms_) {
        nlohmann::json positions = nlohmann::json::array();
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& f : m.factors()) {
            positions.push_back({f.row, f.col});
            parts.push_back(names[static_cast<int>(f.part)]);
        }
        arr.push_back({{"positions", positions}, {"parts", parts}, {"coeff", c}});
    }
    nlohmann::json j{{"n", n_}, {"field", to_string(field_)}, {"terms", arr}};
    return j.dump();
}

GroupPolynomial comfortable_junta(const Partition& lambda, int n) {
    const long d = lambda.sum();
    if (2 * d >= n) throw InvalidShapeError("comfortable_junta: need |lambda| < n/2");
    const SignedPermSum c = young_symmetrizer(lambda);
    GroupPolynomial p(n, Field::Real);
    for (const auto& [perm, sign] : c.terms) {
        std::vector<MonomialFactor> fs;
        fs.reserve(perm.size());
        for (size_t i = 0; i < perm.size(); ++i)
            fs.push_back({static_cast<int>(i) + 1, perm[i] + 1, Part::Real});
        p.add_term(MonomialIndex(std::move(fs)), sign);
    }
    return p;
}

namespace {

GroupPolynomial translate(const GroupPolynomial& p, const RealMatrix& m, bool right) {
    if (p.field() != Field::Real)
        throw FieldMismatchError("translate: implemented for real-field polynomials");
    if (p.degree() > 6) throw TooLargeError("translate: degree > 6");
    if (m.rows() < p.ambient_n() || m.cols() < p.ambient_n())
        throw InvalidShapeError("translate: matrix smaller than ambient size");
    const int n = p.ambient_n();
    GroupPolynomial out(n, Field::Real);
    for (const auto& [mono, coeff] : p.terms()) {
        const auto& fs = mono.factors();
        const int d = static_cast<int>(fs.size());
        std::vector<int> choice(static_cast<size_t>(d), 1);
        std::vector<MonomialFactor> acc(fs.begin(), fs.end());
        // iterate k_1..k_d over [n]^d
        while (true) {
            double c = coeff;
            for (int t = 0; t < d; ++t) {
                const int k = choice[static_cast<size_t>(t)];
                if (right) {
                    // x_{r,c} -> sum_k x_{r,k} V_{k,c}
                    c *= m(k - 1, fs[static_cast<size_t>(t)].col - 1);
                    acc[static_cast<size_t>(t)] = {fs[static_cast<size_t>(t)].row, k, Part::Real};
                } else {
                    // x_{r,c} -> sum_k U_{r,k} x_{k,c}
                    c *= m(fs[static_cast<size_t>(t)].row - 1, k - 1);
                    acc[static_cast<size_t>(t)] = {k, fs[static_cast<size_t>(t)].col, Part::Real};
                }
            }
            if (c != 0.0) out.add_term(MonomialIndex(acc), c);
            int t = d - 1;
            while (t >= 0 && choice[static_cast<size_t>(t)] == n) {
                choice[static_cast<size_t>(t)] = 1;
                --t;
            }
            if (t < 0) break;
            ++choice[static_cast<size_t>(t)];
        }
    }
    return out;
}

}  // namespace

GroupPolynomial right_translate(const GroupPolynomial& p, const RealMatrix& v) {
    return translate(p, v, true);
}

GroupPolynomial left_translate(const GroupPolynomial& p, const RealMatrix& u) {
    return translate(p, u, false);
}

}  // namespace grouplab
