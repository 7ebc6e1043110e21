#pragma once

#include <map>
#include <string>
#include <vector>

#include "grouplab/matrix.hpp"
#include "grouplab/partition.hpp"

namespace grouplab {

// One variable of a monomial: a matrix position, 1-based, with the scalar
// part it reads (Real for SO; Real/I for SU; all four parts for Sp).
struct MonomialFactor {
    int row = 1;
    int col = 1;
    Part part = Part::Real;

    auto operator<=>(const MonomialFactor&) const = default;
};

// Multiset of positions indexing a monomial in matrix entries.
class MonomialIndex {
public:
    MonomialIndex() = default;
    MonomialIndex(std::initializer_list<MonomialFactor> factors);
    explicit MonomialIndex(std::vector<MonomialFactor> factors);

    // Row-form monomial x_I = prod_h x_{h, cols[h]} (rows 1..d in order).
    static MonomialIndex row_form(const std::vector<int>& cols);

    int degree() const { return static_cast<int>(factors_.size()); }
    const std::vector<MonomialFactor>& factors() const { return factors_; }

    // Comfortability is relative to the ambient n: every position must lie in
    // the top-left floor(n/2) x floor(n/2) minor, with distinct columns /
    // distinct rows / both.
    bool is_column_comfortable(int n) const;
    bool is_row_comfortable(int n) const;
    bool is_comfortable(int n) const;

    std::string to_string() const;

    bool operator==(const MonomialIndex& o) const { return factors_ == o.factors_; }
    bool operator<(const MonomialIndex& o) const { return factors_ < o.factors_; }

private:
    std::vector<MonomialFactor> factors_;  // kept sorted; duplicates encode multiplicity
};

// Eigenvalue of the adjoint column Gram-Schmidt operator on the column
// comfortable monomial H_S:
//   lambda_S = n^{-d/2} * prod_k E||N(0, I_{n-j_k+1})||.
double lambda_S(const MonomialIndex& s, int n);

// Orthonormalizer for part-tagged monomials: parts have variance 1, 1/2, 1/4
// under the three Gaussian conventions, so H_S carries 1, sqrt(2)^d or 2^d.
double hs_normalizer(Field f, int degree);

// Finite linear combination of monomials over a declared field.
class GroupPolynomial {
public:
    GroupPolynomial() = default;
    GroupPolynomial(int ambient_n, Field field) : n_(ambient_n), field_(field) {}

    static GroupPolynomial constant(double c, int ambient_n, Field field = Field::Real);
    static GroupPolynomial monomial(const MonomialIndex& m, double coeff, int ambient_n,
                                    Field field = Field::Real);

    int ambient_n() const { return n_; }
    Field field() const { return field_; }
    int degree() const;
    size_t term_count() const { return terms_.size(); }
    const std::map<MonomialIndex, double>& terms() const { return terms_; }

    void add_term(const MonomialIndex& m, double coeff);
    double coefficient(const MonomialIndex& m) const;

    GroupPolynomial operator+(const GroupPolynomial& o) const;
    GroupPolynomial operator-(const GroupPolynomial& o) const;
    GroupPolynomial scaled(double s) const;

    template <typename T>
    double evaluate(const Matrix<T>& x) const;

    std::string to_json() const;

private:
    int n_ = 0;
    Field field_ = Field::Real;
    std::map<MonomialIndex, double> terms_;
};

// P_lambda: the comfortable |lambda|-junta read off the Young symmetrizer,
// with P_lambda(Id) = 1. Requires |lambda| <= 8 and |lambda| < n/2.
GroupPolynomial comfortable_junta(const Partition& lambda, int n);

// Exact expansions of f(XV) and f(UX) as polynomials in the entries of X.
// Degree capped at 6 (term count grows like n^degree).
GroupPolynomial right_translate(const GroupPolynomial& p, const RealMatrix& v);
GroupPolynomial left_translate(const GroupPolynomial& p, const RealMatrix& u);

template <typename T>
double GroupPolynomial::evaluate(const Matrix<T>& x) const {
    constexpr Field mat_field = std::is_same_v<T, double>              ? Field::Real
                                : std::is_same_v<T, std::complex<double>> ? Field::Complex
                                                                          : Field::Quaternion;
    if (mat_field != field_)
        throw FieldMismatchError("evaluate: polynomial field does not match matrix field");
    if (x.rows() < n_ || x.cols() < n_)
        throw InvalidShapeError("evaluate: matrix smaller than polynomial ambient size");
    double total = 0.0;
    for (const auto& [mono, coeff] : terms_) {
        double prod = 1.0;
        for (const MonomialFactor& f : mono.factors())
            prod *= part_of(x(f.row - 1, f.col - 1), f.part);
        total += coeff * prod;
    }
    return total;
}

}  // namespace grouplab
