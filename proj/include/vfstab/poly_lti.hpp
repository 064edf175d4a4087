#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace vfstab {

using Complex = std::complex<double>;

/// Real polynomial in s with coefficients stored in ascending powers.
///
/// Trailing zero coefficients are trimmed on construction, so `degree()` is
/// well defined. The zero polynomial is the empty coefficient list and reports
/// degree -1.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> ascending);
    explicit Polynomial(std::vector<double> ascending);

    /// Build from coefficients listed highest power first.
    static Polynomial from_descending(std::vector<double> descending);

    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    double leading() const;
    double coeff(int power) const;
    double max_abs_coeff() const noexcept;

    Complex operator()(Complex s) const;
    double operator()(double s) const;

    std::vector<double> descending() const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();

    std::vector<double> coeffs_;
};

Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
Polynomial poly_add(const Polynomial& p, const Polynomial& q);
Polynomial poly_scale(const Polynomial& p, double k);

/// Roots via eigenvalues of the companion matrix.
std::vector<Complex> poly_roots(const Polynomial& p);

/// Ratio num/den of real polynomials, held with a monic denominator.
class RationalTF {
public:
    RationalTF(Polynomial num, Polynomial den);

    static RationalTF constant(double k);

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }

    bool is_proper() const noexcept { return num_.degree() <= den_.degree(); }

    friend bool operator==(const RationalTF&, const RationalTF&) = default;

private:
    Polynomial num_;
    Polynomial den_;
};

/// Scale num and den so the denominator is monic. Idempotent.
RationalTF canonicalize(const RationalTF& g);

RationalTF tf_series(const RationalTF& g1, const RationalTF& g2);
RationalTF tf_scale(const RationalTF& g, double k);

/// Negative feedback closure G/(1+GH). No pole-zero cancellation is attempted.
RationalTF tf_feedback(const RationalTF& g, const RationalTF& h);

/// G(jw). Throws PoleEvaluationError if |den(jw)| < 1e-12 * max|den coeff|.
Complex tf_freq_response(const RationalTF& g, double omega);

/// Single-input single-output continuous-time realization.
struct StateSpace {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    double D = 0.0;

    int order() const noexcept { return static_cast<int>(A.rows()); }

    /// C (jw I - A)^-1 B + D
    Complex freq_response(double omega) const;
};

/// Controllable canonical realization. Biproper inputs produce a nonzero D by
/// one step of polynomial division. Throws std::invalid_argument if improper.
StateSpace tf_to_statespace(const RationalTF& g);

}  // namespace vfstab
