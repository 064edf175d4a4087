#include "vfstab/poly_lti.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vfstab/errors.hpp"

namespace vfstab {

Polynomial::Polynomial(std::initializer_list<double> ascending) : coeffs_(ascending) { trim(); }

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) { trim(); }

Polynomial Polynomial::from_descending(std::vector<double> descending) {
    std::reverse(descending.begin(), descending.end());
    return Polynomial(std::move(descending));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0.0) {
        coeffs_.pop_back();
    }
}

double Polynomial::leading() const {
    if (coeffs_.empty()) {
        throw std::logic_error("leading coefficient of the zero polynomial");
    }
    return coeffs_.back();
}

double Polynomial::coeff(int power) const {
    if (power < 0 || power >= static_cast<int>(coeffs_.size())) {
        return 0.0;
    }
    return coeffs_[static_cast<std::size_t>(power)];
}

double Polynomial::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (double c : coeffs_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

Complex Polynomial::operator()(Complex s) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

double Polynomial::operator()(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * s + *it;
    }
    return acc;
}

std::vector<double> Polynomial::descending() const {
    return {coeffs_.rbegin(), coeffs_.rend()};
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) {
        return {};
    }
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return Polynomial(std::move(out));
}

Polynomial poly_add(const Polynomial& p, const Polynomial& q) {
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<double> out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return Polynomial(std::move(out));
}

Polynomial poly_scale(const Polynomial& p, double k) {
    std::vector<double> out = p.coeffs();
    for (double& c : out) c *= k;
    return Polynomial(std::move(out));
}

std::vector<Complex> poly_roots(const Polynomial& p) {
    const int n = p.degree();
    if (n < 1) {
        return {};
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = p.leading();
    for (int i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -p.coeff(i) / lead;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

RationalTF::RationalTF(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) {
        throw std::invalid_argument("transfer function denominator is the zero polynomial");
    }
    const double lead = den_.leading();
    if (lead != 1.0) {
        num_ = poly_scale(num_, 1.0 / lead);
        den_ = poly_scale(den_, 1.0 / lead);
    }
}

RationalTF RationalTF::constant(double k) { return {Polynomial{k}, Polynomial{1.0}}; }

RationalTF canonicalize(const RationalTF& g) { return {g.num(), g.den()}; }

RationalTF tf_series(const RationalTF& g1, const RationalTF& g2) {
    return {poly_mul(g1.num(), g2.num()), poly_mul(g1.den(), g2.den())};
}

RationalTF tf_scale(const RationalTF& g, double k) { return {poly_scale(g.num(), k), g.den()}; }

RationalTF tf_feedback(const RationalTF& g, const RationalTF& h) {
    Polynomial num = poly_mul(g.num(), h.den());
    Polynomial den = poly_add(poly_mul(g.den(), h.den()), poly_mul(g.num(), h.num()));
    if (den.is_zero()) {
        throw NumericalError("degenerate feedback loop: 1 + G*H is identically zero");
    }
    return {std::move(num), std::move(den)};
}

Complex tf_freq_response(const RationalTF& g, double omega) {
    if (omega < 0.0) {
        throw std::invalid_argument("frequency must be non-negative");
    }
    const Complex s{0.0, omega};
    const Complex den = g.den()(s);
    if (std::abs(den) < 1e-12 * g.den().max_abs_coeff()) {
        throw PoleEvaluationError("evaluation at a pole, omega = " + std::to_string(omega), omega);
    }
    return g.num()(s) / den;
}

Complex StateSpace::freq_response(double omega) const {
    const int n = order();
    if (n == 0) {
        return {D, 0.0};
    }
    Eigen::MatrixXcd m = -A.cast<Complex>();
    m.diagonal().array() += Complex{0.0, omega};
    Eigen::VectorXcd x = m.partialPivLu().solve(B.cast<Complex>());
    return (C.cast<Complex>() * x)(0) + D;
}

StateSpace tf_to_statespace(const RationalTF& g) {
    if (!g.is_proper()) {
        throw std::invalid_argument("cannot realize an improper transfer function");
    }
    const Polynomial& den = g.den();
    const int n = den.degree();

    StateSpace ss;
    std::vector<double> num = g.num().coeffs();
    num.resize(static_cast<std::size_t>(n) + 1, 0.0);
    ss.D = num[static_cast<std::size_t>(n)];
    // Strictly proper remainder num - D*den (den is monic).
    for (int i = 0; i < n; ++i) {
        num[static_cast<std::size_t>(i)] -= ss.D * den.coeff(i);
    }

    ss.A = Eigen::MatrixXd::Zero(n, n);
    ss.B = Eigen::VectorXd::Zero(n);
    ss.C = Eigen::RowVectorXd::Zero(n);
    for (int i = 0; i + 1 < n; ++i) {
        ss.A(i, i + 1) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        ss.A(n - 1, i) = -den.coeff(i);
        ss.C(i) = num[static_cast<std::size_t>(i)];
    }
    if (n > 0) {
        ss.B(n - 1) = 1.0;
    }
    return ss;
}

}  // namespace vfstab
