#include "flatlab/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "flatlab/errors.hpp"
#include "flatlab/summation.hpp"

namespace flatlab {

CirclePolynomial::CirclePolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

CirclePolynomial::CirclePolynomial(std::initializer_list<Complex> coeffs) : coeffs_(coeffs) {
    trim();
}

CirclePolynomial CirclePolynomial::monomial(std::size_t exponent, Complex coefficient) {
    std::vector<Complex> c(exponent + 1, Complex{0.0});
    c[exponent] = coefficient;
    return CirclePolynomial(std::move(c));
}

void CirclePolynomial::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == Complex{0.0}) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Complex{0.0});
}

std::size_t CirclePolynomial::nonzero_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c != Complex{0.0}; }));
}

double CirclePolynomial::l2_norm_squared() const {
    std::vector<double> squares(coeffs_.size());
    std::transform(coeffs_.begin(), coeffs_.end(), squares.begin(),
                   [](Complex c) { return std::norm(c); });
    return pairwise_sum<double>(squares);
}

double CirclePolynomial::l2_norm() const { return std::sqrt(l2_norm_squared()); }

Complex CirclePolynomial::evaluate(Complex z) const noexcept {
    Complex acc{0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Complex CirclePolynomial::evaluate_at_angle(double theta) const noexcept {
    return evaluate(std::polar(1.0, theta));
}

CirclePolynomial CirclePolynomial::scaled(Complex factor) const {
    std::vector<Complex> c(coeffs_);
    for (auto& v : c) v *= factor;
    return CirclePolynomial(std::move(c));
}

CirclePolynomial CirclePolynomial::normalized() const {
    const double norm = l2_norm();
    if (norm == 0.0) throw DegenerateInputError("cannot normalize the zero polynomial");
    return scaled(1.0 / norm);
}

std::vector<double> CirclePolynomial::magnitudes() const {
    std::vector<double> m(coeffs_.size());
    std::transform(coeffs_.begin(), coeffs_.end(), m.begin(), [](Complex c) { return std::abs(c); });
    return m;
}

CirclePolynomial operator+(const CirclePolynomial& lhs, const CirclePolynomial& rhs) {
    std::vector<Complex> c(std::max(lhs.size(), rhs.size()));
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = lhs[j] + rhs[j];
    return CirclePolynomial(std::move(c));
}

CirclePolynomial operator-(const CirclePolynomial& p) { return p.scaled(-1.0); }

CirclePolynomial operator-(const CirclePolynomial& lhs, const CirclePolynomial& rhs) {
    std::vector<Complex> c(std::max(lhs.size(), rhs.size()));
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = lhs[j] - rhs[j];
    return CirclePolynomial(std::move(c));
}

CirclePolynomial multiply(const CirclePolynomial& p, const CirclePolynomial& q) {
    if (p.is_zero() || q.is_zero()) return CirclePolynomial{};
    const auto a = p.coeffs();
    const auto b = q.coeffs();
    // Riesz factors after power substitution are mostly zeros; convolve over
    // the supports only.
    std::vector<std::size_t> support_b;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] != Complex{0.0}) support_b.push_back(j);
    }
    std::vector<Complex> c(a.size() + b.size() - 1, Complex{0.0});
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Complex{0.0}) continue;
        for (std::size_t j : support_b) c[i + j] += a[i] * b[j];
    }
    return CirclePolynomial(std::move(c));
}

CirclePolynomial substitute_power(const CirclePolynomial& p, std::size_t power) {
    if (power == 0) throw ParameterError("substitute_power: N must be >= 1");
    if (power == 1) return p;
    std::vector<Complex> c(p.degree() * power + 1, Complex{0.0});
    for (std::size_t j = 0; j < p.size(); ++j) c[j * power] = p[j];
    return CirclePolynomial(std::move(c));
}

std::vector<Complex> autocorrelation_direct(const CirclePolynomial& p) {
    const auto a = p.coeffs();
    const std::size_t n = a.size();
    std::vector<Complex> gamma(n);
    std::vector<Complex> terms;
    for (std::size_t k = 0; k < n; ++k) {
        terms.resize(n - k);
        for (std::size_t j = 0; j + k < n; ++j) terms[j] = a[j] * std::conj(a[j + k]);
        gamma[k] = pairwise_sum<Complex>(terms);
    }
    return gamma;
}

std::vector<Complex> autocorrelation_fft(const CirclePolynomial& p) {
    const std::size_t n = p.size();
    const std::size_t m = next_power_of_two(2 * n);
    std::vector<Complex> buf(m, Complex{0.0});
    std::copy(p.coeffs().begin(), p.coeffs().end(), buf.begin());
    fft_inplace(buf, FftSign::positive);
    for (auto& v : buf) v = std::norm(v);
    // |P(w^t)|^2 = sum_k gamma_k w^{-kt} + conj terms, so the positive-sign
    // transform of the samples recovers M gamma_k at index k.
    fft_inplace(buf, FftSign::positive);
    std::vector<Complex> gamma(n);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) gamma[k] = buf[k] * scale;
    return gamma;
}

std::vector<Complex> autocorrelation(const CirclePolynomial& p) {
    return p.degree() < kAutocorrelationDirectMaxDegree ? autocorrelation_direct(p)
                                                        : autocorrelation_fft(p);
}

SignSequence::SignSequence(std::vector<int> signs) : signs_(std::move(signs)) {
    if (signs_.empty()) throw ParameterError("sign sequence must have length >= 1");
    for (int s : signs_) {
        if (s != 1 && s != -1) throw ParameterError("sign sequence entries must be +1 or -1");
    }
}

CirclePolynomial SignSequence::to_polynomial(bool normalized) const {
    const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(signs_.size())) : 1.0;
    std::vector<Complex> c(signs_.size());
    for (std::size_t j = 0; j < signs_.size(); ++j) c[j] = scale * signs_[j];
    return CirclePolynomial(std::move(c));
}

}  // namespace flatlab
