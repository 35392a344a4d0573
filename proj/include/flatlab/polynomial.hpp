#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "flatlab/fft.hpp"

namespace flatlab {

/// Finitely supported complex coefficient sequence a_0 + a_1 z + ... + a_d z^d,
/// viewed as a function on the unit circle. Trailing zero coefficients are
/// trimmed on construction, so the stored leading coefficient is nonzero unless
/// the polynomial is identically zero (degree 0, coefficient 0).
class CirclePolynomial {
public:
    CirclePolynomial() : coeffs_{Complex{0.0}} {}
    explicit CirclePolynomial(std::vector<Complex> coeffs);
    CirclePolynomial(std::initializer_list<Complex> coeffs);

    static CirclePolynomial monomial(std::size_t exponent, Complex coefficient = 1.0);

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t exponent) const noexcept {
        return exponent < coeffs_.size() ? coeffs_[exponent] : Complex{0.0};
    }

    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == Complex{0.0}; }
    std::size_t nonzero_count() const noexcept;

    /// Sum of |a_j|^2, which is the squared L2 norm on the circle.
    double l2_norm_squared() const;
    double l2_norm() const;

    /// Horner evaluation at an arbitrary complex point.
    Complex evaluate(Complex z) const noexcept;
    Complex evaluate_at_angle(double theta) const noexcept;

    CirclePolynomial scaled(Complex factor) const;
    /// P / ||P||_2; throws DegenerateInputError for the zero polynomial.
    CirclePolynomial normalized() const;

    /// Coefficient moduli |a_0|, ..., |a_d|.
    std::vector<double> magnitudes() const;

    friend bool operator==(const CirclePolynomial&, const CirclePolynomial&) = default;

private:
    void trim();
    std::vector<Complex> coeffs_;
};

CirclePolynomial operator+(const CirclePolynomial& lhs, const CirclePolynomial& rhs);
CirclePolynomial operator-(const CirclePolynomial& lhs, const CirclePolynomial& rhs);
CirclePolynomial operator-(const CirclePolynomial& p);

/// Exact coefficient convolution; deg(PQ) = deg P + deg Q for nonzero inputs.
CirclePolynomial multiply(const CirclePolynomial& p, const CirclePolynomial& q);

/// P(z^N): coefficient a_j moves to exponent N*j.
CirclePolynomial substitute_power(const CirclePolynomial& p, std::size_t power);

/// gamma_k = sum_j a_j conj(a_{j+k}) for k = 0..deg P. Negative lags are the
/// conjugates and are not stored. Direct summation below degree 2048, FFT
/// convolution above.
std::vector<Complex> autocorrelation(const CirclePolynomial& p);
std::vector<Complex> autocorrelation_direct(const CirclePolynomial& p);
std::vector<Complex> autocorrelation_fft(const CirclePolynomial& p);

inline constexpr std::size_t kAutocorrelationDirectMaxDegree = 2048;

/// A +-1 sequence of length >= 1.
class SignSequence {
public:
    explicit SignSequence(std::vector<int> signs);
    SignSequence(std::initializer_list<int> signs) : SignSequence(std::vector<int>(signs)) {}

    std::size_t size() const noexcept { return signs_.size(); }
    std::span<const int> signs() const noexcept { return signs_; }
    int operator[](std::size_t i) const noexcept { return signs_[i]; }

    CirclePolynomial to_polynomial(bool normalized = false) const;

    friend bool operator==(const SignSequence&, const SignSequence&) = default;
    friend auto operator<=>(const SignSequence&, const SignSequence&) = default;

private:
    std::vector<int> signs_;
};

}  // namespace flatlab
